#include <gtest/gtest.h>

#include "mahler/framework.hpp"
#include "support.hpp"

using namespace mahler;

namespace {

XParameter X(const std::string& s) { return XParameter::parse(s); }

GroupModel l1_model() {
  GroupModel m;
  m.name = "l1";
  m.rank = 2;
  m.height = [](const GroupElement& g) {
    return LazyReal::constant(BigRational(std::abs(g[0]) + std::abs(g[1])));
  };
  m.is_zero = [](const GroupElement& g) { return g[0] == 0 && g[1] == 0; };
  return m;
}

}  // namespace

TEST(Registration, RejectsBadModels) {
  GroupModel skew = l1_model();
  skew.height = [](const GroupElement& g) { return LazyReal::constant(BigRational(g[0] > 0 ? 2 * g[0] : -g[0])); };
  EXPECT_THROW(register_model(skew), InvalidModel);

  GroupModel offset = l1_model();
  offset.height = [](const GroupElement& g) { return LazyReal::constant(BigRational(1 + std::abs(g[0]))); };
  EXPECT_THROW(register_model(offset), InvalidModel);

  GroupModel negative = l1_model();
  negative.height = [](const GroupElement& g) { return LazyReal::constant(BigRational(-std::abs(g[0]))); };
  EXPECT_THROW(register_model(negative), InvalidModel);

  GroupModel missing = l1_model();
  missing.height = nullptr;
  EXPECT_THROW(register_model(missing), InvalidModel);

  EXPECT_NO_THROW(register_model(l1_model()));
}

TEST(GenericXmetric, IndicatorExamples) {
  const RegisteredModel ind = register_model(indicator_model(2));
  for (const char* x : {"1/2", "1", "2", "inf"}) {
    const GenericResult r = generic_xmetric(ind, {1, 1}, X(x), {3, 2});
    EXPECT_TRUE(r.value.contains(1.0)) << x;
    EXPECT_EQ(r.witness.size(), 1u);
    EXPECT_TRUE(generic_xmetric(ind, {0, 0}, X(x), {3, 2}).value.is_exact_zero());
  }
  EXPECT_THROW(generic_xmetric(ind, {1, 1}, X("1"), {0, 2}), BudgetZero);
  // The box grows to contain the element.
  EXPECT_TRUE(generic_xmetric(ind, {5, 1}, X("1"), {2, 2}).value.contains(1.0));
  EXPECT_THROW(GenericSpace(ind, 2).solve({5, 1}, X("1"), 2), InputError);
}

TEST(GenericXmetric, MatchesRadqEngine) {
  const RegisteredModel radq = register_model(radq_group_model({2, 3}));
  for (const char* x : {"1/2", "1", "2", "inf"}) {
    const GenericResult g = generic_xmetric(radq, {2, 0}, X(x), {5, 2});
    const CertifiedResult r = mx_search(ExponentVector::parse("4"), X(x));
    EXPECT_EQ(refine_compare(g.lazy_value, r.lazy_value, {}), Ordering::Tie) << x;
  }
  const GenericResult g = generic_xmetric(radq, {2, 1}, X("1"), {6, 3});
  EXPECT_EQ(refine_compare(g.lazy_value, mx_search(ExponentVector::parse("12"), X("1")).lazy_value, {}), Ordering::Tie);
  EXPECT_EQ(g.certificate, Certificate::Certified);
}

TEST(GenericXmetric, BudgetCapsAreReported) {
  const RegisteredModel radq = register_model(radq_group_model({2, 3}));
  const GenericResult g = generic_xmetric(radq, {2, 0}, X("2"), {1, 2});
  EXPECT_EQ(g.certificate, Certificate::CappedUpperBound);
  EXPECT_EQ(g.witness.size(), 1u);
  // Without a per-term lower bound nothing can be certified.
  const RegisteredModel l1 = register_model(l1_model());
  EXPECT_EQ(generic_xmetric(l1, {1, 1}, X("2"), {4, 2}).certificate, Certificate::CappedUpperBound);
}

TEST(GenericXmetric, L1ModelSplitsForLargeX) {
  const RegisteredModel l1 = register_model(l1_model());
  // |(2,0)| = 2 alone; two unit terms give 2^(1/x) < 2 for x > 1.
  const GenericResult r = generic_xmetric(l1, {2, 0}, X("2"), {2, 2});
  EXPECT_EQ(r.witness.size(), 2u);
  const GenericResult s = generic_xmetric(l1, {2, 0}, X("1/2"), {2, 2});
  EXPECT_TRUE(s.value.contains(2.0));
}

TEST(FrameworkProperties, RadqAndIndicatorPass) {
  for (const RegisteredModel& m :
       {register_model(radq_group_model({2, 3})), register_model(indicator_model(2)),
        register_model(radq_group_model({2, 5}, 2))}) {
    const FrameworkReport rep = framework_properties(m, 60, 42);
    EXPECT_TRUE(rep.passed()) << rep.model;
    EXPECT_EQ(rep.properties.size(), 7u);
    for (const auto& p : rep.properties) {
      EXPECT_GT(p.checks, 0u) << rep.model << ": " << p.property;
      EXPECT_TRUE(p.violations.empty()) << rep.model << ": " << p.property << ": " << p.violations.front();
    }
  }
}

TEST(FrameworkProperties, IndicatorIsItsOwnXMetric) {
  const RegisteredModel ind = register_model(indicator_model(3));
  auto g = testing_support::rng(41);
  for (int i = 0; i < 50; ++i) {
    GroupElement e(3);
    for (auto& c : e) c = testing_support::uniform(g, -1, 1);
    for (const char* x : {"1/2", "2", "inf"}) {
      const GenericResult r = generic_xmetric(ind, e, X(x), {2, 2});
      const bool zero = e == GroupElement{0, 0, 0};
      EXPECT_TRUE(r.value.contains(zero ? 0.0 : 1.0));
    }
  }
}

TEST(FrameworkProperties, DeterministicForSeed) {
  const RegisteredModel m = register_model(radq_group_model({2, 3}));
  const FrameworkReport a = framework_properties(m, 20, 9), b = framework_properties(m, 20, 9);
  ASSERT_EQ(a.properties.size(), b.properties.size());
  for (std::size_t i = 0; i < a.properties.size(); ++i) EXPECT_EQ(a.properties[i].checks, b.properties[i].checks);
}
