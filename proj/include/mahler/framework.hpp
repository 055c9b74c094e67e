#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mahler/xmetric.hpp"

namespace mahler {

using GroupElement = std::vector<long>;

// A height on Z^rank, written additively.
struct GroupModel {
  std::string name;
  std::size_t rank = 0;
  std::function<LazyReal(const GroupElement&)> height;
  std::function<bool(const GroupElement&)> is_zero;  // height vanishes
  // Optional extras.
  std::function<std::optional<LogValue>(const GroupElement&)> exact_height;
  std::optional<LazyReal> term_lower_bound;                  // height >= c off the zero set
  std::function<long(const RealEnclosure&)> coordinate_radius;  // height <= B forces |coords| <= radius(B)
  RemainderBoundFn remainder_bound;
};

// A model that passed the registration checks.
class RegisteredModel {
 public:
  const GroupModel& model() const { return *model_; }

 private:
  friend RegisteredModel register_model(GroupModel model, unsigned samples, std::uint64_t seed);
  explicit RegisteredModel(std::shared_ptr<const GroupModel> m) : model_(std::move(m)) {}
  std::shared_ptr<const GroupModel> model_;
};

// Rejects (InvalidModel) a height with height(0) != 0, a negative value, or
// height(g) != height(-g) on seeded samples.
RegisteredModel register_model(GroupModel model, unsigned samples = 64, std::uint64_t seed = 1);

// M-bar on (1/D) Z^primes, integer coordinates scaled by D.
GroupModel radq_group_model(const std::vector<BigInt>& primes, unsigned long D = 1);
// 1 off the identity, 0 on it.
GroupModel indicator_model(std::size_t rank);

struct GenericBudget {
  std::size_t max_terms = 2;
  long coordinate_bound = 2;
};

struct GenericResult {
  RealEnclosure value;
  LazyReal lazy_value;
  std::vector<GroupElement> witness;
  Certificate certificate = Certificate::CappedUpperBound;
  unsigned long long nodes = 0;
};

// Candidate terms of a model inside a coordinate box, ranked once and reused.
class GenericSpace {
 public:
  GenericSpace(const RegisteredModel& model, long coordinate_bound, const PrecisionPolicy& precision = {});

  GenericResult solve(const GroupElement& element, const XParameter& x, std::size_t max_terms) const;
  long coordinate_bound() const { return bound_; }
  const RegisteredModel& model() const { return model_; }

 private:
  RegisteredModel model_;
  long bound_;
  PrecisionPolicy precision_;
  std::vector<Coord> terms_;
  std::vector<std::size_t> rank_;
  std::vector<LazyReal> rank_value_;
  std::vector<LogValue> rank_exact_;
  bool nontrivial_zero_set_ = false;
};

GenericResult generic_xmetric(const RegisteredModel& model, const GroupElement& element, const XParameter& x,
                              const GenericBudget& budget);

struct PropertyResult {
  std::string property;
  unsigned long checks = 0;
  std::vector<std::string> violations;
};

struct FrameworkReport {
  std::string model;
  std::vector<PropertyResult> properties;
  bool passed() const;
};

struct FrameworkOptions {
  long coordinate_bound = 2;  // samples are drawn with |coords| <= bound / 2
  std::size_t budget = 2;     // terms for g and h; g + h gets twice this
};

FrameworkReport framework_properties(const RegisteredModel& model, unsigned samples, std::uint64_t seed,
                                     const FrameworkOptions& options = {});

}  // namespace mahler
