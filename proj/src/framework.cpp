#include "mahler/framework.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace mahler {

namespace {

std::string element_string(const GroupElement& g) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << g[i];
  out << ")";
  return out.str();
}

GroupElement negate(const GroupElement& g) {
  GroupElement out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = -g[i];
  return out;
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  GroupElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool all_zero(const GroupElement& g) {
  return std::all_of(g.begin(), g.end(), [](long v) { return v == 0; });
}

GroupElement random_element(std::mt19937_64& rng, std::size_t rank, long radius) {
  std::uniform_int_distribution<long> dist(-radius, radius);
  GroupElement g(rank);
  for (auto& c : g) c = dist(rng);
  return g;
}

}  // namespace

RegisteredModel register_model(GroupModel model, unsigned samples, std::uint64_t seed) {
  if (model.rank == 0) throw InvalidModel("model '" + model.name + "' has rank 0");
  if (!model.height || !model.is_zero) throw InvalidModel("model '" + model.name + "' lacks a height or zero test");
  const PrecisionPolicy policy;
  const GroupElement zero(model.rank, 0);
  const RealEnclosure h0 = model.height(zero).eval(policy.start_bits);
  if (!model.is_zero(zero) || !h0.contains(0.0) || !h0.width_below(policy.tie_eps)) {
    throw InvalidModel("model '" + model.name + "': height of the identity is not 0");
  }
  std::mt19937_64 rng(seed);
  for (unsigned i = 0; i < samples; ++i) {
    const GroupElement g = random_element(rng, model.rank, 3);
    const LazyReal a = model.height(g);
    if (mpfr_sgn(a.eval(policy.start_bits).hi().get()) < 0) {
      throw InvalidModel("model '" + model.name + "': negative height at " + element_string(g));
    }
    Ordering o;
    try {
      o = refine_compare(a, model.height(negate(g)), policy);
    } catch (const PrecisionExhausted&) {
      o = Ordering::Less;
    }
    if (o != Ordering::Tie) {
      throw InvalidModel("model '" + model.name + "': height(g) != height(-g) at g = " + element_string(g));
    }
  }
  return RegisteredModel(std::make_shared<const GroupModel>(std::move(model)));
}

GroupModel radq_group_model(const std::vector<BigInt>& primes, unsigned long D) {
  if (primes.empty()) throw InvalidModel("radq model needs at least one prime");
  if (D == 0) throw InvalidModel("radq model needs D >= 1");
  GroupModel m;
  std::ostringstream name;
  name << "radq{";
  for (std::size_t i = 0; i < primes.size(); ++i) name << (i ? "," : "") << primes[i].get_str();
  name << "}/D=" << D;
  m.name = name.str();
  m.rank = primes.size();
  m.height = [primes, D](const GroupElement& g) { return LazyReal::from(mbar_ev(ev_from_coords(primes, g, D))); };
  m.exact_height = [primes, D](const GroupElement& g) -> std::optional<LogValue> {
    return mbar_ev(ev_from_coords(primes, g, D));
  };
  m.is_zero = all_zero;
  m.term_lower_bound = LazyReal::from(c_constant());
  m.coordinate_radius = [primes, D](const RealEnclosure& bound) {
    long r = 0;
    for (const auto& p : primes) {
      const unsigned bits = bound.precision_bits();
      const RealEnclosure q = bound * RealEnclosure::point(static_cast<long>(D), bits) / log_enclosure(p, bits);
      r = std::max(r, mpfr_get_si(q.hi().get(), MPFR_RNDD));
    }
    return r;
  };
  m.remainder_bound = radq_remainder_bound(primes, D);
  return m;
}

GroupModel indicator_model(std::size_t rank) {
  GroupModel m;
  m.name = "indicator/Z^" + std::to_string(rank);
  m.rank = rank;
  m.height = [](const GroupElement& g) { return LazyReal::constant(all_zero(g) ? 0 : 1); };
  m.is_zero = all_zero;
  m.term_lower_bound = LazyReal::constant(1);
  return m;
}

GenericSpace::GenericSpace(const RegisteredModel& model, long coordinate_bound, const PrecisionPolicy& precision)
    : model_(model), bound_(coordinate_bound), precision_(precision) {
  if (coordinate_bound < 1) throw InputError("coordinate bound must be >= 1");
  precision_.validate();
  const GroupModel& m = model_.model();
  std::vector<Coord> cands;
  Coord c(m.rank, -bound_);
  for (;;) {
    if (!all_zero(c)) cands.push_back(c);
    std::size_t i = 0;
    while (i < m.rank && c[i] == bound_) {
      c[i] = -bound_;
      ++i;
    }
    if (i == m.rank) break;
    ++c[i];
  }
  if (cands.size() > 200000) throw InputError("coordinate box too large");

  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> rank_of(cands.size());
  if (m.exact_height) {
    std::vector<LogValue> values;
    for (const auto& g : cands) {
      auto v = m.exact_height(g);
      if (!v) throw InvalidModel("exact height missing at " + element_string(g));
      values.push_back(*v);
    }
    const ValueRanking ranking = rank_logvalues(values);
    rank_of = ranking.rank;
    rank_exact_ = ranking.distinct;
    for (const auto& v : ranking.distinct) rank_value_.push_back(LazyReal::from(v));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (rank_of[a] != rank_of[b]) return rank_of[a] < rank_of[b];
      return cands[a] < cands[b];
    });
  } else {
    std::vector<LazyReal> heights;
    for (const auto& g : cands) heights.push_back(m.height(g));
    auto cmp = [&](std::size_t a, std::size_t b) {
      const Ordering o = refine_compare(heights[a], heights[b], precision_);
      if (o != Ordering::Tie) return o == Ordering::Less;
      return cands[a] < cands[b];
    };
    std::sort(order.begin(), order.end(), cmp);
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k == 0 || refine_compare(heights[order[k - 1]], heights[order[k]], precision_) != Ordering::Tie) {
        rank_value_.push_back(heights[order[k]]);
      }
      rank_of[order[k]] = rank_value_.size() - 1;
    }
  }
  for (std::size_t idx : order) {
    terms_.push_back(cands[idx]);
    rank_.push_back(rank_of[idx]);
    if (m.is_zero(cands[idx])) nontrivial_zero_set_ = true;
  }
}

GenericResult GenericSpace::solve(const GroupElement& element, const XParameter& x, std::size_t max_terms) const {
  if (max_terms == 0) throw BudgetZero();
  const GroupModel& m = model_.model();
  if (element.size() != m.rank) throw InputError("element has the wrong rank for model " + m.name);
  GenericResult out;
  out.value = RealEnclosure(precision_.start_bits);
  if (all_zero(element)) {
    out.certificate = Certificate::Certified;
    return out;
  }
  for (long c : element) {
    if (std::labs(c) > bound_) throw InputError("element " + element_string(element) + " lies outside the coordinate box");
  }
  LatticeProblem p;
  p.target = element;
  p.terms = terms_;
  p.rank = rank_;
  p.rank_value = rank_value_;
  p.rank_exact = rank_exact_;
  p.x = x;
  p.max_terms = max_terms;
  p.precision = precision_;
  p.remainder_bound = m.remainder_bound;
  const LatticeSolution sol = solve_lattice(p);
  if (!sol.found) throw std::logic_error("no decomposition of an element inside the box");
  for (std::size_t i : sol.indices) out.witness.push_back(terms_[i]);
  out.lazy_value = lattice_value(p, sol.indices);
  out.value = out.lazy_value.eval(precision_.start_bits);
  out.nodes = sol.nodes;

  // Exhaustive within the budget and provably complete: every better
  // decomposition has at most (B/c)^x terms, all inside the box.
  out.certificate = Certificate::CappedUpperBound;
  if (!x.infinite && m.term_lower_bound && m.coordinate_radius && !nontrivial_zero_set_) {
    const unsigned bits = precision_.start_bits;
    const RealEnclosure B = m.height(element).eval(bits);
    const RealEnclosure c = m.term_lower_bound->eval(bits);
    if (c.certainly_positive()) {
      const double n = power_x(B / c, x).hi_double();
      if (n < static_cast<double>(max_terms) + 1 && m.coordinate_radius(B) <= bound_) {
        out.certificate = Certificate::Certified;
      }
    }
  }
  return out;
}

GenericResult generic_xmetric(const RegisteredModel& model, const GroupElement& element, const XParameter& x,
                              const GenericBudget& budget) {
  if (budget.max_terms == 0) throw BudgetZero();
  long bound = budget.coordinate_bound;
  for (long c : element) bound = std::max(bound, std::labs(c));
  const GenericSpace space(model, bound);
  return space.solve(element, x, budget.max_terms);
}

bool FrameworkReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.violations.empty(); });
}

namespace {

enum class Relation { NotGreater, Equal };

bool holds(const LazyReal& a, const LazyReal& b, Relation rel, const PrecisionPolicy& policy) {
  try {
    const Ordering o = refine_compare(a, b, policy);
    return rel == Relation::Equal ? o == Ordering::Tie : o != Ordering::Greater;
  } catch (const PrecisionExhausted&) {
    return false;
  }
}

LazyReal power_sum(const LazyReal& a, const LazyReal& b, const BigRational& q) {
  return LazyReal([a, b, q](unsigned bits) {
    const XParameter x = XParameter::finite(q);
    return power_x(a.eval(bits + 16), x) + power_x(b.eval(bits + 16), x);
  });
}

LazyReal power_of_sum(const LazyReal& a, const LazyReal& b, const BigRational& q) {
  return LazyReal([a, b, q](unsigned bits) {
    return power_x(a.eval(bits + 16) + b.eval(bits + 16), XParameter::finite(q));
  });
}

}  // namespace

FrameworkReport framework_properties(const RegisteredModel& model, unsigned samples, std::uint64_t seed,
                                     const FrameworkOptions& options) {
  const GroupModel& m = model.model();
  const PrecisionPolicy policy;
  const GenericSpace space(model, options.coordinate_bound, policy);
  const std::vector<XParameter> xs = {XParameter::finite(make_rational(1, 2)), XParameter::finite(1),
                                      XParameter::finite(2), XParameter::infinity()};

  FrameworkReport report;
  report.model = m.name;
  PropertyResult triangle{"x-triangle inequality", 0, {}};
  PropertyResult below{"phi_x <= phi", 0, {}};
  PropertyResult monotone{"phi_y >= phi_x for y <= x", 0, {}};
  PropertyResult symmetry{"phi_x(-g) = phi_x(g)", 0, {}};
  PropertyResult zero_set{"zero set closed under composition", 0, {}};
  PropertyResult combiner{"combine_x non-increasing in x", 0, {}};
  PropertyResult mvt{"a^q + b^q <= (a+b)^q for q >= 1", 0, {}};

  std::vector<GroupElement> zeros;
  zeros.push_back(GroupElement(m.rank, 0));
  {
    Coord c(m.rank, -options.coordinate_bound);
    for (;;) {
      if (!all_zero(c) && m.is_zero(c)) zeros.push_back(c);
      std::size_t i = 0;
      while (i < m.rank && c[i] == options.coordinate_bound) {
        c[i] = -options.coordinate_bound;
        ++i;
      }
      if (i == m.rank) break;
      ++c[i];
    }
  }

  std::mt19937_64 rng(seed);
  const long half = std::max(1L, options.coordinate_bound / 2);
  for (unsigned s = 0; s < samples; ++s) {
    const GroupElement g = random_element(rng, m.rank, half);
    const GroupElement h = random_element(rng, m.rank, half);
    const GroupElement gh = add(g, h);
    const std::string tag = "g=" + element_string(g) + " h=" + element_string(h);
    const LazyReal phi_g = m.height(g);

    std::vector<LazyReal> at_g;
    for (const auto& x : xs) {
      const GenericResult rg = space.solve(g, x, options.budget);
      const GenericResult rneg = space.solve(negate(g), x, options.budget);
      const GenericResult rh = space.solve(h, x, options.budget);
      const GenericResult rgh = space.solve(gh, x, 2 * options.budget);
      const std::string where = tag + " x=" + x.to_string();

      ++triangle.checks;
      if (!holds(rgh.lazy_value, combine_x({rg.lazy_value, rh.lazy_value}, x), Relation::NotGreater, policy)) {
        triangle.violations.push_back(where);
      }
      ++below.checks;
      if (!holds(rg.lazy_value, phi_g, Relation::NotGreater, policy)) below.violations.push_back(where);
      ++symmetry.checks;
      if (!holds(rg.lazy_value, rneg.lazy_value, Relation::Equal, policy)) symmetry.violations.push_back(where);
      at_g.push_back(rg.lazy_value);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        ++monotone.checks;
        if (!holds(at_g[j], at_g[i], Relation::NotGreater, policy)) {
          monotone.violations.push_back(tag + " y=" + xs[i].to_string() + " x=" + xs[j].to_string());
        }
      }
    }

    std::uniform_int_distribution<std::size_t> pick(0, zeros.size() - 1);
    const GroupElement z = add(zeros[pick(rng)], zeros[pick(rng)]);
    ++zero_set.checks;
    const RealEnclosure hz = m.height(z).eval(policy.start_bits);
    if (!m.is_zero(z) || !hz.contains(0.0) || !hz.width_below(policy.tie_eps)) {
      zero_set.violations.push_back("z=" + element_string(z));
    }

    const LazyReal phi_h = m.height(h);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        ++combiner.checks;
        if (!holds(combine_x({phi_g, phi_h}, xs[j]), combine_x({phi_g, phi_h}, xs[i]), Relation::NotGreater, policy)) {
          combiner.violations.push_back(tag + " y=" + xs[i].to_string() + " x=" + xs[j].to_string());
        }
      }
    }
    for (const BigRational& q : {BigRational(1), make_rational(3, 2), BigRational(2)}) {
      ++mvt.checks;
      if (!holds(power_sum(phi_g, phi_h, q), power_of_sum(phi_g, phi_h, q), Relation::NotGreater, policy)) {
        mvt.violations.push_back(tag + " q=" + to_string(q));
      }
    }
  }
  report.properties = {triangle, below, monotone, symmetry, zero_set, combiner, mvt};
  return report;
}

}  // namespace mahler
