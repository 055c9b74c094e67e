#include "mahler/decomposition_search.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <unordered_map>

namespace mahler {

XParameter XParameter::finite(const BigRational& x) {
  if (x <= 0) throw InputError("x must be positive, got " + mahler::to_string(x));
  XParameter p;
  p.value = x;
  p.value.canonicalize();
  return p;
}

XParameter XParameter::infinity() {
  XParameter p;
  p.infinite = true;
  p.value = 0;
  return p;
}

XParameter XParameter::parse(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "inf" || s == "infinity" || s == "+inf") return infinity();
  return finite(parse_rational(s));
}

std::string XParameter::to_string() const { return infinite ? "inf" : mahler::to_string(value); }

RealEnclosure power_x(const RealEnclosure& v, const XParameter& x) {
  if (x.infinite) throw InputError("power_x needs a finite exponent");
  if (x.value == 1) return v;
  return pow(v, RealEnclosure::from_rational(x.value, v.precision_bits()));
}

LazyReal combine_x(std::vector<LazyReal> values, const XParameter& x) {
  if (values.empty()) return LazyReal();
  return LazyReal([values = std::move(values), x](unsigned bits) {
    const unsigned work = bits + 16;
    if (x.infinite) {
      RealEnclosure best = values.front().eval(work);
      for (std::size_t i = 1; i < values.size(); ++i) best = max(best, values[i].eval(work));
      return best;
    }
    RealEnclosure sum(work);
    for (const auto& v : values) sum += power_x(v.eval(work), x);
    if (x.value == 1) return sum;
    return pow(sum, RealEnclosure::from_rational(1 / x.value, work));
  });
}

std::size_t CoordHash::operator()(const Coord& c) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (long v : c) h ^= std::hash<long>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

namespace {

constexpr unsigned long long kSeedNodes = 4096;

Coord subtract(const Coord& a, const Coord& b) {
  Coord out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool is_zero(const Coord& c) {
  return std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
}

// Power sum sum_r count_r * V_r^x (the x-th power of the combined value).
LazyReal power_sum_lazy(const LatticeProblem& p, const std::vector<std::size_t>& indices) {
  std::vector<LazyReal> vals;
  for (std::size_t i : indices) vals.push_back(p.rank_value[p.rank[i]]);
  const XParameter x = p.x;
  return LazyReal([vals = std::move(vals), x](unsigned bits) {
    const unsigned work = bits + 16;
    RealEnclosure sum(work);
    for (const auto& v : vals) sum += power_x(v.eval(work), x);
    return sum;
  });
}

// Everything the DFS needs, evaluated once at working precision.
struct Prepared {
  const LatticeProblem& p;
  unsigned bits;
  std::unordered_map<Coord, std::size_t, CoordHash> index;
  std::vector<RealEnclosure> value;  // per rank
  std::vector<RealEnclosure> power;  // per rank (finite x)

  explicit Prepared(const LatticeProblem& problem) : p(problem), bits(problem.precision.start_bits) {
    if (p.rank.size() != p.terms.size()) throw InputError("lattice problem: rank list size mismatch");
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
      if (i > 0 && p.rank[i] < p.rank[i - 1]) throw InputError("lattice problem: ranks must be non-decreasing");
      if (p.rank[i] >= p.rank_value.size()) throw InputError("lattice problem: rank out of range");
      index.emplace(p.terms[i], i);
    }
    for (const auto& v : p.rank_value) {
      value.push_back(v.eval(bits));
      if (!p.x.infinite) power.push_back(power_x(value.back(), p.x));
    }
  }

  const RealEnclosure& term_power(std::size_t i) const { return power[p.rank[i]]; }

  long find(const Coord& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : static_cast<long>(it->second);
  }
};

struct Incumbent {
  bool valid = false;
  std::vector<std::size_t> indices;
  RealEnclosure power_sum;
};

// Value ordering of two term multisets (power sums at working precision given).
Ordering compare_values(const Prepared& prep, const std::vector<std::size_t>& a, const RealEnclosure& sa,
                        const std::vector<std::size_t>& b, const RealEnclosure& sb, unsigned& bits_used) {
  const LatticeProblem& p = prep.p;
  auto ranks_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> r;
    for (std::size_t i : idx) r.push_back(p.rank[i]);
    return r;
  };
  if (ranks_of(a) == ranks_of(b)) return Ordering::Tie;
  if (sa.certainly_less(sb)) return Ordering::Less;
  if (sa.certainly_greater(sb)) return Ordering::Greater;
  if (p.x.value == 1 && !p.rank_exact.empty()) {
    LogValue la, lb;
    for (std::size_t i : a) la += p.rank_exact[p.rank[i]];
    for (std::size_t i : b) lb += p.rank_exact[p.rank[i]];
    return compare_logvalues(la, lb, p.precision);
  }
  return refine_compare(power_sum_lazy(p, a), power_sum_lazy(p, b), p.precision, &bits_used);
}

// Canonical preference: smaller value, then fewer terms, then lexicographic.
bool better(const Prepared& prep, const std::vector<std::size_t>& a, const RealEnclosure& sa, const Incumbent& inc,
            unsigned& bits_used) {
  if (!inc.valid) return true;
  const Ordering o = compare_values(prep, a, sa, inc.indices, inc.power_sum, bits_used);
  if (o != Ordering::Tie) return o == Ordering::Less;
  if (a.size() != inc.indices.size()) return a.size() < inc.indices.size();
  return a < inc.indices;
}

// ---------------------------------------------------------------------------
// finite x: branch and bound on the power sum

class FiniteSearch {
 public:
  FiniteSearch(const Prepared& prep, Incumbent incumbent, unsigned long long node_limit)
      : prep_(prep), inc_(std::move(incumbent)), node_limit_(node_limit) {}

  void explore(const Coord& remainder, std::size_t start, const RealEnclosure& partial) {
    if (aborted_) return;
    if (++nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    const LatticeProblem& p = prep_.p;
    const std::size_t depth = stack_.size();

    const long hit = prep_.find(remainder);
    if (hit >= 0 && static_cast<std::size_t>(hit) >= start && depth + 1 <= p.max_terms) {
      stack_.push_back(static_cast<std::size_t>(hit));
      offer(partial + prep_.term_power(static_cast<std::size_t>(hit)));
      stack_.pop_back();
    }
    if (depth + 2 > p.max_terms) return;

    for (std::size_t j = start; j < p.terms.size(); ++j) {
      const RealEnclosure& pj = prep_.term_power(j);
      const RealEnclosure with_j = partial + pj;
      // j is followed by at least one term of value >= value(j).
      if (exceeds(with_j + pj)) break;
      Coord next = subtract(remainder, p.terms[j]);
      if (is_zero(next)) continue;
      if (exceeds(with_j + remainder_lower_bound(next, j))) continue;
      stack_.push_back(j);
      explore(next, j, with_j);
      stack_.pop_back();
      if (aborted_) return;
    }
  }

  // Entry used for one root branch: the first term is fixed to j.
  void explore_branch(std::size_t j) {
    const LatticeProblem& p = prep_.p;
    stack_.assign(1, j);
    explore(subtract(p.target, p.terms[j]), j, prep_.term_power(j));
    stack_.clear();
  }

  bool exceeds(const RealEnclosure& lower) const { return inc_.valid && lower.certainly_greater(inc_.power_sum); }

  RealEnclosure remainder_lower_bound(const Coord& r, std::size_t j) const {
    const LatticeProblem& p = prep_.p;
    const RealEnclosure& vj = prep_.value[p.rank[j]];
    if (!p.remainder_bound) return prep_.term_power(j);
    const RemainderBound b = p.remainder_bound(r, prep_.bits);
    RealEnclosure lb = mpfr_lessequal_p(b.min_term.lo().get(), vj.lo().get()) ? prep_.term_power(j)
                                                                             : power_x(max(vj, b.min_term), p.x);
    RealEnclosure mass_lb(prep_.bits);
    if (p.x.value >= 1) {
      if (mpfr_sgn(vj.lo().get()) > 0) {
        mass_lb = b.mass * prep_.term_power(j) / vj;  // m^(x-1) * mass
      }
    } else if (mpfr_sgn(b.mass.hi().get()) > 0) {
      mass_lb = power_x(b.mass, p.x);
    }
    return mpfr_greater_p(mass_lb.lo().get(), lb.lo().get()) ? mass_lb : lb;
  }

  const Incumbent& incumbent() const { return inc_; }
  unsigned long long nodes() const { return nodes_; }
  unsigned bits_used() const { return bits_used_; }
  bool aborted() const { return aborted_; }

 private:
  void offer(const RealEnclosure& power_sum) {
    if (better(prep_, stack_, power_sum, inc_, bits_used_)) {
      inc_.valid = true;
      inc_.indices = stack_;
      inc_.power_sum = power_sum;
    }
  }

  const Prepared& prep_;
  Incumbent inc_;
  std::vector<std::size_t> stack_;
  unsigned long long node_limit_;
  unsigned long long nodes_ = 0;
  unsigned bits_used_ = 0;
  bool aborted_ = false;
};

Incumbent single_term_incumbent(const Prepared& prep) {
  Incumbent inc;
  const long t = prep.find(prep.p.target);
  if (t >= 0) {
    inc.valid = true;
    inc.indices = {static_cast<std::size_t>(t)};
    inc.power_sum = prep.term_power(static_cast<std::size_t>(t));
  }
  return inc;
}

LatticeSolution to_solution(const Incumbent& inc, unsigned long long nodes, unsigned bits) {
  LatticeSolution s;
  s.found = inc.valid;
  s.indices = inc.indices;
  s.nodes = nodes;
  s.bits_used = bits;
  return s;
}

template <class Body>
void parallel_over(std::size_t count, Body body) {
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

LatticeSolution solve_finite(const LatticeProblem& p, bool parallel) {
  const Prepared prep(p);
  if (!parallel) {
    FiniteSearch search(prep, single_term_incumbent(prep), ~0ULL);
    search.explore(p.target, 0, RealEnclosure(prep.bits));
    return to_solution(search.incumbent(), search.nodes(), std::max(search.bits_used(), prep.bits));
  }

  // Deterministic serial seed supplies the incumbent every branch starts from.
  FiniteSearch seed(prep, single_term_incumbent(prep), kSeedNodes);
  seed.explore(p.target, 0, RealEnclosure(prep.bits));
  if (!seed.aborted()) return to_solution(seed.incumbent(), seed.nodes(), std::max(seed.bits_used(), prep.bits));

  const Incumbent start = seed.incumbent();
  unsigned long long nodes = seed.nodes() + 1;
  std::vector<std::size_t> roots;
  {
    FiniteSearch probe(prep, start, ~0ULL);
    for (std::size_t j = 0; j < p.terms.size() && p.max_terms >= 2; ++j) {
      const RealEnclosure& pj = prep.term_power(j);
      if (probe.exceeds(pj + pj)) break;
      Coord next = subtract(p.target, p.terms[j]);
      if (is_zero(next)) continue;
      if (probe.exceeds(pj + probe.remainder_lower_bound(next, j))) continue;
      roots.push_back(j);
    }
  }
  std::vector<Incumbent> found(roots.size());
  std::vector<unsigned long long> counts(roots.size());
  std::vector<unsigned> bits(roots.size());
  std::vector<char> improved(roots.size(), 0);
  parallel_over(roots.size(), [&](std::size_t k) {
    FiniteSearch branch(prep, start, ~0ULL);
    branch.explore_branch(roots[k]);
    counts[k] = branch.nodes();
    bits[k] = branch.bits_used();
    // A branch only replaces its copy of the start incumbent when it improves on it.
    if (branch.incumbent().indices != start.indices) {
      found[k] = branch.incumbent();
      improved[k] = 1;
    }
  });

  Incumbent best = start;
  unsigned bits_used = std::max(seed.bits_used(), prep.bits);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    nodes += counts[k];
    bits_used = std::max(bits_used, bits[k]);
    if (improved[k] && better(prep, found[k].indices, found[k].power_sum, best, bits_used)) best = found[k];
  }
  return to_solution(best, nodes, bits_used);
}

// ---------------------------------------------------------------------------
// x = inf: smallest admissible maximum, then fewest terms, then lexicographic

class MaxSearch {
 public:
  MaxSearch(const Prepared& prep, std::size_t allowed, const RealEnclosure& level, std::size_t depth)
      : prep_(prep), allowed_(allowed), level_(level), depth_(depth) {}

  bool feasible_bound(const Coord& r, std::size_t used) const {
    if (!prep_.p.remainder_bound) return true;
    const RemainderBound b = prep_.p.remainder_bound(r, prep_.bits);
    if (b.min_term.certainly_greater(level_)) return false;
    const RealEnclosure room = level_ * RealEnclosure::point(static_cast<long>(depth_ - used), prep_.bits);
    return !b.mass.certainly_greater(room);
  }

  bool explore(const Coord& remainder, std::size_t start) {
    ++nodes_;
    const long hit = prep_.find(remainder);
    if (hit >= 0 && static_cast<std::size_t>(hit) >= start && static_cast<std::size_t>(hit) < allowed_ &&
        stack_.size() + 1 <= depth_) {
      stack_.push_back(static_cast<std::size_t>(hit));
      return true;
    }
    if (stack_.size() + 2 > depth_) return false;
    for (std::size_t j = start; j < allowed_; ++j) {
      Coord next = subtract(remainder, prep_.p.terms[j]);
      if (is_zero(next)) continue;
      if (!feasible_bound(next, stack_.size() + 1)) continue;
      stack_.push_back(j);
      if (explore(next, j)) return true;
      stack_.pop_back();
    }
    return false;
  }

  bool explore_branch(std::size_t j) {
    stack_.assign(1, j);
    Coord next = subtract(prep_.p.target, prep_.p.terms[j]);
    ++nodes_;
    if (is_zero(next) || !feasible_bound(next, 1)) {
      stack_.clear();
      return false;
    }
    if (explore(next, j)) return true;
    stack_.clear();
    return false;
  }

  const std::vector<std::size_t>& stack() const { return stack_; }
  unsigned long long nodes() const { return nodes_; }

 private:
  const Prepared& prep_;
  std::size_t allowed_;
  RealEnclosure level_;
  std::size_t depth_;
  std::vector<std::size_t> stack_;
  unsigned long long nodes_ = 0;
};

LatticeSolution solve_infinity(const LatticeProblem& p, bool parallel) {
  const Prepared prep(p);
  LatticeSolution out;
  out.bits_used = prep.bits;
  const long target_index = prep.find(p.target);
  const std::size_t top_rank = target_index >= 0 ? p.rank[static_cast<std::size_t>(target_index)] : p.rank_value.size() - 1;
  std::size_t allowed = 0;
  for (std::size_t level = 0; level <= top_rank && level < p.rank_value.size(); ++level) {
    while (allowed < p.terms.size() && p.rank[allowed] <= level) ++allowed;
    if (allowed == 0 || p.rank[allowed - 1] != level) continue;
    const RealEnclosure& v = prep.value[level];
    for (std::size_t depth = 1; depth <= p.max_terms; ++depth) {
      MaxSearch root(prep, allowed, v, depth);
      if (!root.feasible_bound(p.target, 0)) continue;
      if (!parallel) {
        const bool ok = root.explore(p.target, 0);
        out.nodes += root.nodes();
        if (ok) {
          out.found = true;
          out.indices = root.stack();
          return out;
        }
        continue;
      }
      // Root completion first, then every root branch in full.
      ++out.nodes;
      if (target_index >= 0 && static_cast<std::size_t>(target_index) < allowed) {
        out.found = true;
        out.indices = {static_cast<std::size_t>(target_index)};
        return out;
      }
      if (depth < 2) continue;
      std::vector<std::vector<std::size_t>> hits(allowed);
      std::vector<unsigned long long> counts(allowed);
      parallel_over(allowed, [&](std::size_t j) {
        MaxSearch branch(prep, allowed, v, depth);
        if (branch.explore_branch(j)) hits[j] = branch.stack();
        counts[j] = branch.nodes();
      });
      for (auto c : counts) out.nodes += c;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (!hits[j].empty()) {
          out.found = true;
          out.indices = hits[j];
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace

LatticeSolution solve_lattice(const LatticeProblem& problem) {
  if (is_zero(problem.target)) return {true, {}, 0, problem.precision.start_bits};
  return problem.x.infinite ? solve_infinity(problem, true) : solve_finite(problem, true);
}

LatticeSolution solve_lattice_serial(const LatticeProblem& problem) {
  if (is_zero(problem.target)) return {true, {}, 0, problem.precision.start_bits};
  return problem.x.infinite ? solve_infinity(problem, false) : solve_finite(problem, false);
}

LazyReal lattice_value(const LatticeProblem& problem, const std::vector<std::size_t>& indices) {
  std::vector<LazyReal> vals;
  for (std::size_t i : indices) vals.push_back(problem.rank_value[problem.rank[i]]);
  return combine_x(std::move(vals), problem.x);
}

}  // namespace mahler
