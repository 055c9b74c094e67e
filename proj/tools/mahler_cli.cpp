// mahler: command-line front end for the measure, height and search engines.
#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "mahler/output.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/verify.hpp"
#include "mahler/xmetric.hpp"

using namespace mahler;

namespace {

struct Options {
  std::string input;
  std::string x = "1";
  std::string grid;
  unsigned long denom_bound = 1;
  unsigned precision_bits = 128;
  unsigned max_bits = 1024;
  std::string format = "table";
  std::uint64_t seed = 42;
  int threads = 0;
  double tol = 1e-12;
  std::size_t max_terms = 0;
  std::size_t inf_cap = 8;
  std::string c_override;
  unsigned long N = 0;
};

PrecisionPolicy policy_of(const Options& o) {
  PrecisionPolicy p;
  p.start_bits = o.precision_bits;
  p.max_bits = std::max(o.max_bits, o.precision_bits);
  p.validate();
  return p;
}

SearchConfig config_of(const Options& o) {
  SearchConfig c;
  c.denominator_bound = o.denom_bound;
  c.precision = policy_of(o);
  c.infinity_term_cap = o.inf_cap;
  if (o.max_terms > 0) c.max_terms_override = o.max_terms;
  if (!o.c_override.empty()) c.c_override = parse_rational(o.c_override);
  return c;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

OutputRecord result_record(const std::string& command, const Options& o, const CertifiedResult& r, const std::string& x) {
  OutputRecord rec;
  rec.command = command;
  rec.input = o.input;
  rec.quantity = "M_x";
  rec.x = x;
  rec.value = r.value;
  rec.exact_form = r.exact_form;
  rec.witness = r.witness.term_strings();
  rec.certificate = to_string(r.certificate);
  rec.nodes = r.stats.nodes;
  rec.extras = {{"denominator_bound", std::to_string(o.denom_bound)},
                {"candidates", std::to_string(r.stats.candidates)},
                {"term_bound", std::to_string(r.stats.term_bound)},
                {"precision_bits", std::to_string(r.stats.precision_bits)}};
  return rec;
}

// Witnesses are re-parsed and multiplied out before anything is printed.
void check_witnesses(const std::vector<OutputRecord>& records, const ExponentVector& target) {
  for (const auto& r : records) {
    if (r.quantity != "M_x") continue;
    ExponentVector sum;
    for (const auto& w : r.witness) sum += ExponentVector::parse(w);
    if (sum != target) throw std::logic_error("emitted witness does not multiply to the input");
  }
}

int run_command(const std::string& command, const Options& o) {
  if (o.threads > 0) omp_set_num_threads(o.threads);
  const OutputFormat format = parse_format(o.format);
  std::vector<OutputRecord> records;
  const auto t0 = std::chrono::steady_clock::now();

  if (command == "verify") {
    const auto reports = run_verify(o.input, o.seed);
    bool ok = true;
    for (const auto& r : reports) {
      std::cout << r.render();
      ok = ok && r.passed();
    }
    std::cout << (ok ? "verify: all suites passed" : "verify: FAILURES") << "\n";
    return ok ? 0 : 1;
  }

  if (command == "measure-poly") {
    const IntPolynomial f = IntPolynomial::parse(o.input);
    MeasureOptions mo;
    mo.tol = o.tol;
    mo.precision = policy_of(o);
    const MeasureResult m = mahler_measure_poly(f, mo);
    OutputRecord rec;
    rec.command = command;
    rec.input = f.to_string();
    rec.quantity = "M";
    rec.value = m.value;
    if (m.is_exact_zero) rec.exact_form = "0";
    rec.extras = {{"degree", std::to_string(f.degree())}, {"kronecker", m.is_exact_zero ? "true" : "false"},
                  {"coefficients", f.to_list_string()}};
    rec.elapsed_ms = ms_since(t0);
    records.push_back(rec);
    std::cout << render(records, format);
    return 0;
  }

  const ExponentVector target = ExponentVector::parse(o.input);
  const unsigned bits = policy_of(o).start_bits;
  if (command == "mbar") {
    const LogValue mb = mbar_ev(target);
    OutputRecord rec;
    rec.command = command;
    rec.input = target.to_string();
    rec.quantity = "Mbar";
    rec.value = mb.eval(bits);
    rec.exact_form = mb.to_string();
    rec.witness = {target.to_string()};
    rec.extras = {{"weil_height", weil_height_ev(target).to_string()},
                  {"min_degree", target.is_identity() ? "1" : std::to_string(min_degree_ev(target))}};
    rec.elapsed_ms = ms_since(t0);
    records.push_back(rec);
  } else if (command == "mx") {
    const XParameter x = XParameter::parse(o.x);
    const CertifiedResult r = mx_search(target, x, config_of(o));
    records.push_back(result_record(command, o, r, x.to_string()));
    records.back().input = target.to_string();
    records.back().elapsed_ms = ms_since(t0);
  } else if (command == "curve") {
    const std::vector<BigRational> grid = o.grid.empty() ? default_grid() : parse_grid(o.grid);
    const std::vector<CurvePoint> curve = mx_curve(target, grid, config_of(o));
    for (const auto& p : curve) {
      OutputRecord rec;
      rec.command = command;
      rec.input = target.to_string();
      rec.quantity = "M_x";
      rec.x = to_string(p.x);
      rec.value = p.value;
      rec.exact_form = p.exact_form;
      rec.witness = p.witness.term_strings();
      rec.certificate = to_string(p.certificate);
      rec.nodes = p.nodes;
      records.push_back(rec);
    }
    if (!records.empty()) records.front().elapsed_ms = ms_since(t0);
  } else if (command == "threshold") {
    const Threshold t = smallp_threshold(target, bits);
    OutputRecord rec;
    rec.command = command;
    rec.input = target.to_string();
    rec.quantity = "threshold";
    rec.value = t.value;
    rec.exact_form = t.infinite ? "inf" : "log(2) / (log(" + mbar_ev(target).to_string() + ") - log(log(2)))";
    rec.extras = {{"infinite", t.infinite ? "true" : "false"}, {"mbar", mbar_ev(target).to_string()}};
    rec.elapsed_ms = ms_since(t0);
    records.push_back(rec);
  } else if (command == "weil-hx") {
    const XParameter x = XParameter::parse(o.x);
    OutputRecord rec;
    rec.command = command;
    rec.input = target.to_string();
    rec.quantity = "h_x";
    rec.x = x.to_string();
    rec.value = weil_hx(target, x).eval(bits);
    rec.exact_form = (!x.infinite && x.value <= 1) ? weil_height_ev(target).to_string() : "0";
    records.push_back(rec);
    if (o.N > 0) {
      OutputRecord up = rec;
      up.quantity = "h_x_upper";
      up.value = weil_hx_upper(target, x, o.N, bits);
      up.exact_form = std::to_string(o.N) + "^(" + to_string(1 / x.value - 1) + ")*(" + weil_height_ev(target).to_string() + ")";
      up.extras = {{"N", std::to_string(o.N)}};
      records.push_back(up);
    }
    records.front().elapsed_ms = ms_since(t0);
  } else {
    throw InputError("unknown command " + command);
  }
  check_witnesses(records, target);
  std::cout << render(records, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified Mahler measures, metric Mahler measures and Weil heights"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  if (const char* env = std::getenv("MAHLER_PRECISION_BITS")) {
    try {
      o.precision_bits = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: MAHLER_PRECISION_BITS must be a positive integer\n";
      return 2;
    }
  }
  app.add_option("--x", o.x, "x as a positive rational or 'inf'");
  app.add_option("--grid", o.grid, "curve grid a:b:step (default 1/4:4:1/20)");
  app.add_option("--denom-bound", o.denom_bound, "exponent denominators must divide this bound D");
  app.add_option("--precision-bits", o.precision_bits, "starting precision in bits (env MAHLER_PRECISION_BITS)");
  app.add_option("--max-bits", o.max_bits, "maximum precision in bits");
  app.add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--seed", o.seed, "seed for randomized suites");
  app.add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--tol", o.tol, "enclosure width for measure-poly");
  app.add_option("--max-terms", o.max_terms, "cap on the number of factorization terms");
  app.add_option("--inf-cap", o.inf_cap, "term cap for x = inf");
  app.add_option("--c-override", o.c_override, "replace C = log 2 in bounds (uncertified)");
  app.add_option("--N", o.N, "weil-hx: also print the N-term upper bound");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"measure-poly", "Mahler measure of an integer polynomial"},
      {"mbar", "modified Mahler measure, Weil height and minimal degree"},
      {"mx", "x-metric Mahler measure with witness"},
      {"curve", "x-metric Mahler measure over a grid of x"},
      {"threshold", "small-x threshold log 2 / (log M-bar - log C)"},
      {"weil-hx", "x-metric Weil height"},
      {"verify", "run a verification suite: smallp, notuniform, weil, framework, continuity, all"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, name == "verify" ? "suite name" : "target")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run_command(command, o);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ToleranceUnreachable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
