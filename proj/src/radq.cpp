#include "mahler/radq.hpp"

#include <cctype>
#include <sstream>

namespace mahler {

ExponentVector::ExponentVector(Entries entries) {
  for (auto& [p, e] : entries) {
    e.canonicalize();
    if (e == 0) continue;
    if (!is_prime(p)) throw InputError("exponent vector key " + p.get_str() + " is not prime");
    entries_.emplace(p, e);
  }
}

ExponentVector ExponentVector::prime_power(const BigInt& p, const BigRational& exponent) {
  return ExponentVector(Entries{{p, exponent}});
}

BigRational ExponentVector::exponent(const BigInt& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? BigRational(0) : it->second;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector out;
  for (const auto& [p, e] : entries_) out.entries_.emplace(p, -e);
  return out;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out = a;
  for (const auto& [p, e] : b.entries_) {
    auto [it, inserted] = out.entries_.emplace(p, e);
    if (inserted) continue;
    it->second += e;
    if (it->second == 0) out.entries_.erase(it);
  }
  return out;
}

ExponentVector ExponentVector::scaled(const BigRational& factor) const {
  ExponentVector out;
  if (factor == 0) return out;
  for (const auto& [p, e] : entries_) out.entries_.emplace(p, e * factor);
  return out;
}

std::string ExponentVector::to_string() const {
  if (entries_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, e] : entries_) {
    if (!first) out << " * ";
    first = false;
    out << p.get_str() << "^";
    if (e.get_den() == 1) {
      out << e.get_num().get_str();
    } else {
      out << "(" << mahler::to_string(e) << ")";
    }
  }
  return out.str();
}

namespace {

ExponentVector from_integer_power(const BigInt& base, const BigRational& exponent) {
  ExponentVector::Entries entries;
  for (const auto& pp : factor_integer(abs(base))) entries.emplace(pp.prime, exponent * BigRational(pp.exponent));
  return ExponentVector(std::move(entries));
}

ExponentVector parse_factor(const std::string& token, const std::string& text) {
  const auto caret = token.find('^');
  if (caret == std::string::npos) return ev_from_rational(parse_rational(token));
  const std::string base_text = token.substr(0, caret);
  std::string exp_text = token.substr(caret + 1);
  if (base_text.empty() || exp_text.empty()) throw ParseError("malformed exponent vector: " + text);
  for (char c : base_text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("base must be a positive integer: " + text);
  }
  if (exp_text.front() == '(') {
    if (exp_text.back() != ')') throw ParseError("unbalanced parenthesis: " + text);
    exp_text = exp_text.substr(1, exp_text.size() - 2);
  }
  const BigInt base(base_text);
  if (base == 0) throw ZeroInput();
  return from_integer_power(base, parse_rational(exp_text));
}

}  // namespace

ExponentVector ExponentVector::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty exponent vector");
  ExponentVector out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto star = s.find('*', start);
    const std::string token = s.substr(start, star == std::string::npos ? std::string::npos : star - start);
    if (token.empty()) throw ParseError("malformed exponent vector: " + text);
    out += parse_factor(token, text);
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return out;
}

ExponentVector ev_from_rational(const BigRational& q) {
  if (q == 0) throw ZeroInput();
  ExponentVector out = from_integer_power(q.get_num(), BigRational(1));
  return out - from_integer_power(q.get_den(), BigRational(1));
}

SurdForm ev_reduce(const ExponentVector& e) {
  BigInt L = 1;
  for (const auto& [p, c] : e.entries()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
  if (!L.fits_ulong_p()) throw InputError("Kummer degree too large");
  SurdForm out;
  out.L = L.get_ui();
  for (const auto& [p, c] : e.entries()) {
    BigRational scaled = c * BigRational(L);
    out.a.emplace(p, scaled.get_num());
  }
  return out;
}

LogValue mbar_ev(const ExponentVector& e) {
  const SurdForm s = ev_reduce(e);
  LogValue pos, neg;
  for (const auto& [p, a] : s.a) {
    if (a > 0) {
      pos.add_term(p, BigRational(a));
    } else {
      neg.add_term(p, BigRational(-a));
    }
  }
  return max_logvalue(pos, neg);
}

LogValue weil_height_ev(const ExponentVector& e) {
  const SurdForm s = ev_reduce(e);
  return mbar_ev(e).scaled(BigRational(1) / BigRational(s.L));
}

unsigned long min_degree_ev(const ExponentVector& e) {
  if (e.is_identity()) throw IdentityInput();
  return ev_reduce(e).L;
}

LogValue c_constant() { return LogValue::log_of(BigInt(2)); }

}  // namespace mahler
