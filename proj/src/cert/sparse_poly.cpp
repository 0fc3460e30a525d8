#include "egvi/cert/sparse_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "egvi/errors.hpp"

namespace egvi::cert {

namespace {

void check_variable(int var) {
  if (var < 0 || var >= kMaxVariables)
    throw InvalidArgumentError("polynomial variable index out of range: " + std::to_string(var));
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out{};
  for (int i = 0; i < kMaxVariables; ++i) {
    int e = a[i] + b[i];
    if (e > 255) throw InvalidArgumentError("monomial exponent overflow");
    out[i] = static_cast<std::uint8_t>(e);
  }
  return out;
}

bool divides(const Monomial& d, const Monomial& m) {
  for (int i = 0; i < kMaxVariables; ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Monomial quotient(const Monomial& m, const Monomial& d) {
  Monomial out{};
  for (int i = 0; i < kMaxVariables; ++i) out[i] = static_cast<std::uint8_t>(m[i] - d[i]);
  return out;
}

}  // namespace

Monomial make_monomial(std::initializer_list<std::pair<int, int>> powers) {
  Monomial m{};
  for (auto [var, exp] : powers) {
    check_variable(var);
    if (exp < 0 || m[var] + exp > 255) throw InvalidArgumentError("invalid monomial exponent");
    m[var] = static_cast<std::uint8_t>(m[var] + exp);
  }
  return m;
}

int monomial_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

SparsePoly::SparsePoly(Rational constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, std::move(constant));
}

SparsePoly SparsePoly::variable(int index) {
  check_variable(index);
  return term(make_monomial({{index, 1}}), Rational(1));
}

SparsePoly SparsePoly::term(const Monomial& m, Rational coefficient) {
  SparsePoly p;
  p.add_term(m, coefficient);
  return p;
}

void SparsePoly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int SparsePoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

Rational SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<int> SparsePoly::variables() const {
  std::vector<int> out;
  for (int v = 0; v < kMaxVariables; ++v)
    for (const auto& [m, c] : terms_)
      if (m[v] > 0) {
        out.push_back(v);
        break;
      }
  return out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& o) { return *this = *this * o; }

SparsePoly SparsePoly::operator-() const {
  SparsePoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

SparsePoly SparsePoly::pow(unsigned exponent) const {
  SparsePoly result(1), base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

SparsePoly SparsePoly::substitute(int var, const SparsePoly& value) const {
  check_variable(var);
  std::vector<SparsePoly> powers{SparsePoly(1)};
  SparsePoly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int e = rest[var];
    rest[var] = 0;
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    out += SparsePoly::term(rest, c) * powers[e];
  }
  return out;
}

Rational SparsePoly::evaluate(const std::vector<Rational>& values) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < kMaxVariables; ++v) {
      if (m[v] == 0) continue;
      if (v >= static_cast<int>(values.size()))
        throw InvalidArgumentError("no value for polynomial variable " + std::to_string(v));
      for (int e = 0; e < m[v]; ++e) t *= values[v];
    }
    total += t;
  }
  return total;
}

std::optional<SparsePoly> SparsePoly::divide_exact(const SparsePoly& divisor) const {
  if (divisor.is_zero()) throw InvalidArgumentError("division by the zero polynomial");
  const auto& [lead_m, lead_c] = *divisor.terms_.rbegin();
  SparsePoly remainder = *this, q;
  while (!remainder.is_zero()) {
    const Monomial m = remainder.terms_.rbegin()->first;
    const Rational c = remainder.terms_.rbegin()->second;
    // With a monomial order the leading term of an exact multiple is divisible
    // by the divisor's leading term.
    if (!divides(lead_m, m)) return std::nullopt;
    SparsePoly step = SparsePoly::term(quotient(m, lead_m), c / lead_c);
    remainder -= step * divisor;
    q += step;
  }
  return q;
}

std::map<Monomial, SparsePoly> SparsePoly::group_by(const std::vector<int>& coefficient_vars) const {
  std::map<Monomial, SparsePoly> out;
  for (const auto& [m, c] : terms_) {
    Monomial key = m, inner{};
    for (int v : coefficient_vars) {
      inner[v] = key[v];
      key[v] = 0;
    }
    out[key] += SparsePoly::term(inner, c);
  }
  return out;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::ostringstream out;
  bool first = true;
  for (int v = 0; v < kMaxVariables; ++v) {
    if (m[v] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << (v < static_cast<int>(names.size()) ? names[v] : "v" + std::to_string(v));
    if (m[v] > 1) out << '^' << int(m[v]);
  }
  return first ? "1" : out.str();
}

std::string SparsePoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest monomial first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool constant = m == Monomial{};
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out << '-';
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (constant) {
      out << mag.to_string();
    } else {
      if (mag != Rational(1)) out << mag.to_string() << '*';
      out << monomial_to_string(m, names);
    }
  }
  return out.str();
}

}  // namespace egvi::cert
