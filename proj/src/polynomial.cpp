#include "qft/polynomial.hpp"

#include <algorithm>
#include <boost/multiprecision/miller_rabin.hpp>
#include <map>
#include <set>
#include <stdexcept>

namespace qft {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::x() { return RationalPolynomial({Rational(0), Rational(1)}); }

void RationalPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational RationalPolynomial::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t a = 0; a < c_.size(); ++a) {
    if (c_[a] == 0) continue;
    for (std::size_t b = 0; b < o.c_.size(); ++b) r[a + b] += c_[a] * o.c_[b];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

RationalPolynomial RationalPolynomial::operator-() const {
  RationalPolynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

RationalPolynomial RationalPolynomial::derivative() const {
  std::vector<Rational> r;
  for (std::size_t k = 1; k < c_.size(); ++k) r.push_back(c_[k] * static_cast<long>(k));
  return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::compose(const RationalPolynomial& q) const {
  RationalPolynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
  return acc;
}

RationalPolynomial RationalPolynomial::monic() const {
  if (c_.empty()) return *this;
  return *this * Rational(1 / leading());
}

std::vector<BigInt> RationalPolynomial::primitive_integer_coeffs() const {
  if (c_.empty()) return {};
  BigInt l = 1;
  for (const auto& c : c_) l = boost::multiprecision::lcm(l, denominator_of(c));
  std::vector<BigInt> z;
  BigInt g = 0;
  for (const auto& c : c_) {
    BigInt v = numerator_of(c) * (l / denominator_of(c));
    g = boost::multiprecision::gcd(g, v);
    z.push_back(v);
  }
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    bool unit = mag == 1 && k > 0;
    if (!unit) out += qft::to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

PolyDivision divmod(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {RationalPolynomial(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1));
  Rational lead = b.leading();
  for (int k = da; k >= db; --k) {
    Rational q = rem[static_cast<std::size_t>(k)] / lead;
    quo[static_cast<std::size_t>(k - db)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(j);
  }
  return {RationalPolynomial(std::move(quo)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// Prime factorisation by trial division plus a primality test on the cofactor.
std::map<BigInt, int> factor(BigInt n) {
  std::map<BigInt, int> f;
  if (n < 0) n = -n;
  for (BigInt p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2))
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  if (n > 1) {
    if (n >= BigInt(1000000) * 1000000 && !boost::multiprecision::miller_rabin_test(n, 25))
      throw std::domain_error("rational_roots: coefficient too hard to factor");
    ++f[n];
  }
  return f;
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> ds{1};
  for (const auto& [p, e] : factor(n)) {
    std::size_t base = ds.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
    }
  }
  return ds;
}

}  // namespace

std::vector<Rational> rational_roots(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
  std::set<Rational> roots;
  std::vector<BigInt> z = p.primitive_integer_coeffs();
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  if (z.size() - low <= 1) return {roots.begin(), roots.end()};
  auto num = divisors(z[low]);
  auto den = divisors(z.back());
  for (const auto& a : num)
    for (const auto& b : den)
      for (int s : {1, -1}) {
        Rational r(BigInt(a * s), b);
        if (p(r) == 0) roots.insert(r);
      }
  return {roots.begin(), roots.end()};
}

}  // namespace qft
