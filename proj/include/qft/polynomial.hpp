#pragma once

// Dense univariate polynomials with exact rational coefficients.

#include <string>
#include <vector>

#include "qft/numeric.hpp"

namespace qft {

class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);  // coeffs[k] multiplies x^k
  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial x();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const;
  Rational leading() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& x) const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const Rational& s);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& s) { return a *= s; }
  friend RationalPolynomial operator*(const Rational& s, RationalPolynomial a) { return a *= s; }
  RationalPolynomial operator-() const;

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.c_ == b.c_; }

  RationalPolynomial derivative() const;
  /// p(q(x)).
  RationalPolynomial compose(const RationalPolynomial& q) const;
  RationalPolynomial monic() const;

  /// Integer coefficients of the primitive positive-leading multiple.
  std::vector<BigInt> primitive_integer_coeffs() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct PolyDivision {
  RationalPolynomial quotient, remainder;
};

/// Throws std::domain_error on division by zero.
PolyDivision divmod(const RationalPolynomial& a, const RationalPolynomial& b);

/// Monic gcd; gcd(0, 0) = 0.
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// Rational roots (without multiplicity), found by the rational root theorem.
std::vector<Rational> rational_roots(const RationalPolynomial& p);

}  // namespace qft
