#pragma once

// Truncated formal power series c_0 + c_1 z + ... + c_K z^K over Q.

#include <stdexcept>
#include <string>
#include <vector>

#include "qft/numeric.hpp"
#include "qft/polynomial.hpp"

namespace qft {

class PowerSeries {
 public:
  /// Zero series known to order K.
  explicit PowerSeries(int K = 0);
  /// Coefficients beyond K are dropped, missing ones are zero.
  PowerSeries(std::vector<Rational> coeffs, int K);

  static PowerSeries one(int K);
  static PowerSeries z(int K);
  /// Expansion of num/den; den(0) must be nonzero.
  static PowerSeries from_rational(const RationalPolynomial& num, const RationalPolynomial& den, int K);

  int order() const { return K_; }
  const Rational& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
  Rational& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
  const std::vector<Rational>& coeffs() const { return c_; }

  /// Same series known to a smaller order.
  PowerSeries truncated(int K) const;

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(PowerSeries a, const Rational& s);
  PowerSeries operator-() const;

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) = default;

  /// Requires c_0 != 0.
  PowerSeries reciprocal() const;
  /// Requires c_0 == 0.
  PowerSeries exp() const;
  /// Requires c_0 == 1.
  PowerSeries log() const;
  /// Known to order K - 1.
  PowerSeries derivative() const;

  bool is_integral() const;
  std::string to_string(const std::string& var = "z") const;

 private:
  int K_;
  std::vector<Rational> c_;
};

/// Series precondition failures (non-unit constant term, ...).
class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qft
