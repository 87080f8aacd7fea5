#include "qft/series.hpp"

#include <algorithm>

namespace qft {

PowerSeries::PowerSeries(int K) : K_(K), c_(static_cast<std::size_t>(K + 1)) {
  if (K < 0) throw SeriesError("negative truncation order");
}

PowerSeries::PowerSeries(std::vector<Rational> coeffs, int K) : PowerSeries(K) {
  for (std::size_t n = 0; n < coeffs.size() && n < c_.size(); ++n) c_[n] = std::move(coeffs[n]);
}

PowerSeries PowerSeries::one(int K) {
  PowerSeries s(K);
  s[0] = 1;
  return s;
}

PowerSeries PowerSeries::z(int K) {
  PowerSeries s(K);
  if (K >= 1) s[1] = 1;
  return s;
}

PowerSeries PowerSeries::from_rational(const RationalPolynomial& num, const RationalPolynomial& den, int K) {
  PowerSeries d(den.coeffs(), K);
  PowerSeries n(num.coeffs(), K);
  return n * d.reciprocal();
}

PowerSeries PowerSeries::truncated(int K) const {
  if (K > K_) throw SeriesError("cannot extend a truncated series");
  return PowerSeries(c_, K);
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  if (o.K_ < K_) *this = truncated(o.K_);
  for (int n = 0; n <= K_; ++n) c_[static_cast<std::size_t>(n)] += o[n];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  if (o.K_ < K_) *this = truncated(o.K_);
  for (int n = 0; n <= K_; ++n) c_[static_cast<std::size_t>(n)] -= o[n];
  return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const int K = std::min(a.K_, b.K_);
  PowerSeries r(K);
  for (int i = 0; i <= K; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= K; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

PowerSeries operator*(PowerSeries a, const Rational& s) {
  for (auto& c : a.c_) c *= s;
  return a;
}

PowerSeries PowerSeries::operator-() const { return *this * Rational(-1); }

PowerSeries PowerSeries::reciprocal() const {
  if (c_[0] == 0) throw SeriesError("reciprocal needs a nonzero constant term");
  PowerSeries r(K_);
  Rational inv = 1 / c_[0];
  r[0] = inv;
  for (int n = 1; n <= K_; ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n; ++k)
      if (c_[static_cast<std::size_t>(k)] != 0) acc += c_[static_cast<std::size_t>(k)] * r[n - k];
    r[n] = -acc * inv;
  }
  return r;
}

PowerSeries PowerSeries::exp() const {
  if (c_[0] != 0) throw SeriesError("exp needs a zero constant term");
  // n g_n = sum_{k=1}^n k f_k g_{n-k}
  PowerSeries g(K_);
  g[0] = 1;
  for (int n = 1; n <= K_; ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n; ++k)
      if (c_[static_cast<std::size_t>(k)] != 0) acc += Rational(k) * c_[static_cast<std::size_t>(k)] * g[n - k];
    g[n] = acc / n;
  }
  return g;
}

PowerSeries PowerSeries::log() const {
  if (c_[0] != 1) throw SeriesError("log needs constant term 1");
  // (log f)' = f'/f, integrated term by term
  PowerSeries q = derivative() * truncated(std::max(K_ - 1, 0)).reciprocal();
  PowerSeries r(K_);
  for (int n = 1; n <= K_; ++n) r[n] = q[n - 1] / n;
  return r;
}

PowerSeries PowerSeries::derivative() const {
  if (K_ == 0) return PowerSeries(0);
  PowerSeries d(K_ - 1);
  for (int n = 1; n <= K_; ++n) d[n - 1] = c_[static_cast<std::size_t>(n)] * n;
  return d;
}

bool PowerSeries::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return denominator_of(c) == 1; });
}

std::string PowerSeries::to_string(const std::string& var) const {
  std::string out;
  for (int n = 0; n <= K_; ++n) {
    const Rational& c = c_[static_cast<std::size_t>(n)];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational mag = c < 0 ? Rational(-c) : c;
    if (n == 0 || mag != 1) out += qft::to_string(mag) + (n > 0 ? "*" : "");
    if (n > 0) out += var + (n > 1 ? "^" + std::to_string(n) : "");
  }
  if (out.empty()) out = "0";
  return out + " + O(" + var + "^" + std::to_string(K_ + 1) + ")";
}

}  // namespace qft
