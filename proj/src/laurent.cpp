#include "pherm/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include <unsupported/Eigen/FFT>

#include "pherm/error.hpp"

namespace pherm {

int lcm_int(int a, int b) { return std::lcm(a, b); }

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

long next_power_of_two(long n) {
  long p = 1;
  while (p < n) p <<= 1;
  return p;
}

FracLaurent::FracLaurent() = default;

FracLaurent::FracLaurent(int den, int lo, std::vector<cplx> coeffs)
    : den_(den), lo_(lo), coeffs_(std::move(coeffs)) {
  if (den_ < 1) throw RangeError("FracLaurent: denominator must be >= 1");
  if (coeffs_.empty()) {
    *this = FracLaurent();
    return;
  }
  canonicalize();
}

FracLaurent FracLaurent::constant(cplx c) { return FracLaurent(1, 0, {c}); }

FracLaurent FracLaurent::monomial(cplx c, int k, int den) {
  return FracLaurent(den, k, {c});
}

void FracLaurent::canonicalize() {
  const auto nonzero = [](cplx c) { return c != cplx{0.0, 0.0}; };
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), nonzero);
  if (first == coeffs_.end()) {
    den_ = 1;
    lo_ = 0;
    coeffs_.assign(1, cplx{0.0, 0.0});
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), nonzero).base();
  lo_ += static_cast<int>(first - coeffs_.begin());
  coeffs_ = std::vector<cplx>(first, last);

  int g = den_;
  for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
    if (nonzero(coeffs_[i])) g = std::gcd(g, std::abs(lo_ + static_cast<int>(i)));
  }
  if (g > 1) {
    std::vector<cplx> reduced;
    reduced.reserve(coeffs_.size() / g + 1);
    // lo_ is a multiple of g because a_lo != 0.
    for (std::size_t i = 0; i < coeffs_.size(); i += g) reduced.push_back(coeffs_[i]);
    coeffs_ = std::move(reduced);
    lo_ /= g;
    den_ /= g;
  }
}

cplx FracLaurent::coeff(int k) const noexcept {
  if (k < lo_ || k > hi()) return {0.0, 0.0};
  return coeffs_[k - lo_];
}

cplx FracLaurent::coeff_at(int k, int den) const noexcept {
  const int step = den / den_;
  if (step <= 0 || k % step != 0) return {0.0, 0.0};
  return coeff(k / step);
}

bool FracLaurent::is_zero() const noexcept {
  return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0, 0.0};
}

double FracLaurent::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double FracLaurent::degree_span() const noexcept {
  if (is_zero()) return 0.0;
  return static_cast<double>(std::max(std::abs(lo_), std::abs(hi()))) / den_;
}

int FracLaurent::bandwidth_at(int den) const noexcept {
  if (is_zero()) return 0;
  const int step = den / den_;
  return step * std::max(std::abs(lo_), std::abs(hi()));
}

FracLaurent FracLaurent::truncated(double rel_tol) const {
  const double cut = rel_tol * max_abs();
  std::vector<cplx> c = coeffs_;
  for (auto& a : c) {
    if (std::abs(a) <= cut) a = {0.0, 0.0};
  }
  return FracLaurent(den_, lo_, std::move(c));
}

double reduce_angle(double theta, int den) {
  const double period = 2.0 * kPi * den;
  double r = std::remainder(theta, period);
  if (r <= -kPi * den) r += period;
  return r;
}

namespace {

cplx eval_series(const FracLaurent& f, double theta, int order) {
  const int den = f.den();
  const double t = reduce_angle(theta, den);
  const cplx w = std::polar(1.0, t / den);
  const auto c = f.coeffs();
  // Horner in w over the stored band, then the w^lo factor.
  cplx acc{0.0, 0.0};
  for (int idx = static_cast<int>(c.size()) - 1; idx >= 0; --idx) {
    cplx a = c[idx];
    if (order > 0) {
      const int k = f.lo() + idx;
      a *= std::pow(cplx{0.0, static_cast<double>(k) / den}, order);
    }
    acc = acc * w + a;
  }
  return acc * std::polar(1.0, t * f.lo() / den);
}

// Coefficients of f at denominator `den` over [lo, hi] (den multiple of f.den()).
struct Lifted {
  int lo;
  std::vector<cplx> c;
};

Lifted lift(const FracLaurent& f, int den) {
  const int step = den / f.den();
  Lifted out;
  out.lo = f.lo() * step;
  const int width = (f.hi() - f.lo()) * step + 1;
  out.c.assign(width, cplx{0.0, 0.0});
  const auto src = f.coeffs();
  for (std::size_t i = 0; i < src.size(); ++i) out.c[i * step] = src[i];
  return out;
}

}  // namespace

cplx lp_eval(const FracLaurent& f, double theta) { return eval_series(f, theta, 0); }

cplx lp_eval_derivative(const FracLaurent& f, double theta, int order) {
  return eval_series(f, theta, order);
}

FracLaurent lp_para_conj(const FracLaurent& f) {
  const auto c = f.coeffs();
  std::vector<cplx> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[c.size() - 1 - i] = std::conj(c[i]);
  return FracLaurent(f.den(), -f.hi(), std::move(out));
}

FracLaurent lp_shift(const FracLaurent& f, double delta) {
  const auto c = f.coeffs();
  std::vector<cplx> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int k = f.lo() + static_cast<int>(i);
    out[i] = c[i] * std::polar(1.0, k * delta / f.den());
  }
  return FracLaurent(f.den(), f.lo(), std::move(out));
}

FracLaurent lp_from_samples_at(std::span<const cplx> samples, int den,
                               double theta_start, double shift, double tol, double ref_scale) {
  const int K = static_cast<int>(samples.size());
  if (K < 1) throw RangeError("lp_from_samples: no samples");
  if (den < 1) throw RangeError("lp_from_samples: denominator must be >= 1");

  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, in);

  const int kmin = -(K / 2);
  std::vector<cplx> coeffs(K);
  double scale = 0.0;
  for (int idx = 0; idx < K; ++idx) {
    const int k = kmin + idx;
    const int bin = ((k % K) + K) % K;
    const double phase = -k * (theta_start / den + 2.0 * kPi * shift / K);
    coeffs[idx] = spec[bin] / static_cast<double>(K) * std::polar(1.0, phase);
    scale = std::max(scale, std::abs(coeffs[idx]));
  }
  scale = std::max(scale, ref_scale);

  // Decay check on the outer band of resolvable exponents.
  const int guard = std::max(1, K / 8);
  double edge = 0.0;
  for (int idx = 0; idx < K; ++idx) {
    const int k = kmin + idx;
    if (std::abs(k) > K / 2 - guard) edge = std::max(edge, std::abs(coeffs[idx]));
  }
  if (scale > 0.0 && edge > 10.0 * tol * scale) {
    throw AliasError("lp_from_samples: coefficients not decayed at the band edge (edge/max = " +
                     std::to_string(edge / scale) + ", K = " + std::to_string(K) + ")");
  }

  for (auto& a : coeffs) {
    if (std::abs(a) <= tol * scale) a = {0.0, 0.0};
  }
  return FracLaurent(den, kmin, std::move(coeffs));
}

FracLaurent lp_from_samples(std::span<const cplx> samples, int den, double tol) {
  if (!is_power_of_two(static_cast<long>(samples.size()))) {
    throw RangeError("lp_from_samples: sample count must be a power of two");
  }
  return lp_from_samples_at(samples, den, -kPi * den, 0.0, tol);
}

FracLaurent operator+(const FracLaurent& f, const FracLaurent& g) {
  const int den = lcm_int(f.den(), g.den());
  const Lifted a = lift(f, den);
  const Lifted b = lift(g, den);
  const int lo = std::min(a.lo, b.lo);
  const int hi = std::max(a.lo + static_cast<int>(a.c.size()), b.lo + static_cast<int>(b.c.size()));
  std::vector<cplx> c(hi - lo, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.c.size(); ++i) c[a.lo - lo + i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[b.lo - lo + i] += b.c[i];
  return FracLaurent(den, lo, std::move(c));
}

FracLaurent operator-(const FracLaurent& f) { return scale(f, -1.0); }

FracLaurent operator-(const FracLaurent& f, const FracLaurent& g) { return f + (-g); }

FracLaurent operator*(const FracLaurent& f, const FracLaurent& g) {
  const int den = lcm_int(f.den(), g.den());
  const Lifted a = lift(f, den);
  const Lifted b = lift(g, den);
  std::vector<cplx> c(a.c.size() + b.c.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return FracLaurent(den, a.lo + b.lo, std::move(c));
}

FracLaurent scale(const FracLaurent& f, cplx c) {
  std::vector<cplx> out(f.coeffs().begin(), f.coeffs().end());
  for (auto& a : out) a *= c;
  return FracLaurent(f.den(), f.lo(), std::move(out));
}

double max_coeff_diff(const FracLaurent& f, const FracLaurent& g) {
  const int den = lcm_int(f.den(), g.den());
  const Lifted a = lift(f, den);
  const Lifted b = lift(g, den);
  const int lo = std::min(a.lo, b.lo);
  const int hi = std::max(a.lo + static_cast<int>(a.c.size()), b.lo + static_cast<int>(b.c.size()));
  double worst = 0.0;
  for (int k = lo; k < hi; ++k) {
    const int ia = k - a.lo;
    const int ib = k - b.lo;
    const cplx va = (ia >= 0 && ia < static_cast<int>(a.c.size())) ? a.c[ia] : cplx{};
    const cplx vb = (ib >= 0 && ib < static_cast<int>(b.c.size())) ? b.c[ib] : cplx{};
    worst = std::max(worst, std::abs(va - vb));
  }
  return worst;
}

}  // namespace pherm
