#include "mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace ecgkit {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance_population(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

double stddev_population(std::span<const double> x) {
  return std::sqrt(variance_population(x));
}

double variance_sample(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double stddev_sample(std::span<const double> x) {
  return std::sqrt(variance_sample(x));
}

double median(std::span<const double> x) {
  if (x.empty()) return std::nan("");
  std::vector<double> s(x.begin(), x.end());
  const size_t mid = s.size() / 2;
  std::nth_element(s.begin(), s.begin() + mid, s.end());
  double hi = s[mid];
  if (s.size() % 2 == 1) return hi;
  double lo = *std::max_element(s.begin(), s.begin() + mid);
  return 0.5 * (lo + hi);
}

double quantile(std::span<const double> x, double q) {
  if (x.empty()) return std::nan("");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  if (q <= 0.0) return s.front();
  if (q >= 1.0) return s.back();
  const double h = q * static_cast<double>(s.size() - 1);
  const size_t lo = static_cast<size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= s.size()) return s.back();
  return s[lo] + frac * (s[lo + 1] - s[lo]);
}

std::vector<double> midranks(std::span<const double> x) {
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    // ranks i+1..j+1 tie; their average is a multiple of 0.5, exact.
    const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double tie_correction_sum(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  double total = 0.0;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = i;
    while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    total += t * t * t - t;
    i = j + 1;
  }
  return total;
}

std::vector<double> least_squares(const std::vector<double>& a, size_t n,
                                  size_t p, std::span<const double> b) {
  if (a.size() != n * p || b.size() != n || n < p)
    throw std::invalid_argument("least_squares: bad dimensions");
  std::vector<double> r(a);  // row-major working copy, becomes R in place
  std::vector<double> y(b.begin(), b.end());

  // Householder QR, applying reflectors to y as we go.
  for (size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (size_t i = k; i < n; ++i) norm += r[i * p + k] * r[i * p + k];
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::runtime_error("least_squares: rank deficient");
    if (r[k * p + k] > 0) norm = -norm;
    std::vector<double> v(n - k);
    v[0] = r[k * p + k] - norm;
    for (size_t i = k + 1; i < n; ++i) v[i - k] = r[i * p + k];
    double vtv = 0.0;
    for (double vi : v) vtv += vi * vi;
    if (vtv == 0.0) continue;
    r[k * p + k] = norm;
    for (size_t i = k + 1; i < n; ++i) r[i * p + k] = 0.0;
    for (size_t j = k + 1; j < p; ++j) {
      double dot = 0.0;
      for (size_t i = k; i < n; ++i) dot += v[i - k] * r[i * p + j];
      const double f = 2.0 * dot / vtv;
      for (size_t i = k; i < n; ++i) r[i * p + j] -= f * v[i - k];
    }
    double dot = 0.0;
    for (size_t i = k; i < n; ++i) dot += v[i - k] * y[i];
    const double f = 2.0 * dot / vtv;
    for (size_t i = k; i < n; ++i) y[i] -= f * v[i - k];
  }

  std::vector<double> w(p, 0.0);
  for (size_t k = p; k-- > 0;) {
    double s = y[k];
    for (size_t j = k + 1; j < p; ++j) s -= r[k * p + j] * w[j];
    w[k] = s / r[k * p + k];
  }
  return w;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need >= 2 points");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::runtime_error("fit_slope: degenerate abscissa");
  return sxy / sxx;
}

namespace {

// Regularized incomplete gamma, lower (series) and upper (continued
// fraction) forms; the usual split at x = a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_sf(double x, double k) {
  if (x <= 0.0) return 1.0;
  const double a = 0.5 * k;
  const double hx = 0.5 * x;
  if (hx < a + 1.0) return 1.0 - gamma_p_series(a, hx);
  return gamma_q_contfrac(a, hx);
}

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

double autocorrelation(std::span<const double> x, size_t lag) {
  const size_t n = x.size();
  if (lag >= n) return 0.0;
  const double m = mean(x);
  double denom = 0.0;
  for (double v : x) denom += (v - m) * (v - m);
  if (denom == 0.0) return 0.0;
  double num = 0.0;
  for (size_t i = 0; i + lag < n; ++i) num += (x[i] - m) * (x[i + lag] - m);
  return num / denom;
}

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace ecgkit
