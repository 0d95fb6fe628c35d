#include "complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "errors.hpp"
#include "mathutil.hpp"

namespace ecgkit {

double higuchi_fd(std::span<const double> x, int kmax) {
  const size_t n = x.size();
  if (kmax < 2) fail(ErrorKind::argument, "higuchi_fd: kmax must be >= 2");
  if (n < 4 * static_cast<size_t>(kmax))
    fail(ErrorKind::argument, "higuchi_fd: signal shorter than 4*kmax");

  std::vector<double> log_inv_k(kmax), log_len(kmax);
  for (int k = 1; k <= kmax; ++k) {
    double total = 0.0;
    int curves = 0;
    for (int m0 = 0; m0 < k; ++m0) {
      const size_t steps = (n - 1 - static_cast<size_t>(m0)) / static_cast<size_t>(k);
      if (steps == 0) continue;
      double length = 0.0;
      for (size_t i = 1; i <= steps; ++i)
        length += std::fabs(x[m0 + i * k] - x[m0 + (i - 1) * k]);
      // Higuchi's normalization: rescale to the full record then divide by k.
      length *= static_cast<double>(n - 1) /
                (static_cast<double>(steps) * static_cast<double>(k));
      total += length / static_cast<double>(k);
      ++curves;
    }
    if (curves == 0) fail(ErrorKind::numeric, "higuchi_fd: empty curve set");
    log_inv_k[k - 1] = std::log(1.0 / static_cast<double>(k));
    log_len[k - 1] = std::log(total / static_cast<double>(curves));
  }
  return fit_slope(log_inv_k, log_len);
}

namespace {

// Chebyshev-distance template match with early exit.
inline bool chebyshev_match(const double* a, const double* b, int m, double r) {
  for (int t = 0; t < m; ++t) {
    const double d = std::fabs(a[t] - b[t]);
    if (d > r) return false;
  }
  return true;
}

}  // namespace

double approx_entropy(std::span<const double> x, int m, double r_multiple) {
  const size_t n = x.size();
  if (m < 1) fail(ErrorKind::argument, "approx_entropy: m must be >= 1");
  if (n <= static_cast<size_t>(m) + 1)
    fail(ErrorKind::argument, "approx_entropy: signal too short");
  const double sd = stddev_population(x);
  if (sd <= 0.0) fail(ErrorKind::degenerate, "approx_entropy: flat signal");
  const double r = r_multiple * sd;

  const size_t count = n - static_cast<size_t>(m);  // offsets valid for both lengths
  double phi_m = 0.0, phi_m1 = 0.0;
  for (size_t i = 0; i < count; ++i) {
    size_t c_m = 0, c_m1 = 0;
    for (size_t j = 0; j < count; ++j) {
      if (!chebyshev_match(&x[i], &x[j], m, r)) continue;
      ++c_m;
      if (std::fabs(x[i + m] - x[j + m]) <= r) ++c_m1;
    }
    phi_m += std::log(static_cast<double>(c_m) / static_cast<double>(count));
    phi_m1 += std::log(static_cast<double>(c_m1) / static_cast<double>(count));
  }
  return (phi_m - phi_m1) / static_cast<double>(count);
}

double sample_entropy(std::span<const double> x, int m, double r) {
  const size_t n = x.size();
  if (m < 1) fail(ErrorKind::argument, "sample_entropy: m must be >= 1");
  if (n <= static_cast<size_t>(m) + 1) return std::nan("");
  if (r <= 0.0) fail(ErrorKind::argument, "sample_entropy: tolerance must be > 0");

  const size_t count = n - static_cast<size_t>(m);
  uint64_t b = 0, a = 0;
  for (size_t i = 0; i + 1 < count; ++i) {
    for (size_t j = i + 1; j < count; ++j) {
      if (!chebyshev_match(&x[i], &x[j], m, r)) continue;
      ++b;
      if (std::fabs(x[i + m] - x[j + m]) <= r) ++a;
    }
  }
  if (a == 0 || b == 0) return std::nan("");
  return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

double permutation_entropy(std::span<const double> x, int m, int tau,
                           bool normalize) {
  const size_t n = x.size();
  if (m < 2) fail(ErrorKind::argument, "permutation_entropy: m must be >= 2");
  if (tau < 1) fail(ErrorKind::argument, "permutation_entropy: tau must be >= 1");
  const size_t span = static_cast<size_t>(m - 1) * static_cast<size_t>(tau);
  if (n < span + 2)
    fail(ErrorKind::argument, "permutation_entropy: signal too short");

  const size_t windows = n - span;
  // Encode each window's ordinal pattern as a Lehmer-style index.
  std::vector<size_t> counts;
  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  counts.assign(static_cast<size_t>(factorial), 0);

  std::vector<int> perm(m);
  for (size_t w = 0; w < windows; ++w) {
    std::iota(perm.begin(), perm.end(), 0);
    // Stable sort keeps tied values in order of appearance.
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
      return x[w + static_cast<size_t>(a) * tau] < x[w + static_cast<size_t>(b) * tau];
    });
    size_t code = 0;
    for (int i = 0; i < m; ++i) {
      size_t smaller = 0;
      for (int j = i + 1; j < m; ++j)
        if (perm[j] < perm[i]) ++smaller;
      code = code * static_cast<size_t>(m - i) + smaller;
    }
    ++counts[code];
  }

  double h = 0.0;
  for (size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(windows);
    h -= p * std::log(p);
  }
  if (normalize) h /= std::log(factorial);
  return h;
}

std::vector<uint8_t> binarize_by_median(std::span<const double> x) {
  const double med = median(x);
  std::vector<uint8_t> s(x.size());
  for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] > med ? 1 : 0;
  return s;
}

// Exhaustive-history parse: repeatedly take the shortest prefix of the
// unparsed remainder that is not a substring of everything seen before it
// (self-overlap allowed); the final phrase counts even when reproducible.
size_t lz76_phrase_count(std::span<const uint8_t> s) {
  const size_t n = s.size();
  if (n <= 1) return n;
  size_t c = 1;  // the first symbol is always a phrase
  size_t l = 1;  // parsed prefix length
  size_t i = 0, k = 1, kmax = 1;
  while (true) {
    if (l + k > n) {
      ++c;
      break;
    }
    if (s[i + k - 1] == s[l + k - 1]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      kmax = std::max(kmax, k);
      ++i;
      if (i == l) {
        ++c;
        l += kmax;
        if (l >= n) break;
        i = 0;
        k = 1;
        kmax = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

double lz_complexity(std::span<const double> x) {
  if (x.size() < 2) fail(ErrorKind::argument, "lz_complexity: length < 2");
  const std::vector<uint8_t> symbols = binarize_by_median(x);
  const auto c = static_cast<double>(lz76_phrase_count(symbols));
  const auto n = static_cast<double>(x.size());
  return c * std::log2(n) / n;
}

MseResult multiscale_entropy(std::span<const double> x, int n_scales, int m,
                             double r_multiple) {
  if (n_scales < 1) fail(ErrorKind::argument, "multiscale_entropy: no scales");
  const double sd = stddev_population(x);
  if (sd <= 0.0) fail(ErrorKind::degenerate, "multiscale_entropy: flat signal");
  const double r = r_multiple * sd;

  MseResult result;
  result.curve.resize(static_cast<size_t>(n_scales), std::nan(""));
  double sum = 0.0;
  size_t available = 0;
  std::vector<double> coarse;
  for (int s = 1; s <= n_scales; ++s) {
    const size_t len = x.size() / static_cast<size_t>(s);
    if (len <= static_cast<size_t>(m) + 1) continue;
    coarse.resize(len);
    for (size_t j = 0; j < len; ++j) {
      double acc = 0.0;
      for (int t = 0; t < s; ++t) acc += x[j * static_cast<size_t>(s) + t];
      coarse[j] = acc / static_cast<double>(s);
    }
    const double se = sample_entropy(coarse, m, r);
    if (std::isnan(se)) continue;
    result.curve[s - 1] = se;
    sum += se;
    ++available;
  }
  result.scalar = available > 0 ? sum / static_cast<double>(available) : std::nan("");
  return result;
}

}  // namespace ecgkit
