#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ecgkit {

struct ComplexityParams {
  int hd_kmax = 10;
  int apen_m = 2;
  double apen_r = 0.2;  // tolerance as multiple of the signal std
  int permen_m = 3;
  int permen_tau = 1;
  int mse_scales = 20;  // scales 1..mse_scales
  int mse_m = 2;
  double mse_r = 0.15;  // multiple of the original signal's std, fixed across scales
};

// Higuchi's fractal dimension: slope of log mean curve length L(k) against
// log(1/k) over k = 1..kmax, with the usual k-offset subsampled curves.
double higuchi_fd(std::span<const double> x, int kmax);

// Approximate entropy, self-matches included, Chebyshev distance,
// r = r_multiple * population std. Both template sums run over the n-m
// offsets shared by the m- and (m+1)-length windows, which keeps the
// statistic nonnegative and makes perfectly periodic inputs score 0.
double approx_entropy(std::span<const double> x, int m, double r_multiple);

// Sample entropy with an absolute tolerance r (template counting without
// self-matches). Returns NaN when no template pair matches at either length.
double sample_entropy(std::span<const double> x, int m, double r);

// Shannon entropy (nats) of ordinal-pattern frequencies; ties keep their
// order of appearance. Normalized form divides by log(m!).
double permutation_entropy(std::span<const double> x, int m, int tau,
                           bool normalize);

// LZ76 exhaustive-history phrase count of the median-binarized signal.
size_t lz76_phrase_count(std::span<const uint8_t> symbols);
std::vector<uint8_t> binarize_by_median(std::span<const double> x);
// Normalized complexity c(n) * log2(n) / n.
double lz_complexity(std::span<const double> x);

struct MseResult {
  std::vector<double> curve;  // per-scale sample entropy, NaN when unavailable
  double scalar = 0.0;        // mean over available scales
};

// Coarse-grain by non-overlapping means of width s for s = 1..n_scales and
// compute sample entropy at each scale; the tolerance is fixed from the
// original series.
MseResult multiscale_entropy(std::span<const double> x, int n_scales, int m,
                             double r_multiple);

}  // namespace ecgkit
