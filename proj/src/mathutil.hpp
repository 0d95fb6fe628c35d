// Shared numeric helpers: moments, quantiles, mid-ranks, least squares,
// chi-square tails. Everything here is deterministic and allocation-light;
// the heavier per-measure code lives in its own module.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ecgkit {

double mean(std::span<const double> x);
// Population variance (divisor n).
double variance_population(std::span<const double> x);
double stddev_population(std::span<const double> x);
// Sample variance (divisor n-1); 0 for n < 2.
double variance_sample(std::span<const double> x);
double stddev_sample(std::span<const double> x);
double median(std::span<const double> x);

// Quantile with linear interpolation between order statistics, q in [0,1].
double quantile(std::span<const double> x, double q);

// Mid-ranks (1-based, ties averaged). Rank means are exactly (n+1)/2.
std::vector<double> midranks(std::span<const double> x);

// Sum of t^3 - t over tie groups, as used by rank-test tie corrections.
double tie_correction_sum(std::span<const double> x);

// Least-squares solution of A w = b via Householder QR. A is row-major
// n x p with n >= p and full column rank.
std::vector<double> least_squares(const std::vector<double>& a, size_t n,
                                  size_t p, std::span<const double> b);

// Slope of the least-squares line through (x, y).
double fit_slope(std::span<const double> x, std::span<const double> y);

// Upper tail of the chi-square distribution with k degrees of freedom.
double chi_square_sf(double x, double k);

// Two-sided normal tail: P(|Z| >= |z|).
double normal_two_sided_p(double z);

// Biased autocorrelation at the given lag (0 at lag >= n).
double autocorrelation(std::span<const double> x, size_t lag);

// FNV-1a, used for config hashes.
uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace ecgkit
