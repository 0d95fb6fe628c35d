#pragma once

#include "signal.hpp"

namespace ecgkit {

// Subtracts the least-squares polynomial fit of the given order. The
// sample-index axis is rescaled to [-1, 1] and the fit uses a Chebyshev
// basis: an order-20 monomial fit on raw indices is singular in doubles,
// while the Chebyshev fit spans the same polynomial subspace.
Signal detrend_polynomial(const Signal& signal, int order = 20);

// Zero mean, unit population (divisor n) standard deviation. Throws an
// ErrorKind::degenerate on flat input.
Signal standardize(const Signal& signal);

struct RPeakParams {
  double threshold_quantile = 0.95;
  double threshold_scale = 0.6;
  // Amplitude gate as a fraction of the global maximum; keeps noise-floor
  // local maxima out when the quantile threshold lands below them.
  double max_fraction = 0.5;
  double refractory_ms = 200.0;
};

// Strict local maxima above an adaptive threshold, separated by the
// refractory period (the larger peak wins inside it). Expects a detrended,
// standardized signal. Fewer than 2 peaks leaves rr_intervals empty; the
// caller treats RR features as missing.
PeakTrain detect_r_peaks(const Signal& signal, const RPeakParams& params = {});

}  // namespace ecgkit
