#pragma once

#include <span>

namespace ecgkit {

// Spearman rank correlation: Pearson correlation of mid-ranks, ties
// averaged. Throws ErrorKind::degenerate when either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

// Mutual information (nats) from a bins x bins equal-width joint histogram
// spanning each signal's [min, max]. No bias correction. Constant input
// yields 0 (degenerate marginal).
double mutual_information(std::span<const double> x, std::span<const double> y,
                          int bins);

}  // namespace ecgkit
