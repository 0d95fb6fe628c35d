#include "crosschannel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "mathutil.hpp"

namespace ecgkit {

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    fail(ErrorKind::argument, "spearman: length mismatch");
  const size_t n = x.size();
  if (n < 3) fail(ErrorKind::argument, "spearman: need >= 3 samples");

  const std::vector<double> rx = midranks(x);
  const std::vector<double> ry = midranks(y);

  // Mid-ranks always sum to n(n+1)/2, so the mean is (n+1)/2 exactly;
  // centering on it keeps spearman(x, x) == 1 and spearman(x, -x) == -1
  // bit-exact.
  const double mid = 0.5 * static_cast<double>(n + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double cx = rx[i] - mid;
    const double cy = ry[i] - mid;
    sxy += cx * cy;
    sxx += cx * cx;
    syy += cy * cy;
  }
  if (sxx == 0.0 || syy == 0.0)
    fail(ErrorKind::degenerate, "spearman: constant input");
  return sxy / std::sqrt(sxx * syy);
}

double mutual_information(std::span<const double> x, std::span<const double> y,
                          int bins) {
  if (x.size() != y.size())
    fail(ErrorKind::argument, "mutual_information: length mismatch");
  if (bins < 2) fail(ErrorKind::argument, "mutual_information: bins < 2");
  const size_t n = x.size();
  if (n == 0) fail(ErrorKind::argument, "mutual_information: empty input");

  const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double xmin = *xmin_it, xmax = *xmax_it;
  const double ymin = *ymin_it, ymax = *ymax_it;
  if (xmax == xmin || ymax == ymin) return 0.0;  // degenerate marginal

  const auto b = static_cast<size_t>(bins);
  auto bin_of = [b](double v, double lo, double hi) {
    const auto idx = static_cast<long long>((v - lo) / (hi - lo) *
                                            static_cast<double>(b));
    return static_cast<size_t>(
        std::clamp<long long>(idx, 0, static_cast<long long>(b) - 1));
  };

  std::vector<size_t> joint(b * b, 0);
  std::vector<size_t> mx(b, 0), my(b, 0);
  for (size_t i = 0; i < n; ++i) {
    const size_t bx = bin_of(x[i], xmin, xmax);
    const size_t by = bin_of(y[i], ymin, ymax);
    ++joint[bx * b + by];
    ++mx[bx];
    ++my[by];
  }

  // Summing p*(ln p - (ln px + ln py)) keeps MI(x, x) equal to the marginal
  // entropy computed the same way, and pairing each cell with its transpose
  // makes MI(x, y) == MI(y, x) bit-exact.
  const auto dn = static_cast<double>(n);
  std::vector<double> log_mx(b, 0.0), log_my(b, 0.0);
  for (size_t i = 0; i < b; ++i) {
    if (mx[i]) log_mx[i] = std::log(static_cast<double>(mx[i]) / dn);
    if (my[i]) log_my[i] = std::log(static_cast<double>(my[i]) / dn);
  }
  auto term = [&](size_t i, size_t j) {
    const size_t c = joint[i * b + j];
    if (c == 0) return 0.0;
    const double p = static_cast<double>(c) / dn;
    return p * (std::log(p) - (log_mx[i] + log_my[j]));
  };
  double mi = 0.0;
  for (size_t i = 0; i < b; ++i) {
    mi += term(i, i);
    for (size_t j = i + 1; j < b; ++j) mi += term(i, j) + term(j, i);
  }
  return mi;
}

}  // namespace ecgkit
