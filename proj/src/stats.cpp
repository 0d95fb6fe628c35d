#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "mathutil.hpp"

namespace ecgkit {

namespace {

// Counts of rank arrangements per U value for tie-free samples, from the
// recursion c(m, n, u) = c(m-1, n, u-n) + c(m, n-1, u). Rolls over n with a
// (m x u) table; counts stay well inside double precision for the sizes the
// exact branch sees.
std::vector<double> u_distribution(size_t n1, size_t n2) {
  const size_t umax = n1 * n2;
  std::vector<std::vector<double>> prev(n1 + 1,
                                        std::vector<double>(umax + 1, 0.0));
  for (size_t m = 0; m <= n1; ++m) prev[m][0] = 1.0;  // n = 0 base case
  auto cur = prev;
  for (size_t n = 1; n <= n2; ++n) {
    for (auto& row : cur) std::fill(row.begin(), row.end(), 0.0);
    cur[0][0] = 1.0;
    for (size_t m = 1; m <= n1; ++m)
      for (size_t u = 0; u <= umax; ++u)
        cur[m][u] = (u >= n ? cur[m - 1][u - n] : 0.0) + prev[m][u];
    std::swap(prev, cur);
  }
  return prev[n1];
}

}  // namespace

double mann_whitney_exact_p(size_t n1, size_t n2, double u) {
  const std::vector<double> counts = u_distribution(n1, n2);
  double total = 0.0;
  for (double c : counts) total += c;
  const double mu = 0.5 * static_cast<double>(n1 * n2);
  const double dev = std::fabs(u - mu);
  double tail = 0.0;
  for (size_t v = 0; v < counts.size(); ++v)
    if (std::fabs(static_cast<double>(v) - mu) >= dev - 1e-9) tail += counts[v];
  return std::min(1.0, tail / total);
}

TestResult mann_whitney(std::span<const double> a, std::span<const double> b,
                        double alpha, MwMethod method,
                        bool continuity_correction) {
  if (a.empty() || b.empty())
    fail(ErrorKind::argument, "mann_whitney: empty sample");
  const size_t n1 = a.size(), n2 = b.size();
  const size_t total_n = n1 + n2;

  std::vector<double> pooled;
  pooled.reserve(total_n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = midranks(pooled);

  double rank_sum_a = 0.0;
  for (size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];
  const double u_a =
      rank_sum_a - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);

  const double tie_sum = tie_correction_sum(pooled);
  const bool has_ties = tie_sum > 0.0;

  const double mu = 0.5 * static_cast<double>(n1) * static_cast<double>(n2);
  const double nn = static_cast<double>(total_n);
  double sigma2 = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
                  ((nn + 1.0) - tie_sum / (nn * (nn - 1.0)));
  const double sigma = std::sqrt(std::max(sigma2, 0.0));

  // z < 0 when a outranks b: flip the usual (U - mu) direction.
  double diff = mu - u_a;
  if (continuity_correction) {
    if (diff > 0.5) diff -= 0.5;
    else if (diff < -0.5) diff += 0.5;
    else diff = 0.0;
  }
  const double z = sigma > 0.0 ? diff / sigma : 0.0;

  TestResult result;
  result.n_per_group = {n1, n2};
  result.statistic = z;
  result.u = u_a;

  const bool want_exact =
      method == MwMethod::exact ||
      (method == MwMethod::automatic && !has_ties && std::min(n1, n2) <= 8);
  if (want_exact && !has_ties) {
    result.exact = true;
    result.p_value = mann_whitney_exact_p(n1, n2, u_a);
  } else {
    result.p_value = sigma > 0.0 ? normal_two_sided_p(z) : 1.0;
  }
  result.significant = result.p_value < alpha;
  return result;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups,
                          double alpha) {
  if (groups.size() < 2)
    fail(ErrorKind::argument, "kruskal_wallis: need >= 2 groups");
  for (const auto& g : groups)
    if (g.empty()) fail(ErrorKind::argument, "kruskal_wallis: empty group");

  std::vector<double> pooled;
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  const std::vector<double> ranks = midranks(pooled);
  const double nn = static_cast<double>(pooled.size());

  double h = 0.0;
  size_t offset = 0;
  TestResult result;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
    h += rank_sum * rank_sum / static_cast<double>(g.size());
    offset += g.size();
    result.n_per_group.push_back(g.size());
  }
  h = 12.0 / (nn * (nn + 1.0)) * h - 3.0 * (nn + 1.0);

  const double tie_sum = tie_correction_sum(pooled);
  const double correction = 1.0 - tie_sum / (nn * nn * nn - nn);
  if (correction > 0.0) h /= correction;
  h = std::max(h, 0.0);

  result.statistic = h;
  result.p_value =
      chi_square_sf(h, static_cast<double>(groups.size()) - 1.0);
  result.significant = result.p_value < alpha;
  return result;
}

}  // namespace ecgkit
