#pragma once

#include <span>
#include <vector>

namespace ecgkit {

struct TestResult {
  double statistic = 0.0;  // z for Mann-Whitney, H for Kruskal-Wallis
  double u = 0.0;          // Mann-Whitney U of the first sample
  double p_value = 1.0;
  std::vector<size_t> n_per_group;
  bool significant = false;
  bool exact = false;  // Mann-Whitney: exact enumeration branch used
};

enum class MwMethod { automatic, exact, normal };

// Two-sided Mann-Whitney test. Sign convention: z < 0 when group a has the
// higher mean rank. The exact branch (dynamic-programming enumeration of
// the U distribution) runs for tie-free samples with min(n1, n2) <= 8;
// otherwise the normal approximation with tie-corrected variance and, by
// default, a 0.5 continuity correction.
TestResult mann_whitney(std::span<const double> a, std::span<const double> b,
                        double alpha = 0.001,
                        MwMethod method = MwMethod::automatic,
                        bool continuity_correction = true);

// Tie-corrected Kruskal-Wallis H with a chi-square tail on k-1 degrees of
// freedom.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups,
                          double alpha = 0.001);

// Exact two-sided p for a given U via the tie-free U-count recursion.
// Exposed for the test suite's cross-checks.
double mann_whitney_exact_p(size_t n1, size_t n2, double u);

}  // namespace ecgkit
