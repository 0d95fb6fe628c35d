#include "recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "errors.hpp"
#include "mathutil.hpp"

namespace ecgkit {

std::vector<double> delay_embed(std::span<const double> x, int m, int tau) {
  if (m < 1) fail(ErrorKind::argument, "delay_embed: m must be >= 1");
  if (tau < 1) fail(ErrorKind::argument, "delay_embed: tau must be >= 1");
  const size_t span = static_cast<size_t>(m - 1) * static_cast<size_t>(tau);
  if (x.size() <= span)
    fail(ErrorKind::argument, "delay_embed: signal length " +
                                  std::to_string(x.size()) +
                                  " <= (m-1)*tau = " + std::to_string(span));
  const size_t count = x.size() - span;
  std::vector<double> points(count * static_cast<size_t>(m));
  for (size_t i = 0; i < count; ++i)
    for (int d = 0; d < m; ++d)
      points[i * m + d] = x[i + static_cast<size_t>(d) * tau];
  return points;
}

int autocorrelation_delay(std::span<const double> x, int cap, int fallback) {
  if (x.size() < 3) return fallback;
  const int max_lag = std::min<int>(cap, static_cast<int>(x.size()) - 2);
  double prev = autocorrelation(x, 0);
  double cur = autocorrelation(x, 1);
  for (int lag = 1; lag <= max_lag; ++lag) {
    // Zero crossing counts as well as a local minimum: waiting for the
    // minimum of a strongly periodic signal lands on the half period,
    // which collapses the embedding onto a line.
    if (cur <= 0.0) return lag;
    const double next = autocorrelation(x, static_cast<size_t>(lag) + 1);
    if (cur < prev && cur <= next) return lag;
    prev = cur;
    cur = next;
  }
  return fallback;
}

RecurrencePlot recurrence_matrix(std::span<const double> points, int m,
                                 double target_rr) {
  if (m < 1) fail(ErrorKind::argument, "recurrence_matrix: m must be >= 1");
  const size_t n = points.size() / static_cast<size_t>(m);
  if (n < 2) fail(ErrorKind::argument, "recurrence_matrix: need >= 2 points");
  if (!(target_rr > 0.0 && target_rr < 1.0))
    fail(ErrorKind::argument, "recurrence_matrix: target_rr outside (0,1)");

  // Squared pairwise distances over i < j; thresholding in the squared
  // domain avoids n^2/2 square roots.
  const size_t n_pairs = n * (n - 1) / 2;
  std::vector<double> d2(n_pairs);
  size_t idx = 0;
  for (size_t i = 0; i < n; ++i) {
    const double* pi = &points[i * m];
    for (size_t j = i + 1; j < n; ++j) {
      const double* pj = &points[j * m];
      double acc = 0.0;
      for (int d = 0; d < m; ++d) {
        const double diff = pi[d] - pj[d];
        acc += diff * diff;
      }
      d2[idx++] = acc;
    }
  }

  RecurrencePlot rp;
  rp.n = n;
  rp.params.m = m;

  std::vector<double> sorted(d2);
  std::sort(sorted.begin(), sorted.end());
  size_t k = static_cast<size_t>(
      std::llround(target_rr * static_cast<double>(n_pairs)));
  k = std::clamp<size_t>(k, 1, n_pairs);
  const double eps2 = sorted[k - 1];
  rp.epsilon = std::sqrt(eps2);
  rp.degenerate = sorted.back() == 0.0;

  rp.matrix.assign(n * n, 0);
  size_t ones = 0;
  idx = 0;
  for (size_t i = 0; i < n; ++i) {
    rp.matrix[i * n + i] = 1;
    for (size_t j = i + 1; j < n; ++j) {
      if (d2[idx++] <= eps2) {
        rp.matrix[i * n + j] = 1;
        rp.matrix[j * n + i] = 1;
        ++ones;
      }
    }
  }
  rp.recurrence_rate = static_cast<double>(ones) / static_cast<double>(n_pairs);
  return rp;
}

RecurrencePlot recurrence_plot(std::span<const double> x, int m, int tau,
                               double target_rr) {
  const int delay = tau > 0 ? tau : autocorrelation_delay(x);
  const std::vector<double> points = delay_embed(x, m, delay);
  RecurrencePlot rp = recurrence_matrix(points, m, target_rr);
  rp.params.tau = delay;
  return rp;
}

namespace {

struct LineHistogram {
  std::map<size_t, size_t> counts;  // length -> number of lines
  size_t total_points = 0;          // all recurrent points in the scan

  void add_run(size_t len) {
    if (len > 0) counts[len] += 1;
  }

  double points_at_least(size_t min_len) const {
    double s = 0.0;
    for (const auto& [len, cnt] : counts)
      if (len >= min_len) s += static_cast<double>(len * cnt);
    return s;
  }

  double lines_at_least(size_t min_len) const {
    double s = 0.0;
    for (const auto& [len, cnt] : counts)
      if (len >= min_len) s += static_cast<double>(cnt);
    return s;
  }

  double entropy_at_least(size_t min_len) const {
    const double total = lines_at_least(min_len);
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (const auto& [len, cnt] : counts) {
      if (len < min_len) continue;
      const double p = static_cast<double>(cnt) / total;
      h -= p * std::log(p);
    }
    return h;
  }
};

}  // namespace

RqaSummary rqa(const RecurrencePlot& rp, int l_min, int v_min) {
  if (rp.n == 0 || rp.matrix.size() != rp.n * rp.n)
    fail(ErrorKind::argument, "rqa: invalid recurrence plot");
  const size_t n = rp.n;

  // Diagonal lines above the main diagonal (offsets k >= 1); symmetry makes
  // the lower triangle redundant and the main diagonal is excluded
  // (Theiler window 1).
  LineHistogram diag;
  for (size_t k = 1; k < n; ++k) {
    size_t run = 0;
    for (size_t i = 0; i + k < n; ++i) {
      if (rp.at(i, i + k)) {
        ++run;
        ++diag.total_points;
      } else {
        diag.add_run(run);
        run = 0;
      }
    }
    diag.add_run(run);
  }

  // Vertical lines over full columns, main diagonal included.
  LineHistogram vert;
  for (size_t j = 0; j < n; ++j) {
    size_t run = 0;
    for (size_t i = 0; i < n; ++i) {
      if (rp.at(i, j)) {
        ++run;
        ++vert.total_points;
      } else {
        vert.add_run(run);
        run = 0;
      }
    }
    vert.add_run(run);
  }

  RqaSummary out;
  out.recurrence_rate = rp.recurrence_rate;
  out.tau = rp.params.tau;

  const auto lmin = static_cast<size_t>(std::max(1, l_min));
  const auto vmin = static_cast<size_t>(std::max(1, v_min));

  const double diag_points = static_cast<double>(diag.total_points);
  const double diag_on_lines = diag.points_at_least(lmin);
  out.diagonal_lines_found = diag.lines_at_least(lmin) > 0.0;
  out.det = diag_points > 0.0 ? diag_on_lines / diag_points : 0.0;
  out.d_ent = diag.entropy_at_least(lmin);

  const double vert_points = static_cast<double>(vert.total_points);
  const double vert_on_lines = vert.points_at_least(vmin);
  const double vert_lines = vert.lines_at_least(vmin);
  out.vertical_lines_found = vert_lines > 0.0;
  out.lam = vert_points > 0.0 ? vert_on_lines / vert_points : 0.0;
  out.tt = vert_lines > 0.0 ? vert_on_lines / vert_lines : std::nan("");
  out.v_ent = vert.entropy_at_least(vmin);

  out.dbyl = out.lam > 0.0 ? out.det / out.lam : std::nan("");
  return out;
}

std::string render_text_grid(const RecurrencePlot& rp) {
  std::string out;
  out.reserve(rp.n * (rp.n + 1));
  for (size_t i = 0; i < rp.n; ++i) {
    for (size_t j = 0; j < rp.n; ++j) out.push_back(rp.at(i, j) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

}  // namespace ecgkit
