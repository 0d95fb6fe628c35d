#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ecgkit {

struct EmbeddingParams {
  int m = 3;
  int tau = 1;
};

// Delay embedding: point i = (x[i], x[i+tau], ..., x[i+(m-1)tau]).
// Returns n - (m-1)*tau points, row-major.
std::vector<double> delay_embed(std::span<const double> x, int m, int tau);

// First local minimum of the autocorrelation, capped; falls back to
// `fallback` when no minimum appears within the cap.
int autocorrelation_delay(std::span<const double> x, int cap = 20,
                          int fallback = 5);

// Binary self-similarity matrix of an embedded point set. The threshold is
// the target_rr quantile of pairwise distances, so the achieved rate over
// off-diagonal pairs tracks the target up to tie granularity.
struct RecurrencePlot {
  size_t n = 0;                 // points per side
  std::vector<uint8_t> matrix;  // n*n, row-major, symmetric, unit diagonal
  double epsilon = 0.0;
  double recurrence_rate = 0.0;  // fraction of ones over off-diagonal pairs
  EmbeddingParams params;
  bool degenerate = false;  // all points identical

  uint8_t at(size_t i, size_t j) const { return matrix[i * n + j]; }
};

RecurrencePlot recurrence_matrix(std::span<const double> points, int m,
                                 double target_rr);

// Convenience: embed then threshold. tau == 0 selects the delay from the
// autocorrelation minimum.
RecurrencePlot recurrence_plot(std::span<const double> x, int m, int tau,
                               double target_rr);

struct RqaSummary {
  double recurrence_rate = 0.0;
  double det = 0.0;    // fraction of off-diagonal recurrent points on
                       // diagonal lines >= l_min (Theiler window 1)
  double lam = 0.0;    // fraction of recurrent points on vertical lines >=
                       // v_min (main diagonal included in columns)
  double dbyl = 0.0;   // det / lam, NaN when lam == 0
  double tt = 0.0;     // mean vertical line length among lines >= v_min, NaN
                       // when none qualify
  double d_ent = 0.0;  // Shannon entropy (nats) of diagonal line lengths >= l_min
  double v_ent = 0.0;  // same for vertical lines >= v_min
  int tau = 1;         // embedding delay used
  bool diagonal_lines_found = false;
  bool vertical_lines_found = false;
};

RqaSummary rqa(const RecurrencePlot& rp, int l_min = 2, int v_min = 2);

// Text grid for fixtures and debugging: '#' recurrent, '.' not.
std::string render_text_grid(const RecurrencePlot& rp);

}  // namespace ecgkit
