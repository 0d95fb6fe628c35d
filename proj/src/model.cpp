#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "errors.hpp"
#include "mathutil.hpp"

namespace ecgkit {

Split split_by_fold(const FeatureTable& table, int test_fold) {
  if (test_fold < 1 || test_fold > 10)
    fail(ErrorKind::argument,
         "split_by_fold: test fold must be in 1..10, got " +
             std::to_string(test_fold));
  Split split;
  split.rule = "strat_fold == " + std::to_string(test_fold) + " is test";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].strat_fold == test_fold)
      split.test_rows.push_back(i);
    else
      split.train_rows.push_back(i);
  }
  if (split.test_rows.empty())
    fail(ErrorKind::data, "split_by_fold: empty test fold");
  if (split.train_rows.empty())
    fail(ErrorKind::data, "split_by_fold: empty training set");
  return split;
}

namespace {

std::optional<int> class_of(const FeatureRow& row, Task task) {
  if (task == Task::binary) {
    if (!row.binary_label) return std::nullopt;
    return *row.binary_label == BinaryLabel::healthy ? 0 : 1;
  }
  if (!row.superclass_label) return std::nullopt;
  return static_cast<int>(*row.superclass_label);
}

}  // namespace

DesignMatrix build_design(const FeatureTable& table, const Split& split,
                          Task task) {
  DesignMatrix d;
  const size_t p_all = table.feature_names.size();

  std::vector<size_t> train, test;
  for (size_t r : split.train_rows)
    if (class_of(table.rows[r], task)) train.push_back(r);
  for (size_t r : split.test_rows)
    if (class_of(table.rows[r], task)) test.push_back(r);
  if (train.empty() || test.empty())
    fail(ErrorKind::data, "build_design: no labeled rows in a split part");

  // Train-fold medians for imputation.
  std::vector<double> medians(p_all, 0.0);
  std::vector<bool> usable(p_all, true);
  for (size_t c = 0; c < p_all; ++c) {
    std::vector<double> vals;
    for (size_t r : train) {
      const double v = table.rows[r].values[c];
      if (!is_missing(v)) vals.push_back(v);
    }
    if (vals.empty()) {
      usable[c] = false;
      continue;
    }
    medians[c] = median(vals);
  }

  // Train-fold moments on imputed values; zero variance drops the column.
  std::vector<double> means(p_all, 0.0), stds(p_all, 0.0);
  for (size_t c = 0; c < p_all; ++c) {
    if (!usable[c]) continue;
    std::vector<double> vals;
    vals.reserve(train.size());
    for (size_t r : train) {
      const double v = table.rows[r].values[c];
      vals.push_back(is_missing(v) ? medians[c] : v);
    }
    means[c] = mean(vals);
    stds[c] = stddev_population(vals);
    if (stds[c] <= 0.0) usable[c] = false;
  }

  for (size_t c = 0; c < p_all; ++c) {
    if (usable[c]) {
      d.feature_names.push_back(table.feature_names[c]);
      d.medians.push_back(medians[c]);
      d.means.push_back(means[c]);
      d.stds.push_back(stds[c]);
    } else {
      d.dropped_features.push_back(table.feature_names[c]);
    }
  }
  d.n_features = d.feature_names.size();
  if (d.n_features == 0)
    fail(ErrorKind::data, "build_design: no usable features");

  // Class index mapping. Binary is fixed {healthy, diseased}; five-class
  // uses the superclass order so reports stay stable even when a class is
  // missing from the test fold.
  if (task == Task::binary) {
    d.n_classes = 2;
    d.class_names = {"healthy", "diseased"};
  } else {
    d.n_classes = 5;
    d.class_names = {"NORM", "MI", "STTC", "CD", "HYP"};
  }

  auto emit = [&](const std::vector<size_t>& rows, std::vector<double>* xm,
                  std::vector<int>* ym) {
    xm->reserve(rows.size() * d.n_features);
    for (size_t r : rows) {
      const FeatureRow& row = table.rows[r];
      size_t out_c = 0;
      for (size_t c = 0; c < p_all; ++c) {
        if (!usable[c]) continue;
        double v = row.values[c];
        if (is_missing(v)) v = d.medians[out_c];
        xm->push_back((v - d.means[out_c]) / d.stds[out_c]);
        ++out_c;
      }
      ym->push_back(*class_of(row, task));
    }
  };
  emit(train, &d.x_train, &d.y_train);
  emit(test, &d.x_test, &d.y_test);
  return d;
}

double logistic_loss(const std::vector<double>& x, size_t n, size_t p,
                     const std::vector<int>& y, const std::vector<double>& wb,
                     double l2_lambda, std::vector<double>* grad) {
  // wb = [w_0..w_{p-1}, b]; bias unregularized.
  if (grad) grad->assign(p + 1, 0.0);
  double loss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double t = wb[p];
    const double* xi = &x[i * p];
    for (size_t j = 0; j < p; ++j) t += wb[j] * xi[j];
    const double yi = y[i] ? 1.0 : -1.0;
    const double m = yi * t;
    // log(1 + exp(-m)) without overflow
    loss += m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    if (grad) {
      const double sig = 1.0 / (1.0 + std::exp(m));  // sigmoid(-m)
      const double coeff = -yi * sig;
      for (size_t j = 0; j < p; ++j) (*grad)[j] += coeff * xi[j];
      (*grad)[p] += coeff;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  loss *= inv_n;
  double reg = 0.0;
  for (size_t j = 0; j < p; ++j) reg += wb[j] * wb[j];
  loss += 0.5 * l2_lambda * reg;
  if (grad) {
    for (size_t j = 0; j <= p; ++j) (*grad)[j] *= inv_n;
    for (size_t j = 0; j < p; ++j) (*grad)[j] += l2_lambda * wb[j];
  }
  return loss;
}

double multinomial_loss(const std::vector<double>& x, size_t n, size_t p,
                        const std::vector<int>& y, size_t k,
                        const std::vector<double>& wb, double l2_lambda,
                        std::vector<double>* grad) {
  // wb = [W (k x p), b (k)].
  if (grad) grad->assign(k * p + k, 0.0);
  std::vector<double> scores(k);
  double loss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double* xi = &x[i * p];
    double mx = -1e300;
    for (size_t c = 0; c < k; ++c) {
      double t = wb[k * p + c];
      const double* wc = &wb[c * p];
      for (size_t j = 0; j < p; ++j) t += wc[j] * xi[j];
      scores[c] = t;
      mx = std::max(mx, t);
    }
    double z = 0.0;
    for (size_t c = 0; c < k; ++c) z += std::exp(scores[c] - mx);
    const double logz = mx + std::log(z);
    loss += logz - scores[static_cast<size_t>(y[i])];
    if (grad) {
      for (size_t c = 0; c < k; ++c) {
        const double prob = std::exp(scores[c] - logz);
        const double coeff = prob - (static_cast<size_t>(y[i]) == c ? 1.0 : 0.0);
        double* gc = &(*grad)[c * p];
        for (size_t j = 0; j < p; ++j) gc[j] += coeff * xi[j];
        (*grad)[k * p + c] += coeff;
      }
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  loss *= inv_n;
  double reg = 0.0;
  for (size_t j = 0; j < k * p; ++j) reg += wb[j] * wb[j];
  loss += 0.5 * l2_lambda * reg;
  if (grad) {
    for (double& g : *grad) g *= inv_n;
    for (size_t j = 0; j < k * p; ++j) (*grad)[j] += l2_lambda * wb[j];
  }
  return loss;
}

namespace {

using LossFn = std::function<double(const std::vector<double>&,
                                    std::vector<double>*)>;

// Gradient descent with Armijo backtracking; every accepted step is
// recorded so the monotone-decrease invariant can be asserted in tests.
void descend(const LossFn& f, std::vector<double>* wb, const TrainOptions& opt,
             ModelParams* out) {
  std::vector<double> grad, trial(wb->size());
  double loss = f(*wb, &grad);
  out->loss_trace.push_back(loss);
  double step = 1.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    double gmax = 0.0, gnorm2 = 0.0;
    for (double g : grad) {
      gmax = std::max(gmax, std::fabs(g));
      gnorm2 += g * g;
    }
    if (gmax < opt.tol) {
      out->converged = true;
      out->iterations = it;
      break;
    }
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (size_t j = 0; j < wb->size(); ++j)
        trial[j] = (*wb)[j] - step * grad[j];
      const double trial_loss = f(trial, nullptr);
      if (trial_loss <= loss - 1e-4 * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out->iterations = it;
      break;  // stalled at numeric resolution
    }
    wb->swap(trial);
    loss = f(*wb, &grad);
    out->loss_trace.push_back(loss);
    out->iterations = it + 1;
    step = std::min(step * 2.0, 1e4);  // gentle growth for the next trial
  }
  out->final_loss = loss;
}

}  // namespace

ModelParams train_logistic(const std::vector<double>& x, size_t n, size_t p,
                           const std::vector<int>& y, const TrainOptions& opt) {
  if (n == 0 || y.size() != n)
    fail(ErrorKind::argument, "train_logistic: bad shapes");
  const std::set<int> classes(y.begin(), y.end());
  if (classes.size() < 2)
    fail(ErrorKind::degenerate, "train_logistic: single-class training data");

  ModelParams model;
  model.n_features = p;
  model.n_classes = 2;
  std::vector<double> wb(p + 1, 0.0);
  descend(
      [&](const std::vector<double>& w, std::vector<double>* g) {
        return logistic_loss(x, n, p, y, w, opt.l2_lambda, g);
      },
      &wb, opt, &model);
  model.weights.assign(wb.begin(), wb.begin() + static_cast<long>(p));
  model.bias = {wb[p]};
  return model;
}

ModelParams train_multinomial(const std::vector<double>& x, size_t n, size_t p,
                              const std::vector<int>& y, size_t k,
                              const TrainOptions& opt) {
  if (n == 0 || y.size() != n || k < 2)
    fail(ErrorKind::argument, "train_multinomial: bad shapes");
  const std::set<int> classes(y.begin(), y.end());
  if (classes.size() < 2)
    fail(ErrorKind::degenerate, "train_multinomial: single-class training data");

  ModelParams model;
  model.n_features = p;
  model.n_classes = k;
  std::vector<double> wb(k * p + k, 0.0);
  descend(
      [&](const std::vector<double>& w, std::vector<double>* g) {
        return multinomial_loss(x, n, p, y, k, w, opt.l2_lambda, g);
      },
      &wb, opt, &model);
  model.weights.assign(wb.begin(), wb.begin() + static_cast<long>(k * p));
  model.bias.assign(wb.begin() + static_cast<long>(k * p), wb.end());
  return model;
}

std::vector<double> predict_proba(const ModelParams& model,
                                  const std::vector<double>& x, size_t n) {
  const size_t p = model.n_features;
  const size_t k = model.n_classes;
  std::vector<double> proba(n * k);
  if (k == 2 && model.weights.size() == p) {
    for (size_t i = 0; i < n; ++i) {
      double t = model.bias[0];
      for (size_t j = 0; j < p; ++j) t += model.weights[j] * x[i * p + j];
      const double p1 = 1.0 / (1.0 + std::exp(-t));
      proba[i * 2 + 0] = 1.0 - p1;
      proba[i * 2 + 1] = p1;
    }
    return proba;
  }
  std::vector<double> scores(k);
  for (size_t i = 0; i < n; ++i) {
    double mx = -1e300;
    for (size_t c = 0; c < k; ++c) {
      double t = model.bias[c];
      for (size_t j = 0; j < p; ++j) t += model.weights[c * p + j] * x[i * p + j];
      scores[c] = t;
      mx = std::max(mx, t);
    }
    double z = 0.0;
    for (size_t c = 0; c < k; ++c) z += std::exp(scores[c] - mx);
    for (size_t c = 0; c < k; ++c) proba[i * k + c] = std::exp(scores[c] - mx) / z;
  }
  return proba;
}

double auc_from_scores(const std::vector<double>& scores,
                       const std::vector<int>& labels) {
  size_t n1 = 0, n2 = 0;
  for (int l : labels) (l ? ++n1 : ++n2);
  if (n1 == 0 || n2 == 0) return std::nan("");
  const std::vector<double> ranks = midranks(scores);
  double rank_sum_pos = 0.0;
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i]) rank_sum_pos += ranks[i];
  const double u = rank_sum_pos -
                   0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
  return u / (static_cast<double>(n1) * static_cast<double>(n2));
}

std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& labels) {
  std::vector<size_t> order(scores.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  size_t pos = 0, neg = 0;
  for (int l : labels) (l ? ++pos : ++neg);

  std::vector<RocPoint> curve;
  curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  size_t tp = 0, fp = 0;
  size_t i = 0;
  while (i < order.size()) {
    const double thr = scores[order[i]];
    while (i < order.size() && scores[order[i]] == thr) {
      (labels[order[i]] ? ++tp : ++fp);
      ++i;
    }
    curve.push_back({thr,
                     neg ? static_cast<double>(fp) / static_cast<double>(neg) : 0.0,
                     pos ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0});
  }
  return curve;
}

namespace {

double binary_mcc(size_t tp, size_t tn, size_t fp, size_t fn) {
  const double denom =
      std::sqrt(static_cast<double>(tp + fp)) * std::sqrt(static_cast<double>(tp + fn)) *
      std::sqrt(static_cast<double>(tn + fp)) * std::sqrt(static_cast<double>(tn + fn));
  if (denom == 0.0) return 0.0;
  return (static_cast<double>(tp) * static_cast<double>(tn) -
          static_cast<double>(fp) * static_cast<double>(fn)) /
         denom;
}

// Gorodkin's generalization of the MCC over a k x k confusion matrix.
double multiclass_mcc(const std::vector<size_t>& confusion, size_t k) {
  double s = 0.0, c = 0.0;
  std::vector<double> t(k, 0.0), p(k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    c += static_cast<double>(confusion[i * k + i]);
    for (size_t j = 0; j < k; ++j) {
      const double v = static_cast<double>(confusion[i * k + j]);
      s += v;
      t[i] += v;
      p[j] += v;
    }
  }
  double tp_sum = 0.0, t2 = 0.0, p2 = 0.0;
  for (size_t i = 0; i < k; ++i) {
    tp_sum += t[i] * p[i];
    t2 += t[i] * t[i];
    p2 += p[i] * p[i];
  }
  const double denom = std::sqrt(s * s - p2) * std::sqrt(s * s - t2);
  if (denom == 0.0) return 0.0;
  return (c * s - tp_sum) / denom;
}

}  // namespace

EvalMetrics evaluate(const ModelParams& model, const std::vector<double>& x,
                     size_t n, const std::vector<int>& y) {
  if (n == 0) fail(ErrorKind::argument, "evaluate: empty test set");
  const size_t k = model.n_classes;
  const std::vector<double> proba = predict_proba(model, x, n);

  EvalMetrics m;
  m.n_classes = k;
  m.confusion.assign(k * k, 0);
  size_t correct = 0;
  for (size_t i = 0; i < n; ++i) {
    size_t pred = 0;
    for (size_t c = 1; c < k; ++c)
      if (proba[i * k + c] > proba[i * k + pred]) pred = c;
    const auto truth = static_cast<size_t>(y[i]);
    ++m.confusion[truth * k + pred];
    if (pred == truth) ++correct;
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(n);

  if (k == 2) {
    const size_t tn = m.confusion[0], fp = m.confusion[1];
    const size_t fn = m.confusion[2], tp = m.confusion[3];
    m.mcc = binary_mcc(tp, tn, fp, fn);
    std::vector<double> scores(n);
    for (size_t i = 0; i < n; ++i) scores[i] = proba[i * 2 + 1];
    m.auc = auc_from_scores(scores, y);
    m.ovr_macro_auc = m.ovr_weighted_auc = m.auc;
    m.ovo_macro_auc = m.ovo_weighted_auc = m.auc;
    return m;
  }

  m.mcc = multiclass_mcc(m.confusion, k);
  m.auc = std::nan("");

  std::vector<double> class_count(k, 0.0);
  for (int yi : y) class_count[static_cast<size_t>(yi)] += 1.0;

  // One-vs-rest: per-class AUC of that class's probability.
  double ovr_sum = 0.0, ovr_wsum = 0.0, ovr_weight = 0.0;
  size_t ovr_defined = 0;
  for (size_t c = 0; c < k; ++c) {
    if (class_count[c] == 0.0) continue;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (size_t i = 0; i < n; ++i) {
      scores[i] = proba[i * k + c];
      labels[i] = static_cast<size_t>(y[i]) == c ? 1 : 0;
    }
    const double auc = auc_from_scores(scores, labels);
    if (std::isnan(auc)) continue;
    ovr_sum += auc;
    ovr_wsum += auc * class_count[c];
    ovr_weight += class_count[c];
    ++ovr_defined;
  }
  m.ovr_macro_auc = ovr_defined ? ovr_sum / static_cast<double>(ovr_defined)
                                : std::nan("");
  m.ovr_weighted_auc = ovr_weight > 0.0 ? ovr_wsum / ovr_weight : std::nan("");

  // One-vs-one: symmetrized pairwise AUC restricted to each class pair,
  // optionally weighted by the pair's prevalence.
  double ovo_sum = 0.0, ovo_wsum = 0.0, ovo_weight = 0.0;
  size_t ovo_defined = 0;
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = a + 1; b < k; ++b) {
      if (class_count[a] == 0.0 || class_count[b] == 0.0) continue;
      std::vector<double> score_a, score_b;
      std::vector<int> is_a;
      for (size_t i = 0; i < n; ++i) {
        const auto yi = static_cast<size_t>(y[i]);
        if (yi != a && yi != b) continue;
        score_a.push_back(proba[i * k + a]);
        score_b.push_back(proba[i * k + b]);
        is_a.push_back(yi == a ? 1 : 0);
      }
      const double auc_ab = auc_from_scores(score_a, is_a);
      std::vector<int> is_b(is_a.size());
      for (size_t i = 0; i < is_a.size(); ++i) is_b[i] = 1 - is_a[i];
      const double auc_ba = auc_from_scores(score_b, is_b);
      if (std::isnan(auc_ab) || std::isnan(auc_ba)) continue;
      const double pair_auc = 0.5 * (auc_ab + auc_ba);
      const double prevalence = class_count[a] + class_count[b];
      ovo_sum += pair_auc;
      ovo_wsum += pair_auc * prevalence;
      ovo_weight += prevalence;
      ++ovo_defined;
    }
  }
  m.ovo_macro_auc = ovo_defined ? ovo_sum / static_cast<double>(ovo_defined)
                                : std::nan("");
  m.ovo_weighted_auc = ovo_weight > 0.0 ? ovo_wsum / ovo_weight : std::nan("");
  return m;
}

}  // namespace ecgkit
