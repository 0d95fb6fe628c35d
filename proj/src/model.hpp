#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feature_table.hpp"

namespace ecgkit {

struct Split {
  std::vector<size_t> train_rows;
  std::vector<size_t> test_rows;
  std::string rule;
};

// Test set = rows with the given stratification fold, train = the rest.
// Rows without a binary (or, for the 5-class task, superclass) label are
// excluded upstream.
Split split_by_fold(const FeatureTable& table, int test_fold = 10);

// Dense numeric design matrix with train-fold median imputation and
// train-fold standardization; zero-variance features are dropped.
struct DesignMatrix {
  std::vector<std::string> feature_names;  // surviving columns
  std::vector<std::string> dropped_features;
  std::vector<double> medians;  // per surviving column, train folds only
  std::vector<double> means;
  std::vector<double> stds;
  size_t n_features = 0;
  std::vector<double> x_train;  // row-major
  std::vector<double> x_test;
  std::vector<int> y_train;  // class indices
  std::vector<int> y_test;
  size_t n_classes = 0;
  std::vector<std::string> class_names;
};

enum class Task { binary, five_class };

DesignMatrix build_design(const FeatureTable& table, const Split& split,
                          Task task);

struct TrainOptions {
  double l2_lambda = 1e-3;
  int max_iter = 500;
  double tol = 1e-6;
};

struct ModelParams {
  size_t n_features = 0;
  size_t n_classes = 2;
  // Binary: one weight vector + bias. Multinomial: n_classes vectors, each
  // with its own bias. The bias is never regularized.
  std::vector<double> weights;  // n_classes==2 ? n_features : n_classes*n_features
  std::vector<double> bias;
  bool converged = false;
  int iterations = 0;
  double final_loss = 0.0;
  std::vector<double> loss_trace;  // loss after each accepted step
};

// Full-batch gradient descent with Armijo backtracking on the
// L2-regularized negative log-likelihood; zero initialization, so training
// is deterministic given data and hyperparameters.
ModelParams train_logistic(const std::vector<double>& x, size_t n, size_t p,
                           const std::vector<int>& y, const TrainOptions& opt);

ModelParams train_multinomial(const std::vector<double>& x, size_t n, size_t p,
                              const std::vector<int>& y, size_t k,
                              const TrainOptions& opt);

// Loss/gradient callbacks, exposed for the finite-difference checks.
double logistic_loss(const std::vector<double>& x, size_t n, size_t p,
                     const std::vector<int>& y, const std::vector<double>& wb,
                     double l2_lambda, std::vector<double>* grad = nullptr);
double multinomial_loss(const std::vector<double>& x, size_t n, size_t p,
                        const std::vector<int>& y, size_t k,
                        const std::vector<double>& wb, double l2_lambda,
                        std::vector<double>* grad = nullptr);

// Per-class probabilities, rows x n_classes.
std::vector<double> predict_proba(const ModelParams& model,
                                  const std::vector<double>& x, size_t n);

struct EvalMetrics {
  double accuracy = 0.0;
  double mcc = 0.0;
  double auc = 0.0;  // binary; NaN when undefined
  double ovo_macro_auc = 0.0;
  double ovo_weighted_auc = 0.0;
  double ovr_macro_auc = 0.0;
  double ovr_weighted_auc = 0.0;
  std::vector<size_t> confusion;  // k x k, row = true class
  size_t n_classes = 0;
};

EvalMetrics evaluate(const ModelParams& model, const std::vector<double>& x,
                     size_t n, const std::vector<int>& y);

// Rank-statistic AUC with mid-ranks for ties: U / (n1 n2). NaN when a class
// is absent.
double auc_from_scores(const std::vector<double>& scores,
                       const std::vector<int>& labels);

// ROC curve points (threshold, fpr, tpr), descending threshold.
struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};
std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& labels);

}  // namespace ecgkit
