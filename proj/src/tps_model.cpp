#include "llm_energy/tps_model.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace llm_energy {
namespace {

void check_single_model(const std::vector<BenchmarkRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("cannot fit a throughput model to no records");
  }
  for (const auto& r : records) {
    if (r.model_name != records.front().model_name) {
      throw std::invalid_argument("mixed model names in fit: '" +
                                  records.front().model_name + "' and '" +
                                  r.model_name + "'");
    }
  }
}

Eigen::MatrixXd design_matrix(const std::vector<BenchmarkRecord>& records) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(records.size()), 3);
  for (size_t i = 0; i < records.size(); ++i) {
    auto row = static_cast<Eigen::Index>(i);
    x(row, 0) = 1.0;
    x(row, 1) = std::log(static_cast<double>(records[i].l_in));
    x(row, 2) = std::log(static_cast<double>(records[i].l_out));
  }
  return x;
}

Eigen::VectorXd log_targets(const std::vector<BenchmarkRecord>& records) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(records.size()));
  for (size_t i = 0; i < records.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = std::log(records[i].tps);
  }
  return y;
}

double max_tps(const std::vector<BenchmarkRecord>& records) {
  double cap = 0.0;
  for (const auto& r : records) cap = std::max(cap, r.tps);
  return cap;
}

}  // namespace

std::string_view to_string(FitMethod method) {
  switch (method) {
    case FitMethod::kOrdinaryLeastSquares:
      return "ols";
    case FitMethod::kMinimumNorm:
      return "minimum_norm";
    case FitMethod::kPooledAnchor:
      return "pooled_anchor";
  }
  return "unknown";
}

double TpsModel::predict_uncapped(double l_in, double l_out) const {
  return std::exp(beta0 + beta1 * std::log(l_in) + beta2 * std::log(l_out));
}

TpsModel fit_log_linear(const std::vector<BenchmarkRecord>& records) {
  check_single_model(records);
  Eigen::MatrixXd x = design_matrix(records);
  Eigen::VectorXd y = log_targets(records);

  // Complete orthogonal decomposition yields the unique solution at full rank
  // and the minimum-norm one otherwise.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
  Eigen::VectorXd beta = cod.solve(y);

  TpsModel model;
  model.model_name = records.front().model_name;
  model.beta0 = beta(0);
  model.beta1 = beta(1);
  model.beta2 = beta(2);
  model.tps_cap = max_tps(records);
  model.n_obs = static_cast<int64_t>(records.size());
  model.method = cod.rank() == 3 ? FitMethod::kOrdinaryLeastSquares
                                 : FitMethod::kMinimumNorm;
  return model;
}

double predict_tps(const TpsModel& model, double l_in, double l_out) {
  if (!(l_in >= 1.0) || !(l_out >= 1.0)) {
    throw std::invalid_argument("predict_tps requires l_in >= 1 and l_out >= 1");
  }
  return std::min(model.predict_uncapped(l_in, l_out), model.tps_cap);
}

std::vector<TpsModel> fit_models(const std::vector<BenchmarkRecord>& records,
                                 UnderdeterminedPolicy policy) {
  std::vector<TpsModel> models;
  std::vector<std::vector<BenchmarkRecord>> groups;
  for (const auto& name : model_names(records)) {
    groups.push_back(records_for_model(records, name));
    models.push_back(fit_log_linear(groups.back()));
  }
  if (policy == UnderdeterminedPolicy::kMinimumNorm) return models;

  std::vector<size_t> full, deficient;
  for (size_t k = 0; k < models.size(); ++k) {
    (models[k].method == FitMethod::kOrdinaryLeastSquares ? full : deficient)
        .push_back(k);
  }
  if (deficient.empty()) return models;
  if (full.empty()) {
    throw std::invalid_argument(
        "pooled-anchor fit needs at least one full-rank model");
  }

  // Fixed effects: one intercept column per full-rank model, two shared
  // slope columns.
  Eigen::Index rows = 0;
  for (size_t k : full) rows += static_cast<Eigen::Index>(groups[k].size());
  const auto n_groups = static_cast<Eigen::Index>(full.size());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(rows, n_groups + 2);
  Eigen::VectorXd y(rows);
  Eigen::Index row = 0;
  for (Eigen::Index g = 0; g < n_groups; ++g) {
    for (const auto& r : groups[full[static_cast<size_t>(g)]]) {
      x(row, g) = 1.0;
      x(row, n_groups) = std::log(static_cast<double>(r.l_in));
      x(row, n_groups + 1) = std::log(static_cast<double>(r.l_out));
      y(row) = std::log(r.tps);
      ++row;
    }
  }
  Eigen::VectorXd coef = x.completeOrthogonalDecomposition().solve(y);
  const double slope_in = coef(n_groups);
  const double slope_out = coef(n_groups + 1);

  // Among the least-squares solutions for the model's own rows, take the one
  // whose slopes lie closest to the pooled slopes. Centering leaves the
  // intercept unpenalized.
  for (size_t k : deficient) {
    const auto& group = groups[k];
    const auto n = static_cast<Eigen::Index>(group.size());
    Eigen::MatrixXd xs(n, 2);
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& rec = group[static_cast<size_t>(i)];
      xs(i, 0) = std::log(static_cast<double>(rec.l_in));
      xs(i, 1) = std::log(static_cast<double>(rec.l_out));
      r(i) = std::log(rec.tps) - slope_in * xs(i, 0) - slope_out * xs(i, 1);
    }
    Eigen::MatrixXd xc = xs.rowwise() - xs.colwise().mean();
    Eigen::VectorXd rc = r.array() - r.mean();
    Eigen::VectorXd delta = xc.completeOrthogonalDecomposition().solve(rc);
    models[k].beta0 = (r - xs * delta).mean();
    models[k].beta1 = slope_in + delta(0);
    models[k].beta2 = slope_out + delta(1);
    models[k].method = FitMethod::kPooledAnchor;
  }
  return models;
}

double log_residual_sum_of_squares(
    const TpsModel& model, const std::vector<BenchmarkRecord>& records) {
  double rss = 0.0;
  for (const auto& r : records) {
    double fitted = model.beta0 +
                    model.beta1 * std::log(static_cast<double>(r.l_in)) +
                    model.beta2 * std::log(static_cast<double>(r.l_out));
    double resid = std::log(r.tps) - fitted;
    rss += resid * resid;
  }
  return rss;
}

const TpsModel* find_model(const std::vector<TpsModel>& models,
                           std::string_view name) {
  for (const auto& m : models) {
    if (m.model_name == name) return &m;
  }
  return nullptr;
}

}  // namespace llm_energy
