#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cmprank/features.hpp"
#include "cmprank/ndcg.hpp"

namespace cmprank {

enum class TrainMode { random_forest, gbrt_pointwise, lambdamart };

std::string_view to_string(TrainMode mode);
TrainMode train_mode_from_string(std::string_view name);  // throws DomainError

struct TrainConfig {
  TrainMode mode = TrainMode::lambdamart;
  int n_trees = 100;
  double learning_rate = 0.1;
  /// Exactly one of max_depth / num_leaves must be positive; it selects
  /// depth-wise vs leaf-wise growth.
  int max_depth = 0;
  int num_leaves = 15;
  int min_samples_leaf = 1;
  std::uint64_t seed = 42;
  int ndcg_cutoff = 5;  // k used by the lambda weighting
  double sigma = 1.0;

  static TrainConfig preset(TrainMode mode);
  void validate() const;
  bool leaf_wise() const { return num_leaves > 0; }
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output
  double gain = 0.0;   // split gain, for feature importance

  bool is_leaf() const { return feature < 0; }
};

class RegressionTree {
 public:
  RegressionTree() = default;
  static RegressionTree leaf(double value);

  double predict(std::span<const double> features) const;
  void accumulate_importance(std::span<double> per_feature) const;
  std::size_t leaf_count() const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::vector<TreeNode>& nodes() { return nodes_; }

 private:
  std::vector<TreeNode> nodes_;  // node 0 is the root
};

/// Per-document LambdaRank pseudo-gradient (ascent direction: positive for
/// documents that should move up) and its curvature weight.
struct LambdaPair {
  double lambda = 0.0;
  double hessian = 0.0;
};

/// Pairwise lambdas for one query group. For every pair with unequal grades,
/// the logistic factor rho = 1/(1+exp(sigma*(s_hi - s_lo))) is scaled by
/// |delta NDCG@k| of explicitly swapping the two documents in the current
/// ranking (ties keep input order). Lambdas sum to zero within the group.
std::vector<LambdaPair> compute_lambdas(std::span<const double> scores,
                                        std::span<const int> grades, int k, double sigma);

enum class LeafValueKind { negative_gradient_over_hessian, mean_target };

struct TreeGrowthConfig {
  bool leaf_wise = false;
  int max_depth = 6;     // depth-wise bound (root has depth 0)
  int num_leaves = 15;   // leaf-wise bound
  int min_samples_leaf = 1;
  int features_per_split = static_cast<int>(kNumFeatures);
  LeafValueKind leaf_value = LeafValueKind::negative_gradient_over_hessian;
};

/// Greedy regression tree on the Newton objective: split gain
/// GL^2/HL + GR^2/HR - G^2/H over (target, hessian) sums. `sample_indices`
/// selects a bootstrap sample (empty = all rows); `rng` drives per-split
/// feature subsampling when features_per_split < 8.
RegressionTree fit_tree(std::span<const FeatureVector> rows, std::span<const double> targets,
                        std::span<const double> hessians, const TreeGrowthConfig& growth,
                        std::mt19937_64* rng = nullptr,
                        std::span<const std::uint32_t> sample_indices = {});

struct Ensemble {
  TrainMode mode = TrainMode::lambdamart;
  double base_score = 0.0;
  double shrinkage = 1.0;
  std::vector<RegressionTree> trees;
  std::array<std::string, kNumFeatures> names = feature_names();
  TrainConfig config;  // echo of the training configuration

  /// base + shrinkage * sum of trees; random_forest averages instead.
  /// Throws DomainError when features.size() != 8.
  double predict(std::span<const double> features) const;

  /// Total split gain accumulated per feature. Throws DomainError when the
  /// ensemble has no trees.
  std::array<double, kNumFeatures> feature_importance() const;

  /// Versioned JSON with nested tree nodes; load is bit-exact. Saving an
  /// empty ensemble is an error.
  void save(const std::filesystem::path& path) const;
  static Ensemble load(const std::filesystem::path& path);
};

/// Called after each training iteration with the model's current scores for
/// the (topic-sorted) training instances.
using TrainObserver = std::function<void(int iteration, std::span<const double> scores)>;

/// Trains per config.mode:
///  - random_forest: bagged mean-leaf trees on the grades, 3 features per split;
///  - gbrt_pointwise: squared-loss Newton boosting on the grades;
///  - lambdamart: boosting on per-query LambdaRank gradients.
/// Deterministic given (dataset, config). All instances must carry grades.
Ensemble train(const Dataset& dataset, const TrainConfig& config,
               const TrainObserver& observer = {});

}  // namespace cmprank
