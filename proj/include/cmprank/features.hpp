#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmprank/comparative.hpp"
#include "cmprank/corpus.hpp"
#include "cmprank/index.hpp"
#include "cmprank/scorers.hpp"

namespace cmprank {

inline constexpr std::size_t kNumFeatures = 8;

/// Fixed feature layout (0-based in memory, 1-based in dataset files):
/// [pl2, tfidf, bm25, dfic, upstream engine score, is_retrieved,
///  asp_pred_score, objs_score].
using FeatureVector = std::array<double, kNumFeatures>;

enum FeatureIndex : std::size_t {
  kFeatPl2 = 0,
  kFeatTfidf = 1,
  kFeatBm25 = 2,
  kFeatDfic = 3,
  kFeatUpstream = 4,
  kFeatIsRetrieved = 5,
  kFeatAspPred = 6,
  kFeatObjs = 7,
};

const std::array<std::string, kNumFeatures>& feature_names();

struct LabeledInstance {
  int topic_id = 0;
  std::string doc_id;
  FeatureVector features{};
  std::optional<int> grade;  // present for training/validation instances only
};

struct Dataset {
  std::vector<LabeledInstance> instances;
  /// Set when the candidates carried no engine score, so feature 5 is 0.
  bool upstream_missing = false;
};

/// Builds the feature vector for one (topic, candidate) pair. Text features
/// use the index's tokenizer; comparative matching uses the plain tokenizer on
/// the candidate body. Throws NotFoundError when the candidate is not indexed.
FeatureVector assemble(const Topic& topic, const TaggedQuery& tagged_query,
                       const Candidate& candidate, const InvertedIndex& index,
                       const ScorerParams& params = {});

/// SVMlight-style ranking file: `grade qid:<topic> 1:v .. 8:v # doc_id`, one
/// instance per line, with a header comment naming the features. All grades
/// must be present.
void write_dataset(const std::filesystem::path& path, const Dataset& dataset);
Dataset read_dataset(const std::filesystem::path& path);

}  // namespace cmprank
