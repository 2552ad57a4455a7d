#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "cmprank/index.hpp"

namespace cmprank {

/// Comparative structure of a query: the entities being compared, the
/// dimension of comparison, and the comparing expressions. The three sets are
/// pairwise disjoint.
struct TaggedQuery {
  std::set<std::string> objects;
  std::set<std::string> aspects;
  std::set<std::string> predicates;

  bool empty() const { return objects.empty() && aspects.empty() && predicates.empty(); }
};

std::set<std::string> default_predicate_cues();
std::set<std::string> default_pivots();

struct TaggingConfig {
  std::set<std::string> predicate_cues = default_predicate_cues();
  std::set<std::string> pivots = default_pivots();
  /// Optional collection-frequency source for the pivotless object fallback.
  const InvertedIndex* collection = nullptr;
};

/// Deterministic heuristic tagger. Predicates come from the cue lexicon plus
/// long "-er" comparatives; objects sit next to the first pivot token
/// ("or"/"vs"/"versus"/"than"), falling back to the two rarest content tokens;
/// aspects are the remaining content tokens. A query with no pivot and no
/// predicate cue yields three empty sets.
TaggedQuery tag_query(std::string_view title, const TaggingConfig& config = {});

struct ComparativeFeatures {
  int is_retrieved = 0;        // any tagged structure occurs in the document
  int objs_score = 0;          // distinct query objects found, capped at 2
  double asp_pred_score = 0.0; // 0.5 per aspect/predicate occurrence, gated on objs_score > 0
};

ComparativeFeatures comparative_features(const TaggedQuery& query,
                                         std::span<const std::string> doc_tokens);

/// Pre-tagged queries, one per line:
///   topic_id<TAB>obj:a,b<TAB>asp:x,y<TAB>pred:p,q
/// The asp/pred (and obj) fields are optional and may appear in any order.
std::map<int, TaggedQuery> load_pretagged(const std::filesystem::path& path);

}  // namespace cmprank
