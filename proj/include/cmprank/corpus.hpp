#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmprank/errors.hpp"

namespace cmprank {

/// A web document. `raw` keeps the original markup when known, `body` is the
/// cleaned text. `tokens`/`length` are filled when the document is indexed.
struct Document {
  std::string doc_id;
  std::string raw;
  std::string body;
  std::vector<std::string> tokens;
  std::size_t length = 0;
};

struct Topic {
  int topic_id = 0;
  std::string title;
};

struct Judgment {
  int topic_id = 0;
  std::string doc_id;
  int grade = 0;  // in {0,1,2}
};

/// A search-engine hit for a topic, carrying the engine's relevance score.
struct Candidate {
  int topic_id = 0;
  std::string doc_id;
  double upstream_score = 0.0;
  std::string body;
};

/// Strips markup, drops script/style content, decodes the common named
/// entities, and collapses whitespace. Malformed markup is removed
/// best-effort; the function is idempotent.
std::string clean_html(std::string_view raw);

/// Remaps a 4-level grade (1..4) onto the 3-level scale: 1->0, 2->1, 3->1, 4->2.
/// Throws DomainError for anything outside {1,2,3,4}.
int map_antique_grade(int grade);

/// Deterministic train/validation partition. seed == 0 keeps topic-id order
/// (first n_train become the training set); any other seed shuffles
/// reproducibly before taking the first n_train.
std::pair<std::vector<Topic>, std::vector<Topic>> split_topics(
    const std::vector<Topic>& topics, std::size_t n_train, std::uint64_t seed);

/// Graded judgments keyed by (topic_id, doc_id).
class Qrels {
 public:
  /// Throws DomainError on a duplicate (topic_id, doc_id) pair or a grade
  /// outside {0,1,2}.
  void add(Judgment judgment);

  std::optional<int> grade(int topic_id, const std::string& doc_id) const;
  const std::vector<Judgment>& entries() const { return entries_; }
  std::set<int> topics() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Judgment> entries_;
  std::map<std::pair<int, std::string>, int> by_key_;
};

/// Topics file: one `topic_id<TAB>title` per line, UTF-8.
std::vector<Topic> load_topics(const std::filesystem::path& path);

struct QrelsOptions {
  /// Interpret grades as the 4-level scale and remap through
  /// map_antique_grade while loading.
  bool antique_grades = false;
};

/// TREC qrels: whitespace-separated `topic_id 0 doc_id grade` lines.
Qrels load_qrels(const std::filesystem::path& path, const QrelsOptions& options = {});

struct CorpusOptions {
  /// Drop documents whose body exceeds this many characters; 0 disables the
  /// filter. The Antique profile sets 300.
  std::size_t max_chars = 0;
};

/// JSON-lines corpus: one object per line with `doc_id`, `body` and an
/// optional `raw` field. Bodies are passed through clean_html.
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  const CorpusOptions& options = {});

}  // namespace cmprank
