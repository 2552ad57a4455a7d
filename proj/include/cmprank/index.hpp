#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmprank/corpus.hpp"
#include "cmprank/errors.hpp"

namespace cmprank {

struct TokenizerConfig {
  bool remove_stopwords = false;
  bool stem = false;
};

/// Lowercase tokens split on every non-alphanumeric code point (ASCII
/// letters/digits form tokens; everything else separates). Stopword removal
/// and suffix stripping are opt-in and applied in that order.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

/// The fixed 33-word stopword list used by the opt-in filter and by the
/// comparative tagger.
const std::set<std::string>& stopwords33();

/// Porter suffix-stripping stemmer. Expects a lowercase ASCII word.
std::string porter_stem(std::string_view word);

struct Posting {
  std::string doc_id;
  std::uint32_t tf = 0;  // >= 1 in any stored posting
};

struct CollectionStats {
  std::size_t num_docs = 0;      // N
  std::uint64_t total_tokens = 0;  // C
  double avgdl = 0.0;            // C/N, 0 for an empty collection
};

/// Term postings plus document lengths and collection statistics. Immutable
/// once built; safe for concurrent readers.
class InvertedIndex {
 public:
  /// Tokenizes every document (filling doc.tokens / doc.length in place) and
  /// builds sorted postings. Throws DomainError on a duplicate doc_id.
  static InvertedIndex build(std::vector<Document>& docs, const TokenizerConfig& config = {});

  const CollectionStats& stats() const { return stats_; }
  const TokenizerConfig& tokenizer() const { return tokenizer_; }

  std::size_t df(const std::string& term) const;
  std::uint64_t cf(const std::string& term) const;
  /// Occurrences of `term` in `doc_id`; 0 when either is unknown.
  std::uint32_t term_frequency(const std::string& term, const std::string& doc_id) const;
  std::optional<std::size_t> doc_length(const std::string& doc_id) const;
  bool contains(const std::string& doc_id) const;

  const std::map<std::string, std::vector<Posting>>& postings() const { return postings_; }
  const std::map<std::string, std::size_t>& lengths() const { return lengths_; }
  std::size_t num_terms() const { return postings_.size(); }

  /// Persistence as a single deterministic JSON file.
  void save(const std::filesystem::path& path) const;
  static InvertedIndex load(const std::filesystem::path& path);

 private:
  std::map<std::string, std::vector<Posting>> postings_;
  std::map<std::string, std::uint64_t> cf_;
  std::map<std::string, std::size_t> lengths_;
  CollectionStats stats_;
  TokenizerConfig tokenizer_;
};

}  // namespace cmprank
