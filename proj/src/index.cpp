#include "cmprank/index.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "cmprank/io_util.hpp"

namespace cmprank {

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

const std::set<std::string>& stopwords33() {
  static const std::set<std::string> words = {
      "a",    "about", "an",   "and",  "are",  "as",   "at",   "be",   "by",
      "for",  "from",  "has",  "have", "he",   "in",   "is",   "it",   "its",
      "of",   "on",    "or",   "that", "the",  "this", "to",   "was",  "were",
      "what", "when",  "which", "who", "will", "with"};
  return words;
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_alnum(c)) {
      current += ascii_lower(c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));

  if (config.remove_stopwords) {
    const auto& stop = stopwords33();
    std::erase_if(tokens, [&](const std::string& t) { return stop.count(t) > 0; });
  }
  if (config.stem) {
    for (auto& token : tokens) token = porter_stem(token);
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Porter stemmer (1980 algorithm, with the LOGI->LOG amendment of the
// reference implementation).
// ---------------------------------------------------------------------------

namespace {

class PorterWord {
 public:
  explicit PorterWord(std::string_view w) : word_(w) {}

  const std::string& str() const { return word_; }

  bool ends_with(std::string_view suffix) const {
    return word_.size() >= suffix.size() &&
           word_.compare(word_.size() - suffix.size(), suffix.size(), suffix) == 0;
  }

  // Letter at i is a consonant: not aeiou, and y only when it follows a vowel
  // or starts the word.
  bool is_consonant(std::size_t i) const {
    char c = word_[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !is_consonant(i - 1);
    return true;
  }

  // Measure m of the first `len` letters: [C](VC)^m[V].
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(i)) ++i;
    for (;;) {
      while (i < len && !is_consonant(i)) ++i;
      if (i >= len) return m;
      while (i < len && is_consonant(i)) ++i;
      ++m;
    }
  }

  int measure_without(std::size_t suffix_len) const { return measure(word_.size() - suffix_len); }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!is_consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant() const {
    std::size_t n = word_.size();
    return n >= 2 && word_[n - 1] == word_[n - 2] && is_consonant(n - 1);
  }

  // *o: the first `len` letters end consonant-vowel-consonant with the final
  // consonant not w, x or y.
  bool ends_cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!is_consonant(len - 3) || is_consonant(len - 2) || !is_consonant(len - 1)) return false;
    char c = word_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  void chop(std::size_t n) { word_.erase(word_.size() - n); }
  void replace_suffix(std::size_t n, std::string_view with) {
    word_.erase(word_.size() - n);
    word_ += with;
  }

  // Longest-match rewrite table; once a suffix matches, its condition decides
  // and no other suffix is tried.
  struct Rule {
    std::string_view from;
    std::string_view to;
  };
  void apply_table(std::span<const Rule> rules, int min_measure) {
    const Rule* best = nullptr;
    for (const Rule& rule : rules) {
      if (ends_with(rule.from) && (!best || rule.from.size() > best->from.size())) best = &rule;
    }
    if (!best) return;
    if (measure_without(best->from.size()) > min_measure) {
      replace_suffix(best->from.size(), best->to);
    }
  }

 private:
  std::string word_;
};

}  // namespace

std::string porter_stem(std::string_view input) {
  if (input.size() <= 2) return std::string(input);
  PorterWord w(input);

  // Step 1a
  if (w.ends_with("sses")) {
    w.chop(2);
  } else if (w.ends_with("ies")) {
    w.chop(2);
  } else if (!w.ends_with("ss") && w.ends_with("s")) {
    w.chop(1);
  }

  // Step 1b
  if (w.ends_with("eed")) {
    if (w.measure_without(3) > 0) w.chop(1);
  } else {
    bool fired = false;
    if (w.ends_with("ed") && w.has_vowel(w.str().size() - 2)) {
      w.chop(2);
      fired = true;
    } else if (w.ends_with("ing") && w.has_vowel(w.str().size() - 3)) {
      w.chop(3);
      fired = true;
    }
    if (fired) {
      if (w.ends_with("at") || w.ends_with("bl") || w.ends_with("iz")) {
        w.replace_suffix(0, "e");
      } else if (w.double_consonant() && !w.ends_with("l") && !w.ends_with("s") &&
                 !w.ends_with("z")) {
        w.chop(1);
      } else if (w.measure(w.str().size()) == 1 && w.ends_cvc(w.str().size())) {
        w.replace_suffix(0, "e");
      }
    }
  }

  // Step 1c
  if (w.ends_with("y") && w.has_vowel(w.str().size() - 1)) {
    w.replace_suffix(1, "i");
  }

  // Step 2
  static constexpr PorterWord::Rule kStep2[] = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
      {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
      {"logi", "log"}};
  w.apply_table(kStep2, 0);

  // Step 3
  static constexpr PorterWord::Rule kStep3[] = {
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
  w.apply_table(kStep3, 0);

  // Step 4
  static constexpr PorterWord::Rule kStep4[] = {
      {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
      {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
      {"ent", ""},  {"ou", ""},   {"ism", ""},  {"ate", ""}, {"iti", ""},
      {"ous", ""},  {"ive", ""},  {"ize", ""}};
  if (w.ends_with("ion")) {
    // ion deletes only after s or t, and outranks shorter matches by length.
    std::size_t n = w.str().size();
    if (n >= 4 && (w.str()[n - 4] == 's' || w.str()[n - 4] == 't') &&
        w.measure_without(3) > 1) {
      w.chop(3);
    }
  } else {
    w.apply_table(kStep4, 1);
  }

  // Step 5a
  if (w.ends_with("e")) {
    int m = w.measure_without(1);
    if (m > 1 || (m == 1 && !w.ends_cvc(w.str().size() - 1))) w.chop(1);
  }
  // Step 5b
  if (w.measure(w.str().size()) > 1 && w.double_consonant() && w.ends_with("l")) {
    w.chop(1);
  }

  return w.str();
}

// ---------------------------------------------------------------------------
// InvertedIndex
// ---------------------------------------------------------------------------

InvertedIndex InvertedIndex::build(std::vector<Document>& docs, const TokenizerConfig& config) {
  InvertedIndex index;
  index.tokenizer_ = config;

  std::map<std::string, std::map<std::string, std::uint32_t>> term_doc_tf;
  for (Document& doc : docs) {
    if (doc.doc_id.empty()) throw DomainError("document with empty doc_id");
    doc.tokens = tokenize(doc.body, config);
    doc.length = doc.tokens.size();
    if (!index.lengths_.emplace(doc.doc_id, doc.length).second) {
      throw DomainError("duplicate doc_id " + doc.doc_id);
    }
    index.stats_.total_tokens += doc.length;
    for (const std::string& token : doc.tokens) {
      ++term_doc_tf[token][doc.doc_id];
    }
  }
  index.stats_.num_docs = docs.size();
  index.stats_.avgdl = index.stats_.num_docs == 0
                           ? 0.0
                           : static_cast<double>(index.stats_.total_tokens) /
                                 static_cast<double>(index.stats_.num_docs);

  for (auto& [term, doc_tfs] : term_doc_tf) {
    std::vector<Posting> postings;
    postings.reserve(doc_tfs.size());
    std::uint64_t total = 0;
    for (auto& [doc_id, tf] : doc_tfs) {  // std::map: already sorted by doc_id
      postings.push_back(Posting{doc_id, tf});
      total += tf;
    }
    index.cf_[term] = total;
    index.postings_[term] = std::move(postings);
  }
  return index;
}

std::size_t InvertedIndex::df(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

std::uint64_t InvertedIndex::cf(const std::string& term) const {
  auto it = cf_.find(term);
  return it == cf_.end() ? 0 : it->second;
}

std::uint32_t InvertedIndex::term_frequency(const std::string& term,
                                            const std::string& doc_id) const {
  auto it = postings_.find(term);
  if (it == postings_.end()) return 0;
  const auto& postings = it->second;
  auto pos = std::lower_bound(postings.begin(), postings.end(), doc_id,
                              [](const Posting& p, const std::string& id) { return p.doc_id < id; });
  if (pos == postings.end() || pos->doc_id != doc_id) return 0;
  return pos->tf;
}

std::optional<std::size_t> InvertedIndex::doc_length(const std::string& doc_id) const {
  auto it = lengths_.find(doc_id);
  if (it == lengths_.end()) return std::nullopt;
  return it->second;
}

bool InvertedIndex::contains(const std::string& doc_id) const {
  return lengths_.count(doc_id) > 0;
}

namespace {
constexpr std::string_view kIndexFormat = "cmprank-index";
constexpr int kIndexVersion = 1;
}  // namespace

void InvertedIndex::save(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["format"] = kIndexFormat;
  j["version"] = kIndexVersion;
  j["tokenizer"] = {{"remove_stopwords", tokenizer_.remove_stopwords},
                    {"stem", tokenizer_.stem}};
  j["stats"] = {{"num_docs", stats_.num_docs}, {"total_tokens", stats_.total_tokens}};
  nlohmann::ordered_json lengths = nlohmann::ordered_json::object();
  for (const auto& [doc_id, len] : lengths_) lengths[doc_id] = len;
  j["lengths"] = std::move(lengths);
  nlohmann::ordered_json postings = nlohmann::ordered_json::object();
  for (const auto& [term, plist] : postings_) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Posting& p : plist) arr.push_back({p.doc_id, p.tf});
    postings[term] = std::move(arr);
  }
  j["postings"] = std::move(postings);
  write_file_atomic(path, j.dump(2) + "\n");
}

InvertedIndex InvertedIndex::load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kIndexFormat) {
      throw ParseError(path.string(), 0, "not an index file");
    }
    if (j.at("version").get<int>() != kIndexVersion) {
      throw ParseError(path.string(), 0,
                       "unsupported index version " + j["version"].dump());
    }
    InvertedIndex index;
    index.tokenizer_.remove_stopwords = j.at("tokenizer").at("remove_stopwords").get<bool>();
    index.tokenizer_.stem = j.at("tokenizer").at("stem").get<bool>();
    index.stats_.num_docs = j.at("stats").at("num_docs").get<std::size_t>();
    index.stats_.total_tokens = j.at("stats").at("total_tokens").get<std::uint64_t>();
    index.stats_.avgdl = index.stats_.num_docs == 0
                             ? 0.0
                             : static_cast<double>(index.stats_.total_tokens) /
                                   static_cast<double>(index.stats_.num_docs);
    for (const auto& [doc_id, len] : j.at("lengths").items()) {
      index.lengths_[doc_id] = len.get<std::size_t>();
    }
    for (const auto& [term, arr] : j.at("postings").items()) {
      std::vector<Posting> plist;
      std::uint64_t total = 0;
      for (const auto& entry : arr) {
        Posting p{entry.at(0).get<std::string>(), entry.at(1).get<std::uint32_t>()};
        if (p.tf == 0) throw ParseError(path.string(), 0, "posting with tf=0 for " + term);
        total += p.tf;
        plist.push_back(std::move(p));
      }
      if (!std::is_sorted(plist.begin(), plist.end(), [](const Posting& a, const Posting& b) {
            return a.doc_id < b.doc_id;
          })) {
        throw ParseError(path.string(), 0, "postings for " + term + " not sorted");
      }
      index.cf_[term] = total;
      index.postings_[term] = std::move(plist);
    }
    return index;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, std::string("malformed index file: ") + e.what());
  }
}

}  // namespace cmprank
