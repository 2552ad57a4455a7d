#include "cmprank/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace cmprank {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// First run of letters inside a tag body, lowercased. "/p class=x" -> "p".
std::string tag_name(std::string_view inside) {
  std::size_t i = 0;
  while (i < inside.size() && (is_space(inside[i]) || inside[i] == '/')) ++i;
  std::string name;
  while (i < inside.size() && std::isalpha(static_cast<unsigned char>(inside[i]))) {
    name += ascii_lower(inside[i]);
    ++i;
  }
  return name;
}

bool starts_closing(std::string_view inside) {
  std::size_t i = 0;
  while (i < inside.size() && is_space(inside[i])) ++i;
  return i < inside.size() && inside[i] == '/';
}

// Case-insensitive search for "</name" starting at `from`; returns the index
// past the closing '>' or npos.
std::size_t skip_element(std::string_view text, std::size_t from, const std::string& name) {
  const std::string needle = "</" + name;
  for (std::size_t i = from; i + needle.size() <= text.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (ascii_lower(text[i + j]) != needle[j]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    std::size_t gt = text.find('>', i + needle.size());
    return gt == std::string_view::npos ? std::string_view::npos : gt + 1;
  }
  return std::string_view::npos;
}

std::string strip_tags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<') {
      out += text[i++];
      continue;
    }
    // Find the matching '>' of the outermost '<', tolerating nested '<'.
    std::size_t depth = 0;
    std::size_t j = i;
    std::size_t end = std::string_view::npos;
    for (; j < text.size(); ++j) {
      if (text[j] == '<') {
        ++depth;
      } else if (text[j] == '>') {
        if (--depth == 0) {
          end = j;
          break;
        }
      }
    }
    if (end == std::string_view::npos) {
      // Unmatched '<': keep the rest verbatim, e.g. "2 < 3".
      out.append(text.substr(i));
      break;
    }
    std::string_view inside = text.substr(i + 1, end - i - 1);
    std::string name = tag_name(inside);
    i = end + 1;
    bool self_closing = !inside.empty() && inside.back() == '/';
    if (!starts_closing(inside) && !self_closing && (name == "script" || name == "style")) {
      std::size_t after = skip_element(text, i, name);
      i = after == std::string_view::npos ? text.size() : after;
    }
  }
  return out;
}

struct Entity {
  std::string_view name;
  std::string_view replacement;
};

constexpr std::array<Entity, 10> kEntities = {{
    {"amp", "&"},
    {"lt", "<"},
    {"gt", ">"},
    {"quot", "\""},
    {"apos", "'"},
    {"nbsp", " "},
    {"ndash", "\xe2\x80\x93"},
    {"mdash", "\xe2\x80\x94"},
    {"rsquo", "\xe2\x80\x99"},
    {"hellip", "\xe2\x80\xa6"},
}};

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && j - i <= 8 &&
           std::isalpha(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j < text.size() && text[j] == ';' && j > i + 1) {
      std::string_view name = text.substr(i + 1, j - i - 1);
      auto it = std::find_if(kEntities.begin(), kEntities.end(),
                             [&](const Entity& e) { return e.name == name; });
      if (it != kEntities.end()) {
        out += it->replacement;
        i = j + 1;
        continue;
      }
    }
    out += text[i++];  // unknown entity or bare '&': keep verbatim
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string clean_html(std::string_view raw) {
  // Stripping can splice entity fragments together and decoding can surface
  // new markup, so iterate to a fixed point; each pass only shortens.
  std::string current(raw);
  for (;;) {
    std::string next = collapse_whitespace(decode_entities(strip_tags(current)));
    if (next == current) return next;
    current = std::move(next);
  }
}

int map_antique_grade(int grade) {
  switch (grade) {
    case 1: return 0;
    case 2: return 1;
    case 3: return 1;
    case 4: return 2;
    default:
      throw DomainError("antique grade must be in {1,2,3,4}, got " + std::to_string(grade));
  }
}

std::pair<std::vector<Topic>, std::vector<Topic>> split_topics(
    const std::vector<Topic>& topics, std::size_t n_train, std::uint64_t seed) {
  if (n_train == 0 || n_train >= topics.size()) {
    throw DomainError("n_train must satisfy 0 < n_train < " + std::to_string(topics.size()) +
                      ", got " + std::to_string(n_train));
  }
  std::vector<Topic> ordered = topics;
  std::sort(ordered.begin(), ordered.end(),
            [](const Topic& a, const Topic& b) { return a.topic_id < b.topic_id; });
  if (seed != 0) {
    // Hand-rolled Fisher-Yates: std::shuffle is not bit-stable across
    // standard libraries.
    std::mt19937_64 rng(seed);
    for (std::size_t i = ordered.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(ordered[i], ordered[j]);
    }
  }
  std::vector<Topic> train(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<Topic> valid(ordered.begin() + static_cast<std::ptrdiff_t>(n_train), ordered.end());
  return {std::move(train), std::move(valid)};
}

void Qrels::add(Judgment judgment) {
  if (judgment.grade < 0 || judgment.grade > 2) {
    throw DomainError("grade must be in {0,1,2}, got " + std::to_string(judgment.grade));
  }
  auto key = std::make_pair(judgment.topic_id, judgment.doc_id);
  if (!by_key_.emplace(key, judgment.grade).second) {
    throw DomainError("duplicate judgment for topic " + std::to_string(judgment.topic_id) +
                      ", doc " + judgment.doc_id);
  }
  entries_.push_back(std::move(judgment));
}

std::optional<int> Qrels::grade(int topic_id, const std::string& doc_id) const {
  auto it = by_key_.find(std::make_pair(topic_id, doc_id));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::set<int> Qrels::topics() const {
  std::set<int> ids;
  for (const auto& judgment : entries_) ids.insert(judgment.topic_id);
  return ids;
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

bool parse_int(std::string_view text, int& value) {
  try {
    std::size_t used = 0;
    value = std::stoi(std::string(text), &used);
    return used == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::vector<Topic> load_topics(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<Topic> topics;
  std::set<int> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string(), lineno, "expected topic_id<TAB>title");
    }
    Topic topic;
    if (!parse_int(trim(line.substr(0, tab)), topic.topic_id)) {
      throw ParseError(path.string(), lineno, "topic_id is not an integer");
    }
    topic.title = trim(line.substr(tab + 1));
    if (topic.title.empty()) {
      throw ParseError(path.string(), lineno, "empty title");
    }
    if (!seen.insert(topic.topic_id).second) {
      throw ParseError(path.string(), lineno,
                       "duplicate topic_id " + std::to_string(topic.topic_id));
    }
    topics.push_back(std::move(topic));
  }
  return topics;
}

Qrels load_qrels(const std::filesystem::path& path, const QrelsOptions& options) {
  std::ifstream in = open_or_throw(path);
  Qrels qrels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string topic_str, iteration, doc_id, grade_str, extra;
    if (!(fields >> topic_str >> iteration >> doc_id >> grade_str) || (fields >> extra)) {
      throw ParseError(path.string(), lineno, "expected `topic_id 0 doc_id grade`");
    }
    Judgment judgment;
    judgment.doc_id = doc_id;
    int grade = 0;
    if (!parse_int(topic_str, judgment.topic_id) || !parse_int(grade_str, grade)) {
      throw ParseError(path.string(), lineno, "topic_id and grade must be integers");
    }
    try {
      judgment.grade = options.antique_grades ? map_antique_grade(grade) : grade;
      qrels.add(std::move(judgment));
    } catch (const DomainError& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return qrels;
}

std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  const CorpusOptions& options) {
  std::ifstream in = open_or_throw(path);
  std::vector<Document> docs;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object() || !record.contains("doc_id") || !record.contains("body") ||
        !record["doc_id"].is_string() || !record["body"].is_string()) {
      throw ParseError(path.string(), lineno, "expected object with string doc_id and body");
    }
    Document doc;
    doc.doc_id = record["doc_id"].get<std::string>();
    if (doc.doc_id.empty()) {
      throw ParseError(path.string(), lineno, "empty doc_id");
    }
    if (record.contains("raw") && record["raw"].is_string()) {
      doc.raw = record["raw"].get<std::string>();
    }
    doc.body = clean_html(record["body"].get<std::string>());
    if (!seen.insert(doc.doc_id).second) {
      throw ParseError(path.string(), lineno, "duplicate doc_id " + doc.doc_id);
    }
    if (options.max_chars > 0 && doc.body.size() > options.max_chars) continue;
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace cmprank
