#include "cmprank/comparative.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>
#include <vector>

namespace cmprank {

std::set<std::string> default_predicate_cues() {
  return {"better", "worse",  "higher",  "lower", "faster",     "cheaper", "safer",
          "more",   "less",   "vs",      "versus", "than",      "difference"};
}

std::set<std::string> default_pivots() { return {"or", "vs", "versus", "than"}; }

namespace {

bool all_alpha(const std::string& token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

bool er_comparative(const std::string& token) {
  return token.size() >= 5 && all_alpha(token) && token.compare(token.size() - 2, 2, "er") == 0;
}

}  // namespace

TaggedQuery tag_query(std::string_view title, const TaggingConfig& config) {
  const std::vector<std::string> tokens = tokenize(title);
  const auto& stop = stopwords33();

  std::size_t pivot = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (config.pivots.count(tokens[i]) > 0) {
      pivot = i;
      break;
    }
  }

  TaggedQuery tagged;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == pivot) continue;  // the pivot occurrence is consumed, not tagged
    const std::string& token = tokens[i];
    if (stop.count(token) > 0) continue;
    if (config.predicate_cues.count(token) > 0 || er_comparative(token)) {
      tagged.predicates.insert(token);
    }
  }
  if (pivot == tokens.size() && tagged.predicates.empty()) {
    return {};  // no comparative structure detected
  }

  auto eligible_object = [&](const std::string& token) {
    return stop.count(token) == 0 && tagged.predicates.count(token) == 0;
  };
  if (pivot < tokens.size()) {
    for (std::size_t i = pivot; i-- > 0;) {
      if (eligible_object(tokens[i])) {
        tagged.objects.insert(tokens[i]);
        break;
      }
    }
    for (std::size_t i = pivot + 1; i < tokens.size(); ++i) {
      if (eligible_object(tokens[i])) {
        tagged.objects.insert(tokens[i]);
        break;
      }
    }
  } else {
    // No pivot: take the two rarest content tokens, earliest occurrence
    // breaking ties.
    struct ObjCandidate {
      std::uint64_t cf;
      std::size_t position;
      std::string token;
    };
    std::vector<ObjCandidate> candidates;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!eligible_object(tokens[i]) || !seen.insert(tokens[i]).second) continue;
      std::uint64_t cf = config.collection ? config.collection->cf(tokens[i]) : 0;
      candidates.push_back({cf, i, tokens[i]});
    }
    std::sort(candidates.begin(), candidates.end(), [](const ObjCandidate& a, const ObjCandidate& b) {
      return a.cf != b.cf ? a.cf < b.cf : a.position < b.position;
    });
    for (std::size_t i = 0; i < candidates.size() && i < 2; ++i) {
      tagged.objects.insert(candidates[i].token);
    }
  }

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == pivot) continue;
    const std::string& token = tokens[i];
    if (stop.count(token) > 0 || tagged.predicates.count(token) > 0 ||
        tagged.objects.count(token) > 0) {
      continue;
    }
    tagged.aspects.insert(token);
  }
  return tagged;
}

ComparativeFeatures comparative_features(const TaggedQuery& query,
                                         std::span<const std::string> doc_tokens) {
  std::unordered_set<std::string_view> present(doc_tokens.begin(), doc_tokens.end());

  int objects_found = 0;
  for (const std::string& object : query.objects) {
    if (present.count(object) > 0 && ++objects_found == 2) break;
  }

  ComparativeFeatures features;
  features.objs_score = objects_found;

  std::size_t asp_pred_occurrences = 0;
  bool any_structure = objects_found > 0;
  for (const std::string_view token : doc_tokens) {
    std::string key(token);
    if (query.aspects.count(key) > 0 || query.predicates.count(key) > 0) {
      ++asp_pred_occurrences;
      any_structure = true;
    }
  }
  features.is_retrieved = any_structure ? 1 : 0;
  features.asp_pred_score =
      features.objs_score > 0 ? 0.5 * static_cast<double>(asp_pred_occurrences) : 0.0;
  return features;
}

namespace {

void parse_tag_field(const std::string& source, std::size_t lineno, const std::string& field,
                     TaggedQuery& tagged, bool seen[3]) {
  std::size_t colon = field.find(':');
  if (colon == std::string::npos) {
    throw ParseError(source, lineno, "field missing `prefix:` in \"" + field + "\"");
  }
  std::string prefix = field.substr(0, colon);
  std::set<std::string>* target = nullptr;
  int slot = -1;
  if (prefix == "obj") {
    target = &tagged.objects;
    slot = 0;
  } else if (prefix == "asp") {
    target = &tagged.aspects;
    slot = 1;
  } else if (prefix == "pred") {
    target = &tagged.predicates;
    slot = 2;
  } else {
    throw ParseError(source, lineno, "unknown field prefix \"" + prefix + "\"");
  }
  if (seen[slot]) throw ParseError(source, lineno, "repeated field \"" + prefix + "\"");
  seen[slot] = true;

  std::string rest = field.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t comma = rest.find(',', start);
    std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    start = comma == std::string::npos ? rest.size() + 1 : comma + 1;
    if (item.empty()) continue;
    auto normalized = tokenize(item);
    if (normalized.size() != 1) {
      throw ParseError(source, lineno,
                       "\"" + item + "\" does not normalize to a single token");
    }
    target->insert(normalized.front());
  }
}

}  // namespace

std::map<int, TaggedQuery> load_pretagged(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<int, TaggedQuery> result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos
                                                                   : tab - start));
      start = tab == std::string::npos ? line.size() + 1 : tab + 1;
    }
    if (fields.empty() || fields.front().empty()) {
      throw ParseError(path.string(), lineno, "missing topic_id");
    }
    int topic_id = 0;
    try {
      std::size_t used = 0;
      topic_id = std::stoi(fields.front(), &used);
      if (used != fields.front().size()) throw std::invalid_argument("trailing chars");
    } catch (const std::exception&) {
      throw ParseError(path.string(), lineno, "topic_id is not an integer");
    }

    TaggedQuery tagged;
    bool seen[3] = {false, false, false};
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) continue;
      parse_tag_field(path.string(), lineno, fields[i], tagged, seen);
    }
    for (const std::string& object : tagged.objects) {
      if (tagged.aspects.count(object) > 0 || tagged.predicates.count(object) > 0) {
        throw ParseError(path.string(), lineno, "token \"" + object + "\" tagged twice");
      }
    }
    for (const std::string& aspect : tagged.aspects) {
      if (tagged.predicates.count(aspect) > 0) {
        throw ParseError(path.string(), lineno, "token \"" + aspect + "\" tagged twice");
      }
    }
    if (!result.emplace(topic_id, std::move(tagged)).second) {
      throw ParseError(path.string(), lineno, "duplicate topic_id " + std::to_string(topic_id));
    }
  }
  return result;
}

}  // namespace cmprank
