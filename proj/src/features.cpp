#include "cmprank/features.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cmprank/io_util.hpp"

namespace cmprank {

const std::array<std::string, kNumFeatures>& feature_names() {
  static const std::array<std::string, kNumFeatures> names = {
      "pl2", "tfidf", "bm25", "dfic", "chatnoir", "is_retrieved", "asp_pred", "objs"};
  return names;
}

FeatureVector assemble(const Topic& topic, const TaggedQuery& tagged_query,
                       const Candidate& candidate, const InvertedIndex& index,
                       const ScorerParams& params) {
  if (!index.contains(candidate.doc_id)) {
    throw NotFoundError("candidate " + candidate.doc_id + " is not indexed");
  }
  const std::vector<std::string> query_tokens = tokenize(topic.title, index.tokenizer());

  FeatureVector features{};
  features[kFeatPl2] = score(ScorerKind::pl2, query_tokens, candidate.doc_id, index, params);
  features[kFeatTfidf] = score(ScorerKind::tfidf, query_tokens, candidate.doc_id, index, params);
  features[kFeatBm25] = score(ScorerKind::bm25, query_tokens, candidate.doc_id, index, params);
  features[kFeatDfic] = score(ScorerKind::dfic, query_tokens, candidate.doc_id, index, params);
  features[kFeatUpstream] = candidate.upstream_score;

  const std::vector<std::string> doc_tokens = tokenize(candidate.body);
  ComparativeFeatures comparative = comparative_features(tagged_query, doc_tokens);
  features[kFeatIsRetrieved] = comparative.is_retrieved;
  features[kFeatAspPred] = comparative.asp_pred_score;
  features[kFeatObjs] = comparative.objs_score;
  return features;
}

namespace {

std::string join_feature_names() {
  std::string joined;
  for (const std::string& name : feature_names()) {
    if (!joined.empty()) joined += ',';
    joined += name;
  }
  return joined;
}

}  // namespace

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ostringstream out;
  out << "# features=" << join_feature_names() << "\n";
  if (dataset.upstream_missing) out << "# upstream_missing=true\n";
  for (const LabeledInstance& instance : dataset.instances) {
    if (!instance.grade) {
      throw DomainError("instance for doc " + instance.doc_id +
                        " has no grade; datasets are for training/validation");
    }
    out << *instance.grade << " qid:" << instance.topic_id;
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      out << ' ' << (i + 1) << ':' << format_double(instance.features[i]);
    }
    out << " # " << instance.doc_id << "\n";
  }
  write_file_atomic(path, out.str());
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Dataset dataset;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("upstream_missing=true") != std::string::npos) {
        dataset.upstream_missing = true;
      }
      continue;
    }
    std::string payload = line;
    std::string comment;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) {
      payload = line.substr(0, hash);
      comment = line.substr(hash + 1);
    }
    std::istringstream fields(payload);
    LabeledInstance instance;
    int grade = 0;
    std::string qid_field;
    if (!(fields >> grade >> qid_field)) {
      throw ParseError(path.string(), lineno, "expected `grade qid:<topic> ...`");
    }
    if (grade < 0 || grade > 2) {
      throw ParseError(path.string(), lineno, "grade must be in {0,1,2}, got " +
                                                  std::to_string(grade));
    }
    instance.grade = grade;
    if (qid_field.rfind("qid:", 0) != 0) {
      throw ParseError(path.string(), lineno, "second field must be qid:<topic>");
    }
    try {
      std::size_t used = 0;
      instance.topic_id = std::stoi(qid_field.substr(4), &used);
      if (used != qid_field.size() - 4) throw std::invalid_argument("trailing chars");
    } catch (const std::exception&) {
      throw ParseError(path.string(), lineno, "qid is not an integer");
    }

    std::string pair;
    std::size_t count = 0;
    while (fields >> pair) {
      std::size_t colon = pair.find(':');
      if (colon == std::string::npos) {
        throw ParseError(path.string(), lineno, "expected index:value, got \"" + pair + "\"");
      }
      char* end = nullptr;
      long feat_index = std::strtol(pair.c_str(), &end, 10);
      if (end != pair.c_str() + colon) {
        throw ParseError(path.string(), lineno, "feature index is not an integer");
      }
      if (feat_index != static_cast<long>(count) + 1) {
        throw ParseError(path.string(), lineno,
                         "feature indices must run 1.." + std::to_string(kNumFeatures) +
                             " in order; got " + std::to_string(feat_index) + " at position " +
                             std::to_string(count + 1));
      }
      if (count >= kNumFeatures) {
        throw ParseError(path.string(), lineno, "more than 8 features");
      }
      const char* value_start = pair.c_str() + colon + 1;
      char* value_end = nullptr;
      double value = std::strtod(value_start, &value_end);
      if (value_end == value_start || *value_end != '\0') {
        throw ParseError(path.string(), lineno, "bad feature value \"" + pair + "\"");
      }
      instance.features[count] = value;
      ++count;
    }
    if (count != kNumFeatures) {
      throw ParseError(path.string(), lineno,
                       "expected " + std::to_string(kNumFeatures) + " features, got " +
                           std::to_string(count));
    }
    // Doc id from the trailing comment, when present.
    std::istringstream comment_stream(comment);
    comment_stream >> instance.doc_id;
    dataset.instances.push_back(std::move(instance));
  }
  return dataset;
}

}  // namespace cmprank
