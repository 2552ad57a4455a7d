#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "cmprank/errors.hpp"
#include "cmprank/index.hpp"

namespace cmprank {

enum class ScorerKind { bm25, tfidf, pl2, dph, hiemstra_lm, dirichlet_lm, dfic };

inline constexpr std::array<ScorerKind, 7> kAllScorers = {
    ScorerKind::bm25,       ScorerKind::tfidf,        ScorerKind::pl2,
    ScorerKind::dph,        ScorerKind::hiemstra_lm,  ScorerKind::dirichlet_lm,
    ScorerKind::dfic};

std::string_view to_string(ScorerKind kind);

struct ScorerParams {
  double k1 = 1.2;
  double b = 0.75;
  double c_pl2 = 1.0;
  double lambda_h = 0.15;
  double mu = 2500.0;

  /// Throws DomainError when a value is outside its documented range.
  void validate() const;
};

/// Query-document weight: sum over query tokens of the per-term contribution,
/// plus the per-query length penalty for DirichletLM. Terms absent from the
/// collection contribute 0; an empty document scores 0 under every model.
/// Throws DomainError for an empty collection and NotFoundError for an
/// unknown doc_id.
double score(ScorerKind kind, std::span<const std::string> query_tokens,
             const std::string& doc_id, const InvertedIndex& index,
             const ScorerParams& params = {});

/// All seven models at once; each entry equals the corresponding score() call
/// bit for bit.
std::map<ScorerKind, double> score_all(std::span<const std::string> query_tokens,
                                       const std::string& doc_id, const InvertedIndex& index,
                                       const ScorerParams& params = {});

namespace scorer_detail {

struct TermStats {
  double tf = 0;   // occurrences in the document
  double dl = 0;   // document length
  double df = 0;   // documents containing the term
  double cf = 0;   // collection frequency of the term
  double n_docs = 0;
  double n_tokens = 0;
  double avgdl = 0;
};

/// Per-term contribution of one model (DirichletLM's length penalty is added
/// separately in score()). Exposed for formula-level property tests.
double term_contribution(ScorerKind kind, const TermStats& s, const ScorerParams& params);

}  // namespace scorer_detail

}  // namespace cmprank
