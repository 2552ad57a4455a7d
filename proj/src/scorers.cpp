#include "cmprank/scorers.hpp"

#include <cmath>

namespace cmprank {

std::string_view to_string(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::bm25: return "bm25";
    case ScorerKind::tfidf: return "tfidf";
    case ScorerKind::pl2: return "pl2";
    case ScorerKind::dph: return "dph";
    case ScorerKind::hiemstra_lm: return "hiemstra_lm";
    case ScorerKind::dirichlet_lm: return "dirichlet_lm";
    case ScorerKind::dfic: return "dfic";
  }
  return "?";
}

void ScorerParams::validate() const {
  if (!(k1 > 0.0)) throw DomainError("k1 must be > 0");
  if (!(b >= 0.0 && b <= 1.0)) throw DomainError("b must be in [0,1]");
  if (!(c_pl2 > 0.0)) throw DomainError("c_pl2 must be > 0");
  if (!(lambda_h > 0.0 && lambda_h < 1.0)) throw DomainError("lambda_h must be in (0,1)");
  if (!(mu > 0.0)) throw DomainError("mu must be > 0");
}

namespace scorer_detail {

double term_contribution(ScorerKind kind, const TermStats& s, const ScorerParams& p) {
  if (s.tf <= 0.0 || s.cf <= 0.0 || s.dl <= 0.0) {
    return 0.0;  // absent term or empty document; DirichletLM's penalty is separate
  }
  switch (kind) {
    case ScorerKind::bm25: {
      double idf = std::log(1.0 + (s.n_docs - s.df + 0.5) / (s.df + 0.5));
      double denom = s.tf + p.k1 * (1.0 - p.b + p.b * s.dl / s.avgdl);
      return idf * (s.tf * (p.k1 + 1.0)) / denom;
    }
    case ScorerKind::tfidf: {
      double denom = s.tf + p.k1 * (1.0 - p.b + p.b * s.dl / s.avgdl);
      return (s.tf / denom) * std::log(1.0 + s.n_docs / s.df);
    }
    case ScorerKind::pl2: {
      double tfn = s.tf * std::log2(1.0 + p.c_pl2 * s.avgdl / s.dl);
      if (tfn <= 0.0) return 0.0;
      double lambda = s.cf / s.n_docs;
      return (1.0 / (tfn + 1.0)) *
             (tfn * std::log2(tfn / lambda) + (lambda - tfn) * std::log2(std::exp(1.0)) +
              0.5 * std::log2(2.0 * M_PI * tfn));
    }
    case ScorerKind::dph: {
      double f = s.tf / s.dl;
      if (f >= 1.0) return 0.0;  // the normalization factor (1-f)^2 vanishes
      double norm = (1.0 - f) * (1.0 - f) / (s.tf + 1.0);
      return norm * (s.tf * std::log2((s.tf * s.avgdl / s.dl) * (s.n_docs / s.cf)) +
                     0.5 * std::log2(2.0 * M_PI * s.tf * (1.0 - f)));
    }
    case ScorerKind::hiemstra_lm:
      return std::log(1.0 + (p.lambda_h * s.tf * s.n_tokens) /
                                ((1.0 - p.lambda_h) * s.cf * s.dl));
    case ScorerKind::dirichlet_lm:
      return std::log(1.0 + s.tf / (p.mu * s.cf / s.n_tokens));
    case ScorerKind::dfic: {
      double expected = s.dl * s.cf / s.n_tokens;
      if (!(s.tf > expected)) return 0.0;
      return std::log2(1.0 + (s.tf - expected) / std::sqrt(expected));
    }
  }
  return 0.0;
}

}  // namespace scorer_detail

double score(ScorerKind kind, std::span<const std::string> query_tokens,
             const std::string& doc_id, const InvertedIndex& index,
             const ScorerParams& params) {
  params.validate();
  const CollectionStats& stats = index.stats();
  if (stats.num_docs == 0 || stats.total_tokens == 0) {
    throw DomainError("cannot score against an empty collection");
  }
  auto dl = index.doc_length(doc_id);
  if (!dl) throw NotFoundError("doc_id not in index: " + doc_id);
  if (*dl == 0) return 0.0;

  scorer_detail::TermStats base;
  base.dl = static_cast<double>(*dl);
  base.n_docs = static_cast<double>(stats.num_docs);
  base.n_tokens = static_cast<double>(stats.total_tokens);
  base.avgdl = stats.avgdl;

  double total = 0.0;
  for (const std::string& term : query_tokens) {
    scorer_detail::TermStats s = base;
    s.df = static_cast<double>(index.df(term));
    s.cf = static_cast<double>(index.cf(term));
    s.tf = static_cast<double>(index.term_frequency(term, doc_id));
    total += scorer_detail::term_contribution(kind, s, params);
  }
  if (kind == ScorerKind::dirichlet_lm && !query_tokens.empty()) {
    total += static_cast<double>(query_tokens.size()) *
             std::log(params.mu / (base.dl + params.mu));
  }
  return total;
}

std::map<ScorerKind, double> score_all(std::span<const std::string> query_tokens,
                                       const std::string& doc_id, const InvertedIndex& index,
                                       const ScorerParams& params) {
  std::map<ScorerKind, double> result;
  for (ScorerKind kind : kAllScorers) {
    result[kind] = score(kind, query_tokens, doc_id, index, params);
  }
  return result;
}

}  // namespace cmprank
