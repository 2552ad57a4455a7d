#include "cmprank/ndcg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace cmprank {

std::string_view to_string(GainKind kind) {
  return kind == GainKind::exponential ? "exp" : "linear";
}

GainKind gain_from_string(std::string_view name) {
  if (name == "exp" || name == "exponential") return GainKind::exponential;
  if (name == "linear") return GainKind::linear;
  throw DomainError("unknown gain kind: " + std::string(name));
}

double dcg_gain(int grade, GainKind kind) {
  if (grade < 0) throw DomainError("grade must be non-negative, got " + std::to_string(grade));
  if (kind == GainKind::linear) return static_cast<double>(grade);
  return std::ldexp(1.0, grade) - 1.0;
}

double rank_discount(std::size_t rank) {
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

double dcg_at_k(std::span<const int> grades, int k, GainKind kind) {
  if (k <= 0) throw DomainError("k must be >= 1, got " + std::to_string(k));
  std::size_t cutoff = std::min(grades.size(), static_cast<std::size_t>(k));
  double sum = 0.0;
  for (std::size_t i = 0; i < cutoff; ++i) {
    sum += dcg_gain(grades[i], kind) * rank_discount(i + 1);
  }
  return sum;
}

double ndcg_at_k(std::span<const int> grades, int k, GainKind kind) {
  double dcg = dcg_at_k(grades, k, kind);
  std::vector<int> ideal(grades.begin(), grades.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<int>());
  double idcg = dcg_at_k(ideal, k, kind);
  return idcg == 0.0 ? 0.0 : dcg / idcg;
}

}  // namespace cmprank
