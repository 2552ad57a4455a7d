#pragma once

#include <span>
#include <string_view>

#include "cmprank/errors.hpp"

namespace cmprank {

enum class GainKind { exponential, linear };

std::string_view to_string(GainKind kind);
GainKind gain_from_string(std::string_view name);  // throws DomainError

/// 2^grade - 1 (default) or the grade itself.
double dcg_gain(int grade, GainKind kind = GainKind::exponential);

/// 1 / log2(rank + 1) for 1-based ranks.
double rank_discount(std::size_t rank);

/// DCG over the first min(k, n) positions of grades listed in rank order.
double dcg_at_k(std::span<const int> grades, int k, GainKind kind = GainKind::exponential);

/// Normalized DCG; 0 when the ideal DCG is 0. Grades must be non-negative and
/// k >= 1 (DomainError otherwise).
double ndcg_at_k(std::span<const int> grades, int k, GainKind kind = GainKind::exponential);

}  // namespace cmprank
