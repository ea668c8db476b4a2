#pragma once

#include <cmath>
#include <string>

namespace threatstream {

enum class TermKind { keyword, entity };

struct ScoredTerm {
  std::string term;
  double raw_score = 0.0;
  TermKind kind = TermKind::keyword;
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace threatstream
