#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace werewolf {

struct BinomialCI {
  double rate = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

// Normal-approximation 95% interval, clamped to [0,1].
inline BinomialCI binomial_ci(long wins, long n) {
  BinomialCI ci;
  if (n <= 0) return ci;
  double p = static_cast<double>(wins) / static_cast<double>(n);
  double half = 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  ci.rate = p;
  ci.lo = std::max(0.0, p - half);
  ci.hi = std::min(1.0, p + half);
  return ci;
}

// Spearman rank correlation (Pearson over average ranks). nullopt when fewer
// than two points or either side has zero rank variance.
inline std::optional<double> spearman(const std::vector<double>& xs,
                                      const std::vector<double>& ys) {
  std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) return std::nullopt;
  auto ranks = [](const std::vector<double>& v) {
    std::size_t n = v.size();
    std::vector<double> r(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double less = 0.0, equal = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j] < v[i]) ++less;
        if (v[j] == v[i]) ++equal;
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  std::vector<double> rx = ranks(xs), ry = ranks(ys);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace werewolf
