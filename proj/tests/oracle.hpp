#pragma once

// Independent oracles. Nothing here shares code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

// Is `b` reachable from `a` with at most k unit edits? Plain exhaustive
// search over match/substitute, delete and insert at the leftmost unresolved
// position; the only pruning is the length difference.
inline bool reachable(const std::u32string& a, std::size_t i, const std::u32string& b, std::size_t j, std::size_t k) {
    const std::size_t ra = a.size() - i, rb = b.size() - j;
    if ((ra > rb ? ra - rb : rb - ra) > k) return false;
    if (ra == 0 || rb == 0) return true;
    if (a[i] == b[j] && reachable(a, i + 1, b, j + 1, k)) return true;
    if (k == 0) return false;
    return reachable(a, i + 1, b, j + 1, k - 1) || reachable(a, i + 1, b, j, k - 1) ||
           reachable(a, i, b, j + 1, k - 1);
}

inline std::size_t exhaustive_distance(const std::u32string& a, const std::u32string& b) {
    std::size_t k = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    while (!reachable(a, 0, b, 0, k)) ++k;
    return k;
}

inline double pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

}  // namespace oracle
