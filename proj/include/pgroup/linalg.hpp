#pragma once

// Row reduction over the prime field F_p for the small matrices that arise
// from coordinates modulo the Frattini subgroup.

#include <cstddef>
#include <utility>
#include <vector>

namespace pgroup {

using FpVector = std::vector<int>;

inline int mod_p(long long v, int p) {
  const long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inverse_mod_p(int a, int p) {
  // p is prime, so a^{p-2} is the inverse.
  long long result = 1, base = mod_p(a, p);
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

/// Rank over F_p of the given row vectors (all of equal length).
inline int rank_of(std::vector<FpVector> rows, int p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (auto& r : rows)
    for (int& v : r) v = mod_p(v, p);
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[pivot_row]);
    const int inv = inverse_mod_p(rows[pivot_row][c], p);
    for (int& v : rows[pivot_row]) v = static_cast<int>(static_cast<long long>(v) * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][c] == 0) continue;
      const long long f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k)
        rows[r][k] = mod_p(rows[r][k] - f * rows[pivot_row][k], p);
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

}  // namespace pgroup
