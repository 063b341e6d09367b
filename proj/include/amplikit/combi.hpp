#ifndef AMPLIKIT_COMBI_HPP
#define AMPLIKIT_COMBI_HPP

// Shared combinatorial helpers: index subsets as bitmasks, subset
// enumeration, permutation signs, and the binomial / Narayana counting
// formulas that the enumeration tests compare against.
//
// Markers (column indices) are 1-based throughout the library; bit i-1 of a
// mask represents marker i.  Masks are 32-bit, which covers every ambient
// size used here (n <= 16 with headroom).

#include <bit>
#include <cstdint>
#include <vector>

namespace amplikit {

using Mask = std::uint32_t;

inline Mask bit_of(int marker) { return Mask(1) << (marker - 1); }

inline bool has_marker(Mask mask, int marker) {
  return (mask >> (marker - 1)) & 1u;
}

inline int mask_size(Mask mask) { return std::popcount(mask); }

inline std::vector<int> mask_to_indices(Mask mask) {
  std::vector<int> indices;
  for (int i = 1; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) indices.push_back(i);
  }
  return indices;
}

inline Mask indices_to_mask(const std::vector<int>& indices) {
  Mask mask = 0;
  for (int i : indices) mask |= bit_of(i);
  return mask;
}

// All size-k subsets of {1..n} as sorted index vectors, in lexicographic
// order.  k = 0 yields the single empty subset.
inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(current);
    int pos = k - 1;
    while (pos >= 0 &&
           current[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) {
      --pos;
    }
    if (pos < 0) break;
    ++current[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) {
      current[static_cast<std::size_t>(j)] =
          current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  if (k == 0) {
    out.clear();
    out.push_back({});
  }
  return out;
}

inline std::vector<Mask> subset_masks(int n, int k) {
  std::vector<Mask> out;
  for (const auto& s : subsets(n, k)) out.push_back(indices_to_mask(s));
  return out;
}

// Sign of the permutation that sorts `sequence` ascending; 0 if any value
// repeats.  Quadratic inversion count — sequences here have length <= 10.
inline int sort_sign(const std::vector<int>& sequence) {
  int sign = 1;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    for (std::size_t j = i + 1; j < sequence.size(); ++j) {
      if (sequence[i] == sequence[j]) return 0;
      if (sequence[i] > sequence[j]) sign = -sign;
    }
  }
  return sign;
}

inline unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned long long result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned long long>(n - k + i) /
             static_cast<unsigned long long>(i);
  }
  return result;
}

// Narayana number N(m, j) = binom(m, j) * binom(m, j-1) / m for 1 <= j <= m.
// This is the closed count of noncrossing chord configurations used by the
// enumeration suites.
inline unsigned long long narayana(int m, int j) {
  if (m <= 0 || j <= 0 || j > m) return (m == 0 && j == 0) ? 1 : 0;
  return binomial(m, j) * binomial(m, j - 1) / static_cast<unsigned long long>(m);
}

}  // namespace amplikit

#endif  // AMPLIKIT_COMBI_HPP
