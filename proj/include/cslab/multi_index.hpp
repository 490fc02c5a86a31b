#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace cslab {

// Increasing index tuples over {0..d-1}, enumerated in lexicographic order.
// d is capped at 8 (charts in this project have d <= 4; realification does
// not change the base dimension).
inline constexpr int kMaxDim = 8;

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

using IndexTuple = std::vector<int>;

namespace detail {
inline std::vector<IndexTuple> enumerate_tuples(int d, int p) {
  std::vector<IndexTuple> out;
  if (p < 0 || p > d) return out;
  IndexTuple t(p);
  for (int i = 0; i < p; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    int i = p - 1;
    while (i >= 0 && t[i] == d - p + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < p; ++j) t[j] = t[j - 1] + 1;
  }
  if (p == 0) out.assign(1, IndexTuple{});
  return out;
}

struct TupleTable {
  // tables[d][p] = all increasing p-tuples of {0..d-1}
  std::array<std::array<std::vector<IndexTuple>, kMaxDim + 2>, kMaxDim + 1> tables;
  TupleTable() {
    for (int d = 0; d <= kMaxDim; ++d)
      for (int p = 0; p <= kMaxDim + 1; ++p) tables[d][p] = enumerate_tuples(d, p);
  }
};
inline const TupleTable& tuple_table() {
  static const TupleTable t;
  return t;
}
} // namespace detail

/// All strictly increasing p-tuples of {0..d-1}, lexicographically ordered.
inline const std::vector<IndexTuple>& index_tuples(int d, int p) {
  if (d < 0 || d > kMaxDim) throw std::invalid_argument("index_tuples: dimension out of range");
  if (p < 0) throw std::invalid_argument("index_tuples: negative degree");
  static const std::vector<IndexTuple> empty;
  if (p > kMaxDim + 1) return empty;
  return detail::tuple_table().tables[d][p];
}

/// Lexicographic rank of an increasing tuple among index_tuples(d, p).
inline int tuple_rank(int d, const IndexTuple& t) {
  const int p = int(t.size());
  long long r = 0;
  int prev = -1;
  for (int i = 0; i < p; ++i) {
    for (int v = prev + 1; v < t[i]; ++v) r += binomial(d - 1 - v, p - 1 - i);
    prev = t[i];
  }
  return int(r);
}

/// Sign of the shuffle merging disjoint increasing tuples (i, j) into their sorted union:
/// (-1)^{#(pairs a in i, b in j with b < a)}.
inline int shuffle_sign(const IndexTuple& i, const IndexTuple& j) {
  int inv = 0;
  for (int a : i)
    for (int b : j)
      if (b < a) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

inline IndexTuple merge_tuples(const IndexTuple& i, const IndexTuple& j) {
  IndexTuple out;
  out.reserve(i.size() + j.size());
  std::size_t a = 0, b = 0;
  while (a < i.size() && b < j.size()) out.push_back(i[a] < j[b] ? i[a++] : j[b++]);
  while (a < i.size()) out.push_back(i[a++]);
  while (b < j.size()) out.push_back(j[b++]);
  return out;
}

inline bool tuples_disjoint(const IndexTuple& i, const IndexTuple& j) {
  std::size_t a = 0, b = 0;
  while (a < i.size() && b < j.size()) {
    if (i[a] == j[b]) return false;
    (i[a] < j[b]) ? ++a : ++b;
  }
  return true;
}

} // namespace cslab
