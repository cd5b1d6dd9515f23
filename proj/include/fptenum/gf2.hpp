#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace fptenum::gf2 {

// Row of a linear system over GF(2): coefficient bits plus right-hand side.
class Row {
 public:
  explicit Row(std::size_t width = 0) : words_((width + 63) / 64, 0) {}

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void set(std::size_t i, bool v) {
    if (get(i) != v) flip(i);
  }

  Row& operator^=(const Row& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    rhs ^= o.rhs;
    return *this;
  }

  bool is_zero() const {
    return std::ranges::all_of(words_, [](std::uint64_t w) { return w == 0; });
  }

  std::optional<std::size_t> first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
  }

  bool rhs = false;

 private:
  std::vector<std::uint64_t> words_;
};

// Reduced row echelon form of a system with `width` unknowns.
struct EchelonSystem {
  std::size_t width = 0;
  std::vector<Row> rows;            // one per pivot, fully reduced
  std::vector<std::size_t> pivots;  // pivot column of rows[i]
  bool consistent = true;

  std::vector<std::size_t> free_columns() const {
    std::vector<bool> is_pivot(width, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < width; ++c)
      if (!is_pivot[c]) out.push_back(c);
    return out;
  }
};

inline EchelonSystem eliminate(std::vector<Row> rows, std::size_t width) {
  EchelonSystem sys;
  sys.width = width;
  for (auto& row : rows) {
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
      if (row.get(sys.pivots[i])) row ^= sys.rows[i];
    auto lead = row.first_set();
    if (!lead) {
      if (row.rhs) sys.consistent = false;
      continue;
    }
    for (auto& existing : sys.rows)
      if (existing.get(*lead)) existing ^= row;
    sys.rows.push_back(std::move(row));
    sys.pivots.push_back(*lead);
  }
  return sys;
}

}  // namespace fptenum::gf2
