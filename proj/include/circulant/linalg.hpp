#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "circulant/exactnum.hpp"

namespace circulant {

/// Rank over Q of an integer matrix by fraction-free (Bareiss) elimination.
/// Every intermediate entry is a minor of the input, so all divisions are exact.
inline std::size_t exact_rank_bareiss(std::vector<std::vector<BigScalar>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  BigScalar prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const BigScalar& p = a[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = a[r][k] * p - a[r][c] * a[rank][k];
        a[r][k] /= prev;
      }
      a[r][c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

/// Row echelon basis over F_p, p < 2^31, built one row at a time. Each
/// stored row is zero at the pivots of the rows stored before it.
class ModularEchelon {
 public:
  ModularEchelon(std::size_t width, std::uint64_t prime) : width_(width), p_(prime) {}

  std::size_t rank() const { return rows_.size(); }
  std::uint64_t prime() const { return p_; }

  /// Reduces `row` (entries in [0, p)) against the basis and keeps it when it
  /// is independent. Returns true if the rank grew.
  bool insert(std::vector<std::uint64_t> row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::uint64_t f = row[pivots_[k]];
      if (f == 0) continue;
      const auto& b = rows_[k];
      for (std::size_t c = pivots_[k]; c < width_; ++c)
        if (b[c]) row[c] = (row[c] + (p_ - f) * b[c]) % p_;
    }
    std::size_t piv = 0;
    while (piv < width_ && row[piv] == 0) ++piv;
    if (piv == width_) return false;
    const std::uint64_t inv = pow_mod(row[piv], p_ - 2);
    for (std::size_t c = piv; c < width_; ++c) row[c] = row[c] * inv % p_;
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
    return true;
  }

 private:
  std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1;
    b %= p_;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return r;
  }

  std::size_t width_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace circulant
