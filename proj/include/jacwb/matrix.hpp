#pragma once

#include <bit>
#include <string>
#include <unordered_map>
#include <vector>

#include "jacwb/ideal.hpp"

namespace jacwb {

/// Dense matrix of polynomials over one ring, row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial::zero(ring_)) {}

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::vector<Polynomial> column(std::size_t j) const {
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
    return out;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  PolyMatrix append_column(const std::vector<Polynomial>& col) const {
    if (col.size() != rows_) throw PreconditionFailed("appended column has wrong length");
    PolyMatrix out(ring_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
      out.at(i, cols_) = col[i];
    }
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      out += "[";
      for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + at(i, j).to_string();
      out += "]\n";
    }
    return out;
  }

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> entries_;
};

inline constexpr std::size_t kMaxMinorDimension = 32;

/// Subdeterminants by Laplace expansion along the first chosen row, with
/// every intermediate keyed by (row set, column set).
class MinorCalculator {
 public:
  explicit MinorCalculator(const PolyMatrix& A) : A_(A) {
    if (A.rows() > kMaxMinorDimension || A.cols() > kMaxMinorDimension)
      throw PreconditionFailed("matrix exceeds the " + std::to_string(kMaxMinorDimension) + "x" +
                               std::to_string(kMaxMinorDimension) + " minor limit");
  }

  Polynomial determinant(std::uint32_t rows, std::uint32_t cols) {
    if (std::popcount(rows) != std::popcount(cols)) throw PreconditionFailed("minor needs a square selection");
    if (rows == 0) return Polynomial::constant(A_.ring(), 1);
    std::uint64_t key = (std::uint64_t{rows} << 32) | cols;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::size_t r0 = static_cast<std::size_t>(std::countr_zero(rows));
    std::uint32_t rest_rows = rows & (rows - 1);
    Polynomial acc = Polynomial::zero(A_.ring());
    int sign = 1;
    for (std::uint32_t c = cols; c; c &= c - 1) {
      std::size_t j = static_cast<std::size_t>(std::countr_zero(c));
      const Polynomial& a = A_.at(r0, j);
      if (!a.is_zero()) {
        Polynomial sub = determinant(rest_rows, cols & ~(1u << j));
        if (!sub.is_zero()) acc = sign > 0 ? acc + a * sub : acc - a * sub;
      }
      sign = -sign;
    }
    memo_.emplace(key, acc);
    return acc;
  }

 private:
  const PolyMatrix& A_;
  std::unordered_map<std::uint64_t, Polynomial> memo_;
};

inline std::vector<std::uint32_t> subsets_of_size(std::size_t n, std::size_t r) {
  std::vector<std::uint32_t> out;
  if (r > n) return out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
    if (static_cast<std::size_t>(std::popcount(s)) == r) out.push_back(static_cast<std::uint32_t>(s));
  return out;
}

/// All r x r minors (including zero ones), rows-major over subsets.
inline std::vector<Polynomial> minors(const PolyMatrix& A, std::size_t r) {
  MinorCalculator calc(A);
  std::vector<Polynomial> out;
  auto row_sets = subsets_of_size(A.rows(), r);
  auto col_sets = subsets_of_size(A.cols(), r);
  for (auto rs : row_sets)
    for (auto cs : col_sets) out.push_back(calc.determinant(rs, cs));
  return out;
}

inline Polynomial determinant(const PolyMatrix& A) {
  if (A.rows() != A.cols()) throw PreconditionFailed("determinant of a non-square matrix");
  MinorCalculator calc(A);
  std::uint32_t all = A.rows() == 32 ? ~0u : (1u << A.rows()) - 1;
  return calc.determinant(all, all);
}

/// I_r(A): (1) for r <= 0, (0) for r > min(rows, cols).
inline Ideal minors_ideal(const PolyMatrix& A, int r) {
  const auto& ring = A.ring();
  if (r <= 0) return Ideal::unit(ring);
  if (static_cast<std::size_t>(r) > std::min(A.rows(), A.cols())) return Ideal::zero(ring);
  std::vector<Polynomial> gens;
  std::vector<Polynomial> seen;
  for (auto& m : minors(A, static_cast<std::size_t>(r))) {
    if (m.is_zero()) continue;
    Polynomial key = m.monic();
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    gens.push_back(std::move(m));
  }
  return Ideal(ring, gens);
}

}  // namespace jacwb
