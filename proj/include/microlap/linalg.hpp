#pragma once

#include <optional>
#include <vector>

#include "microlap/rational.hpp"

namespace microlap::exact {

// Dense matrix over Rational.  Row-major; only what the kernel computations
// need: RREF, rank, nullspace, linear solve.
class RatMatrix {
public:
  RatMatrix() = default;
  RatMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows, RatVec(cols, Rational(0))) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& at(size_t i, size_t j) { return a_[i][j]; }
  const Rational& at(size_t i, size_t j) const { return a_[i][j]; }
  RatVec& row(size_t i) { return a_[i]; }
  const RatVec& row(size_t i) const { return a_[i]; }

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<size_t> rref();
  size_t rank() const;

  // Basis of the right nullspace, echelonized (each vector has a unit entry
  // in its own free column).  Deterministic for fixed input.
  std::vector<RatVec> nullspace() const;

  // Least-structured exact solve of A x = b; nullopt when inconsistent.
  std::optional<RatVec> solve(const RatVec& b) const;

private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<RatVec> a_;
};

}  // namespace microlap::exact
