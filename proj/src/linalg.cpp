#include "microlap/linalg.hpp"

namespace microlap::exact {

std::vector<size_t> RatMatrix::rref() {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t p = r;
    while (p < rows_ && a_[p][c].is_zero()) ++p;
    if (p == rows_) continue;
    std::swap(a_[p], a_[r]);
    Rational inv = a_[r][c].inv();
    for (size_t j = c; j < cols_; ++j) a_[r][j] *= inv;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r || a_[i][c].is_zero()) continue;
      Rational f = a_[i][c];
      for (size_t j = c; j < cols_; ++j) a_[i][j] -= f * a_[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t RatMatrix::rank() const {
  RatMatrix m = *this;
  return m.rref().size();
}

std::vector<RatVec> RatMatrix::nullspace() const {
  RatMatrix m = *this;
  std::vector<size_t> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;

  std::vector<RatVec> basis;
  for (size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols_, Rational(0));
    v[free] = Rational(1);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> RatMatrix::solve(const RatVec& b) const {
  RatMatrix aug(rows_, cols_ + 1);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = a_[i][j];
    aug.at(i, cols_) = b[i];
  }
  std::vector<size_t> pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  RatVec x(cols_, Rational(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols_);
  return x;
}

}  // namespace microlap::exact
