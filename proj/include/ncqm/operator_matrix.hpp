#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncqm/fock_basis.hpp"
#include "ncqm/scalars.hpp"

namespace ncqm {

/// A linear operator on the truncated Fock space, stored row-sparse in the
/// occupation basis. `valid_level` marks the highest level block whose
/// entries agree with the untruncated computation; superoperators that need
/// data above the truncation lower it (they never silently keep stale rows).
template <typename S>
class OperatorMatrix {
 public:
  using Entry = std::pair<std::int32_t, S>;

  explicit OperatorMatrix(FockBasisPtr basis)
      : basis_(std::move(basis)),
        rows_(basis_->dimension()),
        valid_level_(basis_->n_max()) {}

  static OperatorMatrix zero(FockBasisPtr basis) { return OperatorMatrix(std::move(basis)); }

  static OperatorMatrix identity(FockBasisPtr basis) {
    OperatorMatrix m(std::move(basis));
    for (int i = 0; i < m.dim(); ++i) m.rows_[i].push_back({i, S(1)});
    return m;
  }

  /// Diagonal operator with entry fn(state) on each basis state.
  template <typename Fn>
  static OperatorMatrix diagonal(FockBasisPtr basis, Fn&& fn) {
    OperatorMatrix m(std::move(basis));
    for (int i = 0; i < m.dim(); ++i) {
      S v = fn(m.basis_->state(i));
      if (!scalar_is_zero(v)) m.rows_[i].push_back({i, std::move(v)});
    }
    return m;
  }

  const FockBasis& basis() const { return *basis_; }
  const FockBasisPtr& basis_ptr() const { return basis_; }
  int dim() const { return int(rows_.size()); }
  int valid_level() const { return valid_level_; }
  void set_valid_level(int level) { valid_level_ = std::min(level, basis_->n_max()); }

  void add_entry(int row, int col, S v) {
    if (scalar_is_zero(v)) return;
    rows_[row].push_back({std::int32_t(col), std::move(v)});
  }

  /// Sort each row by column, merge duplicates, drop exact zeros.
  void compress() {
    for (auto& row : rows_) {
      if (row.empty()) continue;
      std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
      std::vector<Entry> merged;
      merged.reserve(row.size());
      for (auto& e : row) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(std::move(e));
        }
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(),
                                  [](const Entry& e) { return scalar_is_zero(e.second); }),
                   merged.end());
      row = std::move(merged);
    }
  }

  const std::vector<Entry>& row(int i) const { return rows_[i]; }

  S coeff(int row, int col) const {
    for (const auto& e : rows_[row])
      if (e.first == col) return e.second;
    return S(0);
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  OperatorMatrix& operator+=(const OperatorMatrix& o) {
    check_same_basis(o);
    for (int i = 0; i < dim(); ++i)
      rows_[i].insert(rows_[i].end(), o.rows_[i].begin(), o.rows_[i].end());
    valid_level_ = std::min(valid_level_, o.valid_level_);
    compress();
    return *this;
  }

  OperatorMatrix& operator-=(const OperatorMatrix& o) {
    check_same_basis(o);
    for (int i = 0; i < dim(); ++i)
      for (const auto& e : o.rows_[i]) rows_[i].push_back({e.first, -e.second});
    valid_level_ = std::min(valid_level_, o.valid_level_);
    compress();
    return *this;
  }

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }

  OperatorMatrix scaled(const S& factor) const {
    OperatorMatrix out(basis_);
    out.valid_level_ = valid_level_;
    if (scalar_is_zero(factor)) return out;
    for (int i = 0; i < dim(); ++i) {
      out.rows_[i].reserve(rows_[i].size());
      for (const auto& e : rows_[i]) out.rows_[i].push_back({e.first, factor * e.second});
    }
    return out;
  }

  /// Scale row i by fn(level(i)) — left multiplication by a level function.
  template <typename Fn>
  OperatorMatrix left_diagonal_scaled(Fn&& fn) const {
    OperatorMatrix out(basis_);
    out.valid_level_ = valid_level_;
    for (int i = 0; i < dim(); ++i) {
      S d = fn(basis_->level_of(i));
      if (scalar_is_zero(d)) continue;
      out.rows_[i].reserve(rows_[i].size());
      for (const auto& e : rows_[i]) out.rows_[i].push_back({e.first, d * e.second});
    }
    return out;
  }

  OperatorMatrix operator*(const OperatorMatrix& o) const {
    check_same_basis(o);
    OperatorMatrix out(basis_);
    out.valid_level_ = std::min(valid_level_, o.valid_level_);
    std::vector<S> acc(dim(), S(0));
    std::vector<std::int32_t> touched;
    for (int i = 0; i < dim(); ++i) {
      touched.clear();
      for (const auto& a : rows_[i]) {
        for (const auto& b : o.rows_[a.first]) {
          if (scalar_is_zero(acc[b.first])) touched.push_back(b.first);
          acc[b.first] += a.second * b.second;
        }
      }
      std::sort(touched.begin(), touched.end());
      for (auto c : touched) {
        if (!scalar_is_zero(acc[c])) out.rows_[i].push_back({c, acc[c]});
        acc[c] = S(0);
      }
    }
    return out;
  }

  /// Plain conjugate transpose (the operator adjoint in an orthonormal basis).
  OperatorMatrix conjugate_transpose() const {
    OperatorMatrix out(basis_);
    out.valid_level_ = valid_level_;
    for (int i = 0; i < dim(); ++i)
      for (const auto& e : rows_[i]) out.rows_[e.first].push_back({std::int32_t(i), scalar_conj(e.second)});
    out.compress();
    return out;
  }

  /// Largest entry magnitude over the sub-block with row and column levels <= level_max
  /// (level_max < 0 means the whole matrix).
  double max_abs(int level_max = -1) const {
    double m = 0.0;
    for (int i = 0; i < dim(); ++i) {
      if (level_max >= 0 && basis_->level_of(i) > level_max) continue;
      for (const auto& e : rows_[i]) {
        if (level_max >= 0 && basis_->level_of(e.first) > level_max) continue;
        m = std::max(m, scalar_abs(e.second));
      }
    }
    return m;
  }

  bool is_zero(int level_max = -1) const {
    for (int i = 0; i < dim(); ++i) {
      if (level_max >= 0 && basis_->level_of(i) > level_max) continue;
      for (const auto& e : rows_[i]) {
        if (level_max >= 0 && basis_->level_of(e.first) > level_max) continue;
        if (!scalar_is_zero(e.second)) return false;
      }
    }
    return true;
  }

  bool is_level_diagonal() const {
    auto shift = level_shift();
    return shift.has_value() && *shift == 0;
  }

  /// If every entry connects levels with the same difference row - col, return it.
  std::optional<int> level_shift() const {
    std::optional<int> shift;
    for (int i = 0; i < dim(); ++i) {
      for (const auto& e : rows_[i]) {
        if (scalar_is_zero(e.second)) continue;
        int s = basis_->level_of(i) - basis_->level_of(e.first);
        if (!shift) {
          shift = s;
        } else if (*shift != s) {
          return std::nullopt;
        }
      }
    }
    if (!shift) shift = 0;  // zero operator counts as level diagonal
    return shift;
  }

  bool is_hermitian(double tol) const {
    OperatorMatrix d = *this - conjugate_transpose();
    return d.max_abs() <= tol;
  }

 private:
  void check_same_basis(const OperatorMatrix& o) const {
    if (basis_.get() != o.basis_.get() && basis_->n_max() != o.basis_->n_max())
      throw std::invalid_argument("OperatorMatrix: basis mismatch");
  }

  FockBasisPtr basis_;
  std::vector<std::vector<Entry>> rows_;
  int valid_level_;
};

}  // namespace ncqm
