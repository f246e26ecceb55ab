#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "protower/finalg/field.hpp"

namespace protower {

template <ExactField F>
using Vec = std::vector<typename F::value_type>;

template <ExactField F>
Vec<F> zero_vec(const F& k, std::size_t n) {
  return Vec<F>(n, k.zero());
}

template <ExactField F>
Vec<F> unit_vec(const F& k, std::size_t n, std::size_t i) {
  Vec<F> v(n, k.zero());
  v.at(i) = k.one();
  return v;
}

template <ExactField F>
bool is_zero_vec(const F& k, const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return k.is_zero(x); });
}

template <ExactField F>
bool equal_vec(const F& k, const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!k.equal(a[i], b[i])) return false;
  return true;
}

// y += c * x
template <ExactField F>
void axpy(const F& k, const typename F::value_type& c, const Vec<F>& x, Vec<F>& y) {
  if (k.is_zero(c)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!k.is_zero(x[i])) y[i] = k.add(y[i], k.mul(c, x[i]));
}

template <ExactField F>
typename F::value_type dot(const F& k, const Vec<F>& a, const Vec<F>& b) {
  auto s = k.zero();
  for (std::size_t i = 0; i < a.size(); ++i) s = k.add(s, k.mul(a[i], b[i]));
  return s;
}

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& k, std::size_t n) {
    Matrix m(k, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
    return m;
  }

  static Matrix from_rows(const F& k, std::size_t cols, const std::vector<Vec<F>>& rows) {
    Matrix m(k, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const F& k, std::size_t rows, const std::vector<Vec<F>>& cols) {
    Matrix m(k, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: ragged columns");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<F> row(std::size_t i) const {
    return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  Vec<F> column(std::size_t j) const {
    Vec<F> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  void set_column(std::size_t j, const Vec<F>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v.at(i);
  }
  void set_row(std::size_t i, const Vec<F>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v.at(j);
  }

  Vec<F> apply(const Vec<F>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vec<F> y(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      auto s = field_.zero();
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& a = (*this)(i, j);
        if (!field_.is_zero(a) && !field_.is_zero(x[j])) s = field_.add(s, field_.mul(a, x[j]));
      }
      y[i] = s;
    }
    return y;
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("Matrix::operator*: dimension mismatch");
    Matrix c(field_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t l = 0; l < cols_; ++l) {
        const auto& a = (*this)(i, l);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const auto& bv = b(l, j);
          if (!field_.is_zero(bv)) c(i, j) = field_.add(c(i, j), field_.mul(a, bv));
        }
      }
    return c;
  }

  Matrix operator+(const Matrix& b) const {
    check_same_shape(b);
    Matrix c = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = field_.add(data_[i], b.data_[i]);
    return c;
  }
  Matrix operator-(const Matrix& b) const {
    check_same_shape(b);
    Matrix c = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = field_.sub(data_[i], b.data_[i]);
    return c;
  }
  Matrix scaled(const value_type& s) const {
    Matrix c = *this;
    for (auto& x : c.data_) x = field_.mul(s, x);
    return c;
  }
  // this += s * b
  void add_scaled(const value_type& s, const Matrix& b) {
    check_same_shape(b);
    if (field_.is_zero(s)) return;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!field_.is_zero(b.data_[i])) data_[i] = field_.add(data_[i], field_.mul(s, b.data_[i]));
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const auto& x) { return field_.is_zero(x); });
  }

  bool operator==(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!field_.equal(data_[i], b.data_[i])) return false;
    return true;
  }

  /// Row-major flattening; vec(M)[i*cols + j] = M(i, j).
  const std::vector<value_type>& flat() const { return data_; }
  static Matrix from_flat(const F& k, std::size_t rows, std::size_t cols, Vec<F> data) {
    if (data.size() != rows * cols) throw std::invalid_argument("Matrix::from_flat: size mismatch");
    Matrix m(k, rows, cols);
    m.data_ = std::move(data);
    return m;
  }

  Matrix submatrix_columns(const std::vector<std::size_t>& cols) const {
    Matrix m(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
    return m;
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <ExactField F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
  const F& k = a.field();
  Matrix<F> c(k, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a(i, j);
      if (k.is_zero(x)) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s)
          c(i * b.rows() + r, j * b.cols() + s) = k.mul(x, b(r, s));
    }
  return c;
}

template <ExactField F>
Matrix<F> vstack(const F& k, std::size_t cols, const std::vector<Matrix<F>>& blocks) {
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    total += b.rows();
  }
  Matrix<F> m(k, total, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return m;
}

/// Reduced row echelon form with zero rows dropped.
template <ExactField F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

// In-place Gauss-Jordan on m; pivots are only searched in columns < pivot_cols.
// Returns the pivot columns; rows [0, rank) hold the reduced rows.
template <ExactField F>
std::vector<std::size_t> gauss_jordan(Matrix<F>& m, std::size_t pivot_cols) {
  const F& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && k.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    auto piv_inv = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(m(r, j), piv_inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!k.is_zero(m(r, j))) m(i, j) = k.sub(m(i, j), k.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <ExactField F>
Matrix<F> take_rows(const Matrix<F>& m, std::size_t n) {
  Matrix<F> out(m.field(), n, m.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace detail

template <ExactField F>
Echelon<F> row_echelon(Matrix<F> m) {
  auto pivots = detail::gauss_jordan(m, m.cols());
  return {detail::take_rows(m, pivots.size()), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return row_echelon(m).rank();
}

/// Rows span {x : A x = 0}.
template <ExactField F>
Matrix<F> kernel(const Matrix<F>& a) {
  const F& k = a.field();
  auto ech = row_echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<F> v(a.cols(), k.zero());
    v[f] = k.one();
    for (std::size_t r = 0; r < ech.rank(); ++r) v[ech.pivots[r]] = k.neg(ech.reduced(r, f));
    basis.push_back(std::move(v));
  }
  return Matrix<F>::from_rows(k, a.cols(), basis);
}

/// Rows span {y : y A = 0}.
template <ExactField F>
Matrix<F> left_kernel(const Matrix<F>& a) {
  return kernel(a.transpose());
}

/// One solution of A x = b, or nothing when the system is inconsistent.
template <ExactField F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b) {
  const F& k = a.field();
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs dimension mismatch");
  Matrix<F> aug(k, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = detail::gauss_jordan(aug, a.cols());
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (!k.is_zero(aug(i, a.cols()))) return std::nullopt;
  Vec<F> x(a.cols(), k.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

/// For an inconsistent A x = b, a row vector y with y A = 0 and y b != 0.
template <ExactField F>
std::optional<Vec<F>> infeasibility_certificate(const Matrix<F>& a, const Vec<F>& b) {
  const F& k = a.field();
  auto lk = left_kernel(a);
  for (std::size_t i = 0; i < lk.rows(); ++i) {
    auto y = lk.row(i);
    if (!k.is_zero(dot(k, y, b))) return y;
  }
  return std::nullopt;
}

template <ExactField F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  const F& k = a.field();
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  Matrix<F> aug(k, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = k.one();
  }
  auto pivots = detail::gauss_jordan(aug, n);
  if (pivots.size() != n) return std::nullopt;
  Matrix<F> inv(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// s with a s = id, for a surjective a.
template <ExactField F>
std::optional<Matrix<F>> right_inverse(const Matrix<F>& a) {
  const F& k = a.field();
  Matrix<F> s(k, a.cols(), a.rows());
  for (std::size_t j = 0; j < a.rows(); ++j) {
    auto col = solve(a, unit_vec(k, a.rows(), j));
    if (!col) return std::nullopt;
    s.set_column(j, *col);
  }
  return s;
}

/// A subspace of k^n, stored canonically as its reduced row echelon basis.
template <ExactField F>
class Subspace {
 public:
  Subspace() = default;
  Subspace(const F& k, std::size_t ambient) : field_(k), ambient_(ambient), basis_(k, 0, ambient) {}

  static Subspace span(const F& k, std::size_t ambient, const std::vector<Vec<F>>& vectors) {
    return from_matrix(Matrix<F>::from_rows(k, ambient, vectors));
  }
  static Subspace from_matrix(const Matrix<F>& rows) {
    Subspace s(rows.field(), rows.cols());
    auto ech = row_echelon(rows);
    s.basis_ = std::move(ech.reduced);
    s.pivots_ = std::move(ech.pivots);
    return s;
  }
  static Subspace whole(const F& k, std::size_t ambient) {
    return from_matrix(Matrix<F>::identity(k, ambient));
  }

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      auto c = v[pivots_[r]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!field_.is_zero(basis_(r, j))) v[j] = field_.sub(v[j], field_.mul(c, basis_(r, j)));
    }
    return v;
  }
  bool contains(const Vec<F>& v) const { return is_zero_vec(field_, reduce(v)); }
  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  Subspace operator+(const Subspace& other) const {
    std::vector<Vec<F>> rows;
    for (std::size_t i = 0; i < dim(); ++i) rows.push_back(basis_.row(i));
    for (std::size_t i = 0; i < other.dim(); ++i) rows.push_back(other.basis_.row(i));
    return span(field_, ambient_, rows);
  }

  // Echelon forms are canonical, so equality is entrywise.
  bool operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && pivots_ == other.pivots_ && basis_ == other.basis_;
  }

 private:
  F field_{};
  std::size_t ambient_ = 0;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

/// k^n / W with the complement of W's pivot coordinates as quotient basis.
template <ExactField F>
class QuotientSpace {
 public:
  QuotientSpace() = default;
  explicit QuotientSpace(Subspace<F> w) : sub_(std::move(w)) {
    std::vector<bool> is_pivot(sub_.ambient(), false);
    for (auto p : sub_.pivots()) is_pivot[p] = true;
    for (std::size_t c = 0; c < sub_.ambient(); ++c)
      if (!is_pivot[c]) free_.push_back(c);
  }

  const Subspace<F>& relations() const { return sub_; }
  std::size_t dim() const { return free_.size(); }
  std::size_t ambient() const { return sub_.ambient(); }
  const std::vector<std::size_t>& free_columns() const { return free_; }

  Vec<F> project(const Vec<F>& v) const {
    auto r = sub_.reduce(v);
    Vec<F> q;
    q.reserve(free_.size());
    for (auto c : free_) q.push_back(r[c]);
    return q;
  }
  Vec<F> lift(const Vec<F>& q) const {
    Vec<F> v(ambient(), sub_.field().zero());
    for (std::size_t i = 0; i < free_.size(); ++i) v[free_[i]] = q.at(i);
    return v;
  }

  Matrix<F> projection_matrix() const {
    const F& k = sub_.field();
    Matrix<F> p(k, dim(), ambient());
    for (std::size_t c = 0; c < ambient(); ++c) {
      auto col = project(unit_vec(k, ambient(), c));
      for (std::size_t i = 0; i < dim(); ++i) p(i, c) = col[i];
    }
    return p;
  }
  Matrix<F> lift_matrix() const {
    const F& k = sub_.field();
    Matrix<F> l(k, ambient(), dim());
    for (std::size_t i = 0; i < free_.size(); ++i) l(free_[i], i) = k.one();
    return l;
  }

  /// Matrix on the quotient induced by an endomorphism preserving W.
  Matrix<F> induced(const Matrix<F>& endo) const {
    return projection_matrix() * endo * lift_matrix();
  }

 private:
  Subspace<F> sub_;
  std::vector<std::size_t> free_;
};

/// Expresses vectors as combinations of a fixed (possibly dependent) list.
template <ExactField F>
class SpanSolver {
 public:
  SpanSolver() = default;
  SpanSolver(const F& k, std::size_t ambient, const std::vector<Vec<F>>& generators)
      : field_(k), ambient_(ambient), count_(generators.size()) {
    Matrix<F> aug(k, generators.size(), ambient + generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].size() != ambient) throw std::invalid_argument("SpanSolver: size mismatch");
      for (std::size_t j = 0; j < ambient; ++j) aug(i, j) = generators[i][j];
      aug(i, ambient + i) = k.one();
    }
    pivots_ = detail::gauss_jordan(aug, ambient);
    work_ = std::move(aug);
  }

  std::size_t rank() const { return pivots_.size(); }

  std::optional<Vec<F>> coordinates(Vec<F> v) const {
    if (v.size() != ambient_) throw std::invalid_argument("SpanSolver: size mismatch");
    Vec<F> coords(count_, field_.zero());
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      auto c = v[pivots_[r]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!field_.is_zero(work_(r, j))) v[j] = field_.sub(v[j], field_.mul(c, work_(r, j)));
      for (std::size_t j = 0; j < count_; ++j)
        if (!field_.is_zero(work_(r, ambient_ + j)))
          coords[j] = field_.add(coords[j], field_.mul(c, work_(r, ambient_ + j)));
    }
    if (!is_zero_vec(field_, v)) return std::nullopt;
    return coords;
  }

 private:
  F field_{};
  std::size_t ambient_ = 0;
  std::size_t count_ = 0;
  std::vector<std::size_t> pivots_;
  Matrix<F> work_;
};

template <ExactField F>
std::string to_string(const Matrix<F>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m.field().to_string(m(i, j));
  }
  return s + "]";
}

}  // namespace protower
