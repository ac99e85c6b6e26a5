#pragma once

// Integer matrices, Smith normal form, and linear systems over Q/Z.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/cyclotomic.hpp"
#include "cartan/root_of_unity.hpp"

namespace cartan {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> values) : rows_(rows), cols_(cols), a_(values) {
    if (a_.size() != rows * cols) throw std::invalid_argument("Matrix: wrong number of entries");
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
      }
    return r;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << "; ";
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

// Elementary operations applied to a matrix while diagonalizing it; observers mirror them elsewhere.
template <class T>
struct NoOps {
  void swap(std::size_t, std::size_t) {}
  void add(std::size_t, std::size_t, const T&) {}  // line dst += k * line src
  void negate(std::size_t) {}
};

// Diagonalizes a in place to Smith form d_1 | d_2 | ... with d_i > 0; returns the rank.
template <class T, class RowOps, class ColOps>
std::size_t smith_diagonalize(Matrix<T>& a, RowOps& rows, ColOps& cols) {
  const std::size_t nr = a.rows(), nc = a.cols();
  auto row_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < nc; ++c) std::swap(a(i, c), a(j, c));
    rows.swap(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < nr; ++r) std::swap(a(r, i), a(r, j));
    cols.swap(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const T& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < nc; ++c) a(dst, c) += k * a(src, c);
    rows.add(dst, src, k);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const T& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < nr; ++r) a(r, dst) += k * a(r, src);
    cols.add(dst, src, k);
  };

  std::size_t t = 0;
  for (; t < std::min(nr, nc); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto move_min_to_pivot = [&]() {
      std::size_t bi = nr, bj = nc;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j)
          if (a(i, j) != 0 && (bi == nr || abs_value(a(i, j)) < abs_value(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == nr) return false;
      row_swap(t, bi);
      col_swap(t, bj);
      return true;
    };
    if (!move_min_to_pivot()) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i)
        if (a(i, t) != 0) {
          row_add(i, t, T(-(a(i, t) / a(t, t))));
          if (a(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < nc; ++j)
        if (a(t, j) != 0) {
          col_add(j, t, T(-(a(t, j) / a(t, t))));
          if (a(t, j) != 0) clean = false;
        }
      if (!clean) {
        // A nonzero remainder is smaller than the pivot; bring the smallest one in.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < nr; ++i)
          if (a(i, t) != 0 && abs_value(a(i, t)) < abs_value(a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < nc; ++j)
          if (a(t, j) != 0 && abs_value(a(t, j)) < abs_value(a(bi, bj))) bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      std::size_t bad = nr;
      for (std::size_t i = t + 1; i < nr && bad == nr; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == nr) break;
      row_add(t, bad, T(1));
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < nc; ++c) a(t, c) = -a(t, c);
      rows.negate(t);
    }
  }
  return t;
}

template <class T>
struct SmithForm {
  Matrix<T> n, p, q;  // p * m * q == n
  std::size_t rank = 0;
  bool rank_deficient = false;
};

template <class T>
struct TrackRows {
  Matrix<T>* p;
  void swap(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < p->cols(); ++c) std::swap((*p)(i, c), (*p)(j, c));
  }
  void add(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t c = 0; c < p->cols(); ++c) (*p)(dst, c) += k * (*p)(src, c);
  }
  void negate(std::size_t i) {
    for (std::size_t c = 0; c < p->cols(); ++c) (*p)(i, c) = -(*p)(i, c);
  }
};

template <class T>
struct TrackCols {
  Matrix<T>* q;
  void swap(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < q->rows(); ++r) std::swap((*q)(r, i), (*q)(r, j));
  }
  void add(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t r = 0; r < q->rows(); ++r) (*q)(r, dst) += k * (*q)(r, src);
  }
  void negate(std::size_t i) {
    for (std::size_t r = 0; r < q->rows(); ++r) (*q)(r, i) = -(*q)(r, i);
  }
};

template <class T>
SmithForm<T> smith_normal_form(const Matrix<T>& m) {
  SmithForm<T> s;
  s.n = m;
  s.p = Matrix<T>::identity(m.rows());
  s.q = Matrix<T>::identity(m.cols());
  TrackRows<T> rows{&s.p};
  TrackCols<T> cols{&s.q};
  s.rank = smith_diagonalize(s.n, rows, cols);
  s.rank_deficient = s.rank < std::min(m.rows(), m.cols());
  return s;
}

// Solves A x = r over Q/Z, with r given as roots of unity (x as well). Row operations act on r,
// column operations are recorded in Q, and the diagonal system d_i y_i = r'_i is solved by root extraction.
inline std::optional<std::vector<RootOfUnity>> solve_mod_one(const Matrix<BigInt>& a, std::vector<RootOfUnity> r) {
  if (r.size() != a.rows()) throw std::invalid_argument("solve_mod_one: right-hand side has the wrong length");
  struct RhsRows {
    std::vector<RootOfUnity>* r;
    void swap(std::size_t i, std::size_t j) { std::swap((*r)[i], (*r)[j]); }
    void add(std::size_t dst, std::size_t src, const BigInt& k) {
      const RootOfUnity& z = (*r)[src];
      BigInt e = k % z.modulus();
      (*r)[dst] *= z.pow(static_cast<std::int64_t>(e));
    }
    void negate(std::size_t i) { (*r)[i] = (*r)[i].conj(); }
  } rows{&r};
  Matrix<BigInt> d = a;
  Matrix<BigInt> q = Matrix<BigInt>::identity(a.cols());
  TrackCols<BigInt> cols{&q};
  const std::size_t rank = smith_diagonalize(d, rows, cols);
  for (std::size_t i = rank; i < r.size(); ++i)
    if (!r[i].is_one()) return std::nullopt;
  std::vector<RootOfUnity> y(a.cols());
  for (std::size_t i = 0; i < rank; ++i) y[i] = r[i].root(static_cast<std::int64_t>(d(i, i)));
  std::vector<RootOfUnity> x(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      if (y[i].is_one()) continue;
      BigInt e = q(j, i) % y[i].modulus();
      x[j] *= y[i].pow(static_cast<std::int64_t>(e));
    }
  return x;
}

}  // namespace cartan
