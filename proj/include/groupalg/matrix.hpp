#ifndef GROUPALG_MATRIX_HPP_
#define GROUPALG_MATRIX_HPP_

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace groupalg {

template <class S>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<S> data;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}
  S& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  S const& operator()(int i, int j) const {
    return data[static_cast<size_t>(i) * cols + j];
  }
  bool operator==(Matrix const&) const = default;

  Matrix operator*(Matrix const& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        S a = (*this)(i, k);
        if (a == S{}) continue;
        for (int j = 0; j < o.cols; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }
  Matrix operator+(Matrix const& o) const {
    if (rows != o.rows || cols != o.cols)
      throw std::invalid_argument("matrix shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < data.size(); ++i) out.data[i] += o.data[i];
    return out;
  }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S{1};
    return m;
  }
};

// Max absolute column sum.
template <class S>
typename scalar_traits<S>::real matrix_norm_1(Matrix<S> const& m) {
  using R = typename scalar_traits<S>::real;
  R best{};
  for (int j = 0; j < m.cols; ++j) {
    R s{};
    for (int i = 0; i < m.rows; ++i) s += scalar_traits<S>::abs(m(i, j));
    if (s > best) best = s;
  }
  return best;
}

// Max absolute row sum.
template <class S>
typename scalar_traits<S>::real matrix_norm_inf(Matrix<S> const& m) {
  using R = typename scalar_traits<S>::real;
  R best{};
  for (int i = 0; i < m.rows; ++i) {
    R s{};
    for (int j = 0; j < m.cols; ++j) s += scalar_traits<S>::abs(m(i, j));
    if (s > best) best = s;
  }
  return best;
}

inline Eigen::MatrixXcd to_eigen(Matrix<Cx> const& m) {
  Eigen::MatrixXcd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

inline Eigen::MatrixXcd to_eigen(Matrix<double> const& m) {
  Eigen::MatrixXcd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = Cx(m(i, j), 0.0);
  return e;
}

// Spectral norm (largest singular value).
inline double matrix_norm_2(Eigen::MatrixXcd const& e) {
  if (e.rows() == 0 || e.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
  return svd.singularValues()(0);
}

template <class S>
double matrix_norm_2(Matrix<S> const& m) {
  return matrix_norm_2(to_eigen(m));
}

// Numerical rank with a relative singular-value cutoff.
inline int matrix_rank(Eigen::MatrixXcd const& e, double rel_tol = 1e-9) {
  if (e.rows() == 0 || e.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
  auto const& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  double cut = sv(0) * rel_tol;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

}  // namespace groupalg

#endif  // GROUPALG_MATRIX_HPP_
