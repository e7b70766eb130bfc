#ifndef GROUPALG_ALGEBRA_ANALYSIS_HPP_
#define GROUPALG_ALGEBRA_ANALYSIS_HPP_

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convolution.hpp"
#include "groupoid.hpp"
#include "matrix.hpp"

namespace groupalg {

// Finite-dimensional associative algebra over C given by structure
// constants: e_i e_j = sum_k sc[i][j][k] e_k.
struct FiniteDimAlgebra {
  int dim = 0;
  std::vector<Cx> sc;  // flat dim^3, index ((i*dim)+j)*dim+k
  std::optional<Eigen::VectorXcd> unit;
  std::vector<std::string> labels;

  Cx c(int i, int j, int k) const {
    return sc[(static_cast<size_t>(i) * dim + j) * dim + k];
  }
  Cx& c(int i, int j, int k) {
    return sc[(static_cast<size_t>(i) * dim + j) * dim + k];
  }

  Eigen::VectorXcd multiply(Eigen::VectorXcd const& x,
                            Eigen::VectorXcd const& y) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < dim; ++i) {
      if (x(i) == Cx{0}) continue;
      for (int j = 0; j < dim; ++j) {
        if (y(j) == Cx{0}) continue;
        for (int k = 0; k < dim; ++k) out(k) += x(i) * y(j) * c(i, j, k);
      }
    }
    return out;
  }

  // Matrix of left multiplication by x.
  Eigen::MatrixXcd left_mult(Eigen::VectorXcd const& x) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      if (x(i) == Cx{0}) continue;
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) m(k, j) += x(i) * c(i, j, k);
    }
    return m;
  }

  Eigen::MatrixXcd right_mult(Eigen::VectorXcd const& x) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
      if (x(j) == Cx{0}) continue;
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) m(k, i) += x(j) * c(i, j, k);
    }
    return m;
  }

  Eigen::VectorXcd basis_vec(int i) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(i) = Cx{1};
    return v;
  }
};

inline ValidationReport validate_algebra(FiniteDimAlgebra const& a) {
  ValidationReport rep;
  for (int i = 0; i < a.dim && rep.issues.size() < 32; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int l = 0; l < a.dim; ++l) {
        auto lhs = a.multiply(a.multiply(a.basis_vec(i), a.basis_vec(j)),
                              a.basis_vec(l));
        auto rhs = a.multiply(a.basis_vec(i),
                              a.multiply(a.basis_vec(j), a.basis_vec(l)));
        if ((lhs - rhs).norm() > 1e-9)
          rep.add("structure constants not associative", {i, j, l});
      }
  if (a.unit) {
    for (int i = 0; i < a.dim; ++i) {
      auto v = a.basis_vec(i);
      if ((a.multiply(*a.unit, v) - v).norm() > 1e-9 ||
          (a.multiply(v, *a.unit) - v).norm() > 1e-9)
        rep.add("unit axiom fails", {i});
    }
  }
  return rep;
}

// The twisted convolution algebra on the arrow point masses.
template <class S>
FiniteDimAlgebra from_groupoid(FiniteGroupoid const& g,
                               TwoCocycle<S> const& sigma) {
  FiniteDimAlgebra a;
  a.dim = g.n;
  a.sc.assign(static_cast<size_t>(g.n) * g.n * g.n, Cx{0});
  for (Arrow x = 0; x < g.n; ++x)
    for (Arrow y = 0; y < g.n; ++y) {
      Arrow xy = g.compose(x, y);
      if (xy < 0) continue;
      S v = sigma.at(x, y);
      if constexpr (scalar_traits<S>::exact)
        a.c(x, y, xy) = Cx(to_double(v), 0.0);
      else if constexpr (std::is_same_v<S, double>)
        a.c(x, y, xy) = Cx(v, 0.0);
      else
        a.c(x, y, xy) = v;
    }
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(g.n);
  for (Arrow x : g.units()) u(x) = Cx{1};
  a.unit = u;
  a.labels.resize(g.n);
  for (Arrow x = 0; x < g.n; ++x) a.labels[x] = g.label(x);
  return a;
}

// A subspace is stored as a matrix whose columns span it.
using Subspace = Eigen::MatrixXcd;

inline int subspace_dim(Subspace const& s) { return matrix_rank(s); }

inline bool subspace_contains(Subspace const& s, Eigen::VectorXcd const& v,
                              double tol = 1e-8) {
  if (v.norm() <= tol) return true;
  if (s.cols() == 0) return false;
  // residual of least-squares projection
  Eigen::VectorXcd sol = s.colPivHouseholderQr().solve(v);
  return (s * sol - v).norm() <= tol * std::max(1.0, v.norm());
}

inline bool subspace_subset(Subspace const& a, Subspace const& b,
                            double tol = 1e-8) {
  for (int j = 0; j < a.cols(); ++j)
    if (!subspace_contains(b, a.col(j), tol)) return false;
  return true;
}

inline Subspace orthonormal_basis(Subspace const& s, double tol = 1e-9) {
  if (s.cols() == 0) return s;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(s);
  int r = matrix_rank(s, tol);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(s.rows(), r);
  return q;
}

// Smallest subspace containing v closed under all left and right basis
// multiplications; rank-stabilizing fixpoint.
inline Subspace generated_ideal(FiniteDimAlgebra const& a,
                                Eigen::VectorXcd const& v) {
  if (v.norm() <= 1e-12) return Subspace(a.dim, 0);
  std::vector<Eigen::MatrixXcd> gens;
  for (int i = 0; i < a.dim; ++i) {
    gens.push_back(a.left_mult(a.basis_vec(i)));
    gens.push_back(a.right_mult(a.basis_vec(i)));
  }
  Subspace basis = orthonormal_basis(v);
  int r = basis.cols();
  while (true) {
    Eigen::MatrixXcd bigger(a.dim, basis.cols() * (gens.size() + 1));
    bigger.leftCols(basis.cols()) = basis;
    int at = static_cast<int>(basis.cols());
    for (auto const& m : gens) {
      bigger.middleCols(at, basis.cols()) = m * basis;
      at += static_cast<int>(basis.cols());
    }
    Subspace next = orthonormal_basis(bigger);
    if (next.cols() == r) return next;
    r = static_cast<int>(next.cols());
    basis = next;
  }
}

inline bool is_ideal_subspace(FiniteDimAlgebra const& a, Subspace const& w,
                              double tol = 1e-7) {
  for (int i = 0; i < a.dim; ++i) {
    Eigen::MatrixXcd l = a.left_mult(a.basis_vec(i)) * w;
    Eigen::MatrixXcd r = a.right_mult(a.basis_vec(i)) * w;
    for (int j = 0; j < w.cols(); ++j) {
      if (!subspace_contains(w, l.col(j), tol)) return false;
      if (!subspace_contains(w, r.col(j), tol)) return false;
    }
  }
  return true;
}

// Jacobson radical over C via the trace form: rad = {x : tr(L_x L_y) = 0
// for all y} for a finite-dimensional associative algebra in char 0.
inline Subspace radical(FiniteDimAlgebra const& a) {
  Eigen::MatrixXcd form(a.dim, a.dim);
  std::vector<Eigen::MatrixXcd> lm;
  for (int i = 0; i < a.dim; ++i) lm.push_back(a.left_mult(a.basis_vec(i)));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) form(i, j) = (lm[i] * lm[j]).trace();
  // nullspace of the form
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(form, Eigen::ComputeFullV);
  auto const& sv = svd.singularValues();
  double cut = (sv.size() && sv(0) > 0) ? sv(0) * 1e-9 : 0.0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(a.dim - r);
}

// Center: elements commuting with every basis element.
inline Subspace center(FiniteDimAlgebra const& a) {
  Eigen::MatrixXcd sys(a.dim * a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i) {
    Eigen::MatrixXcd d = a.left_mult(a.basis_vec(i)) -
                         a.right_mult(a.basis_vec(i));
    sys.middleRows(static_cast<Eigen::Index>(i) * a.dim, a.dim) = d;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  auto const& sv = svd.singularValues();
  double cut = (sv.size() && sv(0) > 0) ? sv(0) * 1e-9 : 0.0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(a.dim - r);
}

struct SimplicityResult {
  bool simple = false;
  int burnside_rank = 0;  // dim of span{L_i R_j} inside End(a)
  int full_rank = 0;      // (dim a)^2
  Subspace ideal_witness; // proper non-zero ideal when not simple
  std::string reason;
};

// Burnside density: a unital algebra over C is simple iff its
// multiplication operators span all of End(a).
inline SimplicityResult is_simple_burnside(FiniteDimAlgebra const& a) {
  if (!a.unit) throw std::invalid_argument("Burnside test needs a unit");
  SimplicityResult res;
  res.full_rank = a.dim * a.dim;
  std::vector<Eigen::MatrixXcd> lm, rm;
  for (int i = 0; i < a.dim; ++i) {
    lm.push_back(a.left_mult(a.basis_vec(i)));
    rm.push_back(a.right_mult(a.basis_vec(i)));
  }
  // incremental orthonormalization of vec(L_i R_j) with early exit
  Eigen::MatrixXcd basis(a.dim * a.dim, res.full_rank);
  int rank = 0;
  for (int i = 0; i < a.dim && rank < res.full_rank; ++i)
    for (int j = 0; j < a.dim && rank < res.full_rank; ++j) {
      Eigen::MatrixXcd prod = lm[i] * rm[j];
      Eigen::VectorXcd v =
          Eigen::Map<Eigen::VectorXcd>(prod.data(), a.dim * a.dim);
      double scale = v.norm();
      if (scale <= 1e-12) continue;
      for (int it = 0; it < 2; ++it)
        v -= basis.leftCols(rank) * (basis.leftCols(rank).adjoint() * v);
      if (v.norm() > 1e-9 * scale) {
        basis.col(rank) = v / v.norm();
        ++rank;
      }
    }
  res.burnside_rank = rank;
  res.simple = (rank == res.full_rank);
  if (res.simple) {
    res.reason = "multiplication operators span End(a)";
    return res;
  }
  // ideal witness: the radical, or an eigenspace ideal of a non-scalar
  // central element in the semisimple case
  Subspace rad = radical(a);
  if (rad.cols() > 0 && is_ideal_subspace(a, rad)) {
    res.ideal_witness = rad;
    res.reason = "non-zero Jacobson radical";
    return res;
  }
  Subspace z = center(a);
  if (z.cols() >= 2) {
    // pick a central element and split along one of its eigenspaces
    for (int j = 0; j < z.cols(); ++j) {
      Eigen::VectorXcd zc = z.col(j);
      Eigen::MatrixXcd l = a.left_mult(zc);
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(l);
      auto const& ev = es.eigenvalues();
      for (int k = 0; k < ev.size(); ++k) {
        // eigenspace of L_z for a central z is a two-sided ideal
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
            l - ev(k) * Eigen::MatrixXcd::Identity(a.dim, a.dim),
            Eigen::ComputeFullV);
        auto const& sv = svd.singularValues();
        double cut = (sv.size() && sv(0) > 0) ? sv(0) * 1e-8 : 0.0;
        int r = 0;
        for (int i = 0; i < sv.size(); ++i)
          if (sv(i) > cut) ++r;
        if (r == a.dim) continue;
        Subspace eig = svd.matrixV().rightCols(a.dim - r);
        if (eig.cols() > 0 && eig.cols() < a.dim &&
            is_ideal_subspace(a, eig)) {
          res.ideal_witness = eig;
          res.reason = "central eigenspace ideal";
          return res;
        }
      }
    }
  }
  res.reason = "rank deficit without extracted witness";
  return res;
}

// Commutant of a subspace: all x with xv = vx for v spanning s.
inline Subspace commutant(FiniteDimAlgebra const& a, Subspace const& s) {
  if (s.cols() == 0) {
    return Eigen::MatrixXcd::Identity(a.dim, a.dim);
  }
  Eigen::MatrixXcd sys(static_cast<Eigen::Index>(s.cols()) * a.dim, a.dim);
  for (int j = 0; j < s.cols(); ++j) {
    Eigen::VectorXcd v = s.col(j);
    sys.middleRows(static_cast<Eigen::Index>(j) * a.dim, a.dim) =
        a.left_mult(v) - a.right_mult(v);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  auto const& sv = svd.singularValues();
  double cut = (sv.size() && sv(0) > 0) ? sv(0) * 1e-9 : 0.0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(a.dim - r);
}

inline bool is_abelian_subspace(FiniteDimAlgebra const& a, Subspace const& s,
                                double tol = 1e-8) {
  for (int i = 0; i < s.cols(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if ((a.multiply(s.col(i), s.col(j)) - a.multiply(s.col(j), s.col(i)))
              .norm() > tol)
        return false;
  return true;
}

inline bool is_maximal_abelian(FiniteDimAlgebra const& a, Subspace const& s) {
  if (!is_abelian_subspace(a, s))
    throw std::invalid_argument("subspace is not abelian");
  Subspace comm = commutant(a, s);
  return subspace_dim(comm) == subspace_dim(s) && subspace_subset(s, comm);
}

// The span of the unit point masses of a groupoid algebra.
inline Subspace diagonal_subspace(FiniteGroupoid const& g) {
  ArrowSet un = g.units();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(g.n, un.size());
  for (size_t i = 0; i < un.size(); ++i) s(un[i], i) = Cx{1};
  return s;
}

struct InfiniteIdempotentResult {
  bool value = false;  // always false in finite dimensions
  double idem_residual = 0.0;
  int rank_eA = 0;  // dim of the right ideal eA
  std::string argument;
};

inline InfiniteIdempotentResult is_infinite_idempotent(
    FiniteDimAlgebra const& a, Eigen::VectorXcd const& e) {
  InfiniteIdempotentResult res;
  res.idem_residual = (a.multiply(e, e) - e).norm();
  if (res.idem_residual > 1e-10)
    throw std::invalid_argument("element is not idempotent");
  res.rank_eA = matrix_rank(a.left_mult(e));
  res.value = false;
  res.argument =
      "e ~ f forces dim(eA) = dim(fA) = " + std::to_string(res.rank_eA) +
      ", while f < e forces fA to be a proper subspace of eA; both cannot "
      "hold in finite dimensions";
  return res;
}

// Re-derives the certificate fields from the input.
inline bool check_infinite_idempotent_certificate(
    FiniteDimAlgebra const& a, Eigen::VectorXcd const& e,
    InfiniteIdempotentResult const& cert) {
  if (cert.value) return false;  // impossible claim
  double resid = (a.multiply(e, e) - e).norm();
  if (std::abs(resid - cert.idem_residual) > 1e-8) return false;
  if (matrix_rank(a.left_mult(e)) != cert.rank_eA) return false;
  return true;
}

}  // namespace groupalg

#endif  // GROUPALG_ALGEBRA_ANALYSIS_HPP_
