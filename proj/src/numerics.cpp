#include "shorlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace shorlab {

CMatrix tensor_product(const CMatrix& a, const CMatrix& b, std::size_t max_dim) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dim || cols > max_dim) {
    throw Error(ErrorCode::kDimensionLimit,
                std::to_string(rows) + "x" + std::to_string(cols) + " exceeds " +
                    std::to_string(max_dim));
  }
  CMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

EigenSystem hermitian_eigensystem(const CMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::kNotHermitian,
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " input");
  }
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotHermitian, "eigensolver did not converge");
  }
  const RVector& ascending = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ascending.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index lhs, Eigen::Index rhs) {
    return ascending(lhs) > ascending(rhs);
  });

  EigenSystem out;
  out.values.resize(ascending.size());
  out.vectors.resize(h.rows(), h.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    out.values(col) = ascending(order[i]);
    out.vectors.col(col) = solver.eigenvectors().col(order[i]);
  }
  return out;
}

CMatrix psd_sqrt(const CMatrix& rho, double clamp) {
  const EigenSystem es = hermitian_eigensystem(rho);
  // Eigenvalues at roundoff level are zero; their square roots would not be.
  const double noise = std::numeric_limits<double>::epsilon() * static_cast<double>(rho.rows()) *
                       std::max(1.0, es.values.cwiseAbs().maxCoeff());
  RVector roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v < -clamp) {
      throw Error(ErrorCode::kNotPsd, "eigenvalue " + std::to_string(v));
    }
    roots(i) = v > noise ? std::sqrt(v) : 0.0;
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || b.cols() != a.rows()) {
    throw Error(ErrorCode::kShape, "tr(AB) needs A: m x n and B: n x m");
  }
  return (a.array() * b.transpose().array()).sum();
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorCode::kShape, "unitary must be square");
  }
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).norm();
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShape, "frobenius distance needs equal shapes");
  }
  return (a - b).norm();
}

CMatrix projector(const CVector& psi) { return psi * psi.adjoint(); }

void require_density_matrix(const CMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw Error(ErrorCode::kNotAState, "density matrix must be square");
  }
  if (!is_hermitian(rho, tol)) {
    throw Error(ErrorCode::kNotAState, "not hermitian");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    throw Error(ErrorCode::kNotAState, "trace " + std::to_string(tr.real()));
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (rho + rho.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw Error(ErrorCode::kNotAState,
                "negative eigenvalue " + std::to_string(solver.eigenvalues().minCoeff()));
  }
}

}  // namespace shorlab
