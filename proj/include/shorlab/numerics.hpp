#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "shorlab/error.hpp"

namespace shorlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClamp = 1e-10;
inline constexpr double kReconTol = 1e-9;
inline constexpr std::size_t kDefaultMaxDim = 4096;

/// Eigenvalues sorted descending; ties keep the solver's original order, so
/// repeated runs produce identical bases. Column i of `vectors` belongs to
/// `values[i]`.
///
/// Degenerate eigenspaces are left as returned by the solver. Every
/// downstream spectral sum weights a pair by (lambda_i - lambda_j)^2, which
/// vanishes inside a degenerate block, so the arbitrary basis choice there
/// has no effect.
struct EigenSystem {
  RVector values;
  CMatrix vectors;
};

/// Kronecker product a (x) b. Throws kDimensionLimit if either output side
/// would exceed `max_dim`.
CMatrix tensor_product(const CMatrix& a, const CMatrix& b,
                       std::size_t max_dim = kDefaultMaxDim);

EigenSystem hermitian_eigensystem(const CMatrix& m, double tol = kHermitianTol);

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-clamp, 0) are treated as 0; anything more negative throws kNotPsd.
CMatrix psd_sqrt(const CMatrix& rho, double clamp = kPsdClamp);

/// tr(a * b) computed entrywise, without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// ||U U^dagger - I||_F; zero for an exact unitary.
double unitarity_defect(const CMatrix& u);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

CMatrix projector(const CVector& psi);

/// Checks Hermiticity, unit trace and eigenvalues >= -tol. Throws kNotAState.
void require_density_matrix(const CMatrix& rho, double tol = kHermitianTol);

}  // namespace shorlab
