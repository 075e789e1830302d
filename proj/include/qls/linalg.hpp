#pragma once

// Dense complex linear algebra shared by every other header: Hermitian and
// density-matrix value types, spectral decompositions, functional calculus,
// Schatten and 1/d-weighted norms, the matrix exponential, and the
// column-stacking vectorization used for all superoperators.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "qls/error.hpp"

namespace qls {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kDensityTol = 1e-10;
inline constexpr double kLogClamp = 1e-14;
inline constexpr double kExpmCap = 1e4;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

inline double hermiticity_defect(const ComplexMatrix& a) { return max_abs(a - a.adjoint()); }

inline void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    fail(ErrorCode::DimMismatch, std::string(what) + ": expected a non-empty square matrix, got " +
                                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

/// A d x d matrix equal to its adjoint up to kHermitianTol (relative to its
/// largest entry). The stored matrix is the exact Hermitian part.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m) {
    require_square(m, "HermitianMatrix");
    const double scale = std::max(1.0, max_abs(m));
    if (hermiticity_defect(m) > kHermitianTol * scale) {
      fail(ErrorCode::NonHermitian, "defect " + std::to_string(hermiticity_defect(m)));
    }
    m_ = 0.5 * (m + m.adjoint());
  }

  /// Projects onto the Hermitian part without validation.
  static HermitianMatrix hermitian_part(const ComplexMatrix& m) {
    require_square(m, "hermitian_part");
    HermitianMatrix h;
    h.m_ = 0.5 * (m + m.adjoint());
    return h;
  }

  static HermitianMatrix identity(Eigen::Index d) { return hermitian_part(ComplexMatrix::Identity(d, d)); }

  static HermitianMatrix diagonal(const RealVector& values) {
    return hermitian_part(values.cast<Complex>().asDiagonal().toDenseMatrix());
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

 private:
  HermitianMatrix() = default;
  ComplexMatrix m_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // descending
  ComplexMatrix eigenvectors;  // columns, orthonormal

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }
  /// Same eigenvectors, eigenvalues replaced by `values`.
  ComplexMatrix reconstruct_with(const RealVector& values) const {
    return eigenvectors * values.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }
};

inline SpectralDecomposition eig_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) fail(ErrorCode::DomainError, "eigensolver did not converge");
  const Eigen::Index d = a.dim();
  SpectralDecomposition out{RealVector(d), ComplexMatrix(d, d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

/// f(A) through the spectral decomposition. Throws DomainError when f yields
/// a non-finite value at some eigenvalue.
template <class F>
HermitianMatrix matrix_function(const HermitianMatrix& a, F&& f) {
  SpectralDecomposition s = eig_hermitian(a);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double v = f(s.eigenvalues(i));
    if (!std::isfinite(v)) {
      fail(ErrorCode::DomainError, "function undefined at eigenvalue " + std::to_string(s.eigenvalues(i)));
    }
    s.eigenvalues(i) = v;
  }
  return HermitianMatrix::hermitian_part(s.reconstruct());
}

/// Natural log with the 0 log 0 = 0 convention: eigenvalues below kLogClamp map to 0.
inline double log_clamped(double x) { return x < kLogClamp ? 0.0 : std::log(x); }

/// x log x with 0 log 0 = 0.
inline double xlogx(double x) { return x < kLogClamp ? 0.0 : x * std::log(x); }

/// A matrix whose eigenvalues are all >= -kDensityTol and whose trace is 1.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianMatrix& h) : h_(h) {
    if (std::abs(h.trace() - 1.0) > kDensityTol) {
      fail(ErrorCode::NotDensity, "trace " + std::to_string(h.trace()));
    }
    const double lo = eig_hermitian(h).eigenvalues.minCoeff();
    if (lo < -kDensityTol) fail(ErrorCode::NotDensity, "negative eigenvalue " + std::to_string(lo));
  }
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  static DensityMatrix maximally_mixed(Eigen::Index d) {
    return DensityMatrix(ComplexMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
  }
  static DensityMatrix pure(const ComplexVector& psi) {
    const ComplexVector v = psi / psi.norm();
    return DensityMatrix(ComplexMatrix(v * v.adjoint()));
  }
  /// Normalizes a positive semidefinite matrix to unit trace.
  static DensityMatrix from_positive(const ComplexMatrix& p) {
    return DensityMatrix(ComplexMatrix(p / p.trace().real()));
  }

  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
  Eigen::Index dim() const noexcept { return h_.dim(); }

 private:
  HermitianMatrix h_;
};

inline RealVector singular_values(const ComplexMatrix& a) {
  return Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
}

inline double schatten_norm(const ComplexMatrix& a, double p) {
  if (!(p >= 1.0)) fail(ErrorCode::InvalidP, "p = " + std::to_string(p));
  const RealVector s = singular_values(a);
  if (std::isinf(p)) return s.size() ? s.maxCoeff() : 0.0;
  if (p == 1.0) return s.sum();
  if (p == 2.0) return std::sqrt(s.squaredNorm());
  return std::pow(s.array().pow(p).sum(), 1.0 / p);
}

/// d^{-1/p} (tr |A|^p)^{1/p}.
inline double weighted_lp_norm(const ComplexMatrix& a, double p) {
  require_square(a, "weighted_lp_norm");
  const double n = schatten_norm(a, p);
  if (std::isinf(p)) return n;
  return std::pow(static_cast<double>(a.rows()), -1.0 / p) * n;
}

/// Scaling-and-squaring Padé exponential. Rejects inputs whose induced
/// 1-norm exceeds `cap`.
inline ComplexMatrix expm(const ComplexMatrix& a, double cap = kExpmCap) {
  require_square(a, "expm");
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1) || norm1 > cap) fail(ErrorCode::Overflow, "norm " + std::to_string(norm1));
  return a.exp();
}

// Column-stacking vectorization: vec(X)[i + j d] = X(i, j), so X -> A X B has
// superoperator kron(B^T, A).

inline ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
  if (v.size() != d * d) fail(ErrorCode::DimMismatch, "unvec length");
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline ComplexMatrix sandwich_superop(const ComplexMatrix& left, const ComplexMatrix& right) {
  return kron(right.transpose(), left);
}

inline ComplexMatrix apply_superop(const ComplexMatrix& superop, const ComplexMatrix& x) {
  return unvec(superop * vec(x), x.rows());
}

/// tr(A^dagger B).
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace();
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

}  // namespace qls
