#pragma once

// Scalar functionals: entropies, relative entropy, the 2-entropy, Dirichlet
// forms, variance and the entropy production rate. Natural log throughout.

#include <cstdint>
#include <string>

#include "qls/channels.hpp"
#include "qls/linalg.hpp"

namespace qls {

inline constexpr double kSupportEigTol = 1e-12;
inline constexpr double kSupportWeightTol = 1e-10;
inline constexpr double kFullRankTol = 1e-10;
inline constexpr double kPositiveTol = 1e-12;

struct FunctionalValue {
  double value = 0.0;
  std::string functional;
  std::uint64_t input_hash = 0;

  bool infinite() const { return std::isinf(value); }
};

/// FNV-1a over the raw entries; only used to tag reported values.
inline std::uint64_t matrix_hash(const ComplexMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
  const auto n = static_cast<std::size_t>(m.size()) * sizeof(Complex);
  for (std::size_t i = 0; i < n; ++i) h = (h ^ bytes[i]) * 1099511628211ULL;
  return h;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  const auto sd = eig_hermitian(rho.hermitian());
  double s = 0.0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) s -= xlogx(sd.eigenvalues(i));
  return std::max(0.0, s);
}

/// D(rho||sigma), +inf when rho has weight outside the support of sigma.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) fail(ErrorCode::DimMismatch, "relative_entropy");
  const auto ss = eig_hermitian(sigma.hermitian());
  const ComplexMatrix& r = rho.matrix();
  double outside = 0.0, cross = 0.0;
  for (Eigen::Index k = 0; k < ss.eigenvalues.size(); ++k) {
    const auto v = ss.eigenvectors.col(k);
    const double w = (v.adjoint() * r * v)(0, 0).real();
    if (ss.eigenvalues(k) < kSupportEigTol) {
      outside += w;
    } else {
      cross += w * std::log(ss.eigenvalues(k));
    }
  }
  if (outside > kSupportWeightTol) return kInf;
  return std::max(0.0, -von_neumann_entropy(rho) - cross);
}

/// D(rho||1/d) = log d - S(rho).
inline double relative_entropy_to_mixed(const DensityMatrix& rho) {
  return std::max(0.0, std::log(static_cast<double>(rho.dim())) - von_neumann_entropy(rho));
}

/// D(rho||sigma) - ||rho - sigma||_1^2 / 2.
inline double pinsker_gap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double d = relative_entropy(rho, sigma);
  if (std::isinf(d)) fail(ErrorCode::InfiniteDivergence, "pinsker_gap needs supp(rho) in supp(sigma)");
  const double t = schatten_norm(rho.matrix() - sigma.matrix(), 1.0);
  return d - 0.5 * t * t;
}

/// E^2_L(X) = -(1/d) tr[L(X) X].
inline double dirichlet_form_2(const Liouvillian& l, const HermitianMatrix& x) {
  if (x.dim() != l.dim()) fail(ErrorCode::DimMismatch, "dirichlet_form_2");
  return -(l.apply(x.matrix()) * x.matrix()).trace().real() / static_cast<double>(l.dim());
}

/// Ent_2 from the eigenvalues of X.
inline double entropy_2_of_spectrum(const RealVector& x) {
  const double d = static_cast<double>(x.size());
  const double s = x.squaredNorm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double x2 = x(i) * x(i);
    if (x2 > 0) acc += x2 * std::log(x2 / s);
  }
  return std::max(0.0, (acc + s * std::log(d)) / (2.0 * d));
}

/// Ent_2(X) = (1/2d) tr[X^2 (log(X^2 / tr X^2) + log d)] for X > 0.
inline double entropy_2(const HermitianMatrix& x) {
  const auto sd = eig_hermitian(x);
  if (sd.eigenvalues.minCoeff() < kPositiveTol * (1.0 - 1e-9)) {
    fail(ErrorCode::NotPositive, "entropy_2 needs X > 0, min eigenvalue " + std::to_string(sd.eigenvalues.minCoeff()));
  }
  return entropy_2_of_spectrum(sd.eigenvalues);
}

/// ||Y - tr(Y) 1/d||^2_{2,1/d}.
inline double variance(const HermitianMatrix& y) {
  const double d = static_cast<double>(y.dim());
  const ComplexMatrix c = y.matrix() - (y.trace() / d) * ComplexMatrix::Identity(y.dim(), y.dim());
  return c.squaredNorm() / d;
}

/// tr[L(rho) log rho] for full-rank rho.
inline double entropy_production_rate(const Liouvillian& l, const DensityMatrix& rho) {
  if (rho.dim() != l.dim()) fail(ErrorCode::DimMismatch, "entropy_production_rate");
  const auto sd = eig_hermitian(rho.hermitian());
  if (sd.eigenvalues.minCoeff() < kFullRankTol) fail(ErrorCode::Singular, "rho is not full rank");
  const ComplexMatrix log_rho = sd.eigenvectors * sd.eigenvalues.array().log().matrix().asDiagonal() * sd.eigenvectors.adjoint();
  return (l.apply(rho.matrix()) * log_rho).trace().real();
}

}  // namespace qls
