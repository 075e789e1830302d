#pragma once

// Seeded random instance generators. Every sweep derives a private stream per
// instance index, so results do not depend on scheduling.

#include <cstdint>
#include <random>
#include <vector>

#include "qls/linalg.hpp"

namespace qls {

using Rng = std::mt19937_64;

/// splitmix64 finalizer over (seed, stream) so that neighbouring indices give
/// unrelated generator states.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) { return Rng(derive_seed(seed, stream)); }

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double gaussian(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(gaussian(rng), gaussian(rng)) / std::sqrt(2.0);
  return g;
}

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) divided out.
inline ComplexMatrix haar_unitary(Eigen::Index d, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(d, d, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    q.col(i) *= mag > 0 ? diag / mag : Complex(1.0);
  }
  return q;
}

/// Uniform point on the probability simplex (flat Dirichlet).
inline std::vector<double> dirichlet_uniform(std::size_t k, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x /= total;
  return w;
}

inline HermitianMatrix random_hermitian(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return HermitianMatrix::hermitian_part(g + g.adjoint());
}

/// Positive matrix A A^dagger from a Ginibre A; full rank almost surely.
inline ComplexMatrix random_positive(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return g * g.adjoint();
}

/// Induced-measure state of the given rank (rank = d gives a full-rank state).
inline DensityMatrix random_density(Eigen::Index d, Rng& rng, Eigen::Index rank = -1) {
  const ComplexMatrix g = ginibre(d, rank < 1 ? d : rank, rng);
  return DensityMatrix::from_positive(g * g.adjoint());
}

}  // namespace qls
