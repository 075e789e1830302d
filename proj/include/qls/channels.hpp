#pragma once

// Quantum channels (Kraus form with a cached superoperator), Liouvillians,
// tensor-power generators, Bloch representations, Weyl unitaries and the
// classical Markov kernels induced by a channel and a basis.

#include <Eigen/Eigenvalues>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qls/linalg.hpp"
#include "qls/random.hpp"

namespace qls {

inline constexpr double kChannelTol = 1e-10;
inline constexpr double kChoiClamp = -1e-10;
inline constexpr double kNotCpTol = -1e-8;
inline constexpr double kUnitModulusTol = 1e-9;
/// Largest matrix dimension d^n whose superoperator is formed densely.
inline constexpr Eigen::Index kSuperopDimCap = 64;

namespace detail {

inline double relative_defect(const ComplexMatrix& defect, const ComplexMatrix& scale_of) {
  return max_abs(defect) / std::max(1.0, max_abs(scale_of));
}

// J[(i + k d), (j + l d)] = S[(i + j d), (k + l d)]; J is the Choi matrix whose
// eigenvectors are column-stacked Kraus operators.
inline ComplexMatrix reshuffle(const ComplexMatrix& s, Eigen::Index d) {
  ComplexMatrix j(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index jj = 0; jj < d; ++jj)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l) j(i + k * d, jj + l * d) = s(i + jj * d, k + l * d);
  return j;
}

inline Eigen::Index superop_dim(const ComplexMatrix& s) {
  require_square(s, "superoperator");
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  if (d * d != s.rows()) fail(ErrorCode::DimMismatch, "superoperator size is not a perfect square");
  return d;
}

}  // namespace detail

/// Completely positive trace-preserving map on M_d.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) fail(ErrorCode::InvalidArgument, "channel needs at least one Kraus operator");
    const Eigen::Index d = kraus_.front().rows();
    ComplexMatrix tp = ComplexMatrix::Zero(d, d);
    superop_ = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& k : kraus_) {
      require_square(k, "Kraus operator");
      if (k.rows() != d) fail(ErrorCode::DimMismatch, "Kraus operators of different sizes");
      tp += k.adjoint() * k;
      superop_ += kron(k.conjugate(), k);
    }
    const double defect = max_abs(tp - ComplexMatrix::Identity(d, d));
    if (defect > kChannelTol) fail(ErrorCode::NotTracePreserving, "sum K^dag K deviates by " + std::to_string(defect));
  }

  /// Kraus form recovered from the Choi matrix; eigenvalues in
  /// [kNotCpTol, kChoiClamp) are clamped, anything lower throws NotCP.
  static QuantumChannel from_superop(const ComplexMatrix& superop) {
    const Eigen::Index d = detail::superop_dim(superop);
    const ComplexMatrix choi = detail::reshuffle(superop, d);
    const double scale = std::max(1.0, max_abs(choi));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (choi + choi.adjoint()));
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
      const double mu = es.eigenvalues()(i);
      if (mu < kNotCpTol * scale) fail(ErrorCode::NotCP, "Choi eigenvalue " + std::to_string(mu));
      if (mu <= 1e-14 * scale) continue;
      kraus.push_back(std::sqrt(mu) * unvec(es.eigenvectors().col(i), d));
    }
    if (kraus.empty()) fail(ErrorCode::NotCP, "zero map");
    return QuantumChannel(std::move(kraus));
  }

  static QuantumChannel identity(Eigen::Index d) { return QuantumChannel({ComplexMatrix::Identity(d, d)}); }

  static QuantumChannel unitary(const ComplexMatrix& u) {
    if (!is_unitary(u)) fail(ErrorCode::NotUnitary, "unitary channel");
    return QuantumChannel({u});
  }

  /// X -> tr(X) 1/d.
  static QuantumChannel completely_depolarizing(Eigen::Index d) {
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        ComplexMatrix k = ComplexMatrix::Zero(d, d);
        k(i, j) = 1.0 / std::sqrt(static_cast<double>(d));
        kraus.push_back(std::move(k));
      }
    return QuantumChannel(std::move(kraus));
  }

  Eigen::Index dim() const noexcept { return kraus_.front().rows(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const ComplexMatrix& superop() const noexcept { return superop_; }

  ComplexMatrix apply(const ComplexMatrix& x) const { return apply_superop(superop_, x); }
  ComplexMatrix apply_adjoint(const ComplexMatrix& x) const { return apply_superop(superop_.adjoint(), x); }

  double unitality_defect() const {
    ComplexMatrix u = ComplexMatrix::Zero(dim(), dim());
    for (const auto& k : kraus_) u += k * k.adjoint();
    return max_abs(u - ComplexMatrix::Identity(dim(), dim()));
  }
  bool is_doubly_stochastic(double tol = kChannelTol) const { return unitality_defect() <= tol; }

  /// Hilbert-Schmidt adjoint; a channel only when this one is unital.
  QuantumChannel adjoint() const {
    require_doubly_stochastic("adjoint");
    std::vector<ComplexMatrix> k;
    k.reserve(kraus_.size());
    for (const auto& m : kraus_) k.push_back(m.adjoint());
    return QuantumChannel(std::move(k));
  }

  void require_doubly_stochastic(const char* where) const {
    if (!is_doubly_stochastic()) {
      fail(ErrorCode::NotDoublyStochastic, std::string(where) + ": unitality defect " + std::to_string(unitality_defect()));
    }
  }

 private:
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix superop_;
};

/// second o first. Falls back to the canonical (Choi) Kraus form once the
/// product list would exceed d^2 operators.
inline QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (second.dim() != first.dim()) fail(ErrorCode::DimMismatch, "compose");
  const auto d = first.dim();
  if (static_cast<Eigen::Index>(second.kraus().size() * first.kraus().size()) > d * d) {
    return QuantumChannel::from_superop(second.superop() * first.superop());
  }
  std::vector<ComplexMatrix> k;
  for (const auto& b : second.kraus())
    for (const auto& a : first.kraus()) k.push_back(b * a);
  return QuantumChannel(std::move(k));
}

/// T^* T, the composite whose primitivity drives the discrete LS theory.
inline QuantumChannel adjoint_composite(const QuantumChannel& t) { return compose(t.adjoint(), t); }

struct LindbladForm {
  std::vector<ComplexMatrix> phi_kraus;
  ComplexMatrix kappa;
};

/// Generator of a quantum dynamical semigroup, held as a d^2 x d^2
/// superoperator with an optional Lindblad form X -> Phi(X) - kappa X - X kappa^dag.
class Liouvillian {
 public:
  explicit Liouvillian(ComplexMatrix superop) : superop_(std::move(superop)) {
    dim_ = detail::superop_dim(superop_);
    const ComplexVector id = vec(ComplexMatrix::Identity(dim_, dim_));
    const double defect = detail::relative_defect((id.adjoint() * superop_).eval(), superop_);
    if (defect > kChannelTol) fail(ErrorCode::NotTracePreserving, "generator does not annihilate the trace: " + std::to_string(defect));
  }

  static Liouvillian lindblad(std::vector<ComplexMatrix> phi_kraus, ComplexMatrix kappa) {
    require_square(kappa, "kappa");
    const Eigen::Index d = kappa.rows();
    ComplexMatrix s = -kron(ComplexMatrix::Identity(d, d), kappa) - kron(kappa.conjugate(), ComplexMatrix::Identity(d, d));
    ComplexMatrix phi_star_one = ComplexMatrix::Zero(d, d);
    for (const auto& k : phi_kraus) {
      if (k.rows() != d || k.cols() != d) fail(ErrorCode::DimMismatch, "phi Kraus operator size");
      s += kron(k.conjugate(), k);
      phi_star_one += k.adjoint() * k;
    }
    const double defect = max_abs(phi_star_one - kappa - kappa.adjoint());
    if (defect > kChannelTol) fail(ErrorCode::NotTracePreserving, "Phi*(1) != kappa + kappa^dag, defect " + std::to_string(defect));
    Liouvillian l(std::move(s));
    l.lindblad_ = LindbladForm{std::move(phi_kraus), std::move(kappa)};
    return l;
  }

  /// rate * (T - id), in Lindblad form with Phi = rate T and kappa = rate/2.
  static Liouvillian generator_of(const QuantumChannel& t, double rate = 1.0) {
    std::vector<ComplexMatrix> phi;
    for (const auto& k : t.kraus()) phi.push_back(std::sqrt(rate) * k);
    return lindblad(std::move(phi), ComplexMatrix(0.5 * rate * ComplexMatrix::Identity(t.dim(), t.dim())));
  }

  Eigen::Index dim() const noexcept { return dim_; }
  const ComplexMatrix& superop() const noexcept { return superop_; }
  const std::optional<LindbladForm>& lindblad_form() const noexcept { return lindblad_; }

  ComplexMatrix apply(const ComplexMatrix& x) const { return apply_superop(superop_, x); }
  ComplexMatrix apply_adjoint(const ComplexMatrix& x) const { return apply_superop(superop_.adjoint(), x); }

  Liouvillian adjoint() const { return Liouvillian(superop_.adjoint()); }
  Liouvillian symmetrized() const { return Liouvillian(0.5 * (superop_ + superop_.adjoint())); }
  Liouvillian scaled(double c) const { return Liouvillian(c * superop_); }

  /// Frobenius norm of L - L^*.
  double reversibility_defect() const { return (superop_ - superop_.adjoint()).norm(); }
  bool is_reversible(double tol = 1e-10) const { return reversibility_defect() <= tol; }

  double unitality_defect() const {
    return max_abs(apply(ComplexMatrix::Identity(dim_, dim_)));
  }
  bool is_doubly_stochastic(double tol = kChannelTol) const {
    return unitality_defect() <= tol * std::max(1.0, max_abs(superop_));
  }
  void require_doubly_stochastic(const char* where) const {
    if (!is_doubly_stochastic()) {
      fail(ErrorCode::NotDoublyStochastic, std::string(where) + ": L(1) defect " + std::to_string(unitality_defect()));
    }
  }

 private:
  ComplexMatrix superop_;
  Eigen::Index dim_ = 0;
  std::optional<LindbladForm> lindblad_;
};

/// X -> tr(X) 1/d - X.
inline Liouvillian depolarizing_liouvillian(Eigen::Index d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "depolarizing generator needs d >= 2");
  return Liouvillian::generator_of(QuantumChannel::completely_depolarizing(d));
}

/// sigma_0 = 1, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
inline ComplexMatrix pauli(int i) {
  const Complex I(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: fail(ErrorCode::InvalidArgument, "Pauli index out of range");
  }
  return m;
}

struct PauliDistribution {
  double p1 = 0, p2 = 0, p3 = 0;

  PauliDistribution() = default;
  PauliDistribution(double a, double b, double c) : p1(a), p2(b), p3(c) {
    if (!(a >= 0 && b >= 0 && c >= 0) || a + b + c > 1.0 + 1e-12) {
      fail(ErrorCode::InvalidDistribution, "need p_i >= 0 and p1+p2+p3 <= 1");
    }
  }
  double p0() const { return std::max(0.0, 1.0 - p1 - p2 - p3); }
  std::array<double, 4> full() const { return {p0(), p1, p2, p3}; }
};

inline QuantumChannel random_pauli_channel(const PauliDistribution& p) {
  const auto w = p.full();
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < 4; ++i)
    if (w[static_cast<std::size_t>(i)] > 0) kraus.push_back(std::sqrt(w[static_cast<std::size_t>(i)]) * pauli(i));
  return QuantumChannel(std::move(kraus));
}

/// Discrete Weyl system U_{k,l} = sum_r nu^{r l} |k+r><r|, nu = e^{2 pi i/d},
/// returned in row-major (k, l) order so that element 0 is the identity.
inline std::vector<ComplexMatrix> weyl_unitaries(Eigen::Index d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "Weyl system needs d >= 2");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      ComplexMatrix u = ComplexMatrix::Zero(d, d);
      for (Eigen::Index r = 0; r < d; ++r) u((k + r) % d, r) = std::polar(1.0, 2.0 * M_PI * static_cast<double>((r * l) % d) / static_cast<double>(d));
      out.push_back(std::move(u));
    }
  return out;
}

/// Superoperator of id_left (x) S (x) id_right on M_{left d right}, where S
/// acts on M_d.
inline ComplexMatrix embed_superop(const ComplexMatrix& s, Eigen::Index d, Eigen::Index left, Eigen::Index right) {
  const Eigen::Index big = left * d * right;
  if (big > kSuperopDimCap) fail(ErrorCode::DimensionCap, "matrix dimension " + std::to_string(big) + " exceeds cap");
  ComplexMatrix out = ComplexMatrix::Zero(big * big, big * big);
  auto idx = [&](Eigen::Index l, Eigen::Index m, Eigen::Index r) { return (l * d + m) * right + r; };
  for (Eigen::Index l = 0; l < left; ++l)
    for (Eigen::Index l2 = 0; l2 < left; ++l2)
      for (Eigen::Index r = 0; r < right; ++r)
        for (Eigen::Index r2 = 0; r2 < right; ++r2)
          for (Eigen::Index m = 0; m < d; ++m)
            for (Eigen::Index m2 = 0; m2 < d; ++m2)
              for (Eigen::Index n = 0; n < d; ++n)
                for (Eigen::Index n2 = 0; n2 < d; ++n2) {
                  const Complex v = s(m + m2 * d, n + n2 * d);
                  if (v != Complex(0.0)) out(idx(l, m, r) + big * idx(l2, m2, r2), idx(l, n, r) + big * idx(l2, n2, r2)) = v;
                }
  return out;
}

/// Superoperator of S1 (x) S2 acting on M_{d1 d2}.
inline ComplexMatrix tensor_superop(const ComplexMatrix& s1, Eigen::Index d1, const ComplexMatrix& s2, Eigen::Index d2) {
  return embed_superop(s1, d1, 1, d2) * embed_superop(s2, d2, d1, 1);
}

/// L^{(n)} = sum_i id^{(i-1)} (x) L (x) id^{(n-i)}.
inline Liouvillian tensor_power_generator(const Liouvillian& l, int n, Eigen::Index cap = kSuperopDimCap) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n >= 1 required");
  const Eigen::Index d = l.dim();
  Eigen::Index big = 1;
  for (int i = 0; i < n; ++i) {
    big *= d;
    if (big > cap) fail(ErrorCode::DimensionCap, "d^n exceeds " + std::to_string(cap));
  }
  if (n == 1) return l;
  ComplexMatrix s = ComplexMatrix::Zero(big * big, big * big);
  Eigen::Index left = 1;
  for (int i = 0; i < n; ++i) {
    s += embed_superop(l.superop(), d, left, big / (left * d));
    left *= d;
  }
  return Liouvillian(std::move(s));
}

/// e^{tL} with Kraus operators recovered from the Choi matrix.
inline QuantumChannel semigroup_at(const Liouvillian& l, double t) {
  if (!(t >= 0)) fail(ErrorCode::InvalidArgument, "t must be >= 0");
  if (t == 0) return QuantumChannel::identity(l.dim());
  return QuantumChannel::from_superop(expm(t * l.superop()));
}

struct BlochMatrix {
  Eigen::Matrix3d m;
  Eigen::Matrix3d symmetric_part() const { return 0.5 * (m + m.transpose()); }
};

/// T^_ij = 1/2 tr(sigma_i T(sigma_j)) for a unital qubit channel given by its superoperator.
inline BlochMatrix bloch_matrix_of_superop(const ComplexMatrix& superop) {
  if (superop.rows() != 4) fail(ErrorCode::NotQubit, "Bloch representation needs d = 2");
  BlochMatrix b;
  for (int j = 1; j <= 3; ++j) {
    const ComplexMatrix out = apply_superop(superop, pauli(j));
    for (int i = 1; i <= 3; ++i) b.m(i - 1, j - 1) = 0.5 * (pauli(i) * out).trace().real();
  }
  return b;
}

inline BlochMatrix bloch_matrix(const QuantumChannel& t) {
  if (t.dim() != 2) fail(ErrorCode::NotQubit, "Bloch representation needs d = 2");
  t.require_doubly_stochastic("bloch_matrix");
  return bloch_matrix_of_superop(t.superop());
}

/// Doubly stochastic d x d real matrix.
class ClassicalKernel {
 public:
  explicit ClassicalKernel(RealMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) fail(ErrorCode::DimMismatch, "kernel must be square");
    if (m_.minCoeff() < -1e-12) fail(ErrorCode::NotDoublyStochastic, "negative kernel entry");
    const double rows = (m_.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double cols = (m_.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (std::max(rows, cols) > 1e-10) fail(ErrorCode::NotDoublyStochastic, "row/column sums deviate by " + std::to_string(std::max(rows, cols)));
  }
  const RealMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  RealMatrix m_;
};

/// (M_U)_ij = <j| U^dag T(U|i><i|U^dag) U |j>.
inline ClassicalKernel markov_kernel(const QuantumChannel& t, const ComplexMatrix& u) {
  if (u.rows() != t.dim() || !is_unitary(u)) fail(ErrorCode::NotUnitary, "markov_kernel needs a unitary of matching size");
  t.require_doubly_stochastic("markov_kernel");
  const Eigen::Index d = t.dim();
  RealMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const ComplexMatrix out = u.adjoint() * t.apply(u.col(i) * u.col(i).adjoint()) * u;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(out(j, j).imag()) > 1e-10) fail(ErrorCode::DomainError, "kernel entry not real");
      m(i, j) = out(j, j).real();
    }
  }
  return ClassicalKernel(std::move(m));
}

struct PrimitivityWitness {
  bool primitive = false;
  std::vector<Complex> unit_eigenvalues;  // eigenvalues with |lambda| >= 1 - kUnitModulusTol
};

/// Primitive iff exactly one superoperator eigenvalue has modulus one.
inline PrimitivityWitness peripheral_spectrum(const ComplexMatrix& superop) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(superop, false);
  PrimitivityWitness w;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) >= 1.0 - kUnitModulusTol) w.unit_eigenvalues.push_back(es.eigenvalues()(i));
  w.primitive = w.unit_eigenvalues.size() == 1;
  return w;
}

inline PrimitivityWitness is_primitive(const QuantumChannel& t) {
  t.require_doubly_stochastic("is_primitive");
  return peripheral_spectrum(t.superop());
}

/// Mixed-unitary channel sum_i q_i U_i . U_i^dag with Haar U_i and flat Dirichlet q.
inline QuantumChannel random_doubly_stochastic_channel(Eigen::Index d, int k, std::uint64_t seed) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k >= 1 required");
  Rng rng = make_rng(seed);
  const auto q = dirichlet_uniform(static_cast<std::size_t>(k), rng);
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < k; ++i) kraus.push_back(std::sqrt(q[static_cast<std::size_t>(i)]) * haar_unitary(d, rng));
  return QuantumChannel(std::move(kraus));
}

/// Reversible doubly stochastic generator rate ((T + T^*)/2 - id) for a random mixed-unitary T.
inline Liouvillian random_reversible_liouvillian(Eigen::Index d, int k, std::uint64_t seed, double rate = 1.0) {
  const QuantumChannel t = random_doubly_stochastic_channel(d, k, seed);
  std::vector<ComplexMatrix> kraus;
  for (const auto& m : t.kraus()) {
    kraus.push_back(m / std::sqrt(2.0));
    kraus.push_back(m.adjoint() / std::sqrt(2.0));
  }
  return Liouvillian::generator_of(QuantumChannel(std::move(kraus)), rate);
}

/// Doubly stochastic Lindbladian with a random Hamiltonian part and random
/// unitary jump operators; generally not reversible.
inline Liouvillian random_lindblad_liouvillian(Eigen::Index d, int jumps, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  const HermitianMatrix h = random_hermitian(d, rng);
  std::vector<ComplexMatrix> phi;
  ComplexMatrix kappa = Complex(0.0, 1.0) * h.matrix() * 0.5;
  for (int i = 0; i < jumps; ++i) {
    const double rate = 0.2 + uniform01(rng);
    phi.push_back(std::sqrt(rate) * haar_unitary(d, rng));
    kappa += 0.5 * rate * ComplexMatrix::Identity(d, d);
  }
  return Liouvillian::lindblad(std::move(phi), std::move(kappa));
}

}  // namespace qls
