#pragma once

// Almost commuting unitary bases over finite abelian groups, the character
// embedding X -> f_X, the classical semigroup diagonal in characters, and the
// 2 -> 4 norm comparison between e^{tL} and that classical semigroup.

#include <numeric>

#include "qls/discrete_ls.hpp"

namespace qls {

/// Z_{n_1} x ... x Z_{n_k}; elements indexed in mixed radix, first factor most significant.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    for (int m : moduli_)
      if (m < 1) fail(ErrorCode::InvalidArgument, "cyclic factor must be >= 1");
  }

  const std::vector<int>& moduli() const noexcept { return moduli_; }
  int order() const {
    return std::accumulate(moduli_.begin(), moduli_.end(), 1, [](int a, int b) { return a * b; });
  }

  std::vector<int> digits(int index) const {
    std::vector<int> out(moduli_.size());
    for (std::size_t k = moduli_.size(); k-- > 0;) {
      out[k] = index % moduli_[k];
      index /= moduli_[k];
    }
    return out;
  }
  int index(const std::vector<int>& digits) const {
    int idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) idx = idx * moduli_[k] + ((digits[k] % moduli_[k]) + moduli_[k]) % moduli_[k];
    return idx;
  }
  int add(int a, int b) const {
    auto x = digits(a);
    const auto y = digits(b);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
    return index(x);
  }
  int negate(int a) const {
    auto x = digits(a);
    for (auto& v : x) v = -v;
    return index(x);
  }

  /// chi_i(g) = exp(2 pi i sum_k i_k g_k / n_k).
  Complex character(int i, int g) const {
    const auto a = digits(i), b = digits(g);
    double phase = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) phase += static_cast<double>(a[k] * b[k] % moduli_[k]) / moduli_[k];
    return std::polar(1.0, 2.0 * M_PI * phase);
  }

  /// F[g, i] = chi_i(g).
  ComplexMatrix character_table() const {
    const int n = order();
    ComplexMatrix f(n, n);
    for (int g = 0; g < n; ++g)
      for (int i = 0; i < n; ++i) f(g, i) = character(i, g);
    return f;
  }

  static AbelianGroup product(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<int> m = a.moduli_;
    m.insert(m.end(), b.moduli_.begin(), b.moduli_.end());
    return AbelianGroup(std::move(m));
  }

  bool operator==(const AbelianGroup& o) const { return moduli_ == o.moduli_; }

 private:
  std::vector<int> moduli_;
};

inline constexpr double kBasisTol = 1e-10;

/// Orthogonal unitary basis {U_i} of M_d indexed by an abelian group of order
/// d^2 with U_i U_j = phi'(i, j) U_{i+j} and U_i U_j = phi(i, j) U_j U_i.
class AlmostCommutingBasis {
 public:
  AlmostCommutingBasis(std::vector<ComplexMatrix> unitaries, AbelianGroup group)
      : unitaries_(std::move(unitaries)), group_(std::move(group)) {
    const auto n = static_cast<int>(unitaries_.size());
    if (n == 0) fail(ErrorCode::InvalidArgument, "empty basis");
    d_ = unitaries_.front().rows();
    if (n != d_ * d_ || group_.order() != n) fail(ErrorCode::DimMismatch, "basis needs d^2 unitaries and a group of order d^2");
    if (max_abs(unitaries_.front() - ComplexMatrix::Identity(d_, d_)) > kBasisTol) fail(ErrorCode::InvalidArgument, "U_0 must be 1");
    phi_prime_.resize(n, n);
    phi_.resize(n, n);
    const double dd = static_cast<double>(d_);
    for (int i = 0; i < n; ++i) {
      if (!is_unitary(unitaries_[i])) fail(ErrorCode::NotUnitary, "basis element " + std::to_string(i));
      for (int j = 0; j < n; ++j) {
        const double ip = std::abs((unitaries_[i].adjoint() * unitaries_[j]).trace() - Complex(i == j ? dd : 0.0));
        if (ip > kBasisTol * dd) fail(ErrorCode::InvalidArgument, "basis not orthogonal");
        const ComplexMatrix prod = unitaries_[i] * unitaries_[j];
        const ComplexMatrix& target = unitaries_[static_cast<std::size_t>(group_.add(i, j))];
        const Complex ph = (target.adjoint() * prod).trace() / dd;
        if (std::abs(std::abs(ph) - 1.0) > kBasisTol || max_abs(prod - ph * target) > kBasisTol) {
          fail(ErrorCode::InvalidArgument, "projective law fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        phi_prime_(i, j) = ph;
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) phi_(i, j) = phi_prime_(i, j) / phi_prime_(j, i);
  }

  Eigen::Index dim() const noexcept { return d_; }
  int size() const noexcept { return static_cast<int>(unitaries_.size()); }
  const std::vector<ComplexMatrix>& unitaries() const noexcept { return unitaries_; }
  const ComplexMatrix& operator[](int i) const { return unitaries_[static_cast<std::size_t>(i)]; }
  const AbelianGroup& group() const noexcept { return group_; }
  /// U_i U_j = phi'(i, j) U_{i+j}
  const ComplexMatrix& phi_prime() const noexcept { return phi_prime_; }
  /// U_i U_j = phi(i, j) U_j U_i
  const ComplexMatrix& phi() const noexcept { return phi_; }

 private:
  std::vector<ComplexMatrix> unitaries_;
  AbelianGroup group_;
  Eigen::Index d_ = 0;
  ComplexMatrix phi_prime_, phi_;
};

inline AlmostCommutingBasis weyl_basis(Eigen::Index d) {
  return AlmostCommutingBasis(weyl_unitaries(d), AbelianGroup({static_cast<int>(d), static_cast<int>(d)}));
}

/// {U_i (x) V_j} indexed by G_1 x G_2.
inline AlmostCommutingBasis tensor_basis(const AlmostCommutingBasis& a, const AlmostCommutingBasis& b) {
  std::vector<ComplexMatrix> u;
  u.reserve(static_cast<std::size_t>(a.size() * b.size()));
  for (const auto& x : a.unitaries())
    for (const auto& y : b.unitaries()) u.push_back(kron(x, y));
  return AlmostCommutingBasis(std::move(u), AbelianGroup::product(a.group(), b.group()));
}

inline AlmostCommutingBasis tensor_power_basis(const AlmostCommutingBasis& b, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n >= 1 required");
  AlmostCommutingBasis out = b;
  for (int i = 1; i < n; ++i) out = tensor_basis(out, b);
  return out;
}

/// f = sum_i fhat(i) chi_i on a finite abelian group; norms use the uniform probability measure.
struct GroupFunction {
  AbelianGroup group;
  ComplexVector coefficients;

  /// Values f(g) for every group element g.
  ComplexVector values() const { return group.character_table() * coefficients; }

  double norm(double p) const {
    const ComplexVector v = values();
    return std::pow(v.cwiseAbs().array().pow(p).mean(), 1.0 / p);
  }

  /// Same characters with coefficients |fhat(i)|.
  GroupFunction absolute() const { return {group, coefficients.cwiseAbs().cast<Complex>()}; }
};

/// fhat_X(i) = <U_i, X>_{1/d} = tr(U_i^dag X)/d.
inline GroupFunction embed(const ComplexMatrix& x, const AlmostCommutingBasis& b) {
  if (x.rows() != b.dim() || x.cols() != b.dim()) fail(ErrorCode::DimMismatch, "embed");
  ComplexVector c(b.size());
  for (int i = 0; i < b.size(); ++i) c(i) = (b[i].adjoint() * x).trace() / static_cast<double>(b.dim());
  return {b.group(), c};
}

inline ComplexMatrix reconstruct(const GroupFunction& f, const AlmostCommutingBasis& b) {
  ComplexMatrix x = ComplexMatrix::Zero(b.dim(), b.dim());
  for (int i = 0; i < b.size(); ++i) x += f.coefficients(i) * b[i];
  return x;
}

/// Classical semigroup acting on characters by P_t chi_i = e^{t lambda_i} chi_i.
struct ClassicalSemigroup {
  AbelianGroup group;
  RealVector eigenvalues;

  GroupFunction apply(const GroupFunction& f, double t) const {
    return {f.group, (t * eigenvalues).array().exp().cast<Complex>().matrix().cwiseProduct(f.coefficients)};
  }

  /// P_t on function values, (1/|G|) F diag(e^{t lambda}) F^dag.
  ComplexMatrix value_operator(double t) const {
    const ComplexMatrix f = group.character_table();
    return f * (t * eigenvalues).array().exp().cast<Complex>().matrix().asDiagonal() * f.adjoint() / static_cast<double>(group.order());
  }

  /// Generator on function values.
  RealMatrix generator() const {
    const ComplexMatrix f = group.character_table();
    const ComplexMatrix g = f * eigenvalues.cast<Complex>().asDiagonal() * f.adjoint() / static_cast<double>(group.order());
    return g.real();
  }
};

inline ClassicalSemigroup tensor_product(const ClassicalSemigroup& a, const ClassicalSemigroup& b) {
  const auto na = a.eigenvalues.size(), nb = b.eigenvalues.size();
  RealVector ev(na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j) ev(i * nb + j) = a.eigenvalues(i) + b.eigenvalues(j);
  return {AbelianGroup::product(a.group, b.group), ev};
}

inline ClassicalSemigroup tensor_power(const ClassicalSemigroup& p, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n >= 1 required");
  ClassicalSemigroup out = p;
  for (int i = 1; i < n; ++i) out = tensor_product(out, p);
  return out;
}

inline constexpr double kEigenbasisTol = 1e-9;

/// Requires every U_i to be an eigenvector of L; lambda_i = <U_i, L(U_i)>_{1/d}.
inline ClassicalSemigroup classical_semigroup(const Liouvillian& l, const AlmostCommutingBasis& b) {
  if (l.dim() != b.dim()) fail(ErrorCode::DimMismatch, "classical_semigroup");
  l.require_doubly_stochastic("classical_semigroup");
  if (!l.is_reversible()) fail(ErrorCode::NotReversible, "classical_semigroup needs L = L^*");
  RealVector ev(b.size());
  for (int i = 0; i < b.size(); ++i) {
    const ComplexMatrix lu = l.apply(b[i]);
    const Complex lam = (b[i].adjoint() * lu).trace() / static_cast<double>(b.dim());
    if ((lu - lam * b[i]).norm() > kEigenbasisTol || std::abs(lam.imag()) > kEigenbasisTol) {
      fail(ErrorCode::NotEigenbasis, "basis element " + std::to_string(i) + " is not an eigenvector");
    }
    ev(i) = lam.real();
  }
  return {b.group(), ev};
}

/// log(3) log(d^2 - 1) / (4 (1 - 2/d^2)): time at which the depolarizing
/// semigroup becomes 2 -> 4 contractive.
inline double t0_depolarizing(Eigen::Index d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "d >= 2 required");
  const double x = static_cast<double>(d);
  return std::log(3.0) * std::log(x * x - 1.0) / (4.0 * (1.0 - 2.0 / (x * x)));
}

struct ClassicalNormResult {
  double value = 1.0;  // best ||P_t f||_4/||f||_2 found (f = 1 gives 1)
  double anchor_delta = 0.0;
  double anchor_constant = 1.0;
  int iterations = 0;
};

/// Multi-start maximization of ||P_t f||_4 / ||f||_2 over f = g^2 >= 0,
/// together with the delta-function and constant anchors.
inline ClassicalNormResult classical_2to4_norm(const ClassicalSemigroup& p, double t, const NormSearchOptions& opt = {}) {
  if (!(t >= 0)) fail(ErrorCode::InvalidArgument, "t must be >= 0");
  const int n = p.group.order();
  const ComplexMatrix m = p.value_operator(t);
  const ComplexMatrix madj = m.adjoint();
  const double logn = std::log(static_cast<double>(n));
  // log ||M f||_4 - log ||f||_2 with uniform-measure norms
  auto ratio = [&](const RealVector& f, RealVector* grad_f) {
    const ComplexVector h = m * f.cast<Complex>();
    const RealVector a2 = h.cwiseAbs2();
    const double s4 = a2.squaredNorm();
    const double s2 = f.squaredNorm();
    const double v = 0.25 * std::log(s4) - 0.5 * std::log(s2) + 0.25 * logn;
    if (grad_f) {
      const ComplexVector w = a2.cast<Complex>().cwiseProduct(h);
      *grad_f = (madj * w).real() / s4 - f / s2;
    }
    return v;
  };
  ClassicalNormResult r;
  {
    RealVector delta = RealVector::Zero(n);
    delta(0) = 1.0;
    r.anchor_delta = std::exp(ratio(delta, nullptr));
    r.anchor_constant = std::exp(ratio(RealVector::Ones(n), nullptr));
    r.value = std::max(r.anchor_delta, r.anchor_constant);
  }
  const Objective obj = [&](const double* x, double* grad) {
    const RealVector g = Eigen::Map<const RealVector>(x, n);
    const RealVector f = g.cwiseAbs2();
    if (!(f.squaredNorm() > 1e-300)) return std::numeric_limits<double>::quiet_NaN();
    RealVector gf;
    const double v = ratio(f, grad ? &gf : nullptr);
    if (grad) {
      const RealVector gg = 2.0 * g.cwiseProduct(gf);
      for (int i = 0; i < n; ++i) grad[i] = -gg(i);
    }
    return -v;
  };
  MultiStartOptions mo;
  mo.restarts = opt.restarts;
  mo.max_iterations = opt.max_iterations;
  mo.seed = opt.seed;
  const auto init = [n](Rng& rng, int restart, double* x) {
    for (int i = 0; i < n; ++i) x[i] = restart % 2 == 0 ? gaussian(rng) : 1.0 + 0.3 * gaussian(rng);
    if (restart % 4 == 3) x[static_cast<int>(rng() % static_cast<std::uint64_t>(n))] += 4.0;
  };
  const auto res = minimize_multistart(n, obj, init, mo);
  r.iterations = res.iterations;
  if (std::isfinite(res.value)) r.value = std::max(r.value, std::exp(-res.value));
  return r;
}

struct HyperComparison {
  double t = 0.0;
  int n = 1;
  double quantum = 1.0;    // optimizer estimate of ||(e^{tL})^{(x)n}||_{2->4,1/d^n}
  double classical = 1.0;  // optimizer estimate of ||P_t^{(x)n}||_{2->4}
  bool passed(double tol = 1e-6) const { return quantum <= classical + tol; }
};

inline constexpr Eigen::Index kNormDimCap = 16;

inline HyperComparison quantum_2to4_bound(const Liouvillian& l, const AlmostCommutingBasis& b, double t, int n,
                                          const NormSearchOptions& opt = {}) {
  Eigen::Index big = 1;
  for (int i = 0; i < n; ++i) {
    big *= l.dim();
    if (big > kNormDimCap) fail(ErrorCode::DimensionCap, "d^n exceeds 16");
  }
  HyperComparison h;
  h.t = t;
  h.n = n;
  const QuantumChannel tn = semigroup_at(tensor_power_generator(l, n), t);
  h.quantum = max_norm_ratio(tn, 4.0, opt).ratio;
  h.classical = classical_2to4_norm(tensor_power(classical_semigroup(l, b), n), t, opt).value;
  return h;
}

/// ||X||_{4,1/d}^4 and ||f'_X||_4^4, where f' carries the absolute coefficients.
inline std::pair<double, double> four_norm_domination(const ComplexMatrix& x, const AlmostCommutingBasis& b) {
  const double q = std::pow(weighted_lp_norm(x, 4.0), 4);
  const double c = std::pow(embed(x, b).absolute().norm(4.0), 4);
  return {q, c};
}

/// LS-2 ratio of a symmetric Markov generator q on N points under the uniform
/// measure, f = e^h: -(1/N) f^T q f over (1/2N) sum f^2 log(N f^2/|f|^2).
class ClassicalLs2Ratio {
 public:
  explicit ClassicalLs2Ratio(RealMatrix q) : q_(std::move(q)) {}
  double operator()(const double* p, double* grad) const {
    const Eigen::Index n = q_.rows();
    RealVector h = Eigen::Map<const RealVector>(p, n);
    const double nn = static_cast<double>(n);
    h.array() += 0.5 * (std::log(nn) - log_sum_exp(2.0 * h));
    const RealVector x = h.array().exp();
    const double ent = x.cwiseAbs2().dot(2.0 * h) / (2.0 * nn);
    if (!(ent >= kRatioFloor)) return std::numeric_limits<double>::quiet_NaN();
    const RealVector qx = q_ * x;
    const double energy = -x.dot(qx) / nn;
    const double ratio = energy / ent;
    if (grad) {
      const RealVector gx = (-2.0 / nn) * qx - ratio * x.cwiseProduct(2.0 * h) / nn;
      for (Eigen::Index i = 0; i < n; ++i) grad[i] = gx(i) * x(i) / ent;
    }
    return ratio;
  }

 private:
  RealMatrix q_;
};

/// Upper estimate of the classical LS-2 constant, capped by the spectral gap.
inline double classical_alpha2_variational(const ClassicalSemigroup& p, const VariationalOptions& opt = {}) {
  const RealMatrix q = p.generator();
  double gap = kInf;
  for (Eigen::Index i = 1; i < p.eigenvalues.size(); ++i) gap = std::min(gap, -p.eigenvalues(i));
  const ClassicalLs2Ratio f(q);
  MultiStartOptions mo;
  mo.restarts = opt.restarts;
  mo.max_iterations = opt.max_iterations;
  mo.seed = opt.seed;
  const auto n = static_cast<int>(q.rows());
  const auto init = [n](Rng& rng, int restart, double* x) {
    const double scale = 0.5 + restart % 4;
    for (int i = 0; i < n; ++i) x[i] = scale * gaussian(rng);
  };
  const auto res = minimize_multistart(n, std::cref(f), init, mo);
  return std::min(res.value, gap);
}

}  // namespace qls
