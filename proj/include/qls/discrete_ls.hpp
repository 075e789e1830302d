#pragma once

// Discrete-time LS constant alpha_D(T) = alpha_2(T^*T - id)/2, the improved
// data-processing inequality, monotonicity along channel powers, dimension
// bounds, discrete entropy production and discrete hypercontractivity.

#include <array>
#include <optional>

#include "qls/ls_constants.hpp"

namespace qls {

enum class AlphaMethod { ClosedForm, Variational, Auto };

inline const char* to_string(AlphaMethod m) {
  switch (m) {
    case AlphaMethod::ClosedForm: return "closed-form";
    case AlphaMethod::Variational: return "variational";
    case AlphaMethod::Auto: return "auto";
  }
  return "?";
}

struct DiscreteLsResult {
  LsEstimate alpha_d;
  LsEstimate alpha2;  // of T^*T - id; alpha_d.value == alpha2.value / 2
  PrimitivityWitness primitivity;
  std::optional<std::vector<LsEstimate>> power_trace;
};

namespace detail {

/// If superop - 1 = p (Dep - 1) for the completely depolarizing Dep, returns p.
inline std::optional<double> depolarizing_strength(const ComplexMatrix& superop, Eigen::Index d) {
  const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
  const ComplexMatrix m = superop - id;
  const ComplexMatrix dep = QuantumChannel::completely_depolarizing(d).superop() - id;
  const double p = (dep.adjoint() * m).trace().real() / dep.squaredNorm();
  if ((m - p * dep).norm() <= 1e-10 * std::max(1.0, m.norm())) return p;
  return std::nullopt;
}

/// Closed-form alpha_2(C - id) for a unital channel superoperator C when one is known.
inline std::optional<LsEstimate> alpha2_closed_form(const ComplexMatrix& superop, Eigen::Index d) {
  if (d == 2) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(bloch_matrix_of_superop(superop).symmetric_part());
    const double v = 1.0 - es.eigenvalues().maxCoeff();
    auto e = LsEstimate::exact(EstimateKind::Alpha2, v, "qubit LS-2 closed form: 1 - sup_x <x, T^ x>");
    e.meta["operator_norm_form"] = 1.0 - es.eigenvalues().cwiseAbs().maxCoeff();
    return e;
  }
  if (auto p = depolarizing_strength(superop, d)) {
    auto e = LsEstimate::exact(EstimateKind::Alpha2, *p * ls2_prefactor(d), "LS-2 constant of the depolarizing generator");
    e.meta["depolarizing_strength"] = *p;
    return e;
  }
  return std::nullopt;
}

inline LsEstimate alpha2_of_unital_superop(const ComplexMatrix& superop, Eigen::Index d, AlphaMethod method,
                                           const VariationalOptions& opt) {
  if (method != AlphaMethod::Variational) {
    if (auto e = alpha2_closed_form(superop, d)) return *e;
    if (method == AlphaMethod::ClosedForm) fail(ErrorCode::InvalidArgument, "no closed form for this channel");
  }
  return alpha2_variational(Liouvillian(superop - ComplexMatrix::Identity(d * d, d * d)), opt);
}

inline LsEstimate halve_to_alpha_d(const LsEstimate& a2) {
  LsEstimate e = a2;
  e.kind = EstimateKind::AlphaD;
  e.value = 0.5 * a2.value;
  e.meta["alpha2_of_composite"] = a2.value;
  return e;
}

}  // namespace detail

/// alpha_D(T) = alpha_2(T^*T - id)/2; throws NotPrimitiveComposite unless T^*T is primitive.
inline DiscreteLsResult alpha_d(const QuantumChannel& t, AlphaMethod method = AlphaMethod::Auto, const VariationalOptions& opt = {}) {
  t.require_doubly_stochastic("alpha_d");
  const ComplexMatrix c = t.superop().adjoint() * t.superop();
  DiscreteLsResult r;
  r.primitivity = peripheral_spectrum(c);
  if (!r.primitivity.primitive) fail(ErrorCode::NotPrimitiveComposite, "T^*T is not primitive");
  r.alpha2 = detail::alpha2_of_unital_superop(c, t.dim(), method, opt);
  r.alpha_d = detail::halve_to_alpha_d(r.alpha2);
  return r;
}

struct PauliAlphaD {
  LsEstimate estimate;
  std::array<double, 3> composite_q;  // Pauli weights of T^*T = T^2
  double identity_free_formula = 0.0;  // 2 min{p1p2 + p1p3, p2p1 + p2p3, p3p1 + p3p2}
};

/// T^*T for the Pauli channel p is the Pauli channel with
/// q_i = 2(p0 p_i + p_j p_k), so alpha_D = min_{i<j}(q_i + q_j) = 2 min_i (p0 + p_i)(p_j + p_k).
inline PauliAlphaD pauli_alpha_d(const PauliDistribution& p) {
  const auto w = p.full();
  PauliAlphaD r;
  r.composite_q = {2 * (w[0] * w[1] + w[2] * w[3]), 2 * (w[0] * w[2] + w[1] * w[3]), 2 * (w[0] * w[3] + w[1] * w[2])};
  const auto& q = r.composite_q;
  const double v = std::min({q[0] + q[1], q[1] + q[2], q[0] + q[2]});
  r.identity_free_formula = 2 * std::min({w[1] * w[2] + w[1] * w[3], w[2] * w[1] + w[2] * w[3], w[3] * w[1] + w[3] * w[2]});
  r.estimate = LsEstimate::exact(EstimateKind::AlphaD, v, v > kPrimitiveGapTol ? "Pauli composite closed form" : "T^*T not primitive: alpha_D = 0");
  r.estimate.meta["composite_q"] = q;
  r.estimate.meta["identity_free_formula"] = r.identity_free_formula;
  return r;
}

struct DataProcessingReport {
  double d_in = 0.0;        // D(rho||1/d)
  double d_out = 0.0;       // D(T rho||1/d)
  double dirichlet = 0.0;   // E^2_{T^*T - id}((d rho)^{1/2})
  double alpha_d = 0.0;
  double slack_intermediate = 0.0;  // D_in - E - D_out
  double slack_final = 0.0;         // (1 - alpha_D) D_in - D_out
  bool passed(double tol = 1e-9) const { return slack_intermediate >= -tol && slack_final >= -tol; }
};

/// Both D(T rho) <= D(rho) - E^2_{T^*T-id}((d rho)^{1/2}) and D(T rho) <= (1 - alpha_D) D(rho).
inline DataProcessingReport improved_data_processing_check(const QuantumChannel& t, const DensityMatrix& rho, double alpha_d_value) {
  t.require_doubly_stochastic("improved_data_processing_check");
  if (rho.dim() != t.dim()) fail(ErrorCode::DimMismatch, "improved_data_processing_check");
  const auto sd = eig_hermitian(rho.hermitian());
  if (sd.eigenvalues.minCoeff() < kFullRankTol) fail(ErrorCode::Singular, "rho is not full rank");
  const double d = static_cast<double>(t.dim());
  DataProcessingReport r;
  r.alpha_d = alpha_d_value;
  r.d_in = relative_entropy_to_mixed(rho);
  r.d_out = relative_entropy_to_mixed(DensityMatrix(HermitianMatrix::hermitian_part(t.apply(rho.matrix()))));
  const ComplexMatrix x = sd.reconstruct_with((d * sd.eigenvalues.array()).sqrt().matrix());
  const ComplexMatrix tx = t.apply(x);
  // E^2_{T^*T - id}(X) = (1/d)(tr X^2 - tr T(X)^2)
  r.dirichlet = ((x * x).trace().real() - (tx.adjoint() * tx).trace().real()) / d;
  r.slack_intermediate = r.d_in - r.dirichlet - r.d_out;
  r.slack_final = (1.0 - alpha_d_value) * r.d_in - r.d_out;
  return r;
}

inline DataProcessingReport improved_data_processing_check(const QuantumChannel& t, const DensityMatrix& rho) {
  return improved_data_processing_check(t, rho, alpha_d(t).alpha_d.value);
}

struct PowerTrace {
  std::vector<LsEstimate> alpha2;  // alpha_2((T^*)^k T^k - id), k = 1..K
  double max_decrease = 0.0;       // largest alpha2[k-1] - alpha2[k]
  bool monotone(double tol = 1e-3) const { return max_decrease <= tol; }
};

inline constexpr int kMaxPowerTrace = 8;

inline PowerTrace power_monotonicity_check(const QuantumChannel& t, int k_max, AlphaMethod method = AlphaMethod::Auto,
                                           const VariationalOptions& opt = {}) {
  t.require_doubly_stochastic("power_monotonicity_check");
  if (k_max < 1 || k_max > kMaxPowerTrace) fail(ErrorCode::InvalidArgument, "K must be in [1, 8]");
  const Eigen::Index d = t.dim();
  if (!peripheral_spectrum(t.superop().adjoint() * t.superop()).primitive) fail(ErrorCode::NotPrimitive, "T^*T is not primitive");
  PowerTrace r;
  ComplexMatrix tk = ComplexMatrix::Identity(d * d, d * d);
  for (int k = 1; k <= k_max; ++k) {
    tk = t.superop() * tk;
    VariationalOptions o = opt;
    o.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(k));
    auto e = detail::alpha2_of_unital_superop(tk.adjoint() * tk, d, method, o);
    e.meta["power"] = k;
    if (!r.alpha2.empty()) r.max_decrease = std::max(r.max_decrease, r.alpha2.back().value - e.value);
    r.alpha2.push_back(std::move(e));
  }
  return r;
}

struct DiscreteBounds {
  double lambda = 0.0;  // spectral gap of T^*T - id
  LsEstimate lower, upper;
};

/// lambda (1 - 2/d)/log(d - 1) <= alpha_D <= min{lambda/2, (1 - 2/d)/log(d - 1)},
/// with (1 - 2/d)/log(d - 1) read as 1/2 at d = 2.
inline DiscreteBounds discrete_bounds(const QuantumChannel& t) {
  t.require_doubly_stochastic("discrete_bounds");
  const ComplexMatrix c = t.superop().adjoint() * t.superop();
  if (!peripheral_spectrum(c).primitive) fail(ErrorCode::NotPrimitiveComposite, "T^*T is not primitive");
  const Eigen::Index d = t.dim();
  DiscreteBounds b;
  b.lambda = spectral_gap_info(Liouvillian(c - ComplexMatrix::Identity(d * d, d * d))).value;
  const double half_c = 0.5 * ls2_prefactor(d);
  const std::string th = "discrete LS constant dimension bounds";
  b.lower = LsEstimate::bound(EstimateKind::AlphaD, b.lambda * half_c, EstimateMethod::SandwichBound, Direction::Lower, th);
  b.upper = LsEstimate::bound(EstimateKind::AlphaD, std::min(0.5 * b.lambda, half_c), EstimateMethod::SandwichBound, Direction::Upper, th);
  b.lower.meta["lambda"] = b.upper.meta["lambda"] = b.lambda;
  return b;
}

struct DiscreteEntropyReport {
  double entropy_gain = 0.0;  // S(T rho) - S(rho)
  double bound = 0.0;         // lambda (1 - 2/d)/log(d - 1) (log d - S(rho))
  double streater = 0.0;      // (lambda/2) ||rho - 1/d||_2^2
  double slack = 0.0;
  bool passed(double tol = 1e-9) const { return slack >= -tol; }
};

inline DiscreteEntropyReport discrete_entropy_production(const QuantumChannel& t, const DensityMatrix& rho, double lambda) {
  if (rho.dim() != t.dim()) fail(ErrorCode::DimMismatch, "discrete_entropy_production");
  const Eigen::Index d = t.dim();
  DiscreteEntropyReport r;
  const double s = von_neumann_entropy(rho);
  r.entropy_gain = von_neumann_entropy(DensityMatrix(HermitianMatrix::hermitian_part(t.apply(rho.matrix())))) - s;
  r.bound = lambda * 0.5 * ls2_prefactor(d) * (std::log(static_cast<double>(d)) - s);
  const ComplexMatrix dev = rho.matrix() - ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  r.streater = 0.5 * lambda * dev.squaredNorm();
  r.slack = r.entropy_gain - r.bound;
  return r;
}

inline DiscreteEntropyReport discrete_entropy_production(const QuantumChannel& t, const DensityMatrix& rho) {
  return discrete_entropy_production(t, rho, discrete_bounds(t).lambda);
}

/// X^{p} for positive semidefinite X (negative rounding noise clamped to 0).
inline ComplexMatrix psd_power(const ComplexMatrix& x, double p) {
  const auto sd = eig_hermitian(HermitianMatrix::hermitian_part(x));
  return sd.reconstruct_with(sd.eigenvalues.cwiseMax(0.0).array().pow(p).matrix());
}

struct LemmaSample {
  double lemma1_slack = 0.0;  // rhs - lhs of ||X||_q - ||X||_2 <= ((q-2)/q) ||X||_q^{1-q} Ent_2(X^{q/2})
  double lemma2_slack = 0.0;  // rhs - lhs of ||T X||_q^q - ||X||_q^q <= -E^2_{T^*T-id}(X^{q/2})
};

/// Both norm lemmas evaluated with 1/d-weighted norms at one positive X.
inline LemmaSample norm_lemmas_at(const QuantumChannel& t, const ComplexMatrix& x, double q) {
  const double d = static_cast<double>(t.dim());
  const double nq = weighted_lp_norm(x, q), n2 = weighted_lp_norm(x, 2.0);
  const ComplexMatrix y = psd_power(x, q / 2.0);
  const auto sy = eig_hermitian(HermitianMatrix::hermitian_part(y));
  const double ent = entropy_2_of_spectrum(sy.eigenvalues.cwiseMax(0.0));
  const ComplexMatrix ty = t.apply(y);
  const double dirichlet = ((y * y).trace().real() - (ty.adjoint() * ty).trace().real()) / d;
  const double ntq = weighted_lp_norm(t.apply(x), q);
  LemmaSample s;
  s.lemma1_slack = (q - 2.0) / q * std::pow(nq, 1.0 - q) * ent - (nq - n2);
  s.lemma2_slack = -dirichlet - (std::pow(ntq, q) - std::pow(nq, q));
  return s;
}

struct HypercontractivityReport {
  double q = 2.0;
  double alpha_d = 0.0;
  double max_ratio = 0.0;  // sampled/optimized sup of ||T X||_{q,1/d} / ||X||_{2,1/d}; a lower bound on the true norm
  double min_lemma1_slack = kInf;
  double min_lemma2_slack = kInf;
  int samples = 0;
  bool passed(double ratio_tol = 1e-6, double lemma_tol = 1e-9) const {
    return max_ratio <= 1.0 + ratio_tol && min_lemma1_slack >= -lemma_tol && min_lemma2_slack >= -lemma_tol;
  }
};

namespace detail {

/// log ||T(A^dag A)||_q - log ||A^dag A||_2 over the real and imaginary parts of A.
class LogNormRatio {
 public:
  LogNormRatio(const QuantumChannel& t, double q) : s_(t.superop()), adj_(t.superop().adjoint()), q_(q), d_(t.dim()) {}

  double operator()(const double* p, double* grad) const {
    const ComplexMatrix a = unpack(p);
    const ComplexMatrix x = a.adjoint() * a;
    const double x2 = x.squaredNorm();
    if (!(x2 > 1e-300)) return std::numeric_limits<double>::quiet_NaN();
    const auto sy = eig_hermitian(HermitianMatrix::hermitian_part(apply_superop(s_, x)));
    const RealVector ev = sy.eigenvalues.cwiseMax(0.0);
    const double trq = ev.array().pow(q_).sum();
    const double dd = static_cast<double>(d_);
    const double value = std::log(trq) / q_ - 0.5 * std::log(x2) + (0.5 - 1.0 / q_) * std::log(dd);
    if (grad) {
      const ComplexMatrix yq1 = sy.reconstruct_with(ev.array().pow(q_ - 1.0).matrix());
      const ComplexMatrix g = apply_superop(adj_, yq1) / trq - x / x2;
      const ComplexMatrix ag = a * (0.5 * (g + g.adjoint()));
      for (Eigen::Index k = 0; k < d_ * d_; ++k) {
        grad[2 * k] = 2.0 * ag(k).real();
        grad[2 * k + 1] = 2.0 * ag(k).imag();
      }
    }
    return value;
  }

  ComplexMatrix unpack(const double* p) const {
    ComplexMatrix a(d_, d_);
    for (Eigen::Index k = 0; k < d_ * d_; ++k) a(k) = Complex(p[2 * k], p[2 * k + 1]);
    return a;
  }

 private:
  ComplexMatrix s_, adj_;
  double q_;
  Eigen::Index d_;
};

}  // namespace detail

struct NormSearchOptions {
  int restarts = 16;
  int max_iterations = 500;
  int lemma_samples = 200;
  std::uint64_t seed = 0;
};

struct NormRatioResult {
  double ratio = 1.0;  // best ||T X||_{q,1/d} / ||X||_{2,1/d} found; X = 1 gives 1
  ComplexMatrix argmax;
  int iterations = 0;
};

/// Multi-start maximization of ||T X||_{q,1/d}/||X||_{2,1/d} over X = A^dag A.
/// The value is a lower bound on the 2 -> q norm.
inline NormRatioResult max_norm_ratio(const QuantumChannel& t, double q, const NormSearchOptions& opt = {}) {
  const Eigen::Index d = t.dim();
  const detail::LogNormRatio f(t, q);
  const int n = static_cast<int>(2 * d * d);
  const Objective neg = [&f, n](const double* p, double* g) {
    const double v = f(p, g);
    if (g)
      for (int i = 0; i < n; ++i) g[i] = -g[i];
    return -v;
  };
  MultiStartOptions mo;
  mo.restarts = opt.restarts;
  mo.max_iterations = opt.max_iterations;
  mo.seed = opt.seed;
  const auto init = [d](Rng& rng, int restart, double* p) {
    ComplexMatrix a = ginibre(d, d, rng);
    if (restart % 3 == 1) a = a * a.adjoint();
    if (restart % 3 == 2) a = ComplexMatrix::Identity(d, d) + 0.3 * a;
    for (Eigen::Index k = 0; k < d * d; ++k) {
      p[2 * k] = a(k).real();
      p[2 * k + 1] = a(k).imag();
    }
  };
  const auto res = minimize_multistart(n, neg, init, mo);
  NormRatioResult r;
  r.argmax = ComplexMatrix::Identity(d, d);
  r.iterations = res.iterations;
  if (!res.argmin.empty() && std::exp(-res.value) > r.ratio) {
    r.ratio = std::exp(-res.value);
    const ComplexMatrix a = f.unpack(res.argmin.data());
    r.argmax = a.adjoint() * a;
  }
  return r;
}

/// Maximizes the 2 -> q norm ratio and spot-checks both norm lemmas on the
/// maximizer, X = 1 and random positive X.
inline HypercontractivityReport discrete_hypercontractivity_check(const QuantumChannel& t, double q, double alpha_d_value,
                                                                  const NormSearchOptions& opt = {}) {
  t.require_doubly_stochastic("discrete_hypercontractivity_check");
  if (!(q >= 2.0) || q > 2.0 + 2.0 * alpha_d_value + 1e-12) fail(ErrorCode::QOutOfRange, "need 2 <= q <= 2 + 2 alpha_D");
  const Eigen::Index d = t.dim();
  HypercontractivityReport r;
  r.q = q;
  r.alpha_d = alpha_d_value;
  const auto best = max_norm_ratio(t, q, opt);
  r.max_ratio = best.ratio;
  std::vector<ComplexMatrix> xs{best.argmax, ComplexMatrix::Identity(d, d)};
  Rng rng = make_rng(opt.seed, 0);
  for (int i = 0; i < opt.lemma_samples; ++i) xs.push_back(random_positive(d, rng));
  for (const auto& x : xs) {
    const auto s = norm_lemmas_at(t, x, q);
    const double nq = weighted_lp_norm(x, q);
    r.min_lemma1_slack = std::min(r.min_lemma1_slack, s.lemma1_slack / std::max(1.0, nq));
    r.min_lemma2_slack = std::min(r.min_lemma2_slack, s.lemma2_slack / std::max(1.0, std::pow(nq, q)));
    r.max_ratio = std::max(r.max_ratio, weighted_lp_norm(t.apply(x), q) / weighted_lp_norm(x, 2.0));
  }
  r.samples = static_cast<int>(xs.size());
  return r;
}

}  // namespace qls
