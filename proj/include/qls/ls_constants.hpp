#pragma once

// Spectral gaps, LS-1 and LS-2 constants (closed forms, variational upper
// estimates, certified lower bounds), the Dirichlet-form comparison with the
// depolarizing generator, and entropy-production certificates.

#include <json.hpp>

#include <Eigen/QR>

#include <string>
#include <vector>

#include "qls/channels.hpp"
#include "qls/entropy.hpp"
#include "qls/variational.hpp"

namespace qls {

enum class EstimateKind { Alpha1, Alpha2, Gap, AlphaD };
enum class EstimateMethod { ClosedForm, Variational, SandwichBound, SnapshotBound, TensorBound };
enum class Direction { Exact, Upper, Lower };

inline const char* to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::Alpha1: return "alpha1";
    case EstimateKind::Alpha2: return "alpha2";
    case EstimateKind::Gap: return "gap";
    case EstimateKind::AlphaD: return "alphaD";
  }
  return "?";
}

inline const char* to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::ClosedForm: return "closed-form";
    case EstimateMethod::Variational: return "variational";
    case EstimateMethod::SandwichBound: return "sandwich-bound";
    case EstimateMethod::SnapshotBound: return "snapshot-bound";
    case EstimateMethod::TensorBound: return "tensor-bound";
  }
  return "?";
}

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::Exact: return "exact";
    case Direction::Upper: return "upper";
    case Direction::Lower: return "lower";
  }
  return "?";
}

struct LsEstimate {
  EstimateKind kind = EstimateKind::Alpha2;
  double value = 0.0;
  EstimateMethod method = EstimateMethod::ClosedForm;
  Direction direction = Direction::Exact;
  nlohmann::json meta = nlohmann::json::object();

  /// Closed-form value; `theorem` names the result it comes from.
  static LsEstimate exact(EstimateKind kind, double value, const std::string& theorem) {
    LsEstimate e{kind, std::max(0.0, value), EstimateMethod::ClosedForm, Direction::Exact, nlohmann::json::object()};
    e.meta["theorem"] = theorem;
    return e;
  }
  static LsEstimate bound(EstimateKind kind, double value, EstimateMethod method, Direction dir, const std::string& theorem) {
    LsEstimate e{kind, std::max(0.0, value), method, dir, nlohmann::json::object()};
    e.meta["theorem"] = theorem;
    return e;
  }

  nlohmann::json to_json() const {
    return {{"kind", to_string(kind)}, {"value", value}, {"method", to_string(method)}, {"direction", to_string(direction)}, {"meta", meta}};
  }
};

inline constexpr double kPrimitiveGapTol = 1e-10;

/// c(d) = 2(1 - 2/d)/log(d - 1), extended by continuity to c(2) = 1.
inline double ls2_prefactor(Eigen::Index d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "d >= 2 required");
  if (d == 2) return 1.0;
  const double x = static_cast<double>(d);
  return 2.0 * (1.0 - 2.0 / x) / std::log(x - 1.0);
}

/// Orthonormal basis of the complement of vec(1) in C^{d^2}.
inline ComplexMatrix traceless_basis(Eigen::Index d) {
  const ComplexVector one = vec(ComplexMatrix::Identity(d, d)) / std::sqrt(static_cast<double>(d));
  Eigen::HouseholderQR<ComplexMatrix> qr(one);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d * d, d * d);
  return q.rightCols(d * d - 1);
}

struct GapInfo {
  double value = 0.0;
  ComplexMatrix eigenvector;  // Hermitian, traceless, unit Hilbert-Schmidt norm
};

/// Smallest eigenvalue of -(L + L^*)/2 on traceless operators.
inline GapInfo spectral_gap_info(const Liouvillian& l) {
  l.require_doubly_stochastic("spectral_gap");
  const Eigen::Index d = l.dim();
  const ComplexMatrix q = traceless_basis(d);
  const ComplexMatrix neg = -0.5 * (l.superop() + l.superop().adjoint());
  const ComplexMatrix r = q.adjoint() * neg * q;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (r + r.adjoint()));
  GapInfo out;
  out.value = std::max(0.0, es.eigenvalues()(0));
  const ComplexMatrix m = unvec(q * es.eigenvectors().col(0), d);
  ComplexMatrix y = 0.5 * (m + m.adjoint());
  if (y.norm() < 1e-6) y = Complex(0.0, -0.5) * (m - m.adjoint());
  out.eigenvector = y / y.norm();
  return out;
}

inline LsEstimate spectral_gap(const Liouvillian& l) {
  return LsEstimate::exact(EstimateKind::Gap, spectral_gap_info(l).value, "spectral gap of the symmetrized generator");
}

/// Largest |eigenvalue| of the superoperator (L + L^*)/2.
inline double symmetrized_norm(const Liouvillian& l) {
  const ComplexMatrix s = 0.5 * (l.superop() + l.superop().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct VariationalOptions {
  int restarts = 32;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
};

namespace detail {

inline LsEstimate not_primitive_estimate(EstimateKind kind, double gap) {
  auto e = LsEstimate::exact(kind, 0.0, "a non-primitive generator has a second invariant state");
  e.meta["lambda"] = gap;
  return e;
}

// Restart 0 starts near the gap direction, the rest from random Hermitian
// matrices of varying scale.
inline Initializer hermitian_starts(Eigen::Index d, const ComplexMatrix& gap_vector) {
  return [d, gap_vector](Rng& rng, int restart, double* x) {
    ComplexMatrix h;
    if (restart == 0) {
      h = 0.5 * std::sqrt(static_cast<double>(d)) * gap_vector;
    } else {
      static constexpr double kScales[] = {0.3, 1.0, 2.5, 6.0};
      const double scale = kScales[static_cast<std::size_t>(restart) % 4] * (0.5 + uniform01(rng));
      h = scale * random_hermitian(d, rng).matrix() / std::sqrt(2.0 * static_cast<double>(d));
    }
    params_from_hermitian(0.5 * (h + h.adjoint()), x);
  };
}

inline LsEstimate run_variational(EstimateKind kind, const Objective& f, Eigen::Index d, const GapInfo& gap,
                                  const VariationalOptions& opt) {
  MultiStartOptions mo;
  mo.restarts = std::max(1, opt.restarts);
  mo.max_iterations = opt.max_iterations;
  mo.seed = opt.seed;
  mo.threads = opt.threads;
  const auto res = minimize_multistart(hermitian_param_count(d), f, hermitian_starts(d, gap.eigenvector), mo);
  LsEstimate e;
  e.kind = kind;
  e.method = EstimateMethod::Variational;
  e.direction = Direction::Upper;
  e.value = std::max(0.0, std::min(res.value, gap.value));
  e.meta["optimizer_value"] = std::isfinite(res.value) ? nlohmann::json(res.value) : nlohmann::json(nullptr);
  e.meta["lambda"] = gap.value;
  e.meta["gap_limit_used"] = !(res.value < gap.value);
  e.meta["restarts"] = res.restarts;
  e.meta["iterations"] = res.iterations;
  e.meta["best_restart"] = res.best_restart;
  e.meta["seed"] = opt.seed;
  return e;
}

}  // namespace detail

/// Upper estimate of alpha_2 from feasible points X = exp(H); the ratio tends
/// to lambda along X = 1 + eps Y_gap, so lambda itself is also feasible.
inline LsEstimate alpha2_variational(const Liouvillian& l, const VariationalOptions& opt = {}) {
  const GapInfo gap = spectral_gap_info(l);
  if (gap.value <= kPrimitiveGapTol) return detail::not_primitive_estimate(EstimateKind::Alpha2, gap.value);
  const Ls2Ratio ratio(0.5 * (l.superop() + l.superop().adjoint()));
  return detail::run_variational(EstimateKind::Alpha2, std::cref(ratio), l.dim(), gap, opt);
}

inline LsEstimate alpha1_variational(const Liouvillian& l, const VariationalOptions& opt = {}) {
  const GapInfo gap = spectral_gap_info(l);
  if (gap.value <= kPrimitiveGapTol) return detail::not_primitive_estimate(EstimateKind::Alpha1, gap.value);
  const Ls1Ratio ratio(l.superop());
  return detail::run_variational(EstimateKind::Alpha1, std::cref(ratio), l.dim(), gap, opt);
}

struct SandwichBounds {
  bool reversible = false;
  double lambda = 0.0;
  LsEstimate alpha2_lower, alpha2_upper, alpha1_lower, alpha1_upper;
};

/// Reversible: lambda c(d) <= alpha_2 <= alpha_1 <= lambda.
/// Otherwise: lambda c(d)/2 <= alpha_2/2 <= alpha_1 <= lambda, and alpha_2 <= lambda.
inline SandwichBounds sandwich_bounds(const Liouvillian& l) {
  SandwichBounds b;
  b.lambda = spectral_gap_info(l).value;
  b.reversible = l.is_reversible();
  const double c = ls2_prefactor(l.dim());
  const std::string th = "gap / LS constant sandwich";
  b.alpha2_lower = LsEstimate::bound(EstimateKind::Alpha2, b.lambda * c, EstimateMethod::SandwichBound, Direction::Lower, th);
  b.alpha2_upper = LsEstimate::bound(EstimateKind::Alpha2, b.lambda, EstimateMethod::SandwichBound, Direction::Upper, th);
  b.alpha1_lower = LsEstimate::bound(EstimateKind::Alpha1, b.reversible ? b.lambda * c : 0.5 * b.lambda * c,
                                     EstimateMethod::SandwichBound, Direction::Lower, th);
  b.alpha1_upper = LsEstimate::bound(EstimateKind::Alpha1, b.lambda, EstimateMethod::SandwichBound, Direction::Upper, th);
  for (auto* e : {&b.alpha2_lower, &b.alpha2_upper, &b.alpha1_lower, &b.alpha1_upper}) {
    e->meta["reversible"] = b.reversible;
    e->meta["lambda"] = b.lambda;
  }
  return b;
}

namespace detail {

struct QubitForms {
  double lambda_max_sym;  // largest eigenvalue of (T^ + T^T)/2
  double norm_sym;        // operator norm of (T^ + T^T)/2
};

inline QubitForms qubit_forms(const QuantumChannel& t) {
  const BlochMatrix b = bloch_matrix(t);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(b.symmetric_part());
  return {es.eigenvalues().maxCoeff(), es.eigenvalues().cwiseAbs().maxCoeff()};
}

inline double require_primitive_qubit(const QuantumChannel& t, const QubitForms& f) {
  const double gap = 1.0 - f.lambda_max_sym;
  if (gap <= kPrimitiveGapTol) fail(ErrorCode::NotPrimitive, "T - id is not primitive");
  return gap;
}

}  // namespace detail

/// alpha_2(T - id) = 1 - lambda_max((T^ + T^T)/2) for a unital qubit channel.
inline LsEstimate alpha2_qubit(const QuantumChannel& t) {
  if (t.dim() != 2) fail(ErrorCode::NotQubit, "alpha2_qubit");
  const auto f = detail::qubit_forms(t);
  const double v = detail::require_primitive_qubit(t, f);
  auto e = LsEstimate::exact(EstimateKind::Alpha2, v, "qubit LS-2 closed form: 1 - sup_x <x, T^ x>");
  e.meta["operator_norm_form"] = 1.0 - f.norm_sym;
  return e;
}

/// alpha_1(T - id) = 1 - sup_{|x|=1} <x, T^ x>; equals alpha2_qubit.
inline LsEstimate alpha1_qubit(const QuantumChannel& t) {
  if (t.dim() != 2) fail(ErrorCode::NotQubit, "alpha1_qubit");
  const auto f = detail::qubit_forms(t);
  const double v = detail::require_primitive_qubit(t, f);
  auto e = LsEstimate::exact(EstimateKind::Alpha1, v, "qubit LS-1 closed form: 1 - sup_x <x, T^ x>");
  e.meta["absolute_value_form"] = 1.0 - f.norm_sym;
  return e;
}

/// alpha_2 of X -> tr(X) 1/d - X.
inline LsEstimate alpha2_depolarizing(Eigen::Index d) {
  return LsEstimate::exact(EstimateKind::Alpha2, ls2_prefactor(d), "LS-2 constant of the depolarizing generator");
}

/// (1 - 2/d^2)/(log 3 log(d^2 - 1) + 2(1 - 2/d^2)).
inline double tensor_bound_factor(Eigen::Index d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "d >= 2 required");
  const double x = static_cast<double>(d);
  const double a = 1.0 - 2.0 / (x * x);
  return a / (std::log(3.0) * std::log(x * x - 1.0) + 2.0 * a);
}

inline LsEstimate depolarizing_tensor_bound(Eigen::Index d) {
  auto e = LsEstimate::bound(EstimateKind::Alpha2, tensor_bound_factor(d), EstimateMethod::TensorBound, Direction::Lower,
                             "tensor-stable LS-2 lower bound via the depolarizing comparison");
  e.meta["d"] = d;
  return e;
}

/// Lower bound on alpha_2(L^{(n)}) for every n. For d = 2 the exact
/// tensor-stable value lambda is reported unless the override is disabled.
inline LsEstimate tensor_lower_bound(const Liouvillian& l, bool qubit_override = true) {
  const double lambda = spectral_gap_info(l).value;
  if (lambda <= kPrimitiveGapTol) fail(ErrorCode::NotPrimitive, "tensor_lower_bound");
  const Eigen::Index d = l.dim();
  LsEstimate e;
  if (d == 2 && qubit_override) {
    e = LsEstimate::exact(EstimateKind::Alpha2, lambda, "qubit LS-2 constant is tensor stable and equals lambda");
  } else {
    e = LsEstimate::bound(EstimateKind::Alpha2, lambda * tensor_bound_factor(d), EstimateMethod::TensorBound, Direction::Lower,
                          "tensor-stable LS-2 lower bound via the depolarizing comparison");
  }
  e.meta["lambda"] = lambda;
  e.meta["formula_value"] = lambda * tensor_bound_factor(d);
  e.meta["companion_upper"] = symmetrized_norm(l) * ls2_prefactor(d);
  return e;
}

/// lambda / (4 lambda t0 + 2), valid once ||T_{t0}||_{2->4} <= 1 is certified.
inline double snapshot_bound_value(double lambda, double t0) {
  if (!(t0 > 0)) fail(ErrorCode::InvalidArgument, "t0 must be positive");
  return lambda / (4.0 * lambda * t0 + 2.0);
}

inline LsEstimate snapshot_bound(const Liouvillian& l, double t0) {
  if (!l.is_reversible()) fail(ErrorCode::NotReversible, "snapshot_bound needs L = L^*");
  const double lambda = spectral_gap_info(l).value;
  auto e = LsEstimate::bound(EstimateKind::Alpha2, snapshot_bound_value(lambda, t0), EstimateMethod::SnapshotBound,
                             Direction::Lower, "LS-2 from a single 2->4 hypercontractive snapshot");
  e.meta["lambda"] = lambda;
  e.meta["t0"] = t0;
  return e;
}

struct ComparisonReport {
  int n = 1;
  int samples = 0;
  double lambda = 0.0;
  double norm = 0.0;
  double max_lower_violation = 0.0;  // relative, for lambda E_dep <= E_L
  double max_upper_violation = 0.0;  // relative, for E_L <= ||L_s|| E_dep
  bool passed(double tol = 1e-9) const { return max_lower_violation <= tol && max_upper_violation <= tol; }
};

/// Checks lambda E^2_{L_dep^{(n)}}(X) <= E^2_{L^{(n)}}(X) <= ||(L+L^*)/2|| E^2_{L_dep^{(n)}}(X)
/// on random positive X.
inline ComparisonReport comparison_check(const Liouvillian& l, int n, int samples, std::uint64_t seed) {
  const Eigen::Index d = l.dim();
  const Liouvillian ln = tensor_power_generator(l, n);
  const Liouvillian dn = tensor_power_generator(depolarizing_liouvillian(d), n);
  ComparisonReport r;
  r.n = n;
  r.samples = samples;
  r.lambda = spectral_gap_info(l).value;
  r.norm = symmetrized_norm(l);
  const Eigen::Index big = ln.dim();
  const ComplexMatrix sl = -0.5 * (ln.superop() + ln.superop().adjoint()) / static_cast<double>(big);
  const ComplexMatrix sd = -0.5 * (dn.superop() + dn.superop().adjoint()) / static_cast<double>(big);
  Rng rng = make_rng(seed);
  for (int i = 0; i < samples; ++i) {
    const ComplexVector x = vec(random_positive(big, rng));
    const double el = (x.adjoint() * sl * x)(0, 0).real();
    const double ed = (x.adjoint() * sd * x)(0, 0).real();
    const double scale = std::max({std::abs(el), r.norm * std::abs(ed), 1e-14 * x.squaredNorm() / static_cast<double>(big)});
    r.max_lower_violation = std::max(r.max_lower_violation, (r.lambda * ed - el) / scale);
    r.max_upper_violation = std::max(r.max_upper_violation, (el - r.norm * ed) / scale);
  }
  return r;
}

struct CurveRow {
  double t, entropy, bound, slack;
};

struct EntropyCurve {
  double rate = 0.0;  // exponent factor: bound = S0 + (1 - e^{-rate t})(log d - S0)
  std::vector<CurveRow> rows;
  double min_slack() const {
    double m = kInf;
    for (const auto& r : rows) m = std::min(m, r.slack);
    return m;
  }
};

inline constexpr double kCurveTol = 1e-8;

/// Exponent factor for the entropy certificate: 2 alpha for alpha_1 and for
/// alpha_2 of a reversible generator, alpha otherwise.
inline double curve_rate(const Liouvillian& l, const LsEstimate& alpha) {
  if (alpha.kind != EstimateKind::Alpha1 && alpha.kind != EstimateKind::Alpha2) {
    fail(ErrorCode::InvalidArgument, "entropy certificate needs an alpha1 or alpha2 estimate");
  }
  if (alpha.direction == Direction::Upper) fail(ErrorCode::InvalidArgument, "an upper estimate does not certify entropy production");
  const bool doubled = alpha.kind == EstimateKind::Alpha1 || l.is_reversible();
  return (doubled ? 2.0 : 1.0) * alpha.value;
}

inline EntropyCurve entropy_production_curve(const Liouvillian& l, const DensityMatrix& rho0, const std::vector<double>& ts,
                                             const LsEstimate& alpha, bool enforce = true) {
  if (rho0.dim() != l.dim()) fail(ErrorCode::DimMismatch, "entropy_production_curve");
  EntropyCurve c;
  c.rate = curve_rate(l, alpha);
  const double s0 = von_neumann_entropy(rho0);
  const double logd = std::log(static_cast<double>(l.dim()));
  for (double t : ts) {
    if (!(t >= 0)) fail(ErrorCode::InvalidArgument, "negative time");
    const ComplexMatrix rt = t == 0 ? rho0.matrix() : apply_superop(expm(t * l.superop()), rho0.matrix());
    const double s = von_neumann_entropy(DensityMatrix(HermitianMatrix::hermitian_part(rt)));
    const double bound = t == 0 ? s0 : s0 + (1.0 - std::exp(-c.rate * t)) * (logd - s0);
    c.rows.push_back({t, s, bound, s - bound});
    if (enforce && s - bound < -kCurveTol) {
      fail(ErrorCode::BoundViolation, "entropy below certificate at t = " + std::to_string(t));
    }
  }
  return c;
}

}  // namespace qls
