#pragma once

// Property-based verification suites. Each suite draws seeded random
// instances, evaluates the claimed inequalities and keeps the largest
// violation per check; a check passes iff that violation is within tolerance.

#include <chrono>
#include <functional>
#include <map>

#include "qls/discrete_ls.hpp"
#include "qls/group_hyper.hpp"
#include "qls/io.hpp"
#include "qls/parallel.hpp"

namespace qls {

struct CheckResult {
  std::string claim;
  std::string anchor;
  double tolerance = 0.0;
  double max_violation = -kInf;
  long evaluations = 0;
  bool passed() const { return evaluations > 0 && max_violation <= tolerance; }

  void add(double violation) {
    ++evaluations;
    // NaN counts as an unbounded violation
    max_violation = std::isnan(violation) ? kInf : std::max(max_violation, violation);
  }
  void merge(const CheckResult& o) {
    evaluations += o.evaluations;
    max_violation = std::max(max_violation, o.max_violation);
  }
  json to_json() const {
    return {{"claim", claim},
            {"anchor", anchor},
            {"max_violation", std::isfinite(max_violation) ? json(max_violation) : json(max_violation > 0 ? "inf" : "-inf")},
            {"tolerance", tolerance},
            {"evaluations", evaluations},
            {"passed", passed()}};
  }
};

struct VerificationReport {
  std::string suite;
  std::string anchor;
  int instances = 0;
  int skipped = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  json info = json::object();
  double wall_seconds = 0.0;  // not serialized

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
  }
  const CheckResult& check(const std::string& claim) const {
    for (const auto& c : checks)
      if (c.claim == claim) return c;
    fail(ErrorCode::InvalidArgument, "no check named " + claim);
  }
  json to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back(c.to_json());
    return {{"suite", suite}, {"anchor", anchor}, {"instances", instances}, {"skipped", skipped},
            {"seed", seed},   {"checks", cs},     {"info", info},           {"passed", passed()}};
  }
};

struct VerifyOptions {
  std::vector<Eigen::Index> dims{2, 3, 4};
  int instances = 100;
  std::uint64_t seed = 7;
  int threads = default_threads();
  int restarts = 8;               // variational restarts per estimate
  int samples = 10000;            // random X per comparison instance
  int states_per_channel = 50;    // data-processing pairs share channels in blocks
};

namespace detail {

/// Per-instance partial result: one CheckResult per claim, in suite order.
struct Partial {
  std::vector<CheckResult> checks;
  int skipped = 0;
  json info = json::object();
};

inline std::vector<CheckResult> make_checks(const std::vector<std::tuple<std::string, std::string, double>>& claims) {
  std::vector<CheckResult> out;
  for (const auto& [claim, anchor, tol] : claims) out.push_back({claim, anchor, tol});
  return out;
}

inline VerificationReport gather(std::string suite, std::string anchor, const VerifyOptions& opt, std::vector<CheckResult> checks,
                                 const std::vector<Partial>& parts) {
  VerificationReport r{std::move(suite), std::move(anchor), static_cast<int>(parts.size()), 0, opt.seed, std::move(checks)};
  for (const auto& p : parts) {
    r.skipped += p.skipped;
    for (std::size_t k = 0; k < r.checks.size(); ++k) r.checks[k].merge(p.checks[k]);
  }
  return r;
}

inline VariationalOptions variational(const VerifyOptions& opt, std::uint64_t seed) {
  VariationalOptions v;
  v.restarts = opt.restarts;
  v.max_iterations = 500;
  v.seed = seed;
  return v;
}

inline std::uint64_t instance_seed(const VerifyOptions& opt, std::uint64_t suite_tag, std::size_t i) {
  return derive_seed(derive_seed(opt.seed, suite_tag), i);
}

/// Random doubly stochastic channel with a primitive T^*T (three unitaries suffice generically).
inline QuantumChannel primitive_channel(Eigen::Index d, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto t = random_doubly_stochastic_channel(d, 3, derive_seed(seed, attempt));
    if (peripheral_spectrum(t.superop().adjoint() * t.superop()).primitive) return t;
  }
}

inline DensityMatrix full_rank_density(Eigen::Index d, Rng& rng) {
  for (;;) {
    auto rho = random_density(d, rng);
    if (eig_hermitian(rho.hermitian()).eigenvalues.minCoeff() > 1e-8) return rho;
  }
}

/// Instance i of a sweep over dims: (dimension, index within that dimension).
inline std::pair<Eigen::Index, std::size_t> split_dims(const std::vector<Eigen::Index>& dims, std::size_t per_dim, std::size_t i) {
  return {dims[i / per_dim], i % per_dim};
}

inline std::vector<Eigen::Index> dims_within(const std::vector<Eigen::Index>& dims, Eigen::Index lo, Eigen::Index hi) {
  std::vector<Eigen::Index> out;
  for (auto d : dims)
    if (d >= lo && d <= hi) out.push_back(d);
  return out;
}

}  // namespace detail

/// alpha_2 and alpha_1 of T - id for qubit T against the variational estimate.
inline VerificationReport verify_qubit_closed_forms(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"alpha2_closed_form_matches_variational", "qubit LS-2 closed form", 1e-3},
                                         {"alpha1_closed_form_matches_variational", "qubit LS-1 closed form", 1e-3}});
  const auto parts = parallel_map(
      static_cast<std::size_t>(opt.instances),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto seed = detail::instance_seed(opt, 1, i);
        const auto t = random_doubly_stochastic_channel(2, 3, seed);
        if (!is_primitive(t).primitive) {
          p.skipped = 1;
          return p;
        }
        const auto l = Liouvillian::generator_of(t, 1.0);
        const auto v = detail::variational(opt, seed);
        p.checks[0].add(std::abs(alpha2_qubit(t).value - alpha2_variational(l, v).value));
        p.checks[1].add(std::abs(alpha1_qubit(t).value - alpha1_variational(l, v).value));
        return p;
      },
      opt.threads);
  return detail::gather("qubit-closed-forms", "qubit LS constants equal 1 - lambda_max of the symmetrized Bloch matrix", opt, claims,
                        parts);
}

/// Variational alpha_2(L_dep(d)) against 2(1 - 2/d)/log(d - 1), and 1 at d = 2.
inline VerificationReport verify_depolarizing_anchor(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"alpha2_depolarizing_matches_formula", "LS-2 constant of the depolarizing generator", 1e-3}});
  const auto parts = parallel_map(
      opt.dims.size(),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto d = opt.dims[i];
        VariationalOptions v = detail::variational(opt, detail::instance_seed(opt, 2, i));
        v.restarts = std::max(v.restarts, 16);
        v.max_iterations = 2000;
        const double est = alpha2_variational(depolarizing_liouvillian(d), v).value;
        p.checks[0].add(std::abs(est - ls2_prefactor(d)));
        p.info[std::to_string(d)] = {{"variational", est}, {"formula", ls2_prefactor(d)}};
        return p;
      },
      opt.threads);
  auto r = detail::gather("depolarizing-anchor", "LS-2 constant of the depolarizing generator", opt, claims, parts);
  for (const auto& p : parts) r.info.update(p.info);
  return r;
}

/// lambda c(d) <= alpha estimates <= lambda on random reversible generators.
inline VerificationReport verify_sandwich(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"alpha2_at_least_lambda_c", "gap / LS constant sandwich", 1e-9},
                                         {"alpha2_at_most_lambda", "gap / LS constant sandwich", 1e-9},
                                         {"alpha1_at_least_lambda_c", "gap / LS constant sandwich", 1e-9},
                                         {"alpha1_at_most_lambda", "gap / LS constant sandwich", 1e-9}});
  const auto per = static_cast<std::size_t>(opt.instances);
  const auto parts = parallel_map(
      per * opt.dims.size(),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto [d, k] = detail::split_dims(opt.dims, per, i);
        const auto seed = detail::instance_seed(opt, 3, i);
        const auto l = random_reversible_liouvillian(d, 3, seed, 1.0);
        const auto b = sandwich_bounds(l);
        if (b.lambda <= kPrimitiveGapTol) {
          p.skipped = 1;
          return p;
        }
        const auto v = detail::variational(opt, seed);
        const double a2 = alpha2_variational(l, v).value, a1 = alpha1_variational(l, v).value;
        p.checks[0].add(b.alpha2_lower.value - a2);
        p.checks[1].add(a2 - b.lambda);
        p.checks[2].add(b.alpha1_lower.value - a1);
        p.checks[3].add(a1 - b.lambda);
        return p;
      },
      opt.threads);
  return detail::gather("sandwich", "lambda c(d) <= alpha_2 <= alpha_1 <= lambda", opt, claims, parts);
}

/// lambda E_dep <= E_L <= ||L_s|| E_dep for tensor powers n = 1, 2 (d <= 3).
inline VerificationReport verify_comparison(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"dirichlet_lower_comparison", "Dirichlet form comparison with the depolarizing generator", 1e-9},
                                         {"dirichlet_upper_comparison", "Dirichlet form comparison with the depolarizing generator", 1e-9}});
  const auto dims = detail::dims_within(opt.dims, 2, 3);
  const std::size_t per = static_cast<std::size_t>(std::max(1, opt.instances / 100));
  const auto parts = parallel_map(
      per * dims.size() * 2,
      [&](std::size_t i) {
        detail::Partial p{claims};
        const int n = 1 + static_cast<int>(i % 2);
        const auto [d, k] = detail::split_dims(dims, per, i / 2);
        const auto seed = detail::instance_seed(opt, 4, i);
        const auto l = k % 2 == 0 ? random_reversible_liouvillian(d, 3, seed, 1.0) : random_lindblad_liouvillian(d, 2, seed);
        const auto c = comparison_check(l, n, opt.samples, seed);
        p.checks[0].add(c.max_lower_violation);
        p.checks[1].add(c.max_upper_violation);
        return p;
      },
      opt.threads);
  auto r = detail::gather("comparison", "Dirichlet form comparison with the depolarizing generator", opt, claims, parts);
  r.info["samples_per_instance"] = opt.samples;
  return r;
}

/// snapshot(lambda = 1, t0(d)) = tensor bound factor; tensor bound below alpha_2 estimates.
inline VerificationReport verify_tensor_bound_chain(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"snapshot_equals_tensor_factor", "tensor-stable bound from the 2->4 snapshot", 1e-12},
                                         {"qubit_tensor_factor_value", "tensor-stable bound from the 2->4 snapshot", 1e-4},
                                         {"tensor_bound_below_alpha2", "tensor-stable LS-2 lower bound", 1e-9}});
  const auto per = static_cast<std::size_t>(std::max(1, opt.instances / 10));
  const auto parts = parallel_map(
      per * opt.dims.size(),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto [d, k] = detail::split_dims(opt.dims, per, i);
        const auto seed = detail::instance_seed(opt, 5, i);
        const auto l = random_reversible_liouvillian(d, 3, seed, 1.0);
        const double lower = tensor_lower_bound(l).value;
        const auto v = detail::variational(opt, seed);
        p.checks[2].add(lower - alpha2_variational(l, v).value);
        if (d == 2) p.checks[2].add(lower - alpha2_variational(tensor_power_generator(l, 2), v).value);
        return p;
      },
      opt.threads);
  auto r = detail::gather("tensor-bound-chain", "tensor-stable LS-2 lower bound", opt, claims, parts);
  for (Eigen::Index d = 2; d <= 8; ++d) {
    r.checks[0].add(std::abs(snapshot_bound_value(1.0, t0_depolarizing(d)) - depolarizing_tensor_bound(d).value));
  }
  r.checks[1].add(std::abs(depolarizing_tensor_bound(2).value - 0.22656));
  r.info["qubit_factor"] = depolarizing_tensor_bound(2).value;
  return r;
}

/// 2 -> 4 norms of the depolarizing tensor powers at t0 and on a (t, n) grid.
inline VerificationReport verify_hypercontractivity(const VerifyOptions& opt) {
  auto checks = detail::make_checks({{"quantum_2to4_at_t0_at_most_1", "2->4 contractivity of the depolarizing semigroup at t0", 1e-6},
                                     {"classical_2to4_at_t0_at_most_1", "complete-graph hypercontractivity at t0", 1e-6},
                                     {"quantum_at_most_classical", "quantum 2->4 norm bounded by the classical semigroup", 1e-6}});
  const double t0 = t0_depolarizing(2);
  const std::vector<double> ts{0.0, 0.25 * t0, 0.5 * t0, t0, 1.5 * t0};
  struct Cell {
    double t;
    int n;
  };
  std::vector<Cell> cells;
  for (int n : {1, 2})
    for (double t : ts) cells.push_back({t, n});
  const auto basis = weyl_basis(2);
  const auto l = depolarizing_liouvillian(2);
  const auto results = parallel_map(
      cells.size(),
      [&](std::size_t i) {
        NormSearchOptions no;
        no.restarts = std::max(16, opt.restarts);
        no.seed = detail::instance_seed(opt, 6, i);
        return quantum_2to4_bound(l, basis, cells[i].t, cells[i].n, no);
      },
      opt.threads);
  json grid = json::array();
  for (const auto& h : results) {
    if (h.t == t0) {
      checks[0].add(h.quantum - 1.0);
      checks[1].add(h.classical - 1.0);
    }
    checks[2].add(h.quantum - h.classical);
    grid.push_back({{"t", h.t}, {"n", h.n}, {"quantum", h.quantum}, {"classical", h.classical}});
  }
  VerificationReport r{"hypercontractivity", "2->4 norms through the almost commuting Weyl basis", static_cast<int>(cells.size()),
                       0, opt.seed, std::move(checks)};
  r.info["t0"] = t0;
  r.info["grid"] = grid;
  return r;
}

/// Both one-step entropy contraction inequalities on random (T, rho).
inline VerificationReport verify_improved_data_processing(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"intermediate_inequality", "D(T rho) <= D(rho) - E_{T*T-id}((d rho)^{1/2})", 1e-9},
                                         {"final_inequality", "D(T rho) <= (1 - alpha_D) D(rho)", 1e-9}});
  const int block = std::max(1, opt.states_per_channel);
  const auto channels = static_cast<std::size_t>((opt.instances + block - 1) / block);
  const auto parts = parallel_map(
      channels * opt.dims.size(),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto [d, k] = detail::split_dims(opt.dims, channels, i);
        const auto seed = detail::instance_seed(opt, 7, i);
        const auto t = detail::primitive_channel(d, seed);
        const double ad = alpha_d(t, AlphaMethod::Auto, detail::variational(opt, seed)).alpha_d.value;
        Rng rng = make_rng(seed, 1);
        const int states = std::min<int>(block, opt.instances - static_cast<int>(k) * block);
        for (int s = 0; s < states; ++s) {
          const auto rep = improved_data_processing_check(t, detail::full_rank_density(d, rng), ad);
          p.checks[0].add(-rep.slack_intermediate);
          p.checks[1].add(-rep.slack_final);
        }
        return p;
      },
      opt.threads);
  auto r = detail::gather("improved-data-processing", "one-step relative entropy contraction by alpha_D", opt, claims, parts);
  r.info["pairs_per_dim"] = opt.instances;
  r.info["alpha_d_source"] = "closed form when available, else variational (upper estimate)";
  return r;
}

/// Pauli alpha_2 closed form and alpha_D of the Kraus composite.
inline VerificationReport verify_pauli(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"alpha2_pauli_matches_variational", "Pauli LS-2 closed form", 1e-3},
                                         {"pauli_alpha_d_matches_composition", "alpha_D of the Pauli composite", 1e-10},
                                         {"identity_free_formula_not_above_alpha_d", "alpha_D of the Pauli composite", 1e-12}});
  const auto parts = parallel_map(
      static_cast<std::size_t>(opt.instances),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto seed = detail::instance_seed(opt, 8, i);
        Rng rng = make_rng(seed);
        const auto w = dirichlet_uniform(4, rng);
        const PauliDistribution pd(w[1], w[2], w[3]);
        const auto t = random_pauli_channel(pd);
        const double closed = 2.0 * std::min({pd.p1 + pd.p2, pd.p2 + pd.p3, pd.p3 + pd.p1});
        const auto l = Liouvillian::generator_of(t, 1.0);
        p.checks[0].add(std::abs(alpha2_variational(l, detail::variational(opt, seed)).value - closed));
        const auto pa = pauli_alpha_d(pd);
        const auto composed = compose(t.adjoint(), t);
        const double via_kraus = 0.5 * alpha2_qubit(composed).value;
        p.checks[1].add(std::abs(pa.estimate.value - via_kraus));
        p.checks[2].add(pa.identity_free_formula - pa.estimate.value);
        p.info["discrepancy"] = std::abs(pa.identity_free_formula - pa.estimate.value) > 1e-10 ? 1 : 0;
        return p;
      },
      opt.threads);
  auto r = detail::gather("pauli", "closed forms for random Pauli channels", opt, claims, parts);
  int disc = 0;
  for (const auto& p : parts) disc += p.info.value("discrepancy", 0);
  r.info["identity_free_formula_discrepancies"] = disc;
  return r;
}

/// alpha_2((T^*)^k T^k - id) non-decreasing in k, and alpha_D inside its dimension bracket.
inline VerificationReport verify_discrete_monotonicity(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"power_sequence_non_decreasing", "monotonicity of LS-2 constants of channel powers", 1e-3},
                                         {"alpha_d_above_lower_bracket", "discrete LS constant dimension bounds", 1e-9},
                                         {"alpha_d_below_upper_bracket", "discrete LS constant dimension bounds", 1e-9}});
  const auto parts = parallel_map(
      static_cast<std::size_t>(opt.instances),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto d = opt.dims[i % opt.dims.size()];
        const auto seed = detail::instance_seed(opt, 9, i);
        const auto t = detail::primitive_channel(d, seed);
        // consecutive upper estimates are compared, so each needs a converged optimizer
        auto v = detail::variational(opt, seed);
        v.restarts = std::max(v.restarts, 32);
        v.max_iterations = 2000;
        p.checks[0].add(power_monotonicity_check(t, kMaxPowerTrace, AlphaMethod::Auto, v).max_decrease);
        const auto b = discrete_bounds(t);
        const double ad = alpha_d(t, AlphaMethod::Auto, v).alpha_d.value;
        p.checks[1].add(b.lower.value - ad);
        p.checks[2].add(ad - b.upper.value);
        return p;
      },
      opt.threads);
  return detail::gather("discrete-monotonicity", "discrete LS constants of channel powers", opt, claims, parts);
}

/// Entropy along e^{tL} rho above the certified curves; one-step spectral bound; Pinsker.
inline VerificationReport verify_entropy_curves(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"entropy_above_alpha2_curve", "entropy production from a certified LS-2 lower bound", 1e-8},
                                         {"entropy_above_alpha1_curve", "entropy production from a certified LS-1 lower bound", 1e-8},
                                         {"entropy_above_tensor_curve", "entropy production from the tensor-stable bound", 1e-8},
                                         {"discrete_entropy_gain", "one-step entropy gain from the spectral gap of T*T", 1e-9},
                                         {"pinsker", "D(rho||sigma) >= |rho - sigma|_1^2 / 2", 1e-12}});
  std::vector<double> ts;
  for (int k = 0; k <= 30; ++k) ts.push_back(0.1 * k);
  const auto per = static_cast<std::size_t>(opt.instances);
  const auto parts = parallel_map(
      per * opt.dims.size(),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto [d, k] = detail::split_dims(opt.dims, per, i);
        const auto seed = detail::instance_seed(opt, 10, i);
        Rng rng = make_rng(seed, 1);
        const auto l = k % 2 == 0 ? random_reversible_liouvillian(d, 3, seed, 1.0) : random_lindblad_liouvillian(d, 2, seed);
        const auto rho = k % 3 == 0 ? random_density(d, rng, 1) : random_density(d, rng);
        const auto b = sandwich_bounds(l);
        if (b.lambda > kPrimitiveGapTol) {
          p.checks[0].add(-entropy_production_curve(l, rho, ts, b.alpha2_lower, false).min_slack());
          p.checks[1].add(-entropy_production_curve(l, rho, ts, b.alpha1_lower, false).min_slack());
          p.checks[2].add(-entropy_production_curve(l, rho, ts, tensor_lower_bound(l), false).min_slack());
        } else {
          p.skipped = 1;
        }
        const auto t = detail::primitive_channel(d, seed);
        p.checks[3].add(-discrete_entropy_production(t, rho).slack);
        const auto sigma = random_density(d, rng);
        p.checks[4].add(-pinsker_gap(rho, sigma));
        p.checks[4].add(-pinsker_gap(rho, DensityMatrix::maximally_mixed(d)));
        return p;
      },
      opt.threads);
  auto r = detail::gather("entropy-curves", "entropy production certificates", opt, claims, parts);
  r.info["t_grid"] = {{"start", 0.0}, {"stop", 3.0}, {"points", ts.size()}};
  return r;
}

/// ||T X||_{q,1/d} <= ||X||_{2,1/d} for q = 2 + 2 alpha_D (certified lower alpha_D), and the two norm lemmas.
inline VerificationReport verify_discrete_hypercontractivity(const VerifyOptions& opt) {
  const auto claims = detail::make_checks({{"norm_ratio_at_most_1", "discrete hypercontractivity at q = 2 + 2 alpha_D", 1e-6},
                                         {"first_norm_lemma", "q-norm derivative bound", 1e-9},
                                         {"second_norm_lemma", "q-norm convexity bound", 1e-9}});
  const auto dims = detail::dims_within(opt.dims, 2, 4);
  const auto per = static_cast<std::size_t>(std::max(1, opt.instances / 20));
  const auto parts = parallel_map(
      per * dims.size(),
      [&](std::size_t i) {
        detail::Partial p{claims};
        const auto [d, k] = detail::split_dims(dims, per, i);
        const auto seed = detail::instance_seed(opt, 11, i);
        const auto t = detail::primitive_channel(d, seed);
        auto ad = detail::alpha2_closed_form(t.superop().adjoint() * t.superop(), d);
        const double alpha = ad && ad->direction == Direction::Exact ? 0.5 * ad->value : discrete_bounds(t).lower.value;
        NormSearchOptions no;
        no.restarts = std::max(8, opt.restarts);
        no.lemma_samples = 50;
        no.seed = seed;
        const auto h = discrete_hypercontractivity_check(t, 2.0 + 2.0 * alpha, alpha, no);
        p.checks[0].add(h.max_ratio - 1.0);
        p.checks[1].add(-h.min_lemma1_slack);
        p.checks[2].add(-h.min_lemma2_slack);
        return p;
      },
      opt.threads);
  return detail::gather("discrete-hypercontractivity", "discrete hypercontractivity from alpha_D", opt, claims, parts);
}

struct SuiteEntry {
  std::string name;
  std::string claim;
  std::function<VerificationReport(const VerifyOptions&)> run;
};

inline const std::vector<SuiteEntry>& suite_registry() {
  static const std::vector<SuiteEntry> suites{
      {"qubit-closed-forms", "qubit alpha_2 = alpha_1 = 1 - lambda_max((T^ + T^T)/2)", verify_qubit_closed_forms},
      {"depolarizing-anchor", "alpha_2(L_dep(d)) = 2(1 - 2/d)/log(d - 1), and 1 at d = 2", verify_depolarizing_anchor},
      {"sandwich", "lambda c(d) <= alpha_2 <= alpha_1 <= lambda for reversible L", verify_sandwich},
      {"comparison", "lambda E_dep <= E_L <= ||L_s|| E_dep on tensor powers", verify_comparison},
      {"tensor-bound-chain", "snapshot bound at t0 equals the tensor-stable factor", verify_tensor_bound_chain},
      {"hypercontractivity", "||T_t^{(x)n}||_{2->4} <= classical norm; <= 1 at t0", verify_hypercontractivity},
      {"improved-data-processing", "D(T rho) <= (1 - alpha_D) D(rho)", verify_improved_data_processing},
      {"pauli", "alpha_2 = 2 min(p_i + p_j); alpha_D of T*T", verify_pauli},
      {"discrete-monotonicity", "alpha_2 of powers non-decreasing; alpha_D bracket", verify_discrete_monotonicity},
      {"entropy-curves", "S(T_t rho) above certified curves; Pinsker", verify_entropy_curves},
      {"discrete-hypercontractivity", "||T||_{2->q} <= 1 for q = 2 + 2 alpha_D", verify_discrete_hypercontractivity},
  };
  return suites;
}

inline VerificationReport run_suite(const std::string& name, const VerifyOptions& opt) {
  for (const auto& s : suite_registry()) {
    if (s.name == name) {
      const auto start = std::chrono::steady_clock::now();
      auto r = s.run(opt);
      r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown suite " + name);
}

struct CapacityBound {
  Eigen::Index d = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  std::string alpha_source;
  std::vector<double> ts;
  std::vector<double> bounds;  // e^{-2 t alpha} log d

  json to_json() const {
    json rows = json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) rows.push_back({{"t", ts[i]}, {"bound", bounds[i]}});
    return {{"d", d}, {"lambda", lambda}, {"alpha", alpha}, {"alpha_source", alpha_source}, {"rows", rows}};
  }
};

/// Upper bound e^{-2 t alpha(d)} log d on the subdivision capacity of e^{tL}. alpha(d)
/// is the tensor-stable lower bound; for qubits the override uses lambda
/// (reversible) or lambda/2 (non-reversible).
inline CapacityBound capacity_bound(const Liouvillian& l, const std::vector<double>& ts, bool qubit_override = true) {
  l.require_doubly_stochastic("capacity_bound");
  const auto gap = spectral_gap_info(l);
  if (gap.value <= kPrimitiveGapTol) fail(ErrorCode::NotPrimitive, "capacity_bound needs a primitive generator");
  CapacityBound c;
  c.d = l.dim();
  c.lambda = gap.value;
  if (c.d == 2 && qubit_override) {
    const bool rev = l.is_reversible();
    c.alpha = rev ? c.lambda : 0.5 * c.lambda;
    c.alpha_source = rev ? "qubit: alpha_2 = lambda" : "qubit, non-reversible: lambda/2";
  } else {
    c.alpha = c.lambda * tensor_bound_factor(c.d);
    c.alpha_source = "tensor-stable bound lambda (1 - 2/d^2)/(log 3 log(d^2 - 1) + 2(1 - 2/d^2))";
  }
  const double logd = std::log(static_cast<double>(c.d));
  for (double t : ts) {
    if (!(t >= 0)) fail(ErrorCode::InvalidArgument, "negative time");
    c.ts.push_back(t);
    c.bounds.push_back(std::exp(-2.0 * t * c.alpha) * logd);
  }
  return c;
}

}  // namespace qls
