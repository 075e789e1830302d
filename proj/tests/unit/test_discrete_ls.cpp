#include <gtest/gtest.h>

#include "qls/discrete_ls.hpp"

using namespace qls;

namespace {

// Pauli weights of a qubit Pauli channel from its superoperator:
// S = sum_k w_k conj(sigma_k) (x) sigma_k with mutually orthogonal terms of norm^2 4.
std::array<double, 4> pauli_weights_oracle(const ComplexMatrix& s) {
  std::array<double, 4> w{};
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix b = kron(pauli(k).conjugate(), pauli(k));
    w[static_cast<std::size_t>(k)] = (b.adjoint() * s).trace().real() / 4.0;
  }
  return w;
}

PauliDistribution random_pauli(Rng& rng) {
  const auto w = dirichlet_uniform(4, rng);
  return {w[1], w[2], w[3]};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InputError;
}

}  // namespace

TEST(AlphaD, CompletelyDepolarizing) {
  for (int d : {2, 3, 4, 5}) {
    const auto r = alpha_d(QuantumChannel::completely_depolarizing(d), AlphaMethod::ClosedForm);
    const double expect = d == 2 ? 0.5 : (1.0 - 2.0 / d) / std::log(d - 1.0);
    EXPECT_NEAR(r.alpha_d.value, expect, 1e-12) << d;
    EXPECT_EQ(r.alpha_d.value, 0.5 * r.alpha2.value);
    EXPECT_EQ(r.alpha_d.kind, EstimateKind::AlphaD);
    EXPECT_TRUE(r.primitivity.primitive);
  }
}

TEST(AlphaD, VariationalAgreesWithDepolarizingClosedForm) {
  VariationalOptions o;
  o.restarts = 12;
  o.seed = 3;
  const auto v = alpha_d(QuantumChannel::completely_depolarizing(3), AlphaMethod::Variational, o);
  EXPECT_EQ(v.alpha_d.direction, Direction::Upper);
  EXPECT_NEAR(v.alpha_d.value, 0.5 * ls2_prefactor(3), 1e-3);
}

TEST(AlphaD, UnitaryIsNotPrimitiveComposite) {
  Rng rng = make_rng(1);
  const auto u = QuantumChannel::unitary(haar_unitary(3, rng));
  EXPECT_EQ(code_of([&] { alpha_d(u); }), ErrorCode::NotPrimitiveComposite);
}

TEST(AlphaD, ClosedFormUnavailableForGenericQutrit) {
  EXPECT_EQ(code_of([] { alpha_d(random_doubly_stochastic_channel(3, 3, 1), AlphaMethod::ClosedForm); }), ErrorCode::InvalidArgument);
}

TEST(PauliAlphaD, CompositeWeightsMatchKrausComposition) {
  Rng rng = make_rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_pauli(rng);
    const auto t = random_pauli_channel(p);
    const auto w = pauli_weights_oracle(compose(t.adjoint(), t).superop());
    const auto r = pauli_alpha_d(p);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(r.composite_q[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(k + 1)], 1e-12);
    EXPECT_NEAR(r.estimate.value, alpha_d(t, AlphaMethod::ClosedForm).alpha_d.value, 1e-10);
    EXPECT_LE(r.identity_free_formula, r.estimate.value + 1e-15);
  }
}

TEST(PauliAlphaD, Examples) {
  const auto q = pauli_alpha_d({0.25, 0.25, 0.25});
  EXPECT_NEAR(q.estimate.value, 0.5, 1e-15);  // T is completely depolarizing
  EXPECT_NEAR(q.identity_free_formula, 0.25, 1e-15);
  const auto flip = pauli_alpha_d({0.5, 0, 0});
  EXPECT_EQ(flip.estimate.value, 0.0);
  EXPECT_EQ(flip.estimate.direction, Direction::Exact);
  EXPECT_FALSE(is_primitive(adjoint_composite(random_pauli_channel({0.5, 0, 0}))).primitive);
}

TEST(ImprovedDataProcessing, Examples) {
  const auto t = random_doubly_stochastic_channel(3, 3, 4);
  const double ad = alpha_d(t).alpha_d.value;
  const auto r0 = improved_data_processing_check(t, DensityMatrix::maximally_mixed(3), ad);
  EXPECT_NEAR(r0.d_in, 0.0, 1e-12);
  EXPECT_NEAR(r0.d_out, 0.0, 1e-12);
  EXPECT_NEAR(r0.dirichlet, 0.0, 1e-12);

  Rng rng = make_rng(5);
  const auto dep = QuantumChannel::completely_depolarizing(3);
  const auto rho = random_density(3, rng);
  const auto rd = improved_data_processing_check(dep, rho);
  EXPECT_NEAR(rd.d_out, 0.0, 1e-12);
  EXPECT_GT(rd.slack_final, 0.0);

  for (int i = 0; i < 200; ++i) {
    const auto r = improved_data_processing_check(t, random_density(3, rng), ad);
    EXPECT_TRUE(r.passed()) << r.slack_intermediate << " " << r.slack_final;
  }
  EXPECT_EQ(code_of([&] {
              ComplexMatrix pure = ComplexMatrix::Zero(3, 3);
              pure(0, 0) = 1;
              improved_data_processing_check(t, DensityMatrix(pure), ad);
            }),
            ErrorCode::Singular);
}

TEST(PowerMonotonicity, Examples) {
  const auto c = power_monotonicity_check(QuantumChannel::completely_depolarizing(3), 4);
  for (const auto& e : c.alpha2) EXPECT_NEAR(e.value, ls2_prefactor(3), 1e-12);

  const auto p = power_monotonicity_check(random_pauli_channel({0.1, 0.2, 0.3}), 8);
  EXPECT_TRUE(p.monotone(1e-12));
  EXPECT_LE(0.5 * p.alpha2.back().value, 0.5 + 1e-3);
  // Pauli oracle: (T^*)^k T^k = T^{2k} has eigenvalues mu_i^{2k}, so alpha2 = 1 - max_i mu_i^{2k}
  const double mu[] = {1 - 2 * (0.1 + 0.2), 1 - 2 * (0.2 + 0.3), 1 - 2 * (0.1 + 0.3)};
  for (int k = 1; k <= 8; ++k) {
    double m = 0;
    for (double x : mu) m = std::max(m, std::pow(x, 2 * k));
    EXPECT_NEAR(p.alpha2[static_cast<std::size_t>(k - 1)].value, 1 - m, 1e-12);
  }
  EXPECT_THROW(power_monotonicity_check(random_pauli_channel({0.1, 0.2, 0.3}), 9), Error);
}

TEST(DiscreteBounds, Examples) {
  const auto b = discrete_bounds(QuantumChannel::completely_depolarizing(3));
  EXPECT_NEAR(b.lambda, 1.0, 1e-12);
  EXPECT_NEAR(b.lower.value, (1.0 / 3.0) / std::log(2.0), 1e-12);
  EXPECT_NEAR(b.upper.value, (1.0 / 3.0) / std::log(2.0), 1e-12);
  const auto t = random_doubly_stochastic_channel(2, 3, 7);
  const auto q = discrete_bounds(t);
  EXPECT_NEAR(q.lower.value, q.lambda / 2, 1e-12);
  EXPECT_NEAR(q.upper.value, std::min(q.lambda / 2, 0.5), 1e-12);
  const double ad = alpha_d(t).alpha_d.value;
  EXPECT_GE(ad, q.lower.value - 1e-9);
  EXPECT_LE(ad, q.upper.value + 1e-9);
}

TEST(DiscreteEntropy, Examples) {
  ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
  pure(0, 0) = 1;
  const auto r = discrete_entropy_production(QuantumChannel::completely_depolarizing(2), DensityMatrix(pure));
  EXPECT_NEAR(r.entropy_gain, std::log(2.0), 1e-12);
  EXPECT_NEAR(r.bound, 0.5 * std::log(2.0), 1e-12);
  EXPECT_NEAR(r.streater, 0.25, 1e-12);
  const auto z = discrete_entropy_production(QuantumChannel::completely_depolarizing(3), DensityMatrix::maximally_mixed(3));
  EXPECT_NEAR(z.entropy_gain, 0.0, 1e-12);
  EXPECT_TRUE(z.passed());
  Rng rng = make_rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_doubly_stochastic_channel(2 + i % 3, 3, 100 + i);
    EXPECT_TRUE(discrete_entropy_production(t, random_density(t.dim(), rng, 1 + i % 2)).passed());
  }
}

TEST(DiscreteHypercontractivity, TraceNormContractionAtQ2) {
  const auto t = random_doubly_stochastic_channel(2, 3, 9);
  NormSearchOptions o;
  o.restarts = 4;
  o.lemma_samples = 20;
  const auto r = discrete_hypercontractivity_check(t, 2.0, alpha_d(t).alpha_d.value, o);
  EXPECT_GE(r.max_ratio, 1.0);
  EXPECT_LE(r.max_ratio, 1.0 + 1e-6);
}

TEST(DiscreteHypercontractivity, DepolarizingAtCriticalQ) {
  const auto t = QuantumChannel::completely_depolarizing(2);
  const double ad = alpha_d(t).alpha_d.value;
  NormSearchOptions o;
  o.restarts = 6;
  const auto r = discrete_hypercontractivity_check(t, 2 + 2 * ad, ad, o);
  EXPECT_TRUE(r.passed()) << r.max_ratio << " " << r.min_lemma1_slack << " " << r.min_lemma2_slack;
  EXPECT_EQ(code_of([&] { discrete_hypercontractivity_check(t, 3.5, ad, o); }), ErrorCode::QOutOfRange);
}

TEST(DiscreteHypercontractivity, QubitPauliAtCriticalQ) {
  const auto t = random_pauli_channel({0.05, 0.1, 0.15});
  const double ad = alpha_d(t, AlphaMethod::ClosedForm).alpha_d.value;
  NormSearchOptions o;
  o.restarts = 8;
  o.seed = 4;
  const auto r = discrete_hypercontractivity_check(t, 2 + 2 * ad, ad, o);
  EXPECT_TRUE(r.passed()) << r.max_ratio;
}

TEST(NormRatio, IdentityChannelAttainsRankOneValue) {
  // ||X||_{4,1/d} / ||X||_{2,1/d} is maximal at rank one, where it equals d^{1/4}
  NormSearchOptions o;
  o.restarts = 6;
  for (int d : {2, 3}) EXPECT_NEAR(max_norm_ratio(QuantumChannel::identity(d), 4.0, o).ratio, std::pow(d, 0.25), 1e-6);
}

TEST(NormRatio, ExceedsOneBeyondTheCriticalExponent) {
  // a weakly noisy Pauli channel is not 2 -> 4 contractive
  NormSearchOptions o;
  o.restarts = 6;
  EXPECT_GT(max_norm_ratio(random_pauli_channel({0.01, 0.01, 0.01}), 4.0, o).ratio, 1.1);
}

TEST(NormLemmas, HoldOnRandomPositiveMatrices) {
  Rng rng = make_rng(10);
  for (double q : {2.1, 3.0, 4.0}) {
    for (int i = 0; i < 300; ++i) {
      const int d = 2 + i % 3;
      const auto t = random_doubly_stochastic_channel(d, 2, 200 + i);
      const ComplexMatrix x = random_positive(d, rng);
      const auto s = norm_lemmas_at(t, x, q);
      EXPECT_GE(s.lemma1_slack, -1e-9) << q;
      EXPECT_GE(s.lemma2_slack, -1e-9) << q;
    }
  }
  const auto at_one = norm_lemmas_at(random_doubly_stochastic_channel(3, 2, 1), ComplexMatrix::Identity(3, 3), 3.0);
  EXPECT_NEAR(at_one.lemma2_slack, 0.0, 1e-12);
}
