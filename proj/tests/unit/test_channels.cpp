#include <gtest/gtest.h>

#include <algorithm>

#include "qls/channels.hpp"

using namespace qls;

namespace {

ComplexMatrix kraus_apply(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

std::vector<double> sorted_real(std::vector<Complex> v) {
  std::vector<double> out;
  for (auto z : v) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Complex> superop_spectrum(const ComplexMatrix& s) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(s);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
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

TEST(QuantumChannel, SuperopMatchesKrausAction) {
  Rng rng = make_rng(1);
  for (int d : {2, 3, 4}) {
    const auto t = random_doubly_stochastic_channel(d, 3, 100 + d);
    const ComplexMatrix x = ginibre(d, d, rng);
    EXPECT_LE(max_abs(t.apply(x) - kraus_apply(t.kraus(), x)), 1e-10);
    EXPECT_TRUE(t.is_doubly_stochastic());
  }
}

TEST(QuantumChannel, RejectsNonTracePreserving) {
  EXPECT_EQ(code_of([] { QuantumChannel({ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))}); }), ErrorCode::NotTracePreserving);
}

TEST(QuantumChannel, ChoiRoundTrip) {
  Rng rng = make_rng(2);
  const auto t = random_doubly_stochastic_channel(3, 4, 5);
  const auto back = QuantumChannel::from_superop(t.superop());
  EXPECT_LE(max_abs(back.superop() - t.superop()), 1e-10);
  EXPECT_LE(back.kraus().size(), 9u);
  const ComplexMatrix x = ginibre(3, 3, rng);
  EXPECT_LE(max_abs(kraus_apply(back.kraus(), x) - t.apply(x)), 1e-10);
}

TEST(QuantumChannel, FromSuperopRejectsTranspose) {
  // the transpose map is positive but not completely positive
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s(j + 2 * i, i + 2 * j) = 1.0;
  EXPECT_EQ(code_of([&] { QuantumChannel::from_superop(s); }), ErrorCode::NotCP);
}

TEST(QuantumChannel, AdjointAndCompose) {
  const auto t = random_doubly_stochastic_channel(3, 2, 9);
  EXPECT_LE(max_abs(t.adjoint().superop() - t.superop().adjoint()), 1e-12);
  const auto c = adjoint_composite(t);
  EXPECT_LE(max_abs(c.superop() - t.superop().adjoint() * t.superop()), 1e-12);
  const auto big = compose(random_doubly_stochastic_channel(2, 4, 1), random_doubly_stochastic_channel(2, 4, 2));
  EXPECT_LE(big.kraus().size(), 4u);
}

TEST(Liouvillian, DepolarizingExamples) {
  const auto l2 = depolarizing_liouvillian(2);
  EXPECT_LE(max_abs(l2.apply(ComplexMatrix::Identity(2, 2))), 1e-15);
  EXPECT_LE(max_abs(l2.apply(pauli(3)) + pauli(3)), 1e-15);
  EXPECT_TRUE(l2.is_reversible());
  EXPECT_TRUE(l2.is_doubly_stochastic());

  auto ev = sorted_real(superop_spectrum(depolarizing_liouvillian(3).superop()));
  ASSERT_EQ(ev.size(), 9u);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(ev[static_cast<std::size_t>(i)], -1.0, 1e-12);
  EXPECT_NEAR(ev[8], 0.0, 1e-12);
}

TEST(Liouvillian, LindbladActionMatchesDefinition) {
  Rng rng = make_rng(3);
  const auto l = random_lindblad_liouvillian(3, 2, 7);
  const auto& form = *l.lindblad_form();
  for (int i = 0; i < 5; ++i) {
    const ComplexMatrix x = ginibre(3, 3, rng);
    const ComplexMatrix direct = kraus_apply(form.phi_kraus, x) - form.kappa * x - x * form.kappa.adjoint();
    EXPECT_LE(max_abs(l.apply(x) - direct), 1e-10);
    EXPECT_LE(std::abs(l.apply(x).trace()), 1e-10);
  }
  EXPECT_TRUE(l.is_doubly_stochastic());
  EXPECT_FALSE(l.is_reversible());
}

TEST(Liouvillian, RejectsInconsistentKappa) {
  EXPECT_EQ(code_of([] { Liouvillian::lindblad({ComplexMatrix::Identity(2, 2)}, ComplexMatrix::Identity(2, 2)); }),
            ErrorCode::NotTracePreserving);
}

TEST(Liouvillian, CommutesWithDepolarizing) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto l = random_lindblad_liouvillian(3, 2, seed);
    const ComplexMatrix& a = l.superop();
    const ComplexMatrix& b = depolarizing_liouvillian(3).superop();
    EXPECT_LE(max_abs(a * b - b * a), 1e-10);
  }
}

TEST(PauliChannel, IdentityAndSpectrum) {
  const auto id = random_pauli_channel({0, 0, 0});
  EXPECT_LE(max_abs(id.superop() - ComplexMatrix::Identity(4, 4)), 1e-15);

  auto check = [](double p1, double p2, double p3) {
    std::vector<double> expect = {1.0, 1 - 2 * (p1 + p2), 1 - 2 * (p2 + p3), 1 - 2 * (p1 + p3)};
    std::sort(expect.begin(), expect.end());
    const auto got = sorted_real(superop_spectrum(random_pauli_channel({p1, p2, p3}).superop()));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expect[i], 1e-12);
  };
  check(0.25, 0.25, 0.25);
  check(0.5, 0, 0);
  check(0.1, 0.2, 0.3);
  EXPECT_THROW(PauliDistribution(0.5, 0.5, 0.5), Error);
  EXPECT_THROW(PauliDistribution(-0.1, 0.5, 0.5), Error);
}

TEST(Weyl, QubitCaseAndAlgebra) {
  const auto u2 = weyl_unitaries(2);
  EXPECT_LE(max_abs(u2[0] - ComplexMatrix::Identity(2, 2)), 0.0);
  EXPECT_LE(max_abs(u2[2] - pauli(1)), 1e-15);  // U_{1,0}
  EXPECT_LE(max_abs(u2[1] - pauli(3)), 1e-15);  // U_{0,1}
  for (int d : {2, 3, 4, 5}) {
    const auto u = weyl_unitaries(d);
    const Complex nu = std::polar(1.0, 2 * M_PI / d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const auto& a = u[static_cast<std::size_t>(i * d + j)];
            const auto& b = u[static_cast<std::size_t>(k * d + l)];
            const Complex ip = (a.adjoint() * b).trace();
            EXPECT_NEAR(std::abs(ip - Complex((i == k && j == l) ? d : 0)), 0.0, 1e-10);
            const auto& c = u[static_cast<std::size_t>(((i + k) % d) * d + (j + l) % d)];
            EXPECT_LE(max_abs(a * b - std::pow(nu, j * k) * c), 1e-10);
          }
  }
}

TEST(TensorPower, DepolarizingPairAndCap) {
  const auto l = depolarizing_liouvillian(2);
  EXPECT_LE(max_abs(tensor_power_generator(l, 1).superop() - l.superop()), 0.0);
  const auto l2 = tensor_power_generator(l, 2);
  const ComplexMatrix zz = kron(pauli(3), pauli(3));
  EXPECT_LE(max_abs(l2.apply(zz) + 2.0 * zz), 1e-12);
  const ComplexMatrix zi = kron(pauli(3), ComplexMatrix::Identity(2, 2));
  EXPECT_LE(max_abs(l2.apply(zi) + zi), 1e-12);
  EXPECT_EQ(code_of([&] { tensor_power_generator(l, 7); }), ErrorCode::DimensionCap);
}

TEST(TensorPower, ProductOfSemigroups) {
  // e^{t L^{(2)}} = e^{tL} (x) e^{tL} applied to a product operator
  Rng rng = make_rng(4);
  const auto l = random_lindblad_liouvillian(2, 2, 5);
  const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng);
  const ComplexMatrix lhs = semigroup_at(tensor_power_generator(l, 2), 0.4).apply(kron(a, b));
  const auto t = semigroup_at(l, 0.4);
  EXPECT_LE(max_abs(lhs - kron(t.apply(a), t.apply(b))), 1e-10);
}

TEST(Semigroup, Examples) {
  const auto l = depolarizing_liouvillian(3);
  EXPECT_LE(max_abs(semigroup_at(l, 0).superop() - ComplexMatrix::Identity(9, 9)), 0.0);
  Rng rng = make_rng(5);
  const auto rho = random_density(3, rng);
  EXPECT_LE(max_abs(semigroup_at(l, 50).apply(rho.matrix()) - ComplexMatrix::Identity(3, 3) / 3.0), 1e-8);
  const double t = 0.7;
  const ComplexMatrix expect = std::exp(-t) * rho.matrix() + (1 - std::exp(-t)) * ComplexMatrix::Identity(3, 3) / 3.0;
  EXPECT_LE(max_abs(semigroup_at(l, t).apply(rho.matrix()) - expect), 1e-12);

  const auto g = random_lindblad_liouvillian(3, 2, 8);
  const auto lhs = compose(semigroup_at(g, 0.3), semigroup_at(g, 0.5));
  EXPECT_LE(max_abs(lhs.superop() - semigroup_at(g, 0.8).superop()), 1e-8);
}

TEST(Bloch, Examples) {
  EXPECT_LE((bloch_matrix(QuantumChannel::identity(2)).m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(bloch_matrix(QuantumChannel::completely_depolarizing(2)).m.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(bloch_matrix(random_pauli_channel({0.25, 0.25, 0.25})).m.cwiseAbs().maxCoeff(), 1e-15);
  const auto t = random_doubly_stochastic_channel(2, 3, 4);
  EXPECT_LE((bloch_matrix(t.adjoint()).m - bloch_matrix(t).m.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(code_of([] { bloch_matrix(QuantumChannel::identity(3)); }), ErrorCode::NotQubit);
}

TEST(Bloch, RejectsNonUnital) {
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(0.5);
  k1(0, 1) = std::sqrt(0.5);
  const QuantumChannel damp({k0, k1});
  EXPECT_EQ(code_of([&] { bloch_matrix(damp); }), ErrorCode::NotDoublyStochastic);
}

TEST(MarkovKernel, Examples) {
  Rng rng = make_rng(6);
  const ComplexMatrix u = haar_unitary(3, rng);
  EXPECT_LE((markov_kernel(QuantumChannel::identity(3), u).matrix() - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((markov_kernel(QuantumChannel::completely_depolarizing(3), u).matrix().array() - 1.0 / 3).abs().maxCoeff(), 1e-12);
  const double p1 = 0.1, p2 = 0.25, p3 = 0.3;
  const auto m = markov_kernel(random_pauli_channel({p1, p2, p3}), ComplexMatrix::Identity(2, 2)).matrix();
  EXPECT_NEAR(m(0, 1), p1 + p2, 1e-14);
  EXPECT_NEAR(m(0, 0), 1 - p1 - p2, 1e-14);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto t = random_doubly_stochastic_channel(4, 3, s);
    EXPECT_NO_THROW(markov_kernel(t, haar_unitary(4, rng)));
  }
  EXPECT_THROW(markov_kernel(QuantumChannel::identity(2), ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))), Error);
}

TEST(Primitivity, Examples) {
  EXPECT_TRUE(is_primitive(QuantumChannel::completely_depolarizing(3)).primitive);
  const auto w = is_primitive(QuantumChannel::identity(2));
  EXPECT_FALSE(w.primitive);
  EXPECT_EQ(w.unit_eigenvalues.size(), 4u);
  const auto p = is_primitive(random_pauli_channel({0.5, 0, 0}));
  EXPECT_FALSE(p.primitive);
  EXPECT_EQ(p.unit_eigenvalues.size(), 2u);
  EXPECT_FALSE(is_primitive(random_doubly_stochastic_channel(3, 1, 4)).primitive);
  EXPECT_TRUE(is_primitive(random_doubly_stochastic_channel(3, 3, 4)).primitive);
}

TEST(RandomChannel, Deterministic) {
  const auto a = random_doubly_stochastic_channel(3, 4, 77);
  const auto b = random_doubly_stochastic_channel(3, 4, 77);
  ASSERT_EQ(a.kraus().size(), b.kraus().size());
  for (std::size_t i = 0; i < a.kraus().size(); ++i) EXPECT_EQ(a.kraus()[i], b.kraus()[i]);
  const auto single = random_doubly_stochastic_channel(3, 1, 5);
  EXPECT_TRUE(is_unitary(single.kraus()[0]));
}
