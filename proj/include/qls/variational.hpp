#pragma once

// Smooth objectives over Hermitian parameters: the LS-2 ratio
// E^2(X)/Ent_2(X) with X = exp(H) and the LS-1 ratio with rho = exp(H)/Z,
// both with analytic gradients through the derivative of the exponential.

#include <cmath>
#include <limits>

#include "qls/linalg.hpp"
#include "qls/optimize.hpp"

namespace qls {

/// Iterates whose normalized divergence (Ent_2 at tr X^2 = d, or D(rho||1/d))
/// falls below this are rejected: the ratio is 0/0-conditioned there and
/// tends to the spectral gap, which the callers include separately.
inline constexpr double kRatioFloor = 1e-6;

/// d^2 real parameters: d diagonal entries, then (re, im) of each i < j entry.
inline int hermitian_param_count(Eigen::Index d) { return static_cast<int>(d * d); }

inline ComplexMatrix hermitian_from_params(const double* p, Eigen::Index d) {
  ComplexMatrix h(d, d);
  int k = 0;
  for (Eigen::Index i = 0; i < d; ++i) h(i, i) = p[k++];
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      h(i, j) = Complex(p[k], p[k + 1]);
      h(j, i) = Complex(p[k], -p[k + 1]);
      k += 2;
    }
  return h;
}

inline void params_from_hermitian(const ComplexMatrix& h, double* p) {
  const Eigen::Index d = h.rows();
  int k = 0;
  for (Eigen::Index i = 0; i < d; ++i) p[k++] = h(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      p[k++] = h(i, j).real();
      p[k++] = h(i, j).imag();
    }
}

/// Gradient with respect to the parameters of f(H) when df = Re tr(G dH), G Hermitian.
inline void params_gradient(const ComplexMatrix& g, double* out) {
  const Eigen::Index d = g.rows();
  int k = 0;
  for (Eigen::Index i = 0; i < d; ++i) out[k++] = g(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      out[k++] = 2.0 * g(i, j).real();
      out[k++] = 2.0 * g(i, j).imag();
    }
}

/// First divided differences of f on the eigenvalues h, with f' on coinciding pairs.
template <class F, class DF>
RealMatrix divided_differences(const RealVector& h, F&& f, DF&& df) {
  const Eigen::Index d = h.size();
  RealMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const double dh = h(i) - h(j);
      g(i, j) = std::abs(dh) < 1e-9 ? df(0.5 * (h(i) + h(j))) : (f(h(i)) - f(h(j))) / dh;
    }
  return g;
}

/// Hermitian H in its eigenbasis with a scalar shift applied to the eigenvalues.
struct ShiftedSpectrum {
  RealVector h;
  ComplexMatrix v;

  ComplexMatrix rebuild(const RealVector& f) const { return v * f.cast<Complex>().asDiagonal() * v.adjoint(); }
  ComplexMatrix to_eigenbasis(const ComplexMatrix& a) const { return v.adjoint() * a * v; }
  ComplexMatrix from_eigenbasis(const ComplexMatrix& a) const { return v * a * v.adjoint(); }
};

inline double log_sum_exp(const RealVector& h) {
  const double m = h.maxCoeff();
  return m + std::log((h.array() - m).exp().sum());
}

/// E^2_L(X)/Ent_2(X) for X = exp(H), normalized to tr X^2 = d. `sym` is the
/// superoperator of (L + L^*)/2.
class Ls2Ratio {
 public:
  explicit Ls2Ratio(ComplexMatrix sym) : sym_(std::move(sym)) {
    d_ = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(sym_.rows()))));
  }

  Eigen::Index dim() const { return d_; }

  double operator()(const double* p, double* grad) const {
    const ComplexMatrix hm = hermitian_from_params(p, d_);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hm);
    ShiftedSpectrum s{es.eigenvalues(), es.eigenvectors()};
    const double dd = static_cast<double>(d_);
    // tr X^2 = d
    s.h.array() += 0.5 * (std::log(dd) - log_sum_exp(2.0 * s.h));
    const RealVector x = s.h.array().exp();
    double ent = 0.0;
    for (Eigen::Index i = 0; i < d_; ++i) ent += x(i) * x(i) * 2.0 * s.h(i);
    ent /= 2.0 * dd;
    if (!(ent >= kRatioFloor)) return std::numeric_limits<double>::quiet_NaN();
    const ComplexMatrix xm = s.rebuild(x);
    const ComplexMatrix lx = apply_superop(sym_, xm);
    const double energy = -(lx * xm).trace().real() / dd;
    const double ratio = energy / ent;
    if (grad) {
      ComplexMatrix g = s.to_eigenbasis(lx) * (-2.0 / dd);
      for (Eigen::Index i = 0; i < d_; ++i) g(i, i) -= ratio * x(i) * 2.0 * s.h(i) / dd;
      g /= ent;
      const RealMatrix gamma = divided_differences(s.h, [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); });
      const ComplexMatrix gh = s.from_eigenbasis(gamma.cast<Complex>().cwiseProduct(g));
      params_gradient(0.5 * (gh + gh.adjoint()), grad);
    }
    return ratio;
  }

 private:
  ComplexMatrix sym_;
  Eigen::Index d_;
};

/// -1/2 tr[L(rho) log rho] / D(rho||1/d) for rho = exp(H)/tr exp(H).
class Ls1Ratio {
 public:
  explicit Ls1Ratio(ComplexMatrix superop) : s_(std::move(superop)) {
    d_ = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(s_.rows()))));
    adj_ = s_.adjoint();
  }

  Eigen::Index dim() const { return d_; }

  double operator()(const double* p, double* grad) const {
    const ComplexMatrix hm = hermitian_from_params(p, d_);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hm);
    ShiftedSpectrum s{es.eigenvalues(), es.eigenvectors()};
    s.h.array() -= log_sum_exp(s.h);  // now h = log p
    const RealVector pr = s.h.array().exp();
    const double dd = static_cast<double>(d_);
    const double mean_log = pr.dot(s.h);
    const double div = mean_log + std::log(dd);
    if (!(div >= kRatioFloor)) return std::numeric_limits<double>::quiet_NaN();
    const ComplexMatrix rho = s.rebuild(pr);
    const ComplexMatrix log_rho = s.rebuild(s.h.array() + std::log(dd));  // log(d rho); same numerator, less cancellation
    const ComplexMatrix l_rho = apply_superop(s_, rho);
    const double num = -0.5 * (l_rho * log_rho).trace().real();
    const double ratio = num / div;
    if (grad) {
      const RealMatrix gamma = divided_differences(s.h, [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); });
      ComplexMatrix gq = s.to_eigenbasis(apply_superop(adj_, log_rho)) * (-0.5);
      ComplexMatrix gl = s.to_eigenbasis(l_rho) * (-0.5);
      const double mean_g = (pr.cast<Complex>().asDiagonal() * gq).trace().real();
      for (Eigen::Index i = 0; i < d_; ++i) gq(i, i) -= mean_g;
      ComplexMatrix g = gl + gamma.cast<Complex>().cwiseProduct(gq);
      for (Eigen::Index i = 0; i < d_; ++i) g(i, i) -= ratio * pr(i) * (s.h(i) - mean_log);
      g /= div;
      const ComplexMatrix gh = s.from_eigenbasis(g);
      params_gradient(0.5 * (gh + gh.adjoint()), grad);
    }
    return ratio;
  }

 private:
  ComplexMatrix s_;
  ComplexMatrix adj_;
  Eigen::Index d_;
};

}  // namespace qls
