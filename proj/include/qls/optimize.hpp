#pragma once

// Multi-start quasi-Newton minimization (Ceres line-search LBFGS) of smooth
// objectives with analytic gradients.

#include <ceres/ceres.h>

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "qls/parallel.hpp"
#include "qls/random.hpp"

namespace qls {

/// Returns the objective at x and writes the gradient when grad != nullptr.
/// A non-finite return marks x as infeasible.
using Objective = std::function<double(const double* x, double* grad)>;
using Initializer = std::function<void(Rng& rng, int restart, double* x)>;

struct MultiStartOptions {
  int restarts = 32;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  double function_tolerance = 1e-12;
  double gradient_tolerance = 1e-11;
  int threads = 1;
};

struct MultiStartResult {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> argmin;
  int best_restart = -1;
  int restarts = 0;
  int iterations = 0;
};

namespace detail {

class CeresObjective final : public ceres::FirstOrderFunction {
 public:
  CeresObjective(const Objective& f, int n) : f_(f), n_(n) {}
  bool Evaluate(const double* x, double* cost, double* grad) const override {
    const double v = f_(x, grad);
    if (!std::isfinite(v)) return false;
    *cost = v;
    if (grad) {
      for (int i = 0; i < n_; ++i)
        if (!std::isfinite(grad[i])) return false;
    }
    return true;
  }
  int NumParameters() const override { return n_; }

 private:
  const Objective& f_;
  int n_;
};

}  // namespace detail

/// Local descent from x (modified in place). Returns iterations used.
inline int local_minimize(const Objective& f, std::vector<double>& x, int max_iterations, double ftol, double gtol) {
  ceres::GradientProblem problem(new detail::CeresObjective(f, static_cast<int>(x.size())));
  ceres::GradientProblemSolver::Options options;
  options.logging_type = ceres::SILENT;
  options.minimizer_progress_to_stdout = false;
  options.max_num_iterations = max_iterations;
  options.function_tolerance = ftol;
  options.gradient_tolerance = gtol;
  options.parameter_tolerance = 1e-14;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, x.data(), &summary);
  return static_cast<int>(summary.iterations.size());
}

/// Restart r draws its start from the private stream (seed, r), so the result
/// does not depend on the number of threads.
inline MultiStartResult minimize_multistart(int n, const Objective& f, const Initializer& init, const MultiStartOptions& opt) {
  struct Run {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> x;
    int iterations = 0;
  };
  const auto runs = parallel_map(
      static_cast<std::size_t>(opt.restarts),
      [&](std::size_t r) {
        Run run;
        Rng rng = make_rng(opt.seed, r + 1);
        run.x.assign(static_cast<std::size_t>(n), 0.0);
        init(rng, static_cast<int>(r), run.x.data());
        if (!std::isfinite(f(run.x.data(), nullptr))) return run;
        run.iterations = local_minimize(f, run.x, opt.max_iterations, opt.function_tolerance, opt.gradient_tolerance);
        run.value = f(run.x.data(), nullptr);
        if (!std::isfinite(run.value)) run.value = std::numeric_limits<double>::infinity();
        return run;
      },
      opt.threads);
  MultiStartResult out;
  out.restarts = opt.restarts;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    out.iterations += runs[r].iterations;
    if (runs[r].value < out.value) {
      out.value = runs[r].value;
      out.argmin = runs[r].x;
      out.best_restart = static_cast<int>(r);
    }
  }
  return out;
}

}  // namespace qls
