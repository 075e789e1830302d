// One PASS/FAIL line per acceptance criterion, at the stated sizes and tolerances.

#include <iostream>

#include "qls/cli.hpp"

using namespace qls;

namespace {

int failures = 0;

void line(int id, bool ok, const std::string& what, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << " | " << detail << std::endl;
  if (!ok) ++failures;
}

std::string summary(const VerificationReport& r) {
  std::ostringstream s;
  s << std::setprecision(3);
  for (const auto& c : r.checks) s << c.claim << " max_violation=" << c.max_violation << " (tol " << c.tolerance << ", n=" << c.evaluations << "); ";
  s << "skipped=" << r.skipped << "; " << std::fixed << r.wall_seconds << " s";
  return s.str();
}

VerifyOptions base(std::vector<Eigen::Index> dims, int instances) {
  VerifyOptions o;
  o.dims = std::move(dims);
  o.instances = instances;
  o.seed = 2024;
  return o;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  {
    const auto r = run_suite("qubit-closed-forms", base({2}, 100));
    line(1, r.passed() && r.skipped == 0 && r.wall_seconds <= 120.0, "qubit closed forms vs variational, 100 channels, 1e-3, <= 2 min",
         summary(r));
  }
  {
    const auto r = run_suite("depolarizing-anchor", base({2, 3, 4, 5}, 1));
    line(2, r.passed(), "variational alpha_2 of L_dep(d), d = 2..5, 1e-3", summary(r) + " " + r.info.dump());
  }
  {
    const auto r = run_suite("sandwich", base({2, 3, 4}, 500));
    line(3, r.passed(), "sandwich inequalities, 500 reversible instances per d in {2,3,4}, 1e-9", summary(r));
  }
  {
    auto o = base({2, 3}, 200);
    o.samples = 10000;
    const auto r = run_suite("comparison", o);
    line(4, r.passed(), "Dirichlet form comparison, 1e4 X per instance, n in {1,2}, d in {2,3}, 1e-9", summary(r));
  }
  {
    const auto r = run_suite("tensor-bound-chain", base({2, 3, 4}, 20));
    line(5, r.passed(), "snapshot(1, t0(d)) = tensor factor for d = 2..8 (1e-12); factor(2) = 0.22656 (1e-4)",
         summary(r) + " factor(2)=" + format_double(r.info["qubit_factor"].get<double>()));
  }
  {
    const auto r = run_suite("hypercontractivity", base({2}, 1));
    line(6, r.passed() && r.wall_seconds <= 300.0, "2->4 norm at t0 <= 1 + 1e-6 (n = 1, 2); quantum <= classical on 5x2 grid; <= 5 min",
         summary(r));
  }
  {
    auto o = base({2, 3, 4}, 10000);
    o.states_per_channel = 50;
    const auto r = run_suite("improved-data-processing", o);
    line(7, r.passed(), "improved data processing, 1e4 (T, rho) per d in {2,3,4}, 1e-9", summary(r));
  }
  {
    const auto r = run_suite("pauli", base({2}, 50));
    line(8, r.passed(), "Pauli alpha_2 vs variational (1e-3) and alpha_D vs Kraus composite (1e-10), 50 distributions",
         summary(r) + " identity-free-formula discrepancies=" + r.info["identity_free_formula_discrepancies"].dump());
  }
  {
    const auto r = run_suite("discrete-monotonicity", base({2, 3, 4}, 50));
    line(9, r.passed(), "power monotonicity K = 8 (1e-3) and alpha_D bracket (1e-9), 50 primitive channels", summary(r));
  }
  {
    const auto r = run_suite("entropy-curves", base({2, 3, 4}, 200));
    line(10, r.passed(), "entropy above certified curves (1e-8), discrete gain and Pinsker", summary(r));
  }
  {
    // the full command-line run at the documented sizes
    const char* argv[] = {"qls", "verify", "--suite", "all", "--dims", "2,3,4", "--instances", "1000", "--seed", "7"};
    std::ostringstream out, err;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli(10, argv, out, err);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << "exit " << code << ", " << std::fixed << std::setprecision(1) << secs << " s";
    line(11, code == 0 && secs <= 900.0, "verify --suite all --dims 2,3,4 --instances 1000 --seed 7 exits 0 within 15 min", d.str());
    if (code != 0) std::cout << err.str();
  }
  std::cout << "total " << std::fixed << std::setprecision(1)
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s, " << failures << " failed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
