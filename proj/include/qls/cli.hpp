#pragma once

// Command-line front end. Exit codes: 0 success, 1 a checked inequality
// failed, 2 bad input or usage. Reports go to `out`; diagnostics and wall
// time go to `err`, so stdout is a function of argv alone.

#include <CLI11.hpp>

#include "qls/verify.hpp"

namespace qls {

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

struct OperatorArgs {
  std::string channel_file;
  std::string liouvillian = "";
  std::string preset = "";
  Eigen::Index d = 2;
  std::vector<double> p;
  double strength = 1.0;
  int k = 3;
  std::uint64_t seed = 0;
  double rate = 1.0;
};

inline void add_operator_options(CLI::App* app, OperatorArgs& a, bool liouvillian) {
  app->add_option("--channel", a.channel_file, "channel JSON file")->check(CLI::ExistingFile);
  if (liouvillian) {
    app->add_option("--liouvillian", a.liouvillian, "Liouvillian JSON file or preset: dep, pauli, random-reversible, random-lindblad");
    app->add_option("--rate", a.rate, "rate r in L = r (T - id) for --channel")->check(CLI::PositiveNumber);
  } else {
    app->add_option("--preset", a.preset, "channel preset: identity, dep, pauli, random");
  }
  app->add_option("--d", a.d, "dimension")->check(CLI::Range(2, 64));
  app->add_option("--p", a.p, "Pauli weights p1,p2,p3")->delimiter(',')->expected(3);
  app->add_option("--strength", a.strength, "depolarizing strength s in (1-s) id + s Dep")->check(CLI::Range(0.0, 1.0));
  app->add_option("--k", a.k, "Kraus unitaries / jump operators for random presets")->check(CLI::Range(1, 64));
  app->add_option("--seed", a.seed, "seed for random presets");
}

inline QuantumChannel depolarizing_channel(Eigen::Index d, double s) {
  const double dd = static_cast<double>(d);
  std::vector<ComplexMatrix> kraus;
  const auto u = weyl_unitaries(d);
  kraus.push_back(std::sqrt(1.0 - s + s / (dd * dd)) * u[0]);
  if (s > 0)
    for (std::size_t i = 1; i < u.size(); ++i) kraus.push_back(std::sqrt(s) / dd * u[i]);
  return QuantumChannel(std::move(kraus));
}

inline PauliDistribution pauli_args(const OperatorArgs& a) {
  if (a.p.size() != 3) fail(ErrorCode::InputError, "--p: expected p1,p2,p3");
  return PauliDistribution(a.p[0], a.p[1], a.p[2]);
}

inline QuantumChannel channel_preset(const std::string& name, const OperatorArgs& a) {
  if (name == "identity") return QuantumChannel::identity(a.d);
  if (name == "dep") return depolarizing_channel(a.d, a.strength);
  if (name == "pauli") return random_pauli_channel(pauli_args(a));
  if (name == "random") return random_doubly_stochastic_channel(a.d, a.k, a.seed);
  fail(ErrorCode::InputError, "--preset: unknown channel preset '" + name + "'");
}

inline QuantumChannel resolve_channel(const OperatorArgs& a) {
  if (!a.channel_file.empty()) return load_channel(a.channel_file);
  if (!a.preset.empty()) return channel_preset(a.preset, a);
  fail(ErrorCode::InputError, "need --channel FILE or --preset NAME");
}

inline Liouvillian resolve_liouvillian_unchecked(const OperatorArgs& a) {
  if (!a.channel_file.empty()) return Liouvillian::generator_of(load_channel(a.channel_file), a.rate);
  const auto& n = a.liouvillian;
  if (n.empty()) fail(ErrorCode::InputError, "need --liouvillian FILE|PRESET or --channel FILE");
  if (n == "dep") return depolarizing_liouvillian(a.d);
  if (n == "pauli") return Liouvillian::generator_of(random_pauli_channel(pauli_args(a)), a.rate);
  if (n == "random-reversible") return random_reversible_liouvillian(a.d, a.k, a.seed, a.rate);
  if (n == "random-lindblad") return random_lindblad_liouvillian(a.d, a.k, a.seed);
  return load_liouvillian(n);
}

inline Liouvillian resolve_liouvillian(const OperatorArgs& a) {
  auto l = resolve_liouvillian_unchecked(a);
  l.require_doubly_stochastic("input generator");
  return l;
}

inline DensityMatrix resolve_rho(const std::string& name, Eigen::Index d, std::uint64_t seed) {
  if (name == "pure") {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(0, 0) = 1.0;
    return DensityMatrix(m);
  }
  if (name == "mixed") return DensityMatrix::maximally_mixed(d);
  Rng rng = make_rng(seed, 99);
  if (name == "random") return random_density(d, rng);
  if (name == "random-pure") return random_density(d, rng, 1);
  fail(ErrorCode::InputError, "--rho: expected pure, mixed, random or random-pure");
}

inline std::vector<double> time_grid(double tmax, int steps) {
  if (!(tmax >= 0) || steps < 1) fail(ErrorCode::InputError, "--tmax must be >= 0 and --steps >= 1");
  std::vector<double> ts;
  for (int i = 0; i <= steps; ++i) ts.push_back(tmax * i / steps);
  return ts;
}

inline AlphaMethod parse_method(const std::string& m) {
  if (m == "auto") return AlphaMethod::Auto;
  if (m == "closed") return AlphaMethod::ClosedForm;
  if (m == "variational") return AlphaMethod::Variational;
  fail(ErrorCode::InputError, "--method: expected auto, closed or variational");
}

/// alpha_2 or alpha_1 of L with closed forms first under `auto`.
inline LsEstimate alpha_of(const Liouvillian& l, bool alpha1, AlphaMethod method, const VariationalOptions& v) {
  const Eigen::Index d = l.dim();
  if (method != AlphaMethod::Variational) {
    if (!alpha1) {
      const ComplexMatrix s = l.superop() + ComplexMatrix::Identity(d * d, d * d);
      if (auto e = detail::alpha2_closed_form(s, d)) return *e;
    } else if (d == 2 && l.is_reversible()) {
      const double lambda = spectral_gap_info(l).value;
      return LsEstimate::exact(EstimateKind::Alpha1, lambda, "reversible qubit generator: alpha_1 = lambda");
    }
    if (method == AlphaMethod::ClosedForm) fail(ErrorCode::InvalidArgument, "no closed form for this generator");
  }
  return alpha1 ? alpha1_variational(l, v) : alpha2_variational(l, v);
}

inline void dump(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int run_channel_validate(const OperatorArgs& a, std::ostream& out) {
  const auto t = resolve_channel(a);
  const auto w = peripheral_spectrum(t.superop());
  const bool ds = t.is_doubly_stochastic();
  json unit = json::array();
  for (const auto& z : w.unit_eigenvalues) unit.push_back({z.real(), z.imag()});
  dump(out, {{"dim", t.dim()},
             {"kraus_count", t.kraus().size()},
             {"trace_preserving", true},
             {"doubly_stochastic", ds},
             {"unitality_defect", t.unitality_defect()},
             {"primitive", w.primitive},
             {"unit_eigenvalues", unit}});
  return ds ? kExitOk : kExitFailed;
}

struct LsArgs {
  std::string kind = "alpha2";
  std::string method = "auto";
  int restarts = 32;
  double t0 = 0.0;
  bool no_qubit_override = false;
};

inline int run_ls(const OperatorArgs& a, const LsArgs& o, std::ostream& out) {
  const auto l = resolve_liouvillian(a);
  VariationalOptions v;
  v.restarts = o.restarts;
  v.seed = a.seed;
  const auto method = parse_method(o.method);
  if (o.kind == "alpha2" || o.kind == "alpha1") {
    dump(out, alpha_of(l, o.kind == "alpha1", method, v).to_json());
  } else if (o.kind == "gap") {
    dump(out, spectral_gap(l).to_json());
  } else if (o.kind == "sandwich") {
    const auto b = sandwich_bounds(l);
    dump(out, {{"reversible", b.reversible},
               {"lambda", b.lambda},
               {"alpha2_lower", b.alpha2_lower.to_json()},
               {"alpha2_upper", b.alpha2_upper.to_json()},
               {"alpha1_lower", b.alpha1_lower.to_json()},
               {"alpha1_upper", b.alpha1_upper.to_json()}});
  } else if (o.kind == "tensor") {
    dump(out, tensor_lower_bound(l, !o.no_qubit_override).to_json());
  } else if (o.kind == "snapshot") {
    dump(out, snapshot_bound(l, o.t0 > 0 ? o.t0 : t0_depolarizing(l.dim())).to_json());
  } else {
    fail(ErrorCode::InputError, "--kind: expected alpha2, alpha1, gap, sandwich, tensor or snapshot");
  }
  return kExitOk;
}

struct DiscreteArgs {
  std::string method = "auto";
  int restarts = 32;
  int powers = 0;
  double q = 0.0;
  std::string rho;
};

inline int run_discrete(const OperatorArgs& a, const DiscreteArgs& o, std::ostream& out) {
  const auto t = resolve_channel(a);
  VariationalOptions v;
  v.restarts = o.restarts;
  v.seed = a.seed;
  const auto method = parse_method(o.method);
  const auto r = alpha_d(t, method, v);
  const auto b = discrete_bounds(t);
  json j{{"alpha_d", r.alpha_d.to_json()},
         {"alpha2_composite", r.alpha2.to_json()},
         {"composite_primitive", r.primitivity.primitive},
         {"bounds", {{"lambda", b.lambda}, {"lower", b.lower.value}, {"upper", b.upper.value}}}};
  bool ok = true;
  if (o.powers > 0) {
    const auto pt = power_monotonicity_check(t, o.powers, method, v);
    json vals = json::array();
    for (const auto& e : pt.alpha2) vals.push_back(e.value);
    j["power_trace"] = {{"alpha2", vals}, {"max_decrease", pt.max_decrease}, {"monotone", pt.monotone()}};
    ok = ok && pt.monotone();
  }
  if (!o.rho.empty()) {
    const auto rho = resolve_rho(o.rho, t.dim(), a.seed);
    const auto dp = improved_data_processing_check(t, rho, r.alpha_d.value);
    const auto ep = discrete_entropy_production(t, rho, b.lambda);
    j["data_processing"] = {{"d_in", dp.d_in},
                            {"d_out", dp.d_out},
                            {"dirichlet", dp.dirichlet},
                            {"slack_intermediate", dp.slack_intermediate},
                            {"slack_final", dp.slack_final},
                            {"passed", dp.passed()}};
    j["entropy_gain"] = {{"gain", ep.entropy_gain}, {"bound", ep.bound}, {"streater", ep.streater}, {"passed", ep.passed()}};
    ok = ok && dp.passed() && ep.passed();
  }
  if (o.q > 0) {
    NormSearchOptions no;
    no.seed = a.seed;
    const auto h = discrete_hypercontractivity_check(t, o.q, r.alpha_d.value, no);
    j["hypercontractivity"] = {{"q", h.q},
                               {"max_ratio", h.max_ratio},
                               {"min_lemma1_slack", h.min_lemma1_slack},
                               {"min_lemma2_slack", h.min_lemma2_slack},
                               {"samples", h.samples},
                               {"passed", h.passed()},
                               {"note", "max_ratio is an optimizer estimate, a lower bound on the true norm"}};
    ok = ok && h.passed();
  }
  dump(out, j);
  return ok ? kExitOk : kExitFailed;
}

struct CurveArgs {
  std::string rho = "pure";
  double tmax = 3.0;
  int steps = 60;
  std::string alpha = "alpha2";
  std::string out_file;
};

inline int run_curve(const OperatorArgs& a, const CurveArgs& o, std::ostream& out) {
  const auto l = resolve_liouvillian(a);
  const auto rho = resolve_rho(o.rho, l.dim(), a.seed);
  LsEstimate alpha;
  if (o.alpha == "alpha2") {
    alpha = sandwich_bounds(l).alpha2_lower;
  } else if (o.alpha == "alpha1") {
    alpha = sandwich_bounds(l).alpha1_lower;
  } else if (o.alpha == "tensor") {
    alpha = tensor_lower_bound(l);
  } else {
    fail(ErrorCode::InputError, "--alpha: expected alpha2, alpha1 or tensor");
  }
  const auto c = entropy_production_curve(l, rho, time_grid(o.tmax, o.steps), alpha, false);
  if (o.out_file.empty()) {
    write_curve_csv(out, c);
  } else {
    std::ofstream f(o.out_file, std::ios::binary);
    if (!f) fail(ErrorCode::InputError, "cannot write " + o.out_file);
    write_curve_csv(f, c);
  }
  return c.min_slack() >= -kCurveTol ? kExitOk : kExitFailed;
}

inline int run_capacity(const OperatorArgs& a, double tmax, int steps, bool no_override, std::ostream& out) {
  const auto l = resolve_liouvillian(a);
  dump(out, capacity_bound(l, time_grid(tmax, steps), !no_override).to_json());
  return kExitOk;
}

inline int run_hyper(const OperatorArgs& a, double t, int n, int restarts, std::ostream& out) {
  OperatorArgs b = a;
  if (b.liouvillian.empty() && b.channel_file.empty()) b.liouvillian = "dep";
  const auto l = resolve_liouvillian(b);
  const double tt = t >= 0 ? t : t0_depolarizing(l.dim());
  NormSearchOptions no;
  no.restarts = restarts;
  no.seed = a.seed;
  const auto h = quantum_2to4_bound(l, weyl_basis(l.dim()), tt, n, no);
  dump(out, {{"t", h.t},
             {"n", h.n},
             {"quantum", h.quantum},
             {"classical", h.classical},
             {"passed", h.passed()},
             {"note", "both norms are optimizer estimates (lower bounds on the true suprema)"}});
  return h.passed() ? kExitOk : kExitFailed;
}

inline std::vector<std::string> split_suites(const std::string& s) {
  if (s == "all") {
    std::vector<std::string> out;
    for (const auto& e : suite_registry()) out.push_back(e.name);
    return out;
  }
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    const bool known = std::any_of(suite_registry().begin(), suite_registry().end(), [&](const SuiteEntry& e) { return e.name == item; });
    if (!known) fail(ErrorCode::InputError, "--suite: unknown suite '" + item + "' (see verify --list)");
    out.push_back(item);
  }
  return out;
}

inline int run_verify(const std::string& suites, const VerifyOptions& opt, bool list, std::ostream& out, std::ostream& err) {
  if (list) {
    for (const auto& s : suite_registry()) out << s.name << "\t" << s.claim << '\n';
    return kExitOk;
  }
  json reports = json::array();
  bool ok = true;
  for (const auto& name : split_suites(suites)) {
    const auto r = run_suite(name, opt);
    err << name << ": " << (r.passed() ? "pass" : "FAIL") << " in " << std::fixed << std::setprecision(2) << r.wall_seconds << " s\n";
    ok = ok && r.passed();
    reports.push_back(r.to_json());
  }
  json dims = json::array();
  for (auto d : opt.dims) dims.push_back(d);
  dump(out, {{"schema", kReportSchema},
             {"seed", opt.seed},
             {"dims", dims},
             {"instances", opt.instances},
             {"suites", reports},
             {"passed", ok}});
  return ok ? kExitOk : kExitFailed;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli;
  CLI::App app{"LS constants, entropy production and hypercontractivity of doubly stochastic quantum channels"};
  app.require_subcommand(1);

  OperatorArgs op;

  auto* channel = app.add_subcommand("channel", "validate or construct channels");
  channel->require_subcommand(1);
  auto* validate = channel->add_subcommand("validate", "check a channel and report its invariants");
  add_operator_options(validate, op, false);
  std::string make_out;
  auto* make = channel->add_subcommand("make", "write a preset channel as JSON");
  add_operator_options(make, op, false);
  make->add_option("--out", make_out, "output file (default stdout)");

  LsArgs ls_args;
  auto* ls = app.add_subcommand("ls", "LS constants and related bounds of a generator");
  add_operator_options(ls, op, true);
  ls->add_option("--kind", ls_args.kind, "alpha2, alpha1, gap, sandwich, tensor, snapshot");
  ls->add_option("--method", ls_args.method, "auto, closed, variational");
  ls->add_option("--restarts", ls_args.restarts, "variational restarts")->check(CLI::Range(1, 4096));
  ls->add_option("--t0", ls_args.t0, "snapshot time (default: depolarizing t0)");
  ls->add_flag("--no-qubit-override", ls_args.no_qubit_override, "report the general tensor formula at d = 2");

  DiscreteArgs disc_args;
  auto* discrete = app.add_subcommand("discrete", "discrete LS constant of a channel");
  add_operator_options(discrete, op, false);
  discrete->add_option("--method", disc_args.method, "auto, closed, variational");
  discrete->add_option("--restarts", disc_args.restarts, "variational restarts")->check(CLI::Range(1, 4096));
  discrete->add_option("--powers", disc_args.powers, "trace alpha_2 of powers up to K")->check(CLI::Range(1, kMaxPowerTrace));
  discrete->add_option("--rho", disc_args.rho, "check data processing on pure, mixed, random or random-pure");
  discrete->add_option("--q", disc_args.q, "check 2 -> q hypercontractivity");

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "entropy production curve as CSV");
  add_operator_options(curve, op, true);
  curve->add_option("--rho", curve_args.rho, "pure, mixed, random, random-pure");
  curve->add_option("--tmax", curve_args.tmax, "final time");
  curve->add_option("--steps", curve_args.steps, "grid intervals");
  curve->add_option("--alpha", curve_args.alpha, "certified rate: alpha2, alpha1, tensor");
  curve->add_option("--out", curve_args.out_file, "CSV file (default stdout)");

  double cap_tmax = 3.0;
  int cap_steps = 30;
  bool cap_no_override = false;
  auto* capacity = app.add_subcommand("capacity", "upper bound on the subdivision capacity");
  add_operator_options(capacity, op, true);
  capacity->add_option("--tmax", cap_tmax, "final time");
  capacity->add_option("--steps", cap_steps, "grid intervals");
  capacity->add_flag("--no-qubit-override", cap_no_override, "use the general tensor formula at d = 2");

  double hyper_t = -1.0;
  int hyper_n = 1, hyper_restarts = 16;
  auto* hyper = app.add_subcommand("hyper", "2 -> 4 norm of e^{tL} tensor powers against the classical semigroup");
  add_operator_options(hyper, op, true);
  hyper->add_option("--t", hyper_t, "time (default: depolarizing t0)");
  hyper->add_option("--n", hyper_n, "tensor power")->check(CLI::Range(1, 4));
  hyper->add_option("--restarts", hyper_restarts, "optimizer restarts")->check(CLI::Range(1, 4096));

  VerifyOptions vopt;
  std::string suites = "all";
  std::vector<long> dims{2, 3, 4};
  bool list = false;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suites, "suite name, comma list, or all");
  verify->add_option("--dims", dims, "dimensions")->delimiter(',')->check(CLI::Range(2, 8));
  verify->add_option("--instances", vopt.instances, "instances per dimension")->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", vopt.seed, "master seed");
  verify->add_option("--restarts", vopt.restarts, "variational restarts")->check(CLI::Range(1, 4096));
  verify->add_option("--samples", vopt.samples, "random X per comparison instance")->check(CLI::Range(1, 10000000));
  verify->add_option("--threads", vopt.threads, "worker threads (default QLS_THREADS or all cores)")->check(CLI::Range(1, 1024));
  verify->add_flag("--list", list, "list suites and exit");

  const auto start = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  int code = kExitOk;
  try {
    if (validate->parsed()) {
      code = run_channel_validate(op, out);
    } else if (make->parsed()) {
      const auto j = channel_to_json(resolve_channel(op)).dump() + "\n";
      if (make_out.empty()) {
        out << j;
      } else {
        std::ofstream f(make_out, std::ios::binary);
        if (!f) fail(ErrorCode::InputError, "cannot write " + make_out);
        f << j;
      }
    } else if (ls->parsed()) {
      code = run_ls(op, ls_args, out);
    } else if (discrete->parsed()) {
      code = run_discrete(op, disc_args, out);
    } else if (curve->parsed()) {
      code = run_curve(op, curve_args, out);
    } else if (capacity->parsed()) {
      code = run_capacity(op, cap_tmax, cap_steps, cap_no_override, out);
    } else if (hyper->parsed()) {
      code = run_hyper(op, hyper_t, hyper_n, hyper_restarts, out);
    } else if (verify->parsed()) {
      vopt.dims.assign(dims.begin(), dims.end());
      code = run_verify(suites, vopt, list, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::BoundViolation ? kExitFailed : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  err << "wall time " << std::fixed << std::setprecision(3)
      << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  return code;
}

}  // namespace qls
