#pragma once

// JSON for channels, Liouvillians and estimates; CSV for entropy curves.
// Matrices are lists of [re, im] pairs in row-major order.

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qls/channels.hpp"
#include "qls/ls_constants.hpp"

namespace qls {

inline constexpr const char* kReportSchema = "qls-report/1";

using nlohmann::json;

namespace detail {

[[noreturn]] inline void input_error(const std::string& field, const std::string& what) {
  fail(ErrorCode::InputError, field + ": " + what);
}

inline Complex complex_from_json(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) input_error(field, "expected [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

inline ComplexMatrix matrix_from_json(const json& v, Eigen::Index rows, Eigen::Index cols, const std::string& field) {
  if (!v.is_array()) input_error(field, "expected an array of [re, im] entries");
  if (static_cast<Eigen::Index>(v.size()) != rows * cols) {
    input_error(field, "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(v.size()));
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = complex_from_json(v[k], field + "[" + std::to_string(k) + "]");
    }
  return m;
}

inline std::vector<ComplexMatrix> kraus_from_json(const json& v, Eigen::Index d, const std::string& field) {
  if (!v.is_array() || v.empty()) input_error(field, "expected a non-empty list of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(matrix_from_json(v[i], d, d, field + "[" + std::to_string(i) + "]"));
  return out;
}

inline Eigen::Index dim_from_json(const json& j) {
  if (!j.is_object()) input_error("<root>", "expected an object");
  if (!j.contains("dim")) input_error("dim", "missing");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) input_error("dim", "expected a positive integer");
  return j["dim"].get<Eigen::Index>();
}

/// Re-throws library validation failures as input errors naming the field.
template <class F>
auto validated(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InputError) throw;
    input_error(field, std::string(to_string(e.code())) + ": " + e.what());
  }
}

}  // namespace detail

inline json matrix_to_json(const ComplexMatrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back({m(r, c).real(), m(r, c).imag()});
  return a;
}

/// Parses text, reporting the line of a syntax error.
inline json parse_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min(text.size(), e.byte));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    fail(ErrorCode::InputError, source + ":" + std::to_string(line) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InputError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json channel_to_json(const QuantumChannel& t) {
  json k = json::array();
  for (const auto& m : t.kraus()) k.push_back(matrix_to_json(m));
  return {{"dim", t.dim()}, {"kraus", k}};
}

inline QuantumChannel channel_from_json(const json& j) {
  const Eigen::Index d = detail::dim_from_json(j);
  if (!j.contains("kraus")) detail::input_error("kraus", "missing");
  auto kraus = detail::kraus_from_json(j["kraus"], d, "kraus");
  return detail::validated("kraus", [&] { return QuantumChannel(std::move(kraus)); });
}

inline json liouvillian_to_json(const Liouvillian& l) {
  json j{{"dim", l.dim()}};
  if (const auto& lf = l.lindblad_form()) {
    json k = json::array();
    for (const auto& m : lf->phi_kraus) k.push_back(matrix_to_json(m));
    j["phi_kraus"] = k;
    j["kappa"] = matrix_to_json(lf->kappa);
  } else {
    j["superop"] = matrix_to_json(l.superop());
  }
  return j;
}

/// Accepts {"dim", "phi_kraus", "kappa"} or {"dim", "superop"} (d^2 x d^2, column-stacking).
inline Liouvillian liouvillian_from_json(const json& j) {
  const Eigen::Index d = detail::dim_from_json(j);
  if (j.contains("phi_kraus") || j.contains("kappa")) {
    if (!j.contains("phi_kraus")) detail::input_error("phi_kraus", "missing (kappa given)");
    if (!j.contains("kappa")) detail::input_error("kappa", "missing (phi_kraus given)");
    auto phi = detail::kraus_from_json(j["phi_kraus"], d, "phi_kraus");
    const ComplexMatrix kappa = detail::matrix_from_json(j["kappa"], d, d, "kappa");
    return detail::validated("kappa", [&] { return Liouvillian::lindblad(std::move(phi), kappa); });
  }
  if (j.contains("superop")) {
    const ComplexMatrix s = detail::matrix_from_json(j["superop"], d * d, d * d, "superop");
    return detail::validated("superop", [&] { return Liouvillian(s); });
  }
  detail::input_error("<root>", "need phi_kraus + kappa or superop");
}

inline QuantumChannel load_channel(const std::string& path) {
  return channel_from_json(parse_json_text(read_file(path), path));
}

inline Liouvillian load_liouvillian(const std::string& path) {
  return liouvillian_from_json(parse_json_text(read_file(path), path));
}

/// 17 significant digits, independent of the locale.
inline std::string format_double(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(17) << v;
  return s.str();
}

inline void write_curve_csv(std::ostream& out, const EntropyCurve& c) {
  out << "t,entropy,bound,slack\n";
  for (const auto& r : c.rows) {
    out << format_double(r.t) << ',' << format_double(r.entropy) << ',' << format_double(r.bound) << ','
        << format_double(r.slack) << '\n';
  }
}

}  // namespace qls
