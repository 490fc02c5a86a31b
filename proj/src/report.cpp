#include "cslab/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cslab {

namespace {

nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["name"] = r.name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["raw"] = r.raw;
  j["raw_imag"] = r.raw_imag;
  if (r.mod_z) {
    j["mod_z"] = {{"raw", r.mod_z->raw}, {"reduced", r.mod_z->reduced}, {"nearest_int", r.mod_z->nearest_int}};
  } else {
    j["mod_z"] = nullptr;
  }
  if (r.expected)
    j["expected"] = *r.expected;
  else
    j["expected"] = nullptr;
  if (r.abs_error)
    j["abs_error"] = *r.abs_error;
  else
    j["abs_error"] = nullptr;
  j["tolerance"] = r.tolerance;
  j["quadrature"] = {{"order_per_axis", r.quad_order}, {"node_count", r.node_count}};
  j["differentiation"] = {{"backend", r.diff_backend}, {"step", r.diff_step}, {"richardson", r.diff_richardson}};
  j["seed"] = r.seed;
  j["elapsed_ms"] = r.elapsed_ms;
  j["pass"] = r.pass;
  return j;
}

std::string param_summary(const ExperimentReport& r) {
  std::string s;
  for (const auto& [k, v] : r.params) {
    if (!s.empty()) s += ';';
    s += k + "=" + v;
  }
  return s;
}

std::string num_or_empty(const std::optional<double>& v) {
  if (!v) return {};
  std::ostringstream os;
  os.precision(17);
  os << *v;
  return os.str();
}

} // namespace

std::string reports_to_json(const std::vector<ExperimentReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<ExperimentReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "name,param_summary,raw,reduced_mod_z,expected,abs_error,pass,elapsed_ms\n";
  for (const auto& r : reports) {
    os << r.name << ',' << param_summary(r) << ',' << r.raw << ',';
    if (r.mod_z) os << r.mod_z->reduced;
    os << ',' << num_or_empty(r.expected) << ',' << num_or_empty(r.abs_error) << ','
       << (r.pass ? "true" : "false") << ',' << r.elapsed_ms << '\n';
  }
  return os.str();
}

std::string reports_to_text(const std::vector<ExperimentReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    const std::string ps = param_summary(r);
    if (!ps.empty()) os << " (" << ps << ")";
    os.precision(12);
    os << ": raw=" << r.raw;
    if (r.raw_imag != 0.0) os << (r.raw_imag > 0 ? "+" : "") << r.raw_imag << "i";
    if (r.expected) os << " expected=" << *r.expected;
    if (r.abs_error) {
      os.precision(3);
      os << std::scientific << " err=" << *r.abs_error << " tol=" << r.tolerance << std::defaultfloat;
      os.precision(12);
    }
    os << " [" << r.elapsed_ms << " ms]\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << contents;
}

} // namespace cslab
