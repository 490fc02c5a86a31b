// Command-line front end for the experiment suite.

#include <array>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cslab/report.hpp"

namespace {

struct CliConfig {
  int quad_order = 16;
  std::string diff = "fd";
  double fd_step = 1e-5;
  double tol = 0.0;
  bool tol_set = false;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
};

cslab::RunOptions to_run_options(const CliConfig& cfg) {
  cslab::RunOptions opt;
  opt.quad_order = cfg.quad_order;
  opt.spec = (cfg.diff == "analytic") ? cslab::analytic_spec() : cslab::fd_spec(cfg.fd_step, true);
  if (cfg.diff == "analytic") opt.spec.step = cfg.fd_step;
  opt.seed = cfg.seed;
  if (cfg.tol_set) opt.tolerance_override = cfg.tol;
  return opt;
}

int emit(const std::vector<cslab::ExperimentReport>& reports, const CliConfig& cfg) {
  std::cout << cslab::reports_to_text(reports);
  const std::string payload =
      (cfg.format == "csv") ? cslab::reports_to_csv(reports) : cslab::reports_to_json(reports);
  if (!cfg.out_path.empty()) {
    cslab::write_file(cfg.out_path, payload);
    std::cout << "wrote " << cfg.out_path << "\n";
  }
  for (const auto& r : reports)
    if (!r.pass) return 1;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Chern-Simons forms of connections on trivial bundles"};
  app.require_subcommand(1);

  CliConfig cfg;
  app.add_option("--quad-order", cfg.quad_order, "Quadrature order per axis")->capture_default_str();
  app.add_option("--diff", cfg.diff, "Derivative backend: analytic|fd")
      ->check(CLI::IsMember({"analytic", "fd"}))
      ->capture_default_str();
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Override every report tolerance")->each([&cfg](const std::string&) {
    cfg.tol_set = true;
  });
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write reports to this path");
  app.add_option("--format", cfg.format, "Output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.set_config("--config", "", "Config file with key = value lines; flags override it");

  auto* mc = app.add_subcommand("mc", "Normalized Maurer-Cartan integrals over group 3-cycles");
  std::string mc_target = "so3";
  mc->add_option("--target", mc_target, "so3|s3_real|s3_real_inverse|su2")
      ->check(CLI::IsMember({"so3", "s3_real", "s3_real_inverse", "su2"}))
      ->capture_default_str();

  auto* cs_sphere = app.add_subcommand("cs-sphere", "Chern-Simons integral on the round 3-sphere");
  std::string gauge = "none";
  cs_sphere->add_option("--gauge", gauge, "none|constant|so2 frame gauge change")
      ->check(CLI::IsMember({"none", "constant", "so2"}))
      ->capture_default_str();

  auto* cs_lens = app.add_subcommand("cs-lens", "Chern-Simons invariant of a lens space");
  cslab::LensParams lens;
  cs_lens->add_option("--p", lens.p, "Order of the cyclic group")->capture_default_str();
  cs_lens->add_option("--q1", lens.q1, "First rotation parameter")->capture_default_str();
  cs_lens->add_option("--q2", lens.q2, "Second rotation parameter")->capture_default_str();

  auto* hyper = app.add_subcommand("hypersurface", "Induced connection on an ellipsoid in flat R^4");
  std::vector<double> axes{1.0, 1.1, 1.2, 1.3};
  hyper->add_option("--axes", axes, "Four ellipsoid axes")->expected(4);
  bool conformal_metric = false;
  hyper->add_flag("--conformal", conformal_metric, "Rescale the induced metric by a random e^{2f}");

  auto* conformal = app.add_subcommand("conformal", "Conformal-invariance checks on the round sphere");

  auto* fuzz = app.add_subcommand("fuzz", "Randomized residual suites for the exact identities");
  std::string which = "block";
  fuzz->add_option("--which", which,
                   "gauge|block|dcs|frobenius|realification|structure (also: constants|stable|polar)")
      ->check(CLI::IsMember(
          {"gauge", "block", "dcs", "frobenius", "realification", "structure", "constants", "stable", "polar"}))
      ->capture_default_str();
  int trials = 0;
  fuzz->add_option("--trials", trials, "Trial count (0 = suite default)")->capture_default_str();

  auto* all = app.add_subcommand("all", "Run every experiment once");

  // global flags may also appear after the subcommand
  for (CLI::App* sub : {mc, cs_sphere, cs_lens, hyper, conformal, fuzz, all}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  const cslab::RunOptions opt = to_run_options(cfg);
  std::vector<cslab::ExperimentReport> reports;
  try {
    if (mc->parsed()) {
      cslab::McTarget t;
      cslab::parse_mc_target(mc_target, t);
      reports.push_back(cslab::run_mc_integral(t, opt));
    } else if (cs_sphere->parsed()) {
      cslab::GaugeMode m = cslab::GaugeMode::None;
      if (gauge == "constant") m = cslab::GaugeMode::Constant;
      if (gauge == "so2") m = cslab::GaugeMode::So2;
      reports.push_back(cslab::run_cs_sphere(opt, m));
    } else if (cs_lens->parsed()) {
      reports.push_back(cslab::run_cs_lens(lens, opt));
    } else if (hyper->parsed()) {
      reports.push_back(cslab::run_hypersurface({axes[0], axes[1], axes[2], axes[3]}, opt,
                                                conformal_metric));
    } else if (conformal->parsed()) {
      reports = cslab::run_conformal_check(opt);
    } else if (fuzz->parsed()) {
      cslab::FuzzKind k;
      cslab::parse_fuzz_kind(which, k);
      reports.push_back(cslab::run_identity_fuzz(k, opt, trials));
    } else if (all->parsed()) {
      reports = cslab::run_all(opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return emit(reports, cfg);
}
