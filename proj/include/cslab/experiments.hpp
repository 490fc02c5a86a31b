#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cslab/chern_simons.hpp"
#include "cslab/hopf.hpp"

namespace cslab {

/// Machine-readable record of one experiment run.
struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  double raw = 0.0;
  double raw_imag = 0.0; // 0 for real-valued experiments
  std::optional<ModZValue> mod_z;
  std::optional<double> expected;
  std::optional<double> abs_error;
  double tolerance = 1e-6;
  int quad_order = 0;       // 0 for pointwise experiments
  long long node_count = 0; // quadrature nodes or sample-point count
  std::string diff_backend = "fd";
  double diff_step = 1e-5;
  bool diff_richardson = true;
  std::uint64_t seed = 0;
  long long elapsed_ms = 0;
  bool pass = false;
};

/// Shared settings for the experiment runners. The inner spec drives frame
/// and metric differentiation; exterior derivatives of connections whose
/// values are themselves finite-difference chains use a wider pinned step
/// (noise in the inner values makes the nominal step too small there).
struct RunOptions {
  int quad_order = 16;
  DiffSpec spec = fd_spec();
  std::optional<double> tolerance_override;
  std::uint64_t seed = 1;
};

enum class McTarget { So3, S3Real, S3RealInverse, Su2 };
enum class GaugeMode { None, Constant, So2 };
enum class FuzzKind { Gauge, Block, Dcs, Frobenius, Realification, Structure, Constants, Stable, Polar };

const char* mc_target_name(McTarget t);
const char* gauge_mode_name(GaugeMode m);
const char* fuzz_kind_name(FuzzKind k);
bool parse_mc_target(const std::string& s, McTarget& out);
bool parse_fuzz_kind(const std::string& s, FuzzKind& out);

/// Normalized Maurer-Cartan integrals over the group 3-cycles reached from
/// the sphere: (1/48pi^2) integral of tr(mu^3) for the real targets
/// (SO(3) through the adjoint double cover with multiplicity 1/2), and
/// (1/24pi^2) integral of tr_C(mu^3) for SU(2).
ExperimentReport run_mc_integral(McTarget target, const RunOptions& opt);

/// Exact algebra constants: the ad-triple traces, i j k = -1, and the
/// complex representation of ijk.
ExperimentReport run_algebra_constants(const RunOptions& opt);

/// Integral of the Chern-Simons form of the Levi-Civita connection on the
/// round sphere in the left-invariant frame; optionally after a constant or
/// an SO(2)-valued gauge change of the frame.
ExperimentReport run_cs_sphere(const RunOptions& opt, GaugeMode gauge = GaugeMode::None);

/// Lens-space invariant: the same integrand over the fundamental-domain
/// slab; expected -1/p mod Z.
ExperimentReport run_cs_lens(const LensParams& params, const RunOptions& opt);

/// Ellipsoid immersed in flat R^4: integral of the Chern-Simons form of the
/// induced connection, reported with its distance to the nearest integer.
/// With `conformal` set, the induced metric is rescaled by a random e^{2f}
/// and the connection recomputed from the Koszul formula in the same frame.
ExperimentReport run_hypersurface(const std::array<double, 4>& axes, const RunOptions& opt,
                                  bool conformal = false);

/// Conformal-invariance suite on the round sphere: the Koszul closed form of
/// the connection variation against a finite difference in t, the pointwise
/// curvature pairing that the Bianchi identity kills, and the integral
/// difference of the Chern-Simons forms of g and e^{2f} g in a fixed frame.
std::vector<ExperimentReport> run_conformal_check(const RunOptions& opt);

/// Randomized residual suites for the exact identities.
ExperimentReport run_identity_fuzz(FuzzKind which, const RunOptions& opt, int trials = 0);

/// Stable extension by rank 1 and rank 2 with independent random constant
/// gauge changes; the two sphere integrals must agree mod Z.
ExperimentReport run_stable_independence(const RunOptions& opt);

/// Orthogonality of the polar retraction at s = 1 over random 4x4 matrices.
ExperimentReport run_polar_check(const RunOptions& opt, int trials = 100);

/// Every experiment once, in a fixed order; covers all acceptance criteria.
std::vector<ExperimentReport> run_all(const RunOptions& opt);

} // namespace cslab
