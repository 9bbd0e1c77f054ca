#pragma once

// The twelve benchmark problems: domains, constants, default resolutions,
// time steps and filter ratios, and their initial data.

#include <memory>
#include <optional>
#include <string>

#include "specshock/physics.hpp"

namespace specshock {

enum class PostProcessKind { none, lagrange, local };

struct PostProcess {
  PostProcessKind kind = PostProcessKind::none;
  int order = 4;
  int window = 8;
};

/// Benchmark identity plus every constant its initial data depends on.
/// `default_problem` fills in the benchmark values.
struct ProblemSpec {
  int example = 0;
  std::string variant;  ///< "sod"/"lax" for example 6

  int nx = 0;
  int ny = 0;
  double t_final = 0.0;
  double dt = 0.0;   ///< fixed step; 0 means CFL-controlled
  double cfl = 0.0;
  double ratio = 0.0;  ///< RSK r used by the filter
  bool physical_filter = false;
  PostProcess post;

  double epsilon = 0.0;  ///< entropy-wave / vortex amplitude
  double kappa = 0.0;    ///< entropy-wave wavenumber
  double theta = 0.0;    ///< entropy-wave angle (example 9)
  double mach = 0.0;     ///< shock Mach number
  double vortex_xc = 0.0, vortex_yc = 0.0, vortex_rc = 0.0, vortex_alpha = 0.0;
  double vortex_lambda = 0.0, eta_vortex = 0.0;
  double map_rx = 0.0, map_ry = 0.0, map_theta = 0.0;

  /// Throws ContractError on an unknown id or a missing/out-of-range constant.
  void validate() const;
};

/// Benchmark defaults for an example (variant picks Sod/Lax for example 6).
ProblemSpec default_problem(int example, const std::string& variant = "");

/// Filter ratio from the benchmark r-table for an example at resolution n
/// (nearest tabulated case).
double default_ratio(int example, int n, const std::string& variant = "", double kappa = 0.0,
                     double eta_vortex = 0.0);

/// Everything a run needs besides the filter and time-step settings.
struct Problem {
  ProblemSpec spec;
  Grid grid;
  std::shared_ptr<const ConservationLaw> law;
  std::array<AxisBoundary, 2> bc;
  std::shared_ptr<const Mapping> mapping;  ///< set for example 12 only
  State initial;

  bool is_euler() const { return law->components() > 1; }
};

State init_problem(const ProblemSpec& spec);
Problem build_problem(const ProblemSpec& spec);
std::unique_ptr<RhsOperator> make_rhs(const Problem& problem);

/// Grid and boundary layout of an example (resolution from the spec).
Grid problem_grid(const ProblemSpec& spec);
std::array<AxisBoundary, 2> problem_boundaries(const ProblemSpec& spec);

// Pieces of the initial data that the reference solutions reuse.
double example1_initial(double x);
double example2_initial(double x);
/// Isentropic vortex density on [0,10]^2 (periodic) centred at (x0, y0).
double vortex_density(double x, double y, double x0, double y0, double lambda, double eta,
                      double gamma = kGamma);
Primitive vortex_state(double x, double y, double x0, double y0, double lambda, double eta,
                       double gamma = kGamma);

/// Post-shock state behind a shock of Mach `mach` moving in +x into `ahead`.
Primitive post_shock_state(const Primitive& ahead, double mach, double gamma = kGamma);
double shock_speed(const Primitive& ahead, double mach, double gamma = kGamma);

}  // namespace specshock
