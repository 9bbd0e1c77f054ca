#pragma once

// Classical RK4 time stepping and the simulation driver: adaptive
// (TV-switched) filtering after each full RK4 cycle, diagnostics and the
// final post-processing pass.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specshock/filtering.hpp"
#include "specshock/problems.hpp"

namespace specshock {

/// One classical four-stage RK4 step of u' = rhs(u).
State rk4_step(const State& u, RhsOperator& rhs, double dt);

/// cfl * min spacing / max wave speed; falls back to cfl * min spacing when
/// every wave speed is zero.
double dt_from_cfl(const Grid& grid, const ConservationLaw& law, const State& u, double cfl);

enum class FilterDomain { fourier, physical };

/// What stops a run: any non-finite value or nonpositive density/pressure
/// (strict), or non-finite values only (finite).
enum class Admissibility { strict, finite };

/// Tensor-product total variation of a field; periodic axes add the wrap term.
double field_total_variation(const Field& f, const Grid& grid);

/// Sum of the field times the cell size (periodic axes) or trapezoid weights.
double field_mass(const Field& f, const Grid& grid);

struct SimulationConfig {
  ProblemSpec problem;
  FilterSpec filter = FilterSpec::rsk(3.2);
  SensorConfig sensor;
  FilterDomain filter_domain = FilterDomain::fourier;
  bool filter_enabled = true;
  /// Predictor ratio of the physical filter as a fraction of filter.ratio.
  double weak_ratio_scale = 0.85;
  double dt = 0.0;   ///< fixed step when > 0, otherwise CFL-controlled
  double cfl = 0.0;
  double t_final = 0.0;
  int output_every = 1;  ///< diagnostics cadence in steps
  bool postprocess = true;
  Admissibility admissibility = Admissibility::strict;
  /// Extra times (ascending) that CFL-controlled steps land on exactly.
  std::vector<double> checkpoints;

  /// Config for a problem with its benchmark dt/CFL, r and filter domain.
  static SimulationConfig from_problem(const ProblemSpec& spec);
  /// Throws ContractError on inconsistent settings.
  void validate(const Problem& problem) const;
};

struct Diagnostic {
  int step = 0;
  double t = 0.0;
  double tv = 0.0;
  bool filtered = false;
  double mass = 0.0;
};

struct SimulationResult {
  Problem problem;
  State state;
  double t = 0.0;
  int steps = 0;
  int filter_count = 0;
  std::vector<Diagnostic> diagnostics;
};

/// Thrown when a step produces a non-finite or inadmissible state.
class SimulationAborted : public std::runtime_error {
 public:
  SimulationAborted(int step, double t, std::string field, State last_good, const std::string& what);
  int step() const { return step_; }
  double time() const { return t_; }
  const std::string& field() const { return field_; }
  const State& last_good() const { return last_good_; }

 private:
  int step_;
  double t_;
  std::string field_;
  State last_good_;
};

/// Called after every completed step (state after filtering).
using StepObserver = std::function<void(const Diagnostic&, const State&)>;

SimulationResult run_simulation(const SimulationConfig& cfg, const StepObserver& observer = {});

/// Applies the configured filter to every conserved component.
void apply_filter(State& u, const Problem& problem, const SimulationConfig& cfg);

/// Lagrange post-processing of every component along every bounded axis.
void apply_postprocess(State& u, const Problem& problem);

}  // namespace specshock
