#pragma once

// Physical-domain lowpass filtering on a staggered (mid-mesh) stencil, the
// total-variation switch that decides when to filter, and the Lagrange
// post-processing filters.

#include <cstddef>
#include <span>
#include <vector>

#include "specshock/kernels.hpp"

namespace specshock {

/// How values beyond an end of a line are supplied.
enum class GhostRule {
  periodic,    ///< wrap around
  mirror,      ///< even reflection about the end node, u_{-k} = u_k
  antimirror,  ///< odd reflection about the end node, u_{-k} = -u_k
  constant,    ///< zeroth-order extrapolation, u_{-k} = u_0
};

struct LineBoundary {
  GhostRule lo = GhostRule::periodic;
  GhostRule hi = GhostRule::periodic;

  static LineBoundary both(GhostRule r) { return {r, r}; }
  bool periodic() const { return lo == GhostRule::periodic; }
  /// Throws ContractError on an unknown rule or a half-periodic pair.
  void validate() const;
};

/// Sample of a line at any integer index, with ghosts supplied by `bc`.
double ghost_value(std::span<const double> u, std::ptrdiff_t index, const LineBoundary& bc);

/// Mid-mesh values; values[k] belongs to the midpoint (first + k) + 1/2.
struct Staggered {
  std::vector<double> values;
  std::ptrdiff_t first = 0;
};

/// Mid-mesh prediction for i = -W .. N+W-2 (enough for reconstruct_nodes to
/// rebuild every node 0..N-1).
Staggered predict_midpoints(std::span<const double> u, const FilterSpec& spec,
                            const LineBoundary& bc);

/// Nodal reconstruction from mid-mesh values. The stencil of node i covers
/// midpoints i-W+1/2 .. i+W-1/2; nodes are rebuilt wherever that fits, and the
/// input must cover at least one node.
std::vector<double> reconstruct_nodes(const Staggered& mid, const FilterSpec& spec);

/// predict_midpoints(weak) followed by reconstruct_nodes(strong).
std::vector<double> physical_filter(std::span<const double> u, const FilterSpec& strong,
                                    const FilterSpec& weak, const LineBoundary& bc);

/// sum |u_{i+1} - u_i|, plus the wrap term |u_0 - u_{N-1}| when periodic.
double total_variation(std::span<const double> u, bool periodic);

enum class MonitoredField { scalar, density };

struct SensorConfig {
  double threshold = 1.0 + 1e-4;
  MonitoredField monitored = MonitoredField::density;

  void validate() const;
};

/// True iff tv_curr > threshold * tv_prev (or tv_prev == 0 < tv_curr).
bool sensor_should_filter(double tv_prev, double tv_curr, const SensorConfig& cfg);

/// One pass of the physical filter with Lagrange half-shift weights, W = order.
std::vector<double> postprocess_lagrange(std::span<const double> u, int order,
                                         const LineBoundary& bc);

/// Index i maximizing |u_{i+1} - u_i| (first one on ties).
std::size_t steepest_gradient_index(std::span<const double> u);

/// Lagrange post-processing restricted to [s - window, s + 1 + window] around
/// the steepest jump s; everything else is returned bit-identical.
std::vector<double> local_filter_near_shock(std::span<const double> u, int window_halfwidth,
                                            int order = 4,
                                            const LineBoundary& bc = LineBoundary::both(GhostRule::mirror));

}  // namespace specshock
