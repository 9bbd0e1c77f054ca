#pragma once

// Exact and oracle solutions for the benchmarks, the entropy-wave amplitude
// extraction, and the error norms used in the benchmark tables.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "specshock/problems.hpp"

namespace specshock {

struct ErrorReport {
  double l1 = 0.0;
  double l2 = 0.0;
  std::size_t n = 0;  ///< number of points entering the sums
  std::string field;
  double time = 0.0;
};

/// L1 = mean |f - ref|, L2 = sqrt(sum |f - ref|^2 / n) over the given samples.
ErrorReport error_norms(std::span<const double> f, std::span<const double> ref,
                        const std::string& field = "", double time = 0.0);

/// Same norms on a grid. Periodic axes contribute their wrap point x = hi
/// (a copy of x = lo), so an N-point periodic axis sums over N+1 points.
ErrorReport error_norms(const Field& f, const Field& ref, const Grid& grid,
                        const std::string& field = "", double time = 0.0);

/// u0(x - t) with x - t wrapped into a periodic 1D domain.
Field advection_exact(const std::function<double(double)>& u0, const Grid& grid, double t);

enum class BurgersWave { shock, rarefaction };

/// Examples 3 and 4: unit jump down (shock, speed 1/2) or up (fan u = x/t).
double burgers_exact(BurgersWave kind, double x, double t);

/// Star region and wave speeds of a 1D Euler Riemann problem.
struct RiemannStar {
  double p = 0.0, u = 0.0;
  double rho_left = 0.0, rho_right = 0.0;
  bool left_shock = false, right_shock = false;
  double left_speed = 0.0;   ///< shock speed, or fan head when a rarefaction
  double left_tail = 0.0;    ///< fan tail (equals left_speed for a shock)
  double right_speed = 0.0;
  double right_tail = 0.0;
};

/// Throws StateError on inadmissible input or vacuum generation.
RiemannStar riemann_star(const Primitive& left, const Primitive& right, double gamma = kGamma);
Primitive riemann_exact(const Primitive& left, const Primitive& right, double xi,
                        double gamma = kGamma);

/// First-order local Lax-Friedrichs solution of Example 5 on `n` nodes over
/// [-1, 1], cached through SPECSHOCK_CACHE.
std::vector<double> nonconvex_profile(int n, double t);
/// The fine profile (n = 16385) sampled at x by linear interpolation.
std::vector<double> nonconvex_reference(std::span<const double> x, double t, int n_fine = 16385);

/// Example 11 density at time t (vortex carried by the free stream (1, 1)).
Field isentropic_vortex_exact(const ProblemSpec& spec, const Grid& grid, double t);

enum class Baseline {
  moving_average,  ///< centred mean over one wavelength along x
  transverse_mean, ///< mean over the periodic y direction at each x
};

struct AmplitudeProfile {
  std::vector<double> x;      ///< refined abscissae
  std::vector<double> upper;  ///< max over y of the perturbation at each x
  std::vector<double> lower;  ///< min over y of the perturbation at each x
  double shock_x = 0.0;
};

/// Perturbation of the post-shock density about its local mean on a grid
/// refined `refine` times by spectral interpolation. Only x below the shock
/// (located at the steepest x-gradient) minus `shock_margin` is returned.
/// Throws AnalysisError when no shock is found.
AmplitudeProfile entropy_amplitude_profile(const Field& rho, const Grid& grid, double wavelength,
                                           Baseline baseline, int refine = 8,
                                           double shock_margin = 0.1);

/// Local extrema of a sampled profile (values strictly above both neighbours,
/// or strictly below for minima).
std::vector<std::size_t> local_maxima(std::span<const double> v);
std::vector<std::size_t> local_minima(std::span<const double> v);

/// Spectral interpolation of a bounded, even-extended line onto refine*(N-1)+1 points.
std::vector<double> spectral_refine(std::span<const double> u, int refine);
/// Spectral interpolation of a periodic line onto refine*N points.
std::vector<double> spectral_refine_periodic(std::span<const double> u, int refine);

}  // namespace specshock
