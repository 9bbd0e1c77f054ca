#pragma once

// Delta-type lowpass kernels: the regularized Shannon kernel (a Gaussian
// windowed sinc) and the Lagrange interpolation kernel, in physical space and
// as Fourier-domain magnitude responses.

#include <span>
#include <vector>

namespace specshock {

enum class FilterFamily { rsk, lagrange };

/// Kernel family, stencil half-width W (2W+1 points), ratio r = sigma/spacing
/// and grid spacing. The ratio is ignored by the Lagrange family.
struct FilterSpec {
  FilterFamily family = FilterFamily::rsk;
  int half_width = 32;
  double ratio = 3.2;
  double spacing = 1.0;

  static FilterSpec rsk(double ratio, int half_width = 32, double spacing = 1.0);
  static FilterSpec lagrange(int half_width, double spacing = 1.0);

  double sigma() const { return ratio * spacing; }
  /// Throws ContractError unless W >= 1, spacing > 0 and (RSK) ratio > 0.
  void validate() const;
};

/// sin(pi x/dx)/(pi x/dx) * exp(-x^2 / (2 sigma^2)); exactly 1 at x = 0 and
/// exactly 0 at nonzero multiples of the spacing.
double rsk_value(double offset, const FilterSpec& spec);

/// Lagrange cardinal function of node j on the nodes k*dx, k in [-W, W].
double lagrange_weight(int j, double x, const FilterSpec& spec);

/// Cardinal function of nodes[j] on an arbitrary node set.
double lagrange_basis(std::span<const double> nodes, std::size_t j, double x);

/// Closed-form continuous Fourier image of the RSK, normalized to 1 at
/// omega = 0. Depends on omega only through theta = omega * dx.
double rsk_response_at(double ratio, double theta);
std::vector<double> rsk_response(const FilterSpec& spec,
                                 std::span<const double> wavenumbers);

/// Weights w_1..w_W of the half-shift interpolation stencil: the midpoint
/// value is sum_m w_m (u_{i+1-m} + u_{i+m}). Renormalized so 2*sum(w) = 1.
std::vector<double> half_shift_weights(const FilterSpec& spec);

/// Fourier response of a half-shift stencil: 2 sum_m w_m cos((m - 1/2) theta).
double half_shift_response(std::span<const double> weights, double theta);

/// Half-shift response of the Lagrange stencil at theta_k = 2 pi k / n,
/// k = 0..n/2.
std::vector<double> lagrange_response(const FilterSpec& spec, int n);

}  // namespace specshock
