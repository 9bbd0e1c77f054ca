#pragma once

// Fluxes and thermodynamics of the scalar laws and the ideal-gas Euler
// equations, boundary treatment, the cylinder mapping, and the Fourier
// pseudospectral right-hand sides built on them.

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "specshock/field.hpp"
#include "specshock/filtering.hpp"
#include "specshock/spectral.hpp"

namespace specshock {

inline constexpr double kGamma = 1.4;

// ---------------------------------------------------------------- scalar laws

enum class ScalarFluxKind { advection, burgers, nonconvex };

/// u, u^2/2 or (u^2 - 1)(u^2 - 4)/4.
double scalar_flux(double u, ScalarFluxKind kind);
double scalar_flux_derivative(double u, ScalarFluxKind kind);
/// max |f'(v)| for v between a and b (the flux may be non-convex).
double scalar_max_speed_between(double a, double b, ScalarFluxKind kind);

// ---------------------------------------------------------------- Euler point states

struct Primitive {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;
};

struct Conserved {
  double rho = 1.0;
  double mx = 0.0;
  double my = 0.0;
  double energy = 2.5;
};

/// E = p/(gamma-1) + rho (u^2 + v^2)/2. Throws StateError unless rho, p > 0.
Conserved conserved_from_primitive(const Primitive& w, double gamma = kGamma);
Primitive primitive_from_conserved(const Conserved& u, double gamma = kGamma);
double pressure(const Conserved& u, double gamma = kGamma);
double sound_speed(const Primitive& w, double gamma = kGamma);

/// (rho u, rho u^2 + p, u (E + p)).
std::array<double, 3> euler_flux_1d(const Conserved& u, double gamma = kGamma);
/// F (axis 0) or G (axis 1) of the 2D system, ordered (rho, rho u, rho v, E).
std::array<double, 4> euler_flux_2d(const Conserved& u, int axis, double gamma = kGamma);

// ---------------------------------------------------------------- laws on fields

/// A hyperbolic system u_t + sum_a f_a(u)_{x_a} = 0 acting on whole fields.
class ConservationLaw {
 public:
  virtual ~ConservationLaw() = default;
  virtual int components() const = 0;
  virtual std::string component_name(int c) const = 0;
  virtual void flux(const State& u, int axis, State& f) const = 0;
  /// Largest characteristic speed along `axis` over the field.
  virtual double max_wave_speed(const State& u, int axis) const = 0;
  /// Throws StateError naming the offending field on NaN or nonpositive rho/p.
  virtual void check_admissible(const State& u) const = 0;
  /// Throws StateError naming the first component holding a NaN or Inf.
  void check_finite(const State& u) const;
  /// Component holding the momentum normal to `axis`, if any.
  virtual std::optional<int> normal_momentum(int axis) const { (void)axis; return std::nullopt; }
  /// Parity of flux component c along `axis` when that axis ends at walls.
  Parity wall_flux_parity(int c, int axis) const;
  /// Parity of state component c along `axis` when that axis ends at walls.
  Parity wall_state_parity(int c, int axis) const;
};

class ScalarLaw final : public ConservationLaw {
 public:
  explicit ScalarLaw(ScalarFluxKind kind) : kind_(kind) {}
  ScalarFluxKind kind() const { return kind_; }
  int components() const override { return 1; }
  std::string component_name(int) const override { return "u"; }
  void flux(const State& u, int axis, State& f) const override;
  double max_wave_speed(const State& u, int axis) const override;
  void check_admissible(const State& u) const override;

 private:
  ScalarFluxKind kind_;
};

class EulerLaw final : public ConservationLaw {
 public:
  explicit EulerLaw(int dim, double gamma = kGamma) : dim_(dim), gamma_(gamma) {}
  int dim() const { return dim_; }
  double gamma() const { return gamma_; }
  int components() const override { return dim_ + 2; }
  std::string component_name(int c) const override;
  void flux(const State& u, int axis, State& f) const override;
  double max_wave_speed(const State& u, int axis) const override;
  void check_admissible(const State& u) const override;
  std::optional<int> normal_momentum(int axis) const override { return 1 + axis; }

  int energy_index() const { return dim_ + 1; }
  Conserved at(const State& u, std::size_t k) const;
  void set(State& u, std::size_t k, const Conserved& c) const;
  Field pressure_field(const State& u) const;

 private:
  int dim_;
  double gamma_;
};

// ---------------------------------------------------------------- boundaries

enum class BoundaryKind { periodic, mirror, reflective, outflow };

struct AxisBoundary {
  BoundaryKind lo = BoundaryKind::periodic;
  BoundaryKind hi = BoundaryKind::periodic;

  bool periodic() const { return lo == BoundaryKind::periodic; }
  bool has_wall() const { return lo == BoundaryKind::reflective || hi == BoundaryKind::reflective; }
};

/// Ghost rule used by the physical filter for component c of `law` on `axis`.
/// `walls_are_cartesian` is false on mapped grids, where the normal momentum
/// is not a single component and walls are treated as even mirrors.
LineBoundary filter_boundary(const AxisBoundary& bc, const ConservationLaw& law, int c,
                             int axis, bool walls_are_cartesian = true);

enum class Side { lo, hi };

/// Extends a 2D Euler state by `depth` ghost layers beyond the wall at
/// (axis, side): rho, tangential momentum and E are mirrored evenly about the
/// wall node, the wall-normal momentum oddly.
State apply_reflective_bc(const State& u, const EulerLaw& law, int axis, Side side, int depth);

// ---------------------------------------------------------------- mapping

struct MappingJacobian {
  double x_xi = 1.0, x_eta = 0.0, y_xi = 0.0, y_eta = 1.0;
  double det() const { return x_xi * y_eta - x_eta * y_xi; }
};

/// Smooth map from the computational square (xi, eta) to the physical plane.
class Mapping {
 public:
  virtual ~Mapping() = default;
  virtual std::array<double, 2> map(double xi, double eta) const = 0;
  virtual MappingJacobian jacobian(double xi, double eta) const = 0;
};

class IdentityMapping final : public Mapping {
 public:
  std::array<double, 2> map(double xi, double eta) const override { return {xi, eta}; }
  MappingJacobian jacobian(double, double) const override { return {}; }
};

/// x = -(Rx - (Rx-1) xi) cos(theta (2 eta - 1)), y = (Ry - (Ry-1) xi) sin(theta (2 eta - 1)).
class CylinderMapping final : public Mapping {
 public:
  CylinderMapping(double rx, double ry, double theta) : rx_(rx), ry_(ry), theta_(theta) {}
  std::array<double, 2> map(double xi, double eta) const override;
  MappingJacobian jacobian(double xi, double eta) const override;

 private:
  double rx_, ry_, theta_;
};

/// Inverse metric terms (xi_x, xi_y, eta_x, eta_y) sampled on a grid.
struct Metrics {
  Field xi_x, xi_y, eta_x, eta_y, jacobian;
};

/// Throws MappingError when |J| falls below `min_det` anywhere.
Metrics compute_metrics(const Grid& grid, const Mapping& mapping, double min_det = 1e-12);

// ---------------------------------------------------------------- right-hand sides

/// du/dt for one RK stage, plus the signal rate used for CFL time steps.
class RhsOperator {
 public:
  virtual ~RhsOperator() = default;
  virtual void operator()(const State& u, State& dudt) = 0;
  /// max over axes of (largest wave speed along the axis) / spacing.
  virtual double max_signal_rate(const State& u) const = 0;
  /// Re-imposes boundary constraints on a state (wall-normal momentum).
  virtual void enforce_boundaries(State& u) const { (void)u; }
};

/// -sum_a D_a f_a(u) on a Cartesian grid; bounded axes are mirror-extended,
/// with odd extension of the wall-normal flux/state components at walls.
class CartesianRhs final : public RhsOperator {
 public:
  CartesianRhs(const Grid& grid, std::shared_ptr<const ConservationLaw> law,
               std::array<AxisBoundary, 2> bc);
  void operator()(const State& u, State& dudt) override;
  double max_signal_rate(const State& u) const override;
  void enforce_boundaries(State& u) const override;

 private:
  Grid grid_;
  std::shared_ptr<const ConservationLaw> law_;
  std::array<AxisBoundary, 2> bc_;
  GridSpectral ops_;
  State flux_;
  Field deriv_;
};

/// Euler RHS on a mapped grid in chain-rule form:
/// U_t = -(xi_x D_xi F + eta_x D_eta F + xi_y D_xi G + eta_y D_eta G).
/// Walls at (axis 0, hi) have the normal momentum removed from the RHS.
class CurvilinearRhs final : public RhsOperator {
 public:
  CurvilinearRhs(const Grid& grid, std::shared_ptr<const EulerLaw> law,
                 std::shared_ptr<const Mapping> mapping, std::array<AxisBoundary, 2> bc);
  void operator()(const State& u, State& dudt) override;
  double max_signal_rate(const State& u) const override;
  void enforce_boundaries(State& u) const override;
  const Metrics& metrics() const { return metrics_; }

 private:
  void project_wall(State& u, bool keep_pressure) const;

  Grid grid_;
  std::shared_ptr<const EulerLaw> law_;
  std::shared_ptr<const Mapping> mapping_;
  std::array<AxisBoundary, 2> bc_;
  Metrics metrics_;
  GridSpectral ops_;
  State flux_f_, flux_g_;
  Field d_xi_, d_eta_;
};

/// Convenience wrapper: one evaluation of the curvilinear RHS.
State curvilinear_rhs(const State& u, const Grid& grid, std::shared_ptr<const Mapping> mapping,
                      std::array<AxisBoundary, 2> bc);

}  // namespace specshock
