#include "specshock/physics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specshock/errors.hpp"

namespace specshock {

// ---------------------------------------------------------------- scalar laws

double scalar_flux(double u, ScalarFluxKind kind) {
  switch (kind) {
    case ScalarFluxKind::advection: return u;
    case ScalarFluxKind::burgers: return 0.5 * u * u;
    case ScalarFluxKind::nonconvex: return 0.25 * (u * u - 1.0) * (u * u - 4.0);
  }
  throw ContractError("unknown scalar flux");
}

double scalar_flux_derivative(double u, ScalarFluxKind kind) {
  switch (kind) {
    case ScalarFluxKind::advection: return 1.0;
    case ScalarFluxKind::burgers: return u;
    case ScalarFluxKind::nonconvex: return u * u * u - 2.5 * u;
  }
  throw ContractError("unknown scalar flux");
}

double scalar_max_speed_between(double a, double b, ScalarFluxKind kind) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  double s = std::max(std::abs(scalar_flux_derivative(lo, kind)),
                      std::abs(scalar_flux_derivative(hi, kind)));
  if (kind == ScalarFluxKind::nonconvex) {
    // f'' = 3u^2 - 5/2 vanishes at +-sqrt(5/6): interior extrema of f'.
    const double c = std::sqrt(5.0 / 6.0);
    for (double v : {-c, c})
      if (v > lo && v < hi) s = std::max(s, std::abs(scalar_flux_derivative(v, kind)));
  }
  return s;
}

// ---------------------------------------------------------------- Euler points

Conserved conserved_from_primitive(const Primitive& w, double gamma) {
  if (!(w.rho > 0.0)) throw StateError("conserved_from_primitive: nonpositive density");
  if (!(w.p > 0.0)) throw StateError("conserved_from_primitive: nonpositive pressure");
  Conserved c;
  c.rho = w.rho;
  c.mx = w.rho * w.u;
  c.my = w.rho * w.v;
  c.energy = w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return c;
}

double pressure(const Conserved& u, double gamma) {
  return (gamma - 1.0) * (u.energy - 0.5 * (u.mx * u.mx + u.my * u.my) / u.rho);
}

Primitive primitive_from_conserved(const Conserved& u, double gamma) {
  if (!(u.rho > 0.0)) throw StateError("primitive_from_conserved: nonpositive density");
  Primitive w{u.rho, u.mx / u.rho, u.my / u.rho, pressure(u, gamma)};
  if (!(w.p > 0.0)) throw StateError("primitive_from_conserved: nonpositive pressure");
  return w;
}

double sound_speed(const Primitive& w, double gamma) { return std::sqrt(gamma * w.p / w.rho); }

std::array<double, 3> euler_flux_1d(const Conserved& u, double gamma) {
  const Primitive w = primitive_from_conserved(u, gamma);
  return {u.mx, u.mx * w.u + w.p, w.u * (u.energy + w.p)};
}

std::array<double, 4> euler_flux_2d(const Conserved& u, int axis, double gamma) {
  const Primitive w = primitive_from_conserved(u, gamma);
  if (axis == 0) return {u.mx, u.mx * w.u + w.p, u.mx * w.v, w.u * (u.energy + w.p)};
  if (axis == 1) return {u.my, u.my * w.u, u.my * w.v + w.p, w.v * (u.energy + w.p)};
  throw ContractError("euler_flux_2d: axis must be 0 or 1");
}

// ---------------------------------------------------------------- laws

Parity ConservationLaw::wall_state_parity(int c, int axis) const {
  const auto n = normal_momentum(axis);
  return n && *n == c ? Parity::odd : Parity::even;
}

Parity ConservationLaw::wall_flux_parity(int c, int axis) const {
  const auto n = normal_momentum(axis);
  if (!n) return Parity::even;
  return *n == c ? Parity::even : Parity::odd;
}

void ScalarLaw::flux(const State& u, int, State& f) const {
  const Field& in = u[0];
  Field& out = f[0];
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = scalar_flux(in[k], kind_);
}

double ScalarLaw::max_wave_speed(const State& u, int) const {
  double s = 0.0;
  for (double v : u[0].values()) s = std::max(s, std::abs(scalar_flux_derivative(v, kind_)));
  return s;
}

void ConservationLaw::check_finite(const State& u) const {
  for (int c = 0; c < components(); ++c) {
    const auto v = u[c].values();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!std::isfinite(v[k])) {
        std::ostringstream os;
        os << "field " << component_name(c) << ": non-finite value at index " << k;
        throw StateError(os.str());
      }
  }
}

void ScalarLaw::check_admissible(const State& u) const {
  const auto v = u[0].values();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!std::isfinite(v[k])) {
      std::ostringstream os;
      os << "field u: non-finite value at index " << k;
      throw StateError(os.str());
    }
}

std::string EulerLaw::component_name(int c) const {
  if (c == 0) return "rho";
  if (c == energy_index()) return "E";
  return c == 1 ? "rho_u" : "rho_v";
}

Conserved EulerLaw::at(const State& u, std::size_t k) const {
  Conserved c;
  c.rho = u[0][k];
  c.mx = u[1][k];
  c.my = dim_ == 2 ? u[2][k] : 0.0;
  c.energy = u[energy_index()][k];
  return c;
}

void EulerLaw::set(State& u, std::size_t k, const Conserved& c) const {
  u[0][k] = c.rho;
  u[1][k] = c.mx;
  if (dim_ == 2) u[2][k] = c.my;
  u[energy_index()][k] = c.energy;
}

Field EulerLaw::pressure_field(const State& u) const {
  Field p(u[0].nx(), u[0].ny());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = pressure(at(u, k), gamma_);
  return p;
}

void EulerLaw::flux(const State& u, int axis, State& f) const {
  const std::size_t n = u[0].size();
  const int e = energy_index();
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = u[0][k];
    const double mx = u[1][k];
    const double my = dim_ == 2 ? u[2][k] : 0.0;
    const double en = u[e][k];
    const double vx = mx / rho, vy = my / rho;
    const double p = (gamma_ - 1.0) * (en - 0.5 * (mx * vx + my * vy));
    const double vn = axis == 0 ? vx : vy;
    f[0][k] = rho * vn;
    f[1][k] = mx * vn + (axis == 0 ? p : 0.0);
    if (dim_ == 2) f[2][k] = my * vn + (axis == 1 ? p : 0.0);
    f[e][k] = vn * (en + p);
  }
}

double EulerLaw::max_wave_speed(const State& u, int axis) const {
  double s = 0.0;
  const std::size_t n = u[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    const Conserved c = at(u, k);
    const double p = pressure(c, gamma_);
    const double vn = (axis == 0 ? c.mx : c.my) / c.rho;
    s = std::max(s, std::abs(vn) + std::sqrt(gamma_ * std::max(p, 0.0) / c.rho));
  }
  return s;
}

void EulerLaw::check_admissible(const State& u) const {
  const std::size_t n = u[0].size();
  auto fail = [&](const std::string& field, std::size_t k, const char* what) {
    std::ostringstream os;
    os << "field " << field << ": " << what << " at index " << k;
    throw StateError(os.str());
  };
  for (std::size_t k = 0; k < n; ++k) {
    for (int c = 0; c < components(); ++c)
      if (!std::isfinite(u[c][k])) fail(component_name(c), k, "non-finite value");
    const Conserved c = at(u, k);
    if (!(c.rho > 0.0)) fail("rho", k, "nonpositive density");
    if (!(pressure(c, gamma_) > 0.0)) fail("p", k, "nonpositive pressure");
  }
}

// ---------------------------------------------------------------- boundaries

LineBoundary filter_boundary(const AxisBoundary& bc, const ConservationLaw& law, int c,
                             int axis, bool walls_are_cartesian) {
  auto rule = [&](BoundaryKind k) {
    switch (k) {
      case BoundaryKind::periodic: return GhostRule::periodic;
      case BoundaryKind::mirror: return GhostRule::mirror;
      case BoundaryKind::outflow: return GhostRule::constant;
      case BoundaryKind::reflective: {
        const auto n = law.normal_momentum(axis);
        return walls_are_cartesian && n && *n == c ? GhostRule::antimirror : GhostRule::mirror;
      }
    }
    throw ContractError("unknown boundary kind");
  };
  return {rule(bc.lo), rule(bc.hi)};
}

State apply_reflective_bc(const State& u, const EulerLaw& law, int axis, Side side, int depth) {
  if (law.dim() != 2 || u.count() != 4) throw ContractError("apply_reflective_bc: needs a 2D Euler state");
  if (axis != 0 && axis != 1) throw ContractError("apply_reflective_bc: bad axis");
  const int nx = u[0].nx(), ny = u[0].ny();
  const int len = axis == 0 ? nx : ny;
  if (depth < 1 || depth >= len) throw ContractError("apply_reflective_bc: bad ghost depth");
  const int ex = axis == 0 ? nx + depth : nx;
  const int ey = axis == 1 ? ny + depth : ny;
  const int shift = side == Side::lo ? depth : 0;
  State out;
  for (int c = 0; c < 4; ++c) {
    const double sign = law.wall_state_parity(c, axis) == Parity::odd ? -1.0 : 1.0;
    Field f(ex, ey);
    for (int j = 0; j < ey; ++j)
      for (int i = 0; i < ex; ++i) {
        int a = axis == 0 ? i - shift : i;
        int b = axis == 1 ? j - shift : j;
        int& t = axis == 0 ? a : b;
        double s = 1.0;
        if (t < 0) {
          t = -t;
          s = sign;
        } else if (t >= len) {
          t = 2 * (len - 1) - t;
          s = sign;
        }
        f(i, j) = s * u[c](a, b);
      }
    out.components.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------- mapping

std::array<double, 2> CylinderMapping::map(double xi, double eta) const {
  const double phi = theta_ * (2.0 * eta - 1.0);
  return {-(rx_ - (rx_ - 1.0) * xi) * std::cos(phi), (ry_ - (ry_ - 1.0) * xi) * std::sin(phi)};
}

MappingJacobian CylinderMapping::jacobian(double xi, double eta) const {
  const double phi = theta_ * (2.0 * eta - 1.0);
  const double a = rx_ - (rx_ - 1.0) * xi;
  const double b = ry_ - (ry_ - 1.0) * xi;
  MappingJacobian j;
  j.x_xi = (rx_ - 1.0) * std::cos(phi);
  j.x_eta = 2.0 * theta_ * a * std::sin(phi);
  j.y_xi = -(ry_ - 1.0) * std::sin(phi);
  j.y_eta = 2.0 * theta_ * b * std::cos(phi);
  return j;
}

Metrics compute_metrics(const Grid& grid, const Mapping& mapping, double min_det) {
  if (grid.dim != 2) throw ContractError("compute_metrics: needs a 2D grid");
  const int nx = grid.nx(), ny = grid.ny();
  Metrics m{Field(nx, ny), Field(nx, ny), Field(nx, ny), Field(nx, ny), Field(nx, ny)};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const MappingJacobian jac = mapping.jacobian(grid.x.coord(i), grid.y.coord(j));
      const double det = jac.det();
      if (!(std::abs(det) > min_det) || !std::isfinite(det)) {
        std::ostringstream os;
        os << "singular mapping Jacobian at (" << i << ", " << j << ")";
        throw MappingError(os.str());
      }
      m.xi_x(i, j) = jac.y_eta / det;
      m.xi_y(i, j) = -jac.x_eta / det;
      m.eta_x(i, j) = -jac.y_xi / det;
      m.eta_y(i, j) = jac.x_xi / det;
      m.jacobian(i, j) = det;
    }
  return m;
}

// ---------------------------------------------------------------- Cartesian RHS

namespace {

State make_state(const Grid& grid, int components) {
  State s;
  for (int c = 0; c < components; ++c) s.components.push_back(grid.make_field());
  return s;
}

}  // namespace

CartesianRhs::CartesianRhs(const Grid& grid, std::shared_ptr<const ConservationLaw> law,
                           std::array<AxisBoundary, 2> bc)
    : grid_(grid), law_(std::move(law)), bc_(bc), ops_(grid) {
  for (int a = 0; a < grid_.dim; ++a) {
    const AxisBoundary& b = bc_[a];
    if (b.periodic() != grid_.axis(a).periodic)
      throw ContractError("boundary kind does not match axis periodicity");
    if ((b.lo == BoundaryKind::periodic) != (b.hi == BoundaryKind::periodic))
      throw ContractError("periodic boundary must apply to both ends");
    if (b.has_wall() && (b.lo != BoundaryKind::reflective || b.hi != BoundaryKind::reflective))
      throw ContractError("Cartesian walls must bound both ends of an axis");
  }
  flux_ = make_state(grid_, law_->components());
  deriv_ = grid_.make_field();
}

void CartesianRhs::operator()(const State& u, State& dudt) {
  const int nc = law_->components();
  for (int c = 0; c < nc; ++c) std::fill(dudt[c].raw().begin(), dudt[c].raw().end(), 0.0);
  for (int a = 0; a < grid_.dim; ++a) {
    law_->flux(u, a, flux_);
    const bool wall = bc_[a].has_wall();
    for (int c = 0; c < nc; ++c) {
      const Parity parity = wall ? law_->wall_flux_parity(c, a) : Parity::even;
      ops_.derivative(flux_[c], deriv_, a, parity);
      auto& d = dudt[c].raw();
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= deriv_[k];
    }
  }
  // No flow through walls: the wall-normal momentum stays at zero.
  for (int a = 0; a < grid_.dim; ++a) {
    if (!bc_[a].has_wall()) continue;
    const auto n = law_->normal_momentum(a);
    if (!n) continue;
    const int len = grid_.axis(a).points;
    const int other = a == 0 ? grid_.ny() : grid_.nx();
    for (int l = 0; l < other; ++l) {
      if (a == 0) {
        dudt[*n](0, l) = 0.0;
        dudt[*n](len - 1, l) = 0.0;
      } else {
        dudt[*n](l, 0) = 0.0;
        dudt[*n](l, len - 1) = 0.0;
      }
    }
  }
}

void CartesianRhs::enforce_boundaries(State& u) const {
  for (int a = 0; a < grid_.dim; ++a) {
    if (!bc_[a].has_wall()) continue;
    const auto n = law_->normal_momentum(a);
    if (!n) continue;
    const int len = grid_.axis(a).points;
    const int other = a == 0 ? grid_.ny() : grid_.nx();
    for (int l = 0; l < other; ++l) {
      for (int end : {0, len - 1}) {
        const int i = a == 0 ? end : l;
        const int j = a == 0 ? l : end;
        // Drop the normal kinetic energy with the momentum so p is unchanged.
        const double m = u[*n](i, j);
        const double rho = u[0](i, j);
        u[law_->components() - 1](i, j) -= 0.5 * m * m / rho;
        u[*n](i, j) = 0.0;
      }
    }
  }
}

double CartesianRhs::max_signal_rate(const State& u) const {
  double rate = 0.0;
  for (int a = 0; a < grid_.dim; ++a)
    rate = std::max(rate, law_->max_wave_speed(u, a) / grid_.axis(a).spacing());
  return rate;
}

// ---------------------------------------------------------------- curvilinear RHS

CurvilinearRhs::CurvilinearRhs(const Grid& grid, std::shared_ptr<const EulerLaw> law,
                               std::shared_ptr<const Mapping> mapping,
                               std::array<AxisBoundary, 2> bc)
    : grid_(grid),
      law_(std::move(law)),
      mapping_(std::move(mapping)),
      bc_(bc),
      metrics_(compute_metrics(grid, *mapping_)),
      ops_(grid) {
  if (grid_.dim != 2 || law_->dim() != 2)
    throw ContractError("CurvilinearRhs: needs a 2D grid and 2D Euler law");
  if (bc_[0].lo == BoundaryKind::reflective || bc_[1].has_wall())
    throw ContractError("CurvilinearRhs: walls are supported at xi = 1 only");
  flux_f_ = make_state(grid_, 4);
  flux_g_ = make_state(grid_, 4);
  d_xi_ = grid_.make_field();
  d_eta_ = grid_.make_field();
}

void CurvilinearRhs::operator()(const State& u, State& dudt) {
  law_->flux(u, 0, flux_f_);
  law_->flux(u, 1, flux_g_);
  for (int c = 0; c < 4; ++c) {
    auto& d = dudt[c].raw();
    ops_.derivative(flux_f_[c], d_xi_, 0);
    ops_.derivative(flux_f_[c], d_eta_, 1);
    for (std::size_t k = 0; k < d.size(); ++k)
      d[k] = -(metrics_.xi_x[k] * d_xi_[k] + metrics_.eta_x[k] * d_eta_[k]);
    ops_.derivative(flux_g_[c], d_xi_, 0);
    ops_.derivative(flux_g_[c], d_eta_, 1);
    for (std::size_t k = 0; k < d.size(); ++k)
      d[k] -= metrics_.xi_y[k] * d_xi_[k] + metrics_.eta_y[k] * d_eta_[k];
  }
  project_wall(dudt, false);
}

void CurvilinearRhs::project_wall(State& u, bool keep_pressure) const {
  if (bc_[0].hi != BoundaryKind::reflective) return;
  const int i = grid_.nx() - 1;
  for (int j = 0; j < grid_.ny(); ++j) {
    double nx = metrics_.xi_x(i, j), ny = metrics_.xi_y(i, j);
    const double norm = std::hypot(nx, ny);
    nx /= norm;
    ny /= norm;
    const double mn = u[1](i, j) * nx + u[2](i, j) * ny;
    if (keep_pressure) u[3](i, j) -= 0.5 * mn * mn / u[0](i, j);
    u[1](i, j) -= mn * nx;
    u[2](i, j) -= mn * ny;
  }
}

void CurvilinearRhs::enforce_boundaries(State& u) const { project_wall(u, true); }

double CurvilinearRhs::max_signal_rate(const State& u) const {
  double rate = 0.0;
  const std::size_t n = u[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    const Conserved c = law_->at(u, k);
    const double p = pressure(c, law_->gamma());
    const double snd = std::sqrt(law_->gamma() * std::max(p, 0.0) / c.rho);
    const double vx = c.mx / c.rho, vy = c.my / c.rho;
    const double sx = std::abs(metrics_.xi_x[k] * vx + metrics_.xi_y[k] * vy) +
                      snd * std::hypot(metrics_.xi_x[k], metrics_.xi_y[k]);
    const double sy = std::abs(metrics_.eta_x[k] * vx + metrics_.eta_y[k] * vy) +
                      snd * std::hypot(metrics_.eta_x[k], metrics_.eta_y[k]);
    rate = std::max({rate, sx / grid_.x.spacing(), sy / grid_.y.spacing()});
  }
  return rate;
}

State curvilinear_rhs(const State& u, const Grid& grid, std::shared_ptr<const Mapping> mapping,
                      std::array<AxisBoundary, 2> bc) {
  CurvilinearRhs rhs(grid, std::make_shared<EulerLaw>(2), std::move(mapping), bc);
  State out = make_state(grid, 4);
  rhs(u, out);
  return out;
}

}  // namespace specshock
