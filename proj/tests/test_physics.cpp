#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "specshock/errors.hpp"
#include "specshock/integrate.hpp"
#include "specshock/physics.hpp"
#include "specshock/problems.hpp"

using namespace specshock;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kG = 1.4;

State blank(const Grid& g, int components) {
  State s;
  for (int c = 0; c < components; ++c) s.components.push_back(g.make_field());
  return s;
}

void put(State& u, int i, int j, const Primitive& w) {
  const Conserved c = conserved_from_primitive(w);
  u[0](i, j) = c.rho;
  u[1](i, j) = c.mx;
  u[2](i, j) = c.my;
  u[3](i, j) = c.energy;
}

class DegenerateMapping final : public Mapping {
 public:
  std::array<double, 2> map(double xi, double) const override { return {xi, 0.0}; }
  MappingJacobian jacobian(double, double) const override { return {1.0, 0.0, 0.0, 0.0}; }
};

}  // namespace

TEST(ScalarFlux, Values) {
  EXPECT_EQ(scalar_flux(2.0, ScalarFluxKind::burgers), 2.0);
  EXPECT_EQ(scalar_flux(-0.3, ScalarFluxKind::advection), -0.3);
  for (double u : {-2.0, -1.0, 1.0, 2.0}) EXPECT_EQ(scalar_flux(u, ScalarFluxKind::nonconvex), 0.0);
  EXPECT_EQ(scalar_flux(0.0, ScalarFluxKind::nonconvex), 1.0);
  // f = (u^2 - 1)(u^2 - 4) / 4, so f' = u^3 - 2.5 u.
  for (double u : {-2.5, -0.4, 0.7, 3.0})
    EXPECT_NEAR(scalar_flux_derivative(u, ScalarFluxKind::nonconvex), u * u * u - 2.5 * u, 1e-13);
  // Between -3 and 3 the largest |f'| is at an end: 27 - 7.5 = 19.5.
  EXPECT_NEAR(scalar_max_speed_between(-3.0, 3.0, ScalarFluxKind::nonconvex), 19.5, 1e-12);
  // Interior extremum of f' at u = sqrt(5/6) dominates on [0, 1].
  const double us = std::sqrt(5.0 / 6.0);
  EXPECT_NEAR(scalar_max_speed_between(0.0, 1.0, ScalarFluxKind::nonconvex),
              std::abs(us * us * us - 2.5 * us), 1e-12);
}

TEST(EulerFlux, OneDimensional) {
  auto f = euler_flux_1d(conserved_from_primitive({1.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 1.0);
  EXPECT_EQ(f[2], 0.0);
  EXPECT_THROW(euler_flux_1d(Conserved{1.0, 0.0, 0.0, -1.0}), StateError);
}

TEST(EulerFlux, RandomStatesMatchRecomputation) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> pos(0.1, 5.0), vel(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double r = pos(rng), u = vel(rng), v = vel(rng), p = pos(rng);
    const double e = p / (kG - 1.0) + 0.5 * r * (u * u + v * v);
    const Conserved c{r, r * u, r * v, e};
    const auto f = euler_flux_2d(c, 0);
    const auto g = euler_flux_2d(c, 1);
    EXPECT_NEAR(f[0], r * u, 1e-14 * std::abs(r * u) + 1e-15);
    EXPECT_NEAR(f[1], r * u * u + p, 1e-14 * (r * u * u + p));
    EXPECT_NEAR(f[2], r * u * v, 1e-14 * std::abs(r * u * v) + 1e-15);
    EXPECT_NEAR(f[3], u * (e + p), 1e-13 * std::abs(u * (e + p)) + 1e-14);
    EXPECT_NEAR(g[2], r * v * v + p, 1e-14 * (r * v * v + p));
    EXPECT_NEAR(g[3], v * (e + p), 1e-13 * std::abs(v * (e + p)) + 1e-14);
  }
}

TEST(EulerFlux, MachOneOneState) {
  const double u = 1.1 * std::sqrt(kG);
  const auto f = euler_flux_2d(conserved_from_primitive({1.0, u, 0.0, 1.0}), 0);
  const double e = 1.0 / (kG - 1.0) + 0.5 * u * u;
  EXPECT_NEAR(f[0], u, 1e-14);
  EXPECT_NEAR(f[1], 1.21 * kG + 1.0, 1e-14);
  EXPECT_NEAR(f[2], 0.0, 1e-14);
  EXPECT_NEAR(f[3], u * (e + 1.0), 1e-14);
}

TEST(EulerFlux, AxisSwapSymmetry) {
  const Conserved a = conserved_from_primitive({1.3, 0.4, -0.9, 2.0});
  const Conserved b = conserved_from_primitive({1.3, -0.9, 0.4, 2.0});
  const auto fa = euler_flux_2d(a, 0), gb = euler_flux_2d(b, 1);
  EXPECT_DOUBLE_EQ(fa[0], gb[0]);
  EXPECT_DOUBLE_EQ(fa[1], gb[2]);
  EXPECT_DOUBLE_EQ(fa[2], gb[1]);
  EXPECT_DOUBLE_EQ(fa[3], gb[3]);
  const auto rest = euler_flux_2d(conserved_from_primitive({0.7, 0.0, 0.0, 3.0}), 1);
  EXPECT_EQ(rest[2], 3.0);
  EXPECT_EQ(rest[0], 0.0);
}

TEST(Conversion, KnownEnergies) {
  EXPECT_NEAR(conserved_from_primitive({1.0, 0.0, 0.0, 1.0}).energy, 2.5, 1e-15);
  const double want = 3.528 / 0.4 + 0.5 * 0.445 * 0.698 * 0.698;
  EXPECT_NEAR(conserved_from_primitive({0.445, 0.698, 0.0, 3.528}).energy, want, 1e-14);
}

TEST(Conversion, RoundTrip) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> pos(1e-2, 10.0), vel(-5.0, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const Primitive w{pos(rng), vel(rng), vel(rng), pos(rng)};
    const Primitive b = primitive_from_conserved(conserved_from_primitive(w));
    EXPECT_NEAR(b.rho, w.rho, 1e-13 * w.rho);
    EXPECT_NEAR(b.u, w.u, 1e-13 * (1.0 + std::abs(w.u)));
    EXPECT_NEAR(b.v, w.v, 1e-13 * (1.0 + std::abs(w.v)));
    EXPECT_NEAR(b.p, w.p, 1e-11 * (1.0 + w.p));
  }
  EXPECT_THROW(conserved_from_primitive({0.0, 0.0, 0.0, 1.0}), StateError);
  EXPECT_THROW(conserved_from_primitive({1.0, 0.0, 0.0, -1.0}), StateError);
  EXPECT_NEAR(sound_speed({1.0, 0.0, 0.0, 1.0}), std::sqrt(kG), 1e-15);
}

TEST(Admissibility, NamesTheField) {
  const Grid g = Grid::line({0.0, 1.0, 8, false});
  EulerLaw law(1);
  State u = blank(g, 3);
  for (int i = 0; i < 8; ++i) {
    u[0](i) = 1.0;
    u[2](i) = 2.5;
  }
  EXPECT_NO_THROW(law.check_admissible(u));
  u[2](4) = -1.0;
  try {
    law.check_admissible(u);
    FAIL();
  } catch (const StateError& e) {
    EXPECT_NE(std::string(e.what()).find("field p"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(law.check_finite(u));
  u[0](2) = NAN;
  EXPECT_THROW(law.check_finite(u), StateError);
}

TEST(Boundaries, ReflectiveGhosts) {
  const Grid g = Grid::plane({0.0, 1.0, 6, true}, {0.0, 1.0, 5, false});
  EulerLaw law(2);
  State u = blank(g, 4);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i) put(u, i, j, {1.0 + 0.1 * j, 0.5, 0.0, 1.0});
  const State ext = apply_reflective_bc(u, law, 1, Side::lo, 2);
  ASSERT_EQ(ext[0].ny(), 7);
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 6; ++i) EXPECT_EQ(ext[c](i, 0), u[c](i, 2)) << c;

  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i) put(u, i, j, {1.0, 0.0, 0.3 * (j + 1), 1.0});
  const State vx = apply_reflective_bc(u, law, 1, Side::lo, 1);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(vx[2](i, 0), -u[2](i, 1));
    EXPECT_EQ(vx[0](i, 0), u[0](i, 1));
  }
}

TEST(Boundaries, FilterGhostRules) {
  EulerLaw law(2);
  const AxisBoundary walls{BoundaryKind::reflective, BoundaryKind::reflective};
  EXPECT_EQ(filter_boundary(walls, law, 2, 1).lo, GhostRule::antimirror);
  EXPECT_EQ(filter_boundary(walls, law, 1, 1).lo, GhostRule::mirror);
  EXPECT_EQ(filter_boundary(AxisBoundary{}, law, 0, 0).lo, GhostRule::periodic);
}

TEST(Boundaries, WallNormalVelocityStaysZero) {
  // A vortex near the lower wall: the odd extension of v mirrors it.
  const Grid g = Grid::plane({0.0, 1.0, 32, true}, {0.0, 1.0, 33, false});
  auto law = std::make_shared<EulerLaw>(2);
  const AxisBoundary walls{BoundaryKind::reflective, BoundaryKind::reflective};
  CartesianRhs rhs(g, law, {AxisBoundary{}, walls});
  State u = blank(g, 4);
  for (int j = 0; j < 33; ++j)
    for (int i = 0; i < 32; ++i) {
      const double dx = g.x.coord(i) - 0.5, dy = g.y.coord(j) - 0.2;
      const double e = 0.3 * std::exp(-(dx * dx + dy * dy) / 0.01);
      put(u, i, j, {1.0, 0.3 - e * dy, e * dx, 1.0});
    }
  // Zero v on the walls to start from a compatible state.
  for (int i = 0; i < 32; ++i)
    for (int j : {0, 32}) {
      u[3](i, j) -= 0.5 * u[2](i, j) * u[2](i, j) / u[0](i, j);
      u[2](i, j) = 0.0;
    }
  const State next = rk4_step(u, rhs, 1e-3);
  for (int i = 0; i < 32; ++i) {
    EXPECT_NEAR(next[2](i, 0), 0.0, 1e-10);
    EXPECT_NEAR(next[2](i, 32), 0.0, 1e-10);
  }
}

TEST(CartesianRhs, AdvectionOfSine) {
  const Grid g = Grid::line({0.0, 2.0, 32, true});
  auto law = std::make_shared<ScalarLaw>(ScalarFluxKind::advection);
  CartesianRhs rhs(g, law, {AxisBoundary{}, AxisBoundary{}});
  State u = blank(g, 1), d = blank(g, 1);
  for (int i = 0; i < 32; ++i) u[0](i) = std::sin(kPi * g.x.coord(i));
  rhs(u, d);
  for (int i = 0; i < 32; ++i) EXPECT_NEAR(d[0](i), -kPi * std::cos(kPi * g.x.coord(i)), 1e-12);
  EXPECT_NEAR(rhs.max_signal_rate(u), 1.0 / g.x.spacing(), 1e-12);
}

TEST(CylinderMapping, JacobianMatchesHandDerivative) {
  const double th = 5.0 * kPi / 12.0;
  CylinderMapping m(3.0, 6.0, th);
  const auto j = m.jacobian(0.0, 0.5);
  EXPECT_NEAR(j.x_xi, 2.0, 1e-12);
  EXPECT_NEAR(j.x_eta, 0.0, 1e-12);
  EXPECT_NEAR(j.y_xi, 0.0, 1e-12);
  EXPECT_NEAR(j.y_eta, 6.0 * 2.0 * th, 1e-12);
  // Off-centre point against the derivatives of the map written out.
  const double xi = 0.3, eta = 0.8, phi = th * (2.0 * eta - 1.0);
  const auto k = m.jacobian(xi, eta);
  EXPECT_NEAR(k.x_xi, 2.0 * std::cos(phi), 1e-12);
  EXPECT_NEAR(k.x_eta, (3.0 - 2.0 * xi) * std::sin(phi) * 2.0 * th, 1e-12);
  EXPECT_NEAR(k.y_xi, -5.0 * std::sin(phi), 1e-12);
  EXPECT_NEAR(k.y_eta, (6.0 - 5.0 * xi) * std::cos(phi) * 2.0 * th, 1e-12);
  const auto p = m.map(1.0, 0.5);
  EXPECT_NEAR(p[0], -1.0, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
}

TEST(CylinderMapping, DegenerateJacobianThrows) {
  const Grid g = Grid::plane({0.0, 1.0, 5, false}, {0.0, 1.0, 5, false});
  EXPECT_THROW(compute_metrics(g, DegenerateMapping{}), MappingError);
}

TEST(CurvilinearRhs, IdentityMatchesCartesian) {
  const Grid g = Grid::plane({0.0, 1.0, 17, false}, {0.0, 2.0, 16, true});
  const std::array<AxisBoundary, 2> bc{AxisBoundary{BoundaryKind::mirror, BoundaryKind::mirror},
                                       AxisBoundary{}};
  State u = blank(g, 4);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 17; ++i) {
      const double x = g.x.coord(i), y = g.y.coord(j);
      put(u, i, j, {1.0 + 0.2 * std::cos(kPi * x) * std::sin(kPi * y), 0.3, -0.2, 1.0 + 0.1 * std::cos(kPi * x)});
    }
  auto law = std::make_shared<EulerLaw>(2);
  CartesianRhs cart(g, law, bc);
  State want = blank(g, 4);
  cart(u, want);
  const State got = curvilinear_rhs(u, g, std::make_shared<IdentityMapping>(), bc);
  for (int c = 0; c < 4; ++c)
    for (std::size_t k = 0; k < want[c].size(); ++k) EXPECT_NEAR(got[c][k], want[c][k], 1e-12);
}

TEST(CurvilinearRhs, FreeStreamPreserved) {
  ProblemSpec s = default_problem(12);
  s.ratio = 1.2;
  const Problem p = build_problem(s);
  State u = p.initial;
  for (int j = 0; j < p.grid.ny(); ++j)
    for (int i = 0; i < p.grid.nx(); ++i) put(u, i, j, {1.4, 1.0, 0.0, 1.0});
  const State d = curvilinear_rhs(u, p.grid, p.mapping, p.bc);
  double worst = 0.0;
  for (int c = 0; c < 4; ++c)
    for (double v : d[c].values()) worst = std::max(worst, std::abs(v));
  EXPECT_LE(worst, 1e-8);
}

TEST(Problems, InitialData) {
  const Problem p3 = build_problem(default_problem(3));
  EXPECT_EQ(p3.initial[0](0), 1.0);
  EXPECT_EQ(p3.initial[0](128), 0.0);

  const double e = std::exp(1.0);
  const double c = 1.0 - (kG - 1.0) * 25.0 * e * e / (16.0 * kG * kPi * kPi);
  EXPECT_NEAR(vortex_density(5.0, 5.0, 5.0, 5.0, 5.0, 1.0), std::pow(c, 1.0 / (kG - 1.0)), 1e-14);

  // Pre-shock density of the 1D shock-entropy problem at kappa x = pi/2.
  ProblemSpec s7 = default_problem(7);
  s7.nx = 13 * 64 + 1;
  s7.ratio = 2.0;
  const Problem p7 = build_problem(s7);
  const double x = kPi / 2.0 / 13.0 + 2.0 * kPi / 13.0 * 10.0;
  int best = 0;
  for (int i = 0; i < p7.grid.nx(); ++i)
    if (std::abs(p7.grid.x.coord(i) - x) < std::abs(p7.grid.x.coord(best) - x)) best = i;
  const double xb = p7.grid.x.coord(best);
  EXPECT_NEAR(p7.initial[0](best), std::exp(-0.01 * std::sin(13.0 * xb)), 1e-14);
  EXPECT_NEAR(std::exp(-0.01 * std::sin(13.0 * x)), std::exp(-0.01), 1e-15);
}

TEST(Problems, ObliqueWaveIsPeriodicInY) {
  ProblemSpec s = default_problem(9);
  s.nx = 33;
  s.ny = 32;
  s.ratio = 2.1;
  const Problem p = build_problem(s);
  // The field at y = L_y (one period beyond node 0) equals the field at y = 0.
  const double ly = p.grid.y.extent();
  for (int i = 20; i < 33; ++i) {
    const double x = p.grid.x.coord(i);
    const double a = std::exp(-0.1 * std::sin(15.0 * (x * std::cos(kPi / 6) + 0.0)));
    const double b = std::exp(-0.1 * std::sin(15.0 * (x * std::cos(kPi / 6) + ly * std::sin(kPi / 6))));
    EXPECT_NEAR(a, b, 1e-12);
    EXPECT_NEAR(p.initial[0](i, 0), a, 1e-12);
  }
}

TEST(Problems, ValidationRejectsUnknown) {
  EXPECT_THROW(default_problem(13), ContractError);
  EXPECT_THROW(default_problem(6, "roe"), ContractError);
  ProblemSpec s = default_problem(8);
  s.ratio = 2.0;
  s.epsilon = 2.0;
  EXPECT_THROW(s.validate(), ContractError);
}

TEST(PostShock, RankineHugoniot) {
  const Primitive a{1.0, 0.0, 0.0, 1.0};
  const Primitive b = post_shock_state(a, 3.0);
  const double s = shock_speed(a, 3.0);
  EXPECT_NEAR(s, 3.0 * std::sqrt(kG), 1e-14);
  const auto ua = conserved_from_primitive(a), ub = conserved_from_primitive(b);
  const auto fa = euler_flux_1d(ua), fb = euler_flux_1d(ub);
  const double qa[3] = {ua.rho, ua.mx, ua.energy}, qb[3] = {ub.rho, ub.mx, ub.energy};
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(fb[k] - fa[k], s * (qb[k] - qa[k]), 1e-12);
  EXPECT_NEAR(b.rho, 3.857142857142857, 1e-12);
}
