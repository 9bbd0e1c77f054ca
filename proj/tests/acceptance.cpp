// Acceptance runner: one gate per criterion, one result line each.
//   specshock_acceptance --criterion 3
//   specshock_acceptance            (all criteria)

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specshock/cache.hpp"
#include "specshock/filtering.hpp"
#include "specshock/integrate.hpp"
#include "specshock/kernels.hpp"
#include "specshock/reference.hpp"
#include "specshock/spectral.hpp"

using namespace specshock;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records one sub-check; the criterion passes only if all do.
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.str().empty()) detail << "; ";
    detail << what << (ok ? "" : " [fail]");
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

std::string fix(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::string aborted(const SimulationAborted& a) {
  return "aborted at step " + std::to_string(a.step()) + " t=" + fix(a.time()) + " field " + a.field();
}

SimulationConfig config_for(ProblemSpec spec) {
  if (spec.ratio == 0.0)
    spec.ratio = default_ratio(spec.example, spec.nx, spec.variant, spec.kappa, spec.eta_vortex);
  return SimulationConfig::from_problem(spec);
}

// Primitive density and pressure of a 1D or 2D Euler state at flat index k.
double euler_pressure(const State& u, std::size_t k) {
  const double rho = u[0][k];
  if (u.count() == 3) return (kGamma - 1.0) * (u[2][k] - 0.5 * u[1][k] * u[1][k] / rho);
  const double ke = 0.5 * (u[1][k] * u[1][k] + u[2][k] * u[2][k]) / rho;
  return (kGamma - 1.0) * (u[3][k] - ke);
}

// Smallest density and pressure, and whether every value is finite.
struct Positivity {
  double rho = INFINITY, p = INFINITY;
  bool finite = true;
};

Positivity positivity(const State& u) {
  Positivity r;
  for (const auto& f : u.components)
    for (double v : f.values()) r.finite = r.finite && std::isfinite(v);
  for (std::size_t k = 0; k < u[0].size(); ++k) {
    r.rho = std::min(r.rho, u[0][k]);
    r.p = std::min(r.p, euler_pressure(u, k));
  }
  return r;
}

// Rightmost downward crossing of `level`, linearly interpolated.
double downward_crossing(const Field& u, const Axis& x, double level) {
  for (int i = x.points - 2; i >= 0; --i)
    if (u(i) >= level && u(i + 1) < level)
      return x.coord(i) + (u(i) - level) / (u(i) - u(i + 1)) * x.spacing();
  return NAN;
}

ErrorReport vortex_error(const SimulationResult& r) {
  return error_norms(r.state[0], isentropic_vortex_exact(r.problem.spec, r.problem.grid, r.t), r.problem.grid);
}

// ---------------------------------------------------------------- criteria

Verdict vortex_table() {
  Verdict v;
  std::vector<double> l1;
  for (int n : {32, 64}) {
    ProblemSpec s = default_problem(11);
    s.nx = s.ny = n;
    s.ratio = 3.2;
    SimulationConfig cfg = config_for(s);
    cfg.dt = 0.0;
    cfg.cfl = 0.01;
    cfg.t_final = 2.0;
    l1.push_back(vortex_error(run_simulation(cfg)).l1);
  }
  v.check(l1[0] <= 5e-4, "L1(32)=" + sci(l1[0]) + " <= 5e-4");
  v.check(l1[1] <= 5e-7, "L1(64)=" + sci(l1[1]) + " <= 5e-7");
  v.check(l1[0] / l1[1] >= 100.0, "ratio " + sci(l1[0] / l1[1]) + " >= 100");
  return v;
}

Verdict long_time() {
  Verdict v;
  ProblemSpec s = default_problem(11);
  s.nx = s.ny = 64;
  s.eta_vortex = 0.5;
  s.ratio = 2.8;
  SimulationConfig cfg = config_for(s);
  cfg.dt = 0.0;
  cfg.cfl = 0.5;
  cfg.t_final = 100.0;
  try {
    const double l1 = vortex_error(run_simulation(cfg)).l1;
    v.check(l1 <= 1e-5, "L1(t=100)=" + sci(l1) + " <= 1e-5");
  } catch (const SimulationAborted& a) {
    v.check(false, "filtered run " + aborted(a));
  }
  cfg.filter_enabled = false;
  cfg.t_final = 20.0;
  try {
    const auto r = run_simulation(cfg);
    const double l1 = vortex_error(r).l1;
    v.check(false, "unfiltered run survived to t=20 (L1=" + sci(l1) + ")");
  } catch (const SimulationAborted& a) {
    v.check(a.time() < 20.0, "unfiltered run blew up at t=" + fix(a.time()));
  }
  return v;
}

Verdict burgers_shock() {
  Verdict v;
  const auto r = run_simulation(config_for(default_problem(3)));
  const Axis& x = r.problem.grid.x;
  const double h = x.spacing();
  const Field& u = r.state[0];
  const double xs = downward_crossing(u, x, 0.5);
  v.check(std::abs(xs - 1.0) <= h, "shock x=" + fix(xs, 6) + " within dx of 1");
  // Nonincreasing on both sides of a six-cell neighbourhood of the shock, up
  // to ripples below 1e-4 of the unit jump.
  double worst = 0.0;
  for (int i = 0; i + 1 < x.points; ++i) {
    if (std::abs(x.coord(i) - xs) <= 6.0 * h || std::abs(x.coord(i + 1) - xs) <= 6.0 * h) continue;
    worst = std::max(worst, u(i + 1) - u(i));
  }
  v.check(worst <= 1e-4, "largest rise outside shock " + sci(worst) + " <= 1e-4");
  return v;
}

Verdict rarefaction() {
  Verdict v;
  const auto r = run_simulation(config_for(default_problem(4)));
  const Grid& g = r.problem.grid;
  const double h = g.x.spacing(), t = r.t;
  Field exact = g.make_field();
  for (int i = 0; i < g.nx(); ++i) {
    const double x = g.x.coord(i);
    exact(i) = x <= 0.0 ? 0.0 : x >= t ? 1.0 : x / t;
  }
  const auto d = oracle::direct_norms(r.state[0].values(), exact.values());
  v.check(d[0] <= 5e-3, "L1=" + sci(d[0]) + " <= 5e-3");
  // Least-squares line through the fan interior, extended to u = 0 and u = 1.
  double sx = 0, su = 0, sxx = 0, sxu = 0;
  int m = 0;
  for (int i = 0; i < g.nx(); ++i) {
    const double xi = g.x.coord(i) / t;
    if (xi < 0.2 || xi > 0.8) continue;
    const double xv = g.x.coord(i), uv = r.state[0](i);
    sx += xv, su += uv, sxx += xv * xv, sxu += xv * uv, ++m;
  }
  const double slope = (m * sxu - sx * su) / (m * sxx - sx * sx), icpt = (su - slope * sx) / m;
  const double head = -icpt / slope, tail = (1.0 - icpt) / slope;
  v.check(std::abs(head) <= 2.0 * h, "fan head x=" + fix(head) + " within 2dx of 0");
  v.check(std::abs(tail - t) <= 2.0 * h, "fan tail x=" + fix(tail) + " within 2dx of " + fix(t));
  return v;
}

Verdict riemann_tubes() {
  Verdict v;
  for (const std::string c : {"sod", "lax"}) {
    const bool sod = c == "sod";
    const oracle::Gas l = sod ? oracle::Gas{1.0, 0.0, 1.0} : oracle::Gas{0.445, 0.698, 3.528};
    const oracle::Gas rgt = sod ? oracle::Gas{0.125, 0.0, 0.1} : oracle::Gas{0.5, 0.0, 0.571};
    try {
      const auto r = run_simulation(config_for(default_problem(6, c)));
      // Exact density through the library's solver, whose star state is
      // cross-checked against the independent one first.
      const RiemannStar star = riemann_star({l.rho, l.u, 0.0, l.p}, {rgt.rho, rgt.u, 0.0, rgt.p});
      const auto ref = oracle::riemann_star(l, rgt);
      const bool star_ok = std::abs(star.p - ref[0]) <= 1e-10 && std::abs(star.u - ref[1]) <= 1e-10;
      const Grid& g = r.problem.grid;
      std::vector<double> exact(g.nx());
      for (int i = 0; i < g.nx(); ++i)
        exact[i] = riemann_exact({l.rho, l.u, 0.0, l.p}, {rgt.rho, rgt.u, 0.0, rgt.p}, g.x.coord(i) / r.t).rho;
      const double l1 = oracle::direct_norms(r.state[0].values(), exact)[0];
      const Positivity pos = positivity(r.state);
      const double gate = sod ? 2e-2 : 4e-2;
      v.check(star_ok, c + " star state matches oracle");
      v.check(l1 <= gate, c + " L1(rho)=" + sci(l1) + " <= " + sci(gate));
      v.check(pos.finite && pos.rho > 0.0 && pos.p > 0.0,
              c + " min rho=" + fix(pos.rho) + " min p=" + fix(pos.p));
    } catch (const SimulationAborted& a) {
      v.check(false, c + " " + aborted(a));
    }
  }
  return v;
}

// Peak values of the perturbation envelope inside [a, b], and the mean
// spacing of its maxima.
struct Plateau {
  std::vector<double> peaks;
  double spacing = NAN;
};

Plateau plateau(const AmplitudeProfile& prof, double a, double b) {
  Plateau p;
  std::vector<double> xs;
  for (std::size_t k : local_maxima(prof.upper))
    if (prof.x[k] >= a && prof.x[k] <= b) {
      p.peaks.push_back(prof.upper[k]);
      xs.push_back(prof.x[k]);
    }
  for (std::size_t k : local_minima(prof.lower))
    if (prof.x[k] >= a && prof.x[k] <= b) p.peaks.push_back(-prof.lower[k]);
  if (xs.size() >= 2) p.spacing = (xs.back() - xs.front()) / (xs.size() - 1.0);
  return p;
}

std::string peak_range(const Plateau& p) {
  if (p.peaks.empty()) return "no peaks";
  const auto [lo, hi] = std::minmax_element(p.peaks.begin(), p.peaks.end());
  return "peaks in [" + fix(*lo) + ", " + fix(*hi) + "]";
}

bool within(const Plateau& p, double target, double rel) {
  return !p.peaks.empty() && std::all_of(p.peaks.begin(), p.peaks.end(), [&](double a) {
    return std::abs(a - target) <= rel * target;
  });
}

Verdict shock_entropy_1d() {
  Verdict v;
  const double target = 0.08690716, ppw = 7.125;
  try {
    const auto r = run_simulation(config_for(default_problem(7)));
    const Grid& g = r.problem.grid;
    const double lambda = ppw * g.x.spacing();
    const auto prof = entropy_amplitude_profile(r.state[0], g, lambda, Baseline::moving_average);
    const Plateau p = plateau(prof, 5.0, 8.0);
    v.check(within(p, target, 0.10), "amplitude " + peak_range(p) + " within 10% of " + fix(target, 8));
    v.check(std::abs(p.spacing - lambda) <= 0.05 * lambda,
            "wavelength " + fix(p.spacing / g.x.spacing()) + " PPW vs 7.125");
  } catch (const SimulationAborted& a) {
    v.check(false, aborted(a));
  }
  return v;
}

Verdict shock_entropy_2d() {
  Verdict v;
  const double target = 0.08744786;
  try {
    const auto r = run_simulation(config_for(default_problem(9)));
    const Grid& g = r.problem.grid;
    const auto prof = entropy_amplitude_profile(r.state[0], g, 1.0, Baseline::transverse_mean);
    double hi = 0.0;
    for (std::size_t k = 0; k < prof.x.size(); ++k)
      if (prof.x[k] >= 7.4 && prof.x[k] <= 8.4) hi = std::max({hi, prof.upper[k], -prof.lower[k]});
    const Plateau p = plateau(prof, 7.4, 8.4);
    v.check(within(p, target, 0.12), "max-over-y amplitude " + peak_range(p) + " (max " + fix(hi) +
                                         ") within 12% of " + fix(target, 8));
  } catch (const SimulationAborted& a) {
    v.check(false, aborted(a));
  }
  return v;
}

Verdict shock_vortex() {
  Verdict v;
  double worst_v = 0.0, min_p = INFINITY;
  bool finite = true;
  int steps = 0;
  auto observer = [&](const Diagnostic&, const State& u) {
    const int nx = u[0].nx(), ny = u[0].ny();
    for (int i = 0; i < nx; ++i)
      for (int j : {0, ny - 1}) worst_v = std::max(worst_v, std::abs(u[2](i, j) / u[0](i, j)));
    const Positivity pos = positivity(u);
    finite = finite && pos.finite;
    min_p = std::min(min_p, pos.p);
    ++steps;
  };
  try {
    const auto r = run_simulation(config_for(default_problem(10)), observer);
    v.check(std::abs(r.t - 0.8) <= 1e-12, "reached t=" + fix(r.t) + " in " + std::to_string(steps) + " steps");
  } catch (const SimulationAborted& a) {
    v.check(false, aborted(a));
  }
  v.check(finite, "no NaN");
  v.check(min_p > 0.0, "min p=" + fix(min_p));
  v.check(worst_v <= 1e-10, "max wall |v|=" + sci(worst_v));
  return v;
}

Verdict properties() {
  Verdict v;
  // Cardinal identities of the kernel.
  {
    const auto spec = FilterSpec::rsk(3.2, 32, 0.1);
    double worst = std::abs(rsk_value(0.0, spec) - 1.0);
    for (int k = 1; k <= 32; ++k) worst = std::max({worst, std::abs(rsk_value(0.1 * k, spec))});
    for (double off : {0.03, 0.37, 1.55}) {
      worst = std::max(worst, std::abs(rsk_value(off, spec) - oracle::rsk_value_mp(off, 3.2, 0.1)));
    }
    v.check(worst <= 1e-14, "kernel identities " + sci(worst));
  }
  // Closed-form response against quadrature.
  {
    double worst = 0.0;
    for (double r : {1.0, 2.0, 3.2, 5.0})
      for (double th = 0.0; th <= kPi; th += kPi / 16)
        worst = std::max(worst, std::abs(rsk_response_at(r, th) - oracle::rsk_response_quadrature(r, th)));
    v.check(worst <= 1e-8, "response vs quadrature " + sci(worst));
  }
  // Physical-domain filter against the Fourier filter with the product response.
  {
    const int n = 128;
    const auto strong = FilterSpec::rsk(2.0), weak = FilterSpec::rsk(1.7);
    const auto ws = half_shift_weights(strong), ww = half_shift_weights(weak);
    const Grid g = Grid::line({0.0, 1.0, n, true});
    std::vector<double> resp(n);
    for (int m = -n / 2; m < n / 2; ++m) {
      const double th = 2.0 * kPi * m / n;
      resp[m + n / 2] = half_shift_response(ws, th) * half_shift_response(ww, th);
    }
    SpectralField f{g, g.make_field()};
    for (int i = 0; i < n; ++i) {
      const double x = g.x.coord(i);
      f.samples(i) = std::exp(std::sin(2 * kPi * x)) + 0.3 * std::cos(14 * kPi * x);
    }
    const auto phys = physical_filter(f.samples.values(), strong, weak, LineBoundary::both(GhostRule::periodic));
    const auto four = filter_fourier(f, resp);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(phys[i] - four.samples(i)));
    v.check(worst <= 1e-6, "physical vs Fourier filter " + sci(worst));
  }
  // Observed RK4 order on u' = -u.
  {
    struct Decay final : RhsOperator {
      void operator()(const State& u, State& d) override {
        d = u;
        for (double& x : d[0].raw()) x = -x;
      }
      double max_signal_rate(const State&) const override { return 1.0; }
    };
    auto err = [](int steps) {
      Decay rhs;
      State u;
      u.components.push_back(Field(1, 1, 1.0));
      for (int i = 0; i < steps; ++i) u = rk4_step(u, rhs, 1.0 / steps);
      return std::abs(u[0](0) - std::exp(-1.0));
    };
    const double order = std::log2(err(20) / err(40));
    v.check(std::abs(order - 4.0) <= 0.1, "RK4 order " + fix(order));
  }
  // Mass over 1000 filtered steps of periodic advection.
  {
    SimulationConfig cfg = config_for(default_problem(2));
    cfg.t_final = 1.0;
    const auto r = run_simulation(cfg);
    const double m0 = r.diagnostics.front().mass, m1 = r.diagnostics.back().mass;
    const double drift = std::abs(m1 - m0) / std::abs(m0);
    v.check(r.steps == 1000 && r.filter_count > 0 && drift <= 1e-10,
            "mass drift " + sci(drift) + " over " + std::to_string(r.steps) + " steps, " +
                std::to_string(r.filter_count) + " filtered");
  }
  // Rankine-Hugoniot residual across the shocks of the exact Riemann solution.
  {
    const Primitive l{1.0, 0.0, 0.0, 1.0}, rr{0.125, 0.0, 0.0, 0.1};
    const RiemannStar s = riemann_star(l, rr);
    const Primitive ahead = riemann_exact(l, rr, s.right_speed + 1e-9);
    const Primitive behind = riemann_exact(l, rr, s.right_speed - 1e-9);
    const auto ua = conserved_from_primitive(ahead), ub = conserved_from_primitive(behind);
    const auto fa = euler_flux_1d(ua), fb = euler_flux_1d(ub);
    const std::array<double, 3> qa{ua.rho, ua.mx, ua.energy}, qb{ub.rho, ub.mx, ub.energy};
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, std::abs((fb[k] - fa[k]) - s.right_speed * (qb[k] - qa[k])));
    v.check(worst <= 1e-8, "Rankine-Hugoniot residual " + sci(worst));
  }
  return v;
}

// Example 8 on a fine grid, cached; density restricted to every 16th node.
std::vector<double> example8_reference(double t, std::string& note) {
  const int fine = 2049;
  if (auto hit = cache_load("example8_rho", fine, t)) return *hit;
  ProblemSpec s = default_problem(8);
  s.nx = fine;
  const auto r = run_simulation(config_for(s));
  note = "reference computed";
  cache_store("example8_rho", fine, t, r.state[0].values());
  return r.state[0].raw();
}

Verdict self_convergence() {
  Verdict v;
  // Example 5: error against the fine first-order reference under doubling.
  {
    std::vector<double> l1;
    for (int n : {65, 129}) {
      ProblemSpec s = default_problem(5);
      s.nx = n;
      try {
        const auto r = run_simulation(config_for(s));
        const Grid& g = r.problem.grid;
        std::vector<double> xs(g.nx());
        for (int i = 0; i < g.nx(); ++i) xs[i] = g.x.coord(i);
        l1.push_back(oracle::direct_norms(r.state[0].values(), nonconvex_reference(xs, r.t))[0]);
      } catch (const SimulationAborted& a) {
        v.check(false, "example 5 N=" + std::to_string(n) + " " + aborted(a));
      }
    }
    if (l1.size() == 2)
      v.check(l1[0] / l1[1] >= 4.0, "ex5 L1 " + sci(l1[0]) + " -> " + sci(l1[1]) + " ratio " +
                                         fix(l1[0] / l1[1], 3) + " >= 4");
  }
  // Example 8: N = 129 against N = 2049.
  try {
    const auto r = run_simulation(config_for(default_problem(8)));
    std::string note;
    const auto fine = example8_reference(r.t, note);
    std::vector<double> sub(r.problem.grid.nx());
    for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = fine[16 * i];
    const double l1 = oracle::direct_norms(r.state[0].values(), sub)[0];
    v.check(l1 <= 5e-2, "ex8 L1(rho) vs N=2049 " + sci(l1) + " <= 5e-2");
  } catch (const SimulationAborted& a) {
    v.check(false, "ex8 " + aborted(a));
  }
  // Example 12: residual of a uniform free stream, then the full run.
  {
    const Problem p = build_problem([] {
      ProblemSpec s = default_problem(12);
      s.ratio = default_ratio(12, s.nx);
      return s;
    }());
    State u = p.initial;
    const Conserved c = conserved_from_primitive({1.4, 1.0, 0.0, 1.0});
    for (std::size_t k = 0; k < u[0].size(); ++k) {
      u[0][k] = c.rho, u[1][k] = c.mx, u[2][k] = c.my, u[3][k] = c.energy;
    }
    const State d = curvilinear_rhs(u, p.grid, p.mapping, p.bc);
    double worst = 0.0;
    for (const auto& f : d.components)
      for (double x : f.values()) worst = std::max(worst, std::abs(x));
    v.check(worst <= 1e-8, "ex12 free-stream residual " + sci(worst));
  }
  try {
    const auto r = run_simulation(config_for(default_problem(12)));
    const Positivity pos = positivity(r.state);
    v.check(pos.finite && pos.p > 0.0, "ex12 reached t=" + fix(r.t) + " min p=" + fix(pos.p));
  } catch (const SimulationAborted& a) {
    v.check(false, "ex12 " + aborted(a));
  }
  return v;
}

const std::vector<std::function<Verdict()>> kCriteria{
    vortex_table, long_time, burgers_shock, rarefaction, riemann_tubes, shock_entropy_1d,
    shock_entropy_2d, shock_vortex, properties, self_convergence};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance gates of the solver"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (int k = 1; k <= static_cast<int>(kCriteria.size()); ++k) {
    if (only != 0 && k != only) continue;
    bool pass = false;
    std::string detail;
    try {
      const Verdict v = kCriteria[k - 1]();
      pass = v.pass;
      detail = v.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    std::cout << "criterion " << k << ' ' << (pass ? "PASS" : "FAIL") << ": " << detail << std::endl;
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
