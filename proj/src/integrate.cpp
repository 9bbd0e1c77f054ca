#include "specshock/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "specshock/errors.hpp"

namespace specshock {

void axpy(double a, const State& x, State& y) {
  if (x.count() != y.count()) throw ContractError("axpy: component count mismatch");
  for (std::size_t c = 0; c < x.count(); ++c) {
    if (!x[c].same_shape(y[c])) throw ContractError("axpy: shape mismatch");
    const auto xs = x[c].values();
    auto ys = y[c].values();
    for (std::size_t k = 0; k < xs.size(); ++k) ys[k] += a * xs[k];
  }
}

State rk4_step(const State& u, RhsOperator& rhs, double dt) {
  State k = u, stage = u, out = u;
  rhs(u, k);
  axpy(dt / 6.0, k, out);
  stage = u;
  axpy(0.5 * dt, k, stage);
  rhs(stage, k);
  axpy(dt / 3.0, k, out);
  stage = u;
  axpy(0.5 * dt, k, stage);
  rhs(stage, k);
  axpy(dt / 3.0, k, out);
  stage = u;
  axpy(dt, k, stage);
  rhs(stage, k);
  axpy(dt / 6.0, k, out);
  return out;
}

double dt_from_cfl(const Grid& grid, const ConservationLaw& law, const State& u, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ContractError("CFL number must lie in (0, 1]");
  double speed = 0.0;
  for (int a = 0; a < grid.dim; ++a) speed = std::max(speed, law.max_wave_speed(u, a));
  const double h = grid.min_spacing();
  if (!(speed > 0.0)) return cfl * h;
  return cfl * h / speed;
}

double field_total_variation(const Field& f, const Grid& grid) {
  double tv = 0.0;
  const int nx = f.nx(), ny = f.ny();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) tv += std::abs(f(i + 1, j) - f(i, j));
    if (grid.x.periodic) tv += std::abs(f(0, j) - f(nx - 1, j));
  }
  if (grid.dim == 2)
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j + 1 < ny; ++j) tv += std::abs(f(i, j + 1) - f(i, j));
      if (grid.y.periodic) tv += std::abs(f(i, 0) - f(i, ny - 1));
    }
  return tv;
}

double field_mass(const Field& f, const Grid& grid) {
  auto weight = [](const Axis& a, int i) {
    if (a.periodic) return a.spacing();
    return (i == 0 || i == a.points - 1) ? 0.5 * a.spacing() : a.spacing();
  };
  double m = 0.0;
  for (int j = 0; j < f.ny(); ++j) {
    const double wy = grid.dim == 2 ? weight(grid.y, j) : 1.0;
    for (int i = 0; i < f.nx(); ++i) m += f(i, j) * weight(grid.x, i) * wy;
  }
  return m;
}

SimulationAborted::SimulationAborted(int step, double t, std::string field, State last_good,
                                     const std::string& what)
    : std::runtime_error(what),
      step_(step),
      t_(t),
      field_(std::move(field)),
      last_good_(std::move(last_good)) {}

SimulationConfig SimulationConfig::from_problem(const ProblemSpec& spec) {
  SimulationConfig cfg;
  cfg.problem = spec;
  cfg.filter = FilterSpec::rsk(spec.ratio);
  cfg.dt = spec.dt;
  cfg.cfl = spec.dt > 0.0 ? 0.0 : spec.cfl;
  cfg.t_final = spec.t_final;
  cfg.filter_domain = spec.physical_filter ? FilterDomain::physical : FilterDomain::fourier;
  cfg.sensor.monitored = spec.example <= 5 ? MonitoredField::scalar : MonitoredField::density;
  return cfg;
}

void SimulationConfig::validate(const Problem& problem) const {
  problem.spec.validate();
  filter.validate();
  sensor.validate();
  if (filter.family != FilterFamily::rsk) throw ContractError("the adaptive filter must be RSK");
  if (dt > 0.0 && cfl > 0.0) throw ContractError("give either a fixed dt or a CFL number, not both");
  if (!(dt > 0.0) && !(cfl > 0.0 && cfl <= 1.0))
    throw ContractError("need dt > 0 or CFL in (0, 1]");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ContractError("t_final must be finite and >= 0");
  if (output_every < 1) throw ContractError("output cadence must be >= 1");
  if (!(weak_ratio_scale > 0.0 && weak_ratio_scale <= 1.0))
    throw ContractError("weak ratio scale must lie in (0, 1]");
  const bool walls = problem.bc[0].has_wall() || problem.bc[1].has_wall();
  if (walls && filter_enabled && filter_domain != FilterDomain::physical)
    throw ContractError("reflective boundaries require the physical-domain filter");
}

void apply_filter(State& u, const Problem& problem, const SimulationConfig& cfg) {
  const Grid& g = problem.grid;
  const ConservationLaw& law = *problem.law;
  if (cfg.filter_domain == FilterDomain::fourier) {
    GridSpectral ops(g);
    for (int c = 0; c < law.components(); ++c) {
      std::array<Parity, 2> parity{Parity::even, Parity::even};
      for (int a = 0; a < g.dim; ++a)
        if (problem.bc[a].has_wall() && !problem.mapping) parity[a] = law.wall_state_parity(c, a);
      ops.filter_rsk(u[c], cfg.filter.ratio, parity);
    }
    return;
  }
  const FilterSpec strong = cfg.filter;
  FilterSpec weak = cfg.filter;
  weak.ratio = cfg.filter.ratio * cfg.weak_ratio_scale;
  for (int c = 0; c < law.components(); ++c)
    for (int a = 0; a < g.dim; ++a) {
      const LineBoundary lb = filter_boundary(problem.bc[a], law, c, a, !problem.mapping);
      const int len = a == 0 ? g.nx() : g.ny();
      const int lines = a == 0 ? g.ny() : g.nx();
      std::vector<double> line(len);
      for (int l = 0; l < lines; ++l) {
        gather_line(u[c], a, l, line);
        const auto out = physical_filter(line, strong, weak, lb);
        scatter_line(u[c], a, l, out);
      }
    }
}

void apply_postprocess(State& u, const Problem& problem) {
  const PostProcess& pp = problem.spec.post;
  if (pp.kind == PostProcessKind::none) return;
  const Grid& g = problem.grid;
  for (int c = 0; c < problem.law->components(); ++c)
    for (int a = 0; a < g.dim; ++a) {
      if (g.axis(a).periodic) continue;
      const LineBoundary lb = filter_boundary(problem.bc[a], *problem.law, c, a, !problem.mapping);
      const int len = a == 0 ? g.nx() : g.ny();
      const int lines = a == 0 ? g.ny() : g.nx();
      std::vector<double> line(len);
      for (int l = 0; l < lines; ++l) {
        gather_line(u[c], a, l, line);
        const auto out = pp.kind == PostProcessKind::lagrange
                             ? postprocess_lagrange(line, pp.order, lb)
                             : local_filter_near_shock(line, pp.window, pp.order, lb);
        scatter_line(u[c], a, l, out);
      }
    }
}

namespace {

std::string field_of(const std::string& message) {
  const std::string tag = "field ";
  const auto b = message.find(tag);
  if (b == std::string::npos) return "?";
  const auto e = message.find(':', b);
  return message.substr(b + tag.size(), e - b - tag.size());
}

}  // namespace

SimulationResult run_simulation(const SimulationConfig& cfg, const StepObserver& observer) {
  SimulationResult res;
  res.problem = build_problem(cfg.problem);
  const Problem& prob = res.problem;
  cfg.validate(prob);
  auto rhs = make_rhs(prob);
  State u = prob.initial;
  rhs->enforce_boundaries(u);

  const Grid& g = prob.grid;
  double tv_prev = field_total_variation(u[0], g);
  auto record = [&](int step, double t, double tv, bool filtered) {
    Diagnostic d{step, t, tv, filtered, field_mass(u[0], g)};
    if (step % cfg.output_every == 0) res.diagnostics.push_back(d);
    if (observer) observer(d, u);
  };
  record(0, 0.0, tv_prev, false);

  const double eps = 1e-12 * std::max(1.0, cfg.t_final);
  long fixed_steps = -1;
  if (cfg.dt > 0.0) fixed_steps = static_cast<long>(std::floor(cfg.t_final / cfg.dt + 1e-9));

  double t = 0.0;
  int step = 0;
  auto checkpoint = cfg.checkpoints.begin();
  while (true) {
    double dt;
    if (fixed_steps >= 0) {
      if (step >= fixed_steps) break;
      dt = cfg.dt;
    } else {
      if (t >= cfg.t_final - eps) break;
      dt = prob.mapping ? cfg.cfl / rhs->max_signal_rate(u) : dt_from_cfl(g, *prob.law, u, cfg.cfl);
      if (!std::isfinite(dt) || !(dt > 0.0))
        throw SimulationAborted(step, t, "dt", u, "time step is not positive and finite");
      while (checkpoint != cfg.checkpoints.end() && *checkpoint <= t + eps) ++checkpoint;
      const double stop = checkpoint != cfg.checkpoints.end() ? std::min(*checkpoint, cfg.t_final)
                                                              : cfg.t_final;
      dt = std::min(dt, stop - t);
    }

    State next;
    double tv = 0.0;
    bool filtered = false;
    try {
      next = rk4_step(u, *rhs, dt);
      rhs->enforce_boundaries(next);
      tv = field_total_variation(next[0], g);
      // Gibbs undershoots right after a step are what the filter removes, so
      // admissibility is judged on the filtered state.
      if (cfg.filter_enabled && sensor_should_filter(tv_prev, tv, cfg.sensor)) {
        apply_filter(next, prob, cfg);
        rhs->enforce_boundaries(next);
        tv = field_total_variation(next[0], g);
        filtered = true;
        ++res.filter_count;
      }
      if (cfg.admissibility == Admissibility::strict)
        prob.law->check_admissible(next);
      else
        prob.law->check_finite(next);
    } catch (const StateError& e) {
      throw SimulationAborted(step + 1, t + dt, field_of(e.what()), u,
                              "step " + std::to_string(step + 1) + ": " + e.what());
    }
    ++step;
    t = fixed_steps >= 0 ? step * cfg.dt : t + dt;
    u = std::move(next);
    tv_prev = tv;
    record(step, t, tv, filtered);
  }

  if (cfg.postprocess) {
    apply_postprocess(u, prob);
    rhs->enforce_boundaries(u);
  }
  res.state = std::move(u);
  res.t = t;
  res.steps = step;
  return res;
}

}  // namespace specshock
