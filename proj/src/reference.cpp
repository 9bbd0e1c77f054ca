#include "specshock/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>

#include "specshock/cache.hpp"
#include "specshock/errors.hpp"

namespace specshock {

// ---------------------------------------------------------------- norms

ErrorReport error_norms(std::span<const double> f, std::span<const double> ref,
                        const std::string& field, double time) {
  if (f.size() != ref.size()) throw ContractError("error_norms: shape mismatch");
  if (f.empty()) throw ContractError("error_norms: empty input");
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double e = std::abs(f[k] - ref[k]);
    s1 += e;
    s2 += e * e;
  }
  const double n = static_cast<double>(f.size());
  return {s1 / n, std::sqrt(s2 / n), f.size(), field, time};
}

ErrorReport error_norms(const Field& f, const Field& ref, const Grid& grid, const std::string& field,
                        double time) {
  if (!f.same_shape(ref) || f.nx() != grid.nx() || f.ny() != grid.ny())
    throw ContractError("error_norms: shape mismatch");
  const int px = grid.nx() + (grid.x.periodic ? 1 : 0);
  const int py = grid.dim == 2 ? grid.ny() + (grid.y.periodic ? 1 : 0) : 1;
  std::vector<double> a, b;
  a.reserve(static_cast<std::size_t>(px) * py);
  b.reserve(a.capacity());
  for (int j = 0; j < py; ++j)
    for (int i = 0; i < px; ++i) {
      const int ii = i % grid.nx(), jj = j % grid.ny();
      a.push_back(f(ii, jj));
      b.push_back(ref(ii, jj));
    }
  return error_norms(a, b, field, time);
}

// ---------------------------------------------------------------- scalar exact solutions

Field advection_exact(const std::function<double(double)>& u0, const Grid& grid, double t) {
  if (grid.dim != 1 || !grid.x.periodic) throw ContractError("advection_exact needs a periodic line");
  const double lo = grid.x.lo, len = grid.x.extent();
  Field out = grid.make_field();
  for (int i = 0; i < grid.nx(); ++i) {
    double s = std::fmod(grid.x.coord(i) - t - lo, len);
    if (s < 0.0) s += len;
    out(i) = u0(lo + s);
  }
  return out;
}

double burgers_exact(BurgersWave kind, double x, double t) {
  if (kind == BurgersWave::shock) {
    const double d = x - 0.5 * t;
    return d < 0.0 ? 1.0 : (d > 0.0 ? 0.0 : 0.5);
  }
  if (!(t > 0.0)) throw ContractError("rarefaction needs t > 0");
  if (x <= 0.0) return 0.0;
  if (x >= t) return 1.0;
  return x / t;
}

// ---------------------------------------------------------------- Riemann solver

namespace {

struct SideFn {
  double value, slope;
};

SideFn pressure_function(double p, const Primitive& w, double gamma) {
  const double c = std::sqrt(gamma * w.p / w.rho);
  if (p > w.p) {
    const double a = 2.0 / ((gamma + 1.0) * w.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * w.p;
    const double q = std::sqrt(a / (p + b));
    return {(p - w.p) * q, q * (1.0 - 0.5 * (p - w.p) / (p + b))};
  }
  const double e = (gamma - 1.0) / (2.0 * gamma);
  const double r = std::pow(p / w.p, e);
  return {2.0 * c / (gamma - 1.0) * (r - 1.0), r * w.p / (p * w.rho * c)};
}

}  // namespace

RiemannStar riemann_star(const Primitive& left, const Primitive& right, double gamma) {
  for (const Primitive* w : {&left, &right})
    if (!(w->rho > 0.0 && w->p > 0.0) || !std::isfinite(w->u))
      throw StateError("riemann_exact: inadmissible input state");
  const double cl = std::sqrt(gamma * left.p / left.rho);
  const double cr = std::sqrt(gamma * right.p / right.rho);
  const double du = right.u - left.u;
  if (2.0 * (cl + cr) / (gamma - 1.0) <= du)
    throw StateError("riemann_exact: initial data generate vacuum");

  auto f = [&](double p) {
    const SideFn a = pressure_function(p, left, gamma), b = pressure_function(p, right, gamma);
    return SideFn{a.value + b.value + du, a.slope + b.slope};
  };
  double lo = 0.0, hi = std::max(left.p, right.p);
  while (f(hi).value < 0.0) hi *= 2.0;
  // Two-rarefaction guess, clipped into the bracket.
  const double e = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow((cl + cr - 0.5 * (gamma - 1.0) * du) /
                          (cl / std::pow(left.p, e) + cr / std::pow(right.p, e)),
                      1.0 / e);
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const SideFn v = f(p);
    if (v.value > 0.0) hi = p; else lo = p;
    double next = p - v.value / v.slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - p) / (0.5 * (next + p));
    p = next;
    if (change < 1e-12 || hi - lo < 1e-15 * hi) break;
  }

  RiemannStar s;
  s.p = p;
  s.u = 0.5 * (left.u + right.u) + 0.5 * (pressure_function(p, right, gamma).value -
                                           pressure_function(p, left, gamma).value);
  const double g1 = (gamma - 1.0) / (gamma + 1.0);
  auto star_density = [&](const Primitive& w) {
    const double ratio = p / w.p;
    if (p > w.p) return w.rho * (ratio + g1) / (g1 * ratio + 1.0);
    return w.rho * std::pow(ratio, 1.0 / gamma);
  };
  s.rho_left = star_density(left);
  s.rho_right = star_density(right);
  s.left_shock = p > left.p;
  s.right_shock = p > right.p;
  if (s.left_shock) {
    s.left_speed = left.u - cl * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p / left.p +
                                           (gamma - 1.0) / (2.0 * gamma));
    s.left_tail = s.left_speed;
  } else {
    s.left_speed = left.u - cl;
    s.left_tail = s.u - cl * std::pow(p / left.p, e);
  }
  if (s.right_shock) {
    s.right_speed = right.u + cr * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p / right.p +
                                             (gamma - 1.0) / (2.0 * gamma));
    s.right_tail = s.right_speed;
  } else {
    s.right_speed = right.u + cr;
    s.right_tail = s.u + cr * std::pow(p / right.p, e);
  }
  return s;
}

Primitive riemann_exact(const Primitive& left, const Primitive& right, double xi, double gamma) {
  const RiemannStar s = riemann_star(left, right, gamma);
  const double g2 = 2.0 / (gamma + 1.0);
  const double gm = (gamma - 1.0) / (gamma + 1.0);
  Primitive out;
  out.v = 0.0;
  if (xi <= s.u) {
    if (xi <= s.left_speed) return Primitive{left.rho, left.u, 0.0, left.p};
    if (xi >= s.left_tail) return Primitive{s.rho_left, s.u, 0.0, s.p};
    const double cl = std::sqrt(gamma * left.p / left.rho);
    const double c = g2 * cl + gm * (left.u - xi);
    out.rho = left.rho * std::pow(c / cl, 2.0 / (gamma - 1.0));
    out.u = g2 * (cl + 0.5 * (gamma - 1.0) * left.u + xi);
    out.p = left.p * std::pow(c / cl, 2.0 * gamma / (gamma - 1.0));
    return out;
  }
  if (xi >= s.right_speed) return Primitive{right.rho, right.u, 0.0, right.p};
  if (xi <= s.right_tail) return Primitive{s.rho_right, s.u, 0.0, s.p};
  const double cr = std::sqrt(gamma * right.p / right.rho);
  const double c = g2 * cr - gm * (right.u - xi);
  out.rho = right.rho * std::pow(c / cr, 2.0 / (gamma - 1.0));
  out.u = g2 * (-cr + 0.5 * (gamma - 1.0) * right.u + xi);
  out.p = right.p * std::pow(c / cr, 2.0 * gamma / (gamma - 1.0));
  return out;
}

// ---------------------------------------------------------------- Example 5 reference

std::vector<double> nonconvex_profile(int n, double t) {
  if (n < 3) throw ContractError("nonconvex_profile: need at least 3 nodes");
  if (!(t > 0.0)) throw ContractError("nonconvex_profile: need t > 0");
  if (auto hit = cache_load("ex5_llf", n, t); hit && hit->size() == static_cast<std::size_t>(n))
    return *hit;

  const double h = 2.0 / (n - 1);
  std::vector<double> u(n), flux(n + 1);
  for (int i = 0; i < n; ++i) u[i] = -1.0 + i * h < 0.0 ? -3.0 : 3.0;
  const auto kind = ScalarFluxKind::nonconvex;
  double time = 0.0;
  while (time < t) {
    const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
    const double amax = std::max(scalar_max_speed_between(*mn, *mx, kind), 1e-12);
    const double dt = std::min(0.4 * h / amax, t - time);
    // Interface k sits between nodes k-1 and k; ends use constant ghosts.
    for (int k = 0; k <= n; ++k) {
      const double a = u[std::max(k - 1, 0)], b = u[std::min(k, n - 1)];
      const double alpha = scalar_max_speed_between(a, b, kind);
      flux[k] = 0.5 * (scalar_flux(a, kind) + scalar_flux(b, kind)) - 0.5 * alpha * (b - a);
    }
    for (int i = 0; i < n; ++i) u[i] -= dt / h * (flux[i + 1] - flux[i]);
    time += dt;
  }
  cache_store("ex5_llf", n, t, u);
  return u;
}

std::vector<double> nonconvex_reference(std::span<const double> x, double t, int n_fine) {
  const std::vector<double> fine = nonconvex_profile(n_fine, t);
  const double h = 2.0 / (n_fine - 1);
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] <= -1.0) { out[k] = fine.front(); continue; }
    if (x[k] >= 1.0) { out[k] = fine.back(); continue; }
    const double s = (x[k] + 1.0) / h;
    const auto i = std::min(static_cast<int>(std::floor(s)), n_fine - 2);
    const double w = s - i;
    out[k] = (1.0 - w) * fine[i] + w * fine[i + 1];
  }
  return out;
}

// ---------------------------------------------------------------- vortex

Field isentropic_vortex_exact(const ProblemSpec& spec, const Grid& grid, double t) {
  Field rho = grid.make_field();
  const double xc = std::fmod(spec.vortex_xc + t, 10.0);
  const double yc = std::fmod(spec.vortex_yc + t, 10.0);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      rho(i, j) = vortex_density(grid.x.coord(i), grid.y.coord(j), xc, yc, spec.vortex_lambda,
                                 spec.eta_vortex);
  return rho;
}

// ---------------------------------------------------------------- amplitude extraction

namespace {

std::vector<double> refine_periodic_samples(std::span<const double> u, int refine) {
  const int m = static_cast<int>(u.size());
  if (m < 2 || m % 2 != 0) throw ContractError("spectral refinement needs an even length >= 2");
  if (refine < 1) throw ContractError("refinement factor must be >= 1");
  const int mf = m * refine;
  RealFft coarse(m), fine(mf);
  std::vector<std::complex<double>> c(m / 2 + 1), cf(mf / 2 + 1, 0.0);
  coarse.forward(u, c);
  for (int k = 0; k <= m / 2; ++k) cf[k] = c[k];
  // Split the Nyquist mode evenly between +m/2 and -m/2 (only +m/2 is stored).
  if (refine > 1) cf[m / 2] *= 0.5;
  std::vector<double> out(mf);
  fine.inverse(cf, out);
  for (double& v : out) v /= m;
  return out;
}

}  // namespace

std::vector<double> spectral_refine_periodic(std::span<const double> u, int refine) {
  return refine_periodic_samples(u, refine);
}

std::vector<double> spectral_refine(std::span<const double> u, int refine) {
  const int n = static_cast<int>(u.size());
  if (n < 2) throw ContractError("spectral refinement needs at least 2 samples");
  // The even extension has a slope jump at each end unless the end slopes
  // vanish. Remove a quadratic carrying the one-sided end slopes first, so
  // the extension is smooth to second order and the interpolant converges fast.
  double d0 = 0.0, d1 = 0.0;
  if (n >= 7) {
    static constexpr std::array<double, 7> c{-49.0 / 20, 6.0, -15.0 / 2, 20.0 / 3, -15.0 / 4, 6.0 / 5, -1.0 / 6};
    for (int k = 0; k < 7; ++k) {
      d0 += c[k] * u[k];
      d1 -= c[k] * u[n - 1 - k];
    }
  }
  const double span = n - 1;
  auto trend = [&](double i) { return d0 * i + (d1 - d0) * i * i / (2.0 * span); };
  std::vector<double> rest(u.begin(), u.end());
  for (int i = 0; i < n; ++i) rest[i] -= trend(i);
  std::vector<double> ext(2 * (n - 1));
  mirror_extend_line(rest, ext, Parity::even);
  auto fine = refine_periodic_samples(ext, refine);
  fine.resize(static_cast<std::size_t>(refine) * (n - 1) + 1);
  for (std::size_t k = 0; k < fine.size(); ++k) fine[k] += trend(static_cast<double>(k) / refine);
  return fine;
}

std::vector<std::size_t> local_maxima(std::span<const double> v) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if (v[k] > v[k - 1] && v[k] >= v[k + 1]) idx.push_back(k);
  return idx;
}

std::vector<std::size_t> local_minima(std::span<const double> v) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if (v[k] < v[k - 1] && v[k] <= v[k + 1]) idx.push_back(k);
  return idx;
}

AmplitudeProfile entropy_amplitude_profile(const Field& rho, const Grid& grid, double wavelength,
                                           Baseline baseline, int refine, double shock_margin) {
  if (grid.x.periodic) throw ContractError("amplitude extraction expects a bounded x axis");
  if (baseline == Baseline::transverse_mean && (grid.dim != 2 || !grid.y.periodic))
    throw ContractError("transverse mean needs a periodic y axis");
  if (baseline == Baseline::moving_average && !(wavelength > 0.0))
    throw ContractError("moving average needs a positive wavelength");
  const int nx = grid.nx(), ny = grid.ny();

  std::vector<double> mean_line(nx, 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) mean_line[i] += rho(i, j) / ny;
  const std::size_t s = steepest_gradient_index(mean_line);
  const double jump = std::abs(mean_line[s + 1] - mean_line[s]);
  const double range = *std::max_element(mean_line.begin(), mean_line.end()) -
                       *std::min_element(mean_line.begin(), mean_line.end());
  if (!(jump > 0.0) || jump < 0.05 * range || range < 1e-12)
    throw AnalysisError("no detectable shock in the density field");

  AmplitudeProfile prof;
  const double h = grid.x.spacing();
  prof.shock_x = grid.x.coord(static_cast<int>(s)) + 0.5 * h;
  const int last = static_cast<int>(std::floor((prof.shock_x - shock_margin - grid.x.lo) / h));
  if (last < 4) throw AnalysisError("no post-shock region to analyse");

  const int nf = refine * last + 1;
  const double hf = h / refine;
  // rows[j][i]: refined x-lines, one per y sample.
  std::vector<std::vector<double>> rows(ny);
  for (int j = 0; j < ny; ++j) {
    std::vector<double> seg(last + 1);
    for (int i = 0; i <= last; ++i) seg[i] = rho(i, j);
    rows[j] = spectral_refine(seg, refine);
  }
  // Refine along y when there is a y direction.
  int nyf = ny;
  if (grid.dim == 2 && grid.y.periodic && ny % 2 == 0) {
    nyf = ny * refine;
    std::vector<std::vector<double>> dense(nyf, std::vector<double>(nf));
    std::vector<double> col(ny);
    for (int i = 0; i < nf; ++i) {
      for (int j = 0; j < ny; ++j) col[j] = rows[j][i];
      const auto cf = spectral_refine_periodic(col, refine);
      for (int j = 0; j < nyf; ++j) dense[j][i] = cf[j];
    }
    rows = std::move(dense);
  }

  prof.x.resize(nf);
  prof.upper.assign(nf, -INFINITY);
  prof.lower.assign(nf, INFINITY);
  for (int i = 0; i < nf; ++i) prof.x[i] = grid.x.lo + i * hf;

  std::vector<double> base(nf);
  if (baseline == Baseline::transverse_mean) {
    std::fill(base.begin(), base.end(), 0.0);
    for (const auto& r : rows)
      for (int i = 0; i < nf; ++i) base[i] += r[i] / nyf;
  }
  // Running integral of the linear interpolant, so the averaging window spans
  // exactly one wavelength regardless of the grid spacing.
  std::vector<double> cum(nf);
  for (const auto& r : rows) {
    if (baseline == Baseline::moving_average) {
      cum[0] = 0.0;
      for (int i = 1; i < nf; ++i) cum[i] = cum[i - 1] + 0.5 * hf * (r[i - 1] + r[i]);
      auto integral_to = [&](double p) {
        p = std::clamp(p, 0.0, static_cast<double>(nf - 1));
        const int k = std::min(static_cast<int>(p), nf - 2);
        const double f = p - k, mid = r[k] + f * (r[k + 1] - r[k]);
        return cum[k] + 0.5 * f * hf * (r[k] + mid);
      };
      const double half = 0.5 * wavelength / hf;
      for (int i = 0; i < nf; ++i) {
        const double a = std::max(0.0, i - half), b = std::min(nf - 1.0, i + half);
        base[i] = (integral_to(b) - integral_to(a)) / ((b - a) * hf);
      }
    }
    for (int i = 0; i < nf; ++i) {
      const double d = r[i] - base[i];
      prof.upper[i] = std::max(prof.upper[i], d);
      prof.lower[i] = std::min(prof.lower[i], d);
    }
  }
  return prof;
}

}  // namespace specshock
