#include "specshock/filtering.hpp"

#include <algorithm>
#include <cmath>

#include "specshock/errors.hpp"

namespace specshock {

void LineBoundary::validate() const {
  auto known = [](GhostRule r) {
    return r == GhostRule::periodic || r == GhostRule::mirror ||
           r == GhostRule::antimirror || r == GhostRule::constant;
  };
  if (!known(lo) || !known(hi)) throw ContractError("unknown boundary rule");
  if ((lo == GhostRule::periodic) != (hi == GhostRule::periodic))
    throw ContractError("periodic boundary must apply to both ends");
}

double ghost_value(std::span<const double> u, std::ptrdiff_t index, const LineBoundary& bc) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  if (index >= 0 && index < n) return u[index];
  if (bc.periodic()) {
    const std::ptrdiff_t k = ((index % n) + n) % n;
    return u[k];
  }
  // Reflect until inside; each reflection about an end node may flip sign.
  double sign = 1.0;
  std::ptrdiff_t k = index;
  while (k < 0 || k >= n) {
    if (n == 1) return sign * u[0];
    if (k < 0) {
      switch (bc.lo) {
        case GhostRule::constant: return sign * u[0];
        case GhostRule::antimirror: sign = -sign; [[fallthrough]];
        default: k = -k;
      }
    } else {
      switch (bc.hi) {
        case GhostRule::constant: return sign * u[n - 1];
        case GhostRule::antimirror: sign = -sign; [[fallthrough]];
        default: k = 2 * (n - 1) - k;
      }
    }
  }
  return sign * u[k];
}

Staggered predict_midpoints(std::span<const double> u, const FilterSpec& spec,
                            const LineBoundary& bc) {
  bc.validate();
  const auto w = half_shift_weights(spec);
  const std::ptrdiff_t hw = spec.half_width;
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  if (n < 2) throw ContractError("predict_midpoints: need at least 2 samples");
  Staggered mid;
  mid.first = -hw;
  mid.values.resize(n + 2 * hw - 1);
  // Ghost-extended copy covering nodes -2W+1 .. N+2W-2.
  const std::ptrdiff_t pad = 2 * hw - 1;
  std::vector<double> ext(n + 2 * pad);
  for (std::ptrdiff_t k = -pad; k < n + pad; ++k) ext[k + pad] = ghost_value(u, k, bc);
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(mid.values.size()); ++k) {
    const std::ptrdiff_t i = mid.first + k + pad;  // node i, midpoint i+1/2
    double s = 0.0;
    for (std::ptrdiff_t m = 1; m <= hw; ++m) s += w[m - 1] * (ext[i + 1 - m] + ext[i + m]);
    mid.values[k] = s;
  }
  return mid;
}

std::vector<double> reconstruct_nodes(const Staggered& mid, const FilterSpec& spec) {
  const auto w = half_shift_weights(spec);
  const std::ptrdiff_t hw = spec.half_width;
  const auto len = static_cast<std::ptrdiff_t>(mid.values.size());
  // Node i needs midpoints i-W+1/2 .. i+W-1/2, i.e. stored indices i-W-first .. i+W-1-first.
  const std::ptrdiff_t count = len - 2 * hw + 1;
  if (count < 1) throw ContractError("reconstruct_nodes: stencil exceeds the staggered data");
  std::vector<double> out(count);
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    // Node i = first + W + c; midpoint j+1/2 lives at values[j - first].
    const std::ptrdiff_t centre = c + hw;  // index of midpoint i+1/2
    double s = 0.0;
    for (std::ptrdiff_t m = 1; m <= hw; ++m)
      s += w[m - 1] * (mid.values[centre - m] + mid.values[centre + m - 1]);
    out[c] = s;
  }
  return out;
}

std::vector<double> physical_filter(std::span<const double> u, const FilterSpec& strong,
                                    const FilterSpec& weak, const LineBoundary& bc) {
  if (strong.half_width != weak.half_width)
    throw ContractError("physical_filter: both steps must share the half-width");
  return reconstruct_nodes(predict_midpoints(u, weak, bc), strong);
}

double total_variation(std::span<const double> u, bool periodic) {
  if (u.size() < 2) return 0.0;
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) tv += std::abs(u[i + 1] - u[i]);
  if (periodic) tv += std::abs(u.front() - u.back());
  return tv;
}

void SensorConfig::validate() const {
  if (!(threshold > 1.0)) throw ContractError("sensor threshold must exceed 1");
}

bool sensor_should_filter(double tv_prev, double tv_curr, const SensorConfig& cfg) {
  if (tv_prev == 0.0) return tv_curr > 0.0;
  return tv_curr > cfg.threshold * tv_prev;
}

std::vector<double> postprocess_lagrange(std::span<const double> u, int order,
                                         const LineBoundary& bc) {
  if (order != 2 && order != 4)
    throw ContractError("postprocess_lagrange: order must be 2 or 4");
  const auto spec = FilterSpec::lagrange(order);
  return physical_filter(u, spec, spec, bc);
}

std::size_t steepest_gradient_index(std::span<const double> u) {
  std::size_t best = 0;
  double jump = -1.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double d = std::abs(u[i + 1] - u[i]);
    if (d > jump) {
      jump = d;
      best = i;
    }
  }
  return best;
}

std::vector<double> local_filter_near_shock(std::span<const double> u, int window_halfwidth,
                                            int order, const LineBoundary& bc) {
  if (window_halfwidth < 1) throw ContractError("local filter window must be >= 1");
  std::vector<double> out(u.begin(), u.end());
  if (u.size() < 2) return out;
  const auto filtered = postprocess_lagrange(u, order, bc);
  const auto s = static_cast<std::ptrdiff_t>(steepest_gradient_index(u));
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, s - window_halfwidth);
  const std::ptrdiff_t hi =
      std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(u.size()) - 1, s + 1 + window_halfwidth);
  for (std::ptrdiff_t i = lo; i <= hi; ++i) out[i] = filtered[i];
  return out;
}

}  // namespace specshock
