#include "specshock/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "specshock/errors.hpp"

namespace specshock {

namespace {

// sin(pi t) with exact zeros at integers.
double sin_pi(double t) {
  const double n = std::nearbyint(t);
  const double f = t - n;
  if (f == 0.0) return 0.0;
  const double s = std::sin(std::numbers::pi * f);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

}  // namespace

FilterSpec FilterSpec::rsk(double ratio, int half_width, double spacing) {
  FilterSpec s{FilterFamily::rsk, half_width, ratio, spacing};
  s.validate();
  return s;
}

FilterSpec FilterSpec::lagrange(int half_width, double spacing) {
  FilterSpec s{FilterFamily::lagrange, half_width, 0.0, spacing};
  s.validate();
  return s;
}

void FilterSpec::validate() const {
  if (half_width < 1) throw ContractError("filter half-width must be >= 1");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw ContractError("filter spacing must be positive");
  if (family == FilterFamily::rsk && (!(ratio > 0.0) || !std::isfinite(ratio)))
    throw ContractError("RSK ratio r must be positive");
}

double rsk_value(double offset, const FilterSpec& spec) {
  if (spec.family != FilterFamily::rsk)
    throw ContractError("rsk_value requires an RSK filter spec");
  if (!std::isfinite(offset)) throw DomainError("rsk_value: non-finite offset");
  if (offset == 0.0) return 1.0;
  const double t = offset / spec.spacing;
  const double sinc = sin_pi(t) / (std::numbers::pi * t);
  const double sigma = spec.sigma();
  return sinc * std::exp(-offset * offset / (2.0 * sigma * sigma));
}

double lagrange_basis(std::span<const double> nodes, std::size_t j, double x) {
  if (j >= nodes.size()) throw ContractError("lagrange_basis: node index out of range");
  double w = 1.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k == j) continue;
    w *= (x - nodes[k]) / (nodes[j] - nodes[k]);
  }
  return w;
}

double lagrange_weight(int j, double x, const FilterSpec& spec) {
  if (spec.family != FilterFamily::lagrange)
    throw ContractError("lagrange_weight requires a Lagrange filter spec");
  const int w = spec.half_width;
  if (j < -w || j > w)
    throw DomainError("lagrange_weight: node " + std::to_string(j) +
                      " outside [-W, W]");
  if (!std::isfinite(x)) throw DomainError("lagrange_weight: non-finite position");
  double prod = 1.0;
  const double xj = j * spec.spacing;
  for (int k = -w; k <= w; ++k) {
    if (k == j) continue;
    const double xk = k * spec.spacing;
    prod *= (x - xk) / (xj - xk);
  }
  return prod;
}

double rsk_response_at(double ratio, double theta) {
  constexpr double pi = std::numbers::pi;
  const double a = ratio / std::numbers::sqrt2;
  const double norm = std::erf(a * pi);
  return 0.5 * (std::erf(a * (pi - theta)) + std::erf(a * (pi + theta))) / norm;
}

std::vector<double> rsk_response(const FilterSpec& spec,
                                 std::span<const double> wavenumbers) {
  if (spec.family != FilterFamily::rsk)
    throw ContractError("rsk_response requires an RSK filter spec");
  spec.validate();
  std::vector<double> out;
  out.reserve(wavenumbers.size());
  for (double w : wavenumbers) out.push_back(rsk_response_at(spec.ratio, w * spec.spacing));
  return out;
}

std::vector<double> half_shift_weights(const FilterSpec& spec) {
  spec.validate();
  const int w = spec.half_width;
  std::vector<double> weights(w);
  if (spec.family == FilterFamily::rsk) {
    for (int m = 1; m <= w; ++m)
      weights[m - 1] = rsk_value((m - 0.5) * spec.spacing, spec);
  } else {
    // Nodes at +-(m - 1/2) in grid units, interpolated to the midpoint 0.
    std::vector<double> nodes;
    nodes.reserve(2 * w);
    for (int m = 1; m <= w; ++m) {
      nodes.push_back(-(m - 0.5));
      nodes.push_back(m - 0.5);
    }
    for (int m = 1; m <= w; ++m)
      weights[m - 1] = lagrange_basis(nodes, 2 * (m - 1) + 1, 0.0);
  }
  double sum = 0.0;
  for (double v : weights) sum += 2.0 * v;
  for (double& v : weights) v /= sum;
  return weights;
}

double half_shift_response(std::span<const double> weights, double theta) {
  double h = 0.0;
  for (std::size_t m = 1; m <= weights.size(); ++m)
    h += 2.0 * weights[m - 1] * std::cos((m - 0.5) * theta);
  return h;
}

std::vector<double> lagrange_response(const FilterSpec& spec, int n) {
  if (spec.family != FilterFamily::lagrange)
    throw ContractError("lagrange_response requires a Lagrange filter spec");
  if (n < 2 || n % 2 != 0) throw ContractError("lagrange_response: n must be even and >= 2");
  const auto weights = half_shift_weights(spec);
  std::vector<double> out(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k)
    out[k] = half_shift_response(weights, 2.0 * std::numbers::pi * k / n);
  return out;
}

}  // namespace specshock
