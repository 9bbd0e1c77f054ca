#include "specshock/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "specshock/errors.hpp"
#include "specshock/kernels.hpp"

namespace specshock {

namespace {

// The FFTW planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw DataError(std::string(what) + ": non-finite sample");
}

}  // namespace

// ---------------------------------------------------------------- Grid

Grid Grid::line(const Axis& x) {
  Grid g;
  g.dim = 1;
  g.x = x;
  g.y = Axis{0.0, 1.0, 1, true};
  g.validate();
  return g;
}

Grid Grid::plane(const Axis& x, const Axis& y) {
  Grid g;
  g.dim = 2;
  g.x = x;
  g.y = y;
  g.validate();
  return g;
}

double Grid::min_spacing() const {
  return dim == 2 ? std::min(x.spacing(), y.spacing()) : x.spacing();
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw ContractError("grid dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    const Axis& ax = axis(a);
    if (ax.points < 4) throw ContractError("grid axis needs at least 4 points");
    if (ax.periodic && ax.points % 2 != 0)
      throw ContractError("periodic grid axis needs an even point count");
    if (!(ax.extent() > 0.0)) throw ContractError("grid axis extent must be positive");
  }
}

// ---------------------------------------------------------------- RealFft

struct RealFft::Impl {
  double* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Impl(int n) {
    std::lock_guard lock(planner_mutex());
    in = fftw_alloc_real(n);
    out = fftw_alloc_complex(n / 2 + 1);
    fwd = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(n, out, in, FFTW_ESTIMATE);
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(in);
    fftw_free(out);
  }
};

RealFft::RealFft(int n) : n_(n) {
  if (n < 2) throw ContractError("RealFft: length must be >= 2");
  impl_ = std::make_unique<Impl>(n);
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_ / 2 + 1)
    throw ContractError("RealFft::forward: length mismatch");
  std::copy(in.begin(), in.end(), impl_->in);
  fftw_execute(impl_->fwd);
  for (int k = 0; k <= n_ / 2; ++k) out[k] = {impl_->out[k][0], impl_->out[k][1]};
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  if (static_cast<int>(in.size()) != n_ / 2 + 1 || static_cast<int>(out.size()) != n_)
    throw ContractError("RealFft::inverse: length mismatch");
  for (int k = 0; k <= n_ / 2; ++k) {
    impl_->out[k][0] = in[k].real();
    impl_->out[k][1] = in[k].imag();
  }
  fftw_execute(impl_->bwd);
  std::copy(impl_->in, impl_->in + n_, out.begin());
}

// ---------------------------------------------------------------- lines

void mirror_extend_line(std::span<const double> in, std::span<double> out, Parity parity) {
  const std::size_t n = in.size();
  if (n < 2 || out.size() != 2 * n - 2)
    throw ContractError("mirror_extend_line: output must hold 2N-2 samples");
  const double s = parity == Parity::even ? 1.0 : -1.0;
  std::copy(in.begin(), in.end(), out.begin());
  for (std::size_t k = 1; k + 1 < n; ++k) out[n - 1 + k] = s * in[n - 1 - k];
}

void gather_line(const Field& f, int axis, int index, std::span<double> line) {
  if (axis == 0) {
    for (int i = 0; i < f.nx(); ++i) line[i] = f(i, index);
  } else {
    for (int j = 0; j < f.ny(); ++j) line[j] = f(index, j);
  }
}

void scatter_line(Field& f, int axis, int index, std::span<const double> line) {
  if (axis == 0) {
    for (int i = 0; i < f.nx(); ++i) f(i, index) = line[i];
  } else {
    for (int j = 0; j < f.ny(); ++j) f(index, j) = line[j];
  }
}

// ---------------------------------------------------------------- AxisSpectral

AxisSpectral::AxisSpectral(const Axis& axis)
    : axis_(axis),
      period_(axis.periodic ? axis.extent() : 2.0 * axis.extent()),
      fft_(axis.periodic ? axis.points : 2 * (axis.points - 1)),
      line_(fft_.size()),
      spectrum_(fft_.size() / 2 + 1) {}

void AxisSpectral::load(std::span<const double> in, Parity parity) {
  if (static_cast<int>(in.size()) != axis_.points)
    throw ContractError("AxisSpectral: line length does not match the axis");
  if (axis_.periodic) {
    std::copy(in.begin(), in.end(), line_.begin());
  } else {
    mirror_extend_line(in, line_, parity);
  }
}

void AxisSpectral::derivative(std::span<const double> in, std::span<double> out,
                              Parity parity, std::span<const double> response) {
  const int m = fft_.size();
  if (!response.empty() && static_cast<int>(response.size()) != m / 2 + 1)
    throw ContractError("derivative: response length mismatch");
  load(in, parity);
  fft_.forward(line_, spectrum_);
  const double scale = 1.0 / m;
  for (int k = 0; k < m / 2; ++k) {
    const double w = kTwoPi * k / period_;
    const double eta = response.empty() ? 1.0 : response[k];
    spectrum_[k] *= std::complex<double>(0.0, w * eta * scale);
  }
  spectrum_[m / 2] = 0.0;
  fft_.inverse(spectrum_, line_);
  std::copy(line_.begin(), line_.begin() + axis_.points, out.begin());
}

void AxisSpectral::filter(std::span<double> line, std::span<const double> response,
                          Parity parity) {
  const int m = fft_.size();
  if (static_cast<int>(response.size()) != m / 2 + 1)
    throw ContractError("filter: response length mismatch");
  load(line, parity);
  fft_.forward(line_, spectrum_);
  const double scale = 1.0 / m;
  for (int k = 0; k <= m / 2; ++k) spectrum_[k] *= response[k] * scale;
  fft_.inverse(spectrum_, line_);
  std::copy(line_.begin(), line_.begin() + axis_.points, line.begin());
}

std::span<const double> AxisSpectral::rsk_response(double ratio) {
  if (ratio != cached_ratio_) {
    const int m = fft_.size();
    cached_response_.resize(m / 2 + 1);
    for (int k = 0; k <= m / 2; ++k)
      cached_response_[k] = rsk_response_at(ratio, kTwoPi * k / m);
    cached_ratio_ = ratio;
  }
  return cached_response_;
}

// ---------------------------------------------------------------- GridSpectral

GridSpectral::GridSpectral(const Grid& grid) : grid_(grid), x_(grid.x) {
  if (grid.dim == 2) y_ = std::make_unique<AxisSpectral>(grid.y);
  const int n = std::max(grid.nx(), grid.ny());
  in_line_.resize(n);
  out_line_.resize(n);
}

void GridSpectral::derivative(const Field& in, Field& out, int axis, Parity parity,
                              std::span<const double> response) {
  if (axis < 0 || axis >= grid_.dim) throw ContractError("derivative: bad axis");
  AxisSpectral& op = this->axis(axis);
  const int len = axis == 0 ? in.nx() : in.ny();
  const int lines = axis == 0 ? in.ny() : in.nx();
  std::span<double> a(in_line_.data(), len), b(out_line_.data(), len);
  for (int l = 0; l < lines; ++l) {
    gather_line(in, axis, l, a);
    op.derivative(a, b, parity, response);
    scatter_line(out, axis, l, b);
  }
}

void GridSpectral::filter_rsk(Field& f, double ratio, std::array<Parity, 2> parity) {
  for (int axis = 0; axis < grid_.dim; ++axis) {
    AxisSpectral& op = this->axis(axis);
    const auto response = op.rsk_response(ratio);
    const int len = axis == 0 ? f.nx() : f.ny();
    const int lines = axis == 0 ? f.ny() : f.nx();
    std::span<double> a(in_line_.data(), len);
    for (int l = 0; l < lines; ++l) {
      gather_line(f, axis, l, a);
      op.filter(a, response, parity[axis]);
      scatter_line(f, axis, l, a);
    }
  }
}

// ---------------------------------------------------------------- transform-convention API

double Spectrum::wavenumber(int n) const { return kTwoPi * n / period; }

Spectrum dft_coefficients(const SpectralField& f) {
  if (f.grid.dim != 1 || !f.grid.x.periodic)
    throw ContractError("dft_coefficients: needs a periodic 1D grid");
  require_finite(f.samples.values(), "dft_coefficients");
  const Axis& ax = f.grid.x;
  const int n = ax.points;
  RealFft fft(n);
  std::vector<std::complex<double>> half(n / 2 + 1);
  fft.forward(f.samples.values(), half);
  Spectrum s;
  s.period = ax.extent();
  s.coefficients.resize(n);
  const double dx = ax.spacing();
  for (int m = -n / 2; m < n / 2; ++m) {
    const std::complex<double> c = m >= 0 ? half[m] : std::conj(half[-m]);
    const double phase = -s.wavenumber(m) * ax.lo;
    s.coefficients[m + n / 2] = dx * c * std::polar(1.0, phase);
  }
  return s;
}

SpectralField inverse_dft(const Spectrum& s, const Grid& grid) {
  if (grid.dim != 1 || !grid.x.periodic || grid.x.points != s.size())
    throw ContractError("inverse_dft: grid does not match the spectrum");
  const int n = s.size();
  const double lo = grid.x.lo;
  const double length = grid.x.extent();
  auto y = [&](int m) { return s.at(m) * std::polar(1.0, s.wavenumber(m) * lo) / length; };
  std::vector<std::complex<double>> half(n / 2 + 1);
  half[0] = y(0).real();
  for (int k = 1; k < n / 2; ++k) half[k] = 0.5 * (y(k) + std::conj(y(-k)));
  half[n / 2] = y(-n / 2).real();
  SpectralField out{grid, grid.make_field()};
  RealFft fft(n);
  fft.inverse(half, out.samples.values());
  return out;
}

namespace {

std::vector<double> half_from_full(std::span<const double> response, int n) {
  if (static_cast<int>(response.size()) != n)
    throw ContractError("response length must equal the number of wavenumbers");
  std::vector<double> half(n / 2 + 1);
  for (int k = 0; k < n / 2; ++k) half[k] = response[k + n / 2];
  half[n / 2] = response[0];
  return half;
}

void require_periodic(const Grid& g, const char* what) {
  for (int a = 0; a < g.dim; ++a)
    if (!g.axis(a).periodic) throw ContractError(std::string(what) + ": needs a periodic grid");
}

}  // namespace

SpectralField filter_fourier(const SpectralField& f, std::span<const double> response) {
  require_periodic(f.grid, "filter_fourier");
  require_finite(f.samples.values(), "filter_fourier");
  SpectralField out = f;
  for (int a = 0; a < f.grid.dim; ++a) {
    AxisSpectral op(f.grid.axis(a));
    const auto half = half_from_full(response, f.grid.axis(a).points);
    const int len = f.grid.axis(a).points;
    const int lines = a == 0 ? f.grid.ny() : f.grid.nx();
    std::vector<double> line(len);
    for (int l = 0; l < lines; ++l) {
      gather_line(out.samples, a, l, line);
      op.filter(line, half);
      scatter_line(out.samples, a, l, line);
    }
  }
  return out;
}

SpectralField diff_filtered(const SpectralField& f, std::span<const double> response, int axis) {
  require_periodic(f.grid, "diff_filtered");
  require_finite(f.samples.values(), "diff_filtered");
  if (axis < 0 || axis >= f.grid.dim) throw ContractError("diff_filtered: bad axis");
  const auto half = half_from_full(response, f.grid.axis(axis).points);
  SpectralField out{f.grid, f.grid.make_field()};
  GridSpectral ops(f.grid);
  ops.derivative(f.samples, out.samples, axis, Parity::even, half);
  return out;
}

std::vector<double> rsk_response_for_axis(const Axis& axis, double ratio) {
  const int n = axis.points;
  std::vector<double> r(n);
  for (int m = -n / 2; m < n / 2; ++m) r[m + n / 2] = rsk_response_at(ratio, kTwoPi * m / n);
  return r;
}

SpectralField mirror_extend(const SpectralField& f, int axis, MirrorMode mode, Parity parity) {
  if (axis < 0 || axis >= f.grid.dim) throw ContractError("mirror_extend: bad axis");
  const Axis& src = f.grid.axis(axis);
  const int n = src.points;
  const int m = mode == MirrorMode::half_sample ? 2 * n : 2 * n - 2;
  const double dx = src.spacing();
  Axis ext{src.lo, src.lo + m * dx, m, true};
  Grid g = f.grid;
  (axis == 0 ? g.x : g.y) = ext;
  SpectralField out{g, g.make_field()};
  const double s = parity == Parity::even ? 1.0 : -1.0;
  const int lines = axis == 0 ? f.grid.ny() : f.grid.nx();
  std::vector<double> in(n), line(m);
  for (int l = 0; l < lines; ++l) {
    gather_line(f.samples, axis, l, in);
    if (mode == MirrorMode::half_sample) {
      for (int i = 0; i < n; ++i) {
        line[i] = in[i];
        line[2 * n - 1 - i] = s * in[i];
      }
    } else {
      mirror_extend_line(in, line, parity);
    }
    scatter_line(out.samples, axis, l, line);
  }
  return out;
}

}  // namespace specshock
