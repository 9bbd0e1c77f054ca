#pragma once

// Fourier machinery: the Delta-scaled DFT convention, windowed (filtered)
// differentiation and the mirror extension used to make bounded problems
// periodic.

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "specshock/field.hpp"

namespace specshock {

/// One axis of a uniform grid. Periodic axes hold N points x_j = lo + j*L/N;
/// bounded axes hold both end points, spacing L/(N-1).
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int points = 0;
  bool periodic = true;

  double extent() const { return hi - lo; }
  double spacing() const {
    return periodic ? extent() / points : extent() / (points - 1);
  }
  double coord(int i) const { return lo + i * spacing(); }
};

struct Grid {
  int dim = 1;
  Axis x;
  Axis y;

  static Grid line(const Axis& x);
  static Grid plane(const Axis& x, const Axis& y);

  int nx() const { return x.points; }
  int ny() const { return dim == 2 ? y.points : 1; }
  const Axis& axis(int a) const { return a == 0 ? x : y; }
  double min_spacing() const;
  Field make_field(double value = 0.0) const { return Field(nx(), ny(), value); }
  /// Throws ContractError on N < 4, odd N on a periodic axis, or L <= 0.
  void validate() const;
};

struct SpectralField {
  Grid grid;
  Field samples;
};

/// Unnormalized real-to-complex FFT of a fixed length. Owns its plans and
/// buffers; one instance must not be used by two threads at once.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  int size() const { return n_; }
  /// out[k] = sum_j in[j] e^{-2 pi i jk/n}, k = 0..n/2.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  /// out[j] = sum_k in[k] e^{2 pi i jk/n} over the Hermitian-completed spectrum.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  struct Impl;
  int n_ = 0;
  std::unique_ptr<Impl> impl_;
};

enum class Parity { even, odd };

/// Spectral operations along one axis. Bounded axes are handled by the
/// whole-sample mirror extension (length 2N-2) with the requested parity,
/// transformed, and restricted back.
class AxisSpectral {
 public:
  explicit AxisSpectral(const Axis& axis);

  const Axis& axis() const { return axis_; }
  int transform_size() const { return fft_.size(); }
  double period() const { return period_; }

  /// d/dx of one line; `response` (k = 0..M/2 of the transform length M) is
  /// applied when non-empty. The Nyquist contribution is zeroed.
  void derivative(std::span<const double> in, std::span<double> out,
                  Parity parity = Parity::even,
                  std::span<const double> response = {});
  /// Multiplies the line's spectrum by `response` (k = 0..M/2).
  void filter(std::span<double> line, std::span<const double> response,
              Parity parity = Parity::even);
  /// RSK response sampled on this axis' transform wavenumbers (cached).
  std::span<const double> rsk_response(double ratio);

 private:
  void load(std::span<const double> in, Parity parity);
  Axis axis_;
  double period_ = 0.0;
  RealFft fft_;
  std::vector<double> line_;
  std::vector<std::complex<double>> spectrum_;
  double cached_ratio_ = -1.0;
  std::vector<double> cached_response_;
};

/// Axis operators for every axis of a grid, plus line gather/scatter.
class GridSpectral {
 public:
  explicit GridSpectral(const Grid& grid);

  const Grid& grid() const { return grid_; }
  AxisSpectral& axis(int a) { return a == 0 ? x_ : *y_; }

  void derivative(const Field& in, Field& out, int axis, Parity parity = Parity::even,
                  std::span<const double> response = {});
  /// Tensor-product RSK filter; parity[a] selects the extension on bounded axis a.
  void filter_rsk(Field& f, double ratio, std::array<Parity, 2> parity = {Parity::even, Parity::even});

 private:
  Grid grid_;
  AxisSpectral x_;
  std::unique_ptr<AxisSpectral> y_;
  std::vector<double> in_line_, out_line_;
};

/// Copy line `index` along `axis` out of / into a field.
void gather_line(const Field& f, int axis, int index, std::span<double> line);
void scatter_line(Field& f, int axis, int index, std::span<const double> line);

/// DFT coefficients u_hat(omega_n) = dx * sum_j u(x_j) e^{-i omega_n x_j},
/// ordered n = -N/2 .. N/2-1.
struct Spectrum {
  double period = 0.0;
  std::vector<std::complex<double>> coefficients;

  int size() const { return static_cast<int>(coefficients.size()); }
  std::complex<double> at(int n) const { return coefficients[n + size() / 2]; }
  double wavenumber(int n) const;
};

Spectrum dft_coefficients(const SpectralField& f);
/// u(x_j) = (1/L) sum_n u_hat(omega_n) e^{i omega_n x_j} (real part).
SpectralField inverse_dft(const Spectrum& s, const Grid& grid);

/// Windowed transform: response has one entry per wavenumber, ordered
/// n = -N/2..N/2-1, on every axis of a periodic grid. Only the n >= 0 half
/// (and the Nyquist entry) is read, which keeps the result real.
SpectralField filter_fourier(const SpectralField& f, std::span<const double> response);
SpectralField diff_filtered(const SpectralField& f, std::span<const double> response, int axis);

/// RSK response at omega_n, n = -N/2..N/2-1, for a periodic axis.
std::vector<double> rsk_response_for_axis(const Axis& axis, double ratio);

enum class MirrorMode {
  half_sample,   ///< [a b c d] -> [a b c d d c b a], length 2N
  whole_sample,  ///< [a b c d] -> [a b c d c b], length 2N-2
};

SpectralField mirror_extend(const SpectralField& f, int axis,
                            MirrorMode mode = MirrorMode::half_sample,
                            Parity parity = Parity::even);

/// Even/odd whole-sample extension of a single line into `out` (size 2N-2).
void mirror_extend_line(std::span<const double> in, std::span<double> out, Parity parity);

}  // namespace specshock
