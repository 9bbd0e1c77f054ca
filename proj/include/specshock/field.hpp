#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specshock {

/// Samples on a 1D or 2D tensor grid. Storage is x-fastest: (i, j) -> j*nx + i.
class Field {
 public:
  Field() = default;
  explicit Field(int nx, int ny = 1, double value = 0.0)
      : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * ny, value) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(const Field& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_;
  }

  double& operator()(int i, int j = 0) { return data_[index(i, j)]; }
  double operator()(int i, int j = 0) const { return data_[index(i, j)]; }
  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  bool operator==(const Field&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx_ + i;
  }

  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> data_;
};

/// A set of conserved components sharing one shape (scalar law: one component).
struct State {
  std::vector<Field> components;

  std::size_t count() const { return components.size(); }
  Field& operator[](std::size_t c) { return components[c]; }
  const Field& operator[](std::size_t c) const { return components[c]; }
  bool operator==(const State&) const = default;
};

/// y += a * x, componentwise.
void axpy(double a, const State& x, State& y);

}  // namespace specshock
