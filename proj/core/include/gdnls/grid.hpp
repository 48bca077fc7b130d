#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gdnls {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Uniform periodic grid on [−L/2, L/2) with N = 2^m ≥ 16 nodes.
class Grid {
 public:
  Grid(double length, std::size_t points);

  double length() const noexcept { return length_; }
  std::size_t points() const noexcept { return points_; }
  double spacing() const noexcept { return length_ / static_cast<double>(points_); }
  double x(std::size_t j) const noexcept { return -0.5 * length_ + spacing() * static_cast<double>(j); }
  std::vector<double> nodes() const;

  /// Angular wavenumber of DFT bin j; the Nyquist bin maps to +πN/L.
  double wavenumber(std::size_t j) const noexcept;
  std::size_t nyquist() const noexcept { return points_ / 2; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double length_;
  std::size_t points_;
};

/// Samples of a complex function on a Grid.
struct ComplexField {
  Grid grid;
  cvec values;

  explicit ComplexField(const Grid& g) : grid(g), values(g.points()) {}
  ComplexField(const Grid& g, cvec v);

  std::size_t size() const noexcept { return values.size(); }
  cplx& operator[](std::size_t j) { return values[j]; }
  const cplx& operator[](std::size_t j) const { return values[j]; }

  ComplexField& operator+=(const ComplexField& o);
  ComplexField& operator-=(const ComplexField& o);
  ComplexField& operator*=(cplx s);
  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
  friend ComplexField operator*(cplx s, ComplexField a) { return a *= s; }
  friend ComplexField operator*(double s, ComplexField a) { return a *= cplx(s, 0.0); }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;
};

}  // namespace gdnls
