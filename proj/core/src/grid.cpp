#include "gdnls/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gdnls/errors.hpp"

namespace gdnls {

Grid::Grid(double length, std::size_t points) : length_(length), points_(points) {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("grid length must be positive");
  if (points < 16 || !std::has_single_bit(points)) {
    std::ostringstream msg;
    msg << "grid points must be a power of two >= 16, got " << points;
    throw DomainError(msg.str());
  }
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(points_);
  for (std::size_t j = 0; j < points_; ++j) xs[j] = x(j);
  return xs;
}

double Grid::wavenumber(std::size_t j) const noexcept {
  const double dk = 2.0 * std::numbers::pi / length_;
  const auto n = static_cast<double>(points_);
  const auto jj = static_cast<double>(j);
  return j <= points_ / 2 ? dk * jj : dk * (jj - n);
}

ComplexField::ComplexField(const Grid& g, cvec v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.points()) throw DomainError("field size does not match grid");
}

namespace {
void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw DomainError("fields live on different grids");
}
}  // namespace

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] += o.values[j];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] -= o.values[j];
  return *this;
}

ComplexField& ComplexField::operator*=(cplx s) {
  for (auto& v : values) v *= s;
  return *this;
}

bool ComplexField::all_finite() const noexcept {
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

double ComplexField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace gdnls
