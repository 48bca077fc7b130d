#include "gdnls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "gdnls/errors.hpp"

namespace gdnls {

struct Spectral::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
};

namespace {

// FFTW planning is not thread-safe; executing an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

}  // namespace

Spectral::Spectral(const Grid& grid) : grid_(grid) {
  static std::map<std::size_t, std::shared_ptr<const Plans>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[grid.points()];
  if (!slot) {
    const int n = static_cast<int>(grid.points());
    cvec a(grid.points()), b(grid.points());
    auto plans = std::make_shared<Plans>();
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->fwd = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
    plans->bwd = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
    slot = std::move(plans);
  }
  plans_ = slot;
}

void Spectral::forward(std::span<const cplx> in, std::span<cplx> out) const {
  fftw_execute_dft(plans_->fwd, as_fftw(in.data()), as_fftw(out.data()));
}

void Spectral::backward(std::span<const cplx> in, std::span<cplx> out) const {
  fftw_execute_dft(plans_->bwd, as_fftw(in.data()), as_fftw(out.data()));
  const double inv = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= inv;
}

cvec Spectral::forward(std::span<const cplx> in) const {
  cvec out(in.size());
  forward(in, out);
  return out;
}

cvec Spectral::backward(std::span<const cplx> in) const {
  cvec out(in.size());
  backward(in, out);
  return out;
}

double Spectral::first_symbol(std::size_t j) const noexcept {
  return j == grid_.nyquist() ? 0.0 : grid_.wavenumber(j);
}

cvec Spectral::derivative(std::span<const cplx> u, int order) const {
  if (order != 1 && order != 2) throw DomainError("spectral derivative order must be 1 or 2");
  cvec hat = forward(u);
  for (std::size_t j = 0; j < hat.size(); ++j) {
    if (order == 1) {
      hat[j] *= cplx(0.0, first_symbol(j));
    } else {
      const double k = grid_.wavenumber(j);
      hat[j] *= -k * k;
    }
  }
  return backward(hat);
}

ComplexField Spectral::derivative(const ComplexField& u, int order) const {
  return ComplexField(u.grid, derivative(std::span<const cplx>(u.values), order));
}

cvec Spectral::shift(std::span<const cplx> u, double s) const {
  cvec hat = forward(u);
  for (std::size_t j = 0; j < hat.size(); ++j) {
    const double k = grid_.wavenumber(j);
    hat[j] *= j == grid_.nyquist() ? cplx(std::cos(k * s), 0.0) : std::polar(1.0, -k * s);
  }
  return backward(hat);
}

ComplexField Spectral::shift(const ComplexField& u, double s) const {
  return ComplexField(u.grid, shift(std::span<const cplx>(u.values), s));
}

}  // namespace gdnls
