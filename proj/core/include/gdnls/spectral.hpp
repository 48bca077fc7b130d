#pragma once

#include <memory>
#include <span>

#include "gdnls/grid.hpp"

namespace gdnls {

/// FFT-based differentiation and translation on a periodic Grid. Instances are
/// cheap to copy; plans are shared per transform size and executions are
/// reentrant.
class Spectral {
 public:
  explicit Spectral(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }

  /// Unnormalized forward DFT: û_k = Σ_j u_j e^{−2πijk/N}.
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  /// Inverse DFT including the 1/N factor.
  void backward(std::span<const cplx> in, std::span<cplx> out) const;

  cvec forward(std::span<const cplx> in) const;
  cvec backward(std::span<const cplx> in) const;

  /// ∂ₓᵐu for m = 1, 2. First derivatives drop the Nyquist bin so that real
  /// data stay real; second derivatives keep it with symbol −(πN/L)².
  cvec derivative(std::span<const cplx> u, int order = 1) const;
  ComplexField derivative(const ComplexField& u, int order = 1) const;

  /// Band-limited translation x ↦ u(x − s).
  cvec shift(std::span<const cplx> u, double s) const;
  ComplexField shift(const ComplexField& u, double s) const;

  /// Fourier multiplier for ∂ₓ at bin j (zero at Nyquist).
  double first_symbol(std::size_t j) const noexcept;

 private:
  struct Plans;
  Grid grid_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace gdnls
