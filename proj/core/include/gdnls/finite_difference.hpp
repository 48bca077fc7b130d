#pragma once

// Central finite differences on tensor-product stencils with one level of
// Richardson extrapolation. Every stencil used here is second-order, so
//   D* = D(h/2) + (D(h/2) − D(h)) / 3
// is fourth-order accurate.

#include <array>
#include <concepts>
#include <span>
#include <utility>
#include <vector>

#include "gdnls/errors.hpp"

namespace gdnls::fd {

struct Tap {
  int offset;
  double weight;
};

/// Second-order central stencil for the m-th derivative (m ≤ 3), unit step.
inline std::span<const Tap> central_stencil(int order) {
  static constexpr std::array<Tap, 1> d0{{{0, 1.0}}};
  static constexpr std::array<Tap, 2> d1{{{-1, -0.5}, {1, 0.5}}};
  static constexpr std::array<Tap, 3> d2{{{-1, 1.0}, {0, -2.0}, {1, 1.0}}};
  static constexpr std::array<Tap, 4> d3{{{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}}};
  switch (order) {
    case 0: return d0;
    case 1: return d1;
    case 2: return d2;
    case 3: return d3;
    default: throw DomainError("finite-difference order must be in [0, 3]");
  }
}

/// Largest stencil reach (in steps) of central_stencil(order).
inline int reach(int order) { return order == 3 ? 2 : (order == 0 ? 0 : 1); }

template <typename F>
concept Scalar1 = requires(F f, double x) {
  { f(x) } -> std::convertible_to<double>;
};

template <typename F>
concept Scalar2 = requires(F f, double x, double y) {
  { f(x, y) } -> std::convertible_to<double>;
};

template <Scalar1 F>
double central(F&& f, double x, int order, double h) {
  double acc = 0.0;
  for (const Tap& t : central_stencil(order)) acc += t.weight * f(x + t.offset * h);
  double scale = 1.0;
  for (int i = 0; i < order; ++i) scale *= h;
  return acc / scale;
}

template <Scalar2 F>
double central(F&& f, double x, double y, int order_x, int order_y, double h) {
  double acc = 0.0;
  for (const Tap& tx : central_stencil(order_x)) {
    for (const Tap& ty : central_stencil(order_y)) {
      acc += tx.weight * ty.weight * f(x + tx.offset * h, y + ty.offset * h);
    }
  }
  double scale = 1.0;
  for (int i = 0; i < order_x + order_y; ++i) scale *= h;
  return acc / scale;
}

inline double richardson(double coarse, double fine) { return fine + (fine - coarse) / 3.0; }

template <Scalar1 F>
double derivative(F&& f, double x, int order, double h) {
  return richardson(central(f, x, order, h), central(f, x, order, 0.5 * h));
}

template <Scalar2 F>
double partial(F&& f, double x, double y, int order_x, int order_y, double h) {
  return richardson(central(f, x, y, order_x, order_y, h), central(f, x, y, order_x, order_y, 0.5 * h));
}

}  // namespace gdnls::fd
