#pragma once

#include <functional>
#include <string>

#include "vlab/point.hpp"

namespace vlab {

/// A holomorphic function on the upper half-plane with an optional exact
/// derivative. Values are computed by pure callables, so a HoloFun can be
/// shared freely between threads.
class HoloFun {
 public:
  using Fn = std::function<cplx(cplx)>;

  HoloFun(std::string label, Fn eval, Fn deriv = {});

  cplx operator()(const Point& p) const { return eval_(p.z()); }
  cplx eval(const Point& p) const { return eval_(p.z()); }

  bool has_derivative() const noexcept { return static_cast<bool>(deriv_); }
  /// Exact derivative channel. Throws std::logic_error when absent.
  cplx derivative(const Point& p) const;

  const std::string& label() const noexcept { return label_; }

  /// Raw callables, for kernels that evaluate off the Point type.
  const Fn& eval_fn() const noexcept { return eval_; }
  const Fn& deriv_fn() const noexcept { return deriv_; }

  /// Same function with the exact derivative channel stripped.
  HoloFun without_derivative() const;

  /// a*f + b*g; the derivative channel survives only if both inputs carry one.
  static HoloFun linear_combination(cplx a, const HoloFun& f, cplx b, const HoloFun& g);

  /// z -> f(z + c) for real c.
  HoloFun translated(double c) const;

 private:
  std::string label_;
  Fn eval_;
  Fn deriv_;
};

}  // namespace vlab
