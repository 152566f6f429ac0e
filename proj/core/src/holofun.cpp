#include "vlab/holofun.hpp"

#include <stdexcept>
#include <utility>

namespace vlab {

HoloFun::HoloFun(std::string label, Fn eval, Fn deriv)
    : label_(std::move(label)), eval_(std::move(eval)), deriv_(std::move(deriv)) {
  if (!eval_) throw std::invalid_argument("HoloFun requires an evaluation callable");
}

cplx HoloFun::derivative(const Point& p) const {
  if (!deriv_) throw std::logic_error("HoloFun '" + label_ + "' has no exact derivative");
  return deriv_(p.z());
}

HoloFun HoloFun::without_derivative() const { return HoloFun(label_, eval_); }

HoloFun HoloFun::linear_combination(cplx a, const HoloFun& f, cplx b, const HoloFun& g) {
  auto fe = f.eval_;
  auto ge = g.eval_;
  Fn eval = [=](cplx z) { return a * fe(z) + b * ge(z); };
  Fn deriv;
  if (f.deriv_ && g.deriv_) {
    auto fd = f.deriv_;
    auto gd = g.deriv_;
    deriv = [=](cplx z) { return a * fd(z) + b * gd(z); };
  }
  return HoloFun("lin(" + f.label_ + "," + g.label_ + ")", std::move(eval), std::move(deriv));
}

HoloFun HoloFun::translated(double c) const {
  auto fe = eval_;
  Fn eval = [=](cplx z) { return fe(z + c); };
  Fn deriv;
  if (deriv_) {
    auto fd = deriv_;
    deriv = [=](cplx z) { return fd(z + c); };
  }
  return HoloFun(label_ + "(.+" + std::to_string(c) + ")", std::move(eval), std::move(deriv));
}

}  // namespace vlab
