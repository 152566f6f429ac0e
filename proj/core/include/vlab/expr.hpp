#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "vlab/holofun.hpp"

namespace vlab::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Exp, Log, Sqrt, Sin, Cos };

struct Node;
/// Immutable, shareable expression tree.
using Expr = std::shared_ptr<const Node>;

struct Constant {
  cplx value;
};
struct Variable {};
struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct Apply {
  Func func;
  Expr arg;
};

struct Node {
  std::variant<Constant, Variable, Negate, Binary, Apply> data;
};

/// Syntax error with the byte offset of the offending token and the set of
/// tokens that would have been accepted there.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, std::set<std::string> expected, const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::set<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
};

// Constructors. These fold arithmetic between literal constants and drop
// additive zeros and multiplicative ones; nothing else is simplified.
Expr constant(cplx c);
Expr variable();
Expr negate(Expr e);
Expr binary(BinaryOp op, Expr lhs, Expr rhs);
Expr apply(Func f, Expr arg);

/// Precedence (high to low): ^ (right-assoc), unary minus, * /, + -.
/// Literals: `2`, `2.5e-3`, `3i`, `i`; variable `z`; calls exp/log/sqrt/sin/cos.
/// A parenthesised literal such as `(1-2i)` or `(-3)` is read as a single
/// complex constant, which is how the printer writes such constants.
Expr parse(std::string_view source);

/// Surface syntax with the minimum parentheses needed to reparse to the same tree.
std::string print(const Expr& e);

/// Principal branches: log has Im in (-pi, pi], so Im log z in (0, pi) on the
/// half-plane; sqrt u = exp(log(u)/2); u^v = exp(v log u) except integer
/// exponents, which use repeated multiplication. Throws EvalError on division
/// by an exact zero or log/sqrt/non-integer power of an exact zero.
cplx eval(const Expr& e, cplx z);
inline cplx eval(const Expr& e, const Point& p) { return eval(e, p.z()); }

Expr differentiate(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);
bool depends_on_z(const Expr& e);

/// Wraps an expression as a HoloFun whose derivative channel is the symbolic derivative.
HoloFun to_holofun(const Expr& e, std::string label = {});

std::string_view func_name(Func f);

}  // namespace vlab::expr
