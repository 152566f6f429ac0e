#include "vlab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "vlab/errors.hpp"

namespace vlab::expr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Expr make(Node node) { return std::make_shared<const Node>(std::move(node)); }

const Constant* as_constant(const Expr& e) { return std::get_if<Constant>(&e->data); }

bool is_value(const Expr& e, cplx v) {
  const auto* c = as_constant(e);
  return c && c->value == v;
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::optional<Func> func_from_name(std::string_view name) {
  if (name == "exp") return Func::Exp;
  if (name == "log") return Func::Log;
  if (name == "sqrt") return Func::Sqrt;
  if (name == "sin") return Func::Sin;
  if (name == "cos") return Func::Cos;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  double number = 0.0;
  bool imaginary = false;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [&](std::size_t k) { return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])); };
  auto is_alpha = [&](std::size_t k) {
    return k < src.size() && (std::isalpha(static_cast<unsigned char>(src[k])) || src[k] == '_');
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(i) || (c == '.' && is_digit(i + 1))) {
      while (is_digit(i)) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (is_digit(i)) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (is_digit(k)) {
          i = k;
          while (is_digit(i)) ++i;
        }
      }
      Token t{Tok::Number, start, std::string(src.substr(start, i - start))};
      const auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, t.number);
      if (ec != std::errc() || !std::isfinite(t.number))
        throw SyntaxError(start, {"finite number"}, std::string(src.substr(start, i - start)));
      if (i < src.size() && src[i] == 'i' && !(is_alpha(i + 1) || is_digit(i + 1))) {
        t.imaginary = true;
        ++i;
        t.text += 'i';
      }
      out.push_back(std::move(t));
      continue;
    }
    if (is_alpha(i)) {
      while (is_alpha(i) || is_digit(i)) ++i;
      out.push_back({Tok::Ident, start, std::string(src.substr(start, i - start))});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw SyntaxError(start, {"number", "identifier", "operator", "(", ")"}, std::string(1, c));
    }
    out.push_back({kind, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, src.size(), "end of input"});
  return out;
}

// ---------------------------------------------------------------------------
// Parser (builds raw trees; no folding)
// ---------------------------------------------------------------------------

const std::set<std::string> kOperandStart{"-", "(", "number", "z", "i", "exp", "log", "sqrt", "sin", "cos"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expr parse_all() {
    Expr e = parse_sum();
    if (peek().kind != Tok::End) fail({"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(std::set<std::string> expected) const {
    throw SyntaxError(peek().offset, std::move(expected), peek().text);
  }
  void expect(Tok kind, const std::string& name) {
    if (peek().kind != kind) fail({name});
    ++pos_;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const BinaryOp op = next().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make({Binary{op, lhs, parse_product()}});
    }
    return lhs;
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const BinaryOp op = next().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      lhs = make({Binary{op, lhs, parse_unary()}});
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek().kind == Tok::Minus) {
      ++pos_;
      return make({Negate{parse_unary()}});
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (peek().kind == Tok::Caret) {
      ++pos_;
      return make({Binary{BinaryOp::Pow, base, parse_unary()}});
    }
    return base;
  }

  // '(' ['-'] NUM [('+'|'-') NUM_i] ')' is a single complex literal.
  std::optional<Expr> try_paren_literal() {
    std::size_t k = pos_ + 1;
    bool neg = false;
    if (peek(k - pos_).kind == Tok::Minus) {
      neg = true;
      ++k;
    }
    const Token& first = peek(k - pos_);
    if (first.kind != Tok::Number) return std::nullopt;
    ++k;
    cplx value = first.imaginary ? cplx{0.0, first.number} : cplx{first.number, 0.0};
    if (neg) value = first.imaginary ? cplx{0.0, -first.number} : cplx{-first.number, 0.0};
    const Token& after = peek(k - pos_);
    if (after.kind == Tok::RParen) {
      pos_ = k + 1;
      return make({Constant{value}});
    }
    if ((after.kind == Tok::Plus || after.kind == Tok::Minus) && !first.imaginary) {
      const Token& second = peek(k + 1 - pos_);
      if (second.kind == Tok::Number && second.imaginary && peek(k + 2 - pos_).kind == Tok::RParen) {
        const double im = after.kind == Tok::Plus ? second.number : -second.number;
        pos_ = k + 3;
        return make({Constant{cplx{value.real(), im}}});
      }
    }
    return std::nullopt;
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        ++pos_;
        return make({Constant{t.imaginary ? cplx{0.0, t.number} : cplx{t.number, 0.0}}});
      case Tok::Ident: {
        if (t.text == "z") {
          ++pos_;
          return make({Variable{}});
        }
        if (t.text == "i") {
          ++pos_;
          return make({Constant{cplx{0.0, 1.0}}});
        }
        if (auto f = func_from_name(t.text)) {
          ++pos_;
          expect(Tok::LParen, "(");
          Expr arg = parse_sum();
          expect(Tok::RParen, ")");
          return make({Apply{*f, arg}});
        }
        fail(kOperandStart);
      }
      case Tok::LParen: {
        if (auto lit = try_paren_literal()) return *lit;
        ++pos_;
        Expr inner = parse_sum();
        expect(Tok::RParen, ")");
        return inner;
      }
      default:
        fail(kOperandStart);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPower = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
  return std::visit(overloaded{[](const Binary& b) {
                                 switch (b.op) {
                                   case BinaryOp::Add:
                                   case BinaryOp::Sub: return kPrecSum;
                                   case BinaryOp::Mul:
                                   case BinaryOp::Div: return kPrecProduct;
                                   case BinaryOp::Pow: return kPrecPower;
                                 }
                                 return kPrecAtom;
                               },
                               [](const Negate&) { return kPrecUnary; }, [](const auto&) { return kPrecAtom; }},
                    e->data);
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string print_constant(cplx c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) {
    if (!std::signbit(re)) return shortest(re);
    return "(-" + shortest(-re) + ")";
  }
  if (re == 0.0 && !std::signbit(re)) {
    if (im == 1.0) return "i";
    if (im > 0.0) return shortest(im) + "i";
    return "(-" + shortest(-im) + "i)";
  }
  return "(" + shortest(re) + (std::signbit(im) ? "-" : "+") + shortest(std::abs(im)) + "i)";
}

void print_to(const Expr& e, std::string& out, bool wrapped = false);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print_to(e, out, parens);
  if (parens) out += ')';
}

bool is_bare_real(const Expr& e) {
  const auto* c = std::get_if<Constant>(&e->data);
  return c && c->value.imag() == 0.0 && !std::signbit(c->value.real());
}

// "(a + bi)" with a bare real a and bare imaginary b would reparse as one literal.
bool reads_as_literal(const Binary& b) {
  const auto* n = std::get_if<Negate>(&b.lhs->data);
  if (!is_bare_real(b.lhs) && !(n && is_bare_real(n->operand))) return false;
  const auto* c = std::get_if<Constant>(&b.rhs->data);
  return c && c->value.real() == 0.0 && !std::signbit(c->value.real()) && c->value.imag() > 0.0;
}

void print_to(const Expr& e, std::string& out, bool wrapped) {
  std::visit(overloaded{[&](const Constant& c) { out += print_constant(c.value); },
                        [&](const Variable&) { out += 'z'; },
                        [&](const Negate& n) {
                          out += '-';
                          // "(-2)" and "(-2i)" are literals; keep a negated constant distinct.
                          const auto* c = std::get_if<Constant>(&n.operand->data);
                          const bool literal = wrapped && c && c->value.real() >= 0.0 && c->value.imag() >= 0.0 &&
                                               (c->value.real() == 0.0 || c->value.imag() == 0.0) &&
                                               print_constant(c->value)[0] != '(';
                          print_wrapped(n.operand, literal || precedence(n.operand) < kPrecUnary, out);
                        },
                        [&](const Apply& a) {
                          out += func_name(a.func);
                          out += '(';
                          print_to(a.arg, out);
                          out += ')';
                        },
                        [&](const Binary& b) {
                          if (b.op == BinaryOp::Pow) {
                            print_wrapped(b.lhs, precedence(b.lhs) <= kPrecPower, out);
                            out += '^';
                            print_wrapped(b.rhs, precedence(b.rhs) < kPrecUnary, out);
                            return;
                          }
                          const int p = precedence(e);
                          print_wrapped(b.lhs, precedence(b.lhs) < p, out);
                          switch (b.op) {
                            case BinaryOp::Add: out += " + "; break;
                            case BinaryOp::Sub: out += " - "; break;
                            case BinaryOp::Mul: out += '*'; break;
                            case BinaryOp::Div: out += '/'; break;
                            case BinaryOp::Pow: break;
                          }
                          print_wrapped(b.rhs, precedence(b.rhs) <= p || (wrapped && reads_as_literal(b)), out);
                        }},
             e->data);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

cplx principal_log(cplx u) {
  if (u == cplx{}) throw EvalError("log of zero");
  return std::log(u);
}

cplx power(cplx base, cplx exponent) {
  const double n = exponent.real();
  if (exponent.imag() == 0.0 && n == std::floor(n) && std::abs(n) <= 2147483647.0) {
    auto k = static_cast<std::int64_t>(std::abs(n));
    if (k != 0 && base == cplx{} && n < 0) throw EvalError("division by zero in negative power of zero");
    cplx result{1.0, 0.0};
    cplx b = base;
    while (k > 0) {
      if (k & 1) result *= b;
      b *= b;
      k >>= 1;
    }
    return n < 0 ? cplx{1.0, 0.0} / result : result;
  }
  if (base == cplx{}) throw EvalError("non-integer power of zero");
  return std::exp(exponent * principal_log(base));
}

cplx apply_func(Func f, cplx u) {
  switch (f) {
    case Func::Exp: return std::exp(u);
    case Func::Log: return principal_log(u);
    case Func::Sqrt:
      if (u == cplx{}) throw EvalError("sqrt of zero");
      return std::exp(0.5 * principal_log(u));
    case Func::Sin: return std::sin(u);
    case Func::Cos: return std::cos(u);
  }
  return {};
}

cplx binary_value(BinaryOp op, cplx a, cplx b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (b == cplx{}) throw EvalError("division by zero");
      return a / b;
    case BinaryOp::Pow: return power(a, b);
  }
  return {};
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::set<std::string> expected, const std::string& found)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": found '" + found +
                         "', expected one of {" + join(expected) + "}"),
      offset_(offset),
      expected_(std::move(expected)) {}

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
  }
  return "?";
}

Expr constant(cplx c) { return make({Constant{c}}); }
Expr variable() { return make({Variable{}}); }

Expr negate(Expr e) {
  if (const auto* c = as_constant(e)) return constant(-c->value);
  return make({Negate{std::move(e)}});
}

Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
  const auto* a = as_constant(lhs);
  const auto* b = as_constant(rhs);
  if (a && b) {
    try {
      return constant(binary_value(op, a->value, b->value));
    } catch (const EvalError&) {
      // leave unfolded; the error resurfaces at evaluation time
    }
  }
  const cplx zero{};
  const cplx one{1.0, 0.0};
  switch (op) {
    case BinaryOp::Add:
      if (is_value(lhs, zero)) return rhs;
      if (is_value(rhs, zero)) return lhs;
      break;
    case BinaryOp::Sub:
      if (is_value(rhs, zero)) return lhs;
      if (is_value(lhs, zero)) return negate(rhs);
      break;
    case BinaryOp::Mul:
      if (is_value(lhs, zero) || is_value(rhs, zero)) return constant(zero);
      if (is_value(lhs, one)) return rhs;
      if (is_value(rhs, one)) return lhs;
      break;
    case BinaryOp::Div:
      if (is_value(rhs, one)) return lhs;
      if (is_value(lhs, zero) && b && b->value != zero) return constant(zero);
      break;
    case BinaryOp::Pow:
      if (is_value(rhs, one)) return lhs;
      if (is_value(rhs, zero)) return constant(one);
      break;
  }
  return make({Binary{op, std::move(lhs), std::move(rhs)}});
}

Expr apply(Func f, Expr arg) { return make({Apply{f, std::move(arg)}}); }

Expr parse(std::string_view source) {
  Parser p(lex(source));
  return p.parse_all();
}

std::string print(const Expr& e) {
  std::string out;
  print_to(e, out);
  return out;
}

cplx eval(const Expr& e, cplx z) {
  return std::visit(overloaded{[](const Constant& c) { return c.value; }, [&](const Variable&) { return z; },
                               [&](const Negate& n) { return -eval(n.operand, z); },
                               [&](const Binary& b) { return binary_value(b.op, eval(b.lhs, z), eval(b.rhs, z)); },
                               [&](const Apply& a) { return apply_func(a.func, eval(a.arg, z)); }},
                    e->data);
}

bool depends_on_z(const Expr& e) {
  return std::visit(overloaded{[](const Constant&) { return false; }, [](const Variable&) { return true; },
                               [](const Negate& n) { return depends_on_z(n.operand); },
                               [](const Binary& b) { return depends_on_z(b.lhs) || depends_on_z(b.rhs); },
                               [](const Apply& a) { return depends_on_z(a.arg); }},
                    e->data);
}

Expr differentiate(const Expr& e) {
  using enum BinaryOp;
  return std::visit(
      overloaded{
          [](const Constant&) { return constant({}); },
          [](const Variable&) { return constant({1.0, 0.0}); },
          [](const Negate& n) { return negate(differentiate(n.operand)); },
          [&](const Binary& b) -> Expr {
            const Expr& u = b.lhs;
            const Expr& v = b.rhs;
            switch (b.op) {
              case Add: return binary(Add, differentiate(u), differentiate(v));
              case Sub: return binary(Sub, differentiate(u), differentiate(v));
              case Mul:
                return binary(Add, binary(Mul, differentiate(u), v), binary(Mul, u, differentiate(v)));
              case Div: {
                Expr num = binary(Sub, binary(Mul, differentiate(u), v), binary(Mul, u, differentiate(v)));
                return binary(Div, num, binary(Pow, v, constant({2.0, 0.0})));
              }
              case Pow: {
                if (!depends_on_z(v)) {
                  // v u^(v-1) u'
                  Expr reduced = binary(Pow, u, binary(Sub, v, constant({1.0, 0.0})));
                  return binary(Mul, binary(Mul, v, reduced), differentiate(u));
                }
                // u^v (v' log u + v u'/u)
                Expr inner = binary(Add, binary(Mul, differentiate(v), apply(Func::Log, u)),
                                    binary(Div, binary(Mul, v, differentiate(u)), u));
                return binary(Mul, e, inner);
              }
            }
            return constant({});
          },
          [&](const Apply& a) -> Expr {
            const Expr du = differentiate(a.arg);
            switch (a.func) {
              case Func::Exp: return binary(Mul, e, du);
              case Func::Log: return binary(Div, du, a.arg);
              case Func::Sqrt: return binary(Div, du, binary(Mul, constant({2.0, 0.0}), e));
              case Func::Sin: return binary(Mul, apply(Func::Cos, a.arg), du);
              case Func::Cos: return negate(binary(Mul, apply(Func::Sin, a.arg), du));
            }
            return constant({});
          }},
      e->data);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a->data.index() != b->data.index()) return false;
  return std::visit(
      overloaded{[&](const Constant& c) { return c.value == std::get<Constant>(b->data).value; },
                 [](const Variable&) { return true; },
                 [&](const Negate& n) { return structurally_equal(n.operand, std::get<Negate>(b->data).operand); },
                 [&](const Binary& x) {
                   const auto& y = std::get<Binary>(b->data);
                   return x.op == y.op && structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
                 },
                 [&](const Apply& x) {
                   const auto& y = std::get<Apply>(b->data);
                   return x.func == y.func && structurally_equal(x.arg, y.arg);
                 }},
      a->data);
}

HoloFun to_holofun(const Expr& e, std::string label) {
  if (label.empty()) label = print(e);
  Expr d = differentiate(e);
  return HoloFun(
      std::move(label), [e](cplx z) { return eval(e, z); }, [d](cplx z) { return eval(d, z); });
}

}  // namespace vlab::expr
