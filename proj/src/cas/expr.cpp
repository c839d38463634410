#include "splab/cas/expr.hpp"

#include <stdexcept>

#include "splab/errors.hpp"

namespace splab::cas {

struct Expr::Node {
  Kind kind;
  Rational value;  // Constant
  Var var = Var::X;  // Variable
  unsigned exponent = 0;  // Pow
  int sign = 1;  // Sqrt
  Expr a{std::shared_ptr<const Node>()};
  Expr b{std::shared_ptr<const Node>()};
};

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  node_ = std::move(n);
}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = v;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

const Rational& Expr::constant() const {
  if (kind() != Kind::Constant) throw std::logic_error("not a constant node");
  return node_->value;
}

bool Expr::is_zero() const noexcept { return kind() == Kind::Constant && node_->value == 0; }

Var Expr::variable_id() const {
  if (kind() != Kind::Variable) throw std::logic_error("not a variable node");
  return node_->var;
}

const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
unsigned Expr::exponent() const { return node_->exponent; }
int Expr::sqrt_sign() const { return node_->sign; }

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Constant:
      return a.value == b.value;
    case Expr::Kind::Variable:
      return a.var == b.var;
    case Expr::Kind::Neg:
      return a.a == b.a;
    case Expr::Kind::Pow:
      return a.exponent == b.exponent && a.a == b.a;
    case Expr::Kind::Sqrt:
      return a.sign == b.sign && a.a == b.a;
    default:
      return a.a == b.a && a.b == b.b;
  }
}

Expr Expr::make(Kind kind, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() + b.constant());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (b.kind() == Expr::Kind::Neg) return a - b.lhs();
  return Expr::make(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() - b.constant());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a == b) return Expr();
  if (b.kind() == Expr::Kind::Neg) return a + b.lhs();
  return Expr::make(Expr::Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() * b.constant());
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_constant() && a.constant() == 1) return b;
  if (b.is_constant() && b.constant() == 1) return a;
  if (a.is_constant() && a.constant() == -1) return -b;
  if (b.is_constant() && b.constant() == -1) return -a;
  if (b.is_constant()) return Expr::make(Expr::Kind::Mul, b, a);  // constants to the left
  return Expr::make(Expr::Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Expr();
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() / b.constant());
  if (b.is_constant()) return Expr(1 / b.constant()) * a;
  if (a == b) return Expr(1L);
  return Expr::make(Expr::Kind::Div, a, b);
}

Expr Expr::operator-() const {
  if (is_constant()) return Expr(-constant());
  if (kind() == Kind::Neg) return lhs();
  return make(Kind::Neg, *this, Expr(std::shared_ptr<const Node>()));
}

Expr pow(const Expr& base, unsigned exponent) {
  if (exponent == 0) return Expr(1L);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    Rational r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= base.constant();
    return Expr(r);
  }
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::Pow;
  n->a = base;
  n->exponent = exponent;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr signed_sqrt(const Expr& arg, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sqrt sign must be +1 or -1");
  if (arg.is_zero()) return Expr();
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Kind::Sqrt;
  n->a = arg;
  n->sign = sign;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr lift(const MPoly& p) {
  Expr sum;
  for (const auto& [m, c] : p.terms()) {
    Expr t(c);
    for (Var v : kAllVars) {
      const unsigned e = m[static_cast<int>(v)];
      if (e > 0) t = t * pow(Expr::variable(v), e);
    }
    sum = sum + t;
  }
  return sum;
}

Expr differentiate(const Expr& e, Var v) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return Expr();
    case K::Variable:
      return Expr(e.variable_id() == v ? 1L : 0L);
    case K::Add:
      return differentiate(e.lhs(), v) + differentiate(e.rhs(), v);
    case K::Sub:
      return differentiate(e.lhs(), v) - differentiate(e.rhs(), v);
    case K::Neg:
      return -differentiate(e.lhs(), v);
    case K::Mul:
      return differentiate(e.lhs(), v) * e.rhs() + e.lhs() * differentiate(e.rhs(), v);
    case K::Div: {
      const Expr& u = e.lhs();
      const Expr& w = e.rhs();
      const Expr du = differentiate(u, v);
      const Expr dw = differentiate(w, v);
      if (dw.is_zero()) return du / w;
      return (du * w - u * dw) / pow(w, 2);
    }
    case K::Pow: {
      const unsigned n = e.exponent();
      return Expr(static_cast<long>(n)) * pow(e.lhs(), n - 1) * differentiate(e.lhs(), v);
    }
    case K::Sqrt:
      // d(s sqrt(u)) = u' / (2 s sqrt(u))
      return differentiate(e.lhs(), v) / (Expr(2L) * e);
  }
  throw std::logic_error("unknown expression kind");
}

Interval evaluate(const Expr& e, const Point3<Interval>& at) {
  using K = Expr::Kind;
  const mpfr_prec_t prec = at[0].precision();
  switch (e.kind()) {
    case K::Constant:
      return Interval(e.constant(), prec);
    case K::Variable:
      return at[static_cast<int>(e.variable_id())];
    case K::Add:
      return evaluate(e.lhs(), at) + evaluate(e.rhs(), at);
    case K::Sub:
      return evaluate(e.lhs(), at) - evaluate(e.rhs(), at);
    case K::Neg:
      return -evaluate(e.lhs(), at);
    case K::Mul:
      return evaluate(e.lhs(), at) * evaluate(e.rhs(), at);
    case K::Div:
      return evaluate(e.lhs(), at) / evaluate(e.rhs(), at);
    case K::Pow: {
      const Interval base = e.exponent() % 2 == 0 ? abs(evaluate(e.lhs(), at)) : evaluate(e.lhs(), at);
      Interval r = base;
      for (unsigned i = 1; i < e.exponent(); ++i) r = r * base;
      return r;
    }
    case K::Sqrt: {
      const Interval s = sqrt(evaluate(e.lhs(), at));
      return e.sqrt_sign() > 0 ? s : -s;
    }
  }
  throw std::logic_error("unknown expression kind");
}

RadicalSum evaluate_exact(const Expr& e, const Point3<RadicalSum>& at) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return RadicalSum(e.constant());
    case K::Variable:
      return at[static_cast<int>(e.variable_id())];
    case K::Add:
      return evaluate_exact(e.lhs(), at) + evaluate_exact(e.rhs(), at);
    case K::Sub:
      return evaluate_exact(e.lhs(), at) - evaluate_exact(e.rhs(), at);
    case K::Neg:
      return -evaluate_exact(e.lhs(), at);
    case K::Mul:
      return evaluate_exact(e.lhs(), at) * evaluate_exact(e.rhs(), at);
    case K::Div:
      return evaluate_exact(e.lhs(), at) / evaluate_exact(e.rhs(), at);
    case K::Pow:
      return pow(evaluate_exact(e.lhs(), at), e.exponent());
    case K::Sqrt: {
      const RadicalSum arg = evaluate_exact(e.lhs(), at);
      if (!arg.is_rational()) throw UnsupportedEvaluation("square root of an irrational value");
      const Rational q = arg.to_rational();
      if (q < 0) throw UnsupportedEvaluation("square root of a negative value");
      const RadicalSum r = sqrt_rational(q);
      return e.sqrt_sign() > 0 ? r : -r;
    }
  }
  throw std::logic_error("unknown expression kind");
}

bool contains_sqrt(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      return false;
    case Expr::Kind::Sqrt:
      return true;
    case Expr::Kind::Neg:
    case Expr::Kind::Pow:
      return contains_sqrt(e.lhs());
    default:
      return contains_sqrt(e.lhs()) || contains_sqrt(e.rhs());
  }
}

std::size_t node_count(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      return 1;
    case Expr::Kind::Neg:
    case Expr::Kind::Pow:
    case Expr::Kind::Sqrt:
      return 1 + node_count(e.lhs());
    default:
      return 1 + node_count(e.lhs()) + node_count(e.rhs());
  }
}

namespace {

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string render(const Expr& e, int parent, bool right_operand) {
  using K = Expr::Kind;
  const int p = precedence(e.kind());
  std::string s;
  switch (e.kind()) {
    case K::Constant:
      s = splab::to_string(e.constant());
      if (e.constant() < 0 || e.constant().get_den() != 1) s = "(" + s + ")";
      return s;
    case K::Variable:
      return std::string(1, var_name(e.variable_id()));
    case K::Add:
      s = render(e.lhs(), p, false) + "+" + render(e.rhs(), p, true);
      break;
    case K::Sub:
      s = render(e.lhs(), p, false) + "-" + render(e.rhs(), p, true);
      break;
    case K::Mul:
      s = render(e.lhs(), p, false) + "*" + render(e.rhs(), p, true);
      break;
    case K::Div:
      s = render(e.lhs(), p, false) + "/" + render(e.rhs(), p, true);
      break;
    case K::Neg:
      s = "-" + render(e.lhs(), p, true);
      break;
    case K::Pow:
      s = render(e.lhs(), p + 1, false) + "^" + std::to_string(e.exponent());
      break;
    case K::Sqrt:
      s = std::string(e.sqrt_sign() > 0 ? "" : "-") + "sqrt(" + render(e.lhs(), 0, false) + ")";
      if (e.sqrt_sign() < 0) return "(" + s + ")";
      return s;
  }
  if (p < parent || (p == parent && right_operand)) return "(" + s + ")";
  return s;
}

}  // namespace

std::string to_string(const Expr& e) { return render(e, 0, false); }

}  // namespace splab::cas
