#include "splab/cas/mpoly.hpp"

#include <stdexcept>
#include <utility>

namespace splab::cas {

char var_name(Var v) { return "XYZ"[static_cast<int>(v)]; }

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{0, 0, 0}, c);
}

MPoly MPoly::variable(Var v) {
  Monomial m{0, 0, 0};
  m[static_cast<int>(v)] = 1;
  return monomial(m, 1);
}

MPoly MPoly::monomial(const Monomial& m, const Rational& c) {
  MPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool MPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0, 0});
}

Rational MPoly::constant() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant: " + to_string(*this));
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int MPoly::degree(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m[static_cast<int>(v)]);
  return d;
}

int MPoly::total_degree() const { return terms_.empty() ? 0 : cas::total_degree(terms_.begin()->first); }

const Monomial& MPoly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rational& MPoly::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
  return terms_.begin()->second;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const Monomial m{static_cast<std::uint16_t>(ma[0] + mb[0]), static_cast<std::uint16_t>(ma[1] + mb[1]),
                       static_cast<std::uint16_t>(ma[2] + mb[2])};
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      r.add_term(m, prod);
    }
  }
  return r;
}

MPoly MPoly::derivative(Var v) const {
  const int k = static_cast<int>(v);
  MPoly r;
  for (const auto& [m, c] : terms_) {
    if (m[k] == 0) continue;
    Monomial d = m;
    d[k] -= 1;
    r.add_term(d, c * static_cast<unsigned long>(m[k]));
  }
  return r;
}

namespace {

template <typename T>
T evaluate_generic(const MPoly::TermMap& terms, const Point3<T>& at, const T& zero, const T& one) {
  // Cache powers per variable.
  std::array<std::vector<T>, 3> powers;
  for (int k = 0; k < 3; ++k) powers[k].push_back(one);
  auto power = [&](int k, int e) -> const T& {
    while (static_cast<int>(powers[k].size()) <= e) powers[k].push_back(powers[k].back() * at[k]);
    return powers[k][e];
  };
  T sum = zero;
  for (const auto& [m, c] : terms) {
    T t = T(c);
    for (int k = 0; k < 3; ++k) {
      if (m[k] > 0) t = t * power(k, m[k]);
    }
    sum = sum + t;
  }
  return sum;
}

}  // namespace

Rational MPoly::evaluate(const Point3<Rational>& at) const {
  return evaluate_generic<Rational>(terms_, at, Rational(0), Rational(1));
}

RadicalSum MPoly::evaluate(const Point3<RadicalSum>& at) const {
  std::array<std::vector<RadicalSum>, 3> powers;
  RadicalSum sum;
  for (int k = 0; k < 3; ++k) powers[k].push_back(RadicalSum(1L));
  for (const auto& [m, c] : terms_) {
    RadicalSum t(c);
    for (int k = 0; k < 3; ++k) {
      if (m[k] == 0) continue;
      while (static_cast<int>(powers[k].size()) <= m[k]) powers[k].push_back(powers[k].back() * at[k]);
      t = t * powers[k][m[k]];
    }
    sum += t;
  }
  return sum;
}

Interval MPoly::evaluate(const Point3<Interval>& at) const {
  const mpfr_prec_t prec = std::max({at[0].precision(), at[1].precision(), at[2].precision()});
  Interval sum(prec);
  for (const auto& [m, c] : terms_) {
    Interval t(c, prec);
    for (int k = 0; k < 3; ++k) {
      for (int e = 0; e < m[k]; ++e) t = t * at[k];
    }
    sum += t;
  }
  return sum;
}

std::map<int, MPoly> MPoly::coefficients_in(Var v) const {
  const int k = static_cast<int>(v);
  std::map<int, MPoly> out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest[k] = 0;
    out[m[k]].add_term(rest, c);
  }
  return out;
}

MPoly MPoly::from_coefficients(Var v, const std::map<int, MPoly>& coeffs) {
  const int k = static_cast<int>(v);
  MPoly r;
  for (const auto& [e, p] : coeffs) {
    for (const auto& [m, c] : p.terms_) {
      Monomial shifted = m;
      shifted[k] = static_cast<std::uint16_t>(shifted[k] + e);
      r.add_term(shifted, c);
    }
  }
  return r;
}

MPoly MPoly::leading_coefficient_in(Var v) const {
  if (is_zero()) return {};
  const int k = static_cast<int>(v);
  const int d = degree(v);
  MPoly r;
  for (const auto& [m, c] : terms_) {
    if (m[k] != d) continue;
    Monomial rest = m;
    rest[k] = 0;
    r.add_term(rest, c);
  }
  return r;
}

MPoly pow(const MPoly& p, unsigned exponent) {
  MPoly result(1L);
  MPoly base = p;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::optional<MPoly> try_divide(const MPoly& p, const MPoly& d) {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (d.is_constant()) return p * (1 / d.constant());
  const Monomial& ld = d.leading_monomial();
  const Rational& lc = d.leading_coefficient();
  MPoly quotient;
  MPoly rest = p;
  while (!rest.is_zero()) {
    const Monomial& lr = rest.leading_monomial();
    Monomial q{};
    for (int k = 0; k < 3; ++k) {
      if (lr[k] < ld[k]) return std::nullopt;
      q[k] = static_cast<std::uint16_t>(lr[k] - ld[k]);
    }
    const MPoly t = MPoly::monomial(q, rest.leading_coefficient() / lc);
    quotient += t;
    rest -= t * d;
  }
  return quotient;
}

MPoly divide_exact(const MPoly& p, const MPoly& d) {
  auto q = try_divide(p, d);
  if (!q) throw std::domain_error("inexact polynomial division: (" + to_string(p) + ") / (" + to_string(d) + ")");
  return *std::move(q);
}

MPoly integer_primitive(const MPoly& p, Rational* factor) {
  if (p.is_zero()) {
    if (factor) *factor = 1;
    return p;
  }
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_coefficient() < 0) scale = -scale;
  if (factor) *factor = scale;
  return p * scale;
}

MPoly pseudo_remainder(const MPoly& p, const MPoly& q, Var v) {
  if (q.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  const int dq = q.degree(v);
  const MPoly lcq = q.leading_coefficient_in(v);
  Monomial shift{0, 0, 0};
  MPoly r = p;
  while (!r.is_zero() && r.degree(v) >= dq) {
    const int dr = r.degree(v);
    shift[static_cast<int>(v)] = static_cast<std::uint16_t>(dr - dq);
    const MPoly lcr = r.leading_coefficient_in(v);
    r = lcq * r - lcr * MPoly::monomial(shift, 1) * q;
    if (!r.is_zero()) r = integer_primitive(r);
  }
  return r;
}

namespace {

MPoly gcd_impl(const MPoly& p, const MPoly& q);

// gcd of the coefficients of p viewed as a polynomial in v.
MPoly content_in(const MPoly& p, Var v) {
  MPoly g;
  for (const auto& [e, c] : p.coefficients_in(v)) {
    g = g.is_zero() ? integer_primitive(c) : gcd_impl(g, c);
    if (g.is_constant()) return MPoly(1L);
  }
  return g;
}

MPoly gcd_impl(const MPoly& p, const MPoly& q) {
  if (p.is_zero()) return integer_primitive(q);
  if (q.is_zero()) return integer_primitive(p);
  if (p.is_constant() || q.is_constant()) return MPoly(1L);

  std::optional<Var> main;
  for (Var v : kAllVars) {
    if (p.depends_on(v) && q.depends_on(v)) {
      main = v;
      break;
    }
  }
  if (!main) {
    // Some variable occurs in only one argument; common factors are free of it.
    for (Var v : kAllVars) {
      if (p.depends_on(v) != q.depends_on(v)) {
        return p.depends_on(v) ? gcd_impl(content_in(p, v), q) : gcd_impl(p, content_in(q, v));
      }
    }
    return MPoly(1L);
  }
  const Var v = *main;
  const MPoly cp = content_in(p, v);
  const MPoly cq = content_in(q, v);
  MPoly a = integer_primitive(divide_exact(p, cp));
  MPoly b = integer_primitive(divide_exact(q, cq));
  const MPoly c = gcd_impl(cp, cq);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree(v) == 0) {
      a = MPoly(1L);
      break;
    }
    MPoly r = pseudo_remainder(a, b, v);
    a = std::move(b);
    b = r.is_zero() ? r : integer_primitive(divide_exact(r, content_in(r, v)));
  }
  if (!a.is_constant()) a = divide_exact(a, content_in(a, v));
  return integer_primitive(c * a);
}

}  // namespace

MPoly poly_gcd(const MPoly& p, const MPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
  return gcd_impl(p, q);
}

std::optional<LinearInZ> as_linear_in_z(const MPoly& f) {
  const auto coeffs = f.coefficients_in(Var::Z);
  if (f.degree(Var::Z) != 1) return std::nullopt;
  const MPoly& k = coeffs.at(1);
  if (!k.is_constant()) return std::nullopt;
  auto it = coeffs.find(0);
  return LinearInZ{k.constant(), it == coeffs.end() ? MPoly() : it->second};
}

std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    if (negative) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    first = false;
    const Rational mag = abs(c);
    const bool constant_term = m == Monomial{0, 0, 0};
    bool need_star = false;
    if (mag != 1 || constant_term) {
      out += splab::to_string(mag);
      need_star = true;
    }
    for (int k = 0; k < 3; ++k) {
      if (m[k] == 0) continue;
      if (need_star) out += '*';
      out += "XYZ"[k];
      if (m[k] > 1) out += "^" + std::to_string(m[k]);
      need_star = true;
    }
  }
  return out;
}

}  // namespace splab::cas
