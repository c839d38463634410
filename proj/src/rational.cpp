#include "splab/rational.hpp"

#include <cctype>
#include <functional>

#include "splab/errors.hpp"

namespace splab {

namespace {

std::size_t read_digits(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
  return end;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t end = read_digits(text, pos);
  if (end == pos) throw ParseError("expected digits in rational", pos);
  Integer num(std::string(text.substr(pos, end - pos)));
  Integer den = 1;
  pos = end;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    end = read_digits(text, pos);
    if (end == pos) throw ParseError("expected denominator digits", pos);
    den = Integer(std::string(text.substr(pos, end - pos)));
    if (den == 0) throw ParseError("zero denominator", pos);
    pos = end;
  }
  if (pos != text.size()) throw ParseError("trailing characters in rational", pos);
  Rational q(negative ? Integer(-num) : num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::size_t hash_value(const Integer& z) noexcept {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(p)) + 0x51ed27;
  const std::size_t n = mpz_size(p);
  for (std::size_t i = 0; i < n; ++i) {
    h = hash_combine(h, std::hash<mp_limb_t>{}(mpz_getlimbn(p, static_cast<mp_size_t>(i))));
  }
  return h;
}

std::size_t hash_value(const Rational& q) noexcept {
  return hash_combine(hash_value(q.get_num()), hash_value(q.get_den()));
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace splab
