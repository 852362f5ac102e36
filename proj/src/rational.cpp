#include "fanikit/rational.hpp"

#include <cctype>

namespace fanikit {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return g;
}

IntVector primitive(const IntVector& v) {
  const Integer g = content(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

IntVector primitive(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  IntVector scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    scaled[i] = s.get_num();
  }
  return primitive(scaled);
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

bool is_zero(const RatVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace fanikit
