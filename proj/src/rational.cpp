#include "s1fc/rational.hpp"

#include <stdexcept>

namespace s1fc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("empty integer");
  for (char c : digits)
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer: " + std::string(s));
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view s) {
  s = trim(s);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer p = parse_integer(s.substr(0, slash));
  Integer q = parse_integer(s.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  return Rational(p, q);
}

std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

Rational pow(const Rational& q, int e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("0 to negative power");
    return pow(Rational(1) / q, -e);
  }
  Rational r(1), b(q);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace s1fc
