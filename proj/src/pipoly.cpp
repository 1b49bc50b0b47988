#include "s1fc/pipoly.hpp"

#include <stdexcept>

namespace s1fc {

PiPoly::PiPoly(const Rational& c) {
  if (c != 0) c_[0] = c;
}

PiPoly PiPoly::pi2_power(int k, const Rational& c) {
  if (k < 0) throw std::domain_error("negative π² power");
  PiPoly p;
  p.add(k, c);
  return p;
}

Rational PiPoly::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Rational(0) : it->second;
}

void PiPoly::add(int k, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = c_.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) c_.erase(it);
  }
}

PiPoly& PiPoly::operator+=(const PiPoly& o) {
  for (const auto& [k, v] : o.c_) add(k, v);
  return *this;
}

PiPoly& PiPoly::operator-=(const PiPoly& o) {
  for (const auto& [k, v] : o.c_) add(k, -v);
  return *this;
}

PiPoly& PiPoly::operator*=(const PiPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  PiPoly r;
  for (const auto& [k1, v1] : c_)
    for (const auto& [k2, v2] : o.c_) r.add(k1 + k2, v1 * v2);
  c_ = std::move(r.c_);
  return *this;
}

PiPoly& PiPoly::operator*=(const Rational& r) {
  if (r == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [k, v] : c_) v *= r;
  return *this;
}

PiPoly PiPoly::operator-() const {
  PiPoly r(*this);
  for (auto& [k, v] : r.c_) v = -v;
  return r;
}

std::optional<PiPoly> PiPoly::inverse() const {
  if (is_zero() || !is_constant()) return std::nullopt;
  return PiPoly(Rational(1) / constant());
}

std::string PiPoly::str() const {
  if (c_.empty()) return "0";
  static const char* sup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const int k = it->first;
    Rational v = it->second;
    if (!first) {
      out += v < 0 ? " − " : " + ";
      if (v < 0) v = -v;
    } else if (v < 0) {
      out += "−";
      v = -v;
    }
    first = false;
    if (k == 0) {
      out += to_string(v);
      continue;
    }
    if (v != 1) out += to_string(v) + "·";
    out += "π";
    std::string e = std::to_string(2 * k);
    for (char ch : e) out += sup[ch - '0'];
  }
  return out;
}

nlohmann::json PiPoly::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [k, v] : c_) a.push_back({{"power", 2 * k}, {"value", to_string(v)}});
  return a;
}

PiPoly PiPoly::from_json(const nlohmann::json& j) {
  PiPoly p;
  for (const auto& t : j) {
    int power = t.at("power").get<int>();
    if (power % 2 != 0) throw std::invalid_argument("odd power of π");
    p.add(power / 2, parse_rational(t.at("value").get<std::string>()));
  }
  return p;
}

}  // namespace s1fc
