#include "s1fc/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace s1fc {

namespace {

void trim(Poly::Mono& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Poly::Mono mul_mono(const Poly::Mono& a, const Poly::Mono& b) {
  Poly::Mono r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

std::optional<Poly::Mono> div_mono(const Poly::Mono& a, const Poly::Mono& b) {
  if (b.size() > a.size()) {
    for (size_t i = a.size(); i < b.size(); ++i)
      if (b[i] > 0) return std::nullopt;
  }
  Poly::Mono r(a);
  for (size_t i = 0; i < b.size() && i < r.size(); ++i) {
    r[i] -= b[i];
    if (r[i] < 0) return std::nullopt;
  }
  trim(r);
  return r;
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (c != 0) t_[Mono{}] = c;
}

Poly Poly::var(int i) {
  Mono m(i + 1, 0);
  m[i] = 1;
  return monomial(m, 1);
}

Poly Poly::monomial(const Mono& m, const Rational& c) {
  Poly p;
  Mono mm(m);
  trim(mm);
  p.add(mm, c);
  return p;
}

Rational Poly::constant_term() const {
  auto it = t_.find(Mono{});
  return it == t_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

int Poly::num_vars() const {
  size_t n = 0;
  for (const auto& [m, c] : t_) n = std::max(n, m.size());
  return static_cast<int>(n);
}

void Poly::add(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [m1, c1] : a.t_)
    for (const auto& [m2, c2] : b.t_) r.add(mul_mono(m1, m2), c1 * c2);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& r) {
  if (r == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, c] : t_) c *= r;
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::domain_error("negative polynomial power");
  Poly r(1), b(*this);
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
  Rational s(0);
  for (const auto& [m, c] : t_) {
    Rational term(c);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= x.size()) throw std::out_of_range("Poly::eval: missing variable value");
      term *= s1fc::pow(x[i], m[i]);
    }
    s += term;
  }
  return s;
}

std::vector<Rational> Poly::along_ray(const std::vector<Rational>& a) const {
  std::vector<Rational> r(std::max(total_degree() + 1, 1), Rational(0));
  for (const auto& [m, c] : t_) {
    Rational term(c);
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= a.size()) throw std::out_of_range("Poly::along_ray: missing direction");
      term *= s1fc::pow(a[i], m[i]);
      d += m[i];
    }
    r[d] += term;
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  Poly r;
  for (const auto& [m, c] : t_) {
    Poly term(c);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= images.size()) throw std::out_of_range("Poly::substitute: missing image");
      term *= images[i].pow(m[i]);
    }
    r += term;
  }
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly rem(*this), q;
  const auto& [dm, dc] = d.leading();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading();
    auto qm = div_mono(rm, dm);
    if (!qm) return std::nullopt;
    Poly step = monomial(*qm, rc / dc);
    q += step;
    rem -= step * d;
  }
  return q;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    Rational c = it->second;
    const Mono& m = it->first;
    if (!first) {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    } else if (c < 0) {
      out += "-";
      c = -c;
    }
    first = false;
    std::string mono;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += to_string(c);
    } else {
      if (c != 1) out += to_string(c) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace s1fc
