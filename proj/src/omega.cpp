#include "s1fc/omega.hpp"

#include <algorithm>
#include <sstream>

namespace s1fc {

Rational phi(const Rational& z) {
  if (z == 0 || z == 1 || z == -1 || z == -2) throw PoleAtZ("φ has a pole at z = " + to_string(z));
  return (Rational(-3) / (z + 1) - Rational(1) / (z - 1) + Rational(3) / z + Rational(1) / (z + 2)) / 4;
}

RationalFunction phi(const RationalFunction& z) {
  return (RationalFunction(-3) / (z + RationalFunction(1)) - RationalFunction(1) / (z - RationalFunction(1)) +
          RationalFunction(3) / z + RationalFunction(1) / (z + RationalFunction(2))) *
         RationalFunction(Rational(1, 4));
}

OmegaExpr::OmegaExpr(const RationalFunction& c) {
  if (!c.is_zero()) t_[Mono{}] = c;
}

OmegaExpr OmegaExpr::atom(const Atom& a) {
  OmegaExpr e;
  e.t_[Mono{{a, 1}}] = RationalFunction(1);
  return e;
}

bool OmegaExpr::contains(Atom::Type type) const {
  for (const auto& [m, c] : t_)
    for (const auto& [a, e] : m)
      if (a.type == type) return true;
  return false;
}

void OmegaExpr::add(const Mono& m, const RationalFunction& c) {
  if (c.is_zero()) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

OmegaExpr& OmegaExpr::operator+=(const OmegaExpr& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

OmegaExpr& OmegaExpr::operator-=(const OmegaExpr& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

OmegaExpr OmegaExpr::operator-() const {
  OmegaExpr r;
  for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
  return r;
}

OmegaExpr operator*(const OmegaExpr& a, const OmegaExpr& b) {
  OmegaExpr r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      OmegaExpr::Mono m = ma;
      for (const auto& [at, e] : mb) m[at] += e;
      r.add(m, ca * cb);
    }
  return r;
}

OmegaExpr& OmegaExpr::operator*=(const OmegaExpr& o) { return *this = *this * o; }

namespace {

std::string var_name(int i, const std::vector<std::string>& names) {
  return i < static_cast<int>(names.size()) ? names[i] : "l" + std::to_string(i);
}

std::string atom_str(const Atom& a, const std::vector<std::string>& names) {
  if (a.type == Atom::Type::Sigma) return "σ" + std::to_string(a.i);
  std::ostringstream os;
  os << (a.type == Atom::Type::Omega ? "ω(" : "p(") << var_name(a.i, names) << "-" << var_name(a.j, names);
  if (a.k > 0) os << "+" << a.k;
  if (a.k < 0) os << a.k;
  os << ")";
  return os.str();
}

RationalFunction shifted_difference(int i, int j, int k) {
  return RationalFunction::var(i) - RationalFunction::var(j) + RationalFunction(k);
}

OmegaExpr reduce_atom(const Atom& a, std::map<Atom, OmegaExpr>& memo) {
  if (a.type == Atom::Type::Sigma) return OmegaExpr::atom(a);
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  OmegaExpr r;
  if (a.i > a.j) {
    Atom f{a.type, a.j, a.i, -a.k};
    r = reduce_atom(f, memo);
    if (a.type == Atom::Type::P) r = -r;
  } else if (a.type == Atom::Type::P) {
    r = OmegaExpr::p(a.i, a.j);
    if (a.k % 2) r = -r;
  } else if (a.k == 0) {
    r = OmegaExpr::omega(a.i, a.j);
  } else if (a.k > 0) {
    // ω(x+k) = p(x+k-1) - φ(x+k-1) - ω(x+k-1)
    r = reduce_atom({Atom::Type::P, a.i, a.j, a.k - 1}, memo) - OmegaExpr(phi(shifted_difference(a.i, a.j, a.k - 1))) -
        reduce_atom({Atom::Type::Omega, a.i, a.j, a.k - 1}, memo);
  } else {
    // ω(x+k) = p(x+k) - φ(x+k) - ω(x+k+1)
    r = reduce_atom({Atom::Type::P, a.i, a.j, a.k}, memo) - OmegaExpr(phi(shifted_difference(a.i, a.j, a.k))) -
        reduce_atom({Atom::Type::Omega, a.i, a.j, a.k + 1}, memo);
  }
  memo.emplace(a, r);
  return r;
}

}  // namespace

std::string OmegaExpr::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::vector<std::string> vars = names;
  int top = -1;
  for (const auto& [m, c] : t_)
    for (const auto& [a, e] : m) top = std::max({top, a.i, a.j});
  for (const auto& [m, c] : t_) {
    top = std::max(top, c.numerator().num_vars() - 1);
    for (const auto& [f, e] : c.denominator_factors()) top = std::max(top, f.num_vars() - 1);
  }
  for (int i = static_cast<int>(vars.size()); i <= top; ++i) vars.push_back("l" + std::to_string(i));
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str(vars) << ")";
    for (const auto& [a, e] : m) {
      os << " " << atom_str(a, vars);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

OmegaExpr omega_reduce(const OmegaExpr& e) {
  std::map<Atom, OmegaExpr> memo;
  OmegaExpr out;
  for (const auto& [m, c] : e.terms()) {
    OmegaExpr term(c);
    for (const auto& [a, k] : m) {
      OmegaExpr base = reduce_atom(a, memo);
      for (int n = 0; n < k; ++n) term *= base;
    }
    out += term;
  }
  return out;
}

OmegaExpr assert_omega_cancellation(const OmegaExpr& e) {
  OmegaExpr r = omega_reduce(e);
  for (const auto& [m, c] : r.terms())
    for (const auto& [a, k] : m)
      if (a.type != Atom::Type::P) {
        throw ResidualOmega("residual " + atom_str(a, {}) + (k > 1 ? "^" + std::to_string(k) : "") +
                            " with coefficient " + c.str());
      }
  return r;
}

OmegaExpr omega_tilde(int i, int r, int j, int c) {
  if (i == j) {
    if (r == c) throw std::invalid_argument("ω̃ between a point and itself");
    return OmegaExpr::sigma(i);
  }
  if (r == c) return OmegaExpr::omega(i, j);
  if (r > 0) return OmegaExpr::omega(i, j, 1) + OmegaExpr(phi(shifted_difference(i, j, 0)));
  return OmegaExpr::omega(i, j, -1) + OmegaExpr(phi(shifted_difference(i, j, -1)));
}

OmegaExpr determinant(const std::vector<std::vector<OmegaExpr>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return OmegaExpr(1);
  for (const auto& row : m)
    if (row.size() != n) throw DimensionMismatch("determinant of a non-square matrix");
  if (n == 1) return m[0][0];
  OmegaExpr det;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<OmegaExpr>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<OmegaExpr> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    OmegaExpr t = m[0][col] * determinant(minor);
    if (col % 2) det -= t;
    else det += t;
  }
  return det;
}

PiSeries expand_homogeneous(const OmegaExpr& e, const std::vector<Rational>& a, int order) {
  PiSeries total(order);
  for (const auto& [m, c] : e.terms()) {
    int npoles = 0;
    for (const auto& [at, k] : m) {
      if (at.type != Atom::Type::P) throw ResidualOmega("expand_homogeneous needs an ω-free expression");
      if (at.k != 0) throw std::invalid_argument("expand_homogeneous needs a reduced expression");
      npoles += k;
    }
    RationalSeries rs = c.along_ray(a, order + npoles);
    if (rs.is_zero()) continue;
    const int v = rs.valuation();
    PiSeries term = to_pi_series(rs);
    for (const auto& [at, k] : m) {
      PiSeries ps = p_series(a.at(at.i) - a.at(at.j), order - v + npoles);
      for (int n = 0; n < k; ++n) term *= ps;
    }
    if (term.order() < order) throw std::logic_error("series truncated below the requested order");
    total += term.truncated(order);
  }
  return total;
}

PiPoly regular_constant(const PiSeries& s, const std::string& context) {
  if (s.order() < 1) throw std::logic_error("series does not reach the constant term");
  for (int e = s.valuation(); e < 0; ++e)
    if (!s.coeff(e).is_zero())
      throw SingularLimit("t^" + std::to_string(e) + " coefficient " + s.coeff(e).str() + " survives" +
                          (context.empty() ? "" : " (" + context + ")"));
  return s.coeff(0);
}

PiPoly homogeneous_limit(const OmegaExpr& e, const std::vector<std::vector<Rational>>& directions) {
  if (directions.empty()) throw std::invalid_argument("need at least one direction tuple");
  OmegaExpr r = assert_omega_cancellation(e);
  PiPoly ref;
  for (std::size_t d = 0; d < directions.size(); ++d) {
    PiPoly c = regular_constant(expand_homogeneous(r, directions[d]));
    if (d == 0) ref = c;
    else if (!(c == ref))
      throw DirectionDependence("constant term " + c.str() + " differs from " + ref.str());
  }
  return ref;
}

}  // namespace s1fc
