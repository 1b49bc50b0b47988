#pragma once

#include "s1fc/pipoly.hpp"
#include "s1fc/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace s1fc {

struct InvertAtZeroLeading : std::domain_error {
  InvertAtZeroLeading() : std::domain_error("InvertAtZeroLeading: no nonzero retained coefficient") {}
};

inline std::optional<Rational> ring_inverse(const Rational& r) {
  if (r == 0) return std::nullopt;
  return Rational(1) / r;
}
inline std::optional<PiPoly> ring_inverse(const PiPoly& p) { return p.inverse(); }
inline bool ring_is_zero(const Rational& r) { return r == 0; }
inline bool ring_is_zero(const PiPoly& p) { return p.is_zero(); }

// Truncated Laurent series sum_{e < order} c_e t^e + O(t^order).
// Truncation order used for exactly known finite series.
inline constexpr int kExactOrder = 1 << 20;

template <class C>
class LaurentSeries {
 public:
  explicit LaurentSeries(int order = 0) : val_(order), order_(order) {}

  static LaurentSeries monomial(const C& c, int e, int order) {
    LaurentSeries s(order);
    if (e < order && !ring_is_zero(c)) {
      s.val_ = e;
      s.c_.push_back(c);
    }
    return s;
  }
  // coeffs[i] multiplies t^(low + i).
  static LaurentSeries from_coeffs(int low, const std::vector<C>& coeffs, int order) {
    LaurentSeries s(order);
    s.val_ = low;
    for (size_t i = 0; i < coeffs.size() && low + static_cast<int>(i) < order; ++i) s.c_.push_back(coeffs[i]);
    s.normalize();
    return s;
  }

  int order() const { return order_; }
  // Exponent of the lowest nonzero retained term; order() when none.
  int valuation() const { return c_.empty() ? order_ : val_; }
  bool is_zero() const { return c_.empty(); }

  C coeff(int e) const {
    if (e >= order_) throw std::out_of_range("coefficient beyond truncation order");
    if (c_.empty() || e < val_ || e >= val_ + static_cast<int>(c_.size())) return C(0);
    return c_[e - val_];
  }

  LaurentSeries truncated(int order) const {
    LaurentSeries r(*this);
    r.order_ = std::min(order_, order);
    while (!r.c_.empty() && r.val_ + static_cast<int>(r.c_.size()) > r.order_) r.c_.pop_back();
    r.normalize();
    return r;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) {
    const int order = std::min(order_, o.order_);
    if (o.c_.empty()) return *this = truncated(order);
    if (c_.empty()) return *this = o.truncated(order);
    const int lo = std::min(val_, o.val_);
    std::vector<C> r(std::max(0, order - lo), C(0));
    for (size_t i = 0; i < c_.size(); ++i) {
      int e = val_ + static_cast<int>(i);
      if (e < order) r[e - lo] += c_[i];
    }
    for (size_t i = 0; i < o.c_.size(); ++i) {
      int e = o.val_ + static_cast<int>(i);
      if (e < order) r[e - lo] += o.c_[i];
    }
    val_ = lo;
    c_ = std::move(r);
    order_ = order;
    normalize();
    return *this;
  }
  LaurentSeries operator-() const {
    LaurentSeries r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
  }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this += -o; }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const int order = std::min(a.valuation() + b.order_, b.valuation() + a.order_);
    LaurentSeries r(order);
    if (a.c_.empty() || b.c_.empty()) return r;
    const int lo = a.val_ + b.val_;
    if (lo >= order) return r;
    std::vector<C> out(order - lo, C(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (ring_is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        const size_t k = i + j;
        if (static_cast<int>(k) >= order - lo) break;
        out[k] += a.c_[i] * b.c_[j];
      }
    }
    r.val_ = lo;
    r.c_ = std::move(out);
    r.normalize();
    return r;
  }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }

  LaurentSeries scaled(const C& k) const {
    LaurentSeries r(*this);
    for (auto& c : r.c_) c = c * k;
    r.normalize();
    return r;
  }

  // Relative precision is preserved: order of the result is order - 2*valuation.
  LaurentSeries inverse() const {
    if (c_.empty()) throw InvertAtZeroLeading();
    auto inv0 = ring_inverse(c_.front());
    if (!inv0) throw std::domain_error("leading coefficient is not invertible");
    const int n = order_ - val_;
    std::vector<C> d(n, C(0));
    d[0] = *inv0;
    for (int k = 1; k < n; ++k) {
      C s(0);
      for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) s += c_[j] * d[k - j];
      d[k] = -(s * (*inv0));
    }
    return from_coeffs(-val_, d, order_ - 2 * val_);
  }

  LaurentSeries pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    LaurentSeries r = monomial(C(1), 0, kExactOrder);
    LaurentSeries b(*this);
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Map coefficients into another ring.
  template <class D, class F>
  LaurentSeries<D> map(F f) const {
    std::vector<D> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(f(c));
    return LaurentSeries<D>::from_coeffs(val_, out, order_);
  }

 private:
  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && ring_is_zero(c_[lead])) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      val_ = order_;
      return;
    }
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      val_ += static_cast<int>(lead);
    }
    while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
  }

  int val_;
  std::vector<C> c_;
  int order_;
};

using RationalSeries = LaurentSeries<Rational>;
using PiSeries = LaurentSeries<PiPoly>;

inline PiSeries to_pi_series(const RationalSeries& s) {
  return s.map<PiPoly>([](const Rational& r) { return PiPoly(r); });
}

// p(c t) = π/(2 sin(π c t)) as a series in t, c ≠ 0.
PiSeries p_series(const Rational& c, int order);

}  // namespace s1fc
