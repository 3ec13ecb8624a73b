#pragma once

#include <array>
#include <cmath>

#include "awlift/types.hpp"

namespace awlift {

/// Truncated Taylor jet of an analytic function at a point, up to order 3.
/// Coefficients are Taylor-normalized: coeff(k) = f^(k)(z0) / k!.
class HoloJet {
 public:
  static constexpr int kMaxOrder = 3;

  HoloJet() = default;
  HoloJet(Cplx point, int order) : point_(point), order_(check_order(order)) {}

  static HoloJet constant(Cplx point, Cplx value, int order = kMaxOrder) {
    HoloJet j(point, order);
    j.c_[0] = value;
    return j;
  }

  /// Jet of the identity function z at z0.
  static HoloJet variable(Cplx point, int order = kMaxOrder) {
    HoloJet j(point, order);
    j.c_[0] = point;
    if (order >= 1) j.c_[1] = Cplx(1.0, 0.0);
    return j;
  }

  static HoloJet from_coeffs(Cplx point, std::array<Cplx, kMaxOrder + 1> coeffs,
                             int order = kMaxOrder) {
    HoloJet j(point, order);
    for (int k = 0; k <= order; ++k) j.c_[k] = coeffs[static_cast<std::size_t>(k)];
    return j;
  }

  int order() const { return order_; }
  Cplx point() const { return point_; }
  Cplx coeff(int k) const { return k <= order_ ? c_[static_cast<std::size_t>(k)] : Cplx(0.0); }
  Cplx value() const { return c_[0]; }

  /// f^(k)(z0) = k! * coeff(k).
  Cplx derivative(int k) const {
    static constexpr double kFactorial[kMaxOrder + 1] = {1.0, 1.0, 2.0, 6.0};
    return coeff(k) * kFactorial[k];
  }

  void set_coeff(int k, Cplx v) { c_[static_cast<std::size_t>(k)] = v; }

  bool all_finite() const {
    for (int k = 0; k <= order_; ++k)
      if (!std::isfinite(c_[static_cast<std::size_t>(k)].real()) ||
          !std::isfinite(c_[static_cast<std::size_t>(k)].imag()))
        return false;
    return true;
  }

 private:
  static int check_order(int order) {
    if (order < 0 || order > kMaxOrder) throw UsageError("jet order must be in {0..3}");
    return order;
  }

  Cplx point_{0.0};
  int order_ = kMaxOrder;
  std::array<Cplx, kMaxOrder + 1> c_{};
};

namespace detail {

inline void require_compatible(const HoloJet& a, const HoloJet& b) {
  if (a.order() != b.order()) throw UsageError("jet order mismatch");
  if (a.point() != b.point()) throw UsageError("jet expansion-point mismatch");
}

}  // namespace detail

inline HoloJet jet_add(const HoloJet& a, const HoloJet& b) {
  detail::require_compatible(a, b);
  HoloJet r(a.point(), a.order());
  for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, a.coeff(k) + b.coeff(k));
  return r;
}

inline HoloJet jet_sub(const HoloJet& a, const HoloJet& b) {
  detail::require_compatible(a, b);
  HoloJet r(a.point(), a.order());
  for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, a.coeff(k) - b.coeff(k));
  return r;
}

inline HoloJet jet_neg(const HoloJet& a) {
  HoloJet r(a.point(), a.order());
  for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, -a.coeff(k));
  return r;
}

inline HoloJet jet_scale(const HoloJet& a, Cplx s) {
  HoloJet r(a.point(), a.order());
  for (int k = 0; k <= a.order(); ++k) r.set_coeff(k, s * a.coeff(k));
  return r;
}

inline HoloJet jet_mul(const HoloJet& a, const HoloJet& b) {
  detail::require_compatible(a, b);
  HoloJet r(a.point(), a.order());
  for (int k = 0; k <= a.order(); ++k) {
    Cplx s(0.0);
    for (int j = 0; j <= k; ++j) s += a.coeff(j) * b.coeff(k - j);
    r.set_coeff(k, s);
  }
  return r;
}

inline HoloJet jet_reciprocal(const HoloJet& b) {
  if (b.value() == Cplx(0.0)) throw SingularPointError("division by zero", b.point());
  HoloJet r(b.point(), b.order());
  const Cplx inv = Cplx(1.0) / b.value();
  r.set_coeff(0, inv);
  for (int k = 1; k <= b.order(); ++k) {
    Cplx s(0.0);
    for (int j = 0; j < k; ++j) s += r.coeff(j) * b.coeff(k - j);
    r.set_coeff(k, -s * inv);
  }
  return r;
}

inline HoloJet jet_div(const HoloJet& a, const HoloJet& b) {
  detail::require_compatible(a, b);
  return jet_mul(a, jet_reciprocal(b));
}

/// Faà di Bruno composition to order 3.  The outer jet must be expanded at
/// the inner jet's value.
inline HoloJet jet_compose(const HoloJet& outer, const HoloJet& inner) {
  if (outer.order() != inner.order()) throw UsageError("jet order mismatch");
  if (outer.point() != inner.value())
    throw UsageError("jet composition requires the outer jet expanded at the inner value");
  const Cplx f0 = outer.coeff(0), f1 = outer.coeff(1), f2 = outer.coeff(2), f3 = outer.coeff(3);
  const Cplx g1 = inner.coeff(1), g2 = inner.coeff(2), g3 = inner.coeff(3);
  HoloJet r(inner.point(), inner.order());
  r.set_coeff(0, f0);
  if (inner.order() >= 1) r.set_coeff(1, f1 * g1);
  if (inner.order() >= 2) r.set_coeff(2, f1 * g2 + f2 * g1 * g1);
  if (inner.order() >= 3) r.set_coeff(3, f1 * g3 + 2.0 * f2 * g1 * g2 + f3 * g1 * g1 * g1);
  return r;
}

namespace detail {

/// Jet of an elementary function from its derivatives at the inner value,
/// composed through Faà di Bruno.
inline HoloJet compose_elementary(const HoloJet& inner, Cplx f0, Cplx f1, Cplx f2, Cplx f3) {
  std::array<Cplx, HoloJet::kMaxOrder + 1> c = {f0, f1, f2 / 2.0, f3 / 6.0};
  return jet_compose(HoloJet::from_coeffs(inner.value(), c, inner.order()), inner);
}

}  // namespace detail

inline HoloJet jet_exp(const HoloJet& a) {
  const Cplx e = std::exp(a.value());
  return detail::compose_elementary(a, e, e, e, e);
}

inline HoloJet jet_log(const HoloJet& a) {
  const Cplx v = a.value();
  if (v == Cplx(0.0)) throw SingularPointError("log of zero base", a.point());
  return detail::compose_elementary(a, std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

inline HoloJet jet_sqrt(const HoloJet& a) {
  const Cplx v = a.value();
  if (v == Cplx(0.0)) throw SingularPointError("sqrt of zero base", a.point());
  const Cplx s = std::sqrt(v);
  return detail::compose_elementary(a, s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

inline HoloJet jet_sin(const HoloJet& a) {
  const Cplx s = std::sin(a.value()), c = std::cos(a.value());
  return detail::compose_elementary(a, s, c, -s, -c);
}

inline HoloJet jet_cos(const HoloJet& a) {
  const Cplx s = std::sin(a.value()), c = std::cos(a.value());
  return detail::compose_elementary(a, c, -s, -c, s);
}

inline HoloJet jet_atanh(const HoloJet& a) {
  const Cplx v = a.value();
  const Cplx d = 1.0 - v * v;
  if (d == Cplx(0.0)) throw SingularPointError("atanh at a branch point", a.point());
  const Cplx f1 = 1.0 / d;
  const Cplx f2 = 2.0 * v / (d * d);
  const Cplx f3 = (2.0 + 6.0 * v * v) / (d * d * d);
  return detail::compose_elementary(a, std::atanh(v), f1, f2, f3);
}

/// a^w for a constant exponent.  Small integer exponents are expanded by
/// repeated multiplication so that vanishing bases stay regular; anything
/// else goes through exp(w log a) on the principal branch.
inline HoloJet jet_pow(const HoloJet& a, Cplx w) {
  const double wr = w.real();
  if (w.imag() == 0.0 && wr == std::floor(wr) && std::abs(wr) <= 64.0) {
    const int n = static_cast<int>(wr);
    HoloJet r = HoloJet::constant(a.point(), 1.0, a.order());
    for (int k = 0; k < std::abs(n); ++k) r = jet_mul(r, a);
    if (n < 0) r = jet_reciprocal(r);
    return r;
  }
  if (a.value() == Cplx(0.0))
    throw SingularPointError("pow of zero base with non-integer exponent", a.point());
  return jet_exp(jet_scale(jet_log(a), w));
}

inline HoloJet jet_pow(const HoloJet& a, const HoloJet& b) {
  bool const_exp = true;
  for (int k = 1; k <= b.order(); ++k)
    if (b.coeff(k) != Cplx(0.0)) const_exp = false;
  if (const_exp) return jet_pow(a, b.value());
  return jet_exp(jet_mul(b, jet_log(a)));
}

inline HoloJet operator+(const HoloJet& a, const HoloJet& b) { return jet_add(a, b); }
inline HoloJet operator-(const HoloJet& a, const HoloJet& b) { return jet_sub(a, b); }
inline HoloJet operator-(const HoloJet& a) { return jet_neg(a); }
inline HoloJet operator*(const HoloJet& a, const HoloJet& b) { return jet_mul(a, b); }
inline HoloJet operator/(const HoloJet& a, const HoloJet& b) { return jet_div(a, b); }
inline HoloJet operator*(Cplx s, const HoloJet& a) { return jet_scale(a, s); }

/// Jet of f' from the jet of f.  The top coefficient is truncated to zero,
/// so the result is accurate only to order()-1.
inline HoloJet jet_derivative(const HoloJet& a) {
  HoloJet r(a.point(), a.order());
  for (int k = 0; k + 1 <= a.order(); ++k)
    r.set_coeff(k, a.coeff(k + 1) * static_cast<double>(k + 1));
  return r;
}

/// Classical Schwarzian (f''/f')' - (f''/f')^2 / 2 read off a single jet.
inline Cplx jet_schwarzian(const HoloJet& f) {
  const Cplx d1 = f.derivative(1), d2 = f.derivative(2), d3 = f.derivative(3);
  if (d1 == Cplx(0.0)) throw DegeneratePointError("vanishing derivative in Schwarzian", f.point());
  const Cplx pre = d2 / d1;
  return d3 / d1 - 1.5 * pre * pre;
}

}  // namespace awlift
