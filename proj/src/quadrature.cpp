#include "awlift/quadrature.hpp"

#include <array>
#include <cmath>

namespace awlift {

namespace {

constexpr int kNodes = 15;

struct GaussRule {
  std::array<double, kNodes> x;  // nodes on [-1, 1]
  std::array<double, kNodes> w;
};

// Nodes and weights by Newton iteration on the Legendre polynomial.
GaussRule make_rule() {
  GaussRule r{};
  const int n = kNodes;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[static_cast<std::size_t>(i)] = -x;
    r.x[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[static_cast<std::size_t>(i)] = w;
    r.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

const GaussRule& rule() {
  static const GaussRule r = make_rule();
  return r;
}

Cplx panel(const std::function<Cplx(Cplx)>& f, Cplx a, Cplx b) {
  const GaussRule& r = rule();
  const Cplx mid = 0.5 * (a + b);
  const Cplx half = 0.5 * (b - a);
  Cplx s(0.0);
  for (int i = 0; i < kNodes; ++i)
    s += r.w[static_cast<std::size_t>(i)] * f(mid + half * r.x[static_cast<std::size_t>(i)]);
  return s * half;
}

Cplx adapt(const std::function<Cplx(Cplx)>& f, Cplx a, Cplx b, Cplx whole, double tol,
           int depth, int max_depth) {
  const Cplx mid = 0.5 * (a + b);
  const Cplx left = panel(f, a, mid);
  const Cplx right = panel(f, mid, b);
  const Cplx refined = left + right;
  if (std::abs(refined - whole) <= tol) return refined;
  if (depth >= max_depth)
    throw SingularPointError("quadrature failed to converge", mid);
  return adapt(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
         adapt(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

Cplx integrate_segment(const std::function<Cplx(Cplx)>& f, Cplx a, Cplx b, double abs_tol,
                       int max_depth) {
  if (a == b) return Cplx(0.0);
  return adapt(f, a, b, panel(f, a, b), abs_tol, 0, max_depth);
}

Cplx integrate_polyline(const std::function<Cplx(Cplx)>& f, Cplx a, Cplx m, Cplx b,
                        double abs_tol) {
  return integrate_segment(f, a, m, 0.5 * abs_tol) + integrate_segment(f, m, b, 0.5 * abs_tol);
}

}  // namespace awlift
