#pragma once

#include <cmath>

#include "awlift/types.hpp"

namespace awlift {

/// Disk automorphism T(z) = e^{i theta} (z + c) / (1 + conj(c) z), |c| < 1.
struct DiskAutomorphism {
  Cplx c{0.0};
  double theta = 0.0;

  Cplx operator()(Cplx z) const {
    return std::polar(1.0, theta) * (z + c) / (1.0 + std::conj(c) * z);
  }

  Cplx derivative(Cplx z) const {
    const Cplx d = 1.0 + std::conj(c) * z;
    return std::polar(1.0, theta) * (1.0 - std::norm(c)) / (d * d);
  }
};

/// Distance in the curvature -4 normalization (metric |dz|/(1-|z|^2)), so
/// that d(0, x) = atanh(x) and tanh(s) is the unit-speed diameter.
inline double hyperbolic_distance(Cplx z, Cplx w) {
  const double d = std::abs((z - w) / (1.0 - std::conj(w) * z));
  return std::atanh(std::min(d, 1.0 - 1e-16));
}

/// Automorphism carrying the real diameter onto the geodesic with ideal
/// endpoints a, b (unit modulus): s -> T(tanh s) runs from a to b at unit
/// hyperbolic speed.
inline DiskAutomorphism geodesic_automorphism(Cplx a, Cplx b) {
  a /= std::abs(a);
  b /= std::abs(b);
  if (std::abs(a - b) < 1e-12)
    throw UsageError("degenerate geodesic: endpoints coincide");
  const double psi = 0.5 * std::arg(-b / a);
  const double q = std::tan(0.5 * psi);
  const Cplx c(0.0, q);
  const Cplx phase = b * (1.0 - Cplx(0.0, q)) / (1.0 + Cplx(0.0, q));
  return DiskAutomorphism{c, std::arg(phase)};
}

}  // namespace awlift
