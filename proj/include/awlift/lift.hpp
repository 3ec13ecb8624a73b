#pragma once

#include <array>

#include "awlift/mapspec.hpp"

namespace awlift {

/// Weierstrass-Enneper lift data at a point: position, conformal tangent
/// frame, unit normal, and analytic coordinate derivatives.  Coordinates are
/// real parts of analytic functions, so the mixed z-zbar derivatives vanish.
struct SurfaceFrame {
  Cplx z;
  Vec3 point;
  Vec3 X, Y, N;          // orthonormal tangent frame and normal N = X x Y
  double e_sigma;        // |h'| (1 + |q|^2)
  double lambda_sigma;   // 1 / ((1 - |z|^2) e_sigma)
  std::array<Cplx, 3> dz_coords;     // ((h'+g')/2, (h'-g')/(2i), -i q h')
  std::array<Cplx, 3> dzz_coords;    // z-derivative of dz_coords
  std::array<Cplx, 3> dzzbar_coords; // identically zero (harmonic coordinates)
};

struct FundamentalForms {
  Mat2 II;                 // coordinate-basis entries <f_xx,N>, <f_xy,N>, <f_yy,N>
  double mean_curvature;
  double gauss_curvature;  // <= 0 on a minimal surface
};

/// f(z) = (Re(h+g), Im(h-g), 2 Im int_0^z q h'), the third coordinate by
/// adaptive Gauss-Legendre along the straight segment from the origin.
Vec3 lift_point(const JetMap& map, Cplx z, double quad_tol = 1e-11);

/// Lift continued from a nearby anchor value: only the short segment from
/// anchor_z to z is integrated, which keeps finite differences smooth.
Vec3 lift_point_from(const JetMap& map, Cplx anchor_z, const Vec3& anchor_value, Cplx z,
                     double quad_tol = 1e-13);

/// Third-coordinate integral along a two-leg polyline (path-independence
/// diagnostics).
Vec3 lift_point_polyline(const JetMap& map, Cplx mid, Cplx z, double quad_tol = 1e-11);

SurfaceFrame frame_at(const JetMap& map, Cplx z);
/// Frame with the position supplied by the caller (avoids re-integration).
SurfaceFrame frame_at(const JetMap& map, Cplx z, const Vec3& point);

FundamentalForms fundamental_forms(const JetMap& map, Cplx z);

/// Derivatives phi', phi'', phi''' of the lift restricted to the real axis.
std::array<Vec3, 3> lift_axis_derivatives(const JetMap& map, double x);

}  // namespace awlift
