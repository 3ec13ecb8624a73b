#include "awlift/lift.hpp"

#include <cmath>
#include <limits>

#include "awlift/harmonic.hpp"
#include "awlift/quadrature.hpp"

namespace awlift {

namespace {

Cplx we_integrand(const JetMap& map, Cplx zeta) {
  const WeierstrassJets wj = map.jets(zeta);
  return wj.q.value() * wj.h.derivative(1);
}

Vec3 assemble(const WeierstrassJets& wj, Cplx third_integral) {
  const Cplx hg_sum = wj.h.value() + wj.g.value();
  const Cplx hg_diff = wj.h.value() - wj.g.value();
  return Vec3(hg_sum.real(), hg_diff.imag(), 2.0 * third_integral.imag());
}

}  // namespace

Vec3 lift_point(const JetMap& map, Cplx z, double quad_tol) {
  const WeierstrassJets wj = map.jets(z);
  const Cplx integral = integrate_segment([&](Cplx zeta) { return we_integrand(map, zeta); },
                                          Cplx(0.0), z, quad_tol);
  return assemble(wj, integral);
}

Vec3 lift_point_from(const JetMap& map, Cplx anchor_z, const Vec3& anchor_value, Cplx z,
                     double quad_tol) {
  const WeierstrassJets wj = map.jets(z);
  const Cplx delta = integrate_segment([&](Cplx zeta) { return we_integrand(map, zeta); },
                                       anchor_z, z, quad_tol);
  const Cplx hg_sum = wj.h.value() + wj.g.value();
  const Cplx hg_diff = wj.h.value() - wj.g.value();
  return Vec3(hg_sum.real(), hg_diff.imag(), anchor_value.z() + 2.0 * delta.imag());
}

Vec3 lift_point_polyline(const JetMap& map, Cplx mid, Cplx z, double quad_tol) {
  const WeierstrassJets wj = map.jets(z);
  const Cplx integral = integrate_polyline([&](Cplx zeta) { return we_integrand(map, zeta); },
                                           Cplx(0.0), mid, z, quad_tol);
  return assemble(wj, integral);
}

SurfaceFrame frame_at(const JetMap& map, Cplx z) { return frame_at(map, z, lift_point(map, z)); }

SurfaceFrame frame_at(const JetMap& map, Cplx z, const Vec3& point) {
  const WeierstrassJets wj = map.jets(z);
  const Cplx hp = wj.h.derivative(1), hpp = wj.h.derivative(2);
  const Cplx gp = wj.g.derivative(1), gpp = wj.g.derivative(2);
  const Cplx qv = wj.q.value(), qp = wj.q.derivative(1);
  if (hp == Cplx(0.0)) throw DegeneratePointError("vanishing h'", z);

  SurfaceFrame fr;
  fr.z = z;
  fr.point = point;
  fr.e_sigma = std::abs(hp) * (1.0 + std::norm(qv));
  const double one_m = 1.0 - std::norm(z);
  fr.lambda_sigma = one_m > 0.0 ? 1.0 / (one_m * fr.e_sigma)
                                : std::numeric_limits<double>::infinity();

  const Cplx I(0.0, 1.0);
  fr.dz_coords = {0.5 * (hp + gp), (hp - gp) / (2.0 * I), -I * qv * hp};
  fr.dzz_coords = {0.5 * (hpp + gpp), (hpp - gpp) / (2.0 * I), -I * (qp * hp + qv * hpp)};
  fr.dzzbar_coords = {Cplx(0.0), Cplx(0.0), Cplx(0.0)};

  Vec3 fx, fy;
  for (int k = 0; k < 3; ++k) {
    fx[k] = 2.0 * fr.dz_coords[static_cast<std::size_t>(k)].real();
    fy[k] = -2.0 * fr.dz_coords[static_cast<std::size_t>(k)].imag();
  }
  fr.X = fx / fr.e_sigma;
  fr.Y = fy / fr.e_sigma;
  fr.N = fr.X.cross(fr.Y);
  return fr;
}

FundamentalForms fundamental_forms(const JetMap& map, Cplx z) {
  const SurfaceFrame fr = frame_at(map, z, Vec3::Zero());
  Vec3 fxx, fxy;
  for (int k = 0; k < 3; ++k) {
    // f_xx = Re A'', f_xy = -Im A'', f_yy = -f_xx (harmonic coordinates)
    fxx[k] = 2.0 * fr.dzz_coords[static_cast<std::size_t>(k)].real();
    fxy[k] = -2.0 * fr.dzz_coords[static_cast<std::size_t>(k)].imag();
  }
  const double e = fxx.dot(fr.N);
  const double f = fxy.dot(fr.N);
  const double g = -e;

  FundamentalForms out;
  out.II << e, f, f, g;
  const double scale2 = fr.e_sigma * fr.e_sigma;
  out.mean_curvature = 0.5 * (e + g) / scale2;
  out.gauss_curvature = (e * g - f * f) / (scale2 * scale2);
  return out;
}

std::array<Vec3, 3> lift_axis_derivatives(const JetMap& map, double x) {
  const WeierstrassJets wj = map.jets(Cplx(x, 0.0));
  const Cplx I(0.0, 1.0);
  std::array<Vec3, 3> out;
  for (int m = 1; m <= 3; ++m) {
    const Cplx hm = wj.h.derivative(m), gm = wj.g.derivative(m);
    Cplx a3;
    if (m == 1) a3 = -2.0 * I * wj.q.value() * wj.h.derivative(1);
    if (m == 2)
      a3 = -2.0 * I * (wj.q.derivative(1) * wj.h.derivative(1) + wj.q.value() * wj.h.derivative(2));
    if (m == 3)
      a3 = -2.0 * I *
           (wj.q.derivative(2) * wj.h.derivative(1) + 2.0 * wj.q.derivative(1) * wj.h.derivative(2) +
            wj.q.value() * wj.h.derivative(3));
    out[static_cast<std::size_t>(m - 1)] =
        Vec3((hm + gm).real(), (-I * (hm - gm)).real(), a3.real());
  }
  return out;
}

}  // namespace awlift
