#include "awlift/harmonic.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "awlift/lift.hpp"
#include "awlift/parallel.hpp"

namespace awlift {

SigmaData sigma_at(const JetMap& map, Cplx z) {
  const WeierstrassJets wj = map.jets(z);
  const Cplx hp = wj.h.derivative(1);
  if (hp == Cplx(0.0)) throw DegeneratePointError("vanishing h'", z);
  const Cplx hpp = wj.h.derivative(2);
  const Cplx hppp = wj.h.derivative(3);
  const Cplx qv = wj.q.value();
  const Cplx qp = wj.q.derivative(1);
  const Cplx qpp = wj.q.derivative(2);

  const double qq = std::norm(qv);
  const double den = 1.0 + qq;

  SigmaData s;
  s.sigma = std::log(std::abs(hp)) + std::log1p(qq);
  s.sigma_z = hpp / (2.0 * hp) + qp * std::conj(qv) / den;
  const Cplx t = qp * std::conj(qv) / den;
  s.sigma_zz = (hppp * hp - hpp * hpp) / (2.0 * hp * hp) + qpp * std::conj(qv) / den - t * t;
  s.sigma_zzbar = std::norm(qp) / (den * den);
  s.grad_sigma = Vec2(2.0 * s.sigma_z.real(), -2.0 * s.sigma_z.imag());
  s.laplacian = 4.0 * s.sigma_zzbar;
  return s;
}

double conformal_scale(const JetMap& map, Cplx z) {
  const WeierstrassJets wj = map.jets(z);
  const Cplx hp = wj.h.derivative(1);
  if (hp == Cplx(0.0)) throw DegeneratePointError("vanishing h'", z);
  return std::abs(hp) * (1.0 + std::norm(wj.q.value()));
}

Cplx schwarzian(const JetMap& map, Cplx z) {
  const SigmaData s = sigma_at(map, z);
  return 2.0 * (s.sigma_zz - s.sigma_z * s.sigma_z);
}

double curvature_density(const JetMap& map, Cplx z) {
  return sigma_at(map, z).laplacian;
}

std::vector<Cplx> polar_grid(const GridParams& grid) {
  grid.validate();
  std::vector<Cplx> pts;
  pts.reserve(1 + static_cast<std::size_t>(grid.n_radial) * static_cast<std::size_t>(grid.n_angular));
  pts.emplace_back(0.0, 0.0);
  for (int i = 1; i <= grid.n_radial; ++i) {
    const double r = grid.r_max * std::sin(0.5 * M_PI * i / grid.n_radial);
    for (int j = 0; j < grid.n_angular; ++j) {
      const double th = 2.0 * M_PI * j / grid.n_angular;
      pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  return pts;
}

ConditionReport condition_report(const JetMap& map, const GridParams& grid) {
  ConditionReport rep;
  rep.grid = grid;
  const std::vector<Cplx> pts = polar_grid(grid);
  rep.samples.resize(pts.size());

  parallel_for(pts.size(), [&](std::size_t i) {
    const Cplx z = pts[i];
    const SigmaData s = sigma_at(map, z);
    const Cplx sf = 2.0 * (s.sigma_zz - s.sigma_z * s.sigma_z);
    const double one_m = 1.0 - std::norm(z);
    ConditionSample& out = rep.samples[i];
    out.z = z;
    out.sigma = s.sigma;
    out.abs_schwarzian = std::abs(sf);
    out.curv_density = s.laplacian;
    out.margin_t = 0.5 * one_m * one_m * (out.abs_schwarzian + out.curv_density);
    out.grad_sigma_norm = s.grad_sigma.norm();
  });

  rep.sup_t = -1.0;
  for (const ConditionSample& s : rep.samples) {
    if (s.margin_t > rep.sup_t) {
      rep.sup_t = s.margin_t;
      rep.worst_point = s.z;
    }
    const double c = (1.0 - std::norm(s.z)) * s.grad_sigma_norm;
    if (c > rep.c_estimate) rep.c_estimate = c;
  }
  rep.nehari_ok = rep.sup_t <= 1.0 + 1e-9;
  rep.aw_ok = rep.sup_t < 1.0 - 1e-9;
  return rep;
}

std::string ConditionReport::to_csv() const {
  std::string out = "re,im,sigma,abs_schwarzian,curv_density,margin_t,grad_sigma_norm\n";
  for (const ConditionSample& s : samples) {
    out += format_double(s.z.real());
    out += ',';
    out += format_double(s.z.imag());
    out += ',';
    out += format_double(s.sigma);
    out += ',';
    out += format_double(s.abs_schwarzian);
    out += ',';
    out += format_double(s.curv_density);
    out += ',';
    out += format_double(s.margin_t);
    out += ',';
    out += format_double(s.grad_sigma_norm);
    out += '\n';
  }
  return out;
}

std::string ConditionReport::summary_json(const std::string& label) const {
  nlohmann::json j;
  if (!label.empty()) j["label"] = label;
  j["grid"] = {{"n_radial", grid.n_radial}, {"n_angular", grid.n_angular}, {"r_max", grid.r_max}};
  j["sup_t"] = sup_t;
  j["worst_point"] = {{"re", worst_point.real()}, {"im", worst_point.imag()}};
  j["c_estimate"] = c_estimate;
  j["nehari_ok"] = nehari_ok;
  j["aw_ok"] = aw_ok;
  return j.dump(2);
}

double u_value(const JetMap& map, Cplx z) {
  const double one_m = 1.0 - std::norm(z);
  if (one_m <= 0.0) throw UsageError("u is defined for |z| < 1");
  return 1.0 / std::sqrt(one_m * conformal_scale(map, z));
}

Vec2 u_log_gradient(const JetMap& map, Cplx z) {
  const double one_m = 1.0 - std::norm(z);
  if (one_m <= 0.0) throw UsageError("u is defined for |z| < 1");
  const SigmaData s = sigma_at(map, z);
  return Vec2(z.real() / one_m - 0.5 * s.grad_sigma.x(),
              z.imag() / one_m - 0.5 * s.grad_sigma.y());
}

std::vector<double> convexity_profile(const JetMap& map, Cplx a, Cplx b, int n_samples,
                                      double step) {
  return convexity_profile([&](Cplx z) { return u_value(map, z); }, a, b, n_samples, step);
}

std::vector<double> convexity_profile(const std::function<double(Cplx)>& u_fn, Cplx a, Cplx b,
                                      int n_samples, double step) {
  if (n_samples < 3) throw UsageError("convexity profile needs at least 3 samples");
  const DiskAutomorphism geo = geodesic_automorphism(a, b);
  std::vector<double> u(static_cast<std::size_t>(n_samples));
  const double s0 = -0.5 * (n_samples - 1) * step;
  for (int k = 0; k < n_samples; ++k) {
    const double s = s0 + k * step;
    u[static_cast<std::size_t>(k)] = u_fn(geo(std::tanh(s)));
  }
  std::vector<double> dd(static_cast<std::size_t>(n_samples - 2));
  for (int k = 1; k + 1 < n_samples; ++k)
    dd[static_cast<std::size_t>(k - 1)] =
        (u[static_cast<std::size_t>(k - 1)] - 2.0 * u[static_cast<std::size_t>(k)] +
         u[static_cast<std::size_t>(k + 1)]) /
        (step * step);
  return dd;
}

S1Sample s1_along_diameter(const JetMap& map, double x) {
  const std::array<Vec3, 3> d = lift_axis_derivatives(map, x);
  const Vec3& p1 = d[0];
  const Vec3& p2 = d[1];
  const Vec3& p3 = d[2];
  const double v2 = p1.squaredNorm();
  if (v2 < 1e-12) throw DegeneratePointError("vanishing lift derivative", Cplx(x, 0.0));

  S1Sample s;
  const double a = p3.dot(p1) / v2;
  const double b = p2.dot(p1);
  s.direct = a - 3.0 * b * b / (v2 * v2) + 1.5 * p2.squaredNorm() / v2;

  const double v = std::sqrt(v2);
  const double vp = b / v;
  const double vpp = (p3.dot(p1) + p2.squaredNorm() - vp * vp) / v;
  const double kappa = p1.cross(p2).norm() / (v2 * v);
  const double pre = vp / v;
  s.via_curvature = vpp / v - pre * pre - 0.5 * pre * pre + 0.5 * v2 * kappa * kappa;
  return s;
}

PrecomposedMap::PrecomposedMap(const JetMap& base, Cplx a, double theta)
    : base_(base), mobius_{a, theta} {
  if (std::abs(a) >= 1.0) throw UsageError("precomposition requires |a| < 1");
}

WeierstrassJets PrecomposedMap::jets(Cplx z) const {
  // Jet of T at z through the jet algebra, then Faà di Bruno with the base
  // data expanded at T(z).
  const HoloJet zj = HoloJet::variable(z);
  const HoloJet num = jet_add(zj, HoloJet::constant(z, mobius_.c));
  const HoloJet den = jet_add(HoloJet::constant(z, 1.0),
                              jet_scale(zj, std::conj(mobius_.c)));
  const HoloJet tj = jet_scale(jet_div(num, den), std::polar(1.0, mobius_.theta));
  const WeierstrassJets base = base_.jets(tj.value());
  return WeierstrassJets{jet_compose(base.h, tj), jet_compose(base.g, tj),
                         jet_compose(base.q, tj)};
}

PrecomposedMap mobius_precompose(const JetMap& map, Cplx a, double theta) {
  return PrecomposedMap(map, a, theta);
}

}  // namespace awlift
