#include "awlift/extension.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

#include "awlift/parallel.hpp"

namespace awlift {

ExtensionMap::ExtensionMap(const JetMap& map, const GridParams& grid)
    : map_(map), report_(condition_report(map, grid)) {}

Point3OrInf ExtensionMap::eval(Cplx z) const {
  if (std::norm(z) <= 1.0) return Point3OrInf::finite(lift_point(map_, z));
  const Cplx zeta = 1.0 / std::conj(z);
  return reflect_point(map_, zeta).w_star;
}

Point3OrInf ExtensionMap::eval_infinity() const { return reflect_point(map_, Cplx(0.0)).w_star; }

Point3OrInf extend_eval(const ExtensionMap& ext, Cplx z) { return ext.eval(z); }

std::optional<DilatationSample> dilatation_at(const ExtensionMap& ext, Cplx z) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) < 1e-9) return std::nullopt;
  const double step = std::min(1e-5, std::abs(r - 1.0) / 10.0);

  // Neighbor evaluations share one integrated anchor so the differences are
  // free of quadrature noise.
  const bool exterior = r > 1.0;
  const Cplx anchor_zeta = exterior ? 1.0 / std::conj(z) : z;
  const Vec3 anchor = lift_point(ext.map(), anchor_zeta);

  auto eval = [&](Cplx zn) -> Point3OrInf {
    const Cplx zeta = exterior ? 1.0 / std::conj(zn) : zn;
    const Vec3 lv = lift_point_from(ext.map(), anchor_zeta, anchor, zeta);
    if (!exterior) return Point3OrInf::finite(lv);
    return reflect_point(ext.map(), zeta, lv).w_star;
  };

  const Point3OrInf px1 = eval(z + Cplx(step, 0.0));
  const Point3OrInf px0 = eval(z - Cplx(step, 0.0));
  const Point3OrInf py1 = eval(z + Cplx(0.0, step));
  const Point3OrInf py0 = eval(z - Cplx(0.0, step));
  if (!(px1.finite_point() && px0.finite_point() && py1.finite_point() && py0.finite_point()))
    return std::nullopt;

  DilatationSample out;
  out.z = z;
  out.jacobian.col(0) = (px1.p - px0.p) / (2.0 * step);
  out.jacobian.col(1) = (py1.p - py0.p) / (2.0 * step);
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(out.jacobian);
  out.s_max = svd.singularValues()(0);
  out.s_min = svd.singularValues()(1);
  if (!(out.s_min > 0.0)) return std::nullopt;
  out.ratio = out.s_max / out.s_min;
  return out;
}

double boundary_gap(const ExtensionMap& ext, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw UsageError("boundary_gap requires 0 < epsilon < 0.5");
  const int n = 256;
  std::vector<double> gaps(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
    const double th = 2.0 * M_PI * static_cast<double>(k) / n;
    const Cplx z = (1.0 - epsilon) * Cplx(std::cos(th), std::sin(th));
    const Vec3 w = lift_point(ext.map(), z);
    const ReflectionData rd = reflect_point(ext.map(), z, w);
    gaps[k] = chordal_distance(Point3OrInf::finite(w), rd.w_star);
  });
  double gap = 0.0;
  for (double g : gaps) gap = std::max(gap, g);
  return gap;
}

namespace {

struct SurfaceTensors {
  Mat2 b_frame;       // Schwarzian tensor of log lambda_Sigma, orthonormal frame
  Vec2 grad_frame;    // grad log lambda_Sigma in the frame (Lambda = its norm)
  Mat2 ii_frame;      // second fundamental form, orthonormal frame
  double abs_K;
  double lambda_sq;
};

SurfaceTensors surface_tensors(const JetMap& map, Cplx z) {
  const SigmaData s = sigma_at(map, z);
  const double x = z.real(), y = z.imag();
  const double one_m = 1.0 - std::norm(z);
  if (one_m <= 0.0) throw UsageError("surface tensors are defined for |z| < 1");

  // p = log(lambda_Sigma o lift) = -log(1-|z|^2) - sigma
  const double sxx = 2.0 * s.sigma_zzbar + 2.0 * s.sigma_zz.real();
  const double syy = 2.0 * s.sigma_zzbar - 2.0 * s.sigma_zz.real();
  const double sxy = -2.0 * s.sigma_zz.imag();

  const double px = 2.0 * x / one_m - s.grad_sigma.x();
  const double py = 2.0 * y / one_m - s.grad_sigma.y();
  const double pxx = 2.0 / one_m + 4.0 * x * x / (one_m * one_m) - sxx;
  const double pyy = 2.0 / one_m + 4.0 * y * y / (one_m * one_m) - syy;
  const double pxy = 4.0 * x * y / (one_m * one_m) - sxy;

  // covariant Hessian in the conformal chart e^{2 sigma} |dz|^2
  const double hxx = pxx - s.grad_sigma.x() * px + s.grad_sigma.y() * py;
  const double hxy = pxy - s.grad_sigma.y() * px - s.grad_sigma.x() * py;
  const double hyy = pyy + s.grad_sigma.x() * px - s.grad_sigma.y() * py;

  const double half_trace = 0.5 * (pxx + pyy - px * px - py * py);
  Mat2 b_coord;
  b_coord << hxx - px * px - half_trace, hxy - px * py, hxy - px * py,
      hyy - py * py - half_trace;

  const double e2s = std::exp(2.0 * s.sigma);
  SurfaceTensors out;
  out.b_frame = b_coord / e2s;
  out.grad_frame = Vec2(px, py) / std::exp(s.sigma);

  const FundamentalForms ff = fundamental_forms(map, z);
  out.ii_frame = ff.II / e2s;
  out.abs_K = std::abs(ff.gauss_curvature);

  const double lambda = 1.0 / (one_m * std::exp(s.sigma));
  out.lambda_sq = lambda * lambda;
  return out;
}

Mat2 dvr_quadratic_form(const SurfaceTensors& st, Cplx z) {
  const double lam2 = st.grad_frame.squaredNorm();  // Lambda^2
  if (lam2 < 1e-20)
    throw DegeneratePointError("critical point of log lambda_Sigma", z);
  const double c = 2.0 * st.lambda_sq - 0.5 * st.abs_K;
  const Mat2 core = st.b_frame + c * Mat2::Identity();
  const Vec2 iig = st.ii_frame * st.grad_frame;
  Mat2 m = core.transpose() * core + iig * iig.transpose();
  return (4.0 / (lam2 * lam2)) * m;
}

}  // namespace

double intrinsic_dvr(const JetMap& map, Cplx z, double v_angle) {
  const SurfaceTensors st = surface_tensors(map, z);
  const Mat2 m = dvr_quadratic_form(st, z);
  const Vec2 v(std::cos(v_angle), std::sin(v_angle));
  return std::sqrt(v.dot(m * v));
}

std::pair<double, double> intrinsic_dvr_extremes(const JetMap& map, Cplx z) {
  const SurfaceTensors st = surface_tensors(map, z);
  const Mat2 m = dvr_quadratic_form(st, z);
  Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  return {std::sqrt(es.eigenvalues()(1)), std::sqrt(es.eigenvalues()(0))};
}

double schwarzian_tensor_norm(const JetMap& map, Cplx z) {
  const SurfaceTensors st = surface_tensors(map, z);
  // traceless symmetric: eigenvalues are +/- sqrt(B11^2 + B12^2)
  return std::hypot(st.b_frame(0, 0), st.b_frame(0, 1));
}

SurfaceConditionReport surface_condition_check(const JetMap& map, const GridParams& grid) {
  const ConditionReport chart = condition_report(map, grid);
  const std::vector<Cplx> pts = polar_grid(grid);

  SurfaceConditionReport rep;
  rep.t_used = chart.sup_t;
  rep.samples.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Cplx z = pts[i];
    const SurfaceTensors st = surface_tensors(map, z);
    SurfaceConditionSample& out = rep.samples[i];
    out.z = z;
    out.b_norm = std::hypot(st.b_frame(0, 0), st.b_frame(0, 1));
    out.abs_curvature = st.abs_K;
    out.lambda_sq = st.lambda_sq;
    out.lhs_over_lambda_sq = (out.b_norm + out.abs_curvature) / st.lambda_sq;
  });

  rep.max_slack = -std::numeric_limits<double>::infinity();
  for (const SurfaceConditionSample& s : rep.samples) {
    const double slack = s.lhs_over_lambda_sq - 2.0 * rep.t_used;
    if (slack > rep.max_slack) {
      rep.max_slack = slack;
      rep.worst_point = s.z;
    }
  }
  return rep;
}

std::optional<Cplx> classical_aw(const JetMap& h_spec, Cplx z) {
  if (!h_spec.analytic()) throw UsageError("classical_aw requires analytic data (g absent)");
  if (!(std::abs(z) > 1.0)) throw UsageError("classical_aw is the exterior formula (|z| > 1)");
  const Cplx zeta = 1.0 / std::conj(z);
  const WeierstrassJets wj = h_spec.jets(zeta);
  const Cplx fp = wj.h.derivative(1);
  if (fp == Cplx(0.0)) throw DegeneratePointError("vanishing h'", zeta);
  const double one_m = 1.0 - std::norm(zeta);
  const Cplx den = std::conj(zeta) - 0.5 * one_m * wj.h.derivative(2) / fp;
  if (std::abs(den) < 1e-300) return std::nullopt;
  return wj.h.value() + one_m * fp / den;
}

Cplx beltrami_classical(const JetMap& h_spec, Cplx z) {
  if (!h_spec.analytic()) throw UsageError("beltrami_classical requires analytic data (g absent)");
  const double one_m = 1.0 - std::norm(z);
  return -0.5 * one_m * one_m * schwarzian(h_spec, z);
}

double theoretical_bound(double t, double c) {
  if (!(t >= 0.0 && t < 1.0)) throw UsageError("theoretical_bound requires 0 <= t < 1");
  if (!(c >= 0.0)) throw UsageError("theoretical_bound requires C >= 0");
  return (2.0 * t + std::sqrt(2.0 * t) * (2.0 + c) + 2.0) / (2.0 * (1.0 - t));
}

double theoretical_bound_displayed(double t, double c) {
  if (!(t >= 0.0 && t < 1.0)) throw UsageError("theoretical_bound requires 0 <= t < 1");
  if (!(c >= 0.0)) throw UsageError("theoretical_bound requires C >= 0");
  return (2.0 * t + std::sqrt(2.0 * t) * (1.0 + c) + 2.0) / (2.0 * (1.0 - t));
}

double theoretical_bound_analytic(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw UsageError("theoretical_bound requires 0 <= t < 1");
  return (1.0 + t) / (1.0 - t);
}

std::string QcReport::to_json(const std::string& label) const {
  nlohmann::json j;
  if (!label.empty()) j["label"] = label;
  j["t"] = t;
  j["C"] = c;
  j["theoretical_bound"] = bound;
  j["theoretical_bound_derivation"] = bound_derivation;
  j["theoretical_bound_displayed"] = bound_displayed;
  j["samples"] = samples;
  j["max_ratio"] = max_ratio;
  j["argmax_z"] = {{"re", argmax_z.real()}, {"im", argmax_z.imag()}};
  nlohmann::json gaps = nlohmann::json::array();
  for (const auto& [eps, gap] : boundary_gaps) gaps.push_back({eps, gap});
  j["boundary_gaps"] = gaps;
  j["skipped"] = skipped;
  return j.dump(2);
}

QcReport qc_report(const ExtensionMap& ext, int samples, unsigned long long seed,
                   double exterior_r_max) {
  if (samples < 1) throw UsageError("qc_report requires at least one sample");
  QcReport rep;
  rep.t = ext.t();
  rep.c = ext.c_estimate();
  rep.bound_derivation = theoretical_bound(rep.t, rep.c);
  rep.bound_displayed = theoretical_bound_displayed(rep.t, rep.c);
  rep.bound = ext.map().analytic() ? theoretical_bound_analytic(rep.t) : rep.bound_derivation;
  rep.samples = samples;
  rep.skipped = 0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(1.005, exterior_r_max);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<Cplx> pts(static_cast<std::size_t>(samples));
  for (auto& z : pts) {
    const double r = radius(rng);
    const double th = angle(rng);
    z = Cplx(r * std::cos(th), r * std::sin(th));
  }

  std::vector<std::optional<DilatationSample>> results(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { results[i] = dilatation_at(ext, pts[i]); });

  rep.max_ratio = 0.0;
  rep.argmax_z = Cplx(0.0);
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) {
      ++rep.skipped;
      continue;
    }
    if (results[i]->ratio > rep.max_ratio) {
      rep.max_ratio = results[i]->ratio;
      rep.argmax_z = pts[i];
    }
  }

  for (const double eps : {0.1, 0.03, 0.01, 0.003})
    rep.boundary_gaps.emplace_back(eps, boundary_gap(ext, eps));
  return rep;
}

}  // namespace awlift
