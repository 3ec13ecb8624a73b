#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "awlift/hyperbolic.hpp"
#include "awlift/mapspec.hpp"

namespace awlift {

/// Conformal factor sigma and its Wirtinger derivatives at a point, for
/// e^sigma = |h'| + |g'| = |h'| (1 + |q|^2).
struct SigmaData {
  double sigma = 0.0;
  Cplx sigma_z{};
  Cplx sigma_zz{};
  double sigma_zzbar = 0.0;
  Vec2 grad_sigma = Vec2::Zero();  // (sigma_x, sigma_y) = (2 Re sigma_z, -2 Im sigma_z)
  double laplacian = 0.0;          // 4 sigma_zzbar = 4|q'|^2/(1+|q|^2)^2
};

SigmaData sigma_at(const JetMap& map, Cplx z);

/// e^sigma.
double conformal_scale(const JetMap& map, Cplx z);

/// Harmonic Schwarzian Sf = 2 (sigma_zz - sigma_z^2).
Cplx schwarzian(const JetMap& map, Cplx z);

/// e^{2 sigma} |K| = 4 |q'|^2 / (1 + |q|^2)^2 (zero for analytic data).
double curvature_density(const JetMap& map, Cplx z);

struct GridParams {
  int n_radial = 64;
  int n_angular = 128;
  double r_max = 0.995;
  double exterior_r_max = 1.5;

  void validate() const {
    if (n_radial < 2 || n_angular < 3) throw UsageError("grid requires n_radial >= 2, n_angular >= 3");
    if (!(r_max > 0.0 && r_max < 1.0)) throw UsageError("grid requires 0 < r_max < 1");
    if (!(exterior_r_max > 1.0)) throw UsageError("grid requires exterior_r_max > 1");
  }
};

/// Polar evaluation grid: the origin plus Chebyshev-spaced radii clustering
/// toward r_max.
std::vector<Cplx> polar_grid(const GridParams& grid);

struct ConditionSample {
  Cplx z;
  double sigma;
  double abs_schwarzian;
  double curv_density;
  double margin_t;        // ((1-|z|^2)^2 / 2) (|Sf| + e^{2 sigma}|K|)
  double grad_sigma_norm;
};

struct ConditionReport {
  GridParams grid;
  std::vector<ConditionSample> samples;
  double sup_t = 0.0;
  Cplx worst_point{};
  double c_estimate = 0.0;  // sup (1-|z|^2) |grad sigma|
  bool nehari_ok = false;   // sup_t <= 1 + 1e-9
  bool aw_ok = false;       // sup_t < 1 (with the same 1e-9 guard band)

  std::string to_csv() const;
  std::string summary_json(const std::string& label = {}) const;
};

ConditionReport condition_report(const JetMap& map, const GridParams& grid);

/// u = ((1-|z|^2) e^sigma)^{-1/2}.
double u_value(const JetMap& map, Cplx z);

/// grad log u = (alpha, beta), alpha = x/(1-|z|^2) - sigma_x/2.
Vec2 u_log_gradient(const JetMap& map, Cplx z);

/// Centered second differences of u along the geodesic with ideal endpoints
/// (a, b), sampled at uniform hyperbolic-arclength steps.
std::vector<double> convexity_profile(const JetMap& map, Cplx a, Cplx b, int n_samples,
                                      double step = 0.05);
std::vector<double> convexity_profile(const std::function<double(Cplx)>& u, Cplx a, Cplx b,
                                      int n_samples, double step = 0.05);

struct S1Sample {
  double direct;          // Ahlfors S1 from inner products of derivatives
  double via_curvature;   // (v'/v)' - (v'/v)^2/2 + v^2 kappa^2/2
};

/// Ahlfors S1 of the lift restricted to the real diameter, by two routes.
S1Sample s1_along_diameter(const JetMap& map, double x);

/// Evaluator for f o T, T(z) = e^{i theta}(z + a)/(1 + conj(a) z), built by
/// jet composition; satisfies S(f o T) = (Sf o T) T'^2.
class PrecomposedMap : public JetMap {
 public:
  PrecomposedMap(const JetMap& base, Cplx a, double theta);
  PrecomposedMap(const JetMap&& base, Cplx a, double theta) = delete;  // no temporaries
  WeierstrassJets jets(Cplx z) const override;
  bool analytic() const override { return base_.analytic(); }
  const DiskAutomorphism& automorphism() const { return mobius_; }

 private:
  const JetMap& base_;
  DiskAutomorphism mobius_;
};

PrecomposedMap mobius_precompose(const JetMap& map, Cplx a, double theta);

}  // namespace awlift
