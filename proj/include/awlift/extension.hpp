#pragma once

#include <optional>
#include <string>
#include <vector>

#include "awlift/harmonic.hpp"
#include "awlift/lift.hpp"
#include "awlift/reflection.hpp"

namespace awlift {

/// The full extension: the lift on the closed disk, the reflected surface
/// through 1/conj(z) outside, with the condition report cached.
class ExtensionMap {
 public:
  explicit ExtensionMap(const JetMap& map, const GridParams& grid = {});
  ExtensionMap(const JetMap&& map, const GridParams& grid = {}) = delete;  // no temporaries

  const JetMap& map() const { return map_; }
  const ConditionReport& report() const { return report_; }
  double t() const { return report_.sup_t; }
  double c_estimate() const { return report_.c_estimate; }

  Point3OrInf eval(Cplx z) const;
  Point3OrInf eval_infinity() const;  // R(lift(0))

 private:
  const JetMap& map_;
  ConditionReport report_;
};

Point3OrInf extend_eval(const ExtensionMap& ext, Cplx z);

struct DilatationSample {
  Cplx z;
  Eigen::Matrix<double, 3, 2> jacobian;
  double s_max;
  double s_min;
  double ratio;
};

/// Singular values of the extension's Jacobian by central differences, with
/// the step shrinking near the unit circle.  Empty when a neighbor is
/// degenerate.
std::optional<DilatationSample> dilatation_at(const ExtensionMap& ext, Cplx z);

/// Max over 256 angles of the chordal distance between the lift and its
/// reflection at |z| = 1 - epsilon.
double boundary_gap(const ExtensionMap& ext, double epsilon);

/// |D_V R| from the surface-side formula
///   (4/Lambda^4) { |B - |K|V/2 + 2 lambda^2 V|^2 + II(V, grad log lambda)^2 }
/// with V = cos(angle) X + sin(angle) Y.
double intrinsic_dvr(const JetMap& map, Cplx z, double v_angle);

/// Exact extremes of |D_V R| over unit tangent directions (eigenvalues of
/// the underlying quadratic form).
std::pair<double, double> intrinsic_dvr_extremes(const JetMap& map, Cplx z);

/// Tensor norm of B(log lambda_Sigma) in the Euclidean orthonormal frame
/// (largest absolute eigenvalue); equals e^{-2 sigma} |Sf|.
double schwarzian_tensor_norm(const JetMap& map, Cplx z);

struct SurfaceConditionSample {
  Cplx z;
  double b_norm;
  double abs_curvature;
  double lambda_sq;
  double lhs_over_lambda_sq;  // (|B| + |K|) / lambda^2 = 2 margin_t
};

struct SurfaceConditionReport {
  double t_used;
  double max_slack;  // max over grid of (|B| + |K|)/lambda^2 - 2 t
  Cplx worst_point;
  std::vector<SurfaceConditionSample> samples;
};

SurfaceConditionReport surface_condition_check(const JetMap& map, const GridParams& grid);

/// Classical Ahlfors-Weill extension value for analytic data, at |z| > 1:
///   f(zeta) + (1-|zeta|^2) f'(zeta) / (conj(zeta) - (1-|zeta|^2) f''(zeta)/(2 f'(zeta))),
/// zeta = 1/conj(z).  Empty on a vanishing denominator (point at infinity).
std::optional<Cplx> classical_aw(const JetMap& h_spec, Cplx z);

/// mu(1/conj(z)) = -(1-|z|^2)^2 Sf(z) / 2 for analytic data.
Cplx beltrami_classical(const JetMap& h_spec, Cplx z);

/// (2t + sqrt(2t)(2 + C) + 2) / (2(1 - t)) — the derivation-consistent form.
double theoretical_bound(double t, double c);
/// Variant with the (1 + C) factor as displayed in print; reported alongside.
double theoretical_bound_displayed(double t, double c);
/// (1 + t)/(1 - t): curvature and second-fundamental-form terms drop for
/// analytic (planar) data.
double theoretical_bound_analytic(double t);

struct QcReport {
  double t;
  double c;
  double bound;            // operative bound (analytic form for planar data)
  double bound_derivation; // (2+C) variant
  double bound_displayed;  // (1+C) variant
  int samples;
  double max_ratio;
  Cplx argmax_z;
  std::vector<std::pair<double, double>> boundary_gaps;  // (epsilon, gap)
  int skipped;

  std::string to_json(const std::string& label = {}) const;
  bool within_bound(double slack = 1.02) const { return max_ratio <= bound * slack; }
};

QcReport qc_report(const ExtensionMap& ext, int samples, unsigned long long seed,
                   double exterior_r_max = 1.5);

}  // namespace awlift
