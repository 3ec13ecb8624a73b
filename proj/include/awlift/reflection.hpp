#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "awlift/harmonic.hpp"
#include "awlift/lift.hpp"

namespace awlift {

/// Reflected point w* of w across the boundary of the lifted surface,
/// through the circle family.  Degenerate means grad log u = 0, in which
/// case w* is the point at infinity and the circle is a line.
struct ReflectionData {
  Cplx z;
  Vec3 w;
  double alpha;
  double beta;
  Point3OrInf w_star;
  double diameter;  // e^sigma / |(alpha, beta)|, +inf when degenerate
  bool degenerate;
  SurfaceFrame frame;
};

/// The unique Euclidean circle orthogonal to the surface at w meeting it
/// only there; a line through w in direction N in the degenerate case.
struct CircleData {
  Vec3 center;
  double radius;
  Vec3 plane_normal;
  bool is_line;
  Vec3 w;
  Point3OrInf w_star;
  Vec3 line_direction;  // meaningful when is_line

  /// Point at angle phi on the circle, measured from w about the center.
  Vec3 sample(double phi) const;
};

ReflectionData reflect_point(const JetMap& map, Cplx z);
ReflectionData reflect_point(const JetMap& map, Cplx z, const Vec3& lift_value);

/// Reflection via the intrinsic form w + 2 J(grad log lambda_Sigma), as an
/// independent route to the same point.
Point3OrInf reflect_point_intrinsic(const JetMap& map, Cplx z, const Vec3& lift_value);

CircleData circle_at(const JetMap& map, Cplx z);
CircleData circle_at(const ReflectionData& rd);

/// Möbius transformation of R^3 ∪ {∞} as a chain of translations,
/// rotations, dilations, and the inversion J(x) = x/|x|^2.
class Mobius3 {
 public:
  struct Translate { Vec3 t; };
  struct Rotate { Mat3 R; };
  struct Dilate { double s; };
  struct Invert {};
  using Step = std::variant<Translate, Rotate, Dilate, Invert>;

  Mobius3() = default;

  static Mobius3 translation(const Vec3& t);
  static Mobius3 rotation(const Mat3& R);
  static Mobius3 dilation(double s);
  static Mobius3 inversion();
  /// I(w) = (w - center)/|w - center|^2.
  static Mobius3 inversion_about(const Vec3& center);

  /// Composition: (a.then(b))(x) = b(a(x)).
  Mobius3 then(const Mobius3& next) const;

  Point3OrInf apply(const Point3OrInf& x) const;
  Vec3 apply(const Vec3& x) const { return apply(Point3OrInf::finite(x)).p; }

  /// |T'(x)|, multiplicative along the chain; +inf at a pole.
  double conformal_factor(const Vec3& x) const;

  const std::vector<Step>& steps() const { return steps_; }

 private:
  std::vector<Step> steps_;
};

Point3OrInf mobius3_apply(const Mobius3& T, const Point3OrInf& x);
double mobius3_conformal_factor(const Mobius3& T, const Vec3& x);

/// |grad log u_{I o lift}|(z0) for the inversion I about w1, computed by
/// central finite differences of tau = sigma - log |lift - w1|^2.  Vanishes
/// exactly when w1 lies on the circle C_{lift(z0)} away from its base point.
double inversion_critical_test(const JetMap& map, Cplx z0, const Vec3& w1, double step = 1e-5);

/// Same criticality measure for a Möbius-transformed surface, with
/// log-conformal factor log|T'| o lift added to sigma.
double inversion_critical_test(const JetMap& map, const Mobius3& T, Cplx z0, const Vec3& w1,
                               double step = 1e-5);

/// Minimizes u over the disk: coarse polar seed plus Nelder-Mead descent.
/// Returns the unique interior critical point, or nothing when u keeps
/// decreasing toward the boundary (unbounded image).  Two distinct critical
/// points raise InvariantViolationError.
std::optional<Cplx> critical_point_find(const std::function<double(Cplx)>& u);
std::optional<Cplx> critical_point_find(const JetMap& map);
std::optional<Cplx> critical_point_find(const JetMap& map, const Mobius3& T);

/// u_{T o lift}(z) = ((1-|z|^2) e^tau)^{-1/2}, e^tau = |T'|(lift) e^sigma.
double u_value_transformed(const JetMap& map, const Mobius3& T, Cplx z);

}  // namespace awlift
