#include "awlift/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace awlift {

namespace {

constexpr double kDegenerateGrad = 1e-12;

}  // namespace

ReflectionData reflect_point(const JetMap& map, Cplx z) {
  return reflect_point(map, z, lift_point(map, z));
}

ReflectionData reflect_point(const JetMap& map, Cplx z, const Vec3& lift_value) {
  ReflectionData rd;
  rd.z = z;
  rd.frame = frame_at(map, z, lift_value);
  rd.w = lift_value;
  const Vec2 ab = u_log_gradient(map, z);
  rd.alpha = ab.x();
  rd.beta = ab.y();
  const double n2 = ab.squaredNorm();
  if (std::sqrt(n2) < kDegenerateGrad) {
    rd.degenerate = true;
    rd.w_star = Point3OrInf::infinity();
    rd.diameter = std::numeric_limits<double>::infinity();
    return rd;
  }
  rd.degenerate = false;
  const double scale = rd.frame.e_sigma / n2;
  rd.w_star = Point3OrInf::finite(rd.w + scale * (rd.alpha * rd.frame.X + rd.beta * rd.frame.Y));
  rd.diameter = rd.frame.e_sigma / std::sqrt(n2);
  return rd;
}

Point3OrInf reflect_point_intrinsic(const JetMap& map, Cplx z, const Vec3& lift_value) {
  const SurfaceFrame fr = frame_at(map, z, lift_value);
  const SigmaData s = sigma_at(map, z);
  const double one_m = 1.0 - std::norm(z);
  // grad of log lambda_Sigma o lift in the chart, then pushed to the surface
  const double px = 2.0 * z.real() / one_m - s.grad_sigma.x();
  const double py = 2.0 * z.imag() / one_m - s.grad_sigma.y();
  const Vec3 grad = (px * fr.X + py * fr.Y) / fr.e_sigma;
  const double n2 = grad.squaredNorm();
  if (std::sqrt(n2) < 2.0 * kDegenerateGrad / fr.e_sigma) return Point3OrInf::infinity();
  return Point3OrInf::finite(lift_value + 2.0 * grad / n2);
}

Vec3 CircleData::sample(double phi) const {
  const Vec3 u1 = (w - center).normalized();
  const Vec3 u2 = plane_normal.cross(u1);
  return center + radius * (std::cos(phi) * u1 + std::sin(phi) * u2);
}

CircleData circle_at(const ReflectionData& rd) {
  CircleData c;
  c.w = rd.w;
  c.w_star = rd.w_star;
  if (rd.degenerate) {
    c.is_line = true;
    c.center = rd.w;
    c.radius = std::numeric_limits<double>::infinity();
    c.line_direction = rd.frame.N;
    c.plane_normal = Vec3::Zero();
    return c;
  }
  c.is_line = false;
  c.center = 0.5 * (rd.w + rd.w_star.p);
  c.radius = 0.5 * (rd.w_star.p - rd.w).norm();
  Vec3 n = (rd.w_star.p - rd.w).cross(rd.frame.N);
  n.normalize();
  // deterministic sign: first nonzero component positive
  for (int k = 0; k < 3; ++k) {
    if (std::abs(n[k]) > 1e-14) {
      if (n[k] < 0.0) n = -n;
      break;
    }
  }
  c.plane_normal = n;
  c.line_direction = Vec3::Zero();
  return c;
}

CircleData circle_at(const JetMap& map, Cplx z) { return circle_at(reflect_point(map, z)); }

Mobius3 Mobius3::translation(const Vec3& t) {
  Mobius3 m;
  m.steps_.push_back(Translate{t});
  return m;
}

Mobius3 Mobius3::rotation(const Mat3& R) {
  Mobius3 m;
  m.steps_.push_back(Rotate{R});
  return m;
}

Mobius3 Mobius3::dilation(double s) {
  if (s == 0.0) throw UsageError("dilation factor must be nonzero");
  Mobius3 m;
  m.steps_.push_back(Dilate{s});
  return m;
}

Mobius3 Mobius3::inversion() {
  Mobius3 m;
  m.steps_.push_back(Invert{});
  return m;
}

Mobius3 Mobius3::inversion_about(const Vec3& center) {
  return translation(-center).then(inversion());
}

Mobius3 Mobius3::then(const Mobius3& next) const {
  Mobius3 m = *this;
  m.steps_.insert(m.steps_.end(), next.steps_.begin(), next.steps_.end());
  return m;
}

Point3OrInf Mobius3::apply(const Point3OrInf& x) const {
  Point3OrInf cur = x;
  for (const Step& step : steps_) {
    if (std::holds_alternative<Translate>(step)) {
      if (cur.finite_point()) cur.p += std::get<Translate>(step).t;
    } else if (std::holds_alternative<Rotate>(step)) {
      if (cur.finite_point()) cur.p = std::get<Rotate>(step).R * cur.p;
    } else if (std::holds_alternative<Dilate>(step)) {
      if (cur.finite_point()) cur.p *= std::get<Dilate>(step).s;
    } else {
      // J swaps 0 and infinity
      if (!cur.finite_point()) {
        cur = Point3OrInf::finite(Vec3::Zero());
      } else {
        const double n2 = cur.p.squaredNorm();
        if (n2 == 0.0) {
          cur = Point3OrInf::infinity();
        } else {
          cur.p /= n2;
        }
      }
    }
  }
  return cur;
}

double Mobius3::conformal_factor(const Vec3& x) const {
  Point3OrInf cur = Point3OrInf::finite(x);
  double factor = 1.0;
  for (const Step& step : steps_) {
    if (!cur.finite_point()) return std::numeric_limits<double>::infinity();
    if (std::holds_alternative<Translate>(step)) {
      cur.p += std::get<Translate>(step).t;
    } else if (std::holds_alternative<Rotate>(step)) {
      cur.p = std::get<Rotate>(step).R * cur.p;
    } else if (std::holds_alternative<Dilate>(step)) {
      const double s = std::get<Dilate>(step).s;
      factor *= std::abs(s);
      cur.p *= s;
    } else {
      const double n2 = cur.p.squaredNorm();
      if (n2 == 0.0) return std::numeric_limits<double>::infinity();
      factor /= n2;
      cur.p /= n2;
    }
  }
  return factor;
}

Point3OrInf mobius3_apply(const Mobius3& T, const Point3OrInf& x) { return T.apply(x); }

double mobius3_conformal_factor(const Mobius3& T, const Vec3& x) {
  return T.conformal_factor(x);
}

namespace {

double criticality_from_tau(const std::function<double(Cplx)>& tau, Cplx z0, double step) {
  const Cplx dx(step, 0.0), dy(0.0, step);
  const double tx = (tau(z0 + dx) - tau(z0 - dx)) / (2.0 * step);
  const double ty = (tau(z0 + dy) - tau(z0 - dy)) / (2.0 * step);
  const double one_m = 1.0 - std::norm(z0);
  const Vec2 grad_log_u(z0.real() / one_m - 0.5 * tx, z0.imag() / one_m - 0.5 * ty);
  return grad_log_u.norm();
}

}  // namespace

double inversion_critical_test(const JetMap& map, Cplx z0, const Vec3& w1, double step) {
  const Vec3 anchor = lift_point(map, z0);
  auto surface = [&](Cplx z) { return lift_point_from(map, z0, anchor, z); };
  // guard against an ill-conditioned inversion center
  for (const Cplx z : {z0, z0 + Cplx(step, 0.0), z0 - Cplx(step, 0.0), z0 + Cplx(0.0, step),
                       z0 - Cplx(0.0, step)}) {
    if ((surface(z) - w1).norm() < 1e-6)
      throw UsageError("inversion center too close to the surface");
  }
  auto tau = [&](Cplx z) {
    return sigma_at(map, z).sigma - std::log((surface(z) - w1).squaredNorm());
  };
  return criticality_from_tau(tau, z0, step);
}

double inversion_critical_test(const JetMap& map, const Mobius3& T, Cplx z0, const Vec3& w1,
                               double step) {
  const Vec3 anchor = lift_point(map, z0);
  auto surface = [&](Cplx z) {
    const Point3OrInf img = T.apply(Point3OrInf::finite(lift_point_from(map, z0, anchor, z)));
    if (!img.finite_point()) throw UsageError("Möbius pole on the surface sample");
    return img.p;
  };
  for (const Cplx z : {z0, z0 + Cplx(step, 0.0), z0 - Cplx(step, 0.0), z0 + Cplx(0.0, step),
                       z0 - Cplx(0.0, step)}) {
    if ((surface(z) - w1).norm() < 1e-6)
      throw UsageError("inversion center too close to the surface");
  }
  auto tau = [&](Cplx z) {
    const Vec3 base = lift_point_from(map, z0, anchor, z);
    const double factor = T.conformal_factor(base);
    if (!std::isfinite(factor)) throw UsageError("Möbius pole on the surface sample");
    return sigma_at(map, z).sigma + std::log(factor) -
           std::log((surface(z) - w1).squaredNorm());
  };
  return criticality_from_tau(tau, z0, step);
}

double u_value_transformed(const JetMap& map, const Mobius3& T, Cplx z) {
  const double one_m = 1.0 - std::norm(z);
  if (one_m <= 0.0) throw UsageError("u is defined for |z| < 1");
  const double factor = T.conformal_factor(lift_point(map, z));
  if (!std::isfinite(factor)) return 0.0;  // pole on the surface: u degenerates
  return 1.0 / std::sqrt(one_m * factor * conformal_scale(map, z));
}

namespace {

struct NelderMeadResult {
  Cplx point;
  double value;
};

NelderMeadResult nelder_mead(const std::function<double(Cplx)>& f, Cplx start, double size) {
  auto eval = [&](const Vec2& p) {
    const Cplx z(p.x(), p.y());
    if (std::norm(z) >= 1.0) return std::numeric_limits<double>::infinity();
    return f(z);
  };
  std::array<Vec2, 3> pts = {Vec2(start.real(), start.imag()),
                             Vec2(start.real() + size, start.imag()),
                             Vec2(start.real(), start.imag() + size)};
  std::array<double, 3> val;
  for (int i = 0; i < 3; ++i) val[static_cast<std::size_t>(i)] = eval(pts[static_cast<std::size_t>(i)]);

  for (int iter = 0; iter < 600; ++iter) {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return val[static_cast<std::size_t>(a)] < val[static_cast<std::size_t>(b)];
    });
    const Vec2 best = pts[static_cast<std::size_t>(idx[0])];
    const Vec2 worst = pts[static_cast<std::size_t>(idx[2])];
    const Vec2 second = pts[static_cast<std::size_t>(idx[1])];

    // stop when the simplex collapses in hyperbolic diameter
    const Cplx zb(best.x(), best.y());
    double diam = 0.0;
    for (const Vec2& p : pts)
      diam = std::max(diam, hyperbolic_distance(zb, Cplx(p.x(), p.y())));
    if (diam < 1e-10) break;

    const Vec2 centroid = 0.5 * (best + second);
    const Vec2 refl = centroid + (centroid - worst);
    const double fr = eval(refl);
    if (fr < val[static_cast<std::size_t>(idx[0])]) {
      const Vec2 expand = centroid + 2.0 * (centroid - worst);
      const double fe = eval(expand);
      if (fe < fr) {
        pts[static_cast<std::size_t>(idx[2])] = expand;
        val[static_cast<std::size_t>(idx[2])] = fe;
      } else {
        pts[static_cast<std::size_t>(idx[2])] = refl;
        val[static_cast<std::size_t>(idx[2])] = fr;
      }
    } else if (fr < val[static_cast<std::size_t>(idx[1])]) {
      pts[static_cast<std::size_t>(idx[2])] = refl;
      val[static_cast<std::size_t>(idx[2])] = fr;
    } else {
      const Vec2 contract = centroid + 0.5 * (worst - centroid);
      const double fc = eval(contract);
      if (fc < val[static_cast<std::size_t>(idx[2])]) {
        pts[static_cast<std::size_t>(idx[2])] = contract;
        val[static_cast<std::size_t>(idx[2])] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          pts[static_cast<std::size_t>(idx[i])] =
              best + 0.5 * (pts[static_cast<std::size_t>(idx[i])] - best);
          val[static_cast<std::size_t>(idx[i])] = eval(pts[static_cast<std::size_t>(idx[i])]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (val[static_cast<std::size_t>(i)] < val[static_cast<std::size_t>(best)]) best = i;
  return {Cplx(pts[static_cast<std::size_t>(best)].x(), pts[static_cast<std::size_t>(best)].y()),
          val[static_cast<std::size_t>(best)]};
}

}  // namespace

std::optional<Cplx> critical_point_find(const std::function<double(Cplx)>& u) {
  const int n_r = 64, n_a = 64;
  const double r_max = 0.99;

  // coarse polar scan
  std::vector<Cplx> pts;
  std::vector<double> vals;
  pts.reserve(1 + static_cast<std::size_t>(n_r) * n_a);
  pts.emplace_back(0.0, 0.0);
  for (int i = 1; i <= n_r; ++i) {
    const double r = r_max * i / n_r;
    for (int j = 0; j < n_a; ++j) {
      const double th = 2.0 * M_PI * j / n_a;
      pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  vals.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = u(pts[i]);

  std::size_t argmin = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (vals[i] < vals[argmin]) argmin = i;

  // minimum escaping through the outermost ring means no interior critical point
  const double argmin_r = std::abs(pts[argmin]);
  if (argmin_r > r_max * (n_r - 0.5) / n_r) return std::nullopt;

  // descend from the few best well-separated seeds and insist they agree
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

  std::vector<Cplx> seeds;
  for (std::size_t i = 0; i < order.size() && seeds.size() < 4; ++i) {
    const Cplx cand = pts[order[i]];
    bool separated = true;
    for (const Cplx s : seeds)
      if (hyperbolic_distance(cand, s) < 0.3) separated = false;
    if (separated) seeds.push_back(cand);
  }

  std::vector<Cplx> found;
  for (const Cplx seed : seeds) {
    const NelderMeadResult res = nelder_mead(u, seed, 0.02);
    if (!std::isfinite(res.value)) continue;
    if (std::abs(res.point) > 0.999) continue;
    // accept only genuine stationary points
    const double h = 1e-6;
    const double gx = (u(res.point + Cplx(h, 0)) - u(res.point - Cplx(h, 0))) / (2.0 * h);
    const double gy = (u(res.point + Cplx(0, h)) - u(res.point - Cplx(0, h))) / (2.0 * h);
    if (std::hypot(gx, gy) > 1e-4 * std::max(1.0, std::abs(res.value))) continue;
    bool duplicate = false;
    for (const Cplx p : found)
      if (hyperbolic_distance(p, res.point) <= 1e-4) duplicate = true;
    if (!duplicate) found.push_back(res.point);
  }

  if (found.size() >= 2)
    throw InvariantViolationError("two distinct critical points of u found");
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::optional<Cplx> critical_point_find(const JetMap& map) {
  return critical_point_find([&](Cplx z) { return u_value(map, z); });
}

std::optional<Cplx> critical_point_find(const JetMap& map, const Mobius3& T) {
  return critical_point_find([&](Cplx z) { return u_value_transformed(map, T, z); });
}

}  // namespace awlift
