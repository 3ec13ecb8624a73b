#include <doctest.h>

#include <cmath>
#include <random>

#include "awlift/extension.hpp"

using namespace awlift;

namespace {

MapSpec identity_spec() { return MapSpec::from_json_text(R"({"h":"z"})"); }
MapSpec enneper_half() {
  return MapSpec::from_json_text(R"({"h":"0.5*z","g":"z^3/24","q":"0.5*z"})");
}
MapSpec power_spec(double a) {
  return MapSpec::from_json_text(R"({"h":"((1+z)/(1-z))^)" + format_double(a) + R"("})");
}
MapSpec atanh_spec() { return MapSpec::from_json_text(R"x({"h":"atanh(z)"})x"); }

Cplx random_annulus_point(std::mt19937_64& rng, double r_min, double r_max) {
  std::uniform_real_distribution<double> ur(r_min, r_max), ut(0.0, 2.0 * M_PI);
  const double r = ur(rng), t = ut(rng);
  return Cplx(r * std::cos(t), r * std::sin(t));
}

}  // namespace

TEST_CASE("the identity extends to the identity") {
  const MapSpec spec = identity_spec();
  const ExtensionMap ext(spec);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Cplx z = random_annulus_point(rng, 1.05, 3.0);
    const Point3OrInf p = extend_eval(ext, z);
    REQUIRE(p.finite_point());
    CHECK(std::abs(p.p.x() - z.real()) < 1e-10 * std::abs(z));
    CHECK(std::abs(p.p.y() - z.imag()) < 1e-10 * std::abs(z));
    CHECK(std::abs(p.p.z()) < 1e-12);
  }
  // interior agrees with the lift
  const Point3OrInf q = extend_eval(ext, Cplx(0.25, -0.5));
  CHECK((q.p - Vec3(0.25, -0.5, 0.0)).norm() < 1e-13);
}

TEST_CASE("the scaled Enneper extension sends infinity to infinity") {
  const MapSpec enneper = enneper_half();
  const ExtensionMap ext(enneper);
  CHECK(!ext.eval_infinity().finite_point());
  // identity too: u is radially symmetric with its critical point at 0
  const MapSpec id = identity_spec();
  const ExtensionMap id_ext(id);
  CHECK(!id_ext.eval_infinity().finite_point());
}

TEST_CASE("interior dilatation is 1 (conformality)") {
  std::mt19937_64 rng(5);
  for (const MapSpec& spec : {enneper_half(), power_spec(0.8)}) {
    const ExtensionMap ext(spec);
    for (int i = 0; i < 50; ++i) {
      const Cplx z = random_annulus_point(rng, 0.05, 0.9);
      const auto d = dilatation_at(ext, z);
      REQUIRE(d.has_value());
      CHECK(d->ratio == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(d->s_max >= d->s_min);
      CHECK(d->s_min > 0.0);
    }
  }
}

TEST_CASE("identity exterior dilatation is exactly conformal") {
  const MapSpec spec = identity_spec();
  const ExtensionMap ext(spec);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Cplx z = random_annulus_point(rng, 1.02, 2.0);
    const auto d = dilatation_at(ext, z);
    REQUIRE(d.has_value());
    CHECK(d->ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("power map exterior dilatation approaches (1+t)/(1-t) without exceeding it") {
  const MapSpec spec = power_spec(0.8);
  const ExtensionMap ext(spec);
  CHECK(ext.t() == doctest::Approx(0.36).epsilon(1e-6));
  const double bound = theoretical_bound_analytic(ext.t());
  CHECK(bound == doctest::Approx(2.125).epsilon(1e-6));

  std::mt19937_64 rng(11);
  double max_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Cplx z = random_annulus_point(rng, 1.02, 1.5);
    const auto d = dilatation_at(ext, z);
    if (d) max_ratio = std::max(max_ratio, d->ratio);
  }
  // the real-axis exterior points realize |mu| = t
  const auto on_axis = dilatation_at(ext, Cplx(1.25, 0.0));
  REQUIRE(on_axis.has_value());
  CHECK(on_axis->ratio == doctest::Approx(2.125).epsilon(1e-4));
  CHECK(max_ratio <= bound + 0.02);
}

TEST_CASE("values just inside and outside the circle differ by at most the gap") {
  const MapSpec spec = enneper_half();
  const ExtensionMap ext(spec);
  const double eps = 0.02;
  const double gap = boundary_gap(ext, eps);
  for (const double th : {0.0, 0.9, 2.2, 4.1, 5.8}) {
    const Cplx in = (1.0 - eps) * Cplx(std::cos(th), std::sin(th));
    const Cplx out = 1.0 / std::conj(in);  // mirror point, |out| = 1/(1-eps)
    const double d = chordal_distance(extend_eval(ext, in), extend_eval(ext, out));
    CHECK(d <= gap + 1e-12);
  }
}

TEST_CASE("boundary gaps shrink toward the boundary") {
  for (const MapSpec& spec : {identity_spec(), enneper_half()}) {
    const ExtensionMap ext(spec);
    const double g1 = boundary_gap(ext, 0.1);
    const double g2 = boundary_gap(ext, 0.03);
    const double g3 = boundary_gap(ext, 0.01);
    const double g4 = boundary_gap(ext, 0.003);
    CHECK(g2 < g1);
    CHECK(g3 < g2);
    CHECK(g4 < g3);
    CHECK(g4 < 0.05);
  }
  // identity: gap is (1-|w|^2)/|w| scaled chordally, O(epsilon)
  const MapSpec id = identity_spec();
  const ExtensionMap id_ext(id);
  CHECK(boundary_gap(id_ext, 0.01) < 0.05);
  CHECK_THROWS_AS(boundary_gap(id_ext, 0.7), UsageError);
}

TEST_CASE("intrinsic |D_V R| for the identity is the inversion derivative") {
  const MapSpec spec = identity_spec();
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const Cplx z = random_annulus_point(rng, 0.1, 0.9);
    for (const double angle : {0.0, M_PI / 4.0, M_PI / 2.0, 1.1}) {
      CHECK(intrinsic_dvr(spec, z, angle) ==
            doctest::Approx(1.0 / std::norm(z)).epsilon(1e-10));
    }
    const auto [mx, mn] = intrinsic_dvr_extremes(spec, z);
    CHECK(mx / mn == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Schwarzian tensor norm equals e^{-2 sigma} |Sf|") {
  std::mt19937_64 rng(17);
  for (const MapSpec& spec : {enneper_half(), power_spec(0.8)}) {
    for (int i = 0; i < 200; ++i) {
      const Cplx z = random_annulus_point(rng, 0.02, 0.9);
      const SigmaData s = sigma_at(spec, z);
      const double expect = std::exp(-2.0 * s.sigma) * std::abs(schwarzian(spec, z));
      const double got = schwarzian_tensor_norm(spec, z);
      CHECK(std::abs(got - expect) <= 1e-8 * std::max(1.0, expect));
    }
  }
}

TEST_CASE("intrinsic extremes cross-validate the finite-difference dilatation") {
  const MapSpec spec = enneper_half();
  const ExtensionMap ext(spec);
  for (const Cplx z : {Cplx(0.5, 0.0), Cplx(0.3, 0.4), Cplx(-0.55, 0.2)}) {
    const auto [mx, mn] = intrinsic_dvr_extremes(spec, z);
    const Cplx z_ext = 1.0 / std::conj(z);
    const auto d = dilatation_at(ext, z_ext);
    REQUIRE(d.has_value());
    CHECK(std::abs(d->ratio - mx / mn) <= 5e-3 * (mx / mn));
    // the individual angles stay inside the extremes
    for (const double angle : {0.0, 0.8, M_PI / 2.0}) {
      const double v = intrinsic_dvr(spec, z, angle);
      CHECK(v <= mx * (1.0 + 1e-12));
      CHECK(v >= mn * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("intrinsic formula degenerates at critical points of u") {
  CHECK_THROWS_AS(intrinsic_dvr(enneper_half(), Cplx(0.0), 0.3), DegeneratePointError);
}

TEST_CASE("surface-side condition is the chart condition in disguise") {
  GridParams grid;
  grid.n_radial = 24;
  grid.n_angular = 48;
  grid.r_max = 0.95;

  // identity: left side identically zero
  const SurfaceConditionReport id_rep = surface_condition_check(identity_spec(), grid);
  for (const SurfaceConditionSample& s : id_rep.samples)
    CHECK(std::abs(s.lhs_over_lambda_sq) < 1e-12);

  // scaled Enneper: (|B| + |K|)/lambda^2 equals 2 margin_t pointwise
  const MapSpec spec = enneper_half();
  const SurfaceConditionReport rep = surface_condition_check(spec, grid);
  const ConditionReport chart = condition_report(spec, grid);
  REQUIRE(rep.samples.size() == chart.samples.size());
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    CHECK(std::abs(rep.samples[i].lhs_over_lambda_sq - 2.0 * chart.samples[i].margin_t) < 1e-9);
  }
  CHECK(rep.max_slack <= 1e-9);

  // power map: constant margin along the diameter, sup = 2t
  const SurfaceConditionReport pw = surface_condition_check(power_spec(0.8), grid);
  double max_lhs = 0.0;
  for (const SurfaceConditionSample& s : pw.samples) max_lhs = std::max(max_lhs, s.lhs_over_lambda_sq);
  CHECK(max_lhs == doctest::Approx(0.72).epsilon(1e-6));
}

TEST_CASE("classical Ahlfors-Weill formula") {
  // f = z extends to the identity
  CHECK(classical_aw(identity_spec(), Cplx(2.0)).value() == Cplx(2.0));

  // power map: the pipeline extension equals the classical formula
  const MapSpec pw = power_spec(0.8);
  const ExtensionMap ext(pw);
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    const Cplx z = random_annulus_point(rng, 1.05, 2.5);
    const auto classical = classical_aw(pw, z);
    REQUIRE(classical.has_value());
    const Point3OrInf pipeline = extend_eval(ext, z);
    REQUIRE(pipeline.finite_point());
    CHECK(std::abs(Cplx(pipeline.p.x(), pipeline.p.y()) - *classical) <=
          1e-8 * std::max(1.0, std::abs(*classical)));
    CHECK(std::abs(pipeline.p.z()) < 1e-10);
  }

  // atanh maps the disk onto a parallel strip (the Nehari equality case):
  // on the exterior real axis both routes send the point to infinity
  const MapSpec at = atanh_spec();
  const ExtensionMap at_ext(at);
  CHECK(!classical_aw(at, Cplx(2.0)).has_value());
  CHECK(!extend_eval(at_ext, Cplx(2.0)).finite_point());
  // off the axis both are finite and equal
  for (const Cplx z : {Cplx(2.0, 1.0), Cplx(1.3, -0.8), Cplx(-0.5, 1.6)}) {
    const auto cl = classical_aw(at, z);
    REQUIRE(cl.has_value());
    const Point3OrInf pl = extend_eval(at_ext, z);
    REQUIRE(pl.finite_point());
    CHECK(std::abs(Cplx(pl.p.x(), pl.p.y()) - *cl) <= 1e-8 * std::max(1.0, std::abs(*cl)));
  }

  CHECK_THROWS_AS(classical_aw(enneper_half(), Cplx(2.0)), UsageError);
  CHECK_THROWS_AS(classical_aw(identity_spec(), Cplx(0.5)), UsageError);
}

TEST_CASE("classical Beltrami coefficient of the power family") {
  const MapSpec pw = power_spec(0.8);
  CHECK(std::abs(beltrami_classical(identity_spec(), Cplx(0.3, 0.2))) == 0.0);

  // on the real axis: mu = -(1 - alpha^2) exactly
  for (const double x : {-0.6, -0.2, 0.0, 0.3, 0.7}) {
    const Cplx mu = beltrami_classical(pw, Cplx(x, 0.0));
    CHECK(mu.real() == doctest::Approx(-0.36).epsilon(1e-9));
    CHECK(std::abs(mu.imag()) < 1e-12);
  }

  // |mu| <= t everywhere, with t the sup margin
  std::mt19937_64 rng(23);
  for (const double alpha : {0.6, 0.8, 0.9}) {
    const MapSpec spec = power_spec(alpha);
    const double t = 1.0 - alpha * alpha;
    for (int i = 0; i < 500; ++i) {
      const Cplx z = random_annulus_point(rng, 0.0, 0.95);
      CHECK(std::abs(beltrami_classical(spec, z)) <= t * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("theoretical bounds") {
  CHECK(theoretical_bound(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(theoretical_bound(0.5, 0.5) == doctest::Approx(5.5).epsilon(1e-12));
  CHECK(theoretical_bound_analytic(0.36) == doctest::Approx(2.125).epsilon(1e-12));
  CHECK(theoretical_bound_displayed(0.5, 0.5) == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(theoretical_bound(0.5, 0.5) > theoretical_bound_displayed(0.5, 0.5));
  CHECK_THROWS_AS(theoretical_bound(1.0, 0.0), UsageError);
  CHECK_THROWS_AS(theoretical_bound(-0.1, 0.0), UsageError);
  CHECK_THROWS_AS(theoretical_bound(0.5, -1.0), UsageError);
}

TEST_CASE("gradient bound when the critical point sits at the origin") {
  // |grad sigma| <= 2|z|/(1-|z|^2) for the scaled Enneper family
  std::mt19937_64 rng(29);
  for (const double r : {0.3, 0.5, 0.6}) {
    const MapSpec spec = MapSpec::from_json_text(
        R"({"h":")" + format_double(r) + R"(*z","g":")" + format_double(r * r * r / 3.0) +
        R"(*z^3","q":")" + format_double(r) + R"(*z"})");
    for (int i = 0; i < 500; ++i) {
      const Cplx z = random_annulus_point(rng, 0.0, 0.97);
      const double lhs = sigma_at(spec, z).grad_sigma.norm();
      CHECK(lhs <= 2.0 * std::abs(z) / (1.0 - std::norm(z)) + 1e-12);
    }
  }
}

TEST_CASE("qc report for the scaled Enneper respects the derived bound") {
  const MapSpec spec = enneper_half();
  const ExtensionMap ext(spec);
  const QcReport rep = qc_report(ext, 100, 12345);
  CHECK(rep.t == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(rep.c <= 0.5 + 1e-6);
  CHECK(rep.bound <= theoretical_bound(0.5, 0.5) + 1e-9);
  CHECK(rep.max_ratio <= rep.bound * 1.02);
  CHECK(rep.within_bound());
  CHECK(rep.boundary_gaps.size() == 4);
  CHECK(rep.boundary_gaps.back().second < 0.05);
  const std::string json = rep.to_json("enneper");
  CHECK(json.find("\"theoretical_bound\"") != std::string::npos);
  CHECK(json.find("\"theoretical_bound_displayed\"") != std::string::npos);
  CHECK(json.find("\"max_ratio\"") != std::string::npos);

  // determinism: same seed, same report
  const QcReport again = qc_report(ext, 100, 12345);
  CHECK(again.max_ratio == rep.max_ratio);
  CHECK(again.argmax_z == rep.argmax_z);
}
