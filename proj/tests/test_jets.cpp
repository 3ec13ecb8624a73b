#include <doctest.h>

#include <random>

#include "awlift/jet.hpp"

using namespace awlift;

namespace {

HoloJet random_jet(std::mt19937_64& rng, Cplx point, double value_radius = 2.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HoloJet j(point, HoloJet::kMaxOrder);
  j.set_coeff(0, value_radius * 0.5 * Cplx(u(rng), u(rng)));
  for (int k = 1; k <= HoloJet::kMaxOrder; ++k) j.set_coeff(k, Cplx(u(rng), u(rng)));
  return j;
}

bool jet_close(const HoloJet& a, const HoloJet& b, double tol) {
  for (int k = 0; k <= HoloJet::kMaxOrder; ++k)
    if (std::abs(a.coeff(k) - b.coeff(k)) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("jet addition is coefficient-wise") {
  HoloJet a = HoloJet::constant(Cplx(0.0), Cplx(1.0));
  HoloJet b(Cplx(0.0), 3);
  b.set_coeff(1, 1.0);
  const HoloJet s = jet_add(a, b);
  CHECK(s.coeff(0) == Cplx(1.0));
  CHECK(s.coeff(1) == Cplx(1.0));
  CHECK(s.coeff(2) == Cplx(0.0));
  CHECK(s.coeff(3) == Cplx(0.0));
}

TEST_CASE("jet of z plus jet of -z cancels") {
  const HoloJet z = HoloJet::variable(Cplx(2.0));
  const HoloJet s = jet_add(z, jet_neg(z));
  for (int k = 0; k <= 3; ++k) CHECK(s.coeff(k) == Cplx(0.0));
}

TEST_CASE("z^2 + z^3 at 1 has Taylor coefficients (2, 5, 4, 1)") {
  const HoloJet z = HoloJet::variable(Cplx(1.0));
  const HoloJet s = jet_add(jet_mul(z, z), jet_mul(jet_mul(z, z), z));
  CHECK(s.coeff(0) == Cplx(2.0));
  CHECK(s.coeff(1) == Cplx(5.0));
  CHECK(s.coeff(2) == Cplx(4.0));
  CHECK(s.coeff(3) == Cplx(1.0));
}

TEST_CASE("square of z at 1 is the jet of z^2") {
  const HoloJet z = HoloJet::variable(Cplx(1.0));
  const HoloJet s = jet_mul(z, z);
  CHECK(s.value() == Cplx(1.0));
  CHECK(s.derivative(1) == Cplx(2.0));
  CHECK(s.derivative(2) == Cplx(2.0));
  CHECK(s.derivative(3) == Cplx(0.0));
}

TEST_CASE("polynomial jets equal symbolic derivatives") {
  // p(z) = (2+i) z^3 - 3 z^2 + (1-i) z + 5 at a few points
  const Cplx c3(2.0, 1.0), c2(-3.0, 0.0), c1(1.0, -1.0), c0(5.0, 0.0);
  for (const Cplx z0 : {Cplx(0.3, -0.2), Cplx(1.5, 0.0), Cplx(-0.7, 1.1)}) {
    const HoloJet z = HoloJet::variable(z0);
    const HoloJet p = jet_add(
        jet_add(jet_scale(jet_mul(jet_mul(z, z), z), c3), jet_scale(jet_mul(z, z), c2)),
        jet_add(jet_scale(z, c1), HoloJet::constant(z0, c0)));
    CHECK(std::abs(p.value() - (c3 * z0 * z0 * z0 + c2 * z0 * z0 + c1 * z0 + c0)) < 1e-14);
    CHECK(std::abs(p.derivative(1) - (3.0 * c3 * z0 * z0 + 2.0 * c2 * z0 + c1)) < 1e-14);
    CHECK(std::abs(p.derivative(2) - (6.0 * c3 * z0 + 2.0 * c2)) < 1e-13);
    CHECK(std::abs(p.derivative(3) - 6.0 * c3) < 1e-13);
  }
}

TEST_CASE("mul then div round-trips") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Cplx p(0.1 * i, -0.05 * i);
    const HoloJet a = random_jet(rng, p);
    HoloJet b = random_jet(rng, p);
    if (std::abs(b.value()) <= 1e-6) continue;
    CHECK(jet_close(jet_div(jet_mul(a, b), b), a, 1e-12));
  }
}

TEST_CASE("log inverts exp") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const HoloJet a = random_jet(rng, Cplx(0.25 * i, 0.1), 2.0);
    CHECK(jet_close(jet_log(jet_exp(a)), a, 1e-12));
  }
}

TEST_CASE("principal sqrt of the jet of z^2 at 2 is the jet of z") {
  const HoloJet z = HoloJet::variable(Cplx(2.0));
  const HoloJet s = jet_sqrt(jet_mul(z, z));
  CHECK(std::abs(s.coeff(0) - Cplx(2.0)) < 1e-14);
  CHECK(std::abs(s.coeff(1) - Cplx(1.0)) < 1e-14);
  CHECK(std::abs(s.coeff(2)) < 1e-14);
  CHECK(std::abs(s.coeff(3)) < 1e-14);
}

TEST_CASE("composition with the identity leaves the outer jet unchanged") {
  std::mt19937_64 rng(3);
  const Cplx z0(0.4, -0.3);
  const HoloJet inner = HoloJet::variable(z0);
  for (int i = 0; i < 20; ++i) {
    HoloJet outer = random_jet(rng, z0);
    CHECK(jet_close(jet_compose(outer, inner), outer, 0.0));
  }
}

TEST_CASE("exp(z^2) at 0 through composition") {
  const HoloJet z = HoloJet::variable(Cplx(0.0));
  const HoloJet composed = jet_exp(jet_mul(z, z));
  CHECK(std::abs(composed.derivative(0) - Cplx(1.0)) < 1e-15);
  CHECK(std::abs(composed.derivative(1)) < 1e-15);
  CHECK(std::abs(composed.derivative(2) - Cplx(2.0)) < 1e-15);
  CHECK(std::abs(composed.derivative(3)) < 1e-15);
}

TEST_CASE("Schwarzian chain rule S(g o f) = ((Sg) o f) f'^2 + Sf") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int i = 0; i < 100; ++i) {
    const Cplx z0(u(rng), u(rng));
    const HoloJet zj = HoloJet::variable(z0);
    // f = z^2 + 3z, injective near small |z| (f' = 2z + 3 != 0)
    const HoloJet f = jet_add(jet_mul(zj, zj), jet_scale(zj, 3.0));
    const HoloJet g = jet_exp(HoloJet::variable(f.value()));
    const Cplx lhs = jet_schwarzian(jet_compose(g, f));
    const Cplx rhs = jet_schwarzian(g) * f.derivative(1) * f.derivative(1) + jet_schwarzian(f);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("Schwarzian transforms under disk automorphisms") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 100; ++i) {
    const Cplx a(u(rng) * 0.5, u(rng) * 0.5);
    const Cplx z0(u(rng), u(rng));
    const HoloJet zj = HoloJet::variable(z0);
    const HoloJet t = jet_div(jet_add(zj, HoloJet::constant(z0, a)),
                              jet_add(HoloJet::constant(z0, 1.0), jet_scale(zj, std::conj(a))));
    const HoloJet wj = HoloJet::variable(t.value());
    const HoloJet f_at_t = jet_add(jet_mul(wj, wj), jet_scale(wj, 3.0));
    const Cplx lhs = jet_schwarzian(jet_compose(f_at_t, t));
    const Cplx rhs = jet_schwarzian(f_at_t) * t.derivative(1) * t.derivative(1);
    CHECK(std::abs(lhs - rhs) < 1e-10);  // S(T) = 0 for Möbius T
  }
}

TEST_CASE("integer powers keep vanishing bases regular") {
  const HoloJet z = HoloJet::variable(Cplx(0.0));
  const HoloJet cube = jet_pow(z, Cplx(3.0));
  CHECK(cube.coeff(0) == Cplx(0.0));
  CHECK(cube.coeff(3) == Cplx(1.0));
  CHECK_THROWS_AS(jet_pow(z, Cplx(0.5)), SingularPointError);
}

TEST_CASE("usage and singular errors") {
  const HoloJet a = HoloJet::variable(Cplx(1.0));
  const HoloJet b = HoloJet::variable(Cplx(2.0));
  CHECK_THROWS_AS(jet_add(a, b), UsageError);
  CHECK_THROWS_AS(jet_add(a, HoloJet::variable(Cplx(1.0), 2)), UsageError);
  CHECK_THROWS_AS(jet_div(a, HoloJet::constant(Cplx(1.0), 0.0)), SingularPointError);
  CHECK_THROWS_AS(jet_log(HoloJet::constant(Cplx(0.5), 0.0)), SingularPointError);
  try {
    jet_div(a, HoloJet::constant(Cplx(1.0), 0.0));
    CHECK(false);
  } catch (const SingularPointError& e) {
    CHECK(e.where() == Cplx(1.0));
  }
}
