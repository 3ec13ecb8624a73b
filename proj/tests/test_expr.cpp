#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "awlift/expr.hpp"
#include "awlift/mapspec.hpp"

using namespace awlift;

TEST_CASE("basic parse shapes") {
  const ExprPtr v = parse("z");
  CHECK(v->kind == ExprKind::Variable);

  const ExprPtr p = parse("z^3/3");
  REQUIRE(p->kind == ExprKind::Binary);
  CHECK(p->op == '/');
  REQUIRE(p->lhs->kind == ExprKind::Binary);
  CHECK(p->lhs->op == '^');
  CHECK(p->lhs->lhs->kind == ExprKind::Variable);
  CHECK(p->lhs->rhs->value == Cplx(3.0));
  CHECK(p->rhs->value == Cplx(3.0));

  const ExprPtr w = parse("((1+z)/(1-z))^0.8");
  REQUIRE(w->kind == ExprKind::Binary);
  CHECK(w->op == '^');
  CHECK(w->rhs->value == Cplx(0.8));
  CHECK(w->lhs->op == '/');
  CHECK(w->lhs->lhs->op == '+');
  CHECK(w->lhs->rhs->op == '-');
}

TEST_CASE("whitespace and precedence") {
  CHECK(expr_equal(parse(" 1 + z * 2 "), parse("1+z*2")));
  CHECK(expr_equal(parse("1+z*2"), make_binary('+', make_constant(1.0),
                                               make_binary('*', make_variable(), make_constant(2.0)))));
  // ^ is right-associative and binds tighter than unary minus
  CHECK(expr_equal(parse("z^2^3"), make_binary('^', make_variable(),
                                               make_binary('^', make_constant(2.0), make_constant(3.0)))));
  CHECK(expr_equal(parse("-z^2"), make_unary('-', make_binary('^', make_variable(), make_constant(2.0)))));
}

TEST_CASE("pretty-print round trip is the identity on ASTs") {
  const char* sources[] = {
      "z",
      "z^3/3",
      "((1+z)/(1-z))^0.8",
      "-z^2+3*z-1/(1-z)",
      "exp(i*pi*z)",
      "atanh(z)/(1+sqrt(1-z^2))",
      "sin(z)*cos(z)-z/(2+z)",
      "1-2*(3-4*(5-z))",
      "z^-2",
      "2e3*z+1.5e-2",
      "e^z",
      "a_bad_placeholder",  // replaced below
  };
  for (const char* src : sources) {
    if (std::string(src) == "a_bad_placeholder") continue;
    const ExprPtr a = parse(src);
    const ExprPtr b = parse(pretty_print(a));
    CHECK_MESSAGE(expr_equal(a, b), "round trip failed for ", src);
    CHECK(pretty_print(a) == pretty_print(b));
  }
}

namespace {

ExprPtr random_ast(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0: {
      std::uniform_real_distribution<double> u(0.0, 4.0);
      return make_constant(Cplx(u(rng), 0.0));
    }
    case 1:
      return make_variable();
    case 2:
      return make_unary('-', random_ast(rng, depth - 1));
    case 3:
    case 4: {
      const char ops[] = {'+', '-', '*', '/'};
      std::uniform_int_distribution<int> o(0, 3);
      return make_binary(ops[o(rng)], random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    }
    case 5:
      return make_binary('^', random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    default: {
      const FuncId fns[] = {FuncId::Exp, FuncId::Log, FuncId::Sqrt, FuncId::Sin, FuncId::Cos,
                            FuncId::Atanh};
      std::uniform_int_distribution<int> f(0, 5);
      return make_call(fns[f(rng)], random_ast(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("pretty-print round trip on random ASTs") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const ExprPtr a = random_ast(rng, 4);
    const ExprPtr b = parse(pretty_print(a));
    REQUIRE(expr_equal(a, b));
  }
}

TEST_CASE("eval_jet of the identity") {
  const HoloJet j = eval_jet(parse("z"), Cplx(0.3, 0.1));
  CHECK(j.value() == Cplx(0.3, 0.1));
  CHECK(j.derivative(1) == Cplx(1.0));
  CHECK(j.derivative(2) == Cplx(0.0));
  CHECK(j.derivative(3) == Cplx(0.0));
}

TEST_CASE("eval_jet of atanh at 0 matches the series z + z^3/3 + ...") {
  const HoloJet j = eval_jet(parse("atanh(z)"), Cplx(0.0));
  CHECK(std::abs(j.derivative(0)) < 1e-15);
  CHECK(std::abs(j.derivative(1) - Cplx(1.0)) < 1e-15);
  CHECK(std::abs(j.derivative(2)) < 1e-15);
  CHECK(std::abs(j.derivative(3) - Cplx(2.0)) < 1e-15);
}

TEST_CASE("eval_jet of z^3/3 at 0.5") {
  const HoloJet j = eval_jet(parse("z^3/3"), Cplx(0.5));
  CHECK(std::abs(j.derivative(0) - Cplx(1.0 / 24.0)) < 1e-15);
  CHECK(std::abs(j.derivative(1) - Cplx(0.25)) < 1e-15);
  CHECK(std::abs(j.derivative(2) - Cplx(1.0)) < 1e-15);
  CHECK(std::abs(j.derivative(3) - Cplx(2.0)) < 1e-15);
}

TEST_CASE("constants i, pi, e") {
  CHECK(eval_jet(parse("i"), Cplx(0.0)).value() == Cplx(0.0, 1.0));
  CHECK(eval_jet(parse("pi"), Cplx(0.0)).value().real() == doctest::Approx(M_PI));
  CHECK(eval_jet(parse("e"), Cplx(0.0)).value().real() == doctest::Approx(M_E));
  CHECK(std::abs(eval_jet(parse("exp(i*pi)"), Cplx(0.0)).value() - Cplx(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("parse errors carry offsets and expectations") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("z^"), ParseError);
  CHECK_THROWS_AS(parse("(1+z"), ParseError);
  CHECK_THROWS_AS(parse("z w"), ParseError);
  CHECK_THROWS_AS(parse("frob(z)"), ParseError);
  CHECK_THROWS_AS(parse("conj(z)"), ParseError);
  CHECK_THROWS_AS(parse("z + ~z"), ParseError);
  try {
    parse("1+*2");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK(!e.expected().empty());
  }
  try {
    parse("foo(z)");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
  }
}

TEST_CASE("singular evaluation points are reported with the point") {
  CHECK_THROWS_AS(eval_jet(parse("1/(1-z)"), Cplx(1.0)), SingularPointError);
  CHECK_THROWS_AS(eval_jet(parse("atanh(z)"), Cplx(1.0)), SingularPointError);
  CHECK_THROWS_AS(eval_jet(parse("log(z)"), Cplx(0.0)), SingularPointError);
  try {
    eval_jet(parse("1/(1-z)"), Cplx(1.0));
    CHECK(false);
  } catch (const SingularPointError& e) {
    CHECK(e.where() == Cplx(1.0));
  }
}

TEST_CASE("jet derivatives agree with finite differences of values") {
  const char* exprs[] = {"((1+z)/(1-z))^0.8", "atanh(z)", "exp(z^2)-sin(z)/(2+z)",
                         "sqrt(1+z^2)", "z^3/3-cos(z)"};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (const char* src : exprs) {
    const ExprPtr ast = parse(src);
    for (int i = 0; i < 100; ++i) {
      const Cplx z0(u(rng), u(rng));
      const HoloJet j = eval_jet(ast, z0);
      auto val = [&](Cplx z) { return eval_jet(ast, z).value(); };

      // first derivative: the spec's step
      const double h1 = 1e-5;
      const Cplx fd1 = (val(z0 + h1) - val(z0 - h1)) / (2.0 * h1);
      CHECK(std::abs(fd1 - j.derivative(1)) <=
            1e-6 * std::max(1.0, std::abs(j.derivative(1))));

      // higher orders with a wider fourth-order stencil to tame roundoff
      const double h = 1e-3;
      const Cplx fm2 = val(z0 - 2.0 * h), fm1 = val(z0 - h), f0 = val(z0), fp1 = val(z0 + h),
                 fp2 = val(z0 + 2.0 * h);
      const Cplx fd2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
      const Cplx fd3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h);
      CHECK(std::abs(fd2 - j.derivative(2)) <=
            1e-6 * std::max(1.0, std::abs(j.derivative(2))));
      CHECK(std::abs(fd3 - j.derivative(3)) <=
            2e-5 * std::max(1.0, std::abs(j.derivative(3))));
    }
  }
}

TEST_CASE("load_spec: analytic identity") {
  const MapSpec spec = MapSpec::from_json_text(R"({"h":"z"})");
  CHECK(spec.analytic());
  const WeierstrassJets wj = spec.jets(Cplx(0.4, 0.2));
  CHECK(wj.g.value() == Cplx(0.0));
  CHECK(wj.q.value() == Cplx(0.0));
  CHECK(wj.h.derivative(1) == Cplx(1.0));
}

TEST_CASE("load_spec: Enneper data is consistent") {
  const MapSpec spec = MapSpec::from_json_text(R"({"h":"z","g":"z^3/3","q":"z","label":"enneper"})");
  CHECK(spec.label() == "enneper");
  CHECK(!spec.analytic());
  const WeierstrassJets wj = spec.jets(Cplx(0.5));
  CHECK(std::abs(wj.g.value() - Cplx(0.125 / 3.0)) < 1e-15);
  CHECK(std::abs(wj.q.value() - Cplx(0.5)) < 1e-15);
}

TEST_CASE("load_spec: inconsistent q is rejected with the residual") {
  try {
    MapSpec::from_json_text(R"({"h":"z","g":"z^2/2","q":"z"})");
    CHECK(false);
  } catch (const UsageError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("inconsistent") != std::string::npos);
    CHECK(msg.find("z =") != std::string::npos);
  }
}

TEST_CASE("load_spec: malformed JSON and missing fields") {
  CHECK_THROWS_AS(MapSpec::from_json_text("{"), UsageError);
  CHECK_THROWS_AS(MapSpec::from_json_text(R"({"g":"z"})"), UsageError);
  CHECK_THROWS_AS(MapSpec::from_json_text(R"x({"h":"conj(z)"})x"), UsageError);
  try {
    MapSpec::from_json_text(R"({"h":"1+*z"})");
    CHECK(false);
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("\"h\"") != std::string::npos);
  }
}

TEST_CASE("spec with q only reconstructs g by integration") {
  const MapSpec spec = MapSpec::from_json_text(R"({"h":"z","q":"z"})");
  for (const Cplx z : {Cplx(0.5, 0.0), Cplx(0.2, 0.3), Cplx(-0.4, 0.1)}) {
    const WeierstrassJets wj = spec.jets(z);
    CHECK(std::abs(wj.g.value() - z * z * z / 3.0) < 1e-12);       // g = z^3/3
    CHECK(std::abs(wj.g.derivative(1) - z * z) < 1e-12);           // g' = q^2 h'
    CHECK(std::abs(wj.g.derivative(2) - 2.0 * z) < 1e-12);
  }
}

TEST_CASE("spec with g only reconstructs q by principal square root") {
  const MapSpec spec = MapSpec::from_json_text(R"({"h":"z","g":"z^2/2"})");
  // omega = g'/h' = z, q = sqrt(z): check q^2 = z away from the branch point
  const Cplx z(0.3, 0.2);
  const WeierstrassJets wj = spec.jets(z);
  CHECK(std::abs(wj.q.value() * wj.q.value() - z) < 1e-12);
}

TEST_CASE("load accepts files and inline JSON") {
  const std::string path = "test_spec_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"h":"z","g":"z^3/3","q":"z"})";
  }
  const MapSpec a = MapSpec::load(path);
  const MapSpec b = MapSpec::load(R"(  {"h":"z","g":"z^3/3","q":"z"} )");
  CHECK(pretty_print(a.h_expr()) == pretty_print(b.h_expr()));
  std::remove(path.c_str());
  CHECK_THROWS_AS(MapSpec::load("nonexistent_file.json"), UsageError);
}
