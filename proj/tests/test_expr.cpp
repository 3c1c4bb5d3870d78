#include <cstring>
#include <random>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "tangentrep/counterexample.hpp"
#include "tangentrep/errors.hpp"
#include "tangentrep/expr.hpp"
#include "tangentrep/field.hpp"

using namespace tangentrep;

namespace {

ParseError::Kind parse_error_kind(const std::string& text, int dim) {
  try {
    parse(text, dim);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for " << text);
  return ParseError::Kind::syntax;
}

std::string random_expr(std::mt19937_64& rng, int depth, int dim) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_int_distribution<int> var(1, dim);
  std::uniform_real_distribution<double> num(0.0, 3.0);
  switch (pick(rng)) {
    case 0: return "x" + std::to_string(var(rng));
    case 1: return std::to_string(num(rng));
    case 2: return "(" + random_expr(rng, depth - 1, dim) + " + " + random_expr(rng, depth - 1, dim) + ")";
    case 3: return "(" + random_expr(rng, depth - 1, dim) + " - " + random_expr(rng, depth - 1, dim) + ")";
    case 4: return random_expr(rng, depth - 1, dim) + " * " + random_expr(rng, depth - 1, dim);
    case 5: return random_expr(rng, depth - 1, dim) + " / " + random_expr(rng, depth - 1, dim);
    case 6: return "-" + random_expr(rng, depth - 1, dim);
    case 7: return "(" + random_expr(rng, depth - 1, dim) + ")^" + std::to_string(var(rng));
    case 8: return "sin(" + random_expr(rng, depth - 1, dim) + ")";
    default: return "exp(" + random_expr(rng, depth - 1, dim) + ")^0.5";
  }
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(parse("x1^2 + x2^2", 2).to_tree_string() == "add(pow(var1,2),pow(var2,2))");
  CHECK(parse("sin(x1)*x2", 2).to_tree_string() == "mul(sin(var1),var2)");
  CHECK(parse("  x1 -  3.5e-1 ", 1).to_tree_string() == "sub(var1,0.34999999999999998)");
  CHECK(parse("-x1", 1).to_tree_string() == "neg(var1)");
  CHECK(parse("-2", 1).to_tree_string() == "-2");
  CHECK(parse("x1^-2", 1).to_tree_string() == "pow(var1,-2)");
  CHECK(parse("x1^0.5", 1).to_tree_string() == "exp(mul(0.5,log(var1)))");
  CHECK(parse("x1^(1/2)", 1).to_tree_string() == "exp(mul(0.5,log(var1)))");
  CHECK(parse(".5*x1", 1).to_tree_string() == "mul(0.5,var1)");
}

TEST_CASE("parse errors are classified with positions") {
  CHECK(parse_error_kind("x3 + 1", 2) == ParseError::Kind::variable_out_of_range);
  CHECK(parse_error_kind("x0", 2) == ParseError::Kind::variable_out_of_range);
  CHECK(parse_error_kind("abs(x1)", 1) == ParseError::Kind::non_smooth_primitive);
  CHECK(parse_error_kind("max(x1, x2)", 2) == ParseError::Kind::non_smooth_primitive);
  CHECK(parse_error_kind("tan(x1)", 1) == ParseError::Kind::unknown_identifier);
  CHECK(parse_error_kind("y", 1) == ParseError::Kind::unknown_identifier);
  CHECK(parse_error_kind("x1 +", 1) == ParseError::Kind::syntax);
  CHECK(parse_error_kind("(x1", 1) == ParseError::Kind::syntax);
  CHECK(parse_error_kind("x1 x1", 1) == ParseError::Kind::syntax);
  CHECK(parse_error_kind("x1^x1", 1) == ParseError::Kind::syntax);
  CHECK(parse_error_kind("1e", 1) == ParseError::Kind::syntax);
  CHECK(parse_error_kind("", 1) == ParseError::Kind::syntax);

  try {
    parse("x1 + x3", 2);
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("pretty-printed expressions re-parse to identical trees") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const int dim = 1 + i % 3;
    const std::string text = random_expr(rng, 4, dim);
    const FieldExpr e = parse(text, dim);
    const FieldExpr again = parse(e.to_string(), dim);
    CHECK_MESSAGE(again == e, text << " -> " << e.to_string());
  }
}

TEST_CASE("eval_with_gradient of parsed fields") {
  const ScalarField f = ScalarField::from_expression(parse("x1^2 + x2^2", 2));
  const double x[2] = {1.0, 0.0};
  const ValueGradient vg = f.eval_with_gradient(x);
  // Frozen from the finite-difference oracle (h = 1e-5): (1, (2, 0)).
  const auto fd = oracle::fd_gradient([&](std::span<const double> p) { return f.value(p); }, x);
  CHECK(vg.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(vg.gradient[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(vg.gradient[1] == 0.0);
  CHECK(fd[0] == doctest::Approx(2.0).epsilon(1e-9));

  const ScalarField id = ScalarField::from_expression(parse("x1", 3));
  const double y[3] = {0.25, -4.0, 9.0};
  const ValueGradient g = id.eval_with_gradient(y);
  CHECK(g.value == 0.25);
  CHECK(g.gradient == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("domain errors surface from evaluation") {
  const ScalarField lg = ScalarField::from_expression(parse("log(x1)", 1));
  const double bad[1] = {-1.0};
  CHECK_THROWS_AS(lg.value(bad), DomainError);
  CHECK_THROWS_AS(lg.eval_with_gradient(bad), DomainError);
  const ScalarField rt = ScalarField::from_expression(parse("sqrt(x1)", 1));
  const double zero[1] = {0.0};
  CHECK(rt.value(zero) == 0.0);
  CHECK_THROWS_AS(rt.eval_with_gradient(zero), DomainError);
  const ScalarField inv = ScalarField::from_expression(parse("1/x1", 1));
  CHECK_THROWS_AS(inv.value(zero), DomainError);
  CHECK_THROWS_AS(lg.value(std::vector<double>{1.0, 2.0}), DimensionError);
}

TEST_CASE("AD gradients agree with central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const char* exprs[] = {"sin(x1)*x2", "exp(x1*x2) + log(2 + x1^2)", "sqrt(1 + x1^2 + x2^2)",
                         "x1^3 - 2*x1*x2 + x2^-2", "cos(x1 - x2)/(3 + x1)", "(2 + x1)^1.5 * x2"};
  for (const char* text : exprs) {
    const ScalarField f = ScalarField::from_expression(parse(text, 2));
    for (int i = 0; i < 100; ++i) {
      const double x[2] = {u(rng), 0.5 + 0.5 * std::abs(u(rng))};
      const auto vg = f.eval_with_gradient(x);
      const auto fd = oracle::fd_gradient([&](std::span<const double> p) { return f.value(p); }, x);
      CHECK_MESSAGE(oracle::gradient_mismatch(vg.gradient, fd) <= 1e-6, text);
      CHECK(vg.value == f.value(x));
    }
  }
}

TEST_CASE("catalog fields") {
  CHECK(catalog_names().size() == 9);
  for (auto name : catalog_names()) {
    const CatalogEntry e = catalog_entry(name);
    CHECK(e.field.name() == name);
    CHECK(static_cast<std::size_t>(e.field.dim()) == e.domain.dim());
  }
  CHECK_THROWS_AS(catalog("nope"), Error);

  const ScalarField bowl = catalog("quadratic_bowl");
  CHECK(bowl.value(std::vector<double>{0.5, -2.0}) == 4.25);

  const ScalarField tri = catalog("triangle_counterexample_f");
  CHECK(tri.value(std::vector<double>{0.7, 0.3}) == 0.09);  // 0.3 * 0.3 rounds to the literal 0.09
  CHECK(tri.value(std::vector<double>{-0.7, 0.3}) == 0.0);
  CHECK(tri.value(std::vector<double>{0.2, -0.5}) == 0.0);
}

TEST_CASE("catalog gradients agree with central differences") {
  std::mt19937_64 rng(5);
  for (auto name : catalog_names()) {
    const CatalogEntry e = catalog_entry(name);
    const Box bb = e.domain.bounding_box();
    int tested = 0;
    while (tested < 100) {
      Point x(bb.lo.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = std::uniform_real_distribution<double>(bb.lo[k], bb.hi[k])(rng);
      }
      if (!e.domain.contains(x)) continue;
      if (name == "triangle_counterexample_f") {
        // Stay away from edges where f is only C1 or where Omega ends.
        bool inside = false;
        for (int t = 1; t <= 3; ++t) inside = inside || TriangleDomain::in_triangle(t, x, 1e-3);
        if (!inside) continue;
      }
      ++tested;
      const auto vg = e.field.eval_with_gradient(x);
      const auto fd = oracle::fd_gradient([&](std::span<const double> p) { return e.field.value(p); }, x);
      CHECK_MESSAGE(oracle::gradient_mismatch(vg.gradient, fd) <= 1e-6, name);
    }
  }
}

TEST_CASE("evaluation is pure") {
  const ScalarField f = ScalarField::from_expression(parse("exp(sin(x1*x2)) / (1 + x1^2)", 2));
  const double x[2] = {0.3, -1.7};
  const auto a = f.eval_with_gradient(x);
  for (int i = 0; i < 10; ++i) {
    const auto b = f.eval_with_gradient(x);
    CHECK(std::memcmp(&a.value, &b.value, sizeof(double)) == 0);
    CHECK(std::memcmp(a.gradient.data(), b.gradient.data(), 2 * sizeof(double)) == 0);
  }
}

TEST_CASE("unary minus binds tighter than the power operator") {
  // The grammar reads "-" base before "^", so -x1^2 squares the negation.
  CHECK(parse("-x1^2", 1).to_tree_string() == "pow(neg(var1),2)");
  CHECK(parse("-(x1^2)", 1).to_tree_string() == "neg(pow(var1,2))");
  const ScalarField f = ScalarField::from_expression(parse("-x1^2", 1));
  CHECK(f.value(Point{3.0}) == 9.0);
  CHECK(parse("2 - x1^2", 1).to_tree_string() == "sub(2,pow(var1,2))");
}
