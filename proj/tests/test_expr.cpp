#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "foliation/expr.hpp"

using namespace foliation;

namespace {

const std::vector<std::string> kZ{"z"};

Complex value_at(const std::string& text, Complex z) { return eval_jet1(parse(text, kZ), z, 0).value(); }

std::size_t parse_position(const std::string& text) {
  try {
    parse(text, kZ);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("values of simple expressions") {
  Complex z(0.3, 0.4);
  CHECK(std::abs(value_at("z^2 + i", z) - (z * z + Complex(0, 1))) < 1e-15);
  CHECK(std::abs(value_at("exp(z) + 2*i", z) - (std::exp(z) + Complex(0, 2))) < 1e-15);
  CHECK(std::abs(value_at("1/(z + 2) + i", z) - (1.0 / (z + 2.0) + Complex(0, 1))) < 1e-15);
  CHECK(std::abs(value_at("sqrt(z)*ln(z)", z) - std::sqrt(z) * std::log(z)) < 1e-15);
  CHECK(std::abs(value_at("pi", z) - M_PI) < 1e-15);
  CHECK(std::abs(value_at("2^3^2", z) - 512.0) < 1e-9);
  CHECK(std::abs(value_at("-z^2", z) + z * z) < 1e-15);
  CHECK(std::abs(value_at("1.5e-1*z", z) - 0.15 * z) < 1e-15);
}

TEST_CASE("derivatives of a polynomial") {
  auto d = derivatives(parse("z^3 - 2*z", kZ), Complex(1.0, 1.0), 4);
  Complex z(1.0, 1.0);
  CHECK(std::abs(d[0] - (z * z * z - 2.0 * z)) < 1e-13);
  CHECK(std::abs(d[1] - (3.0 * z * z - 2.0)) < 1e-13);
  CHECK(std::abs(d[2] - 6.0 * z) < 1e-13);
  CHECK(std::abs(d[3] - 6.0) < 1e-13);
  CHECK(std::abs(d[4]) < 1e-13);
}

TEST_CASE("printing round trips") {
  for (const char* s : {"z^2 + i", "exp(z) + 2*i", "1/(z + 2) + i", "(z - 1)^(-2)", "-z*(z + 1)",
                        "2*i*z + 1", "ln(z)/sqrt(z + 3)", "z - (z - 1)", "z/(z/2)", "(-z)^2"}) {
    Expr e = parse(s, kZ);
    Expr back = parse(e.to_string(), kZ);
    CHECK_MESSAGE(back.to_tree() == e.to_tree(), s);
  }
  CHECK(parse("z^2 + i*z", kZ).to_tree() == "Add(Pow(z,2),Mul(i,z))");
}

TEST_CASE("conjugate partner") {
  Expr b = parse("z^2 + i", kZ);
  Expr bb = conjugate(b);
  Complex w(0.6, -0.2);
  CHECK(std::abs(eval_jet1(bb, std::conj(w), 0).value() - std::conj(w * w + Complex(0, 1))) < 1e-15);
  CHECK(std::abs(bar_eval(b, std::conj(w), 0).value() - std::conj(w * w + Complex(0, 1))) < 1e-15);
}

TEST_CASE("substitution and several variables") {
  Expr f = parse("x*y + y", {"x", "y"});
  Expr g = substitute(f, std::vector<Expr>{parse("z^2", kZ), parse("z + 1", kZ)}, kZ);
  Complex z(0.5, 0.1);
  CHECK(std::abs(eval_jet1(g, z, 0).value() - (z * z * (z + 1.0) + z + 1.0)) < 1e-15);

  std::vector<Complex> at{2.0, 3.0};
  Jet j = eval_jetN(f, at, 2);
  CHECK(std::abs(partial(j, {1, 0, 0}) - 3.0) < 1e-15);
  CHECK(std::abs(partial(j, {0, 1, 0}) - 3.0) < 1e-15);
  CHECK(std::abs(partial(j, {1, 1, 0}) - 1.0) < 1e-15);
}

TEST_CASE("parse errors carry the offset") {
  CHECK(parse_position("z^(") == 3);
  CHECK(parse_position("2z") == 1);
  CHECK(parse_position("") == 0);
  CHECK(parse_position("foo(z)") == 0);
  CHECK(parse_position("z + w") == 4);
  CHECK(parse_position("(z + 1") == 6);
  CHECK(parse_position("z)") == 1);
  CHECK(parse_position("exp(z, z)") != std::string::npos);
  CHECK_THROWS_AS(parse("i", {"i"}), ParseError);
}

TEST_CASE("arity is enforced") {
  Expr f = parse("x*y", {"x", "y"});
  CHECK_THROWS_AS(eval_jet1(f, 1.0, 2), Error);
  std::vector<Complex> one{1.0};
  CHECK_THROWS_AS(eval_jetN(f, one, 2), Error);
}

TEST_CASE("domain errors propagate from evaluation") {
  CHECK_THROWS_AS(eval_jet1(parse("ln(z)", kZ), -1.0, 2), Error);
  CHECK_THROWS_AS(eval_jet1(parse("1/z", kZ), 0.0, 2), Error);
}
