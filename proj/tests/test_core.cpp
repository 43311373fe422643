#include <catch2/catch_amalgamated.hpp>

#include "awc/common.hpp"
#include "awc/poly.hpp"

using namespace awc;

TEST_CASE("rational and vector formatting") {
  CHECK(rat_str(Rat(BigInt(3))) == "3");
  CHECK(rat_str(Rat(BigInt(-4), BigInt(6))) == "-2/3");
  CHECK(rat_str(Rat(BigInt(0))) == "0");
  CHECK(vec_str(Vec{1, -2, 0}) == "(1,-2,0)");
  CHECK(qvec_str(QVec{Rat(BigInt(1), BigInt(2)), Rat(BigInt(-1))}) == "(1/2,-1)");
}

TEST_CASE("rat_floor and integrality") {
  CHECK(rat_floor(Rat(BigInt(7), BigInt(2))) == 3);
  CHECK(rat_floor(Rat(BigInt(-7), BigInt(2))) == -4);
  CHECK(rat_floor(Rat(BigInt(-4), BigInt(2))) == -2);
  CHECK(rat_is_int(Rat(BigInt(6), BigInt(3))));
  CHECK_FALSE(rat_is_int(Rat(BigInt(1), BigInt(3))));
}

TEST_CASE("linear solving over the rationals") {
  QMat a{{Rat(BigInt(2)), Rat(BigInt(1))}, {Rat(BigInt(1)), Rat(BigInt(-1))}};
  QVec b{Rat(BigInt(4)), Rat(BigInt(-1))};
  auto sol = q_solve(a, b);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == Rat(BigInt(1)));
  CHECK((*sol)[1] == Rat(BigInt(2)));

  QMat sing{{Rat(BigInt(1)), Rat(BigInt(1))}, {Rat(BigInt(2)), Rat(BigInt(2))}};
  CHECK_FALSE(q_solve(sing, QVec{Rat(BigInt(0)), Rat(BigInt(1))}).has_value());
}

TEST_CASE("error types carry exit codes") {
  CHECK(ParseError::exit_code == 2);
  CHECK(DomainError::exit_code == 3);
  CHECK(ResourceError::exit_code == 4);
  CHECK_THROWS_AS(throw ParseError("x"), std::runtime_error);
}

TEST_CASE("single variable polynomial arithmetic") {
  PolyZq zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == NEG_INFINITY);
  CHECK(zero.leading_coeff() == 1);

  PolyZq p(std::vector<Int>{-1, 1});  // q - 1
  PolyZq sq = p * p;
  CHECK(sq.str() == "q^2 - 2*q + 1");
  CHECK(sq.degree() == 2);
  CHECK(sq.at_one() == 0);

  PolyZq s = p + PolyZq(1);
  CHECK(s.str() == "q");
  CHECK((s - s).is_zero());
  CHECK(PolyZq::q_power(3).str() == "q^3");
  CHECK(PolyZq::q_power(2, -5).str() == "-5*q^2");
  CHECK(PolyZq::q_power(0).str() == "1");
}

TEST_CASE("expansion in powers of q-1 is exact") {
  PolyZq f(std::vector<Int>{3, 0, 2, 1});  // q^3 + 2q^2 + 3
  auto c = f.q_minus_one_coeffs();
  // reassemble sum c_k (q-1)^k
  PolyZq acc, pw(std::vector<Int>{1});
  PolyZq qm1(std::vector<Int>{-1, 1});
  for (const BigInt& ck : c) {
    acc = acc + pw * PolyZq(ck.convert_to<Int>());
    pw = pw * qm1;
  }
  CHECK(acc == f);
  CHECK(PolyZq(std::vector<Int>{0, 1}).q_minus_one_coeffs() ==
        std::vector<BigInt>{BigInt(1), BigInt(1)});  // q = 1 + (q-1)
}

TEST_CASE("polynomial printing under another variable name") {
  PolyZq f(std::vector<Int>{-1, 0, 1});
  CHECK(f.str("t") == "t^2 - 1");
}

TEST_CASE("multivariate polynomials") {
  std::vector<std::string> vars{"q1", "q2"};
  MPoly one = MPoly::constant(vars, 1);
  MPoly q1 = MPoly::var(vars, 0);
  MPoly q2 = MPoly::var(vars, 1);
  MPoly f = (q1 + one) * (q2 - one);
  CHECK(f == q1 * q2 - q1 + q2 - one);
  CHECK(f.str() == "q1*q2 - q1 + q2 - 1");
  CHECK((f - f).is_zero());
  CHECK(MPoly::var(vars, 0, 3).str() == "q1^3");

  // evaluation at integers via the rational ring
  auto from_big = [](const BigInt& b) { return Rat(b); };
  std::vector<Rat> at{Rat(BigInt(2)), Rat(BigInt(3))};
  Rat val = f.eval<Rat>(at, from_big);
  CHECK(val == Rat(BigInt(6)));  // (2+1)(3-1)
}

int main(int argc, char** argv) { return Catch::Session().run(argc, argv); }
