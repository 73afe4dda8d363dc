#include <catch2/catch_amalgamated.hpp>

#include "gla/scalar.hpp"

using namespace gla;

TEST_CASE("rational parsing canonicalizes") {
  CHECK(parse_rational("4/6") == rat(2, 3));
  CHECK(parse_rational("-10/4") == rat(-5, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0/5") == 0);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("rational to_string") {
  CHECK(to_string(rat(3, 2)) == "3/2");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("scalar arithmetic over rationals") {
  Scalar a(rat(1, 2)), b(rat(1, 3));
  CHECK((a + b) == Scalar(rat(5, 6)));
  CHECK((a - b) == Scalar(rat(1, 6)));
  CHECK((a * b) == Scalar(rat(1, 6)));
  CHECK((a / b) == Scalar(rat(3, 2)));
  CHECK(a.is_rational());
  CHECK_FALSE(a.is_zero());
  CHECK(Scalar(0).is_zero());
}

TEST_CASE("polynomial scalars multiply and collapse") {
  Scalar t = Scalar::t(1);
  CHECK(Scalar::t(2) * Scalar::t(3) == Scalar::t(5));
  CHECK((Scalar(1) + t) * (Scalar(1) - t) == Scalar(1) - Scalar::t(2));
  // degree-0 polynomials collapse to rationals
  Scalar collapsed = (t + Scalar(1)) - t;
  CHECK(collapsed.is_rational());
  CHECK(collapsed == Scalar(1));
  CHECK(Scalar::t(0) == Scalar(1));
}

TEST_CASE("scalar degree and coefficients") {
  Scalar p = Scalar(1) - Scalar(2) * Scalar::t(2);
  CHECK(p.degree() == 2);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == 0);
  CHECK(p.coeff(2) == -2);
  CHECK(p.coeff(5) == 0);
  CHECK(Scalar(rat(3, 2)).degree() == 0);
}

TEST_CASE("as_rational rejects genuine polynomials") {
  CHECK(Scalar(rat(7, 3)).as_rational() == rat(7, 3));
  CHECK_THROWS_AS(Scalar::t(1).as_rational(), std::invalid_argument);
}

TEST_CASE("division rules") {
  Scalar p = Scalar::t(2) + Scalar::t(1);
  CHECK(p / Scalar(2) == rat(1, 2) * (Scalar::t(2) + Scalar::t(1)));
  CHECK_THROWS_AS(p / Scalar::t(1), std::invalid_argument);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::invalid_argument);
}

TEST_CASE("scalar printing") {
  CHECK(Scalar(rat(3, 2)).str() == "3/2");
  CHECK(Scalar::t(1).str() == "t");
  CHECK((-Scalar::t(2)).str() == "-t^2");
  CHECK((Scalar(1) - Scalar(2) * Scalar::t(2)).str() == "1-2*t^2");
  CHECK((rat(1, 2) * Scalar::t(1)).str() == "1/2*t");
  CHECK(Scalar(0).str() == "0");
}

TEST_CASE("scalar parse inverts str") {
  const char* cases[] = {"0",      "-4",     "3/2",  "t",         "-t",
                         "t^2",    "-t^2",   "2*t",  "1-2*t^2",   "1/2*t",
                         "-1/2+t", "t+t^3",  "5/7",  "-3/2*t^4",  "1+t+t^2"};
  for (const char* s : cases) {
    Scalar v = Scalar::parse(s);
    CHECK(Scalar::parse(v.str()) == v);
  }
  CHECK(Scalar::parse(" 1 - 2*t^2 ") == Scalar(1) - Scalar(2) * Scalar::t(2));
  CHECK_THROWS_AS(Scalar::parse("t^"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse(""), std::invalid_argument);
}

TEST_CASE("evaluation at rational t") {
  Scalar p = Scalar(1) + Scalar(3) * Scalar::t(1) + Scalar::t(2);
  CHECK(p.eval_t(rat(1, 2)) == rat(11, 4));
  CHECK(p.eval_t(0) == 1);
  CHECK(Scalar(rat(5, 3)).eval_t(7) == rat(5, 3));
}
