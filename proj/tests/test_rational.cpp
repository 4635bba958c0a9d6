#include "doctest.h"

#include "freecomm/rational.hpp"

#include <stdexcept>

using freecomm::Rat;

TEST_CASE("parse_rat accepts integers, fractions and exact decimals")
{
    CHECK(freecomm::parse_rat("3") == 3);
    CHECK(freecomm::parse_rat("-6/4") == Rat(-3, 2));
    CHECK(freecomm::parse_rat("0.45") == Rat(9, 20));
    CHECK(freecomm::parse_rat(" -.5 ") == Rat(-1, 2));
    CHECK_THROWS_AS(freecomm::parse_rat("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(freecomm::parse_rat("abc"), std::invalid_argument);
    CHECK_THROWS_AS(freecomm::parse_rat(""), std::invalid_argument);
}

TEST_CASE("make_rat keeps lowest terms with positive denominator")
{
    Rat r = freecomm::make_rat(4, -6);
    CHECK(r.get_num() == -2);
    CHECK(r.get_den() == 3);
    CHECK_THROWS_AS(freecomm::make_rat(1, 0), std::domain_error);
}

TEST_CASE("rendering")
{
    CHECK(freecomm::to_string(Rat(7, 3)) == "7/3");
    CHECK(freecomm::to_string(Rat(-4)) == "-4");
    CHECK(freecomm::to_decimal(Rat(2, 3), 4) == "0.6667");
    CHECK(freecomm::to_decimal(Rat(-1, 8), 2) == "-0.13");
    CHECK(freecomm::to_decimal(Rat(-1, 1000), 2) == "0.00");
    CHECK(freecomm::to_decimal(Rat(5), 0) == "5");
}

TEST_CASE("pow")
{
    CHECK(freecomm::pow(Rat(2, 3), 3) == Rat(8, 27));
    CHECK(freecomm::pow(Rat(2, 3), -2) == Rat(9, 4));
    CHECK(freecomm::pow(Rat(0), 0) == 1);
    CHECK_THROWS_AS(freecomm::pow(Rat(0), -1), std::domain_error);
}
