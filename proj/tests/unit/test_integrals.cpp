#include <doctest.h>

#include <sstream>

#include "subq/errors.hpp"
#include "subq/integrals.hpp"

using namespace subq;

TEST_CASE("fcidump one-body record") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.5 1 1 0 0\n");
    const auto data = parse_fcidump(in);
    CHECK(data.header.n_orb == 2);
    CHECK(data.header.n_elec == 2);
    CHECK(data.header.ms2 == 0);
    CHECK(data.integrals.one_body(0, 0) == doctest::Approx(0.5));
    CHECK(data.integrals.one_body(1, 1) == 0.0);
}

TEST_CASE("fcidump core energy record") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.7 0 0 0 0\n");
    const auto data = parse_fcidump(in);
    CHECK(data.integrals.core_energy() == doctest::Approx(0.7));
}

TEST_CASE("fcidump two-body symmetry expansion") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.3 1 2 1 2\n");
    const auto data = parse_fcidump(in);
    const auto& t = data.integrals;
    for (double v : {t.two_body(0, 1, 0, 1), t.two_body(1, 0, 0, 1), t.two_body(0, 1, 1, 0),
                     t.two_body(1, 0, 1, 0)})
        CHECK(v == doctest::Approx(0.3));
}

TEST_CASE("fcidump one-body symmetrized") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.25 2 1 0 0\n");
    const auto data = parse_fcidump(in);
    CHECK(data.integrals.one_body(0, 1) == doctest::Approx(0.25));
    CHECK(data.integrals.one_body(1, 0) == doctest::Approx(0.25));
}

TEST_CASE("fcidump &END terminator and multi-line header") {
    std::istringstream in("&FCI NORB=3,NELEC=2,\n MS2=0, ORBSYM=1,1,1,\n&END\n0.5 1 1 0 0\n");
    const auto data = parse_fcidump(in);
    CHECK(data.header.n_orb == 3);
}

TEST_CASE("fcidump malformed header") {
    std::istringstream missing_norb("&FCI NELEC=2,MS2=0,\n/\n");
    CHECK_THROWS_AS(parse_fcidump(missing_norb), FormatError);

    std::istringstream no_magic("NORB=2,NELEC=2,MS2=0,\n/\n");
    CHECK_THROWS_AS(parse_fcidump(no_magic), FormatError);

    std::istringstream unterminated("&FCI NORB=2,NELEC=2,MS2=0,\n0.5 1 1 0 0\n");
    CHECK_THROWS_AS(parse_fcidump(unterminated), FormatError);
}

TEST_CASE("fcidump index out of range") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.5 3 1 0 0\n");
    CHECK_THROWS_AS(parse_fcidump(in), ValidationError);
}

TEST_CASE("fcidump mixed zero index rejected") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.5 1 0 0 0\n");
    CHECK_THROWS_AS(parse_fcidump(in), ValidationError);
    std::istringstream in2("&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.5 1 1 2 0\n");
    CHECK_THROWS_AS(parse_fcidump(in2), ValidationError);
}

TEST_CASE("integral table validates indices") {
    IntegralTable t(2);
    CHECK_THROWS_AS(t.one_body(2, 0), ValidationError);
    CHECK_THROWS_AS(t.two_body(0, 0, 0, 2), ValidationError);
}
