#include <doctest.h>

#include <bit>

#include "subq/determinants.hpp"
#include "subq/errors.hpp"

using namespace subq;

TEST_CASE("enumeration (2,1,1)") {
    const auto basis = enumerate_determinants(2, 1, 1);
    REQUIRE(basis.size() == 4);
    CHECK(basis[0].alpha_mask == 0b01);
    CHECK(basis[0].beta_mask == 0b01);
    CHECK(basis.hf_index() == 0);
}

TEST_CASE("enumeration (1,1,0)") {
    const auto basis = enumerate_determinants(1, 1, 0);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].alpha_mask == 0b1);
    CHECK(basis[0].beta_mask == 0);
}

TEST_CASE("enumeration (4,2,2)") {
    CHECK(enumerate_determinants(4, 2, 2).size() == 36);
}

TEST_CASE("counts exceeding orbitals rejected") {
    CHECK_THROWS_AS(enumerate_determinants(2, 3, 1), ValidationError);
    CHECK_THROWS_AS(enumerate_determinants(2, 1, 3), ValidationError);
}

TEST_CASE("lexicographic order with aufbau first") {
    const auto basis = enumerate_determinants(4, 2, 1);
    CHECK(basis[0].alpha_mask == 0b0011);
    CHECK(basis[0].beta_mask == 0b0001);
    for (std::size_t i = 1; i < basis.size(); ++i) {
        const auto& prev = basis[i - 1];
        const auto& cur = basis[i];
        const bool ordered = prev.alpha_mask < cur.alpha_mask ||
                             (prev.alpha_mask == cur.alpha_mask && prev.beta_mask < cur.beta_mask);
        CHECK(ordered);
        CHECK(std::popcount(cur.alpha_mask) == 2);
        CHECK(std::popcount(cur.beta_mask) == 1);
    }
}

TEST_CASE("index lookups round-trip") {
    const auto basis = enumerate_determinants(5, 2, 2);
    for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis[i]) == i);
    CHECK(basis.index_of({0b11111, 0b1}) == ConfigurationBasis::npos);
}
