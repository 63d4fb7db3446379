#include "subq/slater_condon.hpp"

#include <bit>

#include "subq/errors.hpp"

namespace subq {

namespace {

// Blocked spin-orbital index: alpha orbitals occupy bits [0, n_orb),
// beta orbitals bits [n_orb, 2*n_orb) of the combined occupation mask.
std::uint64_t combined_occupation(const Determinant& det, std::size_t n_orb) {
    return det.alpha_mask | (det.beta_mask << n_orb);
}

std::uint64_t bits_below(unsigned k) {
    return k >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
}

// Parity of the occupied spin-orbitals strictly between a and b.
int transposition_sign(std::uint64_t occ, unsigned a, unsigned b) {
    const unsigned lo = std::min(a, b);
    const unsigned hi = std::max(a, b);
    const std::uint64_t between = bits_below(hi) & ~bits_below(lo + 1);
    return (std::popcount(occ & between) & 1) ? -1 : 1;
}

struct SpinOrbital {
    std::size_t spatial;
    bool beta;
};

SpinOrbital split(unsigned so, std::size_t n_orb) {
    return so < n_orb ? SpinOrbital{so, false} : SpinOrbital{so - n_orb, true};
}

std::vector<unsigned> set_bits(std::uint64_t mask) {
    std::vector<unsigned> out;
    while (mask) {
        out.push_back(static_cast<unsigned>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

void check_compatible(const Determinant& a, const Determinant& b, std::size_t n_orb) {
    const std::uint64_t overflow = ~((n_orb == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_orb) - 1));
    if ((a.alpha_mask | a.beta_mask | b.alpha_mask | b.beta_mask) & overflow)
        throw ValidationError("determinant occupies orbitals beyond the integral table");
    if (std::popcount(a.alpha_mask) != std::popcount(b.alpha_mask) ||
        std::popcount(a.beta_mask) != std::popcount(b.beta_mask))
        throw ValidationError("determinants have different particle numbers");
}

} // namespace

std::size_t excitation_degree(const Determinant& a, const Determinant& b) {
    return static_cast<std::size_t>(std::popcount(a.alpha_mask ^ b.alpha_mask) +
                                    std::popcount(a.beta_mask ^ b.beta_mask)) /
           2;
}

double slater_condon_element(const Determinant& det_i, const Determinant& det_j,
                             const IntegralTable& integrals) {
    const std::size_t n_orb = integrals.n_orb();
    check_compatible(det_i, det_j, n_orb);

    const std::uint64_t occ_i = combined_occupation(det_i, n_orb);
    const std::uint64_t occ_j = combined_occupation(det_j, n_orb);
    const std::uint64_t diff = occ_i ^ occ_j;
    const int degree = std::popcount(diff) / 2;

    if (degree > 2) return 0.0;

    if (degree == 0) {
        const auto occupied = set_bits(occ_i);
        double e = 0.0;
        for (std::size_t k = 0; k < occupied.size(); ++k) {
            const auto K = split(occupied[k], n_orb);
            e += integrals.one_body(K.spatial, K.spatial);
            for (std::size_t l = k + 1; l < occupied.size(); ++l) {
                const auto L = split(occupied[l], n_orb);
                e += integrals.two_body(K.spatial, K.spatial, L.spatial, L.spatial);
                if (K.beta == L.beta)
                    e -= integrals.two_body(K.spatial, L.spatial, L.spatial, K.spatial);
            }
        }
        return e;
    }

    if (degree == 1) {
        const unsigned hole = static_cast<unsigned>(std::countr_zero(occ_i & diff));
        const unsigned part = static_cast<unsigned>(std::countr_zero(occ_j & diff));
        const auto A = split(hole, n_orb);
        const auto B = split(part, n_orb);
        double e = integrals.one_body(A.spatial, B.spatial);
        for (unsigned so : set_bits(occ_i)) {
            if (so == hole) continue;
            const auto L = split(so, n_orb);
            e += integrals.two_body(A.spatial, B.spatial, L.spatial, L.spatial);
            if (L.beta == A.beta)
                e -= integrals.two_body(A.spatial, L.spatial, L.spatial, B.spatial);
        }
        return e * transposition_sign(occ_i, hole, part);
    }

    // degree == 2: holes/particles sorted by blocked index pair up channelwise.
    const auto holes = set_bits(occ_i & diff);
    const auto parts = set_bits(occ_j & diff);
    const auto A1 = split(holes[0], n_orb);
    const auto A2 = split(holes[1], n_orb);
    const auto B1 = split(parts[0], n_orb);
    const auto B2 = split(parts[1], n_orb);

    double direct = 0.0;
    if (A1.beta == B1.beta && A2.beta == B2.beta)
        direct = integrals.two_body(A1.spatial, B1.spatial, A2.spatial, B2.spatial);
    double exchange = 0.0;
    if (A1.beta == B2.beta && A2.beta == B1.beta)
        exchange = integrals.two_body(A1.spatial, B2.spatial, A2.spatial, B1.spatial);

    int sign = transposition_sign(occ_i, holes[0], parts[0]);
    const std::uint64_t occ_mid = (occ_i ^ (std::uint64_t{1} << holes[0])) | (std::uint64_t{1} << parts[0]);
    sign *= transposition_sign(occ_mid, holes[1], parts[1]);

    return sign * (direct - exchange);
}

std::vector<Determinant> connected_determinants(const Determinant& det, std::size_t n_orb) {
    std::vector<Determinant> out;

    auto singles = [n_orb](std::uint64_t mask) {
        std::vector<std::uint64_t> res;
        const std::uint64_t full = (n_orb == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_orb) - 1);
        for (unsigned a : set_bits(mask))
            for (unsigned b : set_bits(full & ~mask))
                res.push_back((mask ^ (std::uint64_t{1} << a)) | (std::uint64_t{1} << b));
        return res;
    };

    const auto alpha_singles = singles(det.alpha_mask);
    const auto beta_singles = singles(det.beta_mask);

    for (std::uint64_t a : alpha_singles) out.push_back({a, det.beta_mask});
    for (std::uint64_t b : beta_singles) out.push_back({det.alpha_mask, b});

    // opposite-spin doubles
    for (std::uint64_t a : alpha_singles)
        for (std::uint64_t b : beta_singles) out.push_back({a, b});

    // same-spin doubles
    auto doubles = [n_orb](std::uint64_t mask) {
        std::vector<std::uint64_t> res;
        const std::uint64_t full = (n_orb == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_orb) - 1);
        const auto occ = set_bits(mask);
        const auto vac = set_bits(full & ~mask);
        for (std::size_t i = 0; i < occ.size(); ++i)
            for (std::size_t j = i + 1; j < occ.size(); ++j)
                for (std::size_t k = 0; k < vac.size(); ++k)
                    for (std::size_t l = k + 1; l < vac.size(); ++l)
                        res.push_back(mask ^ (std::uint64_t{1} << occ[i]) ^ (std::uint64_t{1} << occ[j]) ^
                                      (std::uint64_t{1} << vac[k]) ^ (std::uint64_t{1} << vac[l]));
        return res;
    };

    for (std::uint64_t a : doubles(det.alpha_mask)) out.push_back({a, det.beta_mask});
    for (std::uint64_t b : doubles(det.beta_mask)) out.push_back({det.alpha_mask, b});

    return out;
}

} // namespace subq
