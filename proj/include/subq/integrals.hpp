#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace subq {

// Electron integrals over spatial orbitals, in Hartree.
// one_body is symmetric in (p,q); two_body carries the full 8-fold
// permutational symmetry of chemists'-notation (pq|rs) integrals.
class IntegralTable {
  public:
    IntegralTable() = default;
    explicit IntegralTable(std::size_t n_orb);

    std::size_t n_orb() const { return n_orb_; }

    double core_energy() const { return core_energy_; }
    void set_core_energy(double e) { core_energy_ = e; }

    double one_body(std::size_t p, std::size_t q) const;
    // Stores h_pq = h_qp.
    void set_one_body(std::size_t p, std::size_t q, double value);

    // Chemists' notation (pq|rs).
    double two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const;
    // Stores all 8 index permutations of (pq|rs).
    void set_two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double value);

  private:
    std::size_t index1(std::size_t p, std::size_t q) const { return p * n_orb_ + q; }
    std::size_t index2(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
        return ((p * n_orb_ + q) * n_orb_ + r) * n_orb_ + s;
    }
    void check_index(std::size_t p) const;

    std::size_t n_orb_ = 0;
    double core_energy_ = 0.0;
    std::vector<double> one_;
    std::vector<double> two_;
};

struct FcidumpHeader {
    std::size_t n_orb = 0;
    std::size_t n_elec = 0;
    int ms2 = 0;
};

struct FcidumpData {
    FcidumpHeader header;
    IntegralTable integrals;
};

// Parses the FCIDUMP interchange format: a `&FCI NORB=...,NELEC=...,MS2=...`
// namelist terminated by `/` or `&END`, followed by `value i j k l` records
// with 1-based indices. Records with k=l=0 are one-body (core energy when
// i=j=0); the rest are two-body in chemists' notation.
FcidumpData parse_fcidump(std::istream& in);
FcidumpData parse_fcidump_file(const std::string& path);

} // namespace subq
