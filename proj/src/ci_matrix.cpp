#include "subq/ci_matrix.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <set>

#include "subq/errors.hpp"
#include "subq/slater_condon.hpp"

namespace subq {

double CIMatrix::element(std::uint64_t i, std::uint64_t j) const {
    const std::uint64_t a = std::max(i, j);
    const std::uint64_t b = std::min(i, j);
    for (const auto& t : entries)
        if (t.i == a && t.j == b) return static_cast<double>(t.value);
    return 0.0;
}

CIMatrix build_cim(const ConfigurationBasis& basis, const IntegralTable& integrals,
                   double drop_tol) {
    if (basis.size() == 0) throw ValidationError("configuration basis is empty");
    if (basis.n_orb() != integrals.n_orb())
        throw ValidationError("basis and integral table disagree on orbital count");

    const std::size_t n = basis.size();
    CIMatrix m;
    m.n = n;
    m.core_energy = integrals.core_energy();

    std::vector<std::vector<CIMatrix::Triplet>> rows(n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = rows[i];
        for (std::size_t j = 0; j <= i; ++j) {
            if (excitation_degree(basis[i], basis[j]) > 2) continue;
            const double value = slater_condon_element(basis[i], basis[j], integrals);
            if (value == 0.0 || std::abs(value) <= drop_tol) continue;
            row.push_back({i, j, static_cast<float>(value)});
        }
    }
    for (auto& row : rows)
        m.entries.insert(m.entries.end(), row.begin(), row.end());
    return m;
}

namespace {

constexpr char kMagic[4] = {'C', 'I', 'M', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int k = 0; k < 8; ++k) buf[k] = static_cast<unsigned char>((v >> (8 * k)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf), 8);
}

void put_f32(std::ostream& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    unsigned char buf[4];
    for (int k = 0; k < 4; ++k) buf[k] = static_cast<unsigned char>((bits >> (8 * k)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf), 4);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw FormatError("CIM1 file truncated");
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | buf[k];
    return v;
}

float get_f32(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (!in) throw FormatError("CIM1 file truncated");
    std::uint32_t bits = 0;
    for (int k = 3; k >= 0; --k) bits = (bits << 8) | buf[k];
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

} // namespace

void save_matrix(const CIMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    out.write(kMagic, 4);
    put_u64(out, m.n);
    put_u64(out, m.entries.size());
    for (const auto& t : m.entries) {
        put_u64(out, t.i);
        put_u64(out, t.j);
        put_f32(out, t.value);
    }
    if (!out) throw ValidationError("write failed: " + path);
}

CIMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open matrix file: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("not a CIM1 file: " + path);

    CIMatrix m;
    m.n = get_u64(in);
    if (m.n == 0) throw ValidationError("CIM1 matrix has dimension 0");
    const std::uint64_t count = get_u64(in);

    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    m.entries.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        CIMatrix::Triplet t;
        t.i = get_u64(in);
        t.j = get_u64(in);
        t.value = get_f32(in);
        if (t.i >= m.n || t.j >= m.n)
            throw ValidationError("CIM1 triplet index out of range");
        if (t.j > t.i)
            throw FormatError("CIM1 triplet above the diagonal (j > i)");
        if (!seen.insert({t.i, t.j}).second)
            throw FormatError("CIM1 duplicate triplet");
        m.entries.push_back(t);
    }
    char extra;
    if (in.read(&extra, 1)) throw FormatError("CIM1 trailing bytes after payload");
    return m;
}

} // namespace subq
