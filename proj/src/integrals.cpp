#include "subq/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "subq/errors.hpp"

namespace subq {

namespace {

constexpr std::size_t kMaxOrbitals = 32; // determinant masks are packed into u64 pairs

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

} // namespace

IntegralTable::IntegralTable(std::size_t n_orb) : n_orb_(n_orb) {
    if (n_orb == 0) throw ValidationError("integral table needs at least one orbital");
    if (n_orb > kMaxOrbitals)
        throw ValidationError("orbital count " + std::to_string(n_orb) + " exceeds supported maximum " +
                              std::to_string(kMaxOrbitals));
    one_.assign(n_orb * n_orb, 0.0);
    two_.assign(n_orb * n_orb * n_orb * n_orb, 0.0);
}

void IntegralTable::check_index(std::size_t p) const {
    if (p >= n_orb_)
        throw ValidationError("orbital index " + std::to_string(p) + " out of range (n_orb=" +
                              std::to_string(n_orb_) + ")");
}

double IntegralTable::one_body(std::size_t p, std::size_t q) const {
    check_index(p);
    check_index(q);
    return one_[index1(p, q)];
}

void IntegralTable::set_one_body(std::size_t p, std::size_t q, double value) {
    check_index(p);
    check_index(q);
    one_[index1(p, q)] = value;
    one_[index1(q, p)] = value;
}

double IntegralTable::two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    check_index(p);
    check_index(q);
    check_index(r);
    check_index(s);
    return two_[index2(p, q, r, s)];
}

void IntegralTable::set_two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                                 double value) {
    check_index(p);
    check_index(q);
    check_index(r);
    check_index(s);
    // (pq|rs) = (qp|rs) = (pq|sr) = (qp|sr) = (rs|pq) = (sr|pq) = (rs|qp) = (sr|qp)
    two_[index2(p, q, r, s)] = value;
    two_[index2(q, p, r, s)] = value;
    two_[index2(p, q, s, r)] = value;
    two_[index2(q, p, s, r)] = value;
    two_[index2(r, s, p, q)] = value;
    two_[index2(s, r, p, q)] = value;
    two_[index2(r, s, q, p)] = value;
    two_[index2(s, r, q, p)] = value;
}

namespace {

// Reads the &FCI ... / namelist, collecting everything up to the terminator
// into one string, then extracts NORB/NELEC/MS2.
FcidumpHeader parse_header(std::istream& in) {
    std::string collected;
    std::string line;
    bool terminated = false;
    bool first = true;
    while (std::getline(in, line)) {
        std::string u = upper(line);
        if (first) {
            auto pos = u.find("&FCI");
            if (pos == std::string::npos) throw FormatError("FCIDUMP header must start with &FCI");
            line = line.substr(pos + 4);
            u = u.substr(pos + 4);
            first = false;
        }
        auto end_pos = std::min(u.find("&END"), u.find('/'));
        if (end_pos != std::string::npos) {
            collected += line.substr(0, end_pos);
            terminated = true;
            break;
        }
        collected += line + " ";
    }
    if (first || !terminated) throw FormatError("FCIDUMP header not terminated by / or &END");

    FcidumpHeader header;
    std::string u = upper(collected);
    auto read_int = [&](const std::string& key, bool required) -> long {
        auto pos = u.find(key + "=");
        if (pos == std::string::npos) {
            if (required) throw FormatError("FCIDUMP header missing " + key);
            return 0;
        }
        pos += key.size() + 1;
        std::size_t consumed = 0;
        long value = 0;
        try {
            value = std::stol(u.substr(pos), &consumed);
        } catch (const std::exception&) {
            throw FormatError("FCIDUMP header has malformed " + key);
        }
        return value;
    };
    long norb = read_int("NORB", true);
    if (norb <= 0) throw FormatError("FCIDUMP NORB must be positive");
    header.n_orb = static_cast<std::size_t>(norb);
    long nelec = read_int("NELEC", true);
    if (nelec < 0) throw FormatError("FCIDUMP NELEC must be nonnegative");
    header.n_elec = static_cast<std::size_t>(nelec);
    header.ms2 = static_cast<int>(read_int("MS2", true));
    return header;
}

} // namespace

FcidumpData parse_fcidump(std::istream& in) {
    FcidumpData data;
    data.header = parse_header(in);
    data.integrals = IntegralTable(data.header.n_orb);

    const long n = static_cast<long>(data.header.n_orb);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double value;
        long i, j, k, l;
        if (!(ls >> value)) continue; // blank line
        if (!(ls >> i >> j >> k >> l))
            throw FormatError("malformed FCIDUMP record: " + line);
        if (i < 0 || j < 0 || k < 0 || l < 0 || i > n || j > n || k > n || l > n)
            throw ValidationError("FCIDUMP index out of range in record: " + line);
        if (k == 0 && l == 0) {
            if (i == 0 && j == 0) {
                data.integrals.set_core_energy(value);
            } else if (i > 0 && j > 0) {
                data.integrals.set_one_body(static_cast<std::size_t>(i - 1),
                                            static_cast<std::size_t>(j - 1), value);
            } else {
                throw ValidationError("FCIDUMP one-body record with a zero index: " + line);
            }
        } else if (i > 0 && j > 0 && k > 0 && l > 0) {
            data.integrals.set_two_body(static_cast<std::size_t>(i - 1),
                                        static_cast<std::size_t>(j - 1),
                                        static_cast<std::size_t>(k - 1),
                                        static_cast<std::size_t>(l - 1), value);
        } else {
            throw ValidationError("FCIDUMP two-body record with a zero index: " + line);
        }
    }
    return data;
}

FcidumpData parse_fcidump_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open FCIDUMP file: " + path);
    return parse_fcidump(in);
}

} // namespace subq
