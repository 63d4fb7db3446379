#include "subq/counts.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "subq/errors.hpp"

namespace subq {

void BitstringCounts::add(std::uint64_t outcome, std::uint64_t n) {
    counts[outcome] += n;
    shots_total += n;
}

void BitstringCounts::merge(const BitstringCounts& other) {
    if (q_total == 0) q_total = other.q_total;
    if (q_total != other.q_total)
        throw ValidationError("cannot merge counts over different register widths");
    for (const auto& [outcome, count] : other.counts) add(outcome, count);
}

std::string format_bitstring(std::uint64_t outcome, std::size_t q_index, bool has_parity) {
    std::string text(q_index, '0');
    for (std::size_t bit = 0; bit < q_index; ++bit)
        if ((outcome >> bit) & 1) text[q_index - 1 - bit] = '1';
    if (has_parity) text.push_back(((outcome >> q_index) & 1) ? '1' : '0');
    return text;
}

std::uint64_t parse_bitstring(const std::string& text, std::size_t q_index, bool has_parity) {
    const std::size_t expected = q_index + (has_parity ? 1 : 0);
    if (text.size() != expected)
        throw FormatError("bitstring '" + text + "' has length " + std::to_string(text.size()) +
                          ", expected " + std::to_string(expected));
    std::uint64_t outcome = 0;
    for (std::size_t pos = 0; pos < q_index; ++pos) {
        const char c = text[pos];
        if (c != '0' && c != '1') throw FormatError("bitstring '" + text + "' has non-binary digit");
        if (c == '1') outcome |= std::uint64_t{1} << (q_index - 1 - pos);
    }
    if (has_parity) {
        const char c = text.back();
        if (c != '0' && c != '1') throw FormatError("bitstring '" + text + "' has non-binary digit");
        if (c == '1') outcome |= std::uint64_t{1} << q_index;
    }
    return outcome;
}

void write_counts(std::ostream& out, const BitstringCounts& counts, bool has_parity) {
    const std::size_t q_index = counts.q_total - (has_parity ? 1 : 0);
    for (const auto& [outcome, count] : counts.counts)
        out << format_bitstring(outcome, q_index, has_parity) << ' ' << count << '\n';
}

void write_counts_file(const std::string& path, const BitstringCounts& counts, bool has_parity) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    write_counts(out, counts, has_parity);
}

BitstringCounts read_counts(std::istream& in, bool has_parity) {
    BitstringCounts counts;
    std::string line;
    std::size_t length = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string bits;
        std::uint64_t count;
        if (!(ls >> bits >> count)) throw FormatError("malformed counts line: " + line);
        if (length == 0) {
            length = bits.size();
            if (length == 0 || (has_parity && length < 2))
                throw FormatError("counts bitstrings too short");
            counts.q_total = length;
        } else if (bits.size() != length) {
            throw FormatError("counts bitstrings have inconsistent lengths");
        }
        const std::size_t q_index = length - (has_parity ? 1 : 0);
        counts.add(parse_bitstring(bits, q_index, has_parity), count);
    }
    return counts;
}

BitstringCounts read_counts_file(const std::string& path, bool has_parity) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open counts file: " + path);
    return read_counts(in, has_parity);
}

} // namespace subq
