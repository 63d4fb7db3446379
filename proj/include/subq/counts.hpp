#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace subq {

// Multiset of measured computational-basis outcomes, merged across
// repetitions. Keys are raw state indices over q_total qubits.
struct BitstringCounts {
    std::size_t q_total = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t shots_total = 0;

    void add(std::uint64_t outcome, std::uint64_t n = 1);
    void merge(const BitstringCounts& other);
};

// Rendering convention: the low q_index bits are the configuration index,
// written most-significant-first; when a parity qubit is present (the top
// bit of the outcome) its digit is appended last, matching the encoded-state
// convention of the mitigation scheme. Without a parity qubit this is the
// plain most-significant-first binary rendering.
std::string format_bitstring(std::uint64_t outcome, std::size_t q_index, bool has_parity);
std::uint64_t parse_bitstring(const std::string& text, std::size_t q_index, bool has_parity);

// Text serialization, one `bitstring count` line per outcome.
void write_counts(std::ostream& out, const BitstringCounts& counts, bool has_parity);
void write_counts_file(const std::string& path, const BitstringCounts& counts, bool has_parity);
BitstringCounts read_counts(std::istream& in, bool has_parity = false);
BitstringCounts read_counts_file(const std::string& path, bool has_parity = false);

} // namespace subq
