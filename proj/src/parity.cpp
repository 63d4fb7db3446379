#include "subq/parity.hpp"

#include <bit>
#include <sstream>

#include "subq/errors.hpp"

namespace subq {

std::uint64_t EncodingMap::encode_state(std::uint64_t i) const {
    if (i >= (std::uint64_t{1} << q))
        throw ValidationError("index " + std::to_string(i) + " overflows " + std::to_string(q) +
                              " bits");
    const std::uint64_t parity = static_cast<std::uint64_t>(std::popcount(i) & 1);
    return i | (parity << q);
}

std::string EncodingMap::encode_index(std::uint64_t i) const {
    return format_bitstring(encode_state(i), q, true);
}

std::uint64_t EncodingMap::index_bits(std::uint64_t outcome) const {
    return outcome & ((std::uint64_t{1} << q) - 1);
}

bool EncodingMap::parity_even(std::uint64_t outcome) const {
    return (std::popcount(outcome) & 1) == 0;
}

DecodedOutcome decode_outcome(std::uint64_t outcome, const EncodingMap& map) {
    if (outcome >> (map.q + 1))
        throw ValidationError("outcome wider than the encoded register");
    if (!map.parity_even(outcome)) return {OutcomeKind::parity_flagged, 0};
    const std::uint64_t index = map.index_bits(outcome);
    if (index >= map.n) return {OutcomeKind::pad_flagged, 0};
    return {OutcomeKind::valid, index};
}

PostselectResult postselect(const BitstringCounts& counts, const EncodingMap& map) {
    if (counts.q_total != map.q + 1)
        throw ValidationError("counts register width does not match the encoding");
    PostselectResult result;
    for (const auto& [outcome, count] : counts.counts) {
        const auto decoded = decode_outcome(outcome, map);
        switch (decoded.kind) {
            case OutcomeKind::valid: result.valid[decoded.index] += count; break;
            case OutcomeKind::parity_flagged: result.flagged[outcome] += count; break;
            case OutcomeKind::pad_flagged: result.pad_discarded += count; break;
        }
    }
    return result;
}

RecoveryResult recover(const std::map<std::uint64_t, std::uint64_t>& flagged,
                       const std::map<std::uint64_t, std::uint64_t>& valid,
                       const EncodingMap& map) {
    RecoveryResult result;
    result.valid = valid;

    for (const auto& [outcome, count] : flagged) { // ascending raw order
        if (map.parity_even(outcome))
            throw ValidationError("recovery input contains an even-parity outcome");
        bool found = false;
        std::uint64_t best_index = 0;
        std::uint64_t best_count = 0;
        // flip each of the q+1 bits once; every neighbor has even parity
        for (std::size_t bit = 0; bit <= map.q; ++bit) {
            const std::uint64_t neighbor = outcome ^ (std::uint64_t{1} << bit);
            const std::uint64_t index = map.index_bits(neighbor);
            if (index >= map.n) continue; // pad neighbor
            const auto it = result.valid.find(index);
            const std::uint64_t neighbor_count = (it == result.valid.end()) ? 0 : it->second;
            if (!found || neighbor_count > best_count ||
                (neighbor_count == best_count && index < best_index)) {
                found = true;
                best_index = index;
                best_count = neighbor_count;
            }
        }
        if (found) {
            result.valid[best_index] += count;
            result.recovered += count;
        } else {
            result.discarded += count;
        }
    }
    return result;
}

std::string MitigationReport::to_text() const {
    std::ostringstream out;
    out << "shots_total " << shots_total << '\n'
        << "retained " << retained << '\n'
        << "parity_flagged " << parity_flagged << '\n'
        << "recovered " << recovered << '\n'
        << "pad_discarded " << pad_discarded << '\n'
        << "flagged_discarded " << flagged_discarded << '\n';
    return out.str();
}

} // namespace subq
