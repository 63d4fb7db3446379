#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "subq/counts.hpp"

namespace subq {

// Even-parity encoding of configuration indices: the q index bits gain one
// parity bit (stored as the top bit of the state index, rendered last) so
// every physical bitstring has even total parity. Any two physical strings
// then sit at even Hamming distance and any single bit flip is detectable.
struct EncodingMap {
    std::size_t q = 0;      // index bits
    std::uint64_t n = 0;    // physical configuration count, n <= 2^q

    // (q+1)-bit state index of configuration i.
    std::uint64_t encode_state(std::uint64_t i) const;
    // Rendered (q+1)-character bitstring of configuration i.
    std::string encode_index(std::uint64_t i) const;

    std::uint64_t index_bits(std::uint64_t outcome) const;
    bool parity_even(std::uint64_t outcome) const;
};

enum class OutcomeKind { valid, parity_flagged, pad_flagged };

struct DecodedOutcome {
    OutcomeKind kind;
    std::uint64_t index = 0; // meaningful for valid outcomes
};

DecodedOutcome decode_outcome(std::uint64_t outcome, const EncodingMap& map);

// Post-selection result. valid counts are keyed by configuration index;
// flagged counts keep the raw (q+1)-bit outcome. Pad outcomes (even parity,
// index >= n) are artifacts of zero padding and are discarded.
struct PostselectResult {
    std::map<std::uint64_t, std::uint64_t> valid;   // index -> count
    std::map<std::uint64_t, std::uint64_t> flagged; // raw outcome -> count
    std::uint64_t pad_discarded = 0;
};

PostselectResult postselect(const BitstringCounts& counts, const EncodingMap& map);

// Attributes each parity-flagged outcome to its Hamming-distance-1 physical
// neighbor with the highest current valid count (ties: lowest index), adding
// the flagged shots there. Flagged outcomes whose distance-1 neighbors are
// all pads are discarded. Processes flagged outcomes in ascending raw order.
struct RecoveryResult {
    std::map<std::uint64_t, std::uint64_t> valid; // merged index -> count
    std::uint64_t recovered = 0;
    std::uint64_t discarded = 0;
};

RecoveryResult recover(const std::map<std::uint64_t, std::uint64_t>& flagged,
                       const std::map<std::uint64_t, std::uint64_t>& valid,
                       const EncodingMap& map);

// Structured text block: shots retained / flagged / recovered / discarded.
struct MitigationReport {
    std::uint64_t shots_total = 0;
    std::uint64_t retained = 0;
    std::uint64_t parity_flagged = 0;
    std::uint64_t recovered = 0;
    std::uint64_t pad_discarded = 0;
    std::uint64_t flagged_discarded = 0;

    std::string to_text() const;
};

} // namespace subq
