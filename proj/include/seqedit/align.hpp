#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqedit/alphabet.hpp"
#include "seqedit/edit_script.hpp"

namespace seqedit {

/// Full Levenshtein DP table over token sequences, unit costs.
/// cost[i][j] = edits to turn the first i source tokens into the first j
/// target tokens; cost[m][n] is the distance.
struct DpTable {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::uint32_t> cost;  // (m+1) x (n+1), row-major

    std::uint32_t at(std::size_t i, std::size_t j) const { return cost[i * (n + 1) + j]; }
    std::uint32_t distance() const { return at(m, n); }
};

/// Refuse to allocate tables beyond this many cells instead of exhausting
/// memory. Far above any realistic protein or SMILES pair.
inline constexpr std::size_t kMaxDpCells = 25'000'000;

enum class StepKind { Match, Substitute, Delete, Insert };

/// One step of an alignment path in forward (source-to-target) order.
/// Match/Substitute carry both indices, Delete only src_index, Insert only
/// tgt_index.
struct AlignmentStep {
    StepKind kind = StepKind::Match;
    std::optional<std::size_t> src_index;
    std::optional<std::size_t> tgt_index;

    bool operator==(const AlignmentStep&) const = default;
};

/// Build the DP table. Throws AlphabetMismatchError when the kinds differ and
/// LengthGuardError past kMaxDpCells.
DpTable dp_table(const TokenSequence& src, const TokenSequence& tgt);

/// Distance only, two rows of storage. Same guards as dp_table.
std::size_t levenshtein_distance(const TokenSequence& src, const TokenSequence& tgt);

/// Walk a minimum-cost path from (m,n) back to (0,0) and return it in forward
/// order. Ties are broken by the fixed priority kTiePriority.
std::vector<AlignmentStep> backtrace(const DpTable& table, const TokenSequence& src,
                                     const TokenSequence& tgt);

/// The documented tie-break rule: when several predecessors lie on a
/// minimum-cost path, prefer the diagonal (Match/Substitute), then Delete
/// (up), then Insert (left).
inline constexpr const char* kTiePriority = "diagonal > delete > insert";

/// Replay an alignment forward over a mutable copy of src, emitting ops whose
/// positions refer to the evolving sequence. The cursor advances on
/// Match/Substitute/Insert and holds on Delete. The resulting script has
/// exactly one op per non-Match step, so its length equals the path cost.
/// Throws InconsistentAlignmentError if the replay desynchronizes.
EditScript alignment_to_script(const std::vector<AlignmentStep>& steps, const TokenSequence& src,
                               const TokenSequence& tgt);

/// dp_table + backtrace + alignment_to_script. Guarantees
/// execute(src, result) == tgt and result.size() == levenshtein distance.
EditScript shortest_edit_script(const TokenSequence& src, const TokenSequence& tgt);

}  // namespace seqedit
