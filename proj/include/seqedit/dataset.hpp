#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "seqedit/alphabet.hpp"
#include "seqedit/edit_script.hpp"
#include "seqedit/oracle.hpp"
#include "seqedit/rng.hpp"
#include "seqedit/trace.hpp"

namespace seqedit {

/// A sequence with an oracle score (e.g. log-fluorescence) and a source id.
struct LabeledSequence {
    TokenSequence seq;
    double label = 0.0;
    std::string meta;
};

using SeqPair = std::pair<TokenSequence, TokenSequence>;

/// Keep exactly the pool members whose label strictly improves on the anchor,
/// in pool order, paired as (anchor, member).
std::vector<SeqPair> build_beneficial_pairs(const LabeledSequence& anchor,
                                            const std::vector<LabeledSequence>& pool);

/// One supervised example: prompt source + instruction, completion trajectory.
struct SftExample {
    TokenSequence src;
    std::string instruction;
    Trajectory completion;
};

struct SftBuildReport {
    std::vector<SftExample> examples;
    struct Failure {
        std::size_t pair_index;
        std::string error;
    };
    std::vector<Failure> failures;
};

/// Convert pairs into verified SFT examples: completion = shortest edit script
/// + target. Every emitted example passes verify_consistency; per-pair aligner
/// errors are collected, not thrown.
SftBuildReport pairs_to_sft(const std::vector<SeqPair>& pairs, const std::string& instruction);

/// Draw k ~ Uniform{k_min..k_max} random atomic edits and apply them in
/// sequence. Per edit: kind uniform over the kinds valid at the current
/// length, position uniform over the valid range, token uniform over the
/// sampling set. Replace may draw the incumbent token; such no-op edits still
/// count against k.
///
/// sampling_set: token pool for Insert/Replace. Defaults to the alphabet's
/// sampling set (protein: 20 canonical residues) or, for the open Smiles
/// alphabet, the sorted unique tokens of src. Throws EmptySamplingSetError
/// when the resolved set is empty.
std::pair<EditScript, TokenSequence> sample_random_edits(
    const TokenSequence& src, int k_min, int k_max, Rng& rng,
    const std::vector<std::string>* sampling_set = nullptr);

/// Rejection-sample perturbations of the anchor, keep those the oracle scores
/// strictly above the anchor's label, until n kept (exact-string dedup) or the
/// attempt cap (attempt_cap_factor * n) is hit, in which case
/// AttemptCapError(kept, attempts) is thrown.
std::vector<SeqPair> augment_with_pseudolabels(const LabeledSequence& anchor, std::size_t n,
                                               Oracle& oracle, Rng& rng, int k_min = 1,
                                               int k_max = 3, std::size_t attempt_cap_factor = 50);

struct LeakageReport {
    std::vector<std::size_t> leaked_eval_indices;  ///< eval entries found in train
    bool clean() const { return leaked_eval_indices.empty(); }
};

/// Exact-string overlap between eval and train, after optional oracle
/// canonicalization of both sides.
LeakageReport dedup_and_leakage_check(const std::vector<TokenSequence>& train,
                                      const std::vector<TokenSequence>& eval,
                                      Oracle* canonicalizer = nullptr);

// ---- interchange ------------------------------------------------------------

/// CSV pool: header "sequence,label" optional; one row per labeled sequence,
/// optional third column for the source id.
std::vector<LabeledSequence> read_labeled_csv(std::istream& in, AlphabetKind kind);
std::vector<LabeledSequence> read_labeled_csv_file(const std::string& path, AlphabetKind kind);

/// JSONL dataset rows: {"src", "instruction", "trace", "output"} where trace
/// is the rendered script text. Schema documented in docs/formats.md.
std::string sft_example_to_jsonl(const SftExample& ex);
SftExample sft_example_from_jsonl(const std::string& line, AlphabetKind kind);
void write_sft_jsonl(std::ostream& out, const std::vector<SftExample>& examples);

}  // namespace seqedit
