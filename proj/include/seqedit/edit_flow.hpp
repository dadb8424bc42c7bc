#pragma once

#include <functional>
#include <string>
#include <vector>

#include "seqedit/alphabet.hpp"
#include "seqedit/edit_script.hpp"
#include "seqedit/rng.hpp"

namespace seqedit {

/// The blank placeholder in aligned space. Real tokens are non-empty, so the
/// empty string is unambiguous.
inline const std::string kBlank{};

/// Equal-length sequences over (token + blank); stripping blanks from z0/z1
/// recovers the endpoints. No position is blank on both sides.
struct AlignedPair {
    std::vector<std::string> z0;
    std::vector<std::string> z1;
};

/// Build the blank-augmented alignment from the Levenshtein backtrace:
/// Match/Substitute -> (src tok, tgt tok), Delete -> (src tok, blank),
/// Insert -> (blank, tgt tok).
AlignedPair align_with_blanks(const TokenSequence& x0, const TokenSequence& x1);

TokenSequence strip_blanks(const std::vector<std::string>& z, AlphabetKind kind);

/// kappa(t) = t^power. kappa(0)=0, kappa(1)=1, nondecreasing.
struct KappaSchedule {
    double power = 3.0;
    double kappa(double t) const;
    double kappa_dot(double t) const;
};

/// Interpolate: each aligned position is taken from z1 with probability
/// kappa(t), else from z0; x_t is z_t with blanks stripped.
std::pair<std::vector<std::string>, TokenSequence> sample_zt(const AlignedPair& pair, double t,
                                                             const KappaSchedule& sched, Rng& rng);

enum class FlowEditKind { Insert, Delete, Substitute };

/// One remaining edit, located both in aligned space and in the current
/// (blank-stripped) sequence. For Insert, current_index is the insertion slot:
/// insert before that index, index == length appends.
struct FlowEdit {
    std::size_t aligned_pos = 0;
    std::size_t current_index = 0;
    FlowEditKind kind = FlowEditKind::Insert;
    std::string token;  ///< payload for Insert/Substitute

    bool operator==(const FlowEdit&) const = default;
};

/// Edits still required to turn z_t into z_1: Insert where (blank, tok),
/// Delete where (tok, blank), Substitute where both differ. Throws
/// LengthMismatchError.
std::vector<FlowEdit> remaining_edits(const std::vector<std::string>& zt,
                                      const std::vector<std::string>& z1);

/// Per-position rates and token distributions of the sequence-edit CTMC at
/// one time. ins_rate/q_ins are indexed by insertion slot (size L+1, slot L
/// appends); del_rate/sub_rate/q_sub by position (size L). Callers running a
/// padded neural stack must zero rates on PAD positions and the deletion/
/// substitution rate on an anchor (BOS-style) position before handing heads
/// over; validate() checks shapes, nonnegative finite rates, and that each Q
/// row sums to 1 within 1e-9.
struct EditFlowHeads {
    std::vector<std::string> vocab;
    std::vector<double> ins_rate;              // L+1
    std::vector<double> del_rate;              // L
    std::vector<double> sub_rate;              // L
    std::vector<std::vector<double>> q_ins;    // (L+1) x |vocab|
    std::vector<std::vector<double>> q_sub;    // L x |vocab|

    void validate(std::size_t seq_len) const;  // throws HeadValidationError
    double total_rate() const;
};

struct FlowLoss {
    double value = 0.0;
    bool zero_rate = false;  ///< a required edit had zero model intensity (value = +inf)
};

/// Monte-Carlo loss at time t: sum of all rates minus
/// kappa_dot/(1-kappa) * sum over remaining edits of log r, with
/// r(Insert v @ slot i) = ins_rate[i] * q_ins[i][v], r(Delete @ i) =
/// del_rate[i], r(Substitute v @ i) = sub_rate[i] * q_sub[i][v].
/// Throws ScheduleSingularityError at t = 1.
FlowLoss editflow_loss(const EditFlowHeads& heads, const std::vector<FlowEdit>& remaining,
                       double t, const KappaSchedule& sched);

/// One sampled event of a simulation step, indexed against the sequence as it
/// was at the start of the step.
struct FlowEvent {
    std::size_t index = 0;  ///< position (Delete/Substitute) or insertion slot (Insert)
    FlowEditKind kind = FlowEditKind::Insert;
    std::string token;
};

/// First-order CTMC step draws: per position, delete-or-substitute triggers
/// with clamp((del+sub)*dt, 0, 0.9) and splits del/(del+sub); per slot, insert
/// triggers with clamp(ins*dt, 0, 0.9). Tokens come from the Q rows. Events
/// are returned left-to-right (ascending index, insert before delete/
/// substitute at the same index).
std::vector<FlowEvent> sample_step_events(const TokenSequence& seq, const EditFlowHeads& heads,
                                          double dt, Rng& rng);

struct StepResult {
    TokenSequence seq;
    std::vector<EditOp> ops;  ///< executable ops in application order
};

/// Apply events simultaneously: a single right-to-left pass so earlier
/// positions are untouched by later structural edits. The returned ops replay
/// sequentially to the same result.
StepResult apply_events(const TokenSequence& seq, const std::vector<FlowEvent>& events);

StepResult simulate_step(const TokenSequence& seq, const EditFlowHeads& heads, double dt,
                         Rng& rng);

using HeadFn = std::function<EditFlowHeads(const TokenSequence&, double)>;

struct FlowRunReport {
    std::size_t steps_run = 0;
    std::size_t edits_applied = 0;       ///< sampled CTMC edits, <= budget
    std::size_t truncation_deletes = 0;  ///< cap-enforcement deletes (in script, not budget)
    bool budget_exhausted = false;
    bool truncated = false;
};

struct FlowRun {
    TokenSequence final_seq;
    EditScript script;  ///< replays on the input to final_seq
    FlowRunReport report;
};

/// Simulate `steps` first-order steps (dt = 1/steps) under an atomic-edit
/// budget and a hard length cap. A step that would overshoot the budget is
/// truncated to its left-to-right event prefix so the run lands exactly on
/// the budget. When a step pushes the length past the cap the sequence is
/// truncated (deletes recorded in the script) and insertions are disabled for
/// the rest of the run.
FlowRun simulate_budgeted(const TokenSequence& seq0, const HeadFn& head_fn, std::size_t steps,
                          std::size_t budget, std::size_t length_cap, Rng& rng);

/// Built-in head functions for the CLI and tests:
///   zero          all rates zero (identity dynamics)
///   sub0:<tok>    a large substitution rate at position 0 peaked on <tok>
///   drift         mild uniform rates, token distributions uniform over the
///                 sequence's sampling set
HeadFn toy_head_fn(const std::string& name);

}  // namespace seqedit
