#pragma once

#include <map>
#include <string>

#include "seqedit/metrics.hpp"
#include "seqedit/oracle.hpp"
#include "seqedit/trace.hpp"

namespace seqedit {

struct ProteinRewardSpec {
    int d_min = 1;
    int d_max = 3;
    double gate_fail_reward = 0.0;  ///< reward assigned on consistency failure
};

struct MolRewardSpec {
    ThresholdSet thresholds;          ///< strict targets; loose = correct sign
    double sim_half = 0.4;            ///< Tanimoto >= sim_half -> R_sim 0.5
    double sim_full = 0.6;            ///< Tanimoto >= sim_full -> R_sim 1.0
    ThresholdSet stability_margins;   ///< off-target drift margins
    double stability_penalty = -0.25; ///< per violated non-target property, <= 0
    double gate_fail_reward = 0.0;
};

struct RewardBreakdown {
    double total = 0.0;
    std::map<std::string, double> components;
    int d = 0;                    ///< executed script length
    bool gated = false;           ///< consistency gate failed; oracle untouched
    bool redundant_edits = false; ///< script longer than the true edit distance
};

/// R = I[d_min <= d <= d_max] + I[fitness(out) > fitness(src)], where d is the
/// executed script length. Any consistency failure short-circuits to
/// gate_fail_reward without contacting the oracle.
RewardBreakdown protein_reward(const TokenSequence& src, const Trajectory& traj,
                               const ProteinRewardSpec& spec, Oracle& oracle);

/// R = (I_valid * R_prop * R_sim) + R_stable.
///   R_prop: 1 if every target clears its strict threshold, 0.5 if every
///           target moves in the right direction, else 0.
///   R_sim:  1 / 0.5 / 0 by Tanimoto cutoffs sim_full / sim_half.
///   R_stable: stability_penalty per non-target property drifting past its
///           margin; 0 for invalid outputs (no readable properties).
/// Consistency gate as in protein_reward.
RewardBreakdown molecule_reward(const TokenSequence& src, const Trajectory& traj,
                                const InstructionSpec& instruction, const MolRewardSpec& spec,
                                Oracle& oracle);

}  // namespace seqedit
