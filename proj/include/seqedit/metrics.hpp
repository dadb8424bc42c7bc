#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "seqedit/alphabet.hpp"
#include "seqedit/oracle.hpp"

namespace seqedit {

enum class MolProperty { LogP, Qed, Tpsa, Hba, Hbd };

inline constexpr MolProperty kAllMolProperties[] = {
    MolProperty::LogP, MolProperty::Qed, MolProperty::Tpsa, MolProperty::Hba, MolProperty::Hbd};

std::string to_string(MolProperty p);
MolProperty mol_property_from(std::string_view name);
double prop_value(const MolProps& props, MolProperty p);

/// Per-property success/shift thresholds.
struct ThresholdSet {
    double logp = 0.5;
    double qed = 0.1;
    double tpsa = 10.0;
    double hba = 1.0;
    double hbd = 1.0;

    double of(MolProperty p) const;
};

/// An optimization instruction: which properties to move and in which
/// direction (+1 increase, -1 decrease).
struct InstructionSpec {
    std::string task_name;
    std::vector<std::pair<MolProperty, int>> targets;

    bool is_target(MolProperty p) const;
    int direction(MolProperty p) const;  // 0 when not a target
};

/// The 14 instruction-conditioned optimization tasks (single and dual
/// objective) with their proxy-property directions.
const std::vector<InstructionSpec>& standard_mol_tasks();
const InstructionSpec* find_task(std::string_view task_name);

struct MolSuccess {
    bool valid = false;
    bool strict = false;
    bool loose = false;
};

/// Success under an instruction. Invalid output fails both levels. Loose:
/// s*dp > 0 for every target; strict: s*dp >= tau_p for every target.
MolSuccess mol_success(const MolProps& src_props, const MolProps& out_props,
                       const InstructionSpec& instr, const ThresholdSet& thresholds);

struct MolShift {
    int violations = 0;
    std::vector<MolProperty> violated;
};

/// Off-target drift: |dp| >= tau_p on non-target properties. Requires a valid
/// output (throws InvalidMoleculeInputError otherwise) — callers filter.
MolShift mol_shift(const MolProps& src_props, const MolProps& out_props,
                   const InstructionSpec& instr, const ThresholdSet& thresholds);

struct MolInstanceResult {
    std::string task;
    bool valid = false;
    bool strict = false;
    bool loose = false;
    int violations = 0;  ///< meaningful only when valid
};

struct MolTaskStats {
    std::size_t n = 0;
    double validity = 0.0;
    double strict_rate = 0.0;  ///< invalid counted as failure
    double loose_rate = 0.0;
    std::optional<double> shift_rate;  ///< over valid outputs only
    std::optional<double> shift_avg;
};

struct MolAggregate {
    std::map<std::string, MolTaskStats> per_task;
    MolTaskStats overall;  ///< unweighted mean over tasks (n = total instances)
};

MolAggregate mol_aggregate(const std::vector<MolInstanceResult>& instances);

/// Protein candidate-set evaluation: a = candidates the oracle scores above
/// the source, b = distinct improved strings, c = distinct improved strings
/// not in the positive training set. Ratios with zero denominators are
/// reported as absent, never as 0.
struct ProteinEvalReport {
    std::size_t n = 0;
    std::size_t success = 0;  // a
    std::size_t unique = 0;   // b
    std::size_t novel = 0;    // c
    double success_rate = 0.0;           // a/N
    std::optional<double> uniqueness;    // b/a
    std::optional<double> novelty;       // c/b
};

/// Distinctness and novelty use exact detokenized-string equality; an optional
/// canonicalizer maps strings first (for SMILES candidate sets).
ProteinEvalReport protein_eval(const TokenSequence& src, const std::vector<TokenSequence>& candidates,
                               const std::set<std::string>& train_positives, Oracle& oracle,
                               Oracle* canonicalizer = nullptr);

/// Exponential moving average: y0 = v0, yk = decay*y(k-1) + (1-decay)*vk.
std::vector<double> ema(const std::vector<double>& values, double decay);

}  // namespace seqedit
