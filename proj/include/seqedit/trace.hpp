#pragma once

#include <string>

#include "seqedit/alphabet.hpp"
#include "seqedit/edit_script.hpp"

namespace seqedit {

/// A parsed completion: the edit script from the think block plus the final
/// output sequence.
struct Trajectory {
    EditScript script;
    TokenSequence output;
    std::string raw_text;      ///< original completion text when parsed
    bool no_trace = false;     ///< completion had no think block
    bool extra_blocks = false; ///< additional think blocks were stripped from the output
};

/// Serialize to the wire completion format, byte-exact:
///
///   <think>\n
///   [rendered script + \n, omitted entirely for an empty script]
///   </think>\n
///   [detokenized output]
std::string render_completion(const EditScript& script, const TokenSequence& output);

/// Parse a completion. The first <think>...</think> block is the script, the
/// remainder (trimmed, additional think blocks stripped) is the output.
/// A missing think block yields an empty script with no_trace set.
///
/// Throws MalformedTraceError on an unclosed think tag, ScriptSyntaxError on a
/// malformed script line, OutputTokenizationError when the output string does
/// not tokenize. Reward paths that must be total use check_completion instead.
Trajectory parse_completion(const std::string& text, AlphabetKind kind);

struct ConsistencyReport {
    bool parsable = false;
    bool executable = false;
    bool reproduces_output = false;
    int first_failure = -1;   ///< failing script step index, -1 when n/a
    bool no_trace = false;
    std::string detail;       ///< human-readable failure reason

    bool consistent() const { return parsable && executable && reproduces_output; }
};

/// Check that strictly executing traj.script on src reproduces traj.output.
/// Never throws: every failure is a report state.
ConsistencyReport verify_consistency(const TokenSequence& src, const Trajectory& traj);

/// Total parse-and-verify: any parse failure becomes parsable=false instead of
/// an exception. This is the function the reward gate consumes.
ConsistencyReport check_completion(const TokenSequence& src, const std::string& text,
                                   Trajectory* out_traj = nullptr);

}  // namespace seqedit
