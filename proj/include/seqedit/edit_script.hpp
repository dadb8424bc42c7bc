#pragma once

#include <string>
#include <vector>

#include "seqedit/alphabet.hpp"

namespace seqedit {

enum class EditKind { Insert, Delete, Replace };

std::string to_string(EditKind kind);

/// One atomic edit. `pos` is a 0-based index into the sequence as it exists
/// when the op is applied, never into the original source.
///
/// Token fields by kind:
///   Insert:  token = the token to insert before pos (pos == length appends)
///   Delete:  token = the token expected at pos; empty string = no check
///   Replace: token = the new token, old_token = the token expected at pos
struct EditOp {
    EditKind kind = EditKind::Insert;
    std::size_t pos = 0;
    std::string token;
    std::string old_token;

    static EditOp insert(std::size_t pos, std::string token) {
        return {EditKind::Insert, pos, std::move(token), {}};
    }
    static EditOp del(std::size_t pos, std::string expected = {}) {
        return {EditKind::Delete, pos, std::move(expected), {}};
    }
    static EditOp replace(std::size_t pos, std::string old_token, std::string new_token) {
        return {EditKind::Replace, pos, std::move(new_token), std::move(old_token)};
    }

    bool operator==(const EditOp&) const = default;
};

/// An ordered, executable program of atomic edits.
struct EditScript {
    std::vector<EditOp> ops;

    std::size_t size() const { return ops.size(); }
    bool empty() const { return ops.empty(); }
    bool operator==(const EditScript&) const = default;
};

/// Apply a single op with strict checks. Throws PositionOutOfRangeError when
/// the position bound fails and TokenMismatchError when an expected-token
/// check fails.
TokenSequence apply_op(const TokenSequence& seq, const EditOp& op);

enum class ExecMode {
    Strict,   ///< token-expectation mismatch raises
    Lenient,  ///< mismatch is applied anyway and recorded as a warning
};

struct ExecOptions {
    ExecMode mode = ExecMode::Strict;
    bool keep_trace = false;  ///< record every intermediate sequence
};

struct ExecResult {
    TokenSequence output;
    std::vector<TokenSequence> trace;    ///< states after each op (when keep_trace)
    std::vector<std::string> warnings;   ///< lenient-mode mismatch notes
};

/// Fold apply_op over the script. Position bound violations always raise, with
/// the failing 0-based step index set on the exception. Lenient mode downgrades
/// token-expectation mismatches to warnings.
ExecResult execute(const TokenSequence& src, const EditScript& script, ExecOptions opt = {});

/// Parse the line-oriented script grammar:
///
///   INSERT <tok> at position <p>
///   DELETE <tok> at position <p>      (token optional: DELETE at position <p>)
///   REPLACE <old> with <new> at position <p>
///
/// One op per non-empty line; surrounding whitespace is ignored. Tokens are
/// validated against the alphabet. Throws ScriptSyntaxError with a 1-based
/// line number on any malformed line. Empty text parses to an empty script.
EditScript parse_script(const std::string& text, const Alphabet& alphabet);

/// Canonical one-op-per-line rendering; inverse of parse_script. Empty script
/// renders to "". No trailing newline.
std::string render_script(const EditScript& script);

std::string render_op(const EditOp& op);

}  // namespace seqedit
