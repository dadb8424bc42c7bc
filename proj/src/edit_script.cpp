#include "seqedit/edit_script.hpp"

#include <charconv>

#include "seqedit/errors.hpp"
#include "seqedit/util.hpp"

namespace seqedit {

std::string to_string(EditKind kind) {
    switch (kind) {
        case EditKind::Insert: return "INSERT";
        case EditKind::Delete: return "DELETE";
        case EditKind::Replace: return "REPLACE";
    }
    return "?";
}

TokenSequence apply_op(const TokenSequence& seq, const EditOp& op) {
    TokenSequence out = seq;
    const std::size_t len = seq.tokens.size();
    switch (op.kind) {
        case EditKind::Insert:
            if (op.pos > len) throw PositionOutOfRangeError(op.pos, len);
            out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(op.pos), op.token);
            break;
        case EditKind::Delete:
            if (op.pos >= len) throw PositionOutOfRangeError(op.pos, len);
            if (!op.token.empty() && seq.tokens[op.pos] != op.token)
                throw TokenMismatchError(op.pos, op.token, seq.tokens[op.pos]);
            out.tokens.erase(out.tokens.begin() + static_cast<std::ptrdiff_t>(op.pos));
            break;
        case EditKind::Replace:
            if (op.pos >= len) throw PositionOutOfRangeError(op.pos, len);
            if (!op.old_token.empty() && seq.tokens[op.pos] != op.old_token)
                throw TokenMismatchError(op.pos, op.old_token, seq.tokens[op.pos]);
            out.tokens[op.pos] = op.token;
            break;
    }
    return out;
}

ExecResult execute(const TokenSequence& src, const EditScript& script, ExecOptions opt) {
    ExecResult res;
    res.output = src;
    if (opt.keep_trace) res.trace.push_back(src);
    for (std::size_t step = 0; step < script.ops.size(); ++step) {
        const EditOp& op = script.ops[step];
        try {
            res.output = apply_op(res.output, op);
        } catch (TokenMismatchError& e) {
            if (opt.mode == ExecMode::Lenient) {
                // Apply without the expectation check and keep going.
                EditOp relaxed = op;
                relaxed.token = op.kind == EditKind::Delete ? std::string{} : op.token;
                relaxed.old_token.clear();
                res.output = apply_op(res.output, relaxed);
                res.warnings.push_back("step " + std::to_string(step) + ": " + e.what());
            } else {
                e.step = static_cast<int>(step);
                throw;
            }
        } catch (EditError& e) {
            e.step = static_cast<int>(step);
            throw;
        }
        if (opt.keep_trace) res.trace.push_back(res.output);
    }
    return res;
}

namespace {

std::size_t parse_position(const std::string& field, std::size_t line_no) {
    if (field.empty()) throw ScriptSyntaxError(line_no, "missing position");
    std::size_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range)
        throw ScriptSyntaxError(line_no, "position out of range: " + field);
    if (ec != std::errc() || ptr != last)
        throw ScriptSyntaxError(line_no, "not a non-negative integer: " + field);
    return value;
}

std::string checked_token(const std::string& field, const Alphabet& alphabet, std::size_t line_no) {
    if (!alphabet.contains(field))
        throw ScriptSyntaxError(line_no, "not a valid " + to_string(alphabet.kind()) +
                                             " token: '" + field + "'");
    return field;
}

}  // namespace

EditScript parse_script(const std::string& text, const Alphabet& alphabet) {
    EditScript script;
    const auto lines = split_lines(text);
    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        const std::size_t line_no = idx + 1;
        const auto fields = split_ws(lines[idx]);
        if (fields.empty()) continue;  // blank line
        const std::string& verb = fields[0];
        if (verb == "INSERT") {
            // INSERT <tok> at position <p>
            if (fields.size() != 5 || fields[2] != "at" || fields[3] != "position")
                throw ScriptSyntaxError(line_no, "expected 'INSERT <tok> at position <p>'");
            script.ops.push_back(EditOp::insert(parse_position(fields[4], line_no),
                                                checked_token(fields[1], alphabet, line_no)));
        } else if (verb == "DELETE") {
            // DELETE <tok> at position <p>  |  DELETE at position <p>
            if (fields.size() == 5 && fields[2] == "at" && fields[3] == "position") {
                script.ops.push_back(EditOp::del(parse_position(fields[4], line_no),
                                                 checked_token(fields[1], alphabet, line_no)));
            } else if (fields.size() == 4 && fields[1] == "at" && fields[2] == "position") {
                script.ops.push_back(EditOp::del(parse_position(fields[3], line_no)));
            } else {
                throw ScriptSyntaxError(line_no, "expected 'DELETE [<tok>] at position <p>'");
            }
        } else if (verb == "REPLACE") {
            // REPLACE <old> with <new> at position <p>
            if (fields.size() != 7 || fields[2] != "with" || fields[4] != "at" ||
                fields[5] != "position")
                throw ScriptSyntaxError(line_no, "expected 'REPLACE <old> with <new> at position <p>'");
            script.ops.push_back(EditOp::replace(parse_position(fields[6], line_no),
                                                 checked_token(fields[1], alphabet, line_no),
                                                 checked_token(fields[3], alphabet, line_no)));
        } else {
            throw ScriptSyntaxError(line_no, "unknown op '" + verb + "'");
        }
    }
    return script;
}

std::string render_op(const EditOp& op) {
    const std::string pos = std::to_string(op.pos);
    switch (op.kind) {
        case EditKind::Insert:
            return "INSERT " + op.token + " at position " + pos;
        case EditKind::Delete:
            if (op.token.empty()) return "DELETE at position " + pos;
            return "DELETE " + op.token + " at position " + pos;
        case EditKind::Replace:
            return "REPLACE " + op.old_token + " with " + op.token + " at position " + pos;
    }
    return {};
}

std::string render_script(const EditScript& script) {
    std::string out;
    for (std::size_t i = 0; i < script.ops.size(); ++i) {
        if (i) out += '\n';
        out += render_op(script.ops[i]);
    }
    return out;
}

}  // namespace seqedit
