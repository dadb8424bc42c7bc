#include "seqedit/trace.hpp"

#include "seqedit/errors.hpp"
#include "seqedit/util.hpp"

namespace seqedit {

namespace {

constexpr const char* kThinkOpen = "<think>";
constexpr const char* kThinkClose = "</think>";

}  // namespace

std::string render_completion(const EditScript& script, const TokenSequence& output) {
    std::string out = kThinkOpen;
    out += '\n';
    const std::string body = render_script(script);
    if (!body.empty()) {
        out += body;
        out += '\n';
    }
    out += kThinkClose;
    out += '\n';
    out += detokenize(output);
    return out;
}

Trajectory parse_completion(const std::string& text, AlphabetKind kind) {
    Trajectory traj;
    traj.raw_text = text;

    std::string output_part;
    const std::size_t open = text.find(kThinkOpen);
    if (open == std::string::npos) {
        traj.no_trace = true;
        output_part = text;
    } else {
        const std::size_t body_start = open + std::string(kThinkOpen).size();
        const std::size_t close = text.find(kThinkClose, body_start);
        if (close == std::string::npos) throw MalformedTraceError("unclosed <think> block");
        // Per-line whitespace is normalized by the script parser itself.
        traj.script = parse_script(text.substr(body_start, close - body_start),
                                   Alphabet::of(kind));
        output_part = text.substr(close + std::string(kThinkClose).size());
    }

    // Extra think blocks after the first are stripped from the output.
    for (;;) {
        const std::size_t o = output_part.find(kThinkOpen);
        if (o == std::string::npos) break;
        const std::size_t c = output_part.find(kThinkClose, o);
        if (c == std::string::npos) throw MalformedTraceError("unclosed trailing <think> block");
        output_part.erase(o, c + std::string(kThinkClose).size() - o);
        traj.extra_blocks = true;
    }

    const std::string out_str = trim(output_part);
    try {
        if (out_str.empty())
            traj.output = TokenSequence{kind, {}};
        else
            traj.output = tokenize(out_str, kind);
    } catch (const Error& e) {
        throw OutputTokenizationError(std::string("output does not tokenize: ") + e.what());
    }
    return traj;
}

ConsistencyReport verify_consistency(const TokenSequence& src, const Trajectory& traj) {
    ConsistencyReport rep;
    rep.parsable = true;
    rep.no_trace = traj.no_trace;
    try {
        const ExecResult res = execute(src, traj.script, {ExecMode::Strict, false});
        rep.executable = true;
        rep.reproduces_output =
            res.output.kind == traj.output.kind && res.output.tokens == traj.output.tokens;
        if (!rep.reproduces_output) rep.detail = "executed result differs from claimed output";
    } catch (const EditError& e) {
        rep.executable = false;
        rep.first_failure = e.step;
        rep.detail = e.what();
    }
    return rep;
}

ConsistencyReport check_completion(const TokenSequence& src, const std::string& text,
                                   Trajectory* out_traj) {
    Trajectory traj;
    try {
        traj = parse_completion(text, src.kind);
    } catch (const Error& e) {
        ConsistencyReport rep;
        rep.parsable = false;
        rep.detail = e.what();
        return rep;
    }
    if (out_traj) *out_traj = traj;
    return verify_consistency(src, traj);
}

}  // namespace seqedit
