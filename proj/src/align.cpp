#include "seqedit/align.hpp"

#include <algorithm>

#include "seqedit/errors.hpp"

namespace seqedit {

namespace {

void check_pair(const TokenSequence& src, const TokenSequence& tgt) {
    if (src.kind != tgt.kind) throw AlphabetMismatchError();
    const std::size_t cells = (src.size() + 1) * (tgt.size() + 1);
    if (cells > kMaxDpCells) throw LengthGuardError(src.size(), tgt.size());
}

}  // namespace

DpTable dp_table(const TokenSequence& src, const TokenSequence& tgt) {
    check_pair(src, tgt);
    DpTable t;
    t.m = src.size();
    t.n = tgt.size();
    t.cost.assign((t.m + 1) * (t.n + 1), 0);
    auto cell = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
        return t.cost[i * (t.n + 1) + j];
    };
    for (std::size_t i = 0; i <= t.m; ++i) cell(i, 0) = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j <= t.n; ++j) cell(0, j) = static_cast<std::uint32_t>(j);
    for (std::size_t i = 1; i <= t.m; ++i) {
        for (std::size_t j = 1; j <= t.n; ++j) {
            const std::uint32_t sub =
                cell(i - 1, j - 1) + (src.tokens[i - 1] == tgt.tokens[j - 1] ? 0u : 1u);
            const std::uint32_t del = cell(i - 1, j) + 1;
            const std::uint32_t ins = cell(i, j - 1) + 1;
            cell(i, j) = std::min({sub, del, ins});
        }
    }
    return t;
}

std::size_t levenshtein_distance(const TokenSequence& src, const TokenSequence& tgt) {
    check_pair(src, tgt);
    const std::size_t n = tgt.size();
    std::vector<std::uint32_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = static_cast<std::uint32_t>(j);
    for (std::size_t i = 1; i <= src.size(); ++i) {
        cur[0] = static_cast<std::uint32_t>(i);
        for (std::size_t j = 1; j <= n; ++j) {
            const std::uint32_t sub =
                prev[j - 1] + (src.tokens[i - 1] == tgt.tokens[j - 1] ? 0u : 1u);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

std::vector<AlignmentStep> backtrace(const DpTable& table, const TokenSequence& src,
                                     const TokenSequence& tgt) {
    std::vector<AlignmentStep> steps;
    std::size_t i = table.m, j = table.n;
    while (i > 0 || j > 0) {
        // Fixed tie priority: diagonal, then delete (up), then insert (left).
        if (i > 0 && j > 0) {
            const bool eq = src.tokens[i - 1] == tgt.tokens[j - 1];
            if (table.at(i, j) == table.at(i - 1, j - 1) + (eq ? 0u : 1u)) {
                steps.push_back({eq ? StepKind::Match : StepKind::Substitute, i - 1, j - 1});
                --i;
                --j;
                continue;
            }
        }
        if (i > 0 && table.at(i, j) == table.at(i - 1, j) + 1) {
            steps.push_back({StepKind::Delete, i - 1, std::nullopt});
            --i;
            continue;
        }
        steps.push_back({StepKind::Insert, std::nullopt, j - 1});
        --j;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

EditScript alignment_to_script(const std::vector<AlignmentStep>& steps, const TokenSequence& src,
                               const TokenSequence& tgt) {
    EditScript script;
    std::vector<std::string> cur = src.tokens;
    std::size_t cursor = 0;
    for (const auto& step : steps) {
        switch (step.kind) {
            case StepKind::Match:
                if (cursor >= cur.size() || !step.src_index ||
                    cur[cursor] != src.tokens[*step.src_index])
                    throw InconsistentAlignmentError("match step desynchronized");
                ++cursor;
                break;
            case StepKind::Substitute: {
                if (cursor >= cur.size() || !step.src_index || !step.tgt_index)
                    throw InconsistentAlignmentError("substitute step desynchronized");
                const std::string& old_tok = cur[cursor];
                const std::string& new_tok = tgt.tokens[*step.tgt_index];
                script.ops.push_back(EditOp::replace(cursor, old_tok, new_tok));
                cur[cursor] = new_tok;
                ++cursor;
                break;
            }
            case StepKind::Delete:
                if (cursor >= cur.size() || !step.src_index)
                    throw InconsistentAlignmentError("delete step desynchronized");
                script.ops.push_back(EditOp::del(cursor, cur[cursor]));
                cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(cursor));
                break;
            case StepKind::Insert: {
                if (!step.tgt_index) throw InconsistentAlignmentError("insert step without target");
                const std::string& tok = tgt.tokens[*step.tgt_index];
                script.ops.push_back(EditOp::insert(cursor, tok));
                cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(cursor), tok);
                ++cursor;
                break;
            }
        }
    }
    if (cur != tgt.tokens) throw InconsistentAlignmentError("replay did not reach the target");
    return script;
}

EditScript shortest_edit_script(const TokenSequence& src, const TokenSequence& tgt) {
    const DpTable table = dp_table(src, tgt);
    return alignment_to_script(backtrace(table, src, tgt), src, tgt);
}

}  // namespace seqedit
