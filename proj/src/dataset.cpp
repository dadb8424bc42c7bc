#include "seqedit/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "seqedit/align.hpp"
#include "seqedit/errors.hpp"
#include "seqedit/util.hpp"

namespace seqedit {

using nlohmann::json;

std::vector<SeqPair> build_beneficial_pairs(const LabeledSequence& anchor,
                                            const std::vector<LabeledSequence>& pool) {
    std::vector<SeqPair> pairs;
    for (const auto& cand : pool) {
        if (cand.seq.kind != anchor.seq.kind) throw AlphabetMismatchError();
        if (cand.label > anchor.label) pairs.emplace_back(anchor.seq, cand.seq);
    }
    return pairs;
}

SftBuildReport pairs_to_sft(const std::vector<SeqPair>& pairs, const std::string& instruction) {
    SftBuildReport report;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [src, tgt] = pairs[i];
        try {
            Trajectory completion;
            completion.script = shortest_edit_script(src, tgt);
            completion.output = tgt;
            const ConsistencyReport check = verify_consistency(src, completion);
            if (!check.consistent())
                throw Error("built completion failed verification: " + check.detail);
            report.examples.push_back({src, instruction, std::move(completion)});
        } catch (const Error& e) {
            report.failures.push_back({i, e.what()});
        }
    }
    return report;
}

std::pair<EditScript, TokenSequence> sample_random_edits(
    const TokenSequence& src, int k_min, int k_max, Rng& rng,
    const std::vector<std::string>* sampling_set) {
    if (k_min < 1 || k_min > k_max) throw Error("require 1 <= k_min <= k_max");

    std::vector<std::string> derived;
    if (!sampling_set) {
        derived = Alphabet::of(src.kind).sampling_tokens();
        if (derived.empty()) {
            // Open alphabet: sample from the source's own token vocabulary.
            std::set<std::string> uniq(src.tokens.begin(), src.tokens.end());
            derived.assign(uniq.begin(), uniq.end());
        }
        sampling_set = &derived;
    }
    if (sampling_set->empty()) throw EmptySamplingSetError();

    const int k = k_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(k_max - k_min + 1)));
    EditScript script;
    TokenSequence cur = src;
    for (int step = 0; step < k; ++step) {
        const std::size_t len = cur.tokens.size();
        // Insert is always valid; Delete/Replace need a non-empty sequence.
        const std::size_t kinds = len == 0 ? 1 : 3;
        const std::size_t kind_idx = rng.index(kinds);
        EditOp op;
        if (kind_idx == 0) {
            op = EditOp::insert(rng.index(len + 1), (*sampling_set)[rng.index(sampling_set->size())]);
        } else if (kind_idx == 1) {
            const std::size_t pos = rng.index(len);
            op = EditOp::del(pos, cur.tokens[pos]);
        } else {
            const std::size_t pos = rng.index(len);
            // May draw the incumbent token; a no-op replace still spends budget.
            op = EditOp::replace(pos, cur.tokens[pos],
                                 (*sampling_set)[rng.index(sampling_set->size())]);
        }
        cur = apply_op(cur, op);
        script.ops.push_back(std::move(op));
    }
    return {std::move(script), std::move(cur)};
}

std::vector<SeqPair> augment_with_pseudolabels(const LabeledSequence& anchor, std::size_t n,
                                               Oracle& oracle, Rng& rng, int k_min, int k_max,
                                               std::size_t attempt_cap_factor) {
    std::vector<SeqPair> kept;
    if (n == 0) return kept;
    std::set<std::string> seen;
    const std::size_t cap = attempt_cap_factor * n;
    std::size_t attempts = 0;
    while (kept.size() < n) {
        if (attempts >= cap) throw AttemptCapError(kept.size(), attempts);
        ++attempts;
        auto [script, candidate] = sample_random_edits(anchor.seq, k_min, k_max, rng);
        double score;
        try {
            score = oracle.fitness(candidate);
        } catch (const OracleError& e) {
            throw OracleError(std::string(e.what()) + " (augmentation attempt " +
                              std::to_string(attempts) + ")");
        }
        if (score > anchor.label) {
            const std::string key = detokenize(candidate);
            if (seen.insert(key).second) kept.emplace_back(anchor.seq, std::move(candidate));
        }
    }
    return kept;
}

LeakageReport dedup_and_leakage_check(const std::vector<TokenSequence>& train,
                                      const std::vector<TokenSequence>& eval,
                                      Oracle* canonicalizer) {
    auto canon = [&](const TokenSequence& seq) {
        const std::string raw = detokenize(seq);
        return canonicalizer ? canonicalizer->canonicalize(raw) : raw;
    };
    std::set<std::string> train_set;
    for (const auto& seq : train) train_set.insert(canon(seq));
    LeakageReport report;
    for (std::size_t i = 0; i < eval.size(); ++i)
        if (train_set.count(canon(eval[i]))) report.leaked_eval_indices.push_back(i);
    return report;
}

// ---- interchange ---------------------------------------------------------------

std::vector<LabeledSequence> read_labeled_csv(std::istream& in, AlphabetKind kind) {
    std::vector<LabeledSequence> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (line_no == 1 && t.rfind("sequence", 0) == 0) continue;  // header
        std::vector<std::string> cols;
        std::stringstream ss(t);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(trim(col));
        if (cols.size() < 2)
            throw Error("csv line " + std::to_string(line_no) + ": expected sequence,label");
        LabeledSequence row;
        row.seq = tokenize(cols[0], kind);
        try {
            row.label = std::stod(cols[1]);
        } catch (const std::exception&) {
            throw Error("csv line " + std::to_string(line_no) + ": bad label '" + cols[1] + "'");
        }
        if (!std::isfinite(row.label))
            throw Error("csv line " + std::to_string(line_no) + ": label must be finite");
        row.meta = cols.size() > 2 ? cols[2] : "line:" + std::to_string(line_no);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<LabeledSequence> read_labeled_csv_file(const std::string& path, AlphabetKind kind) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open csv: " + path);
    return read_labeled_csv(in, kind);
}

std::string sft_example_to_jsonl(const SftExample& ex) {
    const json j{{"src", detokenize(ex.src)},
                 {"instruction", ex.instruction},
                 {"trace", render_script(ex.completion.script)},
                 {"output", detokenize(ex.completion.output)}};
    return j.dump();
}

SftExample sft_example_from_jsonl(const std::string& line, AlphabetKind kind) {
    const json j = json::parse(line);
    SftExample ex;
    ex.src = tokenize(j.at("src").get<std::string>(), kind);
    ex.instruction = j.value("instruction", "");
    ex.completion.script = parse_script(j.at("trace").get<std::string>(), Alphabet::of(kind));
    ex.completion.output = tokenize(j.at("output").get<std::string>(), kind);
    return ex;
}

void write_sft_jsonl(std::ostream& out, const std::vector<SftExample>& examples) {
    for (const auto& ex : examples) out << sft_example_to_jsonl(ex) << "\n";
}

}  // namespace seqedit
