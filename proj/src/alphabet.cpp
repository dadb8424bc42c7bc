#include "seqedit/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "seqedit/errors.hpp"

namespace seqedit {

namespace {

constexpr char kCanonicalResidues[] = "ACDEFGHIKLMNPQRSTVWY";

bool is_canonical_residue(char c) {
    for (char r : kCanonicalResidues)
        if (r == c && c != '\0') return true;
    return false;
}

const std::regex& smiles_regex() {
    static const std::regex re(smiles_token_pattern());
    return re;
}

}  // namespace

std::string to_string(AlphabetKind kind) {
    return kind == AlphabetKind::Protein ? "protein" : "smiles";
}

AlphabetKind alphabet_kind_from(std::string_view name) {
    if (name == "protein") return AlphabetKind::Protein;
    if (name == "smiles") return AlphabetKind::Smiles;
    throw Error("unknown alphabet: " + std::string(name));
}

const std::string& smiles_token_pattern() {
    // The de-facto standard SMILES token regex; written out verbatim in
    // docs/formats.md. %nn two-digit ring bonds are kept as one token.
    static const std::string pattern =
        R"((\[[^\]]+]|Br?|Cl?|N|O|S|P|F|I|b|c|n|o|s|p|\(|\)|\.|=|#|-|\+|\\|\/|:|~|@|\?|>|\*|\$|%[0-9]{2}|[0-9]))";
    return pattern;
}

Alphabet::Alphabet(AlphabetKind kind) : kind_(kind) {
    if (kind == AlphabetKind::Protein) {
        for (char c : kCanonicalResidues) {
            if (c == '\0') break;
            tokens_.emplace_back(1, c);
            sampling_.emplace_back(1, c);
        }
        tokens_.emplace_back("X");  // explicit unknown residue; not sampled
    }
}

const Alphabet& Alphabet::protein() {
    static const Alphabet a(AlphabetKind::Protein);
    return a;
}

const Alphabet& Alphabet::smiles() {
    static const Alphabet a(AlphabetKind::Smiles);
    return a;
}

const Alphabet& Alphabet::of(AlphabetKind kind) {
    return kind == AlphabetKind::Protein ? protein() : smiles();
}

bool Alphabet::contains(const std::string& token) const {
    if (token.empty()) return false;
    if (kind_ == AlphabetKind::Protein)
        return std::find(tokens_.begin(), tokens_.end(), token) != tokens_.end();
    return is_valid_token(token, AlphabetKind::Smiles);
}

bool is_valid_token(const std::string& token, AlphabetKind kind) {
    if (token.empty()) return false;
    if (kind == AlphabetKind::Protein) return Alphabet::protein().contains(token);
    return std::regex_match(token, smiles_regex());
}

TokenSequence tokenize_protein(std::string_view raw) {
    TokenSequence seq{AlphabetKind::Protein, {}};
    seq.tokens.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(raw[i])));
        if (!is_canonical_residue(up) && up != 'X') throw InvalidResidueError(i, raw[i]);
        seq.tokens.emplace_back(1, up);
    }
    return seq;
}

TokenSequence tokenize_smiles(std::string_view raw) {
    if (raw.empty()) throw EmptyInputError();
    TokenSequence seq{AlphabetKind::Smiles, {}};
    const std::string s(raw);
    auto begin = std::cregex_iterator(s.data(), s.data() + s.size(), smiles_regex());
    auto end = std::cregex_iterator();
    std::size_t covered = 0;
    for (auto it = begin; it != end; ++it) {
        const auto pos = static_cast<std::size_t>(it->position());
        if (pos != covered) throw TokenizationGapError(covered);
        seq.tokens.push_back(it->str());
        covered = pos + static_cast<std::size_t>(it->length());
    }
    if (covered != s.size()) throw TokenizationGapError(covered);
    return seq;
}

TokenSequence tokenize(std::string_view raw, AlphabetKind kind) {
    return kind == AlphabetKind::Protein ? tokenize_protein(raw) : tokenize_smiles(raw);
}

std::string detokenize(const TokenSequence& seq) {
    std::string out;
    std::size_t total = 0;
    for (const auto& t : seq.tokens) total += t.size();
    out.reserve(total);
    for (const auto& t : seq.tokens) out += t;
    return out;
}

std::vector<std::size_t> lint_protein(const TokenSequence& seq) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < seq.tokens.size(); ++i)
        if (seq.tokens[i] == "X") hits.push_back(i);
    return hits;
}

}  // namespace seqedit
