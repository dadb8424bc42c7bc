#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace seqedit {

enum class AlphabetKind { Protein, Smiles };

std::string to_string(AlphabetKind kind);
AlphabetKind alphabet_kind_from(std::string_view name);  // "protein" | "smiles"

/// A token alphabet. Protein is the closed set of the 20 canonical amino-acid
/// letters plus the explicit unknown residue X. Smiles is open: any string the
/// SMILES token pattern accepts is a member.
class Alphabet {
public:
    static const Alphabet& protein();
    static const Alphabet& smiles();
    static const Alphabet& of(AlphabetKind kind);

    AlphabetKind kind() const { return kind_; }

    bool contains(const std::string& token) const;

    /// Protein: the 21 member tokens in canonical order. Smiles: empty (open set).
    const std::vector<std::string>& tokens() const { return tokens_; }

    /// Tokens eligible for random edit sampling. Protein: the 20 canonical
    /// residues (X excluded). Smiles: empty; callers derive the set from the
    /// sequence being perturbed.
    const std::vector<std::string>& sampling_tokens() const { return sampling_; }

private:
    explicit Alphabet(AlphabetKind kind);
    AlphabetKind kind_;
    std::vector<std::string> tokens_;
    std::vector<std::string> sampling_;
};

/// An immutable token sequence tagged with the alphabet it belongs to.
struct TokenSequence {
    AlphabetKind kind = AlphabetKind::Protein;
    std::vector<std::string> tokens;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    bool operator==(const TokenSequence&) const = default;
};

/// One token per residue letter, uppercased. Accepts the 20 canonical letters
/// plus X (case-insensitive). Throws InvalidResidueError otherwise.
TokenSequence tokenize_protein(std::string_view raw);

/// Regex SMILES tokenization. The pattern (documented verbatim in
/// docs/formats.md) keeps bracket atoms, Cl/Br and %nn ring bonds as single
/// tokens. Throws TokenizationGapError when a character is not covered and
/// EmptyInputError on "".
TokenSequence tokenize_smiles(std::string_view raw);

TokenSequence tokenize(std::string_view raw, AlphabetKind kind);

/// Concatenation of the tokens, no separators. Inverse of tokenization.
std::string detokenize(const TokenSequence& seq);

/// Positions of the unknown residue X in a protein sequence. Accepted on
/// input, flagged here so dataset builders can filter or report.
std::vector<std::size_t> lint_protein(const TokenSequence& seq);

/// The SMILES token pattern as a string (also usable to validate one token).
const std::string& smiles_token_pattern();

/// True if `token` is a single valid token of the given alphabet.
bool is_valid_token(const std::string& token, AlphabetKind kind);

}  // namespace seqedit
