#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqedit {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- tokenization ----------------------------------------------------------

class InvalidResidueError : public Error {
public:
    InvalidResidueError(std::size_t position, char residue)
        : Error("invalid residue '" + std::string(1, residue) + "' at position " +
                std::to_string(position)),
          position(position), residue(residue) {}
    std::size_t position;
    char residue;
};

class TokenizationGapError : public Error {
public:
    explicit TokenizationGapError(std::size_t position)
        : Error("tokenization gap at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

class EmptyInputError : public Error {
public:
    EmptyInputError() : Error("empty input") {}
};

class AlphabetMismatchError : public Error {
public:
    AlphabetMismatchError() : Error("alphabet kinds do not match") {}
};

// ---- edit execution --------------------------------------------------------

/// Base for errors raised while applying an edit op. `step` is the 0-based
/// index of the failing op when raised from execute(), -1 otherwise.
class EditError : public Error {
public:
    using Error::Error;
    int step = -1;
};

class PositionOutOfRangeError : public EditError {
public:
    PositionOutOfRangeError(std::size_t position, std::size_t length)
        : EditError("position " + std::to_string(position) +
                    " out of range for length " + std::to_string(length)),
          position(position), length(length) {}
    std::size_t position;
    std::size_t length;
};

class TokenMismatchError : public EditError {
public:
    TokenMismatchError(std::size_t position, std::string expected, std::string found)
        : EditError("expected token '" + expected + "' at position " +
                    std::to_string(position) + ", found '" + found + "'"),
          position(position), expected(std::move(expected)), found(std::move(found)) {}
    std::size_t position;
    std::string expected;
    std::string found;
};

class ScriptSyntaxError : public Error {
public:
    ScriptSyntaxError(std::size_t line_no, const std::string& reason)
        : Error("line " + std::to_string(line_no) + ": " + reason),
          line_no(line_no), reason(reason) {}
    std::size_t line_no;  ///< 1-based
    std::string reason;
};

// ---- alignment -------------------------------------------------------------

class LengthGuardError : public Error {
public:
    LengthGuardError(std::size_t m, std::size_t n)
        : Error("DP table " + std::to_string(m) + "x" + std::to_string(n) +
                " exceeds the cell guard") {}
};

class InconsistentAlignmentError : public Error {
public:
    using Error::Error;
};

// ---- trace format ----------------------------------------------------------

class MalformedTraceError : public Error {
public:
    using Error::Error;
};

class OutputTokenizationError : public Error {
public:
    using Error::Error;
};

// ---- dataset ---------------------------------------------------------------

class EmptySamplingSetError : public Error {
public:
    EmptySamplingSetError() : Error("no sampleable tokens for this alphabet") {}
};

class AttemptCapError : public Error {
public:
    AttemptCapError(std::size_t kept, std::size_t attempts)
        : Error("attempt cap exceeded: kept " + std::to_string(kept) + " after " +
                std::to_string(attempts) + " attempts"),
          kept(kept), attempts(attempts) {}
    std::size_t kept;
    std::size_t attempts;
};

// ---- oracle ----------------------------------------------------------------

class OracleError : public Error {
public:
    using Error::Error;
};

class OracleTimeoutError : public OracleError {
public:
    using OracleError::OracleError;
};

class OracleProtocolError : public OracleError {
public:
    using OracleError::OracleError;
};

class OracleRefusedError : public OracleError {
public:
    explicit OracleRefusedError(const std::string& reason)
        : OracleError("oracle refused: " + reason), reason(reason) {}
    std::string reason;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

// ---- policy optimization ---------------------------------------------------

class DegenerateGroupError : public Error {
public:
    using Error::Error;
};

class NonFiniteRatioError : public Error {
public:
    using Error::Error;
};

// ---- edit flow -------------------------------------------------------------

class ScheduleSingularityError : public Error {
public:
    using Error::Error;
};

class HeadValidationError : public Error {
public:
    using Error::Error;
};

// ---- metrics ---------------------------------------------------------------

class InvalidMoleculeInputError : public Error {
public:
    using Error::Error;
};

}  // namespace seqedit
