#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "seqedit/alphabet.hpp"

namespace seqedit {

enum class OracleCap { Fitness, MolProps, Validity, Fingerprint, Canonicalize, Batch, EditflowHeads };

/// Proxy molecular properties as reported by an oracle. When valid is false
/// the numeric fields are unset and must not be read.
struct MolProps {
    bool valid = false;
    double logp = 0.0;
    double qed = 0.0;
    double tpsa = 0.0;
    int hba = 0;
    int hbd = 0;
};

/// Fixed-length bitset fingerprint. Width is declared by the oracle
/// (default 2048).
struct Fingerprint {
    std::size_t nbits = 0;
    std::vector<std::uint64_t> words;

    static Fingerprint zeros(std::size_t nbits);
    void set(std::size_t bit);
    bool test(std::size_t bit) const;
    std::size_t popcount() const;
    std::string to_hex() const;
    static Fingerprint from_hex(const std::string& hex, std::size_t nbits);
    bool operator==(const Fingerprint&) const = default;
};

/// |a AND b| / |a OR b|. Defined as 1.0 when both are all-zero. Throws
/// LengthMismatchError on differing widths.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

/// Uniform client surface for property/fitness oracles. Implementations are
/// either in-process toys or remote processes behind the JSON-lines protocol.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual bool has(OracleCap cap) const = 0;
    virtual double fitness(const TokenSequence& seq) = 0;
    virtual MolProps mol_properties(const TokenSequence& seq) = 0;
    virtual Fingerprint fingerprint(const TokenSequence& seq) = 0;
    virtual std::string canonicalize(const std::string& raw) = 0;
};

// ---- deterministic toy oracles ---------------------------------------------
//
// Explicitly NON-CHEMICAL surrogates. They exist so every reward and metric
// path can be tested hermetically; the formulas are documented in
// docs/formats.md and mirrored by tools/mock_oracle.py.

namespace toy {

/// #G tokens - 0.1 * length. ("GGA" -> 1.7, "" -> 0.0)
double fitness(const TokenSequence& seq);

/// Fitness variant: count of a fixed token.
double token_count_fitness(const TokenSequence& seq, const std::string& token);

/// valid      iff parentheses nest properly and every ring-digit token
///            (single digit or %nn) occurs an even number of times
/// hba        #tokens equal to N or O
/// hbd        #bracket tokens containing an H
/// logp       0.5*#C - 0.3*(#N + #O)           (exact-token counts)
/// qed        fmod(0.1 * #tokens, 1.0)
/// tpsa       20 * (#N + #O)
MolProps mol_props(const TokenSequence& seq);

/// 2048-bit bitset: one bit per token hash plus one per adjacent-pair hash
/// (FNV-1a 64).
Fingerprint fingerprint(const TokenSequence& seq);

/// ASCII uppercase of the raw string.
std::string canonicalize(const std::string& raw);

/// Dispatch one protocol request object {id, op, payload} against the toy
/// handlers and return the response object. `name` selects the toy flavour
/// ("fitness", "count:<tok>", "mol", "full").
nlohmann::json handle_request(const nlohmann::json& request, const std::string& name);

}  // namespace toy

/// In-process Oracle over the toy handlers (no protocol layer). Flavours as in
/// toy::handle_request.
class ToyOracle : public Oracle {
public:
    explicit ToyOracle(std::string name = "full");
    bool has(OracleCap cap) const override;
    double fitness(const TokenSequence& seq) override;
    MolProps mol_properties(const TokenSequence& seq) override;
    Fingerprint fingerprint(const TokenSequence& seq) override;
    std::string canonicalize(const std::string& raw) override;

private:
    std::string name_;
};

// ---- line transports --------------------------------------------------------

/// Newline-delimited byte transport. write_line takes one line without the
/// trailing newline; read_line returns one line or nullopt on timeout/EOF.
class LineTransport {
public:
    virtual ~LineTransport() = default;
    virtual void write_line(const std::string& line) = 0;
    virtual std::optional<std::string> read_line(int timeout_ms) = 0;
};

/// Loopback transport that answers protocol requests from the in-process toy
/// handlers. Lets every remote-oracle code path run hermetically.
class ToyLineTransport : public LineTransport {
public:
    explicit ToyLineTransport(std::string name = "full") : name_(std::move(name)) {}
    void write_line(const std::string& line) override;
    std::optional<std::string> read_line(int timeout_ms) override;

private:
    std::string name_;
    std::vector<std::string> queue_;
};

/// Bidirectional pipe to a child process speaking the protocol on
/// stdin/stdout.
class SubprocessTransport : public LineTransport {
public:
    explicit SubprocessTransport(const std::string& command);
    ~SubprocessTransport() override;
    void write_line(const std::string& line) override;
    std::optional<std::string> read_line(int timeout_ms) override;

private:
    int in_fd_ = -1;   // child stdout -> us
    int out_fd_ = -1;  // us -> child stdin
    long pid_ = -1;
    std::string buffer_;
};

/// TCP connection to host:port, one JSON object per line.
class TcpTransport : public LineTransport {
public:
    explicit TcpTransport(const std::string& address);  // "host:port"
    ~TcpTransport() override;
    void write_line(const std::string& line) override;
    std::optional<std::string> read_line(int timeout_ms) override;

private:
    int fd_ = -1;
    std::string buffer_;
};

/// Replays a recorded transcript: each write must match the recorded request
/// byte-for-byte, each read returns the recorded response. Throws
/// OracleProtocolError on divergence.
class ReplayTransport : public LineTransport {
public:
    explicit ReplayTransport(const std::string& transcript_path);
    void write_line(const std::string& line) override;
    std::optional<std::string> read_line(int timeout_ms) override;

private:
    struct Entry {
        std::string request;
        std::string response;
    };
    std::vector<Entry> entries_;
    std::size_t next_ = 0;
    std::vector<std::string> pending_;
};

/// Wraps another transport and tees request/response pairs into a transcript
/// file (JSONL: {"req": ..., "resp": ...}).
class RecordingTransport : public LineTransport {
public:
    RecordingTransport(std::unique_ptr<LineTransport> inner, const std::string& transcript_path);
    ~RecordingTransport() override;
    void write_line(const std::string& line) override;
    std::optional<std::string> read_line(int timeout_ms) override;

private:
    std::unique_ptr<LineTransport> inner_;
    std::string path_;
    std::vector<std::string> reqs_;
    std::vector<nlohmann::json> log_;
};

// ---- protocol client --------------------------------------------------------

/// Client for the JSON-lines oracle protocol (docs/formats.md). Requests carry
/// a unique id; responses are matched by id, so out-of-order transports are
/// fine. Writes are serialized; reads demultiplex into a pending map.
class JsonlOracleClient : public Oracle {
public:
    JsonlOracleClient(std::unique_ptr<LineTransport> transport, int timeout_ms = 5000);

    bool has(OracleCap cap) const override;
    double fitness(const TokenSequence& seq) override;
    MolProps mol_properties(const TokenSequence& seq) override;
    Fingerprint fingerprint(const TokenSequence& seq) override;
    std::string canonicalize(const std::string& raw) override;

    /// Generic op call; result field of the response. Throws OracleTimeoutError,
    /// OracleProtocolError or OracleRefusedError.
    nlohmann::json call(const std::string& op, nlohmann::json payload);

    /// Pipelined form: send now, await later by id.
    std::uint64_t send(const std::string& op, nlohmann::json payload);
    nlohmann::json await(std::uint64_t id);

    /// Batch op: one request carrying many sub-requests, results in order.
    std::vector<nlohmann::json> call_batch(const std::string& op,
                                           std::vector<nlohmann::json> payloads);

    std::size_t fingerprint_bits() const { return fingerprint_bits_; }

private:
    nlohmann::json read_matching(std::uint64_t id);

    std::unique_ptr<LineTransport> transport_;
    int timeout_ms_;
    std::uint64_t next_id_ = 1;
    std::unordered_map<std::uint64_t, nlohmann::json> pending_;
    std::mutex mutex_;
    std::vector<std::string> capabilities_;
    std::size_t fingerprint_bits_ = 2048;
};

/// Build an oracle from a CLI spec string:
///   toy:<name>   in-process toys behind the protocol loopback
///   stdio:<cmd>  subprocess speaking the protocol on stdio
///   tcp:<host:port>
/// With `record` set, traffic is teed into a transcript file; a spec of
/// replay:<path> replays one.
std::unique_ptr<Oracle> open_oracle(const std::string& spec, int timeout_ms = 5000,
                                    const std::string& record = {});

/// Same, but returns the protocol client (for generic call()).
std::unique_ptr<JsonlOracleClient> open_oracle_client(const std::string& spec,
                                                      int timeout_ms = 5000,
                                                      const std::string& record = {});

}  // namespace seqedit
