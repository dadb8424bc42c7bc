#include "seqedit/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "seqedit/errors.hpp"

namespace seqedit {

using nlohmann::json;

// ---- fingerprints -----------------------------------------------------------

Fingerprint Fingerprint::zeros(std::size_t nbits) {
    Fingerprint fp;
    fp.nbits = nbits;
    fp.words.assign((nbits + 63) / 64, 0);
    return fp;
}

void Fingerprint::set(std::size_t bit) { words[bit / 64] |= (std::uint64_t{1} << (bit % 64)); }

bool Fingerprint::test(std::size_t bit) const {
    return (words[bit / 64] >> (bit % 64)) & 1u;
}

std::size_t Fingerprint::popcount() const {
    std::size_t n = 0;
    for (auto w : words) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::string Fingerprint::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(nbits / 4);
    for (std::size_t byte = 0; byte < (nbits + 7) / 8; ++byte) {
        const unsigned v = static_cast<unsigned>((words[byte / 8] >> ((byte % 8) * 8)) & 0xFF);
        out += digits[v >> 4];
        out += digits[v & 0xF];
    }
    return out;
}

Fingerprint Fingerprint::from_hex(const std::string& hex, std::size_t nbits) {
    Fingerprint fp = zeros(nbits);
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw OracleProtocolError("bad fingerprint hex");
    };
    for (std::size_t byte = 0; byte * 2 + 1 < hex.size() + 1 && byte < (nbits + 7) / 8; ++byte) {
        if (byte * 2 + 1 >= hex.size()) break;
        const unsigned v = (nibble(hex[byte * 2]) << 4) | nibble(hex[byte * 2 + 1]);
        fp.words[byte / 8] |= static_cast<std::uint64_t>(v) << ((byte % 8) * 8);
    }
    return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
    if (a.nbits != b.nbits) throw LengthMismatchError("fingerprint widths differ");
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.words.size(); ++i) {
        inter += static_cast<std::size_t>(std::popcount(a.words[i] & b.words[i]));
        uni += static_cast<std::size_t>(std::popcount(a.words[i] | b.words[i]));
    }
    if (uni == 0) return 1.0;  // both empty: identical objects
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// ---- toy oracles ------------------------------------------------------------

namespace toy {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

bool is_ring_digit(const std::string& tok) {
    if (tok.size() == 1 && std::isdigit(static_cast<unsigned char>(tok[0]))) return true;
    return tok.size() == 3 && tok[0] == '%';
}

}  // namespace

double fitness(const TokenSequence& seq) {
    std::size_t g = 0;
    for (const auto& t : seq.tokens)
        if (t == "G") ++g;
    return static_cast<double>(g) - 0.1 * static_cast<double>(seq.tokens.size());
}

double token_count_fitness(const TokenSequence& seq, const std::string& token) {
    return static_cast<double>(std::count(seq.tokens.begin(), seq.tokens.end(), token));
}

MolProps mol_props(const TokenSequence& seq) {
    MolProps p;
    long depth = 0;
    bool balanced = true;
    std::map<std::string, int> ring_counts;
    for (const auto& t : seq.tokens) {
        if (t == "(") ++depth;
        else if (t == ")") {
            if (--depth < 0) balanced = false;
        } else if (is_ring_digit(t)) {
            ++ring_counts[t];
        }
    }
    if (depth != 0) balanced = false;
    for (const auto& [tok, cnt] : ring_counts)
        if (cnt % 2 != 0) balanced = false;
    if (!balanced) return p;  // valid = false, numeric fields unset

    int c = 0, n = 0, o = 0, hbd = 0;
    for (const auto& t : seq.tokens) {
        if (t == "C") ++c;
        else if (t == "N") ++n;
        else if (t == "O") ++o;
        if (t.size() > 2 && t.front() == '[' && t.find('H') != std::string::npos) ++hbd;
    }
    p.valid = true;
    p.hba = n + o;
    p.hbd = hbd;
    p.logp = 0.5 * c - 0.3 * (n + o);
    p.qed = std::clamp(std::fmod(0.1 * static_cast<double>(seq.tokens.size()), 1.0), 0.0, 1.0);
    p.tpsa = 20.0 * (n + o);
    return p;
}

Fingerprint fingerprint(const TokenSequence& seq) {
    Fingerprint fp = Fingerprint::zeros(2048);
    for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
        fp.set(fnv1a(seq.tokens[i]) % 2048);
        if (i + 1 < seq.tokens.size()) fp.set(fnv1a(seq.tokens[i] + "|" + seq.tokens[i + 1]) % 2048);
    }
    return fp;
}

std::string canonicalize(const std::string& raw) {
    std::string out = raw;
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

namespace {

json props_to_json(const MolProps& p) {
    json j;
    j["valid"] = p.valid;
    if (p.valid) {
        j["logp"] = p.logp;
        j["qed"] = p.qed;
        j["tpsa"] = p.tpsa;
        j["hba"] = p.hba;
        j["hbd"] = p.hbd;
    }
    return j;
}

TokenSequence seq_from_payload(const json& payload) {
    const std::string kind_s = payload.value("alphabet", "smiles");
    return tokenize(payload.at("seq").get<std::string>(), alphabet_kind_from(kind_s));
}

json handle_one(const std::string& op, const json& payload, const std::string& name) {
    if (op == "hello") {
        json caps = json::array();
        const bool fitness_cap = name == "full" || name == "fitness" || name.rfind("count:", 0) == 0;
        const bool mol_cap = name == "full" || name == "mol";
        if (fitness_cap) caps.push_back("fitness");
        if (mol_cap) {
            caps.push_back("mol_props");
            caps.push_back("validity");
            caps.push_back("fingerprint");
            caps.push_back("canonicalize");
        }
        caps.push_back("batch");
        return json{{"capabilities", caps},
                    {"fingerprint_bits", 2048},
                    {"protocol_version", 1},
                    {"oracle", "seqedit-toy:" + name}};
    }
    if (op == "fitness") {
        const TokenSequence seq = seq_from_payload(payload);
        if (name.rfind("count:", 0) == 0)
            return json{{"score", token_count_fitness(seq, name.substr(6))}};
        return json{{"score", fitness(seq)}};
    }
    if (op == "mol_props") return props_to_json(mol_props(seq_from_payload(payload)));
    if (op == "validity") return json{{"valid", mol_props(seq_from_payload(payload)).valid}};
    if (op == "fingerprint") {
        const Fingerprint fp = fingerprint(seq_from_payload(payload));
        return json{{"nbits", fp.nbits}, {"hex", fp.to_hex()}};
    }
    if (op == "canonicalize")
        return json{{"canonical", canonicalize(payload.at("smiles").get<std::string>())}};
    throw OracleRefusedError("unsupported op: " + op);
}

}  // namespace

json handle_request(const json& request, const std::string& name) {
    json resp;
    resp["id"] = request.value("id", 0);
    try {
        const std::string op = request.at("op").get<std::string>();
        const json payload = request.value("payload", json::object());
        if (op == "batch") {
            json results = json::array();
            for (const auto& item : payload.at("items"))
                results.push_back(handle_one(item.at("op").get<std::string>(),
                                             item.value("payload", json::object()), name));
            resp["ok"] = true;
            resp["result"] = json{{"results", results}};
        } else {
            resp["ok"] = true;
            resp["result"] = handle_one(op, payload, name);
        }
    } catch (const std::exception& e) {
        resp["ok"] = false;
        resp["error"] = e.what();
    }
    return resp;
}

}  // namespace toy

ToyOracle::ToyOracle(std::string name) : name_(std::move(name)) {}

bool ToyOracle::has(OracleCap cap) const {
    const bool fitness_cap = name_ == "full" || name_ == "fitness" || name_.rfind("count:", 0) == 0;
    const bool mol_cap = name_ == "full" || name_ == "mol";
    switch (cap) {
        case OracleCap::Fitness: return fitness_cap;
        case OracleCap::MolProps:
        case OracleCap::Validity:
        case OracleCap::Fingerprint:
        case OracleCap::Canonicalize: return mol_cap;
        case OracleCap::Batch: return true;
        case OracleCap::EditflowHeads: return false;
    }
    return false;
}

double ToyOracle::fitness(const TokenSequence& seq) {
    if (name_.rfind("count:", 0) == 0) return toy::token_count_fitness(seq, name_.substr(6));
    return toy::fitness(seq);
}

MolProps ToyOracle::mol_properties(const TokenSequence& seq) { return toy::mol_props(seq); }

Fingerprint ToyOracle::fingerprint(const TokenSequence& seq) { return toy::fingerprint(seq); }

std::string ToyOracle::canonicalize(const std::string& raw) { return toy::canonicalize(raw); }

// ---- transports --------------------------------------------------------------

void ToyLineTransport::write_line(const std::string& line) {
    json req;
    try {
        req = json::parse(line);
    } catch (const json::exception& e) {
        throw OracleProtocolError(std::string("bad request json: ") + e.what());
    }
    queue_.push_back(toy::handle_request(req, name_).dump());
}

std::optional<std::string> ToyLineTransport::read_line(int) {
    if (queue_.empty()) return std::nullopt;
    std::string line = std::move(queue_.front());
    queue_.erase(queue_.begin());
    return line;
}

SubprocessTransport::SubprocessTransport(const std::string& command) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
        throw OracleError("pipe() failed");
    const pid_t pid = fork();
    if (pid < 0) throw OracleError("fork() failed");
    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    out_fd_ = to_child[1];
    in_fd_ = from_child[0];
    pid_ = pid;
    signal(SIGPIPE, SIG_IGN);
}

SubprocessTransport::~SubprocessTransport() {
    if (out_fd_ >= 0) close(out_fd_);
    if (in_fd_ >= 0) close(in_fd_);
    if (pid_ > 0) {
        kill(static_cast<pid_t>(pid_), SIGTERM);
        int status = 0;
        waitpid(static_cast<pid_t>(pid_), &status, 0);
    }
}

namespace {

void write_all(int fd, const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
        if (n < 0) throw OracleError("write to oracle failed");
        off += static_cast<std::size_t>(n);
    }
}

std::optional<std::string> buffered_read_line(int fd, std::string& buffer, int timeout_ms) {
    for (;;) {
        const std::size_t nl = buffer.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer.substr(0, nl);
            buffer.erase(0, nl + 1);
            return line;
        }
        pollfd pfd{fd, POLLIN, 0};
        const int r = poll(&pfd, 1, timeout_ms);
        if (r == 0) return std::nullopt;  // timeout
        if (r < 0) throw OracleError("poll() failed");
        char chunk[4096];
        const ssize_t n = ::read(fd, chunk, sizeof chunk);
        if (n <= 0) return std::nullopt;  // EOF / dead peer
        buffer.append(chunk, static_cast<std::size_t>(n));
    }
}

}  // namespace

void SubprocessTransport::write_line(const std::string& line) { write_all(out_fd_, line + "\n"); }

std::optional<std::string> SubprocessTransport::read_line(int timeout_ms) {
    return buffered_read_line(in_fd_, buffer_, timeout_ms);
}

TcpTransport::TcpTransport(const std::string& address) {
    const std::size_t colon = address.rfind(':');
    if (colon == std::string::npos) throw OracleError("tcp address must be host:port");
    const std::string host = address.substr(0, colon);
    const std::string port = address.substr(colon + 1);
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (getaddrinfo(host.c_str(), port.c_str(), &hints, &res) != 0 || !res)
        throw OracleError("cannot resolve " + address);
    fd_ = socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    const bool ok = fd_ >= 0 && connect(fd_, res->ai_addr, res->ai_addrlen) == 0;
    freeaddrinfo(res);
    if (!ok) throw OracleError("cannot connect to " + address);
    signal(SIGPIPE, SIG_IGN);
}

TcpTransport::~TcpTransport() {
    if (fd_ >= 0) close(fd_);
}

void TcpTransport::write_line(const std::string& line) { write_all(fd_, line + "\n"); }

std::optional<std::string> TcpTransport::read_line(int timeout_ms) {
    return buffered_read_line(fd_, buffer_, timeout_ms);
}

ReplayTransport::ReplayTransport(const std::string& transcript_path) {
    std::ifstream in(transcript_path);
    if (!in) throw OracleError("cannot open transcript: " + transcript_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        entries_.push_back({j.at("req").get<std::string>(), j.at("resp").get<std::string>()});
    }
}

void ReplayTransport::write_line(const std::string& line) {
    if (next_ >= entries_.size())
        throw OracleProtocolError("transcript exhausted at request: " + line);
    if (entries_[next_].request != line)
        throw OracleProtocolError("transcript divergence; expected '" + entries_[next_].request +
                                  "', got '" + line + "'");
    pending_.push_back(entries_[next_].response);
    ++next_;
}

std::optional<std::string> ReplayTransport::read_line(int) {
    if (pending_.empty()) return std::nullopt;
    std::string line = std::move(pending_.front());
    pending_.erase(pending_.begin());
    return line;
}

RecordingTransport::RecordingTransport(std::unique_ptr<LineTransport> inner,
                                       const std::string& transcript_path)
    : inner_(std::move(inner)), path_(transcript_path) {}

RecordingTransport::~RecordingTransport() {
    std::ofstream out(path_);
    for (const auto& entry : log_) out << entry.dump() << "\n";
}

void RecordingTransport::write_line(const std::string& line) {
    reqs_.push_back(line);
    inner_->write_line(line);
}

std::optional<std::string> RecordingTransport::read_line(int timeout_ms) {
    auto resp = inner_->read_line(timeout_ms);
    if (resp && !reqs_.empty()) {
        log_.push_back(json{{"req", reqs_.front()}, {"resp", *resp}});
        reqs_.erase(reqs_.begin());
    }
    return resp;
}

// ---- protocol client ----------------------------------------------------------

JsonlOracleClient::JsonlOracleClient(std::unique_ptr<LineTransport> transport, int timeout_ms)
    : transport_(std::move(transport)), timeout_ms_(timeout_ms) {
    const json hello = call("hello", json::object());
    if (hello.contains("capabilities"))
        for (const auto& c : hello["capabilities"]) capabilities_.push_back(c.get<std::string>());
    fingerprint_bits_ = hello.value("fingerprint_bits", 2048);
}

bool JsonlOracleClient::has(OracleCap cap) const {
    auto have = [&](const char* name) {
        return std::find(capabilities_.begin(), capabilities_.end(), name) != capabilities_.end();
    };
    switch (cap) {
        case OracleCap::Fitness: return have("fitness");
        case OracleCap::MolProps: return have("mol_props");
        case OracleCap::Validity: return have("validity");
        case OracleCap::Fingerprint: return have("fingerprint");
        case OracleCap::Canonicalize: return have("canonicalize");
        case OracleCap::Batch: return have("batch");
        case OracleCap::EditflowHeads: return have("editflow_heads");
    }
    return false;
}

std::uint64_t JsonlOracleClient::send(const std::string& op, json payload) {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t id = next_id_++;
    const json req{{"id", id}, {"op", op}, {"payload", std::move(payload)}};
    transport_->write_line(req.dump());
    return id;
}

json JsonlOracleClient::read_matching(std::uint64_t id) {
    for (;;) {
        {
            auto it = pending_.find(id);
            if (it != pending_.end()) {
                json resp = std::move(it->second);
                pending_.erase(it);
                return resp;
            }
        }
        const auto line = transport_->read_line(timeout_ms_);
        if (!line) throw OracleTimeoutError("no response from oracle");
        json resp;
        try {
            resp = json::parse(*line);
        } catch (const json::exception& e) {
            throw OracleProtocolError(std::string("bad response json: ") + e.what());
        }
        if (!resp.contains("id") || !resp.contains("ok"))
            throw OracleProtocolError("response missing id/ok: " + *line);
        pending_[resp["id"].get<std::uint64_t>()] = std::move(resp);
    }
}

json JsonlOracleClient::await(std::uint64_t id) {
    std::lock_guard<std::mutex> lock(mutex_);
    const json resp = read_matching(id);
    if (!resp["ok"].get<bool>())
        throw OracleRefusedError(resp.value("error", std::string("unspecified")));
    if (!resp.contains("result")) throw OracleProtocolError("ok response without result");
    return resp["result"];
}

json JsonlOracleClient::call(const std::string& op, json payload) {
    return await(send(op, std::move(payload)));
}

std::vector<json> JsonlOracleClient::call_batch(const std::string& op,
                                                std::vector<json> payloads) {
    json items = json::array();
    for (auto& p : payloads) items.push_back(json{{"op", op}, {"payload", std::move(p)}});
    const json result = call("batch", json{{"items", std::move(items)}});
    std::vector<json> out;
    for (const auto& r : result.at("results")) out.push_back(r);
    return out;
}

double JsonlOracleClient::fitness(const TokenSequence& seq) {
    const json result = call(
        "fitness", json{{"seq", detokenize(seq)}, {"alphabet", to_string(seq.kind)}});
    const double score = result.at("score").get<double>();
    if (!std::isfinite(score)) throw OracleProtocolError("non-finite fitness score");
    return score;
}

MolProps JsonlOracleClient::mol_properties(const TokenSequence& seq) {
    const json r = call("mol_props",
                        json{{"seq", detokenize(seq)}, {"alphabet", to_string(seq.kind)}});
    MolProps p;
    p.valid = r.at("valid").get<bool>();
    if (p.valid) {
        p.logp = r.at("logp").get<double>();
        p.qed = r.at("qed").get<double>();
        p.tpsa = r.at("tpsa").get<double>();
        p.hba = r.at("hba").get<int>();
        p.hbd = r.at("hbd").get<int>();
    }
    return p;
}

Fingerprint JsonlOracleClient::fingerprint(const TokenSequence& seq) {
    const json r = call("fingerprint",
                        json{{"seq", detokenize(seq)}, {"alphabet", to_string(seq.kind)}});
    return Fingerprint::from_hex(r.at("hex").get<std::string>(),
                                 r.value("nbits", fingerprint_bits_));
}

std::string JsonlOracleClient::canonicalize(const std::string& raw) {
    return call("canonicalize", json{{"smiles", raw}}).at("canonical").get<std::string>();
}

// ---- factory -------------------------------------------------------------------

namespace {

std::unique_ptr<LineTransport> open_transport(const std::string& spec) {
    if (spec.rfind("toy:", 0) == 0) return std::make_unique<ToyLineTransport>(spec.substr(4));
    if (spec.rfind("stdio:", 0) == 0) return std::make_unique<SubprocessTransport>(spec.substr(6));
    if (spec.rfind("tcp:", 0) == 0) return std::make_unique<TcpTransport>(spec.substr(4));
    if (spec.rfind("replay:", 0) == 0) return std::make_unique<ReplayTransport>(spec.substr(7));
    throw Error("unknown oracle spec: " + spec + " (expected toy:/stdio:/tcp:/replay:)");
}

}  // namespace

std::unique_ptr<JsonlOracleClient> open_oracle_client(const std::string& spec, int timeout_ms,
                                                      const std::string& record) {
    auto transport = open_transport(spec);
    if (!record.empty())
        transport = std::make_unique<RecordingTransport>(std::move(transport), record);
    return std::make_unique<JsonlOracleClient>(std::move(transport), timeout_ms);
}

std::unique_ptr<Oracle> open_oracle(const std::string& spec, int timeout_ms,
                                    const std::string& record) {
    return open_oracle_client(spec, timeout_ms, record);
}

}  // namespace seqedit
