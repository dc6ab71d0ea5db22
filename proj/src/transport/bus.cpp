#include "blindpsi/transport/bus.hpp"

#include <sstream>

namespace blindpsi::transport {

namespace {

constexpr const char* kLaneNames[] = {"c1s", "c2s", "c1c2", "c1o", "c2o", "so"};
constexpr const char* kKindNames[] = {"qubit",    "angle_share", "delta",        "outcome_t",
                                      "outcome_m", "test_req",    "test_reveal", "output_qubit",
                                      "classic_bits", "abort"};

int lane_index(const std::string& name)
{
    for (int i = 0; i < 6; ++i)
        if (name == kLaneNames[i]) return i;
    return -1;
}

int kind_index(const std::string& name)
{
    for (int i = 0; i < 10; ++i)
        if (name == kKindNames[i]) return i;
    return -1;
}

char hex_digit(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

}  // namespace

const char* lane_name(Lane l) { return kLaneNames[size_t(l)]; }
const char* kind_name(Kind k) { return kKindNames[size_t(k)]; }

bool lane_member(Party p, Lane l)
{
    switch (l) {
        case Lane::C1_S: return p == Party::C1 || p == Party::Server;
        case Lane::C2_S: return p == Party::C2 || p == Party::Server;
        case Lane::C1_C2: return p == Party::C1 || p == Party::C2;
        case Lane::C1_O: return p == Party::C1 || p == Party::Oracle;
        case Lane::C2_O: return p == Party::C2 || p == Party::Oracle;
        case Lane::S_O: return p == Party::Server || p == Party::Oracle;
    }
    return false;
}

Lane lane_between(Party a, Party b)
{
    for (Lane l : {Lane::C1_S, Lane::C2_S, Lane::C1_C2, Lane::C1_O, Lane::C2_O, Lane::S_O})
        if (lane_member(a, l) && lane_member(b, l) && a != b) return l;
    throw LaneError("no lane between these endpoints");
}

void Transcript::append(Message m)
{
    m.seq = next_seq_++;
    counts_[size_t(m.kind)]++;
    log_.push_back(std::move(m));
}

void Transcript::append_all(const Transcript& other)
{
    for (const Message& m : other.log_) append(m);
}

std::string Transcript::serialize() const
{
    std::ostringstream os;
    for (const Message& m : log_) {
        os << m.seq << ' ' << lane_name(m.lane) << ' ' << kind_name(m.kind) << ' ';
        os << hex_digit(int(m.from) >> 4) << hex_digit(int(m.from) & 15);
        for (uint8_t b : m.payload) os << hex_digit(b >> 4) << hex_digit(b & 15);
        os << '\n';
    }
    return os.str();
}

Transcript Transcript::deserialize(const std::string& text)
{
    Transcript t;
    std::istringstream is(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        uint64_t seq;
        std::string lane_s, kind_s, hex;
        if (!(ls >> seq >> lane_s >> kind_s >> hex) || hex.size() < 2 || hex.size() % 2)
            throw std::runtime_error("transcript parse error at line " + std::to_string(line_no));
        const int lane_i = lane_index(lane_s);
        const int kind_i = kind_index(kind_s);
        if (lane_i < 0 || kind_i < 0)
            throw std::runtime_error("transcript parse error at line " + std::to_string(line_no));
        std::vector<uint8_t> bytes;
        bytes.reserve(hex.size() / 2);
        for (size_t i = 0; i < hex.size(); i += 2) {
            const int hi = hex_value(hex[i]), lo = hex_value(hex[i + 1]);
            if (hi < 0 || lo < 0)
                throw std::runtime_error("transcript parse error at line " +
                                         std::to_string(line_no));
            bytes.push_back(uint8_t(hi << 4 | lo));
        }
        Message m;
        m.lane = Lane(lane_i);
        m.kind = Kind(kind_i);
        m.from = Party(bytes[0]);
        m.payload.assign(bytes.begin() + 1, bytes.end());
        t.append(std::move(m));
        if (t.log_.back().seq != seq)
            throw std::runtime_error("non-contiguous seq at line " + std::to_string(line_no));
    }
    return t;
}

void Bus::send(Party from, Lane lane, Kind kind, std::vector<uint8_t> payload)
{
    if (!lane_member(from, lane)) throw LaneError("sender is not on this lane");
    Message m;
    m.lane = lane;
    m.kind = kind;
    m.from = from;
    m.payload = std::move(payload);
    transcript_.append(m);
    m.seq = transcript_.log().back().seq;
    if (kind == Kind::ABORT) {
        aborted_ = true;
        abort_reason_.assign(m.payload.begin(), m.payload.end());
        return;
    }
    // deliver to the opposite endpoint
    for (Party p : {Party::C1, Party::C2, Party::Server, Party::Oracle})
        if (p != from && lane_member(p, lane)) queues_[{lane, p}].push_back(std::move(m));
}

bool Bus::pending(Party who, Lane lane) const
{
    auto it = queues_.find({lane, who});
    return it != queues_.end() && !it->second.empty();
}

Message Bus::recv(Party who, Lane lane)
{
    if (!lane_member(who, lane)) throw LaneError("receiver is not on this lane");
    auto& q = queues_[{lane, who}];
    if (q.empty()) {
        if (aborted_) throw ProtocolAbort(abort_reason_);
        throw LaneError("recv on empty lane (scheduling bug)");
    }
    Message m = std::move(q.front());
    q.pop_front();
    return m;
}

void Bus::raise_abort(Party from, Lane lane, const std::string& why)
{
    send(from, lane, Kind::ABORT, std::vector<uint8_t>(why.begin(), why.end()));
}

std::vector<uint8_t> pack_u32(uint32_t v)
{
    return {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
}

uint32_t unpack_u32(const std::vector<uint8_t>& p, size_t at)
{
    if (p.size() < at + 4) throw std::runtime_error("short payload");
    return uint32_t(p[at]) | uint32_t(p[at + 1]) << 8 | uint32_t(p[at + 2]) << 16 |
           uint32_t(p[at + 3]) << 24;
}

std::vector<uint8_t> pack_bytes(std::initializer_list<uint8_t> bytes) { return bytes; }

}  // namespace blindpsi::transport
