#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "blindpsi/qsim/store.hpp"

namespace blindpsi::transport {

using qsim::Party;

enum class Lane : uint8_t { C1_S = 0, C2_S, C1_C2, C1_O, C2_O, S_O };

enum class Kind : uint8_t {
    QUBIT = 0,
    ANGLE_SHARE,
    DELTA,
    OUTCOME_T,
    OUTCOME_M,
    TEST_REQ,
    TEST_REVEAL,
    OUTPUT_QUBIT,
    CLASSIC_BITS,
    ABORT,
};

const char* lane_name(Lane l);
const char* kind_name(Kind k);

struct Message {
    uint64_t seq = 0;
    Lane lane{};
    Kind kind{};
    Party from{};
    std::vector<uint8_t> payload;
};

struct LaneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProtocolAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered log of every message plus per-kind counters.
class Transcript {
public:
    void append(Message m);
    const std::vector<Message>& log() const { return log_; }
    uint64_t count(Kind k) const { return counts_[size_t(k)]; }
    // number of transmitted qubits: QUBIT plus OUTPUT_QUBIT messages
    uint64_t count_qubits() const { return count(Kind::QUBIT) + count(Kind::OUTPUT_QUBIT); }
    uint64_t size() const { return log_.size(); }

    // line format: "seq lane kind payload-hex", payload prefixed with the
    // sender byte so the stream round-trips exactly
    std::string serialize() const;
    static Transcript deserialize(const std::string& text);

    // stable merge used by the per-instance runners: renumbers seq
    void append_all(const Transcript& other);

private:
    std::vector<Message> log_;
    std::array<uint64_t, 10> counts_{};
    uint64_t next_seq_ = 0;
};

bool lane_member(Party p, Lane l);
Lane lane_between(Party a, Party b);

// In-process bus: FIFO queues per lane and direction, every send recorded in
// the transcript. recv on an empty queue is a scheduling bug unless an abort
// is pending, in which case it raises ProtocolAbort.
class Bus {
public:
    void send(Party from, Lane lane, Kind kind, std::vector<uint8_t> payload);
    Message recv(Party who, Lane lane);
    bool pending(Party who, Lane lane) const;

    void raise_abort(Party from, Lane lane, const std::string& why);
    bool aborted() const { return aborted_; }

    Transcript& transcript() { return transcript_; }
    const Transcript& transcript() const { return transcript_; }

private:
    std::map<std::pair<Lane, Party>, std::deque<Message>> queues_;
    Transcript transcript_;
    bool aborted_ = false;
    std::string abort_reason_;
};

// payload helpers
std::vector<uint8_t> pack_u32(uint32_t v);
uint32_t unpack_u32(const std::vector<uint8_t>& p, size_t at = 0);
std::vector<uint8_t> pack_bytes(std::initializer_list<uint8_t> bytes);

}  // namespace blindpsi::transport
