#pragma once

#include <array>
#include <map>
#include <vector>

#include "blindpsi/mbqc/pattern.hpp"
#include "blindpsi/protocol/config.hpp"
#include "blindpsi/qsim/store.hpp"
#include "blindpsi/rng.hpp"

namespace blindpsi::protocol {

using mbqc::Vertex;

// Client-side per-run state: pads for the inputs it owns, its halves of the
// shared values, the public outcome log, and the decrypted output bits.
// Pads and shares are sampled fresh from the client's own stream and only
// ever leave as shares toward the other client or the oracle.
struct ClientState {
    int id = 1;  // 1 or 2
    Rng rng{0};
    Sabotage sabotage = Sabotage::None;
    bool misbehaves = false;  // CorruptDecoy role

    std::map<Vertex, std::pair<int, Angle8>> pads;            // owned inputs: (c, theta)
    std::map<uint64_t, std::vector<Angle8>> held_batch;       // (v, of_client) -> angle shares
    std::map<Vertex, std::pair<int, Angle8>> held_pad_shares; // other's input pads
    std::map<Vertex, int> r_own;                              // its r^k per measured vertex
    std::map<Vertex, std::array<int, 2>> r_held;              // held shares of r^1, r^2
    std::map<Vertex, int> m_log;                              // announced outcomes
    std::map<uint32_t, int> and_half;                         // bloom position -> AND bit

    Angle8 draw_angle() { return sabotage == Sabotage::ZeroBlinding ? Angle8{0} : rng.angle(); }
    int draw_r() { return sabotage == Sabotage::ZeroBlinding ? 0 : rng.bit(); }

    static uint64_t batch_key(Vertex v, int of_client) { return uint64_t(v) << 2 | uint64_t(of_client); }
};

}  // namespace blindpsi::protocol
