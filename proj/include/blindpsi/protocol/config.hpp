#pragma once

#include <cstdint>
#include <stdexcept>

namespace blindpsi::protocol {

// Fault-injection knobs for the negative tests: CorruptDecoy has one client
// send an orthogonal decoy state in its test batches, ZeroBlinding makes the
// clients pick all-zero pads and r bits (which exposes the plain angles).
enum class Sabotage { None, CorruptDecoy, ZeroBlinding };

struct RunConfig {
    int lambda = 8;        // filter expansion, M = lambda * m
    int m = 0;             // maximum set size
    uint64_t seed = 0;
    int l_batch = 8;       // states per honesty-test batch
    int qubit_cap = 24;
    bool parallel = true;  // run per-bit instances across OpenMP threads
    Sabotage sabotage = Sabotage::None;
    int corrupt_client = 1;

    void validate() const
    {
        if (lambda < 2) throw std::invalid_argument("lambda must be >= 2");
        if (l_batch < 2) throw std::invalid_argument("test batch size must be >= 2");
        if (m < 1) throw std::invalid_argument("m must be >= 1");
        if (qubit_cap < 8) throw std::invalid_argument("qubit cap too small to run");
    }
};

}  // namespace blindpsi::protocol
