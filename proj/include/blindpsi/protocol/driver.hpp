#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "blindpsi/bloom/bloom.hpp"
#include "blindpsi/mbqc/compile.hpp"
#include "blindpsi/protocol/config.hpp"
#include "blindpsi/transport/bus.hpp"

namespace blindpsi::protocol {

// One 3-wire pattern instance run blind end to end.
struct InstanceSpec {
    std::array<int, 3> input_bits{};   // wire 0 (C1), wire 1 (C2), wire 2 ancilla (C1)
    int target_client = 1;             // who receives the wire-2 (result) output
    uint64_t seed = 0;
    const mbqc::MeasurementPattern* pattern = nullptr;
    RunConfig config;
};

struct InstanceResult {
    bool aborted = false;
    std::string abort_reason;
    std::array<int, 3> output_bits{};  // decrypted, wire order
    std::vector<Angle8> deltas;        // the server's classical view, vertex order
    transport::Transcript transcript;
};

InstanceResult run_instance(const InstanceSpec& spec);

// Full pipeline: bloom encoding, per-position blind Toffolis, output return,
// half exchange, dictionary recovery.
struct RunResult {
    bool aborted = false;
    std::string abort_reason;
    std::vector<std::string> intersection_c1;
    std::vector<std::string> intersection_c2;
    std::vector<int> and_bits;  // the assembled bitwise AND of the filters
    transport::Transcript transcript;
    bloom::BloomParams params;
    uint32_t instances = 0;
};

RunResult psi_run(const std::vector<std::string>& items_a,
                  const std::vector<std::string>& items_b, const RunConfig& config);

// Expected QUBIT + OUTPUT_QUBIT messages: per instance, each of the three
// input qubits costs 1 send plus one L-state test batch, each of the
// 3*(q-1) other measured qubits costs two batches, and the three outputs
// come back. Linear in m for fixed lambda and L.
uint64_t expected_qubit_count(int lambda, int m, int l_batch);

// One honesty-test batch with a single corrupted decoy; true if the server
// catches it. Detection rate over seeds approaches (L-1)/L.
bool p1_corruption_detected(uint64_t seed, int l_batch);

}  // namespace blindpsi::protocol
