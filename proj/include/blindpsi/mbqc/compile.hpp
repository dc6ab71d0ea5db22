#pragma once

#include "blindpsi/mbqc/pattern.hpp"

namespace blindpsi::mbqc {

// Brickwork dimensions plus the tiling rule (see brickwork()).
struct BrickworkSpec {
    uint32_t n = 0;
    uint32_t q = 0;

    uint32_t total_qubits() const { return n * (q + 1); }
    OpenGraph graph() const { return brickwork(n, q); }
};

// Compiles a Toffoli on three wires (control, control, target) into a
// brickwork measurement pattern. The circuit is a nearest-neighbour
// decomposition into H/T/Tdag/CNOT whose CNOTs alternate between the two
// wire pairs, which lines up one CNOT with each rung pair of the tiling.
// The result's layer count (q+1) is exposed as toffoli_layer_count().
MeasurementPattern compile_toffoli();

// Layers per wire of the compiled pattern, q+1.
uint32_t toffoli_layer_count();

}  // namespace blindpsi::mbqc
