#pragma once

#include "blindpsi/mbqc/pattern.hpp"
#include "blindpsi/qsim/state.hpp"
#include "blindpsi/rng.hpp"

namespace blindpsi::mbqc {

// Non-blind reference execution of a pattern: prepares non-input vertices as
// |+>, entangles just in time (one layer ahead of the measurement front, so
// at most two layers are ever live), measures layer-major at the adapted
// angle (-1)^{sX} phi + pi*sZ, and applies the final Z^{sZ} X^{sX} output
// corrections. Input state qubits are taken in wire order; the returned
// state is labelled by wire index.
qsim::StateVector run_pattern_plain(const MeasurementPattern& p,
                                    const qsim::StateVector& input_state, Rng& rng);

// Outcome parity over a dependency set, given per-vertex outcomes.
int dep_parity(const std::vector<Vertex>& deps, const std::vector<int>& s);

}  // namespace blindpsi::mbqc
