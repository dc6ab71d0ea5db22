#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "blindpsi/qsim/state.hpp"

namespace blindpsi::qsim {

enum class Party : uint8_t { C1 = 0, C2 = 1, Server = 2, Oracle = 3 };

// The one physical register. Qubits live in entanglement islands (separate
// StateVectors) that merge when a two-qubit gate spans them. Every qubit has
// an owner; operations check that the acting party holds the qubit, and
// transferring a qubit is what a QUBIT message on the wire means.
class QubitStore {
public:
    QubitId fresh_basis(Party owner, int bit);
    QubitId fresh_plus(Party owner, Angle8 theta);

    void transfer(QubitId q, Party from, Party to);
    Party owner_of(QubitId q) const;

    void x(Party actor, QubitId q);
    void z(Party actor, QubitId q, Angle8 theta);
    void h(Party actor, QubitId q);
    void cz(Party actor, QubitId a, QubitId b);
    void cnot(Party actor, QubitId control, QubitId target);

    int measure_rotated(Party actor, QubitId q, Angle8 delta, Rng& rng);
    int measure_computational(Party actor, QubitId q, Rng& rng);

    std::size_t live_count() const { return where_.size(); }
    std::size_t peak_island_width() const { return peak_width_; }

    // Test access: the island currently holding q (const view).
    const StateVector& island_of(QubitId q) const;

private:
    struct Slot {
        std::shared_ptr<StateVector> island;
        Party owner;
    };

    std::map<QubitId, Slot> where_;
    QubitId next_id_ = 0;
    std::size_t peak_width_ = 0;

    Slot& checked(Party actor, QubitId q);
    StateVector& merged(Party actor, QubitId a, QubitId b);
    void drop(QubitId q);
    void note_width(std::size_t w);
};

}  // namespace blindpsi::qsim
