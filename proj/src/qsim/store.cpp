#include "blindpsi/qsim/store.hpp"

#include <algorithm>

namespace blindpsi::qsim {

void QubitStore::note_width(std::size_t w) { peak_width_ = std::max(peak_width_, w); }

QubitId QubitStore::fresh_basis(Party owner, int bit)
{
    const QubitId q = next_id_++;
    where_[q] = Slot{std::make_shared<StateVector>(StateVector::basis(q, bit)), owner};
    note_width(1);
    return q;
}

QubitId QubitStore::fresh_plus(Party owner, Angle8 theta)
{
    const QubitId q = next_id_++;
    where_[q] = Slot{std::make_shared<StateVector>(StateVector::plus(q, theta)), owner};
    note_width(1);
    return q;
}

QubitStore::Slot& QubitStore::checked(Party actor, QubitId q)
{
    auto it = where_.find(q);
    if (it == where_.end()) throw QubitError("qubit not live: " + std::to_string(q));
    if (it->second.owner != actor) throw QubitError("qubit not held by acting party");
    return it->second;
}

void QubitStore::transfer(QubitId q, Party from, Party to)
{
    checked(from, q).owner = to;
}

Party QubitStore::owner_of(QubitId q) const
{
    auto it = where_.find(q);
    if (it == where_.end()) throw QubitError("qubit not live: " + std::to_string(q));
    return it->second.owner;
}

const StateVector& QubitStore::island_of(QubitId q) const
{
    auto it = where_.find(q);
    if (it == where_.end()) throw QubitError("qubit not live: " + std::to_string(q));
    return *it->second.island;
}

StateVector& QubitStore::merged(Party actor, QubitId a, QubitId b)
{
    Slot& sa = checked(actor, a);
    Slot& sb = checked(actor, b);
    if (sa.island != sb.island) {
        sa.island->attach(std::move(*sb.island));
        auto merged_island = sa.island;
        for (QubitId q : merged_island->labels()) where_[q].island = merged_island;
    }
    note_width(sa.island->num_qubits());
    return *sa.island;
}

void QubitStore::x(Party actor, QubitId q) { checked(actor, q).island->x(q); }

void QubitStore::z(Party actor, QubitId q, Angle8 theta) { checked(actor, q).island->z(q, theta); }

void QubitStore::h(Party actor, QubitId q) { checked(actor, q).island->h(q); }

void QubitStore::cz(Party actor, QubitId a, QubitId b) { merged(actor, a, b).cz(a, b); }

void QubitStore::cnot(Party actor, QubitId control, QubitId target)
{
    merged(actor, control, target).cnot(control, target);
}

void QubitStore::drop(QubitId q) { where_.erase(q); }

int QubitStore::measure_rotated(Party actor, QubitId q, Angle8 delta, Rng& rng)
{
    Slot& s = checked(actor, q);
    const int bit = s.island->measure_rotated(q, delta, rng);
    drop(q);
    return bit;
}

int QubitStore::measure_computational(Party actor, QubitId q, Rng& rng)
{
    Slot& s = checked(actor, q);
    const int bit = s.island->measure_computational(q, rng);
    drop(q);
    return bit;
}

}  // namespace blindpsi::qsim
