#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "blindpsi/angle.hpp"
#include "blindpsi/rng.hpp"

namespace blindpsi::qsim {

using QubitId = uint32_t;
using cplx = std::complex<double>;

struct QubitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pure-state register over a dynamic set of labelled qubits. Qubit `labels()[p]`
// corresponds to bit p of the amplitude index. Measuring a qubit collapses the
// state and removes the qubit from the register, so the register only ever
// holds live qubits.
class StateVector {
public:
    StateVector() : amps_{cplx(1.0, 0.0)} {}

    static StateVector basis(QubitId q, int bit);
    // (|0> + e^{i theta}|1>)/sqrt(2)
    static StateVector plus(QubitId q, Angle8 theta);

    std::size_t num_qubits() const { return labels_.size(); }
    const std::vector<QubitId>& labels() const { return labels_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    bool has(QubitId q) const;

    // Tensor product; label sets must be disjoint.
    void attach(StateVector other);
    void allocate_basis(QubitId q, int bit) { attach(basis(q, bit)); }
    void allocate_plus(QubitId q, Angle8 theta = Angle8{0}) { attach(plus(q, theta)); }

    void x(QubitId q);
    void z(QubitId q, Angle8 theta);  // diag(1, e^{i theta})
    void h(QubitId q);
    void cz(QubitId a, QubitId b);
    void cnot(QubitId control, QubitId target);

    // Measurement in the {|+_delta>, |-_delta>} basis; 0 means the |+_delta>
    // outcome. The measured qubit is released.
    int measure_rotated(QubitId q, Angle8 delta, Rng& rng);
    int measure_computational(QubitId q, Rng& rng);

    // Forced-outcome variants (post-selection); return the probability of the
    // requested outcome. Used by the enumeration checks.
    double collapse_rotated(QubitId q, Angle8 delta, int outcome);
    double collapse_computational(QubitId q, int outcome);

    double norm() const;

    // <this|other>; both registers must hold the same label set.
    cplx inner(const StateVector& other) const;

    void rename(QubitId from, QubitId to);

    // Amplitude of the computational basis state given by per-label bits
    // (ordered as labels()).
    cplx amplitude(const std::vector<int>& bits) const;

    // Qubit budget shared by every register; exceeding it throws.
    static int qubit_cap();
    static void set_qubit_cap(int cap);

    // Kernel selection. Registers narrower than the threshold always take the
    // serial path, which keeps protocol-scale runs bit-reproducible.
    static void set_parallel(bool on);
    static bool parallel_enabled();
    static int parallel_threshold_qubits();

private:
    std::vector<cplx> amps_;
    std::vector<QubitId> labels_;

    std::size_t position(QubitId q) const;
    std::size_t mask_of(QubitId q) const { return std::size_t(1) << position(q); }
    bool wide() const;
    void remove_qubit(QubitId q, int bit, double prob);
};

// true iff |<a|b>| >= 1 - tol
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = 1e-9);

}  // namespace blindpsi::qsim
