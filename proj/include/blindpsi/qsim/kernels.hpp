#pragma once

#include <complex>
#include <cstddef>

namespace blindpsi::qsim::kernels {

using cplx = std::complex<double>;

// Amplitude-array kernels. `n` is the full vector length (a power of two),
// `mask` selects the target qubit's bit. Each kernel comes in a serial
// variant (reference, always bit-exact) and an OpenMP variant used for wide
// registers. The two must agree; tests and the bench target compare them.

// |0>,|1> block action of an arbitrary 2x2 matrix m (row-major).
void apply_1q_serial(cplx* amps, std::size_t n, std::size_t mask, const cplx m[4]);
void apply_1q_omp(cplx* amps, std::size_t n, std::size_t mask, const cplx m[4]);

// X: swap the two halves of each pair.
void apply_x_serial(cplx* amps, std::size_t n, std::size_t mask);
void apply_x_omp(cplx* amps, std::size_t n, std::size_t mask);

// diag(1, phase) on the target qubit.
void apply_phase_serial(cplx* amps, std::size_t n, std::size_t mask, cplx phase);
void apply_phase_omp(cplx* amps, std::size_t n, std::size_t mask, cplx phase);

// controlled-Z: negate amplitudes with both bits set.
void apply_cz_serial(cplx* amps, std::size_t n, std::size_t mask_a, std::size_t mask_b);
void apply_cz_omp(cplx* amps, std::size_t n, std::size_t mask_a, std::size_t mask_b);

// CNOT: swap target-bit pairs where the control bit is set.
void apply_cnot_serial(cplx* amps, std::size_t n, std::size_t cmask, std::size_t tmask);
void apply_cnot_omp(cplx* amps, std::size_t n, std::size_t cmask, std::size_t tmask);

// sum of |amp|^2 over indices with the target bit set.
double prob_one_serial(const cplx* amps, std::size_t n, std::size_t mask);
double prob_one_omp(const cplx* amps, std::size_t n, std::size_t mask);

double norm_sq_serial(const cplx* amps, std::size_t n);
double norm_sq_omp(const cplx* amps, std::size_t n);

// Collapse the target qubit to `bit`, drop it from the register and rescale
// by 1/sqrt(prob). `out` has length n/2.
void collapse_serial(const cplx* amps, std::size_t n, std::size_t mask, int bit,
                     double inv_sqrt_prob, cplx* out);
void collapse_omp(const cplx* amps, std::size_t n, std::size_t mask, int bit,
                  double inv_sqrt_prob, cplx* out);

}  // namespace blindpsi::qsim::kernels
