#include "blindpsi/qsim/kernels.hpp"

#include <cstdint>

namespace blindpsi::qsim::kernels {

// Index expansion: i runs over n/2 pair indices; i0 is the index with the
// target bit clear, i1 = i0 | mask.
static inline std::size_t pair_base(std::size_t i, std::size_t mask)
{
    const std::size_t lo = mask - 1;
    return ((i & ~lo) << 1) | (i & lo);
}

void apply_1q_serial(cplx* amps, std::size_t n, std::size_t mask, const cplx m[4])
{
    const std::size_t half = n >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = pair_base(i, mask);
        const std::size_t i1 = i0 | mask;
        const cplx a0 = amps[i0], a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_1q_omp(cplx* amps, std::size_t n, std::size_t mask, const cplx m[4])
{
    const std::int64_t half = std::int64_t(n >> 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::size_t i0 = pair_base(std::size_t(i), mask);
        const std::size_t i1 = i0 | mask;
        const cplx a0 = amps[i0], a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_x_serial(cplx* amps, std::size_t n, std::size_t mask)
{
    const std::size_t half = n >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = pair_base(i, mask);
        std::swap(amps[i0], amps[i0 | mask]);
    }
}

void apply_x_omp(cplx* amps, std::size_t n, std::size_t mask)
{
    const std::int64_t half = std::int64_t(n >> 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::size_t i0 = pair_base(std::size_t(i), mask);
        std::swap(amps[i0], amps[i0 | mask]);
    }
}

void apply_phase_serial(cplx* amps, std::size_t n, std::size_t mask, cplx phase)
{
    for (std::size_t i = 0; i < n; ++i)
        if (i & mask) amps[i] *= phase;
}

void apply_phase_omp(cplx* amps, std::size_t n, std::size_t mask, cplx phase)
{
    const std::int64_t nn = std::int64_t(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nn; ++i)
        if (std::size_t(i) & mask) amps[i] *= phase;
}

void apply_cz_serial(cplx* amps, std::size_t n, std::size_t mask_a, std::size_t mask_b)
{
    const std::size_t both = mask_a | mask_b;
    for (std::size_t i = 0; i < n; ++i)
        if ((i & both) == both) amps[i] = -amps[i];
}

void apply_cz_omp(cplx* amps, std::size_t n, std::size_t mask_a, std::size_t mask_b)
{
    const std::size_t both = mask_a | mask_b;
    const std::int64_t nn = std::int64_t(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nn; ++i)
        if ((std::size_t(i) & both) == both) amps[i] = -amps[i];
}

void apply_cnot_serial(cplx* amps, std::size_t n, std::size_t cmask, std::size_t tmask)
{
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
}

void apply_cnot_omp(cplx* amps, std::size_t n, std::size_t cmask, std::size_t tmask)
{
    const std::int64_t nn = std::int64_t(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nn; ++i) {
        const std::size_t u = std::size_t(i);
        if ((u & cmask) && !(u & tmask)) std::swap(amps[u], amps[u | tmask]);
    }
}

double prob_one_serial(const cplx* amps, std::size_t n, std::size_t mask)
{
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (i & mask) p += std::norm(amps[i]);
    return p;
}

double prob_one_omp(const cplx* amps, std::size_t n, std::size_t mask)
{
    double p = 0.0;
    const std::int64_t nn = std::int64_t(n);
#pragma omp parallel for schedule(static) reduction(+ : p)
    for (std::int64_t i = 0; i < nn; ++i)
        if (std::size_t(i) & mask) p += std::norm(amps[i]);
    return p;
}

double norm_sq_serial(const cplx* amps, std::size_t n)
{
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i) p += std::norm(amps[i]);
    return p;
}

double norm_sq_omp(const cplx* amps, std::size_t n)
{
    double p = 0.0;
    const std::int64_t nn = std::int64_t(n);
#pragma omp parallel for schedule(static) reduction(+ : p)
    for (std::int64_t i = 0; i < nn; ++i) p += std::norm(amps[i]);
    return p;
}

void collapse_serial(const cplx* amps, std::size_t n, std::size_t mask, int bit,
                     double inv_sqrt_prob, cplx* out)
{
    const std::size_t half = n >> 1;
    const std::size_t sel = bit ? mask : 0;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t src = pair_base(i, mask) | sel;
        out[i] = amps[src] * inv_sqrt_prob;
    }
}

void collapse_omp(const cplx* amps, std::size_t n, std::size_t mask, int bit,
                  double inv_sqrt_prob, cplx* out)
{
    const std::int64_t half = std::int64_t(n >> 1);
    const std::size_t sel = bit ? mask : 0;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::size_t src = pair_base(std::size_t(i), mask) | sel;
        out[i] = amps[src] * inv_sqrt_prob;
    }
}

}  // namespace blindpsi::qsim::kernels
