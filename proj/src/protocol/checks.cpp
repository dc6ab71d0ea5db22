#include "blindpsi/protocol/checks.hpp"

#include <algorithm>

#include "blindpsi/qsim/state.hpp"
#include "blindpsi/stats.hpp"

namespace blindpsi::protocol {

using qsim::StateVector;

PrepCheckResult verify_prep_check(bool mutate)
{
    PrepCheckResult res;

    // padded input (x) contributed plus state; CNOT off the input, target
    // measured computationally; survivor must be X^c Z(theta)|psi> with
    // theta = theta_own + (-1)^(t+c) theta_contrib
    for (int tj = 0; tj < 8; ++tj)
        for (int tk = 0; tk < 8; ++tk)
            for (int c = 0; c < 2; ++c)
                for (int t = 0; t < 2; ++t) {
                    StateVector s = StateVector::plus(0, Angle8{0});
                    s.z(0, Angle8{tj});
                    if (c) s.x(0);
                    s.attach(StateVector::plus(1, Angle8{tk}));
                    s.cnot(0, 1);
                    s.collapse_computational(1, t);

                    const int sign_bit = (t + c + (mutate ? 1 : 0)) % 2;
                    const Angle8 theta = Angle8{tj} + Angle8{tk}.times_sign(sign_bit ? -1 : +1);
                    StateVector want = StateVector::plus(1, Angle8{0});
                    want.z(1, theta);
                    if (c) want.x(1);
                    want.rename(1, 0);

                    res.max_infidelity =
                        std::max(res.max_infidelity, 1.0 - std::norm(s.inner(want)));
                    ++res.merge_input_cases;
                }

    // two plus states; CNOT off the second, first measured; survivor
    // |+_(theta2 + (-1)^t theta1)>
    for (int t1 = 0; t1 < 8; ++t1)
        for (int t2 = 0; t2 < 8; ++t2)
            for (int t = 0; t < 2; ++t) {
                StateVector s = StateVector::plus(0, Angle8{t1});
                s.attach(StateVector::plus(1, Angle8{t2}));
                s.cnot(1, 0);
                s.collapse_computational(0, t);

                const int sign_bit = (t + (mutate ? 1 : 0)) % 2;
                const Angle8 theta = Angle8{t2} + Angle8{t1}.times_sign(sign_bit ? -1 : +1);
                StateVector want = StateVector::plus(1, theta);
                res.max_infidelity = std::max(res.max_infidelity, 1.0 - std::norm(s.inner(want)));
                ++res.merge_plus_cases;
            }

    return res;
}

BlindnessResult blindness_check(int samples, uint64_t seed, bool sabotage)
{
    static const mbqc::MeasurementPattern pattern = mbqc::compile_toffoli();
    BlindnessResult out;
    out.positions = pattern.graph.n_wires * (pattern.graph.n_layers - 1);

    const std::array<std::array<int, 3>, 2> input_pairs = {{{1, 1, 0}, {0, 0, 0}}};
    for (auto& h : out.histograms) h.assign(out.positions, std::vector<uint64_t>(8, 0));

    for (int which = 0; which < 2; ++which) {
#pragma omp parallel for schedule(dynamic)
        for (int64_t i = 0; i < samples; ++i) {
            InstanceSpec spec;
            spec.input_bits = input_pairs[which];
            spec.target_client = 1;
            spec.seed = mix64(mix64(seed, uint64_t(which + 1)), uint64_t(i));
            spec.pattern = &pattern;
            spec.config.m = 1;
            spec.config.sabotage = sabotage ? Sabotage::ZeroBlinding : Sabotage::None;
            const InstanceResult res = run_instance(spec);
#pragma omp critical
            for (uint32_t p = 0; p < out.positions; ++p)
                out.histograms[which][p][res.deltas[p].v]++;
        }
    }

    for (uint32_t p = 0; p < out.positions; ++p) {
        out.min_uniformity_p =
            std::min({out.min_uniformity_p, stats::chi_square_uniform_pvalue(out.histograms[0][p]),
                      stats::chi_square_uniform_pvalue(out.histograms[1][p])});
        out.min_two_sample_p = std::min(
            out.min_two_sample_p,
            stats::chi_square_two_sample_pvalue(out.histograms[0][p], out.histograms[1][p]));
    }
    return out;
}

int toffoli_check(int seeds, uint64_t seed_base)
{
    static const mbqc::MeasurementPattern pattern = mbqc::compile_toffoli();
    int mismatches = 0;
    const int total = seeds * 8;

#pragma omp parallel for schedule(dynamic) reduction(+ : mismatches)
    for (int64_t run = 0; run < total; ++run) {
        const int s = int(run / 8);
        const int in = int(run % 8);
        InstanceSpec spec;
        spec.input_bits = {(in >> 0) & 1, (in >> 1) & 1, (in >> 2) & 1};
        spec.target_client = (in % 2) + 1;
        spec.seed = mix64(mix64(seed_base, uint64_t(s)), uint64_t(in));
        spec.pattern = &pattern;
        spec.config.m = 1;
        const InstanceResult res = run_instance(spec);
        const int b0 = spec.input_bits[0], b1 = spec.input_bits[1], b2 = spec.input_bits[2];
        const bool ok = !res.aborted && res.output_bits[0] == b0 && res.output_bits[1] == b1 &&
                        res.output_bits[2] == (b2 ^ (b0 & b1));
        if (!ok) ++mismatches;
    }
    return mismatches;
}

}  // namespace blindpsi::protocol
