#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "blindpsi/protocol/driver.hpp"

namespace blindpsi::protocol {

// Exhaustive check of the two preparation circuits against their angle
// formulas, every (angle, angle, pad, outcome) combination with the outcome
// forced both ways. `mutate` flips the outcome sign in the prediction and
// must blow the infidelity up (harness self-test).
struct PrepCheckResult {
    int merge_input_cases = 0;  // padded-input merge
    int merge_plus_cases = 0;   // plus-state merge
    double max_infidelity = 0.0;
};
PrepCheckResult verify_prep_check(bool mutate);

// Blind single-Toffoli runs on two fixed input pairs; per-position delta
// histograms with uniformity and homogeneity p-values.
struct BlindnessResult {
    uint32_t positions = 0;
    double min_uniformity_p = 1.0;
    double min_two_sample_p = 1.0;
    std::array<std::vector<std::vector<uint64_t>>, 2> histograms;  // [pair][position][bin]
    bool pass(double alpha = 0.01) const
    {
        return min_uniformity_p > alpha && min_two_sample_p > alpha;
    }
};
BlindnessResult blindness_check(int samples, uint64_t seed, bool sabotage);

// All 8 basis inputs through the blind pipeline, `seeds` times each.
// Returns the number of runs whose decrypted outputs differ from the truth
// table.
int toffoli_check(int seeds, uint64_t seed_base);

}  // namespace blindpsi::protocol
