#pragma once

#include <cstdint>
#include <vector>

namespace blindpsi::stats {

// Pearson chi-square test of uniformity over the given bin counts.
// Returns the p-value (upper tail).
double chi_square_uniform_pvalue(const std::vector<uint64_t>& counts);

// Two-sample chi-square homogeneity test on two histograms with the same
// binning. Bins empty in both samples are dropped.
double chi_square_two_sample_pvalue(const std::vector<uint64_t>& a,
                                    const std::vector<uint64_t>& b);

}  // namespace blindpsi::stats
