#include "blindpsi/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace blindpsi::stats {

static double chi2_pvalue(double chi2, int dof)
{
    if (dof <= 0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, chi2 / 2.0);
}

double chi_square_uniform_pvalue(const std::vector<uint64_t>& counts)
{
    if (counts.empty()) throw std::invalid_argument("empty histogram");
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    if (total == 0) throw std::invalid_argument("empty sample");
    const double expected = double(total) / double(counts.size());
    double chi2 = 0.0;
    for (uint64_t c : counts) {
        const double d = double(c) - expected;
        chi2 += d * d / expected;
    }
    return chi2_pvalue(chi2, int(counts.size()) - 1);
}

double chi_square_two_sample_pvalue(const std::vector<uint64_t>& a,
                                    const std::vector<uint64_t>& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("histogram size mismatch");
    uint64_t na = 0, nb = 0;
    for (uint64_t c : a) na += c;
    for (uint64_t c : b) nb += c;
    if (na == 0 || nb == 0) throw std::invalid_argument("empty sample");
    const double ka = std::sqrt(double(nb) / double(na));
    const double kb = std::sqrt(double(na) / double(nb));
    double chi2 = 0.0;
    int used_bins = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        const uint64_t sum = a[i] + b[i];
        if (sum == 0) continue;
        ++used_bins;
        const double d = ka * double(a[i]) - kb * double(b[i]);
        chi2 += d * d / double(sum);
    }
    return chi2_pvalue(chi2, used_bins - 1);
}

}  // namespace blindpsi::stats
