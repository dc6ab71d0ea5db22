#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blindpsi/mbqc/compile.hpp"
#include "blindpsi/secrets/oracle.hpp"
#include "blindpsi/secrets/sharing.hpp"
#include "blindpsi/stats.hpp"

using namespace blindpsi;
using namespace blindpsi::secrets;

TEST_CASE("share and reconstruct every angle")
{
    Rng rng(1);
    for (int x = 0; x < 8; ++x)
        for (int rep = 0; rep < 16; ++rep) {
            auto [s1, s2] = share_angle(Angle8{x}, rng);
            CHECK(reconstruct(s1, s2) == Angle8{x});
            CHECK((s1.value + s2.value).v == uint8_t(x));
        }
    auto [a, b] = share_angle(Angle8{5}, rng);
    CHECK_THROWS_AS(reconstruct(a, a), std::invalid_argument);

    // spot value from modular arithmetic: secret 5 with first share 3
    CHECK((Angle8{5} - Angle8{3}) == Angle8{2});
}

TEST_CASE("first share is uniform whatever the secret")
{
    // exact: share2 = secret - share1 is a bijection of share1, so a uniform
    // share1 makes both marginals uniform; checked by enumeration
    for (int secret = 0; secret < 8; ++secret) {
        std::set<uint8_t> seen;
        for (int s1 = 0; s1 < 8; ++s1) seen.insert((Angle8{secret} - Angle8{s1}).v);
        CHECK(seen.size() == 8);
    }
    // and the sampled share1 frequencies stay within 3 sigma of 1/8
    Rng rng(777);
    std::vector<uint64_t> counts(8, 0);
    const int n = 10000;
    for (int i = 0; i < n; ++i) counts[share_angle(Angle8{6}, rng).first.value.v]++;
    const double sigma = std::sqrt((1.0 / 8) * (7.0 / 8) / n);
    for (auto c : counts) CHECK(std::abs(double(c) / n - 1.0 / 8) < 3 * sigma);
    CHECK(stats::chi_square_uniform_pvalue(counts) > 1e-4);
}

TEST_CASE("bit shares")
{
    Rng rng(2);
    for (int b = 0; b < 2; ++b)
        for (int rep = 0; rep < 8; ++rep) {
            auto [s1, s2] = share_bit(b, rng);
            CHECK(reconstruct_bit(s1, s2) == b);
        }
    CHECK(s_value(0, 0) == 0);
    CHECK(s_value(1, 1) == 0);
    CHECK(s_value(1, 0) == 1);
}

TEST_CASE("measurement-angle formula, hand-checked values")
{
    // everything zero except phi
    CHECK(delta_formula(Angle8{1}, 0, 0, 0, 0, 0, Angle8{0}) == Angle8{1});
    // phi=1, c=1, sX=0, sZ=1, c_pred=0, r=1, theta=3:
    // phi' = -1 + 4 = 3, delta = 3 + 4 + 3 = 10 = 2 (mod 8)
    CHECK(delta_formula(Angle8{1}, 1, 0, 1, 0, 1, Angle8{3}) == Angle8{2});
}

TEST_CASE("measurement-angle formula against an independent evaluator")
{
    // plain integer re-derivation, all mod 8
    auto reference = [](int phi, int c, int sx, int sz, int cp, int r, int theta) {
        int p = ((c + sx) % 2) ? (8 - phi) % 8 : phi;
        return (p + 4 * sz + 4 * cp + 4 * r + theta) % 8;
    };
    for (int phi = 0; phi < 8; ++phi)
        for (int theta = 0; theta < 8; ++theta)
            for (int bits = 0; bits < 32; ++bits) {
                const int c = bits & 1, sx = (bits >> 1) & 1, sz = (bits >> 2) & 1,
                          cp = (bits >> 3) & 1, r = (bits >> 4) & 1;
                CHECK(delta_formula(Angle8{phi}, c, sx, sz, cp, r, Angle8{theta}).v ==
                      reference(phi, c, sx, sz, cp, r, theta));
            }
}

TEST_CASE("delta blindness: every angle value twice across the 16 pad pairs")
{
    // for every configuration, sweeping (theta, r) over 8 x 2 must hit each
    // delta value exactly twice
    for (int phi = 0; phi < 8; ++phi)
        for (int bits = 0; bits < 16; ++bits) {
            const int c = bits & 1, sx = (bits >> 1) & 1, sz = (bits >> 2) & 1,
                      cp = (bits >> 3) & 1;
            std::array<int, 8> hits{};
            for (int theta = 0; theta < 8; ++theta)
                for (int r = 0; r < 2; ++r)
                    hits[delta_formula(Angle8{phi}, c, sx, sz, cp, r, Angle8{theta}).v]++;
            for (int h : hits) CHECK(h == 2);
        }
}

TEST_CASE("oracle tape assembles delta from deposited shares")
{
    static const auto pattern = mbqc::compile_toffoli();
    Oracle oracle(&pattern);
    Rng rng(99);

    const mbqc::Vertex v = 0;  // an input vertex, no dependencies
    oracle.set_input_owner(v, 1);

    const int c = 1;
    const Angle8 theta_own{3}, theta_contrib{6};
    auto [c1s, c2s] = share_bit(c, rng);
    oracle.deposit_c_share(1, v, c1s);
    oracle.deposit_c_share(2, v, c2s);
    auto [o1, o2] = share_angle(theta_own, rng);
    oracle.deposit_own_angle_share(1, v, o1.value);
    oracle.deposit_own_angle_share(2, v, o2.value);
    auto [p1, p2] = share_angle(theta_contrib, rng);
    oracle.deposit_plus_angle_share(1, v, 2, p1.value);
    oracle.deposit_plus_angle_share(2, v, 2, p2.value);

    // r shares incomplete: delta must refuse
    CHECK_THROWS(oracle.delta(v));
    for (int of : {1, 2}) {
        auto [r1, r2] = share_bit(of == 1 ? 1 : 0, rng);
        oracle.deposit_r_share(1, v, of, r1);
        oracle.deposit_r_share(2, v, of, r2);
    }
    CHECK_THROWS(oracle.delta(v));  // t still missing
    oracle.record_t(v, 1);

    const Angle8 theta = theta_own + theta_contrib.times_sign(((1 + c) % 2) ? -1 : +1);
    const Angle8 expect = delta_formula(pattern.phi[v], c, 0, 0, 0, 1, theta);
    CHECK(oracle.delta(v) == expect);

    // only the assigned client may pull output corrections
    CHECK_THROWS(oracle.output_corrections(pattern.graph.outputs[0], 2, 1));
}
