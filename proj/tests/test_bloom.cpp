#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "blindpsi/bloom/bloom.hpp"
#include "blindpsi/rng.hpp"

using namespace blindpsi;
using bloom::BloomFilter;
using bloom::BloomParams;

TEST_CASE("optimal hash count")
{
    CHECK(bloom::k_opt(8, 2) == 2);
    CHECK(bloom::k_opt(10, 10) == 1);
    CHECK(bloom::k_opt(100, 10) == 6);
    CHECK_THROWS_AS(bloom::k_opt(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(bloom::k_opt(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(bloom::k_opt(4, 8), std::invalid_argument);
}

TEST_CASE("index derivation is deterministic and K-sized")
{
    BloomParams p{64, 4, 0xDEADBEEF};
    CHECK(bloom::indices(p, "alpha") == bloom::indices(p, "alpha"));
    CHECK(bloom::indices(p, "alpha").size() == 4);

    BloomParams single{64, 1, 7};
    CHECK(bloom::indices(single, "x").size() == 1);

    // empty item is hashable
    CHECK(bloom::indices(p, "").size() == 4);
}

// independent re-derivation of the probe-sequence family from the hash
// primitive: seeded FNV-1a with a splitmix finalizer, strides h2 (odd) and
// h3 (mixed from both halves)
namespace {
uint64_t oracle_mix(uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t oracle_fnv(uint64_t seed, std::string_view data)
{
    uint64_t h = 14695981039346656037ULL ^ seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return oracle_mix(h);
}
}  // namespace

TEST_CASE("indices match an independent probe-sequence reimplementation")
{
    for (BloomParams p : {BloomParams{8, 2, 12345}, BloomParams{256, 11, 999}}) {
        for (std::string item : {"item-a", "item-b", "", "third"}) {
            const uint64_t h1 = oracle_fnv(p.hash_seed, item);
            const uint64_t h2 = oracle_fnv(p.hash_seed ^ 0x9E3779B97F4A7C15ULL, item) | 1;
            const uint64_t h3 = oracle_mix(h1 ^ ((h2 >> 32) | (h2 << 32)));
            std::vector<uint32_t> expect;
            for (uint64_t i = 0; i < p.k; ++i)
                expect.push_back(uint32_t((h1 + i * h2 + (i * (i - 1) / 2) * h3) % p.m_bits));
            CHECK(bloom::indices(p, item) == expect);
        }
    }
}

TEST_CASE("insert and membership")
{
    BloomFilter f(BloomParams{128, 3, 42});
    CHECK(!f.contains("y"));
    f.insert("x");
    CHECK(f.contains("x"));
    f.insert("x");  // idempotent
    CHECK(f.contains("x"));

    // saturated filter answers yes to anything
    BloomFilter sat(BloomParams{16, 2, 1});
    for (uint32_t i = 0; i < 16; ++i) sat.set_bit(i);
    CHECK(sat.contains("whatever"));
    CHECK(sat.contains(""));
}

TEST_CASE("no false negatives over random inserts")
{
    Rng rng(555);
    BloomFilter f(BloomParams{256, bloom::k_opt(256, 16), 9});
    std::vector<std::string> items;
    for (int i = 0; i < 16; ++i) items.push_back("it" + std::to_string(rng.u64()));
    for (const auto& it : items) f.insert(it);
    for (const auto& it : items) CHECK(f.contains(it));
}

TEST_CASE("classical intersection oracle")
{
    BloomParams p{256, bloom::k_opt(256, 4), 77};
    BloomFilter fa(p), fb(p);
    bloom::ItemDictionary da;
    std::vector<std::string> a = {"x", "y"}, b = {"y", "z"};
    for (const auto& s : a) {
        fa.insert(s);
        da.insert(p, s);
    }
    for (const auto& s : b) fb.insert(s);

    CHECK(bloom::intersect_classical(fa, fb, da, a) == std::vector<std::string>{"y"});

    // identical sets: exactly the whole set
    BloomFilter fc(p);
    bloom::ItemDictionary dc;
    for (const auto& s : a) {
        fc.insert(s);
        dc.insert(p, s);
    }
    CHECK(bloom::intersect_classical(fc, fc, dc, a) == std::vector<std::string>({"x", "y"}));

    BloomParams other{128, 2, 77};
    BloomFilter mism(other);
    CHECK_THROWS_AS(bloom::intersect_classical(fa, mism, da, a), std::invalid_argument);
}

TEST_CASE("disjoint sets come back empty at generous filter sizes")
{
    BloomParams p{512, bloom::k_opt(512, 4), 31337};
    BloomFilter fa(p), fb(p);
    bloom::ItemDictionary da;
    for (std::string s : {"a1", "a2", "a3", "a4"}) {
        fa.insert(s);
        da.insert(p, s);
    }
    for (std::string s : {"b1", "b2", "b3", "b4"}) fb.insert(s);
    CHECK(bloom::intersect_classical(fa, fb, da, {"a1", "a2", "a3", "a4"}).empty());
}

TEST_CASE("intersection result always contains the true intersection")
{
    Rng rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        BloomParams p{64, bloom::k_opt(64, 8), rng.u64()};
        BloomFilter fa(p), fb(p);
        bloom::ItemDictionary da;
        std::set<std::string> sa, sb;
        for (int i = 0; i < 8; ++i) sa.insert(std::to_string(rng.below(20)));
        for (int i = 0; i < 8; ++i) sb.insert(std::to_string(rng.below(20)));
        std::vector<std::string> va(sa.begin(), sa.end());
        for (const auto& s : va) {
            fa.insert(s);
            da.insert(p, s);
        }
        for (const auto& s : sb) fb.insert(s);

        const auto got = bloom::intersect_classical(fa, fb, da, va);
        for (const auto& s : sa)
            if (sb.count(s)) CHECK(std::count(got.begin(), got.end(), s) == 1);
    }
}

TEST_CASE("false positive rate sits within 2x of the standard estimate")
{
    const uint32_t M = 256, N = 16;
    const uint32_t K = bloom::k_opt(M, N);
    BloomParams p{M, K, 1234321};
    BloomFilter f(p);
    for (uint32_t i = 0; i < N; ++i) f.insert("member" + std::to_string(i));

    const int trials = 100000;
    int fp = 0;
    for (int i = 0; i < trials; ++i)
        if (f.contains("non-member" + std::to_string(i))) ++fp;

    const double est = std::pow(1.0 - std::exp(-double(K) * N / M), double(K));
    const double freq = double(fp) / trials;
    CHECK(freq < 2.0 * est);
    CHECK(freq > est / 2.0);
}

TEST_CASE("dictionary recovers items from their index tuples")
{
    BloomParams p{128, 4, 2024};
    bloom::ItemDictionary d;
    for (std::string s : {"ada", "grace", "edsger"}) d.insert(p, s);

    for (std::string s : {"ada", "grace", "edsger"}) {
        auto idx = bloom::indices(p, s);
        std::sort(idx.begin(), idx.end());
        const auto* items = d.lookup(idx);
        REQUIRE(items != nullptr);
        CHECK(std::count(items->begin(), items->end(), s) == 1);
    }

    // colliding tuples keep every item
    BloomParams tiny{2, 1, 5};
    bloom::ItemDictionary dc;
    std::vector<std::string> hit0;
    for (int i = 0; i < 16; ++i) {
        const std::string s = "v" + std::to_string(i);
        dc.insert(tiny, s);
        if (bloom::indices(tiny, s)[0] == 0) hit0.push_back(s);
    }
    REQUIRE(hit0.size() >= 2);
    const auto* items = dc.lookup({0});
    REQUIRE(items != nullptr);
    for (const auto& s : hit0) CHECK(std::count(items->begin(), items->end(), s) == 1);
}
