#include "blindpsi/bloom/bloom.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "blindpsi/rng.hpp"

namespace blindpsi::bloom {

uint32_t k_opt(int64_t m_bits, int64_t n_items)
{
    if (m_bits <= 0 || n_items <= 0)
        throw std::invalid_argument("k_opt needs positive filter size and item count");
    if (m_bits < n_items)
        throw std::invalid_argument("filter smaller than item count");
    const double k = std::floor(double(m_bits) / double(n_items) * std::log(2.0));
    return k < 1.0 ? 1u : uint32_t(k);
}

uint64_t keyed_hash64(uint64_t seed, std::string_view data)
{
    uint64_t h = 14695981039346656037ULL ^ seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return mix64(h);
}

std::vector<uint32_t> indices(const BloomParams& params, std::string_view item)
{
    if (params.k < 1 || params.m_bits < 1)
        throw std::invalid_argument("bloom parameters not set");
    const uint64_t h1 = keyed_hash64(params.hash_seed, item);
    const uint64_t h2 = keyed_hash64(params.hash_seed ^ 0x9E3779B97F4A7C15ULL, item) | 1;
    // Third stride mixed from the same two halves. Plain (h1 + i*h2) probing
    // has only M*M/2 distinct sequences, which at small power-of-two M pushes
    // the false-positive rate several times past the standard estimate; the
    // quadratic stride restores it.
    const uint64_t h3 = mix64(h1 ^ ((h2 >> 32) | (h2 << 32)));
    std::vector<uint32_t> out(params.k);
    for (uint64_t i = 0; i < params.k; ++i)
        out[i] = uint32_t((h1 + i * h2 + (i * (i - 1) / 2) * h3) % params.m_bits);
    return out;
}

void BloomFilter::insert(std::string_view item)
{
    for (uint32_t i : indices(params_, item)) bits_[i] = 1;
}

bool BloomFilter::contains(std::string_view item) const
{
    for (uint32_t i : indices(params_, item))
        if (!bits_[i]) return false;
    return true;
}

void ItemDictionary::insert(const BloomParams& params, std::string_view item)
{
    auto idx = indices(params, item);
    std::sort(idx.begin(), idx.end());
    auto& items = map_[idx];
    if (std::find(items.begin(), items.end(), item) == items.end())
        items.emplace_back(item);
}

const std::vector<std::string>* ItemDictionary::lookup(
    const std::vector<uint32_t>& sorted_indices) const
{
    auto it = map_.find(sorted_indices);
    return it == map_.end() ? nullptr : &it->second;
}

std::vector<std::string> ItemDictionary::items_matching(const std::vector<uint8_t>& bits) const
{
    std::set<std::string> found;
    for (const auto& [idx, items] : map_) {
        bool all = true;
        for (uint32_t i : idx) {
            if (i >= bits.size() || !bits[i]) {
                all = false;
                break;
            }
        }
        if (all) found.insert(items.begin(), items.end());
    }
    return {found.begin(), found.end()};
}

std::vector<std::string> intersect_classical(const BloomFilter& fa, const BloomFilter& fb,
                                             const ItemDictionary& da,
                                             const std::vector<std::string>& items_a)
{
    if (fa.params() != fb.params())
        throw std::invalid_argument("bloom parameter mismatch between the two filters");
    (void)da;
    std::set<std::string> out;
    for (const auto& a : items_a) {
        bool all = true;
        for (uint32_t i : indices(fa.params(), a)) {
            if (!fa.bit(i) || !fb.bit(i)) {
                all = false;
                break;
            }
        }
        if (all) out.insert(a);
    }
    return {out.begin(), out.end()};
}

}  // namespace blindpsi::bloom
