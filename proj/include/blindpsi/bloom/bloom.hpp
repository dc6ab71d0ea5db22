#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace blindpsi::bloom {

// K = max(1, floor(M/N * ln 2)); M filter bits, N max stored items.
uint32_t k_opt(int64_t m_bits, int64_t n_items);

// Keyed 64-bit hash: FNV-1a over the bytes, seed folded into the offset
// basis, splitmix finalizer. Simple on purpose so tests can recompute it.
uint64_t keyed_hash64(uint64_t seed, std::string_view data);

struct BloomParams {
    uint32_t m_bits = 0;
    uint32_t k = 0;
    uint64_t hash_seed = 0;

    bool operator==(const BloomParams&) const = default;
};

// Probe sequence from the two 64-bit item hashes:
//   index_i = (h1 + i*h2 + C(i,2)*h3) mod M,  i = 0..K-1
// with h2 forced odd and h3 mixed from h1 and h2 (triple hashing).
std::vector<uint32_t> indices(const BloomParams& params, std::string_view item);

class BloomFilter {
public:
    BloomFilter() = default;
    explicit BloomFilter(BloomParams params)
        : params_(params), bits_(params.m_bits, 0) {}

    const BloomParams& params() const { return params_; }
    uint32_t size() const { return params_.m_bits; }

    void insert(std::string_view item);
    bool contains(std::string_view item) const;

    int bit(uint32_t i) const { return bits_[i]; }
    void set_bit(uint32_t i) { bits_[i] = 1; }

private:
    BloomParams params_;
    std::vector<uint8_t> bits_;
};

// Sorted index tuple -> items that hashed there. A list, not a single item:
// distinct items may share an index tuple.
class ItemDictionary {
public:
    void insert(const BloomParams& params, std::string_view item);
    const std::vector<std::string>* lookup(const std::vector<uint32_t>& sorted_indices) const;

    // Items whose every index is set in the given bit vector (sorted, unique).
    std::vector<std::string> items_matching(const std::vector<uint8_t>& bits) const;

    const std::map<std::vector<uint32_t>, std::vector<std::string>>& entries() const
    {
        return map_;
    }

private:
    std::map<std::vector<uint32_t>, std::vector<std::string>> map_;
};

// Classical reference: AND the two filters, then recover A-side items through
// the dictionary. This is the oracle the protocol run is checked against.
std::vector<std::string> intersect_classical(const BloomFilter& fa, const BloomFilter& fb,
                                             const ItemDictionary& da,
                                             const std::vector<std::string>& items_a);

}  // namespace blindpsi::bloom
