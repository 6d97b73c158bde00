#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace submax {

// Runtime-sized bitset over 64-bit words. Unused high bits of the last
// word are kept zero, so whole-word comparison and popcount are valid.
class Bitset {
  public:
    Bitset() = default;

    explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    std::size_t num_words() const { return words_.size(); }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::uint64_t word(std::size_t w) const { return words_[w]; }
    void set_word(std::size_t w, std::uint64_t v) { words_[w] = v & word_mask(w); }

    void set_all() {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] = word_mask(w);
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool all() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != word_mask(w)) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool is_subset_of(const Bitset& other) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~other.words_[w]) return false;
        return true;
    }

    Bitset operator&(const Bitset& other) const {
        Bitset out(nbits_);
        for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & other.words_[w];
        return out;
    }

    Bitset operator|(const Bitset& other) const {
        Bitset out(nbits_);
        for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] | other.words_[w];
        return out;
    }

    void or_with(const Bitset& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    }

    bool operator==(const Bitset& other) const {
        return nbits_ == other.nbits_ && words_ == other.words_;
    }
    bool operator!=(const Bitset& other) const { return !(*this == other); }

    // Index of the first set bit at or after `from`, or size() if none.
    std::size_t next_set(std::size_t from) const {
        if (from >= nbits_) return nbits_;
        std::size_t w = from >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return (w << 6) + static_cast<std::size_t>(__builtin_ctzll(cur));
            if (++w == words_.size()) return nbits_;
            cur = words_[w];
        }
    }

  private:
    std::uint64_t word_mask(std::size_t w) const {
        if (w + 1 < words_.size() || (nbits_ & 63) == 0) return ~std::uint64_t{0};
        return (~std::uint64_t{0}) >> (64 - (nbits_ & 63));
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace submax
