#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "submax/bitset.hpp"
#include "submax/domain.hpp"

namespace submax {

// An h-ary relation on E_k, stored as a bitset indexed by tuple rank.
// Immutable after construction.
class Relation {
  public:
    // Guard against absurd universes (k^h bits); 2^28 bits = 32 MiB.
    static constexpr std::size_t kMaxUniverse = std::size_t{1} << 28;

    Relation(Domain dom, int arity, Bitset bits)
        : dom_(dom), arity_(arity), bits_(std::move(bits)) {
        if (arity < 1) throw std::invalid_argument("relation arity must be >= 1");
        if (bits_.size() != universe_check(dom, arity))
            throw std::invalid_argument("relation bitset length must be exactly k^arity");
    }

    static std::size_t universe_check(Domain dom, int arity) {
        std::size_t u = 1;
        for (int i = 0; i < arity; ++i) {
            if (u > kMaxUniverse / static_cast<std::size_t>(dom.k))
                throw std::invalid_argument("relation universe k^arity too large");
            u *= static_cast<std::size_t>(dom.k);
        }
        return u;
    }

    static Relation empty(Domain dom, int arity) {
        return Relation(dom, arity, Bitset(universe_check(dom, arity)));
    }

    static Relation full(Domain dom, int arity) {
        Bitset b(universe_check(dom, arity));
        b.set_all();
        return Relation(dom, arity, std::move(b));
    }

    static Relation from_tuples(Domain dom, int arity,
                                const std::vector<std::vector<int>>& tuples) {
        Bitset b(universe_check(dom, arity));
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != arity)
                throw std::invalid_argument("tuple arity mismatch");
            for (int a : t)
                if (a < 0 || a >= dom.k) throw std::invalid_argument("tuple entry out of range");
            b.set(tuple_rank(dom.k, t));
        }
        return Relation(dom, arity, std::move(b));
    }

    Domain domain() const { return dom_; }
    int k() const { return dom_.k; }
    int arity() const { return arity_; }
    std::size_t universe_size() const { return bits_.size(); }
    const Bitset& bits() const { return bits_; }

    bool contains_rank(std::size_t r) const { return bits_.test(r); }
    bool contains(std::span<const int> t) const { return bits_.test(tuple_rank(dom_.k, t)); }

    std::size_t size() const { return bits_.count(); }
    bool is_empty() const { return bits_.none(); }
    bool is_full() const { return bits_.all(); }

    std::vector<std::uint32_t> member_ranks() const {
        std::vector<std::uint32_t> out;
        out.reserve(size());
        for (std::size_t r = bits_.next_set(0); r < bits_.size(); r = bits_.next_set(r + 1))
            out.push_back(static_cast<std::uint32_t>(r));
        return out;
    }

    // Member tuples in ascending rank order, flattened (arity entries each).
    std::vector<std::uint8_t> member_tuples_flat() const {
        std::vector<std::uint8_t> out;
        out.reserve(size() * static_cast<std::size_t>(arity_));
        std::vector<int> t(static_cast<std::size_t>(arity_));
        for (std::size_t r = bits_.next_set(0); r < bits_.size(); r = bits_.next_set(r + 1)) {
            tuple_decode(dom_.k, arity_, r, t);
            for (int a : t) out.push_back(static_cast<std::uint8_t>(a));
        }
        return out;
    }

    std::vector<std::vector<int>> member_tuples() const {
        std::vector<std::vector<int>> out;
        out.reserve(size());
        for (std::size_t r = bits_.next_set(0); r < bits_.size(); r = bits_.next_set(r + 1))
            out.push_back(tuple_decode(dom_.k, arity_, r));
        return out;
    }

    bool operator==(const Relation& other) const {
        return dom_ == other.dom_ && arity_ == other.arity_ && bits_ == other.bits_;
    }
    bool operator!=(const Relation& other) const { return !(*this == other); }

  private:
    Domain dom_;
    int arity_;
    Bitset bits_;
};

}  // namespace submax
