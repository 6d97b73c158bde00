#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace submax {

// The base set E_k = {0, ..., k-1}.
struct Domain {
    int k = 2;

    explicit Domain(int k_) : k(k_) {
        if (k < 2) throw std::invalid_argument("domain size k must be >= 2");
    }

    bool operator==(const Domain& other) const { return k == other.k; }
    bool operator!=(const Domain& other) const { return k != other.k; }
};

inline std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Row-major tuple encoding with the first coordinate most significant:
// rank(a_1,...,a_h) = sum a_i * k^(h-i). This encoding is fixed; ranks
// appear in serialized certificates.
inline std::size_t tuple_rank(int k, std::span<const int> t) {
    std::size_t r = 0;
    for (int a : t) r = r * static_cast<std::size_t>(k) + static_cast<std::size_t>(a);
    return r;
}

inline std::size_t tuple_rank(int k, std::span<const std::uint8_t> t) {
    std::size_t r = 0;
    for (auto a : t) r = r * static_cast<std::size_t>(k) + a;
    return r;
}

inline void tuple_decode(int k, int arity, std::size_t rank, std::span<int> out) {
    for (int i = arity - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::size_t>(k));
        rank /= static_cast<std::size_t>(k);
    }
}

inline std::vector<int> tuple_decode(int k, int arity, std::size_t rank) {
    std::vector<int> t(static_cast<std::size_t>(arity));
    tuple_decode(k, arity, rank, t);
    return t;
}

}  // namespace submax
