#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "submax/domain.hpp"

namespace submax {

// An n-ary operation E_k^n -> E_k as a value table indexed by tuple rank.
class Operation {
  public:
    static constexpr std::size_t kMaxTable = std::size_t{1} << 24;

    Operation(Domain dom, int arity, std::vector<std::uint8_t> table)
        : dom_(dom), arity_(arity), table_(std::move(table)) {
        if (arity < 1) throw std::invalid_argument("operation arity must be >= 1");
        if (table_.size() != table_size_check(dom, arity))
            throw std::invalid_argument("operation table length must be exactly k^arity");
        for (auto v : table_)
            if (v >= dom.k) throw std::invalid_argument("operation table entry out of range");
    }

    static std::size_t table_size_check(Domain dom, int arity) {
        std::size_t u = 1;
        for (int i = 0; i < arity; ++i) {
            if (u > kMaxTable / static_cast<std::size_t>(dom.k))
                throw std::invalid_argument("operation table k^arity too large");
            u *= static_cast<std::size_t>(dom.k);
        }
        return u;
    }

    static Operation from_table(Domain dom, int arity, const std::vector<int>& table) {
        std::vector<std::uint8_t> t;
        t.reserve(table.size());
        for (int v : table) {
            if (v < 0 || v >= dom.k) throw std::invalid_argument("table entry out of range");
            t.push_back(static_cast<std::uint8_t>(v));
        }
        return Operation(dom, arity, std::move(t));
    }

    // The i-th projection pi_i^(n), 1 <= i <= n.
    static Operation projection(Domain dom, int n, int i) {
        if (i < 1 || i > n) throw std::invalid_argument("projection index out of range");
        std::size_t sz = table_size_check(dom, n);
        std::vector<std::uint8_t> t(sz);
        std::vector<int> args(static_cast<std::size_t>(n));
        for (std::size_t r = 0; r < sz; ++r) {
            tuple_decode(dom.k, n, r, args);
            t[r] = static_cast<std::uint8_t>(args[static_cast<std::size_t>(i - 1)]);
        }
        return Operation(dom, n, std::move(t));
    }

    // The n-ary constant c_a.
    static Operation constant(Domain dom, int a, int n) {
        if (a < 0 || a >= dom.k) throw std::invalid_argument("constant value out of range");
        std::size_t sz = table_size_check(dom, n);
        return Operation(dom, n, std::vector<std::uint8_t>(sz, static_cast<std::uint8_t>(a)));
    }

    Domain domain() const { return dom_; }
    int k() const { return dom_.k; }
    int arity() const { return arity_; }
    const std::vector<std::uint8_t>& table() const { return table_; }
    std::uint8_t value_at(std::size_t rank) const { return table_[rank]; }

    int apply(std::span<const int> args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("apply: argument count does not match operation arity");
        for (int a : args)
            if (a < 0 || a >= dom_.k) throw std::invalid_argument("apply: argument out of range");
        return table_[tuple_rank(dom_.k, args)];
    }

    bool is_projection() const {
        for (int i = 1; i <= arity_; ++i)
            if (*this == projection(dom_, arity_, i)) return true;
        return false;
    }

    bool operator==(const Operation& other) const {
        return dom_ == other.dom_ && arity_ == other.arity_ && table_ == other.table_;
    }
    bool operator!=(const Operation& other) const { return !(*this == other); }

  private:
    Domain dom_;
    int arity_;
    std::vector<std::uint8_t> table_;
};

}  // namespace submax
