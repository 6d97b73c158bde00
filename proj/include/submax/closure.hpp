#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "submax/central.hpp"
#include "submax/operation.hpp"
#include "submax/polycheck.hpp"

namespace submax {

// Operations of arity <= max_arity with O(1) membership. Member tables are
// encoded as base-k integers (table[0] most significant), so sorted codes are
// lexicographically sorted tables. Dedup uses a bitset over table codes when
// the table space is small, a hash set otherwise.
class BoundedClone {
  public:
    static constexpr std::size_t kBitsetLimit = std::size_t{1} << 26;

    BoundedClone(Domain dom, int max_arity);

    Domain domain() const { return dom_; }
    int max_arity() const { return max_arity_; }

    bool contains(const Operation& op) const;
    bool contains_code(int arity, std::uint64_t code) const;
    std::size_t count(int arity) const;
    std::size_t total_count() const;
    // k^(k^n), saturated at 2^63 when it overflows
    std::uint64_t table_space(int arity) const;

    const std::vector<std::uint64_t>& codes(int arity) const;
    Operation decode(int arity, std::uint64_t code) const;
    std::uint64_t encode(const Operation& op) const;

    bool insert(const Operation& op);
    bool insert_code(int arity, std::uint64_t code);
    void normalize();  // sort member code lists

    bool same_members(const BoundedClone& other) const;

  private:
    Domain dom_;
    int max_arity_;
    std::vector<std::vector<std::uint64_t>> members_;
    std::vector<std::uint64_t> space_;  // saturated table space per arity
    std::vector<Bitset> seen_small_;    // used when space_ <= kBitsetLimit
    std::vector<std::unordered_set<std::uint64_t>> seen_large_;
};

struct ClosureResult {
    BoundedClone clone;
    bool fixpoint = false;           // genuinely closed under bounded composition
    bool everything = false;         // reached every table at every arity
    std::uint64_t compositions = 0;  // composition evaluations performed
};

// Least fixpoint of: seed + projections, closed under g(f_1,...,f_m) with all
// f_i of one arity n <= max_arity. Stops early once every table of every
// arity is present (trivially closed), or when the budget runs out (result
// flagged non-fixpoint).
ClosureResult bounded_closure(Domain dom, const std::vector<Operation>& gens, int max_arity,
                              std::uint64_t budget = 500'000'000);

// All operations of arity <= max_arity preserving every relation; refuses via
// BudgetError when the member count would exceed the budget.
BoundedClone bounded_pol(const std::vector<Relation>& rels, int max_arity,
                         std::uint64_t member_budget = 50'000'000);

struct SaturationRow {
    int arity = 0;
    std::uint64_t g_code = 0;
    bool saturated = false;
    bool budget_limited = false;
};

struct SaturationReport {
    std::vector<SaturationRow> rows;
    bool all_saturated = false;
    bool any_budget_limited = false;
    std::size_t gap_size = 0;
    std::string caveat;  // printed with every report
};

// For each unary/binary g in bounded_pol({rho}) \ bounded_pol({rho,sigma}),
// asks whether bounded_closure(bounded_pol({rho,sigma}) + g) reaches all of
// bounded_pol({rho}) at this arity bound. Consistency evidence only: bounded
// closure under-approximates clone generation, which may route through
// higher arities.
SaturationReport saturation_probe(const CentralRelation& rho, const CentralRelation& sigma,
                                  int max_arity, std::uint64_t budget = 500'000'000);

}  // namespace submax
