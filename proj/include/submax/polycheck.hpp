#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "submax/operation.hpp"
#include "submax/relation.hpp"

namespace submax {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// f preserves rel iff for every selection of f.arity() member tuples
// (columns), the row-wise image tuple is again a member. Iterates over
// member-tuple combinations with early exit, not over all k^(h*n) inputs.
bool preserves(const Operation& f, const Relation& rel);

// Same result; partitions the combination space across OpenMP threads.
bool preserves_parallel(const Operation& f, const Relation& rel);

bool in_pol(const Operation& f, std::span<const Relation> rels);

// All k^(k^n) tables of arity n in lexicographic table order. Refuses to
// start when the total exceeds the guard; never truncates silently.
class OpEnumerator {
  public:
    static constexpr std::uint64_t kDefaultGuard = 8'000'000'000'000ULL;

    OpEnumerator(Domain dom, int n, std::uint64_t guard = kDefaultGuard);

    std::optional<Operation> next();
    std::uint64_t total() const { return total_; }

  private:
    Domain dom_;
    int arity_;
    std::uint64_t total_;
    std::uint64_t produced_ = 0;
    std::vector<std::uint8_t> table_;
};

// The recurring "f in Pol{rho,delta} \ Pol sigma" search pattern.
struct OpQuery {
    std::vector<Relation> preserve;
    std::vector<Relation> violate;
    int max_arity = 2;
    std::uint64_t budget = 20'000'000;  // complete candidate tables per arity
};

enum class SearchStatus {
    Found,
    ExhaustedNegative,  // completed search, no separator up to max_arity
    BudgetExhausted,    // stopped mid-arity; NOT evidence of nonexistence
};

struct SeparatorResult {
    SearchStatus status;
    std::optional<Operation> op;
    std::uint64_t tables_examined = 0;
    int last_arity = 0;
};

// First operation in enumeration order (arity ascending, then table
// lexicographic) preserving everything in `preserve` and violating at least
// one relation in `violate`. The order is part of the certificate contract.
SeparatorResult find_separator(const OpQuery& query);

}  // namespace submax
