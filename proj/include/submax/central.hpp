#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "submax/relation.hpp"

namespace submax {

// iota_k^h: all h-tuples with at least one repeated coordinate. Undefined
// for h = 1 (rejected rather than guessed).
Relation diagonal(Domain dom, int h);

// Totally reflexive: contains iota_k^h (vacuous for h = 1).
bool is_totally_reflexive(const Relation& rel);

// Totally symmetric: membership invariant under every coordinate permutation
// (vacuous for h = 1).
bool is_totally_symmetric(const Relation& rel);

// C_rel = {a : (a, a_2, ..., a_h) in rel for all a_2..a_h}. For h = 1 this is
// the member set. Caller guarantees total reflexivity/symmetry.
std::vector<int> center(const Relation& rel);

struct ValidationError {
    enum class Code { NotReflexive, NotSymmetric, EmptyCenter, ImproperCenter };
    Code code;
    // First violating tuple (NotReflexive/NotSymmetric); empty otherwise.
    std::vector<int> witness;
    std::string to_string() const;
};

// A validated central relation: totally reflexive, totally symmetric, with a
// nonempty proper center. Cheap to copy; chains are computed once on demand.
class CentralRelation {
  public:
    const Relation& rel() const { return impl_->rel; }
    const std::vector<int>& center() const { return impl_->center; }
    int arity() const { return impl_->rel.arity(); }
    int k() const { return impl_->rel.k(); }
    Domain domain() const { return impl_->rel.domain(); }

    // All subset-maximal B with B^h contained in the relation, sorted by
    // (size desc, lexicographic). Every chain extends to one of these.
    const std::vector<std::vector<int>>& maximal_chains() const;

  private:
    friend std::variant<CentralRelation, ValidationError> validate_central(const Relation&);
    struct Impl {
        Relation rel;
        std::vector<int> center;
        mutable std::once_flag chains_once;
        mutable std::vector<std::vector<int>> chains;
        explicit Impl(Relation r) : rel(std::move(r)) {}
    };
    explicit CentralRelation(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

std::variant<CentralRelation, ValidationError> validate_central(const Relation& rel);

// B is a chain for rel iff B^h subset of rel; for |B| <= h-1 this holds by
// total reflexivity.
bool is_chain(const Relation& rel, const std::vector<int>& b);

Relation intersect(const Relation& a, const Relation& b);

enum class Compare { Equal, LeftStrict, RightStrict, Incomparable };

Compare compare(const Relation& a, const Relation& b);

const char* compare_name(Compare c);

}  // namespace submax
