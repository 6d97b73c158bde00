#pragma once

#include <vector>

#include "submax/central.hpp"
#include "submax/relation.hpp"

namespace submax {

// All totally reflexive, totally symmetric relations of the given arity
// (for arity 1: every subset of E_k), in canonical order: ascending
// lexicographic member-rank lists. These are unions of the diagonal with
// rainbow orbits, so the count is 2^C(k, arity).
std::vector<Relation> enumerate_symmetric_reflexive(Domain dom, int arity);

// The subset passing validate_central, same order.
std::vector<Relation> enumerate_central(Domain dom, int arity);

// Keeps each relation iff it is the lexicographically least member of its
// orbit under the S_k action (relabeling of E_k).
std::vector<Relation> dedup_isomorphic(const std::vector<Relation>& rels);

}  // namespace submax
