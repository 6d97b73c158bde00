#pragma once

#include <set>
#include <vector>

#include "submax/operation.hpp"
#include "submax/relation.hpp"

// Serial reference implementations, deliberately naive and independent of the
// bitset kernels. Tests and the benchmark compare against these.
namespace submax::reference {

// Straight transcription of the preservation definition: walk every selection
// of n tuples from A^h, skip non-members, check the image.
bool naive_preserves(const Operation& f, const Relation& rel);

// Relation as a plain tuple set; used by the slow derived-relation evaluator.
using TupleSet = std::set<std::vector<int>>;

TupleSet to_tuple_set(const Relation& rel);
bool tuple_sets_equal(const Relation& fast, const TupleSet& slow);

// Slow evaluators for the derived-relation constructors; one function per
// displayed formula, nested loops, no bitsets, no shared helpers with the
// fast path beyond the tuple-set conversion above.
TupleSet slow_tau(const Relation& rho, const Relation& sigma);
TupleSet slow_gamma_binary(const Relation& rho, const Relation& sigma);
TupleSet slow_gamma_t(const Relation& rho, const Relation& sigma, int t);
TupleSet slow_rho_l(const Relation& rho, int l);
TupleSet slow_alpha_n(const Relation& rho, const Relation& sigma, int n);
TupleSet slow_beta_chain(const Relation& rho, const Relation& sigma, int j);
TupleSet slow_alpha1_of(const Relation& gamma);
TupleSet slow_beta_t(const Relation& rho, const Relation& gamma, int t);
TupleSet slow_lambda_pad(const Relation& rho, int s);
TupleSet slow_gamma_prime(const Relation& rho, const Relation& sigma);
TupleSet slow_theta_up(const Relation& rho, const Relation& sigma, int t);
TupleSet slow_theta_down(const Relation& rho, const Relation& sigma, int t);
TupleSet slow_gamma_s(const Relation& rho, const Relation& sigma);
TupleSet slow_gamma_prime_t(const Relation& rho, const Relation& sigma, int t);
TupleSet slow_gamma_prime_h(const Relation& rho, const Relation& sigma);
TupleSet slow_gamma_prime_chain(const Relation& rho, const Relation& sigma, int n);

}  // namespace submax::reference
