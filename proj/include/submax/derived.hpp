#pragma once

#include <string>
#include <utility>
#include <vector>

#include "submax/central.hpp"
#include "submax/relation.hpp"

namespace submax {

// Index-selection reading for constructors whose displayed formula quantifies
// over families of coordinate indices. Literal follows each formula's own
// style (strictly increasing where it writes i_1 < ... < i_r, repeats allowed
// where it writes i_1,...,i_r in a plain index set); Strict and Repeats force
// one style everywhere, for sensitivity checks.
enum class IndexMode { Literal, Strict, Repeats };

const char* index_mode_name(IndexMode m);
IndexMode index_mode_from_name(const std::string& name);

// tau = {y : exists u in sigma, (u,y) in rho};  rho binary, sigma unary.
Relation tau(const Relation& rho, const Relation& sigma);

// gamma = {(a,b) : exists u in sigma, (a,u) in rho and (b,u) in rho}.
Relation gamma_binary(const Relation& rho, const Relation& sigma);

// gamma_t = {(a_1..a_t) : exists u in sigma, all (a_i,u) in rho}; 2 <= t <= k.
Relation gamma_t(const Relation& rho, const Relation& sigma, int t);

// rho_l = {(a_1..a_l) : {a_1..a_l}^2 subset of rho}; 2 <= l <= max chain size.
Relation rho_l(const Relation& rho, int l);

// alpha_n = {(b_1..b_n) : exists u in sigma, all increasing (h-1)-selections
// give (u, b_{i_1}, ..., b_{i_{h-1}}) in rho}; h >= 3, n >= h-1.
Relation alpha_n(const Relation& rho, const Relation& sigma, int n,
                 IndexMode mode = IndexMode::Literal);

// beta_{j(h-1)+1}: blocks of h-1 coordinates sharing one sigma-witness u.
Relation beta_chain(const Relation& rho, const Relation& sigma, int j);

// The alpha_1 operator: substitute a common u at positions 1..h-1 (the
// displayed formula quantifies i < h, so position h is never substituted).
Relation alpha1_of(const Relation& gamma);

// Variant substituting at all h positions; sensitivity checks only.
Relation alpha1_of_all_positions(const Relation& gamma);

// beta_t, t >= h: exists u with, for every (h-1)-subset {i_1<...<i_{h-1}} of
// {1..t}, (x_{i_1},..,x_{i_{h-2}},x_1,u) in gamma and (x_{i_1},..,x_{i_{h-1}},u)
// in rho. Indices may include 1; gamma is rho-cap-sigma in the intended use.
Relation beta_t(const Relation& rho, const Relation& gamma, int t,
                IndexMode mode = IndexMode::Literal);

// lambda = {(a_1..a_s) : (a_1..a_h) in rho}; 2 <= h < s.
Relation lambda_pad(const Relation& rho, int s);

// gamma' = lambda cap sigma; h < s.
Relation gamma_prime(const Relation& rho, const Relation& sigma);

// theta_t for h <= t <= s-1 (h < s side).
Relation theta_up(const Relation& rho, const Relation& sigma, int t,
                  IndexMode mode = IndexMode::Literal);

// theta_t for s <= t <= h-1 (s < h side); its sigma clauses quantify index
// tuples with repeats allowed.
Relation theta_down(const Relation& rho, const Relation& sigma, int t,
                    IndexMode mode = IndexMode::Literal);

// gamma_s: members of sigma whose first two coordinates are rho-related to
// every (h-1)-selection of coordinates; repeats allowed.
Relation gamma_s_rel(const Relation& rho, const Relation& sigma,
                     IndexMode mode = IndexMode::Literal);

// gamma'_t, t >= s: exists v with rho and sigma clauses over selections drawn
// from the first s coordinates (literal reading of the displayed formula).
Relation gamma_prime_t(const Relation& rho, const Relation& sigma, int t,
                       IndexMode mode = IndexMode::Literal);

// gamma'_h (s < h): exists v with (b_2..b_h,v) in rho and sigma clauses over
// (s-1)-selections with repeats.
Relation gamma_prime_h(const Relation& rho, const Relation& sigma,
                       IndexMode mode = IndexMode::Literal);

// gamma'_{n(h-1)+1} (s < h): block rho clauses plus sigma clauses.
Relation gamma_prime_chain(const Relation& rho, const Relation& sigma, int n,
                           IndexMode mode = IndexMode::Literal);

// Largest chain size (largest B with B^2 in rho); the rho_l regime bound.
int max_chain_size(const Relation& rho);

// Number of (h-1)-subsets of E_k avoiding the center of rho (the paper's F);
// bounds the beta_chain / gamma_prime_chain block count.
int chain_family_size(const Relation& rho);

// --- derivation transcripts -------------------------------------------------

enum class DerivedKind {
    Tau,
    GammaBinary,
    GammaT,
    RhoL,
    AlphaN,
    BetaChain,
    Alpha1Of,
    BetaT,
    Lambda,
    GammaPrime,
    ThetaUp,
    ThetaDown,
    GammaS,
    GammaPrimeT,
    GammaPrimeH,
    GammaPrimeChain,
    Intersect,
};

const char* derived_kind_name(DerivedKind k);
DerivedKind derived_kind_from_name(const std::string& name);

// One constructor application. Inputs name either "rho", "sigma", or an
// earlier step. Together the steps recompute a relation from {rho, sigma},
// which is the evidence that Pol{rho,sigma} is contained in Pol delta.
struct DerivedStep {
    std::string name;
    DerivedKind kind;
    std::vector<std::string> inputs;
    std::vector<std::pair<std::string, int>> params;
    IndexMode mode = IndexMode::Literal;
};

struct Derivation {
    std::vector<DerivedStep> steps;  // the last step defines the relation
    std::string summary() const;     // one-line transcript
};

// Re-evaluates the transcript; throws on malformed transcripts.
Relation recompute(const Derivation& d, const Relation& rho, const Relation& sigma);

struct DerivedRelation {
    Relation rel;
    Derivation spec;
};

// Single-step convenience used by the derive CLI.
DerivedRelation derive(DerivedKind kind, const Relation& rho, const Relation& sigma,
                       const std::vector<std::pair<std::string, int>>& params,
                       IndexMode mode = IndexMode::Literal);

}  // namespace submax
