#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "submax/classifier.hpp"
#include "submax/polycheck.hpp"

namespace submax {

// A witnessed failure g(a_1,...,a_n) outside sigma with all a_i in sigma.
struct Violation {
    std::vector<std::vector<int>> columns;  // a_1..a_n, each an s-tuple in sigma
    std::vector<int> image;                 // the s-tuple g(a_1..a_n), not in sigma
};

// First violating column selection in rank order; error if g preserves sigma.
Violation find_violation(const Operation& g, const Relation& sigma);

enum class FcCase {
    ConstantColumns,    // (i): sigma of type I/II, inner gadgets are constants
    PatternColumns,     // (ii): sigma strictly below rho, or type IV
    PatternWithCenter,  // (iii): rho strictly below sigma, or type V
};

// One f_context = g(f^1,...,f^n) per the case's inner-gadget shape. The
// context is an m-column matrix over E_k^s; preconditions follow the case
// (rows pairwise distinct for (ii), every h rows jointly failing rho plus a
// central default for (iii)). Each inner f^i is checked in Pol{rho,sigma}.
struct FcResult {
    Operation op;                                  // the m-ary f_context
    std::vector<std::vector<int>> inner_tables;    // tables of f^1..f^n
    bool inner_in_pol = false;
};

FcResult build_fc(FcCase fc_case, const Operation& g, const Violation& violation,
                  const std::vector<std::vector<int>>& context, int m,
                  std::optional<int> center_default, const Relation& rho, const Relation& sigma);

// ext(x) = (x, f_1(x), ..., f_q(x)); injective via the leading m coordinates.
std::vector<int> ext_map(const std::vector<Operation>& s_ops, const std::vector<int>& x);

struct SMember {
    Operation op;
    std::vector<std::vector<int>> inner_tables;
    int context_count = 0;  // contexts whose f_context deduplicated onto this op
};

struct PreservationCheck {
    std::string mode;  // "exhaustive" or "sampled"
    bool pass = false;
    std::uint64_t checked = 0;
};

struct InterpOptions {
    int m = 1;
    std::uint64_t exhaustive_limit = 10'000'000;  // column combinations
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 12345;
};

struct InterpTranscript {
    Verdict sigma_type = Verdict::NotSubmaximal;
    int m = 1;
    Operation g;
    Violation violation;
    std::vector<SMember> s_members;
    int c = 0;  // chosen central element
    Operation target;
    Operation h_op;  // the (m+q)-ary operation
    bool pointwise_ok = false;
    bool s_members_ok = false;
    PreservationCheck h_preserves_rho;
    PreservationCheck h_preserves_sigma;
    // type II extras
    bool type2_applicable = false;
    bool type2_chains_ok = false;       // every D_y is a rho-chain
    bool type2_uy_ok = false;           // every u_y lies in sigma
    bool type2_ext_disjoint_ok = false; // ext image misses sigma^{m+q}
    bool all_ok() const;
};

// The Proposition-1 construction: rebuild target inside the clone generated
// by Pol{rho,sigma} and g, and verify H(ext(x)) = target(x) pointwise.
InterpTranscript interpolate(const CentralRelation& rho, const CentralRelation& sigma,
                             const Operation& g, const Operation& target,
                             const InterpOptions& opts = {});

nlohmann::json interp_to_json(const InterpTranscript& t);

}  // namespace submax
