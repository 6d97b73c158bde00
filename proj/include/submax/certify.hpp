#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "submax/classifier.hpp"
#include "submax/derived.hpp"
#include "submax/polycheck.hpp"

namespace submax {

// The Lemma-12 family of operations: given a tuple (b_1..b_h) outside rho,
// an index family W of increasing h-subsets of {1..N}, a value row outside
// the target relation, and a central default c, the induced q-ary operation
// maps column x_i to v_i and everything else to c. Columns must be pairwise
// distinct and every h of them must jointly fail rho (the (*) condition);
// that forces membership of the operation in Pol rho.
struct GadgetSpec {
    std::vector<int> forbidden_tuple;            // (b_1..b_h), not in rho
    int target_arity = 0;                        // N
    std::vector<int> value_row;                  // (v_1..v_N)
    int default_value = 0;                       // c in C_rho
    std::vector<std::vector<int>> index_family;  // W, 1-based increasing h-subsets

    // W = all increasing h-subsets of {1..N}, in lexicographic order.
    static GadgetSpec standard(int h, int target_arity, std::vector<int> forbidden,
                               std::vector<int> value_row, int default_value);
};

// Builds the gadget and checks its postconditions directly: pairwise distinct
// columns, the (*) condition, preserves(f, rho) by preservation check, and,
// when delta is given, that f violates delta on the induced rows.
Operation build_gadget(const GadgetSpec& spec, const Relation& rho,
                       const Relation* delta = nullptr);

struct Certificate {
    Relation delta;
    Derivation derivation;
    Operation f_mid;  // in Pol{rho,delta}, not in Pol sigma
    Operation g_top;  // in Pol rho, not in Pol delta
    std::string lemma_tag;
};

struct CertifyOptions {
    int max_sep_arity = 2;
    std::uint64_t sep_budget = 20'000'000;
};

struct CandidateAttempt {
    std::string lemma_tag;
    std::string outcome;  // "certified", "skipped: ...", "f_mid ...", "g_top ..."
};

struct CertificateSearchReport {
    std::optional<Certificate> certificate;
    std::vector<CandidateAttempt> attempts;
    bool budget_limited = false;  // some leg stopped on budget, not exhaustion
};

// Candidate witness relations for the pair, in the proofs' case order, each
// with its derivation transcript.
std::vector<std::pair<std::string, Derivation>> delta_catalog(const CentralRelation& rho,
                                                              const CentralRelation& sigma);

// Runs the catalog without any verdict precondition (used by surveys and the
// never-certifies-a-submaximal-pair checks).
CertificateSearchReport search_certificate(const CentralRelation& rho,
                                           const CentralRelation& sigma,
                                           const CertifyOptions& opts = {});

// Same, but requires classify(rho, sigma) = NotSubmaximal.
CertificateSearchReport find_certificate(const CentralRelation& rho, const CentralRelation& sigma,
                                         const CertifyOptions& opts = {});

struct VerifyReport {
    bool ok = false;
    std::string failing_clause;  // "a", "b", "c" with detail; empty when ok
};

// Sound, search-free check: (a) the transcript recomputes delta bit-exactly,
// (b) f_mid in Pol{rho,delta} and not in Pol sigma, (c) g_top in Pol rho and
// not in Pol delta. (a)+(b) prove Pol{rho,sigma} strictly below Pol{rho,delta};
// (c) proves Pol{rho,delta} strictly below Pol rho.
VerifyReport verify_certificate(const Relation& rho, const Relation& sigma,
                                const Certificate& cert);

nlohmann::json certificate_to_json(const Relation& rho, const Relation& sigma,
                                   const Certificate& cert);

struct CertificateFile {
    Relation rho;
    Relation sigma;
    Certificate cert;
};

CertificateFile certificate_from_json(const nlohmann::json& j);

nlohmann::json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const nlohmann::json& j);

}  // namespace submax
