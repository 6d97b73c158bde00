#pragma once

#include <optional>
#include <string>
#include <vector>

#include "submax/central.hpp"
#include "submax/derived.hpp"

namespace submax {

enum class Verdict { TypeI, TypeII, TypeIII, TypeIV, TypeV, NotSubmaximal };

const char* verdict_name(Verdict v);

struct ConditionReport {
    int condition = 0;  // 1..5
    bool applicable = false;
    bool holds = false;
    std::string detail;
};

struct ClassificationResult {
    Verdict verdict = Verdict::NotSubmaximal;

    // evidence payloads, populated per verdict
    std::optional<int> witness_element;  // I: C_rho cap sigma; IV: C_rho cap C_sigma
    bool gamma_equals_rho = false;       // II
    std::vector<std::pair<std::vector<int>, int>> chain_hits;  // II: (chain, sigma hit)
    std::optional<Compare> direction;                          // III
    std::optional<std::vector<int>> strict_witness;            // V: tuple in sigma \ lambda

    // populated for NotSubmaximal: one report per condition
    std::vector<ConditionReport> reasons;

    std::string evidence_summary() const;
};

// Theorem-level decision: which of the five conditions sigma satisfies, or
// NotSubmaximal with per-condition failure reasons. First-match order I..V.
// Requires k >= 3, rho of arity >= 2, rho != sigma, same domain.
ClassificationResult classify(const CentralRelation& rho, const CentralRelation& sigma);

// Evaluates exactly one condition, including its arity guard.
ConditionReport condition(const CentralRelation& rho, const CentralRelation& sigma, int which);

}  // namespace submax
