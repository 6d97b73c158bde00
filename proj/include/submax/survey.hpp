#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "submax/certify.hpp"
#include "submax/classifier.hpp"
#include "submax/interp.hpp"

namespace submax {

struct SurveyOptions {
    int k = 3;
    int max_arity = 3;
    int sep_arity = 2;
    std::uint64_t sep_budget = 20'000'000;
    std::uint64_t seed = 12345;
    bool timings = false;  // include elapsed_ms in JSON (breaks byte determinism)
    bool demos = true;     // one interpolation demo per TypeX row
};

struct SurveyRow {
    std::size_t rho_index = 0;
    std::size_t sigma_index = 0;
    std::string rho_id;
    std::string sigma_id;
    int rho_arity = 0;
    int sigma_arity = 0;
    ClassificationResult classification;
    std::optional<Certificate> certificate;
    std::string certificate_status;  // "verified" / "not attempted" / "none: ..."
    std::string demo_status;         // "PASS ..." / "skipped: ..." / "-"
    bool consistent = true;          // NotSubmaximal <=> verified certificate
    double elapsed_ms = 0.0;
};

struct SurveyResult {
    std::vector<Relation> rhos;    // central, arity >= 2
    std::vector<Relation> sigmas;  // central, arity >= 1
    std::vector<SurveyRow> rows;
    bool inconsistent = false;
    std::size_t count_by_verdict[6] = {0, 0, 0, 0, 0, 0};
};

// For every ordered pair (rho central of arity >= 2, sigma central,
// sigma != rho): classify; NotSubmaximal rows get a searched-and-verified
// certificate; TypeX rows get one interpolation demo when the budget allows.
// Rows are independent and processed in parallel; output order is fixed.
SurveyResult run_survey(const SurveyOptions& opts);

nlohmann::json survey_to_json(const SurveyResult& res, const SurveyOptions& opts);
std::string survey_table(const SurveyResult& res);

}  // namespace submax
