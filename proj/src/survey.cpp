#include "submax/survey.hpp"

#include <chrono>

#include "submax/enumerate.hpp"
#include "submax/io.hpp"

namespace submax {

namespace {

// first unary operation in table order lying in Pol rho \ Pol sigma
std::optional<Operation> first_unary_gap(const Relation& rho, const Relation& sigma) {
    OpEnumerator en(rho.domain(), 1);
    while (auto op = en.next()) {
        if (preserves(*op, rho) && !preserves(*op, sigma)) return op;
    }
    return std::nullopt;
}

std::string run_demo(const CentralRelation& rho, const CentralRelation& sigma,
                     std::uint64_t row_seed) {
    auto g = first_unary_gap(rho.rel(), sigma.rel());
    if (!g) return "skipped: no unary g in Pol rho \\ Pol sigma";
    // fixed target: the unary constant at the least central element of rho
    Operation target = Operation::constant(rho.domain(), rho.center().front(), 1);
    InterpOptions io;
    io.m = 1;
    io.seed = row_seed;
    try {
        InterpTranscript t = interpolate(rho, sigma, *g, target, io);
        std::string out = t.all_ok() ? "PASS" : "FAIL";
        out += " q=" + std::to_string(t.s_members.size());
        out += " rho:" + t.h_preserves_rho.mode + " sigma:" + t.h_preserves_sigma.mode;
        return out;
    } catch (const BudgetError& e) {
        return std::string("skipped: ") + e.what();
    }
}

}  // namespace

SurveyResult run_survey(const SurveyOptions& opts) {
    if (opts.k != 3 && opts.k != 4)
        throw std::invalid_argument("survey: k must be 3 or 4");
    Domain dom(opts.k);
    SurveyResult res;
    const int top_arity = std::min(opts.max_arity, opts.k);
    std::vector<CentralRelation> rho_centrals, sigma_centrals;
    for (int arity = 1; arity <= top_arity; ++arity) {
        for (auto& rel : enumerate_central(dom, arity)) {
            auto v = validate_central(rel);
            auto central = std::get<CentralRelation>(v);
            if (arity >= 2) {
                res.rhos.push_back(rel);
                rho_centrals.push_back(central);
            }
            res.sigmas.push_back(rel);
            sigma_centrals.push_back(central);
        }
    }

    // fixed row order: (rho index, sigma index), sigma != rho
    struct Pair {
        std::size_t ri, si;
    };
    std::vector<Pair> pairs;
    for (std::size_t ri = 0; ri < rho_centrals.size(); ++ri)
        for (std::size_t si = 0; si < sigma_centrals.size(); ++si) {
            if (rho_centrals[ri].rel() == sigma_centrals[si].rel()) continue;
            pairs.push_back({ri, si});
        }
    res.rows.resize(pairs.size());

#pragma omp parallel for schedule(dynamic)
    for (long long idx = 0; idx < static_cast<long long>(pairs.size()); ++idx) {
        const auto [ri, si] = pairs[static_cast<std::size_t>(idx)];
        const auto& rho = rho_centrals[ri];
        const auto& sigma = sigma_centrals[si];
        SurveyRow row;
        row.rho_index = ri;
        row.sigma_index = si;
        row.rho_id = relation_id(rho.rel());
        row.sigma_id = relation_id(sigma.rel());
        row.rho_arity = rho.arity();
        row.sigma_arity = sigma.arity();
        auto start = std::chrono::steady_clock::now();
        row.classification = classify(rho, sigma);
        if (row.classification.verdict == Verdict::NotSubmaximal) {
            CertifyOptions copts;
            copts.max_sep_arity = opts.sep_arity;
            copts.sep_budget = opts.sep_budget;
            auto report = search_certificate(rho, sigma, copts);
            if (report.certificate) {
                row.certificate = report.certificate;
                row.certificate_status = "verified (" + report.certificate->lemma_tag + ")";
                row.consistent = true;
            } else {
                row.certificate_status =
                    report.budget_limited ? "none: budget-limited search" : "none: catalog exhausted";
                row.consistent = false;
            }
            row.demo_status = "-";
        } else {
            row.certificate_status = "not attempted (submaximal pair)";
            row.demo_status = opts.demos
                                  ? run_demo(rho, sigma, opts.seed + static_cast<std::uint64_t>(idx))
                                  : "skipped: demos disabled";
            row.consistent = true;
        }
        row.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        res.rows[static_cast<std::size_t>(idx)] = std::move(row);
    }

    for (const auto& row : res.rows) {
        ++res.count_by_verdict[static_cast<int>(row.classification.verdict)];
        if (!row.consistent) res.inconsistent = true;
    }
    return res;
}

nlohmann::json survey_to_json(const SurveyResult& res, const SurveyOptions& opts) {
    nlohmann::json j;
    j["schema"] = 1;
    j["k"] = opts.k;
    j["max_arity"] = opts.max_arity;
    j["id_hash"] = "fnv1a64";
    j["seed"] = opts.seed;
    j["separator_arity"] = opts.sep_arity;
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : res.sigmas)
        rels.push_back({{"id", relation_id(r)}, {"arity", r.arity()}, {"tuples", r.member_tuples()}});
    j["relations"] = rels;
    j["counts"] = {{"TypeI", res.count_by_verdict[0]},   {"TypeII", res.count_by_verdict[1]},
                   {"TypeIII", res.count_by_verdict[2]}, {"TypeIV", res.count_by_verdict[3]},
                   {"TypeV", res.count_by_verdict[4]},   {"NotSubmaximal", res.count_by_verdict[5]}};
    j["inconsistent"] = res.inconsistent;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : res.rows) {
        nlohmann::json rj;
        rj["rho_id"] = row.rho_id;
        rj["sigma_id"] = row.sigma_id;
        rj["rho_arity"] = row.rho_arity;
        rj["sigma_arity"] = row.sigma_arity;
        rj["verdict"] = verdict_name(row.classification.verdict);
        rj["evidence"] = row.classification.evidence_summary();
        if (row.certificate) {
            rj["certificate"] = certificate_to_json(res.rhos[row.rho_index],
                                                    res.sigmas[row.sigma_index], *row.certificate);
        } else {
            rj["certificate"] = nullptr;
        }
        rj["certificate_status"] = row.certificate_status;
        rj["demo"] = row.demo_status;
        rj["consistent"] = row.consistent;
        if (opts.timings) rj["elapsed_ms"] = row.elapsed_ms;
        rows.push_back(rj);
    }
    j["rows"] = rows;
    return j;
}

std::string survey_table(const SurveyResult& res) {
    std::string out;
    out += "rho              sigma            verdict        certificate / demo\n";
    for (const auto& row : res.rows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-16s %-16s %-14s %s\n", row.rho_id.c_str(),
                      row.sigma_id.c_str(), verdict_name(row.classification.verdict),
                      row.classification.verdict == Verdict::NotSubmaximal
                          ? row.certificate_status.c_str()
                          : row.demo_status.c_str());
        out += buf;
    }
    char tail[256];
    std::snprintf(tail, sizeof tail,
                  "rows=%zu  TypeI=%zu TypeII=%zu TypeIII=%zu TypeIV=%zu TypeV=%zu "
                  "NotSubmaximal=%zu  inconsistent=%s\n",
                  res.rows.size(), res.count_by_verdict[0], res.count_by_verdict[1],
                  res.count_by_verdict[2], res.count_by_verdict[3], res.count_by_verdict[4],
                  res.count_by_verdict[5], res.inconsistent ? "YES" : "no");
    out += tail;
    return out;
}

}  // namespace submax
