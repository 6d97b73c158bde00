#include "submax/certify.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "submax/io.hpp"

namespace submax {

GadgetSpec GadgetSpec::standard(int h, int target_arity, std::vector<int> forbidden,
                                std::vector<int> value_row, int default_value) {
    GadgetSpec spec;
    spec.forbidden_tuple = std::move(forbidden);
    spec.target_arity = target_arity;
    spec.value_row = std::move(value_row);
    spec.default_value = default_value;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == h) {
            spec.index_family.push_back(cur);
            return;
        }
        for (int i = start; i <= target_arity; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return spec;
}

Operation build_gadget(const GadgetSpec& spec, const Relation& rho, const Relation* delta) {
    const int h = rho.arity();
    const int k = rho.k();
    const int n_cols = spec.target_arity;
    if (static_cast<int>(spec.forbidden_tuple.size()) != h)
        throw std::invalid_argument("gadget: forbidden tuple arity must match rho");
    if (rho.contains(spec.forbidden_tuple))
        throw std::invalid_argument("gadget: forbidden tuple must lie outside rho");
    if (n_cols < h) throw std::invalid_argument("gadget: target arity must be >= h");
    if (n_cols > 12) throw std::invalid_argument("gadget: target arity must be <= 12");
    if (static_cast<int>(spec.value_row.size()) != n_cols)
        throw std::invalid_argument("gadget: value row length must equal target arity");
    const int q = static_cast<int>(spec.index_family.size());
    if (q < 1) throw std::invalid_argument("gadget: empty index family");
    for (const auto& idx : spec.index_family) {
        if (static_cast<int>(idx.size()) != h)
            throw std::invalid_argument("gadget: index tuples must have h entries");
        for (int i = 0; i < h; ++i) {
            if (idx[static_cast<std::size_t>(i)] < 1 || idx[static_cast<std::size_t>(i)] > n_cols)
                throw std::invalid_argument("gadget: index out of range");
            if (i + 1 < h &&
                idx[static_cast<std::size_t>(i)] >= idx[static_cast<std::size_t>(i + 1)])
                throw std::invalid_argument("gadget: index tuples must be strictly increasing");
        }
    }
    // budget: the operation is q-ary
    std::size_t tsize = Operation::table_size_check(rho.domain(), q);

    // rows y_j and columns x_i, with b_1 as filler
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(q),
                                       std::vector<int>(static_cast<std::size_t>(n_cols),
                                                        spec.forbidden_tuple[0]));
    for (int j = 0; j < q; ++j)
        for (int l = 0; l < h; ++l)
            rows[static_cast<std::size_t>(j)]
                [static_cast<std::size_t>(spec.index_family[static_cast<std::size_t>(j)]
                                              [static_cast<std::size_t>(l)] -
                                          1)] = spec.forbidden_tuple[static_cast<std::size_t>(l)];
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(n_cols),
                                       std::vector<int>(static_cast<std::size_t>(q)));
    for (int i = 0; i < n_cols; ++i)
        for (int j = 0; j < q; ++j)
            cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];

    for (int i = 0; i < n_cols; ++i)
        for (int j = i + 1; j < n_cols; ++j)
            if (cols[static_cast<std::size_t>(i)] == cols[static_cast<std::size_t>(j)])
                throw std::invalid_argument("gadget: induced columns are not pairwise distinct");

    // (*) every h columns jointly fail rho
    {
        std::vector<int> pick(static_cast<std::size_t>(h));
        std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
            if (depth == h) {
                for (int j = 0; j < q; ++j) {
                    std::vector<int> col_tuple(static_cast<std::size_t>(h));
                    for (int i = 0; i < h; ++i)
                        col_tuple[static_cast<std::size_t>(i)] =
                            cols[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]
                                [static_cast<std::size_t>(j)];
                    if (!rho.contains(col_tuple)) return true;  // this h-set fails jointly
                }
                return false;
            }
            for (int i = start; i < n_cols; ++i) {
                pick[static_cast<std::size_t>(depth)] = i;
                if (!rec(i + 1, depth + 1)) return false;
            }
            return true;
        };
        if (!rec(0, 0)) throw std::invalid_argument("gadget: (*) fails for some h columns");
    }

    std::vector<std::uint8_t> table(tsize, static_cast<std::uint8_t>(spec.default_value));
    for (int i = 0; i < n_cols; ++i)
        table[tuple_rank(k, std::span<const int>(cols[static_cast<std::size_t>(i)]))] =
            static_cast<std::uint8_t>(spec.value_row[static_cast<std::size_t>(i)]);
    Operation f(rho.domain(), q, std::move(table));

    // postconditions, checked directly rather than trusted
    if (!preserves_parallel(f, rho))
        throw std::logic_error("gadget: built operation fails to preserve rho");
    if (delta) {
        if (delta->arity() != n_cols)
            throw std::invalid_argument("gadget: delta arity must equal target arity");
        for (const auto& y : rows)
            if (!delta->contains(y))
                throw std::invalid_argument("gadget: an induced row is not in delta");
        if (delta->contains(spec.value_row))
            throw std::invalid_argument("gadget: value row must lie outside delta");
    }
    return f;
}

namespace {

Derivation single(DerivedKind kind, std::vector<std::string> inputs,
                  std::vector<std::pair<std::string, int>> params = {}) {
    return Derivation{{DerivedStep{"delta", kind, std::move(inputs), std::move(params)}}};
}

}  // namespace

std::vector<std::pair<std::string, Derivation>> delta_catalog(const CentralRelation& rho,
                                                              const CentralRelation& sigma) {
    const int h = rho.arity();
    const int s = sigma.arity();
    const int k = rho.k();
    std::vector<std::pair<std::string, Derivation>> out;

    if (s == 1 && h == 2) {
        out.emplace_back("Lemma 3 (tau)", single(DerivedKind::Tau, {"rho", "sigma"}));
        out.emplace_back("Lemma 4 (gamma2 cap rho)",
                         Derivation{{
                             DerivedStep{"gamma2", DerivedKind::GammaBinary, {"rho", "sigma"}, {}},
                             DerivedStep{"delta", DerivedKind::Intersect, {"gamma2", "rho"}, {}},
                         }});
        out.emplace_back("Lemma 5 (gamma2)", single(DerivedKind::GammaBinary, {"rho", "sigma"}));
        for (int t = 3; t <= k; ++t)
            out.emplace_back("Lemma 6/8 (gamma_" + std::to_string(t) + ")",
                             single(DerivedKind::GammaT, {"rho", "sigma"}, {{"t", t}}));
    }
    if (s == 1 && h >= 3) {
        out.emplace_back("Lemma 11 (alpha_" + std::to_string(h - 1) + ")",
                         single(DerivedKind::AlphaN, {"rho", "sigma"}, {{"n", h - 1}}));
        for (int n = h; n <= k; ++n)
            out.emplace_back("Lemma 12 (alpha_" + std::to_string(n) + ")",
                             single(DerivedKind::AlphaN, {"rho", "sigma"}, {{"n", n}}));
        int m = chain_family_size(rho.rel());
        for (int j = 1; j <= m; ++j)
            out.emplace_back("Lemma 13 (beta_" + std::to_string(j * (h - 1) + 1) + ")",
                             single(DerivedKind::BetaChain, {"rho", "sigma"}, {{"j", j}}));
    }
    if (s == h) {
        out.emplace_back("Prop 3 (gamma = rho cap sigma)",
                         single(DerivedKind::Intersect, {"rho", "sigma"}));
        out.emplace_back("Prop 3 (beta = gamma1 cap rho)",
                         Derivation{{
                             DerivedStep{"gamma", DerivedKind::Intersect, {"rho", "sigma"}, {}},
                             DerivedStep{"gamma1", DerivedKind::Alpha1Of, {"gamma"}, {}},
                             DerivedStep{"delta", DerivedKind::Intersect, {"rho", "gamma1"}, {}},
                         }});
        for (int t = h; t <= k; ++t)
            out.emplace_back(
                "Lemma 15 (beta_" + std::to_string(t) + ")",
                Derivation{{
                    DerivedStep{"gamma", DerivedKind::Intersect, {"rho", "sigma"}, {}},
                    DerivedStep{"delta", DerivedKind::BetaT, {"rho", "gamma"}, {{"t", t}}},
                }});
    }
    if (h >= 2 && h < s) {
        for (int t = h; t <= s - 1; ++t)
            out.emplace_back("Lemma 27/28 (theta_" + std::to_string(t) + ")",
                             single(DerivedKind::ThetaUp, {"rho", "sigma"}, {{"t", t}}));
        out.emplace_back("Lemma 29 (gamma_s)", single(DerivedKind::GammaS, {"rho", "sigma"}));
        for (int t = s; t <= k; ++t)
            out.emplace_back("Lemma 29 (gamma'_" + std::to_string(t) + ")",
                             single(DerivedKind::GammaPrimeT, {"rho", "sigma"}, {{"t", t}}));
        out.emplace_back("Lemma 30 (gamma')", single(DerivedKind::GammaPrime, {"rho", "sigma"}));
    }
    if (s >= 2 && s < h) {
        for (int t = s; t <= h - 1; ++t)
            out.emplace_back("Lemma 32 (theta_" + std::to_string(t) + ")",
                             single(DerivedKind::ThetaDown, {"rho", "sigma"}, {{"t", t}}));
        out.emplace_back("Lemma 34 (gamma'_h)", single(DerivedKind::GammaPrimeH, {"rho", "sigma"}));
        int m = chain_family_size(rho.rel());
        for (int n = 1; n <= m; ++n)
            out.emplace_back("Lemma 34 (gamma'_" + std::to_string(n * (h - 1) + 1) + ")",
                             single(DerivedKind::GammaPrimeChain, {"rho", "sigma"}, {{"n", n}}));
    }
    if (s == h)  // theory-free fallback; identical to the gamma candidate and
                 // deduplicated at search time, kept for catalog completeness
        out.emplace_back("fallback (rho cap sigma)",
                         single(DerivedKind::Intersect, {"rho", "sigma"}));
    return out;
}

namespace {

const char* status_text(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::ExhaustedNegative: return "exhausted-negative";
        case SearchStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

}  // namespace

CertificateSearchReport search_certificate(const CentralRelation& rho,
                                           const CentralRelation& sigma,
                                           const CertifyOptions& opts) {
    CertificateSearchReport report;
    std::set<std::vector<std::uint32_t>> seen;  // dedup candidates by member ranks

    for (auto& [tag, der] : delta_catalog(rho, sigma)) {
        Relation delta = recompute(der, rho.rel(), sigma.rel());
        CandidateAttempt attempt{tag, ""};
        if (delta.is_full() || delta.is_empty()) {
            attempt.outcome = "skipped: delta trivial (preserved by every operation)";
            report.attempts.push_back(std::move(attempt));
            continue;
        }
        if (delta.arity() == rho.arity() && delta == rho.rel()) {
            attempt.outcome = "skipped: delta equals rho";
            report.attempts.push_back(std::move(attempt));
            continue;
        }
        if (delta.arity() == sigma.arity() && delta == sigma.rel()) {
            attempt.outcome = "skipped: delta equals sigma";
            report.attempts.push_back(std::move(attempt));
            continue;
        }
        auto key = delta.member_ranks();
        key.push_back(static_cast<std::uint32_t>(delta.arity()));
        if (!seen.insert(key).second) {
            attempt.outcome = "skipped: duplicate of an earlier candidate";
            report.attempts.push_back(std::move(attempt));
            continue;
        }

        OpQuery mid_query{{rho.rel(), delta}, {sigma.rel()}, opts.max_sep_arity, opts.sep_budget};
        SeparatorResult mid = find_separator(mid_query);
        if (mid.status != SearchStatus::Found) {
            attempt.outcome = std::string("f_mid: ") + status_text(mid.status);
            if (mid.status == SearchStatus::BudgetExhausted) report.budget_limited = true;
            report.attempts.push_back(std::move(attempt));
            continue;
        }
        OpQuery top_query{{rho.rel()}, {delta}, opts.max_sep_arity, opts.sep_budget};
        SeparatorResult top = find_separator(top_query);
        if (top.status != SearchStatus::Found) {
            attempt.outcome = std::string("g_top: ") + status_text(top.status);
            if (top.status == SearchStatus::BudgetExhausted) report.budget_limited = true;
            report.attempts.push_back(std::move(attempt));
            continue;
        }
        Certificate cert{std::move(delta), der, std::move(*mid.op), std::move(*top.op), tag};
        VerifyReport vr = verify_certificate(rho.rel(), sigma.rel(), cert);
        if (!vr.ok)
            throw std::logic_error("search_certificate: found separators fail verification: " +
                                   vr.failing_clause);
        attempt.outcome = "certified";
        report.attempts.push_back(std::move(attempt));
        report.certificate = std::move(cert);
        return report;
    }
    return report;
}

CertificateSearchReport find_certificate(const CentralRelation& rho, const CentralRelation& sigma,
                                         const CertifyOptions& opts) {
    auto verdict = classify(rho, sigma);
    if (verdict.verdict != Verdict::NotSubmaximal)
        throw std::invalid_argument(
            std::string("find_certificate: pair classifies as ") + verdict_name(verdict.verdict) +
            "; certificates exist only for NotSubmaximal pairs");
    return search_certificate(rho, sigma, opts);
}

VerifyReport verify_certificate(const Relation& rho, const Relation& sigma,
                                const Certificate& cert) {
    // (a) transcript recomputes delta bit-exactly
    try {
        Relation again = recompute(cert.derivation, rho, sigma);
        if (again != cert.delta)
            return {false, "a: derivation does not recompute delta bit-exactly"};
    } catch (const std::exception& e) {
        return {false, std::string("a: derivation failed to evaluate: ") + e.what()};
    }
    // (b) f_mid in Pol{rho, delta} \ Pol sigma
    if (!preserves(cert.f_mid, rho)) return {false, "b: f_mid does not preserve rho"};
    if (!preserves(cert.f_mid, cert.delta)) return {false, "b: f_mid does not preserve delta"};
    if (preserves(cert.f_mid, sigma)) return {false, "b: f_mid preserves sigma (must violate)"};
    // (c) g_top in Pol rho \ Pol delta
    if (!preserves(cert.g_top, rho)) return {false, "c: g_top does not preserve rho"};
    if (preserves(cert.g_top, cert.delta))
        return {false, "c: g_top preserves delta (must violate)"};
    return {true, ""};
}

nlohmann::json derivation_to_json(const Derivation& d) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : d.steps) {
        nlohmann::json js;
        js["name"] = s.name;
        js["kind"] = derived_kind_name(s.kind);
        js["inputs"] = s.inputs;
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [key, v] : s.params) params[key] = v;
        js["params"] = params;
        js["index_mode"] = index_mode_name(s.mode);
        steps.push_back(js);
    }
    return nlohmann::json{{"steps", steps}, {"witness_order", "ascending"}};
}

Derivation derivation_from_json(const nlohmann::json& j) {
    Derivation d;
    for (const auto& js : j.at("steps")) {
        DerivedStep s;
        s.name = js.at("name").get<std::string>();
        s.kind = derived_kind_from_name(js.at("kind").get<std::string>());
        s.inputs = js.at("inputs").get<std::vector<std::string>>();
        for (auto it = js.at("params").begin(); it != js.at("params").end(); ++it)
            s.params.emplace_back(it.key(), it.value().get<int>());
        std::sort(s.params.begin(), s.params.end());
        if (js.contains("index_mode"))
            s.mode = index_mode_from_name(js.at("index_mode").get<std::string>());
        d.steps.push_back(std::move(s));
    }
    return d;
}

namespace {

nlohmann::json relation_json(const Relation& rel) {
    return nlohmann::json{{"k", rel.k()}, {"arity", rel.arity()}, {"tuples", rel.member_tuples()}};
}

Relation relation_from(const nlohmann::json& j) { return read_relation_json(j.dump()); }

nlohmann::json operation_json(const Operation& op) {
    std::vector<int> t(op.table().begin(), op.table().end());
    return nlohmann::json{{"arity", op.arity()}, {"table", t}};
}

Operation operation_from(const nlohmann::json& j, Domain dom) {
    return Operation::from_table(dom, j.at("arity").get<int>(),
                                 j.at("table").get<std::vector<int>>());
}

}  // namespace

nlohmann::json certificate_to_json(const Relation& rho, const Relation& sigma,
                                   const Certificate& cert) {
    nlohmann::json j;
    j["schema"] = 1;
    j["rho"] = relation_json(rho);
    j["sigma"] = relation_json(sigma);
    j["delta"] = nlohmann::json{{"relation", relation_json(cert.delta)},
                                {"derived_spec", derivation_to_json(cert.derivation)}};
    j["f_mid"] = operation_json(cert.f_mid);
    j["g_top"] = operation_json(cert.g_top);
    j["lemma_tag"] = cert.lemma_tag;
    return j;
}

CertificateFile certificate_from_json(const nlohmann::json& j) {
    Relation rho = relation_from(j.at("rho"));
    Relation sigma = relation_from(j.at("sigma"));
    Relation delta = relation_from(j.at("delta").at("relation"));
    Derivation der = derivation_from_json(j.at("delta").at("derived_spec"));
    Operation f_mid = operation_from(j.at("f_mid"), rho.domain());
    Operation g_top = operation_from(j.at("g_top"), rho.domain());
    std::string tag = j.value("lemma_tag", std::string("unknown"));
    return CertificateFile{std::move(rho), std::move(sigma),
                           Certificate{std::move(delta), std::move(der), std::move(f_mid),
                                       std::move(g_top), std::move(tag)}};
}

}  // namespace submax
