#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "submax/certify.hpp"
#include "submax/classifier.hpp"
#include "submax/closure.hpp"
#include "submax/enumerate.hpp"
#include "submax/interp.hpp"
#include "submax/io.hpp"
#include "submax/survey.hpp"

using namespace submax;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInconsistent = 3;

Relation load_relation_or_throw(const std::string& path) {
    std::vector<std::string> warnings;
    Relation rel = load_relation_file(path, &warnings);
    for (const auto& w : warnings) std::cerr << path << ": warning: " << w << "\n";
    return rel;
}

CentralRelation load_central(const std::string& path, int* exit_code) {
    Relation rel = load_relation_or_throw(path);
    auto v = validate_central(rel);
    if (auto* err = std::get_if<ValidationError>(&v)) {
        std::cerr << path << ": " << err->to_string() << "\n";
        *exit_code = kExitValidation;
        throw CLI::RuntimeError(kExitValidation);
    }
    return std::get<CentralRelation>(v);
}

// accepts either an operation line or a path to a file holding one
Operation load_operation_arg(const std::string& arg) {
    if (arg.find("table=") != std::string::npos) return read_operation(arg);
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open " + arg);
    std::string line;
    std::getline(in, line);
    return read_operation(line);
}

std::string set_to_string(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data << "\n";
        return;
    }
    std::ofstream out(path);
    out << data << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"submax: decides whether Pol{rho,sigma} is maximal below Pol rho for central "
                 "relations, with machine-checkable certificates"};
    app.require_subcommand(1);
    int exit_code = kExitOk;

    // validate / center / chains -------------------------------------------
    std::string file_arg;
    bool json_flag = false;
    auto* validate_cmd = app.add_subcommand("validate", "validate a central relation file");
    validate_cmd->add_option("file", file_arg)->required();
    validate_cmd->add_flag("--json", json_flag);
    validate_cmd->callback([&] {
        auto central = load_central(file_arg, &exit_code);
        if (json_flag) {
            nlohmann::json j{{"ok", true},
                             {"center", central.center()},
                             {"arity", central.arity()},
                             {"k", central.k()}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "central relation, arity " << central.arity() << " on E_"
                      << central.k() << ", center " << set_to_string(central.center()) << "\n";
        }
    });

    auto* center_cmd = app.add_subcommand("center", "print the center of a central relation");
    center_cmd->add_option("file", file_arg)->required();
    center_cmd->callback([&] {
        auto central = load_central(file_arg, &exit_code);
        std::cout << set_to_string(central.center()) << "\n";
    });

    auto* chains_cmd = app.add_subcommand("chains", "print all maximal rho-chains");
    chains_cmd->add_option("file", file_arg)->required();
    chains_cmd->callback([&] {
        auto central = load_central(file_arg, &exit_code);
        for (const auto& chain : central.maximal_chains())
            std::cout << set_to_string(chain) << "\n";
    });

    // derive -----------------------------------------------------------------
    std::string rho_path, sigma_path, kind_name, index_mode_name_arg = "literal";
    int p_t = -1, p_l = -1, p_n = -1, p_j = -1, p_s = -1;
    auto* derive_cmd = app.add_subcommand("derive", "build a derived witness relation");
    derive_cmd->add_option("--rho", rho_path)->required();
    derive_cmd->add_option("--sigma", sigma_path);
    derive_cmd->add_option("--kind", kind_name, "tau|gamma2|gamma_t|rho_l|alpha_n|beta_chain|"
                                                "alpha1_of|beta_t|lambda|gamma_prime|theta_up|"
                                                "theta_down|gamma_s|gamma_prime_t|gamma_prime_h|"
                                                "gamma_prime_chain|intersect")
        ->required();
    derive_cmd->add_option("--t", p_t);
    derive_cmd->add_option("--l", p_l);
    derive_cmd->add_option("--n", p_n);
    derive_cmd->add_option("--j", p_j);
    derive_cmd->add_option("--s", p_s);
    derive_cmd->add_option("--index-mode", index_mode_name_arg, "literal|strict|repeats");
    derive_cmd->callback([&] {
        Relation rho = load_relation_or_throw(rho_path);
        Relation sigma = sigma_path.empty() ? rho : load_relation_or_throw(sigma_path);
        DerivedKind kind = derived_kind_from_name(kind_name);
        std::vector<std::pair<std::string, int>> params;
        if (p_t >= 0) params.emplace_back("t", p_t);
        if (p_l >= 0) params.emplace_back("l", p_l);
        if (p_n >= 0) params.emplace_back("n", p_n);
        if (p_j >= 0) params.emplace_back("j", p_j);
        if (p_s >= 0) params.emplace_back("s", p_s);
        auto out = derive(kind, rho, sigma, params, index_mode_from_name(index_mode_name_arg));
        std::cout << write_relation_text(out.rel) << "\n";
        std::cout << "# " << out.spec.summary() << "\n";
    });

    // classify ----------------------------------------------------------------
    auto* classify_cmd = app.add_subcommand("classify", "decide the five-type criterion");
    classify_cmd->add_option("--rho", rho_path)->required();
    classify_cmd->add_option("--sigma", sigma_path)->required();
    classify_cmd->add_flag("--json", json_flag);
    classify_cmd->callback([&] {
        auto rho = load_central(rho_path, &exit_code);
        auto sigma = load_central(sigma_path, &exit_code);
        ClassificationResult res;
        try {
            res = classify(rho, sigma);
        } catch (const std::invalid_argument& e) {
            std::cerr << e.what() << "\n";
            exit_code = kExitValidation;
            throw CLI::RuntimeError(kExitValidation);
        }
        if (json_flag) {
            nlohmann::json j;
            j["verdict"] = verdict_name(res.verdict);
            j["evidence"] = res.evidence_summary();
            nlohmann::json reasons = nlohmann::json::array();
            for (const auto& r : res.reasons)
                reasons.push_back({{"condition", r.condition},
                                   {"applicable", r.applicable},
                                   {"holds", r.holds},
                                   {"detail", r.detail}});
            j["reasons"] = reasons;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << verdict_name(res.verdict) << ": " << res.evidence_summary() << "\n";
        }
    });

    // certify -------------------------------------------------------------------
    std::string out_path;
    int sep_arity = 2;
    std::uint64_t budget = 20'000'000;
    auto* certify_cmd =
        app.add_subcommand("certify", "produce a non-submaximality certificate");
    certify_cmd->add_option("--rho", rho_path)->required();
    certify_cmd->add_option("--sigma", sigma_path)->required();
    certify_cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    certify_cmd->add_option("--max-sep-arity", sep_arity);
    certify_cmd->add_option("--budget", budget);
    certify_cmd->callback([&] {
        auto rho = load_central(rho_path, &exit_code);
        auto sigma = load_central(sigma_path, &exit_code);
        auto verdict = classify(rho, sigma);
        if (verdict.verdict != Verdict::NotSubmaximal) {
            std::cerr << "pair classifies as " << verdict_name(verdict.verdict)
                      << "; Pol{rho,sigma} is maximal below Pol rho and no certificate exists\n";
            exit_code = kExitValidation;
            throw CLI::RuntimeError(kExitValidation);
        }
        CertifyOptions copts{sep_arity, budget};
        auto report = search_certificate(rho, sigma, copts);
        if (!report.certificate) {
            std::cerr << "no certificate found within bounds (separator arity <= "
                      << sep_arity << "); this is a bounded-search negative, not a proof\n";
            for (const auto& a : report.attempts)
                std::cerr << "  " << a.lemma_tag << ": " << a.outcome << "\n";
            exit_code = kExitValidation;
            throw CLI::RuntimeError(kExitValidation);
        }
        write_output(out_path,
                     certificate_to_json(rho.rel(), sigma.rel(), *report.certificate).dump(2));
        std::cerr << "certified via " << report.certificate->lemma_tag << "\n";
    });

    // verify -------------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "check a certificate file, exit 0/1");
    verify_cmd->add_option("file", file_arg)->required();
    verify_cmd->callback([&] {
        std::ifstream in(file_arg);
        if (!in) throw std::runtime_error("cannot open " + file_arg);
        nlohmann::json j;
        in >> j;
        CertificateFile cf = certificate_from_json(j);
        VerifyReport vr = verify_certificate(cf.rho, cf.sigma, cf.cert);
        if (vr.ok) {
            std::cout << "certificate verifies: Pol{rho,sigma} < Pol{rho,delta} < Pol rho\n";
        } else {
            std::cout << "certificate REJECTED, clause " << vr.failing_clause << "\n";
            exit_code = 1;
            throw CLI::RuntimeError(1);
        }
    });

    // interpolate -----------------------------------------------------------------
    std::string g_arg, target_arg;
    int m_arg = 1;
    std::uint64_t seed = 12345;
    auto* interp_cmd = app.add_subcommand(
        "interpolate", "run the sufficiency construction for a submaximal pair");
    interp_cmd->add_option("--rho", rho_path)->required();
    interp_cmd->add_option("--sigma", sigma_path)->required();
    interp_cmd->add_option("--g", g_arg, "operation line or file")->required();
    interp_cmd->add_option("--target", target_arg, "operation line or file")->required();
    interp_cmd->add_option("--m", m_arg, "target arity (default 1; 2 only for k=3)");
    interp_cmd->add_option("--seed", seed);
    interp_cmd->add_option("-o,--out", out_path, "write transcript JSON here");
    interp_cmd->callback([&] {
        auto rho = load_central(rho_path, &exit_code);
        auto sigma = load_central(sigma_path, &exit_code);
        Operation g = load_operation_arg(g_arg);
        Operation target = load_operation_arg(target_arg);
        if (m_arg == 2 && rho.k() != 3)
            throw std::invalid_argument("interpolate: m=2 supported only for k=3");
        InterpOptions iopts;
        iopts.m = m_arg;
        iopts.seed = seed;
        InterpTranscript t = interpolate(rho, sigma, g, target, iopts);
        auto line = [&](const char* name, bool ok) {
            std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        };
        line("pointwise H(ext(x)) = target(x)", t.pointwise_ok);
        line("inner gadgets in Pol{rho,sigma}", t.s_members_ok);
        std::cout << (t.h_preserves_rho.pass ? "PASS " : "FAIL ") << "H preserves rho ("
                  << t.h_preserves_rho.mode << ")\n";
        std::cout << (t.h_preserves_sigma.pass ? "PASS " : "FAIL ") << "H preserves sigma ("
                  << t.h_preserves_sigma.mode << ")\n";
        if (t.type2_applicable) {
            line("type II: every D_y is a rho-chain", t.type2_chains_ok);
            line("type II: every u_y lies in sigma", t.type2_uy_ok);
            line("type II: ext image misses sigma^(m+q)", t.type2_ext_disjoint_ok);
        }
        if (!out_path.empty()) write_output(out_path, interp_to_json(t).dump(2));
        if (!t.all_ok()) {
            exit_code = kExitValidation;
            throw CLI::RuntimeError(kExitValidation);
        }
    });

    // closure -----------------------------------------------------------------
    std::string gens_path;
    int k_arg = 3, max_arity = 2, arity_arg = 2;
    bool stats = false, central_only = false, dedup_iso = false;
    auto* closure_cmd = app.add_subcommand("closure", "bounded-arity clone closure");
    closure_cmd->add_option("--gens", gens_path, "file of operation lines (may be empty)");
    closure_cmd->add_option("--k", k_arg)->required();
    closure_cmd->add_option("--max-arity", max_arity);
    closure_cmd->add_option("--budget", budget);
    closure_cmd->add_flag("--stats", stats);
    closure_cmd->callback([&] {
        std::vector<Operation> gens;
        if (!gens_path.empty()) {
            std::ifstream in(gens_path);
            if (!in) throw std::runtime_error("cannot open " + gens_path);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                gens.push_back(read_operation(line));
            }
        }
        auto res = bounded_closure(Domain(k_arg), gens, max_arity, budget);
        std::cout << (res.fixpoint ? "fixpoint reached" : "NON-FIXPOINT: budget exhausted")
                  << " after " << res.compositions << " compositions\n";
        if (stats)
            for (int n = 1; n <= max_arity; ++n)
                std::cout << "arity " << n << ": " << res.clone.count(n) << " members\n";
    });

    // enumerate ------------------------------------------------------------------
    auto* enum_cmd = app.add_subcommand("enumerate", "list relations of a class");
    enum_cmd->add_option("--k", k_arg)->required();
    enum_cmd->add_option("--arity", arity_arg)->required();
    enum_cmd->add_flag("--central", central_only);
    enum_cmd->add_flag("--dedup-iso", dedup_iso);
    enum_cmd->add_flag("--json", json_flag);
    enum_cmd->callback([&] {
        if (k_arg > 4 || arity_arg > 3)
            throw std::invalid_argument("enumerate: supported range is k <= 4, arity <= 3");
        auto rels = central_only ? enumerate_central(Domain(k_arg), arity_arg)
                                 : enumerate_symmetric_reflexive(Domain(k_arg), arity_arg);
        if (dedup_iso) rels = dedup_isomorphic(rels);
        if (json_flag) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : rels)
                arr.push_back({{"id", relation_id(r)},
                               {"k", r.k()},
                               {"arity", r.arity()},
                               {"tuples", r.member_tuples()}});
            std::cout << arr.dump() << "\n";
        } else {
            for (std::size_t i = 0; i < rels.size(); ++i) {
                if (i) std::cout << "\n";
                std::cout << write_relation_text(rels[i]) << "\n";
            }
            std::cerr << rels.size() << " relations\n";
        }
    });

    // survey -----------------------------------------------------------------------
    bool timings = false, no_demos = false;
    int survey_max_arity = 3;
    auto* survey_cmd = app.add_subcommand("survey", "classify + certify every central pair");
    survey_cmd->add_option("--k", k_arg)->required();
    survey_cmd->add_option("--max-arity", survey_max_arity);
    survey_cmd->add_option("--sep-arity", sep_arity);
    survey_cmd->add_option("--budget", budget);
    survey_cmd->add_option("--seed", seed);
    survey_cmd->add_flag("--json", json_flag);
    survey_cmd->add_flag("--timings", timings);
    survey_cmd->add_flag("--no-demos", no_demos);
    survey_cmd->add_option("-o,--out", out_path, "write JSON report here");
    survey_cmd->callback([&] {
        SurveyOptions sopts;
        sopts.k = k_arg;
        sopts.max_arity = survey_max_arity;
        sopts.sep_arity = sep_arity;
        sopts.sep_budget = budget;
        sopts.seed = seed;
        sopts.timings = timings;
        sopts.demos = !no_demos;
        auto res = run_survey(sopts);
        if (json_flag || !out_path.empty()) {
            std::string data = survey_to_json(res, sopts).dump(2);
            if (json_flag) std::cout << data << "\n";
            if (!out_path.empty()) write_output(out_path, data);
            if (!json_flag) std::cout << survey_table(res);
        } else {
            std::cout << survey_table(res);
        }
        if (res.inconsistent) {
            std::cerr << "INTERNAL INCONSISTENCY: a NotSubmaximal row lacks a verified "
                         "certificate\n";
            exit_code = kExitInconsistent;
            throw CLI::RuntimeError(kExitInconsistent);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::RuntimeError& e) {
        return e.get_exit_code();
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
