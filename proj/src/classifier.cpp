#include "submax/classifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace submax {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::TypeI: return "TypeI";
        case Verdict::TypeII: return "TypeII";
        case Verdict::TypeIII: return "TypeIII";
        case Verdict::TypeIV: return "TypeIV";
        case Verdict::TypeV: return "TypeV";
        case Verdict::NotSubmaximal: return "NotSubmaximal";
    }
    return "?";
}

namespace {

std::string set_to_string(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

std::string tuple_to_string(const std::vector<int>& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(t[i]);
    }
    return out + ")";
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void check_preconditions(const CentralRelation& rho, const CentralRelation& sigma) {
    if (rho.domain() != sigma.domain())
        throw std::invalid_argument("classify: rho and sigma must share one domain");
    if (rho.k() < 3) throw std::invalid_argument("classify: requires k >= 3");
    if (rho.arity() < 2) throw std::invalid_argument("classify: rho arity must be >= 2");
    if (rho.rel() == sigma.rel()) throw std::invalid_argument("classify: rho and sigma must differ");
}

ConditionReport eval_condition(const CentralRelation& rho, const CentralRelation& sigma, int which,
                               ClassificationResult* evidence_out) {
    const int h = rho.arity();
    const int s = sigma.arity();
    ConditionReport rep;
    rep.condition = which;
    switch (which) {
        case 1: {
            rep.applicable = (s == 1);
            if (!rep.applicable) {
                rep.detail = "not applicable: sigma is not unary";
                break;
            }
            auto sig = sigma.rel().member_tuples();
            std::vector<int> sig_elems;
            for (const auto& t : sig) sig_elems.push_back(t[0]);
            auto hit = sorted_intersection(rho.center(), sig_elems);
            rep.holds = !hit.empty();
            if (rep.holds) {
                rep.detail = "C_rho meets sigma at " + std::to_string(hit.front());
                if (evidence_out) evidence_out->witness_element = hit.front();
            } else {
                rep.detail = "C_rho=" + set_to_string(rho.center()) + " disjoint from sigma=" +
                             set_to_string(sig_elems);
            }
            break;
        }
        case 2: {
            rep.applicable = (s == 1 && h == 2);
            if (!rep.applicable) {
                rep.detail = "not applicable: needs unary sigma and binary rho";
                break;
            }
            Relation gamma = gamma_binary(rho.rel(), sigma.rel());
            bool eq = (gamma == rho.rel());
            std::vector<std::pair<std::vector<int>, int>> hits;
            bool chains_ok = true;
            for (const auto& chain : rho.maximal_chains()) {
                int hit = -1;
                for (int a : chain)
                    if (sigma.rel().contains_rank(static_cast<std::size_t>(a))) {
                        hit = a;
                        break;
                    }
                if (hit < 0) {
                    chains_ok = false;
                    rep.detail = "maximal chain " + set_to_string(chain) + " misses sigma";
                } else {
                    hits.emplace_back(chain, hit);
                }
            }
            rep.holds = eq && chains_ok;
            if (!eq) {
                rep.detail = std::string(rep.detail.empty() ? "" : rep.detail + "; ") +
                             "gamma(rho,sigma) != rho";
            }
            if (rep.holds) {
                rep.detail = "gamma = rho and every maximal chain meets sigma";
                if (evidence_out) {
                    evidence_out->gamma_equals_rho = true;
                    evidence_out->chain_hits = hits;
                }
            }
            break;
        }
        case 3: {
            rep.applicable = (s == h);
            if (!rep.applicable) {
                rep.detail = "not applicable: arities differ";
                break;
            }
            Compare c = compare(rho.rel(), sigma.rel());
            rep.holds = (c == Compare::LeftStrict || c == Compare::RightStrict);
            rep.detail = std::string("compare(rho,sigma) = ") + compare_name(c);
            if (rep.holds && evidence_out) evidence_out->direction = c;
            break;
        }
        case 4: {
            rep.applicable = (2 <= s && s < h);
            if (!rep.applicable) {
                rep.detail = "not applicable: needs 2 <= s < h";
                break;
            }
            auto hit = sorted_intersection(rho.center(), sigma.center());
            rep.holds = !hit.empty();
            if (rep.holds) {
                rep.detail = "C_rho meets C_sigma at " + std::to_string(hit.front());
                if (evidence_out) evidence_out->witness_element = hit.front();
            } else {
                rep.detail = "C_rho=" + set_to_string(rho.center()) +
                             " disjoint from C_sigma=" + set_to_string(sigma.center());
            }
            break;
        }
        case 5: {
            rep.applicable = (2 <= h && h < s);
            if (!rep.applicable) {
                rep.detail = "not applicable: needs 2 <= h < s";
                break;
            }
            Relation lam = lambda_pad(rho.rel(), s);
            Compare c = compare(lam, sigma.rel());
            rep.holds = (c == Compare::LeftStrict);
            if (rep.holds) {
                // first tuple of sigma \ lambda witnesses strictness
                for (std::size_t r = sigma.rel().bits().next_set(0); r < sigma.rel().bits().size();
                     r = sigma.rel().bits().next_set(r + 1)) {
                    if (!lam.contains_rank(r)) {
                        auto w = tuple_decode(sigma.k(), s, r);
                        rep.detail = "lambda strictly below sigma; witness " + tuple_to_string(w);
                        if (evidence_out) evidence_out->strict_witness = w;
                        break;
                    }
                }
            } else {
                rep.detail = std::string("lambda vs sigma: ") + compare_name(c);
            }
            break;
        }
        default: throw std::invalid_argument("condition: which must be in 1..5");
    }
    return rep;
}

}  // namespace

std::string ClassificationResult::evidence_summary() const {
    switch (verdict) {
        case Verdict::TypeI:
            return "c=" + std::to_string(witness_element.value_or(-1)) + " in C_rho cap sigma";
        case Verdict::TypeII: {
            std::string out = "gamma=rho";
            for (const auto& [chain, hit] : chain_hits) {
                out += "; chain" + set_to_string(chain) + " hits " + std::to_string(hit);
            }
            return out;
        }
        case Verdict::TypeIII:
            return direction == Compare::LeftStrict ? "rho strictly below sigma"
                                                    : "sigma strictly below rho";
        case Verdict::TypeIV:
            return "c=" + std::to_string(witness_element.value_or(-1)) + " in C_rho cap C_sigma";
        case Verdict::TypeV: {
            std::string out = "lambda strictly below sigma";
            if (strict_witness) out += ", witness " + tuple_to_string(*strict_witness);
            return out;
        }
        case Verdict::NotSubmaximal: {
            std::string out;
            for (const auto& r : reasons) {
                if (!r.applicable) continue;
                if (!out.empty()) out += "; ";
                out += "(" + std::string(1, static_cast<char>('0' + r.condition)) + ") " + r.detail;
            }
            return out.empty() ? "no condition applicable" : out;
        }
    }
    return "";
}

ClassificationResult classify(const CentralRelation& rho, const CentralRelation& sigma) {
    check_preconditions(rho, sigma);
    ClassificationResult res;
    std::vector<ConditionReport> reports;
    for (int which = 1; which <= 5; ++which) {
        ClassificationResult evidence;
        ConditionReport rep = eval_condition(rho, sigma, which, &evidence);
        reports.push_back(rep);
        if (rep.applicable && rep.holds) {
            evidence.verdict = static_cast<Verdict>(which - 1);
            return evidence;
        }
    }
    res.verdict = Verdict::NotSubmaximal;
    res.reasons = std::move(reports);
    return res;
}

ConditionReport condition(const CentralRelation& rho, const CentralRelation& sigma, int which) {
    check_preconditions(rho, sigma);
    return eval_condition(rho, sigma, which, nullptr);
}

}  // namespace submax
