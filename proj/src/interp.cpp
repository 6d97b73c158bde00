#include "submax/interp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace submax {

Violation find_violation(const Operation& g, const Relation& sigma) {
    if (g.domain() != sigma.domain())
        throw std::invalid_argument("find_violation: domain mismatch");
    const int n = g.arity();
    const int s = sigma.arity();
    auto members = sigma.member_tuples();  // ascending rank
    if (members.empty()) throw std::invalid_argument("find_violation: sigma is empty");
    std::uint64_t combos = 1;
    for (int j = 0; j < n; ++j) {
        combos *= members.size();
        if (combos > 100'000'000)
            throw BudgetError("find_violation: too many column selections");
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<int> row(static_cast<std::size_t>(n));
    while (true) {
        std::vector<int> image(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
            for (int j = 0; j < n; ++j)
                row[static_cast<std::size_t>(j)] =
                    members[idx[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
            image[static_cast<std::size_t>(i)] = g.apply(row);
        }
        if (!sigma.contains(image)) {
            Violation v;
            for (int j = 0; j < n; ++j) v.columns.push_back(members[idx[static_cast<std::size_t>(j)]]);
            v.image = std::move(image);
            return v;
        }
        // advance odometer, idx[0] most significant
        bool advanced = false;
        for (std::size_t j = idx.size(); j-- > 0;) {
            if (++idx[j] < members.size()) {
                advanced = true;
                break;
            }
            idx[j] = 0;
        }
        if (!advanced) throw std::invalid_argument("find_violation: no violation exists");
    }
}

FcResult build_fc(FcCase fc_case, const Operation& g, const Violation& violation,
                  const std::vector<std::vector<int>>& context, int m,
                  std::optional<int> center_default, const Relation& rho, const Relation& sigma) {
    const int n = g.arity();
    const int s = sigma.arity();
    const int k = sigma.k();
    const int h = rho.arity();
    if (static_cast<int>(context.size()) != m)
        throw std::invalid_argument("build_fc: context must have m columns");
    for (const auto& col : context)
        if (static_cast<int>(col.size()) != s)
            throw std::invalid_argument("build_fc: context columns must be s-tuples");

    const std::size_t tsize = Operation::table_size_check(rho.domain(), m);

    // rows b_1..b_s over E_k^m
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(s),
                                       std::vector<int>(static_cast<std::size_t>(m)));
    for (int j = 0; j < s; ++j)
        for (int t = 0; t < m; ++t)
            rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] =
                context[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];

    switch (fc_case) {
        case FcCase::ConstantColumns:
            if (s != 1) throw std::invalid_argument("build_fc: case (i) needs unary sigma");
            for (const auto& col : context)
                if (!sigma.contains(col))
                    throw std::invalid_argument("build_fc: case (i) context must lie in sigma");
            break;
        case FcCase::PatternColumns:
            for (int a = 0; a < s; ++a)
                for (int b = a + 1; b < s; ++b)
                    if (rows[static_cast<std::size_t>(a)] == rows[static_cast<std::size_t>(b)])
                        throw std::invalid_argument(
                            "build_fc: case (ii) rows must be pairwise distinct");
            break;
        case FcCase::PatternWithCenter: {
            if (!center_default)
                throw std::invalid_argument("build_fc: case (iii) needs a central default");
            // every increasing h-selection of rows fails rho column-wise
            std::vector<int> pick(static_cast<std::size_t>(h));
            std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
                if (depth == h) {
                    for (int t = 0; t < m; ++t) {
                        std::vector<int> tup(static_cast<std::size_t>(h));
                        for (int i = 0; i < h; ++i)
                            tup[static_cast<std::size_t>(i)] =
                                rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]
                                    [static_cast<std::size_t>(t)];
                        if (!rho.contains(tup)) return true;
                    }
                    return false;
                }
                for (int i = start; i < s; ++i) {
                    pick[static_cast<std::size_t>(depth)] = i;
                    if (!rec(i + 1, depth + 1)) return false;
                }
                return true;
            };
            if (h <= s && !rec(0, 0))
                throw std::invalid_argument(
                    "build_fc: case (iii) rows contain h mutually rho-related rows");
            break;
        }
    }

    // inner gadgets f^1..f^n
    FcResult out{Operation::constant(rho.domain(), 0, m), {}, false};
    std::vector<Operation> inner;
    std::vector<int> x(static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint8_t> table(tsize);
        for (std::size_t r = 0; r < tsize; ++r) {
            tuple_decode(k, m, r, x);
            int value;
            if (fc_case == FcCase::ConstantColumns) {
                value = violation.columns[static_cast<std::size_t>(i)][0];
            } else {
                int j_hit = -1;
                for (int j = 0; j < s; ++j)
                    if (rows[static_cast<std::size_t>(j)] == x) {
                        j_hit = j;
                        break;
                    }
                if (j_hit >= 0)
                    value = violation.columns[static_cast<std::size_t>(i)]
                                             [static_cast<std::size_t>(j_hit)];
                else if (fc_case == FcCase::PatternColumns)
                    value = violation.columns[static_cast<std::size_t>(i)][0];
                else
                    value = *center_default;
            }
            table[r] = static_cast<std::uint8_t>(value);
        }
        inner.emplace_back(rho.domain(), m, std::move(table));
    }

    out.inner_in_pol = true;
    for (const auto& f : inner)
        if (!preserves(f, rho) || !preserves(f, sigma)) out.inner_in_pol = false;

    // f_context = g(f^1, ..., f^n)
    std::vector<std::uint8_t> table(tsize);
    std::vector<int> args(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < tsize; ++r) {
        for (int i = 0; i < n; ++i)
            args[static_cast<std::size_t>(i)] = inner[static_cast<std::size_t>(i)].value_at(r);
        table[r] = static_cast<std::uint8_t>(g.apply(args));
    }
    out.op = Operation(rho.domain(), m, std::move(table));
    for (const auto& f : inner) {
        std::vector<int> t(f.table().begin(), f.table().end());
        out.inner_tables.push_back(std::move(t));
    }
    return out;
}

std::vector<int> ext_map(const std::vector<Operation>& s_ops, const std::vector<int>& x) {
    if (s_ops.empty()) throw std::invalid_argument("ext_map: S must be nonempty");
    std::vector<int> y = x;
    for (const auto& f : s_ops) y.push_back(f.apply(x));
    return y;
}

bool InterpTranscript::all_ok() const {
    bool ok = pointwise_ok && s_members_ok && h_preserves_rho.pass && h_preserves_sigma.pass;
    if (type2_applicable)
        ok = ok && type2_chains_ok && type2_uy_ok && type2_ext_disjoint_ok;
    return ok;
}

namespace {

PreservationCheck check_preservation(const Operation& op, const Relation& rel,
                                     std::uint64_t exhaustive_limit, std::uint64_t samples,
                                     std::uint64_t seed) {
    PreservationCheck out;
    const std::size_t cnt = rel.size();
    std::uint64_t combos = 1;
    bool overflow = false;
    for (int i = 0; i < op.arity(); ++i) {
        if (cnt != 0 && combos > exhaustive_limit / cnt) {
            overflow = true;
            break;
        }
        combos *= cnt;
    }
    if (!overflow && combos <= exhaustive_limit) {
        out.mode = "exhaustive";
        out.checked = combos;
        out.pass = preserves_parallel(op, rel);
        return out;
    }
    out.mode = "sampled";
    out.checked = samples;
    out.pass = true;
    const auto mem = rel.member_tuples_flat();
    const int h = rel.arity();
    const int n = op.arity();
    const int k = rel.k();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, cnt - 1);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    for (std::uint64_t trial = 0; trial < samples; ++trial) {
        for (int j = 0; j < n; ++j) idx[static_cast<std::size_t>(j)] = pick(rng);
        std::size_t img = 0;
        for (int i = 0; i < h; ++i) {
            std::size_t row = 0;
            for (int j = 0; j < n; ++j)
                row = row * static_cast<std::size_t>(k) +
                      mem[idx[static_cast<std::size_t>(j)] * static_cast<std::size_t>(h) +
                          static_cast<std::size_t>(i)];
            img = img * static_cast<std::size_t>(k) + op.value_at(row);
        }
        if (!rel.contains_rank(img)) {
            out.pass = false;
            break;
        }
    }
    return out;
}

}  // namespace

InterpTranscript interpolate(const CentralRelation& rho, const CentralRelation& sigma,
                             const Operation& g, const Operation& target,
                             const InterpOptions& opts) {
    auto cls = classify(rho, sigma);
    if (cls.verdict == Verdict::NotSubmaximal)
        throw std::invalid_argument("interpolate: pair classifies as NotSubmaximal");
    if (!preserves(g, rho.rel()))
        throw std::invalid_argument("interpolate: g must preserve rho");
    if (!preserves(target, rho.rel()))
        throw std::invalid_argument("interpolate: target must preserve rho");
    const int m = target.arity();
    if (opts.m != 0 && opts.m != m)
        throw std::invalid_argument("interpolate: target arity differs from requested m");
    const int k = rho.k();
    const int s = sigma.arity();
    const int h = rho.arity();

    InterpTranscript t{cls.verdict, m,      g,  find_violation(g, sigma.rel()),
                       {},          0,      target, Operation::constant(rho.domain(), 0, 1),
                       false,       false,  {}, {}};

    // case selection and central element
    FcCase fc_case;
    switch (cls.verdict) {
        case Verdict::TypeI:
        case Verdict::TypeII: fc_case = FcCase::ConstantColumns; break;
        case Verdict::TypeIII:
            fc_case = (cls.direction == Compare::RightStrict) ? FcCase::PatternColumns
                                                              : FcCase::PatternWithCenter;
            break;
        case Verdict::TypeIV: fc_case = FcCase::PatternColumns; break;
        case Verdict::TypeV: fc_case = FcCase::PatternWithCenter; break;
        default: throw std::logic_error("interpolate: unreachable verdict");
    }
    if (cls.verdict == Verdict::TypeI) {
        int c = -1;
        for (int a : rho.center())
            if (sigma.rel().contains_rank(static_cast<std::size_t>(a))) {
                c = a;
                break;
            }
        if (c < 0) throw std::logic_error("interpolate: type I without C_rho cap sigma");
        t.c = c;
    } else if (cls.verdict == Verdict::TypeII) {
        t.c = rho.center().front();
    } else {
        std::vector<int> common;
        std::set_intersection(rho.center().begin(), rho.center().end(), sigma.center().begin(),
                              sigma.center().end(), std::back_inserter(common));
        if (common.empty())
            throw std::logic_error("interpolate: C_rho cap C_sigma empty for this type");
        t.c = common.front();
    }

    // contexts and S (deduplicated by operation table, first-seen order)
    std::map<std::vector<std::uint8_t>, std::size_t> index_of;
    std::optional<int> center_default =
        (fc_case == FcCase::PatternWithCenter) ? std::optional<int>(t.c) : std::nullopt;
    auto add_context = [&](const std::vector<std::vector<int>>& context) {
        FcResult fc =
            build_fc(fc_case, g, t.violation, context, m, center_default, rho.rel(), sigma.rel());
        if (!fc.inner_in_pol)
            throw std::logic_error("interpolate: an inner gadget escapes Pol{rho,sigma}");
        auto it = index_of.find(fc.op.table());
        if (it == index_of.end()) {
            index_of.emplace(fc.op.table(), t.s_members.size());
            t.s_members.push_back(SMember{fc.op, fc.inner_tables, 1});
        } else {
            ++t.s_members[it->second].context_count;
        }
    };

    if (fc_case == FcCase::ConstantColumns) {
        auto members = sigma.rel().member_tuples();
        std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
        while (true) {
            std::vector<std::vector<int>> context;
            for (int i = 0; i < m; ++i) context.push_back(members[idx[static_cast<std::size_t>(i)]]);
            add_context(context);
            std::size_t j = idx.size();
            bool done = true;
            while (j-- > 0) {
                if (++idx[j] < members.size()) {
                    done = false;
                    break;
                }
                idx[j] = 0;
            }
            if (done) break;
        }
    } else {
        // all m-column context matrices over E_k^s meeting the case condition
        std::size_t total = 1;
        for (int i = 0; i < m * s; ++i) total *= static_cast<std::size_t>(k);
        std::vector<int> flat(static_cast<std::size_t>(m * s));
        for (std::size_t r = 0; r < total; ++r) {
            tuple_decode(k, m * s, r, flat);
            std::vector<std::vector<int>> context(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                context[static_cast<std::size_t>(i)] =
                    std::vector<int>(flat.begin() + i * s, flat.begin() + (i + 1) * s);
            // rows b_j
            std::vector<std::vector<int>> rows(static_cast<std::size_t>(s),
                                               std::vector<int>(static_cast<std::size_t>(m)));
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < m; ++i)
                    rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                        context[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            bool ok = true;
            if (fc_case == FcCase::PatternColumns) {
                for (int a = 0; a < s && ok; ++a)
                    for (int b = a + 1; b < s && ok; ++b)
                        if (rows[static_cast<std::size_t>(a)] == rows[static_cast<std::size_t>(b)])
                            ok = false;
            } else {
                // every increasing h-selection of rows fails rho column-wise
                std::vector<int> pick(static_cast<std::size_t>(h));
                std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
                    if (depth == h) {
                        for (int i = 0; i < m; ++i) {
                            std::vector<int> tup(static_cast<std::size_t>(h));
                            for (int a = 0; a < h; ++a)
                                tup[static_cast<std::size_t>(a)] =
                                    rows[static_cast<std::size_t>(
                                        pick[static_cast<std::size_t>(a)])]
                                        [static_cast<std::size_t>(i)];
                            if (!rho.rel().contains(tup)) return true;
                        }
                        return false;
                    }
                    for (int i = start; i < s; ++i) {
                        pick[static_cast<std::size_t>(depth)] = i;
                        if (!rec(i + 1, depth + 1)) return false;
                    }
                    return true;
                };
                ok = (h <= s) ? rec(0, 0) : true;
            }
            if (ok) add_context(context);
        }
    }

    const int q = static_cast<int>(t.s_members.size());
    if (q == 0) throw std::logic_error("interpolate: no valid contexts, S is empty");
    const int hq_arity = m + q;
    const int limit = (k == 3) ? 8 : 6;
    if (hq_arity > limit)
        throw BudgetError("interpolate: m+q = " + std::to_string(hq_arity) +
                          " exceeds the table budget for k=" + std::to_string(k));

    // ext image
    std::vector<Operation> s_ops;
    for (const auto& sm : t.s_members) s_ops.push_back(sm.op);
    std::size_t m_total = 1;
    for (int i = 0; i < m; ++i) m_total *= static_cast<std::size_t>(k);
    std::unordered_map<std::size_t, std::size_t> ext_image;  // rank(y) -> rank(x)
    std::vector<int> x(static_cast<std::size_t>(m));
    for (std::size_t rx = 0; rx < m_total; ++rx) {
        tuple_decode(k, m, rx, x);
        auto y = ext_map(s_ops, x);
        auto [it, fresh] = ext_image.emplace(tuple_rank(k, y), rx);
        if (!fresh) throw std::logic_error("interpolate: ext is not injective");
    }

    // H table
    std::size_t h_total = 1;
    for (int i = 0; i < hq_arity; ++i) h_total *= static_cast<std::size_t>(k);
    std::vector<std::uint8_t> h_table(h_total, static_cast<std::uint8_t>(t.c));
    t.type2_applicable = (cls.verdict == Verdict::TypeII);
    if (t.type2_applicable) {
        t.type2_chains_ok = t.type2_uy_ok = t.type2_ext_disjoint_ok = true;
        const auto& chains = rho.maximal_chains();
        std::vector<int> y(static_cast<std::size_t>(hq_arity));
        for (std::size_t ry = 0; ry < h_total; ++ry) {
            auto hit = ext_image.find(ry);
            tuple_decode(k, hq_arity, ry, y);
            bool in_sigma_power = true;
            for (int a : y)
                if (!sigma.rel().contains_rank(static_cast<std::size_t>(a))) {
                    in_sigma_power = false;
                    break;
                }
            if (hit != ext_image.end()) {
                if (in_sigma_power) t.type2_ext_disjoint_ok = false;
                h_table[ry] = target.value_at(hit->second);
                continue;
            }
            if (!in_sigma_power) continue;  // default c
            // D_y = {target(x) : (ext(x), y) in rho column-wise}
            std::set<int> d_y;
            std::vector<int> xx(static_cast<std::size_t>(m));
            for (std::size_t rx = 0; rx < m_total; ++rx) {
                tuple_decode(k, m, rx, xx);
                auto ey = ext_map(s_ops, xx);
                bool related = true;
                for (int j = 0; j < hq_arity && related; ++j)
                    if (!rho.rel().contains(std::vector<int>{ey[static_cast<std::size_t>(j)],
                                                             y[static_cast<std::size_t>(j)]}))
                        related = false;
                if (related) d_y.insert(target.value_at(rx));
            }
            for (int a : d_y)
                for (int b : d_y)
                    if (!rho.rel().contains(std::vector<int>{a, b})) t.type2_chains_ok = false;
            int u_y = -1;
            for (int cand = 0; cand < k && u_y < 0; ++cand) {
                if (!sigma.rel().contains_rank(static_cast<std::size_t>(cand))) continue;
                for (const auto& chain : chains) {
                    bool covers = std::includes(chain.begin(), chain.end(), d_y.begin(), d_y.end());
                    if (covers && std::binary_search(chain.begin(), chain.end(), cand)) {
                        u_y = cand;
                        break;
                    }
                }
            }
            if (u_y < 0) throw std::logic_error("interpolate: u_y undefined for a sigma tuple");
            if (!sigma.rel().contains_rank(static_cast<std::size_t>(u_y))) t.type2_uy_ok = false;
            h_table[ry] = static_cast<std::uint8_t>(u_y);
        }
    } else {
        for (const auto& [ry, rx] : ext_image) h_table[ry] = target.value_at(rx);
    }
    t.h_op = Operation(rho.domain(), hq_arity, std::move(h_table));

    // post-checks
    t.pointwise_ok = true;
    for (std::size_t rx = 0; rx < m_total; ++rx) {
        tuple_decode(k, m, rx, x);
        auto y = ext_map(s_ops, x);
        if (t.h_op.value_at(tuple_rank(k, y)) != target.value_at(rx)) t.pointwise_ok = false;
    }
    t.s_members_ok = true;
    std::vector<Relation> both{rho.rel(), sigma.rel()};
    for (const auto& sm : t.s_members)
        for (const auto& inner : sm.inner_tables) {
            Operation f = Operation::from_table(rho.domain(), m, inner);
            if (!in_pol(f, both)) t.s_members_ok = false;
        }
    t.h_preserves_rho =
        check_preservation(t.h_op, rho.rel(), opts.exhaustive_limit, opts.samples, opts.seed);
    t.h_preserves_sigma = check_preservation(t.h_op, sigma.rel(), opts.exhaustive_limit,
                                             opts.samples, opts.seed + 1);
    return t;
}

nlohmann::json interp_to_json(const InterpTranscript& t) {
    nlohmann::json j;
    j["sigma_type"] = verdict_name(t.sigma_type);
    j["m"] = t.m;
    std::vector<int> gt(t.g.table().begin(), t.g.table().end());
    j["g"] = {{"arity", t.g.arity()}, {"table", gt}};
    j["violation"] = {{"columns", t.violation.columns}, {"image", t.violation.image}};
    nlohmann::json s_arr = nlohmann::json::array();
    for (const auto& sm : t.s_members) {
        std::vector<int> st(sm.op.table().begin(), sm.op.table().end());
        s_arr.push_back({{"table", st},
                         {"inner_tables", sm.inner_tables},
                         {"context_count", sm.context_count}});
    }
    j["S"] = s_arr;
    j["q"] = t.s_members.size();
    j["c"] = t.c;
    std::vector<int> tt(t.target.table().begin(), t.target.table().end());
    j["target"] = {{"arity", t.target.arity()}, {"table", tt}};
    std::vector<int> ht(t.h_op.table().begin(), t.h_op.table().end());
    j["H"] = {{"arity", t.h_op.arity()}, {"table", ht}};
    j["checks"] = {
        {"pointwise", t.pointwise_ok},
        {"inner_gadgets_in_pol", t.s_members_ok},
        {"H_preserves_rho",
         {{"mode", t.h_preserves_rho.mode}, {"pass", t.h_preserves_rho.pass},
          {"checked", t.h_preserves_rho.checked}}},
        {"H_preserves_sigma",
         {{"mode", t.h_preserves_sigma.mode}, {"pass", t.h_preserves_sigma.pass},
          {"checked", t.h_preserves_sigma.checked}}},
    };
    if (t.type2_applicable) {
        j["checks"]["type2"] = {{"chains", t.type2_chains_ok},
                                {"u_y_in_sigma", t.type2_uy_ok},
                                {"ext_disjoint", t.type2_ext_disjoint_ok}};
    }
    j["all_ok"] = t.all_ok();
    return j;
}

}  // namespace submax
