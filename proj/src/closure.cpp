#include "submax/closure.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace submax {

namespace {

std::uint64_t saturating_table_space(int k, std::size_t tsize) {
    std::uint64_t total = 1;
    const std::uint64_t cap = std::uint64_t{1} << 62;
    for (std::size_t i = 0; i < tsize; ++i) {
        if (total > cap / static_cast<std::uint64_t>(k)) return cap;
        total *= static_cast<std::uint64_t>(k);
    }
    return total;
}

}  // namespace

BoundedClone::BoundedClone(Domain dom, int max_arity) : dom_(dom), max_arity_(max_arity) {
    if (max_arity < 1) throw std::invalid_argument("BoundedClone: max_arity must be >= 1");
    members_.resize(static_cast<std::size_t>(max_arity));
    seen_small_.resize(static_cast<std::size_t>(max_arity));
    seen_large_.resize(static_cast<std::size_t>(max_arity));
    for (int n = 1; n <= max_arity; ++n) {
        std::size_t tsize = Operation::table_size_check(dom, n);
        if (tsize * 2 > 64 && saturating_table_space(dom.k, tsize) >= (std::uint64_t{1} << 62))
            throw std::invalid_argument(
                "BoundedClone: table codes do not fit 64 bits at arity " + std::to_string(n));
        std::uint64_t space = saturating_table_space(dom.k, tsize);
        space_.push_back(space);
        if (space <= kBitsetLimit)
            seen_small_[static_cast<std::size_t>(n - 1)] = Bitset(space);
    }
}

std::uint64_t BoundedClone::table_space(int arity) const {
    return space_[static_cast<std::size_t>(arity - 1)];
}

std::uint64_t BoundedClone::encode(const Operation& op) const {
    std::uint64_t code = 0;
    for (auto v : op.table()) code = code * static_cast<std::uint64_t>(dom_.k) + v;
    return code;
}

Operation BoundedClone::decode(int arity, std::uint64_t code) const {
    std::size_t tsize = Operation::table_size_check(dom_, arity);
    std::vector<std::uint8_t> table(tsize);
    for (std::size_t i = tsize; i-- > 0;) {
        table[i] = static_cast<std::uint8_t>(code % static_cast<std::uint64_t>(dom_.k));
        code /= static_cast<std::uint64_t>(dom_.k);
    }
    return Operation(dom_, arity, std::move(table));
}

bool BoundedClone::contains_code(int arity, std::uint64_t code) const {
    const std::size_t a = static_cast<std::size_t>(arity - 1);
    if (space_[a] <= kBitsetLimit) return seen_small_[a].test(code);
    return seen_large_[a].count(code) > 0;
}

bool BoundedClone::contains(const Operation& op) const {
    if (op.domain() != dom_ || op.arity() > max_arity_) return false;
    return contains_code(op.arity(), encode(op));
}

bool BoundedClone::insert_code(int arity, std::uint64_t code) {
    const std::size_t a = static_cast<std::size_t>(arity - 1);
    if (space_[a] <= kBitsetLimit) {
        if (seen_small_[a].test(code)) return false;
        seen_small_[a].set(code);
    } else {
        if (!seen_large_[a].insert(code).second) return false;
    }
    members_[a].push_back(code);
    return true;
}

bool BoundedClone::insert(const Operation& op) {
    if (op.domain() != dom_) throw std::invalid_argument("BoundedClone: domain mismatch");
    if (op.arity() > max_arity_)
        throw std::invalid_argument("BoundedClone: operation arity exceeds bound");
    return insert_code(op.arity(), encode(op));
}

std::size_t BoundedClone::count(int arity) const {
    return members_[static_cast<std::size_t>(arity - 1)].size();
}

std::size_t BoundedClone::total_count() const {
    std::size_t total = 0;
    for (const auto& m : members_) total += m.size();
    return total;
}

const std::vector<std::uint64_t>& BoundedClone::codes(int arity) const {
    return members_[static_cast<std::size_t>(arity - 1)];
}

void BoundedClone::normalize() {
    for (auto& m : members_) std::sort(m.begin(), m.end());
}

bool BoundedClone::same_members(const BoundedClone& other) const {
    if (dom_ != other.dom_ || max_arity_ != other.max_arity_) return false;
    for (int n = 1; n <= max_arity_; ++n) {
        auto a = codes(n);
        auto b = other.codes(n);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

ClosureResult bounded_closure(Domain dom, const std::vector<Operation>& gens, int max_arity,
                              std::uint64_t budget) {
    for (const auto& g : gens) {
        if (g.domain() != dom) throw std::invalid_argument("bounded_closure: mixed domains");
        if (g.arity() > max_arity)
            throw std::invalid_argument("bounded_closure: generator arity exceeds bound");
    }
    ClosureResult result{BoundedClone(dom, max_arity)};
    BoundedClone& clone = result.clone;

    // seed: projections of every arity <= bound, then the generators
    std::vector<std::pair<int, std::uint64_t>> frontier;
    auto add = [&](const Operation& op) {
        std::uint64_t code = clone.encode(op);
        if (clone.insert_code(op.arity(), code)) frontier.emplace_back(op.arity(), code);
    };
    for (int n = 1; n <= max_arity; ++n)
        for (int i = 1; i <= n; ++i) add(Operation::projection(dom, n, i));
    for (const auto& g : gens) add(g);

    auto all_full = [&] {
        for (int n = 1; n <= max_arity; ++n)
            if (static_cast<std::uint64_t>(clone.count(n)) < clone.table_space(n)) return false;
        return true;
    };

    const int k = dom.k;
    bool budget_hit = false;
    while (!frontier.empty() && !budget_hit) {
        if (all_full()) {
            result.everything = true;
            break;
        }
        std::vector<std::pair<int, std::uint64_t>> fresh;
        // snapshot of current members per arity
        std::vector<std::vector<std::uint64_t>> snapshot;
        for (int n = 1; n <= max_arity; ++n) snapshot.push_back(clone.codes(n));

        // mark frontier codes for the "at least one new participant" rule
        std::vector<std::unordered_set<std::uint64_t>> is_new(
            static_cast<std::size_t>(max_arity));
        for (const auto& [a, c] : frontier) is_new[static_cast<std::size_t>(a - 1)].insert(c);

        auto emit = [&](int arity, std::uint64_t code) {
            if (clone.insert_code(arity, code)) fresh.emplace_back(arity, code);
        };

        // compose g (arity mm) with an mm-vector of arity-nn members
        for (int mm = 1; mm <= max_arity && !budget_hit; ++mm) {
            for (int nn = 1; nn <= max_arity && !budget_hit; ++nn) {
                const auto& outer = snapshot[static_cast<std::size_t>(mm - 1)];
                const auto& inner = snapshot[static_cast<std::size_t>(nn - 1)];
                if (outer.empty() || inner.empty()) continue;
                const std::size_t in_size = Operation::table_size_check(dom, nn);
                // decoded inner tables
                std::vector<std::vector<std::uint8_t>> in_tabs;
                in_tabs.reserve(inner.size());
                for (auto c : inner)
                    in_tabs.push_back(clone.decode(nn, c).table());
                std::vector<std::vector<std::uint8_t>> out_tabs;
                out_tabs.reserve(outer.size());
                for (auto c : outer)
                    out_tabs.push_back(clone.decode(mm, c).table());

                std::vector<std::size_t> sel(static_cast<std::size_t>(mm), 0);
                std::vector<std::uint8_t> composed(in_size);
                for (std::size_t oi = 0; oi < outer.size() && !budget_hit; ++oi) {
                    bool outer_new =
                        is_new[static_cast<std::size_t>(mm - 1)].count(outer[oi]) > 0;
                    std::fill(sel.begin(), sel.end(), 0);
                    while (true) {
                        bool any_new = outer_new;
                        for (std::size_t p = 0; p < sel.size() && !any_new; ++p)
                            any_new =
                                is_new[static_cast<std::size_t>(nn - 1)].count(inner[sel[p]]) > 0;
                        if (any_new) {
                            if (++result.compositions > budget) {
                                budget_hit = true;
                                break;
                            }
                            const auto& gt = out_tabs[oi];
                            for (std::size_t x = 0; x < in_size; ++x) {
                                std::size_t rank = 0;
                                for (std::size_t p = 0; p < sel.size(); ++p)
                                    rank = rank * static_cast<std::size_t>(k) +
                                           in_tabs[sel[p]][x];
                                composed[x] = gt[rank];
                            }
                            std::uint64_t code = 0;
                            for (auto v : composed)
                                code = code * static_cast<std::uint64_t>(k) + v;
                            emit(nn, code);
                            if ((result.compositions & 0xfff) == 0 && all_full()) {
                                result.everything = true;
                                budget_hit = false;
                                goto done;
                            }
                        }
                        // advance selection odometer
                        bool adv = false;
                        for (std::size_t p = sel.size(); p-- > 0;) {
                            if (++sel[p] < inner.size()) {
                                adv = true;
                                break;
                            }
                            sel[p] = 0;
                        }
                        if (!adv) break;
                    }
                }
            }
        }
        frontier = std::move(fresh);
        if (all_full()) {
            result.everything = true;
            break;
        }
    }
done:
    result.fixpoint = !budget_hit;
    clone.normalize();
    return result;
}

BoundedClone bounded_pol(const std::vector<Relation>& rels, int max_arity,
                         std::uint64_t member_budget) {
    if (rels.empty()) throw std::invalid_argument("bounded_pol: no relations");
    Domain dom = rels.front().domain();
    for (const auto& r : rels)
        if (r.domain() != dom) throw std::invalid_argument("bounded_pol: mixed domains");
    BoundedClone clone(dom, max_arity);
    // reuse the separator machinery: enumerate preserving tables in lex order
    // via a query with an unsatisfiable violate set, collecting every leaf
    for (int n = 1; n <= max_arity; ++n) {
        std::size_t tsize = Operation::table_size_check(dom, n);
        std::vector<std::uint8_t> table(tsize, 0);
        // plain DFS with incremental preservation pruning
        struct Constraint {
            const Bitset* bits;
            std::vector<std::uint32_t> rows;
        };
        std::vector<std::vector<Constraint>> buckets(tsize);
        for (const auto& rel : rels) {
            if (rel.is_full() || rel.is_empty()) continue;
            const int h = rel.arity();
            const auto mem = rel.member_tuples_flat();
            const std::size_t cnt = mem.size() / static_cast<std::size_t>(h);
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            while (true) {
                Constraint c;
                c.bits = &rel.bits();
                std::uint32_t max_row = 0;
                for (int i = 0; i < h; ++i) {
                    std::size_t row = 0;
                    for (int j = 0; j < n; ++j)
                        row = row * static_cast<std::size_t>(dom.k) +
                              mem[idx[static_cast<std::size_t>(j)] * static_cast<std::size_t>(h) +
                                  static_cast<std::size_t>(i)];
                    c.rows.push_back(static_cast<std::uint32_t>(row));
                    max_row = std::max(max_row, static_cast<std::uint32_t>(row));
                }
                buckets[max_row].push_back(std::move(c));
                bool adv = false;
                for (std::size_t j = idx.size(); j-- > 0;) {
                    if (++idx[j] < cnt) {
                        adv = true;
                        break;
                    }
                    idx[j] = 0;
                }
                if (!adv) break;
            }
        }
        std::uint64_t members = 0;
        std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
            if (depth == tsize) {
                if (++members > member_budget)
                    throw BudgetError("bounded_pol: member budget exceeded at arity " +
                                      std::to_string(n));
                std::uint64_t code = 0;
                for (auto v : table) code = code * static_cast<std::uint64_t>(dom.k) + v;
                clone.insert_code(n, code);
                return;
            }
            for (int v = 0; v < dom.k; ++v) {
                table[depth] = static_cast<std::uint8_t>(v);
                bool ok = true;
                for (const auto& c : buckets[depth]) {
                    std::size_t img = 0;
                    for (auto row : c.rows)
                        img = img * static_cast<std::size_t>(dom.k) + table[row];
                    if (!c.bits->test(img)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) dfs(depth + 1);
            }
        };
        dfs(0);
    }
    clone.normalize();
    return clone;
}

SaturationReport saturation_probe(const CentralRelation& rho, const CentralRelation& sigma,
                                  int max_arity, std::uint64_t budget) {
    SaturationReport report;
    report.caveat =
        "consistency evidence only: bounded closure under-approximates clone generation "
        "(compositions may route through arities above the bound)";
    BoundedClone p_rho = bounded_pol({rho.rel()}, max_arity);
    BoundedClone p_both = bounded_pol({rho.rel(), sigma.rel()}, max_arity);

    std::vector<Operation> seed;
    for (int n = 1; n <= max_arity; ++n)
        for (auto c : p_both.codes(n)) seed.push_back(p_both.decode(n, c));

    report.all_saturated = true;
    const int gap_max_arity = std::min(max_arity, 2);
    for (int n = 1; n <= gap_max_arity; ++n) {
        for (auto c : p_rho.codes(n)) {
            if (p_both.contains_code(n, c)) continue;
            ++report.gap_size;
            std::vector<Operation> gens = seed;
            gens.push_back(p_rho.decode(n, c));
            ClosureResult closed = bounded_closure(rho.domain(), gens, max_arity, budget);
            SaturationRow row;
            row.arity = n;
            row.g_code = c;
            row.budget_limited = !closed.fixpoint;
            row.saturated = true;
            for (int a = 1; a <= max_arity; ++a)
                if (closed.clone.count(a) != p_rho.count(a)) row.saturated = false;
            report.rows.push_back(row);
            if (!row.saturated) report.all_saturated = false;
            if (row.budget_limited) report.any_budget_limited = true;
        }
    }
    if (report.gap_size == 0) report.all_saturated = true;  // vacuous
    return report;
}

}  // namespace submax
