#include "submax/polycheck.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace submax {

namespace {

void check_same_domain(const Operation& f, const Relation& rel) {
    if (f.domain() != rel.domain())
        throw std::invalid_argument("operation and relation domains differ");
}

// Advance an odometer of `n` digits in [0, base); returns false on wrap.
bool advance(std::vector<std::size_t>& idx, std::size_t base) {
    for (std::size_t j = idx.size(); j-- > 0;) {
        if (++idx[j] < base) return true;
        idx[j] = 0;
    }
    return false;
}

bool image_in_relation(const Operation& f, const Relation& rel,
                       const std::vector<std::uint8_t>& mem, std::span<const std::size_t> idx) {
    const int h = rel.arity();
    const int n = f.arity();
    const int k = rel.k();
    std::size_t img = 0;
    for (int i = 0; i < h; ++i) {
        std::size_t row = 0;
        for (int j = 0; j < n; ++j)
            row = row * static_cast<std::size_t>(k) +
                  mem[idx[static_cast<std::size_t>(j)] * static_cast<std::size_t>(h) +
                      static_cast<std::size_t>(i)];
        img = img * static_cast<std::size_t>(k) + f.value_at(row);
    }
    return rel.contains_rank(img);
}

}  // namespace

bool preserves(const Operation& f, const Relation& rel) {
    check_same_domain(f, rel);
    if (rel.is_full()) return true;
    const auto mem = rel.member_tuples_flat();
    const std::size_t cnt = mem.size() / static_cast<std::size_t>(rel.arity());
    if (cnt == 0) return true;
    std::vector<std::size_t> idx(static_cast<std::size_t>(f.arity()), 0);
    do {
        if (!image_in_relation(f, rel, mem, idx)) return false;
    } while (advance(idx, cnt));
    return true;
}

bool preserves_parallel(const Operation& f, const Relation& rel) {
    check_same_domain(f, rel);
    if (rel.is_full()) return true;
    const auto mem = rel.member_tuples_flat();
    const std::size_t cnt = mem.size() / static_cast<std::size_t>(rel.arity());
    if (cnt == 0) return true;
    const int n = f.arity();
    if (n == 1 || cnt < 8) return preserves(f, rel);

    std::atomic<bool> ok{true};
#pragma omp parallel for schedule(dynamic)
    for (long long first = 0; first < static_cast<long long>(cnt); ++first) {
        if (!ok.load(std::memory_order_relaxed)) continue;
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        idx[0] = static_cast<std::size_t>(first);
        bool local_ok = true;
        // inner odometer over the remaining n-1 positions
        while (local_ok) {
            if (!image_in_relation(f, rel, mem, idx)) {
                local_ok = false;
                break;
            }
            bool carried = false;
            for (std::size_t j = idx.size(); j-- > 1;) {
                if (++idx[j] < cnt) {
                    carried = true;
                    break;
                }
                idx[j] = 0;
            }
            if (!carried) break;
            if (!ok.load(std::memory_order_relaxed)) break;
        }
        if (!local_ok) ok.store(false, std::memory_order_relaxed);
    }
    return ok.load();
}

bool in_pol(const Operation& f, std::span<const Relation> rels) {
    for (const auto& r : rels)
        if (!preserves(f, r)) return false;
    return true;
}

OpEnumerator::OpEnumerator(Domain dom, int n, std::uint64_t guard) : dom_(dom), arity_(n) {
    std::size_t tsize = Operation::table_size_check(dom, n);
    // total = k^tsize with overflow saturation
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < tsize; ++i) {
        if (total > guard / static_cast<std::uint64_t>(dom.k) + 1) {
            total = guard + 1;
            break;
        }
        total *= static_cast<std::uint64_t>(dom.k);
    }
    if (total > guard)
        throw BudgetError("enumerate_ops: k^(k^n) exceeds enumeration budget for k=" +
                          std::to_string(dom.k) + ", n=" + std::to_string(n));
    total_ = total;
    table_.assign(tsize, 0);
}

std::optional<Operation> OpEnumerator::next() {
    if (produced_ >= total_) return std::nullopt;
    if (produced_ > 0) {
        // lexicographic order: table_[0] is most significant
        for (std::size_t j = table_.size(); j-- > 0;) {
            if (++table_[j] < dom_.k) break;
            table_[j] = 0;
        }
    }
    ++produced_;
    return Operation(dom_, arity_, table_);
}

namespace {

// One preservation constraint for a fixed arity n: a column selection of
// member tuples, reduced to the h input ranks it touches. The image must be
// a member. Constraints are bucketed by their largest input rank so each is
// checked exactly once, as soon as its last input is assigned.
struct SepContext {
    int k = 0;
    std::size_t tsize = 0;
    std::vector<const Bitset*> pre_bits;
    std::vector<const Bitset*> vio_bits;
    // flat encoding: [rel_id, h, rows...]
    std::vector<std::uint32_t> pre_data, vio_data;
    std::vector<std::vector<std::uint32_t>> pre_bucket, vio_bucket;  // offsets by depth
    std::vector<int> vio_count;
    std::vector<std::vector<int>> vio_undo;  // per-depth list of violated rel ids
    std::vector<std::uint8_t> table;
    std::uint64_t leaves = 0;
    std::uint64_t node_cap = 0;
    std::uint64_t nodes = 0;
    std::uint64_t budget = 0;
    bool budget_hit = false;
};

constexpr std::size_t kMaxConstraints = 10'000'000;

void build_constraints(const std::vector<Relation>& rels, int n, int k,
                       std::vector<const Bitset*>& bits_out, std::vector<std::uint32_t>& data,
                       std::vector<std::vector<std::uint32_t>>& bucket) {
    for (std::size_t rid = 0; rid < rels.size(); ++rid) {
        const Relation& rel = rels[rid];
        bits_out.push_back(&rel.bits());
        if (rel.is_full() || rel.is_empty()) continue;  // never constrains / never satisfiable
        const int h = rel.arity();
        const auto mem = rel.member_tuples_flat();
        const std::size_t cnt = mem.size() / static_cast<std::size_t>(h);
        std::uint64_t combos = 1;
        for (int j = 0; j < n; ++j) {
            combos *= cnt;
            if (combos > kMaxConstraints)
                throw BudgetError("find_separator: constraint set too large at arity " +
                                  std::to_string(n));
        }
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        do {
            std::uint32_t max_row = 0;
            std::size_t off = data.size();
            data.push_back(static_cast<std::uint32_t>(rid));
            data.push_back(static_cast<std::uint32_t>(h));
            for (int i = 0; i < h; ++i) {
                std::size_t row = 0;
                for (int j = 0; j < n; ++j)
                    row = row * static_cast<std::size_t>(k) +
                          mem[idx[static_cast<std::size_t>(j)] * static_cast<std::size_t>(h) +
                              static_cast<std::size_t>(i)];
                data.push_back(static_cast<std::uint32_t>(row));
                max_row = std::max(max_row, static_cast<std::uint32_t>(row));
            }
            bucket[max_row].push_back(static_cast<std::uint32_t>(off));
        } while (advance(idx, cnt));
    }
}

bool constraint_image_member(const SepContext& ctx, const std::vector<std::uint32_t>& data,
                             std::uint32_t off, const std::vector<const Bitset*>& bits) {
    const std::uint32_t rid = data[off];
    const std::uint32_t h = data[off + 1];
    std::size_t img = 0;
    for (std::uint32_t i = 0; i < h; ++i)
        img = img * static_cast<std::size_t>(ctx.k) + ctx.table[data[off + 2 + i]];
    return bits[rid]->test(img);
}

// Depth-first assignment of table entries in rank order, values ascending.
// Leaves are reached in exact lexicographic order among preserving tables.
bool separator_dfs(SepContext& ctx, std::size_t depth) {
    if (depth == ctx.tsize) {
        if (++ctx.leaves > ctx.budget) {
            ctx.budget_hit = true;
            return false;
        }
        for (int c : ctx.vio_count)
            if (c > 0) return true;
        // all-zero counters can only mean every violate relation is preserved
        // unless some violate relation has no constraints at all (full), which
        // build_constraints already excluded as unsatisfiable
        return false;
    }
    for (int v = 0; v < ctx.k; ++v) {
        ctx.table[depth] = static_cast<std::uint8_t>(v);
        if (++ctx.nodes > ctx.node_cap) {
            ctx.budget_hit = true;
            return false;
        }
        bool ok = true;
        for (std::uint32_t off : ctx.pre_bucket[depth])
            if (!constraint_image_member(ctx, ctx.pre_data, off, ctx.pre_bits)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        auto& undo = ctx.vio_undo[depth];
        undo.clear();
        for (std::uint32_t off : ctx.vio_bucket[depth])
            if (!constraint_image_member(ctx, ctx.vio_data, off, ctx.vio_bits)) {
                int rid = static_cast<int>(ctx.vio_data[off]);
                ++ctx.vio_count[static_cast<std::size_t>(rid)];
                undo.push_back(rid);
            }
        if (separator_dfs(ctx, depth + 1)) return true;
        for (int rid : undo) --ctx.vio_count[static_cast<std::size_t>(rid)];
        if (ctx.budget_hit) return false;
    }
    return false;
}

}  // namespace

SeparatorResult find_separator(const OpQuery& query) {
    if (query.max_arity < 1) throw std::invalid_argument("find_separator: max_arity must be >= 1");
    if (query.budget == 0) throw std::invalid_argument("find_separator: budget must be > 0");
    std::optional<Domain> dom;
    for (const auto& r : query.preserve) {
        if (!dom) dom = r.domain();
        if (r.domain() != *dom) throw std::invalid_argument("find_separator: mixed domains");
    }
    for (const auto& r : query.violate) {
        if (!dom) dom = r.domain();
        if (r.domain() != *dom) throw std::invalid_argument("find_separator: mixed domains");
    }
    if (!dom) throw std::invalid_argument("find_separator: no relations given");

    SeparatorResult result{SearchStatus::ExhaustedNegative, std::nullopt, 0, 0};
    for (int n = 1; n <= query.max_arity; ++n) {
        SepContext ctx;
        ctx.k = dom->k;
        ctx.tsize = Operation::table_size_check(*dom, n);
        ctx.table.assign(ctx.tsize, 0);
        ctx.pre_bucket.assign(ctx.tsize, {});
        ctx.vio_bucket.assign(ctx.tsize, {});
        ctx.vio_undo.assign(ctx.tsize, {});
        ctx.budget = query.budget;
        ctx.node_cap = query.budget * 64;
        build_constraints(query.preserve, n, ctx.k, ctx.pre_bits, ctx.pre_data, ctx.pre_bucket);
        build_constraints(query.violate, n, ctx.k, ctx.vio_bits, ctx.vio_data, ctx.vio_bucket);
        ctx.vio_count.assign(query.violate.size(), 0);

        bool found = separator_dfs(ctx, 0);
        result.tables_examined += ctx.leaves;
        result.last_arity = n;
        if (found) {
            result.status = SearchStatus::Found;
            result.op = Operation(*dom, n, ctx.table);
            return result;
        }
        if (ctx.budget_hit) {
            result.status = SearchStatus::BudgetExhausted;
            return result;
        }
    }
    result.status = SearchStatus::ExhaustedNegative;
    return result;
}

}  // namespace submax
