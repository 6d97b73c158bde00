#include "submax/reference.hpp"

#include <functional>

namespace submax::reference {

namespace {

std::vector<std::vector<int>> all_tuples(int k, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int a = 0; a < k; ++a) {
            cur.push_back(a);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

std::vector<std::vector<int>> increasing_combos(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

// index tuples over {1..n}^r, repeats allowed
std::vector<std::vector<int>> index_tuples(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int i = 1; i <= n; ++i) {
            cur.push_back(i);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

bool has(const TupleSet& s, const std::vector<int>& t) { return s.count(t) > 0; }

}  // namespace

bool naive_preserves(const Operation& f, const Relation& rel) {
    const int k = rel.k();
    const int h = rel.arity();
    const int n = f.arity();
    TupleSet members = to_tuple_set(rel);
    // every selection of n columns from A^h, members only
    std::vector<std::vector<int>> columns;
    std::function<bool(int)> pick = [&](int slot) -> bool {
        if (slot == n) {
            std::vector<int> image;
            for (int i = 0; i < h; ++i) {
                std::vector<int> row;
                for (int j = 0; j < n; ++j)
                    row.push_back(columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
                image.push_back(f.apply(row));
            }
            return has(members, image);
        }
        for (const auto& t : all_tuples(k, h)) {
            if (!has(members, t)) continue;
            columns.push_back(t);
            bool ok = pick(slot + 1);
            columns.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    return pick(0);
}

TupleSet to_tuple_set(const Relation& rel) {
    TupleSet out;
    for (const auto& t : rel.member_tuples()) out.insert(t);
    return out;
}

bool tuple_sets_equal(const Relation& fast, const TupleSet& slow) {
    return to_tuple_set(fast) == slow;
}

TupleSet slow_tau(const Relation& rho, const Relation& sigma) {
    const int k = rho.k();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    for (int y = 0; y < k; ++y)
        for (int u = 0; u < k; ++u)
            if (has(ssig, {u}) && has(srho, {u, y})) out.insert({y});
    return out;
}

TupleSet slow_gamma_binary(const Relation& rho, const Relation& sigma) {
    const int k = rho.k();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int u = 0; u < k; ++u)
                if (has(ssig, {u}) && has(srho, {a, u}) && has(srho, {b, u})) out.insert({a, b});
    return out;
}

TupleSet slow_gamma_t(const Relation& rho, const Relation& sigma, int t) {
    const int k = rho.k();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    for (const auto& a : all_tuples(k, t))
        for (int u = 0; u < k; ++u) {
            if (!has(ssig, {u})) continue;
            bool ok = true;
            for (int i = 0; i < t && ok; ++i)
                if (!has(srho, {a[static_cast<std::size_t>(i)], u})) ok = false;
            if (ok) {
                out.insert(a);
                break;
            }
        }
    return out;
}

TupleSet slow_rho_l(const Relation& rho, int l) {
    const int k = rho.k();
    TupleSet srho = to_tuple_set(rho), out;
    for (const auto& a : all_tuples(k, l)) {
        bool ok = true;
        for (int i = 0; i < l && ok; ++i)
            for (int j = 0; j < l && ok; ++j)
                if (!has(srho, {a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]}))
                    ok = false;
        if (ok) out.insert(a);
    }
    return out;
}

TupleSet slow_alpha_n(const Relation& rho, const Relation& sigma, int n) {
    const int k = rho.k();
    const int h = rho.arity();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    auto combos = increasing_combos(n, h - 1);
    for (const auto& b : all_tuples(k, n))
        for (int u = 0; u < k; ++u) {
            if (!has(ssig, {u})) continue;
            bool ok = true;
            for (const auto& c : combos) {
                std::vector<int> t{u};
                for (int i : c) t.push_back(b[static_cast<std::size_t>(i - 1)]);
                if (!has(srho, t)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out.insert(b);
                break;
            }
        }
    return out;
}

TupleSet slow_beta_chain(const Relation& rho, const Relation& sigma, int j) {
    const int k = rho.k();
    const int h = rho.arity();
    const int arity = j * (h - 1) + 1;
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    for (const auto& b : all_tuples(k, arity))
        for (int u = 0; u < k; ++u) {
            if (!has(ssig, {u})) continue;
            bool ok = true;
            for (int p = 1; p <= j && ok; ++p) {
                std::vector<int> t{u};
                for (int pos = (p - 1) * (h - 1) + 2; pos <= p * (h - 1) + 1; ++pos)
                    t.push_back(b[static_cast<std::size_t>(pos - 1)]);
                if (!has(srho, t)) ok = false;
            }
            if (ok) {
                out.insert(b);
                break;
            }
        }
    return out;
}

TupleSet slow_alpha1_of(const Relation& gamma) {
    const int k = gamma.k();
    const int h = gamma.arity();
    TupleSet sg = to_tuple_set(gamma), out;
    for (const auto& x : all_tuples(k, h))
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (int i = 1; i < h && ok; ++i) {  // positions 1..h-1 only
                std::vector<int> t = x;
                t[static_cast<std::size_t>(i - 1)] = u;
                if (!has(sg, t)) ok = false;
            }
            if (ok) {
                out.insert(x);
                break;
            }
        }
    return out;
}

TupleSet slow_beta_t(const Relation& rho, const Relation& gamma, int t) {
    const int k = rho.k();
    const int h = rho.arity();
    TupleSet srho = to_tuple_set(rho), sg = to_tuple_set(gamma), out;
    auto combos = increasing_combos(t, h - 1);
    for (const auto& x : all_tuples(k, t))
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (const auto& c : combos) {
                std::vector<int> tg;
                for (int idx = 0; idx < h - 2; ++idx)
                    tg.push_back(x[static_cast<std::size_t>(c[static_cast<std::size_t>(idx)] - 1)]);
                tg.push_back(x[0]);
                tg.push_back(u);
                std::vector<int> tr;
                for (int idx = 0; idx < h - 1; ++idx)
                    tr.push_back(x[static_cast<std::size_t>(c[static_cast<std::size_t>(idx)] - 1)]);
                tr.push_back(u);
                if (!has(sg, tg) || !has(srho, tr)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out.insert(x);
                break;
            }
        }
    return out;
}

TupleSet slow_lambda_pad(const Relation& rho, int s) {
    const int k = rho.k();
    const int h = rho.arity();
    TupleSet srho = to_tuple_set(rho), out;
    for (const auto& a : all_tuples(k, s)) {
        std::vector<int> head(a.begin(), a.begin() + h);
        if (has(srho, head)) out.insert(a);
    }
    return out;
}

TupleSet slow_gamma_prime(const Relation& rho, const Relation& sigma) {
    const int k = rho.k();
    const int h = rho.arity();
    const int s = sigma.arity();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    for (const auto& b : all_tuples(k, s)) {
        std::vector<int> head(b.begin(), b.begin() + h);
        if (has(srho, head) && has(ssig, b)) out.insert(b);
    }
    return out;
}

TupleSet slow_theta_up(const Relation& rho, const Relation& sigma, int t) {
    const int k = rho.k();
    const int h = rho.arity();
    const int s = sigma.arity();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    auto combos = increasing_combos(t, h - 1);
    for (const auto& a : all_tuples(k, t))
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (const auto& c : combos) {
                std::vector<int> tr;
                for (int i : c) tr.push_back(a[static_cast<std::size_t>(i - 1)]);
                tr.push_back(u);
                if (!has(srho, tr)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                std::vector<int> ts = a;
                for (int pad = 0; pad < s - t; ++pad) ts.push_back(u);
                if (!has(ssig, ts)) ok = false;
            }
            if (ok) {
                out.insert(a);
                break;
            }
        }
    return out;
}

TupleSet slow_theta_down(const Relation& rho, const Relation& sigma, int t) {
    const int k = rho.k();
    const int h = rho.arity();
    const int s = sigma.arity();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    auto idxs = index_tuples(t, s - 1);  // repeats allowed, per the displayed formula
    for (const auto& a : all_tuples(k, t))
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (const auto& c : idxs) {
                std::vector<int> ts;
                for (int i : c) ts.push_back(a[static_cast<std::size_t>(i - 1)]);
                ts.push_back(u);
                if (!has(ssig, ts)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                std::vector<int> tr = a;
                for (int pad = 0; pad < h - t; ++pad) tr.push_back(u);
                if (!has(srho, tr)) ok = false;
            }
            if (ok) {
                out.insert(a);
                break;
            }
        }
    return out;
}

TupleSet slow_gamma_s(const Relation& rho, const Relation& sigma) {
    const int k = rho.k();
    const int h = rho.arity();
    const int s = sigma.arity();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    auto idxs = index_tuples(s, h - 1);
    for (const auto& x : all_tuples(k, s)) {
        if (!has(ssig, x)) continue;
        bool ok = true;
        for (const auto& c : idxs) {
            for (int lead = 0; lead < 2 && ok; ++lead) {
                std::vector<int> t{x[static_cast<std::size_t>(lead)]};
                for (int i : c) t.push_back(x[static_cast<std::size_t>(i - 1)]);
                if (!has(srho, t)) ok = false;
            }
            if (!ok) break;
        }
        if (ok) out.insert(x);
    }
    return out;
}

TupleSet slow_gamma_prime_t(const Relation& rho, const Relation& sigma, int t) {
    const int k = rho.k();
    const int h = rho.arity();
    const int s = sigma.arity();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    auto idxs = index_tuples(s, s - 1);  // literal: indices range over s, not t
    for (const auto& x : all_tuples(k, t))
        for (int v = 0; v < k; ++v) {
            bool ok = true;
            for (const auto& c : idxs) {
                std::vector<int> tr;
                for (int idx = 0; idx < h - 1; ++idx)
                    tr.push_back(x[static_cast<std::size_t>(c[static_cast<std::size_t>(idx)] - 1)]);
                tr.push_back(v);
                std::vector<int> ts;
                for (int idx = 0; idx < s - 1; ++idx)
                    ts.push_back(x[static_cast<std::size_t>(c[static_cast<std::size_t>(idx)] - 1)]);
                ts.push_back(v);
                if (!has(srho, tr) || !has(ssig, ts)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out.insert(x);
                break;
            }
        }
    return out;
}

TupleSet slow_gamma_prime_h(const Relation& rho, const Relation& sigma) {
    const int k = rho.k();
    const int h = rho.arity();
    const int s = sigma.arity();
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    auto idxs = index_tuples(h, s - 1);
    for (const auto& b : all_tuples(k, h))
        for (int v = 0; v < k; ++v) {
            std::vector<int> tr(b.begin() + 1, b.end());
            tr.push_back(v);
            if (!has(srho, tr)) continue;
            bool ok = true;
            for (const auto& c : idxs) {
                std::vector<int> ts;
                for (int i : c) ts.push_back(b[static_cast<std::size_t>(i - 1)]);
                ts.push_back(v);
                if (!has(ssig, ts)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out.insert(b);
                break;
            }
        }
    return out;
}

TupleSet slow_gamma_prime_chain(const Relation& rho, const Relation& sigma, int n) {
    const int k = rho.k();
    const int h = rho.arity();
    const int s = sigma.arity();
    const int arity = n * (h - 1) + 1;
    TupleSet srho = to_tuple_set(rho), ssig = to_tuple_set(sigma), out;
    auto idxs = index_tuples(arity, s - 1);
    for (const auto& b : all_tuples(k, arity))
        for (int v = 0; v < k; ++v) {
            bool ok = true;
            for (int p = 1; p <= n && ok; ++p) {
                std::vector<int> tr;
                for (int pos = (p - 1) * (h - 1) + 2; pos <= p * (h - 1) + 1; ++pos)
                    tr.push_back(b[static_cast<std::size_t>(pos - 1)]);
                tr.push_back(v);
                if (!has(srho, tr)) ok = false;
            }
            for (std::size_t ci = 0; ci < idxs.size() && ok; ++ci) {
                std::vector<int> ts;
                for (int i : idxs[ci]) ts.push_back(b[static_cast<std::size_t>(i - 1)]);
                ts.push_back(v);
                if (!has(ssig, ts)) ok = false;
            }
            if (ok) {
                out.insert(b);
                break;
            }
        }
    return out;
}

}  // namespace submax::reference
