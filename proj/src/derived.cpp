#include "submax/derived.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace submax {

namespace {

constexpr int kMaxArity = 16;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void require_same_domain(const Relation& a, const Relation& b) {
    require(a.domain() == b.domain(), "derived: domain mismatch");
}

// Evaluates pred over every rank of a fresh arity-`arity` relation on E_k.
// Parallel over 64-bit word blocks; block-local writes keep it race-free and
// deterministic.
template <typename Pred>
Relation build_relation(Domain dom, int arity, Pred&& pred) {
    std::size_t nbits = Relation::universe_check(dom, arity);
    Bitset out(nbits);
    const long long nwords = static_cast<long long>(out.num_words());
#pragma omp parallel for schedule(static)
    for (long long w = 0; w < nwords; ++w) {
        std::uint64_t word = 0;
        const std::size_t base = static_cast<std::size_t>(w) << 6;
        const std::size_t end = std::min(nbits, base + 64);
        int tup[kMaxArity];
        for (std::size_t r = base; r < end; ++r) {
            tuple_decode(dom.k, arity, r, std::span<int>(tup, static_cast<std::size_t>(arity)));
            if (pred(std::span<const int>(tup, static_cast<std::size_t>(arity))))
                word |= std::uint64_t{1} << (r - base);
        }
        out.set_word(static_cast<std::size_t>(w), word);
    }
    return Relation(dom, arity, std::move(out));
}

// Strictly increasing r-subsets of {0..n-1}, flattened with stride r.
std::vector<int> increasing_selections(int n, int r) {
    std::vector<int> out;
    std::vector<int> cur(static_cast<std::size_t>(r));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == r) {
            out.insert(out.end(), cur.begin(), cur.end());
            return;
        }
        for (int i = start; i < n; ++i) {
            cur[static_cast<std::size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (r == 0)
        out = {};
    else
        rec(0, 0);
    return out;
}

// All r-tuples over {0..n-1} (repeats allowed), flattened with stride r.
std::vector<int> repeat_selections(int n, int r) {
    std::vector<int> out;
    std::vector<int> cur(static_cast<std::size_t>(r));
    std::function<void(int)> rec = [&](int depth) {
        if (depth == r) {
            out.insert(out.end(), cur.begin(), cur.end());
            return;
        }
        for (int i = 0; i < n; ++i) {
            cur[static_cast<std::size_t>(depth)] = i;
            rec(depth + 1);
        }
    };
    if (r == 0)
        out = {};
    else
        rec(0);
    return out;
}

std::vector<int> selections(int n, int r, bool strict) {
    return strict ? increasing_selections(n, r) : repeat_selections(n, r);
}

bool mode_strict(IndexMode mode, bool literal_strict) {
    switch (mode) {
        case IndexMode::Literal: return literal_strict;
        case IndexMode::Strict: return true;
        case IndexMode::Repeats: return false;
    }
    return literal_strict;
}

bool member1(const Relation& rel, int a) {
    return rel.contains_rank(static_cast<std::size_t>(a));
}

bool member2(const Relation& rel, int a, int b) {
    return rel.contains_rank(static_cast<std::size_t>(a) * static_cast<std::size_t>(rel.k()) +
                             static_cast<std::size_t>(b));
}

}  // namespace

const char* index_mode_name(IndexMode m) {
    switch (m) {
        case IndexMode::Literal: return "literal";
        case IndexMode::Strict: return "strict";
        case IndexMode::Repeats: return "repeats";
    }
    return "?";
}

IndexMode index_mode_from_name(const std::string& name) {
    if (name == "literal") return IndexMode::Literal;
    if (name == "strict") return IndexMode::Strict;
    if (name == "repeats") return IndexMode::Repeats;
    throw std::invalid_argument("unknown index mode: " + name);
}

Relation tau(const Relation& rho, const Relation& sigma) {
    require_same_domain(rho, sigma);
    require(rho.arity() == 2, "tau: rho must be binary");
    require(sigma.arity() == 1, "tau: sigma must be unary");
    const int k = rho.k();
    return build_relation(rho.domain(), 1, [&](std::span<const int> t) {
        for (int u = 0; u < k; ++u)
            if (member1(sigma, u) && member2(rho, u, t[0])) return true;
        return false;
    });
}

Relation gamma_binary(const Relation& rho, const Relation& sigma) {
    require_same_domain(rho, sigma);
    require(rho.arity() == 2, "gamma: rho must be binary");
    require(sigma.arity() == 1, "gamma: sigma must be unary");
    const int k = rho.k();
    return build_relation(rho.domain(), 2, [&](std::span<const int> t) {
        for (int u = 0; u < k; ++u)
            if (member1(sigma, u) && member2(rho, t[0], u) && member2(rho, t[1], u)) return true;
        return false;
    });
}

Relation gamma_t(const Relation& rho, const Relation& sigma, int t) {
    require_same_domain(rho, sigma);
    require(rho.arity() == 2, "gamma_t: rho must be binary");
    require(sigma.arity() == 1, "gamma_t: sigma must be unary");
    require(t >= 2 && t <= rho.k(), "gamma_t: need 2 <= t <= k");
    const int k = rho.k();
    return build_relation(rho.domain(), t, [&](std::span<const int> a) {
        for (int u = 0; u < k; ++u) {
            if (!member1(sigma, u)) continue;
            bool ok = true;
            for (int i = 0; i < t && ok; ++i)
                if (!member2(rho, a[static_cast<std::size_t>(i)], u)) ok = false;
            if (ok) return true;
        }
        return false;
    });
}

int max_chain_size(const Relation& rho) {
    require(rho.arity() == 2, "max_chain_size: rho must be binary");
    const int k = rho.k();
    require(k <= 24, "max_chain_size: domain too large");
    int best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<int> b;
        for (int a = 0; a < k; ++a)
            if (mask & (std::uint64_t{1} << a)) b.push_back(a);
        if (static_cast<int>(b.size()) <= best) continue;
        bool ok = true;
        for (std::size_t i = 0; i < b.size() && ok; ++i)
            for (std::size_t j = 0; j < b.size() && ok; ++j)
                if (!member2(rho, b[i], b[j])) ok = false;
        if (ok) best = static_cast<int>(b.size());
    }
    return best;
}

int chain_family_size(const Relation& rho) {
    const int k = rho.k();
    const int h = rho.arity();
    require(h >= 2, "chain_family_size: rho arity must be >= 2");
    auto c = center(rho);
    std::vector<bool> central(static_cast<std::size_t>(k), false);
    for (int a : c) central[static_cast<std::size_t>(a)] = true;
    auto sel = increasing_selections(k, h - 1);
    int cnt = 0;
    for (std::size_t off = 0; off < sel.size(); off += static_cast<std::size_t>(h - 1)) {
        bool hits_center = false;
        for (int i = 0; i < h - 1; ++i)
            if (central[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])])
                hits_center = true;
        if (!hits_center) ++cnt;
    }
    return cnt;
}

Relation rho_l(const Relation& rho, int l) {
    require(rho.arity() == 2, "rho_l: rho must be binary");
    require(l >= 2, "rho_l: need l >= 2");
    require(l <= max_chain_size(rho), "rho_l: l exceeds the maximal chain size");
    return build_relation(rho.domain(), l, [&](std::span<const int> a) {
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                if (!member2(rho, a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]))
                    return false;
        return true;
    });
}

Relation alpha_n(const Relation& rho, const Relation& sigma, int n, IndexMode mode) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    require(h >= 3, "alpha_n: rho arity must be >= 3");
    require(sigma.arity() == 1, "alpha_n: sigma must be unary");
    require(n >= h - 1, "alpha_n: need n >= h-1");
    const int k = rho.k();
    auto sel = selections(n, h - 1, mode_strict(mode, /*literal_strict=*/true));
    const std::size_t stride = static_cast<std::size_t>(h - 1);
    return build_relation(rho.domain(), n, [&](std::span<const int> b) {
        int tup[kMaxArity];
        for (int u = 0; u < k; ++u) {
            if (!member1(sigma, u)) continue;
            bool ok = true;
            for (std::size_t off = 0; off < sel.size() && ok; off += stride) {
                tup[0] = u;
                for (int i = 0; i < h - 1; ++i)
                    tup[i + 1] = b[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                if (!rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h))))
                    ok = false;
            }
            if (ok) return true;
        }
        return false;
    });
}

Relation beta_chain(const Relation& rho, const Relation& sigma, int j) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    require(h >= 3, "beta_chain: rho arity must be >= 3");
    require(sigma.arity() == 1, "beta_chain: sigma must be unary");
    require(j >= 1, "beta_chain: need j >= 1");
    require(j <= chain_family_size(rho), "beta_chain: j exceeds |F|");
    const int k = rho.k();
    const int arity = j * (h - 1) + 1;
    return build_relation(rho.domain(), arity, [&](std::span<const int> b) {
        int tup[kMaxArity];
        for (int u = 0; u < k; ++u) {
            if (!member1(sigma, u)) continue;
            bool ok = true;
            for (int p = 1; p <= j && ok; ++p) {
                tup[0] = u;
                for (int i = 0; i < h - 1; ++i)
                    tup[i + 1] = b[static_cast<std::size_t>((p - 1) * (h - 1) + 1 + i)];
                if (!rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h))))
                    ok = false;
            }
            if (ok) return true;
        }
        return false;
    });
}

namespace {

Relation alpha1_impl(const Relation& gamma, bool include_last_position) {
    require(gamma.arity() >= 2, "alpha1: arity must be >= 2");
    const int h = gamma.arity();
    const int k = gamma.k();
    const int last = include_last_position ? h : h - 1;
    return build_relation(gamma.domain(), h, [&](std::span<const int> x) {
        int tup[kMaxArity];
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (int i = 1; i <= last && ok; ++i) {
                for (int p = 0; p < h; ++p) tup[p] = x[static_cast<std::size_t>(p)];
                tup[i - 1] = u;
                if (!gamma.contains(std::span<const int>(tup, static_cast<std::size_t>(h))))
                    ok = false;
            }
            if (ok) return true;
        }
        return false;
    });
}

}  // namespace

Relation alpha1_of(const Relation& gamma) { return alpha1_impl(gamma, false); }

Relation alpha1_of_all_positions(const Relation& gamma) { return alpha1_impl(gamma, true); }

Relation beta_t(const Relation& rho, const Relation& gamma, int t, IndexMode mode) {
    require_same_domain(rho, gamma);
    const int h = rho.arity();
    require(h >= 2, "beta_t: rho arity must be >= 2");
    require(gamma.arity() == h, "beta_t: gamma arity must equal rho arity");
    require(t >= h, "beta_t: need t >= h");
    const int k = rho.k();
    auto sel = selections(t, h - 1, mode_strict(mode, /*literal_strict=*/true));
    const std::size_t stride = static_cast<std::size_t>(h - 1);
    return build_relation(rho.domain(), t, [&](std::span<const int> x) {
        int tg[kMaxArity];
        int tr[kMaxArity];
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (std::size_t off = 0; off < sel.size() && ok; off += stride) {
                for (int i = 0; i < h - 2; ++i)
                    tg[i] = x[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tg[h - 2] = x[0];
                tg[h - 1] = u;
                for (int i = 0; i < h - 1; ++i)
                    tr[i] = x[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tr[h - 1] = u;
                if (!gamma.contains(std::span<const int>(tg, static_cast<std::size_t>(h))) ||
                    !rho.contains(std::span<const int>(tr, static_cast<std::size_t>(h))))
                    ok = false;
            }
            if (ok) return true;
        }
        return false;
    });
}

Relation lambda_pad(const Relation& rho, int s) {
    const int h = rho.arity();
    require(h >= 2, "lambda: rho arity must be >= 2");
    require(s > h, "lambda: need s > h");
    return build_relation(rho.domain(), s, [&](std::span<const int> a) {
        return rho.contains(a.subspan(0, static_cast<std::size_t>(h)));
    });
}

Relation gamma_prime(const Relation& rho, const Relation& sigma) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    const int s = sigma.arity();
    require(h >= 2 && h < s, "gamma_prime: need 2 <= h < s");
    return build_relation(rho.domain(), s, [&](std::span<const int> b) {
        return rho.contains(b.subspan(0, static_cast<std::size_t>(h))) && sigma.contains(b);
    });
}

Relation theta_up(const Relation& rho, const Relation& sigma, int t, IndexMode mode) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    const int s = sigma.arity();
    require(2 <= h && h < s, "theta_up: need 2 <= h < s");
    require(h <= t && t <= s - 1, "theta_up: need h <= t <= s-1");
    const int k = rho.k();
    auto sel = selections(t, h - 1, mode_strict(mode, /*literal_strict=*/true));
    const std::size_t stride = static_cast<std::size_t>(h - 1);
    return build_relation(rho.domain(), t, [&](std::span<const int> a) {
        int tup[kMaxArity];
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (std::size_t off = 0; off < sel.size() && ok; off += stride) {
                for (int i = 0; i < h - 1; ++i)
                    tup[i] = a[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tup[h - 1] = u;
                if (!rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h))))
                    ok = false;
            }
            if (!ok) continue;
            for (int i = 0; i < t; ++i) tup[i] = a[static_cast<std::size_t>(i)];
            for (int i = t; i < s; ++i) tup[i] = u;
            if (sigma.contains(std::span<const int>(tup, static_cast<std::size_t>(s)))) return true;
        }
        return false;
    });
}

Relation theta_down(const Relation& rho, const Relation& sigma, int t, IndexMode mode) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    const int s = sigma.arity();
    require(2 <= s && s < h, "theta_down: need 2 <= s < h");
    require(s <= t && t <= h - 1, "theta_down: need s <= t <= h-1");
    const int k = rho.k();
    auto sel = selections(t, s - 1, mode_strict(mode, /*literal_strict=*/false));
    const std::size_t stride = static_cast<std::size_t>(s - 1);
    return build_relation(rho.domain(), t, [&](std::span<const int> a) {
        int tup[kMaxArity];
        for (int u = 0; u < k; ++u) {
            bool ok = true;
            for (std::size_t off = 0; off < sel.size() && ok; off += stride) {
                for (int i = 0; i < s - 1; ++i)
                    tup[i] = a[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tup[s - 1] = u;
                if (!sigma.contains(std::span<const int>(tup, static_cast<std::size_t>(s))))
                    ok = false;
            }
            if (!ok) continue;
            for (int i = 0; i < t; ++i) tup[i] = a[static_cast<std::size_t>(i)];
            for (int i = t; i < h; ++i) tup[i] = u;
            if (rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h)))) return true;
        }
        return false;
    });
}

Relation gamma_s_rel(const Relation& rho, const Relation& sigma, IndexMode mode) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    const int s = sigma.arity();
    require(2 <= h && h < s, "gamma_s: need 2 <= h < s");
    auto sel = selections(s, h - 1, mode_strict(mode, /*literal_strict=*/false));
    const std::size_t stride = static_cast<std::size_t>(h - 1);
    return build_relation(rho.domain(), s, [&](std::span<const int> x) {
        if (!sigma.contains(x)) return false;
        int tup[kMaxArity];
        for (std::size_t off = 0; off < sel.size(); off += stride) {
            for (int lead = 0; lead < 2; ++lead) {
                tup[0] = x[static_cast<std::size_t>(lead)];
                for (int i = 0; i < h - 1; ++i)
                    tup[i + 1] = x[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                if (!rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h))))
                    return false;
            }
        }
        return true;
    });
}

Relation gamma_prime_t(const Relation& rho, const Relation& sigma, int t, IndexMode mode) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    const int s = sigma.arity();
    require(2 <= h && h < s, "gamma_prime_t: need 2 <= h < s");
    require(t >= s, "gamma_prime_t: need t >= s");
    const int k = rho.k();
    // The displayed formula quantifies the s-1 indices over {1..s}, not
    // {1..t}; implemented literally (flagged as a suspected typo).
    auto sel = selections(s, s - 1, mode_strict(mode, /*literal_strict=*/false));
    const std::size_t stride = static_cast<std::size_t>(s - 1);
    return build_relation(rho.domain(), t, [&](std::span<const int> x) {
        int tup[kMaxArity];
        for (int v = 0; v < k; ++v) {
            bool ok = true;
            for (std::size_t off = 0; off < sel.size() && ok; off += stride) {
                for (int i = 0; i < h - 1; ++i)
                    tup[i] = x[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tup[h - 1] = v;
                if (!rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h)))) {
                    ok = false;
                    break;
                }
                for (int i = 0; i < s - 1; ++i)
                    tup[i] = x[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tup[s - 1] = v;
                if (!sigma.contains(std::span<const int>(tup, static_cast<std::size_t>(s))))
                    ok = false;
            }
            if (ok) return true;
        }
        return false;
    });
}

Relation gamma_prime_h(const Relation& rho, const Relation& sigma, IndexMode mode) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    const int s = sigma.arity();
    require(2 <= s && s < h, "gamma_prime_h: need 2 <= s < h");
    const int k = rho.k();
    auto sel = selections(h, s - 1, mode_strict(mode, /*literal_strict=*/false));
    const std::size_t stride = static_cast<std::size_t>(s - 1);
    return build_relation(rho.domain(), h, [&](std::span<const int> b) {
        int tup[kMaxArity];
        for (int v = 0; v < k; ++v) {
            for (int i = 1; i < h; ++i) tup[i - 1] = b[static_cast<std::size_t>(i)];
            tup[h - 1] = v;
            if (!rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h)))) continue;
            bool ok = true;
            for (std::size_t off = 0; off < sel.size() && ok; off += stride) {
                for (int i = 0; i < s - 1; ++i)
                    tup[i] = b[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tup[s - 1] = v;
                if (!sigma.contains(std::span<const int>(tup, static_cast<std::size_t>(s))))
                    ok = false;
            }
            if (ok) return true;
        }
        return false;
    });
}

Relation gamma_prime_chain(const Relation& rho, const Relation& sigma, int n, IndexMode mode) {
    require_same_domain(rho, sigma);
    const int h = rho.arity();
    const int s = sigma.arity();
    require(2 <= s && s < h, "gamma_prime_chain: need 2 <= s < h");
    require(n >= 1, "gamma_prime_chain: need n >= 1");
    require(n <= chain_family_size(rho), "gamma_prime_chain: n exceeds |F|");
    const int k = rho.k();
    const int arity = n * (h - 1) + 1;
    auto sel = selections(arity, s - 1, mode_strict(mode, /*literal_strict=*/false));
    const std::size_t stride = static_cast<std::size_t>(s - 1);
    return build_relation(rho.domain(), arity, [&](std::span<const int> b) {
        int tup[kMaxArity];
        for (int v = 0; v < k; ++v) {
            bool ok = true;
            for (int p = 1; p <= n && ok; ++p) {
                for (int i = 0; i < h - 1; ++i)
                    tup[i] = b[static_cast<std::size_t>((p - 1) * (h - 1) + 1 + i)];
                tup[h - 1] = v;
                if (!rho.contains(std::span<const int>(tup, static_cast<std::size_t>(h))))
                    ok = false;
            }
            for (std::size_t off = 0; off < sel.size() && ok; off += stride) {
                for (int i = 0; i < s - 1; ++i)
                    tup[i] = b[static_cast<std::size_t>(sel[off + static_cast<std::size_t>(i)])];
                tup[s - 1] = v;
                if (!sigma.contains(std::span<const int>(tup, static_cast<std::size_t>(s))))
                    ok = false;
            }
            if (ok) return true;
        }
        return false;
    });
}

// --- transcripts --------------------------------------------------------

const char* derived_kind_name(DerivedKind k) {
    switch (k) {
        case DerivedKind::Tau: return "tau";
        case DerivedKind::GammaBinary: return "gamma2";
        case DerivedKind::GammaT: return "gamma_t";
        case DerivedKind::RhoL: return "rho_l";
        case DerivedKind::AlphaN: return "alpha_n";
        case DerivedKind::BetaChain: return "beta_chain";
        case DerivedKind::Alpha1Of: return "alpha1_of";
        case DerivedKind::BetaT: return "beta_t";
        case DerivedKind::Lambda: return "lambda";
        case DerivedKind::GammaPrime: return "gamma_prime";
        case DerivedKind::ThetaUp: return "theta_up";
        case DerivedKind::ThetaDown: return "theta_down";
        case DerivedKind::GammaS: return "gamma_s";
        case DerivedKind::GammaPrimeT: return "gamma_prime_t";
        case DerivedKind::GammaPrimeH: return "gamma_prime_h";
        case DerivedKind::GammaPrimeChain: return "gamma_prime_chain";
        case DerivedKind::Intersect: return "intersect";
    }
    return "?";
}

DerivedKind derived_kind_from_name(const std::string& name) {
    static const std::map<std::string, DerivedKind> table = {
        {"tau", DerivedKind::Tau},
        {"gamma2", DerivedKind::GammaBinary},
        {"gamma_t", DerivedKind::GammaT},
        {"rho_l", DerivedKind::RhoL},
        {"alpha_n", DerivedKind::AlphaN},
        {"beta_chain", DerivedKind::BetaChain},
        {"alpha1_of", DerivedKind::Alpha1Of},
        {"beta_t", DerivedKind::BetaT},
        {"lambda", DerivedKind::Lambda},
        {"gamma_prime", DerivedKind::GammaPrime},
        {"theta_up", DerivedKind::ThetaUp},
        {"theta_down", DerivedKind::ThetaDown},
        {"gamma_s", DerivedKind::GammaS},
        {"gamma_prime_t", DerivedKind::GammaPrimeT},
        {"gamma_prime_h", DerivedKind::GammaPrimeH},
        {"gamma_prime_chain", DerivedKind::GammaPrimeChain},
        {"intersect", DerivedKind::Intersect},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown derived kind: " + name);
    return it->second;
}

namespace {

int get_param(const DerivedStep& s, const std::string& key) {
    for (const auto& [k, v] : s.params)
        if (k == key) return v;
    throw std::invalid_argument("derived step " + s.name + ": missing param " + key);
}

Relation eval_step(const DerivedStep& s, const std::vector<const Relation*>& in) {
    auto one = [&]() -> const Relation& {
        if (in.size() != 1) throw std::invalid_argument("derived step: expected 1 input");
        return *in[0];
    };
    auto two_a = [&]() -> const Relation& {
        if (in.size() != 2) throw std::invalid_argument("derived step: expected 2 inputs");
        return *in[0];
    };
    auto two_b = [&]() -> const Relation& { return *in[1]; };
    switch (s.kind) {
        case DerivedKind::Tau: return tau(two_a(), two_b());
        case DerivedKind::GammaBinary: return gamma_binary(two_a(), two_b());
        case DerivedKind::GammaT: return gamma_t(two_a(), two_b(), get_param(s, "t"));
        case DerivedKind::RhoL: return rho_l(one(), get_param(s, "l"));
        case DerivedKind::AlphaN: return alpha_n(two_a(), two_b(), get_param(s, "n"), s.mode);
        case DerivedKind::BetaChain: return beta_chain(two_a(), two_b(), get_param(s, "j"));
        case DerivedKind::Alpha1Of: return alpha1_of(one());
        case DerivedKind::BetaT: return beta_t(two_a(), two_b(), get_param(s, "t"), s.mode);
        case DerivedKind::Lambda: return lambda_pad(one(), get_param(s, "s"));
        case DerivedKind::GammaPrime: return gamma_prime(two_a(), two_b());
        case DerivedKind::ThetaUp: return theta_up(two_a(), two_b(), get_param(s, "t"), s.mode);
        case DerivedKind::ThetaDown: return theta_down(two_a(), two_b(), get_param(s, "t"), s.mode);
        case DerivedKind::GammaS: return gamma_s_rel(two_a(), two_b(), s.mode);
        case DerivedKind::GammaPrimeT:
            return gamma_prime_t(two_a(), two_b(), get_param(s, "t"), s.mode);
        case DerivedKind::GammaPrimeH: return gamma_prime_h(two_a(), two_b(), s.mode);
        case DerivedKind::GammaPrimeChain:
            return gamma_prime_chain(two_a(), two_b(), get_param(s, "n"), s.mode);
        case DerivedKind::Intersect: return intersect(two_a(), two_b());
    }
    throw std::invalid_argument("derived step: unknown kind");
}

}  // namespace

std::string Derivation::summary() const {
    std::string out;
    for (const auto& s : steps) {
        if (!out.empty()) out += "; ";
        out += s.name + " := " + derived_kind_name(s.kind) + "(";
        for (std::size_t i = 0; i < s.inputs.size(); ++i) {
            if (i) out += ",";
            out += s.inputs[i];
        }
        for (const auto& [k, v] : s.params) out += "," + k + "=" + std::to_string(v);
        out += ")";
        if (s.mode != IndexMode::Literal) out += "[" + std::string(index_mode_name(s.mode)) + "]";
    }
    out += " [witness=ascending]";
    return out;
}

Relation recompute(const Derivation& d, const Relation& rho, const Relation& sigma) {
    if (d.steps.empty()) throw std::invalid_argument("recompute: empty derivation");
    std::map<std::string, Relation> env{{"rho", rho}, {"sigma", sigma}};
    const Relation* last = nullptr;
    for (const auto& step : d.steps) {
        if (step.name == "rho" || step.name == "sigma")
            throw std::invalid_argument("recompute: step may not shadow rho/sigma");
        std::vector<const Relation*> in;
        for (const auto& nm : step.inputs) {
            auto it = env.find(nm);
            if (it == env.end())
                throw std::invalid_argument("recompute: unknown input '" + nm + "'");
            in.push_back(&it->second);
        }
        auto [it, fresh] = env.emplace(step.name, eval_step(step, in));
        if (!fresh) throw std::invalid_argument("recompute: duplicate step name " + step.name);
        last = &it->second;
    }
    return *last;
}

DerivedRelation derive(DerivedKind kind, const Relation& rho, const Relation& sigma,
                       const std::vector<std::pair<std::string, int>>& params, IndexMode mode) {
    Derivation d;
    DerivedStep step;
    step.name = "delta";
    step.kind = kind;
    step.params = params;
    step.mode = mode;
    switch (kind) {
        case DerivedKind::RhoL:
        case DerivedKind::Alpha1Of:
        case DerivedKind::Lambda: step.inputs = {"rho"}; break;
        case DerivedKind::BetaT:
            // the paper's beta_t takes gamma = rho cap sigma
            d.steps.push_back(
                {"gamma", DerivedKind::Intersect, {"rho", "sigma"}, {}, IndexMode::Literal});
            step.inputs = {"rho", "gamma"};
            break;
        default: step.inputs = {"rho", "sigma"}; break;
    }
    d.steps.push_back(std::move(step));
    Relation rel = recompute(d, rho, sigma);
    return DerivedRelation{std::move(rel), std::move(d)};
}

}  // namespace submax
