#include "submax/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace submax {

namespace {

std::vector<std::vector<int>> subsets_of_size(int k, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < k; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// all orderings of a rainbow support, inserted into the bitset
void set_orbit(Bitset& bits, int k, const std::vector<int>& support) {
    std::vector<int> perm = support;
    std::sort(perm.begin(), perm.end());
    do {
        bits.set(tuple_rank(k, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

std::vector<Relation> enumerate_symmetric_reflexive(Domain dom, int arity) {
    if (arity < 1) throw std::invalid_argument("enumerate: arity must be >= 1");
    const int k = dom.k;
    std::vector<Relation> out;
    if (arity == 1) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            Bitset b(static_cast<std::size_t>(k));
            for (int a = 0; a < k; ++a)
                if (mask & (std::uint64_t{1} << a)) b.set(static_cast<std::size_t>(a));
            out.emplace_back(dom, 1, std::move(b));
        }
    } else {
        auto orbits = subsets_of_size(k, arity);  // empty when arity > k
        if (orbits.size() > 20)
            throw std::invalid_argument("enumerate: too many rainbow orbits (k choose arity > 20)");
        Relation diag = arity <= 1 ? Relation::full(dom, 1) : diagonal(dom, arity);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << orbits.size()); ++mask) {
            Bitset b = diag.bits();
            for (std::size_t i = 0; i < orbits.size(); ++i)
                if (mask & (std::uint64_t{1} << i)) set_orbit(b, k, orbits[i]);
            out.emplace_back(dom, arity, std::move(b));
        }
    }
    std::sort(out.begin(), out.end(), [](const Relation& a, const Relation& b) {
        return a.member_ranks() < b.member_ranks();
    });
    return out;
}

std::vector<Relation> enumerate_central(Domain dom, int arity) {
    std::vector<Relation> out;
    for (auto& rel : enumerate_symmetric_reflexive(dom, arity))
        if (std::holds_alternative<CentralRelation>(validate_central(rel)))
            out.push_back(std::move(rel));
    return out;
}

std::vector<Relation> dedup_isomorphic(const std::vector<Relation>& rels) {
    std::vector<Relation> out;
    for (const auto& rel : rels) {
        const int k = rel.k();
        const int h = rel.arity();
        if (k > 8) throw std::invalid_argument("dedup_isomorphic: k too large");
        auto self = rel.member_ranks();
        std::vector<int> perm(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
        bool least = true;
        std::vector<int> t(static_cast<std::size_t>(h));
        std::vector<int> image(static_cast<std::size_t>(h));
        do {
            std::vector<std::uint32_t> mapped;
            mapped.reserve(self.size());
            for (auto r : self) {
                tuple_decode(k, h, r, t);
                for (int i = 0; i < h; ++i)
                    image[static_cast<std::size_t>(i)] =
                        perm[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
                mapped.push_back(static_cast<std::uint32_t>(tuple_rank(k, image)));
            }
            std::sort(mapped.begin(), mapped.end());
            if (mapped < self) {
                least = false;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (least) out.push_back(rel);
    }
    return out;
}

}  // namespace submax
