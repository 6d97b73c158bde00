#include "submax/central.hpp"

#include <algorithm>
#include <stdexcept>

namespace submax {

Relation diagonal(Domain dom, int h) {
    if (h < 2) throw std::invalid_argument("diagonal: arity must be >= 2");
    std::size_t uni = Relation::universe_check(dom, h);
    Bitset b(uni);
    std::vector<int> t(static_cast<std::size_t>(h));
    for (std::size_t r = 0; r < uni; ++r) {
        tuple_decode(dom.k, h, r, t);
        bool repeat = false;
        for (int i = 0; i < h && !repeat; ++i)
            for (int j = i + 1; j < h; ++j)
                if (t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(j)]) {
                    repeat = true;
                    break;
                }
        if (repeat) b.set(r);
    }
    return Relation(dom, h, std::move(b));
}

namespace {

// First tuple with a repeated coordinate missing from rel, if any.
std::optional<std::vector<int>> find_reflexivity_violation(const Relation& rel) {
    int h = rel.arity();
    std::vector<int> t(static_cast<std::size_t>(h));
    for (std::size_t r = 0; r < rel.universe_size(); ++r) {
        if (rel.contains_rank(r)) continue;
        tuple_decode(rel.k(), h, r, t);
        for (int i = 0; i < h; ++i)
            for (int j = i + 1; j < h; ++j)
                if (t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(j)]) return t;
    }
    return std::nullopt;
}

// First member tuple with a transposed image outside rel, if any.
std::optional<std::vector<int>> find_symmetry_violation(const Relation& rel) {
    int h = rel.arity();
    if (h == 1) return std::nullopt;
    std::vector<int> t(static_cast<std::size_t>(h));
    std::vector<int> s(static_cast<std::size_t>(h));
    for (std::size_t r = 0; r < rel.universe_size(); ++r) {
        if (!rel.contains_rank(r)) continue;
        tuple_decode(rel.k(), h, r, t);
        // Adjacent transpositions generate S_h; closure under them is enough.
        for (int i = 0; i + 1 < h; ++i) {
            s = t;
            std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
            if (!rel.contains(s)) return t;
        }
    }
    return std::nullopt;
}

}  // namespace

bool is_totally_reflexive(const Relation& rel) {
    if (rel.arity() == 1) return true;
    return !find_reflexivity_violation(rel).has_value();
}

bool is_totally_symmetric(const Relation& rel) {
    return !find_symmetry_violation(rel).has_value();
}

std::vector<int> center(const Relation& rel) {
    int k = rel.k();
    int h = rel.arity();
    std::vector<int> out;
    if (h == 1) {
        for (int a = 0; a < k; ++a)
            if (rel.contains_rank(static_cast<std::size_t>(a))) out.push_back(a);
        return out;
    }
    std::size_t tail = ipow(static_cast<std::uint64_t>(k), h - 1);
    for (int a = 0; a < k; ++a) {
        std::size_t base = static_cast<std::size_t>(a) * tail;
        bool central = true;
        for (std::size_t r = 0; r < tail; ++r)
            if (!rel.contains_rank(base + r)) {
                central = false;
                break;
            }
        if (central) out.push_back(a);
    }
    return out;
}

std::string ValidationError::to_string() const {
    std::string s;
    switch (code) {
        case Code::NotReflexive: s = "NotReflexive"; break;
        case Code::NotSymmetric: s = "NotSymmetric"; break;
        case Code::EmptyCenter: s = "EmptyCenter"; break;
        case Code::ImproperCenter: s = "ImproperCenter"; break;
    }
    if (!witness.empty()) {
        s += " at (";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(witness[i]);
        }
        s += ")";
    }
    return s;
}

std::variant<CentralRelation, ValidationError> validate_central(const Relation& rel) {
    if (rel.arity() >= 2) {
        if (auto w = find_reflexivity_violation(rel))
            return ValidationError{ValidationError::Code::NotReflexive, *w};
        if (auto w = find_symmetry_violation(rel))
            return ValidationError{ValidationError::Code::NotSymmetric, *w};
    }
    auto impl = std::make_shared<CentralRelation::Impl>(rel);
    impl->center = center(rel);
    if (impl->center.empty()) return ValidationError{ValidationError::Code::EmptyCenter, {}};
    if (static_cast<int>(impl->center.size()) == rel.k())
        return ValidationError{ValidationError::Code::ImproperCenter, {}};
    return CentralRelation(std::move(impl));
}

bool is_chain(const Relation& rel, const std::vector<int>& b) {
    int h = rel.arity();
    if (static_cast<int>(b.size()) <= h - 1) return true;  // total reflexivity
    // Only rainbow tuples over b constrain membership; checking all |b|^h
    // tuples is simpler and just as cheap at this scale.
    std::size_t total = ipow(b.size(), h);
    std::vector<int> t(static_cast<std::size_t>(h));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t x = idx;
        for (int i = h - 1; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = b[x % b.size()];
            x /= b.size();
        }
        if (!rel.contains(t)) return false;
    }
    return true;
}

namespace {

std::vector<std::vector<int>> compute_maximal_chains(const Relation& rel) {
    int k = rel.k();
    std::vector<std::vector<int>> chains;
    // Expand chains element by element over the rainbow-compatibility
    // hypergraph; k is small so the subset lattice walk is exhaustive.
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<int> b;
        for (int a = 0; a < k; ++a)
            if (mask & (std::uint64_t{1} << a)) b.push_back(a);
        if (!is_chain(rel, b)) continue;
        bool maximal = true;
        for (int a = 0; a < k && maximal; ++a) {
            if (mask & (std::uint64_t{1} << a)) continue;
            std::vector<int> ext = b;
            ext.insert(std::lower_bound(ext.begin(), ext.end(), a), a);
            if (is_chain(rel, ext)) maximal = false;
        }
        if (maximal) chains.push_back(std::move(b));
    }
    std::sort(chains.begin(), chains.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() > y.size();
        return x < y;
    });
    return chains;
}

}  // namespace

const std::vector<std::vector<int>>& CentralRelation::maximal_chains() const {
    std::call_once(impl_->chains_once,
                   [this] { impl_->chains = compute_maximal_chains(impl_->rel); });
    return impl_->chains;
}

Relation intersect(const Relation& a, const Relation& b) {
    if (a.domain() != b.domain() || a.arity() != b.arity())
        throw std::invalid_argument("intersect: domain or arity mismatch");
    return Relation(a.domain(), a.arity(), a.bits() & b.bits());
}

Compare compare(const Relation& a, const Relation& b) {
    if (a.domain() != b.domain() || a.arity() != b.arity())
        throw std::invalid_argument("compare: domain or arity mismatch");
    bool ab = a.bits().is_subset_of(b.bits());
    bool ba = b.bits().is_subset_of(a.bits());
    if (ab && ba) return Compare::Equal;
    if (ab) return Compare::LeftStrict;
    if (ba) return Compare::RightStrict;
    return Compare::Incomparable;
}

const char* compare_name(Compare c) {
    switch (c) {
        case Compare::Equal: return "Equal";
        case Compare::LeftStrict: return "LeftStrict";
        case Compare::RightStrict: return "RightStrict";
        case Compare::Incomparable: return "Incomparable";
    }
    return "?";
}

}  // namespace submax
