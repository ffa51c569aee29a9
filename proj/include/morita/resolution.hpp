#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "morita/chain_complex.hpp"
#include "morita/error.hpp"
#include "morita/free_dga.hpp"

namespace morita {

/// One summand c * left (x) v (x) right of an element of B (x) V (x) B.
struct DerivationTerm {
    Word left;
    std::uint32_t slot = 0;
    Word right;
    Scalar coeff;
};

namespace detail {

using TripleKey = std::tuple<Word, std::uint32_t, Word>;

struct TripleOrder {
    bool operator()(const TripleKey& a, const TripleKey& b) const {
        WordOrder wo;
        if (wo(std::get<0>(a), std::get<0>(b)))
            return true;
        if (wo(std::get<0>(b), std::get<0>(a)))
            return false;
        if (std::get<1>(a) != std::get<1>(b))
            return std::get<1>(a) < std::get<1>(b);
        return wo(std::get<2>(a), std::get<2>(b));
    }
};

} // namespace detail

/// Universal derivation of p: each letter g_j of a word contributes
/// prefix (x) g_j (x) suffix; an inverse letter h = v^-1 contributes
/// -(prefix h) (x) v (x) (h suffix). Constants contribute nothing.
inline std::vector<DerivationTerm> universal_derivation(const FreeDGA& a, const NCPoly& p) {
    std::map<detail::TripleKey, Scalar, detail::TripleOrder> acc;
    auto add = [&](Word l, std::uint32_t v, Word r, const Scalar& c) {
        detail::TripleKey k{a.reduce(l), v, a.reduce(r)};
        auto [it, fresh] = acc.emplace(k, c);
        if (!fresh)
            it->second += c;
    };
    for (const auto& [w, c] : p.terms()) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
            Word suffix(w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end());
            const std::uint32_t g = w[j];
            if (a.is_inverse(g)) {
                prefix.push_back(g);
                suffix.insert(suffix.begin(), g);
                add(prefix, *a.generator(g).inverse_of, suffix, -c);
            } else {
                add(prefix, g, suffix, c);
            }
        }
    }
    std::vector<DerivationTerm> out;
    for (auto& [k, c] : acc)
        if (!c.is_zero())
            out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), c});
    return out;
}

/// The length-one resolution B (x) V (x) B -> B (x) B of a quasi-free algebra.
struct SemifreeResolution {
    FreeDGA algebra;
    std::vector<std::uint32_t> V;
    std::map<std::uint32_t, std::vector<DerivationTerm>> univ_derivation;
};

inline SemifreeResolution semifree_resolution(const FreeDGA& a) {
    SemifreeResolution r{a, a.primary_generators(), {}};
    for (auto v : r.V)
        r.univ_derivation.emplace(v, universal_derivation(a, a.diff(v)));
    return r;
}

namespace detail {

// Basis element L * x * R of the resolving bimodule, where x is the unit
// generator (slot empty) or the shifted generator s v.
struct BimoduleKey {
    Word left;
    std::optional<std::uint32_t> slot;
    Word right;

    friend bool operator<(const BimoduleKey& a, const BimoduleKey& b) {
        WordOrder wo;
        if (wo(a.left, b.left))
            return true;
        if (wo(b.left, a.left))
            return false;
        if (a.slot != b.slot)
            return a.slot < b.slot;
        return wo(a.right, b.right);
    }
};

} // namespace detail

/// Homology dims of the cone of B (x) V (x) B -> B (x) B in degrees 0..max.
/// The resolution is exact iff these agree with the homology of B; only
/// algebras with all generators in positive degree are accepted.
inline std::vector<std::size_t> resolution_cone_homology(const SemifreeResolution& r, int max_degree) {
    const FreeDGA& a = r.algebra;
    if (a.has_degree_zero_generators())
        throw Error(ErrorKind::unsupported, "resolution certificate needs all generators in positive degree");
    using Key = detail::BimoduleKey;
    const Field f = a.field();
    std::map<int, std::vector<Key>> bases;
    for (int n = 0; n <= max_degree + 1; ++n) {
        auto& b = bases[n];
        for (int i = 0; i <= n; ++i)
            for (const auto& l : a.basis_words(i))
                for (const auto& rt : a.basis_words(n - i))
                    b.push_back({l, std::nullopt, rt});
        for (auto v : r.V) {
            const int rest = n - a.generator(v).degree - 1;
            for (int i = 0; i <= rest; ++i)
                for (const auto& l : a.basis_words(i))
                    for (const auto& rt : a.basis_words(rest - i))
                        b.push_back({l, v, rt});
        }
    }
    auto d = [&](int, const Key& k) {
        std::map<Key, Scalar> out;
        auto add = [&](Key key, const Scalar& c) {
            auto [it, fresh] = out.emplace(std::move(key), c);
            if (!fresh)
                it->second += c;
        };
        const int dl = a.degree(k.left);
        const int dx = k.slot ? a.generator(*k.slot).degree + 1 : 0;
        for (const auto& [w, c] : a.differential_of_word(k.left).terms())
            add({w, k.slot, k.right}, c);
        for (const auto& [w, c] : a.differential_of_word(k.right).terms())
            add({k.left, k.slot, w}, (dl + dx) % 2 ? -c : c);
        if (k.slot) {
            // d(s v) = v e - e v - sum c (-1)^|L| L s v' R
            const Scalar sign = Scalar::sign(f, dl % 2 != 0);
            add({a.concat(k.left, Word{*k.slot}), std::nullopt, k.right}, sign);
            add({k.left, std::nullopt, a.concat(Word{*k.slot}, k.right)}, -sign);
            for (const auto& t : r.univ_derivation.at(*k.slot)) {
                const Scalar s = Scalar::sign(f, a.degree(t.left) % 2 != 0);
                add({a.concat(k.left, t.left), t.slot, a.concat(t.right, k.right)}, -(sign * s * t.coeff));
            }
        }
        return out;
    };
    const ChainComplex c = assemble_complex<Key>(f, bases, d);
    std::vector<std::size_t> dims;
    for (int n = 0; n <= max_degree; ++n)
        dims.push_back(c.dim(n) - rank(c.boundary(n)) - rank(c.boundary(n + 1)));
    return dims;
}

/// True iff the cone homology equals the homology of B in degrees 0..max.
inline bool resolution_is_exact(const SemifreeResolution& r, int max_degree) {
    return resolution_cone_homology(r, max_degree) == algebra_homology(r.algebra, max_degree).dim_list();
}

} // namespace morita
