#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "morita/bar.hpp"
#include "morita/chain_complex.hpp"
#include "morita/free_dga.hpp"
#include "morita/resolution.hpp"

namespace morita {

/// A basis element of the small Hochschild complexes: a word m, alone or
/// paired with a generator v of V (the column s(m (x) v) resp. H(v) = m).
struct HochschildKey {
    Word m;
    std::optional<std::uint32_t> slot;

    friend bool operator<(const HochschildKey& a, const HochschildKey& b) {
        if (a.slot != b.slot)
            return a.slot < b.slot;
        return WordOrder{}(a.m, b.m);
    }
    friend bool operator==(const HochschildKey& a, const HochschildKey& b) { return a.slot == b.slot && a.m == b.m; }
};

namespace detail {

using KeyMap = std::map<HochschildKey, Scalar>;

inline void accumulate(KeyMap& out, HochschildKey k, const Scalar& c) {
    auto [it, fresh] = out.emplace(std::move(k), c);
    if (!fresh)
        it->second += c;
}

// Keys of total degree n; the V column is shifted up by |v|+1 (shift_sign 1,
// homology) or down by |v|+1 (shift_sign -1, cochains).
inline std::vector<HochschildKey> hochschild_keys(const FreeDGA& a, const SemifreeResolution& r, int shift_sign, int n,
                                                  std::optional<std::size_t> bound) {
    std::vector<HochschildKey> out;
    for (auto& w : a.basis_words(n, bound))
        out.push_back({std::move(w), std::nullopt});
    for (auto v : r.V) {
        const int m = n - shift_sign * (a.generator(v).degree + 1);
        if (m < 0 || (bound && *bound == 0))
            continue;
        for (auto& w : a.basis_words(m, bound ? std::optional<std::size_t>(*bound - 1) : std::nullopt))
            out.push_back({std::move(w), v});
    }
    return out;
}

// Small complex A (+) s(A (x) V) computing HH_*:
//   d m = dm
//   d s(m v) = m v - (-1)^{|v||m|} v m - s(dm v)
//              - (-1)^{|m|} sum c (-1)^{|R|(|m|+|L|+|v'|)} s(R m L v')
// over the terms c L v' R of the universal derivation of dv.
inline KeyMap hh_small_differential(const FreeDGA& a, const SemifreeResolution& r, const HochschildKey& k) {
    const Field f = a.field();
    KeyMap out;
    for (const auto& [w, c] : a.differential_of_word(k.m).terms())
        accumulate(out, {w, k.slot}, k.slot ? -c : c);
    if (!k.slot)
        return out;
    const std::uint32_t v = *k.slot;
    const int dm = a.degree(k.m);
    const int dv = a.generator(v).degree;
    accumulate(out, {a.concat(k.m, Word{v}), std::nullopt}, Scalar::one(f));
    accumulate(out, {a.concat(Word{v}, k.m), std::nullopt}, Scalar::sign(f, (dv * dm) % 2 == 0));
    for (const auto& t : r.univ_derivation.at(v)) {
        const int dl = a.degree(t.left), dr = a.degree(t.right), dg = a.generator(t.slot).degree;
        const bool neg = (1 + dm + dr * (dm + dl + dg)) % 2 != 0;
        accumulate(out, {a.concat(a.concat(t.right, k.m), t.left), t.slot}, neg ? -t.coeff : t.coeff);
    }
    return out;
}

// Dual complex A (+) Hom(V, A) computing HH^*; an element of degree p is
// z in A_p with H(v) in A_{p+|v|+1}:
//   z' = dz
//   H'(v) = dH(v) - (-1)^p [(-1)^{p|v|} v z - z v] + (-1)^p sum c (-1)^{|L|(p+1)} L H(v') R
inline KeyMap hh_cochain_differential(const FreeDGA& a, const SemifreeResolution& r,
                                      const std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, DerivationTerm>>>& feeds,
                                      const HochschildKey& k) {
    const Field f = a.field();
    const int p = a.degree(k.m) - (k.slot ? a.generator(*k.slot).degree + 1 : 0);
    KeyMap out;
    for (const auto& [w, c] : a.differential_of_word(k.m).terms())
        accumulate(out, {w, k.slot}, c);
    const bool p_odd = p % 2 != 0;
    if (!k.slot) {
        for (auto v : r.V) {
            const int dv = a.generator(v).degree;
            accumulate(out, {a.concat(Word{v}, k.m), v}, Scalar::sign(f, (p + p * dv + 1) % 2 != 0));
            accumulate(out, {a.concat(k.m, Word{v}), v}, Scalar::sign(f, p_odd));
        }
        return out;
    }
    auto it = feeds.find(*k.slot);
    if (it != feeds.end())
        for (const auto& [v, t] : it->second) {
            const bool neg = (p + a.degree(t.left) * (p + 1)) % 2 != 0;
            accumulate(out, {a.concat(a.concat(t.left, k.m), t.right), v}, neg ? -t.coeff : t.coeff);
        }
    return out;
}

inline HomologyTable table_from_rows(int lo, int hi, const std::vector<std::size_t>& at_l,
                                     const std::optional<std::vector<std::size_t>>& at_l2, DegreeConvention conv) {
    HomologyTable t;
    t.lo = lo;
    t.hi = hi;
    t.convention = conv;
    for (int n = lo; n <= hi; ++n)
        t.dims[n] = at_l[static_cast<std::size_t>(n - lo)];
    if (at_l2)
        t.stability = *at_l2 == at_l ? Stability::truncation_stable : Stability::truncation_unstable;
    return t;
}

} // namespace detail

/// The small Hochschild complex of a positively generated algebra in degrees 0..top.
inline ChainComplex hh_small_complex(const FreeDGA& a, int top) {
    detail::require_positive_generators(a, "the exact small complex");
    const SemifreeResolution r = semifree_resolution(a);
    std::map<int, std::vector<HochschildKey>> bases;
    for (int n = 0; n <= top; ++n)
        bases[n] = detail::hochschild_keys(a, r, 1, n, std::nullopt);
    return assemble_complex<HochschildKey>(a.field(), bases,
                                           [&](int, const HochschildKey& k) { return detail::hh_small_differential(a, r, k); });
}

/// HH_*(A) in degrees 0..max. Exact for positively generated algebras; with
/// degree-0 generators a word bound L is required and the result is computed
/// at L and L+2 and flagged.
inline HomologyTable hh_small(const FreeDGA& a, int max_degree, std::optional<std::size_t> word_bound = std::nullopt) {
    if (!a.has_degree_zero_generators()) {
        const ChainComplex c = hh_small_complex(a, max_degree + 1);
        HomologyTable t = homology_dims(c, 0, max_degree);
        return t;
    }
    if (!word_bound)
        throw Error(ErrorKind::unbounded_enumeration, "degree-0 generators present; a word-length bound is required");
    const SemifreeResolution r = semifree_resolution(a);
    auto d = [&](const HochschildKey& k) { return detail::hh_small_differential(a, r, k); };
    auto row = [&](std::size_t bound) {
        std::vector<std::size_t> dims;
        for (int n = 0; n <= max_degree; ++n)
            dims.push_back(truncated_homology_dim<HochschildKey>(a.field(), detail::hochschild_keys(a, r, 1, n, bound),
                                                                 detail::hochschild_keys(a, r, 1, n + 1, bound + 1), d));
        return dims;
    };
    return detail::table_from_rows(0, max_degree, row(*word_bound), row(*word_bound + 2), DegreeConvention::homological);
}

/// Highest cohomological degree in which the small cochain complex can be nonzero.
inline int hh_cohomology_top(const FreeDGA& a) {
    int top = 0;
    for (auto v : a.primary_generators())
        top = std::max(top, a.generator(v).degree + 1);
    return top;
}

/// HH^*(A) in cohomological degrees -max..top, degree n holding the classes of
/// internal degree -n (top from hh_cohomology_top).
inline HomologyTable hh_cohomology_small(const FreeDGA& a, int max_degree, std::optional<std::size_t> word_bound = std::nullopt) {
    const SemifreeResolution r = semifree_resolution(a);
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, DerivationTerm>>> feeds;
    for (auto v : r.V)
        for (const auto& t : r.univ_derivation.at(v))
            feeds[t.slot].emplace_back(v, t);
    const int top = hh_cohomology_top(a);
    const int lo = -max_degree, hi = top;
    // internal degrees p = -n
    auto keys = [&](int p, std::optional<std::size_t> bound) { return detail::hochschild_keys(a, r, -1, p, bound); };
    if (!a.has_degree_zero_generators()) {
        std::map<int, std::vector<HochschildKey>> bases;
        for (int p = -hi - 1; p <= max_degree + 1; ++p)
            bases[p] = keys(p, std::nullopt);
        const ChainComplex c = assemble_complex<HochschildKey>(a.field(), bases, [&](int p, const HochschildKey& k) {
            return p == -hi - 1 ? detail::KeyMap{} : detail::hh_cochain_differential(a, r, feeds, k);
        });
        std::vector<std::size_t> dims;
        for (int n = lo; n <= hi; ++n)
            dims.push_back(c.dim(-n) - rank(c.boundary(-n)) - rank(c.boundary(-n + 1)));
        return detail::table_from_rows(lo, hi, dims, std::nullopt, DegreeConvention::cohomological);
    }
    if (!word_bound)
        throw Error(ErrorKind::unbounded_enumeration, "degree-0 generators present; a word-length bound is required");
    auto row = [&](std::size_t bound) {
        std::vector<std::size_t> dims;
        auto d = [&](const HochschildKey& k) { return detail::hh_cochain_differential(a, r, feeds, k); };
        for (int n = lo; n <= hi; ++n)
            dims.push_back(truncated_homology_dim<HochschildKey>(a.field(), keys(-n, bound), keys(-n + 1, bound + 1), d));
        return dims;
    };
    return detail::table_from_rows(lo, hi, row(*word_bound), row(*word_bound + 2), DegreeConvention::cohomological);
}

namespace detail {

using HHBarKey = std::pair<Word, BarWord>;

// Cyclic Hochschild differential on m[a1|...|aq], with e_i = |m| + sum_{j<i} (|a_j| + 1):
//   dm[..] - sum (-1)^e_i m[..|da_i|..] + (-1)^|m| m a1[a2|..]
//   + sum (-1)^e_{i+1} m[..|a_i a_{i+1}|..] - (-1)^{e_q (|a_q| + 1)} a_q m[a1|..|a_{q-1}]
inline std::map<HHBarKey, Scalar> hh_bar_differential(const FreeDGA& a, const HHBarKey& key) {
    const Field f = a.field();
    const auto& [m, x] = key;
    std::map<HHBarKey, Scalar> out;
    auto add = [&](HHBarKey k, const Scalar& c) {
        auto [it, fresh] = out.emplace(std::move(k), c);
        if (!fresh)
            it->second += c;
    };
    const int dm = a.degree(m);
    for (const auto& [w, c] : a.differential_of_word(m).terms())
        add({w, x}, c);
    for (const auto& [y, c] : reduced_bar_differential(a, x))
        add({m, y}, (dm % 2) ? -c : c);
    if (x.empty())
        return out;
    add({a.concat(m, x.front()), BarWord(x.begin() + 1, x.end())}, Scalar::sign(f, dm % 2 != 0));
    int e = dm;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        e += a.degree(x[i]) + 1;
    const int last = a.degree(x.back());
    add({a.concat(x.back(), m), BarWord(x.begin(), x.end() - 1)}, Scalar::sign(f, (e * (last + 1)) % 2 == 0));
    return out;
}

} // namespace detail

/// HH_*(A) in degrees 0..max from the cyclic bar complex A (x) Bbar^{(x)q}.
/// Exact: a bar word of degree n has at most n/2 letters.
inline HomologyTable bar_oracle(const FreeDGA& a, int max_degree) {
    detail::require_positive_generators(a, "bar oracle");
    std::map<int, std::vector<detail::HHBarKey>> bases;
    for (int n = 0; n <= max_degree + 1; ++n) {
        auto& b = bases[n];
        for (int i = 0; i <= n; ++i)
            for (const auto& m : a.basis_words(i))
                for (auto& x : bar_basis(a, n - i))
                    b.emplace_back(m, std::move(x));
    }
    const ChainComplex c = assemble_complex<detail::HHBarKey>(
        a.field(), bases, [&](int, const detail::HHBarKey& k) { return detail::hh_bar_differential(a, k); });
    return homology_dims(c, 0, max_degree);
}

namespace detail {

// Summand c * a0 [z] a1 of the two-sided bar differential of 1[y]1.
struct BarTerm {
    Word a0;
    BarWord z;
    Word a1;
    Scalar c;
};

inline std::vector<BarTerm> two_sided_bar_terms(const FreeDGA& a, const BarWord& y) {
    std::vector<BarTerm> out;
    const Field f = a.field();
    for (const auto& [z, c] : reduced_bar_differential(a, y))
        out.push_back({{}, z, {}, c});
    if (y.empty())
        return out;
    out.push_back({y.front(), BarWord(y.begin() + 1, y.end()), {}, Scalar::one(f)});
    int e = 0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i)
        e += a.degree(y[i]) + 1;
    out.push_back({{}, BarWord(y.begin(), y.end() - 1), y.back(), Scalar::sign(f, e % 2 == 0)});
    return out;
}

using CochainKey = std::pair<BarWord, Word>;

// Hochschild cochains of internal degree p restricted to bar words of degree
// <= depth, for p in [lo, hi]; the lowest degree gets a zero boundary.
struct CochainComplex {
    ChainComplex complex;
    std::map<int, std::vector<CochainKey>> bases;
};

inline CochainComplex bar_cochain_complex(const FreeDGA& a, int lo, int hi, int depth) {
    const Field f = a.field();
    std::map<BarWord, std::vector<std::pair<BarWord, BarTerm>>> incidence;
    std::vector<BarWord> all;
    for (int b = 0; b <= depth; ++b)
        for (auto& y : bar_basis(a, b))
            all.push_back(std::move(y));
    for (const auto& y : all)
        for (auto& t : two_sided_bar_terms(a, y))
            incidence[t.z].emplace_back(y, std::move(t));
    std::map<int, std::vector<CochainKey>> bases;
    for (int p = lo; p <= hi; ++p) {
        auto& basis = bases[p];
        for (const auto& x : all) {
            const int target = p + bar_degree(a, x);
            if (target < 0)
                continue;
            for (auto& w : a.basis_words(target))
                basis.emplace_back(x, std::move(w));
        }
    }
    // (df)(y) = d(f(y)) - (-1)^p f(d y), f(a0 [z] a1) = (-1)^{|a0| p} a0 f(z) a1
    auto d = [&](int p, const CochainKey& k) {
        std::map<CochainKey, Scalar> out;
        if (p == lo)
            return out;
        auto add = [&](CochainKey key, const Scalar& c) {
            auto [it, fresh] = out.emplace(std::move(key), c);
            if (!fresh)
                it->second += c;
        };
        for (const auto& [w, c] : a.differential_of_word(k.second).terms())
            add({k.first, w}, c);
        auto it = incidence.find(k.first);
        if (it != incidence.end())
            for (const auto& [y, t] : it->second) {
                const bool neg = (p + 1 + a.degree(t.a0) * p) % 2 != 0;
                add({y, a.concat(a.concat(t.a0, k.second), t.a1)}, neg ? -t.c : t.c);
            }
        return out;
    };
    ChainComplex c = assemble_complex<CochainKey>(f, bases, d);
    return {std::move(c), std::move(bases)};
}

} // namespace detail

/// HH^*(A) in cohomological degrees -max..top from bar cochains. The cochain
/// complex is the inverse limit of its restrictions C_D to bar degree <= D;
/// degree n reports the rank of H(C_{D+4}) -> H(C_D) at D = depth, flagged
/// stable iff the same rank at depth + 2 agrees.
inline HomologyTable bar_cohomology_oracle(const FreeDGA& a, int max_degree, int depth) {
    detail::require_positive_generators(a, "bar cochain oracle");
    const Field f = a.field();
    const int top = hh_cohomology_top(a);
    auto row = [&](int d1) {
        const auto small = detail::bar_cochain_complex(a, -top - 1, max_degree + 1, d1);
        const auto big = detail::bar_cochain_complex(a, -top - 1, max_degree + 1, d1 + 4);
        std::vector<std::size_t> dims;
        for (int n = -max_degree; n <= top; ++n) {
            const int p = -n;
            // Restriction is onto and commutes with d, so its image on cycles
            // contains the small boundaries and
            //   rank = dim Z_big - dim(Z_big cap ker res) - rank d_small.
            const auto cols = big.complex.boundary(p).column_vectors();
            const auto& keys = big.bases.at(p);
            std::vector<SparseVector> beyond;
            for (std::size_t i = 0; i < keys.size(); ++i)
                if (bar_degree(a, keys[i].first) > d1)
                    beyond.push_back(cols[i]);
            const std::size_t z_big = keys.size() - rank_of(f, cols);
            const std::size_t z_beyond = beyond.size() - rank_of(f, beyond);
            dims.push_back(z_big - z_beyond - rank(small.complex.boundary(p + 1)));
        }
        return dims;
    };
    return detail::table_from_rows(-max_degree, top, row(depth), row(depth + 2), DegreeConvention::cohomological);
}

} // namespace morita
