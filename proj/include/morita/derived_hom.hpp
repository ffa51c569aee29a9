#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "morita/bar.hpp"
#include "morita/chain_complex.hpp"
#include "morita/cw_model.hpp"
#include "morita/representation.hpp"
#include "morita/resolution.hpp"

namespace morita {

namespace detail {

// Basis element of a hom complex: the elementary map e_{row,col} placed in
// block `block` (0 for Hom(M,N), k+1 for the k-th generator of V).
struct HomKey {
    std::size_t block = 0;
    std::size_t row = 0;
    std::size_t col = 0;

    friend bool operator<(const HomKey& a, const HomKey& b) {
        return std::tie(a.block, a.row, a.col) < std::tie(b.block, b.row, b.col);
    }
};

// Elementary maps of degree k from the layout `from` to the layout `to`.
inline void hom_basis(std::size_t block, const GradedLayout& from, const GradedLayout& to, int k, std::vector<HomKey>& out) {
    for (std::size_t r = 0; r < to.total(); ++r)
        for (std::size_t c = 0; c < from.total(); ++c)
            if (to.degree_of[r] == from.degree_of[c] + k)
                out.push_back({block, r, c});
}

// Accumulates c * A e_{j,i} B into `out` under `block`.
class Sandwich {
public:
    Sandwich(const SparseMatrix& left, const SparseMatrix& right) {
        for (const auto& e : left.entries())
            left_cols_[e.col].emplace_back(e.row, e.value);
        for (const auto& e : right.entries())
            right_rows_[e.row].emplace_back(e.col, e.value);
    }

    void apply(std::size_t j, std::size_t i, const Scalar& c, std::size_t block, std::map<HomKey, Scalar>& out) const {
        auto lc = left_cols_.find(j);
        auto rr = right_rows_.find(i);
        if (lc == left_cols_.end() || rr == right_rows_.end())
            return;
        for (const auto& [r, x] : lc->second)
            for (const auto& [col, y] : rr->second) {
                const Scalar v = c * x * y;
                auto [it, fresh] = out.emplace(HomKey{block, r, col}, v);
                if (!fresh)
                    it->second += v;
            }
    }

private:
    std::map<std::size_t, std::vector<std::pair<std::size_t, Scalar>>> left_cols_;
    std::map<std::size_t, std::vector<std::pair<std::size_t, Scalar>>> right_rows_;
};

inline HomologyTable cohomological_table(const ChainComplex& c, int max_degree) {
    HomologyTable t;
    t.lo = 0;
    t.hi = max_degree;
    t.convention = DegreeConvention::cohomological;
    for (int n = 0; n <= max_degree; ++n)
        t.dims[n] = c.dim(-n) - rank(c.boundary(-n)) - rank(c.boundary(-n + 1));
    return t;
}

} // namespace detail

/// The complex Hom(M, N) -> Hom(V (x) M, N) computing RHom_A(M, N), in
/// homological degrees lo..hi. The lowest degree is given a zero boundary.
inline ChainComplex derived_hom_complex(const Representation& m, const Representation& n, int lo, int hi) {
    const FreeDGA& a = m.algebra();
    if (!(m.field() == n.field()))
        throw Error(ErrorKind::field_mismatch, "modules over " + m.field().name() + " and " + n.field().name());
    if (!same_algebra(a, n.algebra()))
        throw Error(ErrorKind::incompatible_action, "modules over different algebras");
    const Field f = a.field();
    const SemifreeResolution res = semifree_resolution(a);
    const GradedLayout& lm = m.layout();
    const GradedLayout& ln = n.layout();
    const SparseMatrix idm = SparseMatrix::identity(f, m.total_dim());
    const SparseMatrix idn = SparseMatrix::identity(f, n.total_dim());

    std::map<std::uint32_t, std::size_t> block_of;
    for (std::size_t k = 0; k < res.V.size(); ++k)
        block_of.emplace(res.V[k], k + 1);

    std::map<int, std::vector<detail::HomKey>> bases;
    for (int p = lo; p <= hi; ++p) {
        auto& b = bases[p];
        detail::hom_basis(0, lm, ln, p, b);
        for (std::size_t k = 0; k < res.V.size(); ++k)
            detail::hom_basis(k + 1, lm, ln, p + a.generator(res.V[k]).degree + 1, b);
    }

    const detail::Sandwich d_left(n.differential(), idm), d_right(idn, m.differential());
    std::vector<detail::Sandwich> act_left, act_right;
    for (auto v : res.V) {
        act_left.emplace_back(n.action(v), idm);
        act_right.emplace_back(idn, m.action(v));
    }
    // Terms of the universal derivation of d v, grouped by the slot they feed.
    struct Feed {
        std::size_t target;
        Scalar coeff;
        int left_degree;
        detail::Sandwich sandwich;
    };
    std::map<std::size_t, std::vector<Feed>> feeds;
    for (std::size_t k = 0; k < res.V.size(); ++k)
        for (const auto& t : res.univ_derivation.at(res.V[k]))
            feeds[block_of.at(t.slot)].push_back(
                {k + 1, t.coeff, a.degree(t.left), detail::Sandwich(n.act_word(t.left), m.act_word(t.right))});

    auto d = [&](int p, const detail::HomKey& key) {
        std::map<detail::HomKey, Scalar> out;
        if (p == lo)
            return out;
        const Scalar one = Scalar::one(f);
        const bool p_odd = p % 2 != 0;
        if (key.block == 0) {
            // f' = d_N f - (-1)^p f d_M
            d_left.apply(key.row, key.col, one, 0, out);
            d_right.apply(key.row, key.col, Scalar::sign(f, !p_odd), 0, out);
            // H'_g -= (-1)^p [(-1)^{p|g|} rho_N(g) f - f rho_M(g)]
            for (std::size_t k = 0; k < res.V.size(); ++k) {
                const int g = a.generator(res.V[k]).degree;
                act_left[k].apply(key.row, key.col, Scalar::sign(f, (p + p * g + 1) % 2 != 0), k + 1, out);
                act_right[k].apply(key.row, key.col, Scalar::sign(f, p_odd), k + 1, out);
            }
        } else {
            const int g = a.generator(res.V[key.block - 1]).degree;
            // H'_g = d_N H_g + (-1)^{p+|g|} H_g d_M + ...
            d_left.apply(key.row, key.col, one, key.block, out);
            d_right.apply(key.row, key.col, Scalar::sign(f, (p + g) % 2 != 0), key.block, out);
            // ... + (-1)^p sum c (-1)^{|L|(p+1)} rho_N(L) H_{g'} rho_M(R)
            auto it = feeds.find(key.block);
            if (it != feeds.end())
                for (const auto& fd : it->second) {
                    const bool neg = (p + fd.left_degree * (p + 1)) % 2 != 0;
                    fd.sandwich.apply(key.row, key.col, neg ? -fd.coeff : fd.coeff, fd.target, out);
                }
        }
        return out;
    };
    return assemble_complex<detail::HomKey>(f, bases, d);
}

/// Ext_A(M, N) in cohomological degrees 0..max (degree n is homological -n).
inline HomologyTable derived_hom(const Representation& m, const Representation& n, int max_degree) {
    const ChainComplex c = derived_hom_complex(m, n, -max_degree - 1, 1);
    return detail::cohomological_table(c, max_degree);
}

/// The two-term complex Hom(M, N) -> Hom(M, N), u |-> psi u - u phi, as a
/// complex T_p = Hom_p (+) Hom_{p+1} with D(u, w) = (du, -dw + psi u - u phi).
inline ChainComplex monodromy_hom_complex(const MonodromyPair& pm, const MonodromyPair& pn, int lo, int hi) {
    if (!(pm.field() == pn.field()))
        throw Error(ErrorKind::field_mismatch, "pairs over " + pm.field().name() + " and " + pn.field().name());
    const Field f = pm.field();
    const GradedLayout lm = GradedLayout::of(pm.carrier), ln = GradedLayout::of(pn.carrier);
    const SparseMatrix dm = total_differential(pm.carrier), dn = total_differential(pn.carrier);
    const SparseMatrix idm = SparseMatrix::identity(f, lm.total()), idn = SparseMatrix::identity(f, ln.total());
    std::map<int, std::vector<detail::HomKey>> bases;
    for (int p = lo; p <= hi; ++p) {
        detail::hom_basis(0, lm, ln, p, bases[p]);
        detail::hom_basis(1, lm, ln, p + 1, bases[p]);
    }
    const detail::Sandwich d_left(dn, idm), d_right(idn, dm), psi(pn.phi, idm), phi(idn, pm.phi);
    auto d = [&](int p, const detail::HomKey& key) {
        std::map<detail::HomKey, Scalar> out;
        if (p == lo)
            return out;
        const Scalar one = Scalar::one(f);
        if (key.block == 0) {
            d_left.apply(key.row, key.col, one, 0, out);
            d_right.apply(key.row, key.col, Scalar::sign(f, p % 2 == 0), 0, out);
            psi.apply(key.row, key.col, one, 1, out);
            phi.apply(key.row, key.col, -one, 1, out);
        } else {
            // w has degree p + 1
            d_left.apply(key.row, key.col, -one, 1, out);
            d_right.apply(key.row, key.col, Scalar::sign(f, (p + 1) % 2 != 0), 1, out);
        }
        return out;
    };
    return assemble_complex<detail::HomKey>(f, bases, d);
}

/// Homology of the monodromy hom complex in cohomological degrees 0..max.
inline HomologyTable monodromy_hom(const MonodromyPair& pm, const MonodromyPair& pn, int max_range) {
    return detail::cohomological_table(monodromy_hom_complex(pm, pn, -max_range - 1, 1), max_range);
}

/// Ext_A(k, k) through the bar construction: Ext^n is dual to Tor_n.
inline HomologyTable bar_ext_oracle(const FreeDGA& a, int max_degree) {
    const auto dims = bar_tor_dims(a, max_degree);
    HomologyTable t;
    t.lo = 0;
    t.hi = max_degree;
    t.convention = DegreeConvention::cohomological;
    for (int n = 0; n <= max_degree; ++n)
        t.dims[n] = dims[static_cast<std::size_t>(n)];
    return t;
}

} // namespace morita
