#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morita/chain_complex.hpp"
#include "morita/error.hpp"
#include "morita/free_dga.hpp"
#include "morita/sparse.hpp"

namespace morita {

/// Degrees of a finite complex laid out consecutively in increasing order.
struct GradedLayout {
    std::map<int, std::size_t> offset;
    std::vector<int> degree_of;

    static GradedLayout of(const ChainComplex& c) {
        GradedLayout l;
        for (const auto& [n, d] : c.dims()) {
            l.offset.emplace(n, l.degree_of.size());
            l.degree_of.insert(l.degree_of.end(), d, n);
        }
        return l;
    }

    std::size_t total() const { return degree_of.size(); }
};

/// The boundary maps of c assembled into one endomorphism of the total space.
inline SparseMatrix total_differential(const ChainComplex& c) {
    const GradedLayout l = GradedLayout::of(c);
    std::vector<SparseMatrix::Entry> t;
    for (const auto& [n, d] : c.dims()) {
        if (!c.dim(n - 1))
            continue;
        for (const auto& e : c.boundary(n).entries())
            t.push_back({l.offset.at(n - 1) + e.row, l.offset.at(n) + e.col, e.value});
    }
    return SparseMatrix::from_triplets(c.field(), l.total(), l.total(), std::move(t));
}

/// Assembles a map of the given degree from blocks; blocks[i] sends degree i of
/// `from` to degree i + degree of `to`.
inline SparseMatrix graded_map(const ChainComplex& from, const ChainComplex& to, int degree,
                               const std::map<int, SparseMatrix>& blocks) {
    const GradedLayout lf = GradedLayout::of(from), lt = GradedLayout::of(to);
    std::vector<SparseMatrix::Entry> t;
    for (const auto& [i, b] : blocks) {
        if (b.rows() != to.dim(i + degree) || b.cols() != from.dim(i))
            throw Error(ErrorKind::invalid_map, "block at degree " + std::to_string(i) + " has shape " +
                                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
        for (const auto& e : b.entries())
            t.push_back({lt.offset.at(i + degree) + e.row, lf.offset.at(i) + e.col, e.value});
    }
    return SparseMatrix::from_triplets(from.field(), lt.total(), lf.total(), std::move(t));
}

/// True iff every entry of m sends degree i of `from` to degree i + degree of `to`.
inline bool is_homogeneous(const SparseMatrix& m, const GradedLayout& from, const GradedLayout& to, int degree) {
    for (const auto& e : m.entries())
        if (to.degree_of[e.row] != from.degree_of[e.col] + degree)
            return false;
    return true;
}

namespace detail {

inline std::string describe_matrix(const SparseMatrix& m) {
    if (m.rows() > 8 || m.cols() > 8)
        return std::to_string(m.entries().size()) + " nonzero entries";
    std::string s = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        s += r ? "; " : "";
        for (std::size_t c = 0; c < m.cols(); ++c)
            s += (c ? " " : "") + m.at(r, c).str();
    }
    return s + "]";
}

} // namespace detail

/// A dg-module over a quasi-free algebra on a perfect complex.
class Representation {
public:
    const FreeDGA& algebra() const { return algebra_; }
    const ChainComplex& carrier() const { return carrier_; }
    const GradedLayout& layout() const { return layout_; }
    Field field() const { return algebra_.field(); }
    std::size_t total_dim() const { return layout_.total(); }

    /// Total differential of the carrier.
    const SparseMatrix& differential() const { return d_; }
    const SparseMatrix& action(std::uint32_t g) const { return action_.at(g); }

    SparseMatrix act_word(const Word& w) const {
        SparseMatrix m = SparseMatrix::identity(field(), total_dim());
        for (auto g : w)
            m = m * action_.at(g);
        return m;
    }

    SparseMatrix act(const NCPoly& p) const {
        SparseMatrix m(field(), total_dim(), total_dim());
        for (const auto& [w, c] : p.terms())
            m = m + act_word(w) * c;
        return m;
    }

    /// d f - (-1)^k f d for a map f of degree k.
    SparseMatrix commutator_with_d(const SparseMatrix& f, int k) const {
        return k % 2 == 0 ? d_ * f - f * d_ : d_ * f + f * d_;
    }

    /// The defect of the compatibility law for g; zero on a valid representation.
    SparseMatrix residue(std::uint32_t g) const {
        return commutator_with_d(action_.at(g), algebra_.generator(g).degree) - act(algebra_.diff(g));
    }

private:
    friend Representation make_representation(const FreeDGA&, const ChainComplex&, std::map<std::uint32_t, SparseMatrix>);

    FreeDGA algebra_;
    ChainComplex carrier_;
    GradedLayout layout_;
    SparseMatrix d_;
    std::vector<SparseMatrix> action_;
};

/// Validates an action given as total matrices on the carrier. Actions of
/// inverse generators may be omitted and are then filled in by inversion.
inline Representation make_representation(const FreeDGA& a, const ChainComplex& m,
                                          std::map<std::uint32_t, SparseMatrix> action) {
    if (!(a.field() == m.field()))
        throw Error(ErrorKind::field_mismatch, "carrier over " + m.field().name() + ", algebra over " + a.field().name());
    m.validate();
    Representation r;
    r.algebra_ = a;
    r.carrier_ = m;
    r.layout_ = GradedLayout::of(m);
    r.d_ = total_differential(m);
    const std::size_t n = r.layout_.total();
    for (const auto& [g, mat] : action)
        if (g >= a.size())
            throw Error(ErrorKind::invalid_generator, "action given for unknown generator " + std::to_string(g));
    for (std::uint32_t g = 0; g < a.size(); ++g) {
        const auto& gen = a.generator(g);
        if (action.count(g))
            continue;
        if (gen.inverse_of && action.count(*gen.inverse_of)) {
            try {
                action.emplace(g, inverse(action.at(*gen.inverse_of)));
            } catch (const Error&) {
                throw Error(ErrorKind::not_invertible, "action of " + a.generator(*gen.inverse_of).name + " is not invertible");
            }
            continue;
        }
        throw Error(ErrorKind::invalid_generator, "no action given for generator " + gen.name);
    }
    for (std::uint32_t g = 0; g < a.size(); ++g) {
        const auto& mat = action.at(g);
        const auto& gen = a.generator(g);
        if (mat.rows() != n || mat.cols() != n)
            throw Error(ErrorKind::invalid_map, "action of " + gen.name + " is not " + std::to_string(n) + "x" + std::to_string(n));
        if (!(mat.field() == a.field()))
            throw Error(ErrorKind::field_mismatch, "action of " + gen.name + " over " + mat.field().name());
        if (!is_homogeneous(mat, r.layout_, r.layout_, gen.degree))
            throw Error(ErrorKind::degree_mismatch, "action of " + gen.name + " is not homogeneous of degree " + std::to_string(gen.degree));
        r.action_.push_back(mat);
    }
    const SparseMatrix id = SparseMatrix::identity(a.field(), n);
    for (std::uint32_t g = 0; g < a.size(); ++g) {
        const auto& gen = a.generator(g);
        if (gen.inverse_of && !a.is_inverse(g)) {
            const auto& u = r.action_[g];
            const auto& v = r.action_[*gen.inverse_of];
            if (!(u * v == id) || !(v * u == id))
                throw Error(ErrorKind::not_invertible, "actions of " + gen.name + " and " +
                                                           a.generator(*gen.inverse_of).name + " are not mutually inverse");
        }
    }
    for (std::uint32_t g = 0; g < a.size(); ++g) {
        const SparseMatrix res = r.residue(g);
        if (!res.is_zero())
            throw Error(ErrorKind::incompatible_action,
                        "action of " + a.generator(g).name + " violates d rho = rho(d); residue " + detail::describe_matrix(res));
    }
    return r;
}

/// The ground field in degree 0, acted on through the augmentation.
inline Representation trivial_module(const FreeDGA& a) {
    const ChainComplex k(a.field(), {{0, 1}}, {});
    std::map<std::uint32_t, SparseMatrix> action;
    for (std::uint32_t g = 0; g < a.size(); ++g)
        action.emplace(g, a.generator(g).inverse_of ? SparseMatrix::identity(a.field(), 1) : SparseMatrix(a.field(), 1, 1));
    return make_representation(a, k, std::move(action));
}

/// A perfect complex with a degree-0 chain automorphism.
struct MonodromyPair {
    ChainComplex carrier;
    SparseMatrix phi;
    SparseMatrix phi_inverse;

    Field field() const { return carrier.field(); }
};

inline MonodromyPair make_monodromy_pair(const ChainComplex& m, const SparseMatrix& phi) {
    m.validate();
    const GradedLayout l = GradedLayout::of(m);
    if (phi.rows() != l.total() || phi.cols() != l.total())
        throw Error(ErrorKind::invalid_map, "monodromy has the wrong shape");
    if (!is_homogeneous(phi, l, l, 0))
        throw Error(ErrorKind::degree_mismatch, "monodromy is not of degree 0");
    const SparseMatrix d = total_differential(m);
    if (!(d * phi == phi * d))
        throw Error(ErrorKind::invalid_map, "monodromy does not commute with the differential");
    MonodromyPair p{m, phi, inverse(phi)};
    const SparseMatrix id = SparseMatrix::identity(m.field(), l.total());
    if (!(p.phi * p.phi_inverse == id) || !(p.phi_inverse * p.phi == id))
        throw Error(ErrorKind::not_invertible, "monodromy inverse check failed");
    return p;
}

/// The pair as a module over the Laurent algebra on one invertible generator.
inline Representation as_laurent_module(const FreeDGA& laurent, const MonodromyPair& p) {
    const auto primary = laurent.primary_generators();
    if (primary.size() != 1 || !laurent.generator(primary.front()).inverse_of)
        throw Error(ErrorKind::unsupported, "expected an algebra on a single invertible generator");
    return make_representation(laurent, p.carrier, {{primary.front(), p.phi}});
}

} // namespace morita
