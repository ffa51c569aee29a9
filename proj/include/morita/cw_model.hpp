#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "morita/error.hpp"
#include "morita/free_dga.hpp"
#include "morita/text.hpp"

namespace morita {

/// A cell of a reduced CW complex. `attach` is an expression in the generators
/// of earlier cells: a word for 2-cells, a cycle of degree dim-2 for higher cells.
struct Cell {
    std::string id;
    int dim = 0;
    std::optional<std::string> attach;
};

struct CWComplex {
    std::string name;
    Field field;
    std::vector<Cell> cells;

    /// Checks the reduced-structure invariants that do not need the algebra.
    void validate() const {
        std::size_t zero_cells = 0;
        std::set<std::string> ids;
        for (const auto& c : cells) {
            if (c.dim < 0)
                throw Error(ErrorKind::invalid_cw, "cell " + c.id + " has negative dimension");
            if (c.id.empty())
                throw Error(ErrorKind::invalid_cw, "cell with empty id");
            if (!ids.insert(c.id).second)
                throw Error(ErrorKind::invalid_cw, "duplicate cell id " + c.id);
            if (c.dim == 0)
                ++zero_cells;
            if (c.dim <= 1 && c.attach)
                throw Error(ErrorKind::invalid_cw, "cell " + c.id + " of dimension " + std::to_string(c.dim) + " takes no attaching data");
        }
        if (zero_cells != 1)
            throw Error(ErrorKind::invalid_cw, "reduced CW structure required (found " + std::to_string(zero_cells) + " 0-cells)");
    }
};

/// Adjoins a generator of degree n-1 with differential y (an n-cell attached along y).
inline FreeDGA attach_cell(const FreeDGA& a, int n, const NCPoly& y, const std::string& name) {
    if (n < 2)
        throw Error(ErrorKind::invalid_cw, "attach_cell needs dimension >= 2, got " + std::to_string(n));
    if (n == 2) {
        // y must be w - 1 for a reduced word w in degree-0 generators (or zero).
        bool ok = y.is_zero();
        if (y.size() == 2) {
            const auto& unit = *y.terms().begin();
            const auto& word = *y.terms().rbegin();
            ok = unit.first.empty() && (-unit.second).is_one() && word.second.is_one() && a.degree(word.first) == 0;
        }
        if (!ok)
            throw Error(ErrorKind::degree_mismatch, "2-cell " + name + " must attach along (word) - 1, got " + render(a, y));
    } else {
        const auto d = a.degree_of(y);
        if (!y.is_zero() && (!d || *d != n - 2))
            throw Error(ErrorKind::degree_mismatch, "attaching cycle of " + name + " must be homogeneous of degree " +
                                                        std::to_string(n - 2) + ": " + render(a, y));
        const NCPoly dy = a.differential(y);
        if (!dy.is_zero())
            throw Error(ErrorKind::not_a_cycle, "attaching element of " + name + " is not a cycle: d(" + render(a, y) +
                                                    ") = " + render(a, dy));
    }
    const auto index = static_cast<std::uint32_t>(a.size());
    return extend_algebra(a, {Generator{name, n - 1, std::nullopt}}, {{index, y}});
}

namespace detail {

inline NCPoly parse_attach_word(const FreeDGA& a, const Cell& c) {
    const Field f = a.field();
    if (!c.attach)
        return NCPoly(f);
    const NCPoly w = parse_poly(a, *c.attach);
    if (w.size() != 1 || !w.terms().begin()->second.is_one() || a.degree(w.terms().begin()->first) != 0)
        throw Error(ErrorKind::degree_mismatch, "attach_word of 2-cell " + c.id + " must be a word in 1-cell generators, got '" +
                                                    *c.attach + "'");
    return w - NCPoly::constant(f, 1);
}

} // namespace detail

/// B(X): an inverse pair per 1-cell, a generator of degree n-1 per n-cell (n >= 2).
inline FreeDGA cellular_model(const CWComplex& x) {
    x.validate();
    FreeDGA a = make_algebra(x.field, {}, {});
    for (const auto& c : x.cells) {
        try {
            if (c.dim == 0)
                continue;
            if (c.dim == 1) {
                const auto g = static_cast<std::uint32_t>(a.size());
                a = extend_algebra(a, {Generator{c.id, 0, g + 1}, Generator{c.id + "^-1", 0, g}}, {});
                continue;
            }
            const NCPoly y = c.dim == 2 ? detail::parse_attach_word(a, c)
                                        : (c.attach ? parse_poly(a, *c.attach) : NCPoly(x.field));
            a = attach_cell(a, c.dim, y, c.id);
        } catch (const Error& e) {
            throw Error(e.kind(), "cell " + c.id + ": " + e.what());
        }
    }
    // Re-verify the finished algebra independently of the incremental checks.
    return make_algebra(a.field(), a.generators(), [&] {
        std::map<std::uint32_t, NCPoly> d;
        for (std::uint32_t g = 0; g < a.size(); ++g)
            if (!a.is_inverse(g))
                d.emplace(g, a.diff(g));
        return d;
    }());
}

/// Degree-preserving algebra map commuting with the differentials.
class AlgebraMap {
public:
    AlgebraMap(FreeDGA source, FreeDGA target, std::vector<NCPoly> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (!(source_.field() == target_.field()))
            throw Error(ErrorKind::field_mismatch, "algebra map between different fields");
        if (images_.size() != source_.size())
            throw Error(ErrorKind::invalid_map, "need one image per source generator");
        for (std::uint32_t g = 0; g < source_.size(); ++g) {
            if (!source_.is_inverse(g))
                continue;
            const auto base = *source_.generator(g).inverse_of;
            if (images_[g].is_zero() && !images_[base].is_zero())
                images_[g] = invert_monomial(images_[base]);
        }
        for (std::uint32_t g = 0; g < source_.size(); ++g) {
            const auto d = target_.degree_of(images_[g]);
            if (!images_[g].is_zero() && (!d || *d != source_.generator(g).degree))
                throw Error(ErrorKind::invalid_map, "image of " + source_.generator(g).name + " has the wrong degree");
            if (source_.generator(g).inverse_of) {
                const auto inv = *source_.generator(g).inverse_of;
                const NCPoly prod = target_.multiply(images_[g], images_[inv]);
                if (!(prod == NCPoly::constant(target_.field(), 1)))
                    throw Error(ErrorKind::invalid_map, "images of " + source_.generator(g).name + " and its inverse are not inverse");
            }
        }
        for (std::uint32_t g = 0; g < source_.size(); ++g) {
            const NCPoly lhs = apply(source_.diff(g));
            const NCPoly rhs = target_.differential(images_[g]);
            if (!(lhs == rhs))
                throw Error(ErrorKind::invalid_map, "map does not commute with d on " + source_.generator(g).name);
        }
    }

    const FreeDGA& source() const { return source_; }
    const FreeDGA& target() const { return target_; }
    const NCPoly& image(std::uint32_t g) const { return images_.at(g); }

    NCPoly apply(const NCPoly& p) const {
        NCPoly out(target_.field());
        for (const auto& [w, c] : p.terms()) {
            NCPoly term = NCPoly::constant(target_.field(), 1);
            for (auto g : w)
                term = target_.multiply(term, images_[g]);
            out += term * c;
        }
        return out;
    }

    /// Image generator when this map sends every generator to a distinct generator.
    std::optional<std::vector<std::uint32_t>> as_generator_inclusion() const {
        std::vector<std::uint32_t> out;
        std::set<std::uint32_t> seen;
        for (const auto& p : images_) {
            if (p.size() != 1 || !p.terms().begin()->second.is_one() || p.terms().begin()->first.size() != 1)
                return std::nullopt;
            const auto h = p.terms().begin()->first.front();
            if (!seen.insert(h).second)
                return std::nullopt;
            out.push_back(h);
        }
        return out;
    }

private:
    NCPoly invert_monomial(const NCPoly& p) const {
        if (p.size() != 1)
            throw Error(ErrorKind::invalid_map, "cannot infer the image of an inverse generator from a non-monomial");
        const auto& [w, c] = *p.terms().begin();
        Word inv;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            const auto& g = target_.generator(*it).inverse_of;
            if (!g)
                throw Error(ErrorKind::invalid_map, "image word contains a non-invertible letter");
            inv.push_back(*g);
        }
        return NCPoly::monomial(target_.field(), inv, c.inverse());
    }

    FreeDGA source_;
    FreeDGA target_;
    std::vector<NCPoly> images_;
};

/// Pushout of B <-f- A -g-> C where f includes A's generators among B's.
/// The result is C with B's remaining generators adjoined, their differentials
/// rewritten through g.
inline FreeDGA glue(const AlgebraMap& f, const AlgebraMap& g) {
    if (!same_algebra(f.source(), g.source()))
        throw Error(ErrorKind::invalid_map, "glue needs maps out of the same algebra");
    const auto inclusion = f.as_generator_inclusion();
    if (!inclusion)
        throw Error(ErrorKind::unsupported, "glue supports only pushouts along generator inclusions");
    const FreeDGA& a = f.source();
    const FreeDGA& b = f.target();
    const FreeDGA& c = g.target();
    for (std::uint32_t i = 0; i < a.size(); ++i) {
        const auto inv = a.generator(i).inverse_of;
        const auto binv = b.generator((*inclusion)[i]).inverse_of;
        if (inv.has_value() != binv.has_value() || (inv && *binv != (*inclusion)[*inv]))
            throw Error(ErrorKind::unsupported, "inclusion does not respect inverse pairs");
    }

    std::set<std::string> names;
    for (const auto& gen : c.generators())
        names.insert(gen.name);
    auto fresh_name = [&](std::string base) {
        // inverse generators are renamed together with their partner
        while (names.count(base))
            base += "'";
        names.insert(base);
        return base;
    };

    std::vector<std::optional<NCPoly>> substitution(b.size());
    for (std::uint32_t i = 0; i < a.size(); ++i)
        substitution[(*inclusion)[i]] = g.image(i);

    std::vector<Generator> extra;
    std::vector<std::uint32_t> copy_of(b.size(), 0);
    auto next = static_cast<std::uint32_t>(c.size());
    for (std::uint32_t h = 0; h < b.size(); ++h) {
        if (substitution[h] || b.is_inverse(h))
            continue;
        const auto& gen = b.generator(h);
        if (gen.inverse_of) {
            const std::string base = fresh_name(gen.name);
            names.insert(base + "^-1");
            extra.push_back({base, 0, next + 1});
            extra.push_back({base + "^-1", 0, next});
            copy_of[h] = next;
            copy_of[*gen.inverse_of] = next + 1;
            next += 2;
        } else {
            extra.push_back({fresh_name(gen.name), gen.degree, std::nullopt});
            copy_of[h] = next++;
        }
    }
    // Rewrite B-polynomials into the pushout.
    FreeDGA skeleton = extend_algebra(c, extra, {});
    auto rewrite = [&](const NCPoly& p) {
        NCPoly out(c.field());
        for (const auto& [w, coeff] : p.terms()) {
            NCPoly term = NCPoly::constant(c.field(), 1);
            for (auto h : w)
                term = skeleton.multiply(term, substitution[h] ? *substitution[h] : skeleton.gen_poly(copy_of[h]));
            out += term * coeff;
        }
        return out;
    };
    std::map<std::uint32_t, NCPoly> diffs;
    for (std::uint32_t h = 0; h < b.size(); ++h)
        if (!substitution[h] && !b.is_inverse(h) && !b.diff(h).is_zero())
            diffs.emplace(copy_of[h], rewrite(b.diff(h)));
    return extend_algebra(c, extra, diffs);
}

/// The generating algebras.
namespace standard {

/// k[x_n | dx_n = 0]
inline FreeDGA sphere_algebra(Field f, int n) {
    AlgebraBuilder b(f);
    b.add("x" + std::to_string(n), n);
    return b.build();
}

/// k[x_{n-1}, x_n | dx_n = x_{n-1}]
inline FreeDGA disk_algebra(Field f, int n) {
    AlgebraBuilder b(f);
    const auto lo = b.add("x" + std::to_string(n - 1), n - 1);
    const auto hi = b.add("x" + std::to_string(n), n);
    b.set_diff(hi, b.gen(lo));
    return b.build();
}

/// k[a, a^-1]
inline FreeDGA laurent_algebra(Field f) {
    AlgebraBuilder b(f);
    b.add_invertible("a");
    return b.build();
}

/// k[a, a^-1, b | db = a - 1]
inline FreeDGA laurent_disk_algebra(Field f) {
    AlgebraBuilder b(f);
    const auto a = b.add_invertible("a");
    const auto x = b.add("b", 1);
    b.set_diff(x, b.gen(a) - b.constant(1));
    return b.build();
}

/// The ground field as an algebra with no generators.
inline FreeDGA ground(Field f) { return make_algebra(f, {}, {}); }

/// Identity-on-generators inclusion of S(n-1) into D(n) (or S*(0) into D*(1)).
inline AlgebraMap boundary_inclusion(const FreeDGA& sphere, const FreeDGA& disk) {
    std::vector<NCPoly> images;
    for (std::uint32_t g = 0; g < sphere.size(); ++g)
        images.push_back(disk.gen_poly(*disk.find(sphere.generator(g).name)));
    return AlgebraMap(sphere, disk, images);
}

} // namespace standard

inline std::vector<std::string> builtin_space_names() {
    return {"sphere:<n>", "wedge_of_circles:<s>", "rp:2", "rp:3", "cp:<n>", "torus"};
}

/// The example spaces: sphere(n), wedge_of_circles(s), rp(2|3), cp(n), torus.
inline CWComplex builtin_space(const std::string& name, std::optional<int> param, Field f = Field::rationals()) {
    CWComplex x;
    x.field = f;
    x.cells.push_back({"e0", 0, std::nullopt});
    auto need = [&](int min) {
        if (!param || *param < min)
            throw Error(ErrorKind::unknown_space, name + " needs a parameter >= " + std::to_string(min));
        return *param;
    };
    if (name == "sphere") {
        const int n = need(1);
        x.name = "sphere:" + std::to_string(n);
        if (n == 1)
            x.cells.push_back({"a", 1, std::nullopt});
        else if (n == 2)
            x.cells.push_back({"x1", 2, "1"});
        else
            x.cells.push_back({"x" + std::to_string(n - 1), n, "0"});
    } else if (name == "wedge_of_circles" || name == "wedge") {
        const int s = need(0);
        x.name = "wedge_of_circles:" + std::to_string(s);
        for (int i = 1; i <= s; ++i)
            x.cells.push_back({"a" + std::to_string(i), 1, std::nullopt});
    } else if (name == "rp") {
        const int n = need(2);
        if (n > 3)
            throw Error(ErrorKind::unknown_space, "rp is available for n = 2, 3");
        x.name = "rp:" + std::to_string(n);
        x.cells.push_back({"a", 1, std::nullopt});
        x.cells.push_back({"b", 2, "a*a"});
        if (n == 3)
            x.cells.push_back({"c", 3, "0"});
    } else if (name == "cp") {
        const int n = need(1);
        x.name = "cp:" + std::to_string(n);
        auto gen = [](int k) { return "alpha" + std::to_string(2 * k - 1); };
        x.cells.push_back({gen(1), 2, "1"});
        for (int k = 2; k <= n; ++k) {
            // d alpha_{2k-1} = sum over i + j = k of alpha_{2i-1} alpha_{2j-1}
            std::string cycle;
            for (int i = k - 1; i >= 1; --i) {
                if (!cycle.empty())
                    cycle += " + ";
                cycle += gen(i) + "*" + gen(k - i);
            }
            x.cells.push_back({gen(k), 2 * k, cycle});
        }
    } else if (name == "torus") {
        if (param)
            throw Error(ErrorKind::unknown_space, "torus takes no parameter");
        x.name = "torus";
        x.cells.push_back({"a", 1, std::nullopt});
        x.cells.push_back({"b", 1, std::nullopt});
        x.cells.push_back({"t", 2, "a*b*a^-1*b^-1"});
    } else {
        throw Error(ErrorKind::unknown_space, "no builtin named '" + name + "'");
    }
    return x;
}

/// Parses "name[:param]".
inline CWComplex builtin_space(const std::string& selector, Field f = Field::rationals()) {
    const auto colon = selector.find(':');
    if (colon == std::string::npos)
        return builtin_space(selector, std::nullopt, f);
    const std::string p = selector.substr(colon + 1);
    if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorKind::unknown_space, "bad parameter in '" + selector + "'");
    return builtin_space(selector.substr(0, colon), std::stoi(p), f);
}

} // namespace morita
