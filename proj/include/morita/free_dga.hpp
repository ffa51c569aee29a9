#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morita/chain_complex.hpp"
#include "morita/error.hpp"
#include "morita/scalar.hpp"

namespace morita {

/// A word is a sequence of generator indices; the empty word is the unit.
using Word = std::vector<std::uint32_t>;

/// Length-lexicographic order by generator declaration index.
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

struct Generator {
    std::string name;
    int degree = 0;
    std::optional<std::uint32_t> inverse_of;
};

/// Finite linear combination of words with nonzero coefficients.
class NCPoly {
public:
    using Terms = std::map<Word, Scalar, WordOrder>;

    NCPoly() = default;
    explicit NCPoly(Field f) : field_(f) {}

    static NCPoly constant(Field f, long long c) { return monomial(f, {}, Scalar(f, c)); }
    static NCPoly monomial(Field f, Word w, Scalar c) {
        NCPoly p(f);
        p.add(std::move(w), c);
        return p;
    }
    static NCPoly generator(Field f, std::uint32_t g) { return monomial(f, {g}, Scalar::one(f)); }

    Field field() const { return field_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar::zero(field_) : it->second;
    }

    void add(Word w, const Scalar& c) {
        if (c.is_zero())
            return;
        if (!(c.field() == field_))
            throw Error(ErrorKind::field_mismatch, "coefficient over " + c.field().name() + " added to polynomial over " + field_.name());
        auto [it, fresh] = terms_.emplace(std::move(w), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    NCPoly& operator+=(const NCPoly& o) {
        check(o);
        for (const auto& [w, c] : o.terms_)
            add(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        check(o);
        for (const auto& [w, c] : o.terms_)
            add(w, -c);
        return *this;
    }
    NCPoly& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_)
            c *= s;
        return *this;
    }

    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(NCPoly a, const Scalar& s) { return a *= s; }
    NCPoly operator-() const { return *this * Scalar(field_, -1); }

    friend bool operator==(const NCPoly& a, const NCPoly& b) {
        if (a.terms_.size() != b.terms_.size())
            return false;
        auto it = b.terms_.begin();
        for (const auto& [w, c] : a.terms_) {
            if (w != it->first || !(c == it->second))
                return false;
            ++it;
        }
        return true;
    }

private:
    void check(const NCPoly& o) const {
        if (!(o.field_ == field_) && !o.is_zero() && !is_zero())
            throw Error(ErrorKind::field_mismatch, "polynomials over " + field_.name() + " and " + o.field_.name());
    }

    Field field_;
    Terms terms_;
};

/// Quasi-free dg-algebra: free associative algebra on graded generators, with
/// degree-0 inverse pairs, and a differential satisfying d^2 = 0.
class FreeDGA {
public:
    FreeDGA() = default;

    Field field() const { return field_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& generator(std::uint32_t g) const { return gens_.at(g); }
    std::size_t size() const { return gens_.size(); }
    const NCPoly& diff(std::uint32_t g) const { return diffs_.at(g); }

    std::optional<std::uint32_t> find(const std::string& name) const {
        for (std::uint32_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name)
                return i;
        return std::nullopt;
    }

    bool has_degree_zero_generators() const {
        return std::any_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.degree == 0; });
    }

    /// The later-declared member of an inverse pair.
    bool is_inverse(std::uint32_t g) const { return gens_[g].inverse_of && *gens_[g].inverse_of < g; }

    /// One generator per inverse pair plus every generator without an inverse.
    std::vector<std::uint32_t> primary_generators() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t g = 0; g < gens_.size(); ++g)
            if (!is_inverse(g))
                out.push_back(g);
        return out;
    }

    int degree(const Word& w) const {
        int d = 0;
        for (auto g : w)
            d += gens_[g].degree;
        return d;
    }

    /// Homogeneous degree of p; nullopt for zero or mixed-degree input.
    std::optional<int> degree_of(const NCPoly& p) const {
        std::optional<int> d;
        for (const auto& [w, c] : p.terms()) {
            const int k = degree(w);
            if (d && *d != k)
                return std::nullopt;
            d = k;
        }
        return d;
    }

    /// Free reduction: cancels adjacent inverse pairs until none remain.
    Word reduce(const Word& w) const {
        Word out;
        out.reserve(w.size());
        for (auto g : w) {
            check_index(g);
            if (!out.empty() && gens_[out.back()].inverse_of == g)
                out.pop_back();
            else
                out.push_back(g);
        }
        return out;
    }

    Word concat(const Word& a, const Word& b) const {
        Word w = a;
        w.insert(w.end(), b.begin(), b.end());
        return reduce(w);
    }

    NCPoly multiply(const NCPoly& u, const NCPoly& v) const {
        check_member(u);
        check_member(v);
        NCPoly out(field_);
        for (const auto& [a, c] : u.terms())
            for (const auto& [b, e] : v.terms())
                out.add(concat(a, b), c * e);
        return out;
    }

    /// Graded Leibniz rule d(uv) = d(u)v + (-1)^{|u|} u d(v).
    NCPoly differential(const NCPoly& x) const {
        check_member(x);
        NCPoly out(field_);
        for (const auto& [w, c] : x.terms())
            add_word_differential(out, w, c);
        return out;
    }

    NCPoly differential_of_word(const Word& w) const {
        NCPoly out(field_);
        add_word_differential(out, w, Scalar::one(field_));
        return out;
    }

    /// Algebra map to k: positive-degree generators to 0, degree-0 generators to 1.
    Scalar augmentation(const NCPoly& x) const {
        check_member(x);
        Scalar s = Scalar::zero(field_);
        for (const auto& [w, c] : x.terms())
            if (degree(w) == 0)
                s += c;
        return s;
    }

    /// Reduced words of degree n (and length <= bound when given), in canonical order.
    std::vector<Word> basis_words(int n, std::optional<std::size_t> bound = std::nullopt) const {
        if (!bound && has_degree_zero_generators())
            throw Error(ErrorKind::unbounded_enumeration,
                        "degree-0 generators present; a word-length bound is required");
        std::vector<Word> out;
        if (n < 0)
            return out;
        int min_positive = 0;
        for (const auto& g : gens_)
            if (g.degree > 0 && (min_positive == 0 || g.degree < min_positive))
                min_positive = g.degree;
        std::size_t max_len = bound ? *bound : (min_positive ? static_cast<std::size_t>(n / min_positive) : 0);
        if (!has_degree_zero_generators() && min_positive)
            max_len = std::min(max_len, static_cast<std::size_t>(n / min_positive));
        Word current;
        for (std::size_t len = 0; len <= max_len; ++len)
            enumerate(out, current, len, n);
        return out;
    }

    NCPoly word_poly(const Word& w) const { return NCPoly::monomial(field_, w, Scalar::one(field_)); }
    NCPoly gen_poly(std::uint32_t g) const { return NCPoly::generator(field_, g); }

    friend FreeDGA make_algebra(Field f, std::vector<Generator> gens, std::map<std::uint32_t, NCPoly> diffs);

private:
    void check_index(std::uint32_t g) const {
        if (g >= gens_.size())
            throw Error(ErrorKind::invalid_generator, "generator index " + std::to_string(g) + " does not belong to this algebra");
    }

    void check_member(const NCPoly& p) const {
        if (!p.is_zero() && !(p.field() == field_))
            throw Error(ErrorKind::field_mismatch, "polynomial over " + p.field().name() + " used in algebra over " + field_.name());
        for (const auto& [w, c] : p.terms())
            for (auto g : w)
                check_index(g);
    }

    void add_word_differential(NCPoly& out, const Word& w, const Scalar& c) const {
        int prefix_degree = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            const NCPoly& dg = diffs_[w[j]];
            if (!dg.is_zero()) {
                const Scalar sign = Scalar::sign(field_, prefix_degree % 2 != 0) * c;
                Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
                Word suffix(w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end());
                for (const auto& [m, e] : dg.terms())
                    out.add(concat(concat(prefix, m), suffix), sign * e);
            }
            prefix_degree += gens_[w[j]].degree;
        }
    }

    void enumerate(std::vector<Word>& out, Word& current, std::size_t len, int remaining) const {
        if (current.size() == len) {
            if (remaining == 0)
                out.push_back(current);
            return;
        }
        for (std::uint32_t g = 0; g < gens_.size(); ++g) {
            const int d = gens_[g].degree;
            if (d > remaining)
                continue;
            if (!current.empty() && gens_[current.back()].inverse_of == g)
                continue;
            current.push_back(g);
            enumerate(out, current, len, remaining - d);
            current.pop_back();
        }
    }

    Field field_;
    std::vector<Generator> gens_;
    std::vector<NCPoly> diffs_;
};

/// Validates generators and differentials; d(g^-1) is derived as -g^-1 d(g) g^-1.
inline FreeDGA make_algebra(Field f, std::vector<Generator> gens, std::map<std::uint32_t, NCPoly> diffs) {
    FreeDGA a;
    a.field_ = f;
    a.gens_ = std::move(gens);
    const auto n = static_cast<std::uint32_t>(a.gens_.size());
    for (std::uint32_t g = 0; g < n; ++g) {
        const auto& gen = a.gens_[g];
        if (gen.degree < 0)
            throw Error(ErrorKind::invalid_generator, "generator " + gen.name + " has negative degree");
        for (std::uint32_t h = 0; h < g; ++h)
            if (a.gens_[h].name == gen.name)
                throw Error(ErrorKind::invalid_generator, "duplicate generator name " + gen.name);
        if (gen.inverse_of) {
            const auto inv = *gen.inverse_of;
            if (gen.degree != 0)
                throw Error(ErrorKind::invalid_generator, "inverse flag on positive-degree generator " + gen.name);
            if (inv >= n || inv == g || a.gens_[inv].inverse_of != g)
                throw Error(ErrorKind::invalid_generator, "inverse pair of " + gen.name + " is not symmetric");
        }
    }
    for (const auto& [g, p] : diffs) {
        if (g >= n)
            throw Error(ErrorKind::invalid_generator, "differential assigned to unknown generator index " + std::to_string(g));
        if (!p.is_zero() && !(p.field() == f))
            throw Error(ErrorKind::field_mismatch, "differential of " + a.gens_[g].name + " is over " + p.field().name());
        for (const auto& [w, c] : p.terms())
            for (auto h : w)
                if (h >= n)
                    throw Error(ErrorKind::invalid_generator, "differential of " + a.gens_[g].name + " uses an unknown generator");
    }
    a.diffs_.assign(n, NCPoly(f));
    for (std::uint32_t g = 0; g < n; ++g) {
        if (a.is_inverse(g))
            continue;
        auto it = diffs.find(g);
        if (it == diffs.end())
            continue;
        const NCPoly& p = it->second;
        for (const auto& [w, c] : p.terms())
            if (a.degree(w) != a.gens_[g].degree - 1)
                throw Error(ErrorKind::degree_mismatch, "d(" + a.gens_[g].name + ") has a term of degree " +
                                                            std::to_string(a.degree(w)) + ", expected " +
                                                            std::to_string(a.gens_[g].degree - 1));
        a.diffs_[g] = p;
    }
    for (std::uint32_t g = 0; g < n; ++g) {
        if (!a.is_inverse(g))
            continue;
        const auto base = *a.gens_[g].inverse_of;
        auto supplied = diffs.find(g);
        const NCPoly inv = a.gen_poly(g);
        NCPoly derived = -a.multiply(a.multiply(inv, a.diffs_[base]), inv);
        if (supplied != diffs.end() && !(supplied->second == derived))
            throw Error(ErrorKind::invalid_generator, "d(" + a.gens_[g].name + ") contradicts d(g^-1) = -g^-1 d(g) g^-1");
        a.diffs_[g] = std::move(derived);
    }
    for (std::uint32_t g = 0; g < n; ++g) {
        if (!a.augmentation(a.diffs_[g]).is_zero())
            throw Error(ErrorKind::not_augmented, "augmentation of d(" + a.gens_[g].name + ") is nonzero");
        const NCPoly dd = a.differential(a.diffs_[g]);
        if (!dd.is_zero())
            throw Error(ErrorKind::invalid_complex, "d^2(" + a.gens_[g].name + ") != 0 (" + std::to_string(dd.size()) + " nonzero terms)");
    }
    return a;
}

/// Incremental construction with named generators and automatic inverse pairs.
class AlgebraBuilder {
public:
    explicit AlgebraBuilder(Field f) : field_(f) {}

    std::uint32_t add(const std::string& name, int degree) {
        gens_.push_back({name, degree, std::nullopt});
        return static_cast<std::uint32_t>(gens_.size() - 1);
    }

    /// Adds g and g^-1 in degree 0; returns the index of g.
    std::uint32_t add_invertible(const std::string& name) {
        const auto g = static_cast<std::uint32_t>(gens_.size());
        gens_.push_back({name, 0, g + 1});
        gens_.push_back({name + "^-1", 0, g});
        return g;
    }

    void set_diff(std::uint32_t g, NCPoly p) { diffs_[g] = std::move(p); }

    Field field() const { return field_; }
    NCPoly gen(std::uint32_t g) const { return NCPoly::generator(field_, g); }
    NCPoly word(Word w) const { return NCPoly::monomial(field_, std::move(w), Scalar::one(field_)); }
    NCPoly constant(long long c) const { return NCPoly::constant(field_, c); }

    FreeDGA build() const { return make_algebra(field_, gens_, diffs_); }

private:
    Field field_;
    std::vector<Generator> gens_;
    std::map<std::uint32_t, NCPoly> diffs_;
};

namespace detail {

inline std::vector<std::size_t> homology_row(const std::function<std::size_t(int)>& dim_at, int max_degree) {
    std::vector<std::size_t> v;
    for (int n = 0; n <= max_degree; ++n)
        v.push_back(dim_at(n));
    return v;
}

} // namespace detail

/// Chain complex of A in degrees 0..top (all words); only valid without degree-0 generators.
inline ChainComplex word_complex(const FreeDGA& a, int top) {
    std::map<int, std::vector<Word>> bases;
    for (int n = 0; n <= top; ++n)
        bases[n] = a.basis_words(n);
    return assemble_complex<Word>(
        a.field(), bases,
        [&](int, const Word& w) {
            const NCPoly dw = a.differential_of_word(w);
            return std::map<Word, Scalar>(dw.terms().begin(), dw.terms().end());
        });
}

/// Homology dims of A under a word-length bound L (degree-0 generators present).
inline std::vector<std::size_t> truncated_algebra_homology(const FreeDGA& a, int max_degree, std::size_t bound) {
    auto d = [&](const Word& w) {
        const NCPoly dw = a.differential_of_word(w);
        return std::map<Word, Scalar>(dw.terms().begin(), dw.terms().end());
    };
    return detail::homology_row(
        [&](int n) {
            return truncated_homology_dim<Word>(a.field(), a.basis_words(n, bound), a.basis_words(n + 1, bound + 1), d);
        },
        max_degree);
}

/// H_*(A, d) in degrees 0..max_degree. Exact when every generator has positive
/// degree; otherwise computed at word bounds L and L+2 and flagged accordingly.
inline HomologyTable algebra_homology(const FreeDGA& a, int max_degree, std::optional<std::size_t> word_bound = std::nullopt,
                                      bool with_representatives = false) {
    HomologyTable t;
    t.lo = 0;
    t.hi = max_degree;
    if (!a.has_degree_zero_generators()) {
        const ChainComplex c = word_complex(a, max_degree + 1);
        t.dims = homology_dims(c, 0, max_degree).dims;
        if (with_representatives) {
            std::map<int, std::vector<SparseVector>> reps;
            for (int n = 0; n <= max_degree; ++n)
                reps[n] = homology_basis(c, n);
            t.representatives = std::move(reps);
        }
        return t;
    }
    if (!word_bound)
        throw Error(ErrorKind::unbounded_enumeration, "degree-0 generators present; a word-length bound is required");
    const auto at_l = truncated_algebra_homology(a, max_degree, *word_bound);
    const auto at_l2 = truncated_algebra_homology(a, max_degree, *word_bound + 2);
    for (int n = 0; n <= max_degree; ++n)
        t.dims[n] = at_l[static_cast<std::size_t>(n)];
    t.stability = at_l == at_l2 ? Stability::truncation_stable : Stability::truncation_unstable;
    return t;
}

} // namespace morita

namespace morita {

/// Same generators, degrees, inverse pairing and differentials.
inline bool same_algebra(const FreeDGA& a, const FreeDGA& b) {
    if (!(a.field() == b.field()) || a.size() != b.size())
        return false;
    for (std::uint32_t g = 0; g < a.size(); ++g) {
        const auto& x = a.generator(g);
        const auto& y = b.generator(g);
        if (x.name != y.name || x.degree != y.degree || x.inverse_of != y.inverse_of || !(a.diff(g) == b.diff(g)))
            return false;
    }
    return true;
}

/// A with extra generators appended (indices of A are preserved).
inline FreeDGA extend_algebra(const FreeDGA& a, const std::vector<Generator>& extra,
                              const std::map<std::uint32_t, NCPoly>& extra_diffs) {
    std::vector<Generator> gens = a.generators();
    gens.insert(gens.end(), extra.begin(), extra.end());
    std::map<std::uint32_t, NCPoly> diffs;
    for (std::uint32_t g = 0; g < a.size(); ++g)
        if (!a.is_inverse(g) && !a.diff(g).is_zero())
            diffs.emplace(g, a.diff(g));
    for (const auto& [g, p] : extra_diffs)
        diffs[g] = p;
    return make_algebra(a.field(), std::move(gens), std::move(diffs));
}

} // namespace morita
