#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "morita/morita.hpp"

namespace morita::test {

/// Rank by dense Gaussian elimination over plain rationals or residues; shares
/// no code with the sparse elimination it checks.
inline std::size_t dense_rank(const SparseMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    const bool q = m.field().is_rational();
    const std::uint64_t p = q ? 0 : m.field().characteristic();
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(c, 0));
    for (const auto& e : m.entries())
        a[e.row][e.col] = q ? e.value.rational() : Rational(static_cast<long long>(e.value.residue()));
    auto reduce = [&](Rational x) {
        if (q)
            return x;
        Integer num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
        Integer pp = p;
        num %= pp;
        if (num < 0)
            num += pp;
        den %= pp;
        Integer inv = 1, base = den, e = pp - 2;
        while (e > 0) {
            if (e % 2 == 1)
                inv = inv * base % pp;
            base = base * base % pp;
            e /= 2;
        }
        return Rational(Integer(num * inv % pp));
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && a[piv][col] == 0)
            ++piv;
        if (piv == r)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rank || a[i][col] == 0)
                continue;
            const Rational factor = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < c; ++j)
                a[i][j] = reduce(a[i][j] - factor * a[rank][j]);
        }
        ++rank;
    }
    return rank;
}

inline SparseMatrix random_matrix(std::mt19937& rng, Field f, std::size_t rows, std::size_t cols, double density, int range) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> value(-range, range);
    std::vector<SparseMatrix::Entry> t;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (coin(rng) < density)
                t.push_back({i, j, Scalar(f, value(rng))});
    return SparseMatrix::from_triplets(f, rows, cols, std::move(t));
}

/// Random homogeneous element of degree n built from basis words.
inline NCPoly random_homogeneous(std::mt19937& rng, const FreeDGA& a, int n, std::size_t terms,
                                 std::optional<std::size_t> bound = std::nullopt) {
    const auto words = a.basis_words(n, bound);
    NCPoly p(a.field());
    if (words.empty())
        return p;
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (std::size_t i = 0; i < terms; ++i)
        p.add(words[pick(rng)], Scalar(a.field(), coeff(rng)));
    return p;
}

/// Coefficients of 1 / (1 - sum_g t^{|g|}) up to t^max, by the recursion
/// c_n = sum_g c_{n-|g|}.
inline std::vector<std::size_t> word_count_series(const std::vector<int>& degrees, int max) {
    std::vector<std::size_t> c(static_cast<std::size_t>(max) + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= max; ++n)
        for (int d : degrees)
            if (d <= n)
                c[static_cast<std::size_t>(n)] += c[static_cast<std::size_t>(n - d)];
    return c;
}

inline std::vector<std::size_t> dims(const HomologyTable& t) { return t.dim_list(); }

/// Random quasi-free algebra with generators in degrees 1..3: each new
/// generator's differential is a random cycle of the algebra built so far.
inline FreeDGA random_positive_algebra(std::mt19937& rng, Field f, std::size_t generators) {
    std::uniform_int_distribution<int> degree(1, 3);
    std::uniform_int_distribution<int> coeff(-2, 2);
    FreeDGA a = make_algebra(f, {}, {});
    for (std::size_t i = 0; i < generators; ++i) {
        const int n = degree(rng);
        NCPoly y(f);
        if (n >= 2) {
            const auto words = a.basis_words(n - 1);
            const ChainComplex c = word_complex(a, n);
            for (const auto& z : row_reduce(c.boundary(n - 1)).kernel_basis) {
                const Scalar s(f, coeff(rng));
                for (const auto& [j, v] : z.entries)
                    y.add(words[j], s * v);
            }
        }
        const auto index = static_cast<std::uint32_t>(a.size());
        std::map<std::uint32_t, NCPoly> diff;
        if (!y.is_zero())
            diff.emplace(index, y);
        a = extend_algebra(a, {Generator{"g" + std::to_string(i), n, std::nullopt}}, diff);
    }
    return a;
}

/// The same algebra with generators declared in the order perm (perm[i] = old index).
inline FreeDGA permute_generators(const FreeDGA& a, const std::vector<std::uint32_t>& perm) {
    std::vector<std::uint32_t> position(perm.size());
    for (std::uint32_t i = 0; i < perm.size(); ++i)
        position[perm[i]] = i;
    auto move = [&](const NCPoly& p) {
        NCPoly out(a.field());
        for (const auto& [w, c] : p.terms()) {
            Word v;
            for (auto g : w)
                v.push_back(position[g]);
            out.add(v, c);
        }
        return out;
    };
    std::vector<Generator> gens;
    std::map<std::uint32_t, NCPoly> diffs;
    for (std::uint32_t i = 0; i < perm.size(); ++i) {
        Generator g = a.generator(perm[i]);
        if (g.inverse_of)
            g.inverse_of = position[*g.inverse_of];
        gens.push_back(g);
    }
    // the inverse member of each pair is re-derived
    for (std::uint32_t i = 0; i < perm.size(); ++i) {
        const auto& g = gens[i];
        if (g.inverse_of && *g.inverse_of < i)
            continue;
        if (!a.diff(perm[i]).is_zero())
            diffs.emplace(i, move(a.diff(perm[i])));
    }
    return make_algebra(a.field(), gens, diffs);
}

inline SparseMatrix random_invertible(std::mt19937& rng, Field f, std::size_t n) {
    for (;;) {
        const SparseMatrix m = random_matrix(rng, f, n, n, 0.7, 3);
        if (dense_rank(m) == n)
            return m;
    }
}

/// Block-diagonal embedding of square blocks.
inline SparseMatrix block_diagonal(Field f, const std::vector<SparseMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks)
        n += b.rows();
    std::vector<SparseMatrix::Entry> t;
    std::size_t at = 0;
    for (const auto& b : blocks) {
        for (const auto& e : b.entries())
            t.push_back({at + e.row, at + e.col, e.value});
        at += b.rows();
    }
    return SparseMatrix::from_triplets(f, n, n, std::move(t));
}

/// Random two-term complex in degrees s, s+1 with a random chain automorphism,
/// total dimension <= max_total. Built from the normal form d = [[I,0],[0,0]],
/// whose automorphisms are [[A,Y],[0,C0]] on C_s and [[A,0],[X,C1]] on C_{s+1},
/// then conjugated by random changes of basis.
inline MonodromyPair random_monodromy_pair(std::mt19937& rng, Field f, std::size_t max_total) {
    std::uniform_int_distribution<std::size_t> part(0, max_total);
    std::size_t r, k0, k1;
    do {
        r = part(rng);
        k0 = part(rng);
        k1 = part(rng);
    } while (r + r + k0 + k1 == 0 || 2 * r + k0 + k1 > max_total);
    std::uniform_int_distribution<int> shift_dist(-1, 1);
    const int s = shift_dist(rng);
    const std::size_t n0 = r + k0, n1 = r + k1;
    auto embed = [](const SparseMatrix& m, std::size_t r0, std::size_t c0, std::vector<SparseMatrix::Entry>& t) {
        for (const auto& e : m.entries())
            t.push_back({r0 + e.row, c0 + e.col, e.value});
    };
    const SparseMatrix A = random_invertible(rng, f, r), C0 = random_invertible(rng, f, k0),
                       C1 = random_invertible(rng, f, k1);
    const SparseMatrix Y = random_matrix(rng, f, r, k0, 0.5, 2), X = random_matrix(rng, f, k1, r, 0.5, 2);
    std::vector<SparseMatrix::Entry> t0, t1, tn;
    embed(A, 0, 0, t0);
    embed(Y, 0, r, t0);
    embed(C0, r, r, t0);
    embed(A, 0, 0, t1);
    embed(X, r, 0, t1);
    embed(C1, r, r, t1);
    for (std::size_t i = 0; i < r; ++i)
        tn.push_back({i, i, Scalar::one(f)});
    const SparseMatrix psi0 = SparseMatrix::from_triplets(f, n0, n0, t0);
    const SparseMatrix psi1 = SparseMatrix::from_triplets(f, n1, n1, t1);
    const SparseMatrix normal = SparseMatrix::from_triplets(f, n0, n1, tn);
    const SparseMatrix P0 = random_invertible(rng, f, n0), P1 = random_invertible(rng, f, n1);
    const SparseMatrix P0i = inverse(P0), P1i = inverse(P1);
    const SparseMatrix d = P0 * normal * P1i;
    std::map<int, SparseMatrix> boundaries;
    if (n0 > 0 && n1 > 0)
        boundaries.emplace(s + 1, d);
    const ChainComplex carrier(f, {{s, n0}, {s + 1, n1}}, boundaries);
    // layout puts degree s first
    const SparseMatrix phi = block_diagonal(f, {P0 * psi0 * P0i, P1 * psi1 * P1i});
    return make_monodromy_pair(carrier, phi);
}

} // namespace morita::test
