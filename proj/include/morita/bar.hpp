#pragma once

#include <map>
#include <utility>
#include <vector>

#include "morita/chain_complex.hpp"
#include "morita/error.hpp"
#include "morita/free_dga.hpp"

namespace morita {

/// An element [a1|...|aq] of the reduced bar construction, each a_i a nonempty word.
using BarWord = std::vector<Word>;

namespace detail {

inline void require_positive_generators(const FreeDGA& a, const char* what) {
    if (a.has_degree_zero_generators())
        throw Error(ErrorKind::unsupported, std::string(what) +
                                                " needs all generators in positive degree; use the small complex with --word-bound");
}

inline void enumerate_bar(const FreeDGA& a, int remaining, BarWord& current, std::vector<BarWord>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int d = 1; d + 1 <= remaining; ++d) {
        for (const auto& w : a.basis_words(d)) {
            current.push_back(w);
            enumerate_bar(a, remaining - d - 1, current, out);
            current.pop_back();
        }
    }
}

} // namespace detail

/// All bar words of total degree n, where [a1|...|aq] has degree sum(|a_i| + 1).
inline std::vector<BarWord> bar_basis(const FreeDGA& a, int n) {
    detail::require_positive_generators(a, "bar construction");
    std::vector<BarWord> out;
    BarWord current;
    if (n >= 0)
        detail::enumerate_bar(a, n, current, out);
    return out;
}

inline int bar_degree(const FreeDGA& a, const BarWord& x) {
    int d = 0;
    for (const auto& w : x)
        d += a.degree(w) + 1;
    return d;
}

/// Differential of the reduced bar complex k (x)_A Bar(A) (x)_A k:
/// -sum (-1)^e_i [..|d a_i|..] + sum (-1)^e_{i+1} [..|a_i a_{i+1}|..],
/// with e_i = sum_{j<i} (|a_j| + 1).
inline std::map<BarWord, Scalar> reduced_bar_differential(const FreeDGA& a, const BarWord& x) {
    const Field f = a.field();
    std::map<BarWord, Scalar> out;
    auto add = [&](BarWord k, const Scalar& c) {
        auto [it, fresh] = out.emplace(std::move(k), c);
        if (!fresh)
            it->second += c;
    };
    int e = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (const auto& [w, c] : a.differential_of_word(x[i]).terms()) {
            if (w.empty())
                continue;
            BarWord y = x;
            y[i] = w;
            add(std::move(y), e % 2 ? c : -c);
        }
        e += a.degree(x[i]) + 1;
        if (i + 1 < x.size()) {
            BarWord y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
            y.push_back(a.concat(x[i], x[i + 1]));
            y.insert(y.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 2, x.end());
            add(std::move(y), Scalar::sign(f, e % 2 != 0));
        }
    }
    return out;
}

/// Tor^A_n(k, k) for n = 0..max via the reduced bar complex. Exact: bar words
/// of degree n have at most n/2 letters.
inline std::vector<std::size_t> bar_tor_dims(const FreeDGA& a, int max_degree) {
    std::map<int, std::vector<BarWord>> bases;
    for (int n = 0; n <= max_degree + 1; ++n)
        bases[n] = bar_basis(a, n);
    const ChainComplex c = assemble_complex<BarWord>(
        a.field(), bases, [&](int, const BarWord& x) { return reduced_bar_differential(a, x); });
    std::vector<std::size_t> dims;
    for (int n = 0; n <= max_degree; ++n)
        dims.push_back(c.dim(n) - rank(c.boundary(n)) - rank(c.boundary(n + 1)));
    return dims;
}

} // namespace morita
