// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace morita;
using morita::test::dims;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

using Dims = std::vector<std::size_t>;

FreeDGA model(const std::string& name, Field f = Q) { return cellular_model(builtin_space(name, f)); }

std::string show(const Dims& d) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        os << (i ? "," : "") << d[i];
    os << ")";
    return os.str();
}

// Collects mismatches; a criterion passes when none were recorded.
struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok)
            failures.push_back(what);
    }
    void same(const Dims& got, const Dims& want, const std::string& what) {
        if (got != want)
            failures.push_back(what + ": got " + show(got) + ", expected " + show(want));
    }
};

Dims ext_kk(const FreeDGA& a, int max) {
    const Representation k = trivial_module(a);
    return dims(derived_hom(k, k, max));
}

void spheres(Check& c) {
    for (int n = 2; n <= 4; ++n) {
        Dims want(9, 0);
        for (int k = 0; k <= 8; k += n - 1)
            want[static_cast<std::size_t>(k)] = 1;
        const auto h = algebra_homology(model("sphere:" + std::to_string(n)), 8);
        c.same(dims(h), want, "sphere:" + std::to_string(n));
        c.expect(h.stability == Stability::exact, "sphere homology not exact");
    }
}

void projective_plane(Check& c) {
    const FreeDGA a = model("cp:2");
    c.same(dims(algebra_homology(a, 9)), {1, 1, 0, 0, 1, 1, 0, 0, 1, 1}, "cp:2 loop homology");
    // the degree 4 class is alpha3*alpha1 + alpha1*alpha3 modulo alpha1^4
    const ChainComplex w = word_complex(a, 5);
    const auto words = a.basis_words(4);
    const auto alpha1 = *a.find("alpha1"), alpha3 = *a.find("alpha3");
    std::map<std::size_t, Scalar> entries;
    for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i] == Word{alpha3, alpha1} || words[i] == Word{alpha1, alpha3})
            entries.emplace(i, Scalar::one(Q));
    c.expect(entries.size() == 2, "degree 4 words missing");
    const SparseVector v = SparseVector::from_map(Q, words.size(), entries);
    c.expect((w.boundary(4) * v).is_zero(), "alpha3*alpha1 + alpha1*alpha3 is not a cycle");
    c.expect(!is_boundary(w, 4, v), "alpha3*alpha1 + alpha1*alpha3 is a boundary");
    const auto reps = homology_basis(w, 4);
    c.expect(reps.size() == 1, "H_4 is not one-dimensional");
    if (reps.size() == 1 && entries.size() == 2) {
        Scalar coefficient = Scalar::zero(Q);
        for (const auto& [i, s] : reps[0].entries)
            if (i == entries.begin()->first)
                coefficient = s;
        c.expect(!coefficient.is_zero() && is_boundary(w, 4, reps[0].axpy(-coefficient, v)),
                 "H_4 representative differs from alpha3*alpha1 + alpha1*alpha3");
    }
}

void gluing(Check& c) {
    const FreeDGA s1 = standard::sphere_algebra(Q, 1);
    const auto f = standard::boundary_inclusion(s1, standard::disk_algebra(Q, 2));
    c.same(dims(algebra_homology(glue(f, f), 5)), dims(algebra_homology(standard::sphere_algebra(Q, 2), 5)),
           "D(2) glued along S(1)");
    const auto g = standard::boundary_inclusion(standard::laurent_algebra(Q), standard::laurent_disk_algebra(Q));
    const auto h = algebra_homology(glue(g, g), 3, 6);
    c.same(dims(h), {1, 1, 1, 1}, "Laurent disks glued along the Laurent algebra");
    c.expect(h.stability == Stability::truncation_stable, "Laurent gluing not truncation-stable");
}

void ext_examples(Check& c) {
    c.same(ext_kk(model("sphere:2"), 2), {1, 0, 1}, "Ext sphere:2");
    c.same(ext_kk(model("sphere:3"), 3), {1, 0, 0, 1}, "Ext sphere:3");
    c.same(ext_kk(model("cp:2"), 4), {1, 0, 1, 0, 1}, "Ext cp:2");
    c.same(ext_kk(model("rp:2", F2), 2), {1, 1, 1}, "Ext rp:2 over F_2");
    c.same(ext_kk(model("rp:2"), 2), {1, 0, 0}, "Ext rp:2 over Q");
    c.same(ext_kk(model("torus"), 2), {1, 2, 1}, "Ext torus");
    c.same(ext_kk(model("sphere:1"), 1), {1, 1}, "Ext sphere:1");
    for (const std::string name : {"sphere:2", "sphere:3", "cp:2", "cp:3"}) {
        const FreeDGA a = model(name);
        c.same(ext_kk(a, 5), dims(bar_ext_oracle(a, 5)), "bar cross-check " + name);
    }
}

MonodromyPair scalar(Field f, long long lambda) {
    return make_monodromy_pair(ChainComplex(f, {{0, 1}}, {}), SparseMatrix::from_dense(f, {{lambda}}));
}

void monodromy(Check& c) {
    c.same(dims(monodromy_hom(scalar(Q, 1), scalar(Q, 1), 1)), {1, 1}, "lambda = 1");
    c.same(dims(monodromy_hom(scalar(Q, 3), scalar(Q, 1), 1)), {0, 0}, "lambda = 3 against 1");
    c.same(dims(monodromy_hom(scalar(Q, -1), scalar(Q, 1), 1)), {0, 0}, "lambda = -1 against 1");
    const auto j = make_monodromy_pair(ChainComplex(Q, {{0, 2}}, {}), SparseMatrix::from_dense(Q, {{1, 1}, {0, 1}}));
    c.same(dims(monodromy_hom(j, j, 1)), {2, 2}, "Jordan block");
    std::mt19937 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const Field f = trial % 5 == 4 ? Field::prime(3) : Q;
        const FreeDGA s0 = standard::laurent_algebra(f);
        const auto pm = test::random_monodromy_pair(rng, f, 4);
        const auto pn = test::random_monodromy_pair(rng, f, 4);
        c.same(dims(monodromy_hom(pm, pn, 3)), dims(derived_hom(as_laurent_module(s0, pm), as_laurent_module(s0, pn), 3)),
               "random pair " + std::to_string(trial));
    }
}

void hopf_object(Check& c) {
    const FreeDGA s1 = standard::sphere_algebra(Q, 1);
    const ChainComplex carrier(Q, {{-1, 1}, {0, 1}}, {});
    const Representation h =
        make_representation(s1, carrier, {{0, SparseMatrix::from_triplets(Q, 2, 2, {{1, 0, Scalar::one(Q)}})}});
    c.expect(h.residue(0).is_zero(), "Hopf object does not satisfy the compatibility law");
    const std::size_t end0 = derived_hom(h, h, 0).dim(0);
    c.expect(end0 == 2, "End^0 of the Hopf object is " + std::to_string(end0) + ", expected 2");
}

void hochschild(Check& c) {
    c.same(dims(hh_small(standard::sphere_algebra(Q, 1), 4)), {1, 1, 1, 1, 1}, "HH_* of S(1)");
    for (const Field f : {Q, F2, Field::prime(3)}) {
        for (const auto& [name, a] : std::vector<std::pair<std::string, FreeDGA>>{
                 {"S(1)", standard::sphere_algebra(f, 1)},
                 {"S(2)", standard::sphere_algebra(f, 2)},
                 {"D(2)", standard::disk_algebra(f, 2)},
                 {"cp:2", model("cp:2", f)},
                 {"cp:3", model("cp:3", f)}})
            c.same(dims(hh_small(a, 4)), dims(bar_oracle(a, 4)), "HH oracle " + name + " over " + f.name());
    }
    std::mt19937 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        const FreeDGA a = test::random_positive_algebra(rng, Q, 1 + static_cast<std::size_t>(trial % 3));
        c.same(dims(hh_small(a, 3)), dims(bar_oracle(a, 3)), "HH oracle random " + std::to_string(trial));
    }
}

ChainComplex random_complex(std::mt19937& rng, Field f) {
    // d_2 is built from kernel vectors of d_1, so d_1 d_2 = 0
    std::uniform_int_distribution<std::size_t> size(1, 6);
    const std::size_t c0 = size(rng), c1 = size(rng), c2 = size(rng);
    const SparseMatrix d1 = test::random_matrix(rng, f, c0, c1, 0.5, 3);
    const auto kernel = row_reduce(d1).kernel_basis;
    std::vector<SparseVector> columns;
    std::uniform_int_distribution<int> coefficient(-2, 2);
    for (std::size_t j = 0; j < c2; ++j) {
        SparseVector v(f, c1);
        for (const auto& k : kernel)
            v = v.axpy(Scalar(f, coefficient(rng)), k);
        columns.push_back(v);
    }
    return ChainComplex(f, {{0, c0}, {1, c1}, {2, c2}}, {{1, d1}, {2, SparseMatrix::from_columns(f, c1, columns)}});
}

void properties(Check& c) {
    std::mt19937 rng(71);
    const int cases = 100;
    const std::vector<std::pair<FreeDGA, std::optional<std::size_t>>> algebras = {
        {model("cp:3"), std::nullopt}, {model("torus"), 3}, {model("rp:2", Field::prime(3)), 3}};
    std::map<std::string, int> held;
    for (int trial = 0; trial < cases; ++trial) {
        const auto& [a, bound] = algebras[static_cast<std::size_t>(trial) % algebras.size()];
        const int p = trial % 4, q = 1 + (trial / 4) % 3;
        const NCPoly u = test::random_homogeneous(rng, a, p, 3, bound);
        const NCPoly v = test::random_homogeneous(rng, a, q, 3, bound);
        held["d^2 = 0"] += a.differential(a.differential(v)).is_zero();
        held["augmentation kills boundaries"] += a.augmentation(a.differential(v)).is_zero();
        const NCPoly lhs = a.differential(a.multiply(u, v));
        const NCPoly rhs =
            a.multiply(a.differential(u), v) + a.multiply(u, a.differential(v)) * Scalar::sign(a.field(), p % 2 != 0);
        held["Leibniz"] += lhs == rhs;
    }
    const FreeDGA torus = model("torus");
    std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(torus.size() - 1));
    for (int trial = 0; trial < cases; ++trial) {
        Word w;
        for (int i = 0; i < 6; ++i)
            w.push_back(letter(rng));
        Word padded = w;
        for (int k = 0; k < 3; ++k) {
            std::uint32_t g = letter(rng);
            while (!torus.generator(g).inverse_of)
                g = letter(rng);
            std::uniform_int_distribution<std::size_t> at(0, padded.size());
            padded.insert(padded.begin() + static_cast<std::ptrdiff_t>(at(rng)), {g, *torus.generator(g).inverse_of});
        }
        held["reduction confluence"] += torus.reduce(padded) == torus.reduce(w);
    }
    for (int trial = 0; trial < cases; ++trial) {
        const Field f = trial % 4 == 0 ? F2 : Q;
        const FreeDGA a = test::random_positive_algebra(rng, f, 1 + static_cast<std::size_t>(trial % 3));
        held["resolution exactness"] += resolution_is_exact(semifree_resolution(a), 4);
        std::vector<int> degrees;
        for (std::uint32_t g = 0; g < a.size(); ++g)
            degrees.push_back(a.generator(g).degree);
        const auto series = test::word_count_series(degrees, 6);
        bool counts = true;
        for (int n = 0; n <= 6; ++n)
            counts = counts && a.basis_words(n).size() == series[static_cast<std::size_t>(n)];
        held["word counts"] += counts;
    }
    for (int trial = 0; trial < cases; ++trial) {
        const ChainComplex k = random_complex(rng, trial % 2 ? F2 : Q);
        long long chain = 0, homology = 0;
        const auto h = homology_dims(k, 0, 2);
        for (int n = 0; n <= 2; ++n) {
            const long long sign = n % 2 ? -1 : 1;
            chain += sign * static_cast<long long>(k.dim(n));
            homology += sign * static_cast<long long>(h.dim(n));
        }
        held["Euler characteristic"] += chain == homology;
    }
    for (const auto& [name, count] : held)
        c.expect(count == cases, name + " held in " + std::to_string(count) + "/" + std::to_string(cases) + " cases");
}

struct Criterion {
    int number;
    std::string title;
    double seconds;
    std::function<void(Check&)> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "sphere loop homology", 1, spheres},
        {2, "CP^2 loop homology and degree 4 class", 5, projective_plane},
        {3, "gluing", 5, gluing},
        {4, "Ext of the trivial module", 5, ext_examples},
        {5, "monodromy pairs", 5, monodromy},
        {6, "Hopf object End^0", 1, hopf_object},
        {7, "Hochschild homology", 30, hochschild},
        {8, "property suites", 60, properties},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.body(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > cr.seconds) {
            std::ostringstream os;
            os << "took " << elapsed << " s, limit " << cr.seconds << " s";
            c.failures.push_back(os.str());
        }
        const bool ok = c.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("criterion %d %s: %s (%.3f s)\n", cr.number, cr.title.c_str(), ok ? "PASS" : "FAIL", elapsed);
        for (const auto& f : c.failures)
            std::printf("    %s\n", f.c_str());
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
