#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace morita;
using morita::test::dims;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

FreeDGA model(const std::string& name, Field f = Q) { return cellular_model(builtin_space(name, f)); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::unsupported;
}

std::vector<std::pair<std::string, FreeDGA>> positive_algebras(Field f) {
    return {{"S(1)", standard::sphere_algebra(f, 1)},
            {"S(2)", standard::sphere_algebra(f, 2)},
            {"D(2)", standard::disk_algebra(f, 2)},
            {"cp:2", model("cp:2", f)},
            {"cp:3", model("cp:3", f)}};
}

} // namespace

TEST(HochschildHomology, GroundField) {
    const FreeDGA k = standard::ground(Q);
    EXPECT_EQ(dims(hh_small(k, 3)), (std::vector<std::size_t>{1, 0, 0, 0}));
    EXPECT_EQ(dims(bar_oracle(k, 3)), (std::vector<std::size_t>{1, 0, 0, 0}));
}

TEST(HochschildHomology, PolynomialAlgebraOnADegreeOneClass) {
    const FreeDGA s1 = standard::sphere_algebra(Q, 1);
    EXPECT_EQ(dims(hh_small(s1, 4)), (std::vector<std::size_t>{1, 1, 1, 1, 1}));
    EXPECT_EQ(dims(bar_oracle(s1, 4)), (std::vector<std::size_t>{1, 1, 1, 1, 1}));
    // over F_2 the commutator x^n (x) x -> 2 x^{n+1} vanishes for every n
    const FreeDGA s1p = standard::sphere_algebra(F2, 1);
    EXPECT_EQ(dims(hh_small(s1p, 4)), (std::vector<std::size_t>{1, 1, 2, 2, 2}));
}

TEST(HochschildHomology, SmallComplexMatchesBarOracle) {
    for (const Field f : {Q, F2, Field::prime(3)})
        for (const auto& [name, a] : positive_algebras(f))
            EXPECT_EQ(dims(hh_small(a, 4)), dims(bar_oracle(a, 4))) << name << " over " << f.name();
}

TEST(HochschildHomology, SmallComplexMatchesBarOracleOnRandomAlgebras) {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const Field f = trial % 3 == 0 ? Field::prime(2) : Q;
        const FreeDGA a = test::random_positive_algebra(rng, f, 1 + static_cast<std::size_t>(trial % 3));
        ASSERT_EQ(dims(hh_small(a, 3)), dims(bar_oracle(a, 3))) << "trial " << trial;
    }
}

TEST(HochschildHomology, DegreeZeroOfAConnectedAlgebraIsTheGroundField) {
    for (const auto& [name, a] : positive_algebras(Q)) {
        EXPECT_EQ(hh_small(a, 0).dim(0), 1u) << name;
        EXPECT_EQ(bar_oracle(a, 0).dim(0), 1u) << name;
    }
}

TEST(HochschildHomology, AssembledComplexesAreComplexes) {
    // ChainComplex rejects d^2 != 0 on construction
    for (const std::string name : {"sphere:2", "sphere:3", "cp:2", "cp:3", "cp:4"})
        EXPECT_NO_THROW(hh_small_complex(model(name), 6)) << name;
}

TEST(HochschildHomology, LaurentAlgebraIsTruncationUnstable) {
    // HH_0(k[Z]) = k[Z] is infinite-dimensional; at bound L every reduced word
    // of length <= L survives
    const FreeDGA s0 = standard::laurent_algebra(Q);
    for (std::size_t bound : {2u, 4u}) {
        const auto t = hh_small(s0, 1, bound);
        EXPECT_EQ(t.dim(0), 2 * bound + 1);
        EXPECT_EQ(t.stability, Stability::truncation_unstable);
    }
}

TEST(HochschildHomology, GuardsDegreeZeroGenerators) {
    EXPECT_EQ(kind_of([] { bar_oracle(standard::laurent_algebra(Q), 2); }), ErrorKind::unsupported);
    EXPECT_EQ(kind_of([] { hh_small(standard::laurent_algebra(Q), 2); }), ErrorKind::unbounded_enumeration);
    EXPECT_EQ(kind_of([] { hh_small_complex(model("torus"), 2); }), ErrorKind::unsupported);
    try {
        bar_oracle(model("rp:2"), 1);
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("--word-bound"), std::string::npos);
    }
}

TEST(HochschildCohomology, GroundField) {
    const auto t = hh_cohomology_small(standard::ground(Q), 2);
    EXPECT_EQ(t.lo, -2);
    EXPECT_EQ(t.hi, 0);
    EXPECT_EQ(dims(t), (std::vector<std::size_t>{0, 0, 1}));
    EXPECT_EQ(t.convention, DegreeConvention::cohomological);
}

TEST(HochschildCohomology, SmallComplexMatchesBarOracle) {
    const FreeDGA s1 = standard::sphere_algebra(Q, 1);
    const FreeDGA s2 = standard::sphere_algebra(Q, 2);
    const FreeDGA cp2 = model("cp:2");
    for (const auto& [a, depth] : std::vector<std::pair<FreeDGA, int>>{{s1, 8}, {s2, 8}, {cp2, 4}}) {
        const auto oracle = bar_cohomology_oracle(a, 3, depth);
        const auto small = hh_cohomology_small(a, 3);
        EXPECT_EQ(oracle.stability, Stability::truncation_stable);
        EXPECT_EQ(oracle.lo, small.lo);
        EXPECT_EQ(oracle.hi, small.hi);
        EXPECT_EQ(dims(small), dims(oracle));
    }
}

TEST(HochschildCohomology, DegreeZeroOfThePolynomialAlgebra) {
    // HH^0 sees the constants only; the grading runs up to |x1| + 1 = 2
    const auto t = hh_cohomology_small(standard::sphere_algebra(Q, 1), 2);
    EXPECT_EQ(t.hi, 2);
    EXPECT_EQ(t.dim(0), 1u);
}

TEST(HochschildCohomology, TruncatedForDegreeZeroGenerators) {
    EXPECT_EQ(kind_of([] { hh_cohomology_small(standard::laurent_algebra(Q), 1); }), ErrorKind::unbounded_enumeration);
    const auto t = hh_cohomology_small(standard::laurent_disk_algebra(Q), 1, 3);
    EXPECT_NE(t.stability, Stability::exact);
    EXPECT_EQ(kind_of([] { bar_cohomology_oracle(standard::laurent_algebra(Q), 1, 2); }), ErrorKind::unsupported);
}
