#include "orthoalg/generators.hpp"
#include "orthoalg/observable.hpp"

#include <doctest.h>

#include <cmath>

using namespace orthoalg;

namespace {

const Tolerances kTol;

double mnorm(const Matrix& m) { return operator_norm(m); }

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("streams replay and separate") {
    Rng a(7, 3), b(7, 3), c(7, 4);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 32; ++i) {
        std::uint64_t va = a.next(), vb = b.next(), vc = c.next();
        all_equal = all_equal && (va == vb);
        any_diff = any_diff || (va != vc);
    }
    CHECK(all_equal);
    CHECK(any_diff);

    Rng d(7, 3);
    double x = d.real01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK_THROWS_AS(d.index(0), Error);
}

TEST_CASE("random unitaries are unitary and reproducible") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Rng rng(seed);
        Matrix u = random_unitary(6, rng);
        CHECK(mnorm(Matrix(u.adjoint() * u - Matrix::Identity(6, 6))) <= 1e-12);

        Rng rng2(seed);
        Matrix u2 = random_unitary(6, rng2);
        CHECK((u - u2).norm() == 0.0);
    }
}

TEST_CASE("orthogonal tuples deliver pairwise-orthogonal nonzero members") {
    for (SpectrumStyle style : {SpectrumStyle::well_separated, SpectrumStyle::clustered}) {
        for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
            Rng rng(seed);
            auto tuple = random_orthogonal_tuple(7, 3, rng, kTol, style);
            REQUIRE(tuple.size() == 3);
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                CHECK_FALSE(tuple[i].is_zero());
                for (std::size_t j = i + 1; j < tuple.size(); ++j)
                    CHECK(is_orthogonal(tuple[i], tuple[j]).verdict);
            }
        }
    }
    Rng rng(9);
    CHECK_THROWS_AS(random_orthogonal_tuple(3, 3, rng, kTol, SpectrumStyle::well_separated),
                    Error);
}

TEST_CASE("comparable pairs and chains really are ordered") {
    for (SpectrumStyle style : {SpectrumStyle::well_separated, SpectrumStyle::clustered}) {
        for (std::uint64_t seed : {10u, 11u, 12u, 13u}) {
            Rng rng(seed);
            auto [a, b] = random_comparable_pair(6, rng, kTol, style);
            CHECK(leq(a, b).verdict);

            Rng rng2(seed + 100);
            auto chain = random_chain(6, rng2, kTol, style);
            CHECK(leq(chain[0], chain[1]).verdict);
            CHECK(leq(chain[1], chain[2]).verdict);
            CHECK(leq(chain[0], chain[2]).verdict);  // transitivity on the nose
        }
    }
}

TEST_CASE("well-separated values come from the integer pool") {
    Rng rng(20);
    auto values = style_values(SpectrumStyle::well_separated, 12, rng, kTol);
    for (double v : values) {
        CHECK(std::abs(v) >= 1.0);
        CHECK(std::abs(v) <= 3.0);
        CHECK(v == std::round(v));
        CHECK(v != 0.0);
    }
}

TEST_CASE("clustered spectra sit below norm one and split at ten thresholds") {
    for (std::uint64_t seed : {30u, 31u, 32u, 33u}) {
        Rng rng(seed);
        auto values = style_values(SpectrumStyle::clustered, 6, rng, kTol);
        double min_gap = 1e9;
        for (double v : values) CHECK(std::abs(v) < 1.0);
        std::sort(values.begin(), values.end());
        for (std::size_t i = 1; i < values.size(); ++i) {
            double g = values[i] - values[i - 1];
            if (g > 0) min_gap = std::min(min_gap, g);
        }
        // The tight splits are exactly 10 * cluster_rel (norm < 1 keeps the
        // scale floor at 1).
        CHECK(min_gap == doctest::Approx(10 * kTol.cluster_rel).epsilon(1e-9));
    }

    // The decomposition must keep such gaps apart: distinct values map to
    // distinct atoms even at the 10x threshold separation.
    Rng rng(34);
    auto pair = random_orthogonal_tuple(6, 2, rng, kTol, SpectrumStyle::clustered);
    for (const auto& o : pair) {
        CHECK(o.norm() < 1.0);
        CHECK_FALSE(o.decomposition().cluster_ambiguity());
    }
}

TEST_CASE("pair kinds exhibit their advertised relations") {
    for (std::uint64_t seed : {40u, 41u, 42u}) {
        Rng rng(seed);
        auto [o1, o2] = random_pair(PairKind::orthogonal, 6, rng, kTol,
                                    SpectrumStyle::well_separated);
        CHECK(is_orthogonal(o1, o2).verdict);

        auto [v1, v2] = random_pair(PairKind::overlapping, 6, rng, kTol,
                                    SpectrumStyle::well_separated);
        CHECK_FALSE(is_orthogonal(v1, v2).verdict);

        auto [c1, c2] = random_pair(PairKind::comparable, 6, rng, kTol,
                                    SpectrumStyle::well_separated);
        CHECK(leq(c1, c2).verdict);

        auto [n1, n2] = random_pair(PairKind::near_comparable, 6, rng, kTol,
                                    SpectrumStyle::well_separated);
        CHECK_FALSE(leq(n1, n2).verdict);

        // Generic dense pairs must at least answer consistently (no throw).
        auto [g1, g2] = random_pair(PairKind::generic, 6, rng, kTol,
                                    SpectrumStyle::well_separated);
        CHECK_NOTHROW(is_orthogonal(g1, g2));
        CHECK_NOTHROW(leq(g1, g2));
    }
}

}  // TEST_SUITE
