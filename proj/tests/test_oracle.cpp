#include "orthoalg/oracle.hpp"

#include <doctest.h>

#include <set>

using namespace orthoalg;
using namespace orthoalg::oracle;

namespace {

const Tolerances kTol;

DiagonalObservable dobs(std::initializer_list<std::int64_t> v) {
    DiagonalObservable d;
    d.values = v;
    return d;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("the partition enumerator hits the Bell numbers") {
    CHECK(count_set_partitions(0) == 1);
    CHECK(count_set_partitions(1) == 1);
    CHECK(count_set_partitions(2) == 2);
    CHECK(count_set_partitions(3) == 5);
    CHECK(count_set_partitions(4) == 15);
    CHECK(count_set_partitions(5) == 52);
}

TEST_CASE("every emitted string is a valid restricted-growth string, once") {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> order;
    for_each_set_partition(4, [&](const std::vector<int>& rgs) {
        REQUIRE(rgs.size() == 4);
        CHECK(rgs[0] == 0);
        int running_max = 0;
        for (std::size_t i = 1; i < rgs.size(); ++i) {
            CHECK(rgs[i] <= running_max + 1);
            CHECK(rgs[i] >= 0);
            running_max = std::max(running_max, rgs[i]);
        }
        CHECK(seen.insert(rgs).second);  // no duplicates
        order.push_back(rgs);
    });
    CHECK(order.size() == 15);
    // Lexicographic: all-in-one-block first, all-singletons last.
    CHECK(order.front() == std::vector<int>{0, 0, 0, 0});
    CHECK(order.back() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("refinement detection on hand-picked partitions") {
    CHECK(is_refinement({0, 1, 2}, {0, 0, 0}));       // singletons refine the lump
    CHECK_FALSE(is_refinement({0, 0, 0}, {0, 1, 2}));
    CHECK(is_refinement({0, 1, 0}, {0, 1, 0}));       // every partition refines itself
    CHECK(is_refinement({0, 1, 2}, {0, 1, 0}));
    CHECK_FALSE(is_refinement({0, 0, 1}, {0, 1, 1}));
    CHECK_THROWS_AS(is_refinement({0, 1}, {0, 1, 2}), LengthMismatch);
}

TEST_CASE("integer relations on hand-picked diagonals") {
    CHECK(oracle_orthogonal(dobs({1, 2, 0, 0}), dobs({0, 0, 3, 0})));
    CHECK_FALSE(oracle_orthogonal(dobs({1, 2, 0, 0}), dobs({0, 1, 3, 0})));
    CHECK(oracle_orthogonal(dobs({0, 0}), dobs({0, 0})));

    CHECK(oracle_leq(dobs({1, 0, 0}), dobs({1, 2, 0})));
    CHECK_FALSE(oracle_leq(dobs({1, 0, 0}), dobs({2, 1, 0})));
    CHECK(oracle_leq(dobs({0, 0, 0}), dobs({1, 2, 0})));
    CHECK_FALSE(oracle_leq(dobs({1, 2, 0}), dobs({1, 0, 0})));

    CHECK(oracle_meet_closed_form(dobs({1, 1, 2, 0}), dobs({1, 3, 2, 7})) ==
          dobs({1, 0, 2, 0}));

    auto j = oracle_join(dobs({1, 0, 0}), dobs({0, 1, 2}));
    REQUIRE(j.ok());
    CHECK(*j.result == dobs({1, 1, 2}));

    auto no_j = oracle_join(dobs({1, 0}), dobs({2, 0}));
    CHECK_FALSE(no_j.ok());
    CHECK(no_j.violating_coordinate == 0);

    CHECK_THROWS_AS(oracle_orthogonal(dobs({1}), dobs({1, 2})), LengthMismatch);
    CHECK_THROWS_AS(oracle_leq(dobs({1}), dobs({1, 2})), LengthMismatch);
}

TEST_CASE("partition-infimum meet equals the closed form, exhaustively") {
    // Every pair of diagonals over {0,1,2}^3: 729 pairs, tiny value sets.
    std::vector<DiagonalObservable> all;
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y)
            for (int z = 0; z <= 2; ++z) all.push_back(dobs({x, y, z}));
    for (const auto& a : all)
        for (const auto& b : all)
            CHECK(oracle_meet_bruteforce(a, b) == oracle_meet_closed_form(a, b));
}

TEST_CASE("partition-infimum meet equals the closed form on random wide diagonals") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed, 999);
        DiagonalObservable a, b;
        do {
            a.values.clear();
            b.values.clear();
            for (int i = 0; i < 6; ++i) a.values.push_back(rng.int_range(-3, 3));
            for (int i = 0; i < 6; ++i) b.values.push_back(rng.int_range(-3, 3));
            std::set<std::int64_t> combined;
            for (auto v : a.values)
                if (v) combined.insert(v);
            for (auto v : b.values)
                if (v) combined.insert(v);
            if (combined.size() <= 5) break;
        } while (true);
        CHECK(oracle_meet_bruteforce(a, b) == oracle_meet_closed_form(a, b));
    }
}

TEST_CASE("coordinate survival is monotone under partition refinement") {
    DiagonalObservable a = dobs({1, 1, 2, 3, 0, 3});
    DiagonalObservable b = dobs({1, 2, 2, 3, 3, 0});
    std::vector<std::int64_t> values{1, 2, 3};
    auto survival = [&](const std::vector<int>& rgs) {
        std::vector<bool> s(a.values.size());
        auto block = [&](std::int64_t v) {
            for (std::size_t k = 0; k < values.size(); ++k)
                if (values[k] == v) return rgs[k];
            return -1;
        };
        for (std::size_t i = 0; i < a.values.size(); ++i)
            s[i] = a.values[i] != 0 && b.values[i] != 0 &&
                   block(a.values[i]) == block(b.values[i]);
        return s;
    };

    std::vector<std::vector<int>> partitions;
    for_each_set_partition(3, [&](const std::vector<int>& rgs) { partitions.push_back(rgs); });
    for (const auto& fine : partitions) {
        for (const auto& coarse : partitions) {
            if (!is_refinement(fine, coarse)) continue;
            auto sf = survival(fine), sc = survival(coarse);
            for (std::size_t i = 0; i < sf.size(); ++i)
                if (sf[i]) CHECK(sc[i]);  // surviving fine implies surviving coarse
        }
    }
}

TEST_CASE("too many distinct values overflow the enumerator guard") {
    CHECK_THROWS_AS(oracle_meet_bruteforce(dobs({1, 2, 3, 0}), dobs({-1, -2, -3, 0})),
                    TooManyAtoms);
    // Exactly five stays within bounds.
    CHECK_NOTHROW(oracle_meet_bruteforce(dobs({1, 2, 3, 0}), dobs({-1, -2, 3, 0})));
}

TEST_CASE("embedding preserves every relation") {
    DiagonalObservable da = dobs({1, 2, 0, 0});
    DiagonalObservable db = dobs({0, 0, 3, 0});
    DiagonalObservable dc = dobs({1, 0, 0, 0});

    Rng rng(17);
    Matrix u = random_unitary(4, rng);
    Observable a = embed(da, u, kTol);
    Observable b = embed(db, u, kTol);
    Observable c = embed(dc, u, kTol);

    CHECK(is_orthogonal(a, b).verdict == oracle_orthogonal(da, db));
    CHECK(leq(c, a).verdict == oracle_leq(dc, da));
    CHECK(leq(a, c).verdict == oracle_leq(da, dc));

    Matrix not_unitary = Matrix::Identity(4, 4) * 2.0;
    CHECK_THROWS_AS(embed(da, not_unitary, kTol), NotUnitary);
    CHECK_THROWS_AS(embed(da, Matrix::Identity(3, 3), kTol), DimensionMismatch);
}

TEST_CASE("the differential sweep agrees with itself and finds nothing") {
    DifferentialReport r1 = differential_sweep(100, 5, 3, kTol);
    CHECK(r1.all_passed());
    CHECK(r1.checks == 100 * 6);

    DifferentialReport r2 = differential_sweep(100, 5, 3, kTol);
    CHECK(r2.findings.size() == r1.findings.size());
    CHECK(r2.checks == r1.checks);
}

}  // TEST_SUITE
