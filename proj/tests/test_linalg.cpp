#include <doctest.h>

#include "support.hpp"

using namespace segre;
using namespace segre::testing;

namespace {

const std::vector<std::string> TT = {"t1", "t2"};

SeriesMatrix from_entries(size_t r, size_t c, const SeriesVector& entries) {
    SeriesMatrix m(r, c, entries.front());
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.at(i, j) = entries[i * c + j];
    return m;
}

TruncatedSeries cnst(GaussRational q, unsigned cap = 6) {
    return TruncatedSeries::constant(TT, cap, q);
}
TruncatedSeries var(size_t k, unsigned cap = 6) {
    return TruncatedSeries::variable(TT, cap, k);
}

} // namespace

TEST_CASE("generic rank on constant and proportional matrices") {
    auto id = from_entries(2, 2, {cnst(gr(1)), cnst(gr(0)), cnst(gr(0)), cnst(gr(1))});
    CHECK(generic_rank(id) == 2);

    // [[x, x], [y, y]] has proportional columns
    auto m = from_entries(2, 2, {var(0), var(0), var(1), var(1)});
    CHECK(generic_rank(m) == 1);

    auto z = from_entries(2, 2, {cnst(gr(0)), cnst(gr(0)), cnst(gr(0)), cnst(gr(0))});
    CHECK(generic_rank(z) == 0);
}

TEST_CASE("generic rank of the map (t1, 2i t1 t2)") {
    // Jacobian [[1, 0], [2i t2, 2i t1]]; the 2x2 minor is 2i t1, not
    // identically zero.
    SeriesVector comps = {var(0), gri(0, 2) * (var(0) * var(1))};
    auto J = jacobian(comps, 0, 2);
    CHECK(generic_rank(J) == 2);
    CHECK(rank_by_minors(J) == 2);
}

TEST_CASE("bareiss agrees with the minor-enumeration oracle on random matrices") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 20; ++it) {
        size_t r = 2 + rng() % 2, c = 2 + rng() % 2;
        SeriesVector entries;
        for (size_t k = 0; k < r * c; ++k)
            entries.push_back(random_series(rng, TT, 3, 2));
        auto m = from_entries(r, c, entries);
        int br = generic_rank(m);
        CHECK(br == rank_by_minors(m));
        // sampled evaluation rank never exceeds the symbolic rank
        int sr = sampled_rank(m, /*seed=*/it, 4);
        CHECK(sr <= br);
    }
}

TEST_CASE("rank degenerates on forced linear dependence") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 10; ++it) {
        auto a = random_series(rng, TT, 3, 3);
        auto b = random_series(rng, TT, 3, 3);
        // rows: a, b, a + 2b  -> rank <= 2
        SeriesVector entries = {a,           b,           a * b,
                                b,           a,           a,
                                a + b + b,   b + a + a,   a * b + a + a};
        // row3 = row1 + 2*row2 entrywise
        auto m = from_entries(3, 3, entries);
        CHECK(generic_rank(m) <= 2);
        CHECK(generic_rank(m) == rank_by_minors(m));
    }
}

TEST_CASE("sampling certifies full-rank examples") {
    SeriesVector comps = {var(0), gri(0, 2) * (var(0) * var(1))};
    auto J = jacobian(comps, 0, 2);
    CHECK(sampled_rank(J, 1) == 2);
}

TEST_CASE("determinant and adjugate over series") {
    auto a = cnst(gr(1)) + var(0);
    auto b = var(1);
    auto c = cnst(gr(0));
    auto d = cnst(gr(2));
    auto m = from_entries(2, 2, {a, b, c, d});
    auto dt = det(m);
    CHECK(dt == gr(2) * (cnst(gr(1)) + var(0)));

    // m * adj(m) = det * I
    auto adj = adjugate(m);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            TruncatedSeries acc(TT, 6);
            for (size_t k = 0; k < 2; ++k) acc += m.at(i, k) * adj.at(k, j);
            CHECK(acc == (i == j ? dt : TruncatedSeries(TT, 6)));
        }

    auto x = solve_unit_system(m, {cnst(gr(1)), cnst(gr(4))});
    // check A x = b exactly to the cap
    TruncatedSeries r0 = m.at(0, 0) * x[0] + m.at(0, 1) * x[1];
    TruncatedSeries r1 = m.at(1, 0) * x[0] + m.at(1, 1) * x[1];
    CHECK(r0 == cnst(gr(1)));
    CHECK(r1 == cnst(gr(4)));
}

TEST_CASE("rank of constant matrices over the field") {
    std::vector<std::vector<GaussRational>> rows = {
        {gr(0), gri(0, -1, 2)}, // (0, -i/2)
        {gr(-1), gr(0)},
    };
    CHECK(rank_of_constants(rows) == 2);
    rows[1] = {gr(0), gri(0, 1)};
    CHECK(rank_of_constants(rows) == 1);
}
