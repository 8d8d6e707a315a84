#include <doctest.h>

#include "corpus.hpp"
#include "support.hpp"

#include <segre/nondegeneracy.hpp>

using namespace segre;
using namespace segre::testing;

TEST_CASE("finite nondegeneracy order") {
    // Lewy: rho_z(0,0) = (0, -i/2), L1 rho_z(0,0) = (-1, 0) -> Order(1)
    auto rec = finite_nondegeneracy_order(lewy());
    REQUIRE(rec.order.has_value());
    CHECK(*rec.order == 1);
    CHECK(rec.span_dim == 2);
    CHECK(rec.span_trace == std::vector<std::pair<unsigned, int>>{{0, 1}, {1, 2}});
    // the two accumulated vectors themselves
    REQUIRE(rec.vectors.size() == 2);
    CHECK(rec.vectors[0].v == std::vector<GaussRational>{gr(0), gri(0, -1, 2)});
    CHECK(rec.vectors[1].v == std::vector<GaussRational>{gr(-1), gr(0)});

    // Levi-flat: every jet stays proportional to (0, 1)
    auto flat = finite_nondegeneracy_order(leviflat());
    CHECK_FALSE(flat.order.has_value());
    CHECK(flat.span_dim == 1);

    // quartic: every L^alpha rho_z(0,0) keeps a vanishing first component
    auto q = finite_nondegeneracy_order(quartic());
    CHECK_FALSE(q.order.has_value());
    CHECK(q.span_dim == 1);
    CHECK(q.k_reached == 9);

    // cylinder: z2 never appears; span sticks at 2 < 3
    auto cyl = finite_nondegeneracy_order(cylinder());
    CHECK_FALSE(cyl.order.has_value());
    CHECK(cyl.span_dim == 2);
}

TEST_CASE("span dimension trace is nondecreasing") {
    for (auto m : {lewy(), leviflat(), quartic(), cylinder()}) {
        auto rec = finite_nondegeneracy_order(m, 4);
        int prev = 0;
        for (const auto& [k, dim] : rec.span_trace) {
            CHECK(dim >= prev);
            prev = dim;
        }
    }
}

TEST_CASE("segre coefficients of the graph") {
    // Lewy: bar(Phi)(omega, theta) = omega2 - 2i theta omega1
    auto fam = segre_coefficients(lewy(), 1);
    REQUIRE(fam.entries.size() == 2);
    CHECK(fam.entries[0].beta == Exponents{0});
    std::vector<std::string> omega = {"zb1", "zb2"};
    CHECK(fam.entries[0].q == TruncatedSeries::variable(omega, 10, 1));
    CHECK(fam.entries[1].beta == Exponents{1});
    CHECK(fam.entries[1].q == gri(0, -2) * TruncatedSeries::variable(omega, 9, 0));
    CHECK(fam.entries[1].q.cap() == 9);

    // cylinder: q_0 = omega3, q_{(1,0)} = -2i omega1, q_{(0,1)} = 0
    auto cfam = segre_coefficients(cylinder(), 1);
    REQUIRE(cfam.entries.size() == 3);
    std::vector<std::string> omega3 = {"zb1", "zb2", "zb3"};
    CHECK(cfam.entries[0].q == TruncatedSeries::variable(omega3, 10, 2));
    CHECK(cfam.entries[1].beta == Exponents{0, 1});
    CHECK(cfam.entries[1].q.is_zero());
    CHECK(cfam.entries[2].beta == Exponents{1, 0});
    CHECK(cfam.entries[2].q == gri(0, -2) * TruncatedSeries::variable(omega3, 9, 0));

    // Levi-flat: only q_0 = omega2 is nonzero
    auto ffam = segre_coefficients(leviflat(), 3);
    for (const auto& e : ffam.entries)
        if (total_degree(e.beta) > 0) CHECK(e.q.is_zero());

    CHECK_THROWS_AS(segre_coefficients(lewy(), 11), insufficient_cap_error);
}

TEST_CASE("taylor coefficients against derivative slices") {
    // beta! q_beta(omega) = (d_theta^beta bar(Phi))(omega, 0)
    for (auto m : {lewy(), quartic(), cylinder()}) {
        auto fam = segre_coefficients(m, 2);
        for (const auto& e : fam.entries) {
            auto d = derive_multi(bar(m.phi()[e.nu - 1]), m.n(), e.beta);
            std::vector<size_t> theta_idx;
            for (unsigned j = 0; j < m.N(); ++j) theta_idx.push_back(m.n() + j);
            auto slice = set_vars_to_zero(d, theta_idx);
            // strip the theta block to compare in omega variables
            auto at0 = block_coefficient(slice, m.n(), Exponents(m.N(), 0));
            long fact = 1;
            for (unsigned k : e.beta)
                for (unsigned r = 2; r <= k; ++r) fact *= r;
            CHECK(at0 == gr(fact) * e.q.truncated(at0.cap()));
        }
    }
}

TEST_CASE("psi rank and holomorphic nondegeneracy") {
    CHECK(psi_rank(lewy(), 1) == 3);
    CHECK(psi_rank(leviflat(), 1) == 2);
    CHECK(psi_rank(leviflat(), 2) == 2);
    CHECK(psi_rank(quartic(), 1) == 3);
    // cylinder: theta block (2) + omega3 direction + omega1 direction = 4 < 5
    CHECK(psi_rank(cylinder(), 1) == 4);

    auto lw = holomorphic_nondegeneracy(lewy());
    CHECK(lw.holomorphically_nondegenerate);
    CHECK(lw.levi_type == 1u);
    CHECK(lw.r_max == 3);

    auto fl = holomorphic_nondegeneracy(leviflat());
    CHECK_FALSE(fl.holomorphically_nondegenerate);
    CHECK_FALSE(fl.levi_type.has_value());
    CHECK(fl.r_max == 2);

    auto qu = holomorphic_nondegeneracy(quartic());
    CHECK(qu.holomorphically_nondegenerate);
    CHECK(qu.levi_type == 1u);

    auto cy = holomorphic_nondegeneracy(cylinder());
    CHECK_FALSE(cy.holomorphically_nondegenerate);
    CHECK(cy.r_max == 4);
}

TEST_CASE("r_l trace is nondecreasing") {
    for (auto m : {lewy(), leviflat(), quartic(), cylinder()}) {
        auto rec = holomorphic_nondegeneracy(m);
        int prev = 0;
        for (const auto& [l, r] : rec.r_trace) {
            CHECK(r >= prev);
            prev = r;
        }
    }
}

TEST_CASE("degeneracy d(M)") {
    CHECK(degeneracy(lewy()).degeneracy == 0);
    CHECK(degeneracy(lewy()).coefficient_rank == 2);
    CHECK(degeneracy(leviflat()).degeneracy == 1);
    CHECK(degeneracy(leviflat()).coefficient_rank == 1);
    CHECK(degeneracy(quartic()).degeneracy == 0);
    CHECK(degeneracy(cylinder()).degeneracy == 1);
    CHECK(degeneracy(cylinder()).coefficient_rank == 2);
}

TEST_CASE("the thmir cross-check: holomorphic nondegeneracy iff d(M) = 0") {
    for (auto m : {lewy(), leviflat(), quartic(), cylinder()}) {
        bool holo = holomorphic_nondegeneracy(m).holomorphically_nondegenerate;
        bool dzero = degeneracy(m).degeneracy == 0;
        CHECK(holo == dzero);
    }
}

TEST_CASE("certificate families") {
    // Lewy: {omega2, -2i omega1}
    auto lw = certificate_family(lewy());
    REQUIRE(lw.indices.size() == 2);
    CHECK(lw.indices[0] == std::make_pair(Exponents{0}, 1u));
    CHECK(lw.indices[1] == std::make_pair(Exponents{1}, 1u));
    CHECK(lw.verified_rank == 2);

    // cylinder: {omega3, -2i omega1}, rank 2 = n - d(M)
    auto cy = certificate_family(cylinder());
    REQUIRE(cy.indices.size() == 2);
    CHECK(cy.indices[0] == std::make_pair(Exponents{0, 0}, 1u));
    CHECK(cy.indices[1] == std::make_pair(Exponents{1, 0}, 1u));
    CHECK(cy.verified_rank == 2);

    // Levi-flat: the single function omega2
    auto fl = certificate_family(leviflat());
    REQUIRE(fl.indices.size() == 1);
    CHECK(fl.indices[0] == std::make_pair(Exponents{0}, 1u));
    CHECK(fl.verified_rank == 1);

    // quartic skips the vanishing beta = 1 coefficient
    auto qu = certificate_family(quartic());
    REQUIRE(qu.indices.size() == 2);
    CHECK(qu.indices[0] == std::make_pair(Exponents{0}, 1u));
    CHECK(qu.indices[1] == std::make_pair(Exponents{2}, 1u));
    CHECK(qu.verified_rank == 2);
}

TEST_CASE("finite nondegeneracy implies holomorphic nondegeneracy on the corpus") {
    for (auto m : {lewy(), leviflat(), quartic(), cylinder()}) {
        auto fin = finite_nondegeneracy_order(m);
        auto holo = holomorphic_nondegeneracy(m);
        if (fin.order.has_value()) CHECK(holo.holomorphically_nondegenerate);
    }
    // the converse fails: the quartic is holomorphically nondegenerate but
    // not finitely nondegenerate at 0
    CHECK_FALSE(finite_nondegeneracy_order(quartic()).order.has_value());
    CHECK(holomorphic_nondegeneracy(quartic()).holomorphically_nondegenerate);
}
