#include <doctest.h>

#include "corpus.hpp"
#include "support.hpp"

#include <segre/reflection.hpp>

using namespace segre;
using namespace segre::testing;

namespace {

FormalMapRecord load_map(const std::string& name, const GenericManifold& src,
                         const GenericManifold& tgt, unsigned cap = 10) {
    return build_formal_map(read_map_file(slurp_file(data_path(name))), src, tgt, cap);
}

FormalMapRecord map_from_text(const std::string& components, const GenericManifold& src,
                              const GenericManifold& tgt, unsigned cap = 10) {
    return build_formal_map(read_map_file("source = a\ntarget = b\n" + components), src, tgt,
                            cap);
}

TruncatedSeries mono(std::vector<std::string> vars, unsigned cap, Exponents e, GaussRational c) {
    TruncatedSeries s(std::move(vars), cap);
    s.add_term(e, c);
    return s;
}

} // namespace

TEST_CASE("formal map records: split, jacobian, base point") {
    auto m = lewy();
    auto f = load_map("dilation_lewy.map", m, m);
    CHECK(f.n_src == 2);
    CHECK(f.N_tgt == 1);
    CHECK(f.c_tgt == 1);
    std::vector<std::string> z = {"z1", "z2"};
    CHECK(f.f_prime(0) == gr(2) * TruncatedSeries::variable(z, 10, 0));
    CHECK(f.f_star(0) == gr(4) * TruncatedSeries::variable(z, 10, 1));
    REQUIRE(f.jacobian.has_value());
    CHECK(*f.jacobian == TruncatedSeries::constant(z, 9, gr(8)));
    CHECK(f.nondegenerate);

    CHECK_THROWS_AS(map_from_text("component = z1 + 1\ncomponent = z2\n", m, m),
                    validation_error);
    CHECK_THROWS_AS(map_from_text("component = z1\n", m, m), parse_error);

    // J_f identically zero is flagged, not rejected
    auto g = map_from_text("component = 0\ncomponent = z2\n", m, m);
    CHECK_FALSE(g.nondegenerate);
}

TEST_CASE("cr validation on the corpus maps") {
    auto m = lewy();
    CHECK(validate_cr_map(load_map("identity_lewy.map", m, m), m, m).valid);
    CHECK(validate_cr_map(load_map("dilation_lewy.map", m, m), m, m).valid);

    auto bad = validate_cr_map(load_map("perturbed_lewy.map", m, m), m, m);
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.first_nonzero.has_value());
    CHECK(bad.first_nonzero->nu == 1);
    // residual -(i/2) z1^2 + (i/2) zb1^2: graded-lex first term is zb1^2
    CHECK(bad.first_nonzero->exponents == Exponents{0, 0, 2});
    CHECK(bad.first_nonzero->coeff == gri(0, 1, 2));

    auto flat = leviflat();
    CHECK(validate_cr_map(load_map("constant_to_leviflat.map", m, flat), m, flat).valid);

    // dimension/cap guards
    CHECK_THROWS_AS(validate_cr_map(load_map("identity_lewy.map", m, m), m, lewy(8)),
                    structural_error);
}

TEST_CASE("determinant D of the corpus maps") {
    auto m = lewy();
    auto id = determinant_D(load_map("identity_lewy.map", m, m), m);
    CHECK(id.d == TruncatedSeries::constant(m.complexified_vars(), 9, gr(1)));
    CHECK(id.nonzero_on_M);

    auto dil = determinant_D(load_map("dilation_lewy.map", m, m), m);
    CHECK(dil.d == TruncatedSeries::constant(m.complexified_vars(), 9, gr(2)));
    CHECK(dil.nonzero_on_M);

    // f' == 0 kills D on the complexification; J_f == 0 as well
    auto deg = map_from_text("component = 0\ncomponent = z2\n", m, m);
    CHECK_FALSE(deg.nondegenerate);
    auto rec = determinant_D(deg, m);
    CHECK_FALSE(rec.nonzero_on_M);
}

TEST_CASE("lemma lem555(ii) on the corpus: J_f != 0 forces D != 0 on M") {
    auto m = lewy();
    for (const char* name : {"identity_lewy.map", "dilation_lewy.map"}) {
        auto f = load_map(name, m, m);
        REQUIRE(f.nondegenerate);
        CHECK(determinant_D(f, m).nonzero_on_M);
    }
}

TEST_CASE("reflection identities vanish for the identity map") {
    auto m = lewy();
    auto f = load_map("identity_lewy.map", m, m);
    auto ids = reflection_identities(f, m, m, 2);
    REQUIRE(ids.size() == 3); // |alpha| = 0, 1, 2
    for (const auto& id : ids) CHECK(id.residual_zero);

    // alpha = (1): lhs = D * bar(Phi)_theta(f, bar(f')) = -2i z1 on M
    const auto& a1 = ids[1];
    CHECK(a1.alpha == Exponents{1});
    CHECK(a1.lhs_on_M[0] == mono(m.restricted_vars(), a1.lhs_on_M[0].cap(), {1, 0, 0},
                                 gri(0, -2)));
    CHECK(a1.rhs_on_M[0] == a1.lhs_on_M[0]);
}

TEST_CASE("reflection identities vanish for the dilation") {
    auto m = lewy();
    auto f = load_map("dilation_lewy.map", m, m);
    auto ids = reflection_identities(f, m, m, 2);
    REQUIRE(ids.size() == 3);
    for (const auto& id : ids) CHECK(id.residual_zero);

    // alpha = 0 is eq4.50 restricted: bar(f*)(w) = bar(Phi')(f, bar(f'))
    const auto& a0 = ids[0];
    // bar(f*) = 4 w2 restricted = 4(z2 - 2i z1 w1)
    auto expect = gr(4) * (TruncatedSeries::variable(m.restricted_vars(), a0.cap, 1) +
                           mono(m.restricted_vars(), a0.cap, {1, 0, 1}, gri(0, -2)));
    CHECK(a0.rhs_on_M[0] == expect);
}

TEST_CASE("reflection identities reject non-CR input and degenerate D") {
    auto m = lewy();
    CHECK_THROWS_AS(reflection_identities(load_map("perturbed_lewy.map", m, m), m, m, 1),
                    validation_error);
    auto deg = map_from_text("component = 0\ncomponent = z2\n", m, m);
    CHECK_THROWS_AS(reflection_identities(deg, m, m, 1), validation_error);
}

TEST_CASE("reflection map of identity reproduces bar(Phi)") {
    auto m = lewy();
    auto refl = reflection_map(load_map("identity_lewy.map", m, m), m);
    REQUIRE(refl.size() == 1);
    std::vector<std::string> vars = {"z1", "z2", "th1"};
    auto expect = TruncatedSeries::variable(vars, 10, 1) +
                  mono(vars, 10, {1, 0, 1}, gri(0, -2));
    CHECK(refl[0] == expect);
}

TEST_CASE("reflection map of the dilation is 4 z2 - 4i theta z1") {
    auto m = lewy();
    auto refl = reflection_map(load_map("dilation_lewy.map", m, m), m);
    std::vector<std::string> vars = {"z1", "z2", "th1"};
    auto expect = gr(4) * TruncatedSeries::variable(vars, 10, 1) +
                  mono(vars, 10, {1, 0, 1}, gri(0, -4));
    CHECK(refl[0] == expect);

    // any map into the Levi-flat plane is theta-independent
    auto flat = leviflat();
    auto cmap = load_map("constant_to_leviflat.map", m, flat);
    auto refl2 = reflection_map(cmap, flat);
    for (unsigned j = 0; j < refl2[0].vars().size(); ++j)
        if (refl2[0].vars()[j].rfind("th", 0) == 0)
            CHECK(derive(refl2[0], j).is_zero());
}

TEST_CASE("normal components are the theta = 0 slice") {
    auto m = lewy();
    auto id = normal_components(load_map("identity_lewy.map", m, m), m);
    std::vector<std::string> z = {"z1", "z2"};
    CHECK(id.slice[0] == TruncatedSeries::variable(z, 10, 1));
    CHECK(id.matches_declared);

    auto dil = normal_components(load_map("dilation_lewy.map", m, m), m);
    CHECK(dil.slice[0] == gr(4) * TruncatedSeries::variable(z, 10, 1));
    CHECK(dil.matches_declared);

    // in normal coordinates bar(Phi')(omega, 0) = omega*, so the slice
    // recovers the declared normal components even for non-CR data
    auto fake = map_from_text("component = 2*z1\ncomponent = z2\n", m, m);
    CHECK(normal_components(fake, m).matches_declared);

    // precondition: target must be in normal coordinates
    std::string text = "n = 2\ncodim = 1\ndefining = (z2 - zb2)/(2*i) - z1^2 - zb1^2\n";
    auto not_normal = GenericManifold::from_file(read_manifold_file(text), 10);
    CHECK_THROWS_AS(normal_components(map_from_text("component = z1\ncomponent = z2\n", m,
                                                    not_normal),
                                      not_normal),
                    validation_error);
}

TEST_CASE("characteristic variety certification") {
    auto m = lewy();
    auto id = load_map("identity_lewy.map", m, m);
    auto rec = char_variety(id, m, m, 1);
    CHECK(rec.generators.size() == 2);
    CHECK(rec.all_vanish_at_zero);
    // gamma = 0: -(i/2) ze2; gamma = (1): z1 - ze1 at the origin -> -ze1
    std::vector<std::string> ze = {"ze1", "ze2"};
    CHECK(rec.generators[0].poly == mono(ze, rec.generators[0].poly.cap(), {0, 1}, gri(0, -1, 2)));
    CHECK(rec.generators[1].poly == mono(ze, rec.generators[1].poly.cap(), {1, 0}, gr(-1)));
    CHECK(rec.jacobian_rank_at_zero == 2);
    CHECK(rec.zero_dim_certified);

    // constant map into the Levi-flat plane: all generators multiples of ze2
    auto flat = leviflat();
    auto cmap = load_map("constant_to_leviflat.map", m, flat);
    auto crec = char_variety(cmap, m, flat, 2);
    CHECK(crec.all_vanish_at_zero);
    CHECK(crec.jacobian_rank_at_zero == 1);
    CHECK_FALSE(crec.zero_dim_certified);

    // jet order 0 alone cannot certify: a single generator has rank <= c
    auto rec0 = char_variety(id, m, m, 0);
    CHECK(rec0.generators.size() == 1);
    CHECK(rec0.jacobian_rank_at_zero <= 1);
    CHECK_FALSE(rec0.zero_dim_certified);
}

TEST_CASE("char variety certification at the finite nondegeneracy order") {
    // for the identity map, certification at jet order = Order(k) of M
    auto m = lewy();
    auto id = load_map("identity_lewy.map", m, m);
    CHECK(char_variety(id, m, m, 1).zero_dim_certified); // Order(1) for the quadric
}

TEST_CASE("convergence diagnostics") {
    std::vector<std::string> x = {"x"};
    using V = ConvergenceDiagnostic::Verdict;

    // sum x^k: all magnitudes 1, ratio 1
    TruncatedSeries geo(x, 10);
    for (unsigned k = 0; k <= 10; ++k) geo.add_term({k}, gr(1));
    auto d1 = convergence_diagnostic(geo);
    CHECK(d1.verdict == V::ConsistentWithConvergence);
    CHECK(d1.fitted_ratio == doctest::Approx(1.0));

    // sum k! x^k: super-geometric
    TruncatedSeries fact(x, 10);
    long f = 1;
    for (unsigned k = 0; k <= 10; ++k) {
        if (k > 0) f *= k;
        fact.add_term({k}, gr(f));
    }
    CHECK(convergence_diagnostic(fact).verdict == V::DivergentLooking);

    // a low-degree polynomial
    TruncatedSeries poly(x, 10);
    poly.add_term({0}, gr(3));
    poly.add_term({2}, gr(-7));
    CHECK(convergence_diagnostic(poly).verdict == V::ConsistentWithConvergence);

    // zero series
    CHECK(convergence_diagnostic(TruncatedSeries(x, 10)).verdict ==
          V::ConsistentWithConvergence);

    // sparse high-degree data is not enough to judge
    TruncatedSeries sparse(x, 10);
    sparse.add_term({9}, gr(1));
    sparse.add_term({10}, gr(100));
    CHECK(convergence_diagnostic(sparse).verdict == V::TooShort);

    // geometric growth with ratio 2 is still consistent with convergence
    TruncatedSeries pow2(x, 10);
    long p = 1;
    for (unsigned k = 0; k <= 10; ++k) {
        pow2.add_term({k}, gr(p));
        p *= 2;
    }
    auto d2 = convergence_diagnostic(pow2);
    CHECK(d2.verdict == V::ConsistentWithConvergence);
    CHECK(d2.fitted_ratio == doctest::Approx(2.0));
}

TEST_CASE("reflection identities on a renumbered source chart") {
    // Im z1 = |z2|^2 swaps coordinates; the identity map must still verify
    std::string text = "n = 2\ncodim = 1\ndefining = (z1 - zb1)/(2*i) - z2*zb2\n";
    auto m = GenericManifold::from_file(read_manifold_file(text), 10);
    REQUIRE(m.permutation() == std::vector<size_t>{1, 0});
    auto f = map_from_text("component = z1\ncomponent = z2\n", m, m);
    CHECK(validate_cr_map(f, m, m).valid);
    auto ids = reflection_identities(f, m, m, 1);
    for (const auto& id : ids) CHECK(id.residual_zero);
}
