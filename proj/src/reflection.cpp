#include <segre/reflection.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace segre {

namespace {

// f_i(z) and bar(f_i)(w) as series on the (z, zb) space of the source.
SeriesVector embed_f_z(const FormalMapRecord& f, const GenericManifold& m) {
    std::vector<size_t> map(f.n_src);
    std::iota(map.begin(), map.end(), 0);
    SeriesVector out;
    out.reserve(f.n_tgt);
    for (const auto& comp : f.components)
        out.push_back(embed(comp, m.complexified_vars(), map));
    return out;
}

SeriesVector embed_fbar_w(const FormalMapRecord& f, const GenericManifold& m) {
    std::vector<size_t> map(f.n_src);
    for (size_t k = 0; k < map.size(); ++k) map[k] = m.n() + k;
    SeriesVector out;
    out.reserve(f.n_tgt);
    for (const auto& comp : f.components)
        out.push_back(embed(bar(comp), m.complexified_vars(), map));
    return out;
}

void require_same_cap(const FormalMapRecord& f, const GenericManifold& m,
                      const GenericManifold& mp) {
    if (f.components.front().cap() != m.cap() || m.cap() != mp.cap())
        throw structural_error("map and manifolds must share the truncation cap");
    if (f.n_src != m.n()) throw structural_error("map source dimension mismatch");
    if (f.n_tgt != mp.n()) throw structural_error("map target dimension mismatch");
}

} // namespace

FormalMapRecord build_formal_map(const MapFile& file, const GenericManifold& source,
                                 const GenericManifold& target, unsigned cap) {
    FormalMapRecord rec;
    rec.n_src = source.n();
    rec.n_tgt = target.n();
    rec.N_tgt = target.N();
    rec.c_tgt = target.c();
    rec.source_ref = file.source_ref;
    rec.target_ref = file.target_ref;

    if (file.components.size() != target.n())
        throw parse_error("expected " + std::to_string(target.n()) + " components, got " +
                          std::to_string(file.components.size()));

    std::vector<std::string> zvars;
    for (unsigned k = 1; k <= source.n(); ++k) zvars.push_back("z" + std::to_string(k));

    SeriesVector declared;
    for (const auto& [text, line] : file.components)
        declared.push_back(parse_polynomial(text, zvars, cap, line));

    // the analysis coordinates may be renumbered on either side
    std::vector<size_t> inv_src(source.n());
    for (size_t k = 0; k < source.n(); ++k) inv_src[source.permutation()[k]] = k;
    rec.components.reserve(target.n());
    for (unsigned k = 0; k < target.n(); ++k) {
        TruncatedSeries comp = declared[target.permutation()[k]];
        rec.components.push_back(embed(comp, zvars, inv_src));
    }

    for (const auto& comp : rec.components)
        if (!comp.constant_term().is_zero())
            throw validation_error("formal map must fix the base point: f(0) = 0");

    if (rec.n_src == rec.n_tgt) {
        rec.jacobian = det(jacobian(rec.components, 0, rec.n_src));
        rec.nondegenerate = !rec.jacobian->is_zero();
    }
    return rec;
}

CrValidation validate_cr_map(const FormalMapRecord& f, const GenericManifold& m,
                             const GenericManifold& mp) {
    require_same_cap(f, m, mp);
    SeriesVector fz = embed_f_z(f, m);
    SeriesVector fbw = embed_fbar_w(f, m);
    SeriesVector args;
    args.reserve(2 * mp.n());
    for (const auto& s : fz) args.push_back(s);
    for (const auto& s : fbw) args.push_back(s);

    CrValidation out;
    out.valid = true;
    for (unsigned nu = 0; nu < mp.c(); ++nu) {
        TruncatedSeries residual = restrict_to_M(compose(mp.rho()[nu], args), m);
        out.cap = residual.cap();
        if (!residual.is_zero()) {
            out.valid = false;
            if (!out.first_nonzero) {
                const auto& [e, c] = *residual.terms().begin();
                out.first_nonzero = CrValidation::FirstResidual{nu + 1, e, c};
            }
        }
    }
    return out;
}

namespace {

// B_{j,k} = L_j bar(f')_k(w): the Cramer matrix of the reflection steps.
SeriesMatrix cramer_matrix(const FormalMapRecord& f, const GenericManifold& m,
                           const TangentFieldSet& tf) {
    const unsigned N = m.N();
    SeriesVector fbw = embed_fbar_w(f, m);
    SeriesMatrix B(N, N, TruncatedSeries(m.complexified_vars(), m.cap() - 1));
    for (unsigned j = 0; j < N; ++j)
        for (unsigned k = 0; k < N; ++k) B.at(j, k) = tf.apply(j, fbw[k]);
    return B;
}

} // namespace

DeterminantRecord determinant_D(const FormalMapRecord& f, const GenericManifold& m) {
    if (f.n_src != f.n_tgt)
        throw structural_error("determinant_D needs equidimensional source and target");
    if (f.n_src != m.n()) throw structural_error("map does not match the source manifold");
    if (f.N_tgt != m.N())
        throw structural_error("determinant_D needs matching CR dimensions");
    TangentFieldSet tf = tangent_fields(m);
    TruncatedSeries d = det(cramer_matrix(f, m, tf));
    TruncatedSeries d_restricted = restrict_to_M(d, m);
    bool nonzero = !d_restricted.is_zero();
    return DeterminantRecord{std::move(d), std::move(d_restricted), nonzero};
}

std::vector<ReflectionIdentity> reflection_identities(const FormalMapRecord& f,
                                                      const GenericManifold& m,
                                                      const GenericManifold& mp,
                                                      unsigned alpha_max) {
    require_same_cap(f, m, mp);
    if (!validate_cr_map(f, m, mp).valid)
        throw validation_error("reflection identities need a verified CR map");
    if (f.N_tgt != m.N())
        throw structural_error("reflection identities need matching CR dimensions");

    const unsigned N = m.N(), c = mp.c(), n_tgt = mp.n();
    TangentFieldSet tf = tangent_fields(m);
    SeriesMatrix B = cramer_matrix(f, m, tf);
    TruncatedSeries D = det(B);
    if (restrict_to_M(D, m).is_zero())
        throw validation_error("degenerate map: D vanishes on the complexification");
    SeriesMatrix adjB = adjugate(B);
    SeriesVector LD; // L_j D
    for (unsigned j = 0; j < N; ++j) LD.push_back(tf.apply(j, D));

    SeriesVector fz = embed_f_z(f, m);
    SeriesVector fbw = embed_fbar_w(f, m);
    SeriesVector compose_args; // (f(z), bar(f')(w)) for bar(Phi') arguments
    for (const auto& s : fz) compose_args.push_back(s);
    for (unsigned j = 0; j < N; ++j) compose_args.push_back(fbw[j]);

    // V_0 = bar(f*)(w)
    std::map<Exponents, SeriesVector, GradedLex> V;
    {
        SeriesVector v0;
        for (unsigned l = 0; l < c; ++l) v0.push_back(fbw[f.N_tgt + l]);
        V.emplace(Exponents(N, 0), std::move(v0));
    }

    std::vector<ReflectionIdentity> out;
    for (unsigned a = 0; a <= alpha_max; ++a) {
        for (const Exponents& alpha : multi_indices(N, a)) {
            if (a > 0) {
                size_t k0 = 0;
                while (alpha[k0] == 0) ++k0;
                Exponents prev = alpha;
                prev[k0] -= 1;
                const SeriesVector& vp = V.at(prev);
                const unsigned p = a - 1; // |prev|
                SeriesVector va;
                va.reserve(c);
                for (unsigned nu = 0; nu < c; ++nu) {
                    SeriesVector W;
                    W.reserve(N);
                    for (unsigned j = 0; j < N; ++j) {
                        TruncatedSeries ljv = tf.apply(j, vp[nu]);
                        if (p == 0) {
                            W.push_back(ljv);
                        } else {
                            TruncatedSeries t = mul_aligned(D, ljv);
                            TruncatedSeries s =
                                GaussRational(static_cast<long>(2 * p - 1)) *
                                mul_aligned(LD[j], vp[nu]);
                            W.push_back(sub_aligned(t, s));
                        }
                    }
                    TruncatedSeries acc = mul_aligned(adjB.at(k0, 0), W[0]);
                    for (unsigned j = 1; j < N; ++j)
                        acc = add_aligned(acc, mul_aligned(adjB.at(k0, j), W[j]));
                    va.push_back(std::move(acc));
                }
                V.emplace(alpha, std::move(va));
            }

            // lhs: D^{2|alpha|-1} bar(Phi')_{theta^alpha}(f(z), bar(f')(w))
            TruncatedSeries dpow =
                TruncatedSeries::constant(m.complexified_vars(), m.cap(), GaussRational(1));
            if (a > 0)
                for (unsigned r = 0; r < 2 * a - 1; ++r) dpow = mul_aligned(dpow, D);

            ReflectionIdentity id;
            id.alpha = alpha;
            const SeriesVector& va = V.at(alpha);
            bool all_zero = true;
            for (unsigned nu = 0; nu < c; ++nu) {
                TruncatedSeries phibar_a =
                    derive_multi(bar(mp.phi()[nu]), n_tgt, alpha);
                TruncatedSeries lhs = mul_aligned(dpow, compose(phibar_a, compose_args));
                TruncatedSeries lhs_m = restrict_to_M(lhs, m);
                TruncatedSeries rhs_m = restrict_to_M(va[nu], m);
                TruncatedSeries residual = sub_aligned(lhs_m, rhs_m);
                all_zero = all_zero && residual.is_zero();
                id.cap = residual.cap();
                id.lhs_on_M.push_back(std::move(lhs_m));
                id.rhs_on_M.push_back(std::move(rhs_m));
            }
            id.residual_zero = all_zero;
            out.push_back(std::move(id));
        }
    }
    return out;
}

SeriesVector reflection_map(const FormalMapRecord& f, const GenericManifold& mp) {
    const unsigned N = mp.N();
    std::vector<std::string> vars;
    for (unsigned k = 1; k <= f.n_src; ++k) vars.push_back("z" + std::to_string(k));
    for (unsigned k = 1; k <= N; ++k) vars.push_back("th" + std::to_string(k));

    const unsigned cap = f.components.front().cap();
    std::vector<size_t> fmap(f.n_src);
    std::iota(fmap.begin(), fmap.end(), 0);
    SeriesVector args;
    args.reserve(f.n_tgt + N);
    for (const auto& comp : f.components) args.push_back(embed(comp, vars, fmap));
    for (unsigned j = 0; j < N; ++j)
        args.push_back(TruncatedSeries::variable(vars, cap, f.n_src + j));

    SeriesVector out;
    out.reserve(mp.c());
    for (unsigned nu = 0; nu < mp.c(); ++nu)
        out.push_back(compose(bar(mp.phi()[nu]), args));
    return out;
}

NormalComponents normal_components(const FormalMapRecord& f, const GenericManifold& mp) {
    if (!mp.normal_coordinates())
        throw validation_error(
            "normal components need the target in normal coordinates");
    SeriesVector refl = reflection_map(f, mp);
    NormalComponents out;
    out.matches_declared = true;
    for (unsigned l = 0; l < mp.c(); ++l) {
        // theta = 0 slice, read back in the source z-variables
        TruncatedSeries slice =
            block_coefficient(refl[l], f.n_src, Exponents(mp.N(), 0));
        out.matches_declared = out.matches_declared && slice == f.f_star(l);
        out.slice.push_back(std::move(slice));
    }
    return out;
}

CharVarietyRecord char_variety(const FormalMapRecord& f, const GenericManifold& m,
                               const GenericManifold& mp, unsigned jet_order) {
    if (f.n_src != m.n()) throw structural_error("map does not match the source manifold");
    const unsigned n = m.n(), N = m.N();
    const unsigned n_tgt = f.n_tgt, c_tgt = f.c_tgt;

    // ambient space (z, zb, zeta)
    std::vector<std::string> vars = m.complexified_vars();
    for (unsigned k = 1; k <= n_tgt; ++k) vars.push_back("ze" + std::to_string(k));

    std::vector<size_t> zw_map(2 * n);
    std::iota(zw_map.begin(), zw_map.end(), 0);
    std::vector<size_t> w_map(f.n_src);
    for (size_t k = 0; k < w_map.size(); ++k) w_map[k] = n + k;

    SeriesVector args;
    args.reserve(2 * n_tgt);
    for (unsigned i = 0; i < n_tgt; ++i)
        args.push_back(TruncatedSeries::variable(vars, m.cap(), 2 * n + i)); // zeta
    for (const auto& comp : f.components) args.push_back(embed(bar(comp), vars, w_map));

    TangentFieldSet tf = tangent_fields(m);

    // jets[gamma] = L^gamma rho'(zeta, bar(f)(w)); leftmost factor peeled
    std::map<Exponents, SeriesVector, GradedLex> jets;
    {
        SeriesVector base;
        base.reserve(c_tgt);
        for (unsigned nu = 0; nu < c_tgt; ++nu)
            base.push_back(compose(mp.rho()[nu], args));
        jets.emplace(Exponents(N, 0), std::move(base));
    }

    CharVarietyRecord rec;
    rec.jet_order = jet_order;
    std::vector<size_t> zw_indices(2 * n);
    std::iota(zw_indices.begin(), zw_indices.end(), 0);
    std::vector<std::string> zeta_vars(vars.begin() + 2 * n, vars.end());

    for (unsigned k = 0; k <= jet_order; ++k) {
        for (const Exponents& gamma : multi_indices(N, k)) {
            if (k > 0) {
                size_t i = 0;
                while (gamma[i] == 0) ++i;
                Exponents prev = gamma;
                prev[i] -= 1;
                const SeriesVector& base = jets.at(prev);
                SeriesVector cur;
                cur.reserve(c_tgt);
                for (unsigned nu = 0; nu < c_tgt; ++nu)
                    cur.push_back(tf.apply(i, base[nu], zw_map));
                jets.emplace(gamma, std::move(cur));
            }
            const SeriesVector& js = jets.at(gamma);
            for (unsigned nu = 0; nu < c_tgt; ++nu) {
                TruncatedSeries at_origin = set_vars_to_zero(js[nu], zw_indices);
                TruncatedSeries poly =
                    block_coefficient(at_origin, 0, Exponents(2 * n, 0));
                rec.cap = poly.cap();
                rec.generators.push_back({gamma, nu + 1, std::move(poly)});
            }
        }
    }

    rec.all_vanish_at_zero = true;
    std::vector<std::vector<GaussRational>> rows;
    for (const auto& g : rec.generators) {
        rec.all_vanish_at_zero =
            rec.all_vanish_at_zero && g.poly.constant_term().is_zero();
        std::vector<GaussRational> row(n_tgt);
        for (unsigned i = 0; i < n_tgt; ++i) {
            Exponents e(n_tgt, 0);
            e[i] = 1;
            row[i] = g.poly.coeff(e);
        }
        rows.push_back(std::move(row));
    }
    rec.jacobian_rank_at_zero = rank_of_constants(rows);
    rec.zero_dim_certified = rec.jacobian_rank_at_zero == static_cast<int>(n_tgt);
    return rec;
}

const char* to_string(ConvergenceDiagnostic::Verdict v) {
    switch (v) {
        case ConvergenceDiagnostic::Verdict::ConsistentWithConvergence:
            return "consistent-with-convergence";
        case ConvergenceDiagnostic::Verdict::DivergentLooking: return "divergent-looking";
        case ConvergenceDiagnostic::Verdict::TooShort: return "too-short";
    }
    return "?";
}

ConvergenceDiagnostic convergence_diagnostic(const TruncatedSeries& s) {
    ConvergenceDiagnostic diag;
    diag.degree_norm2.assign(s.cap() + 1, mpq_class(0));
    for (const auto& [e, c] : s.terms()) {
        mpq_class n2 = c.norm2();
        unsigned d = total_degree(e);
        if (n2 > diag.degree_norm2[d]) diag.degree_norm2[d] = n2;
    }
    std::vector<unsigned> nonzero;
    for (unsigned k = 0; k <= s.cap(); ++k)
        if (diag.degree_norm2[k] != 0) nonzero.push_back(k);

    using V = ConvergenceDiagnostic::Verdict;
    if (nonzero.empty()) {
        diag.verdict = V::ConsistentWithConvergence;
        return diag;
    }

    // fitted geometric ratio of max coefficient magnitudes (report only)
    if (nonzero.size() >= 2) {
        unsigned k0 = nonzero.front(), k1 = nonzero.back();
        double span = mpq_get_d(diag.degree_norm2[k1].get_mpq_t()) /
                      mpq_get_d(diag.degree_norm2[k0].get_mpq_t());
        diag.fitted_ratio = std::pow(span, 1.0 / (2.0 * (k1 - k0)));
    } else {
        diag.fitted_ratio = 1.0;
    }

    if (nonzero.back() <= s.cap() / 2) {
        // the upper half of the truncation window is exactly zero
        diag.verdict = V::ConsistentWithConvergence;
        return diag;
    }
    if (nonzero.size() < 5) {
        diag.verdict = V::TooShort;
        return diag;
    }

    // successive squared-magnitude ratios over the top of the window:
    // super-geometric growth shows as steadily increasing ratios
    size_t pairs = std::min<size_t>(4, nonzero.size() - 1);
    std::vector<mpq_class> ratios;
    for (size_t idx = nonzero.size() - pairs - 1; idx + 1 < nonzero.size(); ++idx)
        ratios.push_back(diag.degree_norm2[nonzero[idx + 1]] /
                         diag.degree_norm2[nonzero[idx]]);
    bool increasing = true;
    for (size_t idx = 0; idx + 1 < ratios.size(); ++idx)
        increasing = increasing && ratios[idx] < ratios[idx + 1];
    bool doubled = ratios.back() >= 2 * ratios.front();
    diag.verdict = increasing && doubled ? V::DivergentLooking : V::ConsistentWithConvergence;
    return diag;
}

} // namespace segre
