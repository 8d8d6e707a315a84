#include <segre/manifold.hpp>

#include <algorithm>
#include <numeric>

namespace segre {

namespace {

std::vector<std::string> make_zw_vars(unsigned n) {
    std::vector<std::string> v;
    for (unsigned k = 1; k <= n; ++k) v.push_back("z" + std::to_string(k));
    for (unsigned k = 1; k <= n; ++k) v.push_back("zb" + std::to_string(k));
    return v;
}

std::vector<std::string> make_phi_vars(unsigned n, unsigned N) {
    std::vector<std::string> v;
    for (unsigned k = 1; k <= n; ++k) v.push_back("zb" + std::to_string(k));
    for (unsigned k = 1; k <= N; ++k) v.push_back("zp" + std::to_string(k));
    return v;
}

std::vector<std::string> make_restr_vars(unsigned n, unsigned N) {
    std::vector<std::string> v;
    for (unsigned k = 1; k <= n; ++k) v.push_back("z" + std::to_string(k));
    for (unsigned k = 1; k <= N; ++k) v.push_back("zb" + std::to_string(k));
    return v;
}

// d rho_k / d var_i at 0: the coefficient of the degree-one monomial.
GaussRational gradient_entry(const TruncatedSeries& rho_k, size_t var) {
    Exponents e(rho_k.vars().size(), 0);
    e[var] = 1;
    return rho_k.coeff(e);
}

// rho with both blocks swapped: rho(w, z).
TruncatedSeries swap_blocks(const TruncatedSeries& s, unsigned n) {
    std::vector<size_t> map(2 * n);
    for (unsigned k = 0; k < n; ++k) {
        map[k] = n + k;
        map[n + k] = k;
    }
    return embed(s, s.vars(), map);
}

} // namespace

GenericManifold GenericManifold::build(unsigned n, unsigned c, SeriesVector rho_raw,
                                       unsigned cap, std::vector<std::string> display_names) {
    if (c < 1 || c >= n) throw validation_error("need 1 <= codim <= n-1");
    if (rho_raw.size() != c) throw structural_error("expected codim defining series");
    const unsigned N = n - c;

    GenericManifold m;
    m.n_ = n;
    m.c_ = c;
    m.cap_ = cap;
    m.zw_vars_ = make_zw_vars(n);
    m.phi_vars_ = make_phi_vars(n, N);
    m.restr_vars_ = make_restr_vars(n, N);

    if (display_names.empty())
        for (unsigned k = 1; k <= n; ++k) display_names.push_back("z" + std::to_string(k));

    for (const auto& r : rho_raw) {
        if (r.vars() != m.zw_vars_ || r.cap() != cap)
            throw structural_error("defining series must live in (z, zb) at the working cap");
        if (!r.constant_term().is_zero())
            throw validation_error("base point: rho(0,0) != 0");
        if (!(swap_blocks(bar(r), n) == r))
            throw validation_error("reality: rho(z, zb) != bar(rho)(zb, z) termwise");
    }

    // genericity: rank over the zb block at the origin must be c
    {
        std::vector<std::vector<GaussRational>> g(c, std::vector<GaussRational>(n));
        for (unsigned k = 0; k < c; ++k)
            for (unsigned i = 0; i < n; ++i) g[k][i] = gradient_entry(rho_raw[k], n + i);
        if (rank_of_constants(g) != static_cast<int>(c))
            throw validation_error("not generic: d rho/d zb at 0 has rank < codim");
    }

    // renumber the coordinates (first fitting permutation in lexicographic
    // order) until d rho/d z* is invertible at 0
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto z_star_invertible = [&](const std::vector<size_t>& p) {
        std::vector<std::vector<GaussRational>> a(c, std::vector<GaussRational>(c));
        for (unsigned k = 0; k < c; ++k)
            for (unsigned l = 0; l < c; ++l) a[k][l] = gradient_entry(rho_raw[k], p[N + l]);
        return rank_of_constants(a) == static_cast<int>(c);
    };
    bool found = false;
    do {
        if (z_star_invertible(perm)) {
            found = true;
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) throw validation_error("degenerate chart: no coordinate order makes d rho/d z* invertible at 0");

    m.perm_ = perm;
    m.display_names_.resize(n);
    for (unsigned k = 0; k < n; ++k) m.display_names_[k] = display_names[perm[k]];

    bool is_identity = true;
    for (size_t k = 0; k < perm.size(); ++k) is_identity = is_identity && perm[k] == k;
    if (!is_identity) {
        std::vector<size_t> inv(n);
        for (unsigned k = 0; k < n; ++k) inv[perm[k]] = k;
        std::vector<size_t> var_map(2 * n);
        for (unsigned i = 0; i < n; ++i) {
            var_map[i] = inv[i];
            var_map[n + i] = n + inv[i];
        }
        for (auto& r : rho_raw) r = embed(r, m.zw_vars_, var_map);
    }
    m.rho_ = std::move(rho_raw);

    // graph form by fixed-point iteration: z* <- z* - A^{-1} rho, one more
    // correct degree per pass
    {
        std::vector<std::vector<GaussRational>> a(c, std::vector<GaussRational>(c));
        for (unsigned k = 0; k < c; ++k)
            for (unsigned l = 0; l < c; ++l) a[k][l] = gradient_entry(m.rho_[k], N + l);
        // invert the constant matrix by Gauss-Jordan
        std::vector<std::vector<GaussRational>> ainv(c, std::vector<GaussRational>(c));
        for (unsigned k = 0; k < c; ++k) ainv[k][k] = GaussRational(1);
        for (unsigned col = 0; col < c; ++col) {
            unsigned piv = col;
            while (piv < c && a[piv][col].is_zero()) ++piv;
            if (piv == c) throw validation_error("degenerate chart: d rho/d z* singular at 0");
            std::swap(a[piv], a[col]);
            std::swap(ainv[piv], ainv[col]);
            GaussRational d = a[col][col];
            for (unsigned j = 0; j < c; ++j) {
                a[col][j] /= d;
                ainv[col][j] /= d;
            }
            for (unsigned i = 0; i < c; ++i) {
                if (i == col || a[i][col].is_zero()) continue;
                GaussRational f = a[i][col];
                for (unsigned j = 0; j < c; ++j) {
                    a[i][j] -= f * a[col][j];
                    ainv[i][j] -= f * ainv[col][j];
                }
            }
        }

        SeriesVector phi(c, TruncatedSeries(m.phi_vars_, cap));
        SeriesVector args;
        for (unsigned pass = 0; pass <= cap; ++pass) {
            args.clear();
            for (unsigned j = 0; j < N; ++j)
                args.push_back(TruncatedSeries::variable(m.phi_vars_, cap, n + j)); // z'
            for (unsigned l = 0; l < c; ++l) args.push_back(phi[l]);                // z*
            for (unsigned j = 0; j < n; ++j)
                args.push_back(TruncatedSeries::variable(m.phi_vars_, cap, j)); // w
            SeriesVector resid;
            resid.reserve(c);
            for (unsigned k = 0; k < c; ++k) resid.push_back(compose(m.rho_[k], args));
            bool all_zero = true;
            for (unsigned k = 0; k < c; ++k) all_zero = all_zero && resid[k].is_zero();
            if (all_zero) break;
            for (unsigned k = 0; k < c; ++k)
                for (unsigned l = 0; l < c; ++l) phi[k] -= ainv[k][l] * resid[l];
        }
        // graph consistency
        args.clear();
        for (unsigned j = 0; j < N; ++j)
            args.push_back(TruncatedSeries::variable(m.phi_vars_, cap, n + j));
        for (unsigned l = 0; l < c; ++l) args.push_back(phi[l]);
        for (unsigned j = 0; j < n; ++j)
            args.push_back(TruncatedSeries::variable(m.phi_vars_, cap, j));
        for (unsigned k = 0; k < c; ++k)
            if (!compose(m.rho_[k], args).is_zero())
                throw validation_error("graph solve failed to annihilate rho to the cap");
        for (unsigned k = 0; k < c; ++k)
            if (!phi[k].constant_term().is_zero())
                throw validation_error("graph solve produced Phi(0) != 0");
        m.phi_ = std::move(phi);
    }

    m.normal_coords_ = check_normal_coordinates(m);
    return m;
}

GenericManifold GenericManifold::from_file(const ManifoldFile& file, unsigned cap) {
    const unsigned n = file.n;
    std::vector<std::string> tokens = make_zw_vars(n);
    SeriesVector rho;
    bool truncated = false;
    for (const auto& [text, line] : file.defining) {
        // parse with degree headroom so dropped terms are noticed
        TruncatedSeries wide = parse_polynomial(text, tokens, cap + 64, line);
        TruncatedSeries r = wide.truncated(cap);
        truncated = truncated || wide.term_count() != r.term_count();
        rho.push_back(std::move(r));
    }
    GenericManifold m = build(n, file.codim, std::move(rho), cap, file.display_names);
    m.defining_truncated_ = truncated;
    return m;
}

TruncatedSeries TangentFieldSet::apply(size_t j, const TruncatedSeries& g,
                                       const std::vector<size_t>& var_map) const {
    if (j >= N_) throw structural_error("tangent field index out of range");
    std::vector<size_t> map = var_map;
    if (map.empty()) {
        map.resize(2 * n_);
        std::iota(map.begin(), map.end(), 0);
    }
    if (map.size() != 2 * static_cast<size_t>(n_))
        throw structural_error("tangent field application: need a (z, w) block map");
    if (g.cap() == 0)
        throw insufficient_cap_error("tangent field application needs cap >= 1");

    unsigned out_cap = std::min(g.cap() - 1, cap_);
    TruncatedSeries acc(g.vars(), out_cap);
    for (unsigned i = 0; i < n_; ++i) {
        const TruncatedSeries& coeff = coeffs_[j][i];
        if (coeff.is_zero()) continue;
        TruncatedSeries dg = derive(g, map[n_ + i]);
        TruncatedSeries c_emb = embed(coeff, g.vars(), map);
        acc += mul_aligned(c_emb, dg).truncated(out_cap);
    }
    return acc;
}

TangentFieldSet tangent_fields(const GenericManifold& m) {
    const unsigned n = m.n(), c = m.c(), N = m.N();
    if (m.cap() == 0) throw insufficient_cap_error("tangent fields need cap >= 1");
    const auto& vars = m.complexified_vars();
    const unsigned cap = m.cap() - 1;

    // A = d rho / d w*, entries certified one degree below rho
    SeriesMatrix A(c, c, TruncatedSeries(vars, cap));
    for (unsigned k = 0; k < c; ++k)
        for (unsigned l = 0; l < c; ++l) A.at(k, l) = derive(m.rho()[k], n + N + l);
    if (eval(det(A), std::vector<GaussRational>(2 * n)).is_zero())
        throw validation_error("degenerate chart: d rho/d w* singular at 0");

    std::vector<SeriesVector> coeffs;
    coeffs.reserve(N);
    for (unsigned j = 0; j < N; ++j) {
        SeriesVector b;
        b.reserve(c);
        for (unsigned k = 0; k < c; ++k) b.push_back(derive(m.rho()[k], n + j));
        SeriesVector sol = solve_unit_system(A, b); // A x = rho_{w_j}
        SeriesVector row;
        row.reserve(n);
        for (unsigned i = 0; i < N; ++i)
            row.push_back(TruncatedSeries::constant(vars, cap,
                                                    GaussRational(i == j ? 1 : 0)));
        for (unsigned l = 0; l < c; ++l) row.push_back(-sol[l]);
        coeffs.push_back(std::move(row));
    }
    return TangentFieldSet(n, N, std::move(coeffs), cap);
}

SeriesVector graph_on_restriction(const GenericManifold& m) {
    const unsigned n = m.n(), N = m.N();
    SeriesVector args;
    args.reserve(n + N);
    for (unsigned i = 0; i < n; ++i)
        args.push_back(TruncatedSeries::variable(m.restricted_vars(), m.cap(), i)); // omega := z
    for (unsigned j = 0; j < N; ++j)
        args.push_back(TruncatedSeries::variable(m.restricted_vars(), m.cap(), n + j)); // theta := w'
    SeriesVector out;
    out.reserve(m.c());
    for (unsigned l = 0; l < m.c(); ++l) out.push_back(compose(bar(m.phi()[l]), args));
    return out;
}

TruncatedSeries restrict_to_M(const TruncatedSeries& g, const GenericManifold& m) {
    const unsigned n = m.n(), N = m.N();
    if (g.vars() != m.complexified_vars())
        throw structural_error("restrict_to_M: series must live in the (z, zb) space");
    SeriesVector wstar = graph_on_restriction(m);
    const unsigned cap = std::min(g.cap(), m.cap());
    SeriesVector args;
    args.reserve(2 * n);
    for (unsigned i = 0; i < n; ++i)
        args.push_back(TruncatedSeries::variable(m.restricted_vars(), cap, i));
    for (unsigned j = 0; j < N; ++j)
        args.push_back(TruncatedSeries::variable(m.restricted_vars(), cap, n + j));
    for (unsigned l = 0; l < m.c(); ++l) args.push_back(wstar[l].truncated(cap));
    return compose(g.truncated(cap), args);
}

bool check_reality_identity(const GenericManifold& m) {
    const unsigned n = m.n(), N = m.N(), c = m.c();
    // ambient space of the identity: (z1..zn, w'1..w'N)
    const auto& vars = m.restricted_vars();
    SeriesVector phibar = graph_on_restriction(m); // bar(Phi)(z, w')

    SeriesVector args;
    args.reserve(n + N);
    for (unsigned j = 0; j < N; ++j)
        args.push_back(TruncatedSeries::variable(vars, m.cap(), n + j)); // w-slot: w'
    for (unsigned l = 0; l < c; ++l) args.push_back(phibar[l]);          // w*-slot
    for (unsigned j = 0; j < N; ++j)
        args.push_back(TruncatedSeries::variable(vars, m.cap(), j)); // z'-slot: z'
    for (unsigned k = 0; k < c; ++k) {
        TruncatedSeries lhs = compose(m.phi()[k], args);
        if (!(lhs == TruncatedSeries::variable(vars, m.cap(), N + k))) return false;
    }
    return true;
}

bool check_normal_coordinates(const GenericManifold& m) {
    const unsigned n = m.n(), N = m.N(), c = m.c();
    std::vector<std::string> zvars;
    for (unsigned k = 1; k <= n; ++k) zvars.push_back("z" + std::to_string(k));
    SeriesVector args;
    args.reserve(n + N);
    for (unsigned i = 0; i < n; ++i)
        args.push_back(TruncatedSeries::variable(zvars, m.cap(), i)); // w-slot: z
    for (unsigned j = 0; j < N; ++j) args.push_back(TruncatedSeries(zvars, m.cap())); // z' = 0
    for (unsigned k = 0; k < c; ++k) {
        TruncatedSeries lhs = compose(m.phi()[k], args);
        if (!(lhs == TruncatedSeries::variable(zvars, m.cap(), N + k))) return false;
    }
    return true;
}

} // namespace segre
