#include <segre/nondegeneracy.hpp>

#include <map>

namespace segre {

JetSpanRecord finite_nondegeneracy_order(const GenericManifold& m, int k_max) {
    const unsigned n = m.n(), c = m.c(), N = m.N();
    if (m.cap() < 1) throw insufficient_cap_error("finite nondegeneracy needs cap >= 1");
    const unsigned depth = m.cap() - 1; // gradients are certified one below rho
    const unsigned kk = k_max < 0 ? depth : static_cast<unsigned>(k_max);

    TangentFieldSet tf = tangent_fields(m);

    // gradients rho_{j,z}
    std::vector<SeriesVector> grad(c);
    for (unsigned j = 0; j < c; ++j)
        for (unsigned i = 0; i < n; ++i) grad[j].push_back(derive(m.rho()[j], i));

    // jets[alpha][j] = L^alpha rho_{j,z}; L^alpha peels the leftmost factor:
    // L^alpha = L_i (L^{alpha - e_i}), i = first nonzero slot
    std::map<Exponents, std::vector<SeriesVector>> jets;
    jets[Exponents(N, 0)] = grad;

    JetSpanRecord rec;
    std::vector<std::vector<GaussRational>> rows;
    const std::vector<GaussRational> origin(2 * n);

    for (unsigned k = 0; k <= kk; ++k) {
        if (k > depth)
            throw insufficient_cap_error("jet order exceeds the certified derivative depth");
        for (const Exponents& alpha : multi_indices(N, k)) {
            if (k > 0) {
                size_t i = 0;
                while (alpha[i] == 0) ++i;
                Exponents prev = alpha;
                prev[i] -= 1;
                const auto& base = jets.at(prev);
                std::vector<SeriesVector> cur(c);
                for (unsigned j = 0; j < c; ++j)
                    for (unsigned comp = 0; comp < n; ++comp)
                        cur[j].push_back(tf.apply(i, base[j][comp]));
                jets[alpha] = std::move(cur);
            }
            const auto& vecs = jets.at(alpha);
            for (unsigned j = 0; j < c; ++j) {
                JetSpanRecord::JetVector jv;
                jv.alpha = alpha;
                jv.j = j + 1;
                for (unsigned comp = 0; comp < n; ++comp)
                    jv.v.push_back(eval(vecs[j][comp], origin));
                rows.push_back(jv.v);
                rec.vectors.push_back(std::move(jv));
            }
        }
        rec.k_reached = k;
        rec.cap = depth - k;
        rec.span_dim = rank_of_constants(rows);
        rec.span_trace.emplace_back(k, rec.span_dim);
        if (rec.span_dim == static_cast<int>(n)) {
            rec.order = k;
            return rec;
        }
    }
    return rec;
}

SegreCoefficientFamily segre_coefficients(const GenericManifold& m, unsigned l) {
    if (l > m.cap())
        throw insufficient_cap_error("segre_coefficients: jet order exceeds the cap");
    const unsigned n = m.n(), c = m.c(), N = m.N();
    SegreCoefficientFamily fam;
    fam.l = l;
    for (unsigned deg = 0; deg <= l; ++deg)
        for (const Exponents& beta : multi_indices(N, deg))
            for (unsigned nu = 0; nu < c; ++nu)
                fam.entries.push_back(
                    {beta, nu + 1, block_coefficient(bar(m.phi()[nu]), n, beta)});
    return fam;
}

int psi_rank(const GenericManifold& m, unsigned l) {
    const unsigned n = m.n(), c = m.c(), N = m.N();
    if (m.cap() < l + 1)
        throw insufficient_cap_error("psi_rank: jet order leaves no certified derivative");

    SeriesVector components;
    for (unsigned j = 0; j < N; ++j)
        components.push_back(TruncatedSeries::variable(m.graph_vars(), m.cap(), n + j));
    for (unsigned deg = 0; deg <= l; ++deg)
        for (const Exponents& beta : multi_indices(N, deg))
            for (unsigned nu = 0; nu < c; ++nu)
                components.push_back(derive_multi(bar(m.phi()[nu]), n, beta));

    // rank of the Jacobian in all n + N variables (omega, theta)
    SeriesMatrix J(components.size(), n + N,
                   TruncatedSeries(m.graph_vars(), 0));
    for (size_t r = 0; r < components.size(); ++r)
        for (unsigned v = 0; v < n + N; ++v) J.at(r, v) = derive(components[r], v);
    return generic_rank(J);
}

LeviRecord holomorphic_nondegeneracy(const GenericManifold& m, int l_max) {
    const unsigned full = m.N() + m.n();
    const unsigned lm = l_max < 0 ? m.cap() : static_cast<unsigned>(l_max);
    if (lm < 1) throw validation_error("holomorphic_nondegeneracy: need l_max >= 1");

    LeviRecord rec;
    int prev = -1;
    for (unsigned l = 1; l <= lm; ++l) {
        int r = psi_rank(m, l);
        rec.r_trace.emplace_back(l, r);
        rec.cap = m.cap() - l - 1;
        rec.r_max = r;
        if (r == static_cast<int>(full) || r == prev) break;
        prev = r;
    }
    rec.holomorphically_nondegenerate = rec.r_max == static_cast<int>(full);
    if (rec.holomorphically_nondegenerate)
        for (const auto& [l, r] : rec.r_trace)
            if (r == rec.r_max) {
                rec.levi_type = l;
                break;
            }
    return rec;
}

namespace {

// Jacobian rows (gradients in omega) of a list of coefficient functions.
SeriesMatrix coefficient_jacobian(const std::vector<const TruncatedSeries*>& qs, unsigned n) {
    SeriesMatrix J(qs.size(), n, TruncatedSeries(qs.front()->vars(), 0));
    for (size_t r = 0; r < qs.size(); ++r)
        for (unsigned v = 0; v < n; ++v) J.at(r, v) = derive(*qs[r], v);
    return J;
}

} // namespace

DegeneracyRecord degeneracy(const GenericManifold& m, int l_max) {
    const unsigned n = m.n();
    const unsigned lm = l_max < 0 ? (m.cap() >= 1 ? m.cap() - 1 : 0)
                                  : static_cast<unsigned>(l_max);
    DegeneracyRecord rec;
    // Unlike the derivative family of psi_l, the coefficient family is not
    // closed under differentiation, so its rank can stall and jump later
    // (the quartic model stalls at l = 1, grows at l = 2). Scan the whole
    // certified range; only a full rank n ends the search early.
    int rank = 0;
    unsigned attained = 0;
    for (unsigned l = 0; l <= lm; ++l) {
        SegreCoefficientFamily fam = segre_coefficients(m, l);
        std::vector<const TruncatedSeries*> qs;
        for (const auto& e : fam.entries)
            if (!e.q.is_zero()) qs.push_back(&e.q);
        int r = qs.empty() ? 0 : generic_rank(coefficient_jacobian(qs, n));
        if (r > rank) {
            rank = r;
            attained = l;
        }
        if (rank == static_cast<int>(n)) break;
    }
    rec.coefficient_rank = rank;
    rec.stabilized_at = attained;
    rec.cap = m.cap() >= attained + 1 ? m.cap() - attained - 1 : 0;
    rec.degeneracy = n - static_cast<unsigned>(rank);
    return rec;
}

CertificateFamily certificate_family(const GenericManifold& m, std::uint64_t seed) {
    const unsigned n = m.n();
    DegeneracyRecord deg = degeneracy(m);
    const int target = static_cast<int>(n) - static_cast<int>(deg.degeneracy);

    SegreCoefficientFamily fam = segre_coefficients(m, deg.stabilized_at);
    CertificateFamily cert;
    cert.cap = deg.cap;

    std::vector<const TruncatedSeries*> picked;
    int rank = 0;
    for (const auto& e : fam.entries) {
        if (rank == target) break;
        if (e.q.is_zero() || e.q.degree() == 0) continue; // constant rows have zero gradient
        std::vector<const TruncatedSeries*> trial = picked;
        trial.push_back(&e.q);
        int r = generic_rank(coefficient_jacobian(trial, n));
        if (r > rank) {
            rank = r;
            picked = std::move(trial);
            cert.indices.emplace_back(e.beta, e.nu);
        }
    }
    // independent recomputation on the final selection, plus the sampled
    // evaluation lower bound
    if (!picked.empty()) {
        SeriesMatrix J = coefficient_jacobian(picked, n);
        cert.verified_rank = generic_rank(J);
        cert.sampled_rank_bound = sampled_rank(J, seed);
    }
    return cert;
}

} // namespace segre
