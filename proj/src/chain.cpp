#include <segre/chain.hpp>

namespace segre {

std::vector<std::string> chain_vars(const GenericManifold& m, unsigned d) {
    const unsigned N = m.N();
    std::vector<std::string> vars;
    vars.reserve(static_cast<size_t>(d) * N);
    for (unsigned i = 1; i <= d; ++i)
        for (unsigned j = 1; j <= N; ++j)
            vars.push_back(N == 1 ? "t" + std::to_string(i)
                                  : "t" + std::to_string(i) + "_" + std::to_string(j));
    return vars;
}

SegreChain build_chain(const GenericManifold& m, unsigned d) {
    const unsigned n = m.n(), N = m.N(), c = m.c();
    if (m.cap() < 1) throw insufficient_cap_error("build_chain: cap below 1");

    // v_0 = 0 in an empty parameter space
    SegreChain chain;
    chain.d = 0;
    chain.cap = m.cap();
    chain.map.assign(n, TruncatedSeries(chain_vars(m, 0), m.cap()));

    for (unsigned k = 1; k <= d; ++k) {
        std::vector<std::string> vars = chain_vars(m, k);
        // previous chain shifted one block: its t_i becomes t_{i+1}
        std::vector<size_t> shift(static_cast<size_t>(k - 1) * N);
        for (size_t idx = 0; idx < shift.size(); ++idx) shift[idx] = idx + N;

        SeriesVector args;
        args.reserve(n + N);
        for (unsigned i = 0; i < n; ++i)
            args.push_back(embed(bar(chain.map[i]), vars, shift)); // omega := bar(v_{k-1})
        for (unsigned j = 0; j < N; ++j)
            args.push_back(TruncatedSeries::variable(vars, m.cap(), j)); // theta := t_1

        SeriesVector next;
        next.reserve(n);
        for (unsigned j = 0; j < N; ++j)
            next.push_back(TruncatedSeries::variable(vars, m.cap(), j));
        for (unsigned l = 0; l < c; ++l) next.push_back(compose(m.phi()[l], args));

        chain.d = k;
        chain.map = std::move(next);
        chain.cap = std::min(chain.cap, chain.map.back().cap());
        if (chain.cap < 1) throw insufficient_cap_error("build_chain: certified degree exhausted");
    }
    return chain;
}

int chain_rank(const SegreChain& chain) {
    if (chain.d == 0) return 0;
    return generic_rank(jacobian(chain.map, 0, chain.map.front().vars().size()));
}

bool check_membership(const GenericManifold& m, unsigned b) {
    const unsigned n = m.n(), N = m.N();
    SegreChain vb = build_chain(m, b);
    SegreChain vb1 = build_chain(m, b + 1);
    const auto& vars = vb1.map.front().vars(); // t_1 .. t_{b+1}

    std::vector<size_t> shift(static_cast<size_t>(b) * N);
    for (size_t idx = 0; idx < shift.size(); ++idx) shift[idx] = idx + N;

    SeriesVector args;
    args.reserve(2 * n);
    for (unsigned i = 0; i < n; ++i) args.push_back(vb1.map[i]);
    for (unsigned i = 0; i < n; ++i) args.push_back(embed(bar(vb.map[i]), vars, shift));
    for (unsigned k = 0; k < m.c(); ++k)
        if (!compose(m.rho()[k], args).is_zero()) return false;
    return true;
}

bool restriction_identity(const GenericManifold& m, unsigned d) {
    const unsigned N = m.N();
    SegreChain hi = build_chain(m, d + 3);
    SegreChain lo = build_chain(m, d + 1);

    // substitute t_1 := t_3 inside v_{d+3}; ambient space t_2 .. t_{d+3}
    std::vector<std::string> vars = chain_vars(m, d + 3);
    std::vector<std::string> sub_vars(vars.begin() + N, vars.end());
    SeriesVector args;
    args.reserve(static_cast<size_t>(d + 3) * N);
    for (unsigned j = 0; j < N; ++j)
        args.push_back(TruncatedSeries::variable(sub_vars, m.cap(), N + j)); // t_1 -> t_3
    for (unsigned idx = 0; idx < (d + 2) * N; ++idx)
        args.push_back(TruncatedSeries::variable(sub_vars, m.cap(), idx));

    // v_{d+1} read in the blocks t_3 .. t_{d+3}
    std::vector<size_t> lift(static_cast<size_t>(d + 1) * N);
    for (size_t idx = 0; idx < lift.size(); ++idx) lift[idx] = idx + N;

    for (unsigned i = 0; i < m.n(); ++i) {
        TruncatedSeries lhs = compose(hi.map[i], args);
        TruncatedSeries rhs = embed(lo.map[i], sub_vars, lift);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

MinimalityVerdict decide_minimality(const GenericManifold& m, unsigned d_max) {
    if (d_max == 0) d_max = 2 * (m.c() + 1);
    if (d_max < 1) throw validation_error("decide_minimality: need d_max >= 1");

    MinimalityVerdict verdict;
    verdict.d_max = d_max;
    verdict.cap = m.cap();
    verdict.status = MinimalityVerdict::Status::Inconclusive;

    int prev_rank = -1;
    for (unsigned d = 1; d <= d_max; ++d) {
        int r = chain_rank(build_chain(m, d));
        verdict.rank_trace.emplace_back(d, r);
        if (r == static_cast<int>(m.n())) {
            verdict.status = MinimalityVerdict::Status::Minimal;
            verdict.d = d;
            return verdict;
        }
        if (prev_rank == r) {
            // one more Segre step gained nothing; the truncated ranks
            // never grow again
            verdict.status = MinimalityVerdict::Status::NotMinimalAtCap;
            return verdict;
        }
        prev_rank = r;
    }
    return verdict;
}

} // namespace segre
