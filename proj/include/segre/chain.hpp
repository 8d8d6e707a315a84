#ifndef SEGRE_CHAIN_HPP
#define SEGRE_CHAIN_HPP

#include <optional>

#include <segre/manifold.hpp>

namespace segre {

/// The Segre set mapping v_d: C^{dN} -> C^n, built by the recursion
/// v_0 = 0, v_{k+1}(t_1,...,t_{k+1}) = (t_1, Phi(bar(v_k)(t_2,...,t_{k+1}), t_1)).
/// Parameter block t_i occupies variables [ (i-1)N, iN ).
struct SegreChain {
    unsigned d = 0;
    SeriesVector map;  // n components in d*N variables
    unsigned cap = 0;  // certified degree
};

/// Variable names t<i> (N = 1) or t<i>_<j> for the chain parameter blocks.
std::vector<std::string> chain_vars(const GenericManifold& m, unsigned d);

SegreChain build_chain(const GenericManifold& m, unsigned d);

/// Generic rank of v_d (rank of its Jacobian over the parameter space).
int chain_rank(const SegreChain& chain);

/// rho(v_{b+1}(t_1..t_{b+1}), bar(v_b)(t_2..t_{b+1})) == 0: consecutive
/// chains land on the complexification.
bool check_membership(const GenericManifold& m, unsigned b);

/// v_{d+3} with t_1 := t_3 equals v_{d+1}(t_3,...,t_{d+3}); exercises the
/// reality identity through the chain recursion.
bool restriction_identity(const GenericManifold& m, unsigned d);

struct MinimalityVerdict {
    enum class Status { Minimal, NotMinimalAtCap, Inconclusive } status;
    std::optional<unsigned> d;                      // set when Minimal
    std::vector<std::pair<unsigned, int>> rank_trace; // (d, generic rank)
    unsigned d_max = 0;
    unsigned cap = 0;
};

/// Rank-growth test for minimality at 0: Minimal(d) at the first d with
/// rank v_d = n; NotMinimalAtCap when the rank stabilizes below n;
/// Inconclusive when d_max is hit while still growing. d_max defaults to
/// 2(c+1).
MinimalityVerdict decide_minimality(const GenericManifold& m, unsigned d_max = 0);

} // namespace segre

#endif
