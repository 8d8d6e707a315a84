#ifndef SEGRE_NONDEGENERACY_HPP
#define SEGRE_NONDEGENERACY_HPP

#include <optional>

#include <segre/manifold.hpp>

namespace segre {

/// Span of the jet vectors L^alpha rho_{j,z}(0,0) in C^n, by jet order.
struct JetSpanRecord {
    std::optional<unsigned> order;  // smallest k with full span; nullopt = NotUpToCap
    unsigned k_reached = 0;         // last jet order evaluated
    int span_dim = 0;
    std::vector<std::pair<unsigned, int>> span_trace; // (k, span dim)
    // the vectors accumulated up to the decision point, with their labels
    struct JetVector {
        Exponents alpha;
        unsigned j; // defining-function index
        std::vector<GaussRational> v;
    };
    std::vector<JetVector> vectors;
    unsigned cap = 0; // certified derivative depth at the decision point
};

/// Finite nondegeneracy: do the jets of the complex gradients span C^n?
/// k_max defaults to cap - 1, the certified derivative depth.
JetSpanRecord finite_nondegeneracy_order(const GenericManifold& m, int k_max = -1);

/// theta-Taylor coefficients q_{beta,nu}(omega) of bar(Phi)_nu(omega,theta),
/// in graded order on beta, then nu.
struct SegreCoefficientFamily {
    unsigned l = 0;
    struct Entry {
        Exponents beta;
        unsigned nu;
        TruncatedSeries q; // series in omega, certified at cap - |beta|
    };
    std::vector<Entry> entries;
};

SegreCoefficientFamily segre_coefficients(const GenericManifold& m, unsigned l);

/// Generic rank r_l of the jet map
/// psi_l : (omega, theta) -> (theta, (d_theta^beta bar(Phi)_nu)_{|beta| <= l}).
int psi_rank(const GenericManifold& m, unsigned l);

struct LeviRecord {
    bool holomorphically_nondegenerate = false;
    std::optional<unsigned> levi_type; // set when nondegenerate
    int r_max = 0;
    std::vector<std::pair<unsigned, int>> r_trace; // (l, r_l)
    unsigned cap = 0;
};

/// r(M) = max_l r_l with early stop once two consecutive ranks agree or
/// the maximum N + n is reached; nondegenerate iff r(M) = N + n.
LeviRecord holomorphic_nondegeneracy(const GenericManifold& m, int l_max = -1);

struct DegeneracyRecord {
    unsigned degeneracy = 0;  // d(M) = n - stabilized coefficient rank
    int coefficient_rank = 0; // generic rank of omega -> (q_{beta,nu})
    unsigned stabilized_at = 0;
    unsigned cap = 0;
};

DegeneracyRecord degeneracy(const GenericManifold& m, int l_max = -1);

/// Greedy certificate: n - d(M) coefficient functions whose Jacobian has
/// exactly that generic rank, in graded-lex order on beta with nu as the
/// tie-break. The returned rank is recomputed from scratch on the
/// selected family; the sampled rank is the seeded evaluation lower bound.
struct CertificateFamily {
    std::vector<std::pair<Exponents, unsigned>> indices; // (beta, nu)
    int verified_rank = 0;
    int sampled_rank_bound = 0;
    unsigned cap = 0;
};

CertificateFamily certificate_family(const GenericManifold& m, std::uint64_t seed = 0);

} // namespace segre

#endif
