#ifndef SEGRE_REFLECTION_HPP
#define SEGRE_REFLECTION_HPP

#include <optional>

#include <segre/manifold.hpp>

namespace segre {

/// A truncated formal map f : (C^{n_src}, 0) -> (C^{n_tgt}, 0), split per
/// the target chart as f = (f', f*) with f' the first N_tgt components.
struct FormalMapRecord {
    unsigned n_src = 0, n_tgt = 0, N_tgt = 0, c_tgt = 0;
    SeriesVector components; // in the source z-variables, cap D
    std::string source_ref, target_ref;
    std::optional<TruncatedSeries> jacobian; // det d f/d z when n_src = n_tgt
    bool nondegenerate = false;              // J_f not identically zero

    const TruncatedSeries& f_prime(size_t j) const { return components[j]; }
    const TruncatedSeries& f_star(size_t l) const { return components[N_tgt + l]; }
};

/// Parses the map file against the two manifolds, applying their
/// coordinate permutations (source: variables, target: component order).
FormalMapRecord build_formal_map(const MapFile& file, const GenericManifold& source,
                                 const GenericManifold& target, unsigned cap);

/// CR validation: rho'(f(z), bar(f)(w)) restricted to the source
/// complexification must vanish for every component. Sidesteps the
/// cofactor matrix a(z, w) entirely.
struct CrValidation {
    bool valid = false;
    struct FirstResidual {
        unsigned nu;
        Exponents exponents;
        GaussRational coeff;
    };
    std::optional<FirstResidual> first_nonzero;
    unsigned cap = 0;
};

CrValidation validate_cr_map(const FormalMapRecord& f, const GenericManifold& m,
                             const GenericManifold& mp);

/// D(z, w) = det(L_j bar(f')_i(w)), with its restriction to the
/// complexification (nonvanishing there is what Cramer steps divide by).
struct DeterminantRecord {
    TruncatedSeries d;            // in (z, zb), cap D-1
    TruncatedSeries d_restricted; // on the complexification
    bool nonzero_on_M = false;
};

DeterminantRecord determinant_D(const FormalMapRecord& f, const GenericManifold& m);

/// One verified reflection identity
///   D^{2|alpha|-1} bar(Phi')_{theta^alpha}(f(z), bar(f')(w)) = V_alpha
/// on the complexification (exponent 0 for alpha = 0). V_alpha is built
/// inductively: apply L_j, solve the N x N system by Cramer's rule with
/// denominator D, clearing denominators so everything stays polynomial.
struct ReflectionIdentity {
    Exponents alpha;
    SeriesVector lhs_on_M; // c components, restricted
    SeriesVector rhs_on_M;
    bool residual_zero = false;
    unsigned cap = 0;
};

/// Identities for every |alpha| <= alpha_max in graded-lex order.
/// Requires a valid CR map and D not identically zero on M.
std::vector<ReflectionIdentity> reflection_identities(const FormalMapRecord& f,
                                                      const GenericManifold& m,
                                                      const GenericManifold& mp,
                                                      unsigned alpha_max);

/// The reflection mapping (z, theta) -> bar(Phi')(f(z), theta) in C^c,
/// over variables (z1..z_{n_src}, th1..th_{N_tgt}).
SeriesVector reflection_map(const FormalMapRecord& f, const GenericManifold& mp);

/// theta = 0 slice of the reflection mapping; in normal coordinates of
/// the target this recovers the normal components f*.
struct NormalComponents {
    SeriesVector slice; // c series in the source z-variables
    bool matches_declared = false;
};

NormalComponents normal_components(const FormalMapRecord& f, const GenericManifold& mp);

/// Characteristic variety generators Xi_gamma(0, 0, zeta) =
/// [L^gamma rho'(zeta, bar(f)(w))](0,0) for |gamma| <= jet order, with the
/// Jacobian-rank sufficient test for zero-dimensionality at zeta = 0.
struct CharVarietyRecord {
    unsigned jet_order = 0;
    struct Generator {
        Exponents gamma;
        unsigned nu;
        TruncatedSeries poly; // polynomial in zeta
    };
    std::vector<Generator> generators;
    bool all_vanish_at_zero = false;
    int jacobian_rank_at_zero = 0;
    bool zero_dim_certified = false; // rank equals n_tgt (sufficient only)
    unsigned cap = 0;
};

CharVarietyRecord char_variety(const FormalMapRecord& f, const GenericManifold& m,
                               const GenericManifold& mp, unsigned jet_order);

/// Coefficient-growth heuristic for a truncated series; explicitly not a
/// convergence decision.
struct ConvergenceDiagnostic {
    enum class Verdict { ConsistentWithConvergence, DivergentLooking, TooShort } verdict;
    std::vector<mpq_class> degree_norm2; // max |coeff|^2 per total degree
    double fitted_ratio = 0.0;           // geometric growth of max magnitudes
};

const char* to_string(ConvergenceDiagnostic::Verdict v);

ConvergenceDiagnostic convergence_diagnostic(const TruncatedSeries& s);

} // namespace segre

#endif
