#ifndef SEGRE_MANIFOLD_HPP
#define SEGRE_MANIFOLD_HPP

#include <segre/linalg.hpp>
#include <segre/parser.hpp>
#include <segre/series.hpp>

namespace segre {

/// A real analytic generic submanifold of C^n through 0, in complexified
/// form: the defining series rho live in (z1..zn, zb1..zbn), where zb_j
/// stands for the conjugate variable treated as independent. The graph
/// form z* = Phi(w, z') solves rho = 0 for the last `c` z-coordinates;
/// Phi lives in (zb1..zbn, zp1..zpN).
///
/// Construction validates the base point, genericity (rank of d rho/d zb
/// at 0 equals c), termwise reality rho(z,w) = bar(rho)(w,z), and graph
/// consistency; coordinates are permuted (deterministically, first fitting
/// permutation in lexicographic order) when the declared order leaves
/// d rho/d z* singular at 0.
class GenericManifold {
public:
    static GenericManifold build(unsigned n, unsigned c, SeriesVector rho_raw, unsigned cap,
                                 std::vector<std::string> display_names = {});
    static GenericManifold from_file(const ManifoldFile& file, unsigned cap);

    unsigned n() const { return n_; }
    unsigned c() const { return c_; }
    unsigned N() const { return n_ - c_; }
    unsigned cap() const { return cap_; }

    const SeriesVector& rho() const { return rho_; }
    const SeriesVector& phi() const { return phi_; }

    /// rho's variable list: z1..zn, zb1..zbn (post-permutation order).
    const std::vector<std::string>& complexified_vars() const { return zw_vars_; }
    /// Phi's variable list: zb1..zbn, zp1..zpN.
    const std::vector<std::string>& graph_vars() const { return phi_vars_; }
    /// Variable list of restrictions to M: z1..zn, zb1..zbN.
    const std::vector<std::string>& restricted_vars() const { return restr_vars_; }

    /// Slot k of the analysis coordinates holds declared coordinate
    /// permutation()[k]; identity when no renumbering was needed.
    const std::vector<size_t>& permutation() const { return perm_; }
    const std::vector<std::string>& display_names() const { return display_names_; }

    bool normal_coordinates() const { return normal_coords_; }
    bool defining_truncated() const { return defining_truncated_; }

private:
    GenericManifold() = default;

    unsigned n_ = 0, c_ = 0, cap_ = 0;
    SeriesVector rho_;
    SeriesVector phi_;
    std::vector<std::string> zw_vars_, phi_vars_, restr_vars_, display_names_;
    std::vector<size_t> perm_;
    bool normal_coords_ = false;
    bool defining_truncated_ = false;
};

/// Complexified (0,1) tangent fields L_1..L_N of the manifold, in the
/// basis d/dw_1..d/dw_n: coefficient (j,i) multiplies d/dw_i in L_j.
/// The w_j component of L_j is 1 and the other w_i (i <= N) components
/// vanish; the w* components solve the tangency system by Cramer's rule.
class TangentFieldSet {
public:
    TangentFieldSet(unsigned n, unsigned N, std::vector<SeriesVector> coeffs, unsigned cap)
        : n_(n), N_(N), cap_(cap), coeffs_(std::move(coeffs)) {}

    unsigned field_count() const { return N_; }
    unsigned cap() const { return cap_; }
    const SeriesVector& coefficients(size_t j) const { return coeffs_[j]; }

    /// Applies L_j to a series whose variable space contains the (z, w)
    /// block under `var_map` (identity map when g lives in (z, w) itself).
    TruncatedSeries apply(size_t j, const TruncatedSeries& g,
                          const std::vector<size_t>& var_map = {}) const;

private:
    unsigned n_, N_, cap_;
    std::vector<SeriesVector> coeffs_; // N entries of n series each
};

TangentFieldSet tangent_fields(const GenericManifold& m);

/// Substitutes w* = bar(Phi)(z, w') into a series on (z, w); the result,
/// over (z1..zn, zb1..zbN), is the restriction to the complexification.
/// "g vanishes on M" means the result is the zero series up to its cap.
TruncatedSeries restrict_to_M(const TruncatedSeries& g, const GenericManifold& m);

/// bar(Phi) composed into the restricted variable space: component l is
/// the series for w*_l on the complexification.
SeriesVector graph_on_restriction(const GenericManifold& m);

/// Verifies Phi(w', bar(Phi)(z', z*, w'), z') == z* up to the cap,
/// the complexified consequence of rho being real-valued.
bool check_reality_identity(const GenericManifold& m);

/// True when Phi(z, 0) == z*, i.e. the coordinates are normal.
bool check_normal_coordinates(const GenericManifold& m);

} // namespace segre

#endif
