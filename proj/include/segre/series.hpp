#ifndef SEGRE_SERIES_HPP
#define SEGRE_SERIES_HPP

#include <map>
#include <string>
#include <vector>

#include <segre/errors.hpp>
#include <segre/rational.hpp>

namespace segre {

/// Exponent vector of a monomial; one entry per declared variable.
using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
    unsigned d = 0;
    for (unsigned k : e) d += k;
    return d;
}

/// Graded lexicographic order: total degree first, then entrywise.
/// Used for term storage so that iteration and printing are canonical.
struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// Multivariate formal power series truncated at a total-degree cap,
/// with exact Gaussian-rational coefficients.
///
/// Invariants: every stored exponent vector has total degree <= cap and
/// length == vars().size(); no stored coefficient is zero. Two series
/// are operands of ring arithmetic only when vars and cap agree; use
/// truncated() to align caps explicitly. Every value is immutable in
/// spirit: all operations below are pure.
class TruncatedSeries {
public:
    using TermMap = std::map<Exponents, GaussRational, GradedLex>;

    TruncatedSeries(std::vector<std::string> vars, unsigned cap)
        : vars_(std::move(vars)), cap_(cap) {}

    /// The series equal to a constant.
    static TruncatedSeries constant(std::vector<std::string> vars, unsigned cap,
                                    const GaussRational& c) {
        TruncatedSeries s(std::move(vars), cap);
        if (!c.is_zero()) s.terms_[Exponents(s.vars_.size(), 0)] = c;
        return s;
    }

    /// The series equal to the variable of the given index.
    static TruncatedSeries variable(std::vector<std::string> vars, unsigned cap, size_t index);

    const std::vector<std::string>& vars() const { return vars_; }
    unsigned cap() const { return cap_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    /// Coefficient of the given exponent vector (zero if absent).
    GaussRational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussRational() : it->second;
    }
    GaussRational constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

    /// Adds c * x^e, dropping the term if it exceeds the cap or cancels.
    void add_term(const Exponents& e, const GaussRational& c);

    /// Same series re-certified at a lower cap (drops higher terms).
    TruncatedSeries truncated(unsigned new_cap) const;

    /// Highest total degree among stored terms (0 for the zero series).
    unsigned degree() const {
        return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
    }

    bool same_shape(const TruncatedSeries& o) const {
        return cap_ == o.cap_ && vars_ == o.vars_;
    }

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const GaussRational& c, TruncatedSeries s);

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.cap_ == b.cap_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

    std::string str() const;

private:
    void require_shape(const TruncatedSeries& o) const;

    std::vector<std::string> vars_;
    unsigned cap_;
    TermMap terms_;
};

using SeriesVector = std::vector<TruncatedSeries>;

/// Rectangular matrix of series sharing vars and cap.
class SeriesMatrix {
public:
    SeriesMatrix(size_t rows, size_t cols, const TruncatedSeries& fill)
        : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    TruncatedSeries& at(size_t i, size_t j) { return entries_[i * cols_ + j]; }
    const TruncatedSeries& at(size_t i, size_t j) const { return entries_[i * cols_ + j]; }

private:
    size_t rows_, cols_;
    std::vector<TruncatedSeries> entries_;
};

// ---- ring / substitution operations ------------------------------------

/// f(args): one argument per variable of f, all sharing vars and cap and
/// with zero constant term. Result lives in the arguments' variable space,
/// certified at min(f.cap, args cap).
TruncatedSeries compose(const TruncatedSeries& f, const SeriesVector& args);

/// Formal partial derivative. The certified cap drops by one.
TruncatedSeries derive(const TruncatedSeries& f, size_t var_index);
TruncatedSeries derive(const TruncatedSeries& f, const std::string& var_name);

/// Iterated derivative by the multi-index `order` applied to the variable
/// block starting at `var_offset`.
TruncatedSeries derive_multi(const TruncatedSeries& f, size_t var_offset, const Exponents& order);

/// Coefficientwise complex conjugation.
TruncatedSeries bar(const TruncatedSeries& f);

/// Multiplicative inverse of a unit (nonzero constant term), to the cap.
TruncatedSeries invert_unit(const TruncatedSeries& f);

/// Exact evaluation of the stored truncation at a rational point.
GaussRational eval(const TruncatedSeries& f, const std::vector<GaussRational>& point);

/// Re-embeds f into a larger variable space: variable k of f becomes
/// variable var_map[k] of the target list.
TruncatedSeries embed(const TruncatedSeries& f, const std::vector<std::string>& target_vars,
                      const std::vector<size_t>& var_map);

/// Sets the listed variables to zero, keeping the variable space.
TruncatedSeries set_vars_to_zero(const TruncatedSeries& f, const std::vector<size_t>& var_indices);

/// Collects the coefficient of block^beta, where the block is the
/// contiguous variable range [block_offset, block_offset + beta.size()).
/// The result lives in the remaining variables, certified at cap - |beta|.
TruncatedSeries block_coefficient(const TruncatedSeries& f, size_t block_offset,
                                  const Exponents& beta);

/// Jacobian matrix d(components)/d(vars) over the given variable range.
SeriesMatrix jacobian(const SeriesVector& components, size_t var_offset, size_t var_count);

// Arithmetic with explicit cap alignment: both operands are truncated to
// the smaller certified cap first. Ring operators themselves reject cap
// mismatches, so any loss of certified degrees stays visible at call sites.
TruncatedSeries mul_aligned(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries add_aligned(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub_aligned(const TruncatedSeries& a, const TruncatedSeries& b);

SeriesVector identity_args(const std::vector<std::string>& vars, unsigned cap);

/// All multi-indices with `slots` entries of the given total degree, in
/// lexicographically ascending order (looping over the degree yields
/// graded-lex enumeration).
std::vector<Exponents> multi_indices(unsigned slots, unsigned total);

} // namespace segre

#endif
