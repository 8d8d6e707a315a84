#include <segre/linalg.hpp>

#include <algorithm>
#include <random>

namespace segre {

namespace {

// Untruncated multivariate polynomial over GaussRational. Bareiss steps
// multiply entries before dividing, so intermediate degrees exceed any
// series cap; this local type carries exact polynomial arithmetic.
class Poly {
public:
    using TermMap = std::map<Exponents, GaussRational, GradedLex>;

    Poly() = default;
    explicit Poly(size_t nvars, const GaussRational& c = GaussRational()) : nvars_(nvars) {
        if (!c.is_zero()) terms_[Exponents(nvars, 0)] = c;
    }
    static Poly from_series(const TruncatedSeries& s) {
        Poly p(s.vars().size());
        for (const auto& [e, c] : s.terms()) p.terms_.emplace(e, c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }

    void add_term(const Exponents& e, const GaussRational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator*(const Poly& o) const {
        Poly out(nvars_);
        Exponents e(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                for (size_t k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    // Leading term in graded-lex order.
    const std::pair<const Exponents, GaussRational>& leading() const { return *terms_.rbegin(); }

    // Exact division: *this must be a ring multiple of d. In that case the
    // leading term of every partial remainder stays divisible by lt(d).
    Poly divide_exact(const Poly& d) const {
        if (d.is_zero()) throw std::logic_error("Poly: division by zero polynomial");
        Poly q(nvars_);
        Poly r = *this;
        const auto& [de, dc] = d.leading();
        while (!r.is_zero()) {
            const auto& [re, rc] = r.leading();
            Exponents t(nvars_);
            for (size_t k = 0; k < nvars_; ++k) {
                if (re[k] < de[k]) throw std::logic_error("Poly: inexact division");
                t[k] = re[k] - de[k];
            }
            GaussRational tc = rc / dc;
            q.add_term(t, tc);
            Poly sub(nvars_);
            sub.add_term(t, tc);
            r -= sub * d;
        }
        return q;
    }

private:
    size_t nvars_ = 0;
    TermMap terms_;
};

// Fraction-free elimination with full pivoting; returns the rank.
int bareiss_rank(std::vector<std::vector<Poly>> m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    const size_t nv = rows && cols ? m[0][0].nvars() : 0;
    Poly prev(nv, GaussRational(1));
    size_t k = 0;
    for (; k < std::min(rows, cols); ++k) {
        // deterministic pivot scan: first nonzero entry of the submatrix
        size_t pi = rows, pj = cols;
        for (size_t i = k; i < rows && pi == rows; ++i)
            for (size_t j = k; j < cols; ++j)
                if (!m[i][j].is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;
        if (pi != k) std::swap(m[pi], m[k]);
        if (pj != k)
            for (size_t i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][k]);
        for (size_t i = k + 1; i < rows; ++i) {
            for (size_t j = k + 1; j < cols; ++j) {
                Poly t = m[i][j] * m[k][k];
                t -= m[i][k] * m[k][j];
                m[i][j] = t.divide_exact(prev);
            }
            m[i][k] = Poly(nv);
        }
        prev = m[k][k];
    }
    return static_cast<int>(k);
}

std::vector<std::vector<Poly>> to_polys(const SeriesMatrix& m) {
    std::vector<std::vector<Poly>> out(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) {
        out[i].reserve(m.cols());
        for (size_t j = 0; j < m.cols(); ++j) out[i].push_back(Poly::from_series(m.at(i, j)));
    }
    return out;
}

} // namespace

int generic_rank(const SeriesMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss_rank(to_polys(m));
}

int rank_of_constants(const std::vector<std::vector<GaussRational>>& rows) {
    std::vector<std::vector<GaussRational>> m = rows;
    const size_t nr = m.size();
    const size_t nc = nr ? m[0].size() : 0;
    size_t rank = 0;
    for (size_t col = 0; col < nc && rank < nr; ++col) {
        size_t piv = nr;
        for (size_t i = rank; i < nr; ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv == nr) continue;
        std::swap(m[piv], m[rank]);
        for (size_t i = rank + 1; i < nr; ++i) {
            if (m[i][col].is_zero()) continue;
            GaussRational factor = m[i][col] / m[rank][col];
            for (size_t j = col; j < nc; ++j) m[i][j] -= factor * m[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

int sampled_rank(const SeriesMatrix& m, std::uint64_t seed, int samples) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const size_t nv = m.at(0, 0).vars().size();
    std::mt19937_64 rng(seed);
    // small rationals keep the exact elimination cheap; modulo bias is
    // irrelevant for a rank lower bound
    auto small_rational = [&rng]() {
        long num = static_cast<long>(rng() % 19) - 9;
        long den = static_cast<long>(rng() % 9) + 1;
        return GaussRational(mpq_class(num, den));
    };
    int best = 0;
    for (int s = 0; s < samples; ++s) {
        std::vector<GaussRational> point(nv);
        for (auto& q : point) q = small_rational();
        std::vector<std::vector<GaussRational>> rows(m.rows(),
                                                     std::vector<GaussRational>(m.cols()));
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) rows[i][j] = eval(m.at(i, j), point);
        best = std::max(best, rank_of_constants(rows));
    }
    return best;
}

TruncatedSeries det(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) throw structural_error("det: matrix not square");
    const size_t n = m.rows();
    if (n == 0) throw structural_error("det: empty matrix");
    if (n == 1) return m.at(0, 0);

    // cofactor expansion along the first row
    TruncatedSeries acc(m.at(0, 0).vars(), m.at(0, 0).cap());
    for (size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        SeriesMatrix minor(n - 1, n - 1, acc);
        for (size_t i = 1; i < n; ++i) {
            size_t cj = 0;
            for (size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor.at(i - 1, cj++) = m.at(i, k);
            }
        }
        TruncatedSeries contrib = m.at(0, j) * det(minor);
        acc += (j % 2 == 0) ? contrib : -contrib;
    }
    return acc;
}

SeriesMatrix adjugate(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) throw structural_error("adjugate: matrix not square");
    const size_t n = m.rows();
    const TruncatedSeries zero(m.at(0, 0).vars(), m.at(0, 0).cap());
    if (n == 1) {
        SeriesMatrix out(1, 1, TruncatedSeries::constant(zero.vars(), zero.cap(), GaussRational(1)));
        return out;
    }
    SeriesMatrix out(n, n, zero);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            SeriesMatrix minor(n - 1, n - 1, zero);
            size_t ri = 0;
            for (size_t a = 0; a < n; ++a) {
                if (a == i) continue;
                size_t cj = 0;
                for (size_t b = 0; b < n; ++b) {
                    if (b == j) continue;
                    minor.at(ri, cj++) = m.at(a, b);
                }
                ++ri;
            }
            TruncatedSeries cof = det(minor);
            // adjugate = transpose of cofactors
            out.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return out;
}

SeriesVector solve_unit_system(const SeriesMatrix& a, const SeriesVector& b) {
    if (a.rows() == 0 || a.rows() != a.cols() || b.size() != a.rows())
        throw structural_error("solve_unit_system: dimension mismatch");
    TruncatedSeries d = det(a);
    TruncatedSeries dinv = invert_unit(d); // throws if det(A)(0) = 0
    SeriesMatrix adj = adjugate(a);
    SeriesVector x;
    x.reserve(b.size());
    for (size_t i = 0; i < a.rows(); ++i) {
        TruncatedSeries acc(b.front().vars(), b.front().cap());
        for (size_t j = 0; j < a.cols(); ++j) acc += adj.at(i, j) * b[j];
        x.push_back(acc * dinv);
    }
    return x;
}

} // namespace segre
