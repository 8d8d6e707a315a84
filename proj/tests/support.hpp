#ifndef SEGRE_TESTS_SUPPORT_HPP
#define SEGRE_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include <segre/linalg.hpp>
#include <segre/series.hpp>

namespace segre::testing {

inline GaussRational gr(long num, long den = 1) { return GaussRational(mpq_class(num, den)); }
inline GaussRational gri(long re_num, long im_num, long den = 1) {
    return GaussRational(mpq_class(re_num, den), mpq_class(im_num, den));
}

// Random series with small rational coefficients, for property tests.
inline TruncatedSeries random_series(std::mt19937_64& rng, std::vector<std::string> vars,
                                     unsigned cap, unsigned max_terms,
                                     bool zero_constant = false) {
    TruncatedSeries s(vars, cap);
    for (unsigned t = 0; t < max_terms; ++t) {
        Exponents e(vars.size());
        unsigned budget = rng() % (cap + 1);
        if (zero_constant && budget == 0) budget = 1;
        for (size_t k = 0; k < e.size() && budget > 0; ++k) {
            unsigned take = rng() % (budget + 1);
            e[k] = take;
            budget -= take;
        }
        if (zero_constant && total_degree(e) == 0) continue;
        long re = static_cast<long>(rng() % 11) - 5;
        long im = static_cast<long>(rng() % 11) - 5;
        long den = static_cast<long>(rng() % 4) + 1;
        s.add_term(e, gri(re, im, den));
    }
    return s;
}

// Independent rank oracle: largest k with a symbolically nonzero k x k
// minor, by brute-force enumeration and cofactor determinants. Only for
// small matrices; deliberately avoids the Bareiss code path.
inline TruncatedSeries minor_det(const SeriesMatrix& m, const std::vector<size_t>& ri,
                                 const std::vector<size_t>& ci) {
    const size_t k = ri.size();
    if (k == 1) return m.at(ri[0], ci[0]);
    TruncatedSeries acc(m.at(0, 0).vars(), m.at(0, 0).cap());
    for (size_t j = 0; j < k; ++j) {
        std::vector<size_t> sub_rows(ri.begin() + 1, ri.end());
        std::vector<size_t> sub_cols;
        for (size_t t = 0; t < k; ++t)
            if (t != j) sub_cols.push_back(ci[t]);
        TruncatedSeries contrib = m.at(ri[0], ci[j]) * minor_det(m, sub_rows, sub_cols);
        acc += (j % 2 == 0) ? contrib : -contrib;
    }
    return acc;
}

inline int rank_by_minors(const SeriesMatrix& m) {
    const size_t n = std::min(m.rows(), m.cols());
    for (size_t k = n; k >= 1; --k) {
        // all k-subsets of rows and columns
        std::vector<size_t> rsel(k), csel(k);
        std::vector<bool> rmask(m.rows(), false), cmask(m.cols(), false);
        std::fill(rmask.begin(), rmask.begin() + k, true);
        do {
            size_t ri = 0;
            for (size_t i = 0; i < m.rows(); ++i)
                if (rmask[i]) rsel[ri++] = i;
            std::fill(cmask.begin(), cmask.end(), false);
            std::fill(cmask.begin(), cmask.begin() + k, true);
            do {
                size_t ci = 0;
                for (size_t j = 0; j < m.cols(); ++j)
                    if (cmask[j]) csel[ci++] = j;
                if (!minor_det(m, rsel, csel).is_zero()) return static_cast<int>(k);
            } while (std::prev_permutation(cmask.begin(), cmask.end()));
        } while (std::prev_permutation(rmask.begin(), rmask.end()));
    }
    return 0;
}

} // namespace segre::testing

#endif
