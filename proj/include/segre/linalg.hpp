#ifndef SEGRE_LINALG_HPP
#define SEGRE_LINALG_HPP

#include <cstdint>
#include <vector>

#include <segre/series.hpp>

namespace segre {

/// Generic rank of a matrix of polynomial entries over the fraction field
/// of the polynomial ring: the maximal size of a nonvanishing minor,
/// computed by fraction-free (Bareiss) elimination with exact division.
/// Truncated series entries are read as the polynomials they store.
int generic_rank(const SeriesMatrix& m);

/// Lower-bound certificate for generic_rank: evaluates the matrix at
/// `samples` rational points drawn from the seeded generator and returns
/// the largest exact numeric rank seen. Always <= generic_rank; equality
/// at some sample certifies the symbolic answer.
int sampled_rank(const SeriesMatrix& m, std::uint64_t seed, int samples = 4);

/// Exact rank of a constant matrix (Gaussian elimination over the field).
int rank_of_constants(const std::vector<std::vector<GaussRational>>& rows);

/// Determinant of a square series matrix by cofactor expansion
/// (sizes here are tiny: the CR dimension or the codimension).
TruncatedSeries det(const SeriesMatrix& m);

/// Adjugate (transposed cofactor matrix): m * adjugate(m) = det(m) * I.
SeriesMatrix adjugate(const SeriesMatrix& m);

/// Solves A x = b for square A with unit determinant at 0, exactly to the
/// cap: x = adjugate(A) b * invert_unit(det A).
SeriesVector solve_unit_system(const SeriesMatrix& a, const SeriesVector& b);

} // namespace segre

#endif
