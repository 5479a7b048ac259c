#pragma once

// Exact rational linear algebra: rank, nullspace, projections, and the
// positive-dependence / separating-vector alternative decided by an exact
// phase-1 simplex.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace crn {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatVector = std::vector<Rational>;

/// Dense row-major rational matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix from_rows(std::span<const RatVector> rows, std::size_t cols);
  static RatMatrix from_columns(std::span<const RatVector> columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  RatVector row(std::size_t r) const;
  RatVector column(std::size_t c) const;
  RatMatrix transpose() const;
  RatVector multiply(const RatVector& x) const;       // M x
  RatVector left_multiply(const RatVector& y) const;  // yᵀ M

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RatVector to_rational(std::span<const int> v);
std::vector<double> to_double(const RatVector& v);
Rational dot(const RatVector& a, const RatVector& b);
bool is_zero(const RatVector& v);

/// Scales v by a positive rational so that all entries are coprime integers.
RatVector normalize_positive(const RatVector& v);

/// Like normalize_positive, then flips sign so the first nonzero entry is
/// positive.
RatVector normalize_first_positive(const RatVector& v);

/// "p/q" or "p".
std::string to_string(const Rational& r);
std::string to_string(const RatVector& v);

struct RowEchelon {
  RatMatrix reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

RowEchelon reduced_row_echelon(RatMatrix m);
std::size_t rank(const RatMatrix& m);

/// Rank of the span of a list of vectors of length `dim`.
std::size_t span_rank(std::span<const RatVector> vectors, std::size_t dim);

/// Basis of {v : M v = 0}; each vector has coprime integer entries with its
/// first nonzero entry positive.
std::vector<RatVector> nullspace(const RatMatrix& m);

struct PositiveDependence {
  RatVector lambda;  // M λ = 0, λ ≥ 1
};

struct Separator {
  RatVector w;  // wᵀM ≤ 0, at least one entry strictly negative
};

using StiemkeResult = std::variant<PositiveDependence, Separator>;

/// Decides whether the columns of M admit a strictly positive linear
/// dependence. Returns the dependence, or a separating vector proving none
/// exists. Requires at least one column.
StiemkeResult positive_nullvector_or_certificate(const RatMatrix& m);

/// Exact check of either certificate against M.
bool verify_certificate(const RatMatrix& m, const StiemkeResult& result);
bool verify_positive_dependence(const RatMatrix& m, const RatVector& lambda);
bool verify_separator(const RatMatrix& m, const RatVector& w);

/// Returns w in span(span_basis), orthogonal to every vector of perp_set,
/// with w·orient < 0, as coprime integers. The result is the negated
/// component of `orient` orthogonal to span(perp_set). Throws NoSeparator
/// when orient lies in span(perp_set) or outside span(span_basis), or when
/// perp_set leaves span(span_basis).
RatVector vector_in_span_orthogonal_to(std::span<const RatVector> span_basis,
                                       std::span<const RatVector> perp_set,
                                       const RatVector& orient);

}  // namespace crn
