#include "crn/exact.hpp"

#include <algorithm>

#include "crn/error.hpp"

namespace crn {

namespace mp = boost::multiprecision;

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

RatMatrix RatMatrix::from_rows(std::span<const RatVector> rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(std::span<const RatVector> columns, std::size_t rows) {
  RatMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RatVector RatMatrix::row(std::size_t r) const {
  return RatVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RatVector RatMatrix::column(std::size_t c) const {
  RatVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatVector RatMatrix::multiply(const RatVector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "M x: length mismatch");
  RatVector out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!x[c].is_zero()) out[r] += (*this)(r, c) * x[c];
  return out;
}

RatVector RatMatrix::left_multiply(const RatVector& y) const {
  if (y.size() != rows_) throw Error(ErrorKind::DimensionMismatch, "yᵀM: length mismatch");
  RatVector out(cols_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    if (y[r].is_zero()) continue;
    for (std::size_t c = 0; c < cols_; ++c) out[c] += y[r] * (*this)(r, c);
  }
  return out;
}

RatVector to_rational(std::span<const int> v) {
  RatVector out;
  out.reserve(v.size());
  for (int x : v) out.emplace_back(x);
  return out;
}

std::vector<double> to_double(const RatVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.convert_to<double>());
  return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

RatVector normalize_positive(const RatVector& v) {
  Integer den_lcm = 1;
  for (const auto& x : v)
    if (!x.is_zero()) den_lcm = mp::lcm(den_lcm, mp::denominator(x));
  Integer num_gcd = 0;
  for (const auto& x : v)
    if (!x.is_zero()) num_gcd = mp::gcd(num_gcd, mp::abs(mp::numerator(x) * (den_lcm / mp::denominator(x))));
  if (num_gcd == 0) return v;
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x * Rational(den_lcm) / Rational(num_gcd));
  return out;
}

RatVector normalize_first_positive(const RatVector& v) {
  RatVector out = normalize_positive(v);
  auto first = std::find_if(out.begin(), out.end(), [](const Rational& x) { return !x.is_zero(); });
  if (first != out.end() && *first < 0)
    for (auto& x : out) x = -x;
  return out;
}

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

RowEchelon reduced_row_echelon(RatMatrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(lead_row, k));
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c).is_zero()) continue;
      Rational f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!m(lead_row, k).is_zero()) m(r, k) -= f * m(lead_row, k);
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m) { return reduced_row_echelon(m).pivots.size(); }

std::size_t span_rank(std::span<const RatVector> vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(RatMatrix::from_rows(vectors, dim));
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  auto ech = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;

  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(normalize_first_positive(v));
  }
  return basis;
}

namespace {

// Phase-1 simplex on  A μ + a = b,  μ, a ≥ 0,  minimize Σ a,  with b ≥ 0 and
// the artificial a as the starting basis. Bland's rule throughout.
struct PhaseOne {
  std::size_t m, n;           // constraints, structural variables
  std::vector<RatVector> t;   // m rows of n + m coefficients
  RatVector rhs;              // m
  RatVector reduced;          // n + m reduced costs
  std::vector<std::size_t> basis;

  PhaseOne(const RatMatrix& a, const RatVector& b) : m(a.rows()), n(a.cols()), rhs(b) {
    t.assign(m, RatVector(n + m, Rational(0)));
    basis.resize(m);
    reduced.assign(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) t[i][j] = a(i, j);
      t[i][n + i] = 1;
      basis[i] = n + i;
      for (std::size_t j = 0; j < n; ++j) reduced[j] -= t[i][j];
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / t[row][col];
    for (auto& x : t[row]) x *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][col].is_zero()) continue;
      Rational f = t[i][col];
      for (std::size_t j = 0; j < n + m; ++j)
        if (!t[row][j].is_zero()) t[i][j] -= f * t[row][j];
      rhs[i] -= f * rhs[row];
    }
    if (!reduced[col].is_zero()) {
      Rational f = reduced[col];
      for (std::size_t j = 0; j < n + m; ++j)
        if (!t[row][j].is_zero()) reduced[j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  void solve() {
    for (;;) {
      std::size_t enter = n + m;
      for (std::size_t j = 0; j < n + m; ++j)
        if (reduced[j] < 0) {
          enter = j;
          break;
        }
      if (enter == n + m) return;

      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = rhs[i] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      // The phase-1 objective is bounded below by zero, so some row limits
      // every improving column.
      if (leave == m) throw Error(ErrorKind::CertificateFailure, "phase-1 simplex unbounded");
      pivot(leave, enter);
    }
  }

  Rational objective() const {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= n) s += rhs[i];
    return s;
  }
};

}  // namespace

StiemkeResult positive_nullvector_or_certificate(const RatMatrix& mat) {
  if (mat.cols() == 0)
    throw Error(ErrorKind::InvalidArgument, "positive dependence needs at least one column");

  // Substitute λ = 1 + μ: M μ = -M·1, μ ≥ 0. Rows are sign-flipped so the
  // right-hand side is nonnegative.
  const std::size_t m = mat.rows(), n = mat.cols();
  RatVector b(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i] -= mat(i, j);
  std::vector<int> flip(m, 1);
  RatMatrix a = mat;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      flip[i] = -1;
      b[i] = -b[i];
      for (std::size_t j = 0; j < n; ++j) a(i, j) = -a(i, j);
    }
  }

  PhaseOne lp(a, b);
  lp.solve();

  if (lp.objective().is_zero()) {
    RatVector lambda(n, Rational(1));
    for (std::size_t i = 0; i < m; ++i)
      if (lp.basis[i] < n) lambda[lp.basis[i]] += lp.rhs[i];
    return PositiveDependence{normalize_positive(lambda)};
  }

  // Dual prices y_i = 1 - (reduced cost of artificial i). Optimality gives
  // yᵀA ≤ 0 and yᵀb > 0; undoing the row flips yields the separator.
  RatVector w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = (1 - lp.reduced[n + i]) * flip[i];
  return Separator{normalize_positive(w)};
}

bool verify_positive_dependence(const RatMatrix& m, const RatVector& lambda) {
  if (lambda.size() != m.cols()) return false;
  if (!std::all_of(lambda.begin(), lambda.end(), [](const Rational& x) { return x >= 1; })) return false;
  return is_zero(m.multiply(lambda));
}

bool verify_separator(const RatMatrix& m, const RatVector& w) {
  if (w.size() != m.rows()) return false;
  RatVector prod = m.left_multiply(w);
  bool strict = false;
  for (const auto& x : prod) {
    if (x > 0) return false;
    strict |= x < 0;
  }
  return strict;
}

bool verify_certificate(const RatMatrix& m, const StiemkeResult& result) {
  if (const auto* p = std::get_if<PositiveDependence>(&result)) return verify_positive_dependence(m, p->lambda);
  return verify_separator(m, std::get<Separator>(result).w);
}

RatVector vector_in_span_orthogonal_to(std::span<const RatVector> span_basis,
                                       std::span<const RatVector> perp_set,
                                       const RatVector& orient) {
  const std::size_t dim = orient.size();
  const std::size_t span_dim = span_rank(span_basis, dim);

  std::vector<RatVector> with_orient(span_basis.begin(), span_basis.end());
  with_orient.push_back(orient);
  if (span_rank(with_orient, dim) != span_dim)
    throw Error(ErrorKind::NoSeparator, "orienting vector lies outside the spanned subspace");
  if (!perp_set.empty()) {
    std::vector<RatVector> with_perp(span_basis.begin(), span_basis.end());
    with_perp.insert(with_perp.end(), perp_set.begin(), perp_set.end());
    if (span_rank(with_perp, dim) != span_dim)
      throw Error(ErrorKind::NoSeparator, "orthogonality set is not contained in the subspace");
  }

  // Project orient onto P = span(perp_set) through a row basis Q of P:
  // (Q Qᵀ) β = Q orient, proj = Qᵀ β.
  RatVector projection(dim, Rational(0));
  if (!perp_set.empty()) {
    auto ech = reduced_row_echelon(RatMatrix::from_rows(perp_set, dim));
    const std::size_t k = ech.pivots.size();
    std::vector<RatVector> q;
    for (std::size_t r = 0; r < k; ++r) q.push_back(ech.reduced.row(r));
    RatMatrix system(k, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) system(i, j) = dot(q[i], q[j]);
      system(i, k) = dot(q[i], orient);
    }
    auto solved = reduced_row_echelon(system);
    for (std::size_t i = 0; i < k; ++i) {
      const Rational& beta = solved.reduced(i, k);
      for (std::size_t c = 0; c < dim; ++c) projection[c] += beta * q[i][c];
    }
  }

  RatVector w(dim);
  for (std::size_t c = 0; c < dim; ++c) w[c] = projection[c] - orient[c];
  if (is_zero(w))
    throw Error(ErrorKind::NoSeparator, "orienting vector lies in the span of the orthogonality set");
  return normalize_positive(w);
}

}  // namespace crn
