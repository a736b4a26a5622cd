#include "alink/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "alink/error.hpp"

namespace alink {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::DimensionMismatch, "matrix product dimensions differ");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
    }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << at(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m.at(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), m.at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

struct SnfWork {
  IntMatrix D, U, V;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D.at(i, c), D.at(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D.at(r, i), D.at(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
  }
  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t c = 0; c < D.cols(); ++c) D.at(i, c) += k * D.at(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) += k * U.at(j, c);
  }
  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t r = 0; r < D.rows(); ++r) D.at(r, i) += k * D.at(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r) V.at(r, i) += k * V.at(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c) D.at(i, c) = -D.at(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) = -U.at(i, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfWork w{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    bool done = false;
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const BigInt& e = w.D.at(i, j);
          if (e == 0) continue;
          if (pi == m || mpz_cmpabs(e.get_mpz_t(), w.D.at(pi, pj).get_mpz_t()) < 0) pi = i, pj = j;
        }
      if (pi == m) {
        done = true;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.D.at(i, t) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), w.D.at(i, t).get_mpz_t(), w.D.at(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (w.D.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.D.at(t, j) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), w.D.at(t, j).get_mpz_t(), w.D.at(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (w.D.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(w.D.at(i, j).get_mpz_t(), w.D.at(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.add_row(t, bad, 1);
    }
    if (done) break;
    if (w.D.at(t, t) < 0) w.negate_row(t);
  }
  return SmithForm{std::move(w.U), std::move(w.D), std::move(w.V)};
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D.at(i, i));
  return out;
}

SparseVec to_sparse(const RingElement& y) {
  SparseVec v;
  for (const auto& [key, c] : y.terms()) v.emplace(key, BigInt(static_cast<long>(c)));
  return v;
}

RingElement from_sparse(const ContextPtr& ctx, const SparseVec& v) {
  RingElement out(ctx);
  for (const auto& [key, c] : v) {
    if (!c.fits_slong_p()) fail(ErrorCode::Overflow, "lattice coefficient does not fit in 64 bits");
    out.add_key(key, c.get_si());
  }
  return out;
}

LatticeQuotient LatticeQuotient::build(std::vector<Word> basis,
                                       const std::vector<std::vector<BigInt>>& relation_columns) {
  LatticeQuotient lq;
  lq.basis = std::move(basis);
  lq.relations = IntMatrix(lq.basis.size(), relation_columns.size());
  for (std::size_t j = 0; j < relation_columns.size(); ++j) {
    if (relation_columns[j].size() != lq.basis.size())
      fail(ErrorCode::DimensionMismatch, "relation column length differs from the basis size");
    for (std::size_t i = 0; i < lq.basis.size(); ++i) lq.relations.at(i, j) = relation_columns[j][i];
  }
  lq.snf = smith_normal_form(lq.relations);
  return lq;
}

std::vector<BigInt> LatticeQuotient::invariants() const {
  std::vector<BigInt> out;
  for (const auto& d : snf.diagonal())
    if (d > 1) out.push_back(d);
  for (std::size_t i = 0; i < free_rank(); ++i) out.emplace_back(0);
  return out;
}

std::size_t LatticeQuotient::free_rank() const {
  std::size_t nonzero = 0;
  for (const auto& d : snf.diagonal())
    if (d != 0) ++nonzero;
  return basis.size() - nonzero;
}

std::string LatticeQuotient::describe() const {
  std::ostringstream os;
  bool any = false;
  for (const auto& d : snf.diagonal()) {
    if (d <= 1) continue;
    os << (any ? " + " : "") << "Z_" << d.get_str();
    any = true;
  }
  const std::size_t f = free_rank();
  if (f > 0) {
    os << (any ? " + " : "") << "Z";
    if (f > 1) os << '^' << f;
    any = true;
  }
  return any ? os.str() : "0";
}

bool quotient_equal(const LatticeQuotient& lq, const std::vector<BigInt>& v1, const std::vector<BigInt>& v2) {
  const std::size_t m = lq.basis.size();
  if (v1.size() != m || v2.size() != m)
    fail(ErrorCode::DimensionMismatch, "vector length differs from the quotient basis size");
  const std::size_t n = lq.relations.cols();
  for (std::size_t i = 0; i < m; ++i) {
    BigInt c = 0;
    for (std::size_t k = 0; k < m; ++k) c += lq.snf.U.at(i, k) * (v1[k] - v2[k]);
    const BigInt d = i < n ? lq.snf.D.at(i, i) : BigInt(0);
    if (d == 0) {
      if (c != 0) return false;
    } else if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) {
      return false;
    }
  }
  return true;
}

}  // namespace alink
