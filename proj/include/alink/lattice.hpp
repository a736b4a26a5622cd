#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "alink/group.hpp"
#include "alink/ring.hpp"

namespace alink {

using BigInt = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& other) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

BigInt determinant(const IntMatrix& a);

struct SmithForm {
  IntMatrix U, D, V;  // U * A * V == D
  /// Diagonal entries d_1 | d_2 | ... (nonnegative, zeros last).
  std::vector<BigInt> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

template <class Key, class Less>
class BasicKeyLattice;

using SparseVec = std::map<Word, BigInt, ShortlexLess>;
using Combination = std::map<int, BigInt>;

SparseVec to_sparse(const RingElement& y);
/// Overflow when a coefficient does not fit in 64 bits.
RingElement from_sparse(const ContextPtr& ctx, const SparseVec& v);

namespace detail {

template <class Map>
void axpy(Map& dst, const BigInt& k, const Map& src) {
  if (k == 0) return;
  for (const auto& [key, c] : src) {
    auto it = dst.find(key);
    if (it == dst.end()) {
      dst.emplace(key, k * c);
    } else {
      it->second += k * c;
      if (it->second == 0) dst.erase(it);
    }
  }
}

template <class Map>
Map scaled(const Map& src, const BigInt& k) {
  Map out;
  if (k == 0) return out;
  for (const auto& [key, c] : src) out.emplace(key, k * c);
  return out;
}

}  // namespace detail

// Integer span of sparse vectors, kept in echelon form with the largest key
// of each row as its pivot. After finalize() the rows are in Hermite form, so
// reduce() yields a canonical coset representative.
template <class Key, class Less>
class BasicKeyLattice {
 public:
  using Vec = std::map<Key, BigInt, Less>;

  void add_generator(const Vec& v, int id);
  void finalize();

  struct Reduction {
    Vec remainder;
    Combination used;  // input == remainder + sum used[id] * generator(id)
  };
  Reduction reduce(const Vec& y, bool track = true) const;
  bool contains(const Vec& y) const { return reduce(y, false).remainder.empty(); }

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t generator_count() const noexcept { return generators_; }
  /// Pivot keys in increasing order.
  std::vector<Key> pivots() const;
  const BigInt& pivot_entry(const Key& k) const { return rows_.at(k).v.at(k); }

 private:
  struct Row {
    Vec v;
    Combination comb;
  };
  std::map<Key, Row, Less> rows_;
  std::size_t generators_ = 0;
};

using KeyLattice = BasicKeyLattice<Word, ShortlexLess>;

template <class Key, class Less>
void BasicKeyLattice<Key, Less>::add_generator(const Vec& v, int id) {
  ++generators_;
  Row cur{v, {}};
  cur.comb.emplace(id, 1);
  while (!cur.v.empty()) {
    const Key pivot = cur.v.rbegin()->first;
    auto it = rows_.find(pivot);
    if (it == rows_.end()) {
      if (cur.v.rbegin()->second < 0) {
        cur.v = detail::scaled(cur.v, BigInt(-1));
        cur.comb = detail::scaled(cur.comb, BigInt(-1));
      }
      rows_.emplace(pivot, std::move(cur));
      return;
    }
    Row& row = it->second;
    const BigInt b = row.v.at(pivot);
    const BigInt a = cur.v.at(pivot);
    if (mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
      const BigInt q = -(a / b);
      detail::axpy(cur.v, q, row.v);
      detail::axpy(cur.comb, q, row.comb);
      continue;
    }
    // Unimodular 2x2 step: the pivot entry of row becomes gcd(a, b) and cur
    // loses its pivot.
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    Row next{detail::scaled(row.v, s), detail::scaled(row.comb, s)};
    detail::axpy(next.v, t, cur.v);
    detail::axpy(next.comb, t, cur.comb);
    const BigInt ag = a / g, bg = -(b / g);
    Row rest{detail::scaled(row.v, ag), detail::scaled(row.comb, ag)};
    detail::axpy(rest.v, bg, cur.v);
    detail::axpy(rest.comb, bg, cur.comb);
    row = std::move(next);
    cur = std::move(rest);
  }
}

template <class Key, class Less>
void BasicKeyLattice<Key, Less>::finalize() {
  for (auto& [pivot, row] : rows_) {
    Key cursor = pivot;
    while (true) {
      auto it = row.v.lower_bound(cursor);
      if (it == row.v.begin()) break;
      --it;
      cursor = it->first;
      auto r = rows_.find(cursor);
      if (r == rows_.end()) continue;
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), it->second.get_mpz_t(), r->second.v.at(cursor).get_mpz_t());
      if (q == 0) continue;
      detail::axpy(row.v, BigInt(-q), r->second.v);
      detail::axpy(row.comb, BigInt(-q), r->second.comb);
    }
  }
}

template <class Key, class Less>
typename BasicKeyLattice<Key, Less>::Reduction BasicKeyLattice<Key, Less>::reduce(const Vec& y, bool track) const {
  Reduction out{y, {}};
  Vec& v = out.remainder;
  if (v.empty()) return out;
  Key cursor = v.rbegin()->first;
  bool first = true;
  while (!v.empty()) {
    typename Vec::iterator it;
    if (first) {
      it = std::prev(v.end());
      first = false;
    } else {
      it = v.lower_bound(cursor);
      if (it == v.begin()) break;
      --it;
    }
    cursor = it->first;
    auto r = rows_.find(cursor);
    if (r == rows_.end()) continue;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), it->second.get_mpz_t(), r->second.v.at(cursor).get_mpz_t());
    if (q == 0) continue;
    detail::axpy(v, BigInt(-q), r->second.v);
    if (track) detail::axpy(out.used, q, r->second.comb);
  }
  return out;
}

template <class Key, class Less>
std::vector<Key> BasicKeyLattice<Key, Less>::pivots() const {
  std::vector<Key> out;
  for (const auto& [k, row] : rows_) out.push_back(k);
  return out;
}

// A finitely generated abelian quotient Z^basis / (column span of relations).
struct LatticeQuotient {
  std::vector<Word> basis;
  IntMatrix relations;  // basis.size() x (number of relations)
  SmithForm snf;

  static LatticeQuotient build(std::vector<Word> basis, const std::vector<std::vector<BigInt>>& relation_columns);
  /// Nontrivial invariant factors (d > 1) followed by zeros for the free part.
  std::vector<BigInt> invariants() const;
  std::size_t free_rank() const;
  std::string describe() const;  // e.g. "Z_2 + Z"
};

/// Exact membership of v1 - v2 in the relation lattice. DimensionMismatch if
/// the vectors do not match the basis.
bool quotient_equal(const LatticeQuotient& lq, const std::vector<BigInt>& v1, const std::vector<BigInt>& v2);

}  // namespace alink
