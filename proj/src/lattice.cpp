// SPDX-License-Identifier: Apache-2.0
#include "micp/lattice.hpp"

namespace micp {

Integer gcd_vector(const IntegerVector& v) {
  if (v.empty()) throw Error("empty input");
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

namespace {

// col_a <- p*col_a + q*col_b, col_b <- r*col_a + s*col_b (simultaneously).
void combine_columns(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                     const Integer& r, const Integer& s) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer x = m(i, a);
    Integer y = m(i, b);
    m(i, a) = p * x + q * y;
    m(i, b) = r * x + s * y;
  }
}

void axpy_column(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& factor) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += factor * m(i, src);
}

}  // namespace

HermiteDecomposition hermite_normal_form(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw Error("non-square matrix");
  if (determinant(a) == 0) throw Error("singular matrix");
  const std::size_t n = a.rows();
  IntegerMatrix h = a;
  IntegerMatrix u = IntegerMatrix::identity(n);

  for (std::size_t i = 0; i < n; ++i) {
    // Clear row i to the right of the diagonal with extended-gcd column steps.
    for (std::size_t j = i + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      Integer x = h(i, i);
      Integer y = h(i, j);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      // [s -y/g; t x/g] has determinant (s x + t y)/g = 1.
      Integer yg = y / g;
      Integer xg = x / g;
      combine_columns(h, i, j, s, t, Integer(-yg), xg);
      combine_columns(u, i, j, s, t, Integer(-yg), xg);
    }
    if (h(i, i) < 0) {
      for (std::size_t r = 0; r < n; ++r) {
        h(r, i) = -h(r, i);
        u(r, i) = -u(r, i);
      }
    }
    // Reduce the entries left of the diagonal into (-h_ii, 0].
    const Integer diag = h(i, i);
    for (std::size_t j = 0; j < i; ++j) {
      Integer q;
      mpz_cdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), diag.get_mpz_t());
      if (q == 0) continue;
      axpy_column(h, j, i, Integer(-q));
      axpy_column(u, j, i, Integer(-q));
    }
  }
  return {std::move(h), std::move(u)};
}

HermiteDecomposition hermite_normal_form(const RationalMatrix& a) {
  IntegerMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j))) throw Error("non-integral input");
      m(i, j) = a(i, j).get_num();
    }
  return hermite_normal_form(m);
}

bool is_hermite_normal_form(const IntegerMatrix& h) {
  if (h.rows() != h.cols()) return false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (h(i, i) <= 0) return false;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (j > i && h(i, j) != 0) return false;
      if (j < i && (h(i, j) > 0 || -h(i, j) >= h(i, i))) return false;
    }
  }
  return true;
}

bool is_unimodular(const IntegerMatrix& u) {
  if (u.rows() != u.cols()) return false;
  Integer det = determinant(u);
  return det == 1 || det == -1;
}

IntegerMatrix unimodular_completion(const IntegerVector& r, ColumnPosition position) {
  const std::size_t d = r.size();
  if (d == 0 || gcd_vector(r) == 0) throw Error("zero vector");
  if (gcd_vector(r) != 1) throw Error("non-primitive vector");

  // Rational basis with r last: greedily add unit vectors that keep rank.
  RationalMatrix basis(d, 0);
  std::vector<RationalVector> cols;
  for (std::size_t k = 0; k < d && cols.size() + 1 < d; ++k) {
    RationalVector e(d);
    e[k] = 1;
    RationalMatrix trial(d, cols.size() + 2);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t i = 0; i < d; ++i) trial(i, c) = cols[c][i];
    for (std::size_t i = 0; i < d; ++i) {
      trial(i, cols.size()) = e[i];
      trial(i, cols.size() + 1) = r[i];
    }
    if (rank(trial) == cols.size() + 2) cols.push_back(e);
  }
  RationalMatrix b(d, d);
  for (std::size_t c = 0; c + 1 < d; ++c)
    for (std::size_t i = 0; i < d; ++i) b(i, c) = cols[c][i];
  for (std::size_t i = 0; i < d; ++i) b(i, d - 1) = r[i];

  RationalMatrix binv = inverse(b);
  Integer q = 1;
  for (const auto& x : binv.data()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), x.get_den_mpz_t());
  IntegerMatrix scaled(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) = Rational(binv(i, j) * q).get_num();

  auto hnf = hermite_normal_form(scaled);
  RationalMatrix u_rat = multiply(b, to_rational(hnf.h));
  IntegerMatrix u(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational v = u_rat(i, j) / Rational(q);
      if (!is_integer(v)) throw Error("unimodular completion failed: non-integral entry");
      u(i, j) = v.get_num();
    }

  for (std::size_t i = 0; i < d; ++i)
    if (u(i, d - 1) != r[i]) throw Error("unimodular completion failed: column mismatch");
  if (!is_unimodular(u)) throw Error("unimodular completion failed: determinant");

  if (position == ColumnPosition::first) {
    for (std::size_t c = d - 1; c > 0; --c) u.swap_cols(c, c - 1);
  }
  return u;
}

}  // namespace micp
