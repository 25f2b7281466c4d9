// Exact arithmetic in small finite fields F_q and dense linear algebra over them.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hallie/errors.hpp"

namespace hallie {

/// A field element, packed as its coefficient vector read in base p
/// (c_0 + c_1 p + ... + c_{n-1} p^{n-1}).
using Elem = std::uint8_t;

/// F_q = F_p[x]/(modulus). Arithmetic goes through q x q tables built once
/// from polynomial arithmetic on coefficient vectors.
class Field {
 public:
  static constexpr int kMaxQ = 256;

  /// Builds F_q; the modulus is the smallest monic irreducible of degree n
  /// in the order of its packed lower coefficients.
  static std::shared_ptr<const Field> make(int q);

  int p() const { return p_; }
  int n() const { return n_; }
  int q() const { return q_; }
  /// Coefficients c_0..c_n of the monic modulus (c_n = 1). For n = 1 this is x.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem inv(Elem a) const {
    if (a == 0) throw Error("inverse of zero in F_" + std::to_string(q_));
    return inv_[a];
  }
  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }
  std::vector<int> coeffs(Elem a) const {
    std::vector<int> c(n_);
    for (int i = 0; i < n_; ++i) {
      c[i] = a % p_;
      a = static_cast<Elem>(a / p_);
    }
    return c;
  }
  Elem from_coeffs(std::span<const int> c) const {
    int v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p_ + (((c[i] % p_) + p_) % p_);
    return static_cast<Elem>(v);
  }
  /// A generator of the cyclic group F_q^*.
  Elem primitive() const { return primitive_; }
  /// An F_p-basis of F_q: 1, x, ..., x^{n-1}.
  std::vector<Elem> prime_basis() const {
    std::vector<Elem> b;
    int v = 1;
    for (int i = 0; i < n_; ++i, v *= p_) b.push_back(static_cast<Elem>(v));
    return b;
  }

 private:
  Field() = default;
  int p_ = 0, n_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  Elem primitive_ = 1;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Convenience alias for make_field.
inline FieldPtr make_field(int q) { return Field::make(q); }

namespace detail {

inline bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Polynomials over F_p as coefficient vectors, lowest degree first.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw Error("no inverse mod p");
}

inline Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = (a.back() * lead_inv) % p;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline bool is_irreducible(const Poly& f, int p) {
  const int n = static_cast<int>(f.size()) - 1;
  // Try every monic divisor of degree 1..n/2.
  for (int d = 1; d <= n / 2; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      Poly g(d + 1);
      int c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

inline FieldPtr Field::make(int q) {
  if (q < 2 || q > kMaxQ) throw InputError("field size " + std::to_string(q) + " out of supported range [2, 256]");
  int p = 0;
  for (int d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int n = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++n;
  }
  if (r != 1 || !detail::is_prime(p)) throw InputError(std::to_string(q) + " is not a prime power");

  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->n_ = n;
  f->q_ = q;
  if (n == 1) {
    f->modulus_ = {0, 1};
  } else {
    int count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      detail::Poly m(n + 1);
      int c = code;
      for (int i = 0; i < n; ++i) {
        m[i] = c % p;
        c /= p;
      }
      m[n] = 1;
      if (detail::is_irreducible(m, p)) {
        f->modulus_ = m;
        break;
      }
    }
    check_consistency(!f->modulus_.empty(), "an irreducible polynomial exists in every degree");
  }

  f->add_.resize(q * q);
  f->mul_.resize(q * q);
  f->neg_.resize(q);
  f->inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    const auto ca = f->coeffs(static_cast<Elem>(a));
    std::vector<int> cn(n);
    for (int i = 0; i < n; ++i) cn[i] = (p - ca[i]) % p;
    f->neg_[a] = f->from_coeffs(cn);
    for (int b = 0; b < q; ++b) {
      const auto cb = f->coeffs(static_cast<Elem>(b));
      std::vector<int> s(n);
      for (int i = 0; i < n; ++i) s[i] = (ca[i] + cb[i]) % p;
      f->add_[a * q + b] = f->from_coeffs(s);
      detail::Poly prod(2 * n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      detail::Poly red = n == 1 ? detail::Poly{prod[0]} : detail::poly_mod(prod, f->modulus_, p);
      red.resize(n, 0);
      f->mul_[a * q + b] = f->from_coeffs(red);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (f->mul_[a * q + b] == 1) f->inv_[a] = static_cast<Elem>(b);
  for (int g = 1; g < q; ++g) {
    int order = 1;
    Elem x = static_cast<Elem>(g);
    while (x != 1) {
      x = f->mul_[x * q + g];
      ++order;
    }
    if (order == q - 1) {
      f->primitive_ = static_cast<Elem>(g);
      break;
    }
  }
  return f;
}

/// Dense row-major matrix over some F_q. Empty shapes (0 x m, m x 0) are legal.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Elem& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  Elem operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
  std::vector<Elem>& data() { return a_; }
  const std::vector<Elem>& data() const { return a_; }
  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Elem e) { return e == 0; });
  }

  std::vector<Elem> column(int c) const {
    std::vector<Elem> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(int c, std::span<const Elem> v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

inline Matrix from_columns(int rows, const std::vector<std::vector<Elem>>& cols) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols(); ++c) m.set_column(c, cols[c]);
  return m;
}

inline Matrix mul(const Field& F, const Matrix& A, const Matrix& B) {
  check_consistency(A.cols() == B.rows(), "matrix product shapes");
  Matrix C(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) {
      const Elem a = A(i, k);
      if (a == 0) continue;
      for (int j = 0; j < B.cols(); ++j) C(i, j) = F.add(C(i, j), F.mul(a, B(k, j)));
    }
  return C;
}

inline std::vector<Elem> apply(const Field& F, const Matrix& A, std::span<const Elem> v) {
  std::vector<Elem> out(A.rows(), 0);
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) out[i] = F.add(out[i], F.mul(A(i, k), v[k]));
  return out;
}

inline Matrix add(const Field& F, const Matrix& A, const Matrix& B) {
  check_consistency(A.rows() == B.rows() && A.cols() == B.cols(), "matrix sum shapes");
  Matrix C(A.rows(), A.cols());
  for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = F.add(A.data()[i], B.data()[i]);
  return C;
}

inline Matrix sub(const Field& F, const Matrix& A, const Matrix& B) {
  check_consistency(A.rows() == B.rows() && A.cols() == B.cols(), "matrix difference shapes");
  Matrix C(A.rows(), A.cols());
  for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = F.sub(A.data()[i], B.data()[i]);
  return C;
}

inline Matrix scale(const Field& F, Elem s, const Matrix& A) {
  Matrix C(A.rows(), A.cols());
  for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = F.mul(s, A.data()[i]);
  return C;
}

inline Matrix negate(const Field& F, const Matrix& A) { return scale(F, F.neg(1), A); }

inline Matrix transpose(const Matrix& A) {
  Matrix T(A.cols(), A.rows());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

inline Matrix hstack(const Matrix& A, const Matrix& B) {
  check_consistency(A.rows() == B.rows(), "hstack shapes");
  Matrix C(A.rows(), A.cols() + B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
    for (int j = 0; j < B.cols(); ++j) C(i, A.cols() + j) = B(i, j);
  }
  return C;
}

inline Matrix vstack(const Matrix& A, const Matrix& B) {
  check_consistency(A.cols() == B.cols(), "vstack shapes");
  Matrix C(A.rows() + B.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) C(A.rows() + i, j) = B(i, j);
  return C;
}

/// 2x2 block matrix [[A, B], [C, D]]; empty blocks are fine as long as shapes agree.
inline Matrix blocks(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D) {
  return vstack(hstack(A, B), hstack(C, D));
}

inline Matrix block_diag(const Matrix& A, const Matrix& B) {
  return blocks(A, Matrix(A.rows(), B.cols()), Matrix(B.rows(), A.cols()), B);
}

inline Matrix submatrix(const Matrix& A, int r0, int c0, int rows, int cols) {
  Matrix S(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) S(i, j) = A(r0 + i, c0 + j);
  return S;
}

/// Reduced row echelon form with its pivot columns.
struct Rref {
  Matrix reduced;
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

inline Rref rref(const Field& F, Matrix A) {
  std::vector<int> pivots;
  int row = 0;
  const int cols = A.cols();
  for (int c = 0; c < cols && row < A.rows(); ++c) {
    int sel = -1;
    for (int r = row; r < A.rows(); ++r)
      if (A(r, c) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < cols; ++j) std::swap(A(sel, j), A(row, j));
    const Elem s = F.inv(A(row, c));
    for (int j = c; j < cols; ++j) A(row, j) = F.mul(s, A(row, j));
    for (int r = 0; r < A.rows(); ++r) {
      if (r == row) continue;
      const Elem m = A(r, c);
      if (m == 0) continue;
      for (int j = c; j < cols; ++j) A(r, j) = F.sub(A(r, j), F.mul(m, A(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(A), std::move(pivots)};
}

inline int rank(const Field& F, const Matrix& A) { return rref(F, A).rank(); }

/// Columns form a basis of {x : A x = 0}.
inline Matrix kernel_basis(const Field& F, const Matrix& A) {
  const Rref R = rref(F, A);
  std::vector<bool> is_pivot(A.cols(), false);
  for (int c : R.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < A.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix K(A.cols(), static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    K(fc, static_cast<int>(k)) = 1;
    for (size_t i = 0; i < R.pivots.size(); ++i)
      K(R.pivots[i], static_cast<int>(k)) = F.neg(R.reduced(static_cast<int>(i), fc));
  }
  return K;
}

/// Some x with A x = b, or nothing when the system is inconsistent.
inline std::optional<std::vector<Elem>> solve(const Field& F, const Matrix& A, std::span<const Elem> b) {
  Matrix aug(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  const Rref R = rref(F, aug);
  if (!R.pivots.empty() && R.pivots.back() == A.cols()) return std::nullopt;
  std::vector<Elem> x(A.cols(), 0);
  for (size_t i = 0; i < R.pivots.size(); ++i) x[R.pivots[i]] = R.reduced(static_cast<int>(i), A.cols());
  return x;
}

/// Inverse of a square matrix; nothing if singular.
inline std::optional<Matrix> try_inverse(const Field& F, const Matrix& A) {
  if (A.rows() != A.cols()) return std::nullopt;
  const int n = A.rows();
  const Rref R = rref(F, hstack(A, Matrix::identity(n)));
  for (int i = 0; i < n; ++i)
    if (i >= R.rank() || R.pivots[i] != i) return std::nullopt;
  return submatrix(R.reduced, 0, n, n, n);
}

inline Matrix inverse(const Field& F, const Matrix& A) {
  auto inv = try_inverse(F, A);
  if (!inv) throw Error("inverse of a singular or non-square matrix");
  return *inv;
}

inline bool is_invertible(const Field& F, const Matrix& A) {
  return A.rows() == A.cols() && rank(F, A) == A.rows();
}

/// Columns of a basis of the column space of A (a subset of A's columns).
inline Matrix column_space(const Field& F, const Matrix& A) {
  const Rref R = rref(F, A);
  Matrix B(A.rows(), R.rank());
  for (int k = 0; k < R.rank(); ++k)
    for (int r = 0; r < A.rows(); ++r) B(r, k) = A(r, R.pivots[k]);
  return B;
}

/// Appends standard basis columns to a full-column-rank S until it is square
/// and invertible. The first S.cols() columns are S itself.
inline Matrix extend_to_basis(const Field& F, const Matrix& S) {
  Matrix cur = S;
  int r = S.cols();
  check_consistency(rank(F, S) == r, "extend_to_basis needs independent columns");
  for (int e = 0; e < S.rows() && cur.cols() < S.rows(); ++e) {
    Matrix unit(S.rows(), 1);
    unit(e, 0) = 1;
    Matrix cand = hstack(cur, unit);
    if (rank(F, cand) == r + 1) {
      cur = std::move(cand);
      ++r;
    }
  }
  return cur;
}

/// Visits every vector of F_q^dim in base-q counting order (first coordinate fastest).
inline void for_each_vector(const Field& F, int dim, const std::function<void(const std::vector<Elem>&)>& visit) {
  std::vector<Elem> v(dim, 0);
  while (true) {
    visit(v);
    int i = 0;
    while (i < dim && ++v[i] == F.q()) v[i++] = 0;
    if (i == dim) return;
  }
}

/// q^dim, or -1 once it passes the limit.
inline long long count_vectors(int q, int dim, long long limit) {
  long long n = 1;
  for (int i = 0; i < dim; ++i) {
    n *= q;
    if (n > limit) return -1;
  }
  return n;
}

}  // namespace hallie
