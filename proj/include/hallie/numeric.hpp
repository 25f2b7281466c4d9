// Exact integer helpers: big integers, group orders, residues of fractions.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

#include "hallie/errors.hpp"

namespace hallie {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<long long>;

inline BigInt ipow(long long base, long long e) {
  BigInt r = 1;
  for (long long i = 0; i < e; ++i) r *= base;
  return r;
}

/// |GL_n(F_Q)|.
inline BigInt gl_order(long long Q, int n) {
  BigInt r = 1;
  const BigInt qn = ipow(Q, n);
  for (int i = 0; i < n; ++i) r *= qn - ipow(Q, i);
  return r;
}

inline long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long mod_floor(const BigInt& a, long long m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r.convert_to<long long>();
}

/// num/den reduced modulo m, when den is invertible mod m. m = 1 always gives 0.
inline std::optional<long long> fraction_residue(const BigInt& num, const BigInt& den, long long m) {
  if (den == 0) throw Error("fraction with zero denominator");
  if (m == 1) return 0;
  const BigInt g = boost::multiprecision::gcd(num, den);
  BigInt n = num / (g == 0 ? BigInt(1) : g), d = den / (g == 0 ? BigInt(1) : g);
  const long long dm = mod_floor(d, m);
  long long inv = -1;
  for (long long x = 1; x < m; ++x)
    if ((dm * x) % m == 1) {
      inv = x;
      break;
    }
  if (inv < 0) return std::nullopt;
  return mod_floor(BigInt(mod_floor(n, m)) * inv, m);
}

/// Integer division that must be exact; anything else is an internal inconsistency.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const std::string& what) {
  if (b == 0 || a % b != 0) throw ConsistencyError("inexact division in " + what);
  return a / b;
}

inline long long exact_div(long long a, long long b, const std::string& what) {
  if (b == 0 || a % b != 0) throw ConsistencyError("inexact division in " + what);
  return a / b;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Solves A x = b over Q for a full-column-rank A; nothing if A is rank deficient
/// or the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<long long>> A,
                                                           std::vector<long long> b) {
  const int rows = static_cast<int>(A.size());
  const int cols = rows ? static_cast<int>(A[0].size()) : 0;
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m[r][c] = A[r][c];
    m[r][cols] = b[r];
  }
  int row = 0;
  std::vector<int> piv;
  for (int c = 0; c < cols; ++c) {
    int sel = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][c] != Rational(0)) {
        sel = r;
        break;
      }
    if (sel < 0) return std::nullopt;
    std::swap(m[sel], m[row]);
    const Rational s = m[row][c];
    for (int j = c; j <= cols; ++j) m[row][j] /= s;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][c] == Rational(0)) continue;
      const Rational f = m[r][c];
      for (int j = c; j <= cols; ++j) m[r][j] -= f * m[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  for (int r = row; r < rows; ++r)
    if (m[r][cols] != Rational(0)) return std::nullopt;
  std::vector<Rational> x(cols);
  for (int i = 0; i < cols; ++i) x[i] = m[i][cols];
  return x;
}

}  // namespace hallie
