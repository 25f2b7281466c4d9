// The Lie algebra g = h + n of the root category over Z/(q - 1): the Cartan lattice,
// the symmetric form, brackets from Hall numbers, and the checks of its identities.
#pragma once

#include <array>
#include <numeric>

#include "hallie/hall_exact.hpp"
#include "hallie/hall_tri.hpp"
#include "hallie/parallel.hpp"

namespace hallie {

/// The lattice spanned by h~_i = h_i / d(i). Vectors are scaled by the common
/// denominator D and written in a Hermite basis of D h; residues of those
/// coordinates decide equality in h / m h.
class CartanLattice {
 public:
  CartanLattice() = default;
  CartanLattice(const std::vector<GrothClass>& g, const std::vector<int>& d) {
    for (int x : d) denominator_ = std::lcm(denominator_, static_cast<long long>(x));
    dim_ = g.empty() ? 0 : g.front().size();
    for (size_t i = 0; i < g.size(); ++i) {
      GrothClass w = g[i];
      for (auto& x : w) x *= denominator_ / d[i];
      gens_.push_back(std::move(w));
    }
    hermite();
  }

  int rank() const { return static_cast<int>(basis_.size()); }
  long long denominator() const { return denominator_; }
  const std::vector<GrothClass>& basis() const { return basis_; }

  /// D times sum_i c_i h~_i, as a vector over the vertices.
  GrothClass scaled(std::span<const long long> c) const {
    GrothClass v(dim_, 0);
    for (size_t i = 0; i < gens_.size(); ++i)
      for (size_t j = 0; j < dim_; ++j) v[j] += c[i] * gens_[i][j];
    return v;
  }

  /// Coordinates of sum_i c_i h~_i in the Hermite basis.
  std::vector<long long> coordinates(std::span<const long long> c) const {
    GrothClass v = scaled(c);
    std::vector<long long> a(basis_.size());
    for (size_t r = 0; r < basis_.size(); ++r) {
      const size_t p = pivots_[r];
      if (v[p] % basis_[r][p] != 0) throw ConsistencyError("vector outside the Cartan lattice");
      a[r] = v[p] / basis_[r][p];
      for (size_t j = 0; j < dim_; ++j) v[j] -= a[r] * basis_[r][j];
    }
    check_consistency(std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; }),
                      "Hermite coordinates reproduce the vector");
    return a;
  }

  std::vector<long long> residues(std::span<const long long> c, long long m) const {
    std::vector<long long> a = coordinates(c);
    for (auto& x : a) x = mod_floor(x, m);
    return a;
  }

  bool is_zero_mod(std::span<const long long> c, long long m) const {
    const auto a = residues(c, m);
    return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
  }

 private:
  void hermite() {
    std::vector<GrothClass> rows = gens_;
    size_t r = 0;
    for (size_t col = 0; col < dim_ && r < rows.size(); ++col) {
      while (true) {
        size_t best = rows.size();
        for (size_t k = r; k < rows.size(); ++k)
          if (rows[k][col] != 0 && (best == rows.size() || std::abs(rows[k][col]) < std::abs(rows[best][col])))
            best = k;
        if (best == rows.size()) break;
        std::swap(rows[r], rows[best]);
        bool cleared = true;
        for (size_t k = r + 1; k < rows.size(); ++k) {
          if (rows[k][col] == 0) continue;
          const long long f = rows[k][col] / rows[r][col];
          for (size_t j = 0; j < dim_; ++j) rows[k][j] -= f * rows[r][j];
          if (rows[k][col] != 0) cleared = false;
        }
        if (cleared) break;
      }
      if (r < rows.size() && rows[r][col] != 0) {
        if (rows[r][col] < 0)
          for (auto& x : rows[r]) x = -x;
        pivots_.push_back(col);
        ++r;
      }
    }
    rows.resize(r);
    basis_ = std::move(rows);
  }

  long long denominator_ = 1;
  size_t dim_ = 0;
  std::vector<GrothClass> gens_;
  std::vector<GrothClass> basis_;
  std::vector<size_t> pivots_;
};

/// An element of g: coefficients of h~_i over the registry modules and of u_k over the
/// indecomposable objects (index 2 i + s as in RootCategory).
struct LieElement {
  std::vector<long long> h;
  std::map<int, long long> n;

  long long coeff(int k) const {
    auto it = n.find(k);
    return it == n.end() ? 0 : it->second;
  }
  friend bool operator==(const LieElement&, const LieElement&) = default;
};

class LieAlgebra {
 public:
  /// Hall numbers come from triangle counts, or from the module Hall table when every
  /// object involved is a module or every object is shifted and the middle term is in
  /// the table's bound.
  explicit LieAlgebra(const TriangleCounts& T, const HallTable* fast = nullptr)
      : T_(&T), C_(&T.category()), fast_(fast), m_(T.modulus()) {
    const ModuleRegistry& R = C_->modules();
    std::vector<GrothClass> g;
    std::vector<int> d;
    for (int k = 0; k < num_u(); ++k) groth_.push_back(C_->groth(C_->indecomposable(k)));
    for (int i = 0; i < num_h(); ++i) {
      g.push_back(groth_[2 * i]);
      d.push_back(R.d(i));
    }
    lattice_ = CartanLattice(g, d);
  }

  const TriangleCounts& triangles() const { return *T_; }
  const RootCategory& category() const { return *C_; }
  const CartanLattice& lattice() const { return lattice_; }
  long long modulus() const { return m_; }
  bool uses_fast_path() const { return fast_ != nullptr; }

  int num_u() const { return C_->num_indecomposables(); }
  int num_h() const { return C_->modules().size(); }
  ObjClassId object(int k) const { return C_->indecomposable(k); }
  static int shift(int k) { return k ^ 1; }
  const GrothClass& groth(int k) const { return groth_[k]; }
  int d(int k) const { return C_->modules().d(k / 2); }

  LieElement zero() const { return {std::vector<long long>(num_h(), 0), {}}; }
  LieElement u(int k) const {
    LieElement e = zero();
    e.n[k] = mod_floor(1, m_);
    return reduce(std::move(e));
  }
  LieElement h(int i) const {
    LieElement e = zero();
    e.h[i] = mod_floor(1, m_);
    return e;
  }
  /// h~ of an indecomposable object; h~_{TX} = -h~_X.
  LieElement h_tilde(int k) const {
    LieElement e = zero();
    e.h[k / 2] = mod_floor(k % 2 ? -1 : 1, m_);
    return e;
  }

  std::string name(int k) const { return "u" + object(k).str(); }
  std::string h_name(int i) const { return "h~" + ObjClassId::indecomposable(i, false).str(); }

  /// (h_X | h_Y) = dim Hom(X, Y) - dim Hom(X, TY) + dim Hom(Y, X) - dim Hom(Y, TX).
  long long form(int a, int b) const {
    {
      std::lock_guard lk(mu_);
      if (auto it = forms_.find({a, b}); it != forms_.end()) return it->second;
    }
    auto dim = [&](int s, int t) { return static_cast<long long>(C_->hom(obj(s), obj(t)).dim()); };
    const long long v = dim(a, b) - dim(a, shift(b)) + dim(b, a) - dim(b, shift(a));
    std::lock_guard lk(mu_);
    return forms_.emplace(std::pair{a, b}, v).first->second;
  }

  /// (h~_X | h_Y); the division by d(X) is exact.
  long long form_tilde(int a, int b) const { return exact_div(form(a, b), d(a), "(h~_X | h_Y)"); }

  long long hall(const ObjClassId& X, const ObjClassId& Y, const ObjClassId& L) const {
    if (fast_) {
      if (X.odd.is_zero() && Y.odd.is_zero() && L.odd.is_zero() && fast_->contains(L.even))
        return fast_->number(X.even, Y.even, L.even);
      if (X.even.is_zero() && Y.even.is_zero() && L.even.is_zero() && fast_->contains(L.odd))
        return fast_->number(X.odd, Y.odd, L.odd);
    }
    return T_->hall_number(X, Y, L);
  }

  /// [u_X, u_Y].
  const LieElement& bracket_u(int a, int b) const {
    {
      std::lock_guard lk(mu_);
      if (auto it = brackets_.find({a, b}); it != brackets_.end()) return it->second;
    }
    LieElement e = compute_bracket(a, b);
    std::lock_guard lk(mu_);
    return brackets_.emplace(std::pair{a, b}, std::move(e)).first->second;
  }

  /// Bilinear extension to arbitrary elements.
  LieElement bracket(const LieElement& x, const LieElement& y) const {
    LieElement e = zero();
    for (const auto& [a, ca] : x.n)
      for (const auto& [b, cb] : y.n) add_to(e, bracket_u(a, b), ca * cb);
    for (int i = 0; i < num_h(); ++i) {
      if (x.h[i] != 0)
        for (const auto& [b, cb] : y.n) e.n[b] -= x.h[i] * cb % m_ * form_tilde(2 * i, b);
      if (y.h[i] != 0)
        for (const auto& [a, ca] : x.n) e.n[a] += y.h[i] * ca % m_ * form_tilde(2 * i, a);
    }
    return reduce(std::move(e));
  }

  /// x + s y.
  LieElement add(LieElement x, const LieElement& y, long long s = 1) const {
    add_to(x, y, s);
    return reduce(std::move(x));
  }

  LieElement reduce(LieElement e) const {
    for (auto& c : e.h) c = mod_floor(c, m_);
    for (auto it = e.n.begin(); it != e.n.end();) {
      it->second = mod_floor(it->second, m_);
      it = it->second == 0 ? e.n.erase(it) : std::next(it);
    }
    return e;
  }

  bool is_zero(const LieElement& e) const {
    const LieElement r = reduce(e);
    return r.n.empty() && lattice_.is_zero_mod(r.h, m_);
  }

  std::string str(const LieElement& e) const {
    const LieElement r = reduce(e);
    std::string s;
    const auto a = lattice_.residues(r.h, m_);
    if (std::any_of(a.begin(), a.end(), [](long long x) { return x != 0; })) {
      s = "h(";
      for (size_t j = 0; j < a.size(); ++j) s += (j ? "," : "") + std::to_string(a[j]);
      s += ")";
    }
    for (const auto& [k, c] : r.n) s += (s.empty() ? "" : " + ") + std::to_string(c) + "*" + name(k);
    return s.empty() ? "0" : s;
  }

  /// Pairing of the n-parts: (u_X | u_Y) = 1 iff X = TY.
  long long pair_n(const LieElement& x, const LieElement& y) const {
    long long s = 0;
    for (const auto& [k, c] : x.n) s += c * y.coeff(shift(k)) % m_;
    return mod_floor(s, m_);
  }

 private:
  Obj obj(int k) const { return C_->object(object(k)); }

  void add_to(LieElement& x, const LieElement& y, long long s) const {
    s = mod_floor(s, m_);
    for (int i = 0; i < num_h(); ++i) x.h[i] = (x.h[i] + s * y.h[i]) % m_;
    for (const auto& [k, c] : y.n) x.n[k] = (x.n[k] + s * c) % m_;
  }

  LieElement compute_bracket(int a, int b) const {
    if (a == shift(b)) return h_tilde(a);
    const ObjClassId X = object(a), Y = object(b);
    const GrothClass g = groth_[a] + groth_[b];
    const bool nonneg = std::all_of(g.begin(), g.end(), [](long long x) { return x >= 0; });
    const bool nonpos = std::all_of(g.begin(), g.end(), [](long long x) { return x <= 0; });
    LieElement e = zero();
    if (nonneg == nonpos) return e;
    const ModuleRegistry& R = C_->modules();
    DimVector dv(g.size());
    for (size_t v = 0; v < g.size(); ++v) dv[v] = static_cast<int>(std::abs(g[v]));
    if (!R.complete() && !R.bound().contains(dv))
      throw BoundExceeded("[" + name(a) + ", " + name(b) + "] needs indecomposables of class " +
                          ModuleRegistry::dims_str(dv) + " outside " + R.bound().str());
    for (int k = nonneg ? 0 : 1; k < num_u(); k += 2) {
      if (groth_[k] != g) continue;
      const ObjClassId L = object(k);
      e.n[k] = hall(X, Y, L) - hall(Y, X, L);
    }
    return reduce(std::move(e));
  }

  const TriangleCounts* T_;
  const RootCategory* C_;
  const HallTable* fast_;
  long long m_;
  std::vector<GrothClass> groth_;
  CartanLattice lattice_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, long long> forms_;
  mutable std::map<std::pair<int, int>, LieElement> brackets_;
};

namespace detail {

inline void skipped(CheckReport& r, const std::string& check, const std::string& inst, const std::string& why) {
  r.add({check, inst, "skipped", "skipped", 0, true, true, why});
}

inline CheckRecord zero_record(const LieAlgebra& A, const std::string& check, const std::string& inst,
                               const LieElement& e) {
  CheckRecord r{check, inst, A.str(e), "0", A.modulus()};
  r.ok = A.is_zero(e);
  r.vacuous = A.modulus() == 1;
  return r;
}

inline std::string names(const LieAlgebra& A, std::initializer_list<int> ks) {
  std::string s = "(";
  for (int k : ks) s += (s.size() > 1 ? "," : "") + A.name(k).substr(1);
  return s + ")";
}

inline long long euler(const Quiver& Q, const GrothClass& a, const GrothClass& b) {
  return Q.euler_form(DimVector(a.begin(), a.end()), DimVector(b.begin(), b.end()));
}

}  // namespace detail

/// Symmetry, T-antisymmetry, descent to Grothendieck classes and integrality of (h~_X | h_Y).
inline CheckReport check_form(const LieAlgebra& A) {
  CheckReport r;
  const Quiver& Q = *A.category().modules().quiver();
  for (int a = 0; a < A.num_u(); ++a)
    for (int b = 0; b < A.num_u(); ++b) {
      const std::string inst = detail::names(A, {a, b});
      const GrothClass &ga = A.groth(a), &gb = A.groth(b);
      r.expect_equal("form.symmetric", inst, A.form(a, b), A.form(b, a));
      r.expect_equal("form.shift", inst, A.form(LieAlgebra::shift(a), b), -A.form(a, b));
      r.expect_equal("form.groth", inst, A.form(a, b), detail::euler(Q, ga, gb) + detail::euler(Q, gb, ga));
      r.expect_equal("form.integral", inst + ";d=" + std::to_string(A.d(a)), A.form(a, b) % A.d(a), 0);
    }
  return r;
}

/// Antisymmetry of the bracket table and the grading of [u_X, u_Y] by h_X + h_Y.
inline CheckReport check_bracket_table(const LieAlgebra& A) {
  CheckReport r;
  for (int a = 0; a < A.num_u(); ++a)
    for (int b = 0; b < A.num_u(); ++b) {
      const std::string inst = detail::names(A, {a, b});
      const LieElement& e = A.bracket_u(a, b);
      r.add(detail::zero_record(A, "bracket.antisymmetric", inst, A.add(e, A.bracket_u(b, a))));
      bool graded = true;
      for (const auto& [k, c] : e.n) graded = graded && A.groth(k) == A.groth(a) + A.groth(b);
      r.expect_true("bracket.grading", inst, graded);
    }
  return r;
}

/// F_{XY}^L - F_{YX}^L vanishes modulo q - 1 for L decomposable or zero.
inline CheckReport check_decomposable_terms(const LieAlgebra& A) {
  CheckReport r;
  const TriangleCounts& T = A.triangles();
  for (int a = 0; a < A.num_u(); ++a)
    for (int b = 0; b < A.num_u(); ++b) {
      const ObjClassId X = A.object(a), Y = A.object(b);
      std::set<ObjClassId> Ls = T.middle_terms(X, Y);
      Ls.merge(T.middle_terms(Y, X));
      for (const auto& L : Ls) {
        if (L.is_indecomposable()) continue;
        r.expect_equal("bracket.hall_symmetry", detail::triple_str(X, Y, L), A.hall(X, Y, L) - A.hall(Y, X, L), 0, A.modulus());
      }
    }
  return r;
}

/// Delta_{XYZ}^M = sum_L F_{XY}^L F_{LZ}^M - sum_L F_{XL}^M F_{YZ}^L over all L.
inline BigInt delta(const LieAlgebra& A, const ObjClassId& X, const ObjClassId& Y, const ObjClassId& Z,
                    const ObjClassId& M) {
  const TriangleCounts& T = A.triangles();
  BigInt s = 0;
  for (const auto& L : T.middle_terms(X, Y)) s += BigInt(A.hall(X, Y, L)) * A.hall(L, Z, M);
  for (const auto& L : T.middle_terms(Y, Z)) s -= BigInt(A.hall(X, L, M)) * A.hall(Y, Z, L);
  return s;
}

/// The coefficient c_M of u_M in the Jacobi expression, written through Delta terms,
/// for indecomposable X, Y, Z with X, Y not TZ and X not TY.
inline CheckReport check_delta_coefficients(const LieAlgebra& A) {
  CheckReport r;
  const int n = A.num_u();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (a == LieAlgebra::shift(c) || b == LieAlgebra::shift(c) || a == LieAlgebra::shift(b)) continue;
        const GrothClass g = A.groth(a) + A.groth(b) + A.groth(c);
        for (int k = 0; k < n; ++k) {
          if (A.groth(k) != g) continue;
          const ObjClassId X = A.object(a), Y = A.object(b), Z = A.object(c), M = A.object(k);
          const std::string inst = detail::names(A, {a, b, c, k});
          try {
            const BigInt cm = delta(A, X, Y, Z, M) + delta(A, Y, Z, X, M) + delta(A, Z, X, Y, M) -
                              delta(A, Y, X, Z, M) - delta(A, Z, Y, X, M) - delta(A, X, Z, Y, M);
            r.expect_equal("jacobi.delta", inst, cm, 0, A.modulus());
          } catch (const BudgetExceeded& e) {
            detail::skipped(r, "jacobi.delta", inst, e.what());
          }
        }
      }
  return r;
}

/// For X not isomorphic to Z or TZ: the coefficient of u_Z in
/// -[[u_X, u_Z], u_TX] - [[u_Z, u_TX], u_X] is (h~_X | h_Z).
inline CheckReport check_shift_pairs(const LieAlgebra& A) {
  CheckReport r;
  for (int a = 0; a < A.num_u(); ++a)
    for (int c = 0; c < A.num_u(); ++c) {
      if (c == a || c == LieAlgebra::shift(a)) continue;
      const int ta = LieAlgebra::shift(a);
      const LieElement e = A.add(A.bracket(A.bracket_u(a, c), A.u(ta)), A.bracket(A.bracket_u(c, ta), A.u(a)));
      r.expect_equal("jacobi.shift_pair", detail::names(A, {a, c}), -e.coeff(c), A.form_tilde(a, c), A.modulus());
    }
  return r;
}

/// The generators u_k followed by h~_i.
inline std::vector<std::pair<std::string, LieElement>> generators(const LieAlgebra& A) {
  std::vector<std::pair<std::string, LieElement>> g;
  for (int k = 0; k < A.num_u(); ++k) g.emplace_back(A.name(k), A.u(k));
  for (int i = 0; i < A.num_h(); ++i) g.emplace_back(A.h_name(i), A.h(i));
  return g;
}

/// [[a,b],c] - [[a,c],b] - [[c,b],a] over every triple of generators.
inline CheckReport check_jacobi(const LieAlgebra& A, int jobs = 1) {
  const auto g = generators(A);
  const long long n = static_cast<long long>(g.size());
  for (int a = 0; a < A.num_u(); ++a)
    for (int b = 0; b < A.num_u(); ++b) A.bracket_u(a, b);
  std::vector<CheckRecord> out(n * n * n);
  parallel_for(n * n * n, jobs, [&](long long t) {
    const auto& [na, a] = g[t / (n * n)];
    const auto& [nb, b] = g[t / n % n];
    const auto& [nc, c] = g[t % n];
    LieElement j = A.bracket(A.bracket(a, b), c);
    j = A.add(j, A.bracket(A.bracket(a, c), b), -1);
    j = A.add(j, A.bracket(A.bracket(c, b), a), -1);
    out[t] = detail::zero_record(A, "jacobi", "(" + na + "," + nb + "," + nc + ")", j);
  });
  CheckReport r;
  for (auto& rec : out) r.add(std::move(rec));
  return r;
}

/// Endomorphisms (eta, lambda, xi) of a triangle Y -> L -> X -> TY.
struct TriangleEndomorphisms {
  int dim = 0;
  int rad_dim = 0;
  bool radical_is_subspace = false;
  bool radical_nilpotent = false;

  bool local() const { return radical_is_subspace && radical_nilpotent; }
  int d() const { return dim - rad_dim; }
};

inline TriangleEndomorphisms triangle_endomorphisms(const RootCategory& C, const TriangleSet& W, const Triangle& t) {
  const Field& F = C.field();
  const Obj y = W.y, l = W.l, x = W.x, ty = W.ty;
  const int ey = C.hom(y, y).dim(), el = C.hom(l, l).dim(), ex = C.hom(x, x).dim();
  const int nyl = C.hom(y, l).dim(), nlx = C.hom(l, x).dim(), nxt = C.hom(x, ty).dim();
  const int unknowns = ey + el + ex;
  Matrix eqs(nyl + nlx + nxt, unknowns);
  auto put = [&](int row0, int col, const std::vector<Elem>& v, bool neg) {
    for (size_t i = 0; i < v.size(); ++i) {
      Elem& e = eqs(row0 + static_cast<int>(i), col);
      e = F.add(e, neg ? F.neg(v[i]) : v[i]);
    }
  };
  auto unit = [](int n, int j) {
    std::vector<Elem> e(n, 0);
    e[j] = 1;
    return e;
  };
  for (int j = 0; j < ey; ++j) {
    const auto e = unit(ey, j);
    put(0, j, C.compose(y, y, l, t.f, e), true);
    put(nyl + nlx, j, C.compose(x, ty, ty, C.shift_map(y, y, e), t.h), false);
  }
  for (int j = 0; j < el; ++j) {
    const auto e = unit(el, j);
    put(0, ey + j, C.compose(y, l, l, e, t.f), false);
    put(nyl, ey + j, C.compose(l, l, x, t.g, e), true);
  }
  for (int j = 0; j < ex; ++j) {
    const auto e = unit(ex, j);
    put(nyl, ey + el + j, C.compose(l, x, x, e, t.g), false);
    put(nyl + nlx, ey + el + j, C.compose(x, x, ty, t.h, e), true);
  }
  const Matrix K = kernel_basis(F, eqs);
  TriangleEndomorphisms out;
  out.dim = K.cols();
  require_budget(count_vectors(F.q(), out.dim, C.budgets().elements), C.budgets().elements,
                 "endomorphisms of a triangle");

  auto nilpotent = [&](Obj o, const std::vector<Elem>& v) {
    std::vector<Elem> p = v;
    const int e = C.hom(o, o).dim();
    for (int k = 0; k <= e; ++k) {
      if (std::all_of(p.begin(), p.end(), [](Elem z) { return z == 0; })) return true;
      p = C.compose(o, o, o, p, v);
    }
    return false;
  };
  std::vector<std::vector<Elem>> nonunits;
  out.radical_nilpotent = true;
  for_each_vector(F, out.dim, [&](const std::vector<Elem>& c) {
    const std::vector<Elem> v = apply(F, K, c);
    const std::vector<Elem> eta(v.begin(), v.begin() + ey), lam(v.begin() + ey, v.begin() + ey + el),
        xi(v.begin() + ey + el, v.end());
    if (C.is_iso(y, y, eta) && C.is_iso(l, l, lam) && C.is_iso(x, x, xi)) return;
    if (!(nilpotent(y, eta) && nilpotent(l, lam) && nilpotent(x, xi))) out.radical_nilpotent = false;
    nonunits.push_back(v);
  });
  out.rad_dim = rank(F, from_columns(unknowns, nonunits));
  out.radical_is_subspace = BigInt(static_cast<long long>(nonunits.size())) == ipow(F.q(), out.rad_dim);
  return out;
}

/// Index triples of indecomposables with h_X + h_Y + h_Z = 0, X, Y not TZ and X not TY.
inline std::vector<std::array<int, 3>> zero_sum_triples(const LieAlgebra& A) {
  std::vector<std::array<int, 3>> out;
  const int n = A.num_u();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (a == LieAlgebra::shift(c) || b == LieAlgebra::shift(c) || a == LieAlgebra::shift(b)) continue;
        const GrothClass g = A.groth(a) + A.groth(b) + A.groth(c);
        if (std::all_of(g.begin(), g.end(), [](long long v) { return v == 0; })) out.push_back({a, b, c});
      }
  return out;
}

/// The h-part of the Jacobi expression:
/// -(F_{XY}^{TZ} - F_{YX}^{TZ}) h~_Z + (F_{XZ}^{TY} - F_{ZX}^{TY}) h~_Y + (F_{ZY}^{TX} - F_{YZ}^{TX}) h~_X.
inline CheckReport check_h_cancellation(const LieAlgebra& A) {
  CheckReport r;
  const auto triples = zero_sum_triples(A);
  if (triples.empty()) detail::skipped(r, "h-cancellation", "none", "no triple of indecomposables sums to zero");
  for (const auto& [a, b, c] : triples) {
    const ObjClassId X = A.object(a), Y = A.object(b), Z = A.object(c);
    const std::string inst = detail::names(A, {a, b, c});
    try {
      auto diff = [&](const ObjClassId& P, const ObjClassId& Q, const ObjClassId& L) {
        return A.hall(P, Q, L) - A.hall(Q, P, L);
      };
      LieElement e = A.zero();
      e = A.add(e, A.h_tilde(c), -diff(X, Y, Z.shift()));
      e = A.add(e, A.h_tilde(b), diff(X, Z, Y.shift()));
      e = A.add(e, A.h_tilde(a), diff(Z, Y, X.shift()));
      r.add(detail::zero_record(A, "h-cancellation", inst, e));
    } catch (const BudgetExceeded& ex) {
      detail::skipped(r, "h-cancellation", inst, ex.what());
    }
  }
  return r;
}

/// For every orbit of Aut(X, Y, Z) on W_{XY}^{TZ}: End t is local and d(t) divides
/// d(X), d(Y), d(Z); and F_{XY}^{TZ} = sum_t d(Z) / d(t) modulo q - 1.
inline CheckReport check_triangle_endomorphisms(const LieAlgebra& A, std::span<const std::array<int, 3>> triples) {
  CheckReport r;
  const RootCategory& C = A.category();
  const TriangleCounts& T = A.triangles();
  for (const auto& [a, b, c] : triples) {
    const ObjClassId X = A.object(a), Y = A.object(b), Z = A.object(c);
    const std::string inst = detail::names(A, {a, b, c});
    try {
      const TriangleSet& W = T.triangles(X, Y, Z.shift());
      const OrbitCount& O = T.orbits(W, kEta | kMid | kXi);
      BigInt sum = 0;
      for (int id = 0; id < O.count(); ++id) {
        const TriangleEndomorphisms E = triangle_endomorphisms(C, W, W.items[O.representatives[id]]);
        const std::string ti = inst + ";orbit=" + std::to_string(id) + ";d(t)=" + std::to_string(E.d());
        r.expect_true("endo.local", ti, E.local());
        for (int k : {a, b, c}) r.expect_equal("endo.divides", ti + ";d=" + std::to_string(A.d(k)), A.d(k) % E.d(), 0);
        sum += exact_div(A.d(c), E.d(), "d(Z)/d(t)");
      }
      r.expect_equal("endo.sum", inst, A.hall(X, Y, Z.shift()), sum, A.modulus());
    } catch (const BudgetExceeded& ex) {
      detail::skipped(r, "endo", inst, ex.what());
    }
  }
  return r;
}

/// Invariance of the form extended by (h~ | u) = 0 and (u_X | u_Y) = [X = TY]:
///   (h~_X | [u_Y, u_Z]) d(Z) = -([h~_X, u_Y] | u_Z),
///   d(X) ([u_X, u_Y] | u_Z) = (u_X | [u_Y, u_Z]) d(Z),
/// and d(X) F_{XY}^{TZ} = d(Z) F_{YZ}^{TX} on triples summing to zero.
inline CheckReport check_invariant_form(const LieAlgebra& A) {
  CheckReport r;
  const long long m = A.modulus();
  const int n = A.num_u();
  for (int i = 0; i < A.num_h(); ++i)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const LieElement& e = A.bracket_u(b, c);
        BigInt lhs = 0;
        for (int j = 0; j < A.num_h(); ++j)
          if (e.h[j] != 0)
            lhs += BigInt(e.h[j]) * exact_div(A.form_tilde(2 * i, 2 * j) * A.d(c), A.d(2 * j), "(h~_X | h~_Y) d(Z)");
        const BigInt rhs = -A.pair_n(A.bracket(A.h(i), A.u(b)), A.u(c));
        r.expect_equal("form.invariant.h", A.h_name(i) + detail::names(A, {b, c}), lhs, rhs, m);
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const BigInt lhs = BigInt(A.d(a)) * A.pair_n(A.bracket_u(a, b), A.u(c));
        const BigInt rhs = BigInt(A.pair_n(A.u(a), A.bracket_u(b, c))) * A.d(c);
        r.expect_equal("form.invariant.u", detail::names(A, {a, b, c}), lhs, rhs, m);
      }
  for (const auto& [a, b, c] : zero_sum_triples(A)) {
    const ObjClassId X = A.object(a), Y = A.object(b), Z = A.object(c);
    const std::string inst = detail::names(A, {a, b, c});
    try {
      r.expect_equal("form.identity", inst, BigInt(A.d(a)) * A.hall(X, Y, Z.shift()),
                     BigInt(A.d(c)) * A.hall(Y, Z, X.shift()), m);
    } catch (const BudgetExceeded& ex) {
      detail::skipped(r, "form.identity", inst, ex.what());
    }
  }
  return r;
}

/// The fast-path bracket table against the one built purely from triangle counts.
inline CheckReport compare_brackets(const LieAlgebra& fast, const LieAlgebra& slow) {
  CheckReport r;
  for (int a = 0; a < fast.num_u(); ++a)
    for (int b = 0; b < fast.num_u(); ++b)
      r.add(detail::zero_record(fast, "bracket.oracle", detail::names(fast, {a, b}),
                                fast.add(fast.bracket_u(a, b), slow.bracket_u(a, b), -1)));
  return r;
}

struct RootMultiplicity {
  GrothClass cls;
  int count = 0;
};

struct StructureReport {
  std::vector<std::vector<long long>> cartan;
  int rank_h = 0;
  int rank_n = 0;
  std::vector<RootMultiplicity> roots;

  int total_rank() const { return rank_h + rank_n; }

  nlohmann::json to_json() const {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& m : roots) rs.push_back({{"class", m.cls}, {"count", m.count}});
    return {{"cartan_matrix", cartan}, {"rank_h", rank_h},         {"rank_n", rank_n},
            {"total_rank", total_rank()}, {"root_multiplicities", rs}};
  }
};

inline StructureReport structure_report(const LieAlgebra& A) {
  const ModuleRegistry& R = A.category().modules();
  const int nv = R.quiver()->num_vertices();
  std::vector<int> simple(nv, -1);
  for (int i = 0; i < R.size(); ++i) {
    const DimVector& dv = R.dims(i);
    if (std::accumulate(dv.begin(), dv.end(), 0) == 1)
      simple[std::find(dv.begin(), dv.end(), 1) - dv.begin()] = i;
  }
  StructureReport s;
  s.cartan.assign(nv, std::vector<long long>(nv, 0));
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) {
      if (simple[i] < 0 || simple[j] < 0) throw BoundExceeded("simple modules are outside the registry bound");
      s.cartan[i][j] = A.form_tilde(2 * simple[i], 2 * simple[j]);
    }
  s.rank_h = A.lattice().rank();
  s.rank_n = A.num_u();
  std::map<GrothClass, int> mult;
  for (int i = 0; i < R.size(); ++i) ++mult[A.groth(2 * i)];
  for (const auto& [g, c] : mult) s.roots.push_back({g, c});
  return s;
}

}  // namespace hallie
