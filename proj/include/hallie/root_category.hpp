// The 2-periodic root category modelled by Z/2-graded complexes of projective
// representations, with morphisms taken modulo homotopy.
#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <tuple>

#include "hallie/registry.hpp"

namespace hallie {

/// P0 -d0-> P1 -d1-> P0 with d1 d0 = 0 and d0 d1 = 0.
struct Complex {
  ProjectiveSum c0, c1;
  VertexMaps d0;
  VertexMaps d1;

  int summands() const { return static_cast<int>(c0.summand_vertices.size() + c1.summand_vertices.size()); }
  bool is_zero() const { return summands() == 0; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.c0.summand_vertices == b.c0.summand_vertices && a.c1.summand_vertices == b.c1.summand_vertices &&
           a.d0 == b.d0 && a.d1 == b.d1;
  }
};

/// Degreewise components u0: A0 -> B0, u1: A1 -> B1.
struct ChainMap {
  VertexMaps u0, u1;
  friend bool operator==(const ChainMap&, const ChainMap&) = default;
};

inline Complex zero_complex(QuiverPtr Q, FieldPtr F) {
  ProjectiveSum z = projective_sum(Q, F, {});
  const VertexMaps d = zero_maps(z.rep.dims, z.rep.dims);
  return {z, z, d, d};
}

/// Differentials are module maps and square to zero in both directions.
inline bool is_complex(const Field& F, const Complex& A) {
  const Morphism m0{A.c0.rep, A.c1.rep, A.d0}, m1{A.c1.rep, A.c0.rep, A.d1};
  if (!m0.intertwines() || !m1.intertwines()) return false;
  for (size_t v = 0; v < A.d0.size(); ++v)
    if (!mul(F, A.d1[v], A.d0[v]).is_zero() || !mul(F, A.d0[v], A.d1[v]).is_zero()) return false;
  return true;
}

inline bool is_chain_map(const Field& F, const Complex& A, const Complex& B, const ChainMap& u) {
  if (!Morphism{A.c0.rep, B.c0.rep, u.u0}.intertwines() || !Morphism{A.c1.rep, B.c1.rep, u.u1}.intertwines())
    return false;
  for (size_t v = 0; v < u.u0.size(); ++v) {
    if (!(mul(F, u.u1[v], A.d0[v]) == mul(F, B.d0[v], u.u0[v]))) return false;
    if (!(mul(F, u.u0[v], A.d1[v]) == mul(F, B.d1[v], u.u1[v]))) return false;
  }
  return true;
}

/// T swaps the two degrees and negates both differentials, so T(T(A)) == A.
inline Complex shift(const Field& F, const Complex& A) { return {A.c1, A.c0, negate(F, A.d1), negate(F, A.d0)}; }
inline ChainMap shift(const ChainMap& u) { return {u.u1, u.u0}; }

inline ChainMap compose(const Field& F, const ChainMap& outer, const ChainMap& inner) {
  return {compose(F, outer.u0, inner.u0), compose(F, outer.u1, inner.u1)};
}

inline ChainMap identity_map(const Complex& A) {
  return {identity_maps(A.c0.rep.dims), identity_maps(A.c1.rep.dims)};
}

inline ChainMap zero_map(const Complex& A, const Complex& B) {
  return {zero_maps(A.c0.rep.dims, B.c0.rep.dims), zero_maps(A.c1.rep.dims, B.c1.rep.dims)};
}

inline ProjectiveSum concat(const ProjectiveSum& a, const ProjectiveSum& b) {
  std::vector<int> v = a.summand_vertices;
  v.insert(v.end(), b.summand_vertices.begin(), b.summand_vertices.end());
  return projective_sum(a.rep.quiver, a.rep.field, std::move(v));
}

inline Complex complex_sum(const Complex& A, const Complex& B) {
  return {concat(A.c0, B.c0), concat(A.c1, B.c1), block_diag(A.d0, B.d0), block_diag(A.d1, B.d1)};
}

/// 0 -> P1 -> P0 -> M -> 0 folded into a 2-periodic complex with d0 = 0.
inline Complex embed(const Representation& M) {
  ProjectiveResolution r = projective_resolution(M);
  VertexMaps d0 = zero_maps(r.p0.rep.dims, r.p1.rep.dims);
  return {std::move(r.p0), std::move(r.p1), std::move(d0), std::move(r.inclusion)};
}

/// The standard triangle A -f-> B -i-> C(f) -p-> TA.
struct Cone {
  Complex cone;
  ChainMap incl;
  ChainMap proj;
};

/// C0 = B0 + A1, C1 = B1 + A0, d0 = [[dB0, f1], [0, -dA1]], d1 = [[dB1, f0], [0, -dA0]].
inline Cone cone(const Field& F, const Complex& A, const Complex& B, const ChainMap& f) {
  Cone c;
  c.cone.c0 = concat(B.c0, A.c1);
  c.cone.c1 = concat(B.c1, A.c0);
  const size_t n = B.d0.size();
  for (size_t v = 0; v < n; ++v) {
    const int b0 = B.c0.rep.dims[v], b1 = B.c1.rep.dims[v], a0 = A.c0.rep.dims[v], a1 = A.c1.rep.dims[v];
    c.cone.d0.push_back(blocks(B.d0[v], f.u1[v], Matrix(a0, b0), negate(F, A.d1[v])));
    c.cone.d1.push_back(blocks(B.d1[v], f.u0[v], Matrix(a1, b1), negate(F, A.d0[v])));
    c.incl.u0.push_back(vstack(Matrix::identity(b0), Matrix(a1, b0)));
    c.incl.u1.push_back(vstack(Matrix::identity(b1), Matrix(a0, b1)));
    c.proj.u0.push_back(hstack(Matrix(a1, b0), Matrix::identity(a1)));
    c.proj.u1.push_back(hstack(Matrix(a0, b1), Matrix::identity(a0)));
  }
  return c;
}

namespace detail {

// Row offsets of each summand of a projective sum at every vertex.
inline std::vector<std::vector<int>> summand_offsets(const ProjectiveSum& P) {
  const int n = P.rep.quiver->num_vertices();
  std::vector<std::vector<int>> off(P.summand_vertices.size(), std::vector<int>(n));
  std::vector<int> run(n, 0);
  for (size_t t = 0; t < P.summand_vertices.size(); ++t) {
    const Representation proj = projective(P.rep.quiver, P.rep.field, P.summand_vertices[t]);
    for (int v = 0; v < n; ++v) {
      off[t][v] = run[v];
      run[v] += proj.dims[v];
    }
  }
  return off;
}

inline Matrix pick(const Matrix& A, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix S(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) S(static_cast<int>(i), static_cast<int>(j)) = A(rows[i], cols[j]);
  return S;
}

// Cancels summand `src` of `from` against summand `dst` of `to`, where the component of
// `d` (from -> to) between them is invertible. `back` (to -> from) is restricted.
inline void eliminate(const Field& F, ProjectiveSum& from, ProjectiveSum& to, VertexMaps& d, VertexMaps& back,
                      int src, int dst) {
  const auto off_from = summand_offsets(from), off_to = summand_offsets(to);
  const int n = from.rep.quiver->num_vertices();
  const Representation ps = projective(from.rep.quiver, from.rep.field, from.summand_vertices[src]);
  for (int v = 0; v < n; ++v) {
    std::vector<int> ce, ck, re, rk;
    for (int c = 0; c < from.rep.dims[v]; ++c)
      (c >= off_from[src][v] && c < off_from[src][v] + ps.dims[v] ? ce : ck).push_back(c);
    for (int r = 0; r < to.rep.dims[v]; ++r)
      (r >= off_to[dst][v] && r < off_to[dst][v] + ps.dims[v] ? re : rk).push_back(r);
    const Matrix a = pick(d[v], re, ce);
    const Matrix schur = sub(F, pick(d[v], rk, ck), mul(F, pick(d[v], rk, ce), mul(F, inverse(F, a), pick(d[v], re, ck))));
    back[v] = pick(back[v], ck, rk);
    d[v] = schur;
  }
  std::vector<int> fv = from.summand_vertices, tv = to.summand_vertices;
  fv.erase(fv.begin() + src);
  tv.erase(tv.begin() + dst);
  from = projective_sum(from.rep.quiver, from.rep.field, std::move(fv));
  to = projective_sum(to.rep.quiver, to.rep.field, std::move(tv));
}

// A pair (src summand, dst summand) whose component of d has an invertible top coefficient.
inline std::optional<std::pair<int, int>> find_unit_component(const ProjectiveSum& from, const ProjectiveSum& to,
                                                              const VertexMaps& d) {
  const auto off_from = summand_offsets(from), off_to = summand_offsets(to);
  for (size_t s = 0; s < from.summand_vertices.size(); ++s)
    for (size_t t = 0; t < to.summand_vertices.size(); ++t) {
      const int i = from.summand_vertices[s];
      if (to.summand_vertices[t] != i) continue;
      if (d[i](off_to[t][i], off_from[s][i]) != 0) return std::pair{static_cast<int>(s), static_cast<int>(t)};
    }
  return std::nullopt;
}

}  // namespace detail

/// Strips contractible summands P -iso-> P by Gaussian elimination. The result is
/// homotopy equivalent to A, has differentials into the radical, and minimal
/// complexes are returned unchanged.
inline Complex minimalize(const Field& F, Complex A) {
  while (true) {
    if (auto p = detail::find_unit_component(A.c0, A.c1, A.d0)) {
      detail::eliminate(F, A.c0, A.c1, A.d0, A.d1, p->first, p->second);
      continue;
    }
    if (auto p = detail::find_unit_component(A.c1, A.c0, A.d1)) {
      detail::eliminate(F, A.c1, A.c0, A.d1, A.d0, p->first, p->second);
      continue;
    }
    return A;
  }
}

/// H0 = ker d0 / im d1 and H1 = ker d1 / im d0.
struct Homology {
  Subquotient h0, h1;
};

inline Homology homology(const Field& F, const Complex& A) {
  const size_t n = A.d0.size();
  VertexMaps z0, z1;
  for (size_t v = 0; v < n; ++v) {
    z0.push_back(kernel_basis(F, A.d0[v]));
    z1.push_back(kernel_basis(F, A.d1[v]));
  }
  return {subquotient(A.c0.rep, z0, &A.d1), subquotient(A.c1.rep, z1, &A.d0)};
}

/// Maps induced on H0 and H1 by a chain map.
inline std::pair<VertexMaps, VertexMaps> homology_maps(const Field& F, const Homology& HA, const Homology& HB,
                                                       const ChainMap& u) {
  std::pair<VertexMaps, VertexMaps> out;
  for (size_t v = 0; v < u.u0.size(); ++v) {
    out.first.push_back(mul(F, HB.h0.projection[v], mul(F, u.u0[v], HA.h0.section[v])));
    out.second.push_back(mul(F, HB.h1.projection[v], mul(F, u.u1[v], HA.h1.section[v])));
  }
  return out;
}

inline bool all_invertible(const Field& F, const VertexMaps& m) {
  return std::all_of(m.begin(), m.end(), [&](const Matrix& x) { return is_invertible(F, x); });
}

namespace detail {

// Row-reduced spanning set with pivot columns; reduction is the projection
// along the span onto vectors vanishing at the pivots.
struct Echelon {
  std::vector<std::vector<Elem>> rows;
  std::vector<int> pivots;

  static Echelon of(const Field& F, const std::vector<std::vector<Elem>>& vecs, int amb) {
    Matrix m(static_cast<int>(vecs.size()), amb);
    for (size_t r = 0; r < vecs.size(); ++r)
      for (int c = 0; c < amb; ++c) m(static_cast<int>(r), c) = vecs[r][c];
    const Rref R = rref(F, m);
    Echelon e;
    e.pivots = R.pivots;
    for (int r = 0; r < R.rank(); ++r) {
      std::vector<Elem> row(amb);
      for (int c = 0; c < amb; ++c) row[c] = R.reduced(r, c);
      e.rows.push_back(std::move(row));
    }
    return e;
  }

  void reduce(const Field& F, std::vector<Elem>& v) const {
    for (size_t k = 0; k < rows.size(); ++k) {
      const Elem s = v[pivots[k]];
      if (s == 0) continue;
      for (size_t c = 0; c < v.size(); ++c) v[c] = F.sub(v[c], F.mul(s, rows[k][c]));
    }
  }
};

}  // namespace detail

/// Hom(A, B) in the homotopy category: chain maps modulo null-homotopic ones.
/// Morphisms are coordinate vectors in a fixed basis of the quotient.
class HomSpace {
 public:
  HomSpace(const Field& F, const Complex& A, const Complex& B)
      : F_(&F), l0_(A.c0.rep.dims, B.c0.rep.dims), l1_(A.c1.rep.dims, B.c1.rep.dims) {
    amb_ = l0_.size + l1_.size;
    const Matrix H0 = hom_basis_flat(A.c0.rep, B.c0.rep), H1 = hom_basis_flat(A.c1.rep, B.c1.rep);
    const int p0 = H0.cols(), p1 = H1.cols();
    // Chain conditions u1 dA0 - dB0 u0 = 0 and u0 dA1 - dB1 u1 = 0 in parameter space.
    MapLayout c01(A.c0.rep.dims, B.c1.rep.dims), c10(A.c1.rep.dims, B.c0.rep.dims);
    Matrix cond(c01.size + c10.size, p0 + p1);
    auto param_map = [&](int k) {
      ChainMap u = zero_map(A, B);
      if (k < p0)
        u.u0 = l0_.unflatten(H0.column(k));
      else
        u.u1 = l1_.unflatten(H1.column(k - p0));
      return u;
    };
    std::vector<ChainMap> params;
    for (int k = 0; k < p0 + p1; ++k) {
      ChainMap u = param_map(k);
      const VertexMaps e1 = add(F, compose(F, u.u1, A.d0), negate(F, compose(F, B.d0, u.u0)));
      const VertexMaps e2 = add(F, compose(F, u.u0, A.d1), negate(F, compose(F, B.d1, u.u1)));
      const auto v1 = c01.flatten(e1), v2 = c10.flatten(e2);
      for (int r = 0; r < c01.size; ++r) cond(r, k) = v1[r];
      for (int r = 0; r < c10.size; ++r) cond(c01.size + r, k) = v2[r];
      params.push_back(std::move(u));
    }
    const Matrix K = kernel_basis(F, cond);
    std::vector<std::vector<Elem>> cycles;
    for (int c = 0; c < K.cols(); ++c) {
      ChainMap u = zero_map(A, B);
      for (int k = 0; k < p0 + p1; ++k) {
        const Elem s = K(k, c);
        if (s == 0) continue;
        u.u0 = add(F, u.u0, scale_maps(F, s, params[k].u0));
        u.u1 = add(F, u.u1, scale_maps(F, s, params[k].u1));
      }
      cycles.push_back(flatten(u));
    }
    // Null-homotopic maps: u0 = dB1 s0 + s1 dA0, u1 = dB0 s1 + s0 dA1.
    std::vector<std::vector<Elem>> bounds;
    const Matrix S0 = hom_basis_flat(A.c0.rep, B.c1.rep), S1 = hom_basis_flat(A.c1.rep, B.c0.rep);
    for (int c = 0; c < S0.cols(); ++c) {
      const VertexMaps s0 = c01.unflatten(S0.column(c));
      bounds.push_back(flatten({compose(F, B.d1, s0), compose(F, s0, A.d1)}));
    }
    for (int c = 0; c < S1.cols(); ++c) {
      const VertexMaps s1 = c10.unflatten(S1.column(c));
      bounds.push_back(flatten({compose(F, s1, A.d0), compose(F, B.d0, s1)}));
    }
    bd_ = detail::Echelon::of(F, bounds, amb_);
    for (auto& z : cycles) bd_.reduce(F, z);
    q_ = detail::Echelon::of(F, cycles, amb_);
    for (const auto& row : q_.rows) basis_.push_back(unflatten(row));
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<ChainMap>& basis() const { return basis_; }

  /// Coordinates of the homotopy class of a chain map.
  std::vector<Elem> coords(const ChainMap& u) const {
    std::vector<Elem> v = flatten(u);
    bd_.reduce(*F_, v);
    std::vector<Elem> c(q_.pivots.size());
    for (size_t k = 0; k < c.size(); ++k) c[k] = v[q_.pivots[k]];
    q_.reduce(*F_, v);
    check_consistency(std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; }),
                      "coordinates requested for a map that is not a chain map");
    return c;
  }

  /// A chain map representing the class with the given coordinates.
  ChainMap map(std::span<const Elem> c) const {
    std::vector<Elem> v(amb_, 0);
    for (size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      for (int i = 0; i < amb_; ++i) v[i] = F_->add(v[i], F_->mul(c[k], q_.rows[k][i]));
    }
    return unflatten(v);
  }

  bool is_null_homotopic(const ChainMap& u) const {
    const auto c = coords(u);
    return std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; });
  }

 private:
  static VertexMaps scale_maps(const Field& F, Elem s, const VertexMaps& m) {
    VertexMaps r;
    for (const auto& x : m) r.push_back(scale(F, s, x));
    return r;
  }
  std::vector<Elem> flatten(const ChainMap& u) const {
    std::vector<Elem> v = l0_.flatten(u.u0);
    const auto w = l1_.flatten(u.u1);
    v.insert(v.end(), w.begin(), w.end());
    return v;
  }
  ChainMap unflatten(std::span<const Elem> v) const {
    return {l0_.unflatten(v.subspan(0, l0_.size)), l1_.unflatten(v.subspan(l0_.size))};
  }

  const Field* F_;
  MapLayout l0_, l1_;
  int amb_ = 0;
  detail::Echelon bd_, q_;
  std::vector<ChainMap> basis_;
};

/// Decides invertibility of morphisms in a Hom space through their action on homology.
class IsoTest {
 public:
  IsoTest(const Field& F, const HomSpace& H, const Homology& HA, const Homology& HB) : F_(&F) {
    zero_ = {zero_maps(HA.h0.rep.dims, HB.h0.rep.dims), zero_maps(HA.h1.rep.dims, HB.h1.rep.dims)};
    for (const auto& b : H.basis()) images_.push_back(homology_maps(F, HA, HB, b));
  }

  bool operator()(std::span<const Elem> u) const {
    auto [m0, m1] = zero_;
    for (size_t k = 0; k < u.size(); ++k) {
      if (u[k] == 0) continue;
      for (size_t v = 0; v < m0.size(); ++v) {
        m0[v] = add(*F_, m0[v], scale(*F_, u[k], images_[k].first[v]));
        m1[v] = add(*F_, m1[v], scale(*F_, u[k], images_[k].second[v]));
      }
    }
    return all_invertible(*F_, m0) && all_invertible(*F_, m1);
  }

  /// Some isomorphism in the space: seeded random probes, then exhaustive search.
  std::optional<std::vector<Elem>> find(int dim, long long budget, unsigned seed = 0) const {
    std::mt19937 rng(seed);
    std::vector<Elem> c(dim);
    for (int t = 0; t < 64; ++t) {
      for (auto& x : c) x = static_cast<Elem>(rng() % F_->q());
      if ((*this)(c)) return c;
    }
    require_budget(count_vectors(F_->q(), dim, budget), budget, "isomorphism search");
    std::optional<std::vector<Elem>> found;
    for_each_vector(*F_, dim, [&](const std::vector<Elem>& x) {
      if (!found && (*this)(x)) found = x;
    });
    return found;
  }

 private:
  const Field* F_;
  std::pair<VertexMaps, VertexMaps> zero_;
  std::vector<std::pair<VertexMaps, VertexMaps>> images_;
};

/// An isomorphism class of objects: H0 classes (unshifted summands) and H1 classes (shifted).
struct ObjClassId {
  IsoClassId even;
  IsoClassId odd;

  static ObjClassId indecomposable(int module, bool shifted) {
    return shifted ? ObjClassId{{}, IsoClassId::single(module)} : ObjClassId{IsoClassId::single(module), {}};
  }
  ObjClassId shift() const { return {odd, even}; }
  ObjClassId plus(const ObjClassId& o) const { return {even.plus(o.even), odd.plus(o.odd)}; }
  bool is_zero() const { return even.is_zero() && odd.is_zero(); }
  int num_summands() const { return even.num_summands() + odd.num_summands(); }
  bool is_indecomposable() const { return num_summands() == 1; }
  /// Registry module index and parity of an indecomposable.
  std::pair<int, bool> indecomposable_parts() const {
    check_consistency(is_indecomposable(), "object is indecomposable");
    return even.is_zero() ? std::pair{odd.index(), true} : std::pair{even.index(), false};
  }

  /// "[i+:m,j-:n]" sorted by module index, unshifted first.
  std::string str() const {
    std::vector<std::tuple<int, int, int>> items;
    for (auto [i, m] : even.parts) items.emplace_back(i, 0, m);
    for (auto [i, m] : odd.parts) items.emplace_back(i, 1, m);
    std::sort(items.begin(), items.end());
    std::string s = "[";
    for (size_t k = 0; k < items.size(); ++k) {
      const auto [i, p, m] = items[k];
      s += (k ? "," : "") + std::to_string(i) + (p ? "-" : "+") + ":" + std::to_string(m);
    }
    return s + "]";
  }
  static ObjClassId parse(std::string_view s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw InputError("bad object id '" + std::string(s) + "'");
    std::string even = "[", odd = "[";
    s = s.substr(1, s.size() - 2);
    while (!s.empty()) {
      const size_t comma = s.find(',');
      std::string item(s.substr(0, comma));
      const size_t sign = item.find_first_of("+-");
      if (sign == std::string::npos) throw InputError("bad object id item '" + item + "'");
      std::string& dst = item[sign] == '+' ? even : odd;
      dst += (dst.size() > 1 ? "," : "") + item.substr(0, sign) + item.substr(sign + 1);
      s = comma == std::string_view::npos ? std::string_view() : s.substr(comma + 1);
    }
    return {IsoClassId::parse(even + "]"), IsoClassId::parse(odd + "]")};
  }
  auto operator<=>(const ObjClassId&) const = default;
};

/// Grothendieck class as an integer vector over the vertices.
using GrothClass = std::vector<long long>;

inline GrothClass operator+(GrothClass a, const GrothClass& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline GrothClass operator-(GrothClass a) {
  for (auto& x : a) x = -x;
  return a;
}

/// Every object class whose H0 and H1 together have total dimension at most t.
inline std::vector<ObjClassId> objects_within(const ModuleRegistry& R, int t) {
  const int n = R.quiver()->num_vertices();
  std::vector<ObjClassId> out;
  for (const auto& e : R.classes_within(Bound::total_dim(n, t)))
    for (const auto& o : R.classes_within(Bound::total_dim(n, t - dims_total(R.dims_of(e))))) out.push_back({e, o});
  std::sort(out.begin(), out.end());
  return out;
}

/// Handle of a complex registered with a RootCategory.
using Obj = int;

/// A finite group of automorphisms, stored as coordinate vectors in End.
struct AutGroup {
  std::vector<std::vector<Elem>> elements;
  std::vector<int> inverse;
  std::map<std::vector<Elem>, int> index;
  int identity = 0;
  long long order() const { return static_cast<long long>(elements.size()); }
};

/// Objects, Hom spaces, composition and automorphism groups of the root category
/// of a quiver, built on a module registry. Queries are thread-safe.
class RootCategory {
 public:
  explicit RootCategory(const ModuleRegistry& R) : reg_(&R), F_(R.field()) {}

  const ModuleRegistry& modules() const { return *reg_; }
  const Field& field() const { return *F_; }
  const Budgets& budgets() const { return reg_->budgets(); }
  long long modulus() const { return F_->q() - 1; }

  /// Indecomposable objects: index 2 i is module i, 2 i + 1 its shift.
  int num_indecomposables() const { return 2 * reg_->size(); }
  ObjClassId indecomposable(int k) const { return ObjClassId::indecomposable(k / 2, k % 2 == 1); }
  int indecomposable_index(const ObjClassId& c) const {
    const auto [i, s] = c.indecomposable_parts();
    return 2 * i + (s ? 1 : 0);
  }

  /// Canonical complex of a class: embeddings of registry modules, shifted ones after.
  /// object(c.shift()) is always shift(object(c)).
  Obj object(const ObjClassId& c) const {
    {
      std::lock_guard lk(mu_);
      if (auto it = canonical_.find(c); it != canonical_.end()) return it->second;
    }
    if (c.shift() < c) {
      const Obj h = shift(object(c.shift()));
      std::lock_guard lk(mu_);
      return canonical_.emplace(c, h).first->second;
    }
    Complex A = zero_complex(reg_->quiver(), F_);
    for (auto [i, m] : c.even.parts)
      for (int k = 0; k < m; ++k) A = complex_sum(A, embed(reg_->rep(i)));
    for (auto [i, m] : c.odd.parts)
      for (int k = 0; k < m; ++k) A = complex_sum(A, hallie::shift(*F_, embed(reg_->rep(i))));
    const Obj h = insert(std::move(A), c);
    std::lock_guard lk(mu_);
    return canonical_.emplace(c, h).first->second;
  }

  /// Registers an arbitrary complex; its class is computed from homology.
  Obj insert(Complex A) const { return insert(std::move(A), std::nullopt); }

  /// The handle of T applied to a handle; shift(shift(a)) == a.
  Obj shift(Obj a) const {
    {
      std::lock_guard lk(mu_);
      if (entries_[a]->shifted >= 0) return entries_[a]->shifted;
    }
    const Entry& e = entry(a);
    const Obj b = insert(hallie::shift(*F_, e.complex), e.cls.shift());
    std::lock_guard lk(mu_);
    if (entries_[a]->shifted >= 0) return entries_[a]->shifted;
    entries_[a]->shifted = b;
    entries_[b]->shifted = a;
    return b;
  }

  const Complex& complex(Obj a) const { return entry(a).complex; }
  const ObjClassId& class_of(Obj a) const { return entry(a).cls; }
  const Homology& homology_of(Obj a) const { return entry(a).hom; }

  /// Class of an arbitrary complex, read off its homology.
  ObjClassId classify(const Complex& A) const { return classify(homology(*F_, A)); }
  ObjClassId classify(const Homology& H) const {
    return {reg_->decompose(H.h0.rep), reg_->decompose(H.h1.rep)};
  }

  GrothClass groth(const ObjClassId& c) const {
    GrothClass g(reg_->quiver()->num_vertices(), 0);
    const DimVector e = reg_->dims_of(c.even), o = reg_->dims_of(c.odd);
    for (size_t v = 0; v < g.size(); ++v) g[v] = e[v] - o[v];
    return g;
  }
  GrothClass groth(const Complex& A) const {
    const Homology H = homology(*F_, A);
    GrothClass g(reg_->quiver()->num_vertices(), 0);
    for (size_t v = 0; v < g.size(); ++v) g[v] = H.h0.rep.dims[v] - H.h1.rep.dims[v];
    return g;
  }

  const HomSpace& hom(Obj a, Obj b) const {
    return cached(homs_, std::pair{a, b}, [&] { return HomSpace(*F_, complex(a), complex(b)); });
  }

  /// g o f for f in Hom(a, b), g in Hom(b, c), all as coordinates.
  std::vector<Elem> compose(Obj a, Obj b, Obj c, std::span<const Elem> g, std::span<const Elem> f) const {
    const CompTable& t = comp_table(a, b, c);
    std::vector<Elem> out(t.out_dim, 0);
    for (int i = 0; i < t.g_dim; ++i) {
      if (g[i] == 0) continue;
      for (int j = 0; j < t.f_dim; ++j) {
        if (f[j] == 0) continue;
        const Elem s = F_->mul(g[i], f[j]);
        const auto& v = t.products[i * t.f_dim + j];
        for (int k = 0; k < t.out_dim; ++k)
          if (v[k]) out[k] = F_->add(out[k], F_->mul(s, v[k]));
      }
    }
    return out;
  }

  /// T on morphisms: Hom(a, b) -> Hom(Ta, Tb).
  std::vector<Elem> shift_map(Obj a, Obj b, std::span<const Elem> u) const {
    const Obj ta = shift(a), tb = shift(b);
    const Matrix& m = cached(shift_maps_, std::pair{a, b}, [&] {
      const HomSpace& src = hom(a, b);
      const HomSpace& dst = hom(ta, tb);
      std::vector<std::vector<Elem>> cols;
      for (const auto& bm : src.basis()) cols.push_back(dst.coords(hallie::shift(bm)));
      return from_columns(dst.dim(), cols);
    });
    return apply(*F_, m, u);
  }

  std::vector<Elem> identity(Obj a) const { return hom(a, a).coords(identity_map(complex(a))); }
  std::vector<Elem> zero(Obj a, Obj b) const { return std::vector<Elem>(hom(a, b).dim(), 0); }

  const IsoTest& iso_test(Obj a, Obj b) const {
    return cached(iso_tests_, std::pair{a, b},
                  [&] { return IsoTest(*F_, hom(a, b), homology_of(a), homology_of(b)); });
  }

  /// A morphism is invertible iff it induces isomorphisms on H0 and H1.
  bool is_iso(Obj a, Obj b, std::span<const Elem> u) const { return iso_test(a, b)(u); }

  /// The inverse of an isomorphism a -> b, by solving u v = 1.
  std::vector<Elem> inverse(Obj a, Obj b, std::span<const Elem> u) const {
    const int n = hom(b, a).dim();
    std::vector<std::vector<Elem>> cols;
    for (int k = 0; k < n; ++k) {
      std::vector<Elem> e(n, 0);
      e[k] = 1;
      cols.push_back(compose(b, a, b, u, e));
    }
    const auto sol = solve(*F_, from_columns(hom(b, b).dim(), cols), identity(b));
    if (!sol) throw ConsistencyError("inverse requested for a non-invertible morphism");
    check_consistency(compose(a, b, a, *sol, u) == identity(a), "two-sided inverse");
    return *sol;
  }

  const AutGroup& aut(Obj a) const {
    return cached(auts_, a, [&] {
      const int e = hom(a, a).dim();
      require_budget(count_vectors(F_->q(), e, budgets().elements), budgets().elements,
                     "endomorphisms of " + class_of(a).str());
      AutGroup G;
      for_each_vector(*F_, e, [&](const std::vector<Elem>& c) {
        if (!is_iso(a, a, c)) return;
        G.index.emplace(c, static_cast<int>(G.elements.size()));
        G.elements.push_back(c);
      });
      require_budget(G.order(), budgets().group_order, "automorphism group of " + class_of(a).str());
      G.identity = G.index.at(identity(a));
      for (const auto& x : G.elements) G.inverse.push_back(G.index.at(inverse(a, a, x)));
      return G;
    });
  }

  std::optional<std::vector<Elem>> find_iso(Obj a, Obj b, unsigned seed = 0) const {
    return iso_test(a, b).find(hom(a, b).dim(), budgets().elements, seed);
  }

 private:
  struct Entry {
    Complex complex;
    ObjClassId cls;
    Homology hom;
    Obj shifted = -1;
  };
  struct CompTable {
    int g_dim = 0, f_dim = 0, out_dim = 0;
    std::vector<std::vector<Elem>> products;
  };

  Obj insert(Complex A, std::optional<ObjClassId> cls) const {
    require_budget(A.summands(), budgets().projective_summands, "projective summands of a complex");
    auto e = std::make_unique<Entry>();
    e->hom = homology(*F_, A);
    e->cls = cls ? *cls : classify(e->hom);
    e->complex = std::move(A);
    std::lock_guard lk(mu_);
    entries_.push_back(std::move(e));
    return static_cast<Obj>(entries_.size() - 1);
  }

  const Entry& entry(Obj a) const {
    std::lock_guard lk(mu_);
    return *entries_.at(a);
  }

  const CompTable& comp_table(Obj a, Obj b, Obj c) const {
    return cached(comps_, std::tuple{a, b, c}, [&] {
      const HomSpace &ab = hom(a, b), &bc = hom(b, c), &ac = hom(a, c);
      CompTable t{bc.dim(), ab.dim(), ac.dim(), {}};
      for (const auto& g : bc.basis())
        for (const auto& f : ab.basis()) t.products.push_back(ac.coords(hallie::compose(*F_, g, f)));
      return t;
    });
  }

  template <class Map, class Key, class Fn>
  const typename Map::mapped_type::element_type& cached(Map& m, const Key& k, Fn&& make) const {
    {
      std::lock_guard lk(mu_);
      if (auto it = m.find(k); it != m.end()) return *it->second;
    }
    auto v = std::make_unique<typename Map::mapped_type::element_type>(make());
    std::lock_guard lk(mu_);
    return *m.emplace(k, std::move(v)).first->second;
  }

  const ModuleRegistry* reg_;
  FieldPtr F_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Entry>> entries_;
  mutable std::map<ObjClassId, Obj> canonical_;
  mutable std::map<std::pair<Obj, Obj>, std::unique_ptr<HomSpace>> homs_;
  mutable std::map<std::pair<Obj, Obj>, std::unique_ptr<Matrix>> shift_maps_;
  mutable std::map<std::pair<Obj, Obj>, std::unique_ptr<IsoTest>> iso_tests_;
  mutable std::map<std::tuple<Obj, Obj, Obj>, std::unique_ptr<CompTable>> comps_;
  mutable std::map<Obj, std::unique_ptr<AutGroup>> auts_;
};

}  // namespace hallie
