// Quiver representations over F_q and the linear algebra of their morphisms.
#pragma once

#include <functional>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "hallie/ffield.hpp"
#include "hallie/quiver.hpp"

namespace hallie {

using QuiverPtr = std::shared_ptr<const Quiver>;
using VertexMaps = std::vector<Matrix>;

struct Representation {
  QuiverPtr quiver;
  FieldPtr field;
  DimVector dims;
  /// arrow_maps[a] has shape dims[target(a)] x dims[source(a)].
  std::vector<Matrix> arrow_maps;

  static Representation zero(QuiverPtr Q, FieldPtr F) {
    Representation r{Q, F, DimVector(Q->num_vertices(), 0), {}};
    for (const auto& a : Q->arrows()) r.arrow_maps.emplace_back(0, 0), (void)a;
    return r;
  }
  int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
  bool is_zero() const { return total_dim() == 0; }
  bool shapes_valid() const {
    if (static_cast<int>(arrow_maps.size()) != quiver->num_arrows()) return false;
    for (int a = 0; a < quiver->num_arrows(); ++a) {
      const auto& ar = quiver->arrow(a);
      if (arrow_maps[a].rows() != dims[ar.target] || arrow_maps[a].cols() != dims[ar.source]) return false;
    }
    return true;
  }
  friend bool operator==(const Representation& a, const Representation& b) {
    return a.dims == b.dims && a.arrow_maps == b.arrow_maps;
  }
};

/// A morphism of representations: one matrix per vertex, dims[target] x dims[source].
struct Morphism {
  Representation source, target;
  VertexMaps maps;

  bool intertwines() const {
    const Field& F = *source.field;
    for (int a = 0; a < source.quiver->num_arrows(); ++a) {
      const auto& ar = source.quiver->arrow(a);
      if (!(mul(F, maps[ar.target], source.arrow_maps[a]) == mul(F, target.arrow_maps[a], maps[ar.source])))
        return false;
    }
    return true;
  }
  bool is_zero() const {
    for (const auto& m : maps)
      if (!m.is_zero()) return false;
    return true;
  }
};

inline void require_same_field(const Representation& M, const Representation& N) {
  if (M.field->q() != N.field->q() || M.quiver.get() != N.quiver.get())
    throw InputError("representations over different fields or quivers");
}

inline VertexMaps zero_maps(const DimVector& src, const DimVector& tgt) {
  VertexMaps m;
  for (size_t i = 0; i < src.size(); ++i) m.emplace_back(tgt[i], src[i]);
  return m;
}

inline VertexMaps identity_maps(const DimVector& d) {
  VertexMaps m;
  for (int x : d) m.push_back(Matrix::identity(x));
  return m;
}

inline VertexMaps compose(const Field& F, const VertexMaps& outer, const VertexMaps& inner) {
  VertexMaps r;
  r.reserve(outer.size());
  for (size_t i = 0; i < outer.size(); ++i) r.push_back(mul(F, outer[i], inner[i]));
  return r;
}

inline VertexMaps add(const Field& F, const VertexMaps& a, const VertexMaps& b) {
  VertexMaps r;
  for (size_t i = 0; i < a.size(); ++i) r.push_back(add(F, a[i], b[i]));
  return r;
}

inline VertexMaps negate(const Field& F, const VertexMaps& a) {
  VertexMaps r;
  for (const auto& m : a) r.push_back(negate(F, m));
  return r;
}

/// Coordinates of a tuple of vertex matrices laid out consecutively (row-major per vertex).
struct MapLayout {
  DimVector src, tgt;
  std::vector<int> offset;
  int size = 0;

  MapLayout() = default;
  MapLayout(DimVector s, DimVector t) : src(std::move(s)), tgt(std::move(t)) {
    for (size_t i = 0; i < src.size(); ++i) {
      offset.push_back(size);
      size += src[i] * tgt[i];
    }
  }
  int var(int vertex, int r, int c) const { return offset[vertex] + r * src[vertex] + c; }
  std::vector<Elem> flatten(const VertexMaps& m) const {
    std::vector<Elem> v(size);
    for (size_t i = 0; i < src.size(); ++i)
      for (int r = 0; r < tgt[i]; ++r)
        for (int c = 0; c < src[i]; ++c) v[var(static_cast<int>(i), r, c)] = m[i](r, c);
    return v;
  }
  VertexMaps unflatten(std::span<const Elem> v) const {
    VertexMaps m;
    for (size_t i = 0; i < src.size(); ++i) {
      Matrix x(tgt[i], src[i]);
      for (int r = 0; r < tgt[i]; ++r)
        for (int c = 0; c < src[i]; ++c) x(r, c) = v[var(static_cast<int>(i), r, c)];
      m.push_back(std::move(x));
    }
    return m;
  }
};

/// Sparse builder for homogeneous linear systems over F_q.
class LinearSystem {
 public:
  explicit LinearSystem(int vars) : vars_(vars) {}
  int vars() const { return vars_; }
  void begin_row() { rows_.emplace_back(); }
  void add_term(int var, Elem coeff) {
    if (coeff != 0) rows_.back().emplace_back(var, coeff);
  }
  Matrix matrix(const Field& F) const {
    Matrix m(static_cast<int>(rows_.size()), vars_);
    for (size_t r = 0; r < rows_.size(); ++r)
      for (auto [v, c] : rows_[r]) m(static_cast<int>(r), v) = F.add(m(static_cast<int>(r), v), c);
    return m;
  }

  // Adds equations  X * A - B * Y = 0 entrywise, where X, Y are unknown blocks
  // (described by a MapLayout vertex) and A, B are constant matrices.
  // Either side may be absent (pass vertex < 0).
  void add_intertwine(const Field& F, const MapLayout& lx, int vx, const Matrix& A, const Matrix& B,
                      const MapLayout& ly, int vy, int rows, int cols) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        begin_row();
        if (vx >= 0)
          for (int k = 0; k < A.rows(); ++k) add_term(lx.var(vx, r, k), A(k, c));
        if (vy >= 0)
          for (int k = 0; k < B.cols(); ++k) add_term(ly.var(vy, k, c), F.neg(B(r, k)));
      }
  }

 private:
  int vars_;
  std::vector<std::vector<std::pair<int, Elem>>> rows_;
};

/// Columns of the returned matrix are a basis of Hom(M, N), flattened by MapLayout(M.dims, N.dims).
inline Matrix hom_basis_flat(const Representation& M, const Representation& N) {
  require_same_field(M, N);
  const Field& F = *M.field;
  MapLayout lay(M.dims, N.dims);
  LinearSystem sys(lay.size);
  for (int a = 0; a < M.quiver->num_arrows(); ++a) {
    const auto& ar = M.quiver->arrow(a);
    // phi_t * M_a - N_a * phi_s = 0
    sys.add_intertwine(F, lay, ar.target, M.arrow_maps[a], N.arrow_maps[a], lay, ar.source, N.dims[ar.target],
                       M.dims[ar.source]);
  }
  return kernel_basis(F, sys.matrix(F));
}

inline std::vector<Morphism> hom_basis(const Representation& M, const Representation& N) {
  const Matrix B = hom_basis_flat(M, N);
  MapLayout lay(M.dims, N.dims);
  std::vector<Morphism> out;
  for (int c = 0; c < B.cols(); ++c) out.push_back({M, N, lay.unflatten(B.column(c))});
  return out;
}

inline int hom_dim(const Representation& M, const Representation& N) { return hom_basis_flat(M, N).cols(); }

inline Representation direct_sum(std::span<const Representation> parts, QuiverPtr Q, FieldPtr F) {
  Representation r = Representation::zero(Q, F);
  for (const auto& p : parts) {
    require_same_field(r, p);
    for (int i = 0; i < Q->num_vertices(); ++i) r.dims[i] += p.dims[i];
    for (int a = 0; a < Q->num_arrows(); ++a) r.arrow_maps[a] = block_diag(r.arrow_maps[a], p.arrow_maps[a]);
  }
  return r;
}

inline Representation direct_sum(const Representation& A, const Representation& B) {
  const Representation parts[] = {A, B};
  return direct_sum(parts, A.quiver, A.field);
}

/// Block-diagonal sum of two vertex-map tuples.
inline VertexMaps block_diag(const VertexMaps& a, const VertexMaps& b) {
  VertexMaps r;
  for (size_t i = 0; i < a.size(); ++i) r.push_back(block_diag(a[i], b[i]));
  return r;
}

/// A subquotient Z/B of a representation with the data to move vectors in and out.
struct Subquotient {
  Representation rep;
  /// section[j]: columns lift a basis of (Z/B)_j into the ambient space.
  VertexMaps section;
  /// projection[j]: sends vectors of Z_j to coordinates in (Z/B)_j.
  VertexMaps projection;
};

/// Z[j], B[j] are column bases (B inside Z) of arrow-stable subspaces.
/// An empty optional for B means B = 0.
inline Subquotient subquotient(const Representation& M, const VertexMaps& Z, const VertexMaps* B = nullptr) {
  const Field& F = *M.field;
  const int n = M.quiver->num_vertices();
  Subquotient sq{Representation::zero(M.quiver, M.field), {}, {}};
  for (int j = 0; j < n; ++j) {
    const int amb = M.dims[j];
    Matrix Bb = B ? column_space(F, (*B)[j]) : Matrix(amb, 0);
    const int b = Bb.cols();
    Matrix S = Bb;
    Matrix C(amb, 0);
    for (int c = 0; c < Z[j].cols(); ++c) {
      Matrix col = submatrix(Z[j], 0, c, amb, 1);
      Matrix cand = hstack(S, col);
      if (rank(F, cand) == cand.cols()) {
        S = std::move(cand);
        C = hstack(C, col);
      }
    }
    const Matrix E = extend_to_basis(F, S);
    const Matrix Einv = inverse(F, E);
    sq.rep.dims[j] = C.cols();
    sq.section.push_back(C);
    sq.projection.push_back(submatrix(Einv, b, 0, C.cols(), amb));
  }
  for (int a = 0; a < M.quiver->num_arrows(); ++a) {
    const auto& ar = M.quiver->arrow(a);
    sq.rep.arrow_maps[a] = mul(F, sq.projection[ar.target], mul(F, M.arrow_maps[a], sq.section[ar.source]));
  }
  return sq;
}

struct KernelCokernel {
  Representation kernel;
  Morphism inclusion;
  Representation cokernel;
  Morphism projection;
};

inline KernelCokernel kernel_cokernel(const Morphism& f) {
  const Field& F = *f.source.field;
  const int n = f.source.quiver->num_vertices();
  VertexMaps kz, full, image;
  for (int j = 0; j < n; ++j) {
    kz.push_back(kernel_basis(F, f.maps[j]));
    full.push_back(Matrix::identity(f.target.dims[j]));
    image.push_back(f.maps[j]);
  }
  Subquotient ker = subquotient(f.source, kz);
  Subquotient cok = subquotient(f.target, full, &image);
  return {ker.rep, Morphism{ker.rep, f.source, ker.section}, cok.rep, Morphism{f.target, cok.rep, cok.projection}};
}

/// Top of M: at vertex j, a complement (chosen among standard vectors) of the
/// images of all arrows ending at j.
inline VertexMaps top_generators(const Representation& M) {
  const Field& F = *M.field;
  VertexMaps gens;
  for (int j = 0; j < M.quiver->num_vertices(); ++j) {
    Matrix rad(M.dims[j], 0);
    for (int a = 0; a < M.quiver->num_arrows(); ++a)
      if (M.quiver->arrow(a).target == j) rad = hstack(rad, M.arrow_maps[a]);
    const Matrix rb = column_space(F, rad);
    const Matrix E = extend_to_basis(F, rb);
    gens.push_back(submatrix(E, 0, rb.cols(), M.dims[j], M.dims[j] - rb.cols()));
  }
  return gens;
}

inline DimVector top_dims(const Representation& M) {
  DimVector t;
  for (const auto& g : top_generators(M)) t.push_back(g.cols());
  return t;
}

/// Paths starting at a vertex, grouped by end vertex: paths[j] lists arrow sequences.
inline std::vector<std::vector<std::vector<int>>> paths_from(const Quiver& Q, int i) {
  std::vector<std::vector<std::vector<int>>> paths(Q.num_vertices());
  std::function<void(int, std::vector<int>&)> walk = [&](int v, std::vector<int>& p) {
    paths[v].push_back(p);
    for (int a = 0; a < Q.num_arrows(); ++a)
      if (Q.arrow(a).source == v) {
        p.push_back(a);
        walk(Q.arrow(a).target, p);
        p.pop_back();
      }
  };
  std::vector<int> p;
  walk(i, p);
  return paths;
}

/// The indecomposable projective P(i): basis of P(i)_j = paths from i to j.
inline Representation projective(QuiverPtr Q, FieldPtr F, int i) {
  const auto paths = paths_from(*Q, i);
  Representation P = Representation::zero(Q, F);
  for (int j = 0; j < Q->num_vertices(); ++j) P.dims[j] = static_cast<int>(paths[j].size());
  for (int a = 0; a < Q->num_arrows(); ++a) {
    const auto& ar = Q->arrow(a);
    Matrix m(P.dims[ar.target], P.dims[ar.source]);
    for (int c = 0; c < P.dims[ar.source]; ++c) {
      auto ext = paths[ar.source][c];
      ext.push_back(a);
      const auto& tgt = paths[ar.target];
      for (int r = 0; r < P.dims[ar.target]; ++r)
        if (tgt[r] == ext) m(r, c) = 1;
    }
    P.arrow_maps[a] = std::move(m);
  }
  return P;
}

/// A direct sum of indecomposable projectives, generator by generator.
struct ProjectiveSum {
  std::vector<int> summand_vertices;
  Representation rep;
};

inline ProjectiveSum projective_sum(QuiverPtr Q, FieldPtr F, std::vector<int> vertices) {
  std::vector<Representation> parts;
  for (int v : vertices) parts.push_back(projective(Q, F, v));
  return {std::move(vertices), direct_sum(parts, Q, F)};
}

/// The morphism from a sum of projectives to M sending the generator of the
/// t-th summand P(v_t) to the vector gens[t] in M_{v_t}.
inline VertexMaps map_from_projectives(const ProjectiveSum& P, const Representation& M,
                                       const std::vector<std::vector<Elem>>& gens) {
  const Field& F = *M.field;
  const Quiver& Q = *M.quiver;
  VertexMaps maps = zero_maps(P.rep.dims, M.dims);
  std::vector<int> col(Q.num_vertices(), 0);
  for (size_t t = 0; t < P.summand_vertices.size(); ++t) {
    const auto paths = paths_from(Q, P.summand_vertices[t]);
    for (int j = 0; j < Q.num_vertices(); ++j)
      for (const auto& path : paths[j]) {
        std::vector<Elem> v = gens[t];
        for (int a : path) v = apply(F, M.arrow_maps[a], v);
        maps[j].set_column(col[j]++, v);
      }
  }
  return maps;
}

/// Minimal projective resolution 0 -> P1 -> P0 -> M -> 0.
struct ProjectiveResolution {
  ProjectiveSum p0, p1;
  VertexMaps cover;      // P0 -> M
  VertexMaps inclusion;  // P1 -> P0
};

inline ProjectiveResolution projective_resolution(const Representation& M) {
  const Field& F = *M.field;
  const int n = M.quiver->num_vertices();
  auto cover_of = [&](const Representation& R) {
    const VertexMaps gens = top_generators(R);
    std::vector<int> verts;
    std::vector<std::vector<Elem>> vecs;
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < gens[j].cols(); ++c) {
        verts.push_back(j);
        vecs.push_back(gens[j].column(c));
      }
    ProjectiveSum P = projective_sum(R.quiver, R.field, verts);
    VertexMaps m = map_from_projectives(P, R, vecs);
    return std::make_pair(std::move(P), std::move(m));
  };
  auto [p0, cover] = cover_of(M);
  Morphism pi{p0.rep, M, cover};
  KernelCokernel kc = kernel_cokernel(pi);
  check_consistency(kc.cokernel.is_zero(), "projective cover is onto");
  auto [p1, onto_kernel] = cover_of(kc.kernel);
  VertexMaps incl = compose(F, kc.inclusion.maps, onto_kernel);
  for (int j = 0; j < n; ++j)
    check_consistency(rank(F, incl[j]) == p1.rep.dims[j], "kernel of a projective cover is projective");
  return {std::move(p0), std::move(p1), std::move(cover), std::move(incl)};
}

/// Calls visit(basis) for every k-dimensional subspace of F_q^n; basis is n x k.
inline void for_each_subspace(const Field& F, int n, int k, const std::function<void(const Matrix&)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> piv(k);
  std::function<void(int, int)> choose = [&](int idx, int start) {
    if (idx == k) {
      // Free entries: row r, column c > piv[r] and c not a pivot.
      std::vector<std::pair<int, int>> free;
      std::vector<bool> is_piv(n, false);
      for (int p : piv) is_piv[p] = true;
      for (int r = 0; r < k; ++r)
        for (int c = piv[r] + 1; c < n; ++c)
          if (!is_piv[c]) free.emplace_back(r, c);
      std::vector<int> digit(free.size(), 0);
      while (true) {
        Matrix B(n, k);
        for (int r = 0; r < k; ++r) B(piv[r], r) = 1;
        for (size_t t = 0; t < free.size(); ++t) B(free[t].second, free[t].first) = static_cast<Elem>(digit[t]);
        visit(B);
        size_t t = 0;
        while (t < digit.size() && ++digit[t] == F.q()) digit[t++] = 0;
        if (t == digit.size()) break;
      }
      return;
    }
    for (int c = start; c <= n - (k - idx); ++c) {
      piv[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
}

/// Calls visit(U) for every subrepresentation U of M (U[j] a column basis of U_j).
inline void for_each_subrepresentation(const Representation& M, const std::function<void(const VertexMaps&)>& visit) {
  const Field& F = *M.field;
  const Quiver& Q = *M.quiver;
  const auto& order = Q.topological_order();
  const int n = Q.num_vertices();
  VertexMaps U(n);
  std::function<void(int)> step = [&](int idx) {
    if (idx == n) {
      visit(U);
      return;
    }
    const int j = order[idx];
    // Subspace must contain the images of the already chosen predecessors.
    Matrix need(M.dims[j], 0);
    for (int a = 0; a < Q.num_arrows(); ++a)
      if (Q.arrow(a).target == j) need = hstack(need, mul(F, M.arrow_maps[a], U[Q.arrow(a).source]));
    const int need_rank = rank(F, need);
    for (int k = need_rank; k <= M.dims[j]; ++k)
      for_each_subspace(F, M.dims[j], k, [&](const Matrix& B) {
        if (need_rank > 0 && rank(F, hstack(B, need)) != k) return;
        U[j] = B;
        step(idx + 1);
      });
  };
  step(0);
}

}  // namespace hallie
