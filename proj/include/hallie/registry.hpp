// Indecomposable representations up to isomorphism, Krull-Schmidt decomposition,
// endomorphism data and Ext dimensions.
#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hallie/budget.hpp"
#include "hallie/numeric.hpp"
#include "hallie/representation.hpp"

namespace hallie {

/// Dimension vectors d with d <= per_vertex componentwise and sum(d) <= total.
struct Bound {
  DimVector per_vertex;
  int total = 0;

  static Bound total_dim(int vertices, int t) { return {DimVector(vertices, t), t}; }
  bool contains(const DimVector& d) const {
    int s = 0;
    for (size_t i = 0; i < d.size(); ++i) {
      if (d[i] > per_vertex[i]) return false;
      s += d[i];
    }
    return s <= total;
  }
  std::string str() const {
    std::string s;
    for (size_t i = 0; i < per_vertex.size(); ++i) s += (i ? "," : "") + std::to_string(per_vertex[i]);
    return s + "|" + std::to_string(total);
  }
};

inline bool dims_leq(const DimVector& a, const DimVector& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline DimVector dims_add(const DimVector& a, const DimVector& b) {
  DimVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline int dims_total(const DimVector& d) { return std::accumulate(d.begin(), d.end(), 0); }

/// An isomorphism class of modules: sorted (registry index, multiplicity) pairs.
struct IsoClassId {
  std::vector<std::pair<int, int>> parts;

  static IsoClassId single(int i, int m = 1) { return {{{i, m}}}; }
  bool is_zero() const { return parts.empty(); }
  int num_summands() const {
    int s = 0;
    for (auto [i, m] : parts) s += m;
    return s;
  }
  bool indecomposable() const { return parts.size() == 1 && parts[0].second == 1; }
  int index() const { return parts.at(0).first; }
  int multiplicity(int i) const {
    for (auto [j, m] : parts)
      if (j == i) return m;
    return 0;
  }
  IsoClassId plus(const IsoClassId& o) const {
    std::map<int, int> acc;
    for (auto [i, m] : parts) acc[i] += m;
    for (auto [i, m] : o.parts) acc[i] += m;
    return {{acc.begin(), acc.end()}};
  }
  /// "[i:m,...]", "[]" for the zero module.
  std::string str() const {
    std::string s = "[";
    for (size_t k = 0; k < parts.size(); ++k)
      s += (k ? "," : "") + std::to_string(parts[k].first) + ":" + std::to_string(parts[k].second);
    return s + "]";
  }
  static IsoClassId parse(std::string_view s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw InputError("bad class id '" + std::string(s) + "'");
    IsoClassId c;
    s = s.substr(1, s.size() - 2);
    while (!s.empty()) {
      const size_t comma = s.find(',');
      std::string_view item = s.substr(0, comma);
      const size_t colon = item.find(':');
      if (colon == std::string_view::npos) throw InputError("bad class id item '" + std::string(item) + "'");
      int i = 0, m = 0;
      auto r1 = std::from_chars(item.data(), item.data() + colon, i);
      auto r2 = std::from_chars(item.data() + colon + 1, item.data() + item.size(), m);
      if (r1.ec != std::errc() || r2.ec != std::errc() || m <= 0)
        throw InputError("bad class id item '" + std::string(item) + "'");
      c.parts.emplace_back(i, m);
      s = comma == std::string_view::npos ? std::string_view() : s.substr(comma + 1);
    }
    std::sort(c.parts.begin(), c.parts.end());
    return c;
  }
  auto operator<=>(const IsoClassId&) const = default;
};

struct EndData {
  int end_dim = 0;
  int rad_dim = 0;
  /// Only set for indecomposables.
  std::optional<int> d;
  BigInt aut_order = 1;
};

namespace detail {

// Enumerates End(M) and decides whether it is local. Returns EndData with d set
// when it is, nothing otherwise.
inline std::optional<EndData> local_end_data(const Representation& M, const Budgets& budget) {
  const Field& F = *M.field;
  const Matrix B = hom_basis_flat(M, M);
  const int e = B.cols();
  MapLayout lay(M.dims, M.dims);
  auto is_unit = [&](const VertexMaps& m) {
    for (const auto& x : m)
      if (!is_invertible(F, x)) return false;
    return true;
  };
  auto is_nilpotent = [&](const VertexMaps& m) {
    for (const auto& x : m) {
      Matrix p = x;
      for (int k = 1; k < std::max(1, x.rows()); ++k) p = mul(F, p, x);
      if (!p.is_zero()) return false;
    }
    return true;
  };
  // Quick rejection: a local algebra has no element that is neither a unit nor nilpotent.
  for (int c = 0; c < e; ++c) {
    const VertexMaps m = lay.unflatten(B.column(c));
    if (!is_unit(m) && !is_nilpotent(m)) return std::nullopt;
  }
  require_budget(count_vectors(F.q(), e, budget.elements), budget.elements, "endomorphism enumeration");
  Matrix nonunits(lay.size, 0);
  std::vector<std::vector<Elem>> nu;
  long long units = 0;
  for_each_vector(F, e, [&](const std::vector<Elem>& c) {
    const std::vector<Elem> v = apply(F, B, c);
    if (is_unit(lay.unflatten(v)))
      ++units;
    else
      nu.push_back(v);
  });
  const int r = rank(F, from_columns(lay.size, nu));
  const BigInt total = ipow(F.q(), e);
  if (BigInt(static_cast<long long>(nu.size())) != ipow(F.q(), r)) return std::nullopt;
  EndData d;
  d.end_dim = e;
  d.rad_dim = r;
  d.d = e - r;
  d.aut_order = units;
  check_consistency(d.aut_order == ipow(F.q(), r) * (ipow(F.q(), e - r) - 1), "|Aut M| = q^r (q^d - 1)");
  check_consistency(total == d.aut_order + BigInt(static_cast<long long>(nu.size())), "End = units + radical");
  return d;
}

}  // namespace detail

/// Representatives of the indecomposable representations with dimension vector in a bound,
/// one per isomorphism class, found by exhaustive orbit enumeration over arrow-matrix tuples.
class ModuleRegistry {
 public:
  ModuleRegistry(QuiverPtr Q, FieldPtr F, Bound bound, Budgets budget = {})
      : quiver_(std::move(Q)), field_(std::move(F)), bound_(std::move(bound)), budget_(budget) {
    enumerate();
    const int r = size();
    hom_.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) hom_[i][j] = hallie::hom_dim(items_[i].rep, items_[j].rep);
    complete_ = false;
    if (quiver_->is_dynkin()) {
      complete_ = true;
      for (const auto& root : quiver_->positive_roots())
        if (!bound_.contains(root)) complete_ = false;
    }
  }

  QuiverPtr quiver() const { return quiver_; }
  FieldPtr field() const { return field_; }
  const Bound& bound() const { return bound_; }
  const Budgets& budgets() const { return budget_; }
  int size() const { return static_cast<int>(items_.size()); }
  const Representation& rep(int i) const { return items_.at(i).rep; }
  const DimVector& dims(int i) const { return items_.at(i).rep.dims; }
  const EndData& end(int i) const { return items_.at(i).end; }
  int d(int i) const { return *items_.at(i).end.d; }
  int hom_dim(int i, int j) const { return hom_[i][j]; }
  /// Every indecomposable of the quiver is in the registry (Dynkin, all positive roots in bound).
  bool complete() const { return complete_; }

  Representation zero() const { return Representation::zero(quiver_, field_); }

  Representation realize(const IsoClassId& c) const {
    std::vector<Representation> parts;
    for (auto [i, m] : c.parts)
      for (int k = 0; k < m; ++k) parts.push_back(rep(i));
    return direct_sum(parts, quiver_, field_);
  }

  DimVector dims_of(const IsoClassId& c) const {
    DimVector d(quiver_->num_vertices(), 0);
    for (auto [i, m] : c.parts)
      for (int v = 0; v < quiver_->num_vertices(); ++v) d[v] += m * dims(i)[v];
    return d;
  }

  EndData end_data(const IsoClassId& c) const {
    EndData out;
    if (c.is_zero()) return out;
    int ss = 0;
    out.aut_order = 1;
    int end_dim = 0;
    for (auto [i, m] : c.parts) {
      ss += m * m * d(i);
      out.aut_order *= gl_order(ipow(field_->q(), d(i)).convert_to<long long>(), m);
      for (auto [j, n] : c.parts) end_dim += m * n * hom_[i][j];
    }
    out.end_dim = end_dim;
    out.rad_dim = end_dim - ss;
    out.aut_order *= ipow(field_->q(), out.rad_dim);
    if (c.indecomposable()) out.d = d(c.index());
    return out;
  }

  EndData end_data(const Representation& M) const { return end_data(decompose(M)); }

  /// Krull-Schmidt decomposition into registry indecomposables.
  IsoClassId decompose(const Representation& M) const {
    if (M.is_zero()) return {};
    if (!bound_.contains(M.dims) && !complete_)
      throw BoundExceeded("dimension vector " + dims_str(M.dims) + " is outside the registry bound " + bound_.str());
    std::vector<int> cand;
    for (int j = 0; j < size(); ++j)
      if (dims_leq(dims(j), M.dims)) cand.push_back(j);
    const int k = static_cast<int>(cand.size());
    std::vector<std::vector<long long>> A;
    std::vector<long long> b;
    for (int i : cand) {
      std::vector<long long> row(k), col(k);
      for (int t = 0; t < k; ++t) {
        row[t] = hom_[i][cand[t]];
        col[t] = hom_[cand[t]][i];
      }
      A.push_back(row);
      b.push_back(hallie::hom_dim(rep(i), M));
      A.push_back(col);
      b.push_back(hallie::hom_dim(M, rep(i)));
    }
    if (auto sol = solve_rational(A, b)) {
      IsoClassId c;
      for (int t = 0; t < k; ++t) {
        const Rational& x = (*sol)[t];
        if (x.denominator() != 1 || x.numerator() < 0) return fail(M);
        if (x.numerator() > 0) c.parts.emplace_back(cand[t], static_cast<int>(x.numerator()));
      }
      if (dims_of(c) != M.dims) return fail(M);
      return c;
    }
    return decompose_by_idempotents(M);
  }

  bool is_isomorphic(const Representation& M, const Representation& N) const {
    return M.dims == N.dims && decompose(M) == decompose(N);
  }

  /// All classes (multisets of registry entries) whose dimension vector lies in b,
  /// ordered by total dimension, then dimension vector, then parts.
  std::vector<IsoClassId> classes_within(const Bound& b) const {
    std::vector<IsoClassId> out;
    IsoClassId cur;
    DimVector dv(quiver_->num_vertices(), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == size()) {
        out.push_back(cur);
        return;
      }
      rec(i + 1);
      int m = 0;
      DimVector d2 = dv;
      while (true) {
        d2 = dims_add(d2, dims(i));
        if (!b.contains(d2)) break;
        ++m;
        cur.parts.emplace_back(i, m);
        DimVector saved = dv;
        dv = d2;
        rec(i + 1);
        dv = saved;
        cur.parts.pop_back();
      }
    };
    rec(0);
    for (auto& c : out) std::sort(c.parts.begin(), c.parts.end());
    std::sort(out.begin(), out.end(), [&](const IsoClassId& x, const IsoClassId& y) {
      const DimVector dx = dims_of(x), dy = dims_of(y);
      const int tx = dims_total(dx), ty = dims_total(dy);
      if (tx != ty) return tx < ty;
      if (dx != dy) return dx < dy;
      return x < y;
    });
    return out;
  }

  static std::string dims_str(const DimVector& d) {
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
  }

 private:
  struct Item {
    Representation rep;
    EndData end;
    long long tuple_index;
  };

  IsoClassId fail(const Representation& M) const {
    if (bound_.contains(M.dims) || complete_)
      throw ConsistencyError("Hom fingerprint of a module in bound has no decomposition: dims " + dims_str(M.dims));
    throw BoundExceeded("module with dims " + dims_str(M.dims) + " has a summand outside the registry");
  }

  // Splits off idempotents until the pieces are indecomposable, then identifies each.
  IsoClassId decompose_by_idempotents(const Representation& M) const {
    const Field& F = *field_;
    const Matrix B = hom_basis_flat(M, M);
    MapLayout lay(M.dims, M.dims);
    require_budget(count_vectors(F.q(), B.cols(), budget_.elements), budget_.elements, "idempotent search");
    std::optional<VertexMaps> idem;
    const VertexMaps one = identity_maps(M.dims);
    for_each_vector(F, B.cols(), [&](const std::vector<Elem>& c) {
      if (idem) return;
      VertexMaps e = lay.unflatten(apply(F, B, c));
      bool zero = true, ident = true;
      for (size_t v = 0; v < e.size(); ++v) {
        if (!e[v].is_zero()) zero = false;
        if (!(e[v] == one[v])) ident = false;
      }
      if (zero || ident) return;
      if (compose(F, e, e) == e) idem = std::move(e);
    });
    if (!idem) return identify_indecomposable(M);
    VertexMaps im1, im2;
    const VertexMaps comp = add(F, one, negate(F, *idem));
    for (size_t v = 0; v < one.size(); ++v) {
      im1.push_back(column_space(F, (*idem)[v]));
      im2.push_back(column_space(F, comp[v]));
    }
    return decompose(subquotient(M, im1).rep).plus(decompose(subquotient(M, im2).rep));
  }

  IsoClassId identify_indecomposable(const Representation& M) const {
    const Field& F = *field_;
    for (int j = 0; j < size(); ++j) {
      if (dims(j) != M.dims) continue;
      const Matrix B = hom_basis_flat(M, rep(j));
      MapLayout lay(M.dims, M.dims);
      require_budget(count_vectors(F.q(), B.cols(), budget_.elements), budget_.elements, "isomorphism search");
      bool found = false;
      for_each_vector(F, B.cols(), [&](const std::vector<Elem>& c) {
        if (found) return;
        const VertexMaps m = lay.unflatten(apply(F, B, c));
        found = std::all_of(m.begin(), m.end(), [&](const Matrix& x) { return is_invertible(F, x); });
      });
      if (found) return IsoClassId::single(j);
    }
    return fail(M);
  }

  void enumerate() {
    const Quiver& Q = *quiver_;
    const int n = Q.num_vertices();
    std::vector<DimVector> cands;
    DimVector d(n, 0);
    std::function<void(int)> rec = [&](int v) {
      if (v == n) {
        if (dims_total(d) > 0 && bound_.contains(d) && Q.tits_form(d) <= 1 && Q.support_connected(d))
          cands.push_back(d);
        return;
      }
      for (int x = 0; x <= bound_.per_vertex[v]; ++x) {
        d[v] = x;
        rec(v + 1);
      }
      d[v] = 0;
    };
    rec(0);
    std::sort(cands.begin(), cands.end(), [](const DimVector& a, const DimVector& b) {
      const int ta = dims_total(a), tb = dims_total(b);
      return ta != tb ? ta < tb : a < b;
    });
    for (const auto& dv : cands) enumerate_dims(dv);
  }

  void enumerate_dims(const DimVector& dv) {
    const Quiver& Q = *quiver_;
    const Field& F = *field_;
    const int q = F.q();
    std::vector<int> offset;
    int E = 0;
    for (const auto& a : Q.arrows()) {
      offset.push_back(E);
      E += dv[a.source] * dv[a.target];
    }
    const long long N = count_vectors(q, E, budget_.tuples);
    require_budget(N, budget_.tuples, "arrow-matrix tuples for dims " + dims_str(dv));

    auto decode = [&](long long idx) {
      Representation R = Representation::zero(quiver_, field_);
      R.dims = dv;
      for (int a = 0; a < Q.num_arrows(); ++a) {
        const auto& ar = Q.arrow(a);
        Matrix m(dv[ar.target], dv[ar.source]);
        for (auto& x : m.data()) {
          x = static_cast<Elem>(idx % q);
          idx /= q;
        }
        R.arrow_maps[a] = std::move(m);
      }
      return R;
    };
    auto encode = [&](const Representation& R) {
      long long idx = 0, base = 1;
      for (int a = 0; a < Q.num_arrows(); ++a)
        for (Elem x : R.arrow_maps[a].data()) {
          idx += base * x;
          base *= q;
        }
      return idx;
    };

    // Generators of prod_v GL(d_v): transvections with F_p-basis coefficients and one
    // primitive diagonal entry per position.
    struct Gen {
      int vertex;
      Matrix g, ginv;
    };
    std::vector<Gen> gens;
    for (int v = 0; v < Q.num_vertices(); ++v) {
      const int k = dv[v];
      for (int r = 0; r < k; ++r) {
        Matrix g = Matrix::identity(k);
        g(r, r) = F.primitive();
        gens.push_back({v, g, inverse(F, g)});
        for (int c = 0; c < k; ++c) {
          if (c == r) continue;
          for (Elem b : F.prime_basis()) {
            Matrix t = Matrix::identity(k);
            t(r, c) = b;
            gens.push_back({v, t, inverse(F, t)});
          }
        }
      }
    }

    std::vector<long long> parent(N);
    std::iota(parent.begin(), parent.end(), 0LL);
    auto find = [&](long long x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (long long i = 0; i < N; ++i) {
      const Representation R = decode(i);
      for (const auto& gen : gens) {
        Representation S = R;
        for (int a = 0; a < Q.num_arrows(); ++a) {
          const auto& ar = Q.arrow(a);
          if (ar.target == gen.vertex) S.arrow_maps[a] = mul(F, gen.g, S.arrow_maps[a]);
          if (ar.source == gen.vertex) S.arrow_maps[a] = mul(F, S.arrow_maps[a], gen.ginv);
        }
        const long long a = find(i), b = find(encode(S));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (long long i = 0; i < N; ++i) {
      if (find(i) != i) continue;
      Representation R = decode(i);
      if (auto ed = detail::local_end_data(R, budget_)) items_.push_back({std::move(R), *ed, i});
    }
  }

  QuiverPtr quiver_;
  FieldPtr field_;
  Bound bound_;
  Budgets budget_;
  std::vector<Item> items_;
  std::vector<std::vector<int>> hom_;
  bool complete_ = false;
};

/// (<dim M, dim N>, dim Ext^1(M, N)), Ext^1 as the cokernel of
/// (phi_i) -> (phi_t M_a - N_a phi_s) over the arrows a: s -> t.
inline std::pair<long long, int> euler_and_ext(const Representation& M, const Representation& N) {
  require_same_field(M, N);
  const Field& F = *M.field;
  const Quiver& Q = *M.quiver;
  MapLayout vlay(M.dims, N.dims);
  int rows = 0;
  std::vector<int> aoff;
  for (const auto& a : Q.arrows()) {
    aoff.push_back(rows);
    rows += N.dims[a.target] * M.dims[a.source];
  }
  Matrix delta(rows, vlay.size);
  for (int a = 0; a < Q.num_arrows(); ++a) {
    const auto& ar = Q.arrow(a);
    const int s = ar.source, t = ar.target;
    for (int r = 0; r < N.dims[t]; ++r)
      for (int c = 0; c < M.dims[s]; ++c) {
        const int row = aoff[a] + r * M.dims[s] + c;
        for (int k = 0; k < M.dims[t]; ++k)
          delta(row, vlay.var(t, r, k)) = F.add(delta(row, vlay.var(t, r, k)), M.arrow_maps[a](k, c));
        for (int k = 0; k < N.dims[s]; ++k)
          delta(row, vlay.var(s, k, c)) = F.sub(delta(row, vlay.var(s, k, c)), N.arrow_maps[a](r, k));
      }
  }
  const int ext = rows - rank(F, delta);
  return {Q.euler_form(M.dims, N.dims), ext};
}

}  // namespace hallie
