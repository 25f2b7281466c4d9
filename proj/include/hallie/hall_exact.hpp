// Hall numbers of the module category and the Ringel-Hall product, with
// associativity, commutator and freeness checks.
#pragma once

#include <atomic>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "hallie/registry.hpp"
#include "hallie/report.hpp"

namespace hallie {

/// (X, Y) -> F_{XY}^L for one middle term L.
using HallRow = std::map<std::pair<IsoClassId, IsoClassId>, long long>;

/// Counts submodules U of L by the classes of (L/U, U).
inline HallRow compute_hall_row(const ModuleRegistry& R, const IsoClassId& L) {
  const Representation M = R.realize(L);
  const int n = R.quiver()->num_vertices();
  HallRow row;
  for_each_subrepresentation(M, [&](const VertexMaps& U) {
    VertexMaps full;
    for (int j = 0; j < n; ++j) full.push_back(Matrix::identity(M.dims[j]));
    const IsoClassId Y = R.decompose(subquotient(M, U).rep);
    const IsoClassId X = R.decompose(subquotient(M, full, &U).rep);
    ++row[{X, Y}];
  });
  return row;
}

/// Memoized Hall numbers F_{XY}^L for middle terms L inside a bound.
class HallTable {
 public:
  HallTable(const ModuleRegistry& R, Bound bound) : reg_(&R), bound_(std::move(bound)) {
    for (size_t i = 0; i < bound_.per_vertex.size(); ++i)
      if (bound_.per_vertex[i] > R.bound().per_vertex[i] && !R.complete())
        throw BoundExceeded("Hall table bound " + bound_.str() + " exceeds the registry bound " + R.bound().str());
  }
  explicit HallTable(const ModuleRegistry& R) : HallTable(R, R.bound()) {}

  const ModuleRegistry& registry() const { return *reg_; }
  const Bound& bound() const { return bound_; }
  std::string digest() const { return reg_->quiver()->digest(); }
  int q() const { return reg_->field()->q(); }

  /// Row of L, computed on first use.
  const HallRow& row(const IsoClassId& L) const {
    require_in_bound(L);
    {
      std::lock_guard lk(mu_);
      if (auto it = rows_.find(L); it != rows_.end()) return it->second;
    }
    HallRow r = compute_hall_row(*reg_, L);
    std::lock_guard lk(mu_);
    return rows_.emplace(L, std::move(r)).first->second;
  }

  long long number(const IsoClassId& X, const IsoClassId& Y, const IsoClassId& L) const {
    require_in_bound(L);
    if (dims_add(reg_->dims_of(X), reg_->dims_of(Y)) != reg_->dims_of(L)) return 0;
    const HallRow& r = row(L);
    auto it = r.find({X, Y});
    return it == r.end() ? 0 : it->second;
  }

  /// Fills the rows of every class in the bound, using up to jobs threads.
  void compute_all(int jobs = 1) const {
    std::vector<IsoClassId> todo;
    {
      std::lock_guard lk(mu_);
      for (auto& c : reg_->classes_within(bound_))
        if (!rows_.count(c)) todo.push_back(std::move(c));
    }
    std::vector<HallRow> out(todo.size());
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
      try {
        for (size_t i; (i = next++) < todo.size();) out[i] = compute_hall_row(*reg_, todo[i]);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
        next = todo.size();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    std::lock_guard lk(mu_);
    for (size_t i = 0; i < todo.size(); ++i) rows_.emplace(todo[i], std::move(out[i]));
  }

  const std::map<IsoClassId, HallRow>& rows() const { return rows_; }

  std::string header() const { return "# hall-table;digest=" + digest() + ";q=" + std::to_string(q()) + ";bound=" + bound_.str(); }

  /// Rows "X;Y;L;F" in class order between a header line and "# end".
  void write_csv(std::ostream& os) const {
    std::lock_guard lk(mu_);
    os << header() << "\n";
    for (const auto& [L, r] : rows_)
      for (const auto& [xy, f] : r) os << xy.first.str() << ";" << xy.second.str() << ";" << L.str() << ";" << f << "\n";
    os << "# end\n";
  }

  /// Loads rows written by write_csv. A header for another quiver, field or bound, a
  /// malformed row or a missing end marker is rejected and nothing is merged.
  void read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != header())
      throw InputError("Hall cache header mismatch: expected '" + header() + "', found '" + line + "'");
    std::map<IsoClassId, HallRow> loaded;
    bool ended = false;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (line == "# end") {
        ended = true;
        break;
      }
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string item; std::getline(ss, item, ';');) f.push_back(item);
      if (f.size() != 4) throw InputError("malformed Hall cache row '" + line + "'");
      long long v = 0;
      try {
        v = std::stoll(f[3]);
      } catch (const std::exception&) {
        throw InputError("malformed Hall number in row '" + line + "'");
      }
      loaded[IsoClassId::parse(f[2])][{IsoClassId::parse(f[0]), IsoClassId::parse(f[1])}] = v;
    }
    if (!ended) throw InputError("Hall cache is truncated");
    std::lock_guard lk(mu_);
    for (auto& [L, r] : loaded) rows_[L] = std::move(r);
  }

  bool contains(const IsoClassId& c) const { return bound_.contains(reg_->dims_of(c)); }

  void require_in_bound(const IsoClassId& c) const {
    if (!contains(c))
      throw BoundExceeded("class " + c.str() + " with dims " + ModuleRegistry::dims_str(reg_->dims_of(c)) +
                          " is outside the Hall table bound " + bound_.str());
  }

 private:
  const ModuleRegistry* reg_;
  Bound bound_;
  mutable std::mutex mu_;
  mutable std::map<IsoClassId, HallRow> rows_;
};

/// Finite integer combination of basis elements u_[X]; zero coefficients are never stored.
class HallElement {
 public:
  HallElement() = default;
  static HallElement basis(const IsoClassId& c, BigInt coeff = 1) {
    HallElement e;
    e.add(c, coeff);
    return e;
  }

  void add(const IsoClassId& c, const BigInt& v) {
    if (v == 0) return;
    BigInt& slot = terms_[c];
    slot += v;
    if (slot == 0) terms_.erase(c);
  }
  BigInt coeff(const IsoClassId& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  const std::map<IsoClassId, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  friend bool operator==(const HallElement&, const HallElement&) = default;

  HallElement& operator+=(const HallElement& o) {
    for (const auto& [c, v] : o.terms_) add(c, v);
    return *this;
  }
  friend HallElement operator+(HallElement a, const HallElement& b) { return a += b; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [c, v] : terms_) s += (s.empty() ? "" : " + ") + to_string(v) + "*u" + c.str();
    return s;
  }

 private:
  std::map<IsoClassId, BigInt> terms_;
};

/// u_X u_Y = sum_L F_{XY}^L u_L, extended bilinearly.
inline HallElement hall_product(const HallTable& T, const HallElement& a, const HallElement& b) {
  const ModuleRegistry& R = T.registry();
  std::map<DimVector, std::vector<IsoClassId>> by_dims;
  for (auto& c : R.classes_within(T.bound())) by_dims[R.dims_of(c)].push_back(std::move(c));
  HallElement out;
  for (const auto& [X, ax] : a.terms())
    for (const auto& [Y, by] : b.terms()) {
      const DimVector d = dims_add(R.dims_of(X), R.dims_of(Y));
      if (!T.bound().contains(d))
        throw BoundExceeded("product u" + X.str() + " * u" + Y.str() + " has dims " + ModuleRegistry::dims_str(d) +
                            " outside the bound " + T.bound().str());
      for (const auto& L : by_dims[d])
        if (const long long f = T.number(X, Y, L)) out.add(L, ax * by * f);
    }
  return out;
}

inline std::string class_tuple(std::initializer_list<std::pair<const char*, const IsoClassId*>> items) {
  std::string s;
  for (const auto& [name, c] : items) s += (s.empty() ? "" : ";") + std::string(name) + "=" + c->str();
  return s;
}

/// sum_L F_{XY}^L F_{LZ}^M = sum_L' F_{XL'}^M F_{YZ}^{L'} for every (X, Y, Z, M) in the bound.
inline CheckReport check_associativity(const HallTable& T, const Bound& b) {
  const ModuleRegistry& R = T.registry();
  CheckReport rep;
  for (const auto& M : R.classes_within(b)) {
    std::map<std::tuple<IsoClassId, IsoClassId, IsoClassId>, std::pair<BigInt, BigInt>> sides;
    for (const auto& [lz, f2] : T.row(M)) {
      const auto& [L, Z] = lz;
      for (const auto& [xy, f1] : T.row(L)) sides[{xy.first, xy.second, Z}].first += BigInt(f1) * f2;
    }
    for (const auto& [xl, f1] : T.row(M)) {
      const auto& [X, L2] = xl;
      for (const auto& [yz, f2] : T.row(L2)) sides[{X, yz.first, yz.second}].second += BigInt(f1) * f2;
    }
    for (const auto& [k, v] : sides) {
      const auto& [X, Y, Z] = k;
      rep.expect_equal("associativity", class_tuple({{"X", &X}, {"Y", &Y}, {"Z", &Z}, {"M", &M}}), v.first, v.second);
    }
  }
  return rep;
}

/// F_{XY}^L = F_{YX}^L mod (q - 1) for indecomposable X != Y and decomposable L in the bound.
inline CheckReport check_commutator_congruence(const HallTable& T, const Bound& b) {
  const ModuleRegistry& R = T.registry();
  const long long m = T.q() - 1;
  CheckReport rep;
  const auto classes = R.classes_within(b);
  for (int i = 0; i < R.size(); ++i)
    for (int j = 0; j < R.size(); ++j) {
      if (i == j) continue;
      const IsoClassId X = IsoClassId::single(i), Y = IsoClassId::single(j);
      const DimVector d = dims_add(R.dims(i), R.dims(j));
      if (!b.contains(d)) continue;
      for (const auto& L : classes) {
        if (L.num_summands() < 2 || R.dims_of(L) != d) continue;
        rep.expect_equal("commutator_congruence", class_tuple({{"X", &X}, {"Y", &Y}, {"L", &L}}), T.number(X, Y, L),
                         T.number(Y, X, L), m);
      }
    }
  return rep;
}

/// Counts conflations Y -> L -> X directly: monomorphisms f: Y -> L, grouped by the class of
/// their cokernel, times the number of isomorphisms coker f -> X. Compares with F |Aut X| |Aut Y|
/// and checks that F = #{f : coker f = X} / |Aut Y| divides exactly.
inline CheckReport check_freeness(const HallTable& T, const Bound& b) {
  const ModuleRegistry& R = T.registry();
  const Field& F = *R.field();
  const long long cap = R.budgets().elements;
  CheckReport rep;
  const auto classes = R.classes_within(b);
  std::map<IsoClassId, BigInt> iso_count;
  auto isos = [&](const IsoClassId& X) -> const BigInt& {
    if (auto it = iso_count.find(X); it != iso_count.end()) return it->second;
    const Representation M = R.realize(X);
    const Matrix B = hom_basis_flat(M, M);
    MapLayout lay(M.dims, M.dims);
    if (count_vectors(F.q(), B.cols(), cap) < 0) return iso_count.emplace(X, R.end_data(X).aut_order).first->second;
    long long units = 0;
    for_each_vector(F, B.cols(), [&](const std::vector<Elem>& c) {
      const VertexMaps m = lay.unflatten(apply(F, B, c));
      if (std::all_of(m.begin(), m.end(), [&](const Matrix& x) { return is_invertible(F, x); })) ++units;
    });
    return iso_count.emplace(X, BigInt(units)).first->second;
  };
  for (const auto& L : classes) {
    const Representation Lr = R.realize(L);
    const DimVector dl = R.dims_of(L);
    for (const auto& Y : classes) {
      const DimVector dy = R.dims_of(Y);
      if (!dims_leq(dy, dl)) continue;
      const Representation Yr = R.realize(Y);
      const Matrix B = hom_basis_flat(Yr, Lr);
      MapLayout lay(Yr.dims, Lr.dims);
      const std::string inst = "Y=" + Y.str() + ";L=" + L.str();
      if (count_vectors(F.q(), B.cols(), cap) < 0) {
        rep.add({"freeness", inst, "", "", 0, true, true, "skipped: Hom(Y,L) exceeds the element budget"});
        continue;
      }
      std::map<IsoClassId, long long> monos;
      for_each_vector(F, B.cols(), [&](const std::vector<Elem>& c) {
        const VertexMaps f = lay.unflatten(apply(F, B, c));
        for (size_t v = 0; v < f.size(); ++v)
          if (rank(F, f[v]) != f[v].cols()) return;
        VertexMaps full;
        for (int x : Lr.dims) full.push_back(Matrix::identity(x));
        ++monos[R.decompose(subquotient(Lr, full, &f).rep)];
      });
      DimVector dx(dl.size());
      for (size_t v = 0; v < dl.size(); ++v) dx[v] = dl[v] - dy[v];
      const BigInt autY = R.end_data(Y).aut_order;
      for (const auto& X : classes) {
        if (R.dims_of(X) != dx) continue;
        const long long fm = monos.count(X) ? monos[X] : 0;
        const long long hall = T.number(X, Y, L);
        const std::string full_inst = class_tuple({{"X", &X}, {"Y", &Y}, {"L", &L}});
        const BigInt W = BigInt(fm) * (fm ? isos(X) : BigInt(0));
        rep.expect_equal("freeness", full_inst, W, BigInt(hall) * R.end_data(X).aut_order * autY);
        rep.expect_equal("monos_over_aut", full_inst, exact_div(BigInt(fm), autY, "monomorphisms / |Aut Y|"),
                         BigInt(hall));
      }
    }
  }
  return rep;
}

}  // namespace hallie
