// Acceptance run: one PASS/FAIL line per criterion. Every check is exact (or exact modulo
// q - 1); the only tolerances are the wall-clock limits below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>

#include "fixtures.hpp"
#include "hallie/lie_algebra.hpp"

using namespace hallie;

namespace {

struct Limits {
  static constexpr double kAssociativity = 120, kCommutator = 60, kFreeness = 300, kRootModel = 300,
                          kOctahedral = 600, kIdentities = 600, kJacobiPerField = 900, kHPart = 600, kForm = 600,
                          kStructure = 300, kOracle = 300, kKronecker = 1200;
};

constexpr std::uint64_t kSeed = 20240501;
constexpr int kOctahedralSamples = 24;

struct World {
  ModuleRegistry R;
  RootCategory C;
  TriangleCounts T;
  HallTable H;
  LieAlgebra lie;
  World(QuiverPtr Q, int q, Bound registry, Bound hall, Budgets b = {})
      : R(std::move(Q), make_field(q), std::move(registry), b), C(R), T(C), H(R, std::move(hall)), lie(T, &H) {}

  std::vector<ObjClassId> indecomposables() const {
    std::vector<ObjClassId> v;
    for (int k = 0; k < C.num_indecomposables(); ++k) v.push_back(C.indecomposable(k));
    return v;
  }
};

std::unique_ptr<World> a1(int q) {
  return std::make_unique<World>(fixtures::a1(), q, Bound::total_dim(1, 2), Bound::total_dim(1, 4));
}
std::unique_ptr<World> a2(int q) {
  return std::make_unique<World>(fixtures::a2(), q, Bound::total_dim(2, 2), Bound::total_dim(2, 4));
}
std::unique_ptr<World> a3(int q) {
  return std::make_unique<World>(fixtures::a3(), q, Bound::total_dim(3, 3), Bound::total_dim(3, 4));
}

struct Tally {
  std::size_t checked = 0, violations = 0, vacuous = 0;
  std::string notes;

  void add(const CheckReport& r) {
    checked += r.checked();
    violations += r.violations();
    vacuous += r.vacuous();
    for (const auto& rec : r.records())
      if (!rec.ok && violations - r.violations() < 3)
        notes += " [" + rec.check + " " + rec.instance + ": " + rec.lhs + " vs " + rec.rhs + "]";
  }
  void fail(const std::string& why) {
    ++violations;
    notes += " [" + why + "]";
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;
  std::function<void(Tally&)> body;
};

bool run(const Criterion& c) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(t);
  } catch (const std::exception& e) {
    t.fail(std::string("aborted: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > c.limit_seconds) t.fail("over the time limit");
  const bool ok = t.violations == 0 && t.checked > 0;
  std::printf("%-4s %s  %s: %zu checked, %zu violations, %zu vacuous, %.1fs (limit %.0fs)%s\n", c.id,
              ok ? "PASS" : "FAIL", c.title, t.checked, t.violations, t.vacuous, secs, c.limit_seconds,
              t.notes.c_str());
  std::fflush(stdout);
  return ok;
}

void associativity(Tally& t) {
  for (int q : {2, 3}) {
    auto w = a2(q);
    t.add(check_associativity(w->H, w->H.bound()));
  }
  auto w = a3(3);
  t.add(check_associativity(w->H, w->H.bound()));
}

void commutator(Tally& t) {
  auto w2 = a2(3);
  t.add(check_commutator_congruence(w2->H, w2->H.bound()));
  auto w3 = a3(3);
  t.add(check_commutator_congruence(w3->H, w3->H.bound()));
}

void freeness(Tally& t) {
  for (int q : {2, 3}) {
    auto w = a2(q);
    t.add(check_freeness(w->H, w->H.bound()));
  }
  auto w = a3(3);
  t.add(check_freeness(w->H, w->H.bound()));
}

void root_model(Tally& t) {
  auto w = a2(3);
  const ModuleRegistry& R = w->R;
  const RootCategory& C = w->C;
  CheckReport r;
  for (int i = 0; i < R.size(); ++i)
    for (int j = 0; j < R.size(); ++j) {
      const Obj m = C.object(ObjClassId::indecomposable(i, false)), n = C.object(ObjClassId::indecomposable(j, false));
      const std::string inst = std::to_string(i) + "," + std::to_string(j);
      r.expect_equal("hom", inst, C.hom(m, n).dim(), R.hom_dim(i, j));
      r.expect_equal("ext", inst, C.hom(m, C.shift(n)).dim(), euler_and_ext(R.rep(i), R.rep(j)).second);
    }
  t.add(r);
  const auto objects = objects_within(R, 2);
  t.add(check_split_criterion(w->T, objects));
}

void octahedral(Tally& t) {
  for (int q : {2, 3}) {
    auto w = a1(q);
    const auto objects = objects_within(w->R, 2);
    for (const auto& X : w->indecomposables())
      for (const auto& Y : w->indecomposables())
        for (const auto& Z : w->indecomposables())
          for (const auto& M : objects) t.add(verify_octahedral_counts(w->T, X, Y, Z, M));
  }
  auto w = a2(3);
  const auto pool = w->indecomposables();
  const auto inst = sample_octahedral_instances(w->T, pool, kOctahedralSamples, kSeed);
  if (static_cast<int>(inst.size()) < 20) t.fail("fewer than 20 A2 instances");
  for (const auto& [X, Y, Z, M] : inst) t.add(verify_octahedral_counts(w->T, X, Y, Z, M));
}

void identities(Tally& t) {
  {
    auto w = a1(3);
    t.add(check_triangle_identities(w->T, w->indecomposables()));
    const ObjClassId k = ObjClassId::indecomposable(0, false);
    CheckReport r;
    r.expect_equal("middle.triangle_count", "|W_{k,k}^{k+k}| over F3", w->T.counts(k, k, k.plus(k)).w, 16);
    t.add(r);
  }
  {
    auto w = a2(3);
    t.add(check_triangle_identities(w->T, w->indecomposables()));
  }
  auto w = a3(3);
  const CheckReport r = check_triangle_identities(w->T, w->indecomposables());
  t.add(r);
  std::size_t decomposable_middle = 0;
  for (const auto& rec : r.records())
    if (rec.check == "n.decomposable_middle" || rec.check == "n_hat.decomposable_middle") ++decomposable_middle;
  if (decomposable_middle == 0) t.fail("no instance of the decomposable-middle cases");
}

void jacobi(Tally& t) {
  for (int q : {3, 4, 5}) {
    const auto start = std::chrono::steady_clock::now();
    for (auto make : {a1, a2}) {
      auto w = make(q);
      const CheckReport r = check_jacobi(w->lie, 4);
      if (make == a2 && r.checked() < 512) t.fail("fewer than 8^3 triples");
      t.add(r);
    }
    if (std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > Limits::kJacobiPerField)
      t.fail("field F_" + std::to_string(q) + " over the time limit");
  }
}

void h_part(Tally& t) {
  for (int q : {3, 4}) {
    auto w = a2(q);
    t.add(check_h_cancellation(w->lie));
    const auto triples = zero_sum_triples(w->lie);
    t.add(check_triangle_endomorphisms(w->lie, triples));
  }
}

void invariant_form(Tally& t) {
  for (int q : {3, 4}) {
    auto w = a2(q);
    t.add(check_invariant_form(w->lie));
  }
}

void structure(Tally& t) {
  using Cartan = std::vector<std::vector<long long>>;
  CheckReport r;
  const StructureReport s1 = structure_report(a1(3)->lie);
  const StructureReport s2 = structure_report(a2(3)->lie);
  const StructureReport s3 = structure_report(a3(3)->lie);
  r.expect_true("cartan", "A1", s1.cartan == Cartan{{2}});
  r.expect_equal("total_rank", "A1", s1.total_rank(), 3);
  r.expect_true("cartan", "A2", s2.cartan == Cartan{{2, -1}, {-1, 2}});
  r.expect_equal("total_rank", "A2", s2.total_rank(), 8);
  r.expect_equal("total_rank", "A3", s3.total_rank(), 15);
  for (const auto* s : {&s1, &s2, &s3})
    for (const auto& m : s->roots) r.expect_equal("root_multiplicity", nlohmann::json(m.cls).dump(), m.count, 1);
  t.add(r);
}

void oracle(Tally& t) {
  for (auto make : {a1, a2}) {
    auto w = make(3);
    const LieAlgebra slow(w->T);
    t.add(compare_brackets(w->lie, slow));
  }
}

void kronecker(Tally& t) {
  World w(fixtures::kronecker(), 3, Bound{{2, 2}, 4}, Bound{{2, 2}, 4});
  const LieAlgebra& A = w.lie;
  CheckReport r;
  int k2 = -1;
  for (int i = 0; i < w.R.size(); ++i)
    if (w.R.d(i) == 2) k2 = 2 * i;
  r.expect_true("d=2 indecomposable", "Kronecker/F3 (2,2)", k2 >= 0);
  if (k2 < 0) {
    t.add(r);
    return;
  }
  const GrothClass g = A.groth(k2);
  GrothClass half = g;
  for (auto& x : half) x = x * A.lattice().denominator() / 2;
  std::vector<long long> e(A.num_h(), 0);
  e[k2 / 2] = 1;
  r.expect_true("h~ = h/d", A.name(k2), A.lattice().scaled(e) == half);
  r.expect_true("h~ nonzero", A.name(k2), !A.is_zero(A.h_tilde(k2)));
  t.add(r);
  t.add(check_form(A));
  std::vector<std::array<int, 3>> sample;
  for (const auto& tr : zero_sum_triples(A))
    if (A.d(tr[0]) == 2 || A.d(tr[1]) == 2 || A.d(tr[2]) == 2) sample.push_back(tr);
  std::mt19937_64 rng(kSeed);
  std::shuffle(sample.begin(), sample.end(), rng);
  if (sample.size() > 12) sample.resize(12);
  if (sample.empty()) t.fail("no triangle through a d=2 indecomposable");
  t.add(check_triangle_endomorphisms(A, sample));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "exact associativity (A2/F2, A2/F3, A3/F3; dims <= 4)", Limits::kAssociativity, associativity},
      {"AC2", "commutator congruence (A2/F3, A3/F3; dims <= 4)", Limits::kCommutator, commutator},
      {"AC3", "freeness |W| = F |Aut X| |Aut Y|", Limits::kFreeness, freeness},
      {"AC4", "root category Hom/Ext transport and split criterion (A2/F3)", Limits::kRootModel, root_model},
      {"AC5", "octahedral counts (A1/F2, A1/F3, seeded A2/F3)", Limits::kOctahedral, octahedral},
      {"AC6", "triangle count identities (A1, A2, A3 over F3)", Limits::kIdentities, identities},
      {"AC7", "Jacobi identity (A1, A2 over F3, F4, F5)", 3 * Limits::kJacobiPerField, jacobi},
      {"AC8", "h-part cancellation and local triangle endomorphisms (A2/F3, A2/F4)", Limits::kHPart, h_part},
      {"AC9", "invariant form (A2/F3, A2/F4)", Limits::kForm, invariant_form},
      {"AC10", "structure recovery (A1, A2, A3)", Limits::kStructure, structure},
      {"AC11", "fast path equals triangle counts (A1/F3, A2/F3)", Limits::kOracle, oracle},
      {"AC12", "Kronecker/F3 at (2,2): d = 2 and its arithmetic", Limits::kKronecker, kronecker},
  };
  int failed = 0;
  for (const auto& c : criteria)
    if (!run(c)) ++failed;
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
