// hallie: registries, Hall numbers, triangle counts and Lie algebra checks for a quiver over F_q.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include "hallie/lie_algebra.hpp"

namespace fs = std::filesystem;
using namespace hallie;

namespace {

enum ExitCode { kOk = 0, kViolations = 1, kConfigError = 2, kBudgetError = 3, kInternalError = 4 };

const std::vector<std::string> kCommands = {"indec", "hall",  "assoc", "comm",   "tri",  "prop2",
                                            "lemmas4", "lie", "jacobi", "form", "report"};

struct RunConfig {
  std::string quiver_path;
  int q = 3;
  std::string bound = "2";
  std::string class_bound;
  std::string cache_dir;
  std::string out;
  int jobs = 1;
  std::uint64_t seed = 1;
  int samples = 0;
  bool table = false;
  Budgets budgets;
  std::string command;
};

/// "t" (total dimension), "a,b,..." (per vertex) or "a,b,...|t".
Bound parse_bound(const std::string& s, int vertices) {
  auto number = [&](const std::string& x) {
    try {
      size_t used = 0;
      const int v = std::stoi(x, &used);
      if (used != x.size() || v < 0) throw InputError("");
      return v;
    } catch (const std::exception&) {
      throw InputError("bad bound '" + s + "'");
    }
  };
  const size_t bar = s.find('|');
  const std::string head = s.substr(0, bar);
  Bound b;
  if (head.find(',') == std::string::npos && bar == std::string::npos) {
    b = Bound::total_dim(vertices, number(head));
  } else {
    std::stringstream ss(head);
    for (std::string item; std::getline(ss, item, ',');) b.per_vertex.push_back(number(item));
    if (static_cast<int>(b.per_vertex.size()) != vertices)
      throw InputError("bound '" + s + "' has " + std::to_string(b.per_vertex.size()) + " entries for " +
                       std::to_string(vertices) + " vertices");
    b.total = bar == std::string::npos ? dims_total(b.per_vertex) : number(s.substr(bar + 1));
  }
  if (b.total <= 0) throw InputError("bound '" + s + "' must be positive");
  return b;
}

std::string file_token(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}

  template <class Table>
  void load(Table& t, const std::string& name) const {
    if (dir_.empty()) return;
    const fs::path p = fs::path(dir_) / name;
    if (!fs::exists(p)) return;
    std::ifstream in(p);
    try {
      t.read_csv(in);
    } catch (const InputError& e) {
      std::cerr << "warning: ignoring cache " << p.string() << ": " << e.what() << "; recomputing\n";
    }
  }

  template <class Table>
  void store(const Table& t, const std::string& name) const {
    if (dir_.empty()) return;
    fs::create_directories(dir_);
    const fs::path p = fs::path(dir_) / name, tmp = fs::path(dir_) / (name + ".tmp");
    {
      std::ofstream out(tmp);
      t.write_csv(out);
      if (!out) throw InputError("cannot write cache " + tmp.string());
    }
    fs::rename(tmp, p);
  }

 private:
  std::string dir_;
};

struct Outcome {
  CheckReport report;
  nlohmann::json result = nlohmann::json::object();
};

class Runner {
 public:
  explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)), cache_(cfg_.cache_dir) {
    std::ifstream in(cfg_.quiver_path);
    if (!in) throw InputError("cannot read quiver file '" + cfg_.quiver_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    Q_ = std::make_shared<const Quiver>(parse_quiver(ss.str()));
    F_ = make_field(cfg_.q);
    bound_ = parse_bound(cfg_.bound, Q_->num_vertices());
    class_bound_ = cfg_.class_bound.empty() ? bound_ : parse_bound(cfg_.class_bound, Q_->num_vertices());
    if (cfg_.jobs < 1) throw InputError("--jobs must be positive");
  }

  Outcome run() {
    const std::string& c = cfg_.command;
    if (c == "indec") return indec();
    if (c == "hall") return hall();
    if (c == "assoc") return {check_associativity(hall_table(class_bound_), class_bound_)};
    if (c == "comm") return {check_commutator_congruence(hall_table(class_bound_), class_bound_)};
    if (c == "tri") return tri();
    if (c == "prop2") return prop2();
    if (c == "lemmas4") return with_triangle_cache([&] { return Outcome{check_triangle_identities(triangles(), indecomposables())}; });
    if (c == "lie") return lie();
    if (c == "jacobi") return jacobi();
    if (c == "form") return form();
    return structure();
  }

  nlohmann::json provenance() const {
    const Budgets& b = cfg_.budgets;
    return {{"tool", "hallie"},
            {"version", kToolVersion},
            {"timestamp", utc_timestamp()},
            {"command", cfg_.command},
            {"quiver", Q_->name()},
            {"quiver_digest", Q_->digest()},
            {"q", cfg_.q},
            {"modulus", cfg_.q - 1},
            {"bound", bound_.str()},
            {"class_bound", class_bound_.str()},
            {"seed", cfg_.seed},
            {"samples", cfg_.samples},
            {"budgets",
             {{"tuples", b.tuples},
              {"elements", b.elements},
              {"projective_summands", b.projective_summands},
              {"group_order", b.group_order},
              {"triangles", b.triangles}}}};
  }

 private:
  const ModuleRegistry& registry() {
    if (!R_) R_ = std::make_unique<ModuleRegistry>(Q_, F_, bound_, cfg_.budgets);
    return *R_;
  }

  std::string cache_name(const std::string& kind, const Bound& b) const {
    return kind + "_" + Q_->digest().substr(0, 16) + "_q" + std::to_string(cfg_.q) + "_" + file_token(b.str()) +
           (kind == "tri" ? "_s" + std::to_string(cfg_.budgets.projective_summands) : "") + ".csv";
  }

  const HallTable& hall_table(const Bound& b) {
    auto& slot = halls_[b.str()];
    if (!slot) {
      slot = std::make_unique<HallTable>(registry(), b);
      const std::string name = cache_name("hall", b);
      cache_.load(*slot, name);
      const size_t before = slot->rows().size();
      slot->compute_all(cfg_.jobs);
      if (slot->rows().size() != before) cache_.store(*slot, name);
    }
    return *slot;
  }

  const RootCategory& category() {
    if (!C_) C_ = std::make_unique<RootCategory>(registry());
    return *C_;
  }

  const TriangleCounts& triangles() {
    if (!T_) {
      T_ = std::make_unique<TriangleCounts>(category());
      cache_.load(*T_, cache_name("tri", bound_));
    }
    return *T_;
  }

  template <class Fn>
  Outcome with_triangle_cache(Fn&& fn) {
    Outcome o = fn();
    cache_.store(triangles(), cache_name("tri", bound_));
    return o;
  }

  std::vector<ObjClassId> indecomposables() {
    std::vector<ObjClassId> v;
    for (int k = 0; k < category().num_indecomposables(); ++k) v.push_back(category().indecomposable(k));
    return v;
  }

  const LieAlgebra& lie_algebra() {
    if (!lie_) lie_ = std::make_unique<LieAlgebra>(triangles(), &hall_table(bound_));
    return *lie_;
  }

  Outcome indec() {
    const ModuleRegistry& R = registry();
    Outcome o;
    nlohmann::json mods = nlohmann::json::array();
    for (int i = 0; i < R.size(); ++i)
      mods.push_back({{"index", i}, {"dims", R.dims(i)}, {"d", R.d(i)}, {"end_dim", R.end(i).end_dim}});
    o.result = {{"modules", mods}, {"complete", R.complete()}, {"indecomposable_objects", 2 * R.size()}};
    return o;
  }

  Outcome hall() {
    const HallTable& H = hall_table(class_bound_);
    Outcome o{check_freeness(H, class_bound_)};
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [L, r] : H.rows())
      for (const auto& [xy, f] : r) rows.push_back({{"X", xy.first.str()}, {"Y", xy.second.str()}, {"L", L.str()}, {"F", f}});
    o.result["hall_table"] = std::move(rows);
    return o;
  }

  Outcome tri() {
    return with_triangle_cache([&] {
      const TriangleCounts& T = triangles();
      const auto ind = indecomposables();
      Outcome o{check_split_criterion(T, ind)};
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& X : ind)
        for (const auto& Y : ind)
          for (const auto& L : T.middle_terms(X, Y)) {
            const TriangleCount c = T.counts(X, Y, L);
            rows.push_back({{"X", X.str()}, {"Y", Y.str()}, {"L", L.str()}, {"W", c.w}, {"F", c.f}});
          }
      o.result["triangle_counts"] = std::move(rows);
      return o;
    });
  }

  Outcome prop2() {
    return with_triangle_cache([&] {
      const TriangleCounts& T = triangles();
      const auto ind = indecomposables();
      std::vector<std::array<ObjClassId, 4>> inst;
      if (cfg_.samples > 0) {
        inst = sample_octahedral_instances(T, ind, cfg_.samples, cfg_.seed);
      } else {
        for (const auto& X : ind)
          for (const auto& Y : ind)
            for (const auto& Z : ind)
              for (const auto& M : octahedral_third_terms(T, X, Y, Z)) inst.push_back({X, Y, Z, M});
      }
      Outcome o;
      for (const auto& [X, Y, Z, M] : inst) o.report.append(verify_octahedral_counts(T, X, Y, Z, M));
      return o;
    });
  }

  Outcome lie() {
    return with_triangle_cache([&] {
      const LieAlgebra& A = lie_algebra();
      Outcome o{check_bracket_table(A)};
      o.report.append(check_decomposable_terms(A));
      const LieAlgebra slow(triangles());
      o.report.append(compare_brackets(A, slow));
      nlohmann::json rows = nlohmann::json::array();
      for (int a = 0; a < A.num_u(); ++a)
        for (int b = 0; b < A.num_u(); ++b)
          rows.push_back({{"X", A.object(a).str()}, {"Y", A.object(b).str()}, {"bracket", A.str(A.bracket_u(a, b))}});
      o.result["brackets"] = std::move(rows);
      return o;
    });
  }

  CheckReport jacobi_checks() {
    const LieAlgebra& A = lie_algebra();
    CheckReport r = check_jacobi(A, cfg_.jobs);
    r.append(check_shift_pairs(A));
    r.append(check_delta_coefficients(A));
    r.append(check_h_cancellation(A));
    const auto triples = zero_sum_triples(A);
    r.append(check_triangle_endomorphisms(A, triples));
    return r;
  }

  CheckReport form_checks() {
    CheckReport r = check_form(lie_algebra());
    r.append(check_invariant_form(lie_algebra()));
    return r;
  }

  Outcome jacobi() {
    return with_triangle_cache([&] { return Outcome{jacobi_checks()}; });
  }

  Outcome form() {
    return with_triangle_cache([&] { return Outcome{form_checks()}; });
  }

  Outcome structure() {
    return with_triangle_cache([&] {
      const StructureReport s = structure_report(lie_algebra());
      const CheckReport j = jacobi_checks(), f = form_checks();
      std::size_t triples = 0, triple_violations = 0;
      for (const auto& rec : j.records())
        if (rec.check == "jacobi") {
          ++triples;
          if (!rec.ok) ++triple_violations;
        }
      Outcome o;
      o.report.append(j);
      o.report.append(f);
      o.result = s.to_json();
      o.result["quiver"] = Q_->name();
      o.result["q"] = cfg_.q;
      o.result["modulus"] = cfg_.q - 1;
      o.result["jacobi"] = {{"triples_checked", triples}, {"violations", triple_violations}, {"checks", j.checked()},
                            {"check_violations", j.violations()}};
      o.result["invariant_form"] = {{"checked", f.checked()}, {"violations", f.violations()}};
      return o;
    });
  }

  RunConfig cfg_;
  Cache cache_;
  QuiverPtr Q_;
  FieldPtr F_;
  Bound bound_, class_bound_;
  std::unique_ptr<ModuleRegistry> R_;
  std::map<std::string, std::unique_ptr<HallTable>> halls_;
  std::unique_ptr<RootCategory> C_;
  std::unique_ptr<TriangleCounts> T_;
  std::unique_ptr<LieAlgebra> lie_;
};

void print_table(std::ostream& os, const CheckReport& r) {
  std::size_t wc = 5, wi = 8;
  for (const auto& rec : r.records()) {
    wc = std::max(wc, rec.check.size());
    wi = std::max(wi, rec.instance.size());
  }
  os << std::left << std::setw(static_cast<int>(wc)) << "check" << "  " << std::setw(static_cast<int>(wi))
     << "instance" << "  status\n";
  for (const auto& rec : r.records())
    os << std::setw(static_cast<int>(wc)) << rec.check << "  " << std::setw(static_cast<int>(wi)) << rec.instance << "  "
       << (rec.vacuous ? "vacuous" : rec.ok ? "ok" : "FAIL (" + rec.lhs + " vs " + rec.rhs + ")") << "\n";
  os << r.checked() << " checked, " << r.violations() << " violations, " << r.vacuous() << " vacuous\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hall numbers, exact triangles and the Lie algebra of a root category"};
  app.require_subcommand(1);
  RunConfig cfg;
  CLI::App* run = app.add_subcommand("run", "Run one computation and write a JSON report");
  run->add_option("--quiver", cfg.quiver_path, "Quiver JSON file")->required();
  run->add_option("--q", cfg.q, "Field size (a prime power up to 256)")->required();
  run->add_option("--bound", cfg.bound, "Registry bound: total dimension t, per-vertex a,b,..., or a,b,...|t")
      ->capture_default_str();
  run->add_option("--class-bound", cfg.class_bound, "Bound on classes for hall/assoc/comm (default: --bound)");
  run->add_option("--cache-dir", cfg.cache_dir, "Directory for Hall and triangle caches")->envname("HALLIE_CACHE_DIR");
  run->add_option("--out", cfg.out, "Report path (default: stdout)");
  run->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  run->add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
  run->add_option("--samples", cfg.samples, "prop2: number of seeded instances (0 = all)")->capture_default_str();
  run->add_flag("--table", cfg.table, "Also print the records as a text table");
  run->add_option("--max-tuples", cfg.budgets.tuples, "Arrow-matrix tuples per dimension vector")->capture_default_str();
  run->add_option("--max-elements", cfg.budgets.elements, "Elements of one Hom space")->capture_default_str();
  run->add_option("--max-summands", cfg.budgets.projective_summands, "Projective summands per complex")
      ->capture_default_str();
  run->add_option("--max-group-order", cfg.budgets.group_order, "Elements of one automorphism group")
      ->capture_default_str();
  run->add_option("--max-triangles", cfg.budgets.triangles, "Triangles in one enumerated set")->capture_default_str();
  run->add_option("command", cfg.command, "indec|hall|assoc|comm|tri|prop2|lemmas4|lie|jacobi|form|report")
      ->required()
      ->check(CLI::IsMember(kCommands));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Runner runner(cfg);
    const Outcome o = runner.run();
    nlohmann::ordered_json doc;
    doc["provenance"] = runner.provenance();
    doc["summary"] = o.report.summary_json();
    doc["result"] = o.result;
    doc["records"] = o.report.records_json();
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
      if (!cfg.table) std::cout << text;
    } else {
      std::ofstream out(cfg.out);
      out << text;
      if (!out) throw InputError("cannot write report '" + cfg.out + "'");
    }
    if (cfg.table) print_table(std::cout, o.report);
    std::cerr << cfg.command << ": " << o.report.checked() << " checked, " << o.report.violations() << " violations, "
              << o.report.vacuous() << " vacuous\n";
    return o.report.passed() ? kOk : kViolations;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudgetError;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBudgetError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
