// Finite acyclic quivers: parsing, canonical digest, Euler and Tits forms.
#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hallie/errors.hpp"

namespace hallie {

using DimVector = std::vector<int>;

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
};

class Quiver {
 public:
  Quiver() = default;
  /// Validates ids and acyclicity. Throws InputError naming the offending cycle.
  Quiver(std::string name, std::vector<std::string> vertices, std::vector<Arrow> arrows);

  const std::string& name() const { return name_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int a) const { return arrows_[a]; }
  int vertex_index(const std::string& v) const;

  /// Vertices in an order where every arrow goes forward.
  const std::vector<int>& topological_order() const { return topo_; }

  /// SHA-256 (hex) of the canonical JSON form (sorted keys, sorted arrays).
  const std::string& digest() const { return digest_; }
  nlohmann::json to_json() const;

  /// <a,b> = sum_i a_i b_i - sum_{arrows i->j} a_i b_j.
  long long euler_form(const DimVector& a, const DimVector& b) const {
    long long s = 0;
    for (int i = 0; i < num_vertices(); ++i) s += static_cast<long long>(a[i]) * b[i];
    for (const auto& ar : arrows_) s -= static_cast<long long>(a[ar.source]) * b[ar.target];
    return s;
  }
  long long tits_form(const DimVector& d) const { return euler_form(d, d); }
  long long symmetric_euler(const DimVector& a, const DimVector& b) const {
    return euler_form(a, b) + euler_form(b, a);
  }

  /// Underlying graph connected on the support of d.
  bool support_connected(const DimVector& d) const;

  /// Tits form positive definite, i.e. the underlying graph is a union of ADE diagrams.
  bool is_dynkin() const;

  /// Positive roots (vectors with Tits form 1 reachable from the simples by reflections).
  /// Only meaningful for Dynkin quivers; throws otherwise.
  std::vector<DimVector> positive_roots() const;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<int> topo_;
  std::string digest_;
};

namespace detail {

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

// Sorted keys come from nlohmann's std::map objects; arrays are sorted by their dump.
inline nlohmann::json canonicalize(const nlohmann::json& j) {
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = canonicalize(it.value());
    return out;
  }
  if (j.is_array()) {
    std::vector<nlohmann::json> items;
    for (const auto& e : j) items.push_back(canonicalize(e));
    std::sort(items.begin(), items.end(),
              [](const nlohmann::json& a, const nlohmann::json& b) { return a.dump() < b.dump(); });
    return nlohmann::json(items);
  }
  return j;
}

// Integer determinant by fraction-free (Bareiss) elimination.
inline long long bareiss_det(std::vector<std::vector<long long>> m) {
  const int n = static_cast<int>(m.size());
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int sw = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          sw = r;
          break;
        }
      if (sw < 0) return 0;
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

}  // namespace detail

inline Quiver::Quiver(std::string name, std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : name_(std::move(name)), vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_)
    if (!seen.insert(v).second) throw InputError("duplicate vertex id '" + v + "'");
  std::set<std::string> seen_arrows;
  for (const auto& a : arrows_) {
    if (!seen_arrows.insert(a.id).second) throw InputError("duplicate arrow id '" + a.id + "'");
    if (a.source < 0 || a.source >= num_vertices() || a.target < 0 || a.target >= num_vertices())
      throw InputError("arrow '" + a.id + "' has an unknown endpoint");
  }
  // DFS cycle detection; report the first cycle found.
  const int n = num_vertices();
  std::vector<int> state(n, 0), parent(n, -1);
  std::vector<std::vector<int>> out(n);
  for (const auto& a : arrows_) out[a.source].push_back(a.target);
  std::vector<int> post;
  std::function<void(int)> dfs = [&](int v) {
    state[v] = 1;
    for (int w : out[v]) {
      if (state[w] == 1) {
        std::vector<int> cyc{w};
        for (int u = v; u != w; u = parent[u]) cyc.push_back(u);
        cyc.push_back(w);
        std::reverse(cyc.begin() + 1, cyc.end() - 1);
        std::string path;
        for (size_t i = 0; i < cyc.size(); ++i) path += (i ? " -> " : "") + vertices_[cyc[i]];
        throw InputError("quiver has an oriented cycle: " + path);
      }
      if (state[w] == 0) {
        parent[w] = v;
        dfs(w);
      }
    }
    state[v] = 2;
    post.push_back(v);
  };
  for (int v = 0; v < n; ++v)
    if (state[v] == 0) dfs(v);
  topo_.assign(post.rbegin(), post.rend());
  digest_ = detail::sha256_hex(detail::canonicalize(to_json()).dump());
}

inline int Quiver::vertex_index(const std::string& v) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices_[i] == v) return i;
  throw InputError("unknown vertex '" + v + "'");
}

inline nlohmann::json Quiver::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["vertices"] = vertices_;
  j["arrows"] = nlohmann::json::array();
  for (const auto& a : arrows_)
    j["arrows"].push_back({{"id", a.id}, {"src", vertices_[a.source]}, {"tgt", vertices_[a.target]}});
  return j;
}

/// Parses the quiver document {"name", "vertices": [...], "arrows": [{"id","src","tgt"}...]}.
inline Quiver parse_quiver(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("quiver document is not valid JSON: ") + e.what());
  }
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::string name = j.value("name", std::string("quiver"));
    std::set<std::string> seen;
    for (const auto& v : vertices)
      if (!seen.insert(v).second) throw InputError("duplicate vertex id '" + v + "'");
    auto index = [&](const std::string& v) {
      auto it = std::find(vertices.begin(), vertices.end(), v);
      if (it == vertices.end()) throw InputError("arrow endpoint '" + v + "' is not a vertex");
      return static_cast<int>(it - vertices.begin());
    };
    std::vector<Arrow> arrows;
    for (const auto& a : j.value("arrows", nlohmann::json::array()))
      arrows.push_back({a.at("id").get<std::string>(), index(a.at("src").get<std::string>()),
                        index(a.at("tgt").get<std::string>())});
    return Quiver(std::move(name), std::move(vertices), std::move(arrows));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed quiver document: ") + e.what());
  }
}

inline bool Quiver::support_connected(const DimVector& d) const {
  std::vector<int> supp;
  for (int i = 0; i < num_vertices(); ++i)
    if (d[i] > 0) supp.push_back(i);
  if (supp.empty()) return false;
  std::set<int> seen{supp[0]};
  std::vector<int> stack{supp[0]};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& a : arrows_) {
      int w = -1;
      if (a.source == v) w = a.target;
      if (a.target == v) w = a.source;
      if (w >= 0 && d[w] > 0 && seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == supp.size();
}

inline bool Quiver::is_dynkin() const {
  const int n = num_vertices();
  std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  for (const auto& a : arrows_) {
    c[a.source][a.target] -= 1;
    c[a.target][a.source] -= 1;
  }
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<long long>> minor(k, std::vector<long long>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) minor[i][j] = c[i][j];
    if (detail::bareiss_det(minor) <= 0) return false;
  }
  return true;
}

inline std::vector<DimVector> Quiver::positive_roots() const {
  if (!is_dynkin()) throw InputError("positive_roots requires a Dynkin quiver");
  const int n = num_vertices();
  std::set<DimVector> roots;
  std::vector<DimVector> stack;
  for (int i = 0; i < n; ++i) {
    DimVector e(n, 0);
    e[i] = 1;
    roots.insert(e);
    stack.push_back(e);
  }
  while (!stack.empty()) {
    DimVector d = stack.back();
    stack.pop_back();
    for (int i = 0; i < n; ++i) {
      DimVector e(n, 0);
      e[i] = 1;
      const long long pair = symmetric_euler(d, e);
      DimVector r = d;
      r[i] -= static_cast<int>(pair);
      if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; }) &&
          std::any_of(r.begin(), r.end(), [](int x) { return x > 0; }) && roots.insert(r).second)
        stack.push_back(r);
    }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace hallie
