// Small quivers and modules shared by the test suites.
#pragma once

#include <memory>

#include "hallie/registry.hpp"

namespace fixtures {

using namespace hallie;

inline QuiverPtr a1() { return std::make_shared<const Quiver>(parse_quiver(R"({"name":"A1","vertices":["1"],"arrows":[]})")); }

inline QuiverPtr a2() {
  return std::make_shared<const Quiver>(
      parse_quiver(R"({"name":"A2","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"}]})"));
}

inline QuiverPtr a3() {
  return std::make_shared<const Quiver>(parse_quiver(
      R"({"name":"A3","vertices":["1","2","3"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"2","tgt":"3"}]})"));
}

inline QuiverPtr kronecker() {
  return std::make_shared<const Quiver>(parse_quiver(
      R"({"name":"Kronecker","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"},{"id":"b","src":"1","tgt":"2"}]})"));
}

/// Representation of A2 with the given dims and (for nonzero dims) arrow matrix entries row-major.
inline Representation a2_rep(QuiverPtr Q, FieldPtr F, int d1, int d2, std::vector<Elem> entries = {}) {
  Representation r = Representation::zero(Q, F);
  r.dims = {d1, d2};
  Matrix m(d2, d1);
  if (!entries.empty()) m.data() = entries;
  r.arrow_maps[0] = m;
  return r;
}

struct A2Modules {
  QuiverPtr Q;
  FieldPtr F;
  Representation S1, S2, P;
};

inline A2Modules a2_modules(int q) {
  auto Q = a2();
  auto F = make_field(q);
  return {Q, F, a2_rep(Q, F, 1, 0), a2_rep(Q, F, 0, 1), a2_rep(Q, F, 1, 1, {1})};
}

}  // namespace fixtures
