// Enumeration caps shared by every brute-force routine.
#pragma once

#include <string>

#include "hallie/errors.hpp"

namespace hallie {

struct Budgets {
  /// Arrow-matrix tuples examined per dimension vector when enumerating indecomposables.
  long long tuples = 1LL << 22;
  /// Elements of a single Hom or End space enumerated exhaustively.
  long long elements = 1LL << 20;
  /// Indecomposable projective summands allowed in one complex.
  int projective_summands = 6;
  /// Elements of one automorphism group enumerated.
  long long group_order = 1LL << 17;
  /// Triangles held in one enumerated set.
  long long triangles = 1LL << 21;
};

inline void require_budget(long long needed, long long cap, const std::string& what) {
  if (needed < 0 || needed > cap)
    throw BudgetExceeded(what + " needs " + (needed < 0 ? std::string("more than ") + std::to_string(cap)
                                                          : std::to_string(needed)) +
                         " elements, cap is " + std::to_string(cap));
}

}  // namespace hallie
