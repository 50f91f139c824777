#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabcat/category.hpp"
#include "stabcat/preorder.hpp"

namespace stabcat {

template <class Object>
using Battery = std::vector<std::pair<std::string, Object>>;

// Failing instance: a pair of maps out of S and T agreeing on S∩T which has
// zero or several mediators out of the union.
struct PushoutWitness {
  std::string battery_object;
  std::vector<int> from_s;  // tables indexed by the ambient object
  std::vector<int> from_t;
  int mediators = 0;
};

struct PushoutReport {
  bool holds = true;
  long pairs_checked = 0;
  std::optional<PushoutWitness> witness;
};

/// Checks that the square S∩T -> S, T -> U is a pushout against every
/// battery object. S, T and U are subsets of `ambient` carrying the induced
/// order, with S ∪ T ⊆ U.
PushoutReport pushout_holds(const FinPreord& ambient, Mask s, Mask t, Mask u, const Battery<FinPreord>& battery);

/// Same for full subcategories on the object sets s, t, u of `ambient`.
PushoutReport pushout_holds(const FinCat& ambient, Mask s, Mask t, Mask u, const Battery<FinCat>& battery);

}  // namespace stabcat
