#pragma once

#include <string>

#include "stabcat/category.hpp"
#include "stabcat/preorder.hpp"
#include "stabcat/system.hpp"

namespace stabcat {

/// Hasse diagram of a lattice of distinguished subobjects, smaller below.
std::string lattice_dot(const DistinguishedLattice& lattice);
/// Hasse diagram of the strict order; equivalent elements are joined by an
/// undirected dashed edge.
std::string preorder_dot(const FinPreord& p);
/// Objects and non-identity arrows.
std::string category_dot(const FinCat& c);

}  // namespace stabcat
