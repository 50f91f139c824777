#pragma once

#include <string>
#include <vector>

#include "stabcat/system.hpp"

namespace stabcat {

/// Isomorphism-invariant code of a preorder: the lexicographically least
/// row encoding over all relabelings. Exponential in the size; small inputs.
std::vector<Mask> canonical_code(const FinPreord& p);
bool isomorphic(const FinPreord& a, const FinPreord& b);

/// All preorders on 0..max_size elements up to isomorphism, ordered by size
/// then canonical code. Elements are named a, b, c, ...; objects are named
/// "P<size>.<k>". Throws SizeLimit above 5 elements.
Corpus<FinPreord> preorder_corpus(int max_size);

/// The named category fixtures.
Corpus<FinCat> cat_fixture_corpus();

}  // namespace stabcat
