#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stabcat/category.hpp"
#include "stabcat/preorder.hpp"

namespace stabcat::fixtures {

// Preorders used throughout the tests and the CLI demos.
FinPreord p3();             // a ≅ b, b < c
FinPreord chain2();         // x < y
FinPreord chain_plus_point();  // p < q, and an isolated t

// Small categories.
FinCat arrow_cat();         // f: A -> B
FinCat cospan_cat();        // f: A -> B <- C :g
FinCat i2();                // u: x -> y, v: y -> x mutually inverse
FinCat grpd2();             // two objects p, q, each with an involution
FinCat grpd_plus_arrow();   // i2 ⊔ arrow_cat
FinCat terminal_cat();      // one object, one arrow

FinCat coproduct(const FinCat& a, const FinCat& b);

std::vector<std::pair<std::string, FinCat>> cat_fixtures();

}  // namespace stabcat::fixtures
