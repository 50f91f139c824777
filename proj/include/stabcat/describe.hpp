#pragma once

#include "stabcat/ambient.hpp"
#include "stabcat/report.hpp"

namespace stabcat {

// Name-level JSON descriptions used in report witnesses. The object forms
// are the same documents the loaders accept, so witnesses can be replayed.
Json describe(const FinPreord& p);
Json describe(const FinCat& c);

Json describe_sub(const FinPreord& p, Mask m);
Json describe_sub(const FinCat& c, Mask objs);

// A (possibly partial) map as {source name: target name}.
Json describe_map(const FinPreord& a, const Table& f, const FinPreord& b);
Json describe_map(const FinCat& a, const FunctorTable& f, const FinCat& b);

}  // namespace stabcat
