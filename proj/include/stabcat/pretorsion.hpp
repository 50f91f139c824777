#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabcat/ambient.hpp"
#include "stabcat/chain.hpp"
#include "stabcat/pushout.hpp"
#include "stabcat/report.hpp"
#include "stabcat/system.hpp"

namespace stabcat {

enum class TheoryKind { Preord, Cat };

std::string_view to_string(TheoryKind kind);
/// Accepts "preord", "preord-theory", "cat", "cat-theory".
std::optional<TheoryKind> parse_theory_kind(std::string_view text);

// Torsion: equivalence relations / groupoids. Torsion-free: partial orders /
// skeletal categories. Trivial: discrete sets / categories of automorphisms.
bool is_torsion(const FinPreord& a);
bool is_torsion_free(const FinPreord& a);
bool is_trivial_object(const FinPreord& a);
bool is_torsion(const FinCat& c);
bool is_torsion_free(const FinCat& c);
bool is_trivial_object(const FinCat& c);

/// a <= b in the domain implies f(a) = f(b).
bool is_trivial_on(const FinPreord& a, const Table& f, Mask dom, const FinPreord& b);
/// Every arrow within the domain goes to an invertible endomorphism.
bool is_trivial_on(const FinCat& a, const FunctorTable& f, Mask objs, const FinCat& b);

template <class Amb>
struct TrivialityCertificate {
  bool trivial = false;
  // For a trivial map: a trivial object with legs first: source -> middle and
  // second: middle -> target such that second ∘ first is the map.
  typename Amb::Object middle;
  typename Amb::Map first;
  typename Amb::Map second;
  // For a non-trivial map: a comparable pair (preorders) or an arrow.
  std::vector<std::string> violation;
};

TrivialityCertificate<PreordAmbient> is_trivial_morphism(const FinPreord& a, const Table& f, const FinPreord& b);
TrivialityCertificate<CatAmbient> is_trivial_morphism(const FinCat& a, const FunctorTable& f, const FinCat& b);
inline TrivialityCertificate<PreordAmbient> is_trivial_morphism(const MonotoneMap& f) {
  return is_trivial_morphism(*f.source, f.assign, *f.target);
}
inline TrivialityCertificate<CatAmbient> is_trivial_morphism(const Functor& f) {
  return is_trivial_morphism(*f.source, f.map, *f.target);
}

struct PreordTheory {
  using Amb = PreordAmbient;
  static constexpr std::string_view name = "preord-theory";
  static bool torsion(const FinPreord& a) { return is_torsion(a); }
  static bool torsion_free(const FinPreord& a) { return is_torsion_free(a); }
  static bool trivial_object(const FinPreord& a) { return is_trivial_object(a); }
  static bool trivial_on(const FinPreord& a, const Table& f, Mask dom, const FinPreord& b) {
    return is_trivial_on(a, f, dom, b);
  }
};

struct CatTheory {
  using Amb = CatAmbient;
  static constexpr std::string_view name = "cat-theory";
  static bool torsion(const FinCat& c) { return is_torsion(c); }
  static bool torsion_free(const FinCat& c) { return is_torsion_free(c); }
  static bool trivial_object(const FinCat& c) { return is_trivial_object(c); }
  static bool trivial_on(const FinCat& a, const FunctorTable& f, Mask objs, const FinCat& b) {
    return is_trivial_on(a, f, objs, b);
  }
};

// ---------------------------------------------------------------------------
// Canonical sequences  τ(A) -ε-> A -η-> φ(A)

struct PreordSequence {
  FinPreord object;
  FinPreord torsion;       // same carrier, symmetric part of the order
  Table counit;            // identity assignment
  FinPreord torsion_free;  // condensation; classes ordered by least member
  Table unit;              // class projection
};

/// Elements of one class of mutually comparable elements keep their name when
/// alone; larger classes are named "[a,b]" with members sorted by name.
PreordSequence canonical_sequence(const FinPreord& a);
FinPreord torsion_part(const FinPreord& a);
FinPreord torsion_free_part(const FinPreord& a);
/// Index of the condensation class of every element.
Table condensation_classes(const FinPreord& a);

/// The condensation of a monotone map: class(x) -> class(f(x)).
Table torsion_free_map(const FinPreord& a, const Table& f, const FinPreord& b);

struct CatSequence {
  FinCat object;
  FinCat torsion;        // wide subcategory of isomorphisms
  FunctorTable counit;   // inclusion, indexed by `torsion`
  std::shared_ptr<const SkeletalQuotient> quotient;
  std::optional<FinCat> torsion_free;  // when the quotient is finite
  std::optional<FunctorTable> unit;    // into *torsion_free
  bool truncated() const { return !torsion_free.has_value(); }
};

CatSequence canonical_sequence(const FinCat& c, int max_chain = kDefaultChainBound);
FinCat torsion_part(const FinCat& c);
/// Iso arrows of c, as a mask over arrows.
Mask iso_arrows(const FinCat& c);

/// The image of a chain under a functor, renormalized in the target quotient.
ChainArrow map_chain(const SkeletalQuotient& qa, const SkeletalQuotient& qb, const FunctorTable& f, const ChainArrow& c);

// ---------------------------------------------------------------------------
// Verification suites

struct PtOptions {
  /// Uses (A, equality) as torsion part: a deliberately wrong sequence.
  bool swap_fault = false;
  int max_chain = kDefaultChainBound;
  /// Composition preservation is checked on corpus triples up to this size.
  int composition_max_size = 3;
};

Report verify_pt(const Corpus<FinPreord>& corpus, const Battery<FinPreord>& battery, const PtOptions& opts = {});
Report verify_pt(const Corpus<FinCat>& corpus, const Battery<FinCat>& battery, const PtOptions& opts = {});

struct CcOptions {
  int max_chain = kDefaultChainBound;
  /// Probe objects for the union-of-restrictions check are limited to this size.
  int union_probe_max_size = 3;
};

Report verify_cc(const Corpus<FinPreord>& corpus, SystemKind kind, const Battery<FinPreord>& battery,
                 const CcOptions& opts = {});
Report verify_cc(const Corpus<FinCat>& corpus, SystemKind kind, const Battery<FinCat>& battery,
                 const CcOptions& opts = {});

}  // namespace stabcat
