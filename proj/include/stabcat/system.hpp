#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabcat/ambient.hpp"
#include "stabcat/pushout.hpp"
#include "stabcat/report.hpp"

namespace stabcat {

// Coherent systems of distinguished subobjects.
//
//   indiscrete       only the empty subobject and the whole object (both ambients)
//   open             a <= b, b in S  =>  a in S          (preorders)
//   closed           a <= b, a in S  =>  b in S          (preorders)
//   saturated        open and closed on preorders; on categories both of the below
//   left-saturated   f: A -> B, B in S  =>  f in S       (categories)
//   right-saturated  f: A -> B, A in S  =>  f in S       (categories)
enum class SystemKind { Indiscrete, Open, Closed, Saturated, LeftSaturated, RightSaturated };

std::string_view to_string(SystemKind kind);
/// Accepts the names above plus "clopen" for saturated.
std::optional<SystemKind> parse_system_kind(std::string_view text);
bool applies_to_preord(SystemKind kind);
bool applies_to_cat(SystemKind kind);

/// Membership test on an element mask. Throws KindMismatch.
bool is_distinguished_mask(const FinPreord& a, Mask m, SystemKind kind);
/// Membership test for the full subcategory on `objs`. Throws KindMismatch.
bool is_distinguished_mask(const FinCat& c, Mask objs, SystemKind kind);

bool is_distinguished(const SubPreord& s, SystemKind kind);
/// Non-full subcategories are never distinguished.
bool is_distinguished(const SubCat& s, SystemKind kind);

/// True when some isomorphism a ≅ b carries the subset ma onto mb. Preorders
/// are compared up to relabeling; categories by equality.
bool same_subobject(const FinPreord& a, Mask ma, const FinPreord& b, Mask mb);
bool same_subobject(const FinCat& a, Mask ma, const FinCat& b, Mask mb);

/// A system kind, optionally with deliberately removed members. The removals
/// exist to exercise the verifiers on broken systems.
template <class Object>
struct System {
  SystemKind kind = SystemKind::Indiscrete;
  std::vector<std::pair<Object, Mask>> removed;

  bool contains(const Object& a, Mask m) const {
    if (!is_distinguished_mask(a, m, kind)) return false;
    for (const auto& [obj, mask] : removed) {
      if (same_subobject(a, m, obj, mask)) return false;
    }
    return true;
  }
  bool faulty() const { return !removed.empty(); }
};

using PreordSystem = System<FinPreord>;
using CatSystem = System<FinCat>;

/// Open subsets minus {a,b} in the three-element antichain on {a,b,c}: the
/// union {a} ∪ {b} is then no longer distinguished.
PreordSystem seeded_union_fault();
/// Open subsets minus {a,b} in P3: pulling back {x} along P3 -> (x<y) leaves
/// the system.
PreordSystem seeded_pullback_fault();

struct DistinguishedLattice {
  SystemKind kind = SystemKind::Indiscrete;
  std::vector<std::string> carrier;  // element or object names
  std::vector<Mask> members;         // ordered by their sorted name lists
  std::vector<std::vector<int>> join;  // index into members, -1 if the union is not a member
  std::vector<std::vector<int>> meet;

  int size() const { return static_cast<int>(members.size()); }
  int index_of(Mask m) const;
  bool contains(Mask m) const { return index_of(m) >= 0; }
  std::vector<std::string> names(int i) const;
};

inline constexpr int kDefaultLatticeCap = 16;

/// Scans all 2^n subsets (objects for categories). Throws SizeLimit above `cap`.
DistinguishedLattice enumerate_distinguished(const FinPreord& a, const PreordSystem& sys, int cap = kDefaultLatticeCap);
DistinguishedLattice enumerate_distinguished(const FinCat& c, const CatSystem& sys, int cap = kDefaultLatticeCap);
DistinguishedLattice enumerate_distinguished(const FinPreord& a, SystemKind kind, int cap = kDefaultLatticeCap);
DistinguishedLattice enumerate_distinguished(const FinCat& c, SystemKind kind, int cap = kDefaultLatticeCap);

/// Union / intersection / inverse image. Inputs must be distinguished
/// (NotDistinguishedInput); the result is asserted distinguished
/// (CoherenceFault otherwise).
SubPreord dist_union(const SubPreord& s, const SubPreord& t, SystemKind kind);
SubCat dist_union(const SubCat& s, const SubCat& t, SystemKind kind);
SubPreord dist_intersection(const SubPreord& s, const SubPreord& t, SystemKind kind);
SubCat dist_intersection(const SubCat& s, const SubCat& t, SystemKind kind);
SubPreord dist_preimage(const MonotoneMap& f, const SubPreord& s, SystemKind kind);
SubCat dist_preimage(const Functor& f, const SubCat& s, SystemKind kind);

struct EpiVerdict {
  enum class Value { Yes, No, Unknown } value = Value::Unknown;
  Mask witness = 0;  // for No: a proper distinguished subobject containing the image
};

/// Throws NotEpi when the map is known not to be an epimorphism.
EpiVerdict is_distinguished_epi(const MonotoneMap& f, SystemKind kind);
EpiVerdict is_distinguished_epi(const Functor& f, SystemKind kind);

template <class Amb>
EpiVerdict distinguished_epi_verdict(const typename Amb::Object& a, const typename Amb::Map& f,
                                     const typename Amb::Object& b, const System<typename Amb::Object>& sys,
                                     const DistinguishedLattice& lattice_of_b);

/// A subcategory has a complement when some subcategory T satisfies
/// S ∩ T = 0 and S ∪ T = C (union with composite closure). Exhaustive.
bool is_complemented(const SubCat& s);
std::optional<SubCat> find_complement(const SubCat& s);

template <class Object>
using Corpus = Battery<Object>;

struct CsOptions {
  bool effective = true;      // run the pushout check
  bool epimorphisms = true;   // orthogonality and composition of distinguished epis
  int epi_max_size = 3;       // corpus objects above this size are skipped by the epi checks
};

/// Checks the coherent-system axioms and the distinguished-epi properties on
/// a corpus. Pushouts are tested against `battery`.
Report verify_cs(const Corpus<FinPreord>& corpus, const PreordSystem& sys, const Battery<FinPreord>& battery,
                 const CsOptions& opts = {});
Report verify_cs(const Corpus<FinCat>& corpus, const CatSystem& sys, const Battery<FinCat>& battery,
                 const CsOptions& opts = {});

}  // namespace stabcat
