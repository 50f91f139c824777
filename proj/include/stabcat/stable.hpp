#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/pretorsion.hpp"

namespace stabcat {

/// A distinguished partial morphism A -> B: distinguished S0, S1 covering A
/// and a map defined on S1 (a table indexed by A, undefined off S1) that is
/// trivial on S0 ∩ S1.
template <class Th>
struct PartialMorphism {
  Mask s0 = 0;
  Mask s1 = 0;
  typename Th::Amb::Map map;
  friend auto operator<=>(const PartialMorphism&, const PartialMorphism&) = default;
};

/// U0, U1 distinguished, covering the source, U1 inside both S1 and T1, the
/// maps agree on U1 and each is trivial on U0 ∩ (its S1).
struct CongruenceWitness {
  Mask u0 = 0;
  Mask u1 = 0;
  friend bool operator==(const CongruenceWitness&, const CongruenceWitness&) = default;
};

/// One class of the quotient. The representative is the zero triple
/// (A, 0, 0_B) for the zero class and the first member in sorted order
/// otherwise.
struct StableMorphism {
  int representative = -1;    // index into StableHom::partials
  std::vector<int> members;   // every partial morphism of the class
  bool is_zero = false;
};

template <class Th>
struct StableHom {
  /// Every partial morphism A -> B, sorted by (|S0|, map table, S0, S1): the
  /// first member of a class is its representative.
  std::vector<PartialMorphism<Th>> partials;
  std::vector<int> class_of;
  std::vector<StableMorphism> classes;
  int zero_class = -1;
  /// Union-find merges performed while closing the congruence.
  long merges = 0;

  int class_count() const { return static_cast<int>(classes.size()); }
  /// -1 when the triple is not a valid partial morphism A -> B.
  int index_of(const PartialMorphism<Th>& p) const;
  int class_of_partial(const PartialMorphism<Th>& p) const;
  const PartialMorphism<Th>& representative(int cls) const {
    return partials[static_cast<std::size_t>(classes[static_cast<std::size_t>(cls)].representative)];
  }

  std::map<PartialMorphism<Th>, int> lookup;  // partial -> index
};

struct StableOptions {
  /// Seeded fault: congruence diagrams without the triviality conditions.
  bool drop_overlap_triviality = false;
  int lattice_cap = kDefaultLatticeCap;
};

/// The stable category for one coherent system, presented hom-set by hom-set.
/// Hom-sets and lattices are cached by object key.
template <class Th>
class StableCategory {
 public:
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;
  using Map = typename Amb::Map;
  using PM = PartialMorphism<Th>;

  explicit StableCategory(SystemKind kind, StableOptions opts = {});

  SystemKind kind() const { return kind_; }
  const StableOptions& options() const { return opts_; }
  const DistinguishedLattice& lattice(const Object& a) const;

  /// Throws NotDistinguishedInput, NotACover or NotTrivialOnOverlap.
  PM make_partial(const Object& a, Mask s0, Mask s1, Map f, const Object& b) const;
  PM identity(const Object& a) const;
  /// (A, 0, 0_B)
  PM zero(const Object& a, const Object& b) const;
  /// (0, A, f)
  PM embed(const Object& a, const Map& f) const;
  /// (T0,T1,g) ∘ (S0,S1,f) = (S0 ∪ f⁻¹T0, f⁻¹T1, g f). Throws CoherenceFault
  /// when the result violates the invariants.
  PM compose(const Object& a, const Object& b, const Object& c, const PM& second, const PM& first) const;

  std::optional<CongruenceWitness> find_congruence(const Object& a, const Object& b, const PM& p, const PM& q) const;

  const StableHom<Th>& hom(const Object& a, const Object& b) const;
  int classify(const Object& a, const Object& b, const PM& p) const;
  /// Class of second ∘ first, computed on representatives.
  int compose_classes(const Object& a, const Object& b, const Object& c, int second, int first) const;
  int identity_class(const Object& a) const { return classify(a, a, identity(a)); }
  int zero_class(const Object& a, const Object& b) const { return hom(a, b).zero_class; }
  /// Class of σ(f) for an ambient morphism f.
  int sigma(const Object& a, const Map& f, const Object& b) const { return classify(a, b, embed(a, f)); }

 private:
  bool congruent_by(const Object& a, const Object& b, const PM& p, const PM& q, Mask u0, Mask u1) const;

  SystemKind kind_;
  StableOptions opts_;
  mutable std::map<std::string, std::unique_ptr<DistinguishedLattice>> lattices_;
  mutable std::map<std::pair<std::string, std::string>, std::unique_ptr<StableHom<Th>>> homs_;
};

using PreordStable = StableCategory<PreordTheory>;
using CatStable = StableCategory<CatTheory>;

// ---------------------------------------------------------------------------
// Suites

/// Zero object, zero morphisms and zero objects of the stable category, and
/// the congruence and functoriality properties of the quotient, over hom-sets
/// from corpus objects to battery objects.
template <class Th>
Report verify_stable_zero(const Corpus<typename Th::Amb::Object>& corpus, SystemKind kind,
                          const Battery<typename Th::Amb::Object>& battery, const StableOptions& opts = {});

/// The torsion theory of the stable category: PT1 and the exactness of the
/// image of every canonical sequence, against stable morphisms from and to
/// battery objects.
template <class Th>
Report verify_stable_torsion(const Corpus<typename Th::Amb::Object>& corpus, SystemKind kind,
                             const Battery<typename Th::Amb::Object>& battery, int max_chain = kDefaultChainBound);

template <class Th>
struct CollapseIso {
  PartialMorphism<Th> forward;   // (T, S, s): A -> S
  PartialMorphism<Th> backward;  // (0, S, inclusion): S -> A
  CongruenceWitness on_source;   // backward ∘ forward ~ id_A
  CongruenceWitness on_sub;      // forward ∘ backward ~ id_S
};

/// A = S ∪ T with T trivial: A and S are isomorphic in the stable category.
/// Throws HypothesisViolated, or CoherenceFault if a composite is not
/// congruent to the identity.
template <class Th>
CollapseIso<Th> union_collapse_iso(const typename Th::Amb::Object& a, Mask s, Mask t, SystemKind kind);

/// Prop-style check of the zero-pushout property of the square
/// S∩T -> S, T -> S∪T for every battery object. With `in_dispar` the same
/// search runs on raw partial morphisms, where uniqueness is expected to fail.
template <class Th>
Report verify_zero_pushout(const typename Th::Amb::Object& a, Mask s, Mask t, SystemKind kind,
                           const Battery<typename Th::Amb::Object>& battery, bool in_dispar = false);

/// Collapse isomorphisms and zero-pushouts for every qualifying subobject pair
/// of every corpus object.
template <class Th>
Report verify_stable_unions(const Corpus<typename Th::Amb::Object>& corpus, SystemKind kind,
                            const Battery<typename Th::Amb::Object>& battery);

}  // namespace stabcat
