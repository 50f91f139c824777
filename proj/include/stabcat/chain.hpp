#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/category.hpp"

namespace stabcat {

/// An arrow of the skeletal quotient: a reduced chain of ambient arrows
/// (f1, ..., fn), applied left to right, between two iso-classes. The empty
/// chain is the identity of its class.
struct ChainArrow {
  int dom = 0;  // iso-class indices
  int cod = 0;
  std::vector<int> arrows;

  friend auto operator<=>(const ChainArrow&, const ChainArrow&) = default;
};

/// One rewriting step on a chain: delete an identity at `pos`, or replace the
/// composable pair (pos, pos+1) by its composite.
struct Redex {
  enum class Kind { DropIdentity, Compose } kind = Kind::DropIdentity;
  int pos = 0;
  friend bool operator==(const Redex&, const Redex&) = default;
};

inline constexpr int kDefaultChainBound = 4;

/// The quotient of a finite category identifying isomorphic objects. Arrows
/// are reduced chains; hom-sets are enumerated up to a length bound because
/// the quotient may be infinite (two mutually inverse arrows between distinct
/// objects generate a copy of the integers).
class SkeletalQuotient {
 public:
  explicit SkeletalQuotient(CatRef ambient, int max_len = kDefaultChainBound);

  const FinCat& ambient() const { return *ambient_; }
  const CatRef& ambient_ref() const { return ambient_; }
  int bound() const { return max_len_; }

  int class_count() const { return static_cast<int>(classes_.size()); }
  int class_of(int object) const { return class_of_[static_cast<std::size_t>(object)]; }
  Mask class_members(int cls) const { return classes_[static_cast<std::size_t>(cls)]; }
  /// The member with the least name.
  int representative(int cls) const { return representative_[static_cast<std::size_t>(cls)]; }
  /// The object name for singleton classes, "[x,y]" (sorted) otherwise.
  const std::string& class_name(int cls) const { return class_names_[static_cast<std::size_t>(cls)]; }
  /// Classes hit by an object mask of the ambient category.
  Mask classes_of(Mask objects) const;
  /// Ambient objects lying in the given classes.
  Mask objects_of(Mask classes) const;

  /// Throws JunctionMismatch if a junction joins non-isomorphic objects.
  /// The chain must be non-empty.
  ChainArrow make_chain(std::vector<int> arrows) const;
  ChainArrow identity(int cls) const { return ChainArrow{cls, cls, {}}; }
  ChainArrow generator(int arrow) const { return normalize(make_chain({arrow})); }

  std::vector<Redex> redexes(const std::vector<int>& chain) const;
  std::vector<int> apply(std::vector<int> chain, Redex r) const;
  /// Leftmost-first rewriting to the reduced form.
  ChainArrow normalize(ChainArrow c) const;
  bool is_reduced(const std::vector<int>& chain) const;

  /// g ∘ f (f first). Throws TypeMismatch if the classes do not meet.
  ChainArrow compose(const ChainArrow& g, const ChainArrow& f) const;

  /// Reduced chains from `from` to `to` of length at most `len`, ordered by
  /// length then arrow indices.
  std::vector<ChainArrow> hom(int from, int to, int len) const;
  std::vector<ChainArrow> hom(int from, int to) const { return hom(from, to, max_len_); }
  /// Every reduced chain of length at most `len`.
  std::vector<ChainArrow> all_chains(int len) const;

  /// True when no reduced chain of length bound+1 exists; then no longer
  /// ones exist either and the enumeration is complete.
  bool finite() const;
  /// Bounded two-sided inverse search among chains of length at most `len`.
  std::optional<ChainArrow> inverse(const ChainArrow& c, int len) const;

  std::string chain_name(const ChainArrow& c) const;

  /// The quotient as a finite category (arrow order = all_chains order), when finite.
  std::optional<FinCat> materialize() const;
  /// Index of a chain among the materialized arrows.
  int arrow_index(const ChainArrow& c) const;
  /// The projection functor from the ambient category into materialize().
  FunctorTable unit_table() const;

 private:
  void extend(std::vector<int>& prefix, int len, std::vector<ChainArrow>& out, int to) const;

  CatRef ambient_;
  int max_len_;
  std::vector<Mask> classes_;
  std::vector<int> class_of_;
  std::vector<int> representative_;
  std::vector<std::string> class_names_;
  std::vector<ChainArrow> universe_;  // all_chains(max_len_)
};

/// Normal form of a non-empty chain under the quotient of its category.
ChainArrow normalize_chain(const SkeletalQuotient& q, std::vector<int> chain);

}  // namespace stabcat
