#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "stabcat/preorder.hpp"
#include "stabcat/report.hpp"
#include "stabcat/system.hpp"

namespace stabcat {

/// A finite partial order used as the index of presheaves.
struct FinPoset {
  FinPreord order;

  /// Throws InputError when two distinct points are equivalent.
  static FinPoset make(FinPreord order);
  int size() const { return order.size(); }
  const std::string& name(int p) const { return order.name(p); }
  bool leq(int p, int q) const { return order.leq(p, q); }
  bool covers(int p, int q) const;  // p < q with nothing strictly between
};

/// A presheaf of finite preorders on a finite poset: a component A(p) for
/// each point and a monotone restriction A(q) -> A(p) for each p <= q.
class PreordPresheaf {
 public:
  struct Restriction {
    int from = 0;  // q
    int to = 0;    // p <= q
    Table map;     // indexed by A(q)
  };

  /// `covers` gives the restriction along each covering pair; the others
  /// are composed. Throws InputError for a missing or superfluous cover,
  /// NotMonotone, or NotFunctorial when two paths disagree.
  static PreordPresheaf make(FinPoset index, std::vector<FinPreord> components, std::vector<Restriction> covers);
  static PreordPresheaf constant(FinPoset index, const FinPreord& value);

  const FinPoset& index() const { return index_; }
  int points() const { return index_.size(); }
  const FinPreord& at(int p) const { return components_[static_cast<std::size_t>(p)]; }
  /// Restriction A(q) -> A(p); requires p <= q.
  const Table& restriction(int q, int p) const { return restrictions_.at({q, p}); }
  int total_size() const;
  /// The presheaf with the point `p` removed from the index.
  PreordPresheaf without_point(int p) const;

 private:
  FinPoset index_;
  std::vector<FinPreord> components_;
  std::map<std::pair<int, int>, Table> restrictions_;
};

/// Componentwise sub-preorders, full at each point (the order of A(p)
/// restricted to S(p)).
struct InternalSub {
  std::vector<Mask> at;
  friend auto operator<=>(const InternalSub&, const InternalSub&) = default;
};

/// Restrictions of A map S(q) into S(p) for every p <= q.
bool is_internal_sub(const PreordPresheaf& a, const InternalSub& s);
/// Every internal sub-preorder. Throws SizeLimit above 20 elements in total.
std::vector<InternalSub> internal_subs(const PreordPresheaf& a);

InternalSub whole_sub(const PreordPresheaf& a);
InternalSub meet(const InternalSub& s, const InternalSub& t);
InternalSub join(const InternalSub& s, const InternalSub& t);

// Pointwise forms of the saturation axioms. Left: the codomain of an arrow
// in S forces the arrow into S. Right: the domain does. Saturated: either
// endpoint does.
bool is_left_saturated_internal(const PreordPresheaf& a, const InternalSub& s);
bool is_right_saturated_internal(const PreordPresheaf& a, const InternalSub& s);
bool is_saturated_internal(const PreordPresheaf& a, const InternalSub& s);

/// The same three properties through the pullback diagrams: the object of
/// arrows A1 and its subobject S1 are built as presheaves of pairs, the
/// pullback of the relevant subobject of A0 (or A0 x A0) along d1, d0 or
/// (d0, d1) is computed, and the factorization exists iff that pullback is
/// contained in S1.
enum class Endpoint { Codomain, Domain, Either };
bool saturated_by_factorization(const PreordPresheaf& a, const InternalSub& s, Endpoint which);

/// Exhaustive search for an internal T with S ∩ T = 0 and S ∪ T = A, the
/// union taken on arrows as well as on elements.
std::optional<InternalSub> complement_of(const PreordPresheaf& a, const InternalSub& s);
inline bool is_complemented_sub(const PreordPresheaf& a, const InternalSub& s) { return complement_of(a, s).has_value(); }

/// Checks on every internal sub-preorder of every corpus object: pointwise
/// and diagrammatic saturation agree, saturated iff left and right
/// saturated, and saturated subobjects are closed under meets and joins.
Report verify_internal_saturation(const Corpus<PreordPresheaf>& corpus);

/// Two-point index U <= X with A(X) = {a1 < b1, a2 < b2}, A(U) = {a < b}
/// and restriction a_i -> a, b_i -> b.
PreordPresheaf sierpinski_presheaf();
/// The two subobjects picking {a_i < b_i} at X and {a < b} at U.
std::pair<InternalSub, InternalSub> sierpinski_subs();

Report sierpinski_demo();

/// The loader's document form, and a subobject as names per index point.
Json describe_presheaf(const PreordPresheaf& a);
Json describe_internal(const PreordPresheaf& a, const InternalSub& s);

/// Presheaves on the two-point chain up to isomorphism with |A(X)| <= max_top
/// and |A(U)| <= max_bottom, followed by the Sierpinski presheaf.
Corpus<PreordPresheaf> presheaf_corpus(int max_top = 3, int max_bottom = 2);

}  // namespace stabcat
