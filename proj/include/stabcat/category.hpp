#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "stabcat/mask.hpp"

namespace stabcat {

struct Arrow {
  std::string name;
  int dom = 0;
  int cod = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A finite category with an explicit composition table.
///
/// Objects and arrows are addressed by index; names are unique within their
/// kind. The empty category is a legal value (the strict initial object).
class FinCat {
 public:
  FinCat() = default;

  int object_count() const { return static_cast<int>(objects_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::string& object_name(int x) const { return objects_[static_cast<std::size_t>(x)]; }
  const std::vector<std::string>& object_names() const { return objects_; }
  const Arrow& arrow(int f) const { return arrows_[static_cast<std::size_t>(f)]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  int dom(int f) const { return arrow(f).dom; }
  int cod(int f) const { return arrow(f).cod; }
  int identity(int x) const { return identity_[static_cast<std::size_t>(x)]; }
  bool is_identity(int f) const { return identity(dom(f)) == f; }

  /// g ∘ f, or -1 when cod(f) != dom(g).
  int compose(int g, int f) const {
    return compose_[static_cast<std::size_t>(g * arrow_count() + f)];
  }

  std::optional<int> object_index(std::string_view name) const;
  std::optional<int> arrow_index(std::string_view name) const;

  /// Arrows x -> y, in index order.
  std::vector<int> hom(int x, int y) const;
  /// Two-sided inverse of f, if any.
  std::optional<int> inverse(int f) const;
  bool is_iso(int f) const { return inverse(f).has_value(); }
  bool is_invertible_endo(int f) const { return dom(f) == cod(f) && is_iso(f); }

  Mask all_objects() const { return full_mask(object_count()); }
  Mask all_arrows() const { return full_mask(arrow_count()); }
  /// Arrows with both endpoints in `objs`.
  Mask arrows_within(Mask objs) const;

  /// Subcategory on the given objects and arrows, renumbered in index order.
  /// The caller guarantees closure (see SubCat).
  FinCat restrict(Mask objs, Mask arrs) const;
  FinCat full(Mask objs) const { return restrict(objs, arrows_within(objs)); }
  FinCat opposite() const;

  std::string key() const;

  friend bool operator==(const FinCat&, const FinCat&) = default;

 private:
  friend FinCat build_cat(std::vector<std::string>, std::vector<Arrow>, std::vector<int>, std::vector<int>);

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> identity_;
  std::vector<int> compose_;
};

using CatRef = std::shared_ptr<const FinCat>;

inline CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

// Raw category as read from a file. Identities may be omitted (an arrow
// "id_<obj>" is synthesized) and composites with identities may be omitted
// (forced by the unit laws).
struct RawArrow {
  std::string name;
  std::string dom;
  std::string cod;
};

struct RawCat {
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;
  std::map<std::string, std::string> identities;
  std::vector<std::tuple<std::string, std::string, std::string>> compose;  // (g, f, g∘f)
};

/// Throws MissingComposite(g,f), UnitLawViolation(f),
/// AssociativityViolation(h,g,f), DanglingEndpoint(arrow) or DuplicateName.
FinCat validate_cat(const RawCat& raw);

/// Index-level functor data, -1 outside the domain.
struct FunctorTable {
  std::vector<int> obj;
  std::vector<int> arr;
  friend auto operator<=>(const FunctorTable&, const FunctorTable&) = default;
};

/// All functors from the full subcategory of `source` on `objs` into
/// `target`, as tables indexed by `source`.
std::vector<FunctorTable> functor_tables(const FinCat& source, Mask objs, const FinCat& target);

bool is_functor_on(const FinCat& source, const FunctorTable& f, Mask objs, const FinCat& target);

struct Functor {
  CatRef source;
  CatRef target;
  FunctorTable map;

  /// Throws Errc::NotFunctorial naming the offending arrow or pair.
  static Functor make(CatRef source, CatRef target, FunctorTable map);
  static Functor identity(CatRef c);
  static Functor inclusion(const CatRef& ambient, Mask objs, Mask arrs);

  bool surjective_on_objects() const;
  bool surjective_on_arrows() const;
  /// Surjective on objects and the image arrows generate every target
  /// arrow under composition: a sufficient condition for an epimorphism.
  bool certified_epi() const;
};

Functor compose(const Functor& g, const Functor& f);
bool operator==(const Functor& a, const Functor& b);

/// A subcategory given by object and arrow memberships. `make` checks the
/// closure invariants (identities, endpoints, composites).
struct SubCat {
  CatRef ambient;
  Mask objs = 0;
  Mask arrs = 0;

  static SubCat make(CatRef ambient, Mask objs, Mask arrs);
  static SubCat full(CatRef ambient, Mask objs);
  static SubCat whole(CatRef ambient) { return full(ambient, ambient->all_objects()); }

  bool is_full() const { return arrs == ambient->arrows_within(objs); }
  FinCat object() const { return ambient->restrict(objs, arrs); }
  friend bool operator==(const SubCat& a, const SubCat& b) {
    return *a.ambient == *b.ambient && a.objs == b.objs && a.arrs == b.arrs;
  }
};

bool is_subcategory(const FinCat& c, Mask objs, Mask arrs);
/// Every subcategory of `c` (objects × closed arrow sets). Small inputs only.
std::vector<SubCat> all_subcategories(const CatRef& c);

/// Union of two subcategories: object union, arrow union, then every
/// composite of a chain of consecutive arrows in the arrow union.
SubCat union_closure(const SubCat& s, const SubCat& t);
SubCat intersection(const SubCat& s, const SubCat& t);

SubCat preimage_sub(const Functor& f, const SubCat& sub);

}  // namespace stabcat
