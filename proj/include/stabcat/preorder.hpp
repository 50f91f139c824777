#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabcat/mask.hpp"

namespace stabcat {

/// A finite preordered set. The relation is a boolean matrix stored as one
/// bitmask row per element: `leq(a, b)` is bit b of row a.
///
/// Values are immutable once built. The empty preorder is the strict initial
/// object of the ambient category.
class FinPreord {
 public:
  FinPreord() = default;

  /// Builds from a relation that is already reflexive and transitive.
  /// Throws Errc::NotReflexive / Errc::NotTransitive otherwise.
  static FinPreord from_rows(std::vector<std::string> names, std::vector<Mask> up);

  static FinPreord discrete(std::vector<std::string> names);
  static FinPreord indiscrete(std::vector<std::string> names);
  static FinPreord chain(std::vector<std::string> names);
  static FinPreord point(std::string name = "*");

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  bool leq(int a, int b) const { return has(up_[static_cast<std::size_t>(a)], b); }
  Mask up(int a) const { return up_[static_cast<std::size_t>(a)]; }
  Mask down(int a) const { return down_[static_cast<std::size_t>(a)]; }
  Mask all() const { return full_mask(size()); }

  /// Sub-preorder on `members` with the induced order; element order kept.
  FinPreord induced(Mask members) const;
  FinPreord opposite() const;

  std::vector<std::string> names_of(Mask m) const;
  /// Compact serialization used for caching and deterministic reports.
  std::string key() const;

  friend bool operator==(const FinPreord&, const FinPreord&) = default;

 private:
  FinPreord(std::vector<std::string> names, std::vector<Mask> up);

  std::vector<std::string> names_;
  std::vector<Mask> up_;
  std::vector<Mask> down_;
};

using PreordRef = std::shared_ptr<const FinPreord>;

inline PreordRef share(FinPreord p) { return std::make_shared<const FinPreord>(std::move(p)); }

// Raw, unvalidated preorder as read from a file.
struct RawPreord {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
};

/// Without `strict`, returns the reflexive-transitive closure of the given
/// pairs. With `strict`, the pairs must already form a preorder.
FinPreord validate_preord(const RawPreord& raw, bool strict);

/// Reflexive-transitive closure by iterated squaring of the relation matrix.
std::vector<Mask> preorder_closure(std::vector<Mask> rows);

// Index-level helpers. A "table" maps source indices to target indices, with
// -1 for elements outside the domain of a partially defined map.
using Table = std::vector<int>;

/// All monotone maps from the sub-preorder of `source` on `domain` into
/// `target`, in lexicographic order of their tables.
std::vector<Table> monotone_tables(const FinPreord& source, Mask domain, const FinPreord& target);

bool is_monotone_on(const FinPreord& source, const Table& f, Mask domain, const FinPreord& target);

/// {a in domain(f) : f(a) in sub}.
Mask preimage_mask(const Table& f, Mask sub);
Mask image_mask(const Table& f);
Mask domain_mask(const Table& f);

struct MonotoneMap {
  PreordRef source;
  PreordRef target;
  Table assign;

  /// Throws Errc::NotMonotone (naming the pair) or Errc::TypeMismatch.
  static MonotoneMap make(PreordRef source, PreordRef target, Table assign);
  static MonotoneMap identity(PreordRef object);
  /// Inclusion of the induced sub-preorder on `members`.
  static MonotoneMap inclusion(const PreordRef& ambient, Mask members);

  bool is_surjective() const;
  bool is_injective() const;
};

/// g ∘ f
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);
bool operator==(const MonotoneMap& a, const MonotoneMap& b);

struct SubPreord {
  PreordRef ambient;
  Mask members = 0;

  FinPreord object() const { return ambient->induced(members); }
  friend bool operator==(const SubPreord& a, const SubPreord& b) {
    return *a.ambient == *b.ambient && a.members == b.members;
  }
};

SubPreord preimage_sub(const MonotoneMap& f, const SubPreord& sub);

}  // namespace stabcat
