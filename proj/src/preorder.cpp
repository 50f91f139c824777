#include "stabcat/preorder.hpp"

#include <algorithm>
#include <set>

#include "stabcat/error.hpp"

namespace stabcat {

namespace {

void check_names(const std::vector<std::string>& names) {
  if (names.size() > static_cast<std::size_t>(kMaxCarrier)) {
    throw Error(Errc::SizeLimit, "preorder carrier exceeds " + std::to_string(kMaxCarrier) + " elements");
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(Errc::InputError, "empty element name");
    if (!seen.insert(n).second) throw Error(Errc::DuplicateName, "duplicate element '" + n + "'", {n});
  }
}

std::vector<Mask> transpose(const std::vector<Mask>& rows) {
  std::vector<Mask> out(rows.size(), 0);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (int b : members(rows[a])) out[static_cast<std::size_t>(b)] |= bit(static_cast<int>(a));
  }
  return out;
}

}  // namespace

FinPreord::FinPreord(std::vector<std::string> names, std::vector<Mask> up)
    : names_(std::move(names)), up_(std::move(up)), down_(transpose(up_)) {}

FinPreord FinPreord::from_rows(std::vector<std::string> names, std::vector<Mask> up) {
  check_names(names);
  const int n = static_cast<int>(names.size());
  if (up.size() != names.size()) throw Error(Errc::InputError, "relation size does not match carrier");
  for (int a = 0; a < n; ++a) {
    if (!subset(up[a], full_mask(n))) throw Error(Errc::InputError, "relation row out of range");
    if (!has(up[a], a)) throw Error(Errc::NotReflexive, "missing (" + names[a] + "," + names[a] + ")", {names[a], names[a]});
  }
  for (int a = 0; a < n; ++a) {
    for (int b : members(up[a])) {
      for (int c : members(up[b])) {
        if (!has(up[a], c)) {
          throw Error(Errc::NotTransitive, "missing (" + names[a] + "," + names[c] + ")", {names[a], names[c]});
        }
      }
    }
  }
  return FinPreord(std::move(names), std::move(up));
}

FinPreord FinPreord::discrete(std::vector<std::string> names) {
  std::vector<Mask> up(names.size());
  for (std::size_t i = 0; i < up.size(); ++i) up[i] = bit(static_cast<int>(i));
  return from_rows(std::move(names), std::move(up));
}

FinPreord FinPreord::indiscrete(std::vector<std::string> names) {
  std::vector<Mask> up(names.size(), full_mask(static_cast<int>(names.size())));
  return from_rows(std::move(names), std::move(up));
}

FinPreord FinPreord::chain(std::vector<std::string> names) {
  const int n = static_cast<int>(names.size());
  std::vector<Mask> up(names.size());
  for (int i = 0; i < n; ++i) up[i] = full_mask(n) & ~full_mask(i);
  return from_rows(std::move(names), std::move(up));
}

FinPreord FinPreord::point(std::string name) { return discrete({std::move(name)}); }

std::optional<int> FinPreord::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

FinPreord FinPreord::induced(Mask m) const {
  const auto idx = members(m & all());
  std::vector<std::string> names;
  std::vector<Mask> up;
  for (int a : idx) {
    names.push_back(names_[a]);
    Mask row = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (leq(a, idx[j])) row |= bit(static_cast<int>(j));
    }
    up.push_back(row);
  }
  return FinPreord(std::move(names), std::move(up));
}

FinPreord FinPreord::opposite() const { return FinPreord(names_, down_); }

std::vector<std::string> FinPreord::names_of(Mask m) const {
  std::vector<std::string> out;
  for (int a : members(m & all())) out.push_back(names_[a]);
  return out;
}

std::string FinPreord::key() const {
  std::string k = "P{";
  for (int a = 0; a < size(); ++a) {
    if (a) k += ',';
    k += names_[a];
  }
  k += '|';
  for (int a = 0; a < size(); ++a) {
    if (a) k += ',';
    k += std::to_string(up_[a]);
  }
  k += '}';
  return k;
}

std::vector<Mask> preorder_closure(std::vector<Mask> rows) {
  for (std::size_t a = 0; a < rows.size(); ++a) rows[a] |= bit(static_cast<int>(a));
  // R <- R ∘ R until fixpoint; each pass at least doubles path lengths.
  for (;;) {
    std::vector<Mask> next(rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      Mask acc = rows[a];
      for (int b : members(rows[a])) acc |= rows[static_cast<std::size_t>(b)];
      next[a] = acc;
    }
    if (next == rows) return rows;
    rows = std::move(next);
  }
}

FinPreord validate_preord(const RawPreord& raw, bool strict) {
  check_names(raw.elements);
  FinPreord names_only = FinPreord::discrete(raw.elements);
  std::vector<Mask> rows(raw.elements.size(), 0);
  for (const auto& [a, b] : raw.leq) {
    auto ia = names_only.index_of(a);
    auto ib = names_only.index_of(b);
    if (!ia || !ib) throw Error(Errc::InputError, "relation mentions unknown element '" + (ia ? b : a) + "'");
    rows[*ia] |= bit(*ib);
  }
  if (!strict) rows = preorder_closure(std::move(rows));
  return FinPreord::from_rows(raw.elements, std::move(rows));
}

bool is_monotone_on(const FinPreord& source, const Table& f, Mask domain, const FinPreord& target) {
  for (int a : members(domain)) {
    for (int b : members(source.up(a) & domain)) {
      if (!target.leq(f[a], f[b])) return false;
    }
  }
  return true;
}

std::vector<Table> monotone_tables(const FinPreord& source, Mask domain, const FinPreord& target) {
  std::vector<Table> out;
  const auto dom = members(domain & source.all());
  const int m = target.size();
  Table f(static_cast<std::size_t>(source.size()), -1);
  if (dom.empty()) {
    out.push_back(f);
    return out;
  }
  if (m == 0) return out;
  // Backtracking in index order; each new element is checked against the
  // already assigned ones in both directions.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == dom.size()) {
      out.push_back(f);
      return;
    }
    const int a = dom[k];
    for (int y = 0; y < m; ++y) {
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const int b = dom[j];
        if (source.leq(a, b) && !target.leq(y, f[b])) ok = false;
        if (source.leq(b, a) && !target.leq(f[b], y)) ok = false;
      }
      if (!ok) continue;
      f[a] = y;
      self(self, k + 1);
      f[a] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

Mask preimage_mask(const Table& f, Mask sub) {
  Mask out = 0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a] >= 0 && has(sub, f[a])) out |= bit(static_cast<int>(a));
  }
  return out;
}

Mask image_mask(const Table& f) {
  Mask out = 0;
  for (int y : f) {
    if (y >= 0) out |= bit(y);
  }
  return out;
}

Mask domain_mask(const Table& f) {
  Mask out = 0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a] >= 0) out |= bit(static_cast<int>(a));
  }
  return out;
}

MonotoneMap MonotoneMap::make(PreordRef source, PreordRef target, Table assign) {
  if (static_cast<int>(assign.size()) != source->size()) {
    throw Error(Errc::TypeMismatch, "assignment size does not match source carrier");
  }
  for (int y : assign) {
    if (y < 0 || y >= target->size()) throw Error(Errc::TypeMismatch, "assignment out of target range");
  }
  for (int a = 0; a < source->size(); ++a) {
    for (int b : members(source->up(a))) {
      if (!target->leq(assign[a], assign[b])) {
        throw Error(Errc::NotMonotone, source->name(a) + " <= " + source->name(b) + " is not preserved",
                    {source->name(a), source->name(b)});
      }
    }
  }
  return MonotoneMap{std::move(source), std::move(target), std::move(assign)};
}

MonotoneMap MonotoneMap::identity(PreordRef object) {
  Table t(static_cast<std::size_t>(object->size()));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
  return MonotoneMap{object, object, std::move(t)};
}

MonotoneMap MonotoneMap::inclusion(const PreordRef& ambient, Mask m) {
  auto sub = share(ambient->induced(m));
  Table t;
  for (int a : members(m & ambient->all())) t.push_back(a);
  return MonotoneMap{std::move(sub), ambient, std::move(t)};
}

bool MonotoneMap::is_surjective() const { return image_mask(assign) == target->all(); }

bool MonotoneMap::is_injective() const {
  return popcount(image_mask(assign)) == static_cast<int>(assign.size());
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (!(*f.target == *g.source)) throw Error(Errc::TypeMismatch, "composite of non-composable maps");
  Table t(f.assign.size());
  for (std::size_t a = 0; a < t.size(); ++a) t[a] = g.assign[static_cast<std::size_t>(f.assign[a])];
  return MonotoneMap{f.source, g.target, std::move(t)};
}

bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
  return a.assign == b.assign && *a.source == *b.source && *a.target == *b.target;
}

SubPreord preimage_sub(const MonotoneMap& f, const SubPreord& sub) {
  if (!(*sub.ambient == *f.target)) throw Error(Errc::TypeMismatch, "subobject is not in the target of the map");
  return SubPreord{f.source, preimage_mask(f.assign, sub.members)};
}

}  // namespace stabcat
