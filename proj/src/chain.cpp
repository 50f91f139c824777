#include "stabcat/chain.hpp"

#include <algorithm>
#include <map>

#include "stabcat/error.hpp"

namespace stabcat {

SkeletalQuotient::SkeletalQuotient(CatRef ambient, int max_len) : ambient_(std::move(ambient)), max_len_(max_len) {
  const FinCat& c = *ambient_;
  const int n = c.object_count();
  class_of_.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    if (class_of_[static_cast<std::size_t>(x)] >= 0) continue;
    const int cls = static_cast<int>(classes_.size());
    Mask m = 0;
    for (int y = 0; y < n; ++y) {
      bool iso = x == y;
      for (int f : c.hom(x, y)) {
        if (c.is_iso(f)) iso = true;
      }
      if (iso) {
        m |= bit(y);
        class_of_[static_cast<std::size_t>(y)] = cls;
      }
    }
    classes_.push_back(m);
    int rep = x;
    std::vector<std::string> names;
    for (int y : members(m)) {
      names.push_back(c.object_name(y));
      if (c.object_name(y) < c.object_name(rep)) rep = y;
    }
    representative_.push_back(rep);
    std::sort(names.begin(), names.end());
    if (names.size() == 1) {
      class_names_.push_back(names[0]);
    } else {
      std::string s = "[";
      for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
      class_names_.push_back(s + "]");
    }
  }
  universe_ = all_chains(max_len_);
}

Mask SkeletalQuotient::classes_of(Mask objects) const {
  Mask out = 0;
  for (int x : members(objects)) out |= bit(class_of(x));
  return out;
}

Mask SkeletalQuotient::objects_of(Mask classes) const {
  Mask out = 0;
  for (int k : members(classes)) out |= class_members(k);
  return out;
}

ChainArrow SkeletalQuotient::make_chain(std::vector<int> arrows) const {
  if (arrows.empty()) throw Error(Errc::InputError, "a chain without arrows needs an explicit class");
  const FinCat& c = *ambient_;
  for (std::size_t i = 0; i + 1 < arrows.size(); ++i) {
    if (class_of(c.cod(arrows[i])) != class_of(c.dom(arrows[i + 1]))) {
      throw Error(Errc::JunctionMismatch, "junction between non-isomorphic objects",
                  {c.arrow(arrows[i]).name, c.arrow(arrows[i + 1]).name});
    }
  }
  const int dom = class_of(c.dom(arrows.front()));
  const int cod = class_of(c.cod(arrows.back()));
  return ChainArrow{dom, cod, std::move(arrows)};
}

std::vector<Redex> SkeletalQuotient::redexes(const std::vector<int>& chain) const {
  const FinCat& c = *ambient_;
  std::vector<Redex> out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (c.is_identity(chain[i])) out.push_back({Redex::Kind::DropIdentity, static_cast<int>(i)});
    if (i + 1 < chain.size() && c.cod(chain[i]) == c.dom(chain[i + 1])) {
      out.push_back({Redex::Kind::Compose, static_cast<int>(i)});
    }
  }
  return out;
}

std::vector<int> SkeletalQuotient::apply(std::vector<int> chain, Redex r) const {
  const auto pos = static_cast<std::size_t>(r.pos);
  if (r.kind == Redex::Kind::DropIdentity) {
    chain.erase(chain.begin() + r.pos);
  } else {
    chain[pos] = ambient_->compose(chain[pos + 1], chain[pos]);
    chain.erase(chain.begin() + r.pos + 1);
  }
  return chain;
}

ChainArrow SkeletalQuotient::normalize(ChainArrow c) const {
  for (;;) {
    const auto rs = redexes(c.arrows);
    if (rs.empty()) return c;
    c.arrows = apply(std::move(c.arrows), rs.front());
  }
}

bool SkeletalQuotient::is_reduced(const std::vector<int>& chain) const { return redexes(chain).empty(); }

ChainArrow SkeletalQuotient::compose(const ChainArrow& g, const ChainArrow& f) const {
  if (f.cod != g.dom) throw Error(Errc::TypeMismatch, "chains do not meet");
  ChainArrow out{f.dom, g.cod, f.arrows};
  out.arrows.insert(out.arrows.end(), g.arrows.begin(), g.arrows.end());
  return normalize(std::move(out));
}

void SkeletalQuotient::extend(std::vector<int>& prefix, int len, std::vector<ChainArrow>& out, int to) const {
  const FinCat& c = *ambient_;
  const int last = prefix.back();
  if (to < 0 || class_of(c.cod(last)) == to) {
    out.push_back(ChainArrow{class_of(c.dom(prefix.front())), class_of(c.cod(last)), prefix});
  }
  if (static_cast<int>(prefix.size()) == len) return;
  for (int g = 0; g < c.arrow_count(); ++g) {
    if (c.is_identity(g)) continue;
    if (class_of(c.dom(g)) != class_of(c.cod(last)) || c.dom(g) == c.cod(last)) continue;
    prefix.push_back(g);
    extend(prefix, len, out, to);
    prefix.pop_back();
  }
}

namespace {

bool chain_order(const ChainArrow& a, const ChainArrow& b) {
  if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
  return a < b;
}

}  // namespace

std::vector<ChainArrow> SkeletalQuotient::hom(int from, int to, int len) const {
  std::vector<ChainArrow> out;
  if (from == to) out.push_back(identity(from));
  const FinCat& c = *ambient_;
  for (int f = 0; f < c.arrow_count() && len > 0; ++f) {
    if (c.is_identity(f) || class_of(c.dom(f)) != from) continue;
    std::vector<int> prefix{f};
    extend(prefix, len, out, to);
  }
  std::sort(out.begin(), out.end(), chain_order);
  return out;
}

std::vector<ChainArrow> SkeletalQuotient::all_chains(int len) const {
  std::vector<ChainArrow> out;
  for (int k = 0; k < class_count(); ++k) out.push_back(identity(k));
  const FinCat& c = *ambient_;
  for (int f = 0; f < c.arrow_count() && len > 0; ++f) {
    if (c.is_identity(f)) continue;
    std::vector<int> prefix{f};
    extend(prefix, len, out, -1);
  }
  std::sort(out.begin(), out.end(), chain_order);
  return out;
}

bool SkeletalQuotient::finite() const {
  for (const auto& ch : universe_) {
    if (static_cast<int>(ch.arrows.size()) < max_len_) continue;
    // A reduced chain of the maximal length: can it be extended?
    const FinCat& c = *ambient_;
    const int last = ch.arrows.back();
    for (int g = 0; g < c.arrow_count(); ++g) {
      if (!c.is_identity(g) && class_of(c.dom(g)) == class_of(c.cod(last)) && c.dom(g) != c.cod(last)) return false;
    }
  }
  return true;
}

std::optional<ChainArrow> SkeletalQuotient::inverse(const ChainArrow& ch, int len) const {
  for (const auto& cand : hom(ch.cod, ch.dom, len)) {
    if (compose(cand, ch) == identity(ch.dom) && compose(ch, cand) == identity(ch.cod)) return cand;
  }
  return std::nullopt;
}

std::string SkeletalQuotient::chain_name(const ChainArrow& ch) const {
  const FinCat& c = *ambient_;
  if (ch.arrows.empty()) return c.arrow(c.identity(representative(ch.dom))).name;
  std::string s;
  for (std::size_t i = 0; i < ch.arrows.size(); ++i) s += (i ? ";" : "") + c.arrow(ch.arrows[i]).name;
  return s;
}

std::optional<FinCat> SkeletalQuotient::materialize() const {
  if (!finite()) return std::nullopt;
  RawCat raw;
  for (int k = 0; k < class_count(); ++k) raw.objects.push_back(class_name(k));
  for (const auto& ch : universe_) raw.arrows.push_back({chain_name(ch), class_name(ch.dom), class_name(ch.cod)});
  for (int k = 0; k < class_count(); ++k) raw.identities[class_name(k)] = chain_name(identity(k));
  for (const auto& g : universe_) {
    for (const auto& f : universe_) {
      if (f.cod != g.dom) continue;
      raw.compose.emplace_back(chain_name(g), chain_name(f), chain_name(compose(g, f)));
    }
  }
  return validate_cat(raw);
}

int SkeletalQuotient::arrow_index(const ChainArrow& ch) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), ch, chain_order);
  if (it == universe_.end() || *it != ch) return -1;
  return static_cast<int>(it - universe_.begin());
}

FunctorTable SkeletalQuotient::unit_table() const {
  const FinCat& c = *ambient_;
  FunctorTable t;
  for (int x = 0; x < c.object_count(); ++x) t.obj.push_back(class_of(x));
  for (int f = 0; f < c.arrow_count(); ++f) t.arr.push_back(arrow_index(generator(f)));
  return t;
}

ChainArrow normalize_chain(const SkeletalQuotient& q, std::vector<int> chain) {
  return q.normalize(q.make_chain(std::move(chain)));
}

}  // namespace stabcat
