#include "stabcat/pushout.hpp"

#include <map>

#include "stabcat/error.hpp"

namespace stabcat {

namespace {

Table restrict_table(const Table& f, Mask m) {
  Table out(f.size(), -1);
  for (int a : members(m)) out[a] = f[a];
  return out;
}

FunctorTable restrict_table(const FinCat& c, const FunctorTable& f, Mask objs) {
  FunctorTable out{std::vector<int>(f.obj.size(), -1), std::vector<int>(f.arr.size(), -1)};
  for (int x : members(objs)) out.obj[x] = f.obj[x];
  for (int a : members(c.arrows_within(objs))) out.arr[a] = f.arr[a];
  return out;
}

bool agree(const Table& f, const Table& g, Mask m) {
  for (int a : members(m)) {
    if (f[a] != g[a]) return false;
  }
  return true;
}

bool agree(const FinCat& c, const FunctorTable& f, const FunctorTable& g, Mask objs) {
  for (int x : members(objs)) {
    if (f.obj[x] != g.obj[x]) return false;
  }
  for (int a : members(c.arrows_within(objs))) {
    if (f.arr[a] != g.arr[a]) return false;
  }
  return true;
}

void check_square(Mask s, Mask t, Mask u, Mask all) {
  if (!subset(s, u) || !subset(t, u) || !subset(u, all)) {
    throw Error(Errc::PreconditionFailed, "square does not commute: S, T must lie in the union");
  }
}

}  // namespace

PushoutReport pushout_holds(const FinPreord& ambient, Mask s, Mask t, Mask u, const Battery<FinPreord>& battery) {
  check_square(s, t, u, ambient.all());
  PushoutReport rep;
  for (const auto& [name, b] : battery) {
    std::map<std::pair<Table, Table>, int> mediators;
    for (const auto& h : monotone_tables(ambient, u, b)) {
      ++mediators[{restrict_table(h, s), restrict_table(h, t)}];
    }
    const auto fs = monotone_tables(ambient, s, b);
    const auto gs = monotone_tables(ambient, t, b);
    for (const auto& f : fs) {
      for (const auto& g : gs) {
        if (!agree(f, g, s & t)) continue;
        ++rep.pairs_checked;
        auto it = mediators.find({f, g});
        const int count = it == mediators.end() ? 0 : it->second;
        if (count != 1 && rep.holds) {
          rep.holds = false;
          rep.witness = PushoutWitness{name, f, g, count};
        }
      }
    }
  }
  return rep;
}

PushoutReport pushout_holds(const FinCat& ambient, Mask s, Mask t, Mask u, const Battery<FinCat>& battery) {
  check_square(s, t, u, ambient.all_objects());
  PushoutReport rep;
  for (const auto& [name, b] : battery) {
    std::map<std::pair<FunctorTable, FunctorTable>, int> mediators;
    for (const auto& h : functor_tables(ambient, u, b)) {
      ++mediators[{restrict_table(ambient, h, s), restrict_table(ambient, h, t)}];
    }
    const auto fs = functor_tables(ambient, s, b);
    const auto gs = functor_tables(ambient, t, b);
    for (const auto& f : fs) {
      for (const auto& g : gs) {
        if (!agree(ambient, f, g, s & t)) continue;
        ++rep.pairs_checked;
        auto it = mediators.find({f, g});
        const int count = it == mediators.end() ? 0 : it->second;
        if (count != 1 && rep.holds) {
          rep.holds = false;
          rep.witness = PushoutWitness{name, f.obj, g.obj, count};
        }
      }
    }
  }
  return rep;
}

}  // namespace stabcat
