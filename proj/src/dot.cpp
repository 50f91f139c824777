#include "stabcat/dot.hpp"

#include <sstream>

namespace stabcat {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string set_label(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + "}";
}

}  // namespace

std::string lattice_dot(const DistinguishedLattice& lattice) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  const auto n = lattice.members.size();
  for (std::size_t i = 0; i < n; ++i) out << "  n" << i << " [label=" << quote(set_label(lattice.names(static_cast<int>(i)))) << "];\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Mask a = lattice.members[i];
      const Mask b = lattice.members[j];
      if (a == b || !subset(a, b)) continue;
      bool cover = true;
      for (Mask c : lattice.members) {
        if (c != a && c != b && subset(a, c) && subset(c, b)) cover = false;
      }
      if (cover) out << "  n" << i << " -> n" << j << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string preorder_dot(const FinPreord& p) {
  std::ostringstream out;
  out << "digraph preorder {\n  rankdir=BT;\n";
  for (int a = 0; a < p.size(); ++a) out << "  " << quote(p.name(a)) << ";\n";
  auto strict = [&](int a, int b) { return p.leq(a, b) && !p.leq(b, a); };
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < p.size(); ++b) {
      if (a < b && p.leq(a, b) && p.leq(b, a)) {
        out << "  " << quote(p.name(a)) << " -> " << quote(p.name(b)) << " [dir=none, style=dashed];\n";
      }
      if (!strict(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < p.size(); ++c) {
        if (strict(a, c) && strict(c, b)) cover = false;
      }
      if (cover) out << "  " << quote(p.name(a)) << " -> " << quote(p.name(b)) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string category_dot(const FinCat& c) {
  std::ostringstream out;
  out << "digraph category {\n";
  for (const auto& o : c.object_names()) out << "  " << quote(o) << ";\n";
  for (int f = 0; f < c.arrow_count(); ++f) {
    if (c.is_identity(f)) continue;
    out << "  " << quote(c.object_name(c.dom(f))) << " -> " << quote(c.object_name(c.cod(f)))
        << " [label=" << quote(c.arrow(f).name) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace stabcat
