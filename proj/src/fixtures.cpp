#include "stabcat/fixtures.hpp"

namespace stabcat::fixtures {

FinPreord p3() { return validate_preord({{"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}}}, false); }

FinPreord chain2() { return FinPreord::chain({"x", "y"}); }

FinPreord chain_plus_point() { return validate_preord({{"p", "q", "t"}, {{"p", "q"}}}, false); }

FinCat arrow_cat() {
  RawCat raw;
  raw.objects = {"A", "B"};
  raw.arrows = {{"f", "A", "B"}};
  return validate_cat(raw);
}

FinCat cospan_cat() {
  RawCat raw;
  raw.objects = {"A", "B", "C"};
  raw.arrows = {{"f", "A", "B"}, {"g", "C", "B"}};
  return validate_cat(raw);
}

FinCat i2() {
  RawCat raw;
  raw.objects = {"x", "y"};
  raw.arrows = {{"u", "x", "y"}, {"v", "y", "x"}};
  raw.compose = {{"v", "u", "id_x"}, {"u", "v", "id_y"}};
  return validate_cat(raw);
}

FinCat grpd2() {
  RawCat raw;
  raw.objects = {"p", "q"};
  raw.arrows = {{"s", "p", "p"}, {"t", "q", "q"}};
  raw.compose = {{"s", "s", "id_p"}, {"t", "t", "id_q"}};
  return validate_cat(raw);
}

FinCat coproduct(const FinCat& a, const FinCat& b) {
  RawCat raw;
  auto add = [&raw](const FinCat& c) {
    for (const auto& o : c.object_names()) raw.objects.push_back(o);
    for (const auto& ar : c.arrows()) raw.arrows.push_back({ar.name, c.object_name(ar.dom), c.object_name(ar.cod)});
    for (int x = 0; x < c.object_count(); ++x) raw.identities[c.object_name(x)] = c.arrow(c.identity(x)).name;
    for (int g = 0; g < c.arrow_count(); ++g) {
      for (int f = 0; f < c.arrow_count(); ++f) {
        const int gf = c.compose(g, f);
        if (gf >= 0) raw.compose.emplace_back(c.arrow(g).name, c.arrow(f).name, c.arrow(gf).name);
      }
    }
  };
  add(a);
  add(b);
  return validate_cat(raw);
}

FinCat grpd_plus_arrow() { return coproduct(i2(), arrow_cat()); }

FinCat terminal_cat() {
  RawCat raw;
  raw.objects = {"*"};
  return validate_cat(raw);
}

std::vector<std::pair<std::string, FinCat>> cat_fixtures() {
  return {{"ArrowCat", arrow_cat()},
          {"CospanCat", cospan_cat()},
          {"I2", i2()},
          {"Grpd2", grpd2()},
          {"GrpdArrow", grpd_plus_arrow()}};
}

}  // namespace stabcat::fixtures
