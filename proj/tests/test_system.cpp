#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "stabcat/corpus.hpp"
#include "stabcat/error.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/system.hpp"

using namespace stabcat;

namespace {

// Direct transcription of the closure conditions, quantifying over all pairs.
bool oracle_member(const FinPreord& a, Mask m, SystemKind kind) {
  const int n = a.size();
  bool open = true;
  bool closed = true;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!a.leq(x, y)) continue;
      if (has(m, y) && !has(m, x)) open = false;
      if (has(m, x) && !has(m, y)) closed = false;
    }
  }
  switch (kind) {
    case SystemKind::Indiscrete: return m == 0 || m == a.all();
    case SystemKind::Open: return open;
    case SystemKind::Closed: return closed;
    case SystemKind::Saturated: return open && closed;
    default: return false;
  }
}

std::vector<Mask> oracle_lattice(const FinPreord& a, SystemKind kind) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << a.size()); ++m) {
    if (oracle_member(a, m, kind)) out.push_back(m);
  }
  return out;
}

std::vector<Mask> sorted(std::vector<Mask> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const SystemKind kPreordKinds[] = {SystemKind::Indiscrete, SystemKind::Open, SystemKind::Closed,
                                   SystemKind::Saturated};
const SystemKind kCatKinds[] = {SystemKind::Indiscrete, SystemKind::LeftSaturated, SystemKind::RightSaturated,
                                SystemKind::Saturated};

}  // namespace

TEST_CASE("membership on P3") {
  const FinPreord p3 = fixtures::p3();
  CHECK(is_distinguished_mask(p3, bit(0) | bit(1), SystemKind::Open));
  CHECK_FALSE(is_distinguished_mask(p3, bit(2), SystemKind::Open));
  CHECK(is_distinguished_mask(p3, bit(2), SystemKind::Closed));
  CHECK(enumerate_distinguished(p3, SystemKind::Saturated).members == std::vector<Mask>{0, p3.all()});
  CHECK(enumerate_distinguished(p3, SystemKind::Open).members == std::vector<Mask>{0, bit(0) | bit(1), p3.all()});
  CHECK(enumerate_distinguished(p3, SystemKind::Indiscrete).members == std::vector<Mask>{0, p3.all()});
  try {
    is_distinguished_mask(p3, 0, SystemKind::LeftSaturated);
    FAIL("expected KindMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KindMismatch);
  }
}

TEST_CASE("lattices equal the brute-force filter on the corpus") {
  for (const auto& [name, a] : preorder_corpus(4)) {
    for (SystemKind kind : kPreordKinds) {
      const auto lat = enumerate_distinguished(a, kind);
      CHECK_MESSAGE(sorted(lat.members) == oracle_lattice(a, kind), name << " " << to_string(kind));
    }
  }
}

TEST_CASE("saturated members are unions of comparability components") {
  for (const auto& [name, a] : preorder_corpus(4)) {
    const auto label = oracle::components(a);
    const int comps = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    std::vector<Mask> expect;
    for (Mask pick = 0; pick < (Mask{1} << comps); ++pick) {
      Mask m = 0;
      for (int x = 0; x < a.size(); ++x) {
        if (has(pick, label[static_cast<std::size_t>(x)])) m |= bit(x);
      }
      expect.push_back(m);
    }
    CHECK_MESSAGE(sorted(enumerate_distinguished(a, SystemKind::Saturated).members) == sorted(expect), name);
  }
}

TEST_CASE("lattice operations obey the lattice laws") {
  for (const auto& [name, a] : preorder_corpus(4)) {
    for (SystemKind kind : kPreordKinds) {
      const auto lat = enumerate_distinguished(a, kind);
      const int k = lat.size();
      for (int x = 0; x < k; ++x) {
        CHECK(lat.join[x][x] == x);
        CHECK(lat.meet[x][x] == x);
        for (int y = 0; y < k; ++y) {
          CHECK(lat.join[x][y] == lat.join[y][x]);
          CHECK(lat.meet[x][y] == lat.meet[y][x]);
          CHECK(lat.join[x][lat.meet[x][y]] == x);
          CHECK(lat.meet[x][lat.join[x][y]] == x);
          for (int z = 0; z < k; ++z) {
            CHECK(lat.join[x][lat.join[y][z]] == lat.join[lat.join[x][y]][z]);
            CHECK(lat.meet[x][lat.meet[y][z]] == lat.meet[lat.meet[x][y]][z]);
          }
        }
      }
    }
  }
}

TEST_CASE("members are listed by sorted names") {
  const FinPreord anti = FinPreord::discrete({"b", "a"});
  const auto lat = enumerate_distinguished(anti, SystemKind::Open);
  REQUIRE(lat.size() == 4);
  CHECK(lat.names(0).empty());
  CHECK(lat.names(1) == std::vector<std::string>{"a"});
  CHECK(lat.names(2) == std::vector<std::string>{"a", "b"});
  CHECK(lat.names(3) == std::vector<std::string>{"b"});
}

TEST_CASE("category kinds on the cospan") {
  auto cospan = share(fixtures::cospan_cat());
  const Mask ab = bit(0) | bit(1);
  const Mask cb = bit(2) | bit(1);
  const SubCat s = SubCat::full(cospan, ab);
  const SubCat t = SubCat::full(cospan, cb);
  CHECK(is_distinguished(s, SystemKind::RightSaturated));
  CHECK_FALSE(is_distinguished(s, SystemKind::LeftSaturated));
  const SubCat u = dist_union(s, t, SystemKind::RightSaturated);
  CHECK(u.objs == cospan->all_objects());
  CHECK(u.arrs == cospan->all_arrows());
  const SubCat i = dist_intersection(s, t, SystemKind::RightSaturated);
  CHECK(i.objs == bit(1));
  CHECK(i.arrs == bit(cospan->identity(1)));
  CHECK(is_distinguished(i, SystemKind::RightSaturated));
  // A non-full subcategory is never distinguished.
  const SubCat objs_only = SubCat::make(cospan, ab, bit(cospan->identity(0)) | bit(cospan->identity(1)));
  CHECK_FALSE(is_distinguished(objs_only, SystemKind::RightSaturated));
}

TEST_CASE("category lattices contain only full subcategories") {
  for (const auto& [name, c] : fixtures::cat_fixtures()) {
    auto ref = share(c);
    for (SystemKind kind : kCatKinds) {
      const auto lat = enumerate_distinguished(c, kind);
      // Brute force over all subcategories, full or not.
      std::vector<Mask> expect;
      for (const auto& sub : all_subcategories(ref)) {
        bool ok = true;
        for (const auto& f : c.arrows()) {
          const int idx = static_cast<int>(&f - c.arrows().data());
          const bool in = has(sub.arrs, idx);
          if (kind == SystemKind::Indiscrete) continue;
          if ((kind != SystemKind::RightSaturated) && has(sub.objs, f.cod) && !in) ok = false;
          if ((kind != SystemKind::LeftSaturated) && has(sub.objs, f.dom) && !in) ok = false;
        }
        if (kind == SystemKind::Indiscrete) {
          ok = (sub.objs == 0) || (sub.objs == c.all_objects() && sub.arrs == c.all_arrows());
        }
        if (ok) {
          CHECK(sub.is_full());
          expect.push_back(sub.objs);
        }
      }
      CHECK_MESSAGE(sorted(lat.members) == sorted(expect), name << " " << to_string(kind));
    }
  }
}

TEST_CASE("union, intersection and inverse image") {
  auto p3 = share(fixtures::p3());
  auto c2 = share(fixtures::chain2());
  const SubPreord ab{p3, bit(0) | bit(1)};
  CHECK(dist_union(ab, ab, SystemKind::Open).members == ab.members);
  CHECK(dist_union(ab, SubPreord{p3, 0}, SystemKind::Open).members == ab.members);
  CHECK(dist_intersection(ab, SubPreord{p3, p3->all()}, SystemKind::Open).members == ab.members);
  CHECK(dist_intersection(ab, SubPreord{p3, 0}, SystemKind::Open).members == 0);
  const auto f = MonotoneMap::make(p3, c2, {0, 0, 1});
  CHECK(dist_preimage(f, SubPreord{c2, bit(0)}, SystemKind::Open).members == ab.members);
  CHECK(dist_preimage(f, SubPreord{c2, c2->all()}, SystemKind::Open).members == p3->all());
  const SubPreord x{c2, bit(0)};
  const SubPreord whole{c2, c2->all()};
  CHECK(dist_preimage(f, dist_union(x, whole, SystemKind::Open), SystemKind::Open).members ==
        dist_union(dist_preimage(f, x, SystemKind::Open), dist_preimage(f, whole, SystemKind::Open), SystemKind::Open)
            .members);
  try {
    dist_union(SubPreord{p3, bit(2)}, ab, SystemKind::Open);
    FAIL("expected NotDistinguishedInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotDistinguishedInput);
  }
}

TEST_CASE("inverse images preserve unions and intersections over corpus maps") {
  const auto corpus = preorder_corpus(3);
  for (SystemKind kind : kPreordKinds) {
    for (const auto& [an, a] : corpus) {
      for (const auto& [bn, b] : corpus) {
        const auto lat = enumerate_distinguished(b, kind);
        for (const auto& f : monotone_tables(a, a.all(), b)) {
          for (Mask s : lat.members) {
            CHECK(is_distinguished_mask(a, preimage_mask(f, s), kind));
            for (Mask t : lat.members) {
              CHECK(preimage_mask(f, s | t) == (preimage_mask(f, s) | preimage_mask(f, t)));
              CHECK(preimage_mask(f, s & t) == (preimage_mask(f, s) & preimage_mask(f, t)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("distinguished epimorphisms") {
  auto p3 = share(fixtures::p3());
  const auto id = MonotoneMap::identity(p3);
  for (SystemKind kind : kPreordKinds) CHECK(is_distinguished_epi(id, kind).value == EpiVerdict::Value::Yes);
  auto c2 = share(fixtures::chain2());
  const auto eta = MonotoneMap::make(p3, c2, {0, 0, 1});
  CHECK(is_distinguished_epi(eta, SystemKind::Saturated).value == EpiVerdict::Value::Yes);
  auto pt = share(FinPreord::point("p"));
  const auto not_epi = MonotoneMap::make(pt, c2, {0});
  try {
    is_distinguished_epi(not_epi, SystemKind::Saturated);
    FAIL("expected NotEpi");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotEpi);
  }
}

TEST_CASE("complemented subcategories") {
  auto cospan = share(fixtures::cospan_cat());
  const SubCat ab = SubCat::full(cospan, bit(0) | bit(1));
  CHECK(is_distinguished(ab, SystemKind::RightSaturated));
  CHECK_FALSE(is_complemented(ab));
  auto gpa = share(fixtures::grpd_plus_arrow());
  const SubCat comp = SubCat::full(gpa, bit(0) | bit(1));
  CHECK(is_distinguished(comp, SystemKind::Saturated));
  const auto other = find_complement(comp);
  REQUIRE(other.has_value());
  CHECK(other->objs == (bit(2) | bit(3)));
}

TEST_CASE("verifier passes the genuine systems on small corpora") {
  const auto corpus = preorder_corpus(3);
  for (SystemKind kind : kPreordKinds) {
    const auto rep = verify_cs(corpus, PreordSystem{kind, {}}, corpus);
    CHECK_MESSAGE(rep.ok(), to_string(kind) << "\n" << rep.to_json().dump(1).substr(0, 3000));
    CHECK(rep.passes_of("CS6") > 0);
  }
  const auto cats = fixtures::cat_fixtures();
  for (SystemKind kind : kCatKinds) {
    const auto rep = verify_cs(cats, CatSystem{kind, {}}, cats);
    CHECK_MESSAGE(rep.ok(), to_string(kind) << "\n" << rep.to_json().dump(1).substr(0, 3000));
  }
}

TEST_CASE("verifier catches seeded faults") {
  const auto corpus = preorder_corpus(3);
  const auto union_fault = verify_cs(corpus, seeded_union_fault(), corpus);
  CHECK(union_fault.failures_of("CS2") >= 1);
  const auto pullback_fault = verify_cs(corpus, seeded_pullback_fault(), corpus);
  CHECK_FALSE(pullback_fault.ok());
  bool has_witness = false;
  for (const auto& r : union_fault.records()) {
    if (!r.pass && r.check == "CS2") has_witness = r.witness.contains("union");
  }
  CHECK(has_witness);
}
