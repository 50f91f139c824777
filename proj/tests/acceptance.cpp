// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stabcat/corpus.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/presheaf.hpp"
#include "stabcat/pretorsion.hpp"
#include "stabcat/stable.hpp"
#include "stabcat/system.hpp"
#include "stabcat/universal.hpp"

using namespace stabcat;

namespace {

constexpr double kCsPreordSeconds = 60;
constexpr double kCsCatSeconds = 30;
constexpr double kStableSeconds = 300;
constexpr int kRandomChains = 1000;
constexpr int kReductionOrders = 5;
constexpr int kDescriptionPairs = 20;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
  void report(const Report& rep, const std::string& label) {
    require(rep.ok(), label + " has " + std::to_string(rep.failures()) + " failing records");
  }
  void all_present(const Report& rep, const std::vector<std::string>& ids, const std::string& label) {
    for (const auto& id : ids) require(rep.passes_of(id) > 0, label + " never exercised " + id);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool failures_have_witnesses(const Report& rep) {
  for (const auto& r : rep.records()) {
    if (!r.pass && (r.witness.is_null() || r.witness.empty())) return false;
  }
  return true;
}

std::vector<std::string> cs_ids(bool effective) {
  std::vector<std::string> ids;
  for (int k = 1; k <= 9; ++k) {
    if (k != 6 || effective) ids.push_back("CS" + std::to_string(k));
  }
  return ids;
}

Outcome cs_preorders() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = preorder_corpus(4);
  const auto battery = preorder_corpus(3);
  out.require(corpus.size() == 47, "corpus of preorders on <= 4 elements has 47 members");
  for (SystemKind kind : {SystemKind::Open, SystemKind::Closed, SystemKind::Saturated, SystemKind::Indiscrete}) {
    const auto rep = verify_cs(corpus, PreordSystem{kind, {}}, battery);
    const std::string label(to_string(kind));
    out.report(rep, label);
    out.all_present(rep, cs_ids(kind != SystemKind::Indiscrete), label);
  }
  for (const auto& [label, sys] : {std::pair{"union fault", seeded_union_fault()},
                                   std::pair{"pullback fault", seeded_pullback_fault()}}) {
    const auto rep = verify_cs(corpus, sys, battery);
    out.require(!rep.ok(), std::string(label) + " detected");
    out.require(failures_have_witnesses(rep), std::string(label) + " failures carry witnesses");
  }
  const double s = seconds_since(t0);
  out.require(s < kCsPreordSeconds, "runtime under 60 s");
  out.detail << " corpus=" << corpus.size() << " time=" << s << "s";
  return out;
}

Outcome cs_categories() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = cat_fixture_corpus();
  for (SystemKind kind : {SystemKind::LeftSaturated, SystemKind::RightSaturated, SystemKind::Saturated}) {
    const auto rep = verify_cs(corpus, CatSystem{kind, {}}, corpus);
    const std::string label(to_string(kind));
    out.report(rep, label);
    out.all_present(rep, cs_ids(true), label);
  }
  auto cospan = share(fixtures::cospan_cat());
  const SubCat ab = SubCat::full(cospan, bit(*cospan->object_index("A")) | bit(*cospan->object_index("B")));
  out.require(is_distinguished(ab, SystemKind::RightSaturated), "{A->B} is right-saturated in the cospan");
  out.require(!is_complemented(ab), "{A->B} is not complemented");
  const double s = seconds_since(t0);
  out.require(s < kCsCatSeconds, "runtime under 30 s");
  out.detail << " fixtures=" << corpus.size() << " time=" << s << "s";
  return out;
}

Outcome pt_suite() {
  Outcome out;
  const auto preords = preorder_corpus(4);
  const auto rp = verify_pt(preords, preords);
  out.report(rp, "preord theory");
  out.all_present(rp, {"PT1", "PT2-kernel", "PT2-cokernel"}, "preord theory");
  const auto cats = cat_fixture_corpus();
  const auto rc = verify_pt(cats, cats);
  out.report(rc, "cat theory");
  out.all_present(rc, {"PT1", "PT2-kernel", "PT2-cokernel"}, "cat theory");

  // Torsion part is the symmetric part of the order; the torsion-free part is
  // the condensation by mutual comparability.
  const FinPreord p3 = fixtures::p3();
  const auto seq = canonical_sequence(p3);
  const auto comp = oracle::scc(p3);
  bool tau = true;
  bool phi = seq.torsion_free.size() == *std::max_element(comp.begin(), comp.end()) + 1;
  for (int a = 0; a < p3.size(); ++a) {
    for (int b = 0; b < p3.size(); ++b) {
      tau = tau && seq.torsion.leq(a, b) == (p3.leq(a, b) && p3.leq(b, a));
      phi = phi && (comp[a] == comp[b]) == (seq.unit[a] == seq.unit[b]);
      phi = phi && seq.torsion_free.leq(seq.unit[a], seq.unit[b]) == p3.leq(a, b);
    }
  }
  out.require(tau, "P3 torsion part matches the symmetric part");
  out.require(phi, "P3 torsion-free part matches the condensation");
  out.detail << " preorders=" << preords.size() << " cats=" << cats.size();
  return out;
}

Outcome cc_suite() {
  Outcome out;
  const auto corpus = preorder_corpus(4);
  const auto battery = preorder_corpus(3);
  const std::vector<std::string> ids{"CC1", "CC2", "CC3", "CC4", "CC5"};
  const auto sat = verify_cc(corpus, SystemKind::Saturated, battery);
  out.report(sat, "preord saturated");
  out.all_present(sat, ids, "preord saturated");
  const auto ind = verify_cc(corpus, SystemKind::Indiscrete, battery);
  out.report(ind, "preord indiscrete");
  // Only the empty and the whole subobject are distinguished, so the
  // incomparable-pair axiom has no instances.
  out.all_present(ind, {"CC1", "CC3", "CC4", "CC5"}, "preord indiscrete");
  out.require(ind.failures_of("CC2") == 0, "preord indiscrete CC2");
  const auto cats = cat_fixture_corpus();
  CcOptions opts;
  opts.max_chain = 4;
  const auto cat = verify_cc(cats, SystemKind::Saturated, cats, opts);
  out.report(cat, "cat saturated");
  out.all_present(cat, ids, "cat saturated");
  out.detail << " checks=" << sat.passes() + ind.passes() + cat.passes();
  return out;
}

Outcome chain_rewriting() {
  Outcome out;
  std::mt19937 rng(20261016);
  int chains = 0;
  bool confluent = true;
  bool reduced = true;
  std::vector<std::pair<std::string, FinCat>> usable;
  for (const auto& entry : cat_fixture_corpus()) {
    if (entry.second.arrow_count() > 0) usable.push_back(entry);
  }
  std::vector<SkeletalQuotient> quotients;
  for (const auto& [name, c] : usable) quotients.emplace_back(share(c));
  while (chains < kRandomChains) {
    const std::size_t k = rng() % usable.size();
    const FinCat& c = usable[k].second;
    const SkeletalQuotient& q = quotients[k];
    std::vector<int> ch{static_cast<int>(rng() % static_cast<unsigned>(c.arrow_count()))};
    const int len = 1 + static_cast<int>(rng() % 8);
    while (static_cast<int>(ch.size()) < len) {
      std::vector<int> next;
      for (int g = 0; g < c.arrow_count(); ++g) {
        if (q.class_of(c.dom(g)) == q.class_of(c.cod(ch.back()))) next.push_back(g);
      }
      ch.push_back(next[rng() % next.size()]);
    }
    ++chains;
    const ChainArrow nf = normalize_chain(q, ch);
    reduced = reduced && q.is_reduced(nf.arrows);
    for (int order = 0; order < kReductionOrders; ++order) {
      std::vector<int> cur = ch;
      for (auto rs = q.redexes(cur); !rs.empty(); rs = q.redexes(cur)) cur = q.apply(cur, rs[rng() % rs.size()]);
      confluent = confluent && cur == nf.arrows;
    }
  }
  out.require(confluent, "every reduction order reaches the same normal form");
  out.require(reduced, "normal forms are irreducible");
  const FinCat i2 = fixtures::i2();
  const SkeletalQuotient q(share(i2));
  const int u = *i2.arrow_index("u");
  const int v = *i2.arrow_index("v");
  out.require(normalize_chain(q, {u, v}) == q.identity(q.class_of(i2.dom(u))), "(u,v) normalizes to the identity");
  out.require(q.is_reduced({u, u}) && normalize_chain(q, {u, u}).arrows == std::vector<int>{u, u},
              "(u,u) is irreducible");
  out.detail << " chains=" << chains << " orders=" << kReductionOrders;
  return out;
}

Outcome stable_suite() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = preorder_corpus(4);
  const auto battery = preorder_corpus(3);
  for (SystemKind kind : {SystemKind::Saturated, SystemKind::Indiscrete}) {
    const std::string label(to_string(kind));
    const auto zero = verify_stable_zero<PreordTheory>(corpus, kind, battery);
    out.report(zero, label + " zero");
    out.all_present(zero, {"zero-object-iff-trivial", "zero-iff-trivial-map", "sigma-zero-iff-trivial"}, label);
    const auto tors = verify_stable_torsion<PreordTheory>(corpus, kind, battery);
    out.report(tors, label + " torsion");
    out.all_present(tors, {"PT1", "trivial-iff-zero-object", "stable-kernel", "stable-cokernel"}, label);
    const auto unions = verify_stable_unions<PreordTheory>(corpus, kind, battery);
    out.report(unions, label + " unions");
    out.all_present(unions, {"collapse-iso", "zero-pushout"}, label);
  }
  const double s = seconds_since(t0);
  out.require(s < kStableSeconds, "runtime under 5 min");
  out.detail << " corpus=" << corpus.size() << " battery=" << battery.size() << " time=" << s << "s";
  return out;
}

Outcome fractions_suite() {
  Outcome out;
  const auto corpus = preorder_corpus(3);
  const auto desc = indiscrete_stable_description<PreordTheory>(corpus, kDescriptionPairs);
  out.report(desc, "explicit description");
  out.require(desc.passes_of("hom-bijection") >= kDescriptionPairs, "at least 20 hom-set bijections");
  out.all_present(desc, {"composition-agrees", "composition-coverage"}, "explicit description");
  const auto via_stable = verify_fractions<PreordTheory>(corpus, StableTarget<PreordTheory>(SystemKind::Indiscrete));
  out.report(via_stable, "fractions into the stable category");
  const auto via_explicit = verify_fractions<PreordTheory>(corpus, ExplicitIndiscrete<PreordTheory>{});
  out.report(via_explicit, "fractions into the explicit description");
  for (const auto* rep : {&via_stable, &via_explicit}) {
    out.all_present(*rep, {"xi-invertible", "identities", "extends-F", "functorial", "trivial-composite-case"}, "fractions");
  }
  out.detail << " pairs=" << desc.passes_of("hom-bijection")
             << " trivial-composite=" << via_stable.passes_of("trivial-composite-case");
  return out;
}

Outcome sierpinski() {
  Outcome out;
  const auto demo = sierpinski_demo();
  out.report(demo, "demo");
  out.all_present(demo, {"saturated", "not-complemented", "union-is-whole"}, "demo");
  out.require(demo.passes_of("saturated") == 2 && demo.passes_of("not-complemented") == 2,
              "both subobjects saturated and not complemented");
  const auto internal = verify_internal_saturation(presheaf_corpus());
  out.report(internal, "internal saturation");
  out.all_present(internal, {"saturated-implies-left-and-right", "left-and-right-implies-saturated"}, "internal");
  out.detail << " presheaves checked=" << internal.passes_of("pointwise-matches-factorization");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cs-preorders", cs_preorders},     {"cs-categories", cs_categories},
      {"pt-suite", pt_suite},             {"cc-suite", cc_suite},
      {"chain-rewriting", chain_rewriting}, {"stable-suite", stable_suite},
      {"fractions", fractions_suite},     {"sierpinski", sierpinski},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %s:%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
