#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stabcat/corpus.hpp"
#include "stabcat/describe.hpp"
#include "stabcat/dot.hpp"
#include "stabcat/error.hpp"
#include "stabcat/io.hpp"
#include "stabcat/presheaf.hpp"
#include "stabcat/pretorsion.hpp"
#include "stabcat/stable.hpp"
#include "stabcat/universal.hpp"

using namespace stabcat;

namespace {

struct Options {
  std::string file;
  std::string second;
  std::string system = "saturated";
  std::string theory;
  std::string corpus;
  std::string battery;
  std::string dot;
  std::string fault;
  std::string suites = "zero,torsion,unions,factor";
  int max_chain = kDefaultChainBound;
  bool strict = false;
};

// Exit codes: 0 every check passed, 1 a violation was found, 2 bad input.
bool input_error(Errc code) {
  switch (code) {
    case Errc::DuplicateName:
    case Errc::NotReflexive:
    case Errc::NotTransitive:
    case Errc::MissingComposite:
    case Errc::UnitLawViolation:
    case Errc::AssociativityViolation:
    case Errc::DanglingEndpoint:
    case Errc::NotMonotone:
    case Errc::NotFunctorial:
    case Errc::TypeMismatch:
    case Errc::KindMismatch:
    case Errc::SizeLimit:
    case Errc::NotDistinguishedInput:
    case Errc::InputError:
      return true;
    default:
      return false;
  }
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int emit(const std::vector<Report>& reports) {
  bool ok = true;
  if (reports.size() == 1) {
    print(reports.front().to_json());
    return reports.front().ok() ? 0 : 1;
  }
  Json all = Json::array();
  for (const auto& r : reports) {
    all.push_back(r.to_json());
    ok = ok && r.ok();
  }
  print(Json{{"ok", ok}, {"reports", all}});
  return ok ? 0 : 1;
}

void write_dot(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(Errc::InputError, path + ": cannot write");
  out << text;
}

SystemKind system_kind(const std::string& s) {
  auto k = parse_system_kind(s);
  if (!k) throw Error(Errc::InputError, "unknown system kind '" + s + "'");
  return *k;
}

// The theory follows the ambient of the input; an explicit --theory must
// agree with it.
void check_theory(const std::string& theory, bool preord) {
  if (theory.empty()) return;
  auto t = parse_theory_kind(theory);
  if (!t) throw Error(Errc::InputError, "unknown theory '" + theory + "'");
  const bool want_preord = *t == TheoryKind::Preord;
  if (want_preord != preord) {
    throw Error(Errc::KindMismatch, "theory '" + theory + "' does not apply to the " +
                                        std::string(preord ? "preorder" : "category") + " input");
  }
}

template <class Object>
Battery<Object> battery_for(const std::string& selector, const std::string& fallback, bool strict) {
  auto any = io::load_corpus(selector.empty() ? fallback : selector, strict);
  auto* b = std::get_if<Corpus<Object>>(&any);
  if (!b) throw Error(Errc::KindMismatch, "battery and corpus are of different kinds");
  return *b;
}

template <class Th>
Json describe_partial(const typename Th::Amb::Object& a, const PartialMorphism<Th>& p, const typename Th::Amb::Object& b) {
  using Amb = typename Th::Amb;
  return Json{{"S0", Amb::names_of(a, p.s0)}, {"S1", Amb::names_of(a, p.s1)}, {"map", describe_map(a, p.map, b)}};
}

// ---------------------------------------------------------------------------

int run_validate(const Options& o) {
  auto loaded = io::load_any(o.file, o.strict);
  Json out{{"valid", true}};
  if (auto* obj = std::get_if<io::AnyObject>(&loaded)) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, FinPreord>) {
            out["object"] = describe(v);
            write_dot(o.dot, preorder_dot(v));
          } else if constexpr (std::is_same_v<T, FinCat>) {
            out["object"] = describe(v);
            write_dot(o.dot, category_dot(v));
          } else {
            out["object"] = describe_presheaf(v);
            if (!o.dot.empty()) throw Error(Errc::InputError, "no DOT rendering for presheaves");
          }
        },
        *obj);
  } else {
    const auto& any = std::get<io::AnyMap>(loaded);
    if (auto* m = std::get_if<MonotoneMap>(&any)) {
      out["map"] = Json{{"source", describe(*m->source)}, {"target", describe(*m->target)},
                        {"assign", describe_map(*m->source, m->assign, *m->target)}};
    } else {
      const auto& f = std::get<Functor>(any);
      out["map"] = Json{{"source", describe(*f.source)}, {"target", describe(*f.target)},
                        {"assign", describe_map(*f.source, f.map, *f.target)}};
    }
  }
  print(out);
  return 0;
}

int run_subobjects(const Options& o) {
  const auto kind = system_kind(o.system);
  auto obj = io::load_object(o.file, o.strict);
  return std::visit(
      [&](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PreordPresheaf>) {
          throw Error(Errc::KindMismatch, "subobjects takes a preorder or a category");
        } else {
          const auto lat = enumerate_distinguished(v, kind);
          Json subs = Json::array();
          for (int i = 0; i < lat.size(); ++i) subs.push_back(lat.names(i));
          print(Json{{"system", std::string(to_string(kind))}, {"object", describe(v)}, {"subobjects", subs}});
          write_dot(o.dot, lattice_dot(lat));
          return 0;
        }
      },
      obj);
}

int run_pretorsion(const Options& o) {
  auto obj = io::load_object(o.file, o.strict);
  if (auto* p = std::get_if<FinPreord>(&obj)) {
    check_theory(o.theory, true);
    const auto s = canonical_sequence(*p);
    print(Json{{"theory", "preord-theory"},
               {"object", describe(*p)},
               {"torsion", describe(s.torsion)},
               {"counit", describe_map(s.torsion, s.counit, s.object)},
               {"torsion_free", describe(s.torsion_free)},
               {"unit", describe_map(s.object, s.unit, s.torsion_free)},
               {"truncated", false}});
    write_dot(o.dot, preorder_dot(s.torsion_free));
    return 0;
  }
  if (auto* c = std::get_if<FinCat>(&obj)) {
    check_theory(o.theory, false);
    const auto s = canonical_sequence(*c, o.max_chain);
    Json classes = Json::array();
    for (int k = 0; k < s.quotient->class_count(); ++k) classes.push_back(s.quotient->class_name(k));
    Json out{{"theory", "cat-theory"},
             {"max_chain", o.max_chain},
             {"object", describe(*c)},
             {"torsion", describe(s.torsion)},
             {"counit", describe_map(s.torsion, s.counit, s.object)},
             {"object_classes", classes},
             {"truncated", s.truncated()}};
    if (s.torsion_free) {
      out["torsion_free"] = describe(*s.torsion_free);
      out["unit"] = describe_map(s.object, *s.unit, *s.torsion_free);
      write_dot(o.dot, category_dot(*s.torsion_free));
    } else {
      Json chains = Json::array();
      for (const auto& ch : s.quotient->all_chains(o.max_chain)) chains.push_back(s.quotient->chain_name(ch));
      out["reduced_chains_within_bound"] = chains;
    }
    print(out);
    return 0;
  }
  throw Error(Errc::KindMismatch, "pretorsion takes a preorder or a category");
}

int run_verify_cs(const Options& o) {
  auto corpus = io::load_corpus(o.corpus.empty() ? "gen:preord<=3" : o.corpus, o.strict);
  if (auto* c = std::get_if<Corpus<FinPreord>>(&corpus)) {
    PreordSystem sys{system_kind(o.system), {}};
    if (o.fault == "union") {
      sys = seeded_union_fault();
    } else if (o.fault == "pullback") {
      sys = seeded_pullback_fault();
    } else if (!o.fault.empty()) {
      throw Error(Errc::InputError, "unknown fault '" + o.fault + "' (union, pullback)");
    }
    return emit({verify_cs(*c, sys, battery_for<FinPreord>(o.battery, "gen:preord<=3", o.strict))});
  }
  if (auto* c = std::get_if<Corpus<FinCat>>(&corpus)) {
    if (!o.fault.empty()) throw Error(Errc::InputError, "seeded faults exist for preorder systems only");
    return emit({verify_cs(*c, CatSystem{system_kind(o.system), {}}, battery_for<FinCat>(o.battery, "gen:cat-fixtures", o.strict))});
  }
  throw Error(Errc::KindMismatch, "verify-cs takes a preorder or category corpus");
}

int run_verify_pt(const Options& o) {
  auto corpus = io::load_corpus(o.corpus.empty() ? "gen:preord<=3" : o.corpus, o.strict);
  PtOptions opts;
  opts.max_chain = o.max_chain;
  if (o.fault == "swap") {
    opts.swap_fault = true;
  } else if (!o.fault.empty()) {
    throw Error(Errc::InputError, "unknown fault '" + o.fault + "' (swap)");
  }
  if (auto* c = std::get_if<Corpus<FinPreord>>(&corpus)) {
    check_theory(o.theory, true);
    return emit({verify_pt(*c, battery_for<FinPreord>(o.battery, "gen:preord<=2", o.strict), opts)});
  }
  if (auto* c = std::get_if<Corpus<FinCat>>(&corpus)) {
    check_theory(o.theory, false);
    return emit({verify_pt(*c, battery_for<FinCat>(o.battery, "gen:cat-fixtures", o.strict), opts)});
  }
  throw Error(Errc::KindMismatch, "verify-pt takes a preorder or category corpus");
}

int run_verify_cc(const Options& o) {
  const auto kind = system_kind(o.system);
  auto corpus = io::load_corpus(o.corpus.empty() ? "gen:preord<=3" : o.corpus, o.strict);
  CcOptions opts;
  opts.max_chain = o.max_chain;
  if (auto* c = std::get_if<Corpus<FinPreord>>(&corpus)) {
    check_theory(o.theory, true);
    return emit({verify_cc(*c, kind, battery_for<FinPreord>(o.battery, "gen:preord<=2", o.strict), opts)});
  }
  if (auto* c = std::get_if<Corpus<FinCat>>(&corpus)) {
    check_theory(o.theory, false);
    return emit({verify_cc(*c, kind, battery_for<FinCat>(o.battery, "gen:cat-fixtures", o.strict), opts)});
  }
  throw Error(Errc::KindMismatch, "verify-cc takes a preorder or category corpus");
}

template <class Th>
int stable_hom(const Options& o, const typename Th::Amb::Object& a, const typename Th::Amb::Object& b) {
  StableOptions opts;
  opts.drop_overlap_triviality = o.fault == "drop-overlap-triviality";
  const StableCategory<Th> st(system_kind(o.system), opts);
  const auto& h = st.hom(a, b);
  Json classes = Json::array();
  for (int c = 0; c < h.class_count(); ++c) {
    const auto& cls = h.classes[static_cast<std::size_t>(c)];
    const auto& rep = h.partials[static_cast<std::size_t>(cls.representative)];
    Json members = Json::array();
    for (int m : cls.members) {
      if (m == cls.representative) continue;
      const auto& p = h.partials[static_cast<std::size_t>(m)];
      Json entry = describe_partial<Th>(a, p, b);
      if (auto w = st.find_congruence(a, b, rep, p)) {
        entry["witness"] = {{"U0", Th::Amb::names_of(a, w->u0)}, {"U1", Th::Amb::names_of(a, w->u1)}};
      } else {
        entry["witness"] = "transitive";
      }
      members.push_back(entry);
    }
    classes.push_back(Json{{"class", c},
                           {"zero", cls.is_zero},
                           {"representative", describe_partial<Th>(a, rep, b)},
                           {"size", cls.members.size()},
                           {"others", members}});
  }
  print(Json{{"system", std::string(to_string(st.kind()))},
             {"theory", std::string(Th::name)},
             {"max_chain", o.max_chain},
             {"seeded_fault", opts.drop_overlap_triviality},
             {"source", describe(a)},
             {"target", describe(b)},
             {"partial_morphisms", h.partials.size()},
             {"class_count", h.class_count()},
             {"classes", classes}});
  return 0;
}

int run_stable_hom(const Options& o) {
  if (!o.fault.empty() && o.fault != "drop-overlap-triviality") {
    throw Error(Errc::InputError, "unknown fault '" + o.fault + "' (drop-overlap-triviality)");
  }
  auto a = io::load_object(o.file, o.strict);
  auto b = io::load_object(o.second, o.strict);
  if (auto* pa = std::get_if<FinPreord>(&a)) {
    auto* pb = std::get_if<FinPreord>(&b);
    if (!pb) throw Error(Errc::KindMismatch, "source and target are of different kinds");
    check_theory(o.theory, true);
    return stable_hom<PreordTheory>(o, *pa, *pb);
  }
  if (auto* ca = std::get_if<FinCat>(&a)) {
    auto* cb = std::get_if<FinCat>(&b);
    if (!cb) throw Error(Errc::KindMismatch, "source and target are of different kinds");
    check_theory(o.theory, false);
    return stable_hom<CatTheory>(o, *ca, *cb);
  }
  throw Error(Errc::KindMismatch, "stable-hom takes preorders or categories");
}

// One report per target; a target whose hypotheses fail gets a report with
// a note and no checks.
template <class Th>
void factor_reports(std::vector<Report>& out, const Corpus<typename Th::Amb::Object>& corpus, SystemKind kind,
                    const Battery<typename Th::Amb::Object>& battery) {
  auto run = [&](const auto& target) {
    try {
      out.push_back(factor_torsion_functor<Th>(corpus, kind, target, battery));
    } catch (const Error& e) {
      if (e.code() != Errc::HypothesesFail) throw;
      Report r("factor-torsion-functor");
      r.config()["target"] = target.name();
      r.config()["hypotheses"] = "fail";
      r.note(e.what());
      out.push_back(std::move(r));
    }
  };
  run(StableTarget<Th>(kind));
  run(ZeroTarget<Th>{});
  if (kind == SystemKind::Indiscrete) run(StableTarget<Th>(SystemKind::Saturated));
}

template <class Th>
int verify_stable(const Options& o, const Corpus<typename Th::Amb::Object>& corpus,
                  const Battery<typename Th::Amb::Object>& battery) {
  const auto kind = system_kind(o.system);
  StableOptions opts;
  if (o.fault == "drop-overlap-triviality") {
    opts.drop_overlap_triviality = true;
  } else if (!o.fault.empty()) {
    throw Error(Errc::InputError, "unknown fault '" + o.fault + "' (drop-overlap-triviality)");
  }
  std::vector<Report> reports;
  std::stringstream ss(o.suites);
  std::string suite;
  while (std::getline(ss, suite, ',')) {
    if (suite == "zero") {
      reports.push_back(verify_stable_zero<Th>(corpus, kind, battery, opts));
    } else if (suite == "torsion") {
      reports.push_back(verify_stable_torsion<Th>(corpus, kind, battery, o.max_chain));
    } else if (suite == "unions") {
      reports.push_back(verify_stable_unions<Th>(corpus, kind, battery));
    } else if (suite == "factor") {
      factor_reports<Th>(reports, corpus, kind, battery);
    } else {
      throw Error(Errc::InputError, "unknown suite '" + suite + "' (zero, torsion, unions, factor)");
    }
  }
  return emit(reports);
}

int run_verify_stable(const Options& o) {
  auto corpus = io::load_corpus(o.corpus.empty() ? "gen:preord<=3" : o.corpus, o.strict);
  if (auto* c = std::get_if<Corpus<FinPreord>>(&corpus)) {
    check_theory(o.theory, true);
    return verify_stable<PreordTheory>(o, *c, battery_for<FinPreord>(o.battery, "gen:preord<=2", o.strict));
  }
  if (auto* c = std::get_if<Corpus<FinCat>>(&corpus)) {
    check_theory(o.theory, false);
    return verify_stable<CatTheory>(o, *c, battery_for<FinCat>(o.battery, "gen:cat-fixtures", o.strict));
  }
  throw Error(Errc::KindMismatch, "verify-stable takes a preorder or category corpus");
}

template <class Th>
int fractions(const Corpus<typename Th::Amb::Object>& corpus) {
  std::vector<Report> reports;
  reports.push_back(indiscrete_stable_description<Th>(corpus));
  reports.push_back(verify_fractions<Th>(corpus, StableTarget<Th>(SystemKind::Indiscrete)));
  reports.push_back(verify_fractions<Th>(corpus, ExplicitIndiscrete<Th>{}));
  Report rejected("fractions-precondition");
  try {
    verify_fractions<Th>(corpus, AmbientTarget<Th>{});
    rejected.fail("ambient-target-rejected", "ambient", Json{{"reason", "the identity functor was accepted"}});
  } catch (const Error& e) {
    rejected.check(e.code() == Errc::PreconditionFailed, "ambient-target-rejected", "ambient", Json{{"error", e.what()}});
  }
  reports.push_back(rejected);
  return emit(reports);
}

int run_fractions(const Options& o) {
  auto corpus = io::load_corpus(o.corpus.empty() ? "gen:preord<=2" : o.corpus, o.strict);
  if (auto* c = std::get_if<Corpus<FinPreord>>(&corpus)) return fractions<PreordTheory>(*c);
  if (auto* c = std::get_if<Corpus<FinCat>>(&corpus)) return fractions<CatTheory>(*c);
  throw Error(Errc::KindMismatch, "fractions takes a preorder or category corpus");
}

int run_verify_internal(const Options& o) {
  auto corpus = io::load_corpus(o.corpus.empty() ? "gen:presheaf" : o.corpus, o.strict);
  auto* c = std::get_if<Corpus<PreordPresheaf>>(&corpus);
  if (!c) throw Error(Errc::KindMismatch, "verify-internal takes a presheaf corpus");
  return emit({verify_internal_saturation(*c)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent systems of subobjects, pretorsion theories and stable categories on finite preorders and categories"};
  app.require_subcommand(1);
  Options o;
  int code = 0;
  std::function<int()> action;

  auto add_system = [&](CLI::App* s) {
    s->add_option("--system", o.system, "indiscrete, open, closed, saturated, left-saturated, right-saturated")->capture_default_str();
  };
  auto add_theory = [&](CLI::App* s) { s->add_option("--theory", o.theory, "preord or cat (must match the input)"); };
  auto add_corpus = [&](CLI::App* s) {
    s->add_option("--corpus", o.corpus, "gen:preord<=N, gen:cat-fixtures, gen:presheaf or a directory");
  };
  auto add_battery = [&](CLI::App* s) { s->add_option("--battery", o.battery, "probe objects, same syntax as --corpus"); };
  auto add_chain = [&](CLI::App* s) {
    s->add_option("--max-chain", o.max_chain, "chain bound for skeletal quotients")->capture_default_str()->check(CLI::Range(1, 8));
  };
  auto add_strict = [&](CLI::App* s) { s->add_flag("--strict", o.strict, "reject relations that are not already preorders"); };
  auto add_dot = [&](CLI::App* s) { s->add_option("--dot", o.dot, "write a DOT diagram to this file"); };

  auto* validate = app.add_subcommand("validate", "check an object or map file and print its normal form");
  validate->add_option("file", o.file)->required();
  add_strict(validate);
  add_dot(validate);
  validate->callback([&] { action = [&] { return run_validate(o); }; });

  auto* subobjects = app.add_subcommand("subobjects", "list the distinguished subobjects of an object");
  subobjects->add_option("file", o.file)->required();
  add_system(subobjects);
  add_strict(subobjects);
  add_dot(subobjects);
  subobjects->callback([&] { action = [&] { return run_subobjects(o); }; });

  auto* pretorsion = app.add_subcommand("pretorsion", "torsion part, torsion-free part, counit and unit");
  pretorsion->add_option("file", o.file)->required();
  add_theory(pretorsion);
  add_chain(pretorsion);
  add_strict(pretorsion);
  add_dot(pretorsion);
  pretorsion->callback([&] { action = [&] { return run_pretorsion(o); }; });

  auto* vcs = app.add_subcommand("verify-cs", "coherent-system axioms on a corpus");
  add_corpus(vcs);
  add_system(vcs);
  add_battery(vcs);
  add_strict(vcs);
  vcs->add_option("--seed-fault", o.fault, "union or pullback: run on a deliberately broken system");
  vcs->callback([&] { action = [&] { return run_verify_cs(o); }; });

  auto* vpt = app.add_subcommand("verify-pt", "pretorsion theory axioms and functoriality");
  add_corpus(vpt);
  add_theory(vpt);
  add_battery(vpt);
  add_chain(vpt);
  add_strict(vpt);
  vpt->add_option("--seed-fault", o.fault, "swap: use a wrong torsion part");
  vpt->callback([&] { action = [&] { return run_verify_pt(o); }; });

  auto* vcc = app.add_subcommand("verify-cc", "compatibility of a pretorsion theory with a system");
  add_corpus(vcc);
  add_theory(vcc);
  add_system(vcc);
  add_battery(vcc);
  add_chain(vcc);
  add_strict(vcc);
  vcc->callback([&] { action = [&] { return run_verify_cc(o); }; });

  auto* hom = app.add_subcommand("stable-hom", "stable morphisms between two objects");
  hom->add_option("source", o.file)->required();
  hom->add_option("target", o.second)->required();
  add_system(hom);
  add_theory(hom);
  add_chain(hom);
  add_strict(hom);
  hom->add_option("--seed-fault", o.fault, "drop-overlap-triviality");
  hom->callback([&] { action = [&] { return run_stable_hom(o); }; });

  auto* vst = app.add_subcommand("verify-stable", "zero object, torsion theory, unions and factorization in the stable category");
  add_corpus(vst);
  add_system(vst);
  add_theory(vst);
  add_battery(vst);
  add_chain(vst);
  add_strict(vst);
  vst->add_option("--suites", o.suites, "comma separated: zero, torsion, unions, factor")->capture_default_str();
  vst->add_option("--seed-fault", o.fault, "drop-overlap-triviality");
  vst->callback([&] { action = [&] { return run_verify_stable(o); }; });

  auto* frac = app.add_subcommand("fractions", "indiscrete stable category: explicit description and fractions");
  add_corpus(frac);
  add_strict(frac);
  frac->callback([&] { action = [&] { return run_fractions(o); }; });

  auto* demo = app.add_subcommand("sierpinski-demo", "saturated but not complemented subobjects of a presheaf");
  demo->callback([&] { action = [] { return emit({sierpinski_demo()}); }; });

  auto* internal = app.add_subcommand("verify-internal", "internal saturation on presheaves of preorders");
  add_corpus(internal);
  add_strict(internal);
  internal->callback([&] { action = [&] { return run_verify_internal(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    code = action ? action() : 2;
  } catch (const Error& e) {
    std::cerr << Json{{"error", std::string(to_string(e.code()))}, {"message", e.message()}, {"witness", e.witness()}}.dump(2)
              << "\n";
    return input_error(e.code()) ? 2 : 1;
  }
  return code;
}
