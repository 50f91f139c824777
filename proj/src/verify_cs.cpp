#include "stabcat/describe.hpp"
#include "stabcat/error.hpp"
#include "stabcat/system.hpp"

namespace stabcat {

namespace {

// Subobjects T with S ⊆ T ⊆ A, each as (T, S in the coordinates of T).
std::vector<std::pair<FinPreord, Mask>> intermediate(const FinPreord& a, Mask s) {
  std::vector<std::pair<FinPreord, Mask>> out;
  const Mask rest = a.all() & ~s;
  for (Mask x = rest;; x = (x - 1) & rest) {
    const Mask t = s | x;
    out.emplace_back(a.induced(t), compress(s, t));
    if (x == 0) break;
  }
  return out;
}

std::vector<std::pair<FinCat, Mask>> intermediate(const FinCat& c, Mask s) {
  std::vector<std::pair<FinCat, Mask>> out;
  const Mask s_arrows = c.arrows_within(s);
  for (const auto& t : all_subcategories(share(c))) {
    if (!subset(s, t.objs) || !subset(s_arrows, t.arrs)) continue;
    out.emplace_back(c.restrict(t.objs, t.arrs), compress(s, t.objs));
  }
  return out;
}

template <class Amb>
class CsRun {
 public:
  using Object = typename Amb::Object;
  using Map = typename Amb::Map;

  CsRun(const Corpus<Object>& corpus, const System<Object>& sys, const Battery<Object>& battery,
        const CsOptions& opts)
      : corpus_(corpus), sys_(sys), battery_(battery), opts_(opts), rep_("verify-cs") {}

  Report run() {
    auto& cfg = rep_.config();
    cfg["ambient"] = std::string(Amb::name);
    cfg["system"] = std::string(to_string(sys_.kind));
    cfg["seeded_fault"] = sys_.faulty();
    cfg["corpus_size"] = corpus_.size();
    cfg["battery_size"] = battery_.size();
    cfg["effective_check"] = opts_.effective;
    cfg["epi_checks_max_size"] = opts_.epimorphisms ? opts_.epi_max_size : 0;
    for (const auto& [name, a] : corpus_) lattices_.push_back(enumerate_distinguished(a, sys_));
    for (std::size_t i = 0; i < corpus_.size(); ++i) per_object(i);
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
      for (std::size_t j = 0; j < corpus_.size(); ++j) pullbacks(i, j);
    }
    if (opts_.epimorphisms) epis();
    rep_.note("pushouts are tested against the battery only; pullback and epi checks range over corpus morphisms");
    return std::move(rep_);
  }

 private:
  Json sub(const Object& a, Mask m) const { return describe_sub(a, m); }

  Json base_witness(std::size_t i) const {
    return Json{{"object", corpus_[i].first}, {"definition", describe(corpus_[i].second)}};
  }

  void per_object(std::size_t i) {
    const auto& [name, a] = corpus_[i];
    const auto& lat = lattices_[i];
    const Mask whole = Amb::whole(a);

    auto missing = [&](const char* what) {
      Json j = base_witness(i);
      j["missing"] = what;
      return j;
    };
    rep_.check(sys_.contains(a, 0), "CS1", name, missing("empty subobject"));
    if (whole != 0) rep_.check(sys_.contains(a, whole), "CS1", name, missing("whole object"));

    const int k = lat.size();
    for (int s = 0; s < k; ++s) {
      for (int t = 0; t < k; ++t) {
        const Mask ms = lat.members[s];
        const Mask mt = lat.members[t];
        auto w = [&](const char* what, Mask r) {
          Json j = base_witness(i);
          j["S"] = sub(a, ms);
          j["T"] = sub(a, mt);
          j[what] = sub(a, r);
          return j;
        };
        rep_.check(lat.join[s][t] >= 0, "CS2", name, w("union", ms | mt));
        rep_.check(lat.meet[s][t] >= 0, "CS7", name, w("intersection", ms & mt));
      }
    }

    for (int r = 0; r < k; ++r) {
      for (int s = 0; s < k; ++s) {
        for (int t = 0; t < k; ++t) {
          const int st = lat.join[s][t];
          const int rs = lat.meet[r][s];
          const int rt = lat.meet[r][t];
          if (st < 0 || rs < 0 || rt < 0) continue;  // reported under CS2/CS7
          const int lhs = lat.meet[r][st];
          const int rhs = lat.join[rs][rt];
          Json j = base_witness(i);
          j["R"] = sub(a, lat.members[r]);
          j["S"] = sub(a, lat.members[s]);
          j["T"] = sub(a, lat.members[t]);
          rep_.check(lhs >= 0 && lhs == rhs, "CS8", name, j);
        }
      }
    }

    // Transitivity along A ⊆ B ⊆ C, with B distinguished in C and A in B.
    for (Mask b : lat.members) {
      const Object sub_b = Amb::induced(a, b);
      const auto inner = enumerate_distinguished(sub_b, sys_);
      for (Mask m : inner.members) {
        const Mask in_a = expand(m, b);
        Json j = base_witness(i);
        j["outer"] = sub(a, b);
        j["inner"] = sub(a, in_a);
        rep_.check(sys_.contains(a, in_a), "CS5", name, j);
      }
    }

    for (Mask s : lat.members) {
      for (const auto& [t, s_in_t] : intermediate(a, s)) {
        Json j = base_witness(i);
        j["S"] = sub(a, s);
        j["T"] = describe(t);
        rep_.check(sys_.contains(t, s_in_t), "CS9", name, j);
      }
    }

    if (opts_.effective) {
      for (int s = 0; s < k; ++s) {
        for (int t = s; t < k; ++t) {
          const Mask ms = lat.members[s];
          const Mask mt = lat.members[t];
          const auto res = pushout_holds(a, ms, mt, ms | mt, battery_);
          Json j = base_witness(i);
          j["S"] = sub(a, ms);
          j["T"] = sub(a, mt);
          if (res.witness) {
            const auto& wt = *res.witness;
            j["battery_object"] = wt.battery_object;
            j["from_S"] = wt.from_s;
            j["from_T"] = wt.from_t;
            j["mediators"] = wt.mediators;
          }
          rep_.check(res.holds, "CS6", name, j);
        }
      }
    }
  }

  void pullbacks(std::size_t i, std::size_t j) {
    const auto& [an, a] = corpus_[i];
    const auto& [bn, b] = corpus_[j];
    const auto& lat_b = lattices_[j];
    const auto& lat_a = lattices_[i];
    const std::string subject = an + " -> " + bn;
    long ok3 = 0;
    long ok4 = 0;
    for (const Map& f : Amb::maps(a, Amb::whole(a), b)) {
      std::vector<Mask> pre;
      for (Mask s : lat_b.members) {
        const Mask p = Amb::preimage(a, f, s);
        pre.push_back(p);
        if (sys_.contains(a, p)) {
          ++ok3;
        } else {
          Json w{{"source", an}, {"target", bn}, {"map", describe_map(a, f, b)}, {"S", sub(b, s)},
                 {"preimage", sub(a, p)}, {"source_definition", describe(a)}, {"target_definition", describe(b)}};
          rep_.fail("CS3", subject, w);
        }
      }
      for (int s = 0; s < lat_b.size(); ++s) {
        for (int t = 0; t < lat_b.size(); ++t) {
          const int u = lat_b.join[s][t];
          const int v = lat_b.meet[s][t];
          if (u < 0 || v < 0) continue;
          const int ju = lat_a.index_of(pre[s] | pre[t]);
          const bool union_ok = ju >= 0 && lat_a.members[ju] == pre[u];
          const bool meet_ok = (pre[s] & pre[t]) == pre[v];
          if (union_ok && meet_ok) {
            ++ok4;
          } else {
            Json w{{"source", an}, {"target", bn}, {"map", describe_map(a, f, b)},
                   {"S", sub(b, lat_b.members[s])}, {"T", sub(b, lat_b.members[t])},
                   {"preimage_of_union", sub(a, pre[u])}, {"union_of_preimages", sub(a, pre[s] | pre[t])}};
            rep_.fail("CS4", subject, w);
          }
        }
      }
    }
    if (ok3) rep_.pass("CS3", subject, ok3);
    if (ok4) rep_.pass("CS4", subject, ok4);
  }

  EpiVerdict verdict(std::size_t i, std::size_t j, const Map& f) {
    return distinguished_epi_verdict<Amb>(corpus_[i].second, f, corpus_[j].second, sys_, lattices_[j]);
  }

  void epis() {
    std::vector<std::size_t> scope;
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
      if (Amb::size(corpus_[i].second) <= opts_.epi_max_size) scope.push_back(i);
    }
    const std::size_t n = corpus_.size();
    std::vector<std::vector<std::vector<Map>>> maps(n, std::vector<std::vector<Map>>(n));
    for (std::size_t i : scope) {
      for (std::size_t j : scope) maps[i][j] = Amb::maps(corpus_[i].second, Amb::whole(corpus_[i].second), corpus_[j].second);
    }
    long unknown = 0;
    for (std::size_t i : scope) {
      for (std::size_t j : scope) {
        const Object& a = corpus_[i].second;
        const Object& b = corpus_[j].second;
        const std::string subject = corpus_[i].first + " -> " + corpus_[j].first;
        for (const Map& e : maps[i][j]) {
          if (Amb::epi_status(a, e, b) == EpiStatus::NotEpi) continue;
          const EpiVerdict ve = verdict(i, j, e);
          if (ve.value == EpiVerdict::Value::Unknown) {
            ++unknown;
            continue;
          }
          orthogonality(i, j, e, ve, scope, maps);
          for (std::size_t k : scope) {
            const Object& c = corpus_[k].second;
            for (const Map& g : maps[j][k]) {
              if (Amb::epi_status(b, g, c) == EpiStatus::NotEpi) continue;
              const EpiVerdict vg = verdict(j, k, g);
              const Map ge = Amb::compose(a, g, e);
              const EpiVerdict vge = verdict(i, k, ge);
              if (ve.value == EpiVerdict::Value::Yes && vg.value == EpiVerdict::Value::Yes) {
                Json w{{"first", describe_map(a, e, b)}, {"second", describe_map(b, g, c)},
                       {"through", corpus_[j].first}, {"target", corpus_[k].first}};
                rep_.check(vge.value == EpiVerdict::Value::Yes, "distinguished-epi-composition", subject, w);
              }
            }
          }
        }
        // If g ∘ f is a distinguished epi then so is g, for every f.
        for (std::size_t k : scope) {
          const Object& c = corpus_[k].second;
          for (const Map& g : maps[j][k]) {
            if (Amb::epi_status(b, g, c) == EpiStatus::NotEpi) continue;
            const EpiVerdict vg = verdict(j, k, g);
            for (const Map& f : maps[i][j]) {
              const Map gf = Amb::compose(a, g, f);
              if (Amb::epi_status(a, gf, c) != EpiStatus::Epi) continue;
              if (verdict(i, k, gf).value != EpiVerdict::Value::Yes) continue;
              Json w{{"first", describe_map(a, f, b)}, {"second", describe_map(b, g, c)},
                     {"through", corpus_[j].first}, {"target", corpus_[k].first}};
              rep_.check(vg.value == EpiVerdict::Value::Yes, "distinguished-epi-cancellation", subject, w);
            }
          }
        }
      }
    }
    if (unknown) rep_.note(std::to_string(unknown) + " maps with undecided epimorphism status were skipped");
  }

  // e is a distinguished epi iff every square m∘u = v∘e with m a distinguished
  // inclusion M ⊆ C has a unique diagonal d (d∘e = u, m∘d = v). Since m is an
  // inclusion, d is v corestricted to M, so it exists iff the image of v lies in M.
  void orthogonality(std::size_t i, std::size_t j, const Map& e, const EpiVerdict& ve,
                     const std::vector<std::size_t>& scope, const std::vector<std::vector<std::vector<Map>>>& maps) {
    const Object& a = corpus_[i].second;
    const Object& b = corpus_[j].second;
    bool orthogonal = true;
    Json counter;
    for (std::size_t k : scope) {
      const Object& c = corpus_[k].second;
      for (Mask m : lattices_[k].members) {
        for (const Map& v : maps[j][k]) {
          const Map u = Amb::compose(a, v, e);
          if (!subset(Amb::image(a, u), m)) continue;
          const bool diagonal = subset(Amb::image(b, v), m);
          if (!diagonal && orthogonal) {
            orthogonal = false;
            counter = Json{{"C", corpus_[k].first}, {"M", sub(c, m)}, {"v", describe_map(b, v, c)}};
          }
        }
      }
    }
    const bool is_dist = ve.value == EpiVerdict::Value::Yes;
    Json w{{"epi", describe_map(a, e, b)}, {"source", corpus_[i].first}, {"target", corpus_[j].first},
           {"distinguished", is_dist}, {"orthogonal", orthogonal}};
    if (!orthogonal) w["square"] = counter;
    rep_.check(is_dist == orthogonal, "distinguished-epi-orthogonality", corpus_[i].first + " -> " + corpus_[j].first,
               w);
  }

  const Corpus<Object>& corpus_;
  const System<Object>& sys_;
  const Battery<Object>& battery_;
  CsOptions opts_;
  Report rep_;
  std::vector<DistinguishedLattice> lattices_;
};

}  // namespace

Report verify_cs(const Corpus<FinPreord>& corpus, const PreordSystem& sys, const Battery<FinPreord>& battery,
                 const CsOptions& opts) {
  return CsRun<PreordAmbient>(corpus, sys, battery, opts).run();
}

Report verify_cs(const Corpus<FinCat>& corpus, const CatSystem& sys, const Battery<FinCat>& battery,
                 const CsOptions& opts) {
  return CsRun<CatAmbient>(corpus, sys, battery, opts).run();
}

}  // namespace stabcat
