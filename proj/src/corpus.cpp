#include "stabcat/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "stabcat/error.hpp"
#include "stabcat/fixtures.hpp"

namespace stabcat {

namespace {

std::vector<Mask> encode(const FinPreord& p, const std::vector<int>& perm) {
  // Row perm[i] of the relabeled relation is row i of p, relabeled.
  const int n = p.size();
  std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    Mask r = 0;
    for (int b : members(p.up(a))) r |= bit(perm[static_cast<std::size_t>(b)]);
    rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])] = r;
  }
  return rows;
}

}  // namespace

std::vector<Mask> canonical_code(const FinPreord& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.size()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Mask> best = encode(p, perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, encode(p, perm));
  return best;
}

bool isomorphic(const FinPreord& a, const FinPreord& b) {
  return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

Corpus<FinPreord> preorder_corpus(int max_size) {
  if (max_size > 5) throw Error(Errc::SizeLimit, "exhaustive preorder generation is limited to 5 elements");
  Corpus<FinPreord> out;
  for (int n = 0; n <= max_size; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i));
    std::vector<std::pair<int, int>> off;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b) off.emplace_back(a, b);
      }
    }
    std::map<std::vector<Mask>, int> seen;
    const Mask combos = full_mask(static_cast<int>(off.size()));
    for (Mask pick = 0;; ++pick) {
      std::vector<Mask> rows(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) rows[static_cast<std::size_t>(a)] = bit(a);
      for (int k : members(pick)) rows[static_cast<std::size_t>(off[static_cast<std::size_t>(k)].first)] |= bit(off[static_cast<std::size_t>(k)].second);
      if (preorder_closure(rows) == rows) {
        const auto code = canonical_code(FinPreord::from_rows(names, rows));
        seen.emplace(code, 0);
      }
      if (pick == combos) break;
    }
    int k = 0;
    for (const auto& [code, unused] : seen) {
      out.emplace_back("P" + std::to_string(n) + "." + std::to_string(k++), FinPreord::from_rows(names, code));
    }
  }
  return out;
}

Corpus<FinCat> cat_fixture_corpus() { return fixtures::cat_fixtures(); }

}  // namespace stabcat
