#pragma once

#include "cocycle/cocycle.hpp"
#include "cocycle/errors.hpp"
#include "cocycle/group.hpp"
#include "cocycle/shift.hpp"

#include <deque>
#include <optional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing {

using namespace cocycle;

/// Error code raised by f(), if any.
template <class F>
std::optional<ErrorCode> errorOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline GroupPtr zGroup(int d = 1) { return Group::make(GroupSpec::freeAbelian(d)); }
inline GroupPtr freeGroup(int r = 2) { return Group::make(GroupSpec::free(r)); }
inline GroupPtr heisenberg() { return Group::make(GroupSpec::heisenberg()); }
inline GroupPtr z2z3() { return Group::make(GroupSpec::freeProductCyclic({2, 3})); }

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

inline std::vector<NamedGroup> allFamilies() {
  return {{"Z", zGroup(1)},       {"Z^2", zGroup(2)},   {"Z^3", zGroup(3)},
          {"Free(2)", freeGroup(2)}, {"Heisenberg", heisenberg()}, {"Z/2*Z/3", z2z3()}};
}

/// Distances from the identity by BFS over right multiplication, using only
/// `multiply` and the generator list.
inline std::map<Elem, int> bfsBall(const Group& g, int r) {
  std::map<Elem, int> dist{{g.identity(), 0}};
  std::deque<Elem> queue{g.identity()};
  while (!queue.empty()) {
    Elem cur = queue.front();
    queue.pop_front();
    int d = dist[cur];
    if (d == r) continue;
    for (Letter l = 0; l < g.generatorCount(); ++l) {
      Elem next = g.multiply(cur, g.generator(l));
      if (dist.emplace(next, d + 1).second) queue.push_back(next);
    }
  }
  return dist;
}

inline Elem randomElement(const Group& g, int r, std::mt19937_64& rng) {
  auto ball = g.ball(r);
  return ball->elements[uniformBelow(rng, ball->size())];
}

/// A random word of the given length, evaluated.
inline Elem randomWordElement(const Group& g, int len, std::mt19937_64& rng) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(static_cast<Letter>(uniformBelow(rng, g.generatorCount())));
  return g.evaluate(w);
}

inline Configuration randomFull(const Group& g, std::size_t alphabet, int r, std::mt19937_64& rng,
                                Symbol background = 0) {
  Configuration x(background);
  for (const Elem& e : g.ball(r)->elements) x.set(e, static_cast<Symbol>(uniformBelow(rng, alphabet)));
  return x;
}

/// Random local function on `window` with values in Z/n.
inline LocalFunction randomRule(const std::vector<Elem>& window, std::size_t alphabet, std::int64_t n,
                                std::mt19937_64& rng) {
  LocalFunction f;
  f.window = window;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < window.size(); ++i) cells *= alphabet;
  for (std::size_t i = 0; i < cells; ++i) {
    HElem h;
    h.v[0] = static_cast<std::int64_t>(uniformBelow(rng, static_cast<std::uint64_t>(n)));
    f.table.push_back(h);
  }
  return f;
}

inline HElem cyc(std::int64_t v) {
  HElem h;
  h.v[0] = v;
  return h;
}

/// Random coboundary-times-homomorphism cocycle on the full shift over {0,1}
/// with H = Z/2 and transfer window B(1).
struct CoboundaryInstance {
  CocyclePtr cocycle;
  LocalFunction transfer;
  std::vector<HElem> phi;
};

inline CoboundaryInstance randomCoboundary(GroupPtr g, std::mt19937_64& rng, int transferRadius = 1) {
  auto X = std::make_shared<const Subshift>(Subshift::full(Alphabet::numeric(2)));
  auto H = CoeffGroup::cyclic(2);
  CoboundaryInstance inst;
  inst.transfer = randomRule(g->ball(transferRadius)->elements, 2, 2, rng);
  do {
    inst.phi.clear();
    for (int i = 0; i < g->generatorCount() / 2; ++i) inst.phi.push_back(cyc(static_cast<std::int64_t>(uniformBelow(rng, 2))));
  } while (!respectsRelators(*g, *H, phiPerLetter(*H, inst.phi)));
  inst.cocycle = coboundaryCocycle(g, X, H, inst.transfer, inst.phi);
  return inst;
}

/// c~(s, x) = beta(s x)^-1 c(s, x) beta(x), built rule by rule.
inline CocyclePtr perturb(const LocalCocycle& c, const LocalFunction& beta) {
  const Group& g = c.group();
  const CoeffGroup& h = c.coeff();
  const std::size_t alphabet = c.shift().alphabet().size();
  const Symbol bg = c.shift().alphabet().background;
  std::vector<RuleInput> rules;
  for (Letter s = 0; s < g.generatorCount(); ++s) {
    const Elem sInv = g.inverse(g.generator(s));
    std::set<Elem> cells(c.rule(s).window.begin(), c.rule(s).window.end());
    for (const Elem& w : beta.window) {
      cells.insert(w);
      cells.insert(g.multiply(sInv, w));
    }
    LocalFunction f;
    f.window.assign(cells.begin(), cells.end());
    std::size_t count = 1;
    for (std::size_t i = 0; i < f.window.size(); ++i) count *= alphabet;
    for (std::size_t code = 0; code < count; ++code) {
      Configuration x = extend(f.window, decodePattern(code, f.window.size(), alphabet), bg);
      HElem moved = beta.at(g, x, sInv, alphabet);
      f.table.push_back(h.multiply(h.inverse(moved), h.multiply(c.rule(s).at(g, x, alphabet), beta.at(g, x, alphabet))));
    }
    rules.push_back({s, std::move(f)});
  }
  return makeLocalCocycle(c.groupPtr(), c.shiftPtr(), c.coeffPtr(), std::move(rules));
}

/// A geodesic for a chosen at random among all geodesics, built from the end.
inline Word randomGeodesic(const Group& g, const Elem& a, std::mt19937_64& rng) {
  Word w;
  Elem cur = a;
  int len = g.wordLength(cur);
  while (len > 0) {
    std::vector<Letter> options;
    for (Letter t = 0; t < g.generatorCount(); ++t) {
      if (g.wordLength(g.multiply(cur, g.generator(Group::inverseLetter(t)))) == len - 1) options.push_back(t);
    }
    Letter t = options[uniformBelow(rng, options.size())];
    w.push_back(t);
    cur = g.multiply(cur, g.generator(Group::inverseLetter(t)));
    --len;
  }
  return Word(w.rbegin(), w.rend());
}

}  // namespace testing
