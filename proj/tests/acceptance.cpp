// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "support.hpp"

#include "cocycle/cayley.hpp"
#include "cocycle/untwist.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

using namespace cocycle;
using namespace testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Elem> nonTorsionBall2(const Group& g) {
  std::vector<Elem> out;
  for (const Elem& a : g.ball(2)->elements) {
    if (!g.isTorsion(a)) out.push_back(a);
  }
  return out;
}

Configuration point(const Elem& e) {
  Configuration x(0);
  x.set(e, 1);
  return x;
}

void untwistRoundTrip(Outcome& out) {
  auto t0 = Clock::now();
  auto z2 = zGroup(2);
  std::mt19937_64 rng(1001);
  int untwisted = 0;
  for (int i = 0; i < 50; ++i) {
    auto inst = randomCoboundary(z2, rng);
    UntwistOptions opts;
    opts.seed = static_cast<std::uint64_t>(i + 1);
    auto rep = untwist(*inst.cocycle, opts);
    const std::string tag = "instance " + std::to_string(i);
    out.require(rep.verdict == Verdict::Untwisted, tag + " not untwisted");
    if (rep.verdict != Verdict::Untwisted) continue;
    ++untwisted;
    out.require(rep.phi == inst.phi, tag + " phi differs");
    out.require(rep.table.radius == 2 && rep.table.domain.size() == 13 && rep.table.codes.size() == (std::size_t{1} << 13), tag + " table is not B(2)");
    const CoeffGroup& H = inst.cocycle->coeff();
    std::set<HElem> ratio;
    for (std::size_t k = 0; k < rep.table.codes.size(); ++k) {
      Configuration x = extend(rep.table.domain, decodePattern(rep.table.codes[k], rep.table.domain.size(), 2), 0);
      ratio.insert(H.multiply(rep.table.values[k], H.inverse(inst.transfer.at(*z2, x, 2))));
    }
    out.require(ratio.size() == 1, tag + " ratio not constant");
  }
  double secs = secondsSince(t0);
  out.require(secs < 60, "over 60 s");
  out.detail << untwisted << "/50 untwisted, " << secs << " s";
}

void counterexamples(Outcome& out) {
  auto t0 = Clock::now();
  for (const auto& c : {exampleCocycleZ(), exampleCocycleFree(2)}) {
    const std::string tag = c->group().spec() == GroupSpec::freeAbelian(1) ? "Z" : "Free(2)";
    auto rep = untwist(*c);
    out.require(rep.verdict == Verdict::ObstructionFound, tag + " verdict");
    bool plusMinus = false, fixedPoint = false;
    for (const auto& cert : rep.certificates) {
      out.require(replay(*c, cert), tag + " certificate does not replay");
      if (cert.kind == CertificateKind::PlusMinusMismatch) {
        plusMinus = cert.first == cyc(1) && cert.second == cyc(0) && cert.x == point(c->group().identity()) &&
                    cert.xp == Configuration(0);
      }
      if (cert.kind == CertificateKind::FixedPointMismatch) fixedPoint = cert.first == cyc(0) && cert.second == cyc(1);
    }
    out.require(plusMinus, tag + " plus/minus 1 vs 0 on ({e->1}, 0bar)");
    out.require(fixedPoint, tag + " fixed point 0 vs 1");
  }
  double secs = secondsSince(t0);
  out.require(secs < 1, "over 1 s");
  out.detail << secs << " s";
}

void specification(Outcome& out) {
  std::size_t cases = 0, witnesses = 0;
  for (const auto& [name, g] : allFamilies()) {
    for (const Elem& a : nonTorsionBall2(*g)) {
      for (int r = 0; r <= 2; ++r) {
        const std::int64_t n = specificationN(*g, a, r);
        const int test = static_cast<int>(n) + 4;
        std::set<Elem> forward;
        Elem power = g->identity();
        for (int k = 0; k <= 200; ++k) {
          for (const Elem& b : g->ball(r)->elements) {
            Elem x = g->multiply(power, b);
            if (g->withinRadius(x, test)) forward.insert(x);
          }
          power = g->multiply(power, a);
        }
        for (const Elem& x : forward) {
          if (inCone(*g, a, r, ConeSign::Minus, x) && !g->withinRadius(x, static_cast<int>(n))) {
            out.require(false, name + ": cones meet outside B(N) at " + g->format(x));
          }
        }
        ++cases;
      }
    }

    // Full shift witnesses.
    std::mt19937_64 rng(3003);
    auto dirs = nonTorsionBall2(*g);
    for (int trial = 0; trial < 200; ++trial) {
      Elem a = dirs[uniformBelow(rng, dirs.size())];
      int r = static_cast<int>(uniformBelow(rng, 3));
      int n = static_cast<int>(specificationN(*g, a, r));
      Configuration x(0), xp(0);
      for (int i = 0; i < 6; ++i) {
        Elem shared = randomWordElement(*g, std::min(n, 12), rng);
        if (!g->withinRadius(shared, n)) continue;
        Symbol s = static_cast<Symbol>(uniformBelow(rng, 2));
        x.set(shared, s);
        xp.set(shared, s);
      }
      for (int i = 0; i < 6; ++i) {
        for (auto* target : {&x, &xp}) {
          Elem e = randomWordElement(*g, n + 1 + static_cast<int>(uniformBelow(rng, 4)), rng);
          if (!g->withinRadius(e, n)) target->set(e, 1);
        }
      }
      Configuration y = witnessFullShift(*g, a, r, x, xp);
      std::set<Elem> sites;
      for (const auto* c : {&x, &xp, &y}) {
        for (const auto& [e, s] : c->overlay()) sites.insert(e);
      }
      for (int i = 0; i < 50; ++i) sites.insert(randomWordElement(*g, 12, rng));
      for (const Elem& e : sites) {
        if (!g->withinRadius(e, 12)) continue;
        if (inCone(*g, a, r, ConeSign::Plus, e)) out.require(y.at(e) == x.at(e), name + ": forward law");
        if (inCone(*g, a, r, ConeSign::Minus, e)) out.require(y.at(e) == xp.at(e), name + ": backward law");
      }
      ++witnesses;
    }
  }

  // Golden mean witnesses on Z and Z^2.
  struct GoldenCase {
    std::string name;
    GroupPtr g;
    Subshift X;
  };
  std::vector<GoldenCase> golden = {
      {"Z", zGroup(1), Subshift::goldenMean(Alphabet::numeric(2), {{Elem{0}, Elem{1}}})},
      {"Z^2", zGroup(2), Subshift::goldenMean(Alphabet::numeric(2), {{Elem{0, 0}, Elem{1, 0}}})},
  };
  for (const auto& [name, g, X] : golden) {
    std::mt19937_64 rng(4004);
    auto dirs = nonTorsionBall2(*g);
    for (int trial = 0; trial < 200; ++trial) {
      Elem a = dirs[uniformBelow(rng, dirs.size())];
      int r = static_cast<int>(uniformBelow(rng, 3));
      int n = static_cast<int>(goldenMeanN(*g, X, a, r));
      auto domain = g->ball(std::min(n + 4, 12))->elements;
      Configuration x = randomConfiguration(*g, X, domain, rng);
      // Zeroing sites keeps every window admissible; then add ones where allowed.
      Configuration xp = x;
      for (const Elem& e : domain) {
        if (!g->withinRadius(e, n) && uniformBelow(rng, 2) == 0) xp.set(e, 0);
      }
      for (const Elem& e : domain) {
        if (g->withinRadius(e, n) || uniformBelow(rng, 4) != 0) continue;
        Configuration trialX = xp;
        trialX.set(e, 1);
        if (X.contains(*g, trialX)) xp = std::move(trialX);
      }
      Configuration y = witnessGoldenMean(*g, X, a, r, x, xp);
      out.require(X.contains(*g, y), name + ": golden-mean witness left the subshift");
      for (const Elem& e : g->ball(12)->elements) {
        if (inCone(*g, a, r, ConeSign::Plus, e)) out.require(y.at(e) == x.at(e), name + ": golden forward law");
        if (inCone(*g, a, r, ConeSign::Minus, e)) out.require(y.at(e) == xp.at(e), name + ": golden backward law");
      }
      ++witnesses;
    }
  }
  out.detail << cases << " cone cases, " << witnesses << " witnesses";
}

void crossDirection(Outcome& out) {
  std::mt19937_64 rng(5005);
  std::map<std::pair<int, int>, PathResult> paths;
  std::size_t pairsChecked = 0, steps = 0;
  for (const auto& g : {zGroup(2), heisenberg()}) {
    const Elem gDir = g->generator(0), hDir = g->generator(2);
    for (int inst = 0; inst < 3; ++inst) {
      auto c = randomCoboundary(g, rng).cocycle;
      std::vector<HomoclinicPair> pairs;
      for (int i = 0; i < 1000; ++i) pairs.push_back({randomFull(*g, 2, 3, rng), randomFull(*g, 2, 3, rng)});
      auto t = crossDirectionTest(*c, gDir, hDir, pairs);
      out.require(t.passed() && t.checked == pairs.size(), std::string(g->spec().family == Family::Heisenberg ? "Heisenberg" : "Z^2") + ": cross-direction test");
      pairsChecked += t.checked;

      // Transport from g^N to h^N around the difference set.
      const CoeffGroup& H = c->coeff();
      for (int i = 0; i < 50; ++i) {
        Configuration x = randomFull(*g, 2, 1, rng), y = randomFull(*g, 2, 1, rng);
        int diffLen = 0;
        for (const Elem& e : differenceSet(x, y)) diffLen = std::max(diffLen, g->wordLength(e));
        const int sep = c->windowRadius() + diffLen;
        const int n = sep + 2;
        auto key = std::make_pair(n, sep);
        const Elem start = g->power(gDir, n), end = g->power(hDir, n);
        if (!paths.count(key)) paths[key] = pathOutsideBall(*g, start, end, sep, n + 2);
        const PathResult& path = paths[key];
        out.require(path.connected, "no path outside the ball");
        if (!path.connected) continue;
        auto tr = pathTransport(*c, path.word, start, x, y);
        steps += tr.steps;
        out.require(tr.mismatches == 0 && tr.alongX == tr.alongY, "transport step mismatch");
        HElem before = H.multiply(H.inverse(c->evaluate(start, x)), c->evaluate(start, y));
        HElem after = H.multiply(H.inverse(c->evaluate(end, x)), c->evaluate(end, y));
        out.require(before == after, "limits differ along the path");
        out.require(H.multiply(tr.alongX, c->evaluate(start, x)) == c->evaluate(end, x), "transport identity");
      }
    }
  }
  out.detail << pairsChecked << " pairs, " << steps << " transport steps";
}

void ends(Outcome& out) {
  auto t0 = Clock::now();
  const std::vector<std::pair<NamedGroup, EndVerdict>> cases = {
      {{"Z", zGroup(1)}, EndVerdict::TwoEnds},
      {{"Z^2", zGroup(2)}, EndVerdict::OneEnd},
      {{"Heisenberg", heisenberg()}, EndVerdict::OneEnd},
      {{"Free(2)", freeGroup(2)}, EndVerdict::InfinitelyMany},
      {{"Z/2*Z/3", z2z3()}, EndVerdict::InfinitelyMany},
  };
  for (const auto& [named, want] : cases) {
    auto first = estimateEnds(*named.group, defaultEndSchedule());
    // A freshly built group gives the same report.
    auto again = estimateEnds(*Group::make(named.group->spec()), defaultEndSchedule());
    out.require(first.verdict == want, named.name + " gave " + std::string(endVerdictName(first.verdict)));
    out.require(again.verdict == first.verdict && again.entries.size() == first.entries.size(), named.name + " unstable");
  }
  double secs = secondsSince(t0);
  out.require(secs < 30, "over 30 s");
  out.detail << secs << " s";
}

void periodization(Outcome& out) {
  auto z2 = zGroup(2);
  Subshift X = Subshift::goldenMean(Alphabet::numeric(2), {{Elem{0, 0}, Elem{1, 0}}, {Elem{0, 0}, Elem{0, 1}}});
  auto omega = z2->ball(1)->elements;
  std::mt19937_64 rng(6006);
  int done = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Configuration z = randomConfiguration(*z2, X, z2->ball(2)->elements, rng, 0.5);
    auto y = periodizeZd(*z2, X, z, omega, 8);
    out.require(y.containedIn(*z2, X), "periodic point leaves the subshift");
    for (const Elem& e : omega) out.require(y.at(e) == z.at(e), "disagrees on the agreement ball");
    for (int i = -8; i < 16; ++i) {
      for (int j = -8; j < 16; ++j) {
        out.require(y.at(Elem{i, j}) == y.at(Elem{i + 8, j}) && y.at(Elem{i, j}) == y.at(Elem{i, j + 8}),
                    "not invariant under the lattice");
      }
    }
    ++done;
  }
  out.detail << done << " seeds";
}

bool bruteMember(const Group& g, const Subshift& X, const Configuration& x, int radius) {
  for (const Elem& h : g.ball(radius)->elements) {
    for (const auto& w : X.windows()) {
      bool hit = false;
      for (const Elem& f : w) hit = hit || x.at(g.multiply(h, f)) == X.zero();
      if (!hit) return false;
    }
  }
  return true;
}

void oracles(Outcome& out) {
  std::size_t membership = 0, cones = 0, spellings = 0;
  auto z = zGroup(1), z2 = zGroup(2);
  std::vector<std::pair<GroupPtr, Subshift>> shifts = {
      {z, Subshift::goldenMean(Alphabet::numeric(2), {{Elem{0}, Elem{1}}})},
      {z2, Subshift::goldenMean(Alphabet::numeric(2), {{Elem{0, 0}, Elem{1, 0}}})},
      {z2, Subshift::goldenMean(Alphabet::numeric(2), {{Elem{0, 0}, Elem{1, 0}}, {Elem{0, 0}, Elem{0, 1}}})},
  };
  for (const auto& [g, X] : shifts) {
    auto ball = g->ball(2)->elements;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << ball.size()); ++code) {
      Configuration x = extend(ball, decodePattern(code, ball.size(), 2), 0);
      out.require(X.contains(*g, x) == bruteMember(*g, X, x, 4), "golden-mean membership");
      ++membership;
    }
  }

  // Cones against {a^k b : 0 <= k <= 200, b in B(r)} intersected with B(12).
  for (const auto& [name, family] : allFamilies()) {
    // B(12) of Free(2) has 1062881 elements, above the default ball cap.
    GroupPtr g = Group::make(family->spec(), GroupOptions{2'000'000});
    const std::vector<Elem>& probes = g->ball(12)->elements;
    for (const Elem& a : nonTorsionBall2(*g)) {
      for (int r = 0; r <= 2; ++r) {
        for (auto sign : {ConeSign::Plus, ConeSign::Minus}) {
          std::set<Elem> cone;
          const Elem step = sign == ConeSign::Plus ? a : g->inverse(a);
          Elem power = g->identity();
          for (int k = 0; k <= 200; ++k) {
            for (const Elem& b : g->ball(r)->elements) {
              Elem x = g->multiply(power, b);
              if (g->withinRadius(x, 12)) cone.insert(x);
            }
            power = g->multiply(power, step);
          }
          for (const Elem& x : probes) {
            out.require(inCone(*g, a, r, sign, x) == (cone.count(x) > 0), name + ": cone membership at " + g->format(x));
            ++cones;
          }
        }
      }
    }
  }

  for (const auto& [name, g] : allFamilies()) {
    std::mt19937_64 rng(8008);
    std::vector<CocyclePtr> cs = {randomCoboundary(g, rng).cocycle};
    if (g->spec() == GroupSpec::freeAbelian(1)) cs.push_back(exampleCocycleZ());
    if (g->spec().family == Family::Free) cs.push_back(exampleCocycleFree(2));
    for (const auto& c : cs) {
      for (int i = 0; i < 1000; ++i) {
        Elem a = randomWordElement(*g, 6, rng);
        Configuration x = randomFull(*g, 2, 2, rng);
        HElem value = c->evaluate(a, x);
        Word detour = randomGeodesic(*g, a, rng);
        out.require(c->evaluateWord(detour, x) == value, name + ": geodesic spelling");
        Letter t = static_cast<Letter>(uniformBelow(rng, g->generatorCount()));
        detour.insert(detour.begin() + static_cast<long>(uniformBelow(rng, detour.size() + 1)),
                      {t, Group::inverseLetter(t)});
        out.require(c->evaluateWord(detour, x) == value, name + ": padded spelling");
        ++spellings;
      }
    }
  }
  out.detail << membership << " overlays, " << cones << " cone probes, " << spellings << " spellings";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"untwist round trip on Z^2 coboundaries", untwistRoundTrip},
      {"counterexamples are obstructed", counterexamples},
      {"specification certificates and witnesses", specification},
      {"cross-direction law and path transport", crossDirection},
      {"end verdicts", ends},
      {"periodization on Z^2", periodization},
      {"oracle equivalences", oracles},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << "exception: " << e.what();
    }
    std::printf("%s criterion %zu: %s (%s)\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.str().c_str());
    std::fflush(stdout);
    failures += out.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
