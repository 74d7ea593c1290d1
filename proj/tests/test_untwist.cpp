#include "support.hpp"

#include "cocycle/untwist.hpp"

#include <doctest.h>

using namespace cocycle;
using namespace testing;

namespace {

ShiftPtr fullShift() { return std::make_shared<const Subshift>(Subshift::full(Alphabet::numeric(2))); }

/// b'(p) b0(p)^-1 over every table entry; a single value when b' = const * b0.
std::set<HElem> tableRatio(const LocalCocycle& c, const TransferTable& t, const LocalFunction& b0) {
  const CoeffGroup& H = c.coeff();
  std::set<HElem> out;
  for (std::size_t i = 0; i < t.codes.size(); ++i) {
    Configuration x = extend(t.domain, decodePattern(t.codes[i], t.domain.size(), 2), t.basepoint);
    out.insert(H.multiply(t.values[i], H.inverse(b0.at(c.group(), x, 2))));
  }
  return out;
}

std::vector<Configuration> tableConfigurations(const TransferTable& t) {
  std::vector<Configuration> out;
  for (std::uint64_t code : t.codes) out.push_back(extend(t.domain, decodePattern(code, t.domain.size(), 2), t.basepoint));
  return out;
}

}  // namespace

TEST_CASE("untwist radius") {
  CHECK(untwistRadius(*exampleCocycleZ(), Elem{1}) == 4);
  auto z = zGroup(1);
  auto h = CoeffGroup::cyclic(2);
  CHECK(untwistRadius(*homomorphismCocycle(z, fullShift(), h, {cyc(1)}), Elem{1}) == 0);
  auto z2 = zGroup(2);
  LocalFunction reads{{Elem{1, 0}}, {cyc(0), cyc(0)}};
  auto wide = makeLocalCocycle(z2, fullShift(), h, {{0, reads}, {2, reads}});
  CHECK(wide->windowRadius() == 2);
  auto narrow = homomorphismCocycle(z2, fullShift(), h, {cyc(1), cyc(0)});
  LocalFunction one{{Elem{0, 0}}, {cyc(0), cyc(0)}};
  auto radiusOne = makeLocalCocycle(z2, fullShift(), h, {{1, one}, {3, one}});
  CHECK(radiusOne->windowRadius() == 1);
  CHECK(untwistRadius(*radiusOne, Elem{1, 1}) == 3);
  CHECK(untwistRadius(*narrow, Elem{1, 1}) == 0);

  auto sft = std::make_shared<const Subshift>(
      Subshift::sft(Alphabet::numeric(2), {Elem{0}, Elem{1}}, {{0, 0}, {0, 1}, {1, 0}}));
  auto onSft = homomorphismCocycle(z, sft, h, {cyc(1)});
  CHECK(errorOf([&] { untwistRadius(*onSft, Elem{1}); }) == ErrorCode::NoWitnessConstructor);
  auto pc = Group::make(GroupSpec::freeProductCyclic({2, 3}));
  auto onPc = homomorphismCocycle(pc, fullShift(), h, {cyc(1), cyc(0)});
  CHECK(errorOf([&] { untwistRadius(*onPc, pc->parse("s1")); }) == ErrorCode::TorsionElement);
}

TEST_CASE("transfer tables") {
  auto z2 = zGroup(2);
  auto h = CoeffGroup::cyclic(2);
  auto hom = homomorphismCocycle(z2, fullShift(), h, {cyc(1), cyc(1)});
  auto t = transferMap(*hom, Elem{1, 0}, 0, 1);
  CHECK(t.codes.size() == 32);
  for (const HElem& v : t.values) CHECK(v == h->identity());

  LocalFunction origin{{z2->identity()}, {cyc(0), cyc(1)}};
  auto cob = coboundaryCocycle(z2, fullShift(), h, origin, {cyc(0), cyc(0)});
  auto tc = transferMap(*cob, Elem{1, 0}, 0, 1);
  CHECK(tableRatio(*cob, tc, origin).size() == 1);
  CHECK(*tc.find(*z2, 2, Configuration(0)) == h->identity());
  REQUIRE(tc.codes.front() == 0);
  CHECK(tc.values.front() == h->identity());

  CHECK(errorOf([&] {
          TransferOptions tiny;
          tiny.patternCap = 8;
          transferMap(*cob, Elem{1, 0}, 0, 1, tiny);
        }) == ErrorCode::PatternEnumerationTooLarge);
}

TEST_CASE("transfer lookup falls back to the limit off the table") {
  std::mt19937_64 rng(3);
  auto z2 = zGroup(2);
  auto inst = randomCoboundary(z2, rng);
  auto t = transferMap(*inst.cocycle, Elem{1, 0}, 0, 1);
  Configuration off(0);
  off.set(Elem{3, 0}, 1);
  CHECK_FALSE(t.covers(*z2, off));
  // b(off) agrees with the b0-shape of the table.
  std::set<HElem> ratio = tableRatio(*inst.cocycle, t, inst.transfer);
  REQUIRE(ratio.size() == 1);
  const auto& H = inst.cocycle->coeff();
  CHECK(H.multiply(t.lookup(*inst.cocycle, off), H.inverse(inst.transfer.at(*z2, off, 2))) == *ratio.begin());
  TransferTable bare = t;
  bare.direction.reset();
  CHECK(errorOf([&] { bare.lookup(*inst.cocycle, off); }) == ErrorCode::RadiusInsufficient);
}

TEST_CASE("homomorphism extraction") {
  auto z2 = zGroup(2);
  auto h = CoeffGroup::cyclic(2);
  auto hom = homomorphismCocycle(z2, fullShift(), h, {cyc(1), cyc(0)});
  auto t = transferMap(*hom, Elem{1, 0}, 0, 2);
  auto ex = extractHomomorphism(*hom, t, tableConfigurations(t));
  CHECK(ex.constant);
  CHECK(ex.relatorsOk);
  CHECK(ex.phi[0] == cyc(1));
  CHECK(ex.phi[2] == cyc(0));

  std::mt19937_64 rng(4);
  LocalFunction beta = randomRule(z2->ball(1)->elements, 2, 2, rng);
  auto cob = coboundaryCocycle(z2, fullShift(), h, beta, {cyc(1), cyc(0)});
  auto tc = transferMap(*cob, Elem{1, 0}, 0, 2);
  auto exc = extractHomomorphism(*cob, tc, tableConfigurations(tc));
  CHECK(exc.constant);
  CHECK(exc.phi[0] == cyc(1));
  CHECK(exc.phi[1] == cyc(1));
  CHECK(exc.phi[2] == cyc(0));

  auto bad = exampleCocycleZ();
  auto tb = transferMap(*bad, Elem{1}, 0, 2);
  std::vector<Configuration> samples = tableConfigurations(tb);
  // On the homoclinic class of the zero point the extraction succeeds, and the
  // value it finds is contradicted by the all-ones fixed point.
  auto exb = extractHomomorphism(*bad, tb, samples);
  REQUIRE(exb.constant);
  CHECK(exb.phi[0] == cyc(0));
  CHECK(bad->evaluate(Elem{1}, Configuration(1)) != exb.phi[0]);
}

TEST_CASE("residual verification") {
  auto z2 = zGroup(2);
  auto h = CoeffGroup::cyclic(2);
  std::mt19937_64 rng(5);
  auto inst = randomCoboundary(z2, rng);
  const auto& c = *inst.cocycle;
  auto t = transferMap(c, Elem{1, 0}, 0, 2);
  auto ex = extractHomomorphism(c, t, tableConfigurations(t));
  REQUIRE(ex.constant);
  std::vector<std::pair<Elem, Configuration>> battery;
  for (int i = 0; i < 500; ++i) battery.emplace_back(randomElement(*z2, 3, rng), randomFull(*z2, 2, 2, rng));
  auto res = verifyUntwist(c, t, ex.phi, battery);
  CHECK(res.checked == 500);
  CHECK(res.failures == 0);

  auto hom = homomorphismCocycle(z2, fullShift(), h, {cyc(1), cyc(0)});
  auto th = transferMap(*hom, Elem{1, 0}, 0, 2);
  auto phiHom = phiPerLetter(*h, {cyc(1), cyc(0)});
  CHECK(verifyUntwist(*hom, th, phiHom, battery).failures == 0);

  TransferTable tampered = t;
  tampered.values[1] = h->multiply(tampered.values[1], cyc(1));
  Configuration flipped = extend(t.domain, decodePattern(t.codes[1], t.domain.size(), 2), 0);
  battery.emplace_back(z2->generator(0), flipped);
  auto broken = verifyUntwist(c, tampered, ex.phi, battery);
  CHECK(broken.failures >= 1);
  REQUIRE_FALSE(broken.failed.empty());
  CHECK(broken.failed.size() <= ResidualSummary::kMaxLogged);
  CHECK_FALSE(broken.failed[0].lhs == broken.failed[0].rhs);
}

TEST_CASE("untwist on homomorphism cocycles") {
  auto z2 = zGroup(2);
  auto h = CoeffGroup::cyclic(2);
  auto hom = homomorphismCocycle(z2, fullShift(), h, {cyc(0), cyc(1)});
  auto rep = untwist(*hom);
  CHECK(rep.verdict == Verdict::Untwisted);
  REQUIRE(rep.phi.size() == 2);
  CHECK(rep.phi[0] == cyc(0));
  CHECK(rep.phi[1] == cyc(1));
  for (const HElem& v : rep.table.values) CHECK(v == h->identity());
  CHECK(rep.residualFailures == 0);
  CHECK(rep.residualChecks > 0);
}

TEST_CASE("untwist recovers random coboundaries") {
  std::mt19937_64 rng(6);
  struct Case {
    GroupPtr g;
    int instances;
  };
  for (const auto& [g, count] : {Case{zGroup(2), 5}, Case{zGroup(1), 5}, Case{heisenberg(), 2}, Case{zGroup(3), 1}}) {
    for (int i = 0; i < count; ++i) {
      auto inst = randomCoboundary(g, rng);
      UntwistOptions opts;
      opts.seed = static_cast<std::uint64_t>(i + 1);
      opts.randomPairs = 200;
      if (g->spec().family == Family::Heisenberg || g->spec().rank == 3) opts.tableRadius = 1;
      auto rep = untwist(*inst.cocycle, opts);
      REQUIRE(rep.verdict == Verdict::Untwisted);
      CHECK(rep.phi == inst.phi);
      CHECK(tableRatio(*inst.cocycle, rep.table, inst.transfer).size() == 1);
    }
  }
}

TEST_CASE("untwist with a nonabelian target recovers phi up to conjugation") {
  auto z2 = zGroup(2);
  auto s3 = CoeffGroup::symmetric(3);
  std::mt19937_64 rng(7);
  LocalFunction beta = randomRule(z2->ball(1)->elements, 2, 6, rng);
  std::vector<HElem> phi = {s3->parse("(123)"), s3->parse("(132)")};
  auto c = coboundaryCocycle(z2, fullShift(), s3, beta, phi);
  UntwistOptions opts;
  opts.randomPairs = 200;
  auto rep = untwist(*c, opts);
  REQUIRE(rep.verdict == Verdict::Untwisted);
  HElem atBase = beta.at(*z2, Configuration(0), 2);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    CHECK(rep.phi[i] == s3->multiply(s3->inverse(atBase), s3->multiply(phi[i], atBase)));
  }
  CHECK(tableRatio(*c, rep.table, beta).size() == 1);
}

TEST_CASE("untwist on a golden mean shift") {
  auto z2 = zGroup(2);
  auto X = std::make_shared<const Subshift>(
      Subshift::goldenMean(Alphabet::numeric(2), {{Elem{0, 0}, Elem{1, 0}}, {Elem{0, 0}, Elem{0, 1}}}));
  auto h = CoeffGroup::cyclic(2);
  std::mt19937_64 rng(8);
  LocalFunction beta = randomRule(z2->ball(1)->elements, 2, 2, rng);
  auto c = coboundaryCocycle(z2, X, h, beta, {cyc(1), cyc(0)});
  UntwistOptions opts;
  opts.randomPairs = 200;
  auto rep = untwist(*c, opts);
  REQUIRE(rep.verdict == Verdict::Untwisted);
  CHECK(rep.phi == std::vector<HElem>{cyc(1), cyc(0)});
  CHECK(rep.untwistRadius == goldenMeanN(*z2, *X, rep.directions[0], 2));
}

TEST_CASE("untwist finds the obstructions of the counterexamples") {
  auto rz = untwist(*exampleCocycleZ());
  CHECK(rz.verdict == Verdict::ObstructionFound);
  std::set<CertificateKind> kinds;
  for (const auto& cert : rz.certificates) {
    kinds.insert(cert.kind);
    CHECK(replay(*exampleCocycleZ(), cert));
  }
  CHECK(kinds.count(CertificateKind::PlusMinusMismatch) == 1);
  CHECK(kinds.count(CertificateKind::FixedPointMismatch) == 1);

  auto exf = exampleCocycleFree(2);
  auto rf = untwist(*exf);
  CHECK(rf.verdict == Verdict::ObstructionFound);
  for (const auto& cert : rf.certificates) CHECK(replay(*exf, cert));
}

TEST_CASE("the same seed gives the same report") {
  std::mt19937_64 rng(9);
  auto inst = randomCoboundary(zGroup(2), rng);
  UntwistOptions opts;
  opts.seed = 77;
  opts.randomPairs = 100;
  auto a = untwist(*inst.cocycle, opts);
  auto b = untwist(*inst.cocycle, opts);
  CHECK(a.table.values == b.table.values);
  CHECK(a.phi == b.phi);
  CHECK(a.residualChecks == b.residualChecks);
  for (auto v : {Verdict::Untwisted, Verdict::ObstructionFound, Verdict::Inconclusive}) {
    CHECK(parseVerdict(verdictName(v)) == v);
  }
}

TEST_CASE("direction choice") {
  auto z2 = zGroup(2);
  auto dz2 = chooseDirections(*z2);
  REQUIRE(dz2.size() >= 2);
  CHECK(dz2[0] == Elem{1, 0});
  CHECK(dz2[1] == Elem{0, 1});
  auto dz = chooseDirections(*zGroup(1));
  CHECK(dz.size() == 1);
  auto pc = z2z3();
  for (const Elem& d : chooseDirections(*pc)) CHECK_FALSE(pc->isTorsion(d));
  CHECK_FALSE(chooseDirections(*pc).empty());
}
