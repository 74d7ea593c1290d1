#include "cocycle/untwist.hpp"

#include "cocycle/errors.hpp"

#include <algorithm>
#include <random>

namespace cocycle {

std::string_view verdictName(Verdict v) {
  switch (v) {
    case Verdict::Untwisted: return "Untwisted";
    case Verdict::ObstructionFound: return "ObstructionFound";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict parseVerdict(std::string_view s) {
  for (auto v : {Verdict::Untwisted, Verdict::ObstructionFound, Verdict::Inconclusive}) {
    if (verdictName(v) == s) return v;
  }
  throw Error(ErrorCode::ParseError, "unknown verdict '" + std::string(s) + "'");
}

std::int64_t untwistRadius(const LocalCocycle& c, const Elem& g) {
  const Group& G = c.group();
  if (G.isTorsion(g)) throw Error(ErrorCode::TorsionElement, G.format(g) + " has finite order");
  // Radius of the windows of the generators themselves; inverse letters read
  // one step further out.
  int r0 = 0;
  for (Letter l = 0; l < G.generatorCount(); l += 2) {
    for (const Elem& w : c.rule(l).window) r0 = std::max(r0, G.wordLength(w));
  }
  switch (c.shift().kind()) {
    case SubshiftKind::Full: return specificationN(G, g, r0);
    case SubshiftKind::GoldenMean: return goldenMeanN(G, c.shift(), g, r0);
    case SubshiftKind::SFT: break;
  }
  throw Error(ErrorCode::NoWitnessConstructor, "no specification witness is implemented for this subshift");
}

bool TransferTable::covers(const Group& g, const Configuration& x) const {
  if (x.background() != basepoint) return false;
  for (const auto& [site, s] : x.overlay()) {
    if (!g.withinRadius(site, radius)) return false;
  }
  return true;
}

std::optional<HElem> TransferTable::find(const Group& g, std::size_t alphabetSize, const Configuration& x) const {
  if (codes.empty() || !covers(g, x)) return std::nullopt;
  std::uint64_t code = patternCode(restrict(x, domain), alphabetSize);
  auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) return std::nullopt;
  return values[static_cast<std::size_t>(it - codes.begin())];
}

HElem TransferTable::lookup(const LocalCocycle& c, const Configuration& x) const {
  if (auto v = find(c.group(), c.shift().alphabet().size(), x)) return *v;
  if (!direction) {
    throw Error(ErrorCode::RadiusInsufficient, "configuration is not supported on the transfer table");
  }
  LimitEvaluator lim(c, *direction);
  return c.coeff().inverse(lim.plus(x, Configuration(basepoint)).value);
}

namespace {

std::vector<std::uint64_t> admissibleCodes(const LocalCocycle& c, const std::vector<Elem>& domain, Symbol basepoint,
                                           std::size_t cap, Exec exec) {
  const std::size_t a = c.shift().alphabet().size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (total > cap / a) {
      throw Error(ErrorCode::PatternEnumerationTooLarge,
                  std::to_string(a) + "^" + std::to_string(domain.size()) + " patterns exceed the cap");
    }
    total *= a;
  }
  if (c.shift().kind() == SubshiftKind::Full) {
    std::vector<std::uint64_t> all(static_cast<std::size_t>(total));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  auto ok = mapIndices<char>(static_cast<std::size_t>(total), exec, [&](std::size_t i) {
    return static_cast<char>(c.shift().contains(c.group(), extend(domain, decodePattern(i, domain.size(), a), basepoint)));
  });
  std::vector<std::uint64_t> codes;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (ok[i]) codes.push_back(i);
  }
  return codes;
}

Configuration patternConfiguration(const TransferTable& t, std::uint64_t code, std::size_t a) {
  return extend(t.domain, decodePattern(code, t.domain.size(), a), t.basepoint);
}

}  // namespace

TransferTable transferMap(const LocalCocycle& c, const Elem& g, Symbol basepoint, int radius,
                          const TransferOptions& opts) {
  if (!c.shift().backgroundAdmissible(basepoint)) {
    throw Error(ErrorCode::BackgroundNotAdmissible, "basepoint is not in the subshift");
  }
  TransferTable t;
  t.radius = radius;
  t.basepoint = basepoint;
  t.domain = c.group().ball(radius)->elements;
  t.direction = g;
  t.codes = admissibleCodes(c, t.domain, basepoint, opts.patternCap, opts.exec);
  LimitEvaluator lim(c, g);
  const std::size_t a = c.shift().alphabet().size();
  const Configuration bar(basepoint);
  t.values = mapIndices<HElem>(t.codes.size(), opts.exec, [&](std::size_t i) {
    return c.coeff().inverse(lim.plus(patternConfiguration(t, t.codes[i], a), bar).value);
  });
  return t;
}

ExtractResult extractHomomorphism(const LocalCocycle& c, const TransferTable& b,
                                  const std::vector<Configuration>& samples, Exec exec) {
  const Group& G = c.group();
  const CoeffGroup& H = c.coeff();
  const std::size_t letters = static_cast<std::size_t>(G.generatorCount());
  ExtractResult res;
  res.samples = samples.size();
  if (samples.empty()) return res;
  auto values = mapIndices<HElem>(samples.size() * letters, exec, [&](std::size_t idx) {
    const Configuration& x = samples[idx / letters];
    auto l = static_cast<Letter>(idx % letters);
    Configuration sx = shiftAction(G, G.generator(l), x);
    HElem v = H.multiply(b.lookup(c, sx), c.evaluateWord({l}, x));
    return H.multiply(v, H.inverse(b.lookup(c, x)));
  });
  res.phi.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(letters));
  res.constant = true;
  for (std::size_t i = 1; i < samples.size() && res.constant; ++i) {
    for (std::size_t l = 0; l < letters; ++l) {
      if (!(values[i * letters + l] == res.phi[l])) {
        res.constant = false;
        res.letter = static_cast<Letter>(l);
        res.witness = std::pair{samples[0], samples[i]};
        break;
      }
    }
  }
  if (!res.constant) return res;
  res.relatorsOk = respectsRelators(G, H, res.phi);
  for (std::size_t l = 0; l + 1 < letters; l += 2) {
    if (!(res.phi[l + 1] == H.inverse(res.phi[l]))) res.relatorsOk = false;
  }
  return res;
}

ResidualSummary verifyUntwist(const LocalCocycle& c, const TransferTable& b, const std::vector<HElem>& phi,
                              const std::vector<std::pair<Elem, Configuration>>& battery, Exec exec) {
  const Group& G = c.group();
  const CoeffGroup& H = c.coeff();
  auto rows = mapIndices<Residual>(battery.size(), exec, [&](std::size_t i) {
    const auto& [g, x] = battery[i];
    Residual r{g, x, c.evaluate(g, x), {}};
    HElem bgx = b.lookup(c, shiftAction(G, g, x));
    r.rhs = H.multiply(H.multiply(H.inverse(bgx), homomorphismValue(G, H, phi, g)), b.lookup(c, x));
    return r;
  });
  ResidualSummary s;
  s.checked = rows.size();
  for (auto& r : rows) {
    if (r.lhs == r.rhs) continue;
    ++s.failures;
    if (s.failed.size() < ResidualSummary::kMaxLogged) s.failed.push_back(std::move(r));
  }
  return s;
}

std::vector<Elem> chooseDirections(const Group& g) {
  std::vector<Elem> dirs;
  auto commensurable = [&](const Elem& e) {
    for (const Elem& d : dirs) {
      for (int k = -2; k <= 2; ++k) {
        if (k != 0 && g.power(d, k) == e) return true;
      }
    }
    return false;
  };
  for (Letter l = 0; l < g.generatorCount(); l += 2) {
    const Elem& s = g.generator(l);
    if (!g.isTorsion(s) && !commensurable(s)) dirs.push_back(s);
  }
  auto ball = g.ball(2);
  for (const Elem& e : ball->elements) {
    if (dirs.size() >= 2) break;
    if (!g.isTorsion(e) && !commensurable(e)) dirs.push_back(e);
  }
  return dirs;
}

TransferReport untwist(const LocalCocycle& c, const UntwistOptions& opts) {
  const Group& G = c.group();
  const CoeffGroup& H = c.coeff();
  const Subshift& X = c.shift();
  const std::size_t a = X.alphabet().size();
  std::mt19937_64 rng(opts.seed);

  TransferReport rep;
  rep.seed = opts.seed;
  rep.basepoint = X.alphabet().background;
  rep.radius = opts.tableRadius;
  if (!X.backgroundAdmissible(rep.basepoint)) {
    throw Error(ErrorCode::BackgroundNotAdmissible, "basepoint is not in the subshift");
  }
  rep.notes.push_back("topological mixing of the shift is assumed, not verified");
  if (c.validity().sampled) rep.notes.push_back("relator validity was checked on samples only");

  if (auto fp = fixedPointObstruction(c)) rep.certificates.push_back(*fp);

  auto dirs = chooseDirections(G);
  if (dirs.empty()) {
    rep.notes.push_back("no element of infinite order in B(2)");
    rep.verdict = rep.certificates.empty() ? Verdict::Inconclusive : Verdict::ObstructionFound;
    return rep;
  }
  if (dirs.size() > 2) dirs.resize(2);
  rep.directions = dirs;
  const Elem& g = dirs[0];
  try {
    rep.untwistRadius = untwistRadius(c, g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoWitnessConstructor) throw;
    rep.notes.push_back("no specification witness for this subshift; untwist radius unknown");
  }

  LimitEvaluator limG(c, g);
  std::optional<LimitEvaluator> limH;
  if (dirs.size() > 1) limH.emplace(c, dirs[1]);

  struct Limits {
    HElem plus, minus, cross;
  };
  auto limitsOf = [&](const std::vector<HomoclinicPair>& pairs) {
    return mapIndices<Limits>(pairs.size(), opts.exec, [&](std::size_t i) {
      Limits l;
      l.plus = limG.plus(pairs[i].x, pairs[i].y).value;
      l.minus = limG.minus(pairs[i].x, pairs[i].y).value;
      l.cross = limH ? limH->plus(pairs[i].x, pairs[i].y).value : l.plus;
      return l;
    });
  };
  std::optional<ObstructionCertificate> pm, cross;
  auto scan = [&](const std::vector<HomoclinicPair>& pairs, const std::vector<Limits>& limits) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Limits& l = limits[i];
      if (!pm && !(l.plus == l.minus)) {
        pm = ObstructionCertificate{CertificateKind::PlusMinusMismatch, pairs[i].x, pairs[i].y, g, G.identity(), {},
                                    l.plus, l.minus};
      }
      if (!cross && !(l.plus == l.cross)) {
        cross = ObstructionCertificate{CertificateKind::CrossDirectionMismatch, pairs[i].x, pairs[i].y, g, dirs[1], {},
                                       l.plus, l.cross};
      }
    }
  };
  const Configuration bar(rep.basepoint);

  // Single-site pairs on B(1) first; an obstruction there skips the table.
  std::vector<HomoclinicPair> screen;
  for (const Elem& w : G.ball(1)->elements) {
    for (Symbol s = 0; s < static_cast<Symbol>(a); ++s) {
      if (s == rep.basepoint) continue;
      Configuration x(rep.basepoint);
      x.set(w, s);
      if (X.contains(G, x)) screen.push_back({std::move(x), bar});
    }
  }
  scan(screen, limitsOf(screen));
  rep.pairsChecked = screen.size();
  if (pm || cross || !rep.certificates.empty()) {
    if (pm) rep.certificates.push_back(*pm);
    if (cross) rep.certificates.push_back(*cross);
    rep.verdict = Verdict::ObstructionFound;
    return rep;
  }

  // Table patterns against the basepoint, then random pairs.
  TransferTable& table = rep.table;
  table.radius = opts.tableRadius;
  table.basepoint = rep.basepoint;
  table.domain = G.ball(opts.tableRadius)->elements;
  table.direction = g;
  std::vector<HomoclinicPair> pairs;
  try {
    table.codes = admissibleCodes(c, table.domain, rep.basepoint, opts.patternCap, opts.exec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PatternEnumerationTooLarge) throw;
    rep.notes.push_back("pattern table too large; transfer values are evaluated on demand");
  }
  for (std::uint64_t code : table.codes) pairs.push_back({patternConfiguration(table, code, a), bar});
  const std::size_t tablePairs = pairs.size();
  auto pairDomain = G.ball(opts.pairRadius)->elements;
  for (std::size_t i = 0; i < opts.randomPairs; ++i) {
    Configuration x = randomConfiguration(G, X, pairDomain, rng, 0.3);
    Configuration y = randomConfiguration(G, X, pairDomain, rng, 0.3);
    pairs.push_back({std::move(x), std::move(y)});
  }
  auto limits = limitsOf(pairs);
  rep.pairsChecked += pairs.size();
  scan(pairs, limits);
  if (pm) rep.certificates.push_back(*pm);
  if (cross) rep.certificates.push_back(*cross);
  table.values.resize(tablePairs);
  for (std::size_t i = 0; i < tablePairs; ++i) table.values[i] = H.inverse(limits[i].plus);
  if (!rep.certificates.empty()) {
    rep.verdict = Verdict::ObstructionFound;
    return rep;
  }

  // Homomorphism from patterns one step inside the table.
  std::vector<Configuration> samples;
  const int inner = std::max(opts.tableRadius - 1, 0);
  auto innerBall = G.ball(inner)->elements;
  for (std::size_t i = 0; i < table.codes.size(); ++i) {
    Configuration x = pairs[i].x;
    bool inside = std::all_of(x.overlay().begin(), x.overlay().end(),
                              [&](const auto& kv) { return G.withinRadius(kv.first, inner); });
    if (inside) samples.push_back(std::move(x));
  }
  for (std::size_t i = 0; i < opts.extractRandom; ++i) samples.push_back(randomConfiguration(G, X, innerBall, rng));
  ExtractResult ex = extractHomomorphism(c, table, samples, opts.exec);
  if (!ex.constant) {
    rep.notes.push_back("b(sx) c(s,x) b(x)^-1 is not constant for generator " + G.generatorName(ex.letter));
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }
  for (std::size_t l = 0; l < ex.phi.size(); l += 2) rep.phi.push_back(ex.phi[l]);
  if (!ex.relatorsOk) {
    rep.notes.push_back("extracted generator values do not satisfy the relators");
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }

  std::vector<std::pair<Elem, Configuration>> battery;
  const auto letters = static_cast<std::size_t>(G.generatorCount());
  for (std::size_t i = 0; i < table.codes.size(); ++i) {
    battery.emplace_back(G.generator(static_cast<Letter>(i % letters)), pairs[i].x);
  }
  auto elemBall = G.ball(opts.verifyElementRadius)->elements;
  auto confBall = G.ball(opts.tableRadius)->elements;
  for (std::size_t i = 0; i < opts.verifyRandom; ++i) {
    const Elem& e = elemBall[uniformBelow(rng, elemBall.size())];
    battery.emplace_back(e, randomConfiguration(G, X, confBall, rng));
  }
  ResidualSummary res = verifyUntwist(c, table, ex.phi, battery, opts.exec);
  rep.residualChecks = res.checked;
  rep.residualFailures = res.failures;
  rep.residuals = std::move(res.failed);
  rep.verdict = rep.residualFailures == 0 ? Verdict::Untwisted : Verdict::Inconclusive;
  if (rep.residualFailures) rep.notes.push_back("cohomology equation fails on part of the battery");
  return rep;
}

}  // namespace cocycle
