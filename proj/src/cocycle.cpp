#include "cocycle/cocycle.hpp"

#include "cocycle/errors.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace cocycle {

std::string_view certificateKindName(CertificateKind k) {
  switch (k) {
    case CertificateKind::PlusMinusMismatch: return "PlusMinusMismatch";
    case CertificateKind::CrossDirectionMismatch: return "CrossDirectionMismatch";
    case CertificateKind::FixedPointMismatch: return "FixedPointMismatch";
    case CertificateKind::RelatorViolation: return "RelatorViolation";
  }
  return "PlusMinusMismatch";
}

CertificateKind parseCertificateKind(std::string_view s) {
  for (auto k : {CertificateKind::PlusMinusMismatch, CertificateKind::CrossDirectionMismatch,
                 CertificateKind::FixedPointMismatch, CertificateKind::RelatorViolation}) {
    if (certificateKindName(k) == s) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown certificate kind '" + std::string(s) + "'");
}

LocalFunction constantFunction(const Group& g, std::size_t alphabetSize, const HElem& value) {
  return LocalFunction{{g.identity()}, std::vector<HElem>(alphabetSize, value)};
}

namespace {

std::uint64_t checkedPatternCount(std::size_t alphabetSize, std::size_t cells, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    if (total > cap / std::max<std::size_t>(alphabetSize, 1)) return cap + 1;
    total *= alphabetSize;
  }
  return total;
}

int maxLength(const Group& g, const std::vector<Elem>& xs) {
  int r = 0;
  for (const Elem& e : xs) r = std::max(r, g.wordLength(e));
  return r;
}

void sortUnique(std::vector<Elem>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

LocalCocycle::LocalCocycle(GroupPtr group, ShiftPtr shift, CoeffPtr coeff, std::vector<LocalFunction> rules,
                           ValidityCertificate validity)
    : group_(std::move(group)),
      shift_(std::move(shift)),
      coeff_(std::move(coeff)),
      rules_(std::move(rules)),
      validity_(validity) {
  for (const auto& r : rules_) windowRadius_ = std::max(windowRadius_, maxLength(*group_, r.window));
}

HElem LocalCocycle::evaluateWord(const Word& w, const Configuration& x, const Elem& hinv) const {
  HElem acc = coeff_->identity();
  Elem q = hinv;
  for (std::size_t i = w.size(); i-- > 0;) {
    acc = coeff_->multiply(letterValue(w[i], x, q), acc);
    q = group_->multiply(q, group_->generator(Group::inverseLetter(w[i])));
  }
  return acc;
}

HElem LocalCocycle::evaluate(const Elem& g, const Configuration& x) const {
  return evaluateWord(group_->spell(g), x);
}

std::vector<Elem> LocalCocycle::windowOfWord(const Word& w) const {
  std::vector<Elem> out;
  Elem q = group_->identity();
  for (std::size_t i = w.size(); i-- > 0;) {
    for (const Elem& cell : rule(w[i]).window) out.push_back(group_->multiply(q, cell));
    q = group_->multiply(q, group_->generator(Group::inverseLetter(w[i])));
  }
  sortUnique(out);
  return out;
}

LocalFunction inverseRule(const Group& g, const CoeffGroup& h, Letter s, const LocalFunction& rule) {
  LocalFunction out;
  const Elem& gen = g.generator(s);
  for (const Elem& w : rule.window) out.window.push_back(g.multiply(gen, w));
  out.table.reserve(rule.table.size());
  for (const HElem& v : rule.table) out.table.push_back(h.inverse(v));
  return out;
}

std::optional<ObstructionCertificate> checkRelators(const Group& g, const Subshift& X, const CoeffGroup& h,
                                                    const std::vector<LocalFunction>& rules,
                                                    const BuildOptions& opts, ValidityCertificate* validity) {
  const std::size_t a = X.alphabet().size();
  const Symbol bg = X.alphabet().background;
  ValidityCertificate cert;
  for (const Word& rel : g.relators()) {
    // Compile the relator into reads of a pattern on its dependency window.
    struct Read {
      Letter letter;
      std::vector<std::size_t> cells;
    };
    std::vector<Elem> dep;
    std::vector<std::pair<Letter, std::vector<Elem>>> sites;
    Elem q = g.identity();
    for (std::size_t i = rel.size(); i-- > 0;) {
      std::vector<Elem> cells;
      for (const Elem& w : rules[static_cast<std::size_t>(rel[i])].window) cells.push_back(g.multiply(q, w));
      dep.insert(dep.end(), cells.begin(), cells.end());
      sites.emplace_back(rel[i], std::move(cells));
      q = g.multiply(q, g.generator(Group::inverseLetter(rel[i])));
    }
    sortUnique(dep);
    std::vector<Read> plan;
    for (auto& [letter, cells] : sites) {
      Read r{letter, {}};
      for (const Elem& c : cells) {
        r.cells.push_back(static_cast<std::size_t>(std::lower_bound(dep.begin(), dep.end(), c) - dep.begin()));
      }
      plan.push_back(std::move(r));
    }
    auto value = [&](const std::vector<Symbol>& pat) {
      HElem acc = h.identity();
      for (const Read& r : plan) {
        std::uint64_t code = 0, scale = 1;
        for (std::size_t c : r.cells) {
          code += scale * pat[c];
          scale *= a;
        }
        acc = h.multiply(rules[static_cast<std::size_t>(r.letter)].table[code], acc);
      }
      return acc;
    };
    auto admissible = [&](const std::vector<Symbol>& pat) {
      return X.kind() == SubshiftKind::Full || X.contains(g, extend(dep, pat, bg));
    };

    const std::uint64_t total = checkedPatternCount(a, dep.size(), opts.exhaustiveCap);
    std::optional<std::size_t> bad;
    std::vector<std::vector<Symbol>> samples;
    std::size_t count = 0;
    if (total <= opts.exhaustiveCap) {
      count = static_cast<std::size_t>(total);
      bad = firstFailure(count, opts.exec, [&](std::size_t i) {
        auto pat = decodePattern(i, dep.size(), a);
        return !admissible(pat) || value(pat) == h.identity();
      });
    } else {
      if (opts.strict) {
        throw Error(ErrorCode::CapExceeded, "relator dependency window has " + std::to_string(dep.size()) +
                                                " cells, beyond the exhaustive cap");
      }
      cert.sampled = true;
      std::mt19937_64 rng(opts.seed ^ (0x51ed2701u + rel.size()));
      samples.resize(opts.samples);
      for (auto& pat : samples) {
        pat.resize(dep.size());
        for (auto& s : pat) s = static_cast<Symbol>(uniformBelow(rng, a));
      }
      count = samples.size();
      bad = firstFailure(count, opts.exec, [&](std::size_t i) {
        return !admissible(samples[i]) || value(samples[i]) == h.identity();
      });
    }
    cert.patternsChecked += count;
    ++cert.relatorsChecked;
    if (bad) {
      auto pat = samples.empty() ? decodePattern(*bad, dep.size(), a) : samples[*bad];
      ObstructionCertificate oc;
      oc.kind = CertificateKind::RelatorViolation;
      oc.x = extend(dep, pat, bg);
      oc.xp = Configuration(bg);
      oc.g = g.identity();
      oc.h = g.identity();
      oc.relator = rel;
      oc.first = value(pat);
      oc.second = h.identity();
      if (validity) *validity = cert;
      return oc;
    }
  }
  if (validity) *validity = cert;
  return std::nullopt;
}

CocyclePtr makeLocalCocycle(GroupPtr g, ShiftPtr X, CoeffPtr h, std::vector<RuleInput> inputs,
                            const BuildOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(g->generatorCount());
  const std::size_t a = X->alphabet().size();
  std::vector<std::optional<LocalFunction>> given(n);
  for (auto& in : inputs) {
    if (in.letter < 0 || static_cast<std::size_t>(in.letter) >= n) {
      throw Error(ErrorCode::ParameterOutOfRange, "rule for unknown generator");
    }
    const std::uint64_t want = checkedPatternCount(a, in.rule.window.size(), opts.tableCap);
    if (want > opts.tableCap) throw Error(ErrorCode::PatternEnumerationTooLarge, "rule window too large");
    if (in.rule.table.size() != want) {
      throw Error(ErrorCode::ParameterOutOfRange, "rule for " + g->generatorName(in.letter) + " must have " +
                                                      std::to_string(want) + " entries");
    }
    for (const Elem& w : in.rule.window) {
      if (!g->isValid(w)) throw Error(ErrorCode::ParameterOutOfRange, "invalid window element");
    }
    given[static_cast<std::size_t>(in.letter)] = std::move(in.rule);
  }
  std::vector<LocalFunction> rules(n);
  for (std::size_t s = 0; s < n; s += 2) {
    const auto si = static_cast<Letter>(s);
    auto& fwd = given[s];
    auto& bwd = given[s + 1];
    if (!fwd && !bwd) {
      throw Error(ErrorCode::ParameterOutOfRange, "no rule for generator " + g->generatorName(si));
    }
    if (fwd && !bwd) {
      rules[s] = *fwd;
      rules[s + 1] = inverseRule(*g, *h, si, *fwd);
      continue;
    }
    if (!fwd) {
      rules[s + 1] = *bwd;
      rules[s] = inverseRule(*g, *h, si + 1, *bwd);
      continue;
    }
    rules[s] = *fwd;
    rules[s + 1] = *bwd;
    LocalFunction synth = inverseRule(*g, *h, si, *fwd);
    std::vector<Elem> cells = synth.window;
    cells.insert(cells.end(), bwd->window.begin(), bwd->window.end());
    sortUnique(cells);
    const Symbol bg = X->alphabet().background;
    auto agrees = [&](const std::vector<Symbol>& pat) {
      Configuration x = extend(cells, pat, bg);
      return synth.at(*g, x, a) == bwd->at(*g, x, a);
    };
    const std::uint64_t total = checkedPatternCount(a, cells.size(), opts.exhaustiveCap);
    std::optional<std::size_t> bad;
    if (total <= opts.exhaustiveCap) {
      bad = firstFailure(static_cast<std::size_t>(total), opts.exec,
                         [&](std::size_t i) { return agrees(decodePattern(i, cells.size(), a)); });
    } else {
      std::mt19937_64 rng(opts.seed + s);
      for (std::size_t i = 0; i < opts.samples && !bad; ++i) {
        std::vector<Symbol> pat(cells.size());
        for (auto& v : pat) v = static_cast<Symbol>(uniformBelow(rng, a));
        if (!agrees(pat)) bad = i;
      }
    }
    if (bad) {
      throw Error(ErrorCode::InverseInconsistency,
                  "rules for " + g->generatorName(si) + " and its inverse violate c(s^-1, x) = c(s, s^-1 x)^-1");
    }
  }
  ValidityCertificate validity;
  if (!opts.validateRelators) {
    return std::make_shared<const LocalCocycle>(std::move(g), std::move(X), std::move(h), std::move(rules), validity);
  }
  if (auto bad = checkRelators(*g, *X, *h, rules, opts, &validity)) {
    std::string pattern;
    for (const auto& [site, sym] : bad->x.overlay()) pattern += " " + g->format(site) + "->" + X->alphabet().name(sym);
    throw Error(ErrorCode::RelatorViolation, "relator " + g->formatWord(bad->relator) + " evaluates to " +
                                                 h->format(bad->first) + " on pattern {" + pattern + " }");
  }
  return std::make_shared<const LocalCocycle>(std::move(g), std::move(X), std::move(h), std::move(rules), validity);
}

std::vector<HElem> phiPerLetter(const CoeffGroup& h, const std::vector<HElem>& phi) {
  std::vector<HElem> out;
  for (const HElem& v : phi) {
    out.push_back(v);
    out.push_back(h.inverse(v));
  }
  return out;
}

bool respectsRelators(const Group& g, const CoeffGroup& h, const std::vector<HElem>& perLetter) {
  for (const Word& w : g.relators()) {
    HElem acc = h.identity();
    for (Letter l : w) acc = h.multiply(acc, perLetter[static_cast<std::size_t>(l)]);
    if (!(acc == h.identity())) return false;
  }
  return true;
}

HElem homomorphismValue(const Group& g, const CoeffGroup& h, const std::vector<HElem>& perLetter, const Elem& e) {
  HElem acc = h.identity();
  for (Letter l : g.spell(e)) acc = h.multiply(acc, perLetter[static_cast<std::size_t>(l)]);
  return acc;
}

namespace {

std::vector<HElem> checkedPhi(const Group& g, const CoeffGroup& h, const std::vector<HElem>& phi) {
  if (phi.size() * 2 != static_cast<std::size_t>(g.generatorCount())) {
    throw Error(ErrorCode::ParameterOutOfRange, "need one homomorphism value per generator");
  }
  auto per = phiPerLetter(h, phi);
  if (!respectsRelators(g, h, per)) {
    throw Error(ErrorCode::HomomorphismInvalid, "generator values do not satisfy the relators");
  }
  return per;
}

}  // namespace

CocyclePtr homomorphismCocycle(GroupPtr g, ShiftPtr X, CoeffPtr h, const std::vector<HElem>& phi,
                               const BuildOptions& opts) {
  auto per = checkedPhi(*g, *h, phi);
  std::vector<RuleInput> rules;
  for (std::size_t l = 0; l < per.size(); l += 2) {
    rules.push_back({static_cast<Letter>(l), constantFunction(*g, X->alphabet().size(), per[l])});
  }
  return makeLocalCocycle(std::move(g), std::move(X), std::move(h), std::move(rules), opts);
}

CocyclePtr coboundaryCocycle(GroupPtr g, ShiftPtr X, CoeffPtr h, const LocalFunction& b,
                             const std::vector<HElem>& phi, const BuildOptions& opts) {
  auto per = checkedPhi(*g, *h, phi);
  const std::size_t a = X->alphabet().size();
  if (b.table.size() != checkedPatternCount(a, b.window.size(), opts.tableCap)) {
    throw Error(ErrorCode::ParameterOutOfRange, "transfer rule table has the wrong size");
  }
  std::vector<RuleInput> rules;
  for (Letter l = 0; l < g->generatorCount(); ++l) {
    const Elem& s = g->generator(l);
    const Elem sInv = g->inverse(s);
    std::vector<Elem> cells = b.window;
    for (const Elem& w : b.window) cells.push_back(g->multiply(sInv, w));
    sortUnique(cells);
    const std::uint64_t total = checkedPatternCount(a, cells.size(), opts.tableCap);
    if (total > opts.tableCap) throw Error(ErrorCode::PatternEnumerationTooLarge, "coboundary window too large");
    LocalFunction rule{cells, {}};
    rule.table = mapIndices<HElem>(static_cast<std::size_t>(total), opts.exec, [&](std::size_t code) {
      Configuration x = extend(cells, decodePattern(code, cells.size(), a), X->alphabet().background);
      HElem bx = b.at(*g, x, a);
      HElem bsx = b.at(*g, x, sInv, a);
      return h->multiply(h->multiply(h->inverse(bsx), per[static_cast<std::size_t>(l)]), bx);
    });
    rules.push_back({l, std::move(rule)});
  }
  return makeLocalCocycle(std::move(g), std::move(X), std::move(h), std::move(rules), opts);
}

CocyclePtr exampleCocycleZ() {
  auto g = Group::make(GroupSpec::freeAbelian(1));
  auto X = std::make_shared<const Subshift>(Subshift::full(Alphabet::numeric(2)));
  auto h = CoeffGroup::cyclic(2);
  HElem zero = h->fromIndex(0), one = h->fromIndex(1);
  std::vector<RuleInput> rules{{0, LocalFunction{{g->generator(0)}, {zero, one}}}};
  return makeLocalCocycle(g, X, h, std::move(rules));
}

CocyclePtr exampleCocycleFree(int rank) {
  auto g = Group::make(GroupSpec::free(rank));
  auto X = std::make_shared<const Subshift>(Subshift::full(Alphabet::numeric(2)));
  auto h = CoeffGroup::cyclic(2);
  HElem zero = h->fromIndex(0), one = h->fromIndex(1);
  std::vector<RuleInput> rules;
  for (Letter l = 0; l < g->generatorCount(); l += 2) {
    rules.push_back({l, LocalFunction{{g->generator(l)}, {zero, one}}});
  }
  return makeLocalCocycle(g, X, h, std::move(rules));
}

LimitEvaluator::LimitEvaluator(const LocalCocycle& c, const Elem& g) : c_(&c) {
  if (c.group().isTorsion(g)) throw Error(ErrorCode::TorsionElement, c.group().format(g) + " has finite order");
  dirs_[0] = makeDirection(g);
  dirs_[1] = makeDirection(c.group().inverse(g));
}

LimitEvaluator::Direction LimitEvaluator::makeDirection(const Elem& step) const {
  const Group& G = c_->group();
  Direction d;
  d.step = step;
  d.stepInv = G.inverse(step);
  d.spelling = G.spell(step);
  d.window = c_->windowOfWord(d.spelling);
  d.windowLen = maxLength(G, d.window);
  return d;
}

std::int64_t LimitEvaluator::stabilization(const Direction& d, const std::vector<Elem>& diff) const {
  if (diff.empty()) return 0;
  const Group& G = c_->group();
  std::unordered_set<Elem, ElemHash> dset(diff.begin(), diff.end());
  const std::int64_t limit = G.escapeIndex(d.step, static_cast<std::int64_t>(maxLength(G, diff)) + d.windowLen);
  std::int64_t last = -1;
  Elem cur = G.identity();
  for (std::int64_t k = 0; k < limit; ++k) {
    for (const Elem& w : d.window) {
      if (dset.contains(G.multiply(cur, w))) {
        last = k;
        break;
      }
    }
    cur = G.multiply(cur, d.stepInv);
  }
  return last + 1;
}

HElem LimitEvaluator::powerValue(const Direction& d, std::int64_t n, const Configuration& x) const {
  const Group& G = c_->group();
  const CoeffGroup& H = c_->coeff();
  HElem acc = H.identity();
  Elem cur = G.identity();
  for (std::int64_t k = 0; k < n; ++k) {
    acc = H.multiply(c_->evaluateWord(d.spelling, x, cur), acc);
    cur = G.multiply(cur, d.stepInv);
  }
  return acc;
}

LimitEvaluator::Value LimitEvaluator::limit(const Direction& d, const Configuration& x,
                                            const Configuration& xp) const {
  const CoeffGroup& H = c_->coeff();
  std::int64_t n = stabilization(d, differenceSet(x, xp));
  if (n == 0) return {H.identity(), 0};
  return {H.multiply(H.inverse(powerValue(d, n, x)), powerValue(d, n, xp)), n};
}

bool LimitEvaluator::stable(const Configuration& x, const Configuration& xp, int extra) const {
  const CoeffGroup& H = c_->coeff();
  for (const Direction& d : dirs_) {
    Value v = limit(d, x, xp);
    for (std::int64_t n = v.index; n <= v.index + extra; ++n) {
      HElem w = H.multiply(H.inverse(powerValue(d, n, x)), powerValue(d, n, xp));
      if (!(w == v.value)) return false;
    }
  }
  return true;
}

TestOutcome plusMinusTest(const LocalCocycle& c, const Elem& g, const std::vector<HomoclinicPair>& pairs, Exec exec) {
  LimitEvaluator lim(c, g);
  auto values = mapIndices<std::pair<HElem, HElem>>(pairs.size(), exec, [&](std::size_t i) {
    return std::pair{lim.plus(pairs[i].x, pairs[i].y).value, lim.minus(pairs[i].x, pairs[i].y).value};
  });
  TestOutcome out;
  out.checked = pairs.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].first == values[i].second) continue;
    if (out.mismatches++ == 0) {
      out.certificate = ObstructionCertificate{CertificateKind::PlusMinusMismatch, pairs[i].x, pairs[i].y, g,
                                               c.group().identity(), {}, values[i].first, values[i].second};
    }
  }
  return out;
}

TestOutcome crossDirectionTest(const LocalCocycle& c, const Elem& g, const Elem& h,
                               const std::vector<HomoclinicPair>& pairs, Exec exec) {
  LimitEvaluator lg(c, g);
  LimitEvaluator lh(c, h);
  auto values = mapIndices<std::pair<HElem, HElem>>(pairs.size(), exec, [&](std::size_t i) {
    return std::pair{lg.plus(pairs[i].x, pairs[i].y).value, lh.plus(pairs[i].x, pairs[i].y).value};
  });
  TestOutcome out;
  out.checked = pairs.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].first == values[i].second) continue;
    if (out.mismatches++ == 0) {
      out.certificate = ObstructionCertificate{CertificateKind::CrossDirectionMismatch, pairs[i].x, pairs[i].y, g, h,
                                               {}, values[i].first, values[i].second};
    }
  }
  return out;
}

TransportResult pathTransport(const LocalCocycle& c, const Word& path, const Elem& start, const Configuration& x,
                              const Configuration& y) {
  const Group& G = c.group();
  const CoeffGroup& H = c.coeff();
  auto diff = differenceSet(x, y);
  const int separation = diff.empty() ? -1 : c.windowRadius() + maxLength(G, diff);
  TransportResult res;
  res.alongX = res.alongY = H.identity();
  Elem q = start;
  auto guard = [&](const Elem& p) {
    if (G.withinRadius(p, separation)) {
      throw Error(ErrorCode::SeparationViolated,
                  "path point " + G.format(p) + " is within " + std::to_string(separation) + " of the identity");
    }
  };
  for (Letter t : path) {
    guard(q);
    Elem qInv = G.inverse(q);
    HElem vx = c.letterValue(t, x, qInv);
    HElem vy = c.letterValue(t, y, qInv);
    if (!(vx == vy)) ++res.mismatches;
    res.alongX = H.multiply(vx, res.alongX);
    res.alongY = H.multiply(vy, res.alongY);
    ++res.steps;
    q = G.multiply(G.generator(t), q);
  }
  guard(q);
  return res;
}

std::optional<ObstructionCertificate> fixedPointObstruction(const LocalCocycle& c) {
  const Subshift& X = c.shift();
  std::vector<Symbol> constants;
  for (std::size_t s = 0; s < X.alphabet().size(); ++s) {
    if (X.backgroundAdmissible(static_cast<Symbol>(s))) constants.push_back(static_cast<Symbol>(s));
  }
  if (constants.size() < 2) return std::nullopt;
  const Group& G = c.group();
  const CoeffGroup& H = c.coeff();
  for (Letter l = 0; l < G.generatorCount(); l += 2) {
    const Elem& g = G.generator(l);
    Configuration base(constants[0]);
    HElem v0 = c.evaluate(g, base);
    for (std::size_t i = 1; i < constants.size(); ++i) {
      Configuration other(constants[i]);
      HElem v = c.evaluate(g, other);
      if (!H.conjugate(v0, v)) {
        return ObstructionCertificate{CertificateKind::FixedPointMismatch, base, other, g, G.identity(), {}, v0, v};
      }
    }
  }
  return std::nullopt;
}

bool replay(const LocalCocycle& c, const ObstructionCertificate& cert) {
  const CoeffGroup& H = c.coeff();
  switch (cert.kind) {
    case CertificateKind::PlusMinusMismatch: {
      LimitEvaluator lim(c, cert.g);
      HElem p = lim.plus(cert.x, cert.xp).value;
      HElem m = lim.minus(cert.x, cert.xp).value;
      return p == cert.first && m == cert.second && !(p == m);
    }
    case CertificateKind::CrossDirectionMismatch: {
      HElem p = LimitEvaluator(c, cert.g).plus(cert.x, cert.xp).value;
      HElem q = LimitEvaluator(c, cert.h).plus(cert.x, cert.xp).value;
      return p == cert.first && q == cert.second && !(p == q);
    }
    case CertificateKind::FixedPointMismatch: {
      if (!cert.x.overlay().empty() || !cert.xp.overlay().empty()) return false;
      HElem a = c.evaluate(cert.g, cert.x);
      HElem b = c.evaluate(cert.g, cert.xp);
      return a == cert.first && b == cert.second && !H.conjugate(a, b);
    }
    case CertificateKind::RelatorViolation: {
      if (!(c.group().evaluate(cert.relator) == c.group().identity())) return false;
      HElem v = c.evaluateWord(cert.relator, cert.x);
      return v == cert.first && !(v == H.identity());
    }
  }
  return false;
}

}  // namespace cocycle
