#include "cocycle/shift.hpp"

#include "cocycle/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace cocycle {

Alphabet::Alphabet(std::vector<std::string> syms, Symbol bg) : symbols(std::move(syms)), background(bg) {
  if (symbols.empty() || symbols.size() > kMaxSymbols) {
    throw Error(ErrorCode::ParameterOutOfRange, "alphabet size must be in [1, 64]");
  }
  auto sorted = symbols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::ParameterOutOfRange, "alphabet symbols must be distinct");
  }
  if (background >= symbols.size()) throw Error(ErrorCode::ParameterOutOfRange, "background not in alphabet");
}

Alphabet Alphabet::numeric(int n) {
  std::vector<std::string> syms;
  for (int i = 0; i < n; ++i) syms.push_back(std::to_string(i));
  return Alphabet(std::move(syms));
}

Symbol Alphabet::index(std::string_view name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == name) return static_cast<Symbol>(i);
  }
  throw Error(ErrorCode::ParseError, "unknown symbol '" + std::string(name) + "'");
}

void Configuration::set(const Elem& g, Symbol s) {
  if (s == background_) {
    overlay_.erase(g);
  } else {
    overlay_[g] = s;
  }
}

std::vector<Elem> Configuration::support() const {
  std::vector<Elem> out;
  out.reserve(overlay_.size());
  for (const auto& [g, s] : overlay_) out.push_back(g);
  return out;
}

std::vector<Elem> differenceSet(const Configuration& x, const Configuration& y) {
  std::vector<Elem> out;
  for (const auto& [g, s] : x.overlay()) {
    if (y.at(g) != s) out.push_back(g);
  }
  for (const auto& [g, s] : y.overlay()) {
    if (x.at(g) != s && !x.overlay().contains(g)) out.push_back(g);
  }
  if (x.background() != y.background()) {
    throw Error(ErrorCode::ParameterOutOfRange, "configurations have different backgrounds");
  }
  std::sort(out.begin(), out.end());
  return out;
}

Configuration shiftAction(const Group& g, const Elem& by, const Configuration& x) {
  Configuration y(x.background());
  for (const auto& [h, s] : x.overlay()) y.set(g.multiply(by, h), s);
  return y;
}

std::vector<Symbol> restrict(const Configuration& x, const std::vector<Elem>& domain) {
  std::vector<Symbol> out;
  out.reserve(domain.size());
  for (const Elem& f : domain) out.push_back(x.at(f));
  return out;
}

Configuration extend(const std::vector<Elem>& domain, const std::vector<Symbol>& values, Symbol background) {
  Configuration x(background);
  for (std::size_t i = 0; i < domain.size(); ++i) x.set(domain[i], values[i]);
  return x;
}

std::uint64_t patternCode(const std::vector<Symbol>& values, std::size_t alphabetSize) {
  std::uint64_t code = 0, scale = 1;
  for (Symbol s : values) {
    code += scale * s;
    scale *= alphabetSize;
  }
  return code;
}

std::vector<Symbol> decodePattern(std::uint64_t code, std::size_t cells, std::size_t alphabetSize) {
  std::vector<Symbol> out(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    out[i] = static_cast<Symbol>(code % alphabetSize);
    code /= alphabetSize;
  }
  return out;
}

std::string_view subshiftKindName(SubshiftKind k) {
  switch (k) {
    case SubshiftKind::Full: return "full";
    case SubshiftKind::SFT: return "sft";
    case SubshiftKind::GoldenMean: return "golden_mean";
  }
  return "full";
}

Subshift Subshift::full(Alphabet a) {
  Subshift X;
  X.kind_ = SubshiftKind::Full;
  X.alphabet_ = std::move(a);
  return X;
}

Subshift Subshift::sft(Alphabet a, std::vector<Elem> window, std::vector<std::vector<Symbol>> allowed) {
  if (window.empty()) throw Error(ErrorCode::ParameterOutOfRange, "SFT window is empty");
  double bits = 0;
  for (std::size_t s = a.size(); s > 1; s >>= 1) bits += 1;
  if (bits * static_cast<double>(window.size()) > 62) {
    throw Error(ErrorCode::ParameterOutOfRange, "SFT window too large for pattern codes");
  }
  Subshift X;
  X.kind_ = SubshiftKind::SFT;
  X.alphabet_ = std::move(a);
  X.window_ = std::move(window);
  for (const auto& p : allowed) {
    if (p.size() != X.window_.size()) throw Error(ErrorCode::ParameterOutOfRange, "allowed pattern has wrong size");
    for (Symbol s : p) {
      if (s >= X.alphabet_.size()) throw Error(ErrorCode::ParameterOutOfRange, "allowed pattern symbol out of range");
    }
    X.allowed_.insert(patternCode(p, X.alphabet_.size()));
  }
  return X;
}

Subshift Subshift::goldenMean(Alphabet a, std::vector<std::vector<Elem>> windows) {
  if (windows.empty()) throw Error(ErrorCode::ParameterOutOfRange, "golden-mean shift needs a window");
  for (const auto& w : windows) {
    if (w.empty()) throw Error(ErrorCode::ParameterOutOfRange, "golden-mean window is empty");
  }
  Subshift X;
  X.kind_ = SubshiftKind::GoldenMean;
  X.zero_ = a.index("0");
  if (a.background != X.zero_) throw Error(ErrorCode::BackgroundNotAdmissible, "golden-mean background must be 0");
  X.alphabet_ = std::move(a);
  X.windows_ = std::move(windows);
  return X;
}

std::vector<Elem> Subshift::footprint() const {
  std::vector<Elem> out = window_;
  for (const auto& w : windows_) out.insert(out.end(), w.begin(), w.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Subshift::windowRadius(const Group& g) const {
  int r = 0;
  for (const Elem& f : footprint()) r = std::max(r, g.wordLength(f));
  return r;
}

bool Subshift::backgroundAdmissible(Symbol s) const {
  switch (kind_) {
    case SubshiftKind::Full: return s < alphabet_.size();
    case SubshiftKind::SFT: {
      std::uint64_t code = patternCode(std::vector<Symbol>(window_.size(), s), alphabet_.size());
      return allowed_.contains(code);
    }
    case SubshiftKind::GoldenMean: return s == zero_;
  }
  return false;
}

std::vector<Elem> Subshift::affectedSites(const Group& g, const std::vector<Elem>& sites) const {
  std::vector<Elem> out;
  auto fp = footprint();
  std::vector<Elem> inv;
  for (const Elem& f : fp) inv.push_back(g.inverse(f));
  for (const Elem& s : sites) {
    for (const Elem& fi : inv) out.push_back(g.multiply(s, fi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Subshift::contains(const Group& g, const Configuration& x) const {
  if (!backgroundAdmissible(x.background())) {
    throw Error(ErrorCode::BackgroundNotAdmissible, "constant background '" +
                                                        alphabet_.name(x.background()) + "' is not in the subshift");
  }
  if (kind_ == SubshiftKind::Full) return true;
  auto at = [&](const Elem& e) { return x.at(e); };
  for (const Elem& h : affectedSites(g, x.support())) {
    if (!siteOk(g, h, at)) return false;
  }
  return true;
}

bool inCone(const Group& g, const Elem& a, int r, ConeSign sign, const Elem& x) {
  if (g.isTorsion(a)) throw Error(ErrorCode::TorsionElement, g.format(a) + " has finite order");
  Elem step = sign == ConeSign::Plus ? g.inverse(a) : a;  // multiplies by a^-1 (resp. a)
  std::int64_t limit = g.escapeIndex(a, static_cast<std::int64_t>(g.wordLength(x)) + r);
  Elem cur = x;
  for (std::int64_t k = 0; k < limit; ++k) {
    if (g.withinRadius(cur, r)) return true;
    cur = g.multiply(step, cur);
  }
  return false;
}

std::int64_t specificationN(const Group& g, const Elem& a, int r) {
  if (g.isTorsion(a)) throw Error(ErrorCode::TorsionElement, g.format(a) + " has finite order");
  std::int64_t limit = g.escapeIndex(a, 2 * static_cast<std::int64_t>(r));
  std::int64_t m = 0;
  Elem cur = g.identity();
  for (std::int64_t n = 0; n < limit; ++n) {
    if (g.withinRadius(cur, 2 * r)) m = n;
    cur = g.multiply(cur, a);
  }
  std::int64_t total = r;
  cur = g.identity();
  for (std::int64_t i = 0; i <= m; ++i) {
    total += g.wordLength(cur);
    cur = g.multiply(cur, a);
  }
  return total;
}

std::int64_t goldenMeanN(const Group& g, const Subshift& X, const Elem& a, int r) {
  int r0 = X.windowRadius(g);
  return specificationN(g, a, r + r0) + r0;
}

namespace {

void checkAgreement(const Group& g, const Configuration& x, const Configuration& xp, std::int64_t n) {
  for (const Elem& d : differenceSet(x, xp)) {
    if (g.withinRadius(d, static_cast<int>(n))) {
      throw Error(ErrorCode::AgreementBallViolated,
                  "inputs differ at " + g.format(d) + " inside B(" + std::to_string(n) + ")");
    }
  }
}

Configuration glueCones(const Group& g, const Elem& a, int r, const Configuration& x, const Configuration& xp) {
  Configuration y(x.background());
  for (const auto& [h, s] : x.overlay()) {
    if (inCone(g, a, r, ConeSign::Plus, h)) y.set(h, s);
  }
  for (const auto& [h, s] : xp.overlay()) {
    if (inCone(g, a, r, ConeSign::Minus, h)) y.set(h, s);
  }
  return y;
}

}  // namespace

Configuration witnessFullShift(const Group& g, const Elem& a, int r, const Configuration& x,
                               const Configuration& xp) {
  checkAgreement(g, x, xp, specificationN(g, a, r));
  return glueCones(g, a, r, x, xp);
}

Configuration witnessGoldenMean(const Group& g, const Subshift& X, const Elem& a, int r,
                                const Configuration& x, const Configuration& xp) {
  if (X.kind() != SubshiftKind::GoldenMean) {
    throw Error(ErrorCode::NoWitnessConstructor, "golden-mean witness needs a golden-mean shift");
  }
  if (!X.contains(g, x) || !X.contains(g, xp)) throw Error(ErrorCode::NotInSubshift, "input is not in X");
  checkAgreement(g, x, xp, goldenMeanN(g, X, a, r));
  Configuration y = glueCones(g, a, r, x, xp);
  if (!X.contains(g, y)) throw Error(ErrorCode::NotInSubshift, "glued witness left X");
  return y;
}

std::size_t PeriodicConfiguration::offset(const Elem& g) const {
  std::size_t off = 0;
  for (int i = 0; i < dim; ++i) {
    std::int64_t v = g.data[static_cast<std::size_t>(i)] % period;
    if (v < 0) v += period;
    off = off * static_cast<std::size_t>(period) + static_cast<std::size_t>(v);
  }
  return off;
}

std::vector<Elem> PeriodicConfiguration::fundamentalDomain() const {
  std::vector<Elem> out;
  out.reserve(cells.size());
  for (std::size_t off = 0; off < cells.size(); ++off) {
    Elem e;
    e.data.assign(static_cast<std::size_t>(dim), 0);
    std::size_t rest = off;
    for (int i = dim - 1; i >= 0; --i) {
      e.data[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rest % static_cast<std::size_t>(period));
      rest /= static_cast<std::size_t>(period);
    }
    out.push_back(std::move(e));
  }
  return out;
}

bool PeriodicConfiguration::containedIn(const Group& g, const Subshift& X) const {
  auto at = [&](const Elem& e) { return this->at(e); };
  for (const Elem& h : fundamentalDomain()) {
    if (!X.siteOk(g, h, at)) return false;
  }
  return true;
}

PeriodicConfiguration periodizeZd(const Group& g, const Subshift& X, const Configuration& z,
                                  const std::vector<Elem>& omega, int period) {
  if (g.spec().family != Family::FreeAbelian) {
    throw Error(ErrorCode::UnsupportedFamily, "periodization is implemented for free abelian groups only");
  }
  if (period < 1) throw Error(ErrorCode::ParameterOutOfRange, "period must be positive");
  const int d = g.spec().rank;
  std::size_t cells = 1;
  for (int i = 0; i < d; ++i) {
    cells *= static_cast<std::size_t>(period);
    if (cells > (std::size_t{1} << 24)) throw Error(ErrorCode::ParameterOutOfRange, "fundamental domain too large");
  }
  if (!X.contains(g, z)) throw Error(ErrorCode::NotInSubshift, "input is not in X");

  std::vector<Elem> window = X.footprint();
  if (window.empty()) window.push_back(g.identity());
  std::vector<Elem> winInv;
  for (const Elem& w : window) winInv.push_back(g.inverse(w));
  auto product = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    std::vector<Elem> out;
    for (const Elem& x : a) {
      for (const Elem& y : b) out.push_back(g.multiply(x, y));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<Elem> f1 = product(z.support(), winInv);
  std::vector<Elem> seed = f1;
  seed.insert(seed.end(), omega.begin(), omega.end());
  std::vector<Elem> f2 = product(product(seed, winInv), window);

  PeriodicConfiguration y;
  y.dim = d;
  y.period = period;
  y.cells.assign(cells, z.background());
  std::unordered_map<std::size_t, Elem> owner;
  for (const Elem& e : f2) {
    std::size_t off = y.offset(e);
    auto [it, fresh] = owner.emplace(off, e);
    if (!fresh) {
      throw Error(ErrorCode::PeriodTooSmall,
                  g.format(it->second) + " and " + g.format(e) + " share a coset of the period lattice");
    }
    y.cells[off] = z.at(e);
  }
  if (!y.containedIn(g, X)) throw Error(ErrorCode::NotInSubshift, "periodized point left X");
  return y;
}

GlueResult glueCheck(const Group& g, const Subshift& X, int r, const std::vector<Symbol>& p1,
                     const std::vector<Symbol>& p2, const Elem& by) {
  auto ball = g.ball(r);
  if (p1.size() != ball->size() || p2.size() != ball->size()) {
    throw Error(ErrorCode::ParameterOutOfRange, "patterns must cover B(" + std::to_string(r) + ")");
  }
  Symbol bg = X.alphabet().background;
  Configuration c1 = extend(ball->elements, p1, bg);
  Configuration c2 = extend(ball->elements, p2, bg);
  if (!X.contains(g, c1) || !X.contains(g, c2)) {
    throw Error(ErrorCode::PatternNotAdmissible, "pattern does not extend into X by the background");
  }
  GlueResult res;
  int r0 = X.windowRadius(g);
  if (g.withinRadius(by, 2 * r + 2 * r0)) {
    res.reason = "TooClose";
    return res;
  }
  res.y = c2;
  for (std::size_t i = 0; i < ball->size(); ++i) res.y.set(g.multiply(by, ball->elements[i]), p1[i]);
  res.ok = X.contains(g, res.y);
  if (!res.ok) res.reason = "NotInSubshift";
  return res;
}

std::uint64_t uniformBelow(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    std::uint64_t v = rng();
    if (v >= threshold) return v % n;
  }
}

Configuration randomConfiguration(const Group& g, const Subshift& X, const std::vector<Elem>& domain,
                                  std::mt19937_64& rng, double density) {
  const Alphabet& a = X.alphabet();
  Configuration x(a.background);
  if (a.size() < 2) return x;
  constexpr std::uint64_t kScale = 1u << 20;
  auto threshold = static_cast<std::uint64_t>(density * static_cast<double>(kScale));
  for (const Elem& site : domain) {
    if (uniformBelow(rng, kScale) >= threshold) continue;
    auto s = static_cast<Symbol>(uniformBelow(rng, a.size() - 1));
    if (s >= a.background) ++s;
    x.set(site, s);
    if (X.kind() == SubshiftKind::Full) continue;
    auto at = [&](const Elem& e) { return x.at(e); };
    for (const Elem& h : X.affectedSites(g, {site})) {
      if (!X.siteOk(g, h, at)) {
        x.set(site, a.background);
        break;
      }
    }
  }
  return x;
}

}  // namespace cocycle
