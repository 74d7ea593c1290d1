#include "cocycle/cayley.hpp"
#include "cocycle/cocycle.hpp"
#include "cocycle/errors.hpp"
#include "cocycle/json_io.hpp"
#include "cocycle/shift.hpp"
#include "cocycle/untwist.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace cocycle;
using io::json;

namespace {

enum Exit { kOk = 0, kInput = 2, kInconclusive = 3, kObstruction = 4 };

struct RunConfig {
  std::string group, shift, cocycle;
  std::uint64_t seed = 1;
  int radius = -1;
  std::size_t cap = 0;
  std::string format = "json";
  std::string out;
};

/// A file path, or an inline document when the argument starts with '{'.
json load(const std::string& arg, const char* what) {
  if (arg.empty()) throw Error(ErrorCode::ParseError, std::string("missing --") + what);
  try {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + arg);
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, arg + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
  std::string body = cfg.format == "text" && !text.empty() ? text : doc.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + cfg.out);
  f << body;
}

GroupPtr loadGroup(const RunConfig& cfg) {
  Group::Options opts;
  if (cfg.cap) opts.ballCap = cfg.cap;
  return Group::make(io::groupFromJson(load(cfg.group, "group")), opts);
}

ShiftPtr loadShift(const RunConfig& cfg, const Group& g) {
  if (cfg.shift.empty()) return std::make_shared<const Subshift>(Subshift::full(Alphabet::numeric(2)));
  return std::make_shared<const Subshift>(io::shiftFromJson(g, load(cfg.shift, "shift")));
}

CocyclePtr loadCocycle(const RunConfig& cfg, BuildOptions opts = {}) {
  opts.seed = cfg.seed;
  json j = load(cfg.cocycle, "cocycle");
  if (!cfg.group.empty()) j["group"] = load(cfg.group, "group");
  if (!cfg.shift.empty()) j["shift"] = load(cfg.shift, "shift");
  return io::cocycleFromJson(j, opts);
}

int cmdEnds(const RunConfig& cfg) {
  auto g = loadGroup(cfg);
  auto schedule = defaultEndSchedule();
  if (cfg.radius > 0) {
    for (auto& [inner, outer] : schedule) outer = inner + cfg.radius;
  }
  EndReport r = estimateEnds(*g, schedule);
  std::ostringstream text;
  text << endVerdictName(r.verdict) << "\n";
  for (const auto& e : r.entries) {
    text << "  B(" << e.outer << ") \\ B(" << e.inner << "): " << e.touching << " of " << e.components
         << " components reach the outer sphere\n";
  }
  emit(cfg, io::endReportToJson(g->spec(), r), text.str());
  return r.verdict == EndVerdict::Inconclusive ? kInconclusive : kOk;
}

int cmdUntwist(const RunConfig& cfg) {
  auto c = loadCocycle(cfg);
  UntwistOptions opts;
  opts.seed = cfg.seed;
  if (cfg.radius >= 0) opts.tableRadius = cfg.radius;
  if (cfg.cap) opts.patternCap = cfg.cap;
  TransferReport r = untwist(*c, opts);
  json doc = io::transferReportToJson(*c, r);
  std::ostringstream text;
  text << verdictName(r.verdict) << "\n";
  for (const auto& cert : r.certificates) {
    text << "  " << certificateKindName(cert.kind) << ": " << c->coeff().format(cert.first) << " vs "
         << c->coeff().format(cert.second) << "\n";
  }
  if (r.verdict == Verdict::Untwisted) {
    for (std::size_t i = 0; i < r.phi.size(); ++i) {
      text << "  phi(" << c->group().generatorName(static_cast<Letter>(2 * i)) << ") = " << c->coeff().format(r.phi[i])
           << "\n";
    }
    text << "  residuals: " << r.residualChecks << " checked, " << r.residualFailures << " failed\n";
  }
  for (const auto& note : r.notes) text << "  note: " << note << "\n";
  emit(cfg, doc, text.str());
  switch (r.verdict) {
    case Verdict::Untwisted: return kOk;
    case Verdict::ObstructionFound: return kObstruction;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int cmdWitness(const RunConfig& cfg, const std::string& a, int r, const std::string& x, const std::string& xp) {
  auto g = loadGroup(cfg);
  auto X = loadShift(cfg, *g);
  Elem dir = g->parse(a);
  Configuration cx = io::configFromJson(*g, X->alphabet(), load(x, "x"));
  Configuration cxp = io::configFromJson(*g, X->alphabet(), load(xp, "xp"));
  json doc = io::stamp("witness");
  Configuration y;
  switch (X->kind()) {
    case SubshiftKind::Full:
      y = witnessFullShift(*g, dir, r, cx, cxp);
      doc["agreement_radius"] = specificationN(*g, dir, r);
      break;
    case SubshiftKind::GoldenMean:
      y = witnessGoldenMean(*g, *X, dir, r, cx, cxp);
      doc["agreement_radius"] = goldenMeanN(*g, *X, dir, r);
      break;
    case SubshiftKind::SFT:
      throw Error(ErrorCode::NoWitnessConstructor, "no witness construction for a general SFT");
  }
  doc["a"] = g->format(dir);
  doc["r"] = r;
  doc["y"] = io::configToJson(*g, X->alphabet(), y);
  doc["in_subshift"] = X->contains(*g, y);
  emit(cfg, doc, "");
  return kOk;
}

int cmdPeriodize(const RunConfig& cfg, const std::string& z, int period, int omegaRadius) {
  auto g = loadGroup(cfg);
  auto X = loadShift(cfg, *g);
  Configuration cz = io::configFromJson(*g, X->alphabet(), load(z, "z"));
  auto omega = g->ball(omegaRadius)->elements;
  PeriodicConfiguration y = periodizeZd(*g, *X, cz, omega, period);
  json doc = io::stamp("periodic_configuration");
  doc["period"] = period;
  doc["dimension"] = y.dim;
  json cells = json::array();
  auto domain = y.fundamentalDomain();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (y.cells[i] != cz.background()) cells.push_back(json::array({g->format(domain[i]), X->alphabet().name(y.cells[i])}));
  }
  doc["background"] = X->alphabet().name(cz.background());
  doc["fundamental_domain_overlay"] = cells;
  doc["in_subshift"] = y.containedIn(*g, *X);
  emit(cfg, doc, "");
  return kOk;
}

int cmdGlue(const RunConfig& cfg, const std::string& p1, const std::string& p2, const std::string& by, int r) {
  auto g = loadGroup(cfg);
  auto X = loadShift(cfg, *g);
  std::size_t cells = g->ball(r)->size();
  auto q1 = io::patternFromString(X->alphabet(), cells, p1);
  auto q2 = io::patternFromString(X->alphabet(), cells, p2);
  GlueResult res = glueCheck(*g, *X, r, q1, q2, g->parse(by));
  json doc = io::stamp("glue");
  doc["ok"] = res.ok;
  doc["reason"] = res.reason;
  if (res.ok) doc["y"] = io::configToJson(*g, X->alphabet(), res.y);
  emit(cfg, doc, "");
  return res.ok ? kOk : kInconclusive;
}

/// Seeded instance over A = H = Z/2 on the full shift. The group defaults to Z^2.
/// A coboundary draws b on B(1); both kinds draw phi until it respects the relators.
CocyclePtr randomInstance(const RunConfig& cfg, bool coboundary) {
  GroupPtr g = cfg.group.empty() ? Group::make(GroupSpec::freeAbelian(2)) : loadGroup(cfg);
  auto X = std::make_shared<const Subshift>(Subshift::full(Alphabet::numeric(2)));
  auto h = CoeffGroup::cyclic(2);
  std::mt19937_64 rng(cfg.seed);
  auto bit = [&] {
    HElem e;
    e.v[0] = static_cast<std::int64_t>(rng() >> 63);
    return e;
  };
  std::vector<HElem> phi;
  do {
    phi.clear();
    for (Letter l = 0; l < g->generatorCount(); l += 2) phi.push_back(bit());
  } while (!respectsRelators(*g, *h, phiPerLetter(*h, phi)));
  if (!coboundary) return homomorphismCocycle(g, X, h, phi);
  LocalFunction b;
  b.window = g->ball(1)->elements;
  b.table.resize(std::size_t{1} << b.window.size());
  for (auto& v : b.table) v = bit();
  return coboundaryCocycle(g, X, h, b, phi);
}

int cmdExample(const RunConfig& cfg, const std::string& kind, int rank) {
  CocyclePtr c;
  if (kind == "z") {
    c = exampleCocycleZ();
  } else if (kind == "free") {
    c = exampleCocycleFree(rank);
  } else if (kind == "coboundary" || kind == "hom") {
    c = randomInstance(cfg, kind == "coboundary");
  } else {
    throw Error(ErrorCode::ParseError, "unknown example kind '" + kind + "' (use z, free, coboundary or hom)");
  }
  emit(cfg, io::cocycleToJson(*c), "");
  return kOk;
}

int cmdEval(const RunConfig& cfg, const std::string& elem, const std::string& x) {
  auto c = loadCocycle(cfg);
  Elem g = c->group().parse(elem);
  Configuration cx = x.empty() ? Configuration(c->shift().alphabet().background)
                               : io::configFromJson(c->group(), c->shift().alphabet(), load(x, "x"));
  HElem v = c->evaluate(g, cx);
  json doc = io::stamp("evaluation");
  doc["g"] = c->group().format(g);
  doc["x"] = io::configToJson(c->group(), c->shift().alphabet(), cx);
  doc["value"] = c->coeff().format(v);
  emit(cfg, doc, c->coeff().format(v) + "\n");
  return kOk;
}

int cmdValidate(const RunConfig& cfg) {
  BuildOptions opts;
  opts.validateRelators = false;
  auto c = loadCocycle(cfg, opts);
  opts.seed = cfg.seed;
  ValidityCertificate v;
  auto bad = checkRelators(c->group(), c->shift(), c->coeff(), c->rules(), opts, &v);
  json doc = io::stamp("validation");
  doc["valid"] = !bad.has_value();
  doc["sampled"] = v.sampled;
  doc["patterns_checked"] = v.patternsChecked;
  doc["relators_checked"] = v.relatorsChecked;
  if (bad) doc["certificate"] = io::certificateToJson(*c, *bad);
  emit(cfg, doc, "");
  return bad ? kInput : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cocycles on shifts over finitely generated groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "group JSON file or inline document");
    sub->add_option("--shift", cfg.shift, "subshift JSON file or inline document");
    sub->add_option("--cocycle", cfg.cocycle, "cocycle JSON file or inline document");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--radius", cfg.radius, "radius override");
    sub->add_option("--cap", cfg.cap, "element or pattern cap");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  auto* ends = app.add_subcommand("ends", "estimate the number of ends");
  common(ends);
  auto* untw = app.add_subcommand("untwist", "run the untwisting pipeline");
  common(untw);

  std::string a, x, xp;
  int r = 1;
  auto* wit = app.add_subcommand("witness", "build a specification witness");
  common(wit);
  wit->add_option("--a", a, "direction")->required();
  wit->add_option("--r", r, "cone radius");
  wit->add_option("--x", x, "forward configuration")->required();
  wit->add_option("--xp", xp, "backward configuration")->required();

  std::string z;
  int period = 8, omegaRadius = 1;
  auto* per = app.add_subcommand("periodize", "periodize a homoclinic point on Z^d");
  common(per);
  per->add_option("--z", z, "configuration")->required();
  per->add_option("--period", period, "period K");
  per->add_option("--omega-radius", omegaRadius, "agreement ball radius");

  std::string p1, p2, by;
  auto* glue = app.add_subcommand("glue", "glue two patterns far apart");
  common(glue);
  glue->add_option("--p1", p1, "pattern on B(r), ball order")->required();
  glue->add_option("--p2", p2, "pattern on B(r), ball order")->required();
  glue->add_option("--g", by, "translation")->required();
  glue->add_option("--r", r, "pattern radius");

  std::string kind = "z";
  int rank = 2;
  auto* ex = app.add_subcommand("example", "emit a built-in or seeded example cocycle");
  common(ex);
  ex->add_option("--kind", kind, "z, free, coboundary or hom");
  ex->add_option("--rank", rank, "free group rank");

  std::string elem;
  auto* ev = app.add_subcommand("eval", "evaluate c(g, x)");
  common(ev);
  ev->add_option("--g", elem, "group element")->required();
  ev->add_option("--x", x, "configuration");

  auto* val = app.add_subcommand("validate", "check the cocycle identity on relators");
  common(val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*ends) return cmdEnds(cfg);
    if (*untw) return cmdUntwist(cfg);
    if (*wit) return cmdWitness(cfg, a, r, x, xp);
    if (*per) return cmdPeriodize(cfg, z, period, omegaRadius);
    if (*glue) return cmdGlue(cfg, p1, p2, by, r);
    if (*ex) return cmdExample(cfg, kind, rank);
    if (*ev) return cmdEval(cfg, elem, x);
    if (*val) return cmdValidate(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
