#include "cocycle/json_io.hpp"

#include "cocycle/errors.hpp"

#include <algorithm>

namespace cocycle::io {

namespace {

template <class F>
auto parsing(std::string_view what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

bool singleCharSymbols(const Alphabet& a) {
  return std::all_of(a.symbols.begin(), a.symbols.end(), [](const std::string& s) { return s.size() == 1; });
}

json helemsToJson(const CoeffGroup& h, const std::vector<HElem>& xs) {
  json out = json::array();
  for (const HElem& v : xs) out.push_back(h.format(v));
  return out;
}

std::vector<HElem> helemsFromJson(const CoeffGroup& h, const json& j) {
  std::vector<HElem> out;
  for (const auto& v : j) out.push_back(h.parse(v.get<std::string>()));
  return out;
}

}  // namespace

json stamp(std::string_view schema) {
  return json{{"schema", std::string(schema)}, {"schema_version", kSchemaVersion}};
}

void expectSchema(const json& j, std::string_view schema) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != schema) {
    throw Error(ErrorCode::ParseError, "expected a '" + std::string(schema) + "' document");
  }
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "unsupported schema_version for '" + std::string(schema) + "'");
  }
}

json groupToJson(const GroupSpec& spec) {
  json params = json::object();
  switch (spec.family) {
    case Family::FreeAbelian: params["d"] = spec.rank; break;
    case Family::Free: params["r"] = spec.rank; break;
    case Family::FreeProductCyclic: params["orders"] = spec.orders; break;
    case Family::Heisenberg: break;
  }
  return json{{"family", std::string(familyName(spec.family))}, {"params", params}};
}

GroupSpec groupFromJson(const json& j) {
  return parsing("group", [&] {
    std::string fam = j.at("family").get<std::string>();
    json params = j.value("params", json::object());
    if (fam == "free_abelian") return GroupSpec::freeAbelian(params.at("d").get<int>());
    if (fam == "free") return GroupSpec::free(params.at("r").get<int>());
    if (fam == "free_product_cyclic") return GroupSpec::freeProductCyclic(params.at("orders").get<std::vector<int>>());
    if (fam == "heisenberg") return GroupSpec::heisenberg();
    throw Error(ErrorCode::UnsupportedFamily, "unknown group family '" + fam + "'");
  });
}

json coeffToJson(const CoeffGroup& h) {
  switch (h.kind()) {
    case CoeffKind::Cyclic: return json{{"kind", "cyclic"}, {"n", h.modulus()}};
    case CoeffKind::FreeAbelian: return json{{"kind", "free_abelian"}, {"rank", h.rank()}};
    case CoeffKind::Table: return json{{"kind", "table"}, {"elements", h.names()}, {"table", h.tableRows()}};
  }
  return {};
}

CoeffPtr coeffFromJson(const json& j) {
  return parsing("coefficient group", [&] {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return CoeffGroup::cyclic(j.at("n").get<std::int64_t>());
    if (kind == "free_abelian") return CoeffGroup::freeAbelian(j.at("rank").get<int>());
    if (kind == "symmetric") return CoeffGroup::symmetric(j.at("n").get<int>());
    if (kind == "table") {
      auto names = j.value("elements", std::vector<std::string>{});
      return CoeffGroup::table(std::move(names), j.at("table").get<std::vector<std::vector<int>>>());
    }
    throw Error(ErrorCode::ParseError, "unknown coefficient kind '" + kind + "'");
  });
}

json alphabetToJson(const Alphabet& a) { return a.symbols; }

Alphabet alphabetFromJson(const json& j) {
  return parsing("alphabet", [&] { return Alphabet(j.get<std::vector<std::string>>()); });
}

json elemsToJson(const Group& g, const std::vector<Elem>& xs) {
  json out = json::array();
  for (const Elem& e : xs) out.push_back(g.format(e));
  return out;
}

std::vector<Elem> elemsFromJson(const Group& g, const json& j) {
  return parsing("element list", [&] {
    std::vector<Elem> out;
    for (const auto& v : j) {
      out.push_back(v.is_number_integer() ? g.parse(std::to_string(v.get<long long>())) : g.parse(v.get<std::string>()));
    }
    return out;
  });
}

json wordToJson(const Group& g, const Word& w) {
  json out = json::array();
  for (Letter l : w) out.push_back(g.generatorName(l));
  return out;
}

Word wordFromJson(const Group& g, const json& j) {
  return parsing("word", [&] {
    Word w;
    for (const auto& v : j) w.push_back(g.letterByName(v.get<std::string>()));
    return w;
  });
}

json shiftToJson(const Group& g, const Subshift& X) {
  const Alphabet& a = X.alphabet();
  json j{{"kind", std::string(subshiftKindName(X.kind()))},
         {"alphabet", alphabetToJson(a)},
         {"background", a.name(a.background)}};
  if (X.kind() == SubshiftKind::SFT) {
    j["window"] = elemsToJson(g, X.window());
    std::vector<std::uint64_t> codes(X.allowed().begin(), X.allowed().end());
    std::sort(codes.begin(), codes.end());
    json allowed = json::array();
    for (auto code : codes) {
      json row = json::array();
      for (Symbol s : decodePattern(code, X.window().size(), a.size())) row.push_back(a.name(s));
      allowed.push_back(row);
    }
    j["allowed"] = allowed;
  }
  if (X.kind() == SubshiftKind::GoldenMean) {
    json ws = json::array();
    for (const auto& w : X.windows()) ws.push_back(elemsToJson(g, w));
    j["windows"] = ws;
  }
  return j;
}

Subshift shiftFromJson(const Group& g, const json& j) {
  return parsing("subshift", [&] {
    std::string kind = j.at("kind").get<std::string>();
    Alphabet a = j.contains("alphabet") ? alphabetFromJson(j["alphabet"]) : Alphabet::numeric(2);
    if (j.contains("background")) a.background = a.index(j["background"].get<std::string>());
    if (kind == "full") return Subshift::full(a);
    if (kind == "sft") {
      std::vector<std::vector<Symbol>> allowed;
      for (const auto& row : j.at("allowed")) {
        std::vector<Symbol> p;
        for (const auto& s : row) p.push_back(a.index(s.get<std::string>()));
        allowed.push_back(std::move(p));
      }
      return Subshift::sft(a, elemsFromJson(g, j.at("window")), std::move(allowed));
    }
    if (kind == "golden_mean") {
      std::vector<std::vector<Elem>> ws;
      for (const auto& w : j.at("windows")) ws.push_back(elemsFromJson(g, w));
      return Subshift::goldenMean(a, std::move(ws));
    }
    throw Error(ErrorCode::ParseError, "unknown subshift kind '" + kind + "'");
  });
}

json configToJson(const Group& g, const Alphabet& a, const Configuration& x) {
  json overlay = json::array();
  for (const auto& [site, s] : x.overlay()) overlay.push_back(json::array({g.format(site), a.name(s)}));
  return json{{"background", a.name(x.background())}, {"overlay", overlay}};
}

Configuration configFromJson(const Group& g, const Alphabet& a, const json& j) {
  return parsing("configuration", [&] {
    Configuration x(j.contains("background") ? a.index(j["background"].get<std::string>()) : a.background);
    for (const auto& entry : j.value("overlay", json::array())) {
      Elem site = entry.at(0).is_number_integer() ? g.parse(std::to_string(entry.at(0).get<long long>()))
                                                  : g.parse(entry.at(0).get<std::string>());
      if (!g.isValid(site)) throw Error(ErrorCode::ParseError, "invalid site in overlay");
      x.set(site, a.index(entry.at(1).get<std::string>()));
    }
    return x;
  });
}

std::string patternToString(const Alphabet& a, const std::vector<Symbol>& p) {
  std::string out;
  const bool compact = singleCharSymbols(a);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!compact && i) out += ',';
    out += a.name(p[i]);
  }
  return out;
}

std::vector<Symbol> patternFromString(const Alphabet& a, std::size_t cells, const std::string& s) {
  std::vector<Symbol> out;
  if (singleCharSymbols(a)) {
    for (char ch : s) out.push_back(a.index(std::string(1, ch)));
  } else {
    std::size_t start = 0;
    while (start <= s.size() && !s.empty()) {
      std::size_t comma = s.find(',', start);
      out.push_back(a.index(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (out.size() != cells) throw Error(ErrorCode::ParseError, "pattern '" + s + "' has the wrong length");
  return out;
}

json cocycleToJson(const LocalCocycle& c) {
  const Group& g = c.group();
  json j = stamp("cocycle");
  j["group"] = groupToJson(g.spec());
  j["shift"] = shiftToJson(g, c.shift());
  j["coeff"] = coeffToJson(c.coeff());
  json rules = json::object();
  for (Letter l = 0; l < g.generatorCount(); ++l) {
    const LocalFunction& r = c.rule(l);
    rules[g.generatorName(l)] = json{{"window", elemsToJson(g, r.window)}, {"table", helemsToJson(c.coeff(), r.table)}};
  }
  j["rules"] = rules;
  return j;
}

CocyclePtr cocycleFromJson(const json& j, const BuildOptions& opts) {
  return parsing("cocycle", [&] {
    expectSchema(j, "cocycle");
    auto g = Group::make(groupFromJson(j.at("group")));
    auto X = std::make_shared<const Subshift>(shiftFromJson(*g, j.at("shift")));
    auto h = coeffFromJson(j.at("coeff"));
    std::vector<RuleInput> rules;
    for (const auto& [name, body] : j.at("rules").items()) {
      LocalFunction f{elemsFromJson(*g, body.at("window")), helemsFromJson(*h, body.at("table"))};
      rules.push_back({g->letterByName(name), std::move(f)});
    }
    std::sort(rules.begin(), rules.end(), [](const RuleInput& a, const RuleInput& b) { return a.letter < b.letter; });
    return makeLocalCocycle(g, X, h, std::move(rules), opts);
  });
}

json certificateToJson(const LocalCocycle& c, const ObstructionCertificate& cert) {
  const Group& g = c.group();
  const Alphabet& a = c.shift().alphabet();
  json j = stamp("obstruction_certificate");
  j["kind"] = std::string(certificateKindName(cert.kind));
  j["x"] = configToJson(g, a, cert.x);
  j["x_prime"] = configToJson(g, a, cert.xp);
  j["g"] = g.format(cert.g);
  j["h"] = g.format(cert.h);
  j["relator"] = wordToJson(g, cert.relator);
  j["values"] = json::array({c.coeff().format(cert.first), c.coeff().format(cert.second)});
  return j;
}

ObstructionCertificate certificateFromJson(const LocalCocycle& c, const json& j) {
  return parsing("certificate", [&] {
    expectSchema(j, "obstruction_certificate");
    const Group& g = c.group();
    const Alphabet& a = c.shift().alphabet();
    ObstructionCertificate cert;
    cert.kind = parseCertificateKind(j.at("kind").get<std::string>());
    cert.x = configFromJson(g, a, j.at("x"));
    cert.xp = configFromJson(g, a, j.at("x_prime"));
    cert.g = g.parse(j.at("g").get<std::string>());
    cert.h = g.parse(j.at("h").get<std::string>());
    cert.relator = wordFromJson(g, j.at("relator"));
    cert.first = c.coeff().parse(j.at("values").at(0).get<std::string>());
    cert.second = c.coeff().parse(j.at("values").at(1).get<std::string>());
    return cert;
  });
}

json transferReportToJson(const LocalCocycle& c, const TransferReport& r) {
  const Group& g = c.group();
  const CoeffGroup& h = c.coeff();
  const Alphabet& a = c.shift().alphabet();
  json j = stamp("transfer_report");
  j["verdict"] = std::string(verdictName(r.verdict));
  j["seed"] = r.seed;
  j["directions"] = elemsToJson(g, r.directions);
  j["basepoint"] = a.name(r.basepoint);
  j["radius"] = r.radius;
  j["untwist_radius"] = r.untwistRadius;
  j["convention"] = "c(g,x) = b(gx)^-1 phi(g) b(x)";
  json phi = json::object();
  for (std::size_t i = 0; i < r.phi.size(); ++i) phi[g.generatorName(static_cast<Letter>(2 * i))] = h.format(r.phi[i]);
  j["phi"] = phi;
  json entries = json::array();
  for (std::size_t i = 0; i < r.table.codes.size() && i < r.table.values.size(); ++i) {
    entries.push_back(json::array(
        {patternToString(a, decodePattern(r.table.codes[i], r.table.domain.size(), a.size())), h.format(r.table.values[i])}));
  }
  j["transfer"] = json{{"radius", r.table.radius},
                       {"basepoint", a.name(r.table.basepoint)},
                       {"domain", elemsToJson(g, r.table.domain)},
                       {"direction", r.table.direction ? json(g.format(*r.table.direction)) : json(nullptr)},
                       {"entries", entries}};
  j["pairs_checked"] = r.pairsChecked;
  json residuals = json::array();
  for (const Residual& res : r.residuals) {
    residuals.push_back(json{{"g", g.format(res.g)},
                             {"x", configToJson(g, a, res.x)},
                             {"lhs", h.format(res.lhs)},
                             {"rhs", h.format(res.rhs)}});
  }
  j["residuals"] = json{{"checked", r.residualChecks}, {"failures", r.residualFailures}, {"failed", residuals}};
  json certs = json::array();
  for (const auto& cert : r.certificates) certs.push_back(certificateToJson(c, cert));
  j["certificates"] = certs;
  j["notes"] = r.notes;
  return j;
}

TransferReport transferReportFromJson(const LocalCocycle& c, const json& j) {
  return parsing("transfer report", [&] {
    expectSchema(j, "transfer_report");
    const Group& g = c.group();
    const CoeffGroup& h = c.coeff();
    const Alphabet& a = c.shift().alphabet();
    TransferReport r;
    r.verdict = parseVerdict(j.at("verdict").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.directions = elemsFromJson(g, j.at("directions"));
    r.basepoint = a.index(j.at("basepoint").get<std::string>());
    r.radius = j.at("radius").get<int>();
    r.untwistRadius = j.at("untwist_radius").get<std::int64_t>();
    for (Letter l = 0; l < g.generatorCount(); l += 2) {
      const auto& phi = j.at("phi");
      if (phi.contains(g.generatorName(l))) r.phi.push_back(h.parse(phi[g.generatorName(l)].get<std::string>()));
    }
    const json& t = j.at("transfer");
    r.table.radius = t.at("radius").get<int>();
    r.table.basepoint = a.index(t.at("basepoint").get<std::string>());
    r.table.domain = elemsFromJson(g, t.at("domain"));
    if (!t.at("direction").is_null()) r.table.direction = g.parse(t["direction"].get<std::string>());
    for (const auto& e : t.at("entries")) {
      r.table.codes.push_back(patternCode(patternFromString(a, r.table.domain.size(), e.at(0).get<std::string>()), a.size()));
      r.table.values.push_back(h.parse(e.at(1).get<std::string>()));
    }
    r.pairsChecked = j.at("pairs_checked").get<std::size_t>();
    const json& res = j.at("residuals");
    r.residualChecks = res.at("checked").get<std::size_t>();
    r.residualFailures = res.at("failures").get<std::size_t>();
    for (const auto& f : res.at("failed")) {
      r.residuals.push_back(Residual{g.parse(f.at("g").get<std::string>()), configFromJson(g, a, f.at("x")),
                                     h.parse(f.at("lhs").get<std::string>()), h.parse(f.at("rhs").get<std::string>())});
    }
    for (const auto& cert : j.at("certificates")) r.certificates.push_back(certificateFromJson(c, cert));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  });
}

json endReportToJson(const GroupSpec& spec, const EndReport& r) {
  json j = stamp("end_report");
  j["group"] = groupToJson(spec);
  j["verdict"] = std::string(endVerdictName(r.verdict));
  j["evidence"] = "finite-radius component counts, not a proof";
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(json{{"inner", e.inner},
                           {"outer", e.outer},
                           {"components", e.components},
                           {"touching_outer", e.touching},
                           {"sizes", e.sizes}});
  }
  j["schedule"] = entries;
  return j;
}

EndReport endReportFromJson(const json& j) {
  return parsing("end report", [&] {
    expectSchema(j, "end_report");
    EndReport r;
    r.verdict = parseEndVerdict(j.at("verdict").get<std::string>());
    for (const auto& e : j.at("schedule")) {
      r.entries.push_back(EndEntry{e.at("inner").get<int>(), e.at("outer").get<int>(), e.at("components").get<int>(),
                                   e.at("touching_outer").get<int>(), e.at("sizes").get<std::vector<std::size_t>>()});
    }
    return r;
  });
}

}  // namespace cocycle::io
