#pragma once

#include "cocycle/cayley.hpp"
#include "cocycle/cocycle.hpp"
#include "cocycle/untwist.hpp"

#include <json.hpp>

#include <string>

namespace cocycle::io {

using nlohmann::json;

/// Every document carries {"schema": name, "schema_version": kSchemaVersion}.
constexpr int kSchemaVersion = 1;

json stamp(std::string_view schema);
/// Throws ParseError unless `j` is a `schema` document of the current version.
void expectSchema(const json& j, std::string_view schema);

json groupToJson(const GroupSpec& spec);
GroupSpec groupFromJson(const json& j);

json coeffToJson(const CoeffGroup& h);
CoeffPtr coeffFromJson(const json& j);

json alphabetToJson(const Alphabet& a);
Alphabet alphabetFromJson(const json& j);
json shiftToJson(const Group& g, const Subshift& X);
Subshift shiftFromJson(const Group& g, const json& j);

json configToJson(const Group& g, const Alphabet& a, const Configuration& x);
Configuration configFromJson(const Group& g, const Alphabet& a, const json& j);

json elemsToJson(const Group& g, const std::vector<Elem>& xs);
std::vector<Elem> elemsFromJson(const Group& g, const json& j);
json wordToJson(const Group& g, const Word& w);
Word wordFromJson(const Group& g, const json& j);

std::string patternToString(const Alphabet& a, const std::vector<Symbol>& p);
std::vector<Symbol> patternFromString(const Alphabet& a, std::size_t cells, const std::string& s);

/// Self-contained: includes the group, shift and coefficient group.
json cocycleToJson(const LocalCocycle& c);
CocyclePtr cocycleFromJson(const json& j, const BuildOptions& opts = {});

json certificateToJson(const LocalCocycle& c, const ObstructionCertificate& cert);
ObstructionCertificate certificateFromJson(const LocalCocycle& c, const json& j);

json transferReportToJson(const LocalCocycle& c, const TransferReport& r);
TransferReport transferReportFromJson(const LocalCocycle& c, const json& j);

json endReportToJson(const GroupSpec& spec, const EndReport& r);
EndReport endReportFromJson(const json& j);

}  // namespace cocycle::io
