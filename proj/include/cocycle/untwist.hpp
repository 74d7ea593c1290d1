#pragma once

#include "cocycle/cocycle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cocycle {

/// Agreement radius after which the forward limit of a passing cocycle is
/// trivial; exact through the specification radius of the shift.
std::int64_t untwistRadius(const LocalCocycle& c, const Elem& g);

/// Transfer values on admissible patterns of B(radius), extended by the
/// basepoint symbol. Stored in the convention c(g,x) = b(gx)^-1 phi(g) b(x).
struct TransferTable {
  int radius = 0;
  Symbol basepoint = 0;
  std::vector<Elem> domain;          // B(radius) in ball order
  std::vector<std::uint64_t> codes;  // admissible pattern codes, increasing
  std::vector<HElem> values;
  std::optional<Elem> direction;     // enables evaluation off the table

  bool covers(const Group& g, const Configuration& x) const;
  std::optional<HElem> find(const Group& g, std::size_t alphabetSize, const Configuration& x) const;
  /// b(x); falls back to a forward limit along `direction` when x is not
  /// supported on the table domain. Throws RadiusInsufficient otherwise.
  HElem lookup(const LocalCocycle& c, const Configuration& x) const;
};

struct TransferOptions {
  std::size_t patternCap = std::size_t{1} << 20;
  Exec exec = defaultExec();
};

/// b(p) = lim c(g^n, x_p)^-1 c(g^n, xbar) inverted into the table convention.
TransferTable transferMap(const LocalCocycle& c, const Elem& g, Symbol basepoint, int radius,
                          const TransferOptions& opts = {});

struct ExtractResult {
  bool constant = false;
  bool relatorsOk = false;
  std::vector<HElem> phi;  // per letter
  Letter letter = -1;      // generator whose value is not constant
  std::optional<std::pair<Configuration, Configuration>> witness;
  std::size_t samples = 0;
};

/// L(s) = b(sx) c(s,x) b(x)^-1 over the samples, required constant per s.
ExtractResult extractHomomorphism(const LocalCocycle& c, const TransferTable& b,
                                  const std::vector<Configuration>& samples, Exec exec = defaultExec());

struct Residual {
  Elem g;
  Configuration x;
  HElem lhs;  // c(g, x)
  HElem rhs;  // b(gx)^-1 phi(g) b(x)
};

struct ResidualSummary {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<Residual> failed;  // at most kMaxLogged
  static constexpr std::size_t kMaxLogged = 32;
};

ResidualSummary verifyUntwist(const LocalCocycle& c, const TransferTable& b, const std::vector<HElem>& phi,
                              const std::vector<std::pair<Elem, Configuration>>& battery,
                              Exec exec = defaultExec());

enum class Verdict { Untwisted, ObstructionFound, Inconclusive };
std::string_view verdictName(Verdict v);
Verdict parseVerdict(std::string_view s);

struct UntwistOptions {
  int tableRadius = 2;
  int pairRadius = 5;
  std::size_t randomPairs = 1000;
  std::size_t extractRandom = 200;
  std::size_t verifyRandom = 500;
  int verifyElementRadius = 3;
  std::uint64_t seed = 1;
  std::size_t patternCap = std::size_t{1} << 20;
  Exec exec = defaultExec();
};

struct TransferReport {
  std::vector<Elem> directions;
  Symbol basepoint = 0;
  int radius = 0;
  std::int64_t untwistRadius = -1;  // -1 when no witness constructor applies
  std::uint64_t seed = 0;
  TransferTable table;
  std::vector<HElem> phi;  // per generator
  std::size_t pairsChecked = 0;
  std::size_t residualChecks = 0;
  std::size_t residualFailures = 0;
  std::vector<Residual> residuals;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<ObstructionCertificate> certificates;
  std::vector<std::string> notes;
};

/// Non-torsion letters first, then non-torsion elements of B(2).
std::vector<Elem> chooseDirections(const Group& g);

TransferReport untwist(const LocalCocycle& c, const UntwistOptions& opts = {});

}  // namespace cocycle
