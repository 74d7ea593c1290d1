#pragma once

#include "cocycle/coeff.hpp"
#include "cocycle/group.hpp"
#include "cocycle/kernels.hpp"
#include "cocycle/shift.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cocycle {

using ShiftPtr = std::shared_ptr<const Subshift>;

/// A map A^G -> H that only looks at finitely many sites. The value at a
/// configuration x is table[code of (x_w)_{w in window}].
struct LocalFunction {
  std::vector<Elem> window;
  std::vector<HElem> table;

  /// Value at h*x, where hinv = h^-1; (h x)_w = x_{h^-1 w}.
  HElem at(const Group& g, const Configuration& x, const Elem& hinv, std::size_t alphabetSize) const {
    std::uint64_t code = 0, scale = 1;
    for (const Elem& w : window) {
      code += scale * x.at(g.multiply(hinv, w));
      scale *= alphabetSize;
    }
    return table[code];
  }
  HElem at(const Group& g, const Configuration& x, std::size_t alphabetSize) const {
    return at(g, x, g.identity(), alphabetSize);
  }
};

/// Constant function with window {e}.
LocalFunction constantFunction(const Group& g, std::size_t alphabetSize, const HElem& value);

struct ValidityCertificate {
  bool sampled = false;
  std::size_t patternsChecked = 0;
  std::size_t relatorsChecked = 0;
};

enum class CertificateKind { PlusMinusMismatch, CrossDirectionMismatch, FixedPointMismatch, RelatorViolation };
std::string_view certificateKindName(CertificateKind k);
CertificateKind parseCertificateKind(std::string_view s);

/// Replayable evidence that a necessary condition for triviality fails.
struct ObstructionCertificate {
  CertificateKind kind = CertificateKind::PlusMinusMismatch;
  Configuration x;   // pair member, first fixed point, or relator pattern
  Configuration xp;  // pair member or second fixed point
  Elem g;            // direction or generator
  Elem h;            // second direction for cross checks
  Word relator;
  HElem first;
  HElem second;
};

class LocalCocycle {
 public:
  LocalCocycle(GroupPtr group, ShiftPtr shift, CoeffPtr coeff, std::vector<LocalFunction> rules,
               ValidityCertificate validity);

  const Group& group() const { return *group_; }
  const GroupPtr& groupPtr() const { return group_; }
  const Subshift& shift() const { return *shift_; }
  const ShiftPtr& shiftPtr() const { return shift_; }
  const CoeffGroup& coeff() const { return *coeff_; }
  const CoeffPtr& coeffPtr() const { return coeff_; }
  const LocalFunction& rule(Letter l) const { return rules_.at(static_cast<std::size_t>(l)); }
  const std::vector<LocalFunction>& rules() const { return rules_; }
  const ValidityCertificate& validity() const { return validity_; }

  /// Least r with every letter window inside B(r).
  int windowRadius() const { return windowRadius_; }

  HElem letterValue(Letter t, const Configuration& x, const Elem& hinv) const {
    return rules_[static_cast<std::size_t>(t)].at(*group_, x, hinv, shift_->alphabet().size());
  }
  /// c(t_1 ... t_n, h x) for hinv = h^-1.
  HElem evaluateWord(const Word& w, const Configuration& x, const Elem& hinv) const;
  HElem evaluateWord(const Word& w, const Configuration& x) const {
    return evaluateWord(w, x, group_->identity());
  }
  /// c(g, x) through the canonical geodesic spelling of g.
  HElem evaluate(const Elem& g, const Configuration& x) const;
  /// Sites that c(w, .) reads.
  std::vector<Elem> windowOfWord(const Word& w) const;

 private:
  GroupPtr group_;
  ShiftPtr shift_;
  CoeffPtr coeff_;
  std::vector<LocalFunction> rules_;
  ValidityCertificate validity_;
  int windowRadius_ = 0;
};

using CocyclePtr = std::shared_ptr<const LocalCocycle>;

struct RuleInput {
  Letter letter;
  LocalFunction rule;
};

struct BuildOptions {
  std::size_t exhaustiveCap = std::size_t{1} << 20;
  std::size_t samples = 65536;
  std::size_t tableCap = std::size_t{1} << 22;
  bool strict = false;  // refuse to fall back to sampling
  bool validateRelators = true;
  std::uint64_t seed = 1;
  Exec exec = defaultExec();
};

/// The rule of s^-1 forced by the cocycle identity: c(s^-1, x) = c(s, s^-1 x)^-1.
LocalFunction inverseRule(const Group& g, const CoeffGroup& h, Letter s, const LocalFunction& rule);

/// Evaluates every relator on its dependency window. Returns a certificate on
/// the least failing pattern; `validity` receives the coverage achieved.
std::optional<ObstructionCertificate> checkRelators(const Group& g, const Subshift& X, const CoeffGroup& h,
                                                    const std::vector<LocalFunction>& rules,
                                                    const BuildOptions& opts, ValidityCertificate* validity);

CocyclePtr makeLocalCocycle(GroupPtr g, ShiftPtr X, CoeffPtr h, std::vector<RuleInput> rules,
                            const BuildOptions& opts = {});

/// phi holds one value per generator pair, i.e. generatorCount() / 2 entries.
CocyclePtr homomorphismCocycle(GroupPtr g, ShiftPtr X, CoeffPtr h, const std::vector<HElem>& phi,
                               const BuildOptions& opts = {});
/// c(s, x) = b(s x)^-1 phi(s) b(x).
CocyclePtr coboundaryCocycle(GroupPtr g, ShiftPtr X, CoeffPtr h, const LocalFunction& b,
                             const std::vector<HElem>& phi, const BuildOptions& opts = {});
/// A = H = Z/2 on Z with c(g, x) = x_g.
CocyclePtr exampleCocycleZ();
/// A = H = Z/2 on the free group of rank r with c(a_i, x) = x_{a_i}.
CocyclePtr exampleCocycleFree(int rank);

/// phi extended along the canonical spelling of g.
HElem homomorphismValue(const Group& g, const CoeffGroup& h, const std::vector<HElem>& phiPerLetter, const Elem& e);
/// Per-letter values from per-generator values.
std::vector<HElem> phiPerLetter(const CoeffGroup& h, const std::vector<HElem>& phi);
bool respectsRelators(const Group& g, const CoeffGroup& h, const std::vector<HElem>& phiPerLetter);

struct HomoclinicPair {
  Configuration x;
  Configuration y;
};

/// Limits of c(g^n, x)^-1 c(g^n, x') as n -> +infinity along a fixed direction.
class LimitEvaluator {
 public:
  LimitEvaluator(const LocalCocycle& c, const Elem& g);

  struct Value {
    HElem value;
    std::int64_t index = 0;  // stabilization index used
  };

  const Elem& direction() const { return dirs_[0].step; }
  Value plus(const Configuration& x, const Configuration& xp) const { return limit(dirs_[0], x, xp); }
  Value minus(const Configuration& x, const Configuration& xp) const { return limit(dirs_[1], x, xp); }
  /// Recomputes c(g^n, x)^-1 c(g^n, x') for n in [N*, N* + extra].
  bool stable(const Configuration& x, const Configuration& xp, int extra = 5) const;

 private:
  struct Direction {
    Elem step;
    Elem stepInv;
    Word spelling;
    std::vector<Elem> window;  // sites read by c(step, .)
    int windowLen = 0;
  };

  Direction makeDirection(const Elem& step) const;
  std::int64_t stabilization(const Direction& d, const std::vector<Elem>& diff) const;
  HElem powerValue(const Direction& d, std::int64_t n, const Configuration& x) const;
  Value limit(const Direction& d, const Configuration& x, const Configuration& xp) const;

  const LocalCocycle* c_;
  Direction dirs_[2];
};

struct TestOutcome {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::optional<ObstructionCertificate> certificate;  // least failing pair

  bool passed() const { return mismatches == 0; }
};

TestOutcome plusMinusTest(const LocalCocycle& c, const Elem& g, const std::vector<HomoclinicPair>& pairs,
                          Exec exec = defaultExec());
TestOutcome crossDirectionTest(const LocalCocycle& c, const Elem& g, const Elem& h,
                               const std::vector<HomoclinicPair>& pairs, Exec exec = defaultExec());

struct TransportResult {
  std::size_t steps = 0;
  std::size_t mismatches = 0;
  HElem alongX;  // c(path, start x)
  HElem alongY;
};

/// Walks q_0 = start, q_i = s_i q_{i-1} and compares c(s_i, q_{i-1} x) with
/// c(s_i, q_{i-1} y). Every q_i must stay far enough from the difference set
/// for the windows to miss it.
TransportResult pathTransport(const LocalCocycle& c, const Word& path, const Elem& start, const Configuration& x,
                              const Configuration& y);

/// Compares c(s, .) across the admissible constant configurations, which are
/// fixed by the whole group.
std::optional<ObstructionCertificate> fixedPointObstruction(const LocalCocycle& c);

/// True iff re-evaluating the certificate reproduces the recorded inequality.
bool replay(const LocalCocycle& c, const ObstructionCertificate& cert);

}  // namespace cocycle
