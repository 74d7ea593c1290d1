#pragma once

#include "cocycle/group.hpp"

#include <boost/container/flat_map.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace cocycle {

using Symbol = std::uint8_t;

struct Alphabet {
  static constexpr std::size_t kMaxSymbols = 64;

  std::vector<std::string> symbols;
  Symbol background = 0;

  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> syms, Symbol bg = 0);
  /// {"0", "1", ..., "n-1"}
  static Alphabet numeric(int n);

  std::size_t size() const { return symbols.size(); }
  Symbol index(std::string_view name) const;
  const std::string& name(Symbol s) const { return symbols.at(s); }
};

/// A point of A^G: finitely many sites differ from a constant background.
class Configuration {
 public:
  using Overlay = boost::container::flat_map<Elem, Symbol>;

  Configuration() = default;
  explicit Configuration(Symbol background) : background_(background) {}

  Symbol background() const { return background_; }
  Symbol at(const Elem& g) const {
    auto it = overlay_.find(g);
    return it == overlay_.end() ? background_ : it->second;
  }
  void set(const Elem& g, Symbol s);
  const Overlay& overlay() const { return overlay_; }
  std::vector<Elem> support() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Symbol background_ = 0;
  Overlay overlay_;
};

/// Sites where two configurations differ; both must share a background.
std::vector<Elem> differenceSet(const Configuration& x, const Configuration& y);

Configuration shiftAction(const Group& g, const Elem& by, const Configuration& x);
/// (x_f)_{f in F}, in the order of F.
std::vector<Symbol> restrict(const Configuration& x, const std::vector<Elem>& domain);
/// Configuration equal to `values` on `domain` and the background elsewhere.
Configuration extend(const std::vector<Elem>& domain, const std::vector<Symbol>& values, Symbol background);

/// Base-|A| digits of a pattern, first domain cell least significant.
std::uint64_t patternCode(const std::vector<Symbol>& values, std::size_t alphabetSize);
std::vector<Symbol> decodePattern(std::uint64_t code, std::size_t cells, std::size_t alphabetSize);

enum class SubshiftKind { Full, SFT, GoldenMean };
std::string_view subshiftKindName(SubshiftKind k);

/// Constraints are read on translated windows: the window at site h is h*F.
class Subshift {
 public:
  static Subshift full(Alphabet a);
  static Subshift sft(Alphabet a, std::vector<Elem> window, std::vector<std::vector<Symbol>> allowed);
  /// Every translate of every window must contain the symbol "0".
  static Subshift goldenMean(Alphabet a, std::vector<std::vector<Elem>> windows);

  SubshiftKind kind() const { return kind_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Elem>& window() const { return window_; }
  const std::vector<std::vector<Elem>>& windows() const { return windows_; }
  const std::unordered_set<std::uint64_t>& allowed() const { return allowed_; }
  Symbol zero() const { return zero_; }

  /// Union of all constraint windows (empty for the full shift).
  std::vector<Elem> footprint() const;
  /// Least r0 with every window inside B(r0).
  int windowRadius(const Group& g) const;

  /// Whether the constraint at site h holds for the point read through `at`.
  template <class Lookup>
  bool siteOk(const Group& g, const Elem& h, Lookup&& at) const {
    switch (kind_) {
      case SubshiftKind::Full: return true;
      case SubshiftKind::SFT: {
        std::uint64_t code = 0, scale = 1;
        for (const Elem& f : window_) {
          code += scale * at(g.multiply(h, f));
          scale *= alphabet_.size();
        }
        return allowed_.contains(code);
      }
      case SubshiftKind::GoldenMean:
        for (const auto& w : windows_) {
          bool hit = false;
          for (const Elem& f : w) {
            if (at(g.multiply(h, f)) == zero_) {
              hit = true;
              break;
            }
          }
          if (!hit) return false;
        }
        return true;
    }
    return false;
  }

  bool backgroundAdmissible(Symbol s) const;
  /// Exact membership for finite-overlay configurations.
  bool contains(const Group& g, const Configuration& x) const;
  /// Sites whose windows meet `sites`: sites * footprint^-1.
  std::vector<Elem> affectedSites(const Group& g, const std::vector<Elem>& sites) const;

 private:
  SubshiftKind kind_ = SubshiftKind::Full;
  Alphabet alphabet_;
  std::vector<Elem> window_;
  std::unordered_set<std::uint64_t> allowed_;
  std::vector<std::vector<Elem>> windows_;
  Symbol zero_ = 0;
};

enum class ConeSign { Plus, Minus };

/// Decides g in {a^k : k >= 0} B(r) (Plus) or {a^k : k <= 0} B(r) (Minus).
bool inCone(const Group& g, const Elem& a, int r, ConeSign sign, const Elem& x);

/// Radius N with P+(a,r) and P-(a,r) meeting only inside B(N).
std::int64_t specificationN(const Group& g, const Elem& a, int r);
/// Agreement radius the golden-mean gluing needs.
std::int64_t goldenMeanN(const Group& g, const Subshift& X, const Elem& a, int r);

Configuration witnessFullShift(const Group& g, const Elem& a, int r, const Configuration& x,
                               const Configuration& xp);
Configuration witnessGoldenMean(const Group& g, const Subshift& X, const Elem& a, int r,
                                const Configuration& x, const Configuration& xp);

/// Point of A^(Z^d) invariant under (K Z)^d, stored on [0, K)^d.
struct PeriodicConfiguration {
  int dim = 1;
  int period = 1;
  std::vector<Symbol> cells;  // row-major, first coordinate slowest

  std::size_t offset(const Elem& g) const;
  Symbol at(const Elem& g) const { return cells[offset(g)]; }
  std::vector<Elem> fundamentalDomain() const;
  bool containedIn(const Group& g, const Subshift& X) const;
};

PeriodicConfiguration periodizeZd(const Group& g, const Subshift& X, const Configuration& z,
                                  const std::vector<Elem>& omega, int period);

struct GlueResult {
  bool ok = false;
  std::string reason;  // "TooClose" when the sites are not far enough apart
  Configuration y;
};

/// Places p2 on B(r) and p1 on by*B(r) over a zero background.
GlueResult glueCheck(const Group& g, const Subshift& X, int r, const std::vector<Symbol>& p1,
                     const std::vector<Symbol>& p2, const Elem& by);

/// Bounded uniform draw from a 64-bit engine, independent of the standard
/// library's distribution implementation.
std::uint64_t uniformBelow(std::mt19937_64& rng, std::uint64_t n);

/// Random point of X whose overlay lies in `domain`, filled site by site in
/// domain order; a site keeps its draw only if all windows through it stay
/// admissible.
Configuration randomConfiguration(const Group& g, const Subshift& X, const std::vector<Elem>& domain,
                                  std::mt19937_64& rng, double density = 0.5);

}  // namespace cocycle
