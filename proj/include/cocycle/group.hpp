#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cocycle {

enum class Family { FreeAbelian, Free, FreeProductCyclic, Heisenberg };

std::string_view familyName(Family f);

/// Parameters of one of the supported finitely generated groups.
struct GroupSpec {
  Family family = Family::FreeAbelian;
  int rank = 1;             // d for FreeAbelian, r for Free
  std::vector<int> orders;  // factor orders for FreeProductCyclic

  static GroupSpec freeAbelian(int d) { return {Family::FreeAbelian, d, {}}; }
  static GroupSpec free(int r) { return {Family::Free, r, {}}; }
  static GroupSpec freeProductCyclic(std::vector<int> orders) {
    return {Family::FreeProductCyclic, static_cast<int>(orders.size()), std::move(orders)};
  }
  static GroupSpec heisenberg() { return {Family::Heisenberg, 2, {}}; }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// A group element in family-specific normal form.
///
///  - FreeAbelian: the integer coordinate vector.
///  - Free: reduced word, letter +i / -i for a_i and its inverse (i >= 1).
///  - FreeProductCyclic: flattened syllables (factor, exponent) with exponent
///    in [1, n_factor) and adjacent factors distinct.
///  - Heisenberg: (a, b, c) for x^a y^b z^c, z = [x, y] central.
///
/// Normal forms are unique, so structural equality is group equality and the
/// lexicographic order on `data` is a deterministic total order.
struct Elem {
  boost::container::small_vector<std::int32_t, 6> data;

  Elem() = default;
  Elem(std::initializer_list<std::int32_t> xs) : data(xs) {}

  friend bool operator==(const Elem& a, const Elem& b) { return a.data == b.data; }
  friend std::strong_ordering operator<=>(const Elem& a, const Elem& b) {
    return std::lexicographical_compare_three_way(a.data.begin(), a.data.end(), b.data.begin(),
                                                  b.data.end());
  }
};

struct ElemHash {
  std::size_t operator()(const Elem& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ e.data.size();
    for (std::int32_t v : e.data) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ull +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Index into the canonical symmetric generating list S. Letters come in
/// pairs: 2i is a generator and 2i+1 its inverse.
using Letter = int;
/// A word t_1 t_2 ... t_n over S, read as the product in that order.
using Word = std::vector<Letter>;

/// Closed ball, ordered by (word length, normal form).
struct Ball {
  int radius = 0;
  std::vector<Elem> elements;
  std::vector<int> lengths;

  std::size_t size() const { return elements.size(); }
};

struct TorsionInfo {
  bool torsion = false;
  std::int64_t order = 0;  // 0 when the element has infinite order
};

struct GroupOptions {
  std::size_t ballCap = 1'000'000;
};

class Group {
 public:
  using Options = GroupOptions;

  explicit Group(GroupSpec spec) : Group(std::move(spec), Options{}) {}
  Group(GroupSpec spec, Options options);

  static std::shared_ptr<const Group> make(GroupSpec spec, Options options = {}) {
    return std::make_shared<const Group>(std::move(spec), options);
  }

  const GroupSpec& spec() const { return spec_; }
  const Options& options() const { return options_; }

  int generatorCount() const { return static_cast<int>(generators_.size()); }
  const Elem& generator(Letter l) const { return generators_.at(static_cast<std::size_t>(l)); }
  const std::string& generatorName(Letter l) const { return names_.at(static_cast<std::size_t>(l)); }
  static Letter inverseLetter(Letter l) { return l ^ 1; }
  Letter letterByName(std::string_view name) const;

  Elem identity() const;
  Elem multiply(const Elem& a, const Elem& b) const;
  Elem inverse(const Elem& a) const;
  Elem power(const Elem& a, std::int64_t k) const;
  Elem evaluate(const Word& w) const;
  bool isValid(const Elem& a) const;

  /// Exact word length. Heisenberg lengths come from a memoized BFS and throw
  /// RadiusBudgetExceeded once the BFS would exceed the element cap.
  int wordLength(const Elem& a) const;
  /// Decides wordLength(a) <= r, expanding BFS at most to radius r.
  bool withinRadius(const Elem& a, int r) const;
  /// Cheap certified lower bound on the word length.
  int lengthLowerBound(const Elem& a) const;

  /// A geodesic spelling: evaluate(spell(a)) == a and |spell(a)| == wordLength(a).
  Word spell(const Elem& a) const;

  std::shared_ptr<const Ball> ball(int r) const;
  std::vector<Elem> sphere(int r) const;

  std::vector<Word> relators() const;

  TorsionInfo torsion(const Elem& a) const;
  bool isTorsion(const Elem& a) const { return torsion(a).torsion; }

  /// Stable-length style bound L(k) <= wordLength(a^k), non-decreasing in k
  /// and unbounded. Throws TorsionElement for torsion a.
  std::int64_t powerLengthLowerBound(const Elem& a, std::int64_t k) const;
  /// Least k0 such that wordLength(a^k) > bound for every k >= k0.
  std::int64_t escapeIndex(const Elem& a, std::int64_t bound) const;

  std::string format(const Elem& a) const;
  Elem parse(std::string_view text) const;
  std::string formatWord(const Word& w) const;
  Word parseWord(std::string_view text) const;

 private:
  struct Node {
    int dist;
    Letter last;  // a = parent * generator(last); -1 for the identity
  };

  void ensureRadius(int r) const;  // requires exclusive lock
  int heisenbergLength(const Elem& a) const;
  std::int64_t cyclicLength(const Elem& a) const;

  GroupSpec spec_;
  Options options_;
  std::vector<Elem> generators_;
  std::vector<std::string> names_;

  mutable std::shared_mutex cacheMutex_;
  mutable std::vector<std::vector<Elem>> spheres_;
  mutable std::unordered_map<Elem, Node, ElemHash> nodes_;
  mutable std::size_t visited_ = 0;
  mutable std::map<int, std::shared_ptr<const Ball>> balls_;
};

using GroupPtr = std::shared_ptr<const Group>;

}  // namespace cocycle
