#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cocycle {

enum class CoeffKind { Cyclic, Table, FreeAbelian };

/// Element of a coefficient group. Cyclic and table groups use v[0] (residue
/// or table index), free abelian targets use v[0..rank).
struct HElem {
  std::array<std::int64_t, 4> v{};

  friend bool operator==(const HElem&, const HElem&) = default;
  friend auto operator<=>(const HElem&, const HElem&) = default;
};

/// Discrete target group. Cheap to copy around by shared pointer; immutable.
class CoeffGroup {
 public:
  static constexpr std::size_t kMaxTable = 256;
  static constexpr int kMaxRank = 4;

  static std::shared_ptr<const CoeffGroup> cyclic(std::int64_t n);
  static std::shared_ptr<const CoeffGroup> freeAbelian(int rank);
  /// Validates the axioms and throws NotAGroup naming a failing triple.
  static std::shared_ptr<const CoeffGroup> table(std::vector<std::string> names,
                                                 std::vector<std::vector<int>> mult);
  /// Symmetric group on n points with (p*q)(i) = p(q(i)); names in cycle
  /// notation, e.g. "(12)(34)", identity "e".
  static std::shared_ptr<const CoeffGroup> symmetric(int n);

  CoeffKind kind() const { return kind_; }
  /// Number of elements, 0 when infinite.
  std::size_t order() const;
  std::int64_t modulus() const { return n_; }
  int rank() const { return rank_; }
  bool abelian() const { return abelian_; }

  HElem identity() const { return HElem{}; }
  HElem multiply(const HElem& a, const HElem& b) const;
  HElem inverse(const HElem& a) const;
  HElem power(const HElem& a, std::int64_t k) const;

  /// Distance in the discrete metric.
  int distance(const HElem& a, const HElem& b) const { return a == b ? 0 : 1; }
  bool conjugate(const HElem& a, const HElem& b) const;

  /// All elements in index order; finite groups only.
  std::vector<HElem> elements() const;
  HElem fromIndex(std::size_t i) const;
  std::size_t index(const HElem& a) const;

  std::string format(const HElem& a) const;
  HElem parse(std::string_view text) const;

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& tableRows() const { return mult_; }

 private:
  CoeffGroup() = default;

  CoeffKind kind_ = CoeffKind::Cyclic;
  std::int64_t n_ = 1;
  int rank_ = 0;
  bool abelian_ = true;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
};

using CoeffPtr = std::shared_ptr<const CoeffGroup>;

}  // namespace cocycle
