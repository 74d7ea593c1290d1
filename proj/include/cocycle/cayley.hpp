#pragma once

#include "cocycle/group.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cocycle {

struct Component {
  std::vector<Elem> elements;  // sorted by ball order, first = least element
  bool touchesOuter = false;
};

/// Components of the annulus B(outer) \ B(inner) in the Cayley graph.
std::vector<Component> complementComponents(const Group& g, int inner, int outer);

enum class EndVerdict { OneEnd, TwoEnds, InfinitelyMany, Inconclusive };
std::string_view endVerdictName(EndVerdict v);
EndVerdict parseEndVerdict(std::string_view s);

struct EndEntry {
  int inner = 0;
  int outer = 0;
  int components = 0;  // all components of the annulus
  int touching = 0;    // components meeting the outer sphere
  std::vector<std::size_t> sizes;
};

struct EndReport {
  std::vector<EndEntry> entries;
  EndVerdict verdict = EndVerdict::Inconclusive;
};

std::vector<std::pair<int, int>> defaultEndSchedule();
EndReport estimateEnds(const Group& g, const std::vector<std::pair<int, int>>& schedule);

struct PathResult {
  bool connected = false;
  Word word;  // application order: to = word[k-1] ... word[0] * from
  bool fromReachesOuter = false;
  bool toReachesOuter = false;
};

/// Shortest path from `from` to `to` by left multiplication by generators,
/// staying in B(outer) \ B(inner).
PathResult pathOutsideBall(const Group& g, const Elem& from, const Elem& to, int inner, int outer);

}  // namespace cocycle
