#include "cocycle/cayley.hpp"

#include "cocycle/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace cocycle {

std::string_view endVerdictName(EndVerdict v) {
  switch (v) {
    case EndVerdict::OneEnd: return "OneEnd";
    case EndVerdict::TwoEnds: return "TwoEnds";
    case EndVerdict::InfinitelyMany: return "InfinitelyMany";
    case EndVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

EndVerdict parseEndVerdict(std::string_view s) {
  for (auto v : {EndVerdict::OneEnd, EndVerdict::TwoEnds, EndVerdict::InfinitelyMany, EndVerdict::Inconclusive}) {
    if (endVerdictName(v) == s) return v;
  }
  throw Error(ErrorCode::ParseError, "unknown end verdict '" + std::string(s) + "'");
}

namespace {

using LengthIndex = std::unordered_map<Elem, int, ElemHash>;

LengthIndex indexBall(const Ball& b) {
  LengthIndex idx;
  idx.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) idx.emplace(b.elements[i], b.lengths[i]);
  return idx;
}

}  // namespace

std::vector<Component> complementComponents(const Group& g, int inner, int outer) {
  if (inner < 0 || inner >= outer) throw Error(ErrorCode::ParameterOutOfRange, "need 0 <= inner < outer");
  auto ball = g.ball(outer);
  std::unordered_map<Elem, std::size_t, ElemHash> pos;
  pos.reserve(ball->size());
  for (std::size_t i = 0; i < ball->size(); ++i) pos.emplace(ball->elements[i], i);

  std::vector<int> comp(ball->size(), -1);
  std::vector<Component> out;
  for (std::size_t start = 0; start < ball->size(); ++start) {
    if (ball->lengths[start] <= inner || comp[start] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> members;
    std::deque<std::size_t> queue{start};
    comp[start] = id;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      members.push_back(u);
      for (Letter l = 0; l < g.generatorCount(); ++l) {
        auto it = pos.find(g.multiply(ball->elements[u], g.generator(l)));
        if (it == pos.end()) continue;
        std::size_t v = it->second;
        if (ball->lengths[v] <= inner || comp[v] >= 0) continue;
        comp[v] = id;
        queue.push_back(v);
      }
    }
    std::sort(members.begin(), members.end());
    Component& c = out.back();
    for (std::size_t m : members) {
      c.elements.push_back(ball->elements[m]);
      if (ball->lengths[m] == outer) c.touchesOuter = true;
    }
  }
  return out;
}

std::vector<std::pair<int, int>> defaultEndSchedule() { return {{1, 5}, {2, 6}, {3, 7}}; }

EndReport estimateEnds(const Group& g, const std::vector<std::pair<int, int>>& schedule) {
  if (schedule.empty()) throw Error(ErrorCode::ParameterOutOfRange, "empty end schedule");
  EndReport report;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    auto [inner, outer] = schedule[i];
    if (i > 0 && (inner <= schedule[i - 1].first || outer <= schedule[i - 1].second)) {
      throw Error(ErrorCode::ParameterOutOfRange, "end schedule must be increasing");
    }
    EndEntry e{inner, outer, 0, 0, {}};
    for (const auto& c : complementComponents(g, inner, outer)) {
      ++e.components;
      if (c.touchesOuter) {
        ++e.touching;
        e.sizes.push_back(c.elements.size());
      }
    }
    report.entries.push_back(std::move(e));
  }
  if (report.entries.size() < 3) return report;
  auto last = report.entries.end() - 3;
  int a = last[0].touching, b = last[1].touching, c = last[2].touching;
  if (a == b && b == c && a == 1) {
    report.verdict = EndVerdict::OneEnd;
  } else if (a == b && b == c && a == 2) {
    report.verdict = EndVerdict::TwoEnds;
  } else if (a > 0 && a < b && b < c) {
    report.verdict = EndVerdict::InfinitelyMany;
  }
  return report;
}

PathResult pathOutsideBall(const Group& g, const Elem& from, const Elem& to, int inner, int outer) {
  auto ball = g.ball(outer);
  LengthIndex len = indexBall(*ball);
  auto inside = [&](const Elem& e) {
    auto it = len.find(e);
    return it != len.end() && it->second > inner;
  };
  if (!inside(from) || !inside(to)) {
    throw Error(ErrorCode::ParameterOutOfRange, "path endpoints must lie in B(outer) \\ B(inner)");
  }

  struct Step {
    Elem parent;
    Letter letter;
  };
  auto explore = [&](const Elem& source, const Elem* target,
                     std::unordered_map<Elem, Step, ElemHash>& seen) {
    bool touches = len.at(source) == outer;
    std::deque<Elem> queue{source};
    seen.emplace(source, Step{source, -1});
    while (!queue.empty()) {
      Elem u = std::move(queue.front());
      queue.pop_front();
      if (target && u == *target) return touches;
      for (Letter l = 0; l < g.generatorCount(); ++l) {
        Elem v = g.multiply(g.generator(l), u);
        if (!inside(v) || seen.contains(v)) continue;
        if (len.at(v) == outer) touches = true;
        seen.emplace(v, Step{u, l});
        queue.push_back(std::move(v));
      }
    }
    return touches;
  };

  PathResult result;
  std::unordered_map<Elem, Step, ElemHash> seen;
  result.fromReachesOuter = explore(from, &to, seen);
  if (seen.contains(to)) {
    result.connected = true;
    for (Elem cur = to; !(cur == from);) {
      const Step& s = seen.at(cur);
      result.word.push_back(s.letter);
      cur = s.parent;
    }
    std::reverse(result.word.begin(), result.word.end());
    result.fromReachesOuter = result.toReachesOuter = false;
    return result;
  }
  std::unordered_map<Elem, Step, ElemHash> other;
  result.toReachesOuter = explore(to, nullptr, other);
  return result;
}

}  // namespace cocycle
