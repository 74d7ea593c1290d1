#include "cocycle/group.hpp"

#include "cocycle/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cocycle {

std::string_view familyName(Family f) {
  switch (f) {
    case Family::FreeAbelian: return "free_abelian";
    case Family::Free: return "free";
    case Family::FreeProductCyclic: return "free_product_cyclic";
    case Family::Heisenberg: return "heisenberg";
  }
  return "unknown";
}

namespace {

constexpr int kMaxRank = 8;
constexpr int kMaxOrder = 64;

std::string freeLetterName(int i, int rank) {
  if (rank <= 4) return std::string(1, static_cast<char>('a' + i));
  return "a" + std::to_string(i + 1);
}

Word freeReduce(const Word& w) {
  Word out;
  for (Letter l : w) {
    if (!out.empty() && out.back() == Group::inverseLetter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parseInt(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::int64_t> parseTuple(std::string_view text) {
  std::string cleaned;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) cleaned.push_back(ch);
  }
  std::string_view s = cleaned;
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw Error(ErrorCode::ParseError, "unbalanced tuple '" + cleaned + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::int64_t> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.push_back(parseInt(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::int32_t checkedInt(std::int64_t v) {
  if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min()) {
    throw Error(ErrorCode::ParameterOutOfRange, "coordinate overflow");
  }
  return static_cast<std::int32_t>(v);
}

// Least n with floor(n^2 / 4) >= c: the shortest word whose x- and y-letter
// counts can produce a central coordinate of size c.
std::int64_t centralLowerBound(std::int64_t c) {
  if (c <= 0) return 0;
  std::int64_t n = static_cast<std::int64_t>(2.0 * std::sqrt(static_cast<double>(c)));
  if (n > 2) n -= 2;
  while ((n * n) / 4 < c) ++n;
  return n;
}

}  // namespace

Group::Group(GroupSpec spec, Options options) : spec_(std::move(spec)), options_(options) {
  switch (spec_.family) {
    case Family::FreeAbelian: {
      if (spec_.rank < 1 || spec_.rank > kMaxRank) {
        throw Error(ErrorCode::ParameterOutOfRange, "free abelian rank must be in [1, 8]");
      }
      for (int i = 0; i < spec_.rank; ++i) {
        Elem e;
        e.data.assign(static_cast<std::size_t>(spec_.rank), 0);
        e.data[static_cast<std::size_t>(i)] = 1;
        Elem inv = e;
        inv.data[static_cast<std::size_t>(i)] = -1;
        generators_.push_back(e);
        generators_.push_back(inv);
        names_.push_back("e" + std::to_string(i + 1));
        names_.push_back("e" + std::to_string(i + 1) + "^-1");
      }
      break;
    }
    case Family::Free: {
      if (spec_.rank < 1 || spec_.rank > kMaxRank) {
        throw Error(ErrorCode::ParameterOutOfRange, "free rank must be in [1, 8]");
      }
      for (int i = 0; i < spec_.rank; ++i) {
        generators_.push_back(Elem{i + 1});
        generators_.push_back(Elem{-(i + 1)});
        names_.push_back(freeLetterName(i, spec_.rank));
        names_.push_back(freeLetterName(i, spec_.rank) + "^-1");
      }
      break;
    }
    case Family::FreeProductCyclic: {
      if (spec_.orders.size() < 2 || spec_.orders.size() > static_cast<std::size_t>(kMaxRank)) {
        throw Error(ErrorCode::ParameterOutOfRange, "free product needs 2..8 cyclic factors");
      }
      spec_.rank = static_cast<int>(spec_.orders.size());
      for (std::size_t i = 0; i < spec_.orders.size(); ++i) {
        int n = spec_.orders[i];
        if (n < 2 || n > kMaxOrder) {
          throw Error(ErrorCode::ParameterOutOfRange, "cyclic factor order must be in [2, 64]");
        }
        auto f = static_cast<std::int32_t>(i);
        generators_.push_back(Elem{f, 1});
        generators_.push_back(Elem{f, n - 1});
        names_.push_back("s" + std::to_string(i + 1));
        names_.push_back("s" + std::to_string(i + 1) + "^-1");
      }
      break;
    }
    case Family::Heisenberg: {
      spec_.rank = 2;
      generators_ = {Elem{1, 0, 0}, Elem{-1, 0, 0}, Elem{0, 1, 0}, Elem{0, -1, 0}};
      names_ = {"x", "x^-1", "y", "y^-1"};
      break;
    }
  }
  Elem e = identity();
  spheres_.push_back({e});
  nodes_.emplace(e, Node{0, -1});
  visited_ = 1;
}

Letter Group::letterByName(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Letter>(i);
  }
  throw Error(ErrorCode::ParseError, "unknown generator '" + std::string(name) + "'");
}

Elem Group::identity() const {
  Elem e;
  if (spec_.family == Family::FreeAbelian) e.data.assign(static_cast<std::size_t>(spec_.rank), 0);
  if (spec_.family == Family::Heisenberg) e.data.assign(3, 0);
  return e;
}

Elem Group::multiply(const Elem& a, const Elem& b) const {
  switch (spec_.family) {
    case Family::FreeAbelian: {
      Elem r = a;
      for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
      return r;
    }
    case Family::Free: {
      Elem r = a;
      for (std::int32_t l : b.data) {
        if (!r.data.empty() && r.data.back() == -l) {
          r.data.pop_back();
        } else {
          r.data.push_back(l);
        }
      }
      return r;
    }
    case Family::FreeProductCyclic: {
      Elem r = a;
      for (std::size_t i = 0; i < b.data.size(); i += 2) {
        std::int32_t f = b.data[i];
        std::int32_t e = b.data[i + 1];
        std::size_t n = r.data.size();
        if (n >= 2 && r.data[n - 2] == f) {
          std::int32_t order = spec_.orders[static_cast<std::size_t>(f)];
          std::int32_t merged = (r.data[n - 1] + e) % order;
          if (merged == 0) {
            r.data.resize(n - 2);
          } else {
            r.data[n - 1] = merged;
          }
        } else {
          r.data.push_back(f);
          r.data.push_back(e);
        }
      }
      return r;
    }
    case Family::Heisenberg: {
      std::int64_t c = static_cast<std::int64_t>(a.data[2]) + b.data[2] -
                       static_cast<std::int64_t>(a.data[1]) * b.data[0];
      return Elem{a.data[0] + b.data[0], a.data[1] + b.data[1], checkedInt(c)};
    }
  }
  return {};
}

Elem Group::inverse(const Elem& a) const {
  switch (spec_.family) {
    case Family::FreeAbelian: {
      Elem r = a;
      for (auto& v : r.data) v = -v;
      return r;
    }
    case Family::Free: {
      Elem r;
      for (auto it = a.data.rbegin(); it != a.data.rend(); ++it) r.data.push_back(-*it);
      return r;
    }
    case Family::FreeProductCyclic: {
      Elem r;
      for (std::size_t i = a.data.size(); i >= 2; i -= 2) {
        std::int32_t f = a.data[i - 2];
        r.data.push_back(f);
        r.data.push_back(spec_.orders[static_cast<std::size_t>(f)] - a.data[i - 1]);
      }
      return r;
    }
    case Family::Heisenberg: {
      std::int64_t c = -static_cast<std::int64_t>(a.data[2]) -
                       static_cast<std::int64_t>(a.data[0]) * a.data[1];
      return Elem{-a.data[0], -a.data[1], checkedInt(c)};
    }
  }
  return {};
}

Elem Group::power(const Elem& a, std::int64_t k) const {
  Elem base = k < 0 ? inverse(a) : a;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Elem result = identity();
  while (n > 0) {
    if (n & 1u) result = multiply(result, base);
    n >>= 1u;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

Elem Group::evaluate(const Word& w) const {
  Elem r = identity();
  for (Letter l : w) r = multiply(r, generator(l));
  return r;
}

bool Group::isValid(const Elem& a) const {
  switch (spec_.family) {
    case Family::FreeAbelian: return a.data.size() == static_cast<std::size_t>(spec_.rank);
    case Family::Free: {
      for (std::size_t i = 0; i < a.data.size(); ++i) {
        std::int32_t l = a.data[i];
        if (l == 0 || std::abs(l) > spec_.rank) return false;
        if (i > 0 && a.data[i - 1] == -l) return false;
      }
      return true;
    }
    case Family::FreeProductCyclic: {
      if (a.data.size() % 2 != 0) return false;
      for (std::size_t i = 0; i < a.data.size(); i += 2) {
        std::int32_t f = a.data[i];
        if (f < 0 || f >= spec_.rank) return false;
        std::int32_t e = a.data[i + 1];
        if (e <= 0 || e >= spec_.orders[static_cast<std::size_t>(f)]) return false;
        if (i > 0 && a.data[i - 2] == f) return false;
      }
      return true;
    }
    case Family::Heisenberg: return a.data.size() == 3;
  }
  return false;
}

int Group::wordLength(const Elem& a) const {
  switch (spec_.family) {
    case Family::FreeAbelian: {
      std::int64_t s = 0;
      for (auto v : a.data) s += std::abs(static_cast<std::int64_t>(v));
      return static_cast<int>(s);
    }
    case Family::Free: return static_cast<int>(a.data.size());
    case Family::FreeProductCyclic: {
      int s = 0;
      for (std::size_t i = 0; i < a.data.size(); i += 2) {
        int n = spec_.orders[static_cast<std::size_t>(a.data[i])];
        int e = a.data[i + 1];
        s += std::min(e, n - e);
      }
      return s;
    }
    case Family::Heisenberg: return heisenbergLength(a);
  }
  return 0;
}

int Group::lengthLowerBound(const Elem& a) const {
  if (spec_.family != Family::Heisenberg) return wordLength(a);
  std::int64_t ax = std::abs(static_cast<std::int64_t>(a.data[0]));
  std::int64_t by = std::abs(static_cast<std::int64_t>(a.data[1]));
  std::int64_t c = std::abs(static_cast<std::int64_t>(a.data[2]));
  if (c == 0) return static_cast<int>(ax + by);
  // nx, ny letter counts with nx = a mod 2, ny = b mod 2 and |c| <= nx * ny.
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t nx = ax; nx < best; nx += 2) {
    if (nx == 0) continue;
    std::int64_t ny = std::max(by, (c + nx - 1) / nx);
    if ((ny - by) % 2 != 0) ++ny;
    best = std::min(best, nx + ny);
  }
  return static_cast<int>(best);
}

void Group::ensureRadius(int r) const {
  while (static_cast<int>(spheres_.size()) <= r) {
    const auto& last = spheres_.back();
    int dist = static_cast<int>(spheres_.size());
    struct Candidate {
      Elem elem;
      std::size_t order;
      Letter letter;
    };
    std::vector<Candidate> found;
    std::size_t order = 0;
    for (const Elem& u : last) {
      for (Letter l = 0; l < generatorCount(); ++l) {
        Elem v = multiply(u, generators_[static_cast<std::size_t>(l)]);
        if (!nodes_.contains(v)) found.push_back({std::move(v), order, l});
        ++order;
      }
    }
    std::sort(found.begin(), found.end(), [](const Candidate& x, const Candidate& y) {
      return std::tie(x.elem, x.order) < std::tie(y.elem, y.order);
    });
    found.erase(std::unique(found.begin(), found.end(),
                            [](const Candidate& x, const Candidate& y) { return x.elem == y.elem; }),
                found.end());
    if (visited_ + found.size() > options_.ballCap) {
      throw Error(ErrorCode::BallTooLarge, "ball of radius " + std::to_string(dist) +
                                               " exceeds the element cap of " +
                                               std::to_string(options_.ballCap));
    }
    std::vector<Elem> sphere;
    sphere.reserve(found.size());
    for (auto& c : found) {
      nodes_.emplace(c.elem, Node{dist, c.letter});
      sphere.push_back(std::move(c.elem));
    }
    visited_ += sphere.size();
    spheres_.push_back(std::move(sphere));
  }
}

int Group::heisenbergLength(const Elem& a) const {
  {
    std::shared_lock lock(cacheMutex_);
    auto it = nodes_.find(a);
    if (it != nodes_.end()) return it->second.dist;
  }
  std::unique_lock lock(cacheMutex_);
  int r = std::max(lengthLowerBound(a), static_cast<int>(spheres_.size()) - 1);
  while (true) {
    try {
      ensureRadius(r);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::BallTooLarge) throw;
      throw Error(ErrorCode::RadiusBudgetExceeded,
                  "word length of " + format(a) + " lies beyond the BFS cap");
    }
    auto it = nodes_.find(a);
    if (it != nodes_.end()) return it->second.dist;
    ++r;
  }
}

bool Group::withinRadius(const Elem& a, int r) const {
  if (r < 0) return false;
  if (spec_.family != Family::Heisenberg) return wordLength(a) <= r;
  if (lengthLowerBound(a) > r) return false;
  {
    std::shared_lock lock(cacheMutex_);
    auto it = nodes_.find(a);
    if (it != nodes_.end()) return it->second.dist <= r;
    if (static_cast<int>(spheres_.size()) > r) return false;
  }
  std::unique_lock lock(cacheMutex_);
  ensureRadius(r);
  auto it = nodes_.find(a);
  return it != nodes_.end() && it->second.dist <= r;
}

Word Group::spell(const Elem& a) const {
  Word w;
  switch (spec_.family) {
    case Family::FreeAbelian:
      for (std::size_t i = 0; i < a.data.size(); ++i) {
        std::int32_t v = a.data[i];
        Letter l = static_cast<Letter>(2 * i) + (v < 0 ? 1 : 0);
        for (std::int32_t k = 0; k < std::abs(v); ++k) w.push_back(l);
      }
      return w;
    case Family::Free:
      for (std::int32_t l : a.data) w.push_back(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0));
      return w;
    case Family::FreeProductCyclic:
      for (std::size_t i = 0; i < a.data.size(); i += 2) {
        int f = a.data[i];
        int n = spec_.orders[static_cast<std::size_t>(f)];
        int e = a.data[i + 1];
        if (e <= n - e) {
          w.insert(w.end(), static_cast<std::size_t>(e), 2 * f);
        } else {
          w.insert(w.end(), static_cast<std::size_t>(n - e), 2 * f + 1);
        }
      }
      return w;
    case Family::Heisenberg: {
      heisenbergLength(a);
      std::shared_lock lock(cacheMutex_);
      Elem cur = a;
      while (true) {
        const Node& node = nodes_.at(cur);
        if (node.last < 0) break;
        w.push_back(node.last);
        cur = multiply(cur, inverse(generators_[static_cast<std::size_t>(node.last)]));
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
  }
  return w;
}

std::shared_ptr<const Ball> Group::ball(int r) const {
  if (r < 0) throw Error(ErrorCode::ParameterOutOfRange, "negative radius");
  {
    std::shared_lock lock(cacheMutex_);
    auto it = balls_.find(r);
    if (it != balls_.end()) return it->second;
  }
  std::unique_lock lock(cacheMutex_);
  auto it = balls_.find(r);
  if (it != balls_.end()) return it->second;
  ensureRadius(r);
  auto b = std::make_shared<Ball>();
  b->radius = r;
  for (int d = 0; d <= r; ++d) {
    for (const Elem& e : spheres_[static_cast<std::size_t>(d)]) {
      b->elements.push_back(e);
      b->lengths.push_back(d);
    }
  }
  balls_.emplace(r, b);
  return b;
}

std::vector<Elem> Group::sphere(int r) const {
  if (r < 0) return {};
  ball(r);
  std::shared_lock lock(cacheMutex_);
  return spheres_[static_cast<std::size_t>(r)];
}

std::vector<Word> Group::relators() const {
  std::vector<Word> out;
  switch (spec_.family) {
    case Family::FreeAbelian:
      for (int i = 0; i < spec_.rank; ++i) {
        for (int j = i + 1; j < spec_.rank; ++j) out.push_back({2 * i, 2 * j, 2 * i + 1, 2 * j + 1});
      }
      break;
    case Family::Free: break;
    case Family::FreeProductCyclic:
      for (int i = 0; i < spec_.rank; ++i) {
        out.emplace_back(static_cast<std::size_t>(spec_.orders[static_cast<std::size_t>(i)]), 2 * i);
      }
      break;
    case Family::Heisenberg: {
      const Letter x = 0, xi = 1, y = 2, yi = 3;
      Word comm = {x, y, xi, yi};
      Word commInv = {y, x, yi, xi};
      for (Letter t : {x, y}) {
        Word w = {t};
        w.insert(w.end(), comm.begin(), comm.end());
        w.push_back(inverseLetter(t));
        w.insert(w.end(), commInv.begin(), commInv.end());
        out.push_back(freeReduce(w));
      }
      break;
    }
  }
  return out;
}

std::int64_t Group::cyclicLength(const Elem& a) const {
  if (spec_.family == Family::Free) {
    std::size_t lo = 0, hi = a.data.size();
    while (hi - lo >= 2 && a.data[lo] == -a.data[hi - 1]) {
      ++lo;
      --hi;
    }
    return static_cast<std::int64_t>(hi - lo);
  }
  // FreeProductCyclic: conjugate the last syllable around to the front while
  // the outer syllables share a factor.
  std::vector<std::pair<int, int>> syl;
  for (std::size_t i = 0; i < a.data.size(); i += 2) syl.emplace_back(a.data[i], a.data[i + 1]);
  std::size_t lo = 0, hi = syl.size();
  while (hi - lo >= 2 && syl[lo].first == syl[hi - 1].first) {
    int n = spec_.orders[static_cast<std::size_t>(syl[lo].first)];
    int merged = (syl[lo].second + syl[hi - 1].second) % n;
    --hi;
    if (merged == 0) {
      ++lo;
    } else {
      syl[lo].second = merged;
    }
  }
  std::int64_t len = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    int n = spec_.orders[static_cast<std::size_t>(syl[i].first)];
    len += std::min(syl[i].second, n - syl[i].second);
  }
  return len;
}

TorsionInfo Group::torsion(const Elem& a) const {
  switch (spec_.family) {
    case Family::FreeAbelian:
    case Family::Heisenberg:
    case Family::Free:
      if (a == identity()) return {true, 1};
      return {false, 0};
    case Family::FreeProductCyclic: {
      std::vector<std::pair<int, int>> syl;
      for (std::size_t i = 0; i < a.data.size(); i += 2) syl.emplace_back(a.data[i], a.data[i + 1]);
      std::size_t lo = 0, hi = syl.size();
      while (hi - lo >= 2 && syl[lo].first == syl[hi - 1].first) {
        int n = spec_.orders[static_cast<std::size_t>(syl[lo].first)];
        int merged = (syl[lo].second + syl[hi - 1].second) % n;
        --hi;
        if (merged == 0) {
          ++lo;
        } else {
          syl[lo].second = merged;
        }
      }
      if (hi == lo) return {true, 1};
      if (hi - lo == 1) {
        int n = spec_.orders[static_cast<std::size_t>(syl[lo].first)];
        return {true, n / std::gcd(n, syl[lo].second)};
      }
      return {false, 0};
    }
  }
  return {};
}

std::int64_t Group::powerLengthLowerBound(const Elem& a, std::int64_t k) const {
  if (isTorsion(a)) throw Error(ErrorCode::TorsionElement, format(a) + " has finite order");
  if (k < 0) k = -k;
  switch (spec_.family) {
    case Family::FreeAbelian: return k * wordLength(a);
    case Family::Free:
    case Family::FreeProductCyclic: return k * cyclicLength(a);
    case Family::Heisenberg: {
      std::int64_t planar = std::abs(static_cast<std::int64_t>(a.data[0])) +
                            std::abs(static_cast<std::int64_t>(a.data[1]));
      if (planar > 0) return k * planar;
      return centralLowerBound(k * std::abs(static_cast<std::int64_t>(a.data[2])));
    }
  }
  return 0;
}

std::int64_t Group::escapeIndex(const Elem& a, std::int64_t bound) const {
  std::int64_t k = 0;
  while (powerLengthLowerBound(a, k) <= bound) ++k;
  return k;
}

std::string Group::format(const Elem& a) const {
  std::ostringstream os;
  switch (spec_.family) {
    case Family::FreeAbelian:
    case Family::Heisenberg: {
      os << '(';
      for (std::size_t i = 0; i < a.data.size(); ++i) os << (i ? "," : "") << a.data[i];
      os << ')';
      return os.str();
    }
    case Family::Free: {
      if (a.data.empty()) return "e";
      for (std::size_t i = 0; i < a.data.size(); ++i) {
        std::int32_t l = a.data[i];
        os << (i ? " " : "") << freeLetterName(std::abs(l) - 1, spec_.rank) << (l < 0 ? "^-1" : "");
      }
      return os.str();
    }
    case Family::FreeProductCyclic: {
      if (a.data.empty()) return "e";
      for (std::size_t i = 0; i < a.data.size(); i += 2) {
        os << (i ? " " : "") << 's' << a.data[i] + 1;
        if (a.data[i + 1] != 1) os << '^' << a.data[i + 1];
      }
      return os.str();
    }
  }
  return {};
}

Elem Group::parse(std::string_view text) const {
  switch (spec_.family) {
    case Family::FreeAbelian:
    case Family::Heisenberg: {
      auto values = parseTuple(text);
      std::size_t want = spec_.family == Family::Heisenberg ? 3 : static_cast<std::size_t>(spec_.rank);
      if (values.size() != want) {
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(want) + " coordinates in '" +
                                               std::string(text) + "'");
      }
      Elem e;
      for (auto v : values) e.data.push_back(checkedInt(v));
      return e;
    }
    case Family::Free:
    case Family::FreeProductCyclic: {
      Elem r = identity();
      for (std::string_view tok : tokens(text)) {
        if (tok == "e" || tok == "1") continue;
        std::string_view name = tok;
        std::int64_t exponent = 1;
        if (auto caret = tok.find('^'); caret != std::string_view::npos) {
          name = tok.substr(0, caret);
          exponent = parseInt(tok.substr(caret + 1));
        }
        Letter l = letterByName(name);
        r = multiply(r, power(generator(l), exponent));
      }
      return r;
    }
  }
  return {};
}

std::string Group::formatWord(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generatorName(w[i]);
  }
  return out;
}

Word Group::parseWord(std::string_view text) const {
  Word w;
  for (std::string_view tok : tokens(text)) w.push_back(letterByName(tok));
  return w;
}

}  // namespace cocycle
