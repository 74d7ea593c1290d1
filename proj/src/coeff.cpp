#include "cocycle/coeff.hpp"

#include "cocycle/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace cocycle {

namespace {

std::int64_t parseInteger(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

std::string cycleName(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == static_cast<int>(i)) continue;
    out += '(';
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      out += std::to_string(j + 1);
      j = static_cast<std::size_t>(perm[j]);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

}  // namespace

CoeffPtr CoeffGroup::cyclic(std::int64_t n) {
  if (n < 1 || n > (std::int64_t{1} << 31)) {
    throw Error(ErrorCode::ParameterOutOfRange, "cyclic order must be in [1, 2^31]");
  }
  auto g = std::shared_ptr<CoeffGroup>(new CoeffGroup());
  g->kind_ = CoeffKind::Cyclic;
  g->n_ = n;
  return g;
}

CoeffPtr CoeffGroup::freeAbelian(int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw Error(ErrorCode::ParameterOutOfRange, "free abelian target rank must be in [1, 4]");
  }
  auto g = std::shared_ptr<CoeffGroup>(new CoeffGroup());
  g->kind_ = CoeffKind::FreeAbelian;
  g->n_ = 0;
  g->rank_ = rank;
  return g;
}

CoeffPtr CoeffGroup::table(std::vector<std::string> names, std::vector<std::vector<int>> mult) {
  const std::size_t n = mult.size();
  if (n == 0 || n > kMaxTable) throw Error(ErrorCode::ParameterOutOfRange, "table size must be in [1, 256]");
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  if (names.size() != n) throw Error(ErrorCode::NotAGroup, "names and table size differ");
  for (const auto& row : mult) {
    if (row.size() != n) throw Error(ErrorCode::NotAGroup, "table is not square");
    for (int v : row) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw Error(ErrorCode::NotAGroup, "entry out of range");
    }
  }
  auto at = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(mult[a][b]); };
  // Index 0 is the identity by convention.
  for (std::size_t a = 0; a < n; ++a) {
    if (at(0, a) != a || at(a, 0) != a) {
      throw Error(ErrorCode::NotAGroup, "element " + names[0] + " is not an identity (witness " + names[a] + ")");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t ab = at(a, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (at(ab, c) != at(a, at(b, c))) {
          throw Error(ErrorCode::NotAGroup, "associativity fails on (" + names[a] + ", " + names[b] + ", " +
                                                names[c] + ")");
        }
      }
    }
  }
  std::vector<int> inv(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (at(a, b) == 0 && at(b, a) == 0) inv[a] = static_cast<int>(b);
    }
    if (inv[a] < 0) throw Error(ErrorCode::NotAGroup, "no inverse for " + names[a]);
  }
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::NotAGroup, "duplicate element names");
    }
  }
  auto g = std::shared_ptr<CoeffGroup>(new CoeffGroup());
  g->kind_ = CoeffKind::Table;
  g->n_ = static_cast<std::int64_t>(n);
  g->names_ = std::move(names);
  g->mult_ = std::move(mult);
  g->inv_ = std::move(inv);
  for (std::size_t a = 0; a < n && g->abelian_; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g->mult_[a][b] != g->mult_[b][a]) {
        g->abelian_ = false;
        break;
      }
    }
  }
  return g;
}

CoeffPtr CoeffGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw Error(ErrorCode::ParameterOutOfRange, "symmetric degree must be in [1, 5]");
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(cycleName(q));
  std::vector<std::vector<int>> mult(perms.size(), std::vector<int>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> comp(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        comp[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
      }
      auto it = std::lower_bound(perms.begin(), perms.end(), comp);
      mult[a][b] = static_cast<int>(it - perms.begin());
    }
  }
  return table(std::move(names), std::move(mult));
}

std::size_t CoeffGroup::order() const {
  return kind_ == CoeffKind::FreeAbelian ? 0 : static_cast<std::size_t>(n_);
}

HElem CoeffGroup::multiply(const HElem& a, const HElem& b) const {
  HElem r;
  switch (kind_) {
    case CoeffKind::Cyclic: r.v[0] = (a.v[0] + b.v[0]) % n_; break;
    case CoeffKind::Table:
      r.v[0] = mult_[static_cast<std::size_t>(a.v[0])][static_cast<std::size_t>(b.v[0])];
      break;
    case CoeffKind::FreeAbelian:
      for (int i = 0; i < rank_; ++i) r.v[static_cast<std::size_t>(i)] = a.v[static_cast<std::size_t>(i)] + b.v[static_cast<std::size_t>(i)];
      break;
  }
  return r;
}

HElem CoeffGroup::inverse(const HElem& a) const {
  HElem r;
  switch (kind_) {
    case CoeffKind::Cyclic: r.v[0] = a.v[0] == 0 ? 0 : n_ - a.v[0]; break;
    case CoeffKind::Table: r.v[0] = inv_[static_cast<std::size_t>(a.v[0])]; break;
    case CoeffKind::FreeAbelian:
      for (int i = 0; i < rank_; ++i) r.v[static_cast<std::size_t>(i)] = -a.v[static_cast<std::size_t>(i)];
      break;
  }
  return r;
}

HElem CoeffGroup::power(const HElem& a, std::int64_t k) const {
  HElem base = k < 0 ? inverse(a) : a;
  std::uint64_t m = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  HElem r = identity();
  while (m > 0) {
    if (m & 1u) r = multiply(r, base);
    m >>= 1u;
    if (m > 0) base = multiply(base, base);
  }
  return r;
}

bool CoeffGroup::conjugate(const HElem& a, const HElem& b) const {
  if (abelian_) return a == b;
  for (std::size_t g = 0; g < static_cast<std::size_t>(n_); ++g) {
    HElem h = fromIndex(g);
    if (multiply(multiply(h, a), inverse(h)) == b) return true;
  }
  return false;
}

std::vector<HElem> CoeffGroup::elements() const {
  if (kind_ == CoeffKind::FreeAbelian) throw Error(ErrorCode::ParameterOutOfRange, "infinite coefficient group");
  std::vector<HElem> out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i) out.push_back(fromIndex(i));
  return out;
}

HElem CoeffGroup::fromIndex(std::size_t i) const {
  HElem h;
  h.v[0] = static_cast<std::int64_t>(i);
  return h;
}

std::size_t CoeffGroup::index(const HElem& a) const { return static_cast<std::size_t>(a.v[0]); }

std::string CoeffGroup::format(const HElem& a) const {
  switch (kind_) {
    case CoeffKind::Cyclic: return std::to_string(a.v[0]);
    case CoeffKind::Table: return names_[static_cast<std::size_t>(a.v[0])];
    case CoeffKind::FreeAbelian: {
      std::ostringstream os;
      os << '(';
      for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << a.v[static_cast<std::size_t>(i)];
      os << ')';
      return os.str();
    }
  }
  return {};
}

HElem CoeffGroup::parse(std::string_view text) const {
  HElem h;
  switch (kind_) {
    case CoeffKind::Cyclic: {
      std::int64_t v = parseInteger(text) % n_;
      h.v[0] = v < 0 ? v + n_ : v;
      return h;
    }
    case CoeffKind::Table: {
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == text) return fromIndex(i);
      }
      throw Error(ErrorCode::ParseError, "unknown coefficient '" + std::string(text) + "'");
    }
    case CoeffKind::FreeAbelian: {
      std::string_view s = text;
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw Error(ErrorCode::ParseError, "unbalanced '" + std::string(text) + "'");
        s = s.substr(1, s.size() - 2);
      }
      int i = 0;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = s.find(',', start);
        if (i >= rank_) throw Error(ErrorCode::ParseError, "too many coordinates in '" + std::string(text) + "'");
        h.v[static_cast<std::size_t>(i++)] =
            parseInteger(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (i != rank_) throw Error(ErrorCode::ParseError, "expected " + std::to_string(rank_) + " coordinates");
      return h;
    }
  }
  return h;
}

}  // namespace cocycle
