#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilgeo/error.hpp"
#include "nilgeo/words.hpp"

namespace nilgeo {

// Limits that keep enumeration at desk scale.
inline constexpr int kMaxBasisClass = 8;
inline constexpr long long kMaxBasisSize = 10000;

// Nested commutator tree. Leaves are generators; an internal node [u,v]
// stands for the group commutator u v u^-1 v^-1. Immutable and cheap to copy.
class BasisElement {
 public:
  static BasisElement leaf(int gen) { return BasisElement(std::make_shared<Node>(Node{gen, {}, {}, 1})); }

  static BasisElement bracket(const BasisElement& left, const BasisElement& right) {
    return BasisElement(std::make_shared<Node>(Node{-1, left.node_, right.node_, left.weight() + right.weight()}));
  }

  // [x1,x2,...,xn] = [[...[x1,x2],...],xn]
  static BasisElement left_normed(std::span<const int> gens) {
    if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "empty commutator");
    BasisElement out = leaf(gens[0]);
    for (std::size_t i = 1; i < gens.size(); ++i) out = bracket(out, leaf(gens[i]));
    return out;
  }

  bool is_leaf() const noexcept { return node_->gen >= 0; }
  int generator() const noexcept { return node_->gen; }
  int weight() const noexcept { return node_->weight; }
  BasisElement left() const { return BasisElement(node_->left); }
  BasisElement right() const { return BasisElement(node_->right); }

  friend bool operator==(const BasisElement& a, const BasisElement& b) { return equal(a.node_.get(), b.node_.get()); }

 private:
  struct Node {
    int gen;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    int weight;
  };

  explicit BasisElement(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->gen != b->gen || a->weight != b->weight) return false;
    if (a->gen >= 0) return true;
    return equal(a->left.get(), b->left.get()) && equal(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> node_;
};

inline std::string render(const BasisElement& e) {
  if (e.is_leaf()) return std::string(1, static_cast<char>('a' + e.generator()));
  return "[" + render(e.left()) + "," + render(e.right()) + "]";
}

namespace detail {

inline BasisElement parse_element(std::string_view text, std::size_t& pos, const Alphabet& alphabet) {
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size()) throw Error(ErrorKind::InvalidArgument, "unexpected end of commutator");
  const char ch = text[pos];
  if (ch == '[') {
    ++pos;
    BasisElement acc = parse_element(text, pos, alphabet);
    int parts = 1;
    for (;;) {
      skip();
      if (pos >= text.size()) throw Error(ErrorKind::InvalidArgument, "unterminated '['");
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      if (text[pos] != ',') throw Error(ErrorKind::InvalidArgument, "expected ',' or ']' in commutator");
      ++pos;
      acc = BasisElement::bracket(acc, parse_element(text, pos, alphabet));
      ++parts;
    }
    if (parts < 2) throw Error(ErrorKind::InvalidArgument, "commutator needs at least two entries");
    return acc;
  }
  if (ch >= 'a' && ch <= 'z') {
    const int gen = ch - 'a';
    if (!alphabet.contains(gen)) throw Error(ErrorKind::UnknownGenerator, std::string("generator '") + ch + "'");
    ++pos;
    return BasisElement::leaf(gen);
  }
  throw Error(ErrorKind::InvalidArgument, std::string("unexpected character '") + ch + "' in commutator");
}

}  // namespace detail

// Accepts the rendered form "[[b,a],a]"; "[x,y,z]" is read left-normed.
inline BasisElement parse_basis_element(std::string_view text, const Alphabet& alphabet) {
  std::size_t pos = 0;
  BasisElement e = detail::parse_element(text, pos, alphabet);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw Error(ErrorKind::InvalidArgument, "trailing characters after commutator");
  return e;
}

// ---------------------------------------------------------------------------
// Counting

inline int mobius(long long n) {
  int result = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

inline long long int_pow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out = detail::checked_mul(out, base);
  return out;
}

// Necklace polynomial: rank of the weight-k layer of the free Lie ring.
inline long long witt_delta(int r, int k) {
  if (r < 1 || k < 1) throw Error(ErrorKind::InvalidArgument, "witt_delta needs r >= 1 and k >= 1");
  long long sum = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    const int mu = mobius(d);
    if (mu != 0) sum = detail::checked_add(sum, mu * int_pow(r, k / d));
  }
  return sum / k;
}

inline long long c_sum(int r, int k) {
  long long total = 0;
  for (int j = 1; j <= k; ++j) total = detail::checked_add(total, witt_delta(r, j));
  return total;
}

// c(r,k) = (r+1) c(r,k-1) - r c(r,k-2), seeded with c(r,1) = r and
// c(r,2) = r(r+1)/2. The r = 2 seed is 3; the literature value 1 for
// c(2,2) contradicts the closed form 2^(k-1)+1 it is meant to produce.
inline long long paper_c_recursion(int r, int k) {
  if (r < 2 || k < 1) throw Error(ErrorKind::InvalidArgument, "paper_c_recursion needs r >= 2 and k >= 1");
  const long long c1 = r;
  const long long c2 = static_cast<long long>(r) * (r + 1) / 2;
  if (k == 1) return c1;
  long long prev = c1, cur = c2;
  for (int j = 3; j <= k; ++j) {
    const long long next =
        detail::checked_add(detail::checked_mul(r + 1, cur), -detail::checked_mul(r, prev));
    prev = cur;
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Hall basis

// Basic commutators of weight <= k, ordered weight-first, then by
// (left index, right index) within a weight. The index of an element in
// elements() is its position in the Mal'cev order.
class HallBasis {
 public:
  int rank() const noexcept { return rank_; }
  int cls() const noexcept { return class_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<BasisElement>& elements() const noexcept { return elements_; }
  const BasisElement& operator[](std::size_t i) const { return elements_[i]; }

  int weight_of(std::size_t i) const { return elements_[i].weight(); }

  // Half-open index range of the weight-j stratum.
  std::pair<std::size_t, std::size_t> stratum(int j) const {
    if (j < 1 || j > class_) throw Error(ErrorKind::InvalidArgument, "weight outside basis class");
    return {offsets_[static_cast<std::size_t>(j - 1)], offsets_[static_cast<std::size_t>(j)]};
  }
  std::size_t stratum_size(int j) const {
    auto [b, e] = stratum(j);
    return e - b;
  }
  // Number of elements of weight <= j, i.e. the length of class-j coordinates.
  std::size_t prefix_size(int j) const { return offsets_[static_cast<std::size_t>(j)]; }

  // Children of an internal element, as indices into this basis.
  std::pair<std::size_t, std::size_t> children(std::size_t i) const { return children_[i]; }

  std::optional<std::size_t> index_of(const BasisElement& e) const {
    auto it = index_.find(render(e));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  static HallBasis build(int r, int k) {
    if (r < 1 || r > kMaxRank || k < 1) throw Error(ErrorKind::InvalidArgument, "hall_basis needs 1 <= r <= 26, k >= 1");
    if (k > kMaxBasisClass) throw Error(ErrorKind::ScaleLimitExceeded, "class above 8");
    if (c_sum(r, k) > kMaxBasisSize) throw Error(ErrorKind::ScaleLimitExceeded, "basis larger than 10000 elements");

    HallBasis hb;
    hb.rank_ = r;
    hb.class_ = k;
    hb.offsets_.push_back(0);
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    for (int g = 0; g < r; ++g) {
      hb.elements_.push_back(BasisElement::leaf(g));
      hb.children_.emplace_back(kNone, kNone);
    }
    hb.offsets_.push_back(hb.elements_.size());

    for (int j = 2; j <= k; ++j) {
      const std::size_t known = hb.elements_.size();
      for (std::size_t li = 0; li < known; ++li) {
        const int lw = hb.elements_[li].weight();
        const int rw = j - lw;
        if (rw < 1) continue;
        auto [rb, re] = std::pair{hb.offsets_[static_cast<std::size_t>(rw - 1)], hb.offsets_[static_cast<std::size_t>(rw)]};
        for (std::size_t ri = rb; ri < re && ri < li; ++ri) {
          const auto [x, y] = hb.children_[li];
          if (x != kNone && y > ri) continue;
          hb.elements_.push_back(BasisElement::bracket(hb.elements_[li], hb.elements_[ri]));
          hb.children_.emplace_back(li, ri);
        }
      }
      hb.offsets_.push_back(hb.elements_.size());
    }
    for (std::size_t i = 0; i < hb.elements_.size(); ++i) hb.index_.emplace(render(hb.elements_[i]), i);
    return hb;
  }

 private:
  int rank_ = 0;
  int class_ = 0;
  std::vector<BasisElement> elements_;
  std::vector<std::pair<std::size_t, std::size_t>> children_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Shared, memoized. Safe to call from several threads.
inline std::shared_ptr<const HallBasis> hall_basis(int r, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const HallBasis>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({r, k}); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const HallBasis>(HallBasis::build(r, k));
  std::lock_guard lock(mutex);
  return cache.emplace(std::pair{r, k}, std::move(built)).first->second;
}

// ---------------------------------------------------------------------------
// Words and decompositions

inline Word commutator_word(const BasisElement& e) {
  if (e.is_leaf()) return Word({Letter{e.generator(), 1}});
  const Word u = commutator_word(e.left());
  const Word v = commutator_word(e.right());
  Word out = u;
  out.append(v);
  out.append(invert(u));
  out.append(invert(v));
  return out;
}

struct PlaneSplit {
  BasisElement commutator;  // weight(e) - 1 part
  int generator;            // the bracketed generator
};

// e = [u, s] with s a generator. This fixes the projection plane of e.
inline PlaneSplit left_normed_decompose(const BasisElement& e) {
  if (e.is_leaf()) throw Error(ErrorKind::InvalidArgument, "a generator has no decomposition");
  if (!e.right().is_leaf()) throw Error(ErrorKind::NotLeftNormed, render(e) + " has a non-generator right factor");
  return {e.left(), e.right().generator()};
}

// Largest class k such that every basic commutator of weight 2..k splits
// as [u, s]. The geometric solver works exactly up to this class.
inline int max_left_normed_class(int r) {
  int k = 1;
  for (int j = 2; j <= kMaxBasisClass; ++j) {
    std::shared_ptr<const HallBasis> hb;
    try {
      hb = hall_basis(r, j);
    } catch (const Error&) {
      break;
    }
    auto [b, e] = hb->stratum(j);
    for (std::size_t i = b; i < e; ++i)
      if (!(*hb)[i].right().is_leaf()) return k;
    k = j;
  }
  return k;
}

// Class-(k+1) commutator words [s_i1,...,s_i(k+1)] over every index tuple.
inline std::vector<Word> relators(int r, int k) {
  if (r < 1 || k < 1) throw Error(ErrorKind::InvalidArgument, "relators needs r >= 1 and k >= 1");
  const int len = k + 1;
  if (len > kMaxBasisClass) throw Error(ErrorKind::ScaleLimitExceeded, "relator weight above 8");
  const long long count = int_pow(r, len);
  if (count > kMaxBasisSize) throw Error(ErrorKind::ScaleLimitExceeded, "more than 10000 relators");

  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> tuple(static_cast<std::size_t>(len), 0);
  for (long long n = 0; n < count; ++n) {
    long long m = n;
    for (int pos = len - 1; pos >= 0; --pos) {
      tuple[static_cast<std::size_t>(pos)] = static_cast<int>(m % r);
      m /= r;
    }
    out.push_back(commutator_word(BasisElement::left_normed(tuple)));
  }
  return out;
}

// Graph of commutators grown by the incremental rule: generators, the
// r(r-1)/2 weight-two commutators, then every new vertex of weight j is
// extended on the left by each generator. Returns the vertex count.
struct CommutatorGraph {
  std::vector<std::vector<int>> vertices;  // tuples (s_1, ..., s_j)
  std::size_t edges = 0;
};

inline CommutatorGraph commutator_graph(int r, int k) {
  if (r < 1 || k < 1) throw Error(ErrorKind::InvalidArgument, "commutator_graph needs r >= 1 and k >= 1");
  if (k > kMaxBasisClass) throw Error(ErrorKind::ScaleLimitExceeded, "class above 8");
  CommutatorGraph g;
  std::map<std::vector<int>, std::size_t> id;
  auto add = [&](std::vector<int> v) {
    if (g.vertices.size() >= static_cast<std::size_t>(kMaxBasisSize) * 10)
      throw Error(ErrorKind::ScaleLimitExceeded, "commutator graph above 100000 vertices");
    id.emplace(v, g.vertices.size());
    g.vertices.push_back(std::move(v));
  };
  for (int s = 0; s < r; ++s) add({s});
  std::vector<std::size_t> fresh;
  if (k >= 2) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < i; ++j) {
        fresh.push_back(g.vertices.size());
        add({i, j});
      }
  }
  for (int w = 3; w <= k; ++w) {
    std::vector<std::size_t> next;
    for (std::size_t v : fresh)
      for (int s = 0; s < r; ++s) {
        std::vector<int> t{s};
        const auto& tail = g.vertices[v];
        t.insert(t.end(), tail.begin(), tail.end());
        next.push_back(g.vertices.size());
        add(std::move(t));
      }
    fresh = std::move(next);
  }
  // Adjacency: a vertex of weight >= 2 is joined to its first letter and to
  // its tail; extensions are the same edges seen from the other end.
  for (const auto& v : g.vertices) {
    if (v.size() < 2) continue;
    g.edges += 1;
    g.edges += id.contains(std::vector<int>(v.begin() + 1, v.end())) ? 1 : 0;
  }
  return g;
}

inline long long commutator_graph_size(int r, int k) {
  return static_cast<long long>(commutator_graph(r, k).vertices.size());
}

}  // namespace nilgeo
