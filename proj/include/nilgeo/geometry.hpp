#pragma once

// Geometric word-problem solver for free nilpotent groups.
//
// Coordinates of w in N_{r,k} are obtained from class k-1 data alone: the
// lower block is the class-(k-1) endpoint of w's curve, and every top
// coordinate T_i is the doubled oriented area of the closure of w projected
// onto the plane of K_i = [u, s], divided by the doubled area C_i of K_i's
// own word on that plane.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilgeo/basis.hpp"
#include "nilgeo/coords.hpp"
#include "nilgeo/error.hpp"
#include "nilgeo/words.hpp"

namespace nilgeo {

struct Point2 {
  long long x = 0;  // generator axis
  long long y = 0;  // commutator axis
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct PlanarLoop {
  std::vector<Point2> points;
  bool closed() const noexcept { return !points.empty() && points.front() == points.back(); }
};

// Twice the oriented area; exact even when the area is a half-integer.
struct AreaValue {
  long long doubled = 0;
  double area() const noexcept { return static_cast<double>(doubled) / 2.0; }
  friend bool operator==(const AreaValue&, const AreaValue&) = default;
};

struct Curve {
  int cls = 1;
  std::vector<Coords> points;
};

inline bool is_closed(const Curve& c) { return !c.points.empty() && c.points.front() == c.points.back(); }

namespace detail {

inline long long edge_term(long long x0, long long y0, long long x1, long long y1) {
  return checked_add(checked_mul(x0, y1), -checked_mul(x1, y0));
}

struct VectorHash {
  std::size_t operator()(const std::vector<long long>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (long long x : v) {
      h ^= std::hash<long long>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace detail

// Shoelace sum; counterclockwise loops are positive.
inline AreaValue doubled_area(const PlanarLoop& loop) {
  if (!loop.closed()) throw Error(ErrorKind::NotClosed, "area of an open polygonal path");
  long long sum = 0;
  for (std::size_t i = 0; i + 1 < loop.points.size(); ++i) {
    const auto& p = loop.points[i];
    const auto& q = loop.points[i + 1];
    sum = detail::checked_add(sum, detail::edge_term(p.x, p.y, q.x, q.y));
  }
  return {sum};
}

// Curve drawing and coordinate extraction for one (r,k). Holds caches, so a
// single instance is not safe for concurrent use; the free functions below
// keep one instance per thread.
class GeometricSolver {
 public:
  GeometricSolver(int r, int k) : r_(r), k_(k), alphabet_(r), basis_(hall_basis(r, k)) {
    for (int j = 2; j <= k; ++j) {
      auto [b, e] = basis_->stratum(j);
      for (std::size_t i = b; i < e; ++i) (void)left_normed_decompose((*basis_)[i]);
    }
    planes_.resize(basis_->size());
    constants_.assign(basis_->size(), 0);
    phi_cache_.resize(static_cast<std::size_t>(k) + 1);
    for (int j = 2; j <= k; ++j) {
      auto [b, e] = basis_->stratum(j);
      for (std::size_t i = b; i < e; ++i) {
        const auto [u, s] = basis_->children(i);
        planes_[i] = {s, u};
      }
    }
    // C_i at weight j needs curves at class j-1, which need C at weight j-1.
    for (int j = 2; j <= k; ++j) {
      auto [b, e] = basis_->stratum(j);
      for (std::size_t i = b; i < e; ++i) {
        const Curve c = draw_curve(commutator_word((*basis_)[i]), j - 1);
        const long long cst = doubled_area(project(c, i)).doubled;
        if (cst == 0)
          throw Error(ErrorKind::ZeroProjectionConstant, render((*basis_)[i]) + " encloses no area on its own plane");
        constants_[i] = cst;
      }
    }
  }

  int rank() const noexcept { return r_; }
  int cls() const noexcept { return k_; }
  const HallBasis& basis() const noexcept { return *basis_; }

  // Doubled C for a basis element of weight 2..k.
  long long constant(std::size_t index) const { return constants_.at(index); }

  // (generator index, commutator index) spanning the plane of element i.
  std::pair<std::size_t, std::size_t> plane(std::size_t index) const { return planes_.at(index); }

  Coords coords(const Word& w, int m) {
    check_class(m);
    if (m == 1) return Coords(r_, 1, exponent_sums(w, alphabet_));
    const Curve curve = draw_curve(closure(w, m), m - 1);
    if (!is_closed(curve)) throw Error(ErrorKind::NotClosed, "closure did not return to the origin");

    std::vector<long long> values = curve.points[w.size()].values();
    auto [b, e] = basis_->stratum(m);
    for (std::size_t i = b; i < e; ++i) values.push_back(top_coordinate(doubled_area(project(curve, i)).doubled, i));
    return Coords(r_, m, std::move(values));
  }

  // w followed by the inverse of the normal-form word of its class-(m-1)
  // image. As a group element this is exactly the weight-m block of w's
  // normal form, so its areas are C_i T_i.
  Word closure(const Word& w, int m) {
    check_class(m);
    if (m < 2) throw Error(ErrorKind::ClassMismatch, "closure needs class >= 2");
    return concat(w, invert(canonical_word(coords(w, m - 1))));
  }

  // Doubled areas of the closure of w on every weight-m plane.
  std::vector<AreaValue> closure_areas(const Word& w, int m) {
    const Curve curve = draw_curve(closure(w, m), m - 1);
    std::vector<AreaValue> out;
    auto [b, e] = basis_->stratum(m);
    for (std::size_t i = b; i < e; ++i) out.push_back(doubled_area(project(curve, i)));
    return out;
  }

  // Point j is the class-m position of the length-j prefix. Points are
  // produced by right-multiplying one letter at a time (see step()), which
  // yields the same values as solving every prefix from scratch.
  Curve draw_curve(const Word& w, int m) {
    check_class(m);
    Curve c;
    c.cls = m;
    c.points.reserve(w.size() + 1);
    std::vector<long long> p(basis_->prefix_size(m), 0);
    c.points.emplace_back(r_, m, p);
    for (const auto& l : w) {
      if (!alphabet_.contains(l.gen)) throw Error(ErrorKind::UnknownGenerator, "letter outside rank");
      p = step(m, p, l);
      c.points.emplace_back(r_, m, p);
    }
    return c;
  }

  // Orthogonal projection onto the plane of element `index` (weight m+1).
  PlanarLoop project(const Curve& c, std::size_t index) const {
    if (basis_->weight_of(index) != c.cls + 1)
      throw Error(ErrorKind::ClassMismatch, "plane weight must be the curve class plus one");
    const auto [s, u] = planes_[index];
    PlanarLoop loop;
    loop.points.reserve(c.points.size());
    for (const auto& p : c.points) loop.points.push_back({p[s], p[u]});
    return loop;
  }

 private:
  void check_class(int m) const {
    if (m < 1 || m > k_) throw Error(ErrorKind::ClassMismatch, "class outside 1.." + std::to_string(k_));
  }

  long long top_coordinate(long long doubled, std::size_t index) const {
    const long long c = constants_[index];
    if (doubled % c != 0)
      throw Error(ErrorKind::NonDivisibleArea, "doubled area " + std::to_string(doubled) + " on plane " +
                                                   render((*basis_)[index]) + " is not a multiple of " +
                                                   std::to_string(c));
    return doubled / c;
  }

  // Class-m position of P*l from the position P. For a top element i the
  // doubled area of a closure splits into the shoelace sum along the path
  // plus the sum along the closing path, and the latter depends on the
  // lower endpoint only (phi). Hence  C_i T_i(P) = S_i(path) + phi_i(P'),
  // so one edge term and two phi lookups advance T_i.
  std::vector<long long> step(int m, const std::vector<long long>& p, Letter l) {
    if (m == 1) {
      std::vector<long long> out = p;
      out[static_cast<std::size_t>(l.gen)] += l.sign;
      return out;
    }
    const std::size_t n_low = basis_->prefix_size(m - 1);
    const std::vector<long long> lower(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n_low));
    std::vector<long long> out = step(m - 1, lower, l);
    const std::vector<long long> phi_old = phi(m - 1, lower);
    const std::vector<long long> phi_new = phi(m - 1, out);
    auto [b, e] = basis_->stratum(m);
    for (std::size_t i = b; i < e; ++i) {
      const auto [s, u] = planes_[i];
      const long long edge = detail::edge_term(lower[s], lower[u], out[s], out[u]);
      long long num = detail::checked_mul(constants_[i], p[i]);
      num = detail::checked_add(num, -phi_old[i - b]);
      num = detail::checked_add(num, edge);
      num = detail::checked_add(num, phi_new[i - b]);
      out.push_back(top_coordinate(num, i));
    }
    return out;
  }

  // Shoelace sums, on every weight-(m+1) plane, of the closing path that
  // leads from the class-m point q back to the origin along the inverted
  // normal-form word of q.
  const std::vector<long long>& phi(int m, const std::vector<long long>& q) {
    auto& cache = phi_cache_[static_cast<std::size_t>(m)];
    if (auto it = cache.find(q); it != cache.end()) return it->second;
    if (cache.size() > kPhiCacheLimit) cache.clear();

    const Word closing = invert(canonical_word(Coords(r_, m, q)));

    auto [b, e] = basis_->stratum(m + 1);
    std::vector<long long> sums(e - b, 0);
    std::vector<long long> cur = q;
    for (const auto& l : closing) {
      std::vector<long long> next = step(m, cur, l);
      for (std::size_t i = b; i < e; ++i) {
        const auto [s, u] = planes_[i];
        sums[i - b] = detail::checked_add(sums[i - b], detail::edge_term(cur[s], cur[u], next[s], next[u]));
      }
      cur = std::move(next);
    }
    for (long long v : cur)
      if (v != 0) throw Error(ErrorKind::NotClosed, "closing path did not return to the origin");
    return cache.emplace(q, std::move(sums)).first->second;
  }

  static constexpr std::size_t kPhiCacheLimit = 1'000'000;

  int r_;
  int k_;
  Alphabet alphabet_;
  std::shared_ptr<const HallBasis> basis_;
  std::vector<std::pair<std::size_t, std::size_t>> planes_;
  std::vector<long long> constants_;
  std::vector<std::unordered_map<std::vector<long long>, std::vector<long long>, detail::VectorHash>> phi_cache_;
};

// Per-thread solver. Construction checks that every basic commutator of
// weight 2..k splits as [u, s]; otherwise NotLeftNormed is raised.
inline GeometricSolver& geometric_solver(int r, int k) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<GeometricSolver>> solvers;
  auto& slot = solvers[{r, k}];
  if (!slot) slot = std::make_unique<GeometricSolver>(r, k);
  return *slot;
}

inline bool supported(int r, int k) {
  try {
    (void)geometric_solver(r, k);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline Coords coords_geometric(const Word& w, int r, int k) { return geometric_solver(r, k).coords(w, k); }

inline Word closure_word(const Word& w, int r, int k) { return geometric_solver(r, k).closure(w, k); }

inline Curve draw_curve(const Word& w, int r, int m) { return geometric_solver(r, m).draw_curve(w, m); }

inline PlanarLoop project_curve(const Curve& c, const BasisElement& plane, int r) {
  const PlaneSplit split = left_normed_decompose(plane);
  if (plane.weight() != c.cls + 1) throw Error(ErrorKind::ClassMismatch, "plane weight must be the curve class plus one");
  auto hb = hall_basis(r, c.cls);
  const auto u = hb->index_of(split.commutator);
  if (!u || hb->weight_of(*u) != c.cls)
    throw Error(ErrorKind::NotLeftNormed, render(plane) + ": left factor is not a top basis element");
  const auto s = static_cast<std::size_t>(split.generator);
  PlanarLoop loop;
  for (const auto& p : c.points) loop.points.push_back({p[s], p[*u]});
  return loop;
}

// Doubled C for K = [u, s]: the area K's own word encloses on K's plane.
inline AreaValue projection_constant(const BasisElement& plane, int r) {
  const Curve c = draw_curve(commutator_word(plane), r, plane.weight() - 1);
  const AreaValue out = doubled_area(project_curve(c, plane, r));
  if (out.doubled == 0) throw Error(ErrorKind::ZeroProjectionConstant, render(plane));
  return out;
}

inline std::vector<AreaValue> closure_areas(const Word& w, int r, int k) {
  return geometric_solver(r, k).closure_areas(w, k);
}

inline bool equal_geometric(const Word& w, const Word& v, int r, int k) {
  return coords_geometric(w, r, k) == coords_geometric(v, r, k);
}

inline Coords group_mul(const Coords& g, const Coords& h) {
  if (g.rank() != h.rank() || g.cls() != h.cls()) throw Error(ErrorKind::ClassMismatch, "group_mul across groups");
  return coords_geometric(concat(canonical_word(g), canonical_word(h)), g.rank(), g.cls());
}

}  // namespace nilgeo
