#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "nilgeo/basis.hpp"
#include "nilgeo/error.hpp"
#include "nilgeo/words.hpp"

namespace nilgeo {

// Mal'cev coordinates of an element of N_{r,k}. values[i] is the exponent
// of the i-th Hall basis element, so the layout is generators first; the
// conventional display order (top block, then lower entries descending) is
// produced by render_tuple.
class Coords {
 public:
  Coords(int rank, int cls)
      : rank_(rank), class_(cls), values_(hall_basis(rank, cls)->prefix_size(cls), 0) {}

  Coords(int rank, int cls, std::vector<long long> values) : rank_(rank), class_(cls), values_(std::move(values)) {
    if (values_.size() != hall_basis(rank, cls)->prefix_size(cls))
      throw Error(ErrorKind::InvalidArgument, "coordinate vector has the wrong length for (r,k)");
  }

  int rank() const noexcept { return rank_; }
  int cls() const noexcept { return class_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<long long>& values() const noexcept { return values_; }
  long long operator[](std::size_t i) const { return values_[i]; }
  long long& operator[](std::size_t i) { return values_[i]; }

  bool is_identity() const noexcept {
    for (long long v : values_)
      if (v != 0) return false;
    return true;
  }

  // Image under N_{r,k} -> N_{r,m}: drop every block heavier than m.
  Coords truncated(int m) const {
    if (m < 1 || m > class_) throw Error(ErrorKind::ClassMismatch, "cannot truncate to a heavier class");
    const std::size_t n = hall_basis(rank_, class_)->prefix_size(m);
    return Coords(rank_, m, std::vector<long long>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  friend bool operator==(const Coords&, const Coords&) = default;

 private:
  int rank_;
  int class_;
  std::vector<long long> values_;
};

namespace detail {

// Display order: weight-k block ascending, then everything lighter descending.
inline std::vector<std::size_t> display_order(int r, int k) {
  auto hb = hall_basis(r, k);
  auto [tb, te] = hb->stratum(k);
  std::vector<std::size_t> order;
  for (std::size_t i = tb; i < te; ++i) order.push_back(i);
  for (std::size_t i = tb; i-- > 0;) order.push_back(i);
  return order;
}

}  // namespace detail

// "(T_1,...,T_D,t_c,...,t_1)"
inline std::string render_tuple(const Coords& g) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (std::size_t i : detail::display_order(g.rank(), g.cls())) {
    if (!first) os << ',';
    os << g[i];
    first = false;
  }
  os << ')';
  return os.str();
}

// "{[b,a]:1, b:2, a:2}"
inline std::string render_labeled(const Coords& g) {
  auto hb = hall_basis(g.rank(), g.cls());
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i : detail::display_order(g.rank(), g.cls())) {
    if (!first) os << ", ";
    os << render((*hb)[i]) << ':' << g[i];
    first = false;
  }
  os << '}';
  return os.str();
}

// Build coordinates from labeled entries, e.g. {{"[b,a]",1},{"a",2}}.
inline Coords make_coords(int r, int k, std::initializer_list<std::pair<std::string_view, long long>> entries) {
  auto hb = hall_basis(r, k);
  Coords g(r, k);
  const Alphabet alphabet(r);
  for (const auto& [label, value] : entries) {
    auto idx = hb->index_of(parse_basis_element(label, alphabet));
    if (!idx) throw Error(ErrorKind::InvalidArgument, std::string(label) + " is not a basis element of this class");
    g[*idx] = value;
  }
  return g;
}

// Normal-form word: heaviest block first, each block in basis order,
// K^m spelled as the commutator word repeated (inverted when m < 0).
inline Word canonical_word(const Coords& g) {
  auto hb = hall_basis(g.rank(), g.cls());
  Word out;
  for (int j = g.cls(); j >= 1; --j) {
    auto [b, e] = hb->stratum(j);
    for (std::size_t i = b; i < e; ++i) {
      if (g[i] == 0) continue;
      out.append(power(commutator_word((*hb)[i]), g[i]));
    }
  }
  return out;
}

}  // namespace nilgeo
