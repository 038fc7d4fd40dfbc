#pragma once

// Magnus embedding s_i -> 1 + x_i into the free associative ring over Z,
// truncated above degree k. Two words agree in N_{r,k} exactly when their
// images agree, which makes this an exact oracle for everything built on
// curve areas in geometry.hpp. Nothing here depends on that module.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "nilgeo/basis.hpp"
#include "nilgeo/coords.hpp"
#include "nilgeo/error.hpp"
#include "nilgeo/words.hpp"

namespace nilgeo {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Noncommuting product of variables; the empty monomial is 1.
using Monomial = std::vector<int>;

struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class TruncatedPoly {
 public:
  using Terms = std::map<Monomial, BigInt, GradedLex>;

  explicit TruncatedPoly(int degree) : degree_(degree) {
    if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative degree bound");
  }

  static TruncatedPoly one(int degree) { return constant(degree, 1); }
  static TruncatedPoly constant(int degree, const BigInt& c) {
    TruncatedPoly p(degree);
    p.add_term({}, c);
    return p;
  }
  static TruncatedPoly variable(int degree, int gen) {
    TruncatedPoly p(degree);
    p.add_term({gen}, 1);
    return p;
  }

  int degree_bound() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  BigInt coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  // Adds c * m; monomials longer than the bound are dropped.
  void add_term(const Monomial& m, const BigInt& c) {
    if (c == 0 || static_cast<int>(m.size()) > degree_) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TruncatedPoly homogeneous_part(int j) const {
    TruncatedPoly out(degree_);
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.size()) == j) out.terms_.emplace(m, c);
    return out;
  }

  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  friend TruncatedPoly operator+(const TruncatedPoly& p, const TruncatedPoly& q) {
    check_bounds(p, q);
    TruncatedPoly out = p;
    for (const auto& [m, c] : q.terms_) out.add_term(m, c);
    return out;
  }

  friend TruncatedPoly operator-(const TruncatedPoly& p, const TruncatedPoly& q) {
    check_bounds(p, q);
    TruncatedPoly out = p;
    for (const auto& [m, c] : q.terms_) out.add_term(m, -c);
    return out;
  }

  friend TruncatedPoly operator*(const TruncatedPoly& p, const TruncatedPoly& q) {
    check_bounds(p, q);
    TruncatedPoly out(p.degree_);
    for (const auto& [mp, cp] : p.terms_) {
      for (const auto& [mq, cq] : q.terms_) {
        if (static_cast<int>(mp.size() + mq.size()) > p.degree_) break;  // graded order: later terms are longer
        Monomial m = mp;
        m.insert(m.end(), mq.begin(), mq.end());
        out.add_term(m, cp * cq);
      }
    }
    return out;
  }

  // Right multiplication by the image of a single letter. Equivalent to
  // operator* with the letter's series, without building it.
  void multiply_letter(Letter l) {
    Terms next = terms_;
    for (const auto& [m, c] : terms_) {
      Monomial shifted = m;
      BigInt coef = c;
      for (int n = 1; static_cast<int>(m.size()) + n <= degree_; ++n) {
        shifted.push_back(l.gen);
        if (l.sign < 0) coef = -coef;
        auto [it, inserted] = next.try_emplace(shifted, coef);
        if (!inserted) {
          it->second += coef;
          if (it->second == 0) next.erase(it);
        }
        if (l.sign > 0) break;  // 1 + x has a single nonconstant term
      }
    }
    terms_ = std::move(next);
  }

 private:
  static void check_bounds(const TruncatedPoly& p, const TruncatedPoly& q) {
    if (p.degree_ != q.degree_)
      throw Error(ErrorKind::DegreeBoundMismatch,
                  "degree bounds " + std::to_string(p.degree_) + " and " + std::to_string(q.degree_));
  }

  int degree_;
  Terms terms_;
};

inline TruncatedPoly poly_mul(const TruncatedPoly& p, const TruncatedPoly& q) { return p * q; }

inline TruncatedPoly poly_pow(TruncatedPoly base, long long n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "poly_pow needs n >= 0");
  TruncatedPoly out = TruncatedPoly::one(base.degree_bound());
  while (n > 0) {
    if (n & 1) out = out * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return out;
}

// Terms in graded lexicographic order, e.g. "1 + x_1x_2 - x_2x_1".
inline std::string render(const TruncatedPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (m.empty()) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "·";
    for (int g : m) os << "x_" << (g + 1);
  }
  return os.str();
}

inline TruncatedPoly eval_word(const Word& w, int r, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "eval_word needs k >= 1");
  const Alphabet alphabet(r);
  TruncatedPoly p = TruncatedPoly::one(k);
  for (const auto& l : w) {
    if (!alphabet.contains(l.gen)) throw Error(ErrorKind::UnknownGenerator, "letter outside rank");
    p.multiply_letter(l);
  }
  return p;
}

inline bool equal_oracle(const Word& w, const Word& v, int r, int k) { return eval_word(w, r, k) == eval_word(v, r, k); }

// Lie-bracket image: leaf -> x_i, [u,v] -> UV - VU. Homogeneous of degree weight(e).
inline TruncatedPoly hall_lie_element(const BasisElement& e, int r, int k) {
  if (e.weight() > k) throw Error(ErrorKind::InvalidArgument, "element heavier than the degree bound");
  if (e.is_leaf()) {
    if (!Alphabet(r).contains(e.generator())) throw Error(ErrorKind::UnknownGenerator, "leaf outside rank");
    return TruncatedPoly::variable(k, e.generator());
  }
  const TruncatedPoly u = hall_lie_element(e.left(), r, k);
  const TruncatedPoly v = hall_lie_element(e.right(), r, k);
  return u * v - v * u;
}

namespace detail {

// Exact solve of  sum_i alpha_i * columns[i] = target  over the monomials
// that occur. Fails with NonIntegralSolve if the system is inconsistent or
// the unique solution is not integral.
inline std::vector<BigInt> solve_lattice(const std::vector<TruncatedPoly>& columns, const TruncatedPoly& target) {
  std::map<Monomial, std::size_t, GradedLex> row_of;
  auto note = [&](const TruncatedPoly& p) {
    for (const auto& [m, c] : p.terms()) row_of.try_emplace(m, row_of.size());
  };
  for (const auto& c : columns) note(c);
  note(target);

  const std::size_t n = columns.size();
  const std::size_t rows = row_of.size();
  std::vector<std::vector<BigRational>> a(rows, std::vector<BigRational>(n + 1, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [m, c] : columns[j].terms()) a[row_of[m]][j] = BigRational(c);
  for (const auto& [m, c] : target.terms()) a[row_of[m]][n] = BigRational(c);

  std::vector<std::size_t> pivot_row(n, rows);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && a[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[row]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const BigRational f = a[i][col] / a[row][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i)
    if (a[i][n] != 0) throw Error(ErrorKind::NonIntegralSolve, "degree component is not in the span of the basis");

  std::vector<BigInt> out(n, 0);
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_row[col] == rows) throw Error(ErrorKind::NonIntegralSolve, "basis Lie elements are dependent");
    const BigRational v = a[pivot_row[col]][n] / a[pivot_row[col]][col];
    if (denominator(v) != 1) throw Error(ErrorKind::NonIntegralSolve, "non-integral Mal'cev exponent");
    out[col] = numerator(v);
  }
  return out;
}

inline long long to_ll(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw Error(ErrorKind::Overflow, "coordinate does not fit in 64 bits");
  return static_cast<long long>(v);
}

}  // namespace detail

// Precomputed per (r,k): Lie elements and word images of every basis element.
class MagnusOracle {
 public:
  MagnusOracle(int r, int k) : r_(r), k_(k), basis_(hall_basis(r, k)) {
    for (const auto& e : basis_->elements()) {
      lie_.push_back(hall_lie_element(e, r, k));
      const Word word = commutator_word(e);
      image_.push_back(eval_word(word, r, k));
      inverse_image_.push_back(eval_word(invert(word), r, k));
    }
  }

  int rank() const noexcept { return r_; }
  int cls() const noexcept { return k_; }

  // Degree peeling. With w = B_k ... B_2 B_1 (B_j the weight-j block of the
  // normal form), the lowest part of eval(w) - 1 is the Lie image of B_1;
  // stripping B_1 on the right leaves B_k ... B_2 and the process repeats.
  Coords coords(const Word& w) const {
    TruncatedPoly p = eval_word(w, r_, k_);
    Coords out(r_, k_);
    for (int j = 1; j <= k_; ++j) {
      for (const auto& [m, c] : p.terms())
        if (!m.empty() && static_cast<int>(m.size()) < j)
          throw Error(ErrorKind::NonIntegralSolve, "residual has a term below the current degree");
      auto [b, e] = basis_->stratum(j);
      std::vector<TruncatedPoly> columns(lie_.begin() + static_cast<std::ptrdiff_t>(b),
                                         lie_.begin() + static_cast<std::ptrdiff_t>(e));
      const std::vector<BigInt> alpha = detail::solve_lattice(columns, p.homogeneous_part(j));
      TruncatedPoly strip = TruncatedPoly::one(k_);
      for (std::size_t i = e; i-- > b;) {
        const long long a = detail::to_ll(alpha[i - b]);
        out[i] = a;
        if (a > 0) strip = strip * poly_pow(inverse_image_[i], a);
        if (a < 0) strip = strip * poly_pow(image_[i], -a);
      }
      p = p * strip;
    }
    if (!(p == TruncatedPoly::one(k_))) throw Error(ErrorKind::NonIntegralSolve, "peeling left a nontrivial residual");
    return out;
  }

 private:
  int r_;
  int k_;
  std::shared_ptr<const HallBasis> basis_;
  std::vector<TruncatedPoly> lie_;
  std::vector<TruncatedPoly> image_;
  std::vector<TruncatedPoly> inverse_image_;
};

inline std::shared_ptr<const MagnusOracle> magnus_oracle(int r, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MagnusOracle>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({r, k}); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const MagnusOracle>(r, k);
  std::lock_guard lock(mutex);
  return cache.emplace(std::pair{r, k}, std::move(built)).first->second;
}

inline Coords oracle_coords(const Word& w, int r, int k) { return magnus_oracle(r, k)->coords(w); }

}  // namespace nilgeo
