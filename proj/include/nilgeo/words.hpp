#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nilgeo/error.hpp"

namespace nilgeo {

inline constexpr int kMaxRank = 26;

// Generator names are the first `rank` lowercase Latin letters.
class Alphabet {
 public:
  explicit Alphabet(int rank) : rank_(rank) {
    if (rank < 1 || rank > kMaxRank)
      throw Error(ErrorKind::InvalidArgument, "rank must lie in 1..26, got " + std::to_string(rank));
  }

  int rank() const noexcept { return rank_; }
  char name(int gen) const { return static_cast<char>('a' + gen); }
  bool contains(int gen) const noexcept { return gen >= 0 && gen < rank_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int rank_;
};

// A signed generator. `gen` is zero-based (a = 0); `sign` is +1 or -1.
struct Letter {
  int gen = 0;
  int sign = 1;

  Letter inverse() const noexcept { return {gen, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Free-group word. No implicit reduction: "aA" and "" are different Words.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  void append(const Word& other) { letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end()); }

  Word prefix(std::size_t n) const {
    return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
  }
  Word suffix_from(std::size_t n) const {
    return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end()));
  }

  // Highest generator index used plus one; 0 for the empty word.
  int min_rank() const noexcept {
    int r = 0;
    for (const auto& l : letters_) r = std::max(r, l.gen + 1);
    return r;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) {
      if (ch == '^') throw Error(ErrorKind::MalformedExponent, "exponent without a letter at offset " + std::to_string(i));
      throw Error(ErrorKind::InvalidArgument, std::string("unexpected character '") + ch + "' at offset " + std::to_string(i));
    }
    const bool upper = std::isupper(static_cast<unsigned char>(ch)) != 0;
    const int gen = std::tolower(static_cast<unsigned char>(ch)) - 'a';
    if (!alphabet.contains(gen))
      throw Error(ErrorKind::UnknownGenerator,
                  std::string("letter '") + ch + "' is outside a rank-" + std::to_string(alphabet.rank()) + " alphabet");
    ++i;

    long long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      const char* first = text.data() + i;
      const char* last = text.data() + text.size();
      // from_chars rejects a leading '+', accept it explicitly.
      if (first != last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, exponent);
      if (ec != std::errc{} || ptr == first)
        throw Error(ErrorKind::MalformedExponent, "expected an integer after '^' at offset " + std::to_string(i));
      if (exponent > 1'000'000 || exponent < -1'000'000)
        throw Error(ErrorKind::MalformedExponent, "exponent magnitude above 10^6");
      i = static_cast<std::size_t>(ptr - text.data());
    }
    const int sign = (upper ? -1 : 1) * (exponent < 0 ? -1 : 1);
    for (long long n = 0; n < (exponent < 0 ? -exponent : exponent); ++n) out.push_back({gen, sign});
  }
  return Word(std::move(out));
}

// Compact contiguous rendering, e.g. "abAB". parse_word inverts it.
inline std::string render(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (const auto& l : w) s.push_back(static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.gen));
  return s;
}

inline Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const auto& l : w) {
    if (!stack.empty() && stack.back() == l.inverse())
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

inline Word concat(const Word& w, const Word& v) {
  Word out = w;
  out.append(v);
  return out;
}

// w^n; negative n repeats the inverse.
inline Word power(const Word& w, long long n) {
  const Word base = n < 0 ? invert(w) : w;
  Word out;
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) out.append(base);
  return out;
}

inline std::vector<long long> exponent_sums(const Word& w, const Alphabet& alphabet) {
  std::vector<long long> sums(static_cast<std::size_t>(alphabet.rank()), 0);
  for (const auto& l : w) {
    if (!alphabet.contains(l.gen))
      throw Error(ErrorKind::UnknownGenerator, "generator index " + std::to_string(l.gen) + " exceeds rank");
    sums[static_cast<std::size_t>(l.gen)] += l.sign;
  }
  return sums;
}

inline Letter random_letter(std::mt19937_64& rng, const Alphabet& alphabet) {
  std::uniform_int_distribution<int> pick(0, 2 * alphabet.rank() - 1);
  const int v = pick(rng);
  return {v / 2, v % 2 == 0 ? 1 : -1};
}

// Deterministic for a fixed seed; letters uniform over the 2r signed generators.
inline Word random_word(std::uint64_t seed, std::size_t length, const Alphabet& alphabet) {
  std::mt19937_64 rng(seed);
  std::vector<Letter> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(random_letter(rng, alphabet));
  return Word(std::move(out));
}

// One elementary move of a null-sequence: w = u1 u2 becomes u1 x u2 with x
// either s s^-1 or s rho s^-1 for a relator rho.
inline Word null_move(std::uint64_t seed, const Word& w, std::span<const Word> relators, const Alphabet& alphabet) {
  if (relators.empty()) throw Error(ErrorKind::InvalidArgument, "null_move needs at least one relator");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> split_pick(0, w.size());
  const std::size_t split = split_pick(rng);
  const Letter s = random_letter(rng, alphabet);
  std::bernoulli_distribution conjugate(0.5);

  Word out = w.prefix(split);
  out.push_back(s);
  if (conjugate(rng)) {
    std::uniform_int_distribution<std::size_t> rel_pick(0, relators.size() - 1);
    out.append(relators[rel_pick(rng)]);
  }
  out.push_back(s.inverse());
  out.append(w.suffix_from(split));
  return out;
}

}  // namespace nilgeo
