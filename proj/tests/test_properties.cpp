// Randomised invariants. Generators are plain mt19937_64 draws with fixed
// seeds, so every failure reproduces.

#include <gtest/gtest.h>

#include <random>

#include "nilgeo/geometry.hpp"
#include "nilgeo/magnus.hpp"

using namespace nilgeo;

namespace {

using Group = std::pair<int, int>;

Coords random_coords(std::mt19937_64& rng, int r, int k, int lo, int hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  Coords g(r, k);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = d(rng);
  return g;
}

long long plane_area(const Word& w, int r, int k, std::size_t index) {
  auto& solver = geometric_solver(r, k);
  return doubled_area(solver.project(solver.draw_curve(w, k - 1), index)).doubled;
}

}  // namespace

TEST(AreaInvariants, HigherCommutatorsEncloseNothing) {
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}}) {
    auto& solver = geometric_solver(r, k);
    auto [b, e] = solver.basis().stratum(k);
    for (const Word& rho : relators(r, k)) {
      const Curve c = solver.draw_curve(rho, k - 1);
      ASSERT_TRUE(is_closed(c)) << render(rho);
      for (std::size_t i = b; i < e; ++i) EXPECT_EQ(doubled_area(solver.project(c, i)).doubled, 0) << render(rho);
    }
  }
}

TEST(AreaInvariants, NullMovesPreserveAreas) {
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}}) {
    const Alphabet a(r);
    const auto rels = relators(r, k);
    auto [b, e] = geometric_solver(r, k).basis().stratum(k);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const Word v = closure_word(random_word(seed, 15, a), r, k);
      const Word moved = null_move(seed ^ 0x9e3779b97f4a7c15ULL, v, rels, a);
      for (std::size_t i = b; i < e; ++i) EXPECT_EQ(plane_area(moved, r, k, i), plane_area(v, r, k, i));
    }
  }
}

TEST(AreaInvariants, AdditiveInOwnCommutator) {
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}}) {
    const Alphabet a(r);
    auto& solver = geometric_solver(r, k);
    auto [b, e] = solver.basis().stratum(k);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Word v = closure_word(random_word(seed + 500, 12, a), r, k);
      const std::size_t i = b + seed % (e - b);
      const Word K = commutator_word(solver.basis()[i]);
      for (int m = -3; m <= 3; ++m)
        EXPECT_EQ(plane_area(concat(v, power(K, m)), r, k, i), plane_area(v, r, k, i) + m * solver.constant(i));
    }
  }
}

TEST(CanonicalRoundTrip, GeometricAndOracle) {
  std::mt19937_64 rng(2024);
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}}) {
    for (int n = 0; n < 200; ++n) {
      const Coords g = random_coords(rng, r, k, -5, 5);
      const Word w = canonical_word(g);
      EXPECT_EQ(coords_geometric(w, r, k), g) << render_tuple(g);
      EXPECT_EQ(oracle_coords(w, r, k), g) << render_tuple(g);
    }
  }
}

TEST(Projection, TruncationCommutes) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Word w = random_word(seed, 20, Alphabet(2));
    const Coords g3 = coords_geometric(w, 2, 3);
    EXPECT_EQ(g3.truncated(2), coords_geometric(w, 2, 2));
    EXPECT_EQ(g3.truncated(1), coords_geometric(w, 2, 1));
    EXPECT_EQ(oracle_coords(w, 2, 4).truncated(3), oracle_coords(w, 2, 3));
  }
}

TEST(GeometricSolver, AgreesWithOracle) {
  for (auto [r, k, n] : std::vector<std::tuple<int, int, int>>{{2, 2, 300}, {2, 3, 300}, {3, 2, 200}, {2, 4, 20}}) {
    for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(n); ++seed) {
      const Word w = random_word(seed, seed % 25, Alphabet(r));
      EXPECT_EQ(coords_geometric(w, r, k), oracle_coords(w, r, k)) << render(w);
    }
  }
}

TEST(GeometricSolver, GroupMulIsAssociativeAndMatchesConcat) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 60; ++n) {
    const Coords g = random_coords(rng, 2, 3, -3, 3), h = random_coords(rng, 2, 3, -3, 3),
                 f = random_coords(rng, 2, 3, -3, 3);
    EXPECT_EQ(group_mul(group_mul(g, h), f), group_mul(g, group_mul(h, f)));
    EXPECT_EQ(group_mul(g, h), oracle_coords(concat(canonical_word(g), canonical_word(h)), 2, 3));
  }
}

TEST(MagnusOracle, Multiplicative) {
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const Word w = random_word(seed, 12, Alphabet(r)), v = random_word(seed + 1, 12, Alphabet(r));
      EXPECT_EQ(eval_word(concat(w, v), r, k), poly_mul(eval_word(w, r, k), eval_word(v, r, k)));
    }
  }
}

TEST(MagnusOracle, InverseLaw) {
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const Word w = random_word(seed, 15, Alphabet(r));
      EXPECT_EQ(poly_mul(eval_word(w, r, k), eval_word(invert(w), r, k)), TruncatedPoly::one(k));
    }
  }
}

TEST(MagnusOracle, RelatorsTrivial) {
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}, {3, 3}})
    for (const Word& rho : relators(r, k)) EXPECT_EQ(eval_word(rho, r, k), TruncatedPoly::one(k));
}

TEST(MagnusOracle, TopElementsCentral) {
  for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    const auto hb = hall_basis(r, k);
    auto [b, e] = hb->stratum(k);
    for (std::size_t i = b; i < e; ++i) {
      for (int s = 0; s < r; ++s) {
        const Word K = commutator_word((*hb)[i]);
        const Word sw({Letter{s, 1}});
        const Word bracket = concat(concat(K, sw), concat(invert(K), invert(sw)));
        EXPECT_EQ(eval_word(bracket, r, k), TruncatedPoly::one(k)) << render((*hb)[i]) << ' ' << s;
        EXPECT_NE(eval_word(bracket, r, k + 1), TruncatedPoly::one(k + 1));
      }
    }
  }
}

TEST(MagnusOracle, NullMovesInvariant) {
  for (auto [r, k] : std::vector<Group>{{2, 3}, {3, 3}}) {
    const auto rels = relators(r, k);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Word w = random_word(seed, 15, Alphabet(r));
      const Word v = null_move(seed + 3, null_move(seed + 5, w, rels, Alphabet(r)), rels, Alphabet(r));
      EXPECT_TRUE(equal_oracle(w, v, r, k));
      EXPECT_EQ(oracle_coords(w, r, k), oracle_coords(v, r, k));
    }
  }
}
