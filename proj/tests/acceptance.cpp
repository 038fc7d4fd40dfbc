// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails. Verification reports are written to the working
// directory as acceptance_verify_<r>_<k>.json.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "nilgeo/cli.hpp"

using namespace nilgeo;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    out.ok = false;
    out.detail += " (over time limit " + std::to_string(limit_s) + " s)";
  }
  if (!out.ok) ++failures;
  std::cout << (out.ok ? "[PASS] " : "[FAIL] ") << "AC " << n << ' ' << name << " (" << secs << " s) " << out.detail
            << std::endl;
}

std::string verify_path(int r, int k) { return "acceptance_verify_" + std::to_string(r) + "_" + std::to_string(k) + ".json"; }

Json run_verify(int r, int k, std::size_t trials, std::size_t max_len, std::uint64_t seed) {
  std::ostringstream sink;
  (void)cli::cmd_verify(r, k, trials, max_len, seed, verify_path(r, k), sink);
  std::ifstream f(verify_path(r, k));
  return Json::parse(f);
}

// Full agreement, or every failing trial persisted with its word pair, both
// tuples and a shrunk counterexample.
Outcome agreement_or_counterexample(const Json& j, std::size_t trials, bool require_full) {
  std::ostringstream os;
  const auto agreements = j["agreements"].get<std::size_t>();
  os << agreements << '/' << trials << " agree, " << j["disagreements"].size() << " disagreements, " << j["errors"].size()
     << " errors";
  if (j["trials"].get<std::size_t>() != trials) return {false, os.str() + "; wrong trial count"};
  if (agreements == trials) return {true, os.str()};
  if (require_full) return {false, os.str()};
  for (const auto& d : j["disagreements"]) {
    for (const char* key : {"w", "v", "geometric_w", "geometric_v", "oracle_w", "oracle_v"})
      if (!d.contains(key)) return {false, os.str() + "; disagreement missing " + key};
    const auto& m = d["minimal"];
    if (m["word"].get<std::string>().empty() || m["oracle"].get<std::string>().empty() ||
        (m["geometric"].get<std::string>().empty() && m["error"].get<std::string>().empty()))
      return {false, os.str() + "; incomplete counterexample"};
  }
  for (const auto& e : j["errors"])
    if (e["minimal"]["word"].get<std::string>().empty() || e["oracle"].get<std::string>().empty())
      return {false, os.str() + "; incomplete error record"};
  std::string first;
  if (!j["disagreements"].empty()) {
    const auto& m = j["disagreements"][0]["minimal"];
    first = "; e.g. " + m["word"].get<std::string>() + " geometric " + m["geometric"].get<std::string>() + " oracle " +
            m["oracle"].get<std::string>();
  }
  return {true, os.str() + first + "; counterexamples persisted"};
}

long long plane_area(GeometricSolver& solver, const Word& w, int k, std::size_t index) {
  return doubled_area(solver.project(solver.draw_curve(w, k - 1), index)).doubled;
}

}  // namespace

int main() {
  std::cout << std::boolalpha;

  criterion(1, "Witt counts and Hall strata", 1.0, [] {
    const std::vector<long long> expect{2, 1, 2, 3, 6};
    for (int k = 1; k <= 5; ++k)
      if (witt_delta(2, k) != expect[static_cast<std::size_t>(k - 1)]) return Outcome{false, "witt_delta(2," + std::to_string(k) + ")"};
    if (witt_delta(3, 2) != 3 || witt_delta(3, 3) != 8) return Outcome{false, "witt_delta rank 3"};
    for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 5}, {3, 3}, {3, 4}, {4, 3}}) {
      const auto hb = hall_basis(r, k);
      for (int j = 1; j <= k; ++j)
        if (static_cast<long long>(hb->stratum_size(j)) != witt_delta(r, j))
          return Outcome{false, "stratum size mismatch at (" + std::to_string(r) + "," + std::to_string(k) + ")"};
    }
    return Outcome{true, "exact"};
  });

  criterion(2, "c-recursion audit", 1.0, [] {
    const std::vector<long long> sums{2, 3, 5, 8, 14, 23};
    for (int k = 1; k <= 6; ++k) {
      if (paper_c_recursion(2, k) != (1LL << (k - 1)) + 1) return Outcome{false, "recursion at k=" + std::to_string(k)};
      if (c_sum(2, k) != sums[static_cast<std::size_t>(k - 1)]) return Outcome{false, "c_sum at k=" + std::to_string(k)};
    }
    const ErrataReport rep = build_errata(6);
    const bool ok = rep.first_divergence == 4 && rep.c_table[3].recursion == 9 && rep.c_table[3].witt_sum == 8;
    return Outcome{ok, "first divergence k=" + (rep.first_divergence ? std::to_string(*rep.first_divergence) : "none") +
                           " (recursion 9 vs witt sum 8)"};
  });

  criterion(3, "verify (2,2) 1000 trials max_len 40", 30.0,
            [] { return agreement_or_counterexample(run_verify(2, 2, 1000, 40, 1), 1000, true); });

  criterion(4, "verify (3,2) 500 trials max_len 30", 30.0,
            [] { return agreement_or_counterexample(run_verify(3, 2, 500, 30, 1), 500, true); });

  criterion(5, "verify (2,3) 500, (3,3) 200, (2,4) 200 trials max_len 30", 300.0, [] {
    std::string detail;
    bool ok = true;
    for (auto [r, k, n] : std::vector<std::tuple<int, int, std::size_t>>{{2, 3, 500}, {3, 3, 200}, {2, 4, 200}}) {
      const Outcome o = agreement_or_counterexample(run_verify(r, k, n, 30, 1), n, false);
      ok = ok && o.ok;
      detail += (detail.empty() ? "" : " | ") + ("(" + std::to_string(r) + "," + std::to_string(k) + "): ") + o.detail;
    }
    return Outcome{ok, detail};
  });

  criterion(6, "worked example audit", 5.0, [] {
    const ExampleAudit ex = build_errata(4).example;
    std::ostringstream os;
    os << "doubled areas (" << ex.doubled_areas[0] << ',' << ex.doubled_areas[1] << ") vs published " << ex.literature_areas
       << "; geometric " << ex.geometric << " oracle " << ex.oracle << " vs published " << ex.literature_tuple
       << "; tail (" << ex.tail.first << ',' << ex.tail.second << ")";
    const bool tail_ok = ex.tail == std::pair<long long, long long>{4, 1};
    return Outcome{ex.agree && tail_ok, os.str()};
  });

  criterion(7, "area invariants (a) (b) (c)", 60.0, [] {
    using Group = std::pair<int, int>;
    for (auto [r, k] : std::vector<Group>{{2, 2}, {2, 3}, {3, 2}}) {
      auto& solver = geometric_solver(r, k);
      auto [b, e] = solver.basis().stratum(k);
      const auto rels = relators(r, k);
      const Alphabet a(r);
      for (const Word& rho : rels)
        for (std::size_t i = b; i < e; ++i)
          if (plane_area(solver, rho, k, i) != 0) return Outcome{false, "(a) nonzero area for " + render(rho)};
      for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Word v = solver.closure(random_word(seed, 15, a), k);
        const Word moved = null_move(seed + 1, v, rels, a);
        for (std::size_t i = b; i < e; ++i)
          if (plane_area(solver, moved, k, i) != plane_area(solver, v, k, i))
            return Outcome{false, "(b) null move changed area of " + render(v)};
      }
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Word v = solver.closure(random_word(seed + 1000, 12, a), k);
        for (std::size_t i = b; i < e; ++i) {
          const Word K = commutator_word(solver.basis()[i]);
          const long long base = plane_area(solver, v, k, i);
          for (int m = -3; m <= 3; ++m)
            if (plane_area(solver, concat(v, power(K, m)), k, i) != base + m * solver.constant(i))
              return Outcome{false, "(c) additivity failed for " + render(v)};
        }
      }
    }
    return Outcome{true, "exhaustive (a); 500 null moves (b); 100 words x m in -3..3 (c); per group"};
  });

  criterion(8, "canonical round-trip", 60.0, [] {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long long> d(-5, 5);
    for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
      for (int n = 0; n < 200; ++n) {
        Coords g(r, k);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = d(rng);
        const Word w = canonical_word(g);
        if (!(coords_geometric(w, r, k) == g)) return Outcome{false, "geometric " + render_tuple(g)};
        if (!(oracle_coords(w, r, k) == g)) return Outcome{false, "oracle " + render_tuple(g)};
      }
    }
    return Outcome{true, "200 tuples per group"};
  });

  criterion(9, "Magnus oracle self-checks", 30.0, [] {
    for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
      const Alphabet a(r);
      const TruncatedPoly one = TruncatedPoly::one(k);
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Word w = random_word(seed, 15, a), v = random_word(seed + 500, 15, a);
        if (eval_word(concat(w, v), r, k) != eval_word(w, r, k) * eval_word(v, r, k))
          return Outcome{false, "multiplicativity"};
        if (eval_word(w, r, k) * eval_word(invert(w), r, k) != one) return Outcome{false, "inverse law"};
      }
      for (const Word& rho : relators(r, k))
        if (eval_word(rho, r, k) != one) return Outcome{false, "relator " + render(rho)};
      const auto hb = hall_basis(r, k);
      auto [b, e] = hb->stratum(k);
      for (std::size_t i = b; i < e; ++i) {
        const Word K = commutator_word((*hb)[i]);
        for (int s = 0; s < r; ++s) {
          const Word sw({Letter{s, 1}});
          if (eval_word(concat(concat(K, sw), concat(invert(K), invert(sw))), r, k) != one)
            return Outcome{false, "centrality of " + render((*hb)[i])};
        }
      }
    }
    return Outcome{true, "up to (3,3)"};
  });

  criterion(10, "projection constants", 5.0, [] {
    const long long cba = projection_constant(parse_basis_element("[b,a]", Alphabet(2)), 2).doubled;
    if (cba != 2 && cba != -2) return Outcome{false, "doubled C[b,a] = " + std::to_string(cba)};
    std::string published;
    for (const auto& row : build_errata(4).constants) {
      if (row.doubled == 0) return Outcome{false, "zero constant " + row.element};
      if (!row.literature.empty())
        published += "; " + row.element + " doubled " + std::to_string(row.doubled) + " vs published " + row.literature;
    }
    for (auto [r, k] : std::vector<std::pair<int, int>>{{4, 3}, {5, 2}}) {
      auto& solver = geometric_solver(r, k);
      for (std::size_t i = solver.basis().prefix_size(1); i < solver.basis().size(); ++i)
        if (solver.constant(i) == 0) return Outcome{false, "zero constant " + render(solver.basis()[i])};
    }
    return Outcome{true, "doubled C[b,a] = " + std::to_string(cba) + published};
  });

  std::cout << (failures ? "acceptance: FAILED " + std::to_string(failures) + " criteria" : "acceptance: all criteria passed")
            << std::endl;
  return failures ? 1 : 0;
}
