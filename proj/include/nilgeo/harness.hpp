#pragma once

// Cross-validation of the geometric solver against the Magnus oracle, the
// errata tables, and loop export (CSV/SVG).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nilgeo/basis.hpp"
#include "nilgeo/coords.hpp"
#include "nilgeo/geometry.hpp"
#include "nilgeo/magnus.hpp"
#include "nilgeo/words.hpp"

namespace nilgeo {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Verification

// Smallest failing word found by deleting letters, paired with its oracle
// normal form: the two are equal in N_{r,k}, yet the geometric tuple of
// `word` differs from the oracle's.
struct Counterexample {
  std::string word;
  std::string normal_form;
  std::string oracle;
  std::string geometric;  // empty when the solver raised
  std::string error;      // error kind, empty when the solver returned
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct Disagreement {
  std::size_t trial = 0;
  std::string w, v;
  bool geometric_equal = false;
  bool oracle_equal = false;
  std::string geometric_w, geometric_v;
  std::string oracle_w, oracle_v;
  Counterexample minimal;
  friend bool operator==(const Disagreement&, const Disagreement&) = default;
};

struct TrialError {
  std::size_t trial = 0;
  std::string word;
  std::string kind;
  std::string message;
  std::string oracle;
  Counterexample minimal;
  friend bool operator==(const TrialError&, const TrialError&) = default;
};

struct VerificationReport {
  int r = 0, k = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t max_len = 0;
  std::size_t agreements = 0;
  std::vector<Disagreement> disagreements;
  std::vector<TrialError> errors;
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

inline void to_json(Json& j, const Counterexample& c) {
  j = Json{{"word", c.word}, {"normal_form", c.normal_form}, {"oracle", c.oracle}, {"geometric", c.geometric}, {"error", c.error}};
}
inline void from_json(const Json& j, Counterexample& c) {
  j.at("word").get_to(c.word);
  j.at("normal_form").get_to(c.normal_form);
  j.at("oracle").get_to(c.oracle);
  j.at("geometric").get_to(c.geometric);
  j.at("error").get_to(c.error);
}
inline void to_json(Json& j, const Disagreement& d) {
  j = Json{{"trial", d.trial},
           {"w", d.w},
           {"v", d.v},
           {"geometric_equal", d.geometric_equal},
           {"oracle_equal", d.oracle_equal},
           {"geometric_w", d.geometric_w},
           {"geometric_v", d.geometric_v},
           {"oracle_w", d.oracle_w},
           {"oracle_v", d.oracle_v},
           {"minimal", d.minimal}};
}
inline void from_json(const Json& j, Disagreement& d) {
  j.at("trial").get_to(d.trial);
  j.at("w").get_to(d.w);
  j.at("v").get_to(d.v);
  j.at("geometric_equal").get_to(d.geometric_equal);
  j.at("oracle_equal").get_to(d.oracle_equal);
  j.at("geometric_w").get_to(d.geometric_w);
  j.at("geometric_v").get_to(d.geometric_v);
  j.at("oracle_w").get_to(d.oracle_w);
  j.at("oracle_v").get_to(d.oracle_v);
  j.at("minimal").get_to(d.minimal);
}
inline void to_json(Json& j, const TrialError& e) {
  j = Json{{"trial", e.trial}, {"word", e.word}, {"kind", e.kind}, {"message", e.message}, {"oracle", e.oracle}, {"minimal", e.minimal}};
}
inline void from_json(const Json& j, TrialError& e) {
  j.at("trial").get_to(e.trial);
  j.at("word").get_to(e.word);
  j.at("kind").get_to(e.kind);
  j.at("message").get_to(e.message);
  j.at("oracle").get_to(e.oracle);
  j.at("minimal").get_to(e.minimal);
}
inline void to_json(Json& j, const VerificationReport& r) {
  j = Json{{"r", r.r},
           {"k", r.k},
           {"trials", r.trials},
           {"seed", r.seed},
           {"max_len", r.max_len},
           {"agreements", r.agreements},
           {"disagreements", r.disagreements},
           {"errors", r.errors}};
}
inline void from_json(const Json& j, VerificationReport& r) {
  j.at("r").get_to(r.r);
  j.at("k").get_to(r.k);
  j.at("trials").get_to(r.trials);
  j.at("seed").get_to(r.seed);
  j.at("max_len").get_to(r.max_len);
  j.at("agreements").get_to(r.agreements);
  j.at("disagreements").get_to(r.disagreements);
  j.at("errors").get_to(r.errors);
}

namespace detail {

// Geometric outcome for one word: a tuple or the error that stopped it.
struct Outcome {
  std::optional<Coords> coords;
  std::string kind;
  std::string message;
};

inline Outcome solve_geometric(const Word& w, int r, int k) {
  try {
    return {coords_geometric(w, r, k), {}, {}};
  } catch (const Error& e) {
    return {std::nullopt, std::string(to_string(e.kind())), e.what()};
  }
}

inline bool fails(const Word& w, int r, int k) {
  const Outcome o = solve_geometric(w, r, k);
  return !o.coords || !(*o.coords == oracle_coords(w, r, k));
}

inline Counterexample shrink(Word w, int r, int k) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Word shorter = concat(w.prefix(i), w.suffix_from(i + 1));
      if (fails(shorter, r, k)) {
        w = std::move(shorter);
        progress = true;
        break;
      }
    }
  }
  const Coords oracle = oracle_coords(w, r, k);
  const Outcome o = solve_geometric(w, r, k);
  return {render(w), render(canonical_word(oracle)), render_tuple(oracle), o.coords ? render_tuple(*o.coords) : "",
          o.kind};
}

struct TrialResult {
  enum class Status { Agree, Disagree, Error } status = Status::Agree;
  Disagreement disagreement;
  TrialError error;
};

inline TrialResult run_trial(std::size_t trial, int r, int k, std::uint64_t seed, std::size_t max_len,
                             const std::vector<Word>& rels) {
  const Alphabet alphabet(r);
  std::mt19937_64 rng(seed + trial);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  const Word w = random_word(rng(), len(rng), alphabet);
  Word v;
  if (std::bernoulli_distribution(0.5)(rng)) {
    v = w;
    const int moves = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int m = 0; m < moves; ++m) v = null_move(rng(), v, rels, alphabet);
  } else {
    v = random_word(rng(), len(rng), alphabet);
  }

  const Coords ow = oracle_coords(w, r, k);
  const Coords ov = oracle_coords(v, r, k);
  const Outcome gw = solve_geometric(w, r, k);
  const Outcome gv = solve_geometric(v, r, k);

  TrialResult out;
  for (const auto* side : {&gw, &gv}) {
    if (side->coords) continue;
    const Word& bad = side == &gw ? w : v;
    out.status = TrialResult::Status::Error;
    out.error = {trial, render(bad), side->kind, side->message, render_tuple(side == &gw ? ow : ov), shrink(bad, r, k)};
    return out;
  }
  if (*gw.coords == ow && *gv.coords == ov) return out;

  out.status = TrialResult::Status::Disagree;
  Disagreement& d = out.disagreement;
  d.trial = trial;
  d.w = render(w);
  d.v = render(v);
  d.geometric_equal = *gw.coords == *gv.coords;
  d.oracle_equal = ow == ov;
  d.geometric_w = render_tuple(*gw.coords);
  d.geometric_v = render_tuple(*gv.coords);
  d.oracle_w = render_tuple(ow);
  d.oracle_v = render_tuple(ov);
  d.minimal = shrink(*gw.coords == ow ? v : w, r, k);
  return out;
}

}  // namespace detail

// Trial t draws its words from seed + t, so the report does not depend on
// how trials are spread over threads. Half the trials compare w with a
// null-move rewrite of w, the rest with an independent word.
inline VerificationReport run_verification(int r, int k, std::size_t trials, std::size_t max_len, std::uint64_t seed,
                                           unsigned threads = 0) {
  (void)geometric_solver(r, k);  // raises NotLeftNormed / ZeroProjectionConstant up front
  const std::vector<Word> rels = relators(r, k);
  std::vector<detail::TrialResult> results(trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < trials; t = next++) results[t] = detail::run_trial(t, r, k, seed, max_len, rels);
  };
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads && i < trials; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  VerificationReport report{r, k, trials, seed, max_len, 0, {}, {}};
  for (auto& res : results) {
    switch (res.status) {
      case detail::TrialResult::Status::Agree: ++report.agreements; break;
      case detail::TrialResult::Status::Disagree: report.disagreements.push_back(std::move(res.disagreement)); break;
      case detail::TrialResult::Status::Error: report.errors.push_back(std::move(res.error)); break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Errata

struct CRow {
  int k = 0;
  long long recursion = 0;
  long long witt_sum = 0;
  long long graph = 0;
};

struct ConstantRow {
  int r = 0, k = 0;
  std::string element;
  long long doubled = 0;
  std::string literature;           // published area, if any
  std::vector<long long> cross;     // doubled area of each weight-k word on this plane
};

struct ExampleAudit {
  std::string word;
  std::string closure;
  std::vector<std::string> planes;
  std::vector<long long> doubled_areas;
  std::vector<long long> doubled_constants;
  std::string geometric;
  std::string geometric_error;
  std::string oracle;
  std::string literature_tuple = "(8,10,5,4,1)";
  std::string literature_areas = "4 and 10";
  bool agree = false;
  std::pair<long long, long long> tail{0, 0};  // (t_b, t_a)
};

struct ErrataReport {
  int max_k = 0;
  std::vector<CRow> c_table;
  std::optional<int> first_divergence;
  std::vector<ConstantRow> constants;
  ExampleAudit example;
};

inline const std::vector<std::pair<int, int>>& audited_groups() {
  static const std::vector<std::pair<int, int>> groups{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}};
  return groups;
}

inline ErrataReport build_errata(int max_k) {
  if (max_k < 1 || max_k > 6) throw Error(ErrorKind::InvalidArgument, "errata max_k must lie in 1..6");
  ErrataReport rep;
  rep.max_k = max_k;
  for (int k = 1; k <= max_k; ++k) {
    CRow row{k, paper_c_recursion(2, k), c_sum(2, k), commutator_graph_size(2, k)};
    if (!rep.first_divergence && row.recursion != row.witt_sum) rep.first_divergence = k;
    rep.c_table.push_back(row);
  }

  for (auto [r, k] : audited_groups()) {
    auto& solver = geometric_solver(r, k);
    const auto& hb = solver.basis();
    auto [b, e] = hb.stratum(k);
    for (std::size_t i = b; i < e; ++i) {
      ConstantRow row{r, k, render(hb[i]), solver.constant(i), {}, {}};
      if (r == 2 && k == 3) row.literature = render(hb[i]) == "[[b,a],a]" ? "2 ([a,a,b])" : "1 ([b,a,b])";
      for (std::size_t j = b; j < e; ++j) {
        const Curve c = solver.draw_curve(commutator_word(hb[j]), k - 1);
        row.cross.push_back(doubled_area(solver.project(c, i)).doubled);
      }
      rep.constants.push_back(std::move(row));
    }
  }

  ExampleAudit& ex = rep.example;
  const Word w = parse_word("aabbAbABabb", Alphabet(2));
  auto& solver = geometric_solver(2, 3);
  ex.word = render(w);
  ex.closure = render(solver.closure(w, 3));
  const auto& hb = solver.basis();
  auto [b, e] = hb.stratum(3);
  const auto areas = solver.closure_areas(w, 3);
  for (std::size_t i = b; i < e; ++i) {
    ex.planes.push_back(render(hb[i]));
    ex.doubled_areas.push_back(areas[i - b].doubled);
    ex.doubled_constants.push_back(solver.constant(i));
  }
  const Coords oracle = oracle_coords(w, 2, 3);
  ex.oracle = render_tuple(oracle);
  ex.tail = {oracle[1], oracle[0]};
  const auto geo = detail::solve_geometric(w, 2, 3);
  if (geo.coords) {
    ex.geometric = render_tuple(*geo.coords);
    ex.agree = *geo.coords == oracle;
  } else {
    ex.geometric_error = geo.kind;
  }
  return rep;
}

inline Json errata_json(const ErrataReport& rep) {
  Json j;
  j["max_k"] = rep.max_k;
  Json rows = Json::array();
  for (const auto& row : rep.c_table)
    rows.push_back({{"k", row.k}, {"recursion", row.recursion}, {"witt_sum", row.witt_sum}, {"graph_size", row.graph}});
  j["c_table"] = rows;
  j["first_divergence"] = rep.first_divergence ? Json(*rep.first_divergence) : Json(nullptr);
  Json cs = Json::array();
  for (const auto& row : rep.constants)
    cs.push_back({{"r", row.r},
                  {"k", row.k},
                  {"element", row.element},
                  {"doubled_constant", row.doubled},
                  {"literature", row.literature},
                  {"cross_doubled_areas", row.cross}});
  j["constants"] = cs;
  const auto& ex = rep.example;
  j["example"] = {{"word", ex.word},
                  {"closure", ex.closure},
                  {"planes", ex.planes},
                  {"doubled_areas", ex.doubled_areas},
                  {"doubled_constants", ex.doubled_constants},
                  {"geometric", ex.geometric},
                  {"geometric_error", ex.geometric_error},
                  {"oracle", ex.oracle},
                  {"literature_tuple", ex.literature_tuple},
                  {"literature_areas", ex.literature_areas},
                  {"agree", ex.agree},
                  {"tail_b_a", {ex.tail.first, ex.tail.second}}};
  return j;
}

inline std::string errata_text(const ErrataReport& rep) {
  std::ostringstream os;
  os << "c(2,k): recursion (r+1)c(k-1) - r c(k-2) vs sum of Witt numbers vs commutator graph\n";
  os << "  k  recursion  witt_sum  graph\n";
  for (const auto& row : rep.c_table) {
    os << "  " << row.k << "  " << row.recursion << "  " << row.witt_sum << "  " << row.graph
       << (row.recursion != row.witt_sum ? "  <- differs" : "") << '\n';
  }
  os << "  first divergence: " << (rep.first_divergence ? std::to_string(*rep.first_divergence) : "none") << "\n\n";

  os << "Projection constants (doubled areas; cross = each top word on this plane)\n";
  for (const auto& row : rep.constants) {
    os << "  (" << row.r << ',' << row.k << ") " << row.element << "  C2=" << row.doubled << "  cross=[";
    for (std::size_t i = 0; i < row.cross.size(); ++i) os << (i ? "," : "") << row.cross[i];
    os << ']';
    if (!row.literature.empty()) os << "  published area " << row.literature;
    os << '\n';
  }
  os << '\n';

  const auto& ex = rep.example;
  os << "Worked example w = " << ex.word << " in N_{2,3}\n";
  os << "  closure: " << ex.closure << '\n';
  for (std::size_t i = 0; i < ex.planes.size(); ++i)
    os << "  plane " << ex.planes[i] << ": doubled area " << ex.doubled_areas[i] << ", doubled C "
       << ex.doubled_constants[i] << '\n';
  os << "  published areas: " << ex.literature_areas << '\n';
  os << "  geometric tuple: " << (ex.geometric.empty() ? "error " + ex.geometric_error : ex.geometric) << '\n';
  os << "  oracle tuple:    " << ex.oracle << '\n';
  os << "  published tuple: " << ex.literature_tuple << '\n';
  os << "  solvers " << (ex.agree ? "AGREE" : "DISAGREE") << "; abelian tail (t_b,t_a) = (" << ex.tail.first << ','
     << ex.tail.second << ")\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Loop export

// Closure of w at class k projected onto the plane of a weight-k element.
inline PlanarLoop closure_projection(const Word& w, int r, int k, const BasisElement& plane) {
  if (plane.weight() != k || k < 2)
    throw Error(ErrorKind::ClassMismatch, "plane " + render(plane) + " must have weight k >= 2");
  auto& solver = geometric_solver(r, k);
  const auto idx = solver.basis().index_of(plane);
  if (!idx) throw Error(ErrorKind::NotLeftNormed, render(plane) + " is not a basis element");
  return solver.project(solver.draw_curve(solver.closure(w, k), k - 1), *idx);
}

inline std::string loop_csv(const PlanarLoop& loop) {
  std::ostringstream os;
  for (const auto& p : loop.points) os << p.x << ',' << p.y << '\n';
  return os.str();
}

// One polyline, 40 units per lattice step, y pointing up, viewBox centred
// on the origin.
inline std::string loop_svg(const PlanarLoop& loop) {
  constexpr long long kUnit = 40;
  long long extent = 1;
  for (const auto& p : loop.points) extent = std::max({extent, std::llabs(p.x) + 1, std::llabs(p.y) + 1});
  const long long half = extent * kUnit;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -half << ' ' << -half << ' ' << 2 * half << ' '
     << 2 * half << "\">\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < loop.points.size(); ++i)
    os << (i ? " " : "") << loop.points[i].x * kUnit << ',' << -loop.points[i].y * kUnit;
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace nilgeo
