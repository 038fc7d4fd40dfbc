#pragma once

// Command implementations behind tools/nilgeo. Each returns the process
// exit code and writes to the supplied stream, so tests can drive them
// without spawning a process.

#include <fstream>
#include <ostream>
#include <string>

#include "nilgeo/harness.hpp"

namespace nilgeo::cli {

enum Exit : int { kOk = 0, kUsage = 2, kUnsupported = 3, kDisagree = 4, kIo = 5 };

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownGenerator:
    case ErrorKind::MalformedExponent:
    case ErrorKind::InvalidArgument:
      return kUsage;
    case ErrorKind::NonDivisibleArea:
    case ErrorKind::NonIntegralSolve:
      return kDisagree;
    default:
      return kUnsupported;
  }
}

inline std::string format_coords(const Coords& g, const std::string& format) {
  if (format == "labeled") return render_labeled(g);
  if (format == "json") {
    Json j = Json::object();
    auto hb = hall_basis(g.rank(), g.cls());
    for (std::size_t i : detail::display_order(g.rank(), g.cls())) j[render((*hb)[i])] = g[i];
    return j.dump();
  }
  return render_tuple(g);
}

inline int cmd_coords(const std::string& text, int r, int k, const std::string& format, std::ostream& out) {
  const Word w = parse_word(text, Alphabet(r));
  (void)geometric_solver(r, k);
  const Coords oracle = oracle_coords(w, r, k);
  const auto geo = detail::solve_geometric(w, r, k);
  if (!geo.coords) {
    out << "geometric: error " << geo.message << '\n' << "oracle:    " << format_coords(oracle, format) << '\n'
        << "DISAGREE\n";
    return kDisagree;
  }
  const bool agree = *geo.coords == oracle;
  out << "geometric: " << format_coords(*geo.coords, format) << '\n'
      << "oracle:    " << format_coords(oracle, format) << '\n'
      << (agree ? "AGREE" : "DISAGREE") << '\n';
  return agree ? kOk : kDisagree;
}

inline int cmd_eq(const std::string& a, const std::string& b, int r, int k, std::ostream& out) {
  const Alphabet alphabet(r);
  const Word w = parse_word(a, alphabet);
  const Word v = parse_word(b, alphabet);
  (void)geometric_solver(r, k);
  const bool oracle = equal_oracle(w, v, r, k);
  const bool geometric = equal_geometric(w, v, r, k);
  out << (geometric ? "EQUAL" : "DISTINCT") << '\n' << "oracle: " << (oracle ? "EQUAL" : "DISTINCT") << '\n';
  return geometric == oracle ? kOk : kDisagree;
}

inline int cmd_project(const std::string& text, int r, int k, const std::string& plane_text, const std::string& path,
                       const std::string& format, std::ostream& out) {
  if (format != "csv" && format != "svg") throw Error(ErrorKind::InvalidArgument, "format must be csv or svg");
  const Alphabet alphabet(r);
  const Word w = parse_word(text, alphabet);
  const BasisElement plane = parse_basis_element(plane_text, alphabet);
  const PlanarLoop loop = closure_projection(w, r, k, plane);
  const std::string body = format == "csv" ? loop_csv(loop) : loop_svg(loop);
  if (path.empty() || path == "-") {
    out << body;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) return kIo;
    file << body;
    if (!file) return kIo;
  }
  return kOk;
}

inline int cmd_magnus(const std::string& text, int r, int k, std::ostream& out) {
  out << render(eval_word(parse_word(text, Alphabet(r)), r, k)) << '\n';
  return kOk;
}

inline int cmd_basis(int r, int k, std::ostream& out) {
  auto hb = hall_basis(r, k);
  for (int j = 1; j <= k; ++j) {
    auto [b, e] = hb->stratum(j);
    out << "weight " << j << ':';
    for (std::size_t i = b; i < e; ++i) out << ' ' << render((*hb)[i]);
    out << '\n';
  }
  out << "\n  j  witt  c_sum" << (r >= 2 ? "  recursion  graph" : "") << '\n';
  for (int j = 1; j <= k; ++j) {
    out << "  " << j << "  " << witt_delta(r, j) << "  " << c_sum(r, j);
    if (r >= 2) out << "  " << paper_c_recursion(r, j) << "  " << commutator_graph_size(r, j);
    out << '\n';
  }
  return kOk;
}

inline int cmd_verify(int r, int k, std::size_t trials, std::size_t max_len, std::uint64_t seed, const std::string& path,
                      std::ostream& out) {
  const VerificationReport report = run_verification(r, k, trials, max_len, seed);
  const std::string body = Json(report).dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << body;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) return kIo;
    file << body;
    if (!file) return kIo;
    out << "agreements " << report.agreements << '/' << report.trials << ", disagreements "
        << report.disagreements.size() << ", errors " << report.errors.size() << '\n';
  }
  return report.disagreements.empty() && report.errors.empty() ? kOk : kDisagree;
}

inline int cmd_errata(int max_k, bool json, std::ostream& out) {
  const ErrataReport rep = build_errata(max_k);
  out << (json ? errata_json(rep).dump(2) + "\n" : errata_text(rep));
  return kOk;
}

}  // namespace nilgeo::cli
