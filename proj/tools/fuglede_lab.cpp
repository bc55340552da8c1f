#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuglede/certificates.hpp"
#include "fuglede/constructors.hpp"
#include "fuglede/fourier.hpp"
#include "fuglede/group.hpp"
#include "fuglede/io.hpp"
#include "fuglede/search.hpp"

namespace {

namespace fg = fuglede;

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::uint64_t parse_number(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(trimmed(s), &used);
    if (used != trimmed(s).size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("expected a number for ") + what +
                                ", got '" + s + "'");
  }
}

fg::Group parse_group(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t at = 0;
  while (at <= text.size()) {
    std::size_t comma = text.find(',', at);
    if (comma == std::string::npos) comma = text.size();
    parts.push_back(text.substr(at, comma - at));
    at = comma + 1;
  }
  if (parts.size() != 3) {
    throw std::invalid_argument("group descriptor must be 'p,n,m', got '" +
                                text + "'");
  }
  return fg::Group(static_cast<std::uint32_t>(parse_number(parts[0], "p")),
                   static_cast<std::uint32_t>(parse_number(parts[1], "n")),
                   static_cast<std::uint32_t>(parse_number(parts[2], "m")));
}

// Set arguments accept the literal forms understood by parse_subset, or a
// path to a file with one element per line.
fg::SubsetMask load_set(const fg::Group& g, const std::string& text) {
  std::string s = trimmed(text);
  if (s.empty() || s == "{}" || s[0] == '(' || s.rfind("0x", 0) == 0 ||
      s.rfind("0X", 0) == 0) {
    return fg::parse_subset(g, s);
  }
  std::ifstream in(s);
  if (!in) {
    throw std::invalid_argument("set argument '" + text +
                                "' is neither a set literal nor a readable file");
  }
  fg::SubsetMask mask(g);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    mask.insert(fg::parse_elem(g, t));
  }
  return mask;
}

std::vector<std::uint64_t> parse_sizes(const std::string& text,
                                       std::uint64_t order) {
  std::vector<std::uint64_t> sizes;
  if (trimmed(text) == "all") {
    for (std::uint64_t s = 0; s <= order; ++s) sizes.push_back(s);
    return sizes;
  }
  std::size_t at = 0;
  while (at <= text.size()) {
    std::size_t comma = text.find(',', at);
    if (comma == std::string::npos) comma = text.size();
    std::string part = trimmed(text.substr(at, comma - at));
    if (!part.empty()) {
      std::uint64_t v = parse_number(part, "--sizes");
      if (v > order) {
        throw std::invalid_argument("size " + part + " exceeds the group order");
      }
      sizes.push_back(v);
    }
    at = comma + 1;
  }
  if (sizes.empty()) throw std::invalid_argument("--sizes lists no sizes");
  return sizes;
}

// User-facing coordinates of an element, respecting a swapped declaration.
std::pair<std::uint64_t, std::uint64_t> user_coords(const fg::Group& g,
                                                    fg::Elem e) {
  if (g.swapped()) return {e.d2, e.d1};
  return {e.d1, e.d2};
}

int cmd_zeros(const fg::Group& g, const std::string& set_text, bool audit,
              const std::string& format) {
  fg::SubsetMask a = load_set(g, set_text);
  fg::ZeroSet z = fg::zero_set(a);
  if (format == "json") {
    std::cout << fg::zero_set_json(z, audit).dump() << "\n";
  } else if (format == "plain") {
    for (const fg::Elem& d : z.directions()) {
      std::cout << fg::elem_text(g, d);
      if (audit) {
        std::printf(" %.3e", std::abs(fg::fourier_value_float(a, d)));
      }
      std::cout << "\n";
    }
  } else {
    std::cout << (audit ? "d1,d2,abs\n" : "d1,d2\n");
    for (const fg::Elem& d : z.directions()) {
      auto [u1, u2] = user_coords(g, d);
      std::cout << u1 << "," << u2;
      if (audit) {
        std::printf(",%.3e", std::abs(fg::fourier_value_float(a, d)));
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_check(const fg::Group& g, const std::string& kind,
              const std::string& set_text, const std::string& witness_text,
              const std::string& format) {
  fg::SubsetMask a = load_set(g, set_text);
  fg::SubsetMask b = load_set(g, witness_text);
  fg::PairVerdict v = kind == "spectral" ? fg::is_spectral_pair(a, b)
                                         : fg::is_tiling_pair(a, b);
  if (format == "json") {
    std::cout << fg::verdict_json(g, v).dump() << "\n";
  } else if (format == "plain") {
    std::cout << "kind: " << kind << "\n";
    std::cout << "holds: " << (v.holds ? "yes" : "no") << "\n";
    if (v.witness) std::cout << "witness: " << fg::elem_text(g, *v.witness) << "\n";
    if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
  } else {
    std::cout << "kind,holds,witness,note\n";
    std::cout << kind << "," << (v.holds ? 1 : 0) << ",\""
              << (v.witness ? fg::elem_text(g, *v.witness) : "") << "\",\""
              << v.note << "\"\n";
  }
  return v.holds ? 0 : 1;
}

int cmd_decide(const fg::Group& g, const std::string& set_text,
               const std::string& format) {
  fg::SubsetMask a = load_set(g, set_text);
  fg::Decision d = fg::decide(a);
  if (format == "json") {
    std::cout << fg::decision_json(d).dump() << "\n";
  } else if (format == "plain") {
    std::cout << "set: " << fg::subset_text(d.subset) << "\n";
    std::cout << "size: " << d.subset.size() << "\n";
    std::cout << "spectral: " << (d.is_spectral ? "yes" : "no") << " ("
              << d.spectral_provenance << ")\n";
    if (d.spectrum) std::cout << "spectrum: " << fg::subset_text(*d.spectrum) << "\n";
    std::cout << "tile: " << (d.is_tile ? "yes" : "no") << " ("
              << d.tile_provenance << ")\n";
    if (d.complement) {
      std::cout << "complement: " << fg::subset_text(*d.complement) << "\n";
    }
  } else {
    std::cout << fg::csv_header() << "\n" << fg::decision_csv_row(d) << "\n";
  }
  return 0;
}

int cmd_verify(const fg::Group& g, const std::string& sizes_text,
               bool canonical, const fg::SearchBudget& budget,
               const std::string& format) {
  std::vector<std::uint64_t> sizes = parse_sizes(sizes_text, g.order());
  std::vector<std::string> csv_rows;
  std::vector<std::string>* rows = format == "csv" ? &csv_rows : nullptr;

  auto start = std::chrono::steady_clock::now();
  fg::Report report = fg::verify_conjecture(g, sizes, canonical, budget, rows);
  auto stop = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  std::fprintf(stderr, "wall_ms=%.1f\n", report.wall_ms);

  if (format == "json") {
    std::cout << fg::report_json(report).dump() << "\n";
  } else if (format == "plain") {
    std::cout << "group: " << report.group_text << "\n";
    std::cout << "mode: " << report.mode << "\n";
    std::cout << "canonical: " << (report.canonical ? "yes" : "no") << "\n";
    std::cout << "complete: " << (report.complete ? "yes" : "no") << "\n";
    std::cout << "subsets examined: " << report.subsets_examined << "\n";
    for (const fg::SizeTally& t : report.per_size) {
      std::cout << "size " << t.size << ": examined " << t.examined
                << ", orbit sum " << t.orbit_size_sum << ", spectral "
                << t.spectral << ", tiles " << t.tiles << "\n";
    }
    std::cout << "counterexamples: " << report.counterexamples.size() << "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fg::report_hash(report)));
    std::cout << "content hash: " << buf << "\n";
  } else {
    std::cout << fg::csv_header() << "\n";
    for (const std::string& row : csv_rows) std::cout << row << "\n";
  }
  if (!report.counterexamples.empty()) return 1;
  if (!report.complete) return 3;
  return 0;
}

int cmd_orbits(const fg::Group& g, const std::string& format) {
  std::vector<fg::Elem> reps = fg::orbit_representatives(g);
  if (format == "json") {
    fg::ordered_json arr = fg::ordered_json::array();
    for (const fg::Elem& rep : reps) {
      fg::ordered_json row;
      row["rep"] = fg::elem_text(g, rep);
      row["orbit_size"] = fg::unit_orbit(g, rep).size();
      arr.push_back(row);
    }
    std::cout << arr.dump() << "\n";
  } else if (format == "plain") {
    for (const fg::Elem& rep : reps) {
      std::cout << fg::elem_text(g, rep) << " "
                << fg::unit_orbit(g, rep).size() << "\n";
    }
  } else {
    std::cout << "d1,d2,orbit_size\n";
    for (const fg::Elem& rep : reps) {
      auto [u1, u2] = user_coords(g, rep);
      std::cout << u1 << "," << u2 << "," << fg::unit_orbit(g, rep).size()
                << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sets and tiles in Z_{p^2} x Z_p, with certificates"};
  app.require_subcommand(1);

  std::string group_arg, set_arg, witness_arg, kind_arg, sizes_arg = "all";
  std::string format_arg = "json";
  bool float_check = false, canonical = false;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_subsets = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_group_order = 1ull << 10;

  auto add_common = [&](CLI::App* sub, bool with_set) {
    sub->add_option("--group", group_arg, "Group as p,n,m (e.g. 3,2,1)")
        ->required();
    if (with_set) {
      sub->add_option("--set", set_arg,
                      "Set: element list \"(0,0),(1,2)\", hex mask 0x1a3, "
                      "{} for empty, or a file with one element per line")
          ->required();
    }
    sub->add_option("--format", format_arg, "Output format")
        ->check(CLI::IsMember({"json", "plain", "csv"}));
  };

  CLI::App* zeros = app.add_subcommand(
      "zeros", "Print the directions annihilated by a set");
  add_common(zeros, true);
  zeros->add_flag("--float-check", float_check,
                  "Audit each zero with the floating-point oracle");

  CLI::App* check = app.add_subcommand(
      "check", "Verify a (set, witness) pair as spectral or tiling");
  add_common(check, true);
  check->add_option("--kind", kind_arg, "Pair kind")
      ->required()
      ->check(CLI::IsMember({"spectral", "tiling"}));
  check->add_option("--witness", witness_arg, "Candidate spectrum or complement")
      ->required();

  CLI::App* decide = app.add_subcommand(
      "decide", "Decide spectrality and tiling, with witnesses");
  add_common(decide, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "Sweep subset sizes and verify spectral <=> tile");
  add_common(verify, false);
  verify->add_option("--sizes", sizes_arg, "Comma list of sizes, or 'all'");
  verify->add_flag("--canonical", canonical,
                   "Decide one representative per translation class");
  verify->add_option("--workers", workers, "Worker thread count")
      ->envname("FUGLEDE_LAB_WORKERS");
  verify->add_option("--seed", seed, "Seed for randomized modes");
  verify->add_option("--max-subsets", max_subsets,
                     "Stop after this many enumeration positions");
  verify->add_option("--max-group-order", max_group_order,
                     "Refuse groups larger than this");

  CLI::App* orbits = app.add_subcommand(
      "orbits", "Print unit-orbit representatives and orbit sizes");
  add_common(orbits, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    fg::Group g = parse_group(group_arg);
    if (app.got_subcommand(zeros)) {
      return cmd_zeros(g, set_arg, float_check, format_arg);
    }
    if (app.got_subcommand(check)) {
      return cmd_check(g, kind_arg, set_arg, witness_arg, format_arg);
    }
    if (app.got_subcommand(decide)) {
      return cmd_decide(g, set_arg, format_arg);
    }
    if (app.got_subcommand(verify)) {
      fg::SearchBudget budget;
      budget.max_group_order = max_group_order;
      budget.max_subsets = max_subsets;
      budget.worker_count = workers;
      budget.random_seed = seed;
      return cmd_verify(g, sizes_arg, canonical, budget, format_arg);
    }
    return cmd_orbits(g, format_arg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
