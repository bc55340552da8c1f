#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuglede/constructors.hpp"
#include "fuglede/group.hpp"

namespace fuglede {

/// Resource limits and reproducibility knobs for the search drivers.
struct SearchBudget {
  /// Exhaustive sweeps refuse groups larger than this.
  std::uint64_t max_group_order = 1ull << 10;
  /// Cap on enumeration positions scanned across a run; hitting it yields
  /// a partial report flagged incomplete.
  std::uint64_t max_subsets = std::numeric_limits<std::uint64_t>::max();
  unsigned worker_count = 1;
  std::uint64_t random_seed = 0;
  /// Sample size for randomized modes; 0 asks for exhaustive coverage.
  std::uint64_t sample_count = 10000;
};

struct SizeTally {
  std::uint64_t size = 0;
  /// Subsets decided (translation classes when canonical).
  std::uint64_t examined = 0;
  /// Sum of class orbit sizes; equals C(|G|, size) in canonical mode.
  std::uint64_t orbit_size_sum = 0;
  std::uint64_t spectral = 0;
  std::uint64_t tiles = 0;
};

/**
 * Aggregated outcome of a sweep.  All fields except wall_ms are
 * deterministic functions of (group, sizes, budget.random_seed,
 * budget.max_subsets), independent of worker count; wall_ms is excluded
 * from the content hash and from canonical serialization.
 */
struct Report {
  std::string group_text;
  std::string mode;  // "theorem", "exploration" or "spot-check"
  bool canonical = false;
  bool complete = true;
  std::uint64_t subsets_examined = 0;
  std::vector<SizeTally> per_size;
  std::vector<Decision> counterexamples;
  std::map<std::string, std::uint64_t> provenance;
  /// Spot-check only: sampled sets whose difference set missed an orbit.
  std::uint64_t coverage_violations = 0;
  double wall_ms = 0.0;
};

/**
 * Smallest spectrum for A by exhaustive search, or nullopt.  Candidate
 * spectra are normalized to contain 0 and grown in ascending index order
 * as cliques of the graph on G whose edges are the annihilated
 * differences, so the first hit is deterministic.  Empty A yields nullopt.
 */
std::optional<SubsetMask> brute_spectrum(const SubsetMask& a);

/**
 * First tiling complement for A by exact cover, or nullopt.  Branches on
 * the smallest uncovered element and tries covering translates in
 * ascending index order.  Nondivisor cardinalities return nullopt
 * immediately.
 */
std::optional<SubsetMask> brute_complement(const SubsetMask& a);

/// C(order, size) saturated at 2^62 (the saturation value only signals
/// "more than any budget"; exact values below it are exact).
std::uint64_t subset_count(const Group& g, std::uint64_t size);

/**
 * Streams the subsets of the given size in increasing bitmask order over
 * the rank window [rank_begin, rank_end); ranks are positions in that
 * order.  With canonical = true, only subsets that are the smallest
 * bitmask among their translates are passed on.  The callback returns
 * false to stop early.
 */
void enumerate_subsets(const Group& g, std::uint64_t size, bool canonical,
                       std::uint64_t rank_begin, std::uint64_t rank_end,
                       const std::function<bool(const SubsetMask&)>& fn);

/**
 * Sweeps the given sizes and decides every subset (or translation class).
 * On Z_{p^2} x Z_p this runs in theorem mode: any set that is spectral
 * but not a tile, or a tile but not spectral, is recorded as a
 * counterexample with its full re-verified Decision.  Other groups run in
 * exploration mode, where both properties are computed by brute force and
 * disagreements are reported as findings.  Work is split into contiguous
 * rank ranges across budget.worker_count threads; results are merged in
 * rank order, so the Report does not depend on the worker count.
 * csv_rows, when given, receives one row per examined subset.
 */
Report verify_conjecture(const Group& g, const std::vector<std::uint64_t>& sizes,
                         bool canonical, const SearchBudget& budget,
                         std::vector<std::string>* csv_rows = nullptr);

/**
 * Hunts for spectral sets with p^(n+m-1) < #A < p^(n+m).  Samples
 * budget.sample_count sets (exhaustive when sample_count = 0), discards
 * any whose zero set misses some direction (their candidate spectra would
 * need differences blanketing every orbit), and arbitrates survivors with
 * brute_spectrum.  Any spectral hit is recorded as a counterexample.
 */
Report spot_check_large_sets(const Group& g, const SearchBudget& budget);

/// FNV-1a hash of the canonical serialization (wall_ms excluded).
std::uint64_t report_hash(const Report& r);

}  // namespace fuglede
