#include "fuglede/search.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fuglede/certificates.hpp"
#include "fuglede/fourier.hpp"
#include "fuglede/io.hpp"
#include "detail.hpp"

namespace fuglede {

namespace {

constexpr std::uint64_t kCountCap = std::uint64_t(1) << 62;

std::uint64_t binom_capped(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc >= kCountCap) return kCountCap;
  }
  return static_cast<std::uint64_t>(acc);
}

// Positions of the rank-th size-k subset of [0, order) in increasing
// bitmask order (the colex order on position sets): the rank decomposes
// as the sum of C(pos[i], i + 1).
std::vector<std::uint64_t> unrank_positions(std::uint64_t order,
                                            std::uint64_t k,
                                            std::uint64_t rank) {
  std::vector<std::uint64_t> pos(k);
  for (std::uint64_t i = k; i >= 1; --i) {
    std::uint64_t lo = i - 1, hi = order - 1;
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (binom_capped(mid, i) <= rank) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    pos[i - 1] = lo;
    rank -= binom_capped(lo, i);
  }
  return pos;
}

// Advances a sorted position vector (and its mask) to the next subset in
// increasing bitmask order: the lowest run of consecutive positions is
// replaced by its length-minus-one prefix at the bottom plus one position
// just above the run.
bool advance_combination(std::vector<std::uint64_t>& pos, SubsetMask& mask,
                         std::uint64_t order) {
  const std::size_t k = pos.size();
  if (k == 0) return false;
  std::size_t r = 1;
  while (r < k && pos[r] == pos[0] + r) ++r;
  std::uint64_t top = pos[0] + r;
  if (r == k && top >= order) return false;
  for (std::size_t i = 0; i < r; ++i) mask.erase_index(pos[i]);
  for (std::size_t i = 0; i + 1 < r; ++i) {
    pos[i] = i;
    mask.insert_index(i);
  }
  pos[r - 1] = top;
  mask.insert_index(top);
  return true;
}

// index_of(element_at(i) - element_at(t)), precomputed for small groups.
class TranslationTable {
 public:
  explicit TranslationTable(const Group& g) : g_(g), order_(g.order()) {
    if (order_ <= 1024) {
      table_.resize(order_ * order_);
      for (std::uint64_t t = 0; t < order_; ++t) {
        Elem shift = g.element_at(t);
        for (std::uint64_t i = 0; i < order_; ++i) {
          table_[t * order_ + i] = g.index_of(g.sub(g.element_at(i), shift));
        }
      }
    }
  }

  std::uint64_t shifted(std::uint64_t t, std::uint64_t i) const {
    if (!table_.empty()) return table_[t * order_ + i];
    return g_.index_of(g_.sub(g_.element_at(i), g_.element_at(t)));
  }

 private:
  Group g_;
  std::uint64_t order_;
  std::vector<std::uint64_t> table_;
};

// Orbit size when `a` is the smallest bitmask among its translates,
// nullopt otherwise.  Translates are compared lazily from the top bit
// down, so rejected masks usually cost a handful of probes.
std::optional<std::uint64_t> canonical_orbit_size(const SubsetMask& a,
                                                  const TranslationTable& tt) {
  const std::uint64_t order = a.group().order();
  std::uint64_t stabilizer = 0;
  for (std::uint64_t t = 0; t < order; ++t) {
    int cmp = 0;
    for (std::uint64_t i = order; i-- > 0;) {
      bool own = a.test(i);
      bool moved = a.test(tt.shifted(t, i));
      if (own != moved) {
        cmp = own ? 1 : -1;
        break;
      }
    }
    if (cmp > 0) return std::nullopt;
    if (cmp == 0) ++stabilizer;
  }
  return order / stabilizer;
}

Decision explore(const SubsetMask& a) {
  Decision dec(a);
  if (a.empty()) {
    dec.spectral_provenance = "empty-set";
    dec.tile_provenance = "empty-set";
    return dec;
  }
  if (auto b = brute_spectrum(a)) {
    dec.is_spectral = true;
    dec.spectrum = std::move(*b);
    dec.spectral_provenance = "brute";
  } else {
    dec.spectral_provenance = "exhausted";
  }
  if (auto b = brute_complement(a)) {
    dec.is_tile = true;
    dec.complement = std::move(*b);
    dec.tile_provenance = "brute";
  } else {
    dec.tile_provenance = "exhausted";
  }
  return dec;
}

struct WorkerOut {
  std::uint64_t examined = 0;
  std::uint64_t orbit_sum = 0;
  std::uint64_t spectral = 0;
  std::uint64_t tiles = 0;
  std::uint64_t coverage_violations = 0;
  std::vector<Decision> counterexamples;
  std::map<std::string, std::uint64_t> provenance;
  std::vector<std::string> csv;
  std::exception_ptr error;
};

// Contiguous [begin, end) windows that partition [0, total) evenly.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_windows(
    std::uint64_t total, unsigned workers) {
  if (workers == 0) workers = 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> windows(workers);
  std::uint64_t chunk = total / workers, rem = total % workers;
  std::uint64_t at = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t len = chunk + (w < rem ? 1 : 0);
    windows[w] = {at, at + len};
    at += len;
  }
  return windows;
}

void merge_outputs(Report& report, SizeTally& tally,
                   std::vector<WorkerOut>& outs,
                   std::vector<std::string>* csv_rows) {
  for (WorkerOut& out : outs) {
    if (out.error) std::rethrow_exception(out.error);
    tally.examined += out.examined;
    tally.orbit_size_sum += out.orbit_sum;
    tally.spectral += out.spectral;
    tally.tiles += out.tiles;
    report.coverage_violations += out.coverage_violations;
    for (Decision& d : out.counterexamples) {
      report.counterexamples.push_back(std::move(d));
    }
    for (const auto& [tag, count] : out.provenance) {
      report.provenance[tag] += count;
    }
    if (csv_rows) {
      for (std::string& row : out.csv) csv_rows->push_back(std::move(row));
    }
  }
}

}  // namespace

namespace detail {

void exact_cover_enumerate(const SubsetMask& a,
                           const std::function<bool(const SubsetMask&)>& emit) {
  const Group& g = a.group();
  const std::uint64_t order = g.order();
  if (a.empty() || order % a.size() != 0) return;
  std::vector<Elem> elems = a.elements();
  SubsetMask covered(g);
  SubsetMask chosen(g);
  bool stop = false;

  std::function<void()> dfs = [&]() {
    if (stop) return;
    if (covered.size() == order) {
      if (!emit(chosen)) stop = true;
      return;
    }
    std::uint64_t target = 0;
    while (covered.test(target)) ++target;
    Elem goal = g.element_at(target);
    std::vector<std::uint64_t> shifts;
    shifts.reserve(elems.size());
    for (const Elem& e : elems) shifts.push_back(g.index_of(g.sub(goal, e)));
    std::sort(shifts.begin(), shifts.end());
    for (std::uint64_t shift_index : shifts) {
      if (stop) return;
      SubsetMask moved = translate(a, g.element_at(shift_index));
      if (moved.intersects(covered)) continue;
      SubsetMask saved = covered;
      covered |= moved;
      chosen.insert_index(shift_index);
      dfs();
      chosen.erase_index(shift_index);
      covered = saved;
    }
  };
  dfs();
}

std::optional<SubsetMask> brute_spectrum_within(const SubsetMask& a,
                                                const SubsetMask& candidates) {
  const Group& g = a.group();
  if (a.empty()) return std::nullopt;
  if (!candidates.test(0)) {
    throw std::invalid_argument("brute_spectrum_within: candidates must contain 0");
  }
  const std::uint64_t k = a.size();
  if (k == 1) {
    SubsetMask b(g);
    b.insert_index(0);
    return b;
  }

  ZeroSet z = zero_set(a);
  // Only elements whose difference with 0 is annihilated can join; zero
  // sets are unions of unit orbits, hence symmetric under negation.
  std::vector<std::uint64_t> pool;
  candidates.for_each_index([&](std::uint64_t i) {
    if (i != 0 && z.contains(g.element_at(i))) pool.push_back(i);
  });
  if (pool.size() + 1 < k) return std::nullopt;

  std::vector<std::uint64_t> chosen{0};
  std::optional<SubsetMask> result;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (result) return;
    if (chosen.size() == k) {
      SubsetMask b(g);
      for (std::uint64_t i : chosen) b.insert_index(i);
      result = std::move(b);
      return;
    }
    const std::uint64_t need = k - chosen.size();
    for (std::size_t at = start; at + need <= pool.size(); ++at) {
      Elem cand = g.element_at(pool[at]);
      bool ok = true;
      for (std::size_t c = 1; c < chosen.size(); ++c) {
        if (!z.contains(g.sub(cand, g.element_at(chosen[c])))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        chosen.push_back(pool[at]);
        grow(at + 1);
        chosen.pop_back();
        if (result) return;
      }
    }
  };
  grow(0);
  return result;
}

}  // namespace detail

std::optional<SubsetMask> brute_spectrum(const SubsetMask& a) {
  if (a.empty()) return std::nullopt;
  return detail::brute_spectrum_within(a, SubsetMask::full(a.group()));
}

std::optional<SubsetMask> brute_complement(const SubsetMask& a) {
  if (a.empty()) return std::nullopt;
  if (a.group().order() % a.size() != 0) return std::nullopt;
  std::optional<SubsetMask> found;
  detail::exact_cover_enumerate(a, [&](const SubsetMask& t) {
    found = t;
    return false;
  });
  return found;
}

std::uint64_t subset_count(const Group& g, std::uint64_t size) {
  return binom_capped(g.order(), size);
}

void enumerate_subsets(const Group& g, std::uint64_t size, bool canonical,
                       std::uint64_t rank_begin, std::uint64_t rank_end,
                       const std::function<bool(const SubsetMask&)>& fn) {
  const std::uint64_t order = g.order();
  if (size > order) return;
  const std::uint64_t total = subset_count(g, size);
  if (rank_end > total) rank_end = total;
  if (rank_begin >= rank_end) return;

  std::optional<TranslationTable> table;
  if (canonical) table.emplace(g);
  std::vector<std::uint64_t> pos = unrank_positions(order, size, rank_begin);
  SubsetMask mask(g);
  for (std::uint64_t i : pos) mask.insert_index(i);

  for (std::uint64_t rank = rank_begin;;) {
    if (!canonical || canonical_orbit_size(mask, *table)) {
      if (!fn(mask)) return;
    }
    if (++rank >= rank_end) return;
    advance_combination(pos, mask, order);
  }
}

Report verify_conjecture(const Group& g, const std::vector<std::uint64_t>& sizes,
                         bool canonical, const SearchBudget& budget,
                         std::vector<std::string>* csv_rows) {
  if (g.order() > budget.max_group_order) {
    throw std::invalid_argument("verify_conjecture: group order exceeds the budget");
  }
  const bool theorem = g.n() == 2 && g.m() == 1;
  Report report;
  report.group_text = group_text(g);
  report.mode = theorem ? "theorem" : "exploration";
  report.canonical = canonical;

  const TranslationTable table(g);
  std::uint64_t remaining = budget.max_subsets;

  for (std::uint64_t size : sizes) {
    SizeTally tally;
    tally.size = size;
    const std::uint64_t total = subset_count(g, size);
    const std::uint64_t positions = std::min(total, remaining);
    remaining -= positions;
    if (positions < total) report.complete = false;
    report.subsets_examined += positions;

    auto windows = split_windows(positions, budget.worker_count);
    std::vector<WorkerOut> outs(windows.size());
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      threads.emplace_back([&, w] {
        WorkerOut& out = outs[w];
        try {
          enumerate_subsets(g, size, false, windows[w].first, windows[w].second,
                            [&](const SubsetMask& mask) {
            std::uint64_t weight = 1;
            if (canonical) {
              auto orbit = canonical_orbit_size(mask, table);
              if (!orbit) return true;
              weight = *orbit;
            }
            Decision d = theorem ? decide(mask) : explore(mask);
            ++out.examined;
            out.orbit_sum += weight;
            if (d.is_spectral) ++out.spectral;
            if (d.is_tile) ++out.tiles;
            ++out.provenance["spectral:" + d.spectral_provenance];
            ++out.provenance["tile:" + d.tile_provenance];
            if (csv_rows) out.csv.push_back(decision_csv_row(d));
            if (d.is_spectral != d.is_tile) {
              out.counterexamples.push_back(std::move(d));
            }
            return true;
          });
        } catch (...) {
          out.error = std::current_exception();
        }
      });
    }
    for (std::thread& t : threads) t.join();
    merge_outputs(report, tally, outs, csv_rows);
    report.per_size.push_back(tally);
  }
  return report;
}

Report spot_check_large_sets(const Group& g, const SearchBudget& budget) {
  if (g.order() > budget.max_group_order) {
    throw std::invalid_argument("spot_check_large_sets: group order exceeds the budget");
  }
  const std::uint64_t order = g.order();
  const std::uint64_t lo = order / g.p();  // p^(n+m-1)
  Report report;
  report.group_text = group_text(g);
  report.mode = "spot-check";

  std::vector<std::uint64_t> window_sizes;
  for (std::uint64_t s = lo + 1; s < order; ++s) window_sizes.push_back(s);

  const std::vector<Elem> reps = orbit_representatives(g);
  auto process = [&](const SubsetMask& mask, WorkerOut& out) {
    ++out.examined;
    ++out.orbit_sum;
    bool blanket = true;
    for (const Elem& rep : reps) {
      if (!is_zero(mask, rep)) {
        blanket = false;
        break;
      }
    }
    if (!blanket) {
      // A spectrum of this size would need differences meeting every
      // orbit, so a zero set that misses one rules the set out at once.
      ++out.provenance["spectral:size-window"];
    } else if (auto b = detail::brute_spectrum_within(mask, SubsetMask::full(g))) {
      ++out.spectral;
      ++out.provenance["spectral:brute"];
      Decision d(mask);
      d.is_spectral = true;
      d.spectrum = std::move(*b);
      d.spectral_provenance = "brute";
      d.tile_provenance = "cardinality";
      out.counterexamples.push_back(std::move(d));
    } else {
      ++out.provenance["spectral:exhausted"];
    }
    if (direction_coverage(mask)) ++out.coverage_violations;
  };

  if (budget.sample_count == 0) {
    std::uint64_t remaining = budget.max_subsets;
    for (std::uint64_t size : window_sizes) {
      SizeTally tally;
      tally.size = size;
      const std::uint64_t total = subset_count(g, size);
      const std::uint64_t positions = std::min(total, remaining);
      remaining -= positions;
      if (positions < total) report.complete = false;
      report.subsets_examined += positions;

      auto windows = split_windows(positions, budget.worker_count);
      std::vector<WorkerOut> outs(windows.size());
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < windows.size(); ++w) {
        threads.emplace_back([&, w, size] {
          try {
            enumerate_subsets(g, size, false, windows[w].first,
                              windows[w].second, [&](const SubsetMask& mask) {
              process(mask, outs[w]);
              return true;
            });
          } catch (...) {
            outs[w].error = std::current_exception();
          }
        });
      }
      for (std::thread& t : threads) t.join();
      merge_outputs(report, tally, outs, nullptr);
      report.per_size.push_back(tally);
    }
    return report;
  }

  // Sampled mode: the sample stream depends only on the seed, so it is
  // generated up front and the workers take contiguous slices of it.
  std::uint64_t samples_wanted = budget.sample_count;
  if (samples_wanted > budget.max_subsets) {
    samples_wanted = budget.max_subsets;
    report.complete = false;
  }
  std::mt19937_64 rng(budget.random_seed);
  std::vector<SubsetMask> samples;
  samples.reserve(samples_wanted);
  for (std::uint64_t i = 0; i < samples_wanted; ++i) {
    std::uint64_t size = window_sizes[rng() % window_sizes.size()];
    SubsetMask mask(g);
    // Floyd's sampler: uniform over size-subsets, one RNG draw per element.
    for (std::uint64_t j = order - size; j < order; ++j) {
      std::uint64_t t = rng() % (j + 1);
      if (mask.test(t)) {
        mask.insert_index(j);
      } else {
        mask.insert_index(t);
      }
    }
    samples.push_back(std::move(mask));
  }
  report.subsets_examined = samples_wanted;

  auto windows = split_windows(samples_wanted, budget.worker_count);
  std::vector<WorkerOut> outs(windows.size());
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::uint64_t i = windows[w].first; i < windows[w].second; ++i) {
          process(samples[i], outs[w]);
        }
      } catch (...) {
        outs[w].error = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();

  std::map<std::uint64_t, SizeTally> by_size;
  for (std::uint64_t s : window_sizes) {
    by_size[s].size = s;
  }
  for (std::size_t w = 0; w < outs.size(); ++w) {
    if (outs[w].error) std::rethrow_exception(outs[w].error);
    for (std::uint64_t i = windows[w].first; i < windows[w].second; ++i) {
      SizeTally& tally = by_size[samples[i].size()];
      ++tally.examined;
      ++tally.orbit_size_sum;
    }
    for (const Decision& d : outs[w].counterexamples) {
      by_size[d.subset.size()].spectral += 1;
    }
    report.coverage_violations += outs[w].coverage_violations;
    for (const auto& [tag, count] : outs[w].provenance) {
      report.provenance[tag] += count;
    }
    for (Decision& d : outs[w].counterexamples) {
      report.counterexamples.push_back(std::move(d));
    }
  }
  for (auto& [s, tally] : by_size) report.per_size.push_back(tally);
  return report;
}

}  // namespace fuglede
