#include "fuglede/constructors.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuglede/certificates.hpp"
#include "fuglede/fourier.hpp"
#include "fuglede/search.hpp"
#include "detail.hpp"

namespace fuglede {

namespace {

void require_shape(const Group& g, const char* who) {
  if (g.n() != 2 || g.m() != 1) {
    throw std::invalid_argument(std::string(who) +
                                ": requires a group of shape (p, 2, 1)");
  }
}

// Zero-set membership of every orbit representative: (0,1), then (1,c) and
// (p,c) for c in [0,p).  Because the zero set is a union of unit orbits,
// these flags determine it completely.
struct RepFlags {
  bool axis = false;
  std::vector<char> unit;
  std::vector<char> ppart;

  bool any() const {
    if (axis) return true;
    for (char f : unit)
      if (f) return true;
    for (char f : ppart)
      if (f) return true;
    return false;
  }
};

RepFlags rep_flags(const SubsetMask& a) {
  const Group& g = a.group();
  const std::uint32_t p = g.p();
  RepFlags flags;
  flags.axis = is_zero(a, g.element(0, 1));
  flags.unit.resize(p);
  flags.ppart.resize(p);
  for (std::uint32_t c = 0; c < p; ++c) {
    flags.unit[c] = is_zero(a, g.element(1, c)) ? 1 : 0;
    flags.ppart[c] = is_zero(a, g.element(p, c)) ? 1 : 0;
  }
  return flags;
}

bool all_unit(const RepFlags& flags) {
  for (char f : flags.unit)
    if (!f) return false;
  return true;
}

bool all_ppart(const RepFlags& flags) {
  for (char f : flags.ppart)
    if (!f) return false;
  return true;
}

// Annihilator of a subgroup: every direction pairing to zero with all of it.
SubsetMask annihilator(const Group& g, const SubsetMask& h) {
  SubsetMask result(g);
  for (std::uint64_t i = 0; i < g.order(); ++i) {
    Elem d = g.element_at(i);
    bool kills = true;
    h.for_each_index([&](std::uint64_t j) {
      if (g.inner(d, g.element_at(j)) != 0) kills = false;
    });
    if (kills) result.insert_index(i);
  }
  return result;
}

// Greedy transversal of the cosets of `sub`: the smallest index in each
// coset, collected in ascending order.  Always contains 0.
SubsetMask coset_transversal(const Group& g, const SubsetMask& sub) {
  SubsetMask seen(g);
  SubsetMask result(g);
  for (std::uint64_t i = 0; i < g.order(); ++i) {
    if (seen.test(i)) continue;
    result.insert_index(i);
    Elem rep = g.element_at(i);
    sub.for_each_index([&](std::uint64_t j) {
      seen.insert(g.add(rep, g.element_at(j)));
    });
  }
  return result;
}

}  // namespace

std::optional<std::uint32_t> graph_form_detect(const SubsetMask& b) {
  require_shape(b.group(), "graph_form_detect");
  if (b.empty()) throw std::invalid_argument("graph_form_detect: empty set");
  const Group& g = b.group();
  const std::uint32_t p = g.p();
  if (!is_zero(b, g.element(p, 0))) return std::nullopt;
  for (std::uint32_t c = 0; c < p; ++c) {
    if (is_zero(b, g.element(1, c))) return c;
  }
  return std::nullopt;
}

std::optional<GraphForm> graph_form_extract(const SubsetMask& b,
                                            std::uint32_t c) {
  require_shape(b.group(), "graph_form_extract");
  const Group& g = b.group();
  const std::uint32_t p = g.p();
  if (c >= p) throw std::invalid_argument("graph_form_extract: c out of range");
  if (b.size() != static_cast<std::uint64_t>(p) * p) return std::nullopt;

  GraphForm form;
  form.c = c;
  form.table.assign(p, std::vector<Elem>(p));
  std::vector<std::vector<char>> filled(p, std::vector<char>(p, 0));
  bool ok = true;
  b.for_each_index([&](std::uint64_t idx) {
    if (!ok) return;
    Elem e = g.element_at(idx);
    std::uint32_t i = e.d1 % p;
    std::uint32_t y = e.d1 / p;
    std::uint32_t j = (y + c * e.d2) % p;
    if (filled[i][j]) {
      ok = false;
      return;
    }
    filled[i][j] = 1;
    form.table[i][j] = e;
  });
  if (!ok) return std::nullopt;
  return form;
}

SubsetMask graph_form_spectrum(const Group& g, std::uint32_t c) {
  require_shape(g, "graph_form_spectrum");
  const std::uint32_t p = g.p();
  if (c >= p) throw std::invalid_argument("graph_form_spectrum: c out of range");
  SubsetMask b(g);
  for (std::uint32_t i = 0; i < p; ++i) {
    for (std::uint32_t j = 0; j < p; ++j) {
      b.insert(g.element(j + static_cast<std::uint64_t>(p) * i,
                         static_cast<std::uint64_t>(c) * j % p));
    }
  }
  return b;
}

SubsetMask graph_form_complement(const SubsetMask& b, std::uint32_t c) {
  require_shape(b.group(), "graph_form_complement");
  auto form = graph_form_extract(b, c);
  if (!form) {
    throw std::invalid_argument("graph_form_complement: set is not in graph form");
  }
  const Group& g = b.group();
  const std::uint32_t p = g.p();

  // The column i = 0 of the class table, read as a subset of Z_p x Z_p.
  Group plane(p, 1, 1);
  SubsetMask omega(plane);
  for (std::uint32_t j = 0; j < p; ++j) {
    Elem e = form->table[0][j];
    omega.insert(plane.element(e.d1 / p, e.d2));
  }

  // Each tiling complement of the column lifts to a candidate; the first
  // lift that tiles with b wins.  The fiber {(y,z): y + cz = 0} is always
  // among the candidates and always lifts, so the loop terminates.
  std::optional<SubsetMask> found;
  detail::exact_cover_enumerate(omega, [&](const SubsetMask& t) {
    SubsetMask lift(g);
    t.for_each_index([&](std::uint64_t idx) {
      Elem e = plane.element_at(idx);
      lift.insert(g.element(static_cast<std::uint64_t>(p) * e.d1, e.d2));
    });
    if (is_tiling_pair(b, lift).holds) {
      found = std::move(lift);
      return false;
    }
    return true;
  });
  if (!found) {
    throw std::logic_error("graph_form_complement: no lifted section tiles");
  }
  return *found;
}

SubsetMask spectrum_for_size_p(const SubsetMask& a, Elem d) {
  require_shape(a.group(), "spectrum_for_size_p");
  const Group& g = a.group();
  if (a.size() != g.p()) {
    throw std::invalid_argument("spectrum_for_size_p: set size must be p");
  }
  if (!is_zero(a, d)) {
    throw std::invalid_argument("spectrum_for_size_p: direction is not annihilated");
  }
  SubsetMask b(g);
  for (std::uint32_t r = 0; r < g.p(); ++r) b.insert(g.scalar_mul(r, d));
  return b;
}

std::optional<SubsetMask> zp_square_complement(const SubsetMask& omega) {
  const Group& g = omega.group();
  if (g.n() != 1 || g.m() != 1) {
    throw std::invalid_argument("zp_square_complement: requires shape (p, 1, 1)");
  }
  if (g.p() > 13) {
    throw std::invalid_argument("zp_square_complement: p must be at most 13");
  }
  if (omega.empty()) {
    throw std::invalid_argument("zp_square_complement: empty set");
  }
  if (g.order() % omega.size() != 0) return std::nullopt;

  std::optional<SubsetMask> found;
  detail::exact_cover_enumerate(omega, [&](const SubsetMask& t) {
    found = t;
    return false;
  });
  return found;
}

std::pair<SubsetMask, std::string> tiling_complement_for_size_p(
    const SubsetMask& a) {
  require_shape(a.group(), "tiling_complement_for_size_p");
  const Group& g = a.group();
  const std::uint32_t p = g.p();
  if (a.size() != p) {
    throw std::invalid_argument("tiling_complement_for_size_p: set size must be p");
  }
  RepFlags flags = rep_flags(a);
  if (!flags.any()) {
    throw std::invalid_argument(
        "tiling_complement_for_size_p: set has no vanishing directions");
  }

  SubsetMask b(g);
  std::string tag;
  if (flags.axis) {
    // (0,1) vanishes: the last coordinates are distinct, so the full
    // first-coordinate axis tiles.
    for (std::uint64_t x = 0; x < g.q1(); ++x) b.insert(g.element(x, 0));
    tag = "x-axis";
  } else if (std::find(flags.unit.begin(), flags.unit.end(), char(1)) !=
             flags.unit.end()) {
    std::uint32_t c = 0;
    while (!flags.unit[c]) ++c;
    // (1,c) vanishes: all first coordinates agree mod p, and the digit
    // pairs (y_i, z_i) form a section of (y,z) -> y + cz.  Any tiling
    // complement of that section in Z_p x Z_p lifts, because adding x < p
    // to x0 + p y never carries differently within one residue class.
    std::uint32_t x0 = 0;
    bool first = true;
    Group plane(p, 1, 1);
    SubsetMask section(plane);
    a.for_each_index([&](std::uint64_t idx) {
      Elem e = g.element_at(idx);
      if (first) {
        x0 = e.d1 % p;
        first = false;
      } else if (e.d1 % p != x0) {
        throw std::logic_error(
            "tiling_complement_for_size_p: residues disagree under a unit zero");
      }
      section.insert(plane.element(e.d1 / p, e.d2));
    });
    auto t = zp_square_complement(section);
    if (!t) {
      throw std::logic_error(
          "tiling_complement_for_size_p: section has no plane complement");
    }
    t->for_each_index([&](std::uint64_t idx) {
      Elem e = plane.element_at(idx);
      for (std::uint32_t x = 0; x < p; ++x) {
        b.insert(g.element(x + static_cast<std::uint64_t>(p) * e.d1, e.d2));
      }
    });
    tag = "plane-lift";
  } else {
    std::uint32_t c = 0;
    for (std::uint32_t cand = 1; cand < p; ++cand) {
      if (flags.ppart[cand]) {
        c = cand;
        break;
      }
    }
    if (c != 0) {
      // (p,c) vanishes with c a unit: a skewed plane tiles.  Its zero set
      // misses exactly the orbit of (p, gamma^{-1}), so the skew must use
      // gamma = c^{-1} for the union with the orbit of (p,c) to cover
      // everything.
      std::uint32_t gamma = detail::mod_inverse(c, p);
      std::uint32_t slope = (p - gamma) % p;
      for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t y = 0; y < p; ++y) {
          b.insert(g.element(x + static_cast<std::uint64_t>(p) * y,
                             static_cast<std::uint64_t>(slope) * x % p));
        }
      }
      tag = "skew-plane";
    } else {
      // Only (p,0) vanishes: the subgroup pZ_{p^2} x Z_p tiles.
      for (std::uint32_t y = 0; y < p; ++y) {
        for (std::uint32_t z = 0; z < p; ++z) {
          b.insert(g.element(static_cast<std::uint64_t>(p) * y, z));
        }
      }
      tag = "p-plane";
    }
  }

  PairVerdict v = is_tiling_pair(a, b);
  if (!v.holds) {
    std::fprintf(stderr,
                 "tiling_complement_for_size_p: %s construction failed "
                 "verification, falling back to search\n",
                 tag.c_str());
    auto fallback = brute_complement(a);
    if (!fallback) {
      throw std::logic_error(
          "tiling_complement_for_size_p: no complement exists");
    }
    return {std::move(*fallback), tag + "-flagged"};
  }
  return {std::move(b), std::move(tag)};
}

namespace {

bool adopt_spectrum(Decision& dec, SubsetMask b, std::string tag) {
  PairVerdict v = is_spectral_pair(dec.subset, b);
  if (!v.holds) {
    std::fprintf(stderr,
                 "decide: %s spectrum failed verification, falling back\n",
                 tag.c_str());
    return false;
  }
  dec.is_spectral = true;
  dec.spectrum = std::move(b);
  dec.spectral_provenance = std::move(tag);
  return true;
}

bool adopt_complement(Decision& dec, SubsetMask b, std::string tag) {
  PairVerdict v = is_tiling_pair(dec.subset, b);
  if (!v.holds) {
    std::fprintf(stderr,
                 "decide: %s complement failed verification, falling back\n",
                 tag.c_str());
    return false;
  }
  dec.is_tile = true;
  dec.complement = std::move(b);
  dec.tile_provenance = std::move(tag);
  return true;
}

void brute_spectrum_into(Decision& dec, const SubsetMask& candidates,
                         const std::string& found_tag) {
  auto b = detail::brute_spectrum_within(dec.subset, candidates);
  if (b && adopt_spectrum(dec, std::move(*b), found_tag)) return;
  dec.is_spectral = false;
  dec.spectral_provenance = "exhausted";
}

void brute_complement_into(Decision& dec) {
  auto b = brute_complement(dec.subset);
  if (b && adopt_complement(dec, std::move(*b), "brute")) return;
  dec.is_tile = false;
  dec.tile_provenance = "exhausted";
}

}  // namespace

Decision decide(const SubsetMask& a) {
  require_shape(a.group(), "decide");
  const Group& g = a.group();
  const std::uint32_t p = g.p();
  const std::uint64_t order = g.order();
  const std::uint64_t size = a.size();
  Decision dec(a);

  if (size == 0) {
    dec.spectral_provenance = "empty-set";
    dec.tile_provenance = "empty-set";
    return dec;
  }
  if (size == order) {
    adopt_spectrum(dec, SubsetMask::full(g), "full-group");
    SubsetMask zero(g);
    zero.insert(g.element(0, 0));
    adopt_complement(dec, std::move(zero), "full-group");
    return dec;
  }
  if (size == 1) {
    SubsetMask zero(g);
    zero.insert(g.element(0, 0));
    adopt_spectrum(dec, std::move(zero), "singleton");
    adopt_complement(dec, SubsetMask::full(g), "singleton");
    return dec;
  }

  std::string spectral_block, tile_block;
  if (size % p != 0) {
    spectral_block = "cardinality";
  } else if (size > static_cast<std::uint64_t>(p) * p && size < order) {
    spectral_block = "size-window";
  }
  if (order % size != 0) tile_block = "cardinality";
  if (!spectral_block.empty() && !tile_block.empty()) {
    dec.spectral_provenance = std::move(spectral_block);
    dec.tile_provenance = std::move(tile_block);
    return dec;
  }

  RepFlags flags = rep_flags(a);
  if (!flags.any()) {
    // Nothing vanishes: no difference can be annihilated and no proper
    // tiling partner exists for a set of two or more elements.
    dec.spectral_provenance =
        spectral_block.empty() ? "no-zeros" : spectral_block;
    dec.tile_provenance = tile_block.empty() ? "no-zeros" : tile_block;
    return dec;
  }

  if (size == p) {
    Elem d = g.element(0, 0);
    for (std::uint64_t i = 1; i < order; ++i) {
      Elem cand = g.element_at(i);
      if (is_zero(a, cand)) {
        d = cand;
        break;
      }
    }
    if (!adopt_spectrum(dec, spectrum_for_size_p(a, d), "scalar-line")) {
      brute_spectrum_into(dec, SubsetMask::full(g), "brute-flagged");
    }
    auto [comp, tag] = tiling_complement_for_size_p(a);
    if (!adopt_complement(dec, std::move(comp), tag)) {
      brute_complement_into(dec);
      if (dec.is_tile) dec.tile_provenance = "brute-flagged";
    }
    return dec;
  }

  if (size == static_cast<std::uint64_t>(p) * p) {
    bool units = all_unit(flags);
    bool some_unit = false;
    std::uint32_t first_unit = 0;
    for (std::uint32_t c = 0; c < p; ++c) {
      if (flags.unit[c]) {
        some_unit = true;
        first_unit = c;
        break;
      }
    }
    std::uint32_t skew = 0;
    for (std::uint32_t c = 1; c < p; ++c) {
      if (flags.ppart[c]) {
        skew = c;
        break;
      }
    }

    bool done = false;
    if (flags.ppart[0] && some_unit) {
      done = adopt_spectrum(dec, graph_form_spectrum(g, first_unit), "graph-form");
    }
    if (!done && units && flags.axis) {
      SubsetMask b(g);
      for (std::uint32_t x = 0; x < p; ++x)
        for (std::uint32_t z = 0; z < p; ++z) b.insert(g.element(x, z));
      done = adopt_spectrum(dec, std::move(b), "unit-block");
    }
    if (!done && units && skew != 0) {
      SubsetMask b(g);
      for (std::uint32_t x = 0; x < p; ++x) {
        for (std::uint32_t y = 0; y < p; ++y) {
          b.insert(g.element(x + static_cast<std::uint64_t>(p) * y,
                             static_cast<std::uint64_t>(skew) * y % p));
        }
      }
      done = adopt_spectrum(dec, std::move(b), "skew-block");
    }
    if (!done && flags.axis && all_ppart(flags)) {
      SubsetMask b(g);
      for (std::uint32_t y = 0; y < p; ++y)
        for (std::uint32_t z = 0; z < p; ++z)
          b.insert(g.element(static_cast<std::uint64_t>(p) * y, z));
      done = adopt_spectrum(dec, std::move(b), "p-block");
    }
    if (!done) brute_spectrum_into(dec, SubsetMask::full(g), "brute");

    done = false;
    if (flags.ppart[0] && some_unit) {
      auto form = graph_form_extract(a, first_unit);
      if (form) {
        done = adopt_complement(dec, graph_form_complement(a, first_unit),
                                "graph-section");
      }
    }
    if (!done && units && skew != 0) {
      std::uint32_t slope = detail::mod_inverse((p - skew) % p, p);
      SubsetMask b(g);
      for (std::uint32_t j = 0; j < p; ++j) {
        b.insert(g.element(j, static_cast<std::uint64_t>(slope) * j % p));
      }
      done = adopt_complement(dec, std::move(b), "diagonal-line");
    }
    if (!done && units && flags.axis) {
      SubsetMask b(g);
      for (std::uint32_t j = 0; j < p; ++j) b.insert(g.element(j, 0));
      done = adopt_complement(dec, std::move(b), "base-line");
    }
    if (!done && flags.axis && all_ppart(flags)) {
      SubsetMask b(g);
      for (std::uint32_t j = 0; j < p; ++j) {
        b.insert(g.element(static_cast<std::uint64_t>(p) * j, 0));
      }
      done = adopt_complement(dec, std::move(b), "p-line");
    }
    if (!done) brute_complement_into(dec);
    return dec;
  }

  // Remaining sizes: strictly between p and p^2 with p dividing the size,
  // so tiling is already ruled out by cardinality.
  dec.tile_provenance = tile_block;
  auto sub = proper_subgroup_containment(a);
  if (sub && sub->kind != SubgroupKind::trivial) {
    // The zero set is periodic under the annihilator of the containing
    // subgroup, and any spectrum can be normalized into a transversal of
    // it, so the search space shrinks to one coset representative each.
    SubsetMask ann = annihilator(g, sub->members);
    SubsetMask trans = coset_transversal(g, ann);
    brute_spectrum_into(dec, trans, "subgroup");
  } else {
    brute_spectrum_into(dec, SubsetMask::full(g), "brute");
  }
  return dec;
}

}  // namespace fuglede
