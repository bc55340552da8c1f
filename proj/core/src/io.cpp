#include "fuglede/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace fuglede {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::uint64_t parse_u64(const std::string& s, const char* who) {
  std::string t = trim(s);
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
    throw std::invalid_argument(std::string(who) + ": bad number '" + t + "'");
  }
  return v;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Everything that participates in the content hash, i.e. the whole report
// except wall-clock time and the hash field itself.
ordered_json report_body(const Report& r) {
  ordered_json j;
  j["group"] = r.group_text;
  j["mode"] = r.mode;
  j["canonical"] = r.canonical;
  j["complete"] = r.complete;
  j["subsets_examined"] = r.subsets_examined;
  ordered_json rows = ordered_json::array();
  for (const SizeTally& t : r.per_size) {
    ordered_json row;
    row["size"] = t.size;
    row["examined"] = t.examined;
    row["orbit_size_sum"] = t.orbit_size_sum;
    row["spectral"] = t.spectral;
    row["tiles"] = t.tiles;
    rows.push_back(std::move(row));
  }
  j["per_size"] = std::move(rows);
  ordered_json findings = ordered_json::array();
  for (const Decision& d : r.counterexamples) {
    findings.push_back(decision_json(d));
  }
  j["counterexamples"] = std::move(findings);
  ordered_json prov = ordered_json::object();
  for (const auto& [tag, count] : r.provenance) prov[tag] = count;
  j["provenance"] = std::move(prov);
  j["coverage_violations"] = r.coverage_violations;
  return j;
}

}  // namespace

std::string group_text(const Group& g) {
  return "Z_" + std::to_string(g.q1()) + " x Z_" + std::to_string(g.q2());
}

std::string elem_text(const Group& g, Elem e) {
  std::uint64_t first = e.d1, second = e.d2;
  if (g.swapped()) std::swap(first, second);
  return "(" + std::to_string(first) + "," + std::to_string(second) + ")";
}

std::string subset_text(const SubsetMask& a) {
  if (a.empty()) return "{}";
  std::string out;
  a.for_each_index([&](std::uint64_t i) {
    if (!out.empty()) out += ",";
    out += elem_text(a.group(), a.group().element_at(i));
  });
  return out;
}

std::string subset_hex(const SubsetMask& a) {
  const auto& words = a.words();
  std::size_t top = words.size();
  while (top > 1 && words[top - 1] == 0) --top;
  char buf[20];
  std::snprintf(buf, sizeof buf, "%llx",
                static_cast<unsigned long long>(words[top - 1]));
  std::string out = "0x";
  out += buf;
  for (std::size_t i = top - 1; i-- > 0;) {
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(words[i]));
    out += buf;
  }
  return out;
}

Elem parse_elem(const Group& g, const std::string& text) {
  std::string s = trim(text);
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') {
    throw std::invalid_argument("parse_elem: expected '(a,b)', got '" + s + "'");
  }
  std::string body = s.substr(1, s.size() - 2);
  std::size_t comma = body.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("parse_elem: expected two coordinates in '" + s + "'");
  }
  std::uint64_t first = parse_u64(body.substr(0, comma), "parse_elem");
  std::uint64_t second = parse_u64(body.substr(comma + 1), "parse_elem");
  if (g.swapped()) std::swap(first, second);
  return g.element(first, second);
}

SubsetMask parse_subset(const Group& g, const std::string& text) {
  std::string s = trim(text);
  if (s.empty() || s == "{}") return SubsetMask(g);

  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    std::string hex = s.substr(2);
    if (hex.empty()) {
      throw std::invalid_argument("parse_subset: empty mask literal");
    }
    SubsetMask mask(g);
    std::uint64_t bit = 0;
    for (std::size_t i = hex.size(); i-- > 0; bit += 4) {
      int v = hex_value(hex[i]);
      if (v < 0) {
        throw std::invalid_argument("parse_subset: bad hex digit in '" + s + "'");
      }
      for (int b = 0; b < 4; ++b) {
        if (!(v >> b & 1)) continue;
        std::uint64_t index = bit + b;
        if (index >= g.order()) {
          throw std::invalid_argument(
              "parse_subset: mask has bits beyond the group order");
        }
        mask.insert_index(index);
      }
    }
    return mask;
  }

  if (s[0] == '(') {
    SubsetMask mask(g);
    std::size_t at = 0;
    while (at < s.size()) {
      while (at < s.size() &&
             (s[at] == ',' || s[at] == ';' ||
              std::isspace(static_cast<unsigned char>(s[at])))) {
        ++at;
      }
      if (at >= s.size()) break;
      if (s[at] != '(') {
        throw std::invalid_argument("parse_subset: expected '(' in '" + s + "'");
      }
      std::size_t close = s.find(')', at);
      if (close == std::string::npos) {
        throw std::invalid_argument("parse_subset: unbalanced '(' in '" + s + "'");
      }
      mask.insert(parse_elem(g, s.substr(at, close - at + 1)));
      at = close + 1;
    }
    return mask;
  }

  throw std::invalid_argument("parse_subset: unrecognized set form '" + s + "'");
}

ordered_json zero_set_json(const ZeroSet& z, bool audit) {
  const Group& g = z.subject().group();
  ordered_json arr = ordered_json::array();
  for (const Elem& d : z.directions()) {
    if (audit) {
      ordered_json row;
      row["d"] = elem_text(g, d);
      row["abs"] = std::abs(fourier_value_float(z.subject(), d));
      arr.push_back(std::move(row));
    } else {
      arr.push_back(elem_text(g, d));
    }
  }
  return arr;
}

ordered_json verdict_json(const Group& g, const PairVerdict& v) {
  ordered_json j;
  j["kind"] = v.kind == PairKind::spectral ? "spectral" : "tiling";
  j["holds"] = v.holds;
  j["witness"] =
      v.witness ? ordered_json(elem_text(g, *v.witness)) : ordered_json(nullptr);
  j["note"] = v.note;
  return j;
}

ordered_json decision_json(const Decision& d) {
  const Group& g = d.subset.group();
  ordered_json j;
  j["group"] = group_text(g);
  j["set"] = subset_text(d.subset);
  j["mask"] = subset_hex(d.subset);
  j["size"] = d.subset.size();
  j["is_spectral"] = d.is_spectral;
  j["spectrum"] =
      d.spectrum ? ordered_json(subset_text(*d.spectrum)) : ordered_json(nullptr);
  j["is_tile"] = d.is_tile;
  j["complement"] = d.complement ? ordered_json(subset_text(*d.complement))
                                 : ordered_json(nullptr);
  j["provenance"] = ordered_json{{"spectral", d.spectral_provenance},
                                 {"tile", d.tile_provenance}};
  return j;
}

std::uint64_t report_hash(const Report& r) { return fnv1a64(report_body(r).dump()); }

ordered_json report_json(const Report& r) {
  ordered_json j = report_body(r);
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(report_hash(r)));
  j["content_hash"] = buf;
  return j;
}

std::string csv_header() {
  return "mask,size,is_spectral,is_tile,spectral_provenance,tile_provenance";
}

std::string decision_csv_row(const Decision& d) {
  std::string out = subset_hex(d.subset);
  out += ',';
  out += std::to_string(d.subset.size());
  out += d.is_spectral ? ",1," : ",0,";
  out += d.is_tile ? "1," : "0,";
  out += d.spectral_provenance;
  out += ',';
  out += d.tile_provenance;
  return out;
}

}  // namespace fuglede
