#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fuglede/certificates.hpp"
#include "fuglede/constructors.hpp"
#include "fuglede/fourier.hpp"
#include "fuglede/group.hpp"
#include "fuglede/search.hpp"

namespace fuglede {

using ordered_json = nlohmann::ordered_json;

/// Display name in the normalized orientation, e.g. "Z_9 x Z_3".
std::string group_text(const Group& g);

/**
 * "(4,2)".  When the group was declared with swapped exponents the
 * coordinates are transposed back, so callers always see the orientation
 * they asked for.
 */
std::string elem_text(const Group& g, Elem e);

/// Elements in ascending index order, "(0,0),(1,2)"; "{}" when empty.
std::string subset_text(const SubsetMask& a);

/// The mask as a hex literal over element indices (index 0 = bit 0).
std::string subset_hex(const SubsetMask& a);

/// Inverse of elem_text; throws std::invalid_argument on malformed input.
Elem parse_elem(const Group& g, const std::string& text);

/**
 * Inverse of subset_text and subset_hex: "" or "{}" parses as the empty
 * set, "0x..." as a mask literal (bits beyond the group order must be
 * clear), and anything starting with "(" as an element list separated by
 * commas, semicolons or whitespace.  Throws std::invalid_argument
 * otherwise.
 */
SubsetMask parse_subset(const Group& g, const std::string& text);

/**
 * The zero set as a JSON array of element strings.  With audit = true each
 * entry becomes {"d": ..., "abs": ...} where abs is the magnitude reported
 * by the floating-point oracle (expected below 1e-6 for every member).
 */
ordered_json zero_set_json(const ZeroSet& z, bool audit = false);

ordered_json verdict_json(const Group& g, const PairVerdict& v);

ordered_json decision_json(const Decision& d);

/// Full report object including "content_hash" ("fnv1a64:" + 16 hex digits).
ordered_json report_json(const Report& r);

/// "mask,size,is_spectral,is_tile,spectral_provenance,tile_provenance".
std::string csv_header();
std::string decision_csv_row(const Decision& d);

}  // namespace fuglede
