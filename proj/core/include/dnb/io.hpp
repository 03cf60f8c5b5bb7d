#ifndef DNB_IO_HPP
#define DNB_IO_HPP

#include <dnb/change.hpp>
#include <dnb/liealg.hpp>

#include <string>

namespace dnb {

//! Bracket definition loaded from a JSON document:
//!   {"components": N, "dimension": n, "coordinates": [names]?,
//!    "metrics": [n][N][N] expression strings, "b": [n][N][N][N]? }
//! When "b" is absent every metric must be nondegenerate and the
//! coefficients are derived from its Levi-Civita connection.
struct bracket_file {
  hydro_bracket bracket;
  bool b_derived = false;
};

bracket_file parse_bracket(const std::string& json_text);
bracket_file load_bracket(const std::string& path);

//! Serializes a bracket back to the same document shape (always with "b").
std::string bracket_to_json(const hydro_bracket& B, bool pretty = true);

//! Coordinate change from {"forward": [...], "inverse": [...]? }, parsed
//! against the bracket's variable set.
coordinate_change parse_change(const std::string& json_text, const varset& vars);
coordinate_change load_change(const std::string& path, const varset& vars);

//! Field-linear constants from {"components": N, "dimension": n,
//! "b0": [n][N][N][N], "g0": [n][N][N]? }, entries given as integers or
//! rational strings like "-3/2".
linear_bracket_data parse_constants(const std::string& json_text);
linear_bracket_data load_constants(const std::string& path);

//! True when the document has a "b0" key (constants file) rather than
//! "metrics" (bracket file).
bool looks_like_constants_file(const std::string& json_text);

std::string read_file(const std::string& path);

} // namespace dnb

#endif
