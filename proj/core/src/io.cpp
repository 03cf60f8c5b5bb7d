#include <dnb/io.hpp>

#include <dnb/errors.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace dnb {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw error(std::string("invalid JSON: ") + e.what());
  }
}

int require_int(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw error(std::string("field \"") + key + "\" must be an integer");
  return j[key].get<int>();
}

//! Expression entries may be strings under the expression grammar or plain
//! JSON integers.
expr parse_entry(const ordered_json& v, const varset& vars, const std::string& where) {
  if (v.is_string()) {
    try {
      return expr::parse(v.get<std::string>(), vars);
    } catch (const parse_error& e) {
      throw error(where + ": " + e.what());
    }
  }
  if (v.is_number_integer())
    return expr::constant(vars, rational(v.get<long long>()));
  throw error(where + ": expected an expression string or integer");
}

rational parse_rational_entry(const ordered_json& v, const std::string& where) {
  if (v.is_number_integer()) return rational(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      return rational(s);
    } catch (const std::exception&) {
      throw error(where + ": cannot read \"" + s + "\" as a rational number");
    }
  }
  throw error(where + ": expected an integer or a rational string like \"-3/2\"");
}

varset coordinates_from(const ordered_json& j, int N) {
  if (!j.contains("coordinates")) return varset::coords(static_cast<std::size_t>(N));
  const auto& arr = j["coordinates"];
  if (!arr.is_array() || static_cast<int>(arr.size()) != N)
    throw error("\"coordinates\" must list exactly N names");
  std::vector<std::string> names;
  for (const auto& v : arr) {
    if (!v.is_string()) throw error("coordinate names must be strings");
    names.push_back(v.get<std::string>());
  }
  return varset(std::move(names));
}

} // namespace

bracket_file parse_bracket(const std::string& json_text) {
  const ordered_json j = parse_json(json_text);
  const int N = require_int(j, "components");
  const int n = require_int(j, "dimension");
  if (N < 1 || n < 1) throw error("components and dimension must be positive");
  const varset vars = coordinates_from(j, N);

  if (!j.contains("metrics") || !j["metrics"].is_array() ||
      static_cast<int>(j["metrics"].size()) != n)
    throw error("\"metrics\" must be an array of n matrices");

  const index_spec up{index_kind::coordinate, variance::upper, N};
  const index_spec lo{index_kind::coordinate, variance::lower, N};
  std::vector<tensor_field> gs;
  for (int a = 0; a < n; ++a) {
    const auto& m = j["metrics"][static_cast<std::size_t>(a)];
    if (!m.is_array() || static_cast<int>(m.size()) != N)
      throw error("metric alpha=" + std::to_string(a + 1) + " must be an NxN matrix");
    tensor_field g(vars, {up, up});
    for (int i = 0; i < N; ++i) {
      const auto& row = m[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != N)
        throw error("metric alpha=" + std::to_string(a + 1) + " must be an NxN matrix");
      for (int jj = 0; jj < N; ++jj)
        g.at({i, jj}) = parse_entry(row[static_cast<std::size_t>(jj)], vars,
                                    "metrics[" + std::to_string(a + 1) + "][" +
                                        std::to_string(i + 1) + "][" +
                                        std::to_string(jj + 1) + "]");
    }
    gs.push_back(std::move(g));
  }

  bracket_file out;
  if (j.contains("b")) {
    const auto& barr = j["b"];
    if (!barr.is_array() || static_cast<int>(barr.size()) != n)
      throw error("\"b\" must be an array of n cubes");
    std::vector<tensor_field> bs;
    for (int a = 0; a < n; ++a) {
      const auto& cube = barr[static_cast<std::size_t>(a)];
      tensor_field b(vars, {up, up, lo});
      if (!cube.is_array() || static_cast<int>(cube.size()) != N)
        throw error("b alpha=" + std::to_string(a + 1) + " must be NxNxN");
      for (int i = 0; i < N; ++i) {
        const auto& plane = cube[static_cast<std::size_t>(i)];
        if (!plane.is_array() || static_cast<int>(plane.size()) != N)
          throw error("b alpha=" + std::to_string(a + 1) + " must be NxNxN");
        for (int jj = 0; jj < N; ++jj) {
          const auto& row = plane[static_cast<std::size_t>(jj)];
          if (!row.is_array() || static_cast<int>(row.size()) != N)
            throw error("b alpha=" + std::to_string(a + 1) + " must be NxNxN");
          for (int k = 0; k < N; ++k)
            b.at({i, jj, k}) =
                parse_entry(row[static_cast<std::size_t>(k)], vars,
                            "b[" + std::to_string(a + 1) + "][" + std::to_string(i + 1) +
                                "][" + std::to_string(jj + 1) + "][" +
                                std::to_string(k + 1) + "]");
        }
      }
      bs.push_back(std::move(b));
    }
    out.bracket = hydro_bracket(vars, std::move(gs), std::move(bs));
  } else {
    out.bracket = hydro_bracket::from_metrics(vars, std::move(gs));
    out.b_derived = true;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bracket_file load_bracket(const std::string& path) {
  try {
    return parse_bracket(read_file(path));
  } catch (const error& e) {
    throw error(path + ": " + e.what());
  }
}

std::string bracket_to_json(const hydro_bracket& B, bool pretty) {
  const int N = B.components(), n = B.dimension();
  ordered_json j;
  j["components"] = N;
  j["dimension"] = n;
  ordered_json coords = ordered_json::array();
  for (const std::string& name : B.vars().names()) coords.push_back(name);
  j["coordinates"] = std::move(coords);
  ordered_json metrics = ordered_json::array();
  for (int a = 0; a < n; ++a) {
    ordered_json m = ordered_json::array();
    for (int i = 0; i < N; ++i) {
      ordered_json row = ordered_json::array();
      for (int jj = 0; jj < N; ++jj) row.push_back(B.g(a).at({i, jj}).to_string());
      m.push_back(std::move(row));
    }
    metrics.push_back(std::move(m));
  }
  j["metrics"] = std::move(metrics);
  ordered_json bs = ordered_json::array();
  for (int a = 0; a < n; ++a) {
    ordered_json cube = ordered_json::array();
    for (int i = 0; i < N; ++i) {
      ordered_json plane = ordered_json::array();
      for (int jj = 0; jj < N; ++jj) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < N; ++k) row.push_back(B.b(a).at({i, jj, k}).to_string());
        plane.push_back(std::move(row));
      }
      cube.push_back(std::move(plane));
    }
    bs.push_back(std::move(cube));
  }
  j["b"] = std::move(bs);
  return pretty ? j.dump(2) : j.dump();
}

coordinate_change parse_change(const std::string& json_text, const varset& vars) {
  const ordered_json j = parse_json(json_text);
  if (!j.contains("forward") || !j["forward"].is_array() ||
      j["forward"].size() != vars.size())
    throw error("\"forward\" must list one expression per coordinate");
  std::vector<expr> fwd;
  for (std::size_t i = 0; i < vars.size(); ++i)
    fwd.push_back(parse_entry(j["forward"][i], vars, "forward[" + std::to_string(i + 1) + "]"));
  std::optional<std::vector<expr>> inv;
  if (j.contains("inverse")) {
    if (!j["inverse"].is_array() || j["inverse"].size() != vars.size())
      throw error("\"inverse\" must list one expression per coordinate");
    std::vector<expr> v;
    for (std::size_t i = 0; i < vars.size(); ++i)
      v.push_back(parse_entry(j["inverse"][i], vars, "inverse[" + std::to_string(i + 1) + "]"));
    inv = std::move(v);
  }
  return coordinate_change(vars, std::move(fwd), std::move(inv));
}

coordinate_change load_change(const std::string& path, const varset& vars) {
  try {
    return parse_change(read_file(path), vars);
  } catch (const error& e) {
    throw error(path + ": " + e.what());
  }
}

linear_bracket_data parse_constants(const std::string& json_text) {
  const ordered_json j = parse_json(json_text);
  const int N = require_int(j, "components");
  const int n = require_int(j, "dimension");
  if (N < 1 || n < 1) throw error("components and dimension must be positive");
  linear_bracket_data L = linear_bracket_data::zeros(N, n);

  if (!j.contains("b0") || !j["b0"].is_array() || static_cast<int>(j["b0"].size()) != n)
    throw error("\"b0\" must be an array of n cubes");
  for (int a = 0; a < n; ++a) {
    const auto& cube = j["b0"][static_cast<std::size_t>(a)];
    if (!cube.is_array() || static_cast<int>(cube.size()) != N)
      throw error("b0 alpha=" + std::to_string(a + 1) + " must be NxNxN");
    for (int i = 0; i < N; ++i) {
      const auto& plane = cube[static_cast<std::size_t>(i)];
      if (!plane.is_array() || static_cast<int>(plane.size()) != N)
        throw error("b0 alpha=" + std::to_string(a + 1) + " must be NxNxN");
      for (int jj = 0; jj < N; ++jj) {
        const auto& row = plane[static_cast<std::size_t>(jj)];
        if (!row.is_array() || static_cast<int>(row.size()) != N)
          throw error("b0 alpha=" + std::to_string(a + 1) + " must be NxNxN");
        for (int k = 0; k < N; ++k)
          L.b(a, i, jj, k) = parse_rational_entry(
              row[static_cast<std::size_t>(k)],
              "b0[" + std::to_string(a + 1) + "][" + std::to_string(i + 1) + "][" +
                  std::to_string(jj + 1) + "][" + std::to_string(k + 1) + "]");
      }
    }
  }
  if (j.contains("g0")) {
    if (!j["g0"].is_array() || static_cast<int>(j["g0"].size()) != n)
      throw error("\"g0\" must be an array of n matrices");
    for (int a = 0; a < n; ++a) {
      const auto& m = j["g0"][static_cast<std::size_t>(a)];
      if (!m.is_array() || static_cast<int>(m.size()) != N)
        throw error("g0 alpha=" + std::to_string(a + 1) + " must be NxN");
      for (int i = 0; i < N; ++i) {
        const auto& row = m[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != N)
          throw error("g0 alpha=" + std::to_string(a + 1) + " must be NxN");
        for (int jj = 0; jj < N; ++jj)
          L.g0[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
              [static_cast<std::size_t>(jj)] = parse_rational_entry(
                  row[static_cast<std::size_t>(jj)],
                  "g0[" + std::to_string(a + 1) + "][" + std::to_string(i + 1) + "][" +
                      std::to_string(jj + 1) + "]");
      }
    }
  }
  return L;
}

linear_bracket_data load_constants(const std::string& path) {
  try {
    return parse_constants(read_file(path));
  } catch (const error& e) {
    throw error(path + ": " + e.what());
  }
}

bool looks_like_constants_file(const std::string& json_text) {
  try {
    const ordered_json j = ordered_json::parse(json_text);
    return j.contains("b0");
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace dnb
