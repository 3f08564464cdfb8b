#include "gkm/config.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gkm/error.hpp"

namespace gkm {

namespace {
using nlohmann::json;

Rational rat_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) return rat_parse(v.get<std::string>());
  fail("Unsupported", "numbers in group configs must be integers or \"p/q\" strings");
}
}  // namespace

Realization realization_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("Unsupported", std::string("bad group JSON: ") + e.what());
  }
  Realization r;
  r.name = j.value("name", std::string("custom"));
  if (!j.contains("coxeter_matrix")) fail("Unsupported", "group JSON lacks coxeter_matrix");
  for (const auto& row : j.at("coxeter_matrix")) {
    std::vector<int> rr;
    for (const auto& v : row) rr.push_back(v.get<int>());
    r.cox.push_back(std::move(rr));
  }
  r.rank = static_cast<int>(r.cox.size());
  if (j.contains("generators")) {
    for (const auto& g : j.at("generators")) r.labels.push_back(g.get<std::string>());
    if (static_cast<int>(r.labels.size()) != r.rank)
      fail("Unsupported", "generators list does not match coxeter_matrix rank");
  }
  const bool has_geom = j.contains("dim") || j.contains("roots") || j.contains("coroots");
  if (!has_geom) {
    Realization c = canonical_realization(r.cox);
    c.name = r.name;
    if (!r.labels.empty()) c.labels = r.labels;
    return c;
  }
  if (!(j.contains("dim") && j.contains("roots") && j.contains("coroots")))
    fail("Unsupported", "dim, roots, coroots must be given together");
  r.dim = j.at("dim").get<int>();
  auto read_mat = [&](const char* key, int nrows, int ncols) {
    QMat m(nrows, ncols);
    const auto& rows = j.at(key);
    if (static_cast<int>(rows.size()) != nrows)
      fail("Unsupported", std::string(key) + " must have one row per generator");
    for (int i = 0; i < nrows; ++i) {
      if (static_cast<int>(rows[i].size()) != ncols)
        fail("Unsupported", std::string(key) + " rows must have dim entries");
      for (int k = 0; k < ncols; ++k) m(i, k) = rat_from_json(rows[i][k]);
    }
    return m;
  };
  // JSON stores one coordinate row per generator; roots live as columns.
  QMat roots_rows = read_mat("roots", r.rank, r.dim);
  r.roots = roots_rows.transpose();
  r.coroots = read_mat("coroots", r.rank, r.dim);
  return r;
}

Realization realization_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("Unsupported", "cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return realization_from_json(ss.str());
}

Realization resolve_group(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path) &&
      !std::filesystem::is_directory(name_or_path))
    return realization_from_file(name_or_path);
  if (!name_or_path.empty() && name_or_path[0] == '{')
    return realization_from_json(name_or_path);
  std::string name = name_or_path;
  for (char& c : name) c = static_cast<char>(std::tolower(c));
  return preset_realization(name);
}

}  // namespace gkm
