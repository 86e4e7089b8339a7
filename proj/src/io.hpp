#pragma once
// JSON input and output: categories, modules, homology reports, and the
// on-disk dump of a bicomplex (triplet files plus a manifest).
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "engines.hpp"

namespace cdg {

using json = nlohmann::json;

// Malformed input; maps to the usage/parse exit code.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A category file may carry named modules over that category.
struct LoadedCategory {
  CategoryPtr category;
  std::map<std::string, CdgModule> modules;
};

// field_override replaces the "field" entry (rationals in the tables are
// then reduced into the new field).
CdgCategory category_from_json(const json& j, const std::optional<Field>& field_override = {});
json category_to_json(const CdgCategory& c);
CdgModule module_from_json(const json& j, const CategoryPtr& base);
json module_to_json(const CdgModule& m);
LoadedCategory load_category_file(const std::string& path, const std::optional<Field>& field_override = {});

json report_to_json(const HomologyReport& r);
HomologyReport report_from_json(const json& j);

// Writes manifest.json and one triplet file per nonzero-size map.
void dump_bicomplex(const Bicomplex& bc, const std::string& dir);
// Reads a dump back (labels are not stored).
Bicomplex load_bicomplex_dump(const std::string& dir, const Field& f);

json read_json_file(const std::string& path);

}  // namespace cdg
