#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cdg {

namespace fs = std::filesystem;

namespace {

Scalar coeff(const json& c, const Field& f) {
  if (c.is_number_integer()) return Scalar::from_int(c.get<std::int64_t>(), f);
  if (c.is_string()) return Scalar::parse(c.get<std::string>(), f);
  throw ParseError("coefficient must be an integer or a \"p/q\" string, got " + c.dump());
}

json coeff_json(const Scalar& s) {
  std::string t = s.str();
  if (t.find('/') != std::string::npos) return t;
  return std::stoll(t);
}

const json& field_of(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string str_of(const json& j, const std::string& what) {
  if (!j.is_string()) throw ParseError(what + " must be a string, got " + j.dump());
  return j.get<std::string>();
}

// [name, c, name, c, ...] starting at position `from`
template <class Lookup>
Vec term_list(const json& arr, std::size_t from, const Field& f, Lookup lookup) {
  if (!arr.is_array() || (arr.size() - from) % 2 != 0)
    throw ParseError("expected name/coefficient pairs in " + arr.dump());
  VecBuilder v;
  for (std::size_t k = from; k < arr.size(); k += 2) v.add(lookup(str_of(arr[k], "term name")), coeff(arr[k + 1], f));
  return v.finish();
}

template <class Name>
json terms_json(const Vec& v, Name name) {
  json out = json::array();
  for (const auto& [i, x] : v.terms()) {
    out.push_back(name(i));
    out.push_back(coeff_json(x));
  }
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

CdgCategory category_from_json(const json& j, const std::optional<Field>& field_override) {
  try {
    CdgCategory c;
    c.field = field_override ? *field_override : Field::parse(j.value("field", "Q"));
    c.grading = GradingGroup::parse(j.value("grading", "Z"));
    for (const auto& o : field_of(j, "objects")) c.objects.push_back(str_of(o, "object"));
    for (const auto& b : field_of(j, "basis")) {
      BasisElem e;
      e.name = str_of(field_of(b, "name"), "basis name");
      e.src = c.object_index(str_of(field_of(b, "src"), "src"));
      e.dst = c.object_index(str_of(field_of(b, "dst"), "dst"));
      e.degree = c.grading.normalize(field_of(b, "degree").get<Degree>());
      c.basis.push_back(e);
    }
    c.reset_tables();
    auto idx = [&](const std::string& s) { return c.basis_index(s); };
    const auto& units = field_of(j, "units");
    for (Index x = 0; x < c.num_objects(); ++x) {
      if (!units.contains(c.objects[x])) throw ParseError("no unit given for object " + c.objects[x]);
      c.unit[x] = Vec::unit(idx(str_of(units.at(c.objects[x]), "unit")));
    }
    // unit compositions
    for (Index f = 0; f < c.dim(); ++f) {
      Index u_src = c.unit[c.basis[f].src].terms().front().first;
      Index u_dst = c.unit[c.basis[f].dst].terms().front().first;
      c.compose[f][u_src] = Vec::unit(f);
      c.compose[u_dst][f] = Vec::unit(f);
    }
    if (j.contains("compose"))
      for (const auto& row : j.at("compose")) {
        if (!row.is_array() || row.size() < 2) throw ParseError("bad compose entry " + row.dump());
        Index f = idx(str_of(row[0], "compose f")), g = idx(str_of(row[1], "compose g"));
        c.compose[f][g] = term_list(row, 2, c.field, idx);
      }
    if (j.contains("diff"))
      for (const auto& row : j.at("diff")) {
        if (!row.is_array() || row.empty()) throw ParseError("bad diff entry " + row.dump());
        c.diff[idx(str_of(row[0], "diff element"))] = term_list(row, 1, c.field, idx);
      }
    if (j.contains("curvature"))
      for (const auto& [obj, terms] : j.at("curvature").items()) c.curvature[c.object_index(obj)] = term_list(terms, 0, c.field, idx);
    return c;
  } catch (const CategoryError& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const FieldError& e) {
    throw ParseError(e.what());
  } catch (const GradingError& e) {
    throw ParseError(e.what());
  }
}

json category_to_json(const CdgCategory& c) {
  json j;
  j["field"] = c.field.name();
  j["grading"] = c.grading.name();
  j["objects"] = c.objects;
  j["basis"] = json::array();
  for (const auto& e : c.basis)
    j["basis"].push_back({{"name", e.name}, {"src", c.objects[e.src]}, {"dst", c.objects[e.dst]}, {"degree", e.degree}});
  auto name = [&](Index i) { return c.basis[i].name; };
  j["units"] = json::object();
  for (Index x = 0; x < c.num_objects(); ++x) j["units"][c.objects[x]] = name(c.unit[x].terms().front().first);
  j["compose"] = json::array();
  for (Index f = 0; f < c.dim(); ++f)
    for (Index g = 0; g < c.dim(); ++g)
      if (!c.compose[f][g].empty()) {
        json row = {name(f), name(g)};
        for (auto& t : terms_json(c.compose[f][g], name)) row.push_back(t);
        j["compose"].push_back(row);
      }
  j["diff"] = json::array();
  for (Index f = 0; f < c.dim(); ++f)
    if (!c.diff[f].empty()) {
      json row = {name(f)};
      for (auto& t : terms_json(c.diff[f], name)) row.push_back(t);
      j["diff"].push_back(row);
    }
  j["curvature"] = json::object();
  for (Index x = 0; x < c.num_objects(); ++x)
    if (!c.curvature[x].empty()) j["curvature"][c.objects[x]] = terms_json(c.curvature[x], name);
  return j;
}

CdgModule module_from_json(const json& j, const CategoryPtr& base) {
  try {
    const auto& B = *base;
    CdgModule m;
    m.base = base;
    std::string side = j.value("side", "left");
    if (side != "left" && side != "right") throw ParseError("side must be \"left\" or \"right\"");
    m.side = side == "left" ? Side::Left : Side::Right;
    const auto& comps = field_of(j, "components");
    for (const auto& [obj, list] : comps.items()) B.object_index(obj);  // reject unknown objects
    for (Index x = 0; x < B.num_objects(); ++x) {
      if (!comps.contains(B.objects[x])) continue;
      for (const auto& e : comps.at(B.objects[x]))
        m.basis.push_back({str_of(field_of(e, "name"), "module basis name"), x,
                           B.grading.normalize(field_of(e, "degree").get<Degree>())});
    }
    m.reset_tables();
    auto midx = [&](const std::string& s) { return m.basis_index(s); };
    auto bidx = [&](const std::string& s) { return B.basis_index(s); };
    for (Index k = 0; k < m.dim(); ++k) m.action[B.unit[m.basis[k].object].terms().front().first][k] = Vec::unit(k);
    if (j.contains("action"))
      for (const auto& row : j.at("action")) {
        if (!row.is_array() || row.size() < 2) throw ParseError("bad action entry " + row.dump());
        m.action[bidx(str_of(row[0], "acting element"))][midx(str_of(row[1], "module element"))] =
            term_list(row, 2, B.field, midx);
      }
    if (j.contains("diff"))
      for (const auto& row : j.at("diff")) {
        if (!row.is_array() || row.empty()) throw ParseError("bad module diff entry " + row.dump());
        m.diff[midx(str_of(row[0], "module element"))] = term_list(row, 1, B.field, midx);
      }
    if (j.contains("summand")) {
      const auto& s = j.at("summand");
      std::vector<FreeGenerator> gens;
      for (const auto& g : field_of(s, "free_generators"))
        gens.push_back({B.object_index(str_of(field_of(g, "object"), "generator object")),
                        B.grading.normalize(field_of(g, "degree").get<Degree>())});
      if (s.contains("free_rank") && s.at("free_rank").get<std::size_t>() != gens.size())
        throw ParseError("free_rank does not match the number of free_generators");
      CdgModule f = free_graded_module(base, m.side, gens);
      auto fidx = [&](const std::string& n) { return f.basis_index(n); };
      SummandPresentation sp;
      sp.generators = gens;
      sp.iota.assign(m.dim(), Vec());
      sp.pi.assign(f.dim(), Vec());
      for (const auto& row : field_of(s, "iota")) sp.iota[midx(str_of(row[0], "iota source"))] = term_list(row, 1, B.field, fidx);
      for (const auto& row : field_of(s, "pi")) sp.pi[fidx(str_of(row[0], "pi source"))] = term_list(row, 1, B.field, midx);
      m.summand = sp;
    }
    return m;
  } catch (const CategoryError& e) {
    throw ParseError(e.what());
  } catch (const ModuleError& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const FieldError& e) {
    throw ParseError(e.what());
  }
}

json module_to_json(const CdgModule& m) {
  const auto& B = *m.base;
  json j;
  j["side"] = m.side == Side::Left ? "left" : "right";
  j["components"] = json::object();
  for (const auto& e : m.basis) j["components"][B.objects[e.object]].push_back({{"name", e.name}, {"degree", e.degree}});
  auto mname = [&](Index i) { return m.basis[i].name; };
  j["action"] = json::array();
  for (Index b = 0; b < B.dim(); ++b)
    for (Index k = 0; k < m.dim(); ++k) {
      const Vec& v = m.action[b][k];
      if (v.empty() || v == Vec::unit(k)) continue;
      json row = {B.basis[b].name, m.basis[k].name};
      for (auto& t : terms_json(v, mname)) row.push_back(t);
      j["action"].push_back(row);
    }
  j["diff"] = json::array();
  for (Index k = 0; k < m.dim(); ++k)
    if (!m.diff[k].empty()) {
      json row = {m.basis[k].name};
      for (auto& t : terms_json(m.diff[k], mname)) row.push_back(t);
      j["diff"].push_back(row);
    }
  if (m.summand) {
    CdgModule f = free_graded_module(m.base, m.side, m.summand->generators);
    auto fname = [&](Index i) { return f.basis[i].name; };
    json s;
    s["free_rank"] = m.summand->generators.size();
    s["free_generators"] = json::array();
    for (const auto& g : m.summand->generators) s["free_generators"].push_back({{"object", B.objects[g.object]}, {"degree", g.degree}});
    s["iota"] = json::array();
    for (Index k = 0; k < m.dim(); ++k) {
      json row = {m.basis[k].name};
      for (auto& t : terms_json(m.summand->iota[k], fname)) row.push_back(t);
      s["iota"].push_back(row);
    }
    s["pi"] = json::array();
    for (Index k = 0; k < f.dim(); ++k) {
      json row = {f.basis[k].name};
      for (auto& t : terms_json(m.summand->pi[k], mname)) row.push_back(t);
      s["pi"].push_back(row);
    }
    j["summand"] = s;
  }
  return j;
}

LoadedCategory load_category_file(const std::string& path, const std::optional<Field>& field_override) {
  json j = read_json_file(path);
  LoadedCategory lc;
  lc.category = std::make_shared<const CdgCategory>(category_from_json(j, field_override));
  if (j.contains("modules"))
    for (const auto& [name, mj] : j.at("modules").items()) lc.modules.emplace(name, module_from_json(mj, lc.category));
  return lc;
}

json report_to_json(const HomologyReport& r) {
  json j;
  j["method"] = method_name(r.method);
  j["grading"] = r.grading.name();
  j["table"] = json::object();
  if (r.grading.is_mod_two())
    for (Degree g : {0, 1}) j["table"][r.grading.degree_label(g)] = 0;
  for (const auto& [g, d] : r.table) j["table"][r.grading.degree_label(g)] = d;
  if (r.method == Method::FiniteExact)
    j["truncation"] = nullptr;
  else
    j["truncation"] = {r.t1, r.t2};
  j["notes"] = r.notes;
  if (!r.weights.empty()) {
    j["weights"] = json::array();
    for (const auto& [k, d] : r.weights) j["weights"].push_back({k.first, r.grading.degree_label(k.second), d});
  }
  return j;
}

namespace {

Degree parse_degree_label(const std::string& s, const GradingGroup& g) {
  if (g.is_mod_two()) {
    if (s == "even") return 0;
    if (s == "odd") return 1;
  }
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used == s.size()) return g.normalize(v);
  } catch (const std::exception&) {
  }
  throw ParseError("bad degree label \"" + s + "\"");
}

}  // namespace

HomologyReport report_from_json(const json& j) {
  try {
    HomologyReport r;
    std::string m = field_of(j, "method").get<std::string>();
    if (m == "FiniteExact")
      r.method = Method::FiniteExact;
    else if (m == "TruncationStabilized")
      r.method = Method::TruncationStabilized;
    else if (m == "Inconclusive")
      r.method = Method::Inconclusive;
    else
      throw ParseError("unknown method " + m);
    r.grading = GradingGroup::parse(j.value("grading", "Z"));
    for (const auto& [k, v] : field_of(j, "table").items()) r.table[parse_degree_label(k, r.grading)] = v.get<std::size_t>();
    const auto& t = field_of(j, "truncation");
    if (t.is_array() && t.size() == 2) {
      r.t1 = t[0].get<int>();
      r.t2 = t[1].get<int>();
    }
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("weights"))
      for (const auto& w : j.at("weights"))
        r.weights[{w[0].get<int>(), parse_degree_label(w[1].get<std::string>(), r.grading)}] = w[2].get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

namespace {

std::string kind_name(BicomplexKind k) {
  switch (k) {
    case BicomplexKind::Bar: return "bar";
    case BicomplexKind::Cobar: return "cobar";
    case BicomplexKind::HochschildHomology: return "hochschild-homology";
    case BicomplexKind::HochschildCohomology: return "hochschild-cohomology";
  }
  return "?";
}

// always "row col num/den"
std::string triplet_text(const SparseMatrix& m) {
  std::ostringstream os;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, x] : m.col(j).terms()) {
      std::string v = x.str();
      if (v.find('/') == std::string::npos) v += "/1";
      os << i << ' ' << j << ' ' << v << '\n';
    }
  return os.str();
}

}  // namespace

void dump_bicomplex(const Bicomplex& bc, const std::string& dir) {
  fs::create_directories(dir);
  json man;
  man["kind"] = kind_name(bc.kind);
  man["orientation"] = bc.orientation == Orientation::Homological ? "homological" : "cohomological";
  man["grading"] = bc.grading.name();
  man["truncation"] = bc.truncation;
  man["reduced"] = bc.reduced;
  man["weights"] = json::array();
  man["maps"] = json::array();
  for (int i = 0; i <= bc.truncation; ++i) {
    auto ui = static_cast<std::size_t>(i);
    man["weights"].push_back({{"weight", i}, {"dim", bc.dim(i)}, {"degrees", bc.degrees[ui]}});
    auto put = [&](const char* name, const SparseMatrix& m, int to) {
      if (m.rows() == 0 || m.cols() == 0) return;
      std::string file = std::string(name) + "_" + std::to_string(i) + ".txt";
      std::ofstream(fs::path(dir) / file) << triplet_text(m);
      man["maps"].push_back({{"name", name}, {"from", i}, {"to", to}, {"rows", m.rows()}, {"cols", m.cols()}, {"file", file}});
    };
    put("del", bc.del[ui], bc.del_target(i));
    put("d", bc.d[ui], i);
    put("delta", bc.delta[ui], bc.delta_target(i));
  }
  std::ofstream(fs::path(dir) / "manifest.json") << man.dump(2) << '\n';
}

Bicomplex load_bicomplex_dump(const std::string& dir, const Field& f) {
  json man = read_json_file((fs::path(dir) / "manifest.json").string());
  Bicomplex bc;
  bc.grading = GradingGroup::parse(man.at("grading").get<std::string>());
  bc.truncation = man.at("truncation").get<int>();
  bc.reduced = man.at("reduced").get<bool>();
  bc.orientation = man.at("orientation") == "homological" ? Orientation::Homological : Orientation::Cohomological;
  std::string kind = man.at("kind");
  for (auto k : {BicomplexKind::Bar, BicomplexKind::Cobar, BicomplexKind::HochschildHomology, BicomplexKind::HochschildCohomology})
    if (kind_name(k) == kind) bc.kind = k;
  for (const auto& w : man.at("weights")) bc.degrees.push_back(w.at("degrees").get<std::vector<Degree>>());
  auto n = bc.degrees.size();
  auto rows_for = [&](int to) -> std::size_t { return to < 0 || to > bc.truncation ? 0 : bc.degrees[static_cast<std::size_t>(to)].size(); };
  for (std::size_t i = 0; i < n; ++i) {
    int wi = static_cast<int>(i);
    bc.del.emplace_back(rows_for(bc.del_target(wi)), bc.dim(wi));
    bc.d.emplace_back(bc.dim(wi), bc.dim(wi));
    bc.delta.emplace_back(rows_for(bc.delta_target(wi)), bc.dim(wi));
  }
  for (const auto& m : man.at("maps")) {
    std::ifstream in(fs::path(dir) / m.at("file").get<std::string>());
    std::stringstream ss;
    ss << in.rdbuf();
    auto i = m.at("from").get<std::size_t>();
    SparseMatrix mat = SparseMatrix::parse_triplets(ss.str(), m.at("rows"), m.at("cols"), f);
    std::string name = m.at("name");
    (name == "del" ? bc.del : name == "d" ? bc.d : bc.delta)[i] = mat;
  }
  return bc;
}

}  // namespace cdg
