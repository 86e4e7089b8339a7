#include "cdg/cdg.h"

#include <map>
#include <sstream>

#include "io.hpp"
#include "suites.hpp"

struct cdg_workspace {
  struct Entry {
    cdg::LoadedCategory loaded;
    cdg::json source;
  };
  std::map<std::string, Entry> categories;
  std::string error;
};

struct cdg_report {
  std::string text;
  std::string json;
  bool ok = true;
};

namespace {

using namespace cdg;

template <class Fn>
cdg_status guarded(cdg_workspace* ws, Fn&& fn) {
  try {
    ws->error.clear();
    return fn();
  } catch (const ParseError& e) {
    ws->error = e.what();
    return CDG_USAGE;
  } catch (const std::invalid_argument& e) {
    ws->error = e.what();
    return CDG_USAGE;
  } catch (const UnsupportedError& e) {
    ws->error = e.what();
    return CDG_UNSUPPORTED;
  } catch (const CategoryError& e) {
    ws->error = e.what();
    return CDG_UNSUPPORTED;
  } catch (const ModuleError& e) {
    ws->error = e.what();
    return CDG_UNSUPPORTED;
  } catch (const BicomplexError& e) {
    ws->error = e.what();
    return CDG_UNSUPPORTED;
  } catch (const GradingError& e) {
    ws->error = e.what();
    return CDG_UNSUPPORTED;
  } catch (const FieldError& e) {
    ws->error = e.what();
    return CDG_USAGE;
  } catch (const std::exception& e) {
    ws->error = e.what();
    return CDG_MATH_FAILURE;
  }
}

cdg_workspace::Entry& entry(cdg_workspace* ws, const char* name) {
  if (!name) throw std::invalid_argument("no category given");
  auto it = ws->categories.find(name);
  if (it == ws->categories.end()) throw std::invalid_argument(std::string("unknown category '") + name + "'");
  return it->second;
}

const CdgModule& module(cdg_workspace::Entry& e, const char* name) {
  if (!name) throw std::invalid_argument("no module given");
  auto it = e.loaded.modules.find(name);
  if (it == e.loaded.modules.end()) throw std::invalid_argument(std::string("unknown module '") + name + "'");
  return it->second;
}

cdg_status emit(cdg_report** out, std::string text, json j, bool ok) {
  auto* r = new cdg_report;
  r->text = std::move(text);
  r->json = j.dump(2);
  r->ok = ok;
  *out = r;
  return ok ? CDG_OK : CDG_MATH_FAILURE;
}

cdg_status emit_homology(cdg_report** out, const HomologyReport& h) { return emit(out, h.text(), report_to_json(h), true); }

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string join_lines(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& l : v) s += l + "\n";
  return s;
}

}  // namespace

extern "C" {

cdg_workspace* cdg_workspace_new(void) { return new cdg_workspace; }
void cdg_workspace_free(cdg_workspace* ws) { delete ws; }
const char* cdg_last_error(const cdg_workspace* ws) { return ws ? ws->error.c_str() : ""; }

cdg_status cdg_load_category(cdg_workspace* ws, const char* name, const char* path, const char* field) {
  return guarded(ws, [&] {
    if (!name || !path) throw std::invalid_argument("load: name and path are required");
    std::optional<Field> f;
    if (field) f = Field::parse(field);
    cdg_workspace::Entry e;
    e.source = read_json_file(path);
    e.loaded = load_category_file(path, f);
    ws->categories[name] = std::move(e);
    return CDG_OK;
  });
}

int cdg_has_category(const cdg_workspace* ws, const char* name) { return ws && name && ws->categories.count(name); }

cdg_status cdg_validate(cdg_workspace* ws, const char* category, const char* mod, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    std::vector<std::pair<std::string, ValidationReport>> parts;
    if (mod) {
      parts.emplace_back(std::string("module ") + mod, validate_module(module(e, mod)));
    } else {
      parts.emplace_back(std::string("category ") + category, validate(*e.loaded.category));
      for (const auto& [n, m] : e.loaded.modules) parts.emplace_back("module " + n, validate_module(m));
    }
    json j;
    std::string text;
    bool ok = true;
    for (const auto& [label, v] : parts) {
      ok = ok && v.ok();
      text += label + ":\n" + v.text();
      json items = json::array();
      for (const auto& it : v.items) items.push_back({{"axiom", it.axiom}, {"ok", it.ok}, {"witness", it.witness}});
      j[label] = {{"ok", v.ok()}, {"items", items}};
    }
    return emit(out, text, j, ok);
  });
}

cdg_status cdg_show(cdg_workspace* ws, const char* category, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    const CdgCategory& c = *e.loaded.category;
    std::ostringstream os;
    os << category << ": " << c.num_objects() << " object(s), " << c.dim() << " basis morphism(s), field "
       << c.field.name() << ", grading " << c.grading.name() << "\n";
    for (const auto& b : c.basis)
      os << "  " << b.name << ": " << c.objects[b.src] << " -> " << c.objects[b.dst] << ", degree "
         << c.grading.degree_label(b.degree) << "\n";
    for (Index x = 0; x < c.num_objects(); ++x)
      os << "  curvature at " << c.objects[x] << ": " << c.vec_str(c.curvature[x]) << "\n";
    for (const auto& [n, m] : e.loaded.modules)
      os << "  module " << n << ": " << (m.side == Side::Left ? "left" : "right") << ", dimension " << m.dim()
         << (is_cdg_module(m) ? "" : " (not CDG)") << "\n";
    json j = category_to_json(c);
    for (const auto& [n, m] : e.loaded.modules) j["modules"][n] = module_to_json(m);
    return emit(out, os.str(), j, true);
  });
}

cdg_status cdg_hh(cdg_workspace* ws, const char* category, cdg_kind kind, int cohomology, int truncation,
                  const char* coefficients, int max_depth, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    auto b = e.loaded.category;
    std::optional<CdgModule> coeff;
    Enveloping env = enveloping(b);
    if (coefficients) {
      if (!e.source.contains("bimodules") || !e.source.at("bimodules").contains(coefficients))
        throw std::invalid_argument(std::string("unknown bimodule '") + coefficients + "'");
      coeff = module_from_json(e.source.at("bimodules").at(coefficients), env.env);
    }
    const CdgModule* m = coeff ? &*coeff : nullptr;
    HomologyReport h = kind == CDG_FIRST_KIND ? hh_first_kind(b, m, cohomology != 0, truncation)
                                              : hh_second_kind(b, m, cohomology != 0, max_depth);
    return emit_homology(out, h);
  });
}

cdg_status cdg_tor(cdg_workspace* ws, const char* category, const char* right, const char* left, cdg_kind kind,
                   int truncation, int max_depth, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    const auto &n = module(e, right), &m = module(e, left);
    HomologyReport h = kind == CDG_FIRST_KIND ? tor_first_kind(n, m, truncation) : tor_second_kind(n, m, max_depth);
    return emit_homology(out, h);
  });
}

cdg_status cdg_ext(cdg_workspace* ws, const char* category, const char* first, const char* second, cdg_kind kind,
                   int truncation, int max_depth, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    const auto &l = module(e, first), &m = module(e, second);
    HomologyReport h = kind == CDG_FIRST_KIND ? ext_first_kind(l, m, truncation) : ext_second_kind(l, m, max_depth);
    return emit_homology(out, h);
  });
}

cdg_status cdg_resolve(cdg_workspace* ws, const char* category, const char* mod, int max_depth, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    // Without a module name: the file's only module if it has exactly one, else the diagonal bimodule.
    if (!mod && e.loaded.modules.size() == 1) mod = e.loaded.modules.begin()->first.c_str();
    std::optional<Enveloping> env;
    if (!mod) env = enveloping(e.loaded.category);
    Resolution r = mod ? projective_resolution(module(e, mod), max_depth)
                       : projective_resolution(diagonal_bimodule(e.loaded.category, env->env), max_depth);
    std::ostringstream os;
    json j;
    j["complete"] = r.complete;
    j["depth"] = r.depth;
    for (const auto& t : r.terms) j["term_dims"].push_back(t.dim());
    j["kernel_dims"] = r.kernel_dims;
    if (r.complete) {
      os << "complete: projective resolution of length " << r.terms.size() - 1 << "\n";
    } else {
      os << "incomplete at depth " << r.depth << "\n";
    }
    os << "term dimensions:";
    for (const auto& t : r.terms) os << " " << t.dim();
    os << "\n";
    if (!r.kernel_dims.empty()) {
      os << "kernel dimensions:";
      for (auto k : r.kernel_dims) os << " " << k;
      os << "\n";
    }
    return emit(out, os.str(), j, true);
  });
}

cdg_status cdg_complex_dump(cdg_workspace* ws, const char* category, const char* complex, const char* first,
                            const char* second, int truncation, int reduced, const char* dir, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    if (!complex || !dir) throw std::invalid_argument("complex-dump: complex kind and output directory are required");
    std::string k = complex;
    BuildOptions opt{reduced != 0};
    auto b = e.loaded.category;
    Bicomplex bc;
    if (k == "bar")
      bc = bar_bicomplex(module(e, first), module(e, second), truncation, opt);
    else if (k == "cobar")
      bc = cobar_bicomplex(module(e, first), module(e, second), truncation, opt);
    else if (k == "hochschild" || k == "hochschild-cochains") {
      Enveloping env = enveloping(b);
      bc = hochschild_bicomplex(b, diagonal_bimodule(b, env.env), k != "hochschild", truncation, opt);
    } else {
      throw std::invalid_argument("complex-dump: unknown complex '" + k + "'");
    }
    dump_bicomplex(bc, dir);
    std::ostringstream os;
    for (int i = 0; i <= bc.truncation; ++i) os << "weight " << i << ": dimension " << bc.dim(i) << "\n";
    os << "written to " << dir << "\n";
    json j = read_json_file(std::string(dir) + "/manifest.json");
    return emit(out, os.str(), j, true);
  });
}

cdg_status cdg_check(cdg_workspace* ws, const char* suite, uint64_t seed, int cases, int truncation, cdg_report** out) {
  return guarded(ws, [&] {
    if (!suite) throw std::invalid_argument("check: no suite given");
    std::string s = suite;
    SuiteReport r;
    if (s == "bicomplex-identities") {
      r = bicomplex_identity_suite(seed, cases, truncation > 0 ? truncation : 5);
    } else if (s == "functoriality") {
      r = functoriality_suite(seed, cases, truncation > 0 ? truncation : 6);
    } else if (s == "classical-hochschild") {
      std::vector<CategoryPtr> algebras;
      for (const auto& [n, e] : ws->categories) {
        const auto& c = *e.loaded.category;
        bool flat = true;
        for (const auto& h : c.curvature) flat = flat && h.empty();
        if (flat && c.num_objects() == 1) algebras.push_back(e.loaded.category);
      }
      Rng rng(seed);
      for (int k = 0; k < cases; ++k)
        algebras.push_back(random_category(rng, {Field::rationals(), GradingGroup::integers(), 4, false, false}).category);
      r = classical_hochschild_suite(algebras, truncation > 0 ? truncation : 4);
    } else {
      throw std::invalid_argument("check: unknown suite '" + s + "'");
    }
    json j;
    j["suite"] = r.name;
    j["ok"] = r.ok;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    return emit(out, r.text(), j, r.ok);
  });
}

cdg_status cdg_compare(cdg_workspace* ws, const char* what, const char* category, const char* objects,
                       const char* scalar, int truncation, cdg_report** out) {
  return guarded(ws, [&] {
    if (!what) throw std::invalid_argument("compare: nothing to compare");
    std::string w = what;
    auto& e = entry(ws, category);
    auto b = e.loaded.category;
    Comparison c;
    if (w == "BvsC") {
      std::vector<CdgModule> objs;
      for (const auto& n : split_commas(objects ? objects : "")) objs.push_back(module(e, n.c_str()));
      if (objs.empty()) throw std::invalid_argument("compare BvsC: --objects is required");
      c = compare_hh_B_vs_C(b, objs);
    } else if (w == "curvature-shift") {
      if (!scalar) throw std::invalid_argument("compare curvature-shift: --scalar is required");
      c = curvature_shift_check(b, Scalar::parse(scalar, b->field));
    } else if (w == "grading-pushforward") {
      c = pushforward_compat_check(GradingMorphism::make(b->grading, GradingGroup::mod_two()), b,
                                   truncation > 0 ? truncation : 4);
    } else {
      throw std::invalid_argument("compare: unknown comparison '" + w + "'");
    }
    json j;
    j["equal"] = c.equal;
    j["left"] = report_to_json(c.left);
    j["right"] = report_to_json(c.right);
    j["notes"] = c.notes;
    std::string text = c.line() + "\n";
    for (const auto& n : c.notes) text += "note: " + n + "\n";
    return emit(out, text, j, c.equal);
  });
}

cdg_status cdg_delta_probe(cdg_workspace* ws, const char* category, int truncation, cdg_report** out) {
  return guarded(ws, [&] {
    auto& e = entry(ws, category);
    auto b = e.loaded.category;
    std::vector<FreeGenerator> gen{{0, 0}};
    CdgModule n = free_cdg_module(free_graded_module(b, Side::Right, gen));
    CdgModule m = free_cdg_module(free_graded_module(b, Side::Left, gen));
    ProbeReport p = delta_acyclicity_probe(b, n, m, truncation > 0 ? truncation : 6);
    json j;
    j["exact"] = p.exact;
    j["lines"] = p.lines;
    return emit(out, join_lines(p.lines) + (p.exact ? "delta columns exact\n" : "delta columns NOT exact\n"), j, p.exact);
  });
}

const char* cdg_report_text(const cdg_report* r) { return r ? r->text.c_str() : ""; }
const char* cdg_report_json(const cdg_report* r) { return r ? r->json.c_str() : "{}"; }
int cdg_report_ok(const cdg_report* r) { return r && r->ok; }
void cdg_report_free(cdg_report* r) { delete r; }

cdg_status cdg_report_from_json(const char* text, cdg_report** out) {
  try {
    HomologyReport h = report_from_json(json::parse(text ? text : ""));
    return emit_homology(out, h);
  } catch (const std::exception&) {
    return CDG_USAGE;
  }
}

}  // extern "C"
