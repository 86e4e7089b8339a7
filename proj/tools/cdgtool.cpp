// Command-line front end over the C API.
#include <cdg/cdg.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"

namespace fs = std::filesystem;

namespace {

constexpr uint64_t kDefaultSeed = 7;

struct WorkspaceDeleter {
  void operator()(cdg_workspace* w) const { cdg_workspace_free(w); }
};
struct ReportDeleter {
  void operator()(cdg_report* r) const { cdg_report_free(r); }
};
using Workspace = std::unique_ptr<cdg_workspace, WorkspaceDeleter>;
using Report = std::unique_ptr<cdg_report, ReportDeleter>;

struct Options {
  std::string field;
  std::string json_out;
  uint64_t seed = kDefaultSeed;
  int cases = 20;
  int truncate = 6;
  int max_depth = 20;
};

fs::path fixture_dir() {
  if (const char* env = std::getenv("CDG_FIXTURE_DIR")) return env;
  return CDG_FIXTURE_DIR;
}

// A category argument is either a path or the stem of a bundled fixture.
fs::path resolve_path(const std::string& arg) {
  fs::path p(arg);
  if (fs::exists(p)) return p;
  fs::path f = fixture_dir() / (arg + ".json");
  if (fs::exists(f)) return f;
  return p;
}

std::string stem_of(const std::string& arg) { return fs::path(arg).stem().string(); }

int fail(const cdg_workspace* ws, cdg_status st) {
  std::cerr << "error: " << cdg_last_error(ws) << "\n";
  return st;
}

int load(cdg_workspace* ws, const std::string& arg, const Options& o, std::string& name) {
  name = stem_of(arg);
  fs::path p = resolve_path(arg);
  if (!fs::exists(p)) {
    std::cerr << "error: no such file or fixture: " << arg << "\n";
    return CDG_USAGE;
  }
  cdg_status st = cdg_load_category(ws, name.c_str(), p.c_str(), o.field.empty() ? nullptr : o.field.c_str());
  return st == CDG_OK ? 0 : fail(ws, st);
}

// Prints the report, writes JSON if asked, and maps the status to the exit code.
int finish(cdg_workspace* ws, cdg_status st, cdg_report* raw, const Options& o) {
  Report r(raw);
  if (!r) return fail(ws, st);
  std::cout << cdg_report_text(r.get());
  if (!o.json_out.empty()) {
    std::ofstream f(o.json_out);
    if (!f) {
      std::cerr << "error: cannot write " << o.json_out << "\n";
      return CDG_USAGE;
    }
    f << cdg_report_json(r.get()) << "\n";
  }
  return st;
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

cdg_kind parse_kind(const std::string& k) { return k == "first" ? CDG_FIRST_KIND : CDG_SECOND_KIND; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdgtool: Hochschild and derived-functor computations for CDG-categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "override the coefficient field: Q or F_p");
  app.add_option("--json", o.json_out, "write the report as JSON to this file");
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--max-depth", o.max_depth, "resolution depth bound")->capture_default_str();

  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate", "check the axioms of categories and their modules");
  validate->add_option("files", files, "fixture names or paths")->required();
  std::string module_name;
  validate->add_option("--module", module_name, "validate only this module");

  std::string cat, kind = "second", variant = "homology", coefficients, first, second, objects, scalar, dir, suite;
  bool reduced = false;
  auto* hh = app.add_subcommand("hh", "Hochschild (co)homology");
  hh->add_option("category", cat)->required();
  hh->add_option("--kind", kind)->check(CLI::IsMember({"first", "second"}))->capture_default_str();
  hh->add_option("--variant", variant)->check(CLI::IsMember({"homology", "cohomology"}))->capture_default_str();
  hh->add_option("--truncate", o.truncate)->capture_default_str();
  hh->add_option("--coefficients", coefficients, "bimodule from the file's \"bimodules\" map");

  auto* tor = app.add_subcommand("tor", "Tor of a right and a left module");
  tor->add_option("category", cat)->required();
  tor->add_option("right", first)->required();
  tor->add_option("left", second)->required();
  tor->add_option("--kind", kind)->check(CLI::IsMember({"first", "second"}))->capture_default_str();
  tor->add_option("--truncate", o.truncate)->capture_default_str();

  auto* ext = app.add_subcommand("ext", "Ext between two left modules");
  ext->add_option("category", cat)->required();
  ext->add_option("first", first)->required();
  ext->add_option("second", second)->required();
  ext->add_option("--kind", kind)->check(CLI::IsMember({"first", "second"}))->capture_default_str();
  ext->add_option("--truncate", o.truncate)->capture_default_str();

  auto* resolve = app.add_subcommand("resolve", "graded projective resolution of a module");
  resolve->add_option("category", cat)->required();
  resolve->add_option("module", first, "module name (default: the only module in the file, else the diagonal bimodule)");
  resolve->add_option("--max-depth", o.max_depth)->capture_default_str();

  std::string complex = "bar";
  auto* dump = app.add_subcommand("complex-dump", "write a truncated bicomplex as triplet files");
  dump->add_option("category", cat)->required();
  dump->add_option("--complex", complex)
      ->check(CLI::IsMember({"bar", "cobar", "hochschild", "hochschild-cochains"}))
      ->capture_default_str();
  dump->add_option("--first", first);
  dump->add_option("--second", second);
  dump->add_option("--truncate", o.truncate)->capture_default_str();
  dump->add_flag("--reduced", reduced);
  dump->add_option("--out", dir)->required();

  int check_t = 0;
  auto* check = app.add_subcommand("check", "run a property suite");
  check->add_option("suite", suite)
      ->check(CLI::IsMember({"bicomplex-identities", "functoriality", "classical-hochschild"}))
      ->required();
  check->add_option("--seed", o.seed)->capture_default_str();
  check->add_option("--cases", o.cases)->capture_default_str();
  check->add_option("--truncate", check_t, "truncation (suite default when omitted)");

  std::string what;
  int compare_t = 0;
  auto* compare = app.add_subcommand("compare", "compare two computations");
  compare->add_option("what", what)->check(CLI::IsMember({"BvsC", "curvature-shift", "grading-pushforward"}))->required();
  compare->add_option("category", cat)->required();
  compare->add_option("--objects", objects, "comma-separated module names");
  compare->add_option("--scalar", scalar, "curvature shift constant");
  compare->add_option("--truncate", compare_t);

  auto* probe = app.add_subcommand("delta-probe", "exactness of the delta columns for a curved base");
  probe->add_option("category", cat)->required();
  probe->add_option("--truncate", o.truncate)->capture_default_str();

  auto* show = app.add_subcommand("show", "summarize a category, or re-render a saved report");
  show->add_option("target", cat)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : CDG_USAGE;
  }

  Workspace ws(cdg_workspace_new());
  cdg_report* r = nullptr;
  std::string name;

  if (*validate) {
    int worst = 0;
    for (const auto& f : files) {
      if (int rc = load(ws.get(), f, o, name)) return rc;
      cdg_status st = cdg_validate(ws.get(), name.c_str(), opt(module_name), &r);
      int rc = finish(ws.get(), st, r, o);
      if (rc > worst) worst = rc;
    }
    return worst;
  }

  if (*show) {
    // A saved report is re-rendered; anything else is treated as a category.
    fs::path p = resolve_path(cat);
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    if (in && buf.str().find("\"method\"") != std::string::npos) {
      cdg_status st = cdg_report_from_json(buf.str().c_str(), &r);
      if (st != CDG_OK) {
        std::cerr << "error: not a valid report: " << p << "\n";
        return st;
      }
      return finish(ws.get(), st, r, o);
    }
    if (int rc = load(ws.get(), cat, o, name)) return rc;
    cdg_status st = cdg_show(ws.get(), name.c_str(), &r);
    return finish(ws.get(), st, r, o);
  }

  if (*check) {
    const char* extra[] = {"exterior", "dual-numbers", "matrix2"};
    if (suite == "classical-hochschild")
      for (const char* e : extra)
        if (int rc = load(ws.get(), e, o, name)) return rc;
    cdg_status st = cdg_check(ws.get(), suite.c_str(), o.seed, o.cases, check_t, &r);
    return finish(ws.get(), st, r, o);
  }

  if (int rc = load(ws.get(), cat, o, name)) return rc;
  const char* n = name.c_str();
  cdg_status st = CDG_OK;
  if (*hh) {
    st = cdg_hh(ws.get(), n, parse_kind(kind), variant == "cohomology", o.truncate, opt(coefficients), o.max_depth, &r);
  } else if (*tor) {
    st = cdg_tor(ws.get(), n, first.c_str(), second.c_str(), parse_kind(kind), o.truncate, o.max_depth, &r);
  } else if (*ext) {
    st = cdg_ext(ws.get(), n, first.c_str(), second.c_str(), parse_kind(kind), o.truncate, o.max_depth, &r);
  } else if (*resolve) {
    st = cdg_resolve(ws.get(), n, opt(first), o.max_depth, &r);
  } else if (*dump) {
    st = cdg_complex_dump(ws.get(), n, complex.c_str(), opt(first), opt(second), o.truncate, reduced, dir.c_str(), &r);
  } else if (*compare) {
    st = cdg_compare(ws.get(), what.c_str(), n, opt(objects), opt(scalar), compare_t, &r);
  } else if (*probe) {
    st = cdg_delta_probe(ws.get(), n, o.truncate, &r);
  }
  return finish(ws.get(), st, r, o);
}
