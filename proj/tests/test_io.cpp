#include <doctest.h>

#include <filesystem>

#include "random_cdg.hpp"
#include "support.hpp"

using namespace cdg;

TEST_CASE("categories and modules round-trip through JSON") {
  for (const char* name : {"counterexample", "endalgebra", "matrix2", "exterior"}) {
    CAPTURE(name);
    auto loaded = cdgtest::load(name);
    CdgCategory back = category_from_json(category_to_json(*loaded.category));
    CHECK(same_structure(back, *loaded.category));
    for (const auto& [n, m] : loaded.modules) {
      CdgModule mb = module_from_json(module_to_json(m), loaded.category);
      CHECK(mb.dim() == m.dim());
      CHECK(module_to_json(mb) == module_to_json(m));
    }
  }
}

TEST_CASE("random categories round-trip through JSON, including over F_p") {
  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    Field f = k % 2 ? Field::prime(7) : Field::rationals();
    auto rc = random_category(rng, {f, GradingGroup::mod_two(), 4, true, true});
    CHECK(same_structure(category_from_json(category_to_json(*rc.category)), *rc.category));
  }
}

TEST_CASE("field override reduces the tables") {
  auto b = cdgtest::category("counterexample", Field::prime(5));
  CHECK(b->field.characteristic() == 5);
  CHECK(validate(*b).ok());
}

TEST_CASE("malformed input is a parse error") {
  CHECK_THROWS_AS(category_from_json(json::parse(R"({"field": "Q"})")), ParseError);
  CHECK_THROWS_AS(category_from_json(json::parse(R"({"field": "Q", "grading": "Z", "objects": ["a"],
      "basis": [{"name": "1", "src": "a", "dst": "b", "degree": 0}], "units": {"a": "1"}})")),
                  ParseError);
  CHECK_THROWS_AS(load_category_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("homology reports round-trip and re-render identically") {
  auto b = cdgtest::category("counterexample");
  HomologyReport r = hh_second_kind(b, nullptr, false);
  HomologyReport back = report_from_json(report_to_json(r));
  CHECK(back.text() == r.text());

  auto loaded = cdgtest::load("exterior");
  HomologyReport t = tor_first_kind(loaded.modules.at("k_right"), loaded.modules.at("k"), 4);
  json j = report_to_json(t);
  CHECK(j["method"] == "TruncationStabilized");
  CHECK(report_from_json(json::parse(j.dump())).text() == t.text());
}

TEST_CASE("bicomplex dumps reload with identical matrices") {
  auto loaded = cdgtest::load("counterexample");
  Bicomplex bc = bar_bicomplex(loaded.modules.at("free1"), loaded.modules.at("free1_left"), 3);
  auto dir = std::filesystem::temp_directory_path() / "cdg-dump-test";
  std::filesystem::remove_all(dir);
  dump_bicomplex(bc, dir.string());
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  Bicomplex back = load_bicomplex_dump(dir.string(), Field::rationals());
  CHECK(back.truncation == bc.truncation);
  for (int i = 0; i <= bc.truncation; ++i) {
    CHECK(back.dim(i) == bc.dim(i));
    CHECK(back.del[i] == bc.del[i]);
    CHECK(back.d[i] == bc.d[i]);
    CHECK(back.delta[i] == bc.delta[i]);
  }
  std::filesystem::remove_all(dir);
}
