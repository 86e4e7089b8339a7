#include <doctest.h>

#include "suites.hpp"
#include "support.hpp"

using namespace cdg;

TEST_CASE("pushforward along a basis change is a chain map, and a perturbed one is not") {
  Rng rng(31);
  int checked = 0;
  for (int k = 0; k < 6; ++k) {
    auto b = random_category(rng, {Field::rationals(), GradingGroup::mod_two(), 3, true, true}).category;
    CdgFunctor f = random_basis_change(rng, b);
    CdgModule n = random_free_module(rng, f.dst, Side::Right);
    CdgModule m = random_free_module(rng, f.dst, Side::Left);
    Bicomplex src = bar_bicomplex(restrict(f, n), restrict(f, m), 4);
    Bicomplex dst = bar_bicomplex(n, m, 4);
    BlockMap fs = pushforward_bar(f, src, dst, n, m);
    std::string why;
    CHECK_MESSAGE(is_chain_map(fs, src, dst, &why), why);

    // scale one nonzero column of one block
    for (auto& [key, blk] : fs.blocks) {
      if (key.first != 1) continue;
      for (std::size_t j = 0; j < blk.cols(); ++j)
        if (!blk.col(j).empty()) {
          blk.set_col(j, blk.col(j).scaled(2));
          CHECK_FALSE(is_chain_map(fs, src, dst));
          ++checked;
          goto next;
        }
    }
  next:;
  }
  CHECK(checked > 0);
}

TEST_CASE("functoriality suite on a handful of seeds") {
  auto r = functoriality_suite(5, 4, 5);
  CHECK_MESSAGE(r.ok, r.text());
}

TEST_CASE("identity suite on a handful of seeds over F_5 and Z") {
  auto r = bicomplex_identity_suite(3, 4, 4, Field::prime(5));
  CHECK_MESSAGE(r.ok, r.text());
  auto z = bicomplex_identity_suite(3, 4, 4, Field::rationals(), GradingGroup::integers());
  CHECK_MESSAGE(z.ok, z.text());
}
