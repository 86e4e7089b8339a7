#pragma once
// Property suites over seeded random inputs, shared by the CLI `check`
// command and the tests.
#include <cstdint>
#include <string>
#include <vector>

#include "random_cdg.hpp"

namespace cdg {

struct SuiteReport {
  std::string name;
  bool ok = true;
  int cases = 0;
  std::vector<std::string> failures;
  std::vector<std::string> lines;  // one per case
  void fail(const std::string& what);
  std::string text() const;
};

// The five identities on bar, cobar and both Hochschild builders.
SuiteReport bicomplex_identity_suite(std::uint64_t seed, int cases, int t = 5, const Field& f = Field::rationals(),
                                     const GradingGroup& g = GradingGroup::mod_two());
// Pushforward/pullback maps are chain maps and compose correctly, for a
// strict basis change F followed by an identity-with-connection G.
SuiteReport functoriality_suite(std::uint64_t seed, int cases, int t = 6, const Field& f = Field::rationals());
// h = 0 one-object algebras: Hochschild chain bicomplex against the classical
// formula (diagonal coefficients).
SuiteReport classical_hochschild_suite(const std::vector<CategoryPtr>& algebras, int t = 4);

// The classical Hochschild chain differential b and internal differential
// of C_i = A x A^{x i}, written directly on tuples (m, b_1, ..., b_i).
// Returns coefficient maps keyed by target tuple.
std::vector<std::pair<std::vector<Index>, Scalar>> classical_hochschild_b(const CdgCategory& a,
                                                                         const std::vector<Index>& tuple);
std::vector<std::pair<std::vector<Index>, Scalar>> classical_hochschild_d(const CdgCategory& a,
                                                                         const std::vector<Index>& tuple);

}  // namespace cdg
