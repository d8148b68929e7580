#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermatsym/symplectic.hpp"
#include "oracles.hpp"

using namespace fermatsym;

namespace {

Verdict constraint(int n, int sign) { return {Verdict::Kind::Constraint, QRConstraint{n, sign}}; }

std::optional<Verdict> mult(int v, int vc, SymplecticType type) {
  return criterion_multiplicative(ResidueModP{v}, ResidueModP{vc}, type);
}

PrimeResidues residues(std::initializer_list<std::pair<int, int>> items) {
  PrimeResidues out;
  for (auto [ell, v] : items) out.emplace_back(ell, ResidueModP{v});
  return out;
}

}  // namespace

TEST_CASE("QRConstraint reduces to the squarefree kernel") {
  CHECK(QRConstraint::of(8, 1) == QRConstraint{2, 1});
  CHECK(QRConstraint::of(-12, -1) == QRConstraint{-3, -1});
  CHECK(QRConstraint::of(4, 1) == QRConstraint{1, 1});
  CHECK_THROWS_AS(QRConstraint::of(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(QRConstraint::of(3, 0), std::invalid_argument);
  CHECK(QRConstraint{-6, 1}.to_string() == "(-6)=+1");
  CHECK(QRConstraint{2, 1}.negated() == QRConstraint{2, -1});
}

TEST_CASE("criterion at 2") {
  CHECK(criterion_at_two(ExactValuation{10}, ExactValuation{4}, -1) == SymplecticType::Symplectic);
  CHECK(criterion_at_two(ExactValuation{8}, ExactValuation{4}, -1) == SymplecticType::AntiSymplectic);
  CHECK(criterion_at_two(ExactValuation{8}, ExactValuation{4}, 1) == SymplecticType::Symplectic);
  CHECK(criterion_at_two(ExactValuation{-2}, ExactValuation{4}, -1) == SymplecticType::Symplectic);
  CHECK_THROWS_AS(criterion_at_two(ExactValuation{8}, ExactValuation{4}, 0), std::invalid_argument);
}

TEST_CASE("criterion at 2: flipping (2/p) matters only when valuations differ mod 3") {
  for (int v = -12; v <= 12; ++v) {
    for (int w = -12; w <= 12; ++w) {
      const auto plus = criterion_at_two(ExactValuation{v}, ExactValuation{w}, 1);
      const auto minus = criterion_at_two(ExactValuation{v}, ExactValuation{w}, -1);
      REQUIRE(plus != SymplecticType::Unknown);
      REQUIRE(minus != SymplecticType::Unknown);
      REQUIRE((plus != minus) == (((v - w) % 3 + 3) % 3 != 0));
    }
  }
}

TEST_CASE("criterion at 2, checked form") {
  const TwoAdicSide frey{ExactValuation{10}, true};
  const TwoAdicSide cand{ExactValuation{4}, true};
  CHECK(criterion_at_two(frey, cand, -1) == SymplecticType::Symplectic);
  CHECK_THROWS_AS(criterion_at_two(TwoAdicSide{ExactValuation{10}, false}, cand, 1), std::invalid_argument);
  CHECK_THROWS_AS(criterion_at_two(TwoAdicSide{std::nullopt, true}, cand, 1), std::invalid_argument);
}

TEST_CASE("criterion at multiplicative primes") {
  CHECK(mult(2, 1, SymplecticType::Symplectic) == constraint(2, 1));
  CHECK(mult(2, 4, SymplecticType::Symplectic) == constraint(2, 1));
  CHECK(mult(2, 2, SymplecticType::AntiSymplectic) == Verdict{Verdict::Kind::Contradiction, std::nullopt});
  CHECK(mult(2, 2, SymplecticType::Symplectic) == Verdict{Verdict::Kind::AlwaysConsistent, std::nullopt});
  CHECK(mult(-2, 3, SymplecticType::Symplectic) == constraint(-6, 1));
  CHECK(mult(-2, 3, SymplecticType::AntiSymplectic) == constraint(-6, -1));
  CHECK_FALSE(mult(2, 3, SymplecticType::Unknown).has_value());
  CHECK_THROWS_AS(mult(0, 3, SymplecticType::Symplectic), std::invalid_argument);
}

TEST_CASE("equal residues are always consistent under the symplectic type") {
  for (int v = -200; v <= 200; ++v) {
    if (v == 0) continue;
    REQUIRE(mult(v, v, SymplecticType::Symplectic) == Verdict{Verdict::Kind::AlwaysConsistent, std::nullopt});
  }
}

// At a concrete prime p the verdict must say: "v/v' is a square mod p"
// holds exactly when the type is symplectic.
TEST_CASE("multiplicative verdicts match squares modulo concrete primes") {
  for (oracle::i64 p : {13, 17, 19, 23}) {
    for (int v = -30; v <= 30; ++v) {
      for (int vc = -30; vc <= 30; ++vc) {
        if (v % p == 0 || vc % p == 0) continue;
        for (auto type : {SymplecticType::Symplectic, SymplecticType::AntiSymplectic}) {
          const auto verdict = *mult(v, vc, type);
          const bool square = oracle::legendre_by_squares(static_cast<oracle::i64>(v) * vc, p) == 1;
          const bool consistent = square == (type == SymplecticType::Symplectic);
          bool claimed = false;
          switch (verdict.kind) {
            case Verdict::Kind::AlwaysConsistent:
              claimed = true;
              break;
            case Verdict::Kind::Contradiction:
              claimed = false;
              break;
            case Verdict::Kind::Constraint:
              claimed = oracle::legendre_by_squares(static_cast<oracle::i64>(verdict.constraint->n), p) ==
                        verdict.constraint->sign;
              break;
          }
          CAPTURE(v);
          CAPTURE(vc);
          CAPTURE(p);
          REQUIRE(claimed == consistent);
        }
      }
    }
  }
}

TEST_CASE("pairwise consistency") {
  const auto out = pairwise_consistency(residues({{2, -4}, {3, 2}, {5, 2}}), residues({{2, 4}, {3, 3}, {5, 1}}));
  CHECK(out == std::vector<QRConstraint>{{-6, 1}, {-2, 1}, {3, 1}});

  for (const auto& c : pairwise_consistency(residues({{3, 5}, {7, -2}, {11, 3}}), residues({{3, 5}, {7, -2}, {11, 3}})))
    CHECK(c == QRConstraint{1, 1});

  CHECK(pairwise_consistency(residues({{3, 2}, {7, 2}}), residues({{3, 1}, {7, 1}})) ==
        std::vector<QRConstraint>{{1, 1}});

  CHECK_THROWS_AS(pairwise_consistency(residues({{3, 2}}), residues({{3, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(pairwise_consistency(residues({{3, 2}, {5, 0}}), residues({{3, 1}, {5, 1}})),
                  std::invalid_argument);
}

// Each pair constraint holds mod p exactly when the two symplectic types
// computed from the individual primes agree.
TEST_CASE("pairwise constraints match squares modulo concrete primes") {
  oracle::Gen gen(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const oracle::i64 p = std::vector<oracle::i64>{13, 17, 29, 31}[gen.range(0, 3)];
    const auto pick = [&] {
      for (;;) {
        const oracle::i64 v = gen.nonzero(-40, 40);
        if (v % p != 0) return v;
      }
    };
    const oracle::i64 v1 = pick(), v2 = pick(), w1 = pick(), w2 = pick();
    const auto out = pairwise_consistency(residues({{3, static_cast<int>(v1)}, {5, static_cast<int>(v2)}}),
                                          residues({{3, static_cast<int>(w1)}, {5, static_cast<int>(w2)}}));
    REQUIRE(out.size() == 1);
    const bool agree = oracle::legendre_by_squares(v1 * w1, p) == oracle::legendre_by_squares(v2 * w2, p);
    REQUIRE((oracle::legendre_by_squares(static_cast<oracle::i64>(out[0].n), p) == out[0].sign) == agree);
  }
}

TEST_CASE("pairwise consistency is symmetric") {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 500; ++trial) {
    const int v1 = static_cast<int>(gen.nonzero(-20, 20)), v2 = static_cast<int>(gen.nonzero(-20, 20));
    const int v3 = static_cast<int>(gen.nonzero(-20, 20)), w1 = static_cast<int>(gen.nonzero(-20, 20));
    const int w2 = static_cast<int>(gen.nonzero(-20, 20)), w3 = static_cast<int>(gen.nonzero(-20, 20));
    const auto base = pairwise_consistency(residues({{3, v1}, {5, v2}, {7, v3}}), residues({{3, w1}, {5, w2}, {7, w3}}));
    const auto swapped =
        pairwise_consistency(residues({{3, w1}, {5, w2}, {7, w3}}), residues({{3, v1}, {5, v2}, {7, v3}}));
    REQUIRE(swapped == base);
    // Listing the primes in another order yields the same constraints.
    auto permuted =
        pairwise_consistency(residues({{7, v3}, {3, v1}, {5, v2}}), residues({{7, w3}, {3, w1}, {5, w2}}));
    auto sorted_base = base;
    std::sort(permuted.begin(), permuted.end());
    std::sort(sorted_base.begin(), sorted_base.end());
    REQUIRE(permuted == sorted_base);
  }
}

// When the verdicts at two primes force opposite types, the pair constraint
// must fail at p; exhaustive over residues 1..10 with p = 13.
TEST_CASE("pairwise detects opposite forced types at p = 13") {
  const oracle::i64 p = 13;
  int opposite = 0;
  for (int v1 = 1; v1 <= 10; ++v1)
    for (int v2 = 1; v2 <= 10; ++v2)
      for (int w1 = 1; w1 <= 10; ++w1)
        for (int w2 = 1; w2 <= 10; ++w2) {
          const bool symplectic1 = oracle::legendre_by_squares(v1 * w1, p) == 1;
          const bool symplectic2 = oracle::legendre_by_squares(v2 * w2, p) == 1;
          const auto c = pairwise_consistency(residues({{3, v1}, {5, v2}}), residues({{3, w1}, {5, w2}})).at(0);
          const bool satisfied = oracle::legendre_by_squares(static_cast<oracle::i64>(c.n), p) == c.sign;
          if (symplectic1 != symplectic2) ++opposite;
          REQUIRE(satisfied == (symplectic1 == symplectic2));
        }
  CHECK(opposite > 0);
}
