#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermatsym/ecmodel.hpp"
#include "oracles.hpp"

using namespace fermatsym;

namespace {

WeierstrassModel random_model(oracle::Gen& gen, oracle::i64 bound) {
  for (;;) {
    WeierstrassModel m{gen.range(-1, 1), gen.range(-2, 2), gen.range(-1, 1), gen.range(-bound, bound),
                       gen.range(-bound, bound)};
    if (invariants(m).delta != 0) return m;
  }
}

// Models whose invariants are computed can collide with a singular cubic.
bool singular(const WeierstrassModel& m) {
  try {
    invariants(m);
    return false;
  } catch (const DegenerateModel&) {
    return true;
  }
}

}  // namespace

TEST_CASE("invariants of small models") {
  const auto a = invariants({0, 0, 0, 0, 1});
  CHECK(a.delta == -432);
  const auto b = invariants({0, 0, 0, -1, 0});
  CHECK(b.delta == 64);
  CHECK(b.c4 == 48);
  CHECK(b.j_num == 1728);
  CHECK(b.j_den == 1);
  CHECK_THROWS_AS(invariants({0, 0, 0, 0, 0}), DegenerateModel);
}

TEST_CASE("invariants satisfy the standard identities") {
  oracle::Gen gen(42);
  for (int i = 0; i < 500; ++i) {
    const auto m = random_model(gen, 1000);
    const auto inv = invariants(m);
    CAPTURE(to_string(m));
    REQUIRE(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 == 1728 * inv.delta);
    REQUIRE(4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 * inv.b4);
    REQUIRE(inv.delta == oracle::delta_from_cubic(static_cast<oracle::i64>(m.a1), static_cast<oracle::i64>(m.a2),
                                                  static_cast<oracle::i64>(m.a3), static_cast<oracle::i64>(m.a4),
                                                  static_cast<oracle::i64>(m.a6)));
    REQUIRE(inv.j_den > 0);
    REQUIRE(gcd(inv.j_num, inv.j_den) == 1);
    REQUIRE(inv.j_num * inv.delta == inv.j_den * inv.c4 * inv.c4 * inv.c4);
  }
}

TEST_CASE("transform: identity, scaling, inverse, composition") {
  const WeierstrassModel e{0, 0, 0, -1, 0};
  CHECK(transform(e, {}) == e);

  const CoordinateChange half{Rational(1, 2), 0, 0, 0};
  const auto scaled = transform(e, half);
  CHECK(scaled == WeierstrassModel{0, 0, 0, -16, 0});
  CHECK(invariants(scaled).delta == 64 * Int(4096));
  CHECK(transform(scaled, half.inverse()) == e);

  const auto twice = transform(scaled, half);
  CHECK(invariants(twice).delta == invariants(e).delta * (Int(1) << 24));
  CHECK(transform(e, half.compose(half)) == twice);

  CHECK_THROWS_AS(transform(e, {2, 0, 0, 0}), NonIntegralModel);
}

TEST_CASE("compose and inverse agree with sequential transforms") {
  oracle::Gen gen(7);
  for (int i = 0; i < 300; ++i) {
    const auto m = random_model(gen, 200);
    const CoordinateChange c1{Rational(1, gen.range(1, 3)), gen.range(-5, 5), gen.range(-3, 3), gen.range(-5, 5)};
    const CoordinateChange c2{Rational(1, gen.range(1, 2)), gen.range(-5, 5), gen.range(-3, 3), gen.range(-5, 5)};
    const auto m1 = transform(m, c1);
    REQUIRE(transform(m1, c2) == transform(m, c1.compose(c2)));
    REQUIRE(transform(m1, c1.inverse()) == m);
    REQUIRE(c1.compose(c1.inverse()) == CoordinateChange{});
  }
}

TEST_CASE("minimal_model of small examples") {
  const auto e = minimal_model({0, 0, 0, -1, 0});
  CHECK(e.model == WeierstrassModel{0, 0, 0, -1, 0});
  CHECK(e.disc_valuations == std::map<Int, unsigned>{{2, 6}});
  CHECK(e.disc_sign == 1);

  const auto scaled = minimal_model({0, 0, 0, -16, 0});
  CHECK(scaled.inv.delta == 64);

  // 42a1 given by a non-reduced model.
  const WeierstrassModel m42{1, 1, 1, -4, 5};
  const auto moved = transform(m42, {Rational(1, 6), 3, -2, 7});
  const auto min42 = minimal_model(moved);
  CHECK(min42.model == m42);
  CHECK(min42.disc_sign == -1);
  CHECK(min42.disc_valuations == std::map<Int, unsigned>{{2, 8}, {3, 2}, {7, 1}});
}

TEST_CASE("minimal_model is idempotent and undoes random scalings") {
  oracle::Gen gen(2024);
  for (int i = 0; i < 300; ++i) {
    const auto m = random_model(gen, 300);
    const auto min = minimal_model(m);
    CAPTURE(to_string(m));
    REQUIRE(minimal_model(min.model).model == min.model);
    const CoordinateChange c{Rational(1, gen.range(1, 6)), gen.range(-9, 9), gen.range(-9, 9), gen.range(-9, 9)};
    REQUIRE(minimal_model(transform(m, c)).model == min.model);
    // The minimal discriminant divides the original one by a 12th power.
    const Int q = invariants(m).delta / min.inv.delta;
    REQUIRE(q * min.inv.delta == invariants(m).delta);
    bool twelfth_power = false;
    for (Int u = 1; u * u <= 1'000'000 && !twelfth_power; ++u) twelfth_power = boost::multiprecision::pow(u, 12) == q;
    REQUIRE(twelfth_power);
  }
}

TEST_CASE("unimodular changes keep the minimal discriminant") {
  oracle::Gen gen(404);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_model(gen, 500);
    const auto base = minimal_model(m);
    const CoordinateChange c{gen.coin() ? 1 : -1, gen.range(-20, 20), gen.range(-20, 20), gen.range(-20, 20)};
    const auto moved = minimal_model(transform(m, c));
    REQUIRE(moved.disc_valuations == base.disc_valuations);
    REQUIRE(moved.disc_sign == base.disc_sign);
    REQUIRE(moved.model == base.model);
  }
}

TEST_CASE("scaling a minimal model by ell is undone") {
  oracle::Gen gen(505);
  for (int ell : {2, 3, 5, 7}) {
    for (int i = 0; i < 50; ++i) {
      const auto start = minimal_model(random_model(gen, 100)).model;
      const auto scaled = transform(start, {Rational(1, ell), gen.range(-3, 3), gen.range(-3, 3), gen.range(-3, 3)});
      CHECK(invariants(scaled).delta == invariants(start).delta * boost::multiprecision::pow(Int(ell), 12));
      REQUIRE(minimal_model(scaled).model == start);
    }
  }
}

TEST_CASE("reduction types") {
  const WeierstrassModel e{0, 0, 0, -1, 0};
  CHECK(reduction_type(e, 7).kind == Reduction::Good);
  const auto at2 = reduction_type(e, 2);
  CHECK(at2.kind == Reduction::Additive);
  CHECK(at2.potentially_good);

  const WeierstrassModel m30{1, 0, 1, 1, 2};
  for (int ell : {2, 3, 5}) CHECK(reduction_type(m30, ell).kind == Reduction::Multiplicative);
  CHECK_FALSE(reduction_type(m30, 3).potentially_good);
  CHECK(reduction_type(m30, 7).kind == Reduction::Good);

  // y^2 = x^3 + 3 has additive, potentially good reduction at 3 (j = 0).
  const auto cusp = reduction_type(minimal_model({0, 0, 0, 0, 3}).model, 3);
  CHECK(cusp.kind == Reduction::Additive);
  CHECK(cusp.potentially_good);
}

TEST_CASE("singular models are rejected everywhere") {
  CHECK(singular({0, 0, 0, -3, 2}));
  CHECK_THROWS_AS(minimal_model({0, 0, 0, -3, 2}), DegenerateModel);
}
