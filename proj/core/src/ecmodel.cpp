#include "fermatsym/ecmodel.hpp"

#include <optional>

namespace fermatsym {

namespace {

Int exact_integer(const Rational& q, const char* what) {
  if (boost::multiprecision::denominator(q) != 1)
    throw NonIntegralModel(std::string("coordinate change gives non-integral ") + what);
  return boost::multiprecision::numerator(q);
}

struct Numerators {
  Int n1, n2, n3, n4, n6;
};

// Numerators of the transformed coefficients before division by u^i.
Numerators shifted(const WeierstrassModel& m, const Int& r, const Int& s, const Int& t) {
  return {
      m.a1 + 2 * s,
      m.a2 - s * m.a1 + 3 * r - s * s,
      m.a3 + r * m.a1 + 2 * t,
      m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t,
      m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1,
  };
}

// Integral model obtained with u = ell, or nullopt if (r, s, t) does not give one.
std::optional<WeierstrassModel> try_reduce(const WeierstrassModel& m, const Int& ell, const Int& r, const Int& s,
                                           const Int& t) {
  const Numerators n = shifted(m, r, s, t);
  const Int u2 = ell * ell, u3 = u2 * ell, u4 = u2 * u2, u6 = u3 * u3;
  if (n.n1 % ell != 0 || n.n2 % u2 != 0 || n.n3 % u3 != 0 || n.n4 % u4 != 0 || n.n6 % u6 != 0)
    return std::nullopt;
  return WeierstrassModel{n.n1 / ell, n.n2 / u2, n.n3 / u3, n.n4 / u4, n.n6 / u6};
}

std::optional<WeierstrassModel> search_reduction(const WeierstrassModel& m, const Int& ell) {
  const Int ell2 = ell * ell, ell3 = ell2 * ell;
  for (Int s = 0; s < ell; ++s) {
    if ((m.a1 + 2 * s) % ell != 0) continue;
    for (Int r = 0; r < ell2; ++r) {
      if ((m.a2 - s * m.a1 + 3 * r - s * s) % ell2 != 0) continue;
      for (Int t = 0; t < ell3; ++t) {
        if (auto reduced = try_reduce(m, ell, r, s, t)) return reduced;
      }
    }
  }
  return std::nullopt;
}

std::optional<WeierstrassModel> direct_reduction(const WeierstrassModel& m, const Int& ell) {
  // ell >= 5: 2 and 3 are units, so kill a1 mod ell, a2 mod ell^2, a3 mod ell^3.
  const Int ell2 = ell * ell, ell3 = ell2 * ell;
  const std::uint64_t e1 = static_cast<std::uint64_t>(ell);
  if (ell3 > Int(std::numeric_limits<std::uint32_t>::max())) return search_reduction(m, ell);
  const std::uint64_t e2 = static_cast<std::uint64_t>(ell2), e3 = static_cast<std::uint64_t>(ell3);
  const Int s = mod_floor(-m.a1 * Int(inv_mod(2, e1)), ell);
  const Int r = mod_floor(-(m.a2 - s * m.a1 - s * s) * Int(inv_mod(3, e2)), ell2);
  const Int t = mod_floor(-(m.a3 + r * m.a1) * Int(inv_mod(2, e3)), ell3);
  if (auto reduced = try_reduce(m, ell, r, s, t)) return reduced;
  return std::nullopt;
}

WeierstrassModel shift(const WeierstrassModel& m, const Int& r, const Int& s, const Int& t) {
  const Numerators n = shifted(m, r, s, t);
  return {n.n1, n.n2, n.n3, n.n4, n.n6};
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Unique representative with a1, a3 in {0,1} and a2 in {-1,0,1} (u = 1).
WeierstrassModel reduced_form(WeierstrassModel m) {
  const Int s = (mod_floor(m.a1, 2) - m.a1) / 2;
  m = shift(m, 0, s, 0);
  const Int r = -floor_div(m.a2 + 1, 3);
  m = shift(m, r, 0, 0);
  const Int t = (mod_floor(m.a3, 2) - m.a3) / 2;
  return shift(m, 0, 0, t);
}

}  // namespace

std::string to_string(const WeierstrassModel& m) {
  return "[" + m.a1.str() + "," + m.a2.str() + "," + m.a3.str() + "," + m.a4.str() + "," + m.a6.str() + "]";
}

const char* to_string(Reduction kind) {
  switch (kind) {
    case Reduction::Good:
      return "good";
    case Reduction::Multiplicative:
      return "multiplicative";
    case Reduction::Additive:
      return "additive";
  }
  return "?";
}

Invariants invariants(const WeierstrassModel& m) {
  Invariants inv;
  inv.b2 = m.a1 * m.a1 + 4 * m.a2;
  inv.b4 = 2 * m.a4 + m.a1 * m.a3;
  inv.b6 = m.a3 * m.a3 + 4 * m.a6;
  inv.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
  inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
  inv.delta = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 - 27 * inv.b6 * inv.b6 +
              9 * inv.b2 * inv.b4 * inv.b6;
  if (inv.delta == 0) throw DegenerateModel("model " + to_string(m) + " has zero discriminant");
  Int num = inv.c4 * inv.c4 * inv.c4;
  Int den = inv.delta;
  const Int g = gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  inv.j_num = num;
  inv.j_den = den;
  return inv;
}

CoordinateChange CoordinateChange::compose(const CoordinateChange& next) const {
  return {u * next.u, r + u * u * next.r, s + u * next.s, t + u * u * s * next.r + u * u * u * next.t};
}

CoordinateChange CoordinateChange::inverse() const {
  if (u == 0) throw std::invalid_argument("coordinate change with u = 0");
  return {1 / u, -r / (u * u), -s / u, (r * s - t) / (u * u * u)};
}

WeierstrassModel transform(const WeierstrassModel& m, const CoordinateChange& c) {
  if (c.u == 0) throw std::invalid_argument("coordinate change with u = 0");
  const Rational a1 = m.a1, a2 = m.a2, a3 = m.a3, a4 = m.a4, a6 = m.a6;
  const Rational& u = c.u;
  const Rational& r = c.r;
  const Rational& s = c.s;
  const Rational& t = c.t;
  const Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  return {
      exact_integer((a1 + 2 * s) / u, "a1"),
      exact_integer((a2 - s * a1 + 3 * r - s * s) / u2, "a2"),
      exact_integer((a3 + r * a1 + 2 * t) / u3, "a3"),
      exact_integer((a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4, "a4"),
      exact_integer((a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6, "a6"),
  };
}

MinimalModel minimal_model(const WeierstrassModel& input) {
  WeierstrassModel m = input;
  Invariants inv = invariants(m);
  for (Int ell = 2;; ++ell) {
    const Int ell12 = boost::multiprecision::pow(ell, 12);
    if (ell12 > boost::multiprecision::abs(inv.delta)) break;
    if (!is_prime(ell)) continue;
    while (inv.delta % ell12 == 0) {
      std::optional<WeierstrassModel> reduced =
          ell <= 3 ? search_reduction(m, ell) : direct_reduction(m, ell);
      if (!reduced) break;
      m = *reduced;
      inv = invariants(m);
    }
  }
  MinimalModel out;
  out.model = reduced_form(m);
  out.inv = invariants(out.model);
  const FactoredInt f = factor_small(out.inv.delta);
  out.disc_sign = f.sign;
  out.disc_valuations = f.factors;
  return out;
}

ReductionType reduction_type(const WeierstrassModel& minimal, const Int& ell) {
  const Invariants inv = invariants(minimal);
  if (inv.delta % ell != 0) return {Reduction::Good, true};
  const bool pot_good = inv.j_den % ell != 0;
  if (inv.c4 % ell != 0) return {Reduction::Multiplicative, pot_good};
  return {Reduction::Additive, pot_good};
}

}  // namespace fermatsym
