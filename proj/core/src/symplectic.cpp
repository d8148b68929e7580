#include "fermatsym/symplectic.hpp"

#include <map>
#include <stdexcept>

namespace fermatsym {

const char* to_string(SymplecticType type) {
  switch (type) {
    case SymplecticType::Symplectic:
      return "symplectic";
    case SymplecticType::AntiSymplectic:
      return "anti-symplectic";
    case SymplecticType::Unknown:
      return "unknown";
  }
  return "?";
}

QRConstraint QRConstraint::of(const Int& value, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("constraint sign must be +1 or -1");
  return {squarefree_part(value), sign};
}

std::string QRConstraint::to_string() const { return "(" + n.str() + ")=" + (sign > 0 ? "+1" : "-1"); }

std::string to_string(const Verdict& verdict) {
  switch (verdict.kind) {
    case Verdict::Kind::AlwaysConsistent:
      return "always consistent";
    case Verdict::Kind::Contradiction:
      return "contradiction";
    case Verdict::Kind::Constraint:
      return verdict.constraint->to_string();
  }
  return "?";
}

SymplecticType criterion_at_two(ExactValuation v2_frey, ExactValuation v2_candidate, int legendre_2_p) {
  if (legendre_2_p == 1) return SymplecticType::Symplectic;
  if (legendre_2_p != -1) throw std::invalid_argument("(2/p) must be +1 or -1");
  return mod_floor(v2_frey.value - v2_candidate.value, 3) == 0 ? SymplecticType::Symplectic
                                                                : SymplecticType::AntiSymplectic;
}

SymplecticType criterion_at_two(const TwoAdicSide& frey, const TwoAdicSide& candidate, int legendre_2_p) {
  if (!frey.sl2f3_inertia || !candidate.sl2f3_inertia)
    throw std::invalid_argument("criterion at 2 needs SL2(F3) inertia on both curves");
  if (!frey.v2 || !candidate.v2)
    throw std::invalid_argument("criterion at 2 needs exact 2-adic valuations, not residues mod p");
  return criterion_at_two(*frey.v2, *candidate.v2, legendre_2_p);
}

std::optional<Verdict> criterion_multiplicative(ResidueModP v, ResidueModP v_candidate, SymplecticType type) {
  if (v.value == 0 || v_candidate.value == 0)
    throw std::invalid_argument("criterion at a multiplicative prime needs residues nonzero mod p");
  if (type == SymplecticType::Unknown) return std::nullopt;
  // v/v' and v*v' differ by the square v'^2.
  const Int s = squarefree_part(v.value * v_candidate.value);
  const int sign = type == SymplecticType::Symplectic ? 1 : -1;
  if (s == 1) {
    return sign > 0 ? Verdict{Verdict::Kind::AlwaysConsistent, std::nullopt}
                    : Verdict{Verdict::Kind::Contradiction, std::nullopt};
  }
  return Verdict{Verdict::Kind::Constraint, QRConstraint{s, sign}};
}

std::vector<QRConstraint> pairwise_consistency(const PrimeResidues& profile, const PrimeResidues& candidate) {
  std::map<Int, Int> frey, cand;
  for (const auto& [ell, r] : profile) frey[ell] = r.value;
  for (const auto& [ell, r] : candidate) cand[ell] = r.value;
  std::vector<std::pair<Int, Int>> shared;  // (v, v') per shared prime, ascending
  for (const auto& [ell, v] : frey) {
    const auto it = cand.find(ell);
    if (it == cand.end()) continue;
    if (v == 0 || it->second == 0)
      throw std::invalid_argument("residue of v_" + ell.str() + " is zero mod p; criterion inapplicable");
    shared.emplace_back(v, it->second);
  }
  if (shared.size() < 2) throw std::invalid_argument("pairwise consistency needs at least two shared primes");
  std::vector<QRConstraint> out;
  for (std::size_t i = 0; i < shared.size(); ++i) {
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      const Int product = shared[i].first * shared[j].first * shared[i].second * shared[j].second;
      out.push_back(QRConstraint::of(product, 1));
    }
  }
  return out;
}

}  // namespace fermatsym
