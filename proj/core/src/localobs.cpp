#include "fermatsym/localobs.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace fermatsym {

const char* to_string(LocalMethod method) {
  switch (method) {
    case LocalMethod::FastSubgroup:
      return "fast_subgroup";
    case LocalMethod::HenselDescent:
      return "hensel_descent";
    case LocalMethod::WeilBound:
      return "weil_bound";
  }
  return "?";
}

const char* to_string(Solvability status) {
  switch (status) {
    case Solvability::Solvable:
      return "solvable";
    case Solvability::Unsolvable:
      return "unsolvable";
    case Solvability::Undecided:
      return "undecided";
  }
  return "?";
}

namespace {

using u64 = std::uint64_t;

void require_prime_exponent(const DiagonalForm& form) {
  if (!is_prime(form.p)) throw std::invalid_argument("exponent " + form.p.str() + " is not prime");
  if (form.a == 0 || form.b == 0 || form.c == 0) throw std::invalid_argument("coefficients must be nonzero");
}

u64 primitive_root(u64 q) {
  const FactoredInt f = factor_small(Int(q - 1));
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& [prime, exp] : f.factors) {
      if (pow_mod(g, (q - 1) / static_cast<u64>(prime), q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

Int product_pabc(const DiagonalForm& f) { return boost::multiprecision::abs(f.p * f.a * f.b * f.c); }

LocalWitness unit_witness(const std::array<Int, 3>& point, const Int& q) {
  LocalWitness w;
  w.point = point;
  w.precision = 1;
  for (unsigned i = 0; i < 3; ++i) {
    if (point[i] % q != 0) {
      w.lift_coordinate = i;
      break;
    }
  }
  w.derivative_valuation = 0;
  return w;
}

// Depth-first search for a primitive point mod ell^n carrying a Hensel
// certificate. One coordinate is normalized to 1 (the first unit one).
class HenselSearch {
 public:
  HenselSearch(const DiagonalForm& form, u64 ell, unsigned max_precision, u64 max_work)
      : ell_(ell), p_(static_cast<u64>(form.p)), max_precision_(max_precision), max_work_(max_work) {
    modulus_.push_back(1);
    for (unsigned i = 0; i <= max_precision_; ++i) modulus_.push_back(modulus_.back() * ell_);
    const auto coeffs = form.coefficients();
    for (unsigned i = 0; i < 3; ++i) {
      coeff_[i] = reduce_mod(coeffs[i], modulus_[max_precision_]);
      coeff_val_[i] = valuation(coeffs[i], Int(ell_));
    }
    p_val_ = valuation(form.p, Int(ell_));
  }

  LocalResult run() {
    bool exhausted = false;
    for (unsigned normalized = 0; normalized < 3; ++normalized) {
      if (auto w = search_case(normalized, exhausted)) {
        return {Solvability::Solvable, w, LocalMethod::HenselDescent};
      }
      if (exhausted) break;
    }
    if (exhausted || undecided_) return {Solvability::Undecided, std::nullopt, LocalMethod::HenselDescent};
    return {Solvability::Unsolvable, std::nullopt, LocalMethod::HenselDescent};
  }

 private:
  struct State {
    unsigned level;
    std::array<u64, 3> x;
  };

  u64 form_value(const std::array<u64, 3>& x, unsigned level) const {
    const u64 m = modulus_[level];
    u64 sum = 0;
    for (unsigned i = 0; i < 3; ++i) sum = (sum + mul_mod(coeff_[i] % m, pow_mod(x[i], p_, m), m)) % m;
    return sum;
  }

  // v_ell(x mod ell^level), or nullopt when x = 0 mod ell^level.
  std::optional<unsigned> residue_valuation(u64 x, unsigned level) const {
    x %= modulus_[level];
    if (x == 0) return std::nullopt;
    unsigned v = 0;
    while (x % ell_ == 0) {
      x /= ell_;
      ++v;
    }
    return v;
  }

  std::optional<LocalWitness> certificate(const State& s) const {
    std::optional<LocalWitness> best;
    for (unsigned i = 0; i < 3; ++i) {
      const auto vx = residue_valuation(s.x[i], s.level);
      if (!vx) continue;
      const unsigned e = p_val_ + coeff_val_[i] + static_cast<unsigned>(p_ - 1) * *vx;
      if (2 * e + 1 > s.level) continue;
      if (!best || e < best->derivative_valuation) {
        LocalWitness w;
        for (unsigned j = 0; j < 3; ++j) w.point[j] = Int(s.x[j]);
        w.precision = s.level;
        w.lift_coordinate = i;
        w.derivative_valuation = e;
        best = w;
      }
    }
    return best;
  }

  std::optional<LocalWitness> search_case(unsigned normalized, bool& exhausted) {
    // Coordinates before the normalized one are divisible by ell.
    std::array<unsigned, 2> free{};
    unsigned nf = 0;
    for (unsigned i = 0; i < 3; ++i) {
      if (i != normalized) free[nf++] = i;
    }
    const auto allowed = [&](unsigned coord, u64 digit) { return coord > normalized || digit == 0; };

    std::vector<State> stack;
    // Level 1: solve for the second free coordinate through a table of c * t^p mod ell.
    const unsigned u = free[0], w = free[1];
    std::vector<std::vector<u64>> by_value(ell_);
    for (u64 t = 0; t < ell_; ++t) {
      if (!allowed(w, t)) continue;
      by_value[mul_mod(coeff_[w] % ell_, pow_mod(t, p_, ell_), ell_)].push_back(t);
    }
    for (u64 d = 0; d < ell_; ++d) {
      if (!allowed(u, d)) continue;
      if (++work_ > max_work_) {
        exhausted = true;
        return std::nullopt;
      }
      std::array<u64, 3> x{};
      x[normalized] = 1;
      x[u] = d;
      const u64 partial = (mul_mod(coeff_[normalized] % ell_, 1, ell_) +
                           mul_mod(coeff_[u] % ell_, pow_mod(d, p_, ell_), ell_)) % ell_;
      for (u64 t : by_value[(ell_ - partial) % ell_]) {
        x[w] = t;
        stack.push_back({1, x});
      }
    }

    while (!stack.empty()) {
      const State s = stack.back();
      stack.pop_back();
      if (auto cert = certificate(s)) return cert;
      if (s.level >= max_precision_) {
        undecided_ = true;
        continue;
      }
      // Without a certificate every partial derivative is 0 mod ell, so
      // all children share the value of F mod ell^(level+1).
      const unsigned next = s.level + 1;
      if (form_value(s.x, next) != 0) continue;
      work_ += ell_ * ell_;
      if (work_ > max_work_) {
        exhausted = true;
        return std::nullopt;
      }
      const u64 step = modulus_[s.level];
      for (u64 d1 = 0; d1 < ell_; ++d1) {
        for (u64 d2 = 0; d2 < ell_; ++d2) {
          State child = s;
          child.level = next;
          child.x[u] += d1 * step;
          child.x[w] += d2 * step;
          stack.push_back(child);
        }
      }
    }
    return std::nullopt;
  }

  u64 ell_;
  u64 p_;
  unsigned max_precision_;
  u64 max_work_;
  std::vector<u64> modulus_;
  std::array<u64, 3> coeff_{};
  std::array<unsigned, 3> coeff_val_{};
  unsigned p_val_ = 0;
  u64 work_ = 0;
  bool undecided_ = false;
};

}  // namespace

bool check_witness(const DiagonalForm& form, const Int& ell, const LocalWitness& witness) {
  if (witness.precision == 0 || witness.lift_coordinate > 2) return false;
  const Int modulus = boost::multiprecision::pow(ell, witness.precision);
  const auto coeffs = form.coefficients();
  const auto& x = witness.point;
  if (x[0] % ell == 0 && x[1] % ell == 0 && x[2] % ell == 0) return false;  // not primitive
  Int value = 0;
  for (unsigned i = 0; i < 3; ++i) value += coeffs[i] * Int(boost::multiprecision::powm(mod_floor(x[i], modulus), form.p, modulus));
  if (mod_floor(value, modulus) != 0) return false;
  const unsigned j = witness.lift_coordinate;
  const Int derivative = mod_floor(
      form.p * coeffs[j] * Int(boost::multiprecision::powm(mod_floor(x[j], modulus), Int(form.p - 1), modulus)), modulus);
  if (derivative == 0) return false;
  const unsigned e = valuation(derivative, ell);
  return e == witness.derivative_valuation && 2 * e + 1 <= witness.precision;
}

std::optional<std::array<Int, 3>> point_mod_q_fast(const DiagonalForm& form, const Int& q_int) {
  require_prime_exponent(form);
  if (!is_prime(q_int)) throw std::invalid_argument(q_int.str() + " is not prime");
  if ((q_int - 1) % form.p != 0) throw std::invalid_argument("q must be 1 mod p");
  if (product_pabc(form) % q_int == 0) throw std::invalid_argument("q must not divide p*a*b*c");
  if (q_int >= Int(1) << 62) throw std::invalid_argument("q too large for the subgroup method");
  const u64 q = static_cast<u64>(q_int);
  const u64 p = static_cast<u64>(form.p);
  const u64 k = (q - 1) / p;
  const u64 A = reduce_mod(form.a, q), B = reduce_mod(form.b, q), C = reduce_mod(form.c, q);

  // S = <g^p> has order k; roots[i] = g^i satisfies roots[i]^p = S_i.
  const u64 g = primitive_root(q);
  const u64 h = pow_mod(g, p, q);
  std::vector<std::pair<u64, u64>> table;  // (s, p-th root of s)
  table.reserve(k);
  u64 s = 1, root = 1;
  for (u64 i = 0; i < k; ++i) {
    table.emplace_back(s, root);
    s = mul_mod(s, h, q);
    root = mul_mod(root, g, q);
  }
  std::sort(table.begin(), table.end());
  const auto root_of = [&](u64 value) -> std::optional<u64> {
    const auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(value, u64{0}));
    if (it == table.end() || it->first != value) return std::nullopt;
    return it->second;
  };
  const auto ratio = [&](u64 num, u64 den) { return mul_mod(q - num, inv_mod(den, q), q); };  // -num/den

  // Points with one coordinate zero.
  if (auto y = root_of(ratio(A, B))) return std::array<Int, 3>{1, Int(*y), 0};
  if (auto z = root_of(ratio(A, C))) return std::array<Int, 3>{1, 0, Int(*z)};
  if (auto z = root_of(ratio(B, C))) return std::array<Int, 3>{0, 1, Int(*z)};
  // x = 1, y^p = S_i, solve C z^p = -(A + B S_i).
  const u64 c_inv = inv_mod(C, q);
  for (const auto& [sy, ry] : table) {
    const u64 rest = (A + mul_mod(B, sy, q)) % q;
    if (rest == 0) continue;
    if (auto rz = root_of(mul_mod(q - rest, c_inv, q))) return std::array<Int, 3>{1, Int(ry), Int(*rz)};
  }
  return std::nullopt;
}

bool solvable_mod_q_fast(const DiagonalForm& form, const Int& q) { return point_mod_q_fast(form, q).has_value(); }

LocalResult solvable_over_Ql(const DiagonalForm& form, const Int& ell, const LocalSearchLimits& limits) {
  require_prime_exponent(form);
  if (!is_prime(ell)) throw std::invalid_argument(ell.str() + " is not prime");
  const Int bad = product_pabc(form);
  if (bad % ell != 0 && (ell - 1) % form.p == 0 && ell < Int(1) << 62) {
    const auto point = point_mod_q_fast(form, ell);
    if (!point) return {Solvability::Unsolvable, std::nullopt, LocalMethod::FastSubgroup};
    return {Solvability::Solvable, unit_witness(*point, ell), LocalMethod::FastSubgroup};
  }
  const unsigned precision = limits.max_precision ? limits.max_precision : 2 * (valuation(bad, ell) + 1) + 1;
  // The search works in machine words modulo ell^(precision+1).
  if (boost::multiprecision::pow(ell, precision + 1) >= Int(1) << 62)
    return {Solvability::Undecided, std::nullopt, LocalMethod::HenselDescent};
  return HenselSearch(form, static_cast<u64>(ell), precision, limits.max_work).run();
}

Int weil_cutoff(const Int& p) {
  const Int d = (p - 1) * (p - 2);
  const auto positive = [&](const Int& q) { return (q + 1) * (q + 1) > d * d * q; };
  Int q = std::max(Int(2), Int(d * d - 2));
  while (q - 1 >= 2 && positive(q - 1)) --q;
  return q;
}

namespace {

void record(ObstructionReport& report, const Int& prime, LocalResult result) {
  if (result.status == Solvability::Unsolvable) {
    report.obstruction_primes.push_back(prime);
    if (!report.first_obstruction) {
      report.first_obstruction = prime;
      report.method = result.method;
    }
  }
  if (result.status == Solvability::Undecided) report.undecided = true;
  report.per_prime.insert_or_assign(prime, std::move(result));
}

LocalResult fast_result(const DiagonalForm& form, const Int& q) {
  const auto point = point_mod_q_fast(form, q);
  if (!point) return {Solvability::Unsolvable, std::nullopt, LocalMethod::FastSubgroup};
  return {Solvability::Solvable, unit_witness(*point, q), LocalMethod::FastSubgroup};
}

}  // namespace

ObstructionReport has_local_obstruction(const DiagonalForm& form, const ObstructionOptions& options) {
  require_prime_exponent(form);
  ObstructionReport report;
  report.form = form;
  const auto done = [&] { return report.first_obstruction && !options.collect_all; };

  const Int bad = product_pabc(form);
  for (const auto& [ell, e] : factor_small(bad).factors) {
    record(report, ell, solvable_over_Ql(form, ell));
    if (done()) return report;
  }
  for (unsigned k = 2; k <= options.k_max; k += 2) {
    const Int q = form.p * k + 1;
    if (!is_prime(q) || bad % q == 0) continue;
    record(report, q, fast_result(form, q));
    if (done()) return report;
  }

  const Int cutoff = weil_cutoff(form.p);
  if (cutoff > options.max_certified_cutoff) return report;
  report.weil_cutoff = cutoff;
  // Good primes q != 1 (mod p): x -> x^p is a bijection of F_q, so the
  // curve has the points of a line. Only q = 1 (mod p) needs checking.
  for (Int q = form.p + 1; q < cutoff; q += form.p) {
    if (!is_prime(q) || bad % q == 0 || report.per_prime.contains(q)) continue;
    record(report, q, fast_result(form, q));
    if (done()) return report;
  }
  if (!report.first_obstruction && !report.undecided) {
    report.certified_none = true;
    report.method = LocalMethod::WeilBound;
  }
  return report;
}

std::vector<SweepEntry> sweep(const Int& a, const Int& b, const Int& c, const Int& p_min, const Int& p_max,
                              const SweepOptions& options) {
  std::vector<Int> primes;
  for (Int p = std::max(p_min, Int(3)); p <= p_max; ++p) {
    if (is_prime(p)) primes.push_back(p);
  }
  std::vector<SweepEntry> out(primes.size());

  const auto work = [&](std::size_t idx) {
    const auto start = std::chrono::steady_clock::now();
    const DiagonalForm form{a, b, c, primes[idx]};
    const Int bad = product_pabc(form);
    SweepEntry entry;
    entry.p = form.p;
    for (unsigned k = 2; k <= options.k_max && !entry.obstruction; k += 2) {
      const Int q = form.p * k + 1;
      if (!is_prime(q) || bad % q == 0) continue;
      if (!solvable_mod_q_fast(form, q)) {
        entry.obstruction = q;
        entry.k = k;
        entry.method = LocalMethod::FastSubgroup;
      }
    }
    if (!entry.obstruction) {
      for (const auto& [ell, e] : factor_small(bad).factors) {
        const LocalResult r = solvable_over_Ql(form, ell);
        if (r.status == Solvability::Undecided) entry.undecided = true;
        if (r.status == Solvability::Unsolvable) {
          entry.obstruction = ell;
          entry.method = r.method;
          entry.undecided = false;
          break;
        }
      }
    }
    entry.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out[idx] = std::move(entry);
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(primes.size(), 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < primes.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < primes.size(); i = next++) work(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace fermatsym
