#include "fermatsym/qrsolver.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fermatsym {

// --- SignExpr ---------------------------------------------------------------

struct SignExpr::Node {
  Op op;
  std::optional<QRConstraint> constraint;
  std::vector<SignExpr> operands;
};

SignExpr SignExpr::atom(QRConstraint constraint) {
  if (constraint.n == 0) throw std::invalid_argument("atom with n = 0");
  if (constraint.sign != 1 && constraint.sign != -1) throw std::invalid_argument("atom sign must be +1 or -1");
  constraint.n = squarefree_part(constraint.n);
  return SignExpr(std::make_shared<const Node>(Node{Op::Atom, constraint, {}}));
}

SignExpr SignExpr::always() { return atom({1, 1}); }
SignExpr SignExpr::never() { return atom({1, -1}); }

SignExpr SignExpr::negate(SignExpr operand) {
  return SignExpr(std::make_shared<const Node>(Node{Op::Not, std::nullopt, {std::move(operand)}}));
}

namespace {

std::vector<SignExpr> flatten(std::vector<SignExpr> operands, SignExpr::Op op) {
  std::vector<SignExpr> flat;
  for (auto& e : operands) {
    if (e.op() == op) {
      for (const auto& inner : e.operands()) flat.push_back(inner);
    } else {
      flat.push_back(std::move(e));
    }
  }
  return flat;
}

}  // namespace

SignExpr SignExpr::all_of(std::vector<SignExpr> operands) {
  if (operands.empty()) return always();
  if (operands.size() == 1) return operands.front();
  return SignExpr(std::make_shared<const Node>(Node{Op::And, std::nullopt, flatten(std::move(operands), Op::And)}));
}

SignExpr SignExpr::any_of(std::vector<SignExpr> operands) {
  if (operands.empty()) return never();
  if (operands.size() == 1) return operands.front();
  return SignExpr(std::make_shared<const Node>(Node{Op::Or, std::nullopt, flatten(std::move(operands), Op::Or)}));
}

SignExpr::Op SignExpr::op() const { return node_->op; }

const QRConstraint& SignExpr::constraint() const {
  if (node_->op != Op::Atom) throw std::logic_error("constraint() on a non-atom expression");
  return *node_->constraint;
}

const std::vector<SignExpr>& SignExpr::operands() const { return node_->operands; }

bool SignExpr::evaluate(const std::function<int(const Int&)>& symbol) const {
  switch (node_->op) {
    case Op::Atom: {
      const auto& c = *node_->constraint;
      return (c.n == 1 ? 1 : symbol(c.n)) == c.sign;
    }
    case Op::Not:
      return !node_->operands.front().evaluate(symbol);
    case Op::And:
      return std::all_of(node_->operands.begin(), node_->operands.end(),
                         [&](const SignExpr& e) { return e.evaluate(symbol); });
    case Op::Or:
      return std::any_of(node_->operands.begin(), node_->operands.end(),
                         [&](const SignExpr& e) { return e.evaluate(symbol); });
  }
  return false;
}

void SignExpr::collect_atoms(std::vector<QRConstraint>& out) const {
  if (node_->op == Op::Atom) {
    out.push_back(*node_->constraint);
    return;
  }
  for (const auto& e : node_->operands) e.collect_atoms(out);
}

std::string SignExpr::to_string() const {
  switch (node_->op) {
    case Op::Atom:
      return node_->constraint->to_string();
    case Op::Not: {
      const auto& inner = node_->operands.front();
      const bool wrap = inner.op() == Op::And || inner.op() == Op::Or;
      return "!" + (wrap ? "(" + inner.to_string() + ")" : inner.to_string());
    }
    case Op::And:
    case Op::Or: {
      const Op other = node_->op == Op::And ? Op::Or : Op::And;
      const char* sep = node_->op == Op::And ? " & " : " | ";
      std::string out;
      for (std::size_t i = 0; i < node_->operands.size(); ++i) {
        const auto& e = node_->operands[i];
        if (i) out += sep;
        out += e.op() == other ? "(" + e.to_string() + ")" : e.to_string();
      }
      return out;
    }
  }
  return {};
}

bool SignExpr::operator==(const SignExpr& other) const {
  if (node_ == other.node_) return true;
  if (node_->op != other.node_->op) return false;
  if (node_->op == Op::Atom) return *node_->constraint == *other.node_->constraint;
  return node_->operands == other.node_->operands;
}

// --- parser -----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SignExpr parse_all() {
    SignExpr e = parse_or();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  SignExpr parse_or() {
    std::vector<SignExpr> terms{parse_and()};
    while (peek('|')) {
      ++pos_;
      terms.push_back(parse_and());
    }
    return SignExpr::any_of(std::move(terms));
  }

  SignExpr parse_and() {
    std::vector<SignExpr> factors{parse_factor()};
    while (peek('&')) {
      ++pos_;
      factors.push_back(parse_factor());
    }
    return SignExpr::all_of(std::move(factors));
  }

  bool atom_ahead() {
    std::size_t i = pos_ + 1;
    while (i < text_.size() && (text_[i] == ' ' || text_[i] == '\t')) ++i;
    if (i < text_.size() && (text_[i] == '-' || text_[i] == '+')) ++i;
    return i < text_.size() && text_[i] >= '0' && text_[i] <= '9';
  }

  SignExpr parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '!') {
      ++pos_;
      return SignExpr::negate(parse_factor());
    }
    if (text_[pos_] != '(') fail(std::string("unexpected '") + text_[pos_] + "'");
    if (atom_ahead()) return parse_atom();
    ++pos_;
    SignExpr inner = parse_or();
    expect(')');
    return inner;
  }

  SignExpr parse_atom() {
    expect('(');
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    const Int n(digits);
    if (n == 0) throw ParseError("n must be nonzero", start + 1);
    expect(')');
    expect('=');
    skip_ws();
    int sign = 0;
    if (text_.substr(pos_, 2) == "+1") {
      sign = 1;
      pos_ += 2;
    } else if (text_.substr(pos_, 2) == "-1") {
      sign = -1;
      pos_ += 2;
    } else if (text_.substr(pos_, 1) == "1") {
      sign = 1;
      pos_ += 1;
    } else {
      fail("expected +1 or -1");
    }
    return SignExpr::atom({n, sign});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SignExpr parse(std::string_view text) { return Parser(text).parse_all(); }

// --- congruence classes -------------------------------------------------------

namespace {

std::vector<Int> divisors(const Int& n) {
  std::vector<Int> divs{1};
  for (const auto& [prime, exp] : factor_small(n).factors) {
    const std::size_t count = divs.size();
    Int power = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<Int> coprime_residues(const Int& m) {
  std::vector<Int> out;
  for (Int r = 0; r < m; ++r) {
    if (gcd(r, m) == 1) out.push_back(r);
  }
  return out;
}

Int lcm(const Int& a, const Int& b) { return a / gcd(a, b) * b; }

}  // namespace

CongruenceClassSet::CongruenceClassSet(Int modulus, std::vector<Int> residues)
    : modulus_(std::move(modulus)), residues_(std::move(residues)) {
  if (modulus_ < 1) throw std::invalid_argument("modulus must be positive");
  for (auto& r : residues_) {
    r = mod_floor(r, modulus_);
    if (gcd(r, modulus_) != 1)
      throw std::invalid_argument("residue " + r.str() + " is not coprime to " + modulus_.str());
  }
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
}

CongruenceClassSet CongruenceClassSet::empty(Int modulus) { return {std::move(modulus), {}}; }

CongruenceClassSet CongruenceClassSet::all(Int modulus) {
  auto residues = coprime_residues(modulus);
  return {std::move(modulus), std::move(residues)};
}

bool CongruenceClassSet::contains(const Int& r) const {
  return std::binary_search(residues_.begin(), residues_.end(), mod_floor(r, modulus_));
}

CongruenceClassSet CongruenceClassSet::lift(const Int& new_modulus) const {
  if (new_modulus % modulus_ != 0)
    throw std::invalid_argument("cannot lift modulus " + modulus_.str() + " to " + new_modulus.str());
  std::vector<Int> out;
  for (const Int& r : coprime_residues(new_modulus)) {
    if (contains(r)) out.push_back(r);
  }
  return {new_modulus, std::move(out)};
}

CongruenceClassSet CongruenceClassSet::canonical() const {
  const auto all_residues = coprime_residues(modulus_);
  for (const Int& d : divisors(modulus_)) {
    // The set is a union of classes mod d iff membership depends only on r mod d.
    std::map<Int, int> seen;  // class mod d -> 1 inside, 0 outside
    bool ok = true;
    for (const Int& r : all_residues) {
      const int inside = contains(r) ? 1 : 0;
      const auto [it, fresh] = seen.emplace(r % d, inside);
      if (!fresh && it->second != inside) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<Int> reduced;
    for (const auto& [cls, inside] : seen) {
      if (inside) reduced.push_back(cls);
    }
    return {d, std::move(reduced)};
  }
  return *this;
}

CongruenceClassSet CongruenceClassSet::unite(const CongruenceClassSet& other) const {
  const Int m = lcm(modulus_, other.modulus_);
  const auto a = lift(m), b = other.lift(m);
  std::vector<Int> out;
  std::set_union(a.residues_.begin(), a.residues_.end(), b.residues_.begin(), b.residues_.end(),
                 std::back_inserter(out));
  return CongruenceClassSet(m, std::move(out)).canonical();
}

CongruenceClassSet CongruenceClassSet::intersect(const CongruenceClassSet& other) const {
  const Int m = lcm(modulus_, other.modulus_);
  const auto a = lift(m), b = other.lift(m);
  std::vector<Int> out;
  std::set_intersection(a.residues_.begin(), a.residues_.end(), b.residues_.begin(), b.residues_.end(),
                        std::back_inserter(out));
  return CongruenceClassSet(m, std::move(out)).canonical();
}

std::vector<std::pair<Int, Int>> CongruenceClassSet::decompose() const {
  const CongruenceClassSet set = canonical();
  std::set<Int> remaining(set.residues_.begin(), set.residues_.end());
  const auto all_residues = coprime_residues(set.modulus_);
  std::vector<std::pair<Int, Int>> out;
  for (const Int& d : divisors(set.modulus_)) {
    if (remaining.empty()) break;
    for (const Int& c : coprime_residues(d)) {
      std::vector<Int> lifts;
      bool covered = true;
      for (const Int& r : all_residues) {
        if (r % d != c) continue;
        if (!remaining.contains(r)) {
          covered = false;
          break;
        }
        lifts.push_back(r);
      }
      if (!covered || lifts.empty()) continue;
      for (const Int& r : lifts) remaining.erase(r);
      out.emplace_back(c, d);
    }
  }
  return out;
}

std::string CongruenceClassSet::to_string() const {
  if (residues_.empty()) return "no p";
  const auto classes = decompose();
  if (classes.size() == 1 && classes.front().second == 1) return "every p";
  std::string out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) out += " or ";
    out += "p ≡ " + classes[i].first.str() + " (mod " + classes[i].second.str() + ")";
  }
  return out;
}

bool CongruenceClassSet::operator==(const CongruenceClassSet& other) const {
  const auto a = canonical(), b = other.canonical();
  return a.modulus_ == b.modulus_ && a.residues_ == b.residues_;
}

// --- symbols and densities ---------------------------------------------------

int symbol_sign(const Int& q, const Int& r, const Int& modulus) {
  if (modulus % 8 != 0) throw std::invalid_argument("symbol_sign: modulus must be divisible by 8");
  if (gcd(r, modulus) != 1) throw std::invalid_argument("symbol_sign: residue must be coprime to the modulus");
  const Int r8 = mod_floor(r, 8);
  if (q == -1) return r8 % 4 == 1 ? 1 : -1;
  if (q == 2) return (r8 == 1 || r8 == 7) ? 1 : -1;
  if (q < 3 || q % 2 == 0 || !is_prime(q))
    throw std::invalid_argument("symbol_sign: expected -1, 2 or an odd prime, got " + q.str());
  if (modulus % q != 0) throw std::invalid_argument("symbol_sign: modulus not divisible by " + q.str());
  // (q/p) = (p/q) * (-1)^{(p-1)/2 (q-1)/2}
  int s = jacobi(mod_floor(r, q), q);
  if (q % 4 == 3 && r8 % 4 == 3) s = -s;
  return s;
}

int symbol_sign_composite(const Int& n, const Int& r, const Int& modulus) {
  if (n == 0) throw std::invalid_argument("symbol of 0");
  const FactoredInt f = factor_small(n);
  int s = f.sign < 0 ? symbol_sign(-1, r, modulus) : 1;
  for (const auto& [prime, exp] : f.factors) {
    if (exp % 2) s *= symbol_sign(prime, r, modulus);
  }
  return s;
}

CongruenceClassSet to_classes(const SignExpr& expr) {
  std::vector<QRConstraint> atoms;
  expr.collect_atoms(atoms);
  std::set<Int> odd_primes;
  for (const auto& a : atoms) {
    for (const auto& [prime, exp] : factor_small(a.n).factors) {
      if (prime != 2) odd_primes.insert(prime);
    }
  }
  Int modulus = 8;
  for (const Int& q : odd_primes) modulus *= q;
  std::vector<Int> residues;
  for (const Int& r : coprime_residues(modulus)) {
    std::map<Int, int> cache;
    const auto symbol = [&](const Int& n) {
      auto it = cache.find(n);
      if (it == cache.end()) it = cache.emplace(n, symbol_sign_composite(n, r, modulus)).first;
      return it->second;
    };
    if (expr.evaluate(symbol)) residues.push_back(r);
  }
  return CongruenceClassSet(modulus, std::move(residues)).canonical();
}

Rational density(const CongruenceClassSet& set) {
  return Rational(Int(set.residues().size()), euler_phi(set.modulus()));
}

std::string to_string(const Rational& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

// --- simplify ------------------------------------------------------------------

namespace {

// F2 coordinates of a squarefree n: -1 stands for the sign.
std::set<Int> coordinates(const Int& n) {
  std::set<Int> out;
  const FactoredInt f = factor_small(n);
  if (f.sign < 0) out.insert(-1);
  for (const auto& [prime, exp] : f.factors) {
    if (exp % 2) out.insert(prime);
  }
  return out;
}

std::set<Int> symmetric_difference(const std::set<Int>& a, const std::set<Int>& b) {
  std::set<Int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

SimplifyResult simplify(const std::vector<QRConstraint>& constraints) {
  struct Item {
    QRConstraint c;
    std::set<Int> coords;
  };
  std::vector<Item> items;
  for (const auto& c : constraints) {
    const QRConstraint sf = QRConstraint::of(c.n, c.sign);
    items.push_back({sf, coordinates(sf.n)});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.coords.size() != b.coords.size()) return a.coords.size() < b.coords.size();
    const Int aa = boost::multiprecision::abs(a.c.n), ab = boost::multiprecision::abs(b.c.n);
    if (aa != ab) return aa < ab;
    return a.c.n < b.c.n;
  });

  struct Row {
    std::set<Int> coords;
    int sign;
  };
  std::map<Int, Row> basis;  // keyed by leading (largest) coordinate
  SimplifyResult result;
  for (const auto& item : items) {
    std::set<Int> v = item.coords;
    int implied = 1;
    while (!v.empty()) {
      const auto it = basis.find(*v.rbegin());
      if (it == basis.end()) break;
      v = symmetric_difference(v, it->second.coords);
      implied *= it->second.sign;
    }
    if (v.empty()) {
      if (implied != item.c.sign) return {true, {}};
      continue;
    }
    basis.emplace(*v.rbegin(), Row{v, implied * item.c.sign});
    result.constraints.push_back(item.c);
  }
  std::sort(result.constraints.begin(), result.constraints.end(), [](const QRConstraint& a, const QRConstraint& b) {
    const Int aa = boost::multiprecision::abs(a.n), ab = boost::multiprecision::abs(b.n);
    if (aa != ab) return aa < ab;
    return a.n < b.n;
  });
  return result;
}

SignExpr violation_of(const std::vector<QRConstraint>& constraints) {
  std::vector<SignExpr> terms;
  for (const auto& c : constraints) terms.push_back(SignExpr::atom(c.negated()));
  return SignExpr::any_of(std::move(terms));
}

}  // namespace fermatsym
