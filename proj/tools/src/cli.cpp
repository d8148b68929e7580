#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fermatsym/freypipe.hpp"
#include "fermatsym/localobs.hpp"
#include "report_json.hpp"

namespace fermatsym::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string equation;
  std::string p;
  std::string ell;
  unsigned k_max = 200;
  std::string p_min = "11";
  std::string p_max;
  bool full_range = false;
  unsigned threads = 0;
  bool json = false;
  bool detail = false;
  bool collect_all = false;
  std::string expression;
  std::string label;
  std::string curves_path;
  std::string scenarios_path;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Int parse_integer(const std::string& text, const char* what) {
  try {
    if (text.empty()) throw std::invalid_argument("empty");
    std::size_t start = text[0] == '-' || text[0] == '+' ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("sign only");
    for (std::size_t i = start; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw std::invalid_argument("digit");
    }
    return Int(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + " must be an integer, got '" + text + "'");
  }
}

Int parse_prime(const std::string& text, const char* what) {
  const Int n = parse_integer(text, what);
  if (!is_prime(n)) throw UsageError(std::string(what) + " must be prime, got " + n.str());
  return n;
}

Equation parse_equation(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--eq expects a,b,c, got '" + text + "'");
  Equation eq{parse_integer(parts[0], "a"), parse_integer(parts[1], "b"), parse_integer(parts[2], "c")};
  if (eq.a == 0 || eq.b == 0 || eq.c == 0) throw UsageError("--eq coefficients must be nonzero");
  return eq;
}

std::string env_or(const std::string& flag_value, const char* variable) {
  if (!flag_value.empty()) return flag_value;
  const char* value = std::getenv(variable);
  return value ? value : "";
}

CurveDatabase load_database(const RunConfig& cfg) {
  auto db = CurveDatabase::embedded();
  if (const auto path = env_or(cfg.curves_path, "FERMATSYM_CURVES"); !path.empty()) db.load_override_file(path);
  return db;
}

ScenarioBook load_scenarios(const RunConfig& cfg) {
  auto book = ScenarioBook::embedded();
  if (const auto path = env_or(cfg.scenarios_path, "FERMATSYM_SCENARIOS"); !path.empty()) book.load_file(path);
  return book;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

const char* coordinate_name(unsigned i) { return i == 0 ? "x" : i == 1 ? "y" : "z"; }

std::string point_text(const std::array<Int, 3>& point) {
  return "(" + point[0].str() + ", " + point[1].str() + ", " + point[2].str() + ")";
}

void print_case(std::ostream& out, const CaseReport& c) {
  out << "  " << to_string(c.parity) << " level " << c.level << " candidate " << c.candidate << " ["
      << to_string(c.route) << "]\n";
  for (const auto& br : c.branches) {
    out << "    (2/p)=" << (br.legendre_2 > 0 ? "+1" : "-1") << ": " << to_string(br.type);
    for (const auto& pv : br.verdicts) out << "; at " << pv.ell << ": " << to_string(pv.verdict);
    if (br.eliminated) {
      out << "; eliminated";
    } else {
      out << "; residual";
      if (br.residual.constraints.empty()) out << " none";
      for (const auto& r : br.residual.constraints) out << ' ' << r.to_string();
    }
    out << '\n';
  }
  if (c.route == CaseRoute::Pairwise) {
    out << "    pairwise:";
    for (const auto& r : c.pairwise) out << ' ' << r.to_string();
    out << '\n';
  }
  out << "    contradicted when " << c.condition.to_string() << '\n';
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Equation eq = parse_equation(cfg.equation);
  const auto db = load_database(cfg);
  const auto book = load_scenarios(cfg);
  const auto report = run_equation(eq, book, db);
  if (cfg.json) {
    print_json(out, to_json(report));
    return kOk;
  }
  out << report.classes.to_string() << "; density " << to_string(report.density) << "; valid for "
      << report.floor.to_string() << '\n';
  if (cfg.detail) {
    out << "condition: " << report.condition.to_string() << '\n';
    for (const auto& c : report.cases) print_case(out, c);
  }
  return kOk;
}

int cmd_local(const RunConfig& cfg, std::ostream& out) {
  const Equation eq = parse_equation(cfg.equation);
  const DiagonalForm form{eq.a, eq.b, eq.c, parse_prime(cfg.p, "--p")};
  const Int ell = parse_prime(cfg.ell, "--ell");
  const auto result = solvable_over_Ql(form, ell);
  if (cfg.json) {
    Json j = to_json(result);
    j["equation"] = Json{int_json(eq.a), int_json(eq.b), int_json(eq.c)};
    j["p"] = int_json(form.p);
    j["ell"] = int_json(ell);
    print_json(out, j);
  } else if (result.status == Solvability::Solvable) {
    const auto& w = *result.witness;
    out << "solvable over Q_" << ell << ": " << point_text(w.point) << " mod " << ell << '^' << w.precision
        << ", lifts in " << coordinate_name(w.lift_coordinate) << " (derivative valuation "
        << w.derivative_valuation << ") [" << to_string(result.method) << "]\n";
  } else {
    out << to_string(result.status) << " over Q_" << ell << " [" << to_string(result.method) << "]\n";
  }
  return result.status == Solvability::Undecided ? kUndecided : kOk;
}

int cmd_obstruct(const RunConfig& cfg, std::ostream& out) {
  const Equation eq = parse_equation(cfg.equation);
  ObstructionOptions options;
  options.k_max = cfg.k_max;
  options.collect_all = cfg.collect_all;
  const auto report = has_local_obstruction({eq.a, eq.b, eq.c, parse_prime(cfg.p, "--p")}, options);
  const bool inconclusive = !report.first_obstruction && !report.certified_none;
  if (cfg.json) {
    print_json(out, to_json(report));
  } else if (report.first_obstruction) {
    out << (report.obstruction_primes.size() > 1 ? "obstructions at " : "obstruction at ");
    for (std::size_t i = 0; i < report.obstruction_primes.size(); ++i)
      out << (i ? ", " : "") << report.obstruction_primes[i];
    out << " [" << to_string(report.method) << "]\n";
  } else if (report.certified_none) {
    out << "none (certified: every prime below the Weil cutoff " << report.weil_cutoff << " checked)\n";
  } else {
    out << "none found with k <= " << cfg.k_max << "; not certified" << (report.undecided ? " (undecided primes)" : "")
        << '\n';
  }
  return inconclusive ? kUndecided : kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const Equation eq = parse_equation(cfg.equation);
  Int p_min = parse_integer(cfg.p_min, "--pmin");
  Int p_max;
  if (cfg.full_range) {
    p_min = 11;
    p_max = 99'999;
  } else {
    if (cfg.p_max.empty()) throw UsageError("sweep needs --pmax (or --full for 11 <= p < 10^5)");
    p_max = parse_integer(cfg.p_max, "--pmax");
  }
  SweepOptions options;
  options.k_max = cfg.k_max;
  options.threads = cfg.threads;
  const auto entries = sweep(eq.a, eq.b, eq.c, p_min, p_max, options);
  bool inconclusive = false;
  Json rows = Json::array();
  for (const auto& e : entries) {
    inconclusive = inconclusive || !e.obstruction;
    rows.push_back(to_json(e));
  }
  if (cfg.json) {
    print_json(out, rows);
  } else {
    out << std::left << std::setw(8) << "p" << std::setw(13) << "obstruction" << std::setw(6) << "k" << std::setw(16)
        << "method" << "ms\n";
    for (const auto& e : entries) {
      out << std::setw(8) << e.p.str() << std::setw(13) << (e.obstruction ? e.obstruction->str() : "none")
          << std::setw(6) << (e.k ? std::to_string(*e.k) : "-") << std::setw(16)
          << (e.obstruction ? to_string(e.method) : e.undecided ? "undecided" : "-") << std::fixed
          << std::setprecision(3) << e.elapsed_ms << '\n';
    }
  }
  return inconclusive ? kUndecided : kOk;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  const SignExpr expr = parse(cfg.expression);
  const auto classes = to_classes(expr);
  const auto d = density(classes);
  if (cfg.json) {
    print_json(out, Json{{"expression", expr.to_string()},
                         {"classes", to_json(classes)},
                         {"density", to_string(d)},
                         {"summary", classes.to_string()}});
  } else {
    out << classes.to_string() << "; density " << to_string(d) << '\n';
  }
  return kOk;
}

std::string discriminant_text(const CurveRecord& r) {
  std::string s = r.disc_sign < 0 ? "-" : "";
  bool first = true;
  for (const auto& [ell, v] : r.disc_valuations) {
    if (v == 0) continue;
    s += (first ? "" : " * ") + ell.str() + (v > 1 ? "^" + std::to_string(v) : "");
    first = false;
  }
  return first ? s + "1" : s;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  const auto db = load_database(cfg);
  const auto& record = db.get(cfg.label);
  const auto verification = verify(record);
  if (cfg.json) {
    print_json(out, to_json(record, verification));
    return kOk;
  }
  out << record.label << ": conductor " << record.conductor << '\n';
  out << "  model        " << (record.model ? to_string(*record.model) : "-") << '\n';
  out << "  discriminant " << discriminant_text(record) << '\n';
  out << "  reduction   ";
  for (const auto& [ell, red] : record.reduction_at) {
    out << ' ' << ell << ':' << to_string(red.kind) << (red.potentially_good ? "(pg)" : "");
  }
  out << '\n';
  out << "  SL2(F3) inertia at 2: " << (record.inertia_sl2f3_at_2 ? "yes" : "no") << '\n';
  out << "  verify: " << to_string(verification.status);
  for (const auto& f : verification.mismatched_fields) out << ' ' << f;
  out << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Symplectic elimination and local obstructions for a x^p + b y^p + c z^p = 0", "fermatsym"};
  app.require_subcommand(1);

  const auto add_eq = [&](CLI::App* sub) { sub->add_option("--eq", cfg.equation, "coefficients a,b,c")->required(); };
  const auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", cfg.json, "emit JSON"); };
  const auto add_curves = [&](CLI::App* sub) {
    sub->add_option("--curves", cfg.curves_path, "curve override file (default: $FERMATSYM_CURVES)");
  };

  auto* analyze = app.add_subcommand("analyze", "congruence classes of exponents excluded by the symplectic method");
  add_eq(analyze);
  add_json(analyze);
  add_curves(analyze);
  analyze->add_option("--scenarios", cfg.scenarios_path, "scenario file (default: $FERMATSYM_SCENARIOS)");
  analyze->add_flag("--detail", cfg.detail, "print the per-case ledger");

  auto* local = app.add_subcommand("local", "solvability over Q_ell");
  add_eq(local);
  add_json(local);
  local->add_option("--p", cfg.p, "prime exponent")->required();
  local->add_option("--ell", cfg.ell, "prime ell")->required();

  auto* obstruct = app.add_subcommand("obstruct", "first local obstruction for one exponent");
  add_eq(obstruct);
  add_json(obstruct);
  obstruct->add_option("--p", cfg.p, "prime exponent")->required();
  obstruct->add_option("--k-max", cfg.k_max, "largest k tried for q = kp + 1")->capture_default_str();
  obstruct->add_flag("--all", cfg.collect_all, "list every obstruction prime checked");

  auto* sweep_cmd = app.add_subcommand("sweep", "first obstruction prime for every prime exponent in a range");
  add_eq(sweep_cmd);
  add_json(sweep_cmd);
  sweep_cmd->add_option("--pmin", cfg.p_min, "smallest exponent")->capture_default_str();
  sweep_cmd->add_option("--pmax", cfg.p_max, "largest exponent");
  sweep_cmd->add_flag("--full", cfg.full_range, "11 <= p < 10^5 (long-running)");
  sweep_cmd->add_option("--k-max", cfg.k_max, "largest k tried for q = kp + 1")->capture_default_str();
  sweep_cmd->add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->capture_default_str();

  auto* density_cmd = app.add_subcommand("density", "congruence classes and density of a sign expression");
  density_cmd->add_option("expression", cfg.expression, "e.g. \"(-2)=-1 & (2)=-1\"")->required();
  add_json(density_cmd);

  auto* curve = app.add_subcommand("curve", "show and verify a curve record");
  curve->add_option("label", cfg.label, "Cremona label")->required();
  add_json(curve);
  add_curves(curve);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (local->parsed()) return cmd_local(cfg, out);
    if (obstruct->parsed()) return cmd_obstruct(cfg, out);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out);
    if (density_cmd->parsed()) return cmd_density(cfg, out);
    if (curve->parsed()) return cmd_curve(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "  " << cfg.expression << '\n' << "  " << std::string(e.column() - 1, ' ') << "^\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace fermatsym::cli
