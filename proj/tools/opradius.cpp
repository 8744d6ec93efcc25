// Command-line front end: compute, check, fuzz, replay, repro, elliptic.
// Exit codes: 0 ok, 1 violated / failed, 2 invalid input, 3 operator outside B_A.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "opradius/elliptic.hpp"
#include "opradius/errors.hpp"
#include "opradius/functionals.hpp"
#include "opradius/harness.hpp"
#include "opradius/inequalities.hpp"
#include "opradius/matrix_io.hpp"
#include "opradius/repro.hpp"

using namespace opradius;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;
constexpr int kOutsideBA = 3;

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::not_in_ba:
    case Errc::unbounded_form: return kOutsideBA;
    default: return kInvalid;
  }
}

double default_tol() {
  const char* env = std::getenv("OPRADIUS_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    raise(Errc::config_error, std::string("OPRADIUS_TOL='") + env + "' is not a positive number");
  }
  return v;
}

SemiHilbertSpace load_space(const std::string& path) {
  const SpaceFile f = read_space_file(path);
  return SemiHilbertSpace::build(f.metric, f.tol.value_or(default_tol()));
}

Vector load_vector(const std::string& path) {
  const Matrix m = read_matrix_file(path);
  if (m.cols() != 1) raise(Errc::dimension_mismatch, path + ": a vector file must have one column");
  return m.col(0);
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const std::string& kv : items) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      raise(Errc::bad_parameter, "parameter '" + kv + "' is not of the form name=value");
    }
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      raise(Errc::bad_parameter, "parameter '" + kv + "' has a non-numeric value");
    }
    p[kv.substr(0, eq)] = v;
  }
  return p;
}

void parse_dims(const std::string& text, EnsembleConfig& cfg) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      cfg.dim_min = cfg.dim_max = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return;
    }
    const std::string lo = text.substr(0, dots);
    const std::string hi = text.substr(dots + 2);
    cfg.dim_min = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    cfg.dim_max = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    raise(Errc::config_error, "--dims '" + text + "' is not of the form MIN..MAX");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

// ---- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string space;
  std::string op;
  std::string quantity = "radius";
};

int cmd_compute(const ComputeArgs& a) {
  const SemiHilbertSpace s = load_space(a.space);
  const Matrix t = read_matrix_file(a.op);
  json out{{"quantity", a.quantity}};
  if (a.quantity == "norm") {
    out["value"] = operator_a_norm(s, t);
  } else if (a.quantity == "radius") {
    const RadiusResult r = a_numerical_radius(s, t);
    out["value"] = r.value;
    out["argmax_angle"] = r.argmax_angle;
    out["gap"] = r.gap;
    out["witness"] = vector_json(r.witness_vector);
  } else if (a.quantity == "crawford") {
    try {
      out["value"] = a_crawford(s, t);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_space) throw;
      std::cerr << "warning: " << e.what() << "\n";
      out["value"] = 0.0;
      out["degenerate"] = true;
    }
  } else if (a.quantity == "adjoint") {
    out["matrix"] = matrix_to_json(s.sharp_adjoint(t));
  } else if (a.quantity == "classify") {
    const OperatorClassification c = s.classify(t);
    out["in_BA"] = c.in_BA;
    out["a_selfadjoint"] = c.a_selfadjoint;
    out["a_positive"] = c.a_positive;
    out["a_normal"] = c.a_normal;
    out["a_unitary"] = c.a_unitary;
  } else {
    const CompressedOperator c = s.compress(t);
    out["rank"] = c.r;
    out["matrix"] = matrix_to_json(c.M);
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
  std::string id;
  std::string space;
  std::vector<std::string> operands;
  std::vector<std::string> vectors;
  std::vector<double> scalars;
  std::vector<std::string> params;
  Tolerance tol;
};

int cmd_check(const CheckArgs& a) {
  const SemiHilbertSpace s = load_space(a.space);
  Operands ops;
  for (const std::string& f : a.operands) ops.ops.push_back(read_matrix_file(f));
  for (const std::string& f : a.vectors) ops.vecs.push_back(load_vector(f));
  ops.scalars = a.scalars;
  const MarginReport r = evaluate(a.id, s, ops, parse_params(a.params), a.tol);
  std::cout << to_json(r).dump(2) << "\n";
  switch (r.status) {
    case Status::satisfied: return kOk;
    case Status::violated: return kFailed;
    case Status::inapplicable:
      std::cerr << "inapplicable: " << r.reason << "\n";
      return kInvalid;
  }
  return kInvalid;
}

// ---- fuzz ------------------------------------------------------------------

struct FuzzArgs {
  std::string dims = "2..6";
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  std::string ranks = "all";
  std::string entries;
  std::string out;
  std::string format = "json";
  bool verbose = false;
  bool serial = false;
  Tolerance tol;
};

std::string fuzz_table(const FuzzReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "entry" << std::setw(9) << "flagged" << std::setw(11)
     << "applicable" << std::setw(13) << "inapplicable" << std::setw(11) << "violations"
     << std::setw(8) << "errors" << "min_rel_margin\n";
  for (const EntryAggregate& e : r.entries) {
    os << std::left << std::setw(16) << e.id << std::setw(9) << (e.flagged ? "yes" : "")
       << std::setw(11) << e.applicable << std::setw(13) << e.inapplicable << std::setw(11)
       << e.violations << std::setw(8) << e.errors << e.min_relative_margin << "\n";
  }
  os << "non-flagged violations: " << r.violations.size()
     << ", flagged findings: " << r.flagged.size() << ", errors: " << r.error_messages.size()
     << ", seconds: " << r.seconds << "\n";
  return os.str();
}

int cmd_fuzz(const FuzzArgs& a) {
  FuzzConfig cfg;
  parse_dims(a.dims, cfg.ensemble);
  cfg.ensemble.trials = a.trials;
  cfg.ensemble.seed = a.seed;
  cfg.ensemble.ranks = a.ranks == "full" ? RankPolicy::full : RankPolicy::all;
  cfg.entries = split_list(a.entries);
  cfg.tol = a.tol;
  cfg.verbose = a.verbose;
  const FuzzReport r = a.serial ? run_fuzz_serial(cfg) : run_fuzz(cfg);
  for (const std::string& line : r.verbose_lines) std::cerr << line << "\n";
  if (!a.out.empty()) {
    std::string text;
    for (const ViolationRecord& v : r.violations) text += to_json(v).dump() + "\n";
    for (const ViolationRecord& v : r.flagged) text += to_json(v).dump() + "\n";
    write_text_file(a.out, text);
  }
  if (a.format == "table") {
    std::cout << fuzz_table(r);
  } else {
    std::cout << to_json(r).dump(2) << "\n";
  }
  for (const std::string& m : r.error_messages) std::cerr << "error: " << m << "\n";
  return r.ok() ? kOk : kFailed;
}

// ---- replay ----------------------------------------------------------------

struct ReplayArgs {
  std::string record;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
};

int cmd_replay(const ReplayArgs& a) {
  std::ifstream in(a.record);
  if (!in) raise(Errc::config_error, "cannot open " + a.record);
  std::optional<Tolerance> tol;
  if (a.tol_abs || a.tol_rel) {
    Tolerance t;
    if (a.tol_abs) t.abs = *a.tol_abs;
    if (a.tol_rel) t.rel = *a.tol_rel;
    tol = t;
  }
  json out = json::array();
  bool same = true;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      raise(Errc::corrupt_record, "line " + std::to_string(n) + ": " + e.what());
    }
    const ViolationRecord rec = record_from_json(j);
    const MarginReport r = replay(rec, tol);
    same = same && r.status == rec.report.status;
    json item = to_json(r);
    item["stored_status"] = std::string(to_string(rec.report.status));
    out.push_back(std::move(item));
  }
  std::cout << out.dump(2) << "\n";
  return same ? kOk : kFailed;
}

// ---- repro -----------------------------------------------------------------

struct ReproArgs {
  std::string id = "all";
  std::string format = "table";
};

int cmd_repro(const ReproArgs& a) {
  std::vector<std::string> ids;
  if (a.id == "all") {
    ids = repro_case_ids();
  } else {
    run_repro(a.id);  // validates the id before any output
    ids.push_back(a.id);
  }
  bool ok = true;
  json all = json::array();
  for (const std::string& id : ids) {
    const ReproReport r = run_repro(id);
    ok = ok && r.ok();
    if (a.format == "json") {
      all.push_back(to_json(r));
    } else {
      std::cout << to_table(r) << "\n";
    }
  }
  if (a.format == "json") std::cout << (ids.size() == 1 ? all[0] : all).dump(2) << "\n";
  return ok ? kOk : kFailed;
}

// ---- elliptic --------------------------------------------------------------

struct EllipticArgs {
  std::vector<int> n{10, 20, 40};
  std::string out;
  std::string potential = "sine";
  std::string format = "table";
};

json row_json(const EllipticRow& r) {
  return json{{"N", r.n},         {"dim", r.dim},         {"max_v", r.max_v},
              {"w_s", r.w_s},     {"lhs", r.lhs},         {"lhs_upper", r.lhs_upper},
              {"rhs", r.rhs},     {"satisfied", r.satisfied}, {"seconds", r.seconds}};
}

int cmd_elliptic(const EllipticArgs& a) {
  for (int n : a.n) {
    if (n < 3) raise(Errc::config_error, "N = " + std::to_string(n) + " is too small (need N >= 3)");
    if ((n - 1) * (n - 1) > kEllipticDimCap) {
      raise(Errc::config_error, "N = " + std::to_string(n) + " exceeds the dimension cap");
    }
  }
  EllipticOptions opt;
  opt.potential = a.potential == "zero" ? Potential::zero : Potential::sine;
  json rows = json::array();
  bool ok = true;
  std::ostringstream table;
  table << std::left << std::setw(6) << "N" << std::setw(8) << "dim" << std::setw(14) << "lhs"
        << std::setw(14) << "lhs_upper" << std::setw(14) << "rhs" << "satisfied\n";
  for (int n : a.n) {
    const EllipticRow r = elliptic_row(n, opt);
    ok = ok && r.satisfied;
    rows.push_back(row_json(r));
    table << std::left << std::setw(6) << r.n << std::setw(8) << r.dim << std::setw(14) << r.lhs
          << std::setw(14) << r.lhs_upper << std::setw(14) << r.rhs << (r.satisfied ? "yes" : "no")
          << "\n";
  }
  const json doc{{"potential", to_string(opt.potential)}, {"rows", rows}};
  if (!a.out.empty()) write_text_file(a.out, doc.dump(2) + "\n");
  if (a.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << table.str();
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator seminorms and numerical radii on semi-Hilbertian spaces"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Compute one quantity for an operator");
  c->add_option("--space", compute.space, "Metric file")->required()->check(CLI::ExistingFile);
  c->add_option("--op", compute.op, "Operator file")->required()->check(CLI::ExistingFile);
  c->add_option("--quantity", compute.quantity)
      ->check(CLI::IsMember({"norm", "radius", "crawford", "adjoint", "classify", "compress"}));

  CheckArgs check;
  auto* k = app.add_subcommand("check", "Evaluate one catalog entry");
  k->add_option("--id", check.id, "Catalog id")->required();
  k->add_option("--space", check.space, "Metric file")->required()->check(CLI::ExistingFile);
  k->add_option("--operands", check.operands, "Operator files")->delimiter(',')->check(CLI::ExistingFile);
  k->add_option("--vectors", check.vectors, "Vector files (one column)")->delimiter(',')->check(CLI::ExistingFile);
  k->add_option("--scalars", check.scalars, "Scalar operands")->delimiter(',');
  k->add_option("--params", check.params, "name=value pairs");
  k->add_option("--tol-abs", check.tol.abs)->check(CLI::NonNegativeNumber);
  k->add_option("--tol-rel", check.tol.rel)->check(CLI::NonNegativeNumber);

  FuzzArgs fuzz;
  auto* f = app.add_subcommand("fuzz", "Random campaign over the catalog");
  f->add_option("--dims", fuzz.dims, "MIN..MAX");
  f->add_option("--trials", fuzz.trials);
  f->add_option("--seed", fuzz.seed);
  f->add_option("--ranks", fuzz.ranks)->check(CLI::IsMember({"full", "all"}));
  f->add_option("--entries", fuzz.entries, "Comma-separated ids (default: all)");
  f->add_option("--out", fuzz.out, "JSONL file for violation records");
  f->add_option("--format", fuzz.format)->check(CLI::IsMember({"json", "table"}));
  f->add_flag("--verbose", fuzz.verbose, "One JSON line per (trial, entry) on stderr");
  f->add_flag("--serial", fuzz.serial, "Single-threaded reference run");
  f->add_option("--tol-abs", fuzz.tol.abs)->check(CLI::NonNegativeNumber);
  f->add_option("--tol-rel", fuzz.tol.rel)->check(CLI::NonNegativeNumber);

  ReplayArgs rp;
  auto* p = app.add_subcommand("replay", "Re-evaluate stored violation records");
  p->add_option("--record", rp.record, "JSONL file written by fuzz --out")->required();
  p->add_option("--tol-abs", rp.tol_abs)->check(CLI::NonNegativeNumber);
  p->add_option("--tol-rel", rp.tol_rel)->check(CLI::NonNegativeNumber);

  ReproArgs repro;
  auto* r = app.add_subcommand("repro", "Recompute a worked example");
  r->add_option("--case", repro.id, "Case id or 'all'");
  r->add_option("--format", repro.format)->check(CLI::IsMember({"table", "json"}));

  EllipticArgs ell;
  auto* e = app.add_subcommand("elliptic", "Commutator bound for the discrete Laplacian");
  e->add_option("--n", ell.n, "Grid sizes")->delimiter(',');
  e->add_option("--out", ell.out, "JSON output file");
  e->add_option("--potential", ell.potential)->check(CLI::IsMember({"sine", "zero"}));
  e->add_option("--format", ell.format)->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*c) return cmd_compute(compute);
    if (*k) return cmd_check(check);
    if (*f) return cmd_fuzz(fuzz);
    if (*p) return cmd_replay(rp);
    if (*r) return cmd_repro(repro);
    if (*e) return cmd_elliptic(ell);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
