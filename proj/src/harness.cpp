#include "opradius/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "opradius/errors.hpp"
#include "opradius/seeding.hpp"

namespace opradius {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Outcome {
  MarginReport report;
  std::string error;
  std::optional<ViolationRecord> record;
  std::string line;
};

struct Draw {
  Operands operands;
  Params params;
};

std::vector<std::size_t> select_entries(const FuzzConfig& cfg) {
  const auto& catalog = list_catalog();
  std::vector<std::size_t> out;
  if (cfg.entries.empty()) {
    for (std::size_t i = 0; i < catalog.size(); ++i) out.push_back(i);
    return out;
  }
  for (const std::string& id : cfg.entries) {
    const auto it = std::find_if(catalog.begin(), catalog.end(),
                                 [&](const InequalityCatalogEntry& e) { return e.id == id; });
    if (it == catalog.end()) raise(Errc::config_error, "unknown catalog entry '" + id + "'");
    const std::size_t idx = static_cast<std::size_t>(it - catalog.begin());
    if (std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate(const FuzzConfig& cfg) {
  const EnsembleConfig& e = cfg.ensemble;
  if (e.dim_min < 1 || e.dim_max < e.dim_min || e.dim_max > 200) {
    std::ostringstream os;
    os << "dimension range " << e.dim_min << ".." << e.dim_max << " is invalid";
    raise(Errc::config_error, os.str());
  }
  if (!(cfg.tol.abs >= 0.0) || !(cfg.tol.rel >= 0.0)) {
    raise(Errc::config_error, "tolerances must be nonnegative");
  }
}

double random_scalar(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 1.0 / 16.0) return 0.0;
  return std::exp(4.0 * u(rng) - 2.0);
}

Draw draw(const InequalityCatalogEntry& e, const SemiHilbertSpace& s, std::uint64_t seed,
          std::size_t trial) {
  std::mt19937_64 rng(derive_seed(seed, {0}));
  Draw d;
  const Signature& sig = e.signature;
  const int blocks = sig.block_grid[rng() % sig.block_grid.size()];
  for (const ParamSpec& p : e.params) d.params[p.name] = p.grid[rng() % p.grid.size()];

  const int count = sig.group * blocks;
  auto sub = [&](std::uint64_t k) { return derive_seed(seed, {k + 1}); };
  switch (e.family) {
    case Family::single:
      for (int k = 0; k < count; ++k) {
        switch (trial % 4) {
          case 1: d.operands.ops.push_back(random_a_selfadjoint(s, sub(k))); break;
          case 3: d.operands.ops.push_back(random_rank_one(s, sub(k), true)); break;
          default: d.operands.ops.push_back(random_in_BA(s, sub(k))); break;
        }
      }
      break;
    case Family::generic:
      for (int k = 0; k < count; ++k) d.operands.ops.push_back(random_in_BA(s, sub(k)));
      break;
    case Family::commuting:
      d.operands.ops = random_commuting_family(s, count, sub(0));
      break;
    case Family::a_normal:
      for (int k = 0; k < count; ++k) d.operands.ops.push_back(random_a_normal(s, sub(k)));
      break;
    case Family::positive_triples:
      for (int j = 0; j < blocks; ++j) {
        const std::uint64_t k = static_cast<std::uint64_t>(3 * j);
        d.operands.ops.push_back(random_a_positive(s, sub(k)));
        d.operands.ops.push_back(random_in_BA(s, sub(k + 1)));
        d.operands.ops.push_back(random_a_positive(s, sub(k + 2)));
      }
      break;
    case Family::vectors:
    case Family::scalars:
      break;
  }
  for (int k = 0; k < sig.vectors; ++k) {
    d.operands.vecs.push_back(
        random_vector(static_cast<Eigen::Index>(s.dim()), derive_seed(seed, {1000u + static_cast<unsigned>(k)})));
  }
  for (int k = 0; k < sig.scalars; ++k) d.operands.scalars.push_back(random_scalar(rng));
  return d;
}

std::vector<Outcome> run_trial(const FuzzConfig& cfg, const std::vector<std::size_t>& selected,
                               std::size_t trial) {
  const auto& catalog = list_catalog();
  const std::uint64_t master = cfg.ensemble.seed;
  std::vector<Outcome> out(selected.size());
  const TrialShape shape = trial_shape(cfg.ensemble, trial);
  Matrix metric;
  std::optional<SemiHilbertSpace> space;
  try {
    metric = random_psd(shape.dim, shape.rank, derive_seed(master, {trial, 0}));
    space = SemiHilbertSpace::build(metric);
  } catch (const std::exception& ex) {
    for (Outcome& o : out) o.error = ex.what();
    return out;
  }
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const InequalityCatalogEntry& e = catalog[selected[i]];
    Outcome& o = out[i];
    try {
      Draw d = draw(e, *space, derive_seed(master, {trial, selected[i] + 1}), trial);
      o.report = evaluate(e.id, *space, d.operands, d.params, cfg.tol);
      if (o.report.status == Status::violated) {
        ViolationRecord rec;
        rec.id = e.id;
        rec.seed = master;
        rec.trial = trial;
        rec.metric = metric;
        rec.space_tol = space->tol();
        rec.operands = std::move(d.operands);
        rec.params = std::move(d.params);
        rec.report = o.report;
        rec.flagged = e.flagged;
        o.record = std::move(rec);
      }
      if (cfg.verbose) {
        json line = to_json(o.report);
        line["trial"] = trial;
        line["dim"] = shape.dim;
        line["rank"] = shape.rank;
        o.line = line.dump();
      }
    } catch (const std::exception& ex) {
      std::ostringstream os;
      os << e.id << " trial " << trial << ": " << ex.what();
      o.error = os.str();
    }
  }
  return out;
}

FuzzReport aggregate(const FuzzConfig& cfg, const std::vector<std::size_t>& selected,
                     std::vector<std::vector<Outcome>>& outcomes) {
  const auto& catalog = list_catalog();
  FuzzReport rep;
  rep.config = cfg;
  rep.norm_equiv_min_lower = kNaN;
  rep.qa1_min_ratio = kNaN;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const InequalityCatalogEntry& e = catalog[selected[i]];
    EntryAggregate a;
    a.id = e.id;
    a.flagged = e.flagged;
    a.min_margin = kNaN;
    a.min_relative_margin = kNaN;
    a.min_ratio = kNaN;
    double sum = 0.0;
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      Outcome& o = outcomes[t][i];
      ++a.trials;
      if (!o.error.empty()) {
        ++a.errors;
        rep.error_messages.push_back(o.error);
        continue;
      }
      if (!o.line.empty()) rep.verbose_lines.push_back(std::move(o.line));
      const MarginReport& r = o.report;
      if (r.status == Status::inapplicable) {
        ++a.inapplicable;
        continue;
      }
      ++a.applicable;
      sum += r.margin;
      const double rel = r.margin / std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
      if (std::isnan(a.min_margin) || r.margin < a.min_margin) a.min_margin = r.margin;
      if (std::isnan(a.min_relative_margin) || rel < a.min_relative_margin) a.min_relative_margin = rel;
      if (r.lhs > 0.0) {
        const double ratio = r.rhs / r.lhs;
        if (std::isnan(a.min_ratio) || ratio < a.min_ratio) a.min_ratio = ratio;
      }
      if (e.id == "NORM-EQUIV") {
        double lower = 0.0;
        double norm = 0.0;
        for (const auto& [k, v] : r.extras) {
          if (k == "lower_margin") lower = v;
          if (k == "norm") norm = v;
        }
        if (norm > 0.0) {
          const double scaled = lower / norm;
          if (std::isnan(rep.norm_equiv_min_lower) || scaled < rep.norm_equiv_min_lower) {
            rep.norm_equiv_min_lower = scaled;
          }
        }
      }
      if (r.status == Status::violated) {
        ++a.violations;
        if (o.record) {
          if (e.flagged) {
            rep.flagged.push_back(std::move(*o.record));
          } else {
            rep.violations.push_back(std::move(*o.record));
          }
        }
      }
    }
    if (a.applicable > 0) a.mean_margin = sum / static_cast<double>(a.applicable);
    if (e.id == "QA1") rep.qa1_min_ratio = a.min_ratio;
    rep.entries.push_back(a);
  }
  return rep;
}

template <bool Parallel>
FuzzReport run(const FuzzConfig& cfg) {
  validate(cfg);
  const std::vector<std::size_t> selected = select_entries(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = cfg.ensemble.trials;
  std::vector<std::vector<Outcome>> outcomes(n);
  const long long nl = static_cast<long long>(n);
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long long t = 0; t < nl; ++t) {
      outcomes[static_cast<std::size_t>(t)] = run_trial(cfg, selected, static_cast<std::size_t>(t));
    }
  } else {
    for (long long t = 0; t < nl; ++t) {
      outcomes[static_cast<std::size_t>(t)] = run_trial(cfg, selected, static_cast<std::size_t>(t));
    }
  }
  FuzzReport rep = aggregate(cfg, selected, outcomes);
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json params_to_json(const Params& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

Matrix vector_as_matrix(const Vector& v) { return Matrix(v); }

}  // namespace

FuzzReport run_fuzz(const FuzzConfig& cfg) { return run<true>(cfg); }
FuzzReport run_fuzz_serial(const FuzzConfig& cfg) { return run<false>(cfg); }

MarginReport replay(const ViolationRecord& rec, const std::optional<Tolerance>& tol) {
  const std::uint64_t h = fingerprint(rec.id, rec.operands, rec.params);
  if (h != rec.report.fingerprint) {
    raise(Errc::corrupt_record, "fingerprint " + fingerprint_hex(rec.report.fingerprint) +
                                    " does not match operands (" + fingerprint_hex(h) + ")");
  }
  const SemiHilbertSpace s = SemiHilbertSpace::build(rec.metric, rec.space_tol);
  const Tolerance t = tol.value_or(Tolerance{rec.report.tol_abs, rec.report.tol_rel});
  return evaluate(rec.id, s, rec.operands, rec.params, t);
}

json to_json(const ViolationRecord& rec) {
  json ops = json::array();
  for (const Matrix& m : rec.operands.ops) ops.push_back(matrix_to_json(m));
  json vecs = json::array();
  for (const Vector& v : rec.operands.vecs) vecs.push_back(matrix_to_json(vector_as_matrix(v)));
  return json{{"id", rec.id},
              {"seed", rec.seed},
              {"trial", rec.trial},
              {"flagged", rec.flagged},
              {"space", {{"metric", matrix_to_json(rec.metric)}, {"tol", rec.space_tol}}},
              {"operands", {{"ops", ops}, {"vecs", vecs}, {"scalars", rec.operands.scalars}}},
              {"params", params_to_json(rec.params)},
              {"report", to_json(rec.report)}};
}

ViolationRecord record_from_json(const json& j) {
  try {
    ViolationRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.trial = j.at("trial").get<std::size_t>();
    rec.flagged = j.at("flagged").get<bool>();
    rec.metric = matrix_from_json(j.at("space").at("metric"));
    rec.space_tol = j.at("space").at("tol").get<double>();
    for (const json& m : j.at("operands").at("ops")) rec.operands.ops.push_back(matrix_from_json(m));
    for (const json& v : j.at("operands").at("vecs")) {
      const Matrix m = matrix_from_json(v);
      if (m.cols() != 1) raise(Errc::corrupt_record, "stored vector is not a column");
      rec.operands.vecs.push_back(m.col(0));
    }
    rec.operands.scalars = j.at("operands").at("scalars").get<std::vector<double>>();
    for (const auto& [k, v] : j.at("params").items()) rec.params[k] = v.get<double>();
    const json& r = j.at("report");
    rec.report.id = r.at("id").get<std::string>();
    rec.report.lhs = r.at("lhs").get<double>();
    rec.report.rhs = r.at("rhs").get<double>();
    rec.report.margin = r.at("margin").get<double>();
    const std::string status = r.at("status").get<std::string>();
    rec.report.status = status == "Violated"    ? Status::violated
                        : status == "Satisfied" ? Status::satisfied
                                                : Status::inapplicable;
    rec.report.tol_abs = r.at("tol_abs").get<double>();
    rec.report.tol_rel = r.at("tol_rel").get<double>();
    rec.report.fingerprint = std::stoull(r.at("fingerprint").get<std::string>(), nullptr, 16);
    return rec;
  } catch (const Error& e) {
    if (e.code() == Errc::corrupt_record) throw;
    raise(Errc::corrupt_record, e.what());
  } catch (const std::exception& e) {
    raise(Errc::corrupt_record, e.what());
  }
}

json to_json(const FuzzReport& report) {
  const FuzzConfig& c = report.config;
  json entries = json::array();
  for (const EntryAggregate& a : report.entries) {
    entries.push_back({{"id", a.id},
                       {"flagged", a.flagged},
                       {"trials", a.trials},
                       {"applicable", a.applicable},
                       {"inapplicable", a.inapplicable},
                       {"violations", a.violations},
                       {"errors", a.errors},
                       {"min_margin", a.min_margin},
                       {"mean_margin", a.mean_margin},
                       {"min_relative_margin", a.min_relative_margin},
                       {"min_ratio", a.min_ratio}});
  }
  return json{
      {"config",
       {{"dims", {c.ensemble.dim_min, c.ensemble.dim_max}},
        {"ranks", c.ensemble.ranks == RankPolicy::all ? "all" : "full"},
        {"seed", c.ensemble.seed},
        {"trials", c.ensemble.trials},
        {"entries", c.entries},
        {"tol_abs", c.tol.abs},
        {"tol_rel", c.tol.rel}}},
      {"entries", entries},
      {"violations", report.violations.size()},
      {"flagged_findings", report.flagged.size()},
      {"errors", report.error_messages},
      {"norm_equiv_min_lower_margin", report.norm_equiv_min_lower},
      {"qa1_min_ratio", report.qa1_min_ratio},
      {"seconds", report.seconds}};
}

}  // namespace opradius
