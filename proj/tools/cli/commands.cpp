#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>

#include "cli/output_record.hpp"
#include "relaybound/bounds.hpp"
#include "relaybound/concentration.hpp"
#include "relaybound/errors.hpp"
#include "relaybound/gap.hpp"
#include "relaybound/mi_verify.hpp"
#include "relaybound/numerics.hpp"

namespace relaybound::cli {

namespace {

constexpr const char* kVersion = RELAYBOUND_VERSION;
constexpr std::uint64_t kDefaultSeed = 20161017;

// Thrown for values that parse as flags but not as numbers; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExtReal parse_snr(const std::string& flag, const std::string& text) {
  try {
    return parse_ext_real(text);
  } catch (const DomainError& e) {
    // Negative numbers are well-formed but outside the domain.
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw UsageError(flag + ": " + e.what());
    } catch (const std::logic_error&) {
      throw UsageError(flag + ": " + e.what());
    }
    throw DomainError(flag + " must be >= 0 (got " + format_number(value) + ")");
  }
}

Fields base_metadata() {
  SolverConfig cfg;
  return {{"version", std::string(kVersion)},
          {"solver_abs_tolerance", cfg.abs_tolerance},
          {"solver_max_iterations", static_cast<std::int64_t>(cfg.max_iterations)}};
}

Fields channel_inputs(const ChannelParams& p) {
  Fields f = {{"snr1", p.snr1.to_double()}, {"snr2", p.snr2.to_double()}, {"r0", p.r0}};
  f.emplace_back("rho", p.limit_ratio ? Value(*p.limit_ratio) : Value(std::monostate{}));
  return f;
}

std::string verdict_line(Verdict v) { return std::string(to_string(v)); }

void write_csv(std::ostream& out, const std::vector<OutputRecord>& records) {
  if (records.empty()) return;
  std::vector<std::string> header;
  for (const Fields* f : {&records.front().inputs, &records.front().outputs}) {
    for (const auto& kv : *f) header.push_back(kv.first);
  }
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : records) {
    bool first = true;
    for (const Fields* f : {&r.inputs, &r.outputs}) {
      for (const auto& kv : *f) {
        out << (first ? "" : ",") << format_value(kv.second);
        first = false;
      }
    }
    out << '\n';
  }
}

void emit(std::ostream& out, const std::string& format, const std::vector<OutputRecord>& records,
          const std::optional<std::string>& result_line = std::nullopt) {
  if (format == "json") {
    write_json(out, records);
  } else if (format == "csv") {
    write_csv(out, records);
  } else {
    for (const auto& r : records) write_table(out, r);
    if (result_line) out << "result: " << *result_line << '\n';
  }
}

// Channel flags shared by bound, gap and sweep.
struct ChannelFlags {
  std::string snr1 = "1";
  std::string snr2 = "1";
  double r0 = 0.0;
  std::optional<double> rho;

  void add(CLI::App* app, bool required) {
    auto* o1 = app->add_option("--snr1", snr1, "P/N1, a nonnegative real or 'inf'");
    auto* o2 = app->add_option("--snr2", snr2, "P/N2, a nonnegative real or 'inf'");
    auto* o3 = app->add_option("--r0", r0, "relay link rate in bits per channel use");
    if (required) {
      o1->required();
      o2->required();
      o3->required();
    }
    app->add_option("--rho", rho, "snr2/snr1 along which snr1 = snr2 = inf is approached");
  }

  [[nodiscard]] ChannelParams params() const {
    ChannelParams p{parse_snr("--snr1", snr1), parse_snr("--snr2", snr2), r0, rho};
    p.validate();
    return p;
  }
};

Variant parse_variant(const std::string& s) {
  return s == "prop5" ? Variant::sharpened : Variant::tightened;
}

BoundKind parse_kind(const std::string& s) {
  if (s == "cutset") return BoundKind::cutset;
  if (s == "prop5") return BoundKind::sharpened;
  return BoundKind::tightened;
}

OutputRecord bound_record(const ChannelParams& p, BoundKind kind) {
  const BoundResult r = evaluate_bound(p, kind);
  OutputRecord rec;
  rec.command = "bound";
  rec.inputs = channel_inputs(p);
  rec.inputs.emplace_back("variant", std::string(to_string(kind)));
  rec.outputs = {{"value", r.value.to_double()},
                 {"active_constraint", std::string(to_string(r.active_constraint))},
                 {"a_star", r.a_star}};
  rec.metadata = base_metadata();
  return rec;
}

OutputRecord gap_record(const ChannelParams& p, Variant variant) {
  const GapReport g = gap(p, variant);
  OutputRecord rec;
  rec.command = "gap";
  rec.inputs = channel_inputs(p);
  rec.inputs.emplace_back("variant", std::string(to_string(variant)));
  rec.outputs = {{"gap", g.gap},
                 {"cutset", g.cutset.to_double()},
                 {"improved", g.improved.to_double()},
                 {"a_star", g.a_star},
                 {"cutset_active", std::string(to_string(g.cutset_active))},
                 {"improved_active", std::string(to_string(g.improved_active))}};
  rec.metadata = base_metadata();
  return rec;
}

// One sweep row; the sharpened column is empty where its precondition fails.
OutputRecord sweep_record(const ChannelParams& p) {
  OutputRecord rec;
  rec.command = "sweep";
  rec.inputs = {{"snr1", p.snr1.to_double()}, {"snr2", p.snr2.to_double()}, {"r0", p.r0}};
  const GapReport g = gap(p, Variant::tightened);
  Value sharpened = std::monostate{};
  try {
    sharpened = sharpened_bound(p).value.to_double();
  } catch (const DomainError&) {
  }
  rec.outputs = {{"cutset", g.cutset.to_double()},
                 {"theorem1", g.improved.to_double()},
                 {"prop5", sharpened},
                 {"gap", g.gap}};
  rec.metadata = base_metadata();
  if (p.limit_ratio) rec.metadata.emplace_back("rho", *p.limit_ratio);
  return rec;
}

OutputRecord concentration_record(const ConcentrationCheck& c) {
  OutputRecord rec;
  rec.command = "concentration";
  rec.inputs = {{"n", static_cast<std::int64_t>(c.params.n)},
                {"noise_var", c.params.noise_var},
                {"a", c.params.a_n},
                {"r", c.params.r},
                {"set", std::string(set_kind(c.set))}};
  rec.outputs = {{"method", std::string(to_string(c.method))},
                 {"base_prob", c.base_prob},
                 {"base_floor", c.params.base_probability_floor()},
                 {"blowup_radius", c.params.blowup_radius()},
                 {"blowup_prob", c.blowup_prob},
                 {"floor", c.floor},
                 {"holds", c.holds},
                 {"result", verdict_line(c.verdict)}};
  if (c.method == Method::monte_carlo) {
    rec.outputs.insert(rec.outputs.begin() + 3, {"base_stderr", c.base_stderr});
    rec.outputs.insert(rec.outputs.begin() + 6, {"blowup_stderr", c.blowup_stderr});
  }
  rec.metadata = base_metadata();
  if (c.method == Method::monte_carlo) {
    rec.metadata.emplace_back("samples", static_cast<std::int64_t>(c.samples));
    rec.metadata.emplace_back("seed", static_cast<std::int64_t>(c.seed));
  }
  return rec;
}

OutputRecord mi_record(const MIReport& m, double scale) {
  OutputRecord rec;
  rec.command = "verify-mi";
  rec.inputs = {{"snr", m.relay.power / m.relay.noise_var},
                {"threshold_scale", scale},
                {"threshold", m.relay.threshold}};
  rec.outputs = {{"a", m.a},
                 {"i_xi", m.i_xi},
                 {"i_yi", m.i_yi},
                 {"lhs", m.lhs},
                 {"rhs", m.rhs},
                 {"slack", m.slack()},
                 {"h_y", m.h_y},
                 {"h_y_given_i", m.h_y_given_i},
                 {"holds", m.holds}};
  rec.metadata = base_metadata();
  rec.metadata.emplace_back("holds_tolerance", kMiHoldsTolerance);
  return rec;
}

std::vector<double> sweep_points(double from, double to, int steps, bool log_scale) {
  if (steps < 1) throw UsageError("--steps must be >= 1");
  if (!(from <= to)) throw UsageError("empty range: --from must not exceed --to");
  if (log_scale && !(from > 0.0)) throw UsageError("--log needs --from > 0");
  if (steps == 1) return {from};
  if (log_scale) return GridSpec::log_spaced(from, to, static_cast<std::size_t>(steps));
  std::vector<double> pts(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) pts[i] = from + (to - from) * i / (steps - 1);
  pts.back() = to;
  return pts;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity upper bounds for the Gaussian primitive relay channel", "relaybound"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const std::vector<std::string> formats = {"table", "csv", "json"};
  std::function<int()> action;

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate one upper bound");
  ChannelFlags bound_flags;
  std::string bound_variant = "theorem1";
  std::string bound_format = "table";
  bound_flags.add(bound, true);
  bound->add_option("--variant", bound_variant)->check(CLI::IsMember({"cutset", "theorem1", "prop5"}));
  bound->add_option("--format", bound_format)->check(CLI::IsMember(formats));
  bound->callback([&] {
    action = [&] {
      emit(out, bound_format, {bound_record(bound_flags.params(), parse_kind(bound_variant))});
      return kExitOk;
    };
  });

  // gap
  auto* gap_cmd = app.add_subcommand("gap", "gap between the cut-set bound and an improved bound");
  ChannelFlags gap_flags;
  std::string gap_variant = "theorem1";
  std::string gap_format = "table";
  gap_flags.add(gap_cmd, true);
  gap_cmd->add_option("--variant", gap_variant)->check(CLI::IsMember({"theorem1", "prop5"}));
  gap_cmd->add_option("--format", gap_format)->check(CLI::IsMember(formats));
  gap_cmd->callback([&] {
    action = [&] {
      emit(out, gap_format, {gap_record(gap_flags.params(), parse_variant(gap_variant))});
      return kExitOk;
    };
  });

  // max-gap
  auto* max_gap = app.add_subcommand("max-gap", "largest gap over a parameter grid and the limit point");
  std::string mg_variant = "theorem1";
  std::string mg_format = "table";
  double snr_min = 1e-2, snr_max = 1e6;
  int snr_points = 41;
  std::optional<double> r0_min, r0_max, r0_step;
  bool no_limit = false;
  max_gap->add_option("--variant", mg_variant)->check(CLI::IsMember({"theorem1", "prop5"}));
  max_gap->add_option("--snr-min", snr_min, "smallest grid SNR (default 1e-2)");
  max_gap->add_option("--snr-max", snr_max, "largest grid SNR (default 1e6)");
  max_gap->add_option("--snr-points", snr_points, "log-spaced SNR count (default 41)");
  max_gap->add_option("--r0-min", r0_min, "replace the default r0 grid: first value");
  max_gap->add_option("--r0-max", r0_max, "last r0 value (default 1)");
  max_gap->add_option("--r0-step", r0_step, "r0 spacing (default 1e-3)");
  max_gap->add_flag("--no-limit-point", no_limit, "probe only the finite grid");
  max_gap->add_option("--format", mg_format)->check(CLI::IsMember(formats));
  max_gap->callback([&] {
    action = [&] {
      GridSpec grid = GridSpec::defaults();
      if (snr_points < 1 || !(snr_min > 0.0) || snr_max < snr_min) {
        throw UsageError("need 0 < --snr-min <= --snr-max and --snr-points >= 1");
      }
      grid.snr_values = GridSpec::log_spaced(snr_min, snr_max, static_cast<std::size_t>(snr_points));
      if (r0_min || r0_max || r0_step) {
        const double lo = r0_min.value_or(0.0);
        const double hi = r0_max.value_or(1.0);
        const double step = r0_step.value_or(1e-3);
        if (!(step > 0.0) || hi < lo) throw UsageError("need --r0-min <= --r0-max and --r0-step > 0");
        grid.r0_values.clear();
        const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
        for (long long i = 0; i <= count; ++i) grid.r0_values.push_back(lo + static_cast<double>(i) * step);
      }
      grid.include_limit_point = !no_limit;
      const Variant variant = parse_variant(mg_variant);
      const GapSupremum s = max_gap_search(variant, grid);

      OutputRecord rec;
      rec.command = "max-gap";
      rec.inputs = {{"variant", std::string(to_string(variant))}};
      rec.outputs = {{"value", s.value},
                     {"argmax_snr1", s.argmax.snr1.to_double()},
                     {"argmax_snr2", s.argmax.snr2.to_double()},
                     {"argmax_r0", s.argmax.r0},
                     {"finite_max", s.finite_max},
                     {"finite_argmax_snr1", s.finite_argmax.snr1.to_double()},
                     {"finite_argmax_snr2", s.finite_argmax.snr2.to_double()},
                     {"finite_argmax_r0", s.finite_argmax.r0},
                     {"symmetric_rays_nondecreasing", s.symmetric_rays_nondecreasing},
                     {"argmax_multiple_access_active", s.argmax_multiple_access_active},
                     {"points_evaluated", static_cast<std::int64_t>(s.points_evaluated)}};
      rec.metadata = base_metadata();
      rec.metadata.emplace_back("snr_min", grid.snr_values.front());
      rec.metadata.emplace_back("snr_max", grid.snr_values.back());
      rec.metadata.emplace_back("snr_points", static_cast<std::int64_t>(grid.snr_values.size()));
      rec.metadata.emplace_back("r0_points", static_cast<std::int64_t>(grid.r0_values.size()));
      rec.metadata.emplace_back("limit_point", grid.include_limit_point);
      emit(out, mg_format, {rec});
      return kExitOk;
    };
  });

  // network-gap
  auto* network = app.add_subcommand("network-gap", "per-network lower bound on the approximation gap");
  long long nodes = 4;
  std::string net_format = "table";
  network->add_option("--nodes", nodes, "total number of nodes (antennas)")->required();
  network->add_option("--format", net_format)->check(CLI::IsMember(formats));
  network->callback([&] {
    action = [&] {
      OutputRecord rec;
      rec.command = "network-gap";
      rec.inputs = {{"nodes", static_cast<std::int64_t>(nodes)}};
      rec.outputs = {{"gap_lower_bound", network_gap_lower_bound(nodes)},
                     {"per_node_constant", network_gap_lower_bound(1)}};
      rec.metadata = base_metadata();
      emit(out, net_format, {rec});
      return kExitOk;
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "bounds and gap along a one-parameter grid");
  ChannelFlags sweep_flags;
  std::string sweep_param;
  double from = 0.0, to = 1.0;
  int steps = 11;
  bool log_scale = false;
  std::string sweep_format = "csv";
  sweep_flags.add(sweep, false);
  sweep->add_option("--param", sweep_param, "snr (both SNRs), snr1, snr2 or r0")
      ->required()
      ->check(CLI::IsMember({"snr", "snr1", "snr2", "r0"}));
  sweep->add_option("--from", from, "first grid value");
  sweep->add_option("--to", to, "last grid value");
  sweep->add_option("--steps", steps, "number of grid points");
  sweep->add_flag("--log", log_scale, "log-spaced points");
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
  sweep->callback([&] {
    action = [&] {
      const ChannelParams fixed = sweep_flags.params();
      std::vector<OutputRecord> rows;
      for (double v : sweep_points(from, to, steps, log_scale)) {
        ChannelParams p = fixed;
        if (sweep_param == "r0") {
          p.r0 = v;
        } else {
          if (v < 0.0) throw DomainError("--from must be >= 0 for an SNR sweep");
          if (sweep_param != "snr2") p.snr1 = ExtReal(v);
          if (sweep_param != "snr1") p.snr2 = ExtReal(v);
        }
        p.validate();
        rows.push_back(sweep_record(p));
      }
      if (sweep_format == "json") {
        write_json(out, rows);
      } else {
        out << kSweepHeader << '\n';
        for (const auto& r : rows) {
          bool first = true;
          for (const Fields* f : {&r.inputs, &r.outputs}) {
            for (const auto& kv : *f) {
              out << (first ? "" : ",") << format_value(kv.second);
              first = false;
            }
          }
          out << '\n';
        }
      }
      return kExitOk;
    };
  });

  // concentration
  auto* conc = app.add_subcommand("concentration", "check Gaussian blow-up of a set");
  ConcentrationParams cp;
  std::string set_name = "halfspace";
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = kDefaultSeed;
  std::string conc_format = "table";
  conc->add_option("--n", cp.n, "dimension")->required();
  conc->add_option("--noise-var", cp.noise_var, "per-coordinate noise variance N");
  conc->add_option("--a", cp.a_n, "a_n in bits; the set has probability 2^(-n a_n)")->required();
  conc->add_option("--r", cp.r, "extra blow-up slack r > 0")->required();
  conc->add_option("--set", set_name)->check(CLI::IsMember({"halfspace", "ball"}));
  conc->add_option("--samples", samples, "Monte Carlo sample count (exact evaluation if omitted)");
  conc->add_option("--seed", seed, "Monte Carlo seed");
  conc->add_option("--format", conc_format)->check(CLI::IsMember(formats));
  conc->callback([&] {
    action = [&] {
      cp.validate();
      const SetDescriptor set = set_name == "ball" ? SetDescriptor(centered_ball_for(cp))
                                                   : SetDescriptor(halfspace_for(cp));
      const ConcentrationCheck c =
          samples ? monte_carlo_check(cp, set, *samples, seed) : exact_check(cp, set);
      emit(out, conc_format, {concentration_record(c)}, verdict_line(c.verdict));
      switch (c.verdict) {
        case Verdict::pass: return kExitOk;
        case Verdict::fail: return kExitFail;
        case Verdict::inconclusive: return kExitInconclusive;
      }
      return kExitFail;
    };
  });

  // verify-mi
  auto* mi = app.add_subcommand("verify-mi", "single-letter quantiser check of the relay MI inequality");
  std::vector<double> snr_grid = {1.0};
  std::vector<double> thresholds = {0.0};
  std::string mi_format = "table";
  mi->add_option("--snr-grid", snr_grid, "comma-separated P/N values (N = 1)")->delimiter(',');
  mi->add_option("--thresholds", thresholds, "comma-separated quantiser thresholds in units of sqrt(P)")
      ->delimiter(',');
  mi->add_option("--format", mi_format)->check(CLI::IsMember(formats));
  mi->callback([&] {
    action = [&] {
      const auto reports = sweep_quantizer_relays(snr_grid, thresholds);
      std::vector<OutputRecord> records;
      bool all_hold = true;
      for (std::size_t k = 0; k < reports.size(); ++k) {
        records.push_back(mi_record(reports[k], thresholds[k % thresholds.size()]));
        all_hold = all_hold && reports[k].holds;
      }
      emit(out, mi_format, records, all_hold ? "PASS" : "FAIL");
      return all_hold ? kExitOk : kExitFail;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NoBracketError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace relaybound::cli
