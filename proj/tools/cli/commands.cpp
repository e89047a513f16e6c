#include "cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cli/format.hpp"
#include "renyimono/convexroof.hpp"
#include "renyimono/errors.hpp"
#include "renyimono/parallel.hpp"
#include "renyimono/rng.hpp"
#include "renyimono/sweep.hpp"

namespace renyimono::cli {

namespace {

constexpr double kRoofBandUpper = 5e-3;
constexpr char kWorkersEnv[] = "RENYIMONO_WORKERS";

std::optional<std::size_t> qubits_flag(const Settings& s) {
  if (!s.has("qubits")) return std::nullopt;
  return static_cast<std::size_t>(s.unsigned_int("qubits", 0));
}

Lemma single_lemma(const Settings& s) {
  const auto names = s.text_list("lemma", ',');
  if (names.size() > 1) throw UsageError("--lemma: give a single lemma here");
  return names.empty() ? Lemma::L2 : parse_lemmas(names).front();
}

void emit(const Settings& s, const std::string& content, const std::string& summary,
          std::ostream& out, std::ostream& err) {
  if (auto path = s.get("out")) {
    write_atomically(*path, content);
    if (!summary.empty()) out << summary << '\n';
  } else {
    out << content;
    if (!summary.empty()) err << summary << '\n';
  }
}

std::string with_context(const std::string& report, const std::string& state, std::uint64_t seed,
                         std::uint64_t sample, const MarginalProfile& prof) {
  std::ostringstream os;
  os << "{\"state\":\"" << state << "\",\"seed\":" << seed << ",\"sample\":" << sample
     << ",\"profile\":" << profile_json(prof) << "," << report.substr(1);
  return os.str();
}

// State specs such as gw:a,b,c contain commas; quote them as one CSV field.
std::string state_label(const std::string& spec) {
  if (spec.find_first_of(",\"") == std::string::npos) return spec;
  std::string quoted = "\"";
  for (char c : spec) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void print_profile(std::ostream& out, const MarginalProfile& p, const ChainState& chain) {
  out << "  C(A|rest) = " << format_double(p.c_global) << "\n";
  for (std::size_t k = 0; k < p.num_parties(); ++k) {
    out << "  C(A,B" << k + 1 << " = q" << chain.parties_b()[k] << ") = " << format_double(p.c_pair[k])
        << "   E_alpha = " << format_double(p.e_pair[k]) << "\n";
  }
  out << "  E_alpha(A|rest) = " << format_double(p.e_global) << "\n";
  out << "  CKW residual C^2(A|rest) - sum C^2(A,Bk) = " << format_double(p.ckw_residual()) << "\n";
}

}  // namespace

std::size_t worker_count_from_env() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const std::uint64_t n = parse_unsigned(env, kWorkersEnv);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const UsageError&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_demo(std::ostream& out) {
  const AlphaParam alpha(2.0);
  const EtaParam eta(1.0);
  out << "Renyi-alpha monogamy walkthrough: party A = qubit 0, alpha = 2, eta = 1, "
         "tightened bound L2 against the baseline hierarchy.\n";
  const std::pair<const char*, PureState> cases[] = {
      {"GHZ3 = (|000> + |111>)/sqrt(2)", ghz(3)},
      {"W3 = (|100> + |010> + |001>)/sqrt(3)", w_state(3)},
  };
  for (const auto& [name, psi] : cases) {
    const ChainState chain(psi);
    const MarginalProfile prof = profile(chain, alpha);
    const MonogamyReport r = evaluate(prof, eta, {Lemma::L2, Lemma4Variant::ProofConsistent, std::nullopt});
    out << "\n" << name << "\n";
    print_profile(out, prof, chain);
    out << "  L2: lhs = " << format_double(r.lhs) << "  rhs = " << format_double(r.rhs_new)
        << "  baseline = " << format_double(r.rhs_baseline) << "\n";
    out << "      margin = " << format_double(r.margin)
        << "  tightening = " << format_double(r.tightening)
        << "  condition_met = " << (r.condition_met ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Settings& s, std::ostream& out, std::ostream&) {
  const std::string state_spec = s.text("state", "w3");
  const StateFamily fam = parse_state(state_spec, qubits_flag(s));
  const AlphaParam alpha(s.real("alpha", 2.0));
  const EtaParam eta(s.real("eta", 1.0));
  const Lemma lemma = single_lemma(s);
  check_regime(lemma, alpha, eta);
  const auto variants = parse_variants(s.text_list("variant", ','));
  if (variants.size() > 1) throw UsageError("--variant: give a single variant here");
  const Lemma4Variant variant = variants.empty() ? Lemma4Variant::ProofConsistent : variants.front();
  const double tolerance = s.real("tolerance", kMarginTolerance);
  if (!(tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  if (!is_pure_family(fam) || fam.num_qubits < 3) {
    throw UsageError("--state must be a pure state on at least 3 qubits");
  }
  const bool split_shaped = lemma == Lemma::L3 || lemma == Lemma::L5;
  if (split_shaped && fam.num_qubits < 4) throw UsageError(to_string(lemma) + " needs N >= 4");

  const std::uint64_t seed = s.unsigned_int("seed", 0);
  const std::uint64_t sample = s.unsigned_int("sample", 0);
  const ChainState chain(sample_pure(fam, seed, sample));
  const MarginalProfile prof = profile(chain, alpha);
  const std::string state_name = describe(fam);

  std::vector<MonogamyReport> reports;
  if (split_shaped) {
    if (s.has("split")) {
      reports.push_back(evaluate(prof, eta, {lemma, variant, s.unsigned_int("split", 1)}));
    } else {
      for (std::size_t m = 1; m + 2 <= prof.num_parties(); ++m) {
        reports.push_back(evaluate(prof, eta, {lemma, variant, m}));
      }
    }
  } else {
    reports.push_back(evaluate(prof, eta, {lemma, variant, std::nullopt}));
  }

  bool violated = false;
  if (reports.size() == 1) {
    out << with_context(report_json(reports.front()), state_name, seed, sample, prof) << "\n";
  } else {
    out << "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) out << ",\n";
      out << with_context(report_json(reports[i]), state_name, seed, sample, prof);
    }
    out << "]\n";
  }
  for (const auto& r : reports) violated = violated || r.violates(tolerance);
  return violated ? kExitViolation : kExitOk;
}

SweepConfig sweep_config_from(const Settings& s) {
  SweepConfig c;
  c.family = parse_state(s.text("state", "haar"), qubits_flag(s));
  c.alphas = s.real_list("alpha", {2.0});
  c.etas = s.real_list("eta", {1.0});
  const auto lemma_names = s.text_list("lemma", ',');
  c.lemmas = lemma_names.empty() ? std::vector<Lemma>{Lemma::L2} : parse_lemmas(lemma_names);
  if (s.has("variant")) c.variants = parse_variants(s.text_list("variant", ','));
  c.samples = static_cast<std::size_t>(s.unsigned_int("samples", 100));
  c.seed = s.unsigned_int("seed", 0);
  c.tolerance = s.real("tolerance", kMarginTolerance);
  c.workers = worker_count_from_env();
  return c;
}

int cmd_sweep(const Settings& s, std::ostream& out, std::ostream& err) {
  const SweepConfig config = sweep_config_from(s);
  const std::string format = s.text("format", "csv");
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  validate(config);

  const SweepResult result = sweep(config);
  emit(s, format == "csv" ? sweep_csv(result) : sweep_json(result), summary_line(result.summary),
       out, err);
  return result.summary.violations > 0 ? kExitViolation : kExitOk;
}

int cmd_compare(const Settings& s, std::ostream& out, std::ostream& err) {
  std::vector<std::string> specs = s.text_list("state", ';');
  if (specs.empty()) specs = {"w3", "gw:0.70710678118654752,0.54772255750516611,0.44721359549995794"};
  const auto lemma_names = s.text_list("lemma", ',');
  const std::vector<Lemma> lemmas =
      lemma_names.empty() ? std::vector<Lemma>{Lemma::L2} : parse_lemmas(lemma_names);
  const bool high_regime = std::any_of(lemmas.begin(), lemmas.end(), [](Lemma l) {
    return l == Lemma::L2 || l == Lemma::L3;
  });
  const std::vector<double> alphas = s.real_list("alpha", {high_regime ? 2.0 : 1.5});
  const std::vector<double> etas = s.real_list("eta", high_regime ? std::vector<double>{1, 1.5, 2, 3}
                                                                  : std::vector<double>{2, 2.5, 3, 4});
  std::vector<Lemma4Variant> variants{Lemma4Variant::ProofConsistent};
  if (s.has("variant")) variants = parse_variants(s.text_list("variant", ','));

  std::vector<std::pair<std::string, StateFamily>> states;
  for (const auto& spec : specs) {
    StateFamily f = parse_state(spec, std::nullopt);
    if (!is_pure_family(f) || f.num_qubits < 3) throw UsageError("--state " + spec + ": need a pure state on >= 3 qubits");
    states.emplace_back(spec, f);
  }
  // Regime gates before any work.
  for (double a : alphas) {
    for (double e : etas) {
      for (Lemma l : lemmas) {
        check_regime(l, AlphaParam(a), EtaParam(e));
        for (const auto& [spec, f] : states) {
          if ((l == Lemma::L3 || l == Lemma::L5) && f.num_qubits < 4) {
            throw UsageError(to_string(l) + " needs N >= 4 (state " + spec + ")");
          }
        }
      }
    }
  }

  std::ostringstream csv;
  csv << "state,lemma,variant,m,alpha,eta,condition_met,e_larger,e_smaller,rhs_new,rhs_baseline,"
         "tightening,strict_claimed,strict_positive\n";
  std::size_t failures = 0;
  std::size_t rows = 0;
  for (const auto& [spec, fam] : states) {
    const ChainState chain(sample_pure(fam, s.unsigned_int("seed", 0), 0));
    const ChainMeasurements measured = measure_chain(chain);
    for (double a : alphas) {
      const MarginalProfile prof = profile_at(measured, AlphaParam(a));
      for (double e : etas) {
        const EtaParam eta(e);
        for (Lemma l : lemmas) {
          std::vector<LemmaSelector> selectors;
          if (l == Lemma::L4) {
            for (auto v : variants) selectors.push_back({l, v, std::nullopt});
          } else if (l == Lemma::L2) {
            selectors.push_back({l, Lemma4Variant::ProofConsistent, std::nullopt});
          } else {
            for (std::size_t m = 1; m + 2 <= prof.num_parties(); ++m) {
              selectors.push_back({l, Lemma4Variant::ProofConsistent, m});
            }
          }
          for (const auto& sel : selectors) {
            const MonogamyReport r = evaluate(prof, eta, sel);
            const bool split_shaped = sel.split.has_value();
            const MarginalProfile arranged = rearranged(
                prof, split_shaped ? split_order(prof, *sel.split) : descending_order(prof));
            const std::size_t k = arranged.num_parties();
            // The middle branch of the (1+x)^mu chain is strict for a ratio strictly inside (0, 1)
            // and a power above one.
            const double larger = split_shaped ? arranged.e_pair[k - 1] : arranged.e_pair[k - 2];
            const double smaller = split_shaped ? arranged.e_pair[k - 2] : arranged.e_pair[k - 1];
            const double power_threshold = (l == Lemma::L2 || l == Lemma::L3) ? 1.0 : 2.0;
            const bool strict_claimed =
                e > power_threshold && smaller > 0.0 && larger > smaller * (1.0 + 1e-9);
            const bool strict_positive = r.tightening > 0.0;
            if (r.asserted() &&
                (r.tightening < -kTighteningTolerance || (strict_claimed && !strict_positive))) {
              ++failures;
            }
            ++rows;
            csv << state_label(spec) << ',' << to_string(l) << ',' << (r.variant ? to_string(*r.variant) : "na") << ','
                << (r.m ? std::to_string(*r.m) : "") << ',' << format_double(a) << ','
                << format_double(e) << ',' << (r.condition_met ? "true" : "false") << ','
                << format_double(larger) << ',' << format_double(smaller) << ','
                << format_double(r.rhs_new) << ',' << format_double(r.rhs_baseline) << ','
                << format_double(r.tightening) << ',' << (strict_claimed ? "true" : "false") << ','
                << (strict_positive ? "true" : "false") << '\n';
          }
        }
      }
    }
  }
  emit(s, csv.str(),
       "rows=" + std::to_string(rows) + " tightening_failures=" + std::to_string(failures), out, err);
  return failures > 0 ? kExitViolation : kExitOk;
}

int cmd_roof_check(const Settings& s, std::ostream& out, std::ostream& err) {
  const std::size_t samples = static_cast<std::size_t>(s.unsigned_int("samples", 100));
  const std::size_t rank = static_cast<std::size_t>(s.unsigned_int("rank", 2));
  const AlphaParam alpha(s.real("alpha", 2.0));
  if (!alpha.analytic_ok()) {
    throw RegimeError("roof-check needs alpha >= (sqrt(7)-1)/2 for the analytic two-qubit value");
  }
  if (rank < 1 || rank > 4) throw UsageError("--rank must lie in [1, 4] for two qubits");
  const std::string measure = s.text("measure", "renyi");
  if (measure != "renyi" && measure != "concurrence") {
    throw UsageError("--measure must be renyi or concurrence");
  }
  const std::uint64_t seed = s.unsigned_int("seed", 0);
  RoofSchedule schedule;
  schedule.restarts = static_cast<std::size_t>(s.unsigned_int("restarts", schedule.restarts));
  schedule.iterations = static_cast<std::size_t>(s.unsigned_int("iterations", schedule.iterations));
  if (schedule.restarts < 1) throw UsageError("--restarts must be >= 1");

  struct Row {
    double analytic;
    double roof;
  };
  std::vector<Row> rows(samples);
  parallel_for(samples, worker_count_from_env(), [&](std::size_t k) {
    const DensityMatrix rho = random_density(2, rank, derive_seed(seed, k));
    RoofSchedule local = schedule;
    local.seed = splitmix64(derive_seed(seed, k));
    if (measure == "renyi") {
      rows[k].analytic = renyi_entanglement_two_qubit(rho, alpha);
      rows[k].roof = roof_upper_bound({rho, RoofMeasure::renyi(alpha), local}).value;
    } else {
      rows[k].analytic = concurrence_two_qubit(rho);
      rows[k].roof = roof_upper_bound({rho, RoofMeasure::concurrence(), local}).value;
    }
  });

  std::ostringstream csv;
  csv << "seed,sample,rank,measure,alpha,analytic,roof_upper_bound,gap\n";
  std::size_t below = 0;
  std::size_t in_band = 0;
  double max_gap = -std::numeric_limits<double>::infinity();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const double gap = rows[k].roof - rows[k].analytic;
    max_gap = std::max(max_gap, gap);
    min_gap = std::min(min_gap, gap);
    if (gap < -kRoofGapTolerance) ++below;
    if (gap >= -kRoofGapTolerance && gap <= kRoofBandUpper) ++in_band;
    csv << seed << ',' << k << ',' << rank << ',' << measure << ','
        << (measure == "renyi" ? format_double(alpha.value()) : "") << ','
        << format_double(rows[k].analytic) << ',' << format_double(rows[k].roof) << ','
        << format_double(gap) << '\n';
  }
  std::ostringstream summary;
  summary << "samples=" << samples << " min_gap=" << format_double(min_gap)
          << " max_gap=" << format_double(max_gap) << " within_band=" << in_band
          << " below_analytic=" << below;
  emit(s, csv.str(), summary.str(), out, err);
  return below > 0 ? kExitViolation : kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi-alpha entanglement monogamy numerics"};
  app.name("renyimono");
  app.require_subcommand(1);

  Settings flags;
  std::string config_path;

  auto add = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    const char separator = name == "state" ? ';' : ',';
    sub->add_option_function<std::vector<std::string>>(
        "--" + name,
        [&flags, name, separator](const std::vector<std::string>& values) {
          std::string joined;
          for (const auto& v : values) {
            if (!joined.empty()) joined += separator;
            joined += v;
          }
          flags.set(name, joined);
        },
        help);
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value or JSON config file; flags override it");
  };

  CLI::App* demo = app.add_subcommand("demo", "GHZ and W three-qubit walkthrough");

  CLI::App* verify = app.add_subcommand("verify", "verify one bound on one state (JSON report)");
  add(verify, "state", "ghzN | wN | gw:a,b,c | haar[N]");
  add(verify, "qubits", "qubit count for haar");
  add(verify, "alpha", "Renyi order");
  add(verify, "eta", "power eta");
  add(verify, "lemma", "L2 | L3 | L4 | L5");
  add(verify, "variant", "L4 reading: proof | printed");
  add(verify, "split", "split index m for L3/L5 (default: all)");
  add(verify, "seed", "RNG seed for random states");
  add(verify, "sample", "sample index within the seed's stream");
  add(verify, "tolerance", "margin tolerance");
  add_config(verify);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "verification campaign (CSV/JSON)");
  for (const char* name : {"state", "qubits", "alpha", "eta", "lemma", "variant", "samples", "seed",
                           "tolerance", "out", "format"}) {
    add(sweep_cmd, name, "");
  }
  add_config(sweep_cmd);

  CLI::App* compare = app.add_subcommand("compare", "tightening of new bounds over the baseline");
  for (const char* name : {"state", "lemma", "variant", "alpha", "eta", "seed", "out"}) {
    add(compare, name, "");
  }
  add_config(compare);

  CLI::App* roof = app.add_subcommand("roof-check", "convex-roof optimizer vs analytic two-qubit values");
  for (const char* name : {"samples", "rank", "alpha", "seed", "measure", "restarts", "iterations", "out"}) {
    add(roof, name, "");
  }
  add_config(roof);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Settings settings;
    if (!config_path.empty()) settings = Settings::load(config_path);
    settings.merge(flags);
    if (demo->parsed()) return cmd_demo(out);
    if (verify->parsed()) return cmd_verify(settings, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(settings, out, err);
    if (compare->parsed()) return cmd_compare(settings, out, err);
    if (roof->parsed()) return cmd_roof_check(settings, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace renyimono::cli
