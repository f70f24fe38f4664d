// ofdmjam: Monte-Carlo BER sweeps, interference-rank and singular-fraction
// studies for MIMO-OFDM links attacked by a single-antenna jammer.

#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ofdmjam/ofdmjam.hpp"

namespace {

using namespace ofdmjam;

struct ScenarioOverrides {
  std::string scenario_file;
  std::optional<std::string> jammer;
  std::optional<int> null_dims;
  std::optional<std::string> snr;
  std::optional<std::uint64_t> blocks;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> subspace;
  std::optional<std::string> id;
};

void add_scenario_options(CLI::App* cmd, ScenarioOverrides& o) {
  cmd->add_option("--scenario", o.scenario_file, "Scenario JSON file (defaults apply to missing keys)");
  cmd->add_option("--jammer", o.jammer, "Jammer mode: none|compliant|violating");
  cmd->add_option("--null-dims", o.null_dims, "Number of interference dimensions nulled per subcarrier");
  cmd->add_option("--snr", o.snr, "SNR grid in dB as A:B:STEP (inclusive) or a single value");
  cmd->add_option("--blocks", o.blocks, "Coherence blocks per SNR point");
  cmd->add_option("--seed", o.seed, "Root seed of all random streams");
  cmd->add_option("--subspace", o.subspace, "Interference subspace knowledge: genie|estimated");
  cmd->add_option("--id", o.id, "Scenario identifier written to the CSV");
}

// Precedence: command line > scenario file > built-in defaults.
Scenario resolve_scenario(const ScenarioOverrides& o) {
  Scenario sc = o.scenario_file.empty() ? Scenario{} : load_scenario(o.scenario_file);
  if (o.jammer) {
    const JammerMode mode = parse_jammer_mode(*o.jammer);
    const int taps = sc.jammer.taps_per_antenna.empty() ? sc.legit_taps : sc.jammer.taps_per_antenna.front();
    const int antennas = mode == JammerMode::compliant ? 1 : std::max(sc.jammer.antennas, 1);
    sc.jammer = JammerSpec::make(mode, antennas, taps, sc.jammer.rel_energy_db);
  }
  if (o.null_dims) sc.null_dims = *o.null_dims;
  if (o.snr) sc.snr_db = parse_snr_spec(*o.snr);
  if (o.blocks) sc.blocks = *o.blocks;
  if (o.seed) sc.seed = *o.seed;
  if (o.subspace) sc.subspace = parse_subspace_mode(*o.subspace);
  if (o.id) sc.id = *o.id;
  sc.validate();
  return sc;
}

// "B:L" or "B:L1,L2,..." (one tap count per jammer antenna).
RankCase parse_rank_case(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("rank case '" + text + "' must look like B:L or B:L1,L2");
  RankCase rc;
  rc.jammer_taps.clear();
  try {
    rc.rx_antennas = std::stoi(text.substr(0, colon));
    std::size_t pos = colon + 1;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      rc.jammer_taps.push_back(std::stoi(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("rank case '" + text + "' must look like B:L or B:L1,L2");
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO-OFDM jammer nulling simulator"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: OFDMJAM_THREADS or all cores)");

  ScenarioOverrides sim;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "BER versus SNR sweep");
  add_scenario_options(simulate, sim);
  simulate->add_option("--out", sim_out, "Output directory for ber.csv and scenario.json")->required();

  std::vector<std::string> rank_cases;
  std::uint64_t rank_draws = 500;
  std::uint64_t rank_seed = 1;
  std::string rank_out;
  ScenarioOverrides rank_sc;
  auto* analyze = app.add_subcommand("analyze-rank", "Measured interference rank per (B, L) for a violating jammer");
  analyze->add_option("--case", rank_cases, "B:L or B:L1,L2,... (repeatable); default 8:1 8:2 8:4 8:8 2:4");
  analyze->add_option("--draws", rank_draws, "Random channel draws per case");
  analyze->add_option("--seed", rank_seed, "Root seed");
  analyze->add_option("--scenario", rank_sc.scenario_file, "Scenario JSON supplying the OFDM numerology");
  analyze->add_option("--out", rank_out, "Output directory for rank.csv")->required();

  ScenarioOverrides frac;
  std::string frac_out;
  std::string frac_snr = "inf";
  bool squared = false;
  auto* fractions = app.add_subcommand("fractions", "Singular-value fractions of the receive interference");
  add_scenario_options(fractions, frac);
  fractions->add_option("--noise-snr", frac_snr, "SNR in dB setting the noise level, or 'inf' for noise-free");
  fractions->add_flag("--squared", squared, "Use energy fractions sigma^2 / sum(sigma^2)");
  fractions->add_option("--out", frac_out, "Output directory for fractions.csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const Scenario sc = resolve_scenario(sim);
      const SimResult res = sweep(sc, {.threads = threads});
      emit_results({res}, sc, sim_out);
      for (const SimPoint& p : res.points) {
        std::cout << sc.id << "  snr " << p.snr_db << " dB  ber " << p.ber() << "  (" << p.bit_errors << "/" << p.bits
                  << ")\n";
      }
    } else if (*analyze) {
      const Scenario sc = resolve_scenario(rank_sc);
      std::vector<RankCase> cases;
      if (rank_cases.empty()) {
        for (auto [b, l] : {std::pair{8, 1}, {8, 2}, {8, 4}, {8, 8}, {2, 4}}) cases.push_back({b, {l}});
      } else {
        for (const auto& c : rank_cases) cases.push_back(parse_rank_case(c));
      }
      std::vector<RankCaseResult> results;
      for (const RankCase& rc : cases) {
        results.push_back(rank_study(rc, sc.ofdm, rank_draws, rank_seed, threads));
        const auto& r = results.back();
        std::cout << "B=" << rc.rx_antennas << "  expected rank "
                  << rc.expected_rank() << "  conforming draws " << r.conforming_draws << "/" << r.draws
                  << "  rank range [" << r.min_rank << ", " << r.max_rank << "]\n";
      }
      write_text_file(std::filesystem::path(rank_out) / "rank.csv", format_rank_csv(results));
    } else if (*fractions) {
      const Scenario sc = resolve_scenario(frac);
      const double snr = frac_snr == "inf" ? std::numeric_limits<double>::infinity() : parse_snr_spec(frac_snr).at(0);
      const FractionStudyResult r =
          fraction_study(sc, snr, squared ? FractionMode::energy : FractionMode::singular, threads);
      write_text_file(std::filesystem::path(frac_out) / "fractions.csv", format_fraction_csv(r.stats));
      write_text_file(std::filesystem::path(frac_out) / "scenario.json", scenario_to_json(sc) + "\n");
      for (Eigen::Index b = 0; b < r.stats.mean.size(); ++b) {
        std::cout << "dim " << b + 1 << "  mean " << r.stats.mean[b] << "  std " << r.stats.stddev[b] << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
