#include "ofdmjam/results_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ofdmjam/errors.hpp"

namespace ofdmjam {

namespace {

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("failed to format a floating-point value");
  return std::string(buf.data(), end);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? line.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ConfigError("malformed " + std::string(what) + " field '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_ber_csv(const std::vector<SimResult>& results) {
  std::string out(kBerCsvHeader);
  out += '\n';
  for (const SimResult& r : results) {
    for (const SimPoint& p : r.points) {
      out += r.scenario_id;
      out += ',';
      out += to_string(r.jammer_mode);
      out += ',' + std::to_string(r.null_dims) + ',' + shortest(p.snr_db) + ',' + std::to_string(p.bits) + ',' +
             std::to_string(p.bit_errors) + ',' + shortest(p.ber()) + '\n';
    }
  }
  return out;
}

std::vector<BerRow> parse_ber_csv(std::string_view text) {
  std::vector<BerRow> rows;
  bool header = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kBerCsvHeader) throw ConfigError("unexpected BER CSV header '" + std::string(line) + "'");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7) throw ConfigError("BER CSV row has " + std::to_string(f.size()) + " fields, expected 7");
    BerRow row;
    row.scenario_id = std::string(f[0]);
    row.jammer_mode = parse_jammer_mode(f[1]);
    row.null_dims = parse_number<int>(f[2], "null_dims");
    row.snr_db = parse_number<double>(f[3], "snr_db");
    row.bits = parse_number<std::uint64_t>(f[4], "bits");
    row.bit_errors = parse_number<std::uint64_t>(f[5], "bit_errors");
    row.ber = parse_number<double>(f[6], "ber");
    rows.push_back(std::move(row));
  }
  if (header) throw ConfigError("BER CSV is missing its header");
  return rows;
}

std::string format_fraction_csv(const SingularFractionStats& stats) {
  std::string out(kFractionCsvHeader);
  out += '\n';
  for (Index b = 0; b < stats.mean.size(); ++b) {
    out += std::to_string(b + 1) + ',' + shortest(stats.mean[b]) + ',' + shortest(stats.stddev[b]) + '\n';
  }
  return out;
}

std::string format_rank_csv(const std::vector<RankCaseResult>& results) {
  std::string out(kRankCsvHeader);
  out += '\n';
  for (const RankCaseResult& r : results) {
    std::string taps;
    for (std::size_t i = 0; i < r.rank_case.jammer_taps.size(); ++i) {
      if (i) taps += ';';
      taps += std::to_string(r.rank_case.jammer_taps[i]);
    }
    out += std::to_string(r.rank_case.rx_antennas) + ',' + std::to_string(r.rank_case.jammer_taps.size()) + ',' +
           taps + ',' + std::to_string(r.rank_case.expected_rank()) + ',' + std::to_string(r.draws) + ',' +
           std::to_string(r.conforming_draws) + ',' + std::to_string(r.channel_conforming_draws) + ',' +
           std::to_string(r.subcarrier_samples) + ',' + std::to_string(r.conforming_samples) + ',' +
           std::to_string(r.draws ? r.min_rank : 0) + ',' + std::to_string(r.max_rank) + '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void emit_results(const std::vector<SimResult>& results, const Scenario& scenario,
                  const std::filesystem::path& out_dir) {
  write_text_file(out_dir / "ber.csv", format_ber_csv(results));
  write_text_file(out_dir / "scenario.json", scenario_to_json(scenario) + "\n");
}

}  // namespace ofdmjam
