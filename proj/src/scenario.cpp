#include "ofdmjam/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ofdmjam/errors.hpp"

namespace ofdmjam {

using nlohmann::json;

std::string_view to_string(SubspaceMode mode) {
  return mode == SubspaceMode::genie ? "genie" : "estimated";
}

SubspaceMode parse_subspace_mode(std::string_view text) {
  if (text == "genie") return SubspaceMode::genie;
  if (text == "estimated") return SubspaceMode::estimated;
  throw ConfigError("unknown subspace mode '" + std::string(text) + "' (expected genie|estimated)");
}

std::vector<double> Scenario::snr_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("SNR step must be positive");
  if (stop < start) throw ConfigError("SNR range end lies below its start");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

void Scenario::validate() const {
  ofdm.validate();
  if (rx_antennas < 1) throw ConfigError("rx_antennas must be positive");
  if (streams < 1) throw ConfigError("streams must be positive");
  if (legit_taps < 1) throw ConfigError("legit_taps must be positive");
  if (legit_taps - 1 > ofdm.cp_len) {
    throw ConfigError("legitimate channel with " + std::to_string(legit_taps) + " taps exceeds cyclic prefix " +
                      std::to_string(ofdm.cp_len));
  }
  jammer.validate(ofdm);
  if (null_dims < 0 || null_dims >= rx_antennas) {
    throw ConfigError("null_dims must lie in [0, " + std::to_string(rx_antennas - 1) + "]");
  }
  if (streams > rx_antennas - null_dims) {
    throw ConfigError("zero-forcing " + std::to_string(streams) + " streams needs at least as many dimensions left " +
                      "after nulling, have " + std::to_string(rx_antennas - null_dims));
  }
  if (subspace == SubspaceMode::estimated && ofdm.symbols_per_block < null_dims) {
    throw IllPosedError("estimated subspace needs at least null_dims training symbols");
  }
  if (snr_db.empty()) throw ConfigError("SNR grid is empty");
  for (double s : snr_db) {
    if (std::isnan(s)) throw ConfigError("SNR grid contains NaN");
  }
  if (blocks < 1) throw ConfigError("blocks must be at least 1");
}

std::vector<double> parse_snr_spec(std::string_view text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    const std::string_view token = text.substr(pos, colon == std::string_view::npos ? text.npos : colon - pos);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw ConfigError("malformed SNR specification '" + std::string(text) + "' (expected A:B:STEP)");
    }
    parts.push_back(value);
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw ConfigError("malformed SNR specification '" + std::string(text) + "' (expected A:B:STEP)");
  return Scenario::snr_range(parts[0], parts[1], parts[2]);
}

namespace {

template <typename T>
void read_field(const json& doc, const char* key, T& out) {
  if (auto it = doc.find(key); it != doc.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("scenario field '") + key + "': " + e.what());
    }
  }
}

void reject_unknown(const json& doc, std::initializer_list<std::string_view> known, const char* where) {
  for (const auto& [key, _] : doc.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

}  // namespace

Scenario scenario_from_json(std::string_view json_text, const Scenario& base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario JSON must be an object");
  reject_unknown(doc,
                 {"id", "n_subcarriers", "cp_len", "data_subcarriers", "symbols_per_block", "rx_antennas", "streams",
                  "legit_taps", "jammer", "null_dims", "snr_db", "blocks", "seed", "subspace_mode"},
                 "scenario");
  Scenario sc = base;
  read_field(doc, "id", sc.id);
  const int old_n = sc.ofdm.n_subcarriers;
  read_field(doc, "n_subcarriers", sc.ofdm.n_subcarriers);
  if (sc.ofdm.n_subcarriers != old_n && !doc.contains("data_subcarriers")) {
    sc.ofdm.data_subcarriers = OfdmConfig::default_data_subcarriers(sc.ofdm.n_subcarriers);
  }
  read_field(doc, "cp_len", sc.ofdm.cp_len);
  read_field(doc, "data_subcarriers", sc.ofdm.data_subcarriers);
  read_field(doc, "symbols_per_block", sc.ofdm.symbols_per_block);
  read_field(doc, "rx_antennas", sc.rx_antennas);
  read_field(doc, "streams", sc.streams);
  read_field(doc, "legit_taps", sc.legit_taps);
  read_field(doc, "null_dims", sc.null_dims);
  read_field(doc, "snr_db", sc.snr_db);
  read_field(doc, "blocks", sc.blocks);
  read_field(doc, "seed", sc.seed);
  if (auto it = doc.find("subspace_mode"); it != doc.end()) {
    sc.subspace = parse_subspace_mode(it->get<std::string>());
  }
  if (auto it = doc.find("jammer"); it != doc.end()) {
    const json& j = *it;
    if (!j.is_object()) throw ConfigError("scenario field 'jammer' must be an object");
    reject_unknown(j, {"mode", "antennas", "rel_energy_db", "taps_per_antenna"}, "jammer");
    if (auto m = j.find("mode"); m != j.end()) sc.jammer.mode = parse_jammer_mode(m->get<std::string>());
    read_field(j, "antennas", sc.jammer.antennas);
    read_field(j, "rel_energy_db", sc.jammer.rel_energy_db);
    read_field(j, "taps_per_antenna", sc.jammer.taps_per_antenna);
    if (sc.jammer.mode == JammerMode::none) {
      sc.jammer.antennas = 0;
      sc.jammer.taps_per_antenna.clear();
    } else if (!j.contains("taps_per_antenna")) {
      const int taps = sc.jammer.taps_per_antenna.empty() ? sc.legit_taps : sc.jammer.taps_per_antenna.front();
      if (!j.contains("antennas") && sc.jammer.antennas == 0) sc.jammer.antennas = 1;
      sc.jammer.taps_per_antenna.assign(static_cast<std::size_t>(std::max(sc.jammer.antennas, 0)), taps);
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path, const Scenario& base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return scenario_from_json(text.str(), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string scenario_to_json(const Scenario& sc) {
  json doc;
  doc["id"] = sc.id;
  doc["n_subcarriers"] = sc.ofdm.n_subcarriers;
  doc["cp_len"] = sc.ofdm.cp_len;
  doc["data_subcarriers"] = sc.ofdm.data_subcarriers;
  doc["symbols_per_block"] = sc.ofdm.symbols_per_block;
  doc["rx_antennas"] = sc.rx_antennas;
  doc["streams"] = sc.streams;
  doc["legit_taps"] = sc.legit_taps;
  doc["jammer"] = {{"mode", std::string(to_string(sc.jammer.mode))},
                   {"antennas", sc.jammer.antennas},
                   {"rel_energy_db", sc.jammer.rel_energy_db},
                   {"taps_per_antenna", sc.jammer.taps_per_antenna}};
  doc["null_dims"] = sc.null_dims;
  doc["snr_db"] = sc.snr_db;
  doc["blocks"] = sc.blocks;
  doc["seed"] = sc.seed;
  doc["subspace_mode"] = std::string(to_string(sc.subspace));
  return doc.dump(2);
}

}  // namespace ofdmjam
