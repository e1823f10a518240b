#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "snntwin/errors.hpp"
#include "snntwin/rational.hpp"

namespace snntwin {

// Per-operation / per-bit energy constants for one technology scenario.
// All values in picojoules, stored exactly.
struct HardwareProfile {
  std::string name;
  Rational e_acc;  // per accumulate
  Rational e_cmp;  // per comparison
  Rational e_sub;  // per subtraction
  std::map<std::pair<int, int>, Rational> e_mac;  // (activation_bits, weight_bits) -> pJ
  std::map<int, Rational> e_weight;               // weight_bits -> pJ per access
  Rational e_move_dense;                          // pJ per bit, bulk broadcast
  Rational e_move_sparse;                         // pJ per bit, event-driven
  std::vector<std::string> notes;

  const Rational& mac_pj(int activation_bits, int weight_bits) const {
    const auto it = e_mac.find({activation_bits, weight_bits});
    if (it == e_mac.end())
      throw ConfigError("profile '" + name + "' has no e_mac entry for (activation_bits=" +
                        std::to_string(activation_bits) + ", weight_bits=" +
                        std::to_string(weight_bits) + ")");
    return it->second;
  }

  const Rational& weight_pj(int weight_bits) const {
    const auto it = e_weight.find(weight_bits);
    if (it == e_weight.end())
      throw ConfigError("profile '" + name + "' has no e_weight entry for weight_bits=" +
                        std::to_string(weight_bits));
    return it->second;
  }

  // Negative energies are rejected; a sparse per-bit cost below the dense
  // one is unusual but legal, so it only draws a warning.
  std::vector<std::string> validate() const {
    const auto require_nonneg = [this](const Rational& v, const char* field) {
      if (v < 0) throw ConfigError("profile '" + name + "': " + field + " must be >= 0");
    };
    require_nonneg(e_acc, "e_acc");
    require_nonneg(e_cmp, "e_cmp");
    require_nonneg(e_sub, "e_sub");
    require_nonneg(e_move_dense, "e_move_dense");
    require_nonneg(e_move_sparse, "e_move_sparse");
    for (const auto& [bits, pj] : e_weight) {
      if (bits < 1) throw ConfigError("profile '" + name + "': e_weight bits must be >= 1");
      require_nonneg(pj, "e_weight entry");
    }
    for (const auto& [key, pj] : e_mac) {
      if (key.first < 1 || key.second < 1)
        throw ConfigError("profile '" + name + "': e_mac bit-widths must be >= 1");
      require_nonneg(pj, "e_mac entry");
    }
    std::vector<std::string> warnings;
    if (e_move_sparse < e_move_dense)
      warnings.push_back("profile '" + name +
                         "': e_move_sparse < e_move_dense (sparse handling is usually the "
                         "more expensive path)");
    return warnings;
  }
};

namespace detail {

// Profiles carry energies as decimal strings so values survive the JSON
// round trip exactly. Bare JSON numbers are accepted via their shortest
// round-trip decimal form.
inline Rational json_to_rational(const nlohmann::json& j, const std::string& context) {
  try {
    if (j.is_string()) return parse_decimal(j.get<std::string>());
    if (j.is_number()) return parse_decimal(j.dump());
  } catch (const std::domain_error& e) {
    throw ConfigError(context + ": " + e.what());
  }
  throw ConfigError(context + ": expected a decimal string or number");
}

}  // namespace detail

inline nlohmann::json to_json(const HardwareProfile& hw) {
  nlohmann::json j;
  j["name"] = hw.name;
  j["e_acc"] = format_decimal(hw.e_acc);
  j["e_cmp"] = format_decimal(hw.e_cmp);
  j["e_sub"] = format_decimal(hw.e_sub);
  j["e_move_dense"] = format_decimal(hw.e_move_dense);
  j["e_move_sparse"] = format_decimal(hw.e_move_sparse);
  j["e_weight"] = nlohmann::json::array();
  for (const auto& [bits, pj] : hw.e_weight)
    j["e_weight"].push_back({{"weight_bits", bits}, {"pj", format_decimal(pj)}});
  j["e_mac"] = nlohmann::json::array();
  for (const auto& [key, pj] : hw.e_mac)
    j["e_mac"].push_back({{"activation_bits", key.first},
                          {"weight_bits", key.second},
                          {"pj", format_decimal(pj)}});
  if (!hw.notes.empty()) j["notes"] = hw.notes;
  return j;
}

inline HardwareProfile profile_from_json(const nlohmann::json& j) {
  HardwareProfile hw;
  if (!j.contains("name") || !j["name"].is_string())
    throw ConfigError("hardware profile: missing string field 'name'");
  hw.name = j["name"].get<std::string>();
  const auto field = [&](const char* key) {
    if (!j.contains(key))
      throw ConfigError("profile '" + hw.name + "': missing field '" + key + "'");
    return detail::json_to_rational(j[key], "profile '" + hw.name + "' field '" + key + "'");
  };
  hw.e_acc = field("e_acc");
  hw.e_cmp = field("e_cmp");
  hw.e_sub = field("e_sub");
  hw.e_move_dense = field("e_move_dense");
  hw.e_move_sparse = field("e_move_sparse");
  if (j.contains("e_weight"))
    for (const auto& entry : j["e_weight"])
      hw.e_weight[entry.at("weight_bits").get<int>()] =
          detail::json_to_rational(entry.at("pj"), "profile '" + hw.name + "' e_weight");
  if (j.contains("e_mac"))
    for (const auto& entry : j["e_mac"])
      hw.e_mac[{entry.at("activation_bits").get<int>(), entry.at("weight_bits").get<int>()}] =
          detail::json_to_rational(entry.at("pj"), "profile '" + hw.name + "' e_mac");
  if (j.contains("notes"))
    for (const auto& n : j["notes"]) hw.notes.push_back(n.get<std::string>());
  hw.validate();
  return hw;
}

inline HardwareProfile load_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("profile file '" + path.string() + "': " + e.what());
  }
  return profile_from_json(j);
}

// ---------------------------------------------------------------------------
// Built-in presets.
//
// Arithmetic and weight-access constants are 22nm figures; the MAC table is
// a placeholder (no published per-bit-width measurements exist for this
// cost set): E_MAC(a, w) = E_ACC * k_scale * a*w / 8, i.e. energy grows with
// the multiplier's bit product and k = E_MAC/E_ACC is 1 for a 1x8 multiply.
// The weight-access model is likewise an assumption: an affine curve
// anchored at 0.18 pJ for 8-bit with half the cost fixed per access,
// E_weight(b) = 0.09 + 0.01125*b.
// ---------------------------------------------------------------------------

inline std::map<std::pair<int, int>, Rational> default_mac_table(const Rational& e_acc,
                                                                 const Rational& k_scale = 1) {
  std::map<std::pair<int, int>, Rational> table;
  for (int act = 1; act <= 8; ++act)
    for (const int wb : {1, 2, 4, 8, 16, 32})
      table[{act, wb}] = e_acc * k_scale * act * wb / 8;
  return table;
}

inline std::map<int, Rational> default_weight_table() {
  std::map<int, Rational> table;
  for (const int wb : {1, 2, 4, 8, 16, 32})
    table[wb] = Rational(9, 100) + Rational(9, 800) * wb;
  return table;
}

namespace detail {
inline HardwareProfile make_preset(std::string name, Rational move_dense, Rational move_sparse,
                                   std::vector<std::string> notes) {
  HardwareProfile hw;
  hw.name = std::move(name);
  hw.e_acc = hw.e_cmp = hw.e_sub = parse_decimal("0.05448");
  hw.e_move_dense = std::move(move_dense);
  hw.e_move_sparse = std::move(move_sparse);
  hw.e_mac = default_mac_table(hw.e_acc);
  hw.e_weight = default_weight_table();
  hw.notes = std::move(notes);
  return hw;
}
}  // namespace detail

inline std::vector<HardwareProfile> builtin_profiles() {
  static const std::vector<std::string> shared_notes = {
      "e_mac is a placeholder model (E_ACC * a*w/8), not a measurement",
      "e_weight is an affine fit anchored at 0.18 pJ for 8-bit accesses"};
  std::vector<HardwareProfile> profiles;
  // zero data movement: isolates arithmetic plus weight access
  profiles.push_back(detail::make_preset("theoretical-min", Rational(0), Rational(0),
                                         shared_notes));
  // event-driven mesh with an on-chip bus for dense broadcasts
  profiles.push_back(detail::make_preset("typical-neuromorphic", parse_decimal("0.25"),
                                         parse_decimal("3.0"), shared_notes));
  // every sparse event pays a full 64-bit off-chip word read (1300 pJ);
  // dense transfers amortize it to 1300/64 = 20.3125 pJ per bit
  profiles.push_back(detail::make_preset("worst-sparse", parse_decimal("20.3125"),
                                         parse_decimal("1300"), shared_notes));
  return profiles;
}

// Resolution order: explicit file path, then $SNN_TWIN_PROFILE_DIR/<name>.json
// (user overrides win over built-ins of the same name), then built-ins.
inline HardwareProfile resolve_profile(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(fs::path(name_or_path)) && fs::is_regular_file(fs::path(name_or_path)))
    return load_profile_file(name_or_path);
  if (const char* dir = std::getenv("SNN_TWIN_PROFILE_DIR")) {
    const fs::path candidate = fs::path(dir) / (name_or_path + ".json");
    if (fs::exists(candidate)) return load_profile_file(candidate);
  }
  for (auto& hw : builtin_profiles())
    if (hw.name == name_or_path) return hw;
  throw ConfigError("unknown hardware profile '" + name_or_path +
                    "' (not a file, not in SNN_TWIN_PROFILE_DIR, not a built-in)");
}

}  // namespace snntwin
