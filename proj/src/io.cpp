#include "eyield/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eyield/error.hpp"

namespace eyield {

using nlohmann::json;

namespace {

struct UnitTag {
  std::string_view quantity;  // key prefix, including the trailing '_'
  std::string_view expected;  // full expected key
};

// A key that starts with a known quantity prefix but is not the expected
// spelling carries the wrong unit.
void check_unit_tags(const json& obj, std::initializer_list<UnitTag> tags, const std::string& where,
                     std::vector<std::string>& bad) {
  for (const auto& [key, value] : obj.items()) {
    for (const auto& tag : tags) {
      if (key.rfind(tag.quantity, 0) == 0 && key != tag.expected) {
        bad.push_back(where + ": unit tag mismatch for key '" + key + "' (expected '" +
                      std::string(tag.expected) + "')");
      }
    }
  }
}

double number_at(const json& obj, const char* key, const std::string& where,
                 std::vector<std::string>& bad, std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    bad.push_back(where + ": missing '" + key + "'");
    return 0.0;
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    bad.push_back(where + ": '" + key + "' must be a number");
    return 0.0;
  }
  return v.get<double>();
}

std::optional<Eigen::MatrixXd> square_matrix(const json& v, std::size_t n, const char* key,
                                             std::vector<std::string>& bad) {
  if (!v.is_array() || v.size() != n) {
    bad.push_back(std::string(key) + ": expected an array of " + std::to_string(n) + " rows");
    return std::nullopt;
  }
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(ni, ni);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = v[r];
    if (!row.is_array() || row.size() != n) {
      bad.push_back(std::string(key) + ": row " + std::to_string(r + 1) + " must have " +
                    std::to_string(n) + " numbers");
      return std::nullopt;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!row[c].is_number()) {
        bad.push_back(std::string(key) + ": entry (" + std::to_string(r + 1) + "," +
                      std::to_string(c + 1) + ") is not a number");
        return std::nullopt;
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

SiteNetwork network_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("network: top level must be an object");
  std::vector<std::string> bad;
  check_unit_tags(doc, {{"couplings_", "couplings_cm1"}, {"distances_", "distances_angstrom"}},
                  "network", bad);
  if (!doc.contains("sites") || !doc.at("sites").is_array() || doc.at("sites").empty())
    throw ParseError("network: 'sites' must be a non-empty array");

  SiteNetwork net;
  const auto& sites = doc.at("sites");
  const std::size_t n = sites.size();
  std::size_t with_position = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const auto& s = sites[m];
    const std::string where = "site " + std::to_string(m + 1);
    if (!s.is_object()) {
      bad.push_back(where + ": must be an object");
      continue;
    }
    check_unit_tags(s,
                    {{"energy_", "energy_cm1"},
                     {"position_", "position_angstrom"},
                     {"gamma_", "gamma_per_ps"},
                     {"kappa_", "kappa_per_ps"}},
                    where, bad);
    net.labels.push_back(s.contains("label") && s.at("label").is_string()
                             ? s.at("label").get<std::string>()
                             : std::to_string(m + 1));
    net.energies.push_back(number_at(s, "energy_cm1", where, bad));
    net.dissipation_rates.push_back(number_at(s, "gamma_per_ps", where, bad, 0.0));
    net.trap_rates.push_back(number_at(s, "kappa_per_ps", where, bad, 0.0));
    if (s.contains("position_angstrom")) {
      const auto& p = s.at("position_angstrom");
      if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
          !p[2].is_number()) {
        bad.push_back(where + ": 'position_angstrom' must be [x, y, z]");
      } else {
        net.positions.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
        ++with_position;
      }
    }
  }
  if (with_position != 0 && with_position != n) {
    bad.push_back("positions given for " + std::to_string(with_position) + " of " +
                  std::to_string(n) + " sites; give all or none");
    net.positions.clear();
  }

  if (!doc.contains("couplings_cm1")) {
    bad.push_back("network: missing 'couplings_cm1'");
  } else if (auto v = square_matrix(doc.at("couplings_cm1"), n, "couplings_cm1", bad)) {
    net.couplings = *v;
  }
  if (doc.contains("distances_angstrom")) {
    if (auto d = square_matrix(doc.at("distances_angstrom"), n, "distances_angstrom", bad))
      net.distances = *d;
  }

  if (!bad.empty()) throw ValidationError(std::move(bad));
  validate(net);
  return net;
}

BathSpec bath_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("bath: top level must be an object");
  std::vector<std::string> bad;
  check_unit_tags(doc,
                  {{"reorg_energy_", "reorg_energy_cm1"},
                   {"cutoff_", "cutoff_cm1"},
                   {"temperature_", "temperature_K"},
                   {"correlation_length_", "correlation_length_angstrom"},
                   {"dephasing_rate_", "dephasing_rate_per_ps"}},
                  "bath", bad);
  BathSpec bath;
  if (!doc.contains("model") || !doc.at("model").is_string()) {
    bad.push_back("bath: missing string 'model'");
  } else {
    try {
      bath.model = bath_model_from_string(doc.at("model").get<std::string>());
    } catch (const ParseError& e) {
      bad.push_back(std::string("bath: ") + e.what());
    }
  }
  bath.reorg_energy = number_at(doc, "reorg_energy_cm1", "bath", bad, 0.0);
  bath.cutoff_freq = number_at(doc, "cutoff_cm1", "bath", bad, 150.0);
  bath.temperature = number_at(doc, "temperature_K", "bath", bad);
  bath.correlation_length = number_at(doc, "correlation_length_angstrom", "bath", bad, 0.0);
  bath.dephasing_rate = number_at(doc, "dephasing_rate_per_ps", "bath", bad, 0.0);
  if (!bad.empty()) throw ValidationError(std::move(bad));
  validate(bath);
  return bath;
}

PairPartition partition_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("groups") || !doc.at("groups").is_array())
    throw ParseError("partition: expected an object with a 'groups' array");
  std::vector<std::string> bad;
  std::vector<PairGroup> groups;
  for (const auto& g : doc.at("groups")) {
    if (!g.is_object() || !g.contains("label") || !g.at("label").is_string() ||
        !g.contains("pairs") || !g.at("pairs").is_array()) {
      bad.push_back("partition: each group needs a string 'label' and a 'pairs' array");
      continue;
    }
    PairGroup group{g.at("label").get<std::string>(), {}};
    for (const auto& p : g.at("pairs")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
        bad.push_back("partition group '" + group.label + "': pairs must be [m, n] site numbers");
        continue;
      }
      group.pairs.push_back(SitePair{p[0].get<int>(), p[1].get<int>()});
    }
    groups.push_back(std::move(group));
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return PairPartition(std::move(groups));
}

json network_to_json(const SiteNetwork& net) {
  json sites = json::array();
  for (std::size_t m = 0; m < net.n_sites(); ++m) {
    json s;
    s["label"] = m < net.labels.size() ? net.labels[m] : std::to_string(m + 1);
    s["energy_cm1"] = net.energies[m];
    if (m < net.positions.size()) {
      const auto& p = net.positions[m];
      s["position_angstrom"] = {p.x(), p.y(), p.z()};
    }
    s["gamma_per_ps"] = net.dissipation_rates[m];
    s["kappa_per_ps"] = net.trap_rates[m];
    sites.push_back(std::move(s));
  }
  json doc;
  doc["sites"] = std::move(sites);
  doc["couplings_cm1"] = matrix_to_json(net.couplings);
  if (net.distances) doc["distances_angstrom"] = matrix_to_json(*net.distances);
  return doc;
}

json bath_to_json(const BathSpec& bath) {
  return json{{"model", std::string(to_string(bath.model))},
              {"reorg_energy_cm1", bath.reorg_energy},
              {"cutoff_cm1", bath.cutoff_freq},
              {"temperature_K", bath.temperature},
              {"correlation_length_angstrom", bath.correlation_length},
              {"dephasing_rate_per_ps", bath.dephasing_rate}};
}

json partition_to_json(const PairPartition& partition) {
  json groups = json::array();
  for (const auto& g : partition.groups()) {
    json pairs = json::array();
    for (const auto& p : g.pairs) pairs.push_back({p.first, p.second});
    groups.push_back({{"label", g.label}, {"pairs", std::move(pairs)}});
  }
  return json{{"groups", std::move(groups)}};
}

SiteNetwork load_network(const std::filesystem::path& path) {
  return network_from_json(read_json_file(path));
}

BathSpec load_bath(const std::filesystem::path& path) { return bath_from_json(read_json_file(path)); }

PairPartition load_partition(const std::filesystem::path& path) {
  return partition_from_json(read_json_file(path));
}

}  // namespace eyield
