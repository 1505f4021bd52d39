#pragma once

#include <filesystem>
#include <json.hpp>

#include "eyield/bath.hpp"
#include "eyield/network.hpp"
#include "eyield/partition.hpp"

namespace eyield {

// File loaders. Keys carry their unit as a suffix (energy_cm1, gamma_per_ps,
// ...); a recognised quantity with any other suffix is rejected as a unit tag
// mismatch. All loaders return validated instances.

SiteNetwork network_from_json(const nlohmann::json& doc);
BathSpec bath_from_json(const nlohmann::json& doc);
PairPartition partition_from_json(const nlohmann::json& doc);

nlohmann::json network_to_json(const SiteNetwork& net);
nlohmann::json bath_to_json(const BathSpec& bath);
nlohmann::json partition_to_json(const PairPartition& partition);

SiteNetwork load_network(const std::filesystem::path& path);
BathSpec load_bath(const std::filesystem::path& path);
PairPartition load_partition(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace eyield
