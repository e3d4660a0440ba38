#pragma once

// File formats.
//
//   potential table  {"n": int, "entries": [{"sigma": mask, "tau": mask, "value": float}]}
//   coin system      {"n": int, "d": int, "ops": [[[re, im], ...] row-major, one per C_j]}
//   spectrum         {"source": str, "nu": [float] | null, "tolerance": float,
//                     "eigenvalues": [{"re", "im", "arg", "mult"}]}   sorted by arg
//   state            [[re, im], ...]
//   distribution     CSV "sigma_bitmask,probability"
//
// Loaded tables and coin systems are validated on the way in.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mqw/coin.hpp"
#include "mqw/magnetic.hpp"
#include "mqw/spectra.hpp"

namespace mqw::io {

using Json = nlohmann::json;

FullPotentialTable potential_table_from_json(const Json& doc);
Json to_json(const FullPotentialTable& table);

CoinSystem coin_system_from_json(const Json& doc);
Json to_json(const CoinSystem& cs);

Json to_json(const SpectrumReport& report);
Json state_to_json(const Vector& state);
Vector state_from_json(const Json& doc);

std::string distribution_csv(const std::vector<double>& p);

Json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place, so readers
/// never see a partially written report.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace mqw::io
