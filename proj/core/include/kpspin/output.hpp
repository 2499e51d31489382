#pragma once

#include <kpspin/config.hpp>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace kpspin {

struct CsvTable {
	std::vector<std::string> header;
	std::vector<std::vector<std::string>> rows;

	[[nodiscard]] std::string str() const;
};

[[nodiscard]] CsvTable series_table(const TimeSeries& series);    // step,value
[[nodiscard]] CsvTable spectrum_table(const PowerSpectrum& spec); // omega,power

// Conventions shared by every result sidecar.
[[nodiscard]] nlohmann::json base_metadata(const RunConfig& config, std::string_view command);

struct NamedTable {
	std::string suffix; // empty for the primary table
	CsvTable table;
};

// Writes <stem>[_suffix].csv files and <stem>.meta.json; refuses to overwrite unless force.
void write_results(const std::filesystem::path& dir, std::string_view stem, const std::vector<NamedTable>& tables,
                   const nlohmann::json& metadata, bool force);

} // namespace kpspin
