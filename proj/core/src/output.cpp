#include <kpspin/output.hpp>
#include <kpspin/otoc.hpp>
#include <kpspin/spectral.hpp>
#include <kpspin/version.hpp>

#include <fstream>

namespace kpspin {

std::string CsvTable::str() const
{
	std::string out;
	auto line = [&out](const std::vector<std::string>& cells) {
		for (std::size_t i = 0; i < cells.size(); ++i) {
			if (i)
				out += ',';
			out += cells[i];
		}
		out += '\n';
	};
	line(header);
	for (const auto& r : rows)
		line(r);
	return out;
}

CsvTable series_table(const TimeSeries& series)
{
	CsvTable t{{"step", "value"}, {}};
	t.rows.reserve(series.values.size());
	for (std::size_t l = 0; l < series.values.size(); ++l)
		t.rows.push_back({std::to_string(l), format_double(series.values[l])});
	return t;
}

CsvTable spectrum_table(const PowerSpectrum& spec)
{
	CsvTable t{{"omega", "power"}, {}};
	t.rows.reserve(spec.power.size());
	for (std::size_t k = 0; k < spec.power.size(); ++k)
		t.rows.push_back({format_double(spec.omega[k]), format_double(spec.power[k])});
	return t;
}

nlohmann::json base_metadata(const RunConfig& config, std::string_view command)
{
	nlohmann::json m;
	m["command"] = command;
	m["version"] = version;
	m["seed"] = config.seed;
	m["model"] = {{"p", config.model.p},
	              {"lambda", config.model.lambda},
	              {"h", config.model.h},
	              {"alpha_base", config.model.alpha_base},
	              {"alpha", config.model.alpha_base + config.model.h},
	              {"drive", to_string(config.model.drive)},
	              {"period", 1}};
	m["system"] = {{"N", config.system.n}, {"S", 0.5 * static_cast<double>(config.system.n)}, {"basis", "M = S..-S"}};
	m["conventions"] = {
	    {"spacing_ratio", "circular (wrap-around gap included, N+1 ratios)"},
	    {"r_pos", poisson_spacing_ratio},
	    {"spacing_floor", 1e-12},
	    {"dft", "rectangular window, omega_k = 2 pi k / T_len, folded to omega/2pi in [0, 1/2]"},
	    {"drop_transient", config.analysis.drop_transient},
	    {"spectrum_normalized", config.analysis.normalize},
	    {"argmax_tie_break", "smaller omega"},
	    {"peak_tolerance_bins", 1},
	    {"otoc_threshold", config.analysis.otoc_threshold},
	    {"otoc_burn_in", config.analysis.burn_in},
	    {"otoc_average_window", "l in (burn_in, T_max]"},
	    {"otoc_stderr", "batch means over " + std::to_string(otoc_error_blocks) + " blocks"},
	    {"g_normalization", "per-sweep maximum for each q"},
	    {"sphere_grid", "Fibonacci lattice"},
	    {"sphere_points", config.analysis.sphere_points},
	    {"cluster_tolerance", config.analysis.cluster_tol},
	    {"effective_propagator", "U_F^q compared with (-1)^N exp(-i q H_eff)"}};
	m["config"] = format_config(config);
	return m;
}

namespace {

std::filesystem::path table_path(const std::filesystem::path& dir, std::string_view stem, const std::string& suffix)
{
	std::string name(stem);
	if (!suffix.empty())
		name += "_" + suffix;
	return dir / (name + ".csv");
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out)
		throw IoError("cannot open '" + path.string() + "' for writing");
	out << content;
	out.flush();
	if (!out)
		throw IoError("failed writing '" + path.string() + "'");
}

} // namespace

void write_results(const std::filesystem::path& dir, std::string_view stem, const std::vector<NamedTable>& tables,
                   const nlohmann::json& metadata, bool force)
{
	std::error_code ec;
	std::filesystem::create_directories(dir, ec);
	if (ec)
		throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

	std::vector<std::filesystem::path> targets;
	for (const auto& t : tables)
		targets.push_back(table_path(dir, stem, t.suffix));
	const auto meta_path = dir / (std::string(stem) + ".meta.json");
	targets.push_back(meta_path);
	if (!force)
		for (const auto& p : targets)
			if (std::filesystem::exists(p))
				throw IoError("'" + p.string() + "' exists; pass --force to overwrite");

	for (std::size_t i = 0; i < tables.size(); ++i)
		write_file(targets[i], tables[i].table.str());
	write_file(meta_path, metadata.dump(2) + "\n");
}

} // namespace kpspin
