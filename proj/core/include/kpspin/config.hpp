#pragma once

#include <kpspin/floquet.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kpspin {

enum class InitialKind { coherent, dicke, random };
enum class Diagnostic { rtilde, otoc, gmeasure };

[[nodiscard]] std::string_view to_string(InitialKind k) noexcept;
[[nodiscard]] std::string_view to_string(Diagnostic d) noexcept;
[[nodiscard]] std::string_view to_string(DriveMode m) noexcept;

struct SweepRange {
	double min = 0.0;
	double max = 0.0;
	int count = 1;

	// Inclusive linear spacing; count == 1 yields min.
	[[nodiscard]] double at(int i) const noexcept;
	bool operator==(const SweepRange&) const = default;
};

struct SwitchSegment {
	double alpha_base = 0.0; // alpha(h) = alpha_base + model.h
	long duration = 1;
	bool operator==(const SwitchSegment&) const = default;
};

struct RunConfig {
	struct Model {
		int p = 2;
		double lambda = 0.7;
		double h = 0.1;
		double alpha_base = pi;
		DriveMode drive = DriveMode::kicked;
		bool operator==(const Model&) const = default;
	} model;
	struct System {
		long n = 256;
		bool operator==(const System&) const = default;
	} system;
	struct Dynamics {
		long t_max = 4096;
		InitialKind initial = InitialKind::coherent;
		double theta = pi / 5.0;
		double phi = 0.0;
		double dicke_m = 0.0;
		bool operator==(const Dynamics&) const = default;
	} dynamics;
	struct Analysis {
		std::vector<int> q{2};
		double otoc_threshold = 0.01;
		long burn_in = 0;
		long drop_transient = 0;
		bool normalize = false;
		int dos_bins = 64;
		double cluster_tol = 1e-3;
		long sphere_points = 14000;
		bool operator==(const Analysis&) const = default;
	} analysis;
	struct Sweep {
		bool enabled = false;
		Diagnostic diagnostic = Diagnostic::rtilde;
		SweepRange lambda{0.1, 2.0, 8};
		SweepRange alpha{pi - 0.6, pi + 0.6, 8};
		bool operator==(const Sweep&) const = default;
	} sweep;
	struct Switching {
		std::vector<SwitchSegment> schedule;
		bool operator==(const Switching&) const = default;
	} switching;
	struct Output {
		std::string dir = ".";
		bool operator==(const Output&) const = default;
	} output;
	std::uint64_t seed = 0;

	bool operator==(const RunConfig&) const = default;

	[[nodiscard]] ModelParams model_params() const noexcept;
	void validate() const;
};

// Sections of `key = value` lines; '#' starts a comment. Errors carry line numbers.
[[nodiscard]] RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);
[[nodiscard]] std::string format_config(const RunConfig& config);

// Applies one `section.key=value` assignment.
void apply_override(RunConfig& config, std::string_view assignment);

// Accepts plain numbers and multiples of pi such as "pi", "-pi/2", "2pi/3", "0.25*pi", "pi-0.6", "2pi/3+0.05".
[[nodiscard]] double parse_angle(std::string_view text);

// Shortest round-trip representation.
[[nodiscard]] std::string format_double(double x);

struct SizeCaps {
	long max_dynamics_n = 1024;
	long max_otoc_sweep_n = 512;
	int max_grid_side = 64;
};

enum class Workload { dynamics, sweep };

// Throws ConfigError when a desk-scale cap is exceeded without the big-run acknowledgment.
void check_caps(const RunConfig& config, Workload workload, bool big, const SizeCaps& caps = {});

} // namespace kpspin
