#pragma once

#include <kpspin/classical.hpp>
#include <kpspin/config.hpp>
#include <kpspin/output.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kpspin {

struct SweepRecord {
	std::size_t cell = 0;       // lambda index * alpha_count + alpha index
	std::vector<double> values; // one per column, error column excluded
	std::string error;
};

[[nodiscard]] std::vector<std::string> sweep_columns(Diagnostic d);

// Evaluates single cells; owns the shared read-only inputs (algebra, sphere grid).
class SweepEvaluator {
public:
	explicit SweepEvaluator(const RunConfig& config);

	// Records for one (Lambda, alpha) cell; G weights are unnormalized. Exceptions propagate.
	[[nodiscard]] std::vector<SweepRecord> cell(double lambda, double alpha) const;

	[[nodiscard]] const RunConfig& config() const noexcept { return config_; }

private:
	RunConfig config_;
	std::optional<SpinAlgebra> algebra_;
	std::optional<SphereGrid> grid_;
};

struct SweepResult {
	Diagnostic diagnostic = Diagnostic::rtilde;
	std::vector<std::string> columns;
	std::vector<SweepRecord> records; // lambda outer, alpha inner, q innermost
	int lambda_count = 0;
	int alpha_count = 0;
	nlohmann::json metadata;

	[[nodiscard]] CsvTable table() const;
};

// Cells run on `threads` workers; the merge order is fixed.
[[nodiscard]] SweepResult run_sweep(const RunConfig& config, unsigned threads = 1);

} // namespace kpspin
