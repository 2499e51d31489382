#include <kpspin/otoc.hpp>
#include <kpspin/spectral.hpp>
#include <kpspin/sweep.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace kpspin {

std::vector<std::string> sweep_columns(Diagnostic d)
{
	switch (d) {
	case Diagnostic::rtilde:
		return {"q", "Lambda", "alpha", "rbar", "rtilde"};
	case Diagnostic::otoc:
		return {"Lambda", "alpha", "F_inf", "F_inf_stderr", "threshold_flag"};
	case Diagnostic::gmeasure:
		return {"Lambda", "alpha", "q", "G", "omega_star"};
	}
	return {};
}

SweepEvaluator::SweepEvaluator(const RunConfig& config) : config_(config)
{
	config_.validate();
	if (config_.sweep.diagnostic == Diagnostic::gmeasure) {
		for (int q : config_.analysis.q)
			if (q < 2)
				throw ConfigError("G measure needs every q >= 2");
		grid_.emplace(static_cast<std::size_t>(config_.analysis.sphere_points));
	} else {
		algebra_.emplace(config_.system.n);
		(void)algebra_->sx_eigenvectors();
	}
}

std::vector<SweepRecord> SweepEvaluator::cell(double lambda, double alpha) const
{
	const auto& c = config_;
	std::vector<SweepRecord> out;
	switch (c.sweep.diagnostic) {
	case Diagnostic::rtilde: {
		const ModelParams params{c.model.p, lambda, c.model.h, alpha - c.model.h};
		const FloquetOperator u = build_floquet(params, *algebra_, c.model.drive);
		for (int q : c.analysis.q) {
			const SpacingRatioStats s = spacing_ratio(eigenphases(u, q));
			out.push_back({0, {static_cast<double>(q), lambda, alpha, s.mean_ratio, s.normalized}, {}});
		}
		break;
	}
	case Diagnostic::otoc: {
		const ModelParams params{c.model.p, lambda, c.model.h, alpha - c.model.h};
		const FloquetOperator u = build_floquet(params, *algebra_, c.model.drive);
		const OtocSeries series = otoc_series(u, *algebra_, c.dynamics.t_max);
		const LongTimeAverage avg = otoc_long_time_average(series.values, c.analysis.burn_in);
		const double flag = std::abs(avg.mean) > c.analysis.otoc_threshold ? 1.0 : 0.0;
		out.push_back({0, {lambda, alpha, avg.mean, avg.standard_error, flag}, {}});
		break;
	}
	case Diagnostic::gmeasure: {
		const TimeSeries corr = averaged_correlation(*grid_, alpha, lambda, c.model.p, c.dynamics.t_max);
		for (int q : c.analysis.q) {
			const PhaseDiagramCell g = g_measure_from_correlation(corr, alpha, lambda, q);
			out.push_back({0, {lambda, alpha, static_cast<double>(q), g.weight, g.omega_star}, {}});
		}
		break;
	}
	}
	return out;
}

CsvTable SweepResult::table() const
{
	CsvTable t;
	t.header = columns;
	t.header.push_back("error");
	t.rows.reserve(records.size());
	for (const auto& r : records) {
		std::vector<std::string> row;
		row.reserve(r.values.size() + 1);
		for (double v : r.values)
			row.push_back(format_double(v));
		std::string err = r.error;
		std::replace_if(err.begin(), err.end(), [](char ch) { return ch == ',' || ch == '\n' || ch == '"'; }, ';');
		row.push_back(std::move(err));
		t.rows.push_back(std::move(row));
	}
	return t;
}

namespace {

std::vector<SweepRecord> failed_cell(const RunConfig& c, double lambda, double alpha, const std::string& what)
{
	constexpr double nan = std::numeric_limits<double>::quiet_NaN();
	std::vector<SweepRecord> out;
	switch (c.sweep.diagnostic) {
	case Diagnostic::rtilde:
		for (int q : c.analysis.q)
			out.push_back({0, {static_cast<double>(q), lambda, alpha, nan, nan}, what});
		break;
	case Diagnostic::otoc:
		out.push_back({0, {lambda, alpha, nan, nan, nan}, what});
		break;
	case Diagnostic::gmeasure:
		for (int q : c.analysis.q)
			out.push_back({0, {lambda, alpha, static_cast<double>(q), nan, nan}, what});
		break;
	}
	return out;
}

} // namespace

SweepResult run_sweep(const RunConfig& config, unsigned threads)
{
	const auto started = std::chrono::steady_clock::now();
	const SweepEvaluator eval(config);
	const RunConfig& c = eval.config();
	const int nl = c.sweep.lambda.count;
	const int na = c.sweep.alpha.count;
	const std::size_t cells = static_cast<std::size_t>(nl) * static_cast<std::size_t>(na);

	std::vector<std::vector<SweepRecord>> slots(cells);
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i = next++; i < cells; i = next++) {
			const double lambda = c.sweep.lambda.at(static_cast<int>(i / static_cast<std::size_t>(na)));
			const double alpha = c.sweep.alpha.at(static_cast<int>(i % static_cast<std::size_t>(na)));
			try {
				slots[i] = eval.cell(lambda, alpha);
			} catch (const std::exception& e) {
				slots[i] = failed_cell(c, lambda, alpha, e.what());
			}
			for (auto& r : slots[i])
				r.cell = i;
		}
	};
	const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells)));
	{
		std::vector<std::jthread> pool;
		for (unsigned t = 1; t < n_workers; ++t)
			pool.emplace_back(worker);
		worker();
	}

	SweepResult result;
	result.diagnostic = c.sweep.diagnostic;
	result.columns = sweep_columns(c.sweep.diagnostic);
	result.lambda_count = nl;
	result.alpha_count = na;
	for (auto& s : slots)
		for (auto& r : s)
			result.records.push_back(std::move(r));

	nlohmann::json gmax = nlohmann::json::object();
	if (c.sweep.diagnostic == Diagnostic::gmeasure) {
		std::map<int, double> max_weight;
		for (const auto& r : result.records) {
			const int q = static_cast<int>(r.values[2]);
			if (std::isfinite(r.values[3]))
				max_weight[q] = std::max(max_weight[q], r.values[3]);
		}
		for (auto& r : result.records) {
			const double m = max_weight[static_cast<int>(r.values[2])];
			if (m > 0.0 && std::isfinite(r.values[3]))
				r.values[3] /= m;
		}
		for (const auto& [q, m] : max_weight)
			gmax[std::to_string(q)] = m;
	}

	const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
	result.metadata = base_metadata(c, "sweep");
	result.metadata["sweep"] = {{"diagnostic", to_string(c.sweep.diagnostic)},
	                            {"lambda", {{"min", c.sweep.lambda.min}, {"max", c.sweep.lambda.max}, {"count", nl}}},
	                            {"alpha", {{"min", c.sweep.alpha.min}, {"max", c.sweep.alpha.max}, {"count", na}}},
	                            {"alpha_axis", "alpha(h) = alpha_B + h"},
	                            {"order", "row-major: Lambda outer, alpha inner, q innermost"},
	                            {"q", c.analysis.q},
	                            {"t_max", c.dynamics.t_max}};
	if (!gmax.empty())
		result.metadata["sweep"]["g_unnormalized_max"] = gmax;
	std::size_t failures = 0;
	for (const auto& r : result.records)
		failures += r.error.empty() ? 0 : 1;
	result.metadata["sweep"]["failed_records"] = failures;
	result.metadata["timing"] = {{"seconds", seconds}, {"threads", n_workers}};
	return result;
}

} // namespace kpspin
