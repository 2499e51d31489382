#include <kpspin/classical.hpp>
#include <kpspin/criticality.hpp>
#include <kpspin/otoc.hpp>
#include <kpspin/resonance.hpp>
#include <kpspin/spectral.hpp>
#include <kpspin/sweep.hpp>
#include <kpspin/switching.hpp>

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

namespace {

using namespace kpspin;

struct Options {
	std::string config;
	std::string out;
	unsigned threads = std::max(1u, std::thread::hardware_concurrency());
	std::optional<std::uint64_t> seed;
	bool force = false;
	bool big = false;
	std::vector<std::string> overrides;
	int p = 0;
};

enum Exit { ok = 0, config_error = 1, numerical_error = 2, io_error = 3 };

RunConfig resolve_config(const Options& o)
{
	RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
	for (const auto& s : o.overrides)
		apply_override(c, s);
	if (o.seed)
		c.seed = *o.seed;
	c.validate();
	return c;
}

std::filesystem::path out_dir(const Options& o, const RunConfig& c)
{
	return o.out.empty() ? std::filesystem::path(c.output.dir) : std::filesystem::path(o.out);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Trajectory {
	SpinAlgebra algebra;
	Evolution evolution;
};

Trajectory run_dynamics(const RunConfig& c)
{
	SpinAlgebra algebra(c.system.n);
	const FloquetOperator u = build_floquet(c.model_params(), algebra, c.model.drive);
	const Matrix obs = algebra.sz() / algebra.spin();
	Evolution ev = evolve(initial_state(c, algebra), u, c.dynamics.t_max, obs);
	return {std::move(algebra), std::move(ev)};
}

int cmd_evolve(const Options& o)
{
	const auto t0 = std::chrono::steady_clock::now();
	const RunConfig c = resolve_config(o);
	check_caps(c, Workload::dynamics, o.big);
	const auto run = run_dynamics(c);
	auto meta = base_metadata(c, "evolve");
	meta["initial_state"] = {{"kind", to_string(c.dynamics.initial)}, {"theta", c.dynamics.theta},
	                         {"phi", c.dynamics.phi}, {"dicke_m", c.dynamics.dicke_m}};
	meta["renormalizations"] = run.evolution.renormalizations;
	meta["timing"] = {{"seconds", seconds_since(t0)}};
	write_results(out_dir(o, c), "evolve", {{"", series_table(run.evolution.series)}}, meta, o.force);
	return ok;
}

int cmd_spectrum(const Options& o)
{
	const auto t0 = std::chrono::steady_clock::now();
	const RunConfig c = resolve_config(o);
	check_caps(c, Workload::dynamics, o.big);
	const auto run = run_dynamics(c);
	const PowerSpectrum spec =
	    power_spectrum(run.evolution.series, static_cast<std::size_t>(c.analysis.drop_transient), c.analysis.normalize);
	const Peak peak = dominant_frequency(spec, true);
	auto meta = base_metadata(c, "spectrum");
	meta["dominant"] = {{"omega", peak.omega}, {"omega_over_2pi", peak.omega / two_pi}, {"power", peak.power}};
	meta["renormalizations"] = run.evolution.renormalizations;
	meta["timing"] = {{"seconds", seconds_since(t0)}};
	write_results(out_dir(o, c), "spectrum",
	              {{"", spectrum_table(spec)}, {"series", series_table(run.evolution.series)}}, meta, o.force);
	std::cout << "dominant omega/2pi = " << format_double(peak.omega / two_pi) << "\n";
	return ok;
}

int write_sweep(const Options& o, RunConfig c, Diagnostic d, const char* stem)
{
	c.sweep.diagnostic = d;
	check_caps(c, Workload::sweep, o.big);
	const SweepResult r = run_sweep(c, o.threads);
	write_results(out_dir(o, c), stem, {{"", r.table()}}, r.metadata, o.force);
	return ok;
}

int cmd_rtilde(const Options& o)
{
	const auto t0 = std::chrono::steady_clock::now();
	const RunConfig c = resolve_config(o);
	if (c.sweep.enabled)
		return write_sweep(o, c, Diagnostic::rtilde, "rtilde");
	check_caps(c, Workload::dynamics, o.big);
	const SpinAlgebra algebra(c.system.n);
	const FloquetOperator u = build_floquet(c.model_params(), algebra, c.model.drive);
	CsvTable t{sweep_columns(Diagnostic::rtilde), {}};
	t.header.push_back("cluster_fraction");
	auto meta = base_metadata(c, "rtilde");
	for (int q : c.analysis.q) {
		const EigenphaseSpectrum spec = eigenphases(u, q);
		const SpacingRatioStats s = spacing_ratio(spec);
		const double cluster = q >= 2 ? clustering_degeneracy(spec, q, c.analysis.cluster_tol) : 0.0;
		t.rows.push_back({std::to_string(q), format_double(c.model.lambda), format_double(c.model_params().alpha()),
		                  format_double(s.mean_ratio), format_double(s.normalized), format_double(cluster)});
		meta["clamped_spacings"][std::to_string(q)] = s.clamped;
	}
	meta["timing"] = {{"seconds", seconds_since(t0)}};
	write_results(out_dir(o, c), "rtilde", {{"", t}}, meta, o.force);
	return ok;
}

int cmd_otoc(const Options& o)
{
	const auto t0 = std::chrono::steady_clock::now();
	const RunConfig c = resolve_config(o);
	if (c.sweep.enabled)
		return write_sweep(o, c, Diagnostic::otoc, "otoc");
	check_caps(c, Workload::dynamics, o.big);
	const SpinAlgebra algebra(c.system.n);
	const FloquetOperator u = build_floquet(c.model_params(), algebra, c.model.drive);
	const OtocSeries series = otoc_series(u, algebra, c.dynamics.t_max);
	const LongTimeAverage avg = otoc_long_time_average(series.values, c.analysis.burn_in);
	CsvTable t{sweep_columns(Diagnostic::otoc), {}};
	t.rows.push_back({format_double(c.model.lambda), format_double(c.model_params().alpha()), format_double(avg.mean),
	                  format_double(avg.standard_error),
	                  std::abs(avg.mean) > c.analysis.otoc_threshold ? "1" : "0"});
	auto meta = base_metadata(c, "otoc");
	meta["operators"] = {{"W", series.w_label}, {"V", series.v_label}, {"rho", series.state_label}};
	meta["max_imag"] = series.max_imag;
	meta["timing"] = {{"seconds", seconds_since(t0)}};
	write_results(out_dir(o, c), "otoc", {{"", t}, {"series", series_table({series.values, "F"})}}, meta, o.force);
	return ok;
}

int cmd_classical_sweep(const Options& o)
{
	return write_sweep(o, resolve_config(o), Diagnostic::gmeasure, "gmeasure");
}

int cmd_phase_diagram(const Options& o)
{
	const RunConfig c = resolve_config(o);
	return write_sweep(o, c, c.sweep.diagnostic, "phase_diagram");
}

int cmd_critical_points(const Options& o)
{
	const CriticalPoints cp = critical_points(o.p);
	const double nan = std::numeric_limits<double>::quiet_NaN();
	CsvTable t{{"p", "Z_spino", "W_spino", "Z_GS", "W_GS", "Z_DQPT", "W_DQPT"}, {}};
	t.rows.push_back({std::to_string(o.p), format_double(cp.spinodal.z), format_double(cp.spinodal.w),
	                  format_double(cp.gs.z), format_double(cp.gs.w), format_double(cp.dqpt ? cp.dqpt->z : nan),
	                  format_double(cp.dqpt ? cp.dqpt->w : nan)});
	std::cout << t.str();
	if (!o.out.empty()) {
		RunConfig c;
		c.model.p = o.p;
		auto meta = base_metadata(c, "critical-points");
		if (o.p >= 3) {
			const DqptPoint d = dqpt_point(o.p);
			meta["dqpt"] = {{"closed_form", d.closed_form},
			                {"z_approx", d.z_approx},
			                {"approx_deviation", d.approx_deviation},
			                {"z_upper", d.z_upper}};
		}
		write_results(o.out, "critical_points", {{"", t}}, meta, o.force);
	}
	return ok;
}

int cmd_resonance_check(const Options& o)
{
	const auto t0 = std::chrono::steady_clock::now();
	const RunConfig c = resolve_config(o);
	check_caps(c, Workload::dynamics, o.big);
	const SpinAlgebra algebra(c.system.n);
	CsvTable t{{"q", "p", "Lambda", "h", "mismatch_minus", "mismatch_plus", "sign", "tie", "mismatch_half_lambda",
	            "scaling_exponent"},
	           {}};
	auto meta = base_metadata(c, "resonance-check");
	for (int q : c.analysis.q) {
		const EffectiveSpectrumReport r = validate_effective_spectrum(q, c.model.p, c.model.lambda, c.model.h, algebra);
		t.rows.push_back({std::to_string(q), std::to_string(c.model.p), format_double(c.model.lambda),
		                  format_double(c.model.h), format_double(r.mismatch_minus), format_double(r.mismatch_plus),
		                  std::string(to_string(r.best)), r.tie ? "1" : "0", format_double(r.mismatch_half),
		                  format_double(r.scaling_exponent)});
		meta["sign_convention"][std::to_string(q)] = {{"selected", to_string(r.best)}, {"tie", r.tie}};
	}
	meta["timing"] = {{"seconds", seconds_since(t0)}};
	write_results(out_dir(o, c), "resonance", {{"", t}}, meta, o.force);
	return ok;
}

int cmd_switch(const Options& o)
{
	const auto t0 = std::chrono::steady_clock::now();
	const RunConfig c = resolve_config(o);
	check_caps(c, Workload::dynamics, o.big);
	const SwitchingResult r = run_switching_protocol(c);
	auto meta = base_metadata(c, "switch");
	for (const auto& s : r.segments)
		meta["segments"].push_back({{"alpha", s.alpha}, {"start", s.start}, {"duration", s.duration},
		                            {"entry_norm", s.entry_norm}, {"entry_overlap", s.entry_overlap}});
	meta["renormalizations"] = r.renormalizations;
	meta["timing"] = {{"seconds", seconds_since(t0)}};
	write_results(out_dir(o, c), "switch", {{"", series_table(r.series)}, {"spectrum", spectrum_table(r.spectrum)}},
	              meta, o.force);
	return ok;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Kicked p-spin Floquet time-crystal toolkit"};
	app.require_subcommand(1);
	app.fallthrough();
	Options o;
	app.add_option("--config", o.config, "Run configuration file");
	app.add_option("--out", o.out, "Output directory (defaults to output.dir)");
	app.add_option("--threads", o.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
	app.add_option("--seed", o.seed, "Seed for randomized initial states");
	app.add_flag("--force", o.force, "Overwrite existing outputs");
	app.add_flag("--big", o.big, "Allow runs beyond the desk-scale caps");
	app.add_option("--set", o.overrides, "Override a config entry, e.g. --set model.lambda=0.5");

	int (*handler)(const Options&) = nullptr;
	auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
		auto* s = app.add_subcommand(name, help);
		s->callback([&handler, fn] { handler = fn; });
		return s;
	};
	sub("evolve", "Stroboscopic f_Z(l) time series", cmd_evolve);
	sub("spectrum", "Power spectrum of f_Z(l)", cmd_spectrum);
	sub("rtilde", "Spacing-ratio statistics of U_F^q (point or sweep)", cmd_rtilde);
	sub("otoc", "OTOC series and long-time average (point or sweep)", cmd_otoc);
	sub("classical-sweep", "Classical G(Lambda, alpha) phase diagram", cmd_classical_sweep);
	sub("phase-diagram", "Sweep with the configured diagnostic", cmd_phase_diagram);
	sub("critical-points", "Spinodal, ground-state and DQPT points", cmd_critical_points)
	    ->add_option("--p", o.p, "Interaction order")
	    ->required()
	    ->check(CLI::Range(2, 64));
	sub("resonance-check", "Effective-Hamiltonian spectral comparison", cmd_resonance_check);
	sub("switch", "Time-crystal switching protocol", cmd_switch);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? ok : config_error;
	}

	try {
		return handler(o);
	} catch (const ConfigError& e) {
		std::cerr << "config error: " << e.what() << "\n";
		return config_error;
	} catch (const std::invalid_argument& e) {
		std::cerr << "config error: " << e.what() << "\n";
		return config_error;
	} catch (const NumericalError& e) {
		std::cerr << "numerical failure: " << e.what() << "\n";
		return numerical_error;
	} catch (const IoError& e) {
		std::cerr << "I/O error: " << e.what() << "\n";
		return io_error;
	} catch (const std::filesystem::filesystem_error& e) {
		std::cerr << "I/O error: " << e.what() << "\n";
		return io_error;
	} catch (const std::exception& e) {
		std::cerr << "numerical failure: " << e.what() << "\n";
		return numerical_error;
	}
}
