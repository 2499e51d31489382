#include <kpspin/switching.hpp>

#include <random>

namespace kpspin {

std::span<const double> SwitchingResult::segment_values(std::size_t i) const
{
	const auto& s = segments.at(i);
	return std::span<const double>(series.values).subspan(static_cast<std::size_t>(s.start) + 1,
	                                                       static_cast<std::size_t>(s.duration));
}

StateVector initial_state(const RunConfig& config, const SpinAlgebra& algebra)
{
	switch (config.dynamics.initial) {
	case InitialKind::coherent:
		return coherent_state(config.dynamics.theta, config.dynamics.phi, algebra);
	case InitialKind::dicke:
		return dicke_state(config.dynamics.dicke_m, algebra);
	case InitialKind::random: {
		std::mt19937_64 rng(config.seed);
		std::normal_distribution<double> g;
		Vector amp(algebra.dim());
		for (Index i = 0; i < amp.size(); ++i) {
			const double re = g(rng);
			const double im = g(rng);
			amp(i) = cplx(re, im);
		}
		return StateVector::normalized(std::move(amp));
	}
	}
	throw std::invalid_argument("unknown initial state");
}

SwitchingResult run_switching_protocol(const RunConfig& config)
{
	config.validate();
	if (config.switching.schedule.empty())
		throw ConfigError("switching schedule is empty");
	const SpinAlgebra algebra(config.system.n);
	const Matrix observable = algebra.sz() / algebra.spin();
	StateVector state = initial_state(config, algebra);

	SwitchingResult out;
	out.series.label = "Sz/S";
	long cursor = 0;
	for (const auto& seg : config.switching.schedule) {
		ModelParams params = config.model_params();
		params.alpha_base = seg.alpha_base;
		const FloquetOperator u = build_floquet(params, algebra, config.model.drive);
		const StateVector entering = state;
		SegmentRecord rec{params.alpha(), cursor, seg.duration, entering.amplitudes().norm(),
		                  std::abs(state.amplitudes().dot(entering.amplitudes()))};
		Evolution ev = evolve(entering, u, seg.duration, observable);
		const auto skip = out.series.values.empty() ? 0 : 1;
		out.series.values.insert(out.series.values.end(), ev.series.values.begin() + skip, ev.series.values.end());
		out.renormalizations += ev.renormalizations;
		state = std::move(ev.final_state);
		out.segments.push_back(rec);
		cursor += seg.duration;
	}
	out.spectrum = power_spectrum(out.series, static_cast<std::size_t>(config.analysis.drop_transient),
	                              config.analysis.normalize);
	return out;
}

} // namespace kpspin
