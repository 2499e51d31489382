#pragma once

#include <kpspin/config.hpp>

#include <span>
#include <vector>

namespace kpspin {

struct SegmentRecord {
	double alpha = 0.0;         // alpha(h) used in this segment
	long start = 0;             // index in the series of the segment's initial state
	long duration = 0;
	double entry_norm = 0.0;    // norm of the carried state at the boundary
	double entry_overlap = 0.0; // |<carried|entering>|, 1 when nothing is re-prepared
};

struct SwitchingResult {
	TimeSeries series; // length 1 + sum of durations
	PowerSpectrum spectrum;
	std::vector<SegmentRecord> segments;
	int renormalizations = 0;

	// Values at steps (start, start + duration] of segment i.
	[[nodiscard]] std::span<const double> segment_values(std::size_t i) const;
};

[[nodiscard]] StateVector initial_state(const RunConfig& config, const SpinAlgebra& algebra);

// Evolves one state through the schedule; each angle gets model.h added.
[[nodiscard]] SwitchingResult run_switching_protocol(const RunConfig& config);

} // namespace kpspin
