#pragma once

#include <kpspin/floquet.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

namespace kpspin {

// Poisson reference for the mean adjacent spacing ratio: 2 ln 2 - 1.
inline const double poisson_spacing_ratio = 2.0 * std::numbers::ln2 - 1.0;

// Maps x to (-pi, pi].
[[nodiscard]] double wrap_phase(double x) noexcept;

struct EigenphaseSpectrum {
	std::vector<double> phases; // sorted, in (-pi, pi]
	int power = 1;
};

// Wraps to (-pi, pi] and sorts.
[[nodiscard]] EigenphaseSpectrum make_spectrum(std::vector<double> phases, int power = 1);

// Phases of U^q as q * mu wrapped; U is diagonalized once.
[[nodiscard]] EigenphaseSpectrum eigenphases(const FloquetOperator& u, int q = 1);

struct SpacingRatioStats {
	double mean_ratio = 0.0;
	double normalized = 0.0;
	double poisson_reference = poisson_spacing_ratio;
	std::size_t clamped = 0; // spacings raised to the 1e-12 floor
};

// Circular convention: N+1 gaps including the wrap gap, N+1 cyclic ratios.
[[nodiscard]] SpacingRatioStats spacing_ratio(const EigenphaseSpectrum& spec);

struct PhaseHistogram {
	double lower = -pi;
	double upper = pi;
	std::vector<std::size_t> counts;
	std::vector<double> density; // integrates to 1

	[[nodiscard]] double bin_width() const noexcept { return (upper - lower) / static_cast<double>(counts.size()); }
	[[nodiscard]] double max_density() const;
	[[nodiscard]] std::size_t max_count() const;
};

[[nodiscard]] PhaseHistogram dos_histogram(const EigenphaseSpectrum& spec, int bins);

// Fraction of phases grouped into q-tuples spaced by 2 pi / q within tol (greedy, ascending order).
[[nodiscard]] double clustering_degeneracy(const EigenphaseSpectrum& spec, int q, double tol);

struct ParitySpectra {
	EigenphaseSpectrum even;
	EigenphaseSpectrum odd;
};

// Block-resolved phases in the eigenbasis of exp(i pi Sx); requires even p.
[[nodiscard]] ParitySpectra parity_resolved_eigenphases(const FloquetOperator& u, const SpinAlgebra& algebra, int q = 1);

} // namespace kpspin
