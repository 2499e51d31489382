#pragma once

#include <kpspin/spin_algebra.hpp>

#include <span>
#include <string_view>

namespace kpspin {

// Sign in front of the vertex sum (Lambda / (q p S^{p-1})) sum_j (e_j . (Sy, Sz))^p.
enum class InteractionSign { minus, plus };

[[nodiscard]] std::string_view to_string(InteractionSign s) noexcept;

struct ResonanceHamiltonian {
	Matrix matrix;
	int q = 1;
	int p = 2;
	double lambda = 0.0;
	InteractionSign sign = InteractionSign::minus;
};

// -/+ (Lambda / (q p S^{p-1})) sum_{j=1..q} (-sin(2 pi j/q) Sy + cos(2 pi j/q) Sz)^p
[[nodiscard]] ResonanceHamiltonian build_resonance_hamiltonian(int q, int p, double lambda, const SpinAlgebra& algebra,
                                                               InteractionSign sign = InteractionSign::minus);

// h Sx plus the signed vertex sum.
[[nodiscard]] Matrix build_effective_hamiltonian(int q, int p, double lambda, double h, const SpinAlgebra& algebra,
                                                 InteractionSign sign);

struct EffectiveSpectrumReport {
	double mismatch_minus = 0.0;
	double mismatch_plus = 0.0;
	InteractionSign best = InteractionSign::minus;
	bool tie = false;                  // both conventions agree to round-off; minus is kept
	double mismatch_half = 0.0;        // best convention at Lambda / 2
	double scaling_exponent = 0.0;     // log2(mismatch(Lambda) / mismatch(Lambda / 2))
};

// Spectra of (-1)^N exp(-i q H_eff) against U_F^q with alpha = 2 pi / q + h.
[[nodiscard]] EffectiveSpectrumReport validate_effective_spectrum(int q, int p, double lambda, double h,
                                                                  const SpinAlgebra& algebra);

struct EffectiveHamiltonian {
	Matrix matrix;
	EffectiveSpectrumReport report;
};

// Uses the convention selected by validate_effective_spectrum.
[[nodiscard]] EffectiveHamiltonian build_effective_hamiltonian(int q, int p, double lambda, double h,
                                                               const SpinAlgebra& algebra);

// Smallest over cyclic shifts of the largest circular distance between sorted phase lists.
[[nodiscard]] double circular_matching_distance(std::span<const double> a, std::span<const double> b);

} // namespace kpspin
