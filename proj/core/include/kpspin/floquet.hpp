#pragma once

#include <kpspin/spin_algebra.hpp>

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace kpspin {

struct ModelParams {
	int p = 2;
	double lambda = 0.0;
	double h = 0.0;
	double alpha_base = 0.0;

	// alpha(h) = alpha_B + h
	[[nodiscard]] double alpha() const noexcept { return alpha_base + h; }
	void validate() const;
};

enum class DriveMode { kicked, exact_drive };

// H_p = -h Sx - (Lambda / (p S^{p-1})) Sz^p
[[nodiscard]] Matrix build_pspin_hamiltonian(const ModelParams& params, const SpinAlgebra& algebra);

// Diagonal phases (Lambda / (p S^{p-1})) M^p of the twist kick.
[[nodiscard]] RealVector kick_phases(int p, double lambda, const SpinAlgebra& algebra);

class FloquetOperator {
public:
	FloquetOperator(Matrix u, ModelParams params, DriveMode mode);

	[[nodiscard]] const Matrix& matrix() const noexcept { return u_; }
	[[nodiscard]] const ModelParams& params() const noexcept { return params_; }
	[[nodiscard]] DriveMode mode() const noexcept { return mode_; }
	[[nodiscard]] Index dim() const noexcept { return u_.rows(); }

	// Eigenphases in (-pi, pi], unsorted, in eigensolver order.
	[[nodiscard]] const RealVector& eigenphases() const;
	// Columns pair with eigenphases_with_vectors().
	[[nodiscard]] const Matrix& eigenvectors() const;
	[[nodiscard]] const RealVector& eigenphases_with_vectors() const;

private:
	struct Cache;
	Matrix u_;
	ModelParams params_;
	DriveMode mode_;
	std::shared_ptr<Cache> cache_;
};

[[nodiscard]] FloquetOperator build_floquet(const ModelParams& params, const SpinAlgebra& algebra,
                                            DriveMode mode = DriveMode::kicked);

struct TimeSeries {
	std::vector<double> values;
	std::string label;

	[[nodiscard]] long t_max() const noexcept { return static_cast<long>(values.size()) - 1; }
};

struct Evolution {
	TimeSeries series;
	StateVector final_state;
	int renormalizations = 0;
};

// Records <O> at l = 0..steps. Renormalizes whenever the norm drifts by more than 1e-8.
[[nodiscard]] Evolution evolve(const StateVector& state, const FloquetOperator& u, long steps, const Matrix& observable,
                               std::string label = "Sz/S");

struct PowerSpectrum {
	std::vector<double> omega; // 2 pi k / length, k = 0..length/2
	std::vector<double> power; // |F(omega_k)|^2
	std::size_t length = 0;    // number of samples transformed
	bool normalized = false;

	[[nodiscard]] double bin_width() const noexcept { return two_pi / static_cast<double>(length); }
	// Sum of |F_k|^2 over all length bins, reconstructed from the folded half.
	[[nodiscard]] double total_power() const;
	// Sum over folded bins k >= 1 (each bin counted once).
	[[nodiscard]] double non_dc_power() const;
	[[nodiscard]] double median_non_dc_power() const;
};

// Rectangular-window DFT of samples l >= drop_transient.
[[nodiscard]] PowerSpectrum power_spectrum(std::span<const double> values, std::size_t drop_transient = 0,
                                           bool normalize = false);
[[nodiscard]] PowerSpectrum power_spectrum(const TimeSeries& series, std::size_t drop_transient = 0,
                                           bool normalize = false);

struct Peak {
	double omega = 0.0;
	double power = 0.0;
	std::size_t bin = 0;
};

// Powers equal to 1e-12 relative are ties, resolved toward the smaller omega.
[[nodiscard]] Peak dominant_frequency(const PowerSpectrum& spec, bool exclude_dc = true);

// Largest bin within `window` bins of omega (used for peak checks).
[[nodiscard]] Peak peak_near(const PowerSpectrum& spec, double omega, std::size_t window = 1);

// F_k = sum_l f_l exp(-i 2 pi k l / n), k = 0..n/2
[[nodiscard]] std::vector<cplx> real_dft(std::span<const double> values);

} // namespace kpspin
