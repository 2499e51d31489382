#pragma once

#include <kpspin/floquet.hpp>

#include <span>
#include <string>
#include <vector>

namespace kpspin {

class DensityOperator {
public:
	// Requires unit trace and Hermiticity to 1e-12.
	explicit DensityOperator(Matrix rho);
	[[nodiscard]] static DensityOperator infinite_temperature(Index dim);

	[[nodiscard]] const Matrix& matrix() const noexcept { return rho_; }
	[[nodiscard]] Index dim() const noexcept { return rho_.rows(); }
	[[nodiscard]] bool maximally_mixed() const noexcept { return mixed_; }

private:
	Matrix rho_;
	bool mixed_ = false;
};

inline constexpr double default_otoc_threshold = 0.01;
inline constexpr int otoc_error_blocks = 16;

struct OtocSeries {
	std::vector<double> values; // F(l), l = 0..T_max
	double max_imag = 0.0;
	std::string w_label = "Sz/S";
	std::string v_label = "Sz/S";
	std::string state_label = "I/(N+1)";
};

// W(steps) by iterating W <- U^dagger W U.
[[nodiscard]] Matrix heisenberg_evolve(const FloquetOperator& u, const Matrix& w, long steps);

// F(l) = Tr[rho W(l) V W(l) V], W(l+1) = U^dagger W(l) U.
[[nodiscard]] OtocSeries otoc_series(const FloquetOperator& u, const Matrix& w, const Matrix& v,
                                     const DensityOperator& rho, long t_max);
// W = V = Sz/S at infinite temperature.
[[nodiscard]] OtocSeries otoc_series(const FloquetOperator& u, const SpinAlgebra& algebra, long t_max);

struct LongTimeAverage {
	double mean = 0.0;
	double standard_error = 0.0; // batch means over otoc_error_blocks blocks
	std::size_t samples = 0;
};

// Mean of F(l) over l in (burn_in, T_max].
[[nodiscard]] LongTimeAverage otoc_long_time_average(std::span<const double> values, long burn_in = 0);

} // namespace kpspin
