#pragma once

#include <kpspin/floquet.hpp>

#include <array>
#include <utility>
#include <vector>

namespace kpspin {

struct ClassicalState {
	double x = 0.0;
	double y = 0.0;
	double z = 1.0;

	[[nodiscard]] double norm() const noexcept;
	[[nodiscard]] static ClassicalState from_angles(double theta, double phi) noexcept;
};

struct Trajectory {
	std::vector<ClassicalState> states; // states[0] is the initial condition
	double max_drift = 0.0;             // largest |norm - 1| before each renormalization
};

// RK4 for dX = L Z^{p-1} Y, dY = h Z - L Z^{p-1} X, dZ = -h Y; renormalized every step.
[[nodiscard]] Trajectory integrate_flow(const ClassicalState& start, double h, double lambda, int p, double dt,
                                        long steps);

// Kick about z by Lambda Z^{p-1}, then rotation about x by alpha.
class KickedMap {
public:
	KickedMap(double alpha, double lambda, int p);
	[[nodiscard]] ClassicalState operator()(const ClassicalState& s) const noexcept;

private:
	double ca_, sa_, lambda_;
	int p_;
};

[[nodiscard]] ClassicalState map_step(const ClassicalState& s, double alpha, double lambda, int p);

// Eigenvalues of the tangent map at the pole X = pole (+1 or -1).
[[nodiscard]] std::array<cplx, 2> tangent_eigenvalues_at_pole(double alpha, double lambda, int p, int pole = 1);

// Resonant bifurcation angles 2 pi / m, m = p, p-2, ..., >= 2, plus multiples below pi; sorted.
[[nodiscard]] std::vector<double> bifurcation_set(int p);

// Period-doubling phase boundaries for p = 2: pi -/+ atan2(4 L, 4 - L^2) / 2.
[[nodiscard]] std::pair<double, double> phase_boundary_p2(double lambda);

// Lambda at which the strong-chaos Lyapunov estimate vanishes.
[[nodiscard]] double chaos_border(double alpha, int p);

class SphereGrid {
public:
	// Fibonacci lattice.
	explicit SphereGrid(std::size_t count);
	[[nodiscard]] const std::vector<ClassicalState>& points() const noexcept { return points_; }
	[[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

private:
	std::vector<ClassicalState> points_;
};

inline constexpr std::size_t default_sphere_points = 14000;

// C(l) = mean over grid of Z_l Z_0, l = 0..T_max; fixed summation order.
[[nodiscard]] TimeSeries averaged_correlation(const SphereGrid& grid, double alpha, double lambda, int p, long t_max);

struct PhaseDiagramCell {
	double lambda = 0.0;
	double alpha = 0.0;
	int q = 2;
	double weight = 0.0;     // G before (or after, if normalized) division by the sweep maximum
	double omega_star = 0.0; // non-DC argmax of the spectrum of C(l)
	bool normalized = false;
};

// Unnormalized G from an existing correlation series.
[[nodiscard]] PhaseDiagramCell g_measure_from_correlation(const TimeSeries& correlation, double alpha, double lambda,
                                                          int q);
[[nodiscard]] PhaseDiagramCell g_measure(double alpha, double lambda, int p, int q, const SphereGrid& grid, long t_max);

} // namespace kpspin
