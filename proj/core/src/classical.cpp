#include <kpspin/classical.hpp>

#include <algorithm>
#include <cmath>

namespace kpspin {

double ClassicalState::norm() const noexcept
{
	return std::sqrt(x * x + y * y + z * z);
}

ClassicalState ClassicalState::from_angles(double theta, double phi) noexcept
{
	return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

namespace {

struct Derivative {
	double dx, dy, dz;
};

Derivative flow_field(const ClassicalState& s, double h, double lambda, int p) noexcept
{
	const double k = lambda * ipow(s.z, p - 1);
	return {k * s.y, h * s.z - k * s.x, -h * s.y};
}

ClassicalState advance(const ClassicalState& s, const Derivative& d, double f) noexcept
{
	return {s.x + f * d.dx, s.y + f * d.dy, s.z + f * d.dz};
}

} // namespace

Trajectory integrate_flow(const ClassicalState& start, double h, double lambda, int p, double dt, long steps)
{
	if (!(dt > 0.0))
		throw std::invalid_argument("time step must be positive");
	if (steps < 0)
		throw std::invalid_argument("step count must be non-negative");
	Trajectory out;
	out.states.reserve(static_cast<std::size_t>(steps) + 1);
	out.states.push_back(start);
	ClassicalState s = start;
	for (long i = 0; i < steps; ++i) {
		const Derivative k1 = flow_field(s, h, lambda, p);
		const Derivative k2 = flow_field(advance(s, k1, 0.5 * dt), h, lambda, p);
		const Derivative k3 = flow_field(advance(s, k2, 0.5 * dt), h, lambda, p);
		const Derivative k4 = flow_field(advance(s, k3, dt), h, lambda, p);
		const double f = dt / 6.0;
		s.x += f * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
		s.y += f * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
		s.z += f * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz);
		const double n = s.norm();
		out.max_drift = std::max(out.max_drift, std::abs(n - 1.0));
		s.x /= n;
		s.y /= n;
		s.z /= n;
		out.states.push_back(s);
	}
	return out;
}

KickedMap::KickedMap(double alpha, double lambda, int p)
    : ca_(std::cos(alpha)), sa_(std::sin(alpha)), lambda_(lambda), p_(p)
{
	if (p < 2)
		throw std::invalid_argument("interaction order p must be >= 2");
}

ClassicalState KickedMap::operator()(const ClassicalState& s) const noexcept
{
	const double k = lambda_ * ipow(s.z, p_ - 1);
	const double c = std::cos(k);
	const double sn = std::sin(k);
	const double x = c * s.x - sn * s.y;
	const double y = sn * s.x + c * s.y;
	return {x, y * ca_ - s.z * sa_, y * sa_ + s.z * ca_};
}

ClassicalState map_step(const ClassicalState& s, double alpha, double lambda, int p)
{
	return KickedMap(alpha, lambda, p)(s);
}

std::array<cplx, 2> tangent_eigenvalues_at_pole(double alpha, double lambda, int p, int pole)
{
	if (p < 2)
		throw std::invalid_argument("interaction order p must be >= 2");
	if (pole != 1 && pole != -1)
		throw std::invalid_argument("pole must be +1 or -1");
	if (p > 2)
		return {std::polar(1.0, alpha), std::polar(1.0, -alpha)};
	const double tr = 2.0 * std::cos(alpha) + pole * lambda * std::sin(alpha);
	const cplx root = std::sqrt(cplx(tr * tr - 4.0, 0.0));
	return {0.5 * tr + 0.5 * root, 0.5 * tr - 0.5 * root};
}

std::vector<double> bifurcation_set(int p)
{
	if (p < 2)
		throw std::invalid_argument("interaction order p must be >= 2");
	std::vector<double> out;
	auto insert = [&out](double a) {
		for (double b : out)
			if (std::abs(a - b) < 1e-12)
				return;
		out.push_back(a);
	};
	for (int m = p; m >= 2; m -= 2) {
		const double base = two_pi / m;
		insert(base);
		for (int r = 2; r * base < pi - 1e-12; ++r)
			insert(r * base);
	}
	std::sort(out.begin(), out.end());
	return out;
}

std::pair<double, double> phase_boundary_p2(double lambda)
{
	if (!(lambda >= 0.0))
		throw std::invalid_argument("Lambda must be non-negative");
	const double half = 0.5 * std::atan2(4.0 * lambda, 4.0 - lambda * lambda);
	return {pi - half, pi + half};
}

double chaos_border(double alpha, int p)
{
	if (p < 2)
		throw std::invalid_argument("interaction order p must be >= 2");
	const double s = std::sin(alpha);
	if (!(s > 0.0))
		throw std::invalid_argument("chaos border needs sin(alpha) > 0");
	return std::exp(static_cast<double>(p - 1)) / ((p - 1) * s);
}

SphereGrid::SphereGrid(std::size_t count)
{
	if (count == 0)
		throw std::invalid_argument("sphere grid needs at least one point");
	const double golden = pi * (3.0 - std::sqrt(5.0));
	points_.reserve(count);
	for (std::size_t i = 0; i < count; ++i) {
		const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
		const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
		const double phi = golden * static_cast<double>(i);
		points_.push_back({r * std::cos(phi), r * std::sin(phi), z});
	}
}

TimeSeries averaged_correlation(const SphereGrid& grid, double alpha, double lambda, int p, long t_max)
{
	if (t_max < 2)
		throw std::invalid_argument("T_max must be >= 2");
	const KickedMap step(alpha, lambda, p);
	std::vector<double> acc(static_cast<std::size_t>(t_max) + 1, 0.0);
	for (const ClassicalState& s0 : grid.points()) {
		ClassicalState s = s0;
		acc[0] += s0.z * s0.z;
		for (long l = 1; l <= t_max; ++l) {
			s = step(s);
			acc[static_cast<std::size_t>(l)] += s.z * s0.z;
		}
	}
	const double n = static_cast<double>(grid.size());
	for (double& v : acc)
		v /= n;
	return {std::move(acc), "C_ZZ"};
}

PhaseDiagramCell g_measure_from_correlation(const TimeSeries& correlation, double alpha, double lambda, int q)
{
	if (q < 2)
		throw std::invalid_argument("G measure needs q >= 2");
	const PowerSpectrum spec = power_spectrum(correlation);
	const Peak peak = dominant_frequency(spec, true);
	PhaseDiagramCell cell{lambda, alpha, q, 0.0, peak.omega, false};
	if (std::abs(peak.omega - two_pi / q) <= spec.bin_width())
		cell.weight = peak.power;
	return cell;
}

PhaseDiagramCell g_measure(double alpha, double lambda, int p, int q, const SphereGrid& grid, long t_max)
{
	return g_measure_from_correlation(averaged_correlation(grid, alpha, lambda, p, t_max), alpha, lambda, q);
}

} // namespace kpspin
