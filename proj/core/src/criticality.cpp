#include <kpspin/criticality.hpp>
#include <kpspin/types.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace kpspin {

namespace {

void require_order(int p, int min)
{
	if (p < min)
		throw std::invalid_argument("interaction order p must be >= " + std::to_string(min));
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol)
{
	double flo = f(lo);
	for (int it = 0; it < 200 && hi - lo > tol; ++it) {
		const double mid = 0.5 * (lo + hi);
		const double fm = f(mid);
		if (fm == 0.0)
			return mid;
		if ((fm < 0.0) == (flo < 0.0)) {
			lo = mid;
			flo = fm;
		} else {
			hi = mid;
		}
	}
	return 0.5 * (lo + hi);
}

} // namespace

double semiclassical_energy(double phi, double z, double h, double lambda, int p)
{
	require_order(p, 2);
	if (!(std::abs(z) <= 1.0))
		throw std::invalid_argument("|Z| must not exceed 1");
	return -h * std::sqrt(1.0 - z * z) * std::cos(phi) - lambda / p * ipow(z, p);
}

CriticalPoint spinodal_point(int p)
{
	require_order(p, 2);
	if (p == 2)
		return {0.0, 1.0};
	const double a = p - 1;
	const double b = p - 2;
	return {std::sqrt(b / a), std::sqrt(std::pow(a, a) / std::pow(b, b))};
}

CriticalPoint gs_critical_point(int p)
{
	require_order(p, 2);
	if (p == 2)
		return {0.0, 1.0};
	const double a = p - 1;
	const double pp = p * (p - 2.0);
	return {std::sqrt(pp) / a, std::pow(a, a) / std::sqrt(std::pow(pp, p - 2))};
}

double dqpt_polynomial(double z, int p)
{
	require_order(p, 3);
	return ipow(z, p) - static_cast<double>(p) / (p - 1) * ipow(z, p - 2) + 1.0 / (p - 1);
}

double inflection_z(int p)
{
	require_order(p, 3);
	return std::sqrt((p - 2.0) * (p - 3.0)) / (p - 1.0);
}

double coupling_from_z(double z, int p)
{
	return 1.0 / (ipow(z, p - 2) * std::sqrt(1.0 - z * z));
}

DqptPoint dqpt_point(int p)
{
	require_order(p, 3);
	DqptPoint out;
	const double a = p - 1.0;
	const double b = p - 2.0;
	const double r3 = std::sqrt(3.0);
	switch (p) {
	case 3:
		out.z = (r3 - 1.0) / 2.0;
		out.w = 2.0 * std::sqrt(2.0) / ((r3 - 1.0) * std::sqrt(r3));
		out.closed_form = true;
		break;
	case 4:
		out.z = 1.0 / r3;
		out.w = 3.0 * r3 / std::sqrt(2.0);
		out.closed_form = true;
		break;
	case 5: {
		const double r = std::sqrt(5.0 + 4.0 * std::sqrt(5.0));
		out.z = (r - 1.0) / 4.0;
		out.w = 128.0 * std::sqrt(2.0) / (ipow(r - 1.0, 3) * std::sqrt(5.0 - 2.0 * std::sqrt(5.0) + r));
		out.closed_form = true;
		break;
	}
	case 6: {
		const double r21 = std::sqrt(21.0);
		out.z = std::sqrt((1.0 + r21) / 10.0);
		out.w = 50.0 * std::sqrt(10.0) / ((11.0 + r21) * std::sqrt(9.0 - r21));
		out.closed_form = true;
		break;
	}
	default: {
		const double lo = inflection_z(p);
		const double hi = std::sqrt(b / a);
		out.z = bisect([p](double z) { return dqpt_polynomial(z, p); }, lo, hi, 1e-12);
		out.w = coupling_from_z(out.z, p);
		break;
	}
	}
	out.z_approx = (2.0 * std::sqrt(a * b) + std::sqrt(b * (p - 3.0)) - a) / (2.0 * a);
	out.approx_deviation = std::abs(out.z_approx - out.z);
	out.z_upper = (2.0 * std::sqrt(b) - std::sqrt(a)) / std::sqrt(a);
	return out;
}

CriticalPoints critical_points(int p)
{
	CriticalPoints out{p, spinodal_point(p), gs_critical_point(p), std::nullopt};
	if (p >= 3) {
		const DqptPoint d = dqpt_point(p);
		out.dqpt = CriticalPoint{d.z, d.w};
	}
	return out;
}

CriticalPoint critical_oracle(int p, CriticalKind which)
{
	require_order(p, which == CriticalKind::dqpt ? 3 : 2);

	// Self-consistent coupling of the implicit magnetization equation Z = W Z^{p-1} sqrt(1 - Z^2).
	auto w_of = [p](double z) { return 1.0 / (std::pow(z, p - 2) * std::sqrt(1.0 - z * z)); };

	std::function<double(double)> f;
	switch (which) {
	case CriticalKind::spinodal:
		// Marginal stability: derivative of W Z^{p-1} sqrt(1 - Z^2) with respect to Z equals 1.
		f = [p, w_of](double z) {
			const double w = w_of(z);
			const double s = std::sqrt(1.0 - z * z);
			return (p - 1) * w * std::pow(z, p - 2) * s - w * std::pow(z, p) / s - 1.0;
		};
		break;
	case CriticalKind::gs:
		// Degenerate energies of the polarized and magnetized branches.
		f = [p, w_of](double z) { return std::sqrt(1.0 - z * z) + w_of(z) / p * std::pow(z, p) - 1.0; };
		break;
	case CriticalKind::dqpt:
		// Energy of the initial polarized state equals the separatrix energy.
		f = [p, w_of](double z) { return p / w_of(z) * std::sqrt(1.0 - z * z) + std::pow(z, p) - 1.0; };
		break;
	}

	constexpr int grid = 20000;
	double prev_z = 0.0;
	double prev_f = std::numeric_limits<double>::quiet_NaN();
	for (int k = 1; k < grid; ++k) {
		const double z = static_cast<double>(k) / grid;
		const double fz = f(z);
		// Values at round-off level carry no sign information.
		if (!std::isfinite(fz) || std::abs(fz) < 1e-12)
			continue;
		if (std::isfinite(prev_f) && ((prev_f < 0.0) != (fz < 0.0))) {
			const double root = bisect(f, prev_z, z, 1e-15);
			return {root, w_of(root)};
		}
		prev_z = z;
		prev_f = fz;
	}
	// Tangential root at the origin (second-order case).
	const double f0 = f(0.0);
	if (std::isfinite(f0) && std::abs(f0) < 1e-14)
		return {0.0, w_of(0.0)};
	throw NumericalError("no critical root found in (0, 1)");
}

} // namespace kpspin
