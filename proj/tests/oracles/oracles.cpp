#include "oracles.hpp"

#include <kpspin/spectral.hpp>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

std::vector<cplx> naive_dft(const std::vector<double>& f)
{
	const std::size_t n = f.size();
	std::vector<cplx> out(n);
	for (std::size_t k = 0; k < n; ++k) {
		cplx acc = 0.0;
		for (std::size_t l = 0; l < n; ++l) {
			const double arg = -2.0 * M_PI * static_cast<double>((k * l) % n) / static_cast<double>(n);
			acc += f[l] * cplx(std::cos(arg), std::sin(arg));
		}
		out[k] = acc;
	}
	return out;
}

Matrix expm(const Matrix& a)
{
	return a.exp();
}

Matrix matrix_power(const Matrix& u, long q)
{
	Matrix result = Matrix::Identity(u.rows(), u.cols());
	Matrix base = u;
	while (q > 0) {
		if (q & 1)
			result = result * base;
		base = base * base;
		q >>= 1;
	}
	return result;
}

std::vector<double> sorted_phases(const Matrix& u)
{
	Eigen::ComplexEigenSolver<Matrix> es(u, false);
	std::vector<double> ph;
	for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
		ph.push_back(std::arg(es.eigenvalues()(k)));
	return kpspin::make_spectrum(std::move(ph)).phases;
}

namespace {

struct Vec3 {
	double x, y, z;
};

Vec3 cross(const Vec3& a, const Vec3& b)
{
	return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double dot(const Vec3& a, const Vec3& b)
{
	return a.x * b.x + a.y * b.y + a.z * b.z;
}

Vec3 unit(const Vec3& a)
{
	const double n = std::sqrt(dot(a, a));
	return {a.x / n, a.y / n, a.z / n};
}

std::array<Vec3, 2> frame(const Vec3& n)
{
	const Vec3 seed = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
	const Vec3 e1 = unit(cross(n, seed));
	return {e1, cross(n, e1)};
}

Vec3 on_sphere(const Vec3& n, const Vec3& e1, const Vec3& e2, double a, double b)
{
	// Exponential-map style chart: rotate n toward (a e1 + b e2).
	const double r = std::hypot(a, b);
	if (r == 0.0)
		return n;
	const Vec3 d{(a * e1.x + b * e2.x) / r, (a * e1.y + b * e2.y) / r, (a * e1.z + b * e2.z) / r};
	return {std::cos(r) * n.x + std::sin(r) * d.x, std::cos(r) * n.y + std::sin(r) * d.y,
	        std::cos(r) * n.z + std::sin(r) * d.z};
}

} // namespace

std::array<double, 4> tangent_jacobian(const kpspin::ClassicalState& s, double alpha, double lambda, int p, double eps)
{
	const Vec3 n{s.x, s.y, s.z};
	const auto [e1, e2] = frame(n);
	const auto img = kpspin::map_step(s, alpha, lambda, p);
	const Vec3 m{img.x, img.y, img.z};
	const auto [f1, f2] = frame(m);
	auto coords = [&](double a, double b) {
		const Vec3 v = on_sphere(n, e1, e2, a, b);
		const auto w = kpspin::map_step({v.x, v.y, v.z}, alpha, lambda, p);
		const Vec3 wv{w.x, w.y, w.z};
		// Log-map chart at m.
		const double c = dot(wv, m);
		const Vec3 t{wv.x - c * m.x, wv.y - c * m.y, wv.z - c * m.z};
		const double tn = std::sqrt(dot(t, t));
		const double ang = std::atan2(tn, c);
		const double f = tn > 0.0 ? ang / tn : 1.0;
		return std::array<double, 2>{f * dot(t, f1), f * dot(t, f2)};
	};
	const auto ap = coords(eps, 0.0);
	const auto am = coords(-eps, 0.0);
	const auto bp = coords(0.0, eps);
	const auto bm = coords(0.0, -eps);
	return {(ap[0] - am[0]) / (2 * eps), (bp[0] - bm[0]) / (2 * eps), (ap[1] - am[1]) / (2 * eps),
	        (bp[1] - bm[1]) / (2 * eps)};
}

double pole_discriminant_p2(double alpha, double lambda, int pole)
{
	// A = (pole L sin a + 2 cos a)/2 +/- (1/2) sqrt((-pole L sin a - 2 cos a)^2 - 4)
	const double b = -pole * lambda * std::sin(alpha) - 2.0 * std::cos(alpha);
	return b * b - 4.0;
}

double p2_hyperbolicity_onset(double lambda)
{
	// At alpha = pi + h the X = +1 pole is hyperbolic for h in (0, h*); the discriminant
	// returns to zero at h*. Scan h in (0, pi) and bisect the first sign change.
	auto d = [lambda](double h) { return pole_discriminant_p2(M_PI + h, lambda, 1); };
	const int n = 200000;
	double prev = 1e-9;
	double dprev = d(prev);
	for (int k = 1; k <= n; ++k) {
		const double h = M_PI * k / n;
		const double dh = d(h);
		if ((dprev > 0.0) != (dh > 0.0)) {
			double lo = prev, hi = h;
			for (int it = 0; it < 200; ++it) {
				const double mid = 0.5 * (lo + hi);
				if ((d(mid) > 0.0) == (dprev > 0.0))
					lo = mid;
				else
					hi = mid;
			}
			return 0.5 * (lo + hi);
		}
		prev = h;
		dprev = dh;
	}
	return NAN;
}

std::vector<double> uniform_phases(std::size_t n, std::uint64_t seed)
{
	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> u(-M_PI, M_PI);
	std::vector<double> ph(n);
	for (auto& v : ph)
		v = u(rng);
	return ph;
}

MonteCarlo poisson_ratio_monte_carlo(std::size_t n, int seeds, std::uint64_t base_seed)
{
	std::vector<double> samples;
	for (int s = 0; s < seeds; ++s) {
		auto ph = uniform_phases(n, base_seed + static_cast<std::uint64_t>(s));
		std::sort(ph.begin(), ph.end());
		std::vector<double> gap(n);
		for (std::size_t j = 0; j + 1 < n; ++j)
			gap[j] = ph[j + 1] - ph[j];
		gap[n - 1] = 2 * M_PI - (ph[n - 1] - ph[0]);
		double sum = 0.0;
		for (std::size_t j = 0; j < n; ++j) {
			const double a = gap[j], b = gap[(j + 1) % n];
			sum += std::min(a, b) / std::max(a, b);
		}
		samples.push_back(sum / static_cast<double>(n));
	}
	double mean = 0.0;
	for (double v : samples)
		mean += v;
	mean /= static_cast<double>(samples.size());
	double var = 0.0;
	for (double v : samples)
		var += (v - mean) * (v - mean);
	var /= static_cast<double>(samples.size() - 1);
	return {mean, std::sqrt(var)};
}

} // namespace oracle
