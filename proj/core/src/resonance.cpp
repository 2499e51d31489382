#include <kpspin/resonance.hpp>
#include <kpspin/spectral.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace kpspin {

std::string_view to_string(InteractionSign s) noexcept
{
	return s == InteractionSign::minus ? "minus" : "plus";
}

namespace {

Matrix vertex_sum(int q, int p, const SpinAlgebra& algebra)
{
	const Index d = algebra.dim();
	Matrix sum = Matrix::Zero(d, d);
	Matrix power(d, d);
	for (int j = 1; j <= q; ++j) {
		const double angle = two_pi * j / q;
		const Matrix o = -std::sin(angle) * algebra.sy() + std::cos(angle) * algebra.sz();
		power = o;
		for (int k = 1; k < p; ++k)
			power = power * o;
		sum += power;
	}
	// Restore exact Hermiticity lost to round-off in the products.
	return 0.5 * (sum + sum.adjoint());
}

double vertex_scale(int q, int p, double lambda, const SpinAlgebra& algebra)
{
	return lambda / (q * p * ipow(algebra.spin(), p - 1));
}

void check(int q, int p)
{
	if (q < 1)
		throw std::invalid_argument("resonance order q must be >= 1");
	if (p < 2)
		throw std::invalid_argument("interaction order p must be >= 2");
}

double sign_factor(InteractionSign s)
{
	return s == InteractionSign::minus ? -1.0 : 1.0;
}

} // namespace

ResonanceHamiltonian build_resonance_hamiltonian(int q, int p, double lambda, const SpinAlgebra& algebra,
                                                 InteractionSign sign)
{
	check(q, p);
	Matrix m = sign_factor(sign) * vertex_scale(q, p, lambda, algebra) * vertex_sum(q, p, algebra);
	return {std::move(m), q, p, lambda, sign};
}

Matrix build_effective_hamiltonian(int q, int p, double lambda, double h, const SpinAlgebra& algebra,
                                   InteractionSign sign)
{
	Matrix out = h * algebra.sx();
	if (lambda != 0.0)
		out += build_resonance_hamiltonian(q, p, lambda, algebra, sign).matrix;
	return out;
}

double circular_matching_distance(std::span<const double> a, std::span<const double> b)
{
	if (a.size() != b.size())
		throw std::invalid_argument("phase lists differ in length");
	const std::size_t n = a.size();
	double best = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
	for (std::size_t shift = 0; shift < n; ++shift) {
		double worst = 0.0;
		for (std::size_t i = 0; i < n && worst < best; ++i)
			worst = std::max(worst, std::abs(wrap_phase(a[i] - b[(i + shift) % n])));
		best = std::min(best, worst);
	}
	return best;
}

namespace {

std::vector<double> effective_phases(int q, int p, double lambda, double h, const SpinAlgebra& algebra,
                                     InteractionSign sign)
{
	const Matrix heff = build_effective_hamiltonian(q, p, lambda, h, algebra, sign);
	Eigen::SelfAdjointEigenSolver<Matrix> es(heff, Eigen::EigenvaluesOnly);
	if (es.info() != Eigen::Success)
		throw NumericalError("effective Hamiltonian eigensolver failed");
	// exp(2 pi i Sx) = (-1)^N
	const double global = pi * static_cast<double>(algebra.particles() % 2);
	std::vector<double> ph;
	ph.reserve(static_cast<std::size_t>(es.eigenvalues().size()));
	for (Index k = 0; k < es.eigenvalues().size(); ++k)
		ph.push_back(-static_cast<double>(q) * es.eigenvalues()(k) + global);
	return make_spectrum(std::move(ph), q).phases;
}

std::vector<double> floquet_power_phases(int q, int p, double lambda, double h, const SpinAlgebra& algebra)
{
	const ModelParams params{p, lambda, h, two_pi / q};
	return eigenphases(build_floquet(params, algebra), q).phases;
}

double mismatch(int q, int p, double lambda, double h, const SpinAlgebra& algebra, InteractionSign sign,
                const std::vector<double>& exact)
{
	return circular_matching_distance(exact, effective_phases(q, p, lambda, h, algebra, sign));
}

} // namespace

EffectiveSpectrumReport validate_effective_spectrum(int q, int p, double lambda, double h, const SpinAlgebra& algebra)
{
	check(q, p);
	if (!(lambda >= 0.0))
		throw std::invalid_argument("Lambda must be non-negative");
	EffectiveSpectrumReport r;
	const auto exact = floquet_power_phases(q, p, lambda, h, algebra);
	r.mismatch_minus = mismatch(q, p, lambda, h, algebra, InteractionSign::minus, exact);
	r.mismatch_plus = mismatch(q, p, lambda, h, algebra, InteractionSign::plus, exact);
	const double scale = std::max({r.mismatch_minus, r.mismatch_plus, 1e-300});
	r.tie = std::abs(r.mismatch_minus - r.mismatch_plus) <= 1e-9 * scale + 1e-14;
	r.best = (r.tie || r.mismatch_minus <= r.mismatch_plus) ? InteractionSign::minus : InteractionSign::plus;
	if (lambda == 0.0) {
		r.mismatch_half = (r.best == InteractionSign::minus) ? r.mismatch_minus : r.mismatch_plus;
		r.scaling_exponent = std::numeric_limits<double>::quiet_NaN();
		return r;
	}
	const auto exact_half = floquet_power_phases(q, p, 0.5 * lambda, h, algebra);
	r.mismatch_half = mismatch(q, p, 0.5 * lambda, h, algebra, r.best, exact_half);
	const double full = r.best == InteractionSign::minus ? r.mismatch_minus : r.mismatch_plus;
	r.scaling_exponent = std::log2(full / r.mismatch_half);
	return r;
}

EffectiveHamiltonian build_effective_hamiltonian(int q, int p, double lambda, double h, const SpinAlgebra& algebra)
{
	EffectiveSpectrumReport report = validate_effective_spectrum(q, p, lambda, h, algebra);
	return {build_effective_hamiltonian(q, p, lambda, h, algebra, report.best), report};
}

} // namespace kpspin
