#include <kpspin/floquet.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>

namespace kpspin {

void ModelParams::validate() const
{
	if (p < 2)
		throw std::invalid_argument("interaction order p must be >= 2");
	if (!std::isfinite(lambda) || lambda < 0.0)
		throw std::invalid_argument("Lambda must be finite and non-negative");
	if (!std::isfinite(h) || !std::isfinite(alpha_base))
		throw std::invalid_argument("h and alpha_B must be finite");
}

RealVector kick_phases(int p, double lambda, const SpinAlgebra& algebra)
{
	if (p < 2)
		throw std::invalid_argument("interaction order p must be >= 2");
	const double c = lambda / (p * ipow(algebra.spin(), p - 1));
	RealVector out(algebra.dim());
	for (Index i = 0; i < out.size(); ++i)
		out(i) = c * ipow(algebra.m_values()(i), p);
	return out;
}

Matrix build_pspin_hamiltonian(const ModelParams& params, const SpinAlgebra& algebra)
{
	params.validate();
	Matrix h = -params.h * algebra.sx();
	const RealVector k = kick_phases(params.p, params.lambda, algebra);
	h.diagonal() -= k.cast<cplx>();
	return h;
}

struct FloquetOperator::Cache {
	std::once_flag phases_once;
	RealVector phases;
	std::once_flag vectors_once;
	RealVector vector_phases;
	Matrix vectors;
};

namespace {

double wrapped_arg(cplx z)
{
	const double a = std::arg(z);
	return a <= -pi ? pi : a;
}

} // namespace

FloquetOperator::FloquetOperator(Matrix u, ModelParams params, DriveMode mode)
    : u_(std::move(u)), params_(params), mode_(mode), cache_(std::make_shared<Cache>())
{
	if (u_.rows() != u_.cols() || u_.rows() == 0)
		throw std::invalid_argument("Floquet operator must be a non-empty square matrix");
}

const RealVector& FloquetOperator::eigenphases() const
{
	std::call_once(cache_->phases_once, [this] {
		Eigen::ComplexEigenSolver<Matrix> es(u_, false);
		if (es.info() != Eigen::Success)
			throw NumericalError("Floquet eigensolver did not converge");
		RealVector ph(u_.rows());
		for (Index k = 0; k < ph.size(); ++k)
			ph(k) = wrapped_arg(es.eigenvalues()(k));
		cache_->phases = std::move(ph);
	});
	return cache_->phases;
}

const Matrix& FloquetOperator::eigenvectors() const
{
	std::call_once(cache_->vectors_once, [this] {
		Eigen::ComplexEigenSolver<Matrix> es(u_, true);
		if (es.info() != Eigen::Success)
			throw NumericalError("Floquet eigensolver did not converge");
		RealVector ph(u_.rows());
		for (Index k = 0; k < ph.size(); ++k)
			ph(k) = wrapped_arg(es.eigenvalues()(k));
		cache_->vector_phases = std::move(ph);
		cache_->vectors = es.eigenvectors();
	});
	return cache_->vectors;
}

const RealVector& FloquetOperator::eigenphases_with_vectors() const
{
	(void)eigenvectors();
	return cache_->vector_phases;
}

FloquetOperator build_floquet(const ModelParams& params, const SpinAlgebra& algebra, DriveMode mode)
{
	params.validate();
	if (mode == DriveMode::exact_drive) {
		const Matrix hp = build_pspin_hamiltonian(params, algebra);
		Matrix u = algebra.rotation_x(params.alpha_base) * expi_hermitian(hp, -1.0);
		return FloquetOperator(std::move(u), params, mode);
	}
	const RealVector k = kick_phases(params.p, params.lambda, algebra);
	Matrix u = algebra.rotation_x(params.alpha());
	for (Index j = 0; j < u.cols(); ++j)
		u.col(j) *= std::polar(1.0, k(j));
	return FloquetOperator(std::move(u), params, mode);
}

namespace {

bool is_diagonal(const Matrix& m)
{
	for (Index j = 0; j < m.cols(); ++j)
		for (Index i = 0; i < m.rows(); ++i)
			if (i != j && m(i, j) != cplx(0.0, 0.0))
				return false;
	return true;
}

} // namespace

Evolution evolve(const StateVector& state, const FloquetOperator& u, long steps, const Matrix& observable,
                 std::string label)
{
	if (steps < 1)
		throw std::invalid_argument("evolve needs at least one step");
	if (state.dim() != u.dim() || observable.rows() != u.dim() || observable.cols() != u.dim())
		throw std::invalid_argument("state, Floquet operator and observable dimensions differ");

	const bool diagonal = is_diagonal(observable);
	const RealVector diag = observable.diagonal().real();
	auto measure = [&](const Vector& psi) {
		if (diagonal)
			return psi.cwiseAbs2().dot(diag);
		return psi.dot(observable * psi).real();
	};

	Evolution out{TimeSeries{{}, std::move(label)}, state, 0};
	out.series.values.reserve(static_cast<std::size_t>(steps) + 1);
	Vector psi = state.amplitudes();
	Vector next(psi.size());
	out.series.values.push_back(measure(psi));
	for (long l = 1; l <= steps; ++l) {
		next.noalias() = u.matrix() * psi;
		psi.swap(next);
		const double n = psi.norm();
		if (std::abs(n - 1.0) > 1e-8) {
			psi /= n;
			++out.renormalizations;
		}
		out.series.values.push_back(measure(psi));
	}
	out.final_state = StateVector::normalized(std::move(psi));
	return out;
}

double PowerSpectrum::total_power() const
{
	double sum = 0.0;
	for (std::size_t k = 0; k < power.size(); ++k) {
		const bool self_mirror = k == 0 || (length % 2 == 0 && k == length / 2);
		sum += (self_mirror ? 1.0 : 2.0) * power[k];
	}
	return sum;
}

double PowerSpectrum::non_dc_power() const
{
	double sum = 0.0;
	for (std::size_t k = 1; k < power.size(); ++k)
		sum += power[k];
	return sum;
}

double PowerSpectrum::median_non_dc_power() const
{
	if (power.size() < 2)
		return 0.0;
	std::vector<double> v(power.begin() + 1, power.end());
	const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
	std::nth_element(v.begin(), mid, v.end());
	if (v.size() % 2 == 1)
		return *mid;
	const double hi = *mid;
	const double lo = *std::max_element(v.begin(), mid);
	return 0.5 * (lo + hi);
}

PowerSpectrum power_spectrum(std::span<const double> values, std::size_t drop_transient, bool normalize)
{
	if (drop_transient >= values.size())
		throw std::invalid_argument("series is empty after dropping the transient");
	const auto tail = values.subspan(drop_transient);
	const auto f = real_dft(tail);
	PowerSpectrum out;
	out.length = tail.size();
	out.omega.resize(f.size());
	out.power.resize(f.size());
	for (std::size_t k = 0; k < f.size(); ++k) {
		out.omega[k] = two_pi * static_cast<double>(k) / static_cast<double>(out.length);
		out.power[k] = std::norm(f[k]);
	}
	if (normalize) {
		const double m = *std::max_element(out.power.begin(), out.power.end());
		if (m > 0.0)
			for (double& v : out.power)
				v /= m;
		out.normalized = true;
	}
	return out;
}

PowerSpectrum power_spectrum(const TimeSeries& series, std::size_t drop_transient, bool normalize)
{
	return power_spectrum(std::span<const double>(series.values), drop_transient, normalize);
}

Peak dominant_frequency(const PowerSpectrum& spec, bool exclude_dc)
{
	const std::size_t first = exclude_dc ? 1 : 0;
	if (spec.power.size() <= first)
		throw std::invalid_argument("power spectrum has no eligible bins");
	std::size_t best = first;
	for (std::size_t k = first + 1; k < spec.power.size(); ++k)
		if (spec.power[k] > spec.power[best] * (1.0 + 1e-12))
			best = k;
	return {spec.omega[best], spec.power[best], best};
}

Peak peak_near(const PowerSpectrum& spec, double omega, std::size_t window)
{
	if (spec.power.empty())
		throw std::invalid_argument("power spectrum is empty");
	const double centre = omega / spec.bin_width();
	const auto c = static_cast<long>(std::lround(centre));
	const long lo = std::max(0L, c - static_cast<long>(window));
	const long hi = std::min(static_cast<long>(spec.power.size()) - 1, c + static_cast<long>(window));
	if (lo > hi)
		throw std::invalid_argument("frequency lies outside the folded spectrum");
	std::size_t best = static_cast<std::size_t>(lo);
	for (long k = lo + 1; k <= hi; ++k)
		if (spec.power[static_cast<std::size_t>(k)] > spec.power[best])
			best = static_cast<std::size_t>(k);
	return {spec.omega[best], spec.power[best], best};
}

} // namespace kpspin
