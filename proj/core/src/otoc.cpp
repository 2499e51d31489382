#include <kpspin/otoc.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace kpspin {

DensityOperator::DensityOperator(Matrix rho) : rho_(std::move(rho))
{
	if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
		throw std::invalid_argument("density operator must be a non-empty square matrix");
	if (std::abs(rho_.trace() - cplx(1.0, 0.0)) > 1e-12)
		throw std::invalid_argument("density operator must have unit trace");
	if (max_abs(rho_ - rho_.adjoint()) > 1e-12)
		throw std::invalid_argument("density operator must be Hermitian");
	const cplx c = rho_(0, 0);
	Matrix diff = rho_;
	diff.diagonal().array() -= c;
	mixed_ = max_abs(diff) == 0.0;
}

DensityOperator DensityOperator::infinite_temperature(Index dim)
{
	if (dim < 1)
		throw std::invalid_argument("dimension must be positive");
	return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

namespace {

bool diagonal_only(const Matrix& m)
{
	Matrix off = m;
	off.diagonal().setZero();
	return max_abs(off) == 0.0;
}

} // namespace

Matrix heisenberg_evolve(const FloquetOperator& u, const Matrix& w, long steps)
{
	if (w.rows() != u.dim() || w.cols() != u.dim())
		throw std::invalid_argument("operator and Floquet dimensions differ");
	if (steps < 0)
		throw std::invalid_argument("step count must be non-negative");
	const Matrix uh = u.matrix().adjoint();
	Matrix wl = w;
	Matrix tmp(w.rows(), w.cols());
	for (long l = 0; l < steps; ++l) {
		tmp.noalias() = wl * u.matrix();
		wl.noalias() = uh * tmp;
	}
	return wl;
}

OtocSeries otoc_series(const FloquetOperator& u, const Matrix& w, const Matrix& v, const DensityOperator& rho,
                       long t_max)
{
	const Index d = u.dim();
	if (t_max < 1)
		throw std::invalid_argument("T_max must be >= 1");
	if (w.rows() != d || w.cols() != d || v.rows() != d || v.cols() != d || rho.dim() != d)
		throw std::invalid_argument("OTOC operand dimensions differ");

	const bool v_diag = diagonal_only(v);
	const Vector vd = v.diagonal();
	const bool mixed = rho.maximally_mixed();
	const cplx rho0 = rho.matrix()(0, 0);

	Matrix wl = w;
	Matrix a(d, d);
	Matrix b(d, d);
	const Matrix& um = u.matrix();
	const Matrix uh = um.adjoint();

	OtocSeries out;
	out.values.reserve(static_cast<std::size_t>(t_max) + 1);
	for (long l = 0; l <= t_max; ++l) {
		if (l > 0) {
			b.noalias() = wl * um;
			wl.noalias() = uh * b;
		}
		if (v_diag)
			a = wl * vd.asDiagonal();
		else
			a.noalias() = wl * v;
		cplx f;
		if (mixed) {
			f = rho0 * a.cwiseProduct(a.transpose()).sum();
		} else {
			b.noalias() = rho.matrix() * a;
			f = b.cwiseProduct(a.transpose()).sum();
		}
		out.max_imag = std::max(out.max_imag, std::abs(f.imag()));
		out.values.push_back(f.real());
	}
	return out;
}

OtocSeries otoc_series(const FloquetOperator& u, const SpinAlgebra& algebra, long t_max)
{
	const Matrix z = algebra.sz() / algebra.spin();
	return otoc_series(u, z, z, DensityOperator::infinite_temperature(algebra.dim()), t_max);
}

LongTimeAverage otoc_long_time_average(std::span<const double> values, long burn_in)
{
	const long t_max = static_cast<long>(values.size()) - 1;
	if (burn_in < 0 || burn_in >= t_max)
		throw std::invalid_argument("burn_in must lie in [0, T_max)");
	const auto tail = values.subspan(static_cast<std::size_t>(burn_in) + 1);
	LongTimeAverage out;
	out.samples = tail.size();
	double sum = 0.0;
	for (double x : tail)
		sum += x;
	out.mean = sum / static_cast<double>(tail.size());

	const std::size_t block = tail.size() / otoc_error_blocks;
	if (block == 0) {
		out.standard_error = std::numeric_limits<double>::quiet_NaN();
		return out;
	}
	double means[otoc_error_blocks];
	double grand = 0.0;
	for (int b = 0; b < otoc_error_blocks; ++b) {
		double s = 0.0;
		for (std::size_t i = 0; i < block; ++i)
			s += tail[static_cast<std::size_t>(b) * block + i];
		means[b] = s / static_cast<double>(block);
		grand += means[b];
	}
	grand /= otoc_error_blocks;
	double var = 0.0;
	for (double m : means)
		var += (m - grand) * (m - grand);
	var /= otoc_error_blocks - 1;
	out.standard_error = std::sqrt(var / otoc_error_blocks);
	return out;
}

} // namespace kpspin
