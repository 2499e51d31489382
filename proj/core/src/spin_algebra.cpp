#include <kpspin/spin_algebra.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <mutex>
#include <string>

namespace kpspin {

double max_abs(const Matrix& m)
{
	return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

StateVector::StateVector(Vector amplitudes) : amp_(std::move(amplitudes))
{
	if (amp_.size() == 0)
		throw std::invalid_argument("state vector is empty");
	if (std::abs(amp_.norm() - 1.0) > 1e-12)
		throw std::invalid_argument("state vector is not normalized");
}

StateVector StateVector::normalized(Vector amplitudes)
{
	const double n = amplitudes.norm();
	if (!(n > 0.0) || !std::isfinite(n))
		throw std::invalid_argument("cannot normalize a zero or non-finite vector");
	amplitudes /= n;
	return StateVector(std::move(amplitudes));
}

struct SpinAlgebra::SxBasis {
	std::once_flag once;
	RealMatrix vectors;
	RealVector values;
};

SpinAlgebra::SpinAlgebra(long particles) : n_(particles), basis_(std::make_shared<SxBasis>())
{
	if (particles < 1)
		throw std::invalid_argument("particle count must be a positive integer, got " + std::to_string(particles));
	const Index d = dim();
	const double s = spin();
	m_.resize(d);
	for (Index i = 0; i < d; ++i)
		m_(i) = s - static_cast<double>(i);

	// (S+)_{i-1,i} for M = S - i.
	RealMatrix splus = RealMatrix::Zero(d, d);
	for (Index i = 1; i < d; ++i) {
		const double m = m_(i);
		splus(i - 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
	}
	const RealMatrix sminus = splus.transpose();
	sx_ = (0.5 * (splus + sminus)).cast<cplx>();
	sy_ = (cplx(0.0, -0.5) * (splus - sminus).cast<cplx>());
	sz_ = m_.cast<cplx>().asDiagonal();
}

const SpinAlgebra::SxBasis& SpinAlgebra::basis() const
{
	std::call_once(basis_->once, [this] {
		Eigen::SelfAdjointEigenSolver<RealMatrix> es(sx_.real());
		if (es.info() != Eigen::Success)
			throw NumericalError("Sx eigendecomposition failed");
		// The spectrum of Sx is exactly {-S, ..., S}; snap away round-off.
		RealVector w = es.eigenvalues();
		const double s = spin();
		for (Index k = 0; k < w.size(); ++k) {
			const double exact = -s + static_cast<double>(k);
			if (std::abs(w(k) - exact) > 1e-7 * std::max(1.0, s))
				throw NumericalError("Sx eigenvalues deviate from the ladder");
			w(k) = exact;
		}
		basis_->values = std::move(w);
		basis_->vectors = es.eigenvectors();
	});
	return *basis_;
}

const RealMatrix& SpinAlgebra::sx_eigenvectors() const { return basis().vectors; }

const RealVector& SpinAlgebra::sx_eigenvalues() const { return basis().values; }

Matrix SpinAlgebra::rotation_x(double angle) const
{
	const auto& b = basis();
	Vector phase(b.values.size());
	for (Index k = 0; k < phase.size(); ++k)
		phase(k) = std::polar(1.0, angle * b.values(k));
	const Matrix vc = b.vectors.cast<cplx>();
	return vc * phase.asDiagonal() * vc.transpose();
}

StateVector coherent_state(double theta, double phi, const SpinAlgebra& algebra)
{
	const long n = algebra.particles();
	const double c = std::cos(0.5 * theta);
	const double s = std::sin(0.5 * theta);
	const double lc = std::log(std::abs(c));
	const double ls = std::log(std::abs(s));
	const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
	Vector amp(algebra.dim());
	for (long i = 0; i <= n; ++i) {
		// d^S_{M,S}(theta) with M = S - i: sqrt(C(N,i)) c^{N-i} s^{i}
		const long up = n - i;
		double mag = 0.0;
		const bool zero = (up > 0 && c == 0.0) || (i > 0 && s == 0.0);
		if (!zero) {
			double lg = 0.5 * (lgn - std::lgamma(static_cast<double>(i) + 1.0) - std::lgamma(static_cast<double>(up) + 1.0));
			if (up > 0)
				lg += static_cast<double>(up) * lc;
			if (i > 0)
				lg += static_cast<double>(i) * ls;
			mag = std::exp(lg);
			if ((c < 0.0 && up % 2 == 1) != (s < 0.0 && i % 2 == 1))
				mag = -mag;
		}
		const double m = algebra.m_values()(i);
		amp(i) = mag * std::polar(1.0, -phi * m);
	}
	return StateVector::normalized(std::move(amp));
}

StateVector dicke_state(double m, const SpinAlgebra& algebra)
{
	const double idx = algebra.spin() - m;
	const double r = std::round(idx);
	if (std::abs(idx - r) > 1e-9 || r < 0.0 || r > static_cast<double>(algebra.particles()))
		throw std::invalid_argument("M is not a valid magnetic quantum number for this spin");
	Vector amp = Vector::Zero(algebra.dim());
	amp(static_cast<Index>(r)) = 1.0;
	return StateVector(std::move(amp));
}

double expectation(const StateVector& state, const Matrix& op)
{
	const Vector& psi = state.amplitudes();
	if (op.rows() != psi.size() || op.cols() != psi.size())
		throw std::invalid_argument("operator and state dimensions differ");
	const cplx v = psi.dot(op * psi);
	if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
		throw NumericalError("expectation value has a non-negligible imaginary part");
	return v.real();
}

Matrix expi_hermitian(const Matrix& h, double t)
{
	Eigen::SelfAdjointEigenSolver<Matrix> es(h);
	if (es.info() != Eigen::Success)
		throw NumericalError("Hermitian eigendecomposition failed");
	Vector phase(es.eigenvalues().size());
	for (Index k = 0; k < phase.size(); ++k)
		phase(k) = std::polar(1.0, t * es.eigenvalues()(k));
	return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace kpspin
