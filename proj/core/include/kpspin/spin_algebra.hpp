#pragma once

#include <kpspin/types.hpp>

#include <memory>

namespace kpspin {

class StateVector {
public:
	// Requires unit norm to 1e-12.
	explicit StateVector(Vector amplitudes);
	[[nodiscard]] static StateVector normalized(Vector amplitudes);

	[[nodiscard]] const Vector& amplitudes() const noexcept { return amp_; }
	[[nodiscard]] Index dim() const noexcept { return amp_.size(); }

private:
	Vector amp_;
};

// Collective spin operators in the Dicke basis |S, M>, M = S, S-1, ..., -S.
class SpinAlgebra {
public:
	explicit SpinAlgebra(long particles);

	[[nodiscard]] long particles() const noexcept { return n_; }
	[[nodiscard]] double spin() const noexcept { return 0.5 * static_cast<double>(n_); }
	[[nodiscard]] Index dim() const noexcept { return static_cast<Index>(n_) + 1; }

	[[nodiscard]] const Matrix& sx() const noexcept { return sx_; }
	[[nodiscard]] const Matrix& sy() const noexcept { return sy_; }
	[[nodiscard]] const Matrix& sz() const noexcept { return sz_; }
	// Diagonal of Sz in basis order.
	[[nodiscard]] const RealVector& m_values() const noexcept { return m_; }

	// Sx = V diag(w) V^T with V real orthogonal; computed once, shared by copies.
	[[nodiscard]] const RealMatrix& sx_eigenvectors() const;
	[[nodiscard]] const RealVector& sx_eigenvalues() const;

	// exp(i angle Sx)
	[[nodiscard]] Matrix rotation_x(double angle) const;

private:
	struct SxBasis;
	const SxBasis& basis() const;

	long n_;
	Matrix sx_, sy_, sz_;
	RealVector m_;
	std::shared_ptr<SxBasis> basis_;
};

[[nodiscard]] StateVector coherent_state(double theta, double phi, const SpinAlgebra& algebra);
[[nodiscard]] StateVector dicke_state(double m, const SpinAlgebra& algebra);

// <psi|O|psi>; throws if the imaginary part exceeds 1e-10 (relative to max(1, |Re|)).
[[nodiscard]] double expectation(const StateVector& state, const Matrix& op);

// exp(i t H) for Hermitian H via eigendecomposition.
[[nodiscard]] Matrix expi_hermitian(const Matrix& h, double t);

} // namespace kpspin
