#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace kpspin {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Raised for inputs that violate an operation's preconditions.
class ConfigError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// x^n for small non-negative integer n, with 0^0 = 1.
[[nodiscard]] constexpr double ipow(double x, int n) noexcept
{
	double r = 1.0;
	for (int i = 0; i < n; ++i)
		r *= x;
	return r;
}

[[nodiscard]] double max_abs(const Matrix& m);

} // namespace kpspin
