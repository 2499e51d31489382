#pragma once

#include <kpspin/classical.hpp>
#include <kpspin/floquet.hpp>

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

using kpspin::cplx;
using kpspin::Matrix;

// Direct O(n^2) DFT over all n bins.
std::vector<cplx> naive_dft(const std::vector<double>& f);

// Pade scaling-and-squaring exponential (independent of eigendecomposition).
Matrix expm(const Matrix& a);

// U^q by binary powering.
Matrix matrix_power(const Matrix& u, long q);

// Eigenphases of a general matrix, sorted and wrapped to (-pi, pi].
std::vector<double> sorted_phases(const Matrix& u);

// 2x2 Jacobian of map_step in an orthonormal tangent frame at s (central differences).
std::array<double, 4> tangent_jacobian(const kpspin::ClassicalState& s, double alpha, double lambda, int p,
                                       double eps = 1e-6);

// Discriminant of the p = 2 pole eigenvalue problem written out from its closed form.
double pole_discriminant_p2(double alpha, double lambda, int pole);

// Smallest detuning h > 0 at which the p = 2 pole at X = -1 changes stability, by scan and bisection.
double p2_hyperbolicity_onset(double lambda);

// Mean adjacent spacing ratio (circular) of n i.i.d. uniform phases, averaged over seeds.
struct MonteCarlo {
	double mean;
	double stddev; // of a single sample
};
MonteCarlo poisson_ratio_monte_carlo(std::size_t n, int seeds, std::uint64_t base_seed);

std::vector<double> uniform_phases(std::size_t n, std::uint64_t seed);

} // namespace oracle
