#include <doctest.h>

#include "oracles.hpp"

#include <kpspin/resonance.hpp>
#include <kpspin/spectral.hpp>

#include <algorithm>
#include <cmath>

using namespace kpspin;

namespace {

Matrix mpow(const Matrix& m, int p)
{
	Matrix r = Matrix::Identity(m.rows(), m.cols());
	for (int k = 0; k < p; ++k)
		r = r * m;
	return r;
}

} // namespace

TEST_CASE("single vertex recovers the interaction")
{
	for (int p : {2, 3, 5}) {
		const SpinAlgebra a(15);
		const auto h = build_resonance_hamiltonian(1, p, 0.8, a);
		const Matrix ref = -(0.8 / (p * std::pow(a.spin(), p - 1))) * mpow(a.sz(), p);
		CHECK(max_abs(h.matrix - ref) < 1e-12);
		CHECK(h.q == 1);
		CHECK(h.sign == InteractionSign::minus);
	}
}

TEST_CASE("two vertices at p = 2")
{
	const SpinAlgebra a(20);
	const double lambda = 0.6;
	const auto h = build_resonance_hamiltonian(2, 2, lambda, a);
	const Matrix ref = -(lambda / (2.0 * a.spin())) * a.sz() * a.sz();
	CHECK(max_abs(h.matrix - ref) < 1e-12);
}

TEST_CASE("four vertices at p = 4")
{
	const SpinAlgebra a(16);
	const double lambda = 0.9;
	const auto h = build_resonance_hamiltonian(4, 4, lambda, a);
	const double w = -2.0 * lambda / (4.0 * 4.0 * std::pow(a.spin(), 3));
	const Matrix ref = w * (mpow(a.sy(), 4) + mpow(a.sz(), 4));
	CHECK(max_abs(h.matrix - ref) < 1e-12);
}

TEST_CASE("Z_q symmetry and Hermiticity")
{
	const std::pair<int, int> cases[] = {{2, 2}, {3, 3}, {4, 4}, {6, 6}, {4, 6}, {3, 6}};
	for (const auto& [q, p] : cases) {
		const SpinAlgebra a(24);
		const auto h = build_resonance_hamiltonian(q, p, 1.3, a);
		const Matrix r = a.rotation_x(two_pi / q);
		CAPTURE(q);
		CAPTURE(p);
		CHECK(max_abs(r * h.matrix * r.adjoint() - h.matrix) < 1e-10);
		CHECK(max_abs(h.matrix - h.matrix.adjoint()) < 1e-12);
		const Matrix eff = build_effective_hamiltonian(q, p, 1.3, 0.05, a, InteractionSign::plus);
		CHECK(max_abs(eff - eff.adjoint()) < 1e-12);
	}
}

TEST_CASE("effective Hamiltonian limits")
{
	const SpinAlgebra a(10);
	const Matrix noint = build_effective_hamiltonian(3, 3, 0.0, 0.07, a, InteractionSign::minus);
	const Matrix field = 0.07 * a.sx();
	CHECK(max_abs(noint - field) == 0.0);
	const Matrix nofield = build_effective_hamiltonian(1, 4, 0.5, 0.0, a, InteractionSign::minus);
	CHECK(max_abs(nofield - build_resonance_hamiltonian(1, 4, 0.5, a).matrix) < 1e-15);
	const Matrix flipped = build_effective_hamiltonian(2, 2, 0.5, 0.1, a, InteractionSign::plus);
	CHECK(max_abs(flipped - (0.1 * a.sx() - build_resonance_hamiltonian(2, 2, 0.5, a).matrix)) < 1e-14);
}

TEST_CASE("circular matching distance")
{
	const std::vector<double> a{-3.1, -1.0, 0.5, 3.0};
	CHECK(circular_matching_distance(a, a) == 0.0);
	std::vector<double> shifted;
	for (double v : a)
		shifted.push_back(wrap_phase(v + 0.2));
	std::sort(shifted.begin(), shifted.end());
	CHECK(circular_matching_distance(a, shifted) == doctest::Approx(0.2));
	CHECK_THROWS_AS((void)circular_matching_distance(a, std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("free precession has no mismatch")
{
	const SpinAlgebra a(16);
	const auto r = validate_effective_spectrum(2, 2, 0.0, 0.05, a);
	CHECK(r.mismatch_minus < 1e-10);
	CHECK(r.mismatch_plus < 1e-10);
}

TEST_CASE("averaging theory converges with the interaction strength")
{
	const SpinAlgebra a(64);
	struct Case {
		int q, p;
		double lambda, h;
	};
	for (const auto& c : {Case{2, 2, 0.2, 0.05}, Case{4, 4, 0.2, 0.02}, Case{3, 3, 0.1, 0.02}}) {
		CAPTURE(c.q);
		const auto r = validate_effective_spectrum(c.q, c.p, c.lambda, c.h, a);
		const double best = r.best == InteractionSign::minus ? r.mismatch_minus : r.mismatch_plus;
		const double other = r.best == InteractionSign::minus ? r.mismatch_plus : r.mismatch_minus;
		CHECK(best <= other);
		CHECK(r.mismatch_half * 2.0 <= best);
		CHECK(r.scaling_exponent > 1.0);
		if (c.p % 2 == 0)
			CHECK_FALSE(r.tie);
		else
			CHECK(r.tie);
		const auto eff = build_effective_hamiltonian(c.q, c.p, c.lambda, c.h, a);
		CHECK(eff.report.best == r.best);
		CHECK(max_abs(eff.matrix - build_effective_hamiltonian(c.q, c.p, c.lambda, c.h, a, r.best)) == 0.0);
	}
}
