#include <doctest.h>

#include "oracles.hpp"

#include <kpspin/classical.hpp>

#include <cmath>
#include <random>

using namespace kpspin;

namespace {

ClassicalState random_state(std::mt19937_64& rng)
{
	std::uniform_real_distribution<double> u(-1.0, 1.0), ph(-pi, pi);
	const double z = u(rng);
	return ClassicalState::from_angles(std::acos(z), ph(rng));
}

double energy(const ClassicalState& s, double h, double lambda, int p)
{
	return -h * s.x - lambda / p * std::pow(s.z, p);
}

ClassicalState rx_pi(const ClassicalState& s)
{
	return {s.x, -s.y, -s.z};
}

} // namespace

TEST_CASE("flow without interaction rotates about x")
{
	const ClassicalState start = ClassicalState::from_angles(0.7, 1.2);
	const double h = 0.4, dt = 1e-3;
	const auto tr = integrate_flow(start, h, 0.0, 2, dt, 5000);
	REQUIRE(tr.states.size() == 5001);
	const double t = 5.0;
	const auto& end = tr.states.back();
	CHECK(std::abs(end.z - (start.z * std::cos(h * t) - start.y * std::sin(h * t))) < 1e-10);
	CHECK(std::abs(end.y - (start.y * std::cos(h * t) + start.z * std::sin(h * t))) < 1e-10);
	for (const auto& s : tr.states)
		CHECK(std::abs(s.x - start.x) < 1e-12);
}

TEST_CASE("flow without field conserves Z")
{
	const ClassicalState start = ClassicalState::from_angles(1.0, 0.3);
	for (int p : {2, 3, 5}) {
		const auto tr = integrate_flow(start, 0.0, 1.3, p, 1e-3, 1000);
		for (const auto& s : tr.states)
			CHECK(std::abs(s.z - start.z) < 1e-12);
	}
}

TEST_CASE("flow conserves energy")
{
	const ClassicalState start = ClassicalState::from_angles(0.9, 0.5);
	const auto tr = integrate_flow(start, 0.3, 1.0, 2, 1e-3, 100000);
	const double e0 = energy(start, 0.3, 1.0, 2);
	double worst = 0.0;
	for (const auto& s : tr.states)
		worst = std::max(worst, std::abs(energy(s, 0.3, 1.0, 2) - e0));
	CHECK(worst < 1e-8);
	CHECK(tr.max_drift < 1e-10);
	CHECK_THROWS_AS((void)integrate_flow(start, 0.3, 1.0, 2, 0.0, 10), std::invalid_argument);
}

TEST_CASE("map reduces to a rotation")
{
	const auto s = map_step({0.0, 0.0, 1.0}, pi / 2, 0.0, 2);
	CHECK(std::abs(s.x) < 1e-15);
	CHECK(std::abs(s.y + 1.0) < 1e-15);
	CHECK(std::abs(s.z) < 1e-15);
}

TEST_CASE("poles are fixed points")
{
	for (int p : {2, 3, 4, 7})
		for (double alpha : {0.3, pi / 2, pi, 2.5})
			for (double x : {1.0, -1.0}) {
				const auto s = map_step({x, 0.0, 0.0}, alpha, 1.7, p);
				CHECK(s.x == x);
				CHECK(std::abs(s.y) < 1e-15);
				CHECK(std::abs(s.z) < 1e-15);
			}
}

TEST_CASE("period doubling of the classical map")
{
	const KickedMap map(pi + 0.1, 0.7, 2);
	auto s = ClassicalState{std::sin(pi / 5), 0.0, std::cos(pi / 5)};
	for (int l = 0; l < 60; ++l) {
		const auto next = map(s);
		CHECK(s.z * next.z < 0.0);
		s = next;
	}
}

TEST_CASE("map preserves the norm")
{
	std::mt19937_64 rng(123);
	std::uniform_real_distribution<double> ad(-pi, pi), ld(0.0, 5.0);
	std::uniform_int_distribution<int> pd(2, 8);
	double worst = 0.0;
	for (int k = 0; k < 1000000; ++k) {
		const auto s = random_state(rng);
		const auto t = map_step(s, ad(rng), ld(rng), pd(rng));
		worst = std::max(worst, std::abs(t.norm() - s.norm()));
	}
	CHECK(worst <= 1e-15);
}

TEST_CASE("map preserves area")
{
	std::mt19937_64 rng(321);
	std::uniform_real_distribution<double> ad(-pi, pi), ld(0.0, 3.0);
	std::uniform_int_distribution<int> pd(2, 6);
	for (int k = 0; k < 100; ++k) {
		const auto s = random_state(rng);
		const auto j = oracle::tangent_jacobian(s, ad(rng), ld(rng), pd(rng));
		CHECK(std::abs(j[0] * j[3] - j[1] * j[2] - 1.0) < 1e-6);
	}
}

TEST_CASE("pole eigenvalues match the numerical Jacobian")
{
	for (int p : {2, 3, 4, 6})
		for (int pole : {1, -1})
			for (double alpha : {0.7, 2.0 * pi / 3.0, pi + 0.1, 2.9}) {
				const double lambda = 0.5;
				const auto j = oracle::tangent_jacobian({static_cast<double>(pole), 0.0, 0.0}, alpha, lambda, p);
				const double tr = j[0] + j[3];
				const double det = j[0] * j[3] - j[1] * j[2];
				const cplx disc = std::sqrt(cplx(tr * tr - 4.0 * det, 0.0));
				std::array<cplx, 2> ref{0.5 * (tr + disc), 0.5 * (tr - disc)};
				const auto ev = tangent_eigenvalues_at_pole(alpha, lambda, p, pole);
				const bool direct = std::abs(ev[0] - ref[0]) < 1e-6 && std::abs(ev[1] - ref[1]) < 1e-6;
				const bool swapped = std::abs(ev[0] - ref[1]) < 1e-6 && std::abs(ev[1] - ref[0]) < 1e-6;
				CAPTURE(p);
				CAPTURE(pole);
				CAPTURE(alpha);
				CHECK((direct || swapped));
			}
}

TEST_CASE("even interaction order keeps the pi rotation symmetry")
{
	std::mt19937_64 rng(5);
	for (int p : {2, 4, 6})
		for (int k = 0; k < 200; ++k) {
			const auto s = random_state(rng);
			const auto a = map_step(rx_pi(s), 1.3, 0.9, p);
			const auto b = rx_pi(map_step(s, 1.3, 0.9, p));
			CHECK(std::abs(a.x - b.x) < 1e-12);
			CHECK(std::abs(a.y - b.y) < 1e-12);
			CHECK(std::abs(a.z - b.z) < 1e-12);
		}
}

TEST_CASE("pole eigenvalue examples")
{
	const auto e3 = tangent_eigenvalues_at_pole(2.0 * pi / 3.0, 0.8, 3);
	for (const auto& e : e3) {
		CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
		CHECK(std::abs(std::abs(std::arg(e)) - 2.0 * pi / 3.0) < 1e-12);
	}
	CHECK(std::abs(e3[0] - std::conj(e3[1])) < 1e-12);

	const double alpha = 1.1;
	const auto e2 = tangent_eigenvalues_at_pole(alpha, 0.0, 2);
	CHECK(std::min(std::abs(e2[0] - std::polar(1.0, alpha)), std::abs(e2[0] - std::polar(1.0, -alpha))) < 1e-12);
	CHECK(std::abs(e2[0] * e2[1] - 1.0) < 1e-12);

	// Inside the period-doubled window the pole is hyperbolic.
	const auto hyp = tangent_eigenvalues_at_pole(pi + 0.1, 0.5, 2);
	CHECK(std::abs(hyp[0].imag()) < 1e-12);
	CHECK(std::max(std::abs(hyp[0]), std::abs(hyp[1])) > 1.0);

	// Exactly at pi the trace is -2: a parabolic double eigenvalue.
	const auto para = tangent_eigenvalues_at_pole(pi, 0.5, 2);
	CHECK(std::abs(para[0] + 1.0) < 1e-7);
	CHECK(std::abs(para[1] + 1.0) < 1e-7);
}

TEST_CASE("resonant bifurcation angles")
{
	auto near = [](const std::vector<double>& a, const std::vector<double>& b) {
		if (a.size() != b.size())
			return false;
		for (std::size_t k = 0; k < a.size(); ++k)
			if (std::abs(a[k] - b[k]) > 1e-15)
				return false;
		return true;
	};
	CHECK(near(bifurcation_set(2), {pi}));
	CHECK(near(bifurcation_set(4), {pi / 2, pi}));
	CHECK(near(bifurcation_set(6), {pi / 3, pi / 2, 2.0 * pi / 3.0, pi}));
	CHECK_THROWS_AS((void)bifurcation_set(1), std::invalid_argument);
}

TEST_CASE("p = 2 phase boundary")
{
	const auto zero = phase_boundary_p2(0.0);
	CHECK(zero.first == doctest::Approx(pi));
	CHECK(zero.second == doctest::Approx(pi));
	const auto two = phase_boundary_p2(2.0);
	CHECK(two.first == doctest::Approx(pi - pi / 4));
	CHECK(two.second == doctest::Approx(pi + pi / 4));
	const double h = oracle::p2_hyperbolicity_onset(0.5);
	const auto b = phase_boundary_p2(0.5);
	CHECK(std::abs(b.second - (pi + h / 2.0)) < 1e-10);
	CHECK(std::abs(b.first - (pi - h / 2.0)) < 1e-10);
	// Continuous across Lambda = 2.
	CHECK(std::abs(phase_boundary_p2(2.0 - 1e-9).second - phase_boundary_p2(2.0 + 1e-9).second) < 1e-8);
}

TEST_CASE("chaos border")
{
	CHECK(chaos_border(pi / 2, 2) == doctest::Approx(std::exp(1.0)));
	CHECK(chaos_border(pi - 1e-6, 2) > 1e4);
	CHECK(std::isfinite(chaos_border(1.0, 5)));
	CHECK_THROWS_AS((void)chaos_border(pi + 0.1, 2), std::invalid_argument);
	CHECK_THROWS_AS((void)chaos_border(-1.0, 2), std::invalid_argument);
}

TEST_CASE("sphere grid")
{
	const SphereGrid g(14000);
	CHECK(g.size() == 14000);
	double zz = 0.0;
	for (const auto& s : g.points()) {
		CHECK(std::abs(s.norm() - 1.0) < 1e-12);
		zz += s.z * s.z;
	}
	CHECK(zz / 14000.0 == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
	const SphereGrid again(14000);
	CHECK(again.points()[123].x == g.points()[123].x);
}

TEST_CASE("averaged correlation")
{
	const SphereGrid g(14000);
	const double alpha = 2.0 * pi / 3.0;
	const auto rigid = averaged_correlation(g, alpha, 0.0, 2, 30);
	for (std::size_t l = 0; l < rigid.values.size(); ++l)
		CHECK(std::abs(rigid.values[l] - std::cos(alpha * static_cast<double>(l)) / 3.0) < 1e-3);
	const auto frozen = averaged_correlation(g, 0.0, 1.4, 3, 30);
	for (double v : frozen.values)
		CHECK(std::abs(v - frozen.values[0]) < 1e-12);
	CHECK(std::abs(frozen.values[0] - 1.0 / 3.0) < 1e-3);
	const auto idle = averaged_correlation(g, 0.0, 0.0, 2, 2);
	CHECK(std::abs(idle.values[0] - 1.0 / 3.0) < 1e-3);
}

TEST_CASE("G measure")
{
	const SphereGrid g(2000);
	const double alpha = 2.0 * pi / 3.0;
	const auto three = g_measure(alpha, 0.0, 2, 3, g, 2048);
	CHECK(three.weight > 0.0);
	CHECK(std::abs(three.omega_star - alpha) <= two_pi / 2049.0);
	CHECK_FALSE(three.normalized);
	CHECK(g_measure(alpha, 0.0, 2, 2, g, 2048).weight == 0.0);

	CHECK(g_measure(pi / 2, 0.7, 4, 4, g, 2048).weight > 0.0);
	CHECK(g_measure(pi / 2 + 0.5, 0.7, 4, 4, g, 2048).weight == 0.0);
}
