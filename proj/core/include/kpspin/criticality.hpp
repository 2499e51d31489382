#pragma once

#include <optional>

namespace kpspin {

struct CriticalPoint {
	double z = 0.0;
	double w = 0.0; // Lambda / h
};

// E = -h sqrt(1 - Z^2) cos(phi) - (Lambda / p) Z^p
[[nodiscard]] double semiclassical_energy(double phi, double z, double h, double lambda, int p);

[[nodiscard]] CriticalPoint spinodal_point(int p);
[[nodiscard]] CriticalPoint gs_critical_point(int p);

// Z^p - p/(p-1) Z^{p-2} + 1/(p-1); its root in (Z_infle, Z*) is the DQPT position.
[[nodiscard]] double dqpt_polynomial(double z, int p);
// sqrt((p-2)(p-3)) / (p-1)
[[nodiscard]] double inflection_z(int p);
// W = 1 / (Z^{p-2} sqrt(1 - Z^2))
[[nodiscard]] double coupling_from_z(double z, int p);

struct DqptPoint {
	double z = 0.0;
	double w = 0.0;
	bool closed_form = false;
	double z_approx = 0.0;        // arithmetic-mean estimate
	double approx_deviation = 0.0; // |z_approx - z|
	double z_upper = 0.0;          // (2 sqrt(p-2) - sqrt(p-1)) / sqrt(p-1)
};

[[nodiscard]] DqptPoint dqpt_point(int p);

struct CriticalPoints {
	int p = 2;
	CriticalPoint spinodal;
	CriticalPoint gs;
	std::optional<CriticalPoint> dqpt; // p >= 3
};

[[nodiscard]] CriticalPoints critical_points(int p);

enum class CriticalKind { spinodal, gs, dqpt };

// Independent numerical route (dense scan plus bisection, no closed forms).
[[nodiscard]] CriticalPoint critical_oracle(int p, CriticalKind which);

} // namespace kpspin
