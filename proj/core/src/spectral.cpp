#include <kpspin/spectral.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace kpspin {

double wrap_phase(double x) noexcept
{
	double r = std::remainder(x, two_pi);
	if (r <= -pi)
		r += two_pi;
	return r;
}

EigenphaseSpectrum make_spectrum(std::vector<double> phases, int power)
{
	for (double& v : phases)
		v = wrap_phase(v);
	std::sort(phases.begin(), phases.end());
	return {std::move(phases), power};
}

EigenphaseSpectrum eigenphases(const FloquetOperator& u, int q)
{
	if (q < 1)
		throw std::invalid_argument("power q must be >= 1");
	const RealVector& mu = u.eigenphases();
	std::vector<double> ph(static_cast<std::size_t>(mu.size()));
	for (Index k = 0; k < mu.size(); ++k)
		ph[static_cast<std::size_t>(k)] = static_cast<double>(q) * mu(k);
	return make_spectrum(std::move(ph), q);
}

SpacingRatioStats spacing_ratio(const EigenphaseSpectrum& spec)
{
	const auto& ph = spec.phases;
	const std::size_t n = ph.size();
	if (n < 3)
		throw std::invalid_argument("spacing ratio needs at least three phases");
	constexpr double floor = 1e-12;
	SpacingRatioStats out;
	std::vector<double> gap(n);
	for (std::size_t j = 0; j + 1 < n; ++j)
		gap[j] = ph[j + 1] - ph[j];
	gap[n - 1] = two_pi - (ph[n - 1] - ph[0]);
	for (double& g : gap) {
		if (g < floor) {
			g = floor;
			++out.clamped;
		}
	}
	double sum = 0.0;
	for (std::size_t j = 0; j < n; ++j) {
		const double a = gap[j];
		const double b = gap[(j + 1) % n];
		sum += std::min(a, b) / std::max(a, b);
	}
	out.mean_ratio = sum / static_cast<double>(n);
	out.normalized = out.mean_ratio / poisson_spacing_ratio;
	return out;
}

double PhaseHistogram::max_density() const
{
	return density.empty() ? 0.0 : *std::max_element(density.begin(), density.end());
}

std::size_t PhaseHistogram::max_count() const
{
	return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

PhaseHistogram dos_histogram(const EigenphaseSpectrum& spec, int bins)
{
	if (bins < 8)
		throw std::invalid_argument("histogram needs at least 8 bins");
	if (spec.phases.empty())
		throw std::invalid_argument("histogram of an empty spectrum");
	PhaseHistogram out;
	const auto nb = static_cast<std::size_t>(bins);
	out.counts.assign(nb, 0);
	const double w = out.bin_width();
	for (double v : spec.phases) {
		auto k = static_cast<long>(std::floor((v - out.lower) / w));
		k = std::clamp(k, 0L, static_cast<long>(nb) - 1);
		++out.counts[static_cast<std::size_t>(k)];
	}
	out.density.resize(nb);
	const double norm = static_cast<double>(spec.phases.size()) * w;
	for (std::size_t k = 0; k < nb; ++k)
		out.density[k] = static_cast<double>(out.counts[k]) / norm;
	return out;
}

namespace {

double circular_distance(double a, double b) noexcept
{
	return std::abs(wrap_phase(a - b));
}

} // namespace

double clustering_degeneracy(const EigenphaseSpectrum& spec, int q, double tol)
{
	if (q < 2)
		throw std::invalid_argument("clustering needs q >= 2");
	const auto& ph = spec.phases;
	const std::size_t n = ph.size();
	if (n == 0)
		return 0.0;
	std::vector<char> used(n, 0);
	std::size_t matched = 0;

	// Nearest unused phase to target (ties to the lower index); n if none within tol.
	auto nearest_unused = [&](double target) {
		const auto it = std::lower_bound(ph.begin(), ph.end(), target);
		const auto start = static_cast<std::size_t>(it - ph.begin());
		std::size_t best = n;
		double best_d = tol;
		for (int dir : {-1, 1}) {
			for (std::size_t step = 0; step < n; ++step) {
				const std::size_t raw = dir > 0 ? start + step : start + n - 1 - step;
				const std::size_t idx = raw % n;
				const double d = circular_distance(ph[idx], target);
				if (d > tol)
					break;
				if (!used[idx] && (d < best_d || (d == best_d && idx < best))) {
					best_d = d;
					best = idx;
				}
			}
		}
		return best;
	};

	std::vector<std::size_t> tuple(static_cast<std::size_t>(q));
	for (std::size_t i = 0; i < n; ++i) {
		if (used[i])
			continue;
		used[i] = 1;
		tuple[0] = i;
		bool ok = true;
		int k = 1;
		for (; k < q; ++k) {
			const std::size_t j = nearest_unused(wrap_phase(ph[i] + two_pi * k / q));
			if (j == n) {
				ok = false;
				break;
			}
			used[j] = 1;
			tuple[static_cast<std::size_t>(k)] = j;
		}
		if (ok) {
			matched += static_cast<std::size_t>(q);
		} else {
			for (int r = 1; r < k; ++r)
				used[tuple[static_cast<std::size_t>(r)]] = 0;
			used[i] = 2;
		}
	}
	return static_cast<double>(matched) / static_cast<double>(n);
}

ParitySpectra parity_resolved_eigenphases(const FloquetOperator& u, const SpinAlgebra& algebra, int q)
{
	if (u.params().p % 2 != 0)
		throw std::invalid_argument("parity blocks exist only for even p");
	if (u.dim() != algebra.dim())
		throw std::invalid_argument("algebra and Floquet operator dimensions differ");
	const RealMatrix& v = algebra.sx_eigenvectors();
	const RealVector& w = algebra.sx_eigenvalues();
	const Matrix vc = v.cast<cplx>();
	const Matrix rotated = vc.transpose() * u.matrix() * vc;

	std::vector<Index> sectors[2];
	const double s = algebra.spin();
	for (Index k = 0; k < w.size(); ++k) {
		const auto parity = static_cast<long>(std::lround(s - w(k))) % 2;
		sectors[parity].push_back(k);
	}
	ParitySpectra out;
	for (int sector = 0; sector < 2; ++sector) {
		const auto& idx = sectors[sector];
		const auto m = static_cast<Index>(idx.size());
		Matrix block(m, m);
		for (Index a = 0; a < m; ++a)
			for (Index b = 0; b < m; ++b)
				block(a, b) = rotated(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
		std::vector<double> ph;
		if (m > 0) {
			Eigen::ComplexEigenSolver<Matrix> es(block, false);
			if (es.info() != Eigen::Success)
				throw NumericalError("parity block eigensolver did not converge");
			for (Index k = 0; k < m; ++k)
				ph.push_back(static_cast<double>(q) * std::arg(es.eigenvalues()(k)));
		}
		(sector == 0 ? out.even : out.odd) = make_spectrum(std::move(ph), q);
	}
	return out;
}

} // namespace kpspin
