#include <kpspin/floquet.hpp>

#include <fftw3.h>
#include <memory>
#include <mutex>

namespace kpspin {

namespace {

std::mutex& planner_mutex()
{
	static std::mutex m;
	return m;
}

struct FftwFree {
	void operator()(void* p) const noexcept { fftw_free(p); }
};

} // namespace

std::vector<cplx> real_dft(std::span<const double> values)
{
	const std::size_t n = values.size();
	if (n == 0)
		return {};
	const std::size_t half = n / 2 + 1;
	std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
	std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(half));
	if (!in || !out)
		throw std::bad_alloc();

	fftw_plan plan = nullptr;
	{
		// Only fftw_execute is re-entrant; planning must be serialized.
		std::lock_guard lock(planner_mutex());
		plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
	}
	if (plan == nullptr)
		throw NumericalError("FFTW planning failed");
	std::copy(values.begin(), values.end(), in.get());
	fftw_execute(plan);
	std::vector<cplx> result(half);
	for (std::size_t k = 0; k < half; ++k)
		result[k] = cplx(out.get()[k][0], out.get()[k][1]);
	{
		std::lock_guard lock(planner_mutex());
		fftw_destroy_plan(plan);
	}
	return result;
}

} // namespace kpspin
