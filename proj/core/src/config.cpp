#include <kpspin/config.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace kpspin {

std::string_view to_string(InitialKind k) noexcept
{
	switch (k) {
	case InitialKind::coherent:
		return "coherent";
	case InitialKind::dicke:
		return "dicke";
	case InitialKind::random:
		return "random";
	}
	return "?";
}

std::string_view to_string(Diagnostic d) noexcept
{
	switch (d) {
	case Diagnostic::rtilde:
		return "rtilde";
	case Diagnostic::otoc:
		return "otoc";
	case Diagnostic::gmeasure:
		return "gmeasure";
	}
	return "?";
}

std::string_view to_string(DriveMode m) noexcept
{
	return m == DriveMode::kicked ? "kicked" : "exact";
}

double SweepRange::at(int i) const noexcept
{
	if (count <= 1)
		return min;
	return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

ModelParams RunConfig::model_params() const noexcept
{
	return {model.p, model.lambda, model.h, model.alpha_base};
}

namespace {

std::string_view trim(std::string_view s)
{
	const auto b = s.find_first_not_of(" \t\r");
	if (b == std::string_view::npos)
		return {};
	const auto e = s.find_last_not_of(" \t\r");
	return s.substr(b, e - b + 1);
}

double to_double(std::string_view s)
{
	s = trim(s);
	if (!s.empty() && s.front() == '+')
		s.remove_prefix(1);
	double v = 0.0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
		throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
	return v;
}

long to_long(std::string_view s)
{
	s = trim(s);
	if (!s.empty() && s.front() == '+')
		s.remove_prefix(1);
	long v = 0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
		throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
	return v;
}

std::uint64_t to_u64(std::string_view s)
{
	s = trim(s);
	std::uint64_t v = 0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
		throw std::invalid_argument("expected a non-negative integer, got '" + std::string(s) + "'");
	return v;
}

bool to_bool(std::string_view s)
{
	s = trim(s);
	if (s == "true" || s == "yes" || s == "on" || s == "1")
		return true;
	if (s == "false" || s == "no" || s == "off" || s == "0")
		return false;
	throw std::invalid_argument("expected true or false, got '" + std::string(s) + "'");
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
	std::vector<std::string_view> out;
	if (trim(s).empty())
		return out;
	std::size_t start = 0;
	while (true) {
		const auto pos = s.find(sep, start);
		out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
		if (pos == std::string_view::npos)
			break;
		start = pos + 1;
	}
	return out;
}

template <typename E, std::size_t N>
E to_enum(std::string_view s, const std::array<E, N>& values)
{
	s = trim(s);
	for (E v : values)
		if (to_string(v) == s)
			return v;
	std::string allowed;
	for (E v : values)
		allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(v));
	throw std::invalid_argument("expected one of {" + allowed + "}, got '" + std::string(s) + "'");
}

std::string join_ints(const std::vector<int>& v)
{
	std::string out;
	for (int x : v)
		out += (out.empty() ? "" : ", ") + std::to_string(x);
	return out;
}

struct Key {
	std::string name; // section.key
	bool required;
	std::function<void(RunConfig&, std::string_view)> set;
	std::function<std::string(const RunConfig&)> get;
};

const std::vector<Key>& keys()
{
	static const std::vector<Key> table = [] {
		std::vector<Key> k;
		auto real = [&k](std::string name, auto member, bool angle = false) {
			k.push_back({std::move(name), false,
			             [member, angle](RunConfig& c, std::string_view v) {
				             member(c) = angle ? parse_angle(v) : to_double(v);
			             },
			             [member](const RunConfig& c) { return format_double(member(c)); }});
		};
		auto integer = [&k](std::string name, auto member) {
			k.push_back({std::move(name), false,
			             [member](RunConfig& c, std::string_view v) { member(c) = to_long(v); },
			             [member](const RunConfig& c) { return std::to_string(member(c)); }});
		};
		auto boolean = [&k](std::string name, auto member) {
			k.push_back({std::move(name), false, [member](RunConfig& c, std::string_view v) { member(c) = to_bool(v); },
			             [member](const RunConfig& c) {
				             return std::string(member(c) ? "true" : "false");
			             }});
		};

		k.push_back({"model.p", true,
		             [](RunConfig& c, std::string_view v) {
			             const long p = to_long(v);
			             if (p < 2 || p > 64)
				             throw std::invalid_argument("p must be an integer in [2, 64]");
			             c.model.p = static_cast<int>(p);
		             },
		             [](const RunConfig& c) { return std::to_string(c.model.p); }});
		real("model.lambda", [](auto& c) -> auto& { return c.model.lambda; });
		k.back().required = true;
		real("model.h", [](auto& c) -> auto& { return c.model.h; });
		real("model.alpha_base", [](auto& c) -> auto& { return c.model.alpha_base; }, true);
		k.push_back({"model.drive", false,
		             [](RunConfig& c, std::string_view v) {
			             c.model.drive = to_enum(v, std::array{DriveMode::kicked, DriveMode::exact_drive});
		             },
		             [](const RunConfig& c) { return std::string(to_string(c.model.drive)); }});

		integer("system.n", [](auto& c) -> auto& { return c.system.n; });
		k.back().required = true;

		integer("dynamics.t_max", [](auto& c) -> auto& { return c.dynamics.t_max; });
		k.push_back({"dynamics.initial", false,
		             [](RunConfig& c, std::string_view v) {
			             c.dynamics.initial =
			                 to_enum(v, std::array{InitialKind::coherent, InitialKind::dicke, InitialKind::random});
		             },
		             [](const RunConfig& c) { return std::string(to_string(c.dynamics.initial)); }});
		real("dynamics.theta", [](auto& c) -> auto& { return c.dynamics.theta; }, true);
		real("dynamics.phi", [](auto& c) -> auto& { return c.dynamics.phi; }, true);
		real("dynamics.dicke_m", [](auto& c) -> auto& { return c.dynamics.dicke_m; });

		k.push_back({"analysis.q", false,
		             [](RunConfig& c, std::string_view v) {
			             std::vector<int> qs;
			             for (auto part : split(v, ','))
				             qs.push_back(static_cast<int>(to_long(part)));
			             c.analysis.q = std::move(qs);
		             },
		             [](const RunConfig& c) { return join_ints(c.analysis.q); }});
		real("analysis.otoc_threshold", [](auto& c) -> auto& { return c.analysis.otoc_threshold; });
		integer("analysis.burn_in", [](auto& c) -> auto& { return c.analysis.burn_in; });
		integer("analysis.drop_transient", [](auto& c) -> auto& { return c.analysis.drop_transient; });
		boolean("analysis.normalize", [](auto& c) -> auto& { return c.analysis.normalize; });
		k.push_back({"analysis.dos_bins", false,
		             [](RunConfig& c, std::string_view v) { c.analysis.dos_bins = static_cast<int>(to_long(v)); },
		             [](const RunConfig& c) { return std::to_string(c.analysis.dos_bins); }});
		real("analysis.cluster_tol", [](auto& c) -> auto& { return c.analysis.cluster_tol; });
		integer("analysis.sphere_points", [](auto& c) -> auto& { return c.analysis.sphere_points; });

		boolean("sweep.enabled", [](auto& c) -> auto& { return c.sweep.enabled; });
		k.push_back({"sweep.diagnostic", false,
		             [](RunConfig& c, std::string_view v) {
			             c.sweep.diagnostic =
			                 to_enum(v, std::array{Diagnostic::rtilde, Diagnostic::otoc, Diagnostic::gmeasure});
		             },
		             [](const RunConfig& c) { return std::string(to_string(c.sweep.diagnostic)); }});
		real("sweep.lambda_min", [](auto& c) -> auto& { return c.sweep.lambda.min; });
		real("sweep.lambda_max", [](auto& c) -> auto& { return c.sweep.lambda.max; });
		k.push_back({"sweep.lambda_count", false,
		             [](RunConfig& c, std::string_view v) { c.sweep.lambda.count = static_cast<int>(to_long(v)); },
		             [](const RunConfig& c) { return std::to_string(c.sweep.lambda.count); }});
		real("sweep.alpha_min", [](auto& c) -> auto& { return c.sweep.alpha.min; }, true);
		real("sweep.alpha_max", [](auto& c) -> auto& { return c.sweep.alpha.max; }, true);
		k.push_back({"sweep.alpha_count", false,
		             [](RunConfig& c, std::string_view v) { c.sweep.alpha.count = static_cast<int>(to_long(v)); },
		             [](const RunConfig& c) { return std::to_string(c.sweep.alpha.count); }});

		k.push_back({"switching.schedule", false,
		             [](RunConfig& c, std::string_view v) {
			             std::vector<SwitchSegment> segs;
			             for (auto part : split(v, ',')) {
				             const auto colon = part.rfind(':');
				             if (colon == std::string_view::npos)
					             throw std::invalid_argument("schedule entries are angle:duration");
				             segs.push_back({parse_angle(part.substr(0, colon)), to_long(part.substr(colon + 1))});
			             }
			             c.switching.schedule = std::move(segs);
		             },
		             [](const RunConfig& c) {
			             std::string out;
			             for (const auto& s : c.switching.schedule)
				             out += (out.empty() ? "" : ", ") + format_double(s.alpha_base) + ":" +
				                    std::to_string(s.duration);
			             return out;
		             }});

		k.push_back({"output.dir", false, [](RunConfig& c, std::string_view v) { c.output.dir = std::string(trim(v)); },
		             [](const RunConfig& c) { return c.output.dir; }});
		k.push_back({"run.seed", false, [](RunConfig& c, std::string_view v) { c.seed = to_u64(v); },
		             [](const RunConfig& c) { return std::to_string(c.seed); }});
		return k;
	}();
	return table;
}

const Key* find_key(std::string_view name)
{
	for (const auto& k : keys())
		if (k.name == name)
			return &k;
	return nullptr;
}

} // namespace

std::string format_double(double x)
{
	char buf[64];
	const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
	if (ec != std::errc())
		throw std::runtime_error("number formatting failed");
	return std::string(buf, ptr);
}

double parse_angle(std::string_view text)
{
	std::string_view s = trim(text);
	const auto pos = s.find("pi");
	if (pos == std::string_view::npos)
		return to_double(s);
	std::string_view coef = trim(s.substr(0, pos));
	std::string_view rest = trim(s.substr(pos + 2));
	if (!coef.empty() && coef.back() == '*')
		coef = trim(coef.substr(0, coef.size() - 1));
	double c = 1.0;
	if (coef == "-")
		c = -1.0;
	else if (coef == "+" || coef.empty())
		c = 1.0;
	else
		c = to_double(coef);
	double den = 1.0;
	double offset = 0.0;
	if (!rest.empty() && rest.front() == '/') {
		const auto sign = rest.find_first_of("+-", 1);
		den = to_double(rest.substr(1, sign == std::string_view::npos ? std::string_view::npos : sign - 1));
		if (den == 0.0)
			throw std::invalid_argument("angle divides by zero");
		rest = sign == std::string_view::npos ? std::string_view{} : trim(rest.substr(sign));
	}
	if (!rest.empty()) {
		if (rest.front() != '+' && rest.front() != '-')
			throw std::invalid_argument("malformed angle '" + std::string(s) + "'");
		offset = (rest.front() == '-' ? -1.0 : 1.0) * to_double(rest.substr(1));
	}
	return c * pi / den + offset;
}

void RunConfig::validate() const
{
	model_params().validate();
	if (system.n < 1)
		throw ConfigError("system.n must be a positive integer");
	if (dynamics.t_max < 1)
		throw ConfigError("dynamics.t_max must be >= 1");
	if (!std::isfinite(dynamics.theta) || !std::isfinite(dynamics.phi))
		throw ConfigError("initial-state angles must be finite");
	if (analysis.q.empty())
		throw ConfigError("analysis.q must list at least one value");
	for (int q : analysis.q)
		if (q < 1)
			throw ConfigError("analysis.q entries must be >= 1");
	if (analysis.burn_in < 0 || analysis.drop_transient < 0)
		throw ConfigError("burn_in and drop_transient must be non-negative");
	if (analysis.dos_bins < 8)
		throw ConfigError("analysis.dos_bins must be >= 8");
	if (!(analysis.cluster_tol > 0.0) || !(analysis.otoc_threshold >= 0.0))
		throw ConfigError("tolerances must be positive");
	if (analysis.sphere_points < 1)
		throw ConfigError("analysis.sphere_points must be positive");
	for (const SweepRange* r : {&sweep.lambda, &sweep.alpha}) {
		if (r->count < 1)
			throw ConfigError("sweep ranges need at least one point");
		if (!std::isfinite(r->min) || !std::isfinite(r->max) || r->max < r->min)
			throw ConfigError("sweep ranges must be finite with max >= min");
	}
	if (sweep.lambda.min < 0.0)
		throw ConfigError("sweep Lambda values must be non-negative");
	for (const auto& s : switching.schedule) {
		if (!std::isfinite(s.alpha_base))
			throw ConfigError("schedule angles must be finite");
		if (s.duration < 1)
			throw ConfigError("schedule durations must be >= 1");
	}
}

RunConfig parse_config(std::string_view text, std::string_view source)
{
	RunConfig cfg;
	std::set<std::string> seen;
	std::string section;
	std::size_t line_no = 0;
	std::size_t start = 0;
	auto fail = [&](const std::string& msg) {
		throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": " + msg);
	};
	while (start <= text.size()) {
		const auto end = text.find('\n', start);
		std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
		start = end == std::string_view::npos ? text.size() + 1 : end + 1;
		++line_no;
		if (const auto hash = line.find('#'); hash != std::string_view::npos)
			line = line.substr(0, hash);
		line = trim(line);
		if (line.empty())
			continue;
		if (line.front() == '[') {
			if (line.back() != ']')
				fail("unterminated section header");
			section = std::string(trim(line.substr(1, line.size() - 2)));
			if (section.empty())
				fail("empty section name");
			continue;
		}
		const auto eq = line.find('=');
		if (eq == std::string_view::npos)
			fail("expected 'key = value'");
		const std::string key(trim(line.substr(0, eq)));
		if (key.empty())
			fail("missing key before '='");
		if (section.empty())
			fail("key '" + key + "' appears before any [section]");
		const std::string name = section + "." + key;
		const Key* k = find_key(name);
		if (k == nullptr)
			fail("unknown key '" + name + "'");
		if (!seen.insert(name).second)
			fail("duplicate key '" + name + "'");
		try {
			k->set(cfg, line.substr(eq + 1));
		} catch (const std::invalid_argument& e) {
			fail("key '" + name + "': " + e.what());
		}
	}
	for (const auto& k : keys())
		if (k.required && !seen.contains(k.name))
			throw ConfigError(std::string(source) + ": missing required key '" + k.name + "'");
	try {
		cfg.validate();
	} catch (const std::invalid_argument& e) {
		throw ConfigError(std::string(source) + ": " + e.what());
	} catch (const ConfigError& e) {
		throw ConfigError(std::string(source) + ": " + e.what());
	}
	return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw IoError("cannot read config file '" + path.string() + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_config(buf.str(), path.string());
}

std::string format_config(const RunConfig& config)
{
	std::string out;
	std::string section;
	for (const auto& k : keys()) {
		const auto dot = k.name.find('.');
		const std::string sec = k.name.substr(0, dot);
		if (sec != section) {
			out += (section.empty() ? "" : "\n") + std::string("[") + sec + "]\n";
			section = sec;
		}
		out += k.name.substr(dot + 1) + " = " + k.get(config) + "\n";
	}
	return out;
}

void apply_override(RunConfig& config, std::string_view assignment)
{
	const auto eq = assignment.find('=');
	if (eq == std::string_view::npos)
		throw ConfigError("override '" + std::string(assignment) + "' is not section.key=value");
	const std::string name(trim(assignment.substr(0, eq)));
	const Key* k = find_key(name);
	if (k == nullptr)
		throw ConfigError("override names unknown key '" + name + "'");
	try {
		k->set(config, assignment.substr(eq + 1));
		config.validate();
	} catch (const std::invalid_argument& e) {
		throw ConfigError("override '" + name + "': " + e.what());
	}
}

void check_caps(const RunConfig& config, Workload workload, bool big, const SizeCaps& caps)
{
	if (big)
		return;
	const std::string hint = " (pass --big to acknowledge a larger run)";
	if (workload == Workload::dynamics && config.system.n > caps.max_dynamics_n)
		throw ConfigError("N = " + std::to_string(config.system.n) + " exceeds the dynamics cap " +
		                  std::to_string(caps.max_dynamics_n) + hint);
	if (workload == Workload::sweep) {
		if (config.sweep.lambda.count > caps.max_grid_side || config.sweep.alpha.count > caps.max_grid_side)
			throw ConfigError("sweep grid exceeds " + std::to_string(caps.max_grid_side) + "x" +
			                  std::to_string(caps.max_grid_side) + hint);
		const long ncap =
		    config.sweep.diagnostic == Diagnostic::otoc ? caps.max_otoc_sweep_n : caps.max_dynamics_n;
		if (config.sweep.diagnostic != Diagnostic::gmeasure && config.system.n > ncap)
			throw ConfigError("N = " + std::to_string(config.system.n) + " exceeds the sweep cap " +
			                  std::to_string(ncap) + hint);
	}
}

} // namespace kpspin
