#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
	int code;
	std::string out;
};

Run run(const std::string& args)
{
	const std::string cmd = std::string(KPSPIN_CLI_PATH) + " " + args + " 2>/dev/null";
	FILE* pipe = popen(cmd.c_str(), "r");
	REQUIRE(pipe != nullptr);
	std::string out;
	char buf[512];
	while (std::fgets(buf, sizeof buf, pipe) != nullptr)
		out += buf;
	const int status = pclose(pipe);
	return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch()
{
	const auto dir = fs::temp_directory_path() / "kpspin_cli_test";
	fs::remove_all(dir);
	fs::create_directories(dir);
	return dir;
}

void write(const fs::path& p, const std::string& text)
{
	std::ofstream(p) << text;
}

} // namespace

TEST_CASE("critical points row")
{
	const auto r = run("critical-points --p 4");
	CHECK(r.code == 0);
	CHECK(r.out.rfind("p,Z_spino,W_spino,Z_GS,W_GS,Z_DQPT,W_DQPT\n4,", 0) == 0);
	CHECK(r.out.find(",3.375,") != std::string::npos);
	CHECK(run("critical-points --p 1").code == 1);
}

TEST_CASE("exit codes")
{
	const auto dir = scratch();
	write(dir / "bad.ini", "[model]\nlambda = 0.7\n[system]\nn = 16\n");
	write(dir / "ok.ini", "[model]\np = 2\nlambda = 0.7\n[system]\nn = 16\n[dynamics]\nt_max = 32\n");
	CHECK(run("--config " + (dir / "bad.ini").string() + " evolve").code == 1);
	CHECK(run("--config " + (dir / "missing.ini").string() + " evolve").code == 3);
	const std::string out = " --out " + (dir / "res").string();
	CHECK(run("--config " + (dir / "ok.ini").string() + out + " evolve").code == 0);
	CHECK(fs::exists(dir / "res" / "evolve.csv"));
	CHECK(fs::exists(dir / "res" / "evolve.meta.json"));
	CHECK(run("--config " + (dir / "ok.ini").string() + out + " evolve").code == 3);
	CHECK(run("--config " + (dir / "ok.ini").string() + out + " --force evolve").code == 0);
	CHECK(run("--config " + (dir / "ok.ini").string() + " --set system.n=4096 evolve").code == 1);
	CHECK(run("--config " + (dir / "ok.ini").string() + " --set model.nope=1 evolve").code == 1);
	CHECK(run("--config " + (dir / "ok.ini").string() + out + " --set analysis.burn_in=100 --force otoc").code ==
	      1);
	fs::remove_all(dir);
}

TEST_CASE("sweep output through the CLI")
{
	const auto dir = scratch();
	write(dir / "s.ini", "[model]\np = 2\nlambda = 0.7\n[system]\nn = 16\n[sweep]\nenabled = true\n"
	                     "lambda_count = 3\nalpha_count = 2\n");
	const std::string base = "--config " + (dir / "s.ini").string() + " --out ";
	CHECK(run(base + (dir / "a").string() + " --threads 1 rtilde").code == 0);
	CHECK(run(base + (dir / "b").string() + " --threads 2 rtilde").code == 0);
	auto slurp = [](const fs::path& p) {
		std::ifstream in(p);
		std::ostringstream s;
		s << in.rdbuf();
		return s.str();
	};
	const auto a = slurp(dir / "a" / "rtilde.csv");
	CHECK(a.rfind("q,Lambda,alpha,rbar,rtilde,error\n", 0) == 0);
	CHECK(a == slurp(dir / "b" / "rtilde.csv"));
	fs::remove_all(dir);
}
