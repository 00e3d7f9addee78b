#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the CLI with the given arguments; stdout is captured, stderr is
// captured only when requested.
Run cli(const std::string& args, bool capture_stderr = false) {
    const std::string cmd = std::string(S3VM_CLI_PATH) + " " + args + (capture_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("s3vm_cli_" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("usage errors exit 1, help exits 0") {
    CHECK(cli("").code == 1);
    CHECK(cli("bench --repeats 2 --out x.tsv").code == 1);
    CHECK(cli("run --data x.csv --bogus 1").code == 1);
    const Run missing = cli("bench --out x.tsv", true);
    CHECK(missing.out.find("--data") != std::string::npos);
    for (const char* sub : {"gen", "run", "bench", "sweep"}) {
        const Run h = cli(std::string(sub) + " --help");
        CHECK(h.code == 0);
        CHECK(h.out.find("--seed") != std::string::npos);
    }
}

TEST_CASE("gen then run prints five method rows; missing files exit 2") {
    TempDir tmp;
    const auto data = (tmp.path / "moons.csv").string();
    REQUIRE(cli("gen --variant three --n 100 --noise 0.08 --seed 7 --out " + data).code == 0);
    const Run r = cli("run --data " + data + " --labeled 6 --kernel gaussian --preset uci10 --seed 1");
    CHECK(r.code == 0);
    for (const char* m : {"SVM", "TSVM", "S3VM-c", "S3VM-p", "S3VM-us"}) CHECK(r.out.find(m) != std::string::npos);
    CHECK(cli("run --data " + (tmp.path / "nope.csv").string()).code == 2);
}

TEST_CASE("sweep writes one row per epsilon; bench is byte-identical across runs") {
    TempDir tmp;
    const auto data = (tmp.path / "two.csv").string();
    REQUIRE(cli("gen --variant two --n 40 --noise 0.1 --seed 3 --out " + data).code == 0);

    const auto sweep = tmp.path / "sweep.tsv";
    REQUIRE(cli("sweep --data " + data + " --labeled 4 --k 8 --repeats 3 --epsilons 0.1,0.2,0.3 --out " + sweep.string())
                .code == 0);
    CHECK(count_lines(slurp(sweep)) == 4);  // header plus three rows

    const std::string common = "bench --data " + data + " --labeled 4 --k 8 --repeats 6 --kernel linear,gaussian --seed 5";
    const auto a = tmp.path / "a.tsv", b = tmp.path / "b.tsv";
    REQUIRE(cli(common + " --out " + a.string()).code == 0);
    REQUIRE(cli(common + " --threads 3 --out " + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}
