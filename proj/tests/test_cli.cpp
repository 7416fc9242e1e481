#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"

#ifndef OMONOID_BIN
#error "OMONOID_BIN must point at the CLI binary"
#endif
#ifndef OMONOID_GOLDEN_DIR
#error "OMONOID_GOLDEN_DIR must point at the golden files"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI through the shell; `redirect` chooses which stream is
// captured.
RunResult run_cli(const std::string& args, const std::string& redirect = "2>/dev/null") {
    const std::string cmd = std::string(OMONOID_BIN) + " " + args + " " + redirect;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("cli reproduces the reference outputs") {
    auto gens = run_cli("generators harmonic --d 12 --theta 3/5");
    CHECK(gens.exit_code == 0);
    CHECK(gens.output == "12 19 28 34 42 45 49 51\n");

    auto golden = run_cli("enumerate golden-fractal --bound 2 --digits 4");
    CHECK(golden.exit_code == 0);
    CHECK(golden.output == "0.0000 1.0000 1.6180 2.0000\n");

    auto counts = run_cli("genus-count --gmax 7");
    CHECK(counts.exit_code == 0);
    CHECK(counts.output.find("7,39\n") != std::string::npos);
    CHECK(counts.output.substr(0, 8) == "g,n_g\n0,");

    auto fc = run_cli("floor-check --scale 12 --theta 3/5 --source logarithmic --target harmonic --n 100");
    CHECK(fc.exit_code == 0);
    CHECK(fc.output == "true\n");

    auto cls = run_cli("classify 3/2 5/2 7/2 --verify-bound 20");
    CHECK(cls.exit_code == 0);
    CHECK(cls.output == "scaled lambda=1/2 generators=3,5,7 verified=true\n");

    auto tempered = run_cli("classify 1 'log2(3)'");
    CHECK(tempered.exit_code == 0);
    CHECK(tempered.output == "tempered witness=(1, log2(3)) reason=incommensurable-pair\n");

    auto compat = run_cli("product-compat logarithmic --N 20");
    CHECK(compat.output == "true\n");
    auto incompat = run_cli("product-compat golden-fractal --N 5");
    CHECK(incompat.output == "false\n");

    auto harmonic_cls = run_cli("classify harmonic --d 12 --theta 3/5 --verify-bound 60");
    CHECK(harmonic_cls.exit_code == 0);
    CHECK(harmonic_cls.output ==
          "scaled lambda=1 generators=12,19,28,34,42,45,49,51 verified=true\n");

    auto family_cls = run_cli("classify logarithmic");
    CHECK(family_cls.output.find("reason=infinite-generating-set") != std::string::npos);
}

TEST_CASE("identical argv yields byte-identical stdout") {
    const std::array<const char*, 5> invocations = {
        "enumerate pythagorean --bound 6 --exact",
        "genus-count --gmax 10 --threads 1",
        "genus-count --gmax 10 --threads 4",
        "footprint 4 5 --bound 40",
        "pythagorean --fifths 12",
    };
    const auto first = run_cli(invocations[0]);
    CHECK(first.output == run_cli(invocations[0]).output);
    // Thread count must not affect the counts.
    CHECK(run_cli(invocations[1]).output == run_cli(invocations[2]).output);
    for (const char* argv : {invocations[3], invocations[4]}) {
        CHECK(run_cli(argv).output == run_cli(argv).output);
    }
}

TEST_CASE("usage errors exit 2, domain errors exit 3 with a stable name") {
    CHECK(run_cli("enumerate --bound 5").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("enumerate bogus --bound 5").exit_code == 2);

    auto not_coprime = run_cli("genus-count --gmax 50", "2>&1 1>/dev/null");
    CHECK(not_coprime.exit_code == 3);
    CHECK(not_coprime.output.find("CeilingExceeded") == 0);

    auto incomparable = run_cli("enumerate phi 'log2(3)' --bound 5", "2>&1 1>/dev/null");
    CHECK(incomparable.exit_code == 3);
    CHECK(incomparable.output.find("IncomparableKinds") == 0);
}

TEST_CASE("element cap comes from the environment") {
    // popen runs through sh, so the variable can lead the command line.
    const std::string cmd = std::string("OMONOID_ELEMENT_CAP=5 ") + OMONOID_BIN +
                            " enumerate naturals --bound 100 2>&1 1>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult capped;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) capped.output.append(buf.data(), n);
    const int status = pclose(pipe);
    capped.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    CHECK(capped.exit_code == 3);
    CHECK(capped.output.find("BoundTooLargeForBudget") == 0);

    auto flag_capped = run_cli("--cap 5 enumerate naturals --bound 100", "2>&1 1>/dev/null");
    CHECK(flag_capped.exit_code == 3);
    CHECK(flag_capped.output.find("BoundTooLargeForBudget") == 0);
}

TEST_CASE("export-scl writes the golden bytes") {
    const std::string out = "cli_test_edo.scl";
    auto res = run_cli("export-scl edo:12 --out " + out);
    CHECK(res.exit_code == 0);
    CHECK(read_file(out) == read_file(std::string(OMONOID_GOLDEN_DIR) + "/edo_12.scl"));
    std::remove(out.c_str());

    const std::string out2 = "cli_test_pyth.scl";
    CHECK(run_cli("export-scl pythagorean:12 --out " + out2).exit_code == 0);
    CHECK(read_file(out2) == read_file(std::string(OMONOID_GOLDEN_DIR) + "/pythagorean_12.scl"));
    std::remove(out2.c_str());
}

TEST_CASE("json output carries exact forms") {
    auto res = run_cli("enumerate pythagorean --bound 3 --format json");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"loglin\"") != std::string::npos);
    CHECK(res.output.find("\"bound\"") != std::string::npos);

    auto harm = run_cli("harmonic --d 12 --theta 3/5 --format json");
    CHECK(harm.exit_code == 0);
    CHECK(harm.output.find("\"closed\": true") != std::string::npos);
    CHECK(harm.output.find("51") != std::string::npos);
}
