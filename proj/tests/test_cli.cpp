#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

// Exit-code contract and output stability of the command-line front end.

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args, bool raw_command = false) {
    std::string cmd = raw_command
                          ? args + " 2>/dev/null"
                          : std::string(KUMMERLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const char* kGoldenSpec =
    "'{\"a\":[0,7,11,13,17,19],\"b\":[1,2,3,5,23,690],\"M\":[7,11,13,17,19]}'";

}  // namespace

TEST_CASE("hilbert subcommand") {
    auto r = run_cli("hilbert -a 2 -b 3 -v 3");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["symbol"] == -1);
    CHECK(j["schema"] == "kummerlab/1");

    CHECK(run_cli("hilbert -a 1 -b 5 -v inf").code == 0);
}

TEST_CASE("selmer subcommand and determinism") {
    auto r = run_cli("selmer '{\"c\":[0,1,-1],\"d\":1}'");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["dim"] == 2);
    CHECK(j["basis"].size() == 2);

    auto again = run_cli("selmer '{\"c\":[0,1,-1],\"d\":1}'");
    CHECK(again.out == r.out);  // byte-for-byte stable
}

TEST_CASE("exit code 0: accepted kummer-check") {
    auto r = run_cli(std::string("kummer-check ") + kGoldenSpec);
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["accept"] == true);
}

TEST_CASE("exit code 1: mathematical rejection") {
    auto r = run_cli(
        "kummer-check '{\"a\":[0,7,11,13,17,19],\"b\":[1,2,3,5,30,1],"
        "\"M\":[7,11,13,17,19]}'");
    CHECK(r.code == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["accept"] == false);
    CHECK(j["violated_condition"] == "nondegenerate_ratios");

    auto ts = run_cli(
        "two-structure '{\"curves\":[{\"c\":[0,9,1]}],\"M\":[3,17],\"extended\":false}'");
    CHECK(ts.code == 1);

    // insoluble at infinity: definite rejection
    auto els = run_cli(
        "kummer-els '{\"a\":[0,1,2,3,4,5],\"b\":[-1,1,-1,1,-1,1]}'");
    CHECK(els.code == 1);
    auto ej = nlohmann::json::parse(els.out);
    CHECK(ej["els"] == false);
    CHECK(ej["failing_place"] == "inf");
}

TEST_CASE("exit code 2: malformed input") {
    CHECK(run_cli("selmer '{\"c\": [0, 1'").code == 2);
    CHECK(run_cli("selmer '{\"c\":[0,1]}'").code == 2);  // wrong arity
    CHECK(run_cli("selmer '{\"c\":[0,0,1]}'").code == 2);  // repeated roots
    CHECK(run_cli("kummer-build '{\"a\":[0,1,2,3,4,5],\"b\":[0,1,1,1,1,1]}'").code == 2);
}

TEST_CASE("exit code 3: undecided / exhausted search") {
    auto r = run_cli("find-prime '{\"conditions\":[[3,-1]],\"bound\":4}'");
    CHECK(r.code == 3);
}

TEST_CASE("find-prime and inconsistent conditions") {
    auto r = run_cli("find-prime '{\"conditions\":[[3,-1],[5,1]],\"bound\":1000}'");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["prime"] == 19);

    auto bad = run_cli("find-prime '{\"conditions\":[[2,1],[3,1],[6,-1]],\"bound\":1000}'");
    CHECK(bad.code == 1);  // no such Frobenius: mathematical rejection
}

TEST_CASE("kummer-build pinned forms") {
    auto r = run_cli("kummer-build '{\"a\":[0,1,2,3,4,5],\"b\":[1,1,1,1,1,1]}'");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["forms"][0] == nlohmann::json::parse("[1,-5,10,-10,5,-1]"));
    CHECK(j["forms"][1] == nlohmann::json::parse("[0,1,-4,6,-4,1]"));
    CHECK(j["forms"][2] == nlohmann::json::parse("[0,1,-8,18,-16,5]"));
}

TEST_CASE("search-point subcommand") {
    auto r = run_cli("search-point '{\"a\":[0,1,2,3,4,5],\"b\":[1,1,1,1,1,1]}' --height 1");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["found"] == true);
    CHECK(j["point"] == nlohmann::json::parse("[1,1,1,1,1,1]"));

    auto none = run_cli(
        "search-point '{\"a\":[0,1,2,3,4,5],\"b\":[-1,1,-1,1,-1,1]}' --height 2");
    CHECK(none.code == 1);
}

TEST_CASE("mazur-rubin and twist-scan") {
    auto r = run_cli(
        "mazur-rubin '{\"curve\":{\"c\":[0,3,10]},\"d\":17,\"T\":[3,5,7,17]}'");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["gap"].get<int>() % 2 == 0);
    CHECK(j["dim_VT"].get<int>() + j["dim_VT_twist"].get<int>() <= j["r"].get<int>());

    auto scan = run_cli(
        "--tsv twist-scan '{\"curve\":{\"c\":[0,1,-1]},\"from\":1,\"to\":6}'");
    CHECK(scan.code == 0);
    // squarefree twists 1,2,3,5,6 - one TSV row each
    int lines = 0;
    for (char c : scan.out)
        if (c == '\n') ++lines;
    CHECK(lines == 5);
}

TEST_CASE("twist-scan is deterministic across thread counts") {
    std::string args = "twist-scan '{\"curve\":{\"c\":[0,1,-1]},\"from\":1,\"to\":20}'";
    auto one = run_cli("KUMMERLAB_THREADS=1 " + std::string(KUMMERLAB_CLI_PATH) + " " + args,
                       true);
    auto two = run_cli("KUMMERLAB_THREADS=2 " + std::string(KUMMERLAB_CLI_PATH) + " " + args,
                       true);
    CHECK(one.code == 0);
    CHECK(one.out == two.out);
}

TEST_CASE("admissible subcommand") {
    auto r = run_cli(
        "admissible '{\"curves\":[{\"c\":[0,3,10]}],\"M\":[5,7],\"alpha\":[[1,1]]}'");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["admissible"] == true);
}

TEST_CASE("two-structure accept with certificates") {
    auto r = run_cli(
        "two-structure '{\"curves\":[{\"c\":[0,3,10]}],\"M\":[3,5,7],\"extended\":true}'");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["accept"] == true);
    CHECK(j["certificates"].size() == 3);

    // genus-2 input shape
    auto g2 = run_cli(
        "two-structure '{\"a\":[0,7,11,13,17,19],\"M\":[7,11,13,17,19]}'");
    CHECK(g2.code == 0);
    CHECK(nlohmann::json::parse(g2.out)["accept"] == true);
}

TEST_CASE("file input works like inline JSON") {
    std::string path = "/tmp/kummerlab_cli_spec.json";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs("{\"a\":[0,7,11,13,17,19],\"b\":[1,2,3,5,23,690],\"M\":[7,11,13,17,19]}",
              f);
        fclose(f);
    }
    auto r = run_cli("kummer-check " + path);
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["accept"] == true);
    std::remove(path.c_str());
}
