#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

using std::string;

namespace {

struct RunResult {
    int code;
    string out;
};

RunResult run_cli(const string& args) {
    string cmd = string(MANYPOINTS_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("pinned outputs") {
    auto r = run_cli("curve places --spec \"pline p=2 k=1\" --d 3");
    CHECK(r.code == 0);
    CHECK(r.out == "{\n  \"n_d\": 2\n}\n");

    auto gs = run_cli("bounds gs --ell 2 --q 5 --r 5 --s 1");
    CHECK(gs.code == 0);
    CHECK(gs.out.find("\"satisfied\": true") != string::npos);
    CHECK(gs.out.find("\"lhs\": \"9/4\"") != string::npos);
    CHECK(gs.out.find("\"rhs\": \"2\"") != string::npos);

    auto c62 = run_cli("bounds formula --which cor62 --q 9");
    CHECK(c62.code == 0);
    CHECK(c62.out.find("\"value\": \"1.226") != string::npos);
}

TEST_CASE("byte-identical reruns") {
    for (const char* cmd : {
             "curve info --spec \"hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]\"",
             "cover build --spec \"pline p=3 k=1\" --h 2",
             "bounds table --q 3 --gmax 6 --format csv",
             "jac structure --spec \"hyperelliptic p=3 k=1 f=[0,1,0,1] h=[]\"",
         }) {
        auto a = run_cli(cmd);
        auto b = run_cli(cmd);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("cover build then twist through a pipe") {
    string cmd = string(MANYPOINTS_CLI_PATH) +
                 " cover build --spec \"pline p=3 k=1\" --h 1 | " +
                 string(MANYPOINTS_CLI_PATH) + " cover twist --cover -";
    std::array<char, 4096> buf{};
    string out;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(out.find("\"kind\": \"kummer\"") != string::npos);
    CHECK(out.find("\"genus\": 1") != string::npos);
}

TEST_CASE("exit codes") {
    // usage error: unknown subcommand
    CHECK(run_cli("frobnicate").code != 0);
    // parse error in a curve spec: exit 1
    CHECK(run_cli("curve info --spec \"nonsense p=3 k=1\"").code == 1);
    // domain error: exit 2 with machine-readable body
    auto r = run_cli("oracle nq --q 7 --g 1");
    CHECK(r.code == 2);
    CHECK(r.out.find("\"error\": \"BudgetExceeded\"") != string::npos);
    auto r2 = run_cli("curve count --spec \"hyperelliptic p=3 k=1 f=[0,0,0,1] h=[]\" --m 1");
    CHECK(r2.code == 2);
    CHECK(r2.out.find("\"error\": \"SingularModel\"") != string::npos);
}

TEST_CASE("help text enumerates every subcommand group") {
    auto r = run_cli("--help");
    for (const char* name : {"curve", "jac", "cover", "bounds", "oracle"})
        CHECK(r.out.find(name) != string::npos);
    for (auto [grp, subs] : {std::pair<const char*, const char*>{"curve", "info"},
                             {"curve", "count"},
                             {"curve", "places"},
                             {"jac", "structure"},
                             {"cover", "build"},
                             {"cover", "twist"},
                             {"cover", "split"},
                             {"cover", "nrank"},
                             {"bounds", "table"},
                             {"bounds", "gs"},
                             {"bounds", "serre"},
                             {"bounds", "formula"},
                             {"oracle", "nq"},
                             {"oracle", "golden"}}) {
        auto sub = run_cli(string(grp) + " --help");
        CHECK(sub.out.find(subs) != string::npos);
    }
}

TEST_CASE("jobs fan-out leaves output unchanged") {
    string base = "curve count --spec \"hyperelliptic p=5 k=1 f=[0,1,0,0,0,1] h=[]\" --m 5";
    auto serial = run_cli(base);
    auto par = run_cli("--jobs 4 " + base);
    CHECK(serial.code == 0);
    CHECK(serial.out == par.out);
}
