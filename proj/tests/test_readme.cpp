// Executes every CLI invocation shown in the README: each line of a fenced
// code block starting with "$ manypoints" must exit 0.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

TEST_CASE("every README command runs") {
    std::ifstream in(MANYPOINTS_README);
    REQUIRE(in.good());
    std::vector<std::string> commands;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find("$ manypoints ");
        if (pos == std::string::npos) continue;
        commands.push_back(line.substr(pos + std::string("$ manypoints ").size()));
    }
    REQUIRE(!commands.empty());
    for (auto& args : commands) {
        CAPTURE(args);
        std::string cmd = std::string(MANYPOINTS_CLI_PATH) + " " + args +
                          " > /dev/null 2>/dev/null";
        int status = std::system(cmd.c_str());
        CHECK(WEXITSTATUS(status) == 0);
    }
}
