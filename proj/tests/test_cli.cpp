#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include "support/temp_dir.hpp"

#ifndef ALIASMINE_BIN
#error "ALIASMINE_BIN must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult result;
    std::string cmd = std::string(ALIASMINE_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = ::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.out.append(buf.data(), n);
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

int count_lines(const std::string& s) {
    int lines = 0;
    for (char c : s)
        if (c == '\n')
            ++lines;
    return lines;
}

}  // namespace

TEST_CASE("no arguments prints usage and exits 1") {
    RunResult r = run("");
    CHECK(r.exit_code == 1);
}

TEST_CASE("unknown subcommand exits 1") {
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("stats top-commands --bogus-flag").exit_code == 1);
}

TEST_CASE("scan, stats, classify, export work end to end") {
    aliasmine::testutil::TempDir dir;
    dir.write("dots/.bashrc",
              "alias gs='git status'\nalias gd='git diff'\nalias ll='ls -l'\n"
              "alias mv='mv -i'\nalias ducks='du -cksh * | sort -hr | head -n 15'\n");
    std::string store = (dir.path() / "store.json").string();

    RunResult scanned =
        run("scan " + (dir.path() / "dots").string() + " --store " + store);
    CHECK(scanned.exit_code == 0);
    CHECK(scanned.out.find("aliases_parsed=5") != std::string::npos);

    RunResult top = run("stats top-commands --top 5 --store " + store);
    CHECK(top.exit_code == 0);
    CHECK(count_lines(top.out) == 6);  // header + 5 rows: git,ls,du,sort,head,mv -> top 5
    CHECK(top.out.substr(0, 22) == "command,count,percent\n");

    // determinism: identical bytes on a second run
    CHECK(run("stats top-commands --top 5 --store " + store).out == top.out);

    RunResult classified = run("classify --store " + store);
    CHECK(classified.exit_code == 0);

    RunResult practices = run("stats practices --store " + store);
    CHECK(practices.exit_code == 0);
    CHECK(practices.out.find("OverridingDefaults") != std::string::npos);

    RunResult exported = run("export --what aliases --format jsonl --out - --store " + store);
    CHECK(exported.exit_code == 0);
    CHECK(count_lines(exported.out) == 5);
    CHECK(exported.out.find("\"name\":\"gs\"") != std::string::npos);

    RunResult csv = run("export --what aliases --format csv --out - --store " + store);
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("file,line,name,value,n_commands,mid_line\n") == 0);
}

TEST_CASE("suggest build and fix round trip through the CLI") {
    aliasmine::testutil::TempDir dir;
    std::string dotfile;
    for (int i = 0; i < 6; ++i)
        dotfile += "alias agi" + std::to_string(i) + "='sudo apt-get install'\n";
    dir.write("dots/.bashrc", dotfile);
    std::string store = (dir.path() / "store.json").string();
    std::string rules = (dir.path() / "rules.jsonl").string();

    CHECK(run("scan " + (dir.path() / "dots").string() + " --store " + store).exit_code == 0);
    CHECK(run("suggest build --store " + store + " --out " + rules).exit_code == 0);

    RunResult fix = run("suggest fix --rules " + rules + " -- apt-get install vim");
    CHECK(fix.exit_code == 0);
    CHECK(fix.out.find("sudo apt-get install vim") != std::string::npos);
}

TEST_CASE("harvest plan prints the documented query format") {
    RunResult r = run("harvest plan --term alias --max-size 300 --step 100");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("alias language:Shell size:101..200") != std::string::npos);
    CHECK(count_lines(r.out) == 4);  // header + 3 ranges
}

TEST_CASE("harvest run against the simulator reports coverage") {
    aliasmine::testutil::TempDir dir;
    std::string store = (dir.path() / "store.json").string();
    RunResult r = run("harvest run --backend sim --population 300 --max-size 1000 "
                      "--step 200 --seed 9 --store " + store);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("coverage=1") != std::string::npos);

    RunResult top = run("stats top-names --top 3 --store " + store);
    CHECK(top.exit_code == 0);
    CHECK(count_lines(top.out) >= 2);
}

TEST_CASE("missing store is a user error") {
    CHECK(run("stats top-commands").exit_code == 1);
    CHECK(run("classify --store /nonexistent/store.json").exit_code == 1);
}

TEST_CASE("kb-dir override changes classification") {
    aliasmine::testutil::TempDir dir;
    dir.write("dots/.bashrc", "alias mt='mytool frob'\n");
    dir.write("kb/subcommand_commands.txt", "mytool\n");
    dir.write("kb/known_commands.txt", "mytool\n");
    std::string store = (dir.path() / "store.json").string();

    CHECK(run("scan " + (dir.path() / "dots").string() + " --store " + store).exit_code == 0);
    CHECK(run("classify --store " + store + " --kb-dir " + (dir.path() / "kb").string())
              .exit_code == 0);
    RunResult labels = run("export --what labels --format csv --out - --store " + store);
    CHECK(labels.out.find("AbbreviatingSubcommands") != std::string::npos);

    // default kb does not know mytool, so no abbreviation label
    CHECK(run("classify --store " + store).exit_code == 0);
    RunResult relabeled = run("export --what labels --format csv --out - --store " + store);
    CHECK(relabeled.out.find("AbbreviatingSubcommands") == std::string::npos);
}
