#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entroscope/cli.hpp"

using namespace entroscope;
using Json = nlohmann::json;

namespace {

CommandResult run(std::initializer_list<std::string> args) {
    return run_command(std::vector<std::string>(args));
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("gamma command emits the fixed csv schema") {
    CommandResult r = run({"gamma", "--lang", "anbncn", "--n-max", "6", "--prefix-bound", "16",
                           "--format", "csv"});
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,mode,gamma,exact,saturated,prefix_bound,lower_bound,upper_bound");
    CHECK(count_lines(r.output) == 8);  // header + rows for n = 0..6

    std::uint64_t prev = 0;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find(',');
        auto second = line.find(',', first + 1);
        auto third = line.find(',', second + 1);
        std::uint64_t gamma = std::stoull(line.substr(second + 1, third - second - 1));
        CHECK(gamma >= prev);
        prev = gamma;
    }
}

TEST_CASE("entropy command reports the dyck(2) slope window") {
    CommandResult r = run({"entropy", "--lang", "dyck:2", "--n-max", "8"});
    REQUIRE(r.exit_code == 0);
    Json doc = Json::parse(r.output);
    double slope = doc["entropy"]["slope"].get<double>();
    CHECK(slope >= 0.8);
    CHECK(slope <= 1.8);
    CHECK(doc["entropy"]["verdict"] == "positive-finite");
    CHECK(doc["partial"] == false);
}

TEST_CASE("growth command approaches the free-group limit") {
    CommandResult r = run({"growth", "--group", "free:2", "--n-max", "6"});
    REQUIRE(r.exit_code == 0);
    Json doc = Json::parse(r.output);
    auto ratios = doc["growth"]["log2_ratios"].get<std::vector<double>>();
    REQUIRE(!ratios.empty());
    CHECK(std::abs(ratios.back() - 1.585) < 0.2);
}

TEST_CASE("identical invocations produce identical bytes") {
    std::vector<std::string> args{"report", "--lang", "dyck:1", "--n-max", "6", "--seed", "9"};
    CommandResult a = run_command(args);
    CommandResult b = run_command(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);

    CommandResult c = run({"dim", "--lang", "palin:ab", "--n-max", "5", "--prefix-bound", "8"});
    CommandResult d = run({"dim", "--lang", "palin:ab", "--n-max", "5", "--prefix-bound", "8"});
    REQUIRE(c.exit_code == 0);
    CHECK(c.output == d.output);
}

TEST_CASE("input errors exit with status 2 before any computation") {
    CHECK(run({"gamma", "--lang", "nope:1", "--n-max", "3"}).exit_code == 2);
    CHECK(run({"gamma", "--n-max", "3"}).exit_code == 2);
    CHECK(run({"gamma", "--lang", "dyck:1", "--n-max", "3", "--mode", "sideways"}).exit_code == 2);
    CHECK(run({"growth", "--group", "solvable:2", "--n-max", "4"}).exit_code == 2);
    CHECK(run({"frobnicate"}).exit_code == 2);
}

TEST_CASE("budget exhaustion exits 3 and marks the document partial") {
    CommandResult r = run({"gamma", "--lang", "palin:ab", "--n-max", "4", "--prefix-bound", "10",
                           "--budget", "100"});
    CHECK(r.exit_code == 3);
    Json doc = Json::parse(r.output);
    CHECK(doc["partial"] == true);
}

TEST_CASE("dfa specs load from files") {
    std::string path = "cli_test_mod3.json";
    {
        std::ofstream out(path);
        out << R"({"alphabet":["a","b"],"states":3,"initial":0,"accepting":[0],
                   "transitions":[[1,0],[2,1],[0,2]]})";
    }
    CommandResult r = run({"entropy", "--lang", "dfa:" + path, "--n-max", "6"});
    std::remove(path.c_str());
    INFO(r.diagnostics);
    REQUIRE(r.exit_code == 0);
    Json doc = Json::parse(r.output);
    CHECK(doc["entropy"]["verdict"] == "zero");
    auto records = doc["gamma_table"]["records"];
    CHECK(records[4]["gamma"] == 3);
}

TEST_CASE("combinator specs run end to end") {
    CommandResult r = run({"gamma", "--lang", "and(palin:ab,not(countdiff:a,b,0))", "--n-max",
                           "3", "--prefix-bound", "8"});
    REQUIRE(r.exit_code == 0);
    Json doc = Json::parse(r.output);
    CHECK(doc["gamma_table"]["records"].size() == 4);

    // operand alphabets must agree
    CHECK(run({"gamma", "--lang", "and(palin:ab,dyck:1)", "--n-max", "2"}).exit_code == 2);
}

TEST_CASE("exact mode flows through the gamma command") {
    CommandResult r = run({"gamma", "--lang", "dyck:2", "--n-max", "4", "--mode", "exact",
                           "--format", "csv"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("exact") != std::string::npos);
    // the n=4 row carries the 2^n lower bound from the pairing argument
    CHECK(r.output.find("4,exact,32,true,true") != std::string::npos);
}

TEST_CASE("cover-entropy command cross-checks against rows") {
    CommandResult r = run({"cover-entropy", "--lang", "dyck:1", "--n-max", "4",
                           "--prefix-bound", "8"});
    REQUIRE(r.exit_code == 0);
    Json doc = Json::parse(r.output);
    CHECK(doc["matches_entropy"] == true);
    auto counts = doc["cover_entropy"]["counts"].get<std::vector<std::uint64_t>>();
    REQUIRE(counts.size() == 5);
    CHECK(counts[1] == 3);
    CHECK(counts[4] == 6);
}
