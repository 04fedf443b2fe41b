#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phibound/cli.hpp"

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = phibound::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TEST_CASE("eval emits one row") {
    const Result r = run_cli({"eval", "--bound", "polya", "--x", "0"});
    CHECK(r.status == 0);
    CHECK(r.out ==
          "x,bound,kind,reference,error,out_of_validity\n"
          "0,0.5,polya,0.5,0,false\n");
    CHECK(r.err.empty());
}

TEST_CASE("byte-identical output across runs") {
    const std::vector<std::string> argv = {"table"};
    const Result a = run_cli(argv);
    const Result b = run_cli(argv);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);

    const Result c = run_cli({"maxerr", "--bound", "eidous"});
    const Result d = run_cli({"maxerr", "--bound", "eidous"});
    CHECK(c.out == d.out);
}

TEST_CASE("table csv round-trips at 17 significant digits") {
    const Result r = run_cli({"table"});
    CHECK(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 1 + 31 * 8);
    CHECK(lines[0] == "x,bound,kind,reference,error,out_of_validity");

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 6);
        // Parsing and re-serializing reproduces the text exactly.
        for (std::size_t j : {0UL, 1UL, 3UL, 4UL}) {
            CHECK(fmt17(std::strtod(fields[j].c_str(), nullptr)) == fields[j]);
        }
        const double bound = std::strtod(fields[1].c_str(), nullptr);
        const double reference = std::strtod(fields[3].c_str(), nullptr);
        const double error = std::strtod(fields[4].c_str(), nullptr);
        CHECK(error == bound - reference);
        CHECK((fields[5] == "true" || fields[5] == "false"));
    }

    // bercu rows beyond validity carry the flag; everything else does not.
    int flagged = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        if (fields[5] == "true") {
            ++flagged;
            CHECK(fields[2] == "bercu");
            CHECK(std::strtod(fields[0].c_str(), nullptr) >= 6.5);
        }
    }
    CHECK(flagged == 5);
}

TEST_CASE("table jsonlines") {
    const Result r = run_cli({"table", "--format", "jsonlines"});
    CHECK(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 31 * 8);
    const auto first = nlohmann::json::parse(lines.front());
    CHECK(first["x"] == 0.1);
    CHECK(first["kind"] == "kouba");
    CHECK(first["out_of_validity"] == false);
    for (const auto& line : lines) {
        const auto row = nlohmann::json::parse(line);
        for (const char* key :
             {"x", "bound", "kind", "reference", "error", "out_of_validity"}) {
            CHECK(row.contains(key));
        }
    }
}

TEST_CASE("table markdown uses 3 significant digits") {
    const Result r = run_cli({"table", "--format", "markdown"});
    CHECK(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2 + 31 * 8);
    CHECK(lines[0].find("| x ") == 0);
    CHECK(lines[1].find("| ---") == 0);
    // x = 2.9 eidous row carries the rounded 5.78e-05.
    bool found = false;
    for (const auto& line : lines) {
        if (line.find("eidous") != std::string::npos &&
            line.find("| 2.9 ") == 0 &&
            line.find("5.78e-05") != std::string::npos) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("table column selection and custom grids") {
    const Result subset = run_cli({"table", "--bound", "polya", "--bound",
                                   "eidous"});
    CHECK(subset.status == 0);
    CHECK(split_lines(subset.out).size() == 1 + 31 * 2);

    const Result custom = run_cli(
        {"table", "--from", "0", "--to", "2", "--points", "5"});
    CHECK(custom.status == 0);
    CHECK(split_lines(custom.out).size() == 1 + 5 * 8);

    const Result conflict = run_cli({"table", "--paper-abscissae", "--points",
                                     "5"});
    CHECK(conflict.status == 2);

    const Result paper = run_cli({"table", "--paper-abscissae"});
    CHECK(paper.status == 0);
    CHECK(split_lines(paper.out).size() == 1 + 31 * 8);
}

TEST_CASE("verify exit status tracks the outcome") {
    const Result pass = run_cli(
        {"verify", "--bound", "eidous", "--points", "20000"});
    CHECK(pass.status == 0);
    CHECK(pass.out.find("true") != std::string::npos);

    const Result fail = run_cli(
        {"verify", "--bound", "eidous_star", "--points", "20000"});
    CHECK(fail.status == 1);
    const auto lines = split_lines(fail.out);
    REQUIRE(lines.size() == 2);
    const auto fields = split_csv(lines[1]);
    REQUIRE(fields.size() == 8);
    CHECK(fields[4] == "false");
    CHECK(std::strtod(fields[5].c_str(), nullptr) < 0.0);  // worst_violation

    const Result bercu = run_cli({"verify", "--bound", "bercu", "--points",
                                  "20000", "--from", "0", "--to", "8",
                                  "--slack", "0"});
    CHECK(bercu.status == 1);
}

TEST_CASE("maxerr clamps its default interval to validity") {
    const Result r = run_cli(
        {"maxerr", "--bound", "bercu", "--format", "jsonlines"});
    CHECK(r.status == 0);
    const auto rep = nlohmann::json::parse(split_lines(r.out).front());
    CHECK(double(rep["bracket_hi"]) <= 6.249);
    CHECK(rep["converged"] == true);

    // An explicit interval beyond validity is a domain error.
    const Result bad = run_cli({"maxerr", "--bound", "bercu", "--to", "8"});
    CHECK(bad.status == 3);
    CHECK(bad.err.find("domain error") != std::string::npos);
}

TEST_CASE("maxerr locates the eidous peak") {
    const Result r = run_cli(
        {"maxerr", "--bound", "eidous", "--format", "jsonlines"});
    CHECK(r.status == 0);
    const auto rep = nlohmann::json::parse(split_lines(r.out).front());
    CHECK(std::abs(double(rep["location"]) - 2.86991) < 1e-3);
    CHECK(std::abs(double(rep["value"]) - 5.784e-5) < 1e-7);
}

TEST_CASE("crossover and ratio commands") {
    const Result cross = run_cli({"crossover", "--format", "jsonlines"});
    CHECK(cross.status == 0);
    const auto c = nlohmann::json::parse(split_lines(cross.out).front());
    CHECK(std::abs(double(c["exact"]) - 4.7372) < 1e-3);
    CHECK(c["published"] == 4.74915);
    CHECK(c["sign_verified"] == true);

    const Result ratio = run_cli({"ratio", "--format", "jsonlines"});
    CHECK(ratio.status == 0);
    const auto rr = nlohmann::json::parse(split_lines(ratio.out).front());
    CHECK(double(rr["ratio"]) > 1.75);
    CHECK(double(rr["ratio"]) < 1.90);
}

TEST_CASE("argument errors exit with status 2") {
    CHECK(run_cli({}).status == 2);
    CHECK(run_cli({"frobnicate"}).status == 2);
    CHECK(run_cli({"eval", "--x", "1"}).status == 2);           // missing bound
    CHECK(run_cli({"eval", "--bound", "quux", "--x", "1"}).status == 2);
    CHECK(run_cli({"verify", "--bound", "eidous"}).status == 2);  // no points
    CHECK(run_cli({"eval", "--bound", "polya", "--x", "1", "--format",
                   "yaml"}).status == 2);
    const Result unknown = run_cli({"eval", "--bound", "quux", "--x", "1"});
    CHECK(!unknown.err.empty());
}

TEST_CASE("domain errors exit with status 3") {
    const Result r = run_cli({"eval", "--bound", "polya", "--x", "-1"});
    CHECK(r.status == 3);
    CHECK(r.err.find("domain error") != std::string::npos);
    CHECK(run_cli({"verify", "--bound", "eidous", "--points", "1"}).status ==
          3);  // grid needs two points
}

TEST_CASE("help exits cleanly") {
    const Result r = run_cli({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("phibound") != std::string::npos);
}
