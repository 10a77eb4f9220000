#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "app.hpp"
#include "report.hpp"

using namespace sintlab;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

std::filesystem::path temp_dir() {
    auto d = std::filesystem::temp_directory_path() / "sintlab_test";
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("enumerate example") {
    const Run r = run_cli({"enumerate", "--beta", "2", "--S", "3", "--N", "500"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "# command=enumerate seed=0");
    CHECK(ls[1] == "n,orbit_size,resultant,contact_primes,s_integral");
    CHECK(ls[2].rfind("1,", 0) == 0);
    CHECK(ls[3].rfind("2,", 0) == 0);
    CHECK(ls[4].rfind("6,", 0) == 0);
}

TEST_CASE("pairing example") {
    const Run r = run_cli({"pairing", "--beta", "2", "--n", "4", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["n"] == 4);
    CHECK(std::abs(j[0]["residual"].get<double>()) < 1e-10);
}

TEST_CASE("lmn-gap example") {
    const Run r = run_cli({"lmn-gap", "--beta", "poly:5,-6,5;root:0", "--N", "200", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 200);
    std::size_t violations = 0;
    for (const auto& row : j) violations += row["violated"].get<bool>();
    CHECK(violations == 0);
}

TEST_CASE("CSV quoting and empty reports") {
    Report r;
    r.columns = {"a", "b"};
    r.meta = {{"command", "x"}, {"seed", "0"}};
    std::ostringstream empty;
    write_csv(r, empty);
    CHECK(empty.str() == "# command=x seed=0\r\na,b\r\n");
    r.add({std::string("plain"), std::string("has,comma \"q\"")});
    r.add({std::int64_t{-3}, 0.1});
    std::ostringstream os;
    write_csv(r, os);
    CHECK(os.str() == "# command=x seed=0\r\na,b\r\nplain,\"has,comma \"\"q\"\"\"\r\n-3,0.1\r\n");
    CHECK(format_double(1.0 / 3) == "0.333333333333333");
    CHECK(format_double(1e300 * 1e300) == "inf");
    CHECK_THROWS(r.add({std::string("one")}));
}

TEST_CASE("JSON output round-trips the records") {
    Report r;
    r.columns = {"s", "i", "u", "d", "b"};
    r.meta = {{"command", "t"}, {"seed", "7"}};
    r.add({std::string("x,y"), std::int64_t{-5}, std::uint64_t{12345678901234ULL}, 2.718281828459045, true});
    r.add({std::string(""), std::int64_t{0}, std::uint64_t{0}, -1.5e-20, false});
    std::ostringstream os;
    write_json(r, os);
    const auto j = nlohmann::json::parse(os.str());
    REQUIRE(j.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(j[i]["command"] == "t");
        CHECK(j[i]["seed"] == "7");
        for (std::size_t c = 0; c < r.columns.size(); ++c) {
            const auto& v = j[i][r.columns[c]];
            const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
            if (v.is_number_float())
                CHECK(format_double(v.get<double>()) == format_value(r.rows[i][c]));
            else
                CHECK(text == format_value(r.rows[i][c]));
        }
    }
    // A CLI report parses back to the same table as its CSV twin.
    const Run csv = run_cli({"enumerate", "--beta", "2", "--S", "3", "--N", "60"});
    const Run js = run_cli({"enumerate", "--beta", "2", "--S", "3", "--N", "60", "--format", "json"});
    const auto rows = lines(csv.out);
    const auto arr = nlohmann::json::parse(js.out);
    REQUIRE(arr.size() + 2 == rows.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string rebuilt;
        for (const auto& key : {"n", "orbit_size", "resultant", "contact_primes", "s_integral"}) {
            const auto& v = arr[i][key];
            rebuilt += (rebuilt.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        CHECK(rebuilt == rows[i + 2]);
    }
}

TEST_CASE("exit codes and validation messages") {
    Run r = run_cli({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown subcommand") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(run_cli({}).code == 2);

    r = run_cli({"enumerate", "--N", "10"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--beta") != std::string::npos);
    r = run_cli({"enumerate", "--beta", "2", "--N", "-4"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--N") != std::string::npos);
    r = run_cli({"enumerate", "--beta", "poly:1,2;root:9"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--beta") != std::string::npos);
    r = run_cli({"enumerate", "--beta", "2", "--S", "3,x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--S") != std::string::npos);
    r = run_cli({"enumerate", "--beta", "2", "--format", "xml"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--format") != std::string::npos);
    r = run_cli({"enumerate", "--beta", "2", "--bogus", "1"});
    CHECK(r.code == 2);
    r = run_cli({"uniformity", "--beta", "2", "--c", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--c") != std::string::npos);
    r = run_cli({"elliptic", "--curve", "0,0,0,0,0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--curve") != std::string::npos);
    r = run_cli({"elliptic", "--curve", "catalog:9"});
    CHECK(r.code == 2);
    r = run_cli({"elliptic", "--mode", "heights", "--curve", "catalog:4", "--point", "1,1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--point") != std::string::npos);
    r = run_cli({"tate-check", "--p", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--p") != std::string::npos);
    r = run_cli({"lattes", "--projection", "z"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--projection") != std::string::npos);
    r = run_cli({"enumerate", "--beta", "2", "--out", "/nonexistent-dir/x.csv"});
    CHECK(r.code == 3);
    CHECK(run_cli({"enumerate", "--help"}).code == 0);
}

TEST_CASE("config file overrides flags; unknown keys are rejected") {
    const auto dir = temp_dir();
    const auto cfg = dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# comment\nbeta = 2\nS=3\nN=500\n";
    }
    const Run a = run_cli({"enumerate", "--beta", "7", "--N", "10", "--config", cfg.string()});
    const Run b = run_cli({"enumerate", "--beta", "2", "--S", "3", "--N", "500"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    {
        std::ofstream f(cfg);
        f << "beta=2\nwidth=3\n";
    }
    const Run c = run_cli({"enumerate", "--config", cfg.string()});
    CHECK(c.code == 2);
    CHECK(c.err.find("width") != std::string::npos);
    CHECK(run_cli({"enumerate", "--config", (dir / "missing.cfg").string()}).code == 2);
}

TEST_CASE("output directory from the environment") {
    const auto dir = temp_dir() / "outdir";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    setenv("SINTLAB_OUT_DIR", dir.c_str(), 1);
    const Run r = run_cli({"enumerate", "--beta", "2", "--S", "3", "--N", "30", "--format", "json"});
    unsetenv("SINTLAB_OUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(dir / "enumerate.json");
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(nlohmann::json::parse(ss.str()).size() == 3);
}

TEST_CASE("every experiment is byte-identical across runs") {
    const std::vector<std::vector<std::string>> cmds = {
        {"enumerate", "--beta", "2", "--S", "3", "--N", "300"},
        {"uniformity", "--beta", "3/2", "--S", "2,3", "--N", "100"},
        {"pairing", "--beta", "poly:-1,-1,1;root:1", "--N", "12"},
        {"equidist", "--beta", "poly:5,-6,5;root:0", "--N", "60"},
        {"lmn-gap", "--beta", "poly:5,-6,5;root:0", "--N", "60"},
        {"elliptic", "--mode", "levels", "--curve", "catalog:3", "--M", "6"},
        {"elliptic", "--mode", "exponents", "--curve", "catalog:0", "--samples", "100", "--seed", "5"},
        {"cassels", "--curve", "catalog:1", "--p-max", "30"},
        {"lattes", "--M", "5"},
        {"tate-check", "--mode", "containment", "--p", "7", "--trials", "60", "--seed", "3"},
        {"tate-check", "--mode", "residual", "--trials", "10", "--seed", "4"},
        {"tate-check", "--mode", "threshold", "--trials", "10", "--seed", "4", "--projection", "y"},
    };
    for (const auto& c : cmds) {
        for (const std::string fmt : {"csv", "json"}) {
            auto args = c;
            args.push_back("--format");
            args.push_back(fmt);
            const Run a = run_cli(args), b = run_cli(args);
            CHECK(a.code == 0);
            CHECK(!a.out.empty());
            CHECK(a.out == b.out);
        }
    }
    // The seed changes sampled output and is recorded.
    const Run s1 = run_cli({"tate-check", "--mode", "residual", "--trials", "5", "--seed", "1"});
    const Run s2 = run_cli({"tate-check", "--mode", "residual", "--trials", "5", "--seed", "2"});
    CHECK(s1.out != s2.out);
    CHECK(lines(s2.out)[0] == "# command=tate-check seed=2");
}
