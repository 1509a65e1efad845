#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "collatz_mersenne/cli.hpp"
#include "collatz_mersenne/csv.hpp"

using namespace cm;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("field quoting") {
    CHECK(quote_field("plain", ',') == "plain");
    CHECK(quote_field("a,b", ',') == "\"a,b\"");
    CHECK(quote_field("say \"hi\"", ',') == "\"say \"\"hi\"\"\"");
    CHECK(quote_field("a,b", '\t') == "a,b");
    CHECK(quote_field("a\tb", '\t') == "\"a\tb\"");
    CHECK(quote_field("line\nbreak", ',') == "\"line\nbreak\"");
    CHECK(format_double(13.5) == "13.5");
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("pathlen rows") {
    auto m7 = cli({"pathlen", "M7"});
    CHECK(m7.code == kExitOk);
    CHECK(m7.out == "expr,n,d,odd_steps,even_steps,peak_bit_length\nM7,7,46,15,31,13\n");

    auto one = cli({"pathlen", "1"});
    CHECK(one.out == "expr,n,d,odd_steps,even_steps,peak_bit_length\n1,,0,0,0,1\n");

    auto m2281 = cli({"pathlen", "M2281"});
    CHECK(m2281.out.find("M2281,2281,30734,") != std::string::npos);

    auto traced = cli({"--format", "tsv", "pathlen", "7", "--trace-limit", "5"});
    CHECK(traced.out == "expr\tn\td\todd_steps\teven_steps\tpeak_bit_length\ttrace\n7\t\t16\t5\t11\t6\t7 22 11 34 17\n");
}

TEST_CASE("pathlen with checkpoint matches the plain run") {
    auto path = std::filesystem::temp_directory_path() / "collatz_mersenne_cli_m2203.ckpt";
    std::filesystem::remove(path);
    auto plain = cli({"pathlen", "M2203"});
    auto checkpointed = cli({"pathlen", "M2203", "--checkpoint", path.string(), "--checkpoint-interval", "500"});
    CHECK(plain.out == checkpointed.out);
    auto resumed = cli({"pathlen", "M2203", "--checkpoint", path.string()});
    CHECK(plain.out == resumed.out);
    auto foreign = cli({"pathlen", "M2281", "--checkpoint", path.string()});
    CHECK(foreign.code == kExitRuntime);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"pathlen"}).code == kExitUsage);
    CHECK(cli({"pathlen", "M7x"}).code == kExitUsage);
    CHECK(cli({"pathlen", "Mp99"}).code == kExitUsage);
    CHECK(cli({"--format", "xml", "fit"}).code == kExitUsage);
    CHECK(cli({"verify", "--ranks", "5-9"}).code == kExitUsage);
    CHECK(cli({"verify", "--ranks", "9..5"}).code == kExitUsage);
    CHECK(cli({"lucas-lehmer", "9"}).code == kExitUsage);
    CHECK(cli({"--cycle-guard", "10", "pathlen", "27"}).code == kExitRuntime);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("verify fast tier exits zero") {
    auto r = cli({"--jobs", "2", "verify", "--ranks", "1..17"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("false") == std::string::npos);
    CHECK(r.out.find("17,2281,30734,30734,true") != std::string::npos);
}

TEST_CASE("catalog dump") {
    auto r = cli({"catalog", "--csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("rank,exponent,reference_d,reference_ratio\n1,2,7,3.5\n", 0) == 0);
    CHECK(r.out.find("45,37156667,499902411,13.4539\n") != std::string::npos);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 48);
    auto human = cli({"catalog"});
    CHECK(human.out.find("corrected") != std::string::npos);
}

TEST_CASE("scan is deterministic across job counts") {
    auto a = cli({"--jobs", "1", "scan", "--center", "127", "--each-side", "4", "--stride", "1", "--primes-only"});
    auto b = cli({"--jobs", "3", "scan", "--center", "127", "--each-side", "4", "--stride", "1", "--primes-only"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("127,true,1660,") != std::string::npos);
}

TEST_CASE("stats, fit, heuristic, lucas-lehmer") {
    auto stats = cli({"stats", "--set", "mersenne", "--reference"});
    CHECK(stats.out.rfind("label,count,mean,sample_variance\nmersenne,13,13.447", 0) == 0);
    auto small = cli({"stats", "--set", "B", "--from-rank", "13", "--to-rank", "17"});
    CHECK(small.code == kExitOk);
    CHECK(small.out.find("B,5,") != std::string::npos);
    auto bad = cli({"stats", "--set", "C", "--reference", "--from-rank", "5"});
    CHECK(bad.code == kExitUsage);

    auto fit = cli({"fit"});
    CHECK(fit.out.rfind("intercept,slope,rms_residual\n0.96524965", 0) == 0);
    auto h = cli({"heuristic", "--n", "1"});
    CHECK(h.out.find("1,13.45652") != std::string::npos);
    auto ll = cli({"lucas-lehmer", "107"});
    CHECK(ll.out == "p,mersenne_prime\n107,true\n");
}

}  // TEST_SUITE
