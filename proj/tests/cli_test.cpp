#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <vdw/cli.hpp>

using namespace vdw;
using Json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "vdw");
  std::vector<const char*> argv;
  for (auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& body) {
  auto path = testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

std::string write_coloring(const std::string& name, const FiniteColoring& f) {
  std::ostringstream s;
  io::write_coloring(s, f);
  return write_file(name, s.str());
}

} // namespace

TEST(Cli, Wnumber) {
  auto r = run({"wnumber", "--k", "3", "--c", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"k\":3,\"c\":2,\"value\":9,\"certificate\":\"11221122\"}\n");
  auto lim = run({"wnumber", "--k", "3", "--c", "2", "--limit", "5"});
  EXPECT_EQ(lim.code, 3);
  EXPECT_EQ(lim.json()["error"], "exceeds limit");
  EXPECT_EQ(run({"wnumber", "--k", "1", "--c", "2"}).code, 2);
}

TEST(Cli, WnumberCacheFile) {
  auto path = testing::TempDir() + "cli_cache.txt";
  std::remove(path.c_str());
  EXPECT_EQ(run({"wnumber", "--k", "4", "--c", "2", "--cache", path}).code, 0);
  WNumberCache cache;
  cache.load(path);
  EXPECT_EQ(cache.value(4, 2), 35u);
}

TEST(Cli, Tower) {
  auto r = run({"tower", "--k", "2", "--c", "2", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"k\":2,\"c\":2,\"n\":2,\"W\":[\"3\",\"9\"],\"C\":[\"8\"],\"sizes\":[\"3\",\"27\"],"
                   "\"interval\":[\"1\",\"27\"]}\n");
  auto s = run({"tower", "--k", "2", "--c", "2", "--n", "2", "--start", "6"});
  EXPECT_EQ(s.json()["interval"], Json::array({"6", "32"}));
  auto bad = run({"tower", "--k", "3", "--c", "2", "--n", "2"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(bad.json()["error"], "tower uncomputable");
  EXPECT_EQ(bad.json()["stage"], 2);
  EXPECT_EQ(run({"tower", "--c", "2", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"tower", "--k", "2", "--c", "2"}).code, 2);
  auto mixed = run({"tower", "--ks", "2,3", "--c", "1"});
  EXPECT_EQ(mixed.code, 0);
  EXPECT_EQ(mixed.json()["n"], 2);
  EXPECT_EQ(mixed.json()["sizes"], Json::array({"2", "6"}));
}

TEST(Cli, ExtractAndVerifyRoundTrip) {
  std::string body = "c=2 lo=1 hi=27\n";
  for (int i = 0; i < 9; ++i)
    body += "1,2,2 ";
  auto col = write_file("periodic122.txt", body);
  auto r = run({"extract", "--k", "2", "--c", "2", "--n", "2", "--coloring", col, "--trace", "--checked"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["gamma"], 2);
  EXPECT_EQ(j["a"], 2);
  EXPECT_EQ(j["ds"], Json::array({1, 3}));
  EXPECT_EQ(j["positions"], Json::array({2, 3, 5, 6}));
  EXPECT_EQ(j["trace"][0]["stage"], 2);
  EXPECT_EQ(j["trace"][0]["dstar"], 1);
  auto wfile = write_file("w122.json", r.out);
  auto v = run({"verify", "--witness", wfile, "--coloring", col});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "{\"verified\":true}\n");
  EXPECT_EQ(run({"verify", "--witness", wfile, "--oracle", "periodic:122"}).code, 0);
}

TEST(Cli, VerifyMismatch) {
  auto col = write_file("c121.txt", "c=2 lo=1 hi=3\n1 2 1\n");
  auto w = write_file("bad.json", R"({"gamma":1,"a":1,"ds":[1],"ks":[2],"positions":[1,2]})");
  auto v = run({"verify", "--witness", w, "--coloring", col});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(v.out, "{\"verified\":false,\"first_violation\":{\"position\":2,\"color\":2}}\n");
  auto outside = write_file("out.json", R"({"gamma":1,"a":1,"ds":[5],"ks":[2]})");
  EXPECT_EQ(run({"verify", "--witness", outside, "--coloring", col}).code, 2);
  EXPECT_EQ(run({"verify", "--witness", w}).code, 2);
}

TEST(Cli, SearchAndCubeNumber) {
  auto col = write_file("tm16.txt", "c=2 lo=1 hi=16\n1 2 2 1 2 1 1 2 2 1 1 2 1 2 2 1\n");
  auto s = run({"search", "--ks", "2,2", "--coloring", col});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.out, "{\"gamma\":1,\"a\":1,\"ds\":[3,3],\"ks\":[2,2],\"positions\":[1,4,7]}\n");
  auto d = run({"search", "--ks", "2,2", "--coloring", col, "--distinct"});
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.json()["ds"][0], d.json()["ds"][1]);
  auto none = run({"search", "--ks", "2", "--coloring", write_file("c12.txt", "c=2 lo=1 hi=2\n1,2\n")});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.json()["found"], false);

  auto cn = run({"cube-number", "--ks", "3", "--c", "2", "--cap", "40"});
  EXPECT_EQ(cn.out, "{\"ks\":[3],\"c\":2,\"value\":9}\n");
  auto cap = run({"cube-number", "--ks", "3", "--c", "2", "--cap", "5"});
  EXPECT_EQ(cap.code, 3);
  EXPECT_EQ(cap.out, "{\"exceeds_cap\":5}\n");
}

TEST(Cli, StreamReports) {
  auto r = run({"stream", "--oracle", "constant:1", "--k", "2", "--c", "1", "--depth", "5", "--windows", "8", "--mode",
                "proof"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  auto j = r.json();
  EXPECT_EQ(j["mode"], "proof");
  EXPECT_EQ(j["ds"], Json::array({1, 2, 4, 8, 16}));
  EXPECT_EQ(j["depths"].size(), 5u);
  for (auto& d : j["depths"])
    EXPECT_EQ(d["verified"], true);
  EXPECT_EQ(j["windows"], 8);

  auto fail = run({"stream", "--oracle", "periodic:12", "--k", "2", "--c", "2", "--depth", "1", "--windows", "2",
                   "--window-size", "2"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_EQ(fail.json()["error"], "window failure");
  EXPECT_EQ(run({"stream", "--oracle", "thue-morse", "--k", "2", "--c", "2", "--depth", "3", "--windows", "2"}).code,
            2);
  EXPECT_EQ(run({"stream", "--oracle", "nonsense", "--k", "2", "--c", "2", "--depth", "1", "--windows", "2"}).code, 2);
  EXPECT_EQ(run({"stream", "--oracle", "thue-morse", "--k", "2", "--c", "2", "--depth", "1", "--windows", "2",
                 "--mode", "sideways"})
                .code,
            2);
}

TEST(Cli, MaxCellsFlagWinsOverEnvironment) {
  setenv("VDW_MAX_CELLS", "1000", 1);
  auto r = run({"--max-cells", "3", "stream", "--oracle", "constant:1", "--k", "2", "--c", "1", "--depth", "2",
                "--windows", "2", "--mode", "proof"});
  EXPECT_EQ(r.code, 3);
  auto env = run({"stream", "--oracle", "constant:1", "--k", "2", "--c", "1", "--depth", "2", "--windows", "2", "--mode",
                  "proof"});
  EXPECT_EQ(env.code, 0);
  setenv("VDW_MAX_CELLS", "2", 1);
  EXPECT_EQ(run({"stream", "--oracle", "constant:1", "--k", "2", "--c", "1", "--depth", "2", "--windows", "2", "--mode",
                 "proof"})
                .code,
            3);
  unsetenv("VDW_MAX_CELLS");
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"stream", "--oracle", "random:7", "--k",          "2",   "--c",
                                "2",      "--depth",  "3",        "--windows",    "12",  "--window-size",
                                "40"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, BadInput) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"wnumber", "--k", "x", "--c", "2"}).code, 2);
  auto col = write_file("short.txt", "c=2 lo=1 hi=5\n1 2\n");
  EXPECT_EQ(run({"search", "--ks", "2", "--coloring", col}).code, 2);
  EXPECT_EQ(run({"search", "--ks", "2", "--coloring", "/nonexistent/file"}).code, 2);
}

TEST(Cli, FileOracle) {
  auto col = write_file("prefix.txt", "c=2 lo=1 hi=4\n2 2 2 2\n");
  auto w = write_file("w_prefix.json", R"({"gamma":2,"a":1,"ds":[1],"ks":[4]})");
  EXPECT_EQ(run({"verify", "--witness", w, "--oracle", "file:" + col}).code, 0);
  auto w2 = write_file("w_prefix2.json", R"({"gamma":2,"a":1,"ds":[1],"ks":[5]})");
  EXPECT_EQ(run({"verify", "--witness", w2, "--oracle", "file:" + col}).code, 1);
}

TEST(Cli, RandomRoundTrips) {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 30; ++it) {
    std::vector<Color> colors(27);
    for (auto& x : colors)
      x = 1 + static_cast<Color>(rng() % 2);
    auto col = write_coloring("rt.txt", FiniteColoring(2, Interval(1, 27), colors));
    auto ex = run({"extract", "--k", "2", "--c", "2", "--n", "2", "--coloring", col});
    ASSERT_EQ(ex.code, 0);
    auto wfile = write_file("rt.json", ex.out);
    EXPECT_EQ(run({"verify", "--witness", wfile, "--coloring", col}).code, 0);
    auto se = run({"search", "--ks", "2,2", "--coloring", col});
    if (se.code == 0) {
      auto sfile = write_file("rt_s.json", se.out);
      EXPECT_EQ(run({"verify", "--witness", sfile, "--coloring", col}).code, 0);
    }
  }
}
