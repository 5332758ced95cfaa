#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spiralrg/errors.hpp"
#include "spiralrg/io.hpp"

using namespace spiralrg;

TEST_CASE("config parser reads key=value lines and skips comments") {
  std::istringstream in("# header\n\ng = 2.5   # inline\n  N=40\nxi_start = 1, 1, 0.5\n");
  const auto cfg = parse_config(in, "t");
  CHECK(cfg.values.size() == 3);
  CHECK(cfg.at("g") == "2.5");
  CHECK(cfg.at("N") == "40");
  CHECK(cfg.at("xi_start") == "1, 1, 0.5");
  CHECK_FALSE(cfg.has("header"));
}

TEST_CASE("config parser reports every bad line at once") {
  std::istringstream in("g\n=3\nN=1\nN=2\n");
  try {
    parse_config(in, "bad.cfg");
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.cfg:1") != std::string::npos);
    CHECK(msg.find("bad.cfg:2") != std::string::npos);
    CHECK(msg.find("duplicate key 'N'") != std::string::npos);
  }
}

TEST_CASE("real and seed lists") {
  CHECK(parse_real_list("1, -2.5,3e-2") == std::vector<double>{1.0, -2.5, 0.03});
  const auto seeds = parse_seed_list("1,2;3,4;");
  REQUIRE(seeds.size() == 2);
  CHECK(seeds[1][0] == 3.0);
  CHECK_THROWS_AS(parse_real_list("1,x"), InvalidArgument);
  CHECK_THROWS_AS(parse_real_list("1,,2"), InvalidArgument);
}

TEST_CASE("header echoes parameters and optionally a timestamp") {
  const auto h = header_block("flow", {{"g", "1"}, {"N", "10"}}, false);
  CHECK(h == std::string("# spiralrg ") + version() + "\n# command=flow\n# g=1\n# N=10\n");
  const auto t = header_block("flow", {}, true);
  CHECK(t.find("# timestamp=") != std::string::npos);
}

TEST_CASE("atomic write replaces the file and leaves no temporary") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "spiralrg_io_test";
  fs::remove_all(dir);
  const fs::path file = dir / "sub" / "out.csv";
  write_atomic(file, "a\n");
  write_atomic(file, "b\n");
  std::ifstream in(file);
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body == "b\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(file.parent_path())) ++entries;
  CHECK(entries == 1);
  fs::remove_all(dir);
}
