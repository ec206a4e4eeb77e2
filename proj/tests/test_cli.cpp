#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef PWREG_CLI_PATH
#define PWREG_CLI_PATH "pwreg"
#endif

namespace {

std::string sandbox() {
  static std::string dir = [] {
    std::string tmpl = "/tmp/pwreg_cli_XXXXXX";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s", tmpl.c_str());
    return std::string(mkdtemp(buf));
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = std::string(PWREG_CLI_PATH) + " " + args +
                    " > " + sandbox() + "/stdout.txt 2> " + sandbox() +
                    "/stderr.txt";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

const char* kTriangleBoundary =
    R"({"ambient_dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]],)"
    R"( "simplices": [[0,1],[1,2],[2,0]]})";

}  // namespace

TEST_CASE("approximate then verify round trip") {
  write(sandbox() + "/tri.json", kTriangleBoundary);
  int rc = run("approximate --input " + sandbox() + "/tri.json" +
               " --target sphere:1 --oracle radial --eps 0.05 --out " +
               sandbox() + "/art.json");
  CHECK(rc == 0);
  CHECK(run("verify --input " + sandbox() + "/art.json") == 0);
  // re-verify at doubled pitch also passes
  CHECK(run("verify --input " + sandbox() + "/art.json --pitch 32") == 0);
}

TEST_CASE("two identical runs produce bit-identical artifacts") {
  write(sandbox() + "/tri.json", kTriangleBoundary);
  std::string base = "approximate --input " + sandbox() + "/tri.json" +
                     " --target sphere:1 --oracle radial --eps 0.05 --out ";
  CHECK(run(base + sandbox() + "/a1.json") == 0);
  CHECK(run(base + sandbox() + "/a2.json") == 0);
  std::string a1 = slurp(sandbox() + "/a1.json");
  std::string a2 = slurp(sandbox() + "/a2.json");
  CHECK(!a1.empty());
  CHECK(a1 == a2);
}

TEST_CASE("corrupted artifact fails verification with exit 2") {
  write(sandbox() + "/tri.json", kTriangleBoundary);
  REQUIRE(run("approximate --input " + sandbox() + "/tri.json" +
              " --target sphere:1 --oracle radial --eps 0.05 --out " +
              sandbox() + "/art_c.json") == 0);
  std::string text = slurp(sandbox() + "/art_c.json");
  // flip one polynomial coefficient digit inside the per-simplex data
  auto pos = text.find("\"coef\": \"");
  REQUIRE(pos != std::string::npos);
  pos += 9;
  text[pos] = (text[pos] == '1') ? '2' : '1';
  write(sandbox() + "/art_c.json", text);
  CHECK(run("verify --input " + sandbox() + "/art_c.json") == 2);
}

TEST_CASE("bad input exits with 3") {
  write(sandbox() + "/bad.json", "{\"not\": \"a complex\"}");
  CHECK(run("approximate --input " + sandbox() + "/bad.json --out " +
            sandbox() + "/never.json") == 3);
  CHECK(run("approximate --input " + sandbox() + "/vanished.json --out " +
            sandbox() + "/never.json") == 3);
}

TEST_CASE("subdivide and stratify and report") {
  write(sandbox() + "/tri.json", kTriangleBoundary);
  CHECK(run("subdivide --input " + sandbox() + "/tri.json --iterations 1 --out " +
            sandbox() + "/sub.json") == 0);
  std::string sub = slurp(sandbox() + "/sub.json");
  CHECK(sub.find("\"simplices\"") != std::string::npos);

  CHECK(run("stratify --input " + sandbox() + "/tri.json --out " + sandbox() +
            "/strat.json") == 0);
  std::string strat_out = slurp(sandbox() + "/stdout.txt");
  CHECK(strat_out.find("stratum") != std::string::npos);
  CHECK(strat_out.find("= 0") != std::string::npos);

  REQUIRE(run("approximate --input " + sandbox() + "/tri.json" +
              " --target sphere:1 --oracle radial --eps 0.05 --out " +
              sandbox() + "/art_r.json") == 0);
  CHECK(run("report --input " + sandbox() + "/art_r.json --csv " + sandbox() +
            "/cert.csv") == 0);
  std::string csv = slurp(sandbox() + "/cert.csv");
  CHECK(csv.find("eps_achieved,") != std::string::npos);
  CHECK(csv.find("boundary_exact,1") != std::string::npos);
}

TEST_CASE("bundle-iso command") {
  CHECK(run("bundle-iso --xi mobius --eta mobius --morphism identity --out " +
            sandbox() + "/morph.json") == 0);
  std::string morph = slurp(sandbox() + "/morph.json");
  CHECK(morph.find("sigma_min") != std::string::npos);
}
