#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <memory>

#include <json.hpp>

#include "gbs/gog_format.hpp"
#include "support.hpp"

using namespace gbs;
using namespace gbs::test;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(GBS_CLI) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  int status = pclose(pipe.release());
  return {WEXITSTATUS(status), out};
}

std::string data(const char* f) { return std::string(GBS_DATA_DIR) + "/" + f; }

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') == std::string::npos ? 0 : t.rfind('\n') + 1);
}

}  // namespace

TEST(GogFormat, ParsesShippedDocuments) {
  GoGSpec a = load_spec("specA.gog");
  EXPECT_EQ(a.rank, 2);
  EXPECT_EQ(a.vertices.size(), 1u);
  ASSERT_EQ(a.edges.size(), 2u);
  EXPECT_EQ(a.edges[0].alpha, i2(1, 0, 0, 2));
  EXPECT_EQ(a.edges[1].omega, i2(1, 1, 0, 1));
  EXPECT_EQ(load_spec("specB.gog").edges.size(), 3u);
  EXPECT_EQ(load_spec("specB.gog").edges[2].omega, i2(0, 1, -1, 0));
}

TEST(GogFormat, WhitespaceAndComments) {
  GoGSpec s = parse_gog("# header\n  rank   2\nvertex X # the vertex\nedge h:X->X alpha[[1, 0],[0,2]]omega [[2,0],[0,1]]\n\ntree\n");
  EXPECT_EQ(s.edges[0].name, "h");
  EXPECT_EQ(s.edges[0].omega, i2(2, 0, 0, 1));
  ASSERT_TRUE(s.spanning_tree);
  EXPECT_TRUE(s.spanning_tree->empty());
}

TEST(GogFormat, RoundTrip) {
  for (const char* f : {"specA.gog", "specB.gog", "bs12.gog", "ascending2.gog"}) {
    GoGSpec s = load_spec(f);
    EXPECT_EQ(parse_gog(render_gog(s)), s) << f;
    EXPECT_EQ(render_gog(parse_gog(render_gog(s))), render_gog(s));
  }
  GoGSpec t = two_vertex_spec();
  t.spanning_tree = std::vector<std::string>{"f"};
  EXPECT_EQ(parse_gog(render_gog(t)), t);
}

TEST(GogFormat, ErrorsCarryPositions) {
  auto expect_error = [](const std::string& text, const std::string& message, std::size_t line, std::size_t column) {
    try {
      parse_gog(text);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.message(), message) << text;
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_EQ(e.column(), column) << text;
    }
  };
  expect_error("", "missing rank declaration", 1, 1);
  expect_error("vertex X\n", "missing rank declaration", 1, 1);
  expect_error("rank 2\nrank 2\n", "duplicate rank declaration", 2, 1);
  expect_error("rank 2\nedge h X -> X\n", "expected ':', found 'X'", 2, 8);
  expect_error("rank x\n", "expected integer, found 'x'", 1, 6);
  expect_error("rank 2\nvertex X\nedge h: X -> X alpha [[1,0],[0]] omega [[1]]\n", "matrix must be square", 3, 22);
  expect_error("rank 2\nfoo\n", "unknown declaration 'foo'", 2, 1);
  expect_error("rank 2\nvertex X $\n", "unexpected character '$'", 2, 10);
  expect_error("rank 2 3\n", "unexpected '3'", 1, 8);
}

TEST(Cli, HeadlineCommands) {
  CliRun a = run("classify " + data("specA.gog"));
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(last_line(a.out), "Whyte case: 2c; Haagerup: yes; weakly amenable: yes; Λ_cb = 1");

  CliRun cmp = run("compare " + data("specA.gog") + " " + data("specB.gog"));
  EXPECT_EQ(cmp.code, 0);
  EXPECT_EQ(last_line(cmp.out), "quasi-isometric");

  CliRun c = run("compression " + data("specB.gog") + " --p 2");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(last_line(c.out), "α₂ = 0");

  CliRun p = run("presentation " + data("specA.gog"));
  EXPECT_EQ(p.out, "<a,b,h,p | ab=ba, a^h=a^2, (b^2)^h=b, a^p=a, b^p=ab>\n");

  CliRun h = run("holonomy " + data("specB.gog"));
  EXPECT_EQ(h.out, "hol(h) = [[2,0],[0,1/2]]\nhol(p) = [[1,1],[0,1]]\nhol(e) = [[0,1],[-1,0]]\n");

  CliRun d = run("distortion " + data("specA.gog") + " --element a --max-power 16");
  EXPECT_EQ(d.code, 0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("validate " + data("specA.gog")).code, 0);
  EXPECT_EQ(run("compression " + data("specB.gog") + " --p 3").code, 2);
  EXPECT_EQ(run("compare " + data("ascending2.gog") + " " + data("ascending2.gog")).code, 0);
  EXPECT_EQ(run("frobnicate " + data("specA.gog")).code, 1);
  EXPECT_EQ(run("classify /nonexistent.gog").code, 1);
  EXPECT_EQ(run("compare " + data("specA.gog") + " " + data("bs12.gog")).code, 1);
  EXPECT_EQ(run("distortion " + data("specA.gog") + " --element zz").code, 1);
}

TEST(Cli, JsonIsDeterministicAndComplete) {
  CliRun first = run("classify --format json " + data("specB.gog"));
  CliRun second = run("classify --format json " + data("specB.gog"));
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  auto j = nlohmann::json::parse(first.out);
  EXPECT_EQ(j["verdicts"]["whyte_case"], "2c");
  EXPECT_EQ(j["verdicts"]["haagerup"], "no");
  const auto& fp = j["certificates"]["tits"]["certificate"]["free_pair"];
  for (const char* key : {"g", "h", "g_word", "h_word", "attract_g", "repel_g", "attract_h", "repel_h"})
    EXPECT_TRUE(fp.contains(key)) << key;
  EXPECT_EQ(j["certificates"]["discreteness"]["witness"], "h^-5 p h^5");

  auto v = nlohmann::json::parse(run("validate --format json " + data("specA.gog")).out);
  EXPECT_EQ(v["valid"], true);
}
