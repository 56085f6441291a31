#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "iwadec/selfcheck.hpp"
#include "iwadec/specfile.hpp"

using namespace iwadec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  static int n = 0;
  const fs::path out = fs::temp_directory_path() / ("iwadec_cli_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
  const std::string cmd = std::string(IWADEC_BIN) + " " + args + " > " + out.string() + " 2>&1";
  const int st = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, ss.str()};
}

std::string corpus(const std::string& name) { return std::string(IWADEC_CORPUS_DIR) + "/" + name + ".spec"; }

fs::path scratch(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("iwadec_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, Sk1ExitCodes) {
  auto a = run("sk1 " + corpus("cyclic7_gamma"));
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("KnownCases-iii"), std::string::npos);
  auto b = run("sk1 " + corpus("wrapped_metacyclic"));
  EXPECT_EQ(b.code, 10) << b.out;
  auto c = run("sk1 --cap 50 " + corpus("general108"));
  EXPECT_EQ(c.code, 11) << c.out;
}

TEST(Cli, CapFromEnvironment) {
  auto d = std::system(("IWADEC_CAP=50 " + std::string(IWADEC_BIN) + " sk1 " + corpus("general108") + " > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(d), 11);
}

TEST(Cli, MalformedFiles) {
  auto bad = scratch("bad.spec", "kind = cyclic\norder = x\naction = 1\n");
  auto r = run("table " + bad.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find(":2:"), std::string::npos) << r.out;
  auto unk = scratch("unknown.spec", "kind = cyclic\norder = 3\nflavour = 1\naction = 1\n");
  r = run("decompose " + unk.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unknown key 'flavour'"), std::string::npos) << r.out;
  EXPECT_EQ(run("sk1 /nonexistent/file.spec").code, 2);
  fs::remove(bad);
  fs::remove(unk);
}

TEST(Cli, TableHeisenberg) {
  auto r = run("table --json builtin:heisenberg27");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["values"].size(), 11u);
  std::vector<long> deg = j["degrees"];
  EXPECT_EQ(std::count(deg.begin(), deg.end(), 1L), 9);
  EXPECT_EQ(std::count(deg.begin(), deg.end(), 3L), 2);
  auto c = run("table --json " + corpus("cyclic9"));
  EXPECT_EQ(nlohmann::json::parse(c.out)["values"].size(), 9u);
}

TEST(Cli, RoundTrip) {
  for (const auto& f : corpus_files(IWADEC_CORPUS_DIR)) {
    auto a = load_spec_file(f);
    auto text = serialize(a);
    auto b = parse_spec_text(text, f);
    EXPECT_EQ(a, b) << f;
    EXPECT_EQ(serialize(b), text) << f;
  }
  auto messy = parse_spec_text("# comment\n action =1 0 ;0 1\nkind=product\n  normal = 3   3  # trailing\n");
  EXPECT_EQ(serialize(messy), "kind = product\nnormal = 3 3\naction = 1 0; 0 1\n");
  EXPECT_THROW(parse_spec_text("kind = cyclic\norder = 3\norder = 3\naction = 1\n"), MalformedInput);
  EXPECT_THROW(parse_spec_text("kind = cyclic\ntable = 0\n"), MalformedInput);
  EXPECT_THROW(parse_spec_text("order = 3\n"), MalformedInput);
}

TEST(Cli, DecomposeDeterministic) {
  for (const char* name : {"metacyclic27", "heisenberg27", "cyclic7_gamma"}) {
    auto a = run("decompose --json " + corpus(name));
    auto b = run("decompose --json " + corpus(name));
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out) << name;
  }
}

TEST(Cli, DecomposeMetacyclic) {
  auto r = run("decompose --json " + corpus("metacyclic27"));
  auto j = nlohmann::json::parse(r.out);
  std::multiset<long> dims, idx;
  for (const auto& c : j["components"]) {
    dims.insert(c["dim"].get<long>());
    idx.insert(c["schur_index"]["value"].get<long>());
    EXPECT_TRUE(c["schur_index"]["asserted"].get<bool>());
  }
  EXPECT_EQ(dims, (std::multiset<long>{3, 6, 18}));
  EXPECT_EQ(idx, (std::multiset<long>{1, 1, 3}));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_FALSE(j["timing"]["recorded"].get<bool>());
}

TEST(Cli, TrivialGroup) {
  auto p = scratch("trivial.spec", "kind = table\ntable = 0\naction = identity\n");
  auto r = run("decompose --json " + p.string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["components"].size(), 1u);
  EXPECT_EQ(j["spec"]["m"], 0);
  EXPECT_EQ(j["components"][0]["dim"], 1);
  EXPECT_EQ(run("decompose " + scratch("trivial_m2.spec", "kind = table\nm = 2\ntable = 0\naction = identity\n").string()).code, 2);
  fs::remove(p);
}

TEST(Cli, Selfcheck) {
  auto neg = run("selfcheck --inject-bad-idempotent " + std::string(IWADEC_CORPUS_DIR));
  EXPECT_EQ(neg.code, 1);
  EXPECT_NE(neg.out.find("FAIL crossed"), std::string::npos) << neg.out;
  EXPECT_EQ(neg.out.find("FAIL chars"), std::string::npos);
  const fs::path empty = fs::temp_directory_path() / ("iwadec_empty_" + std::to_string(::getpid()));
  fs::create_directories(empty);
  auto e = run("selfcheck " + empty.string());
  EXPECT_EQ(e.code, 0) << e.out;
  EXPECT_NE(e.out.find("warnings: 1"), std::string::npos) << e.out;
  fs::remove(empty);
}
