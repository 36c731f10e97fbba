#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

using namespace divpoly;
using namespace divpoly::cli;
using io::json;

namespace {

std::string data(const std::string& name) { return std::string(DIVPOLY_DATA_DIR) + "/" + name; }

Result run_on(const std::string& cmd, const std::string& text, Request req = {}) {
  req.command = cmd;
  return run_documents(req, {text});
}

Result run_file(const std::string& cmd, const std::string& file, Request req = {}) {
  req.command = cmd;
  req.inputs = {data(file)};
  return run(req);
}

std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() / "divpoly_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, Invariants) {
  Result r = run_file("invariants", "ldp.divpoly.json");
  ASSERT_EQ(r.code, kOk) << r.message;
  json expect = json::parse(R"({"degree":"6","hilbert":[1,2,3],"smooth":false,"witnesses":[["P","2"],["P","-2"]]})");
  EXPECT_EQ(json::parse(r.output), expect);
  Request req;
  req.hilbert_k = {1, 2, 3};
  json t = json::parse(run_file("invariants", "ldp.divpoly.json", req).output)["hilbert_table"];
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[2]["value"], "34");
}

TEST(Cli, Normality) {
  Result r = run_file("normality", "ldp.sf.json");
  ASSERT_EQ(r.code, kOk) << r.message;
  EXPECT_EQ(json::parse(r.output), json::parse(R"({"normality":"yes","g_min":[[-2,1],[-1,1],[0,1],[1,1],[2,1]]})"));
  Result nn = run_file("normality", "nonnormal.divpoly.json");
  EXPECT_EQ(nn.code, kNegative);
  EXPECT_EQ(json::parse(nn.output)["normality"], "no");
}

TEST(Cli, DualizeRoundTrip) {
  auto dir = temp_dir();
  Request req;
  req.command = "dualize";
  req.inputs = {data("ldp.divpoly.json")};
  req.out = (dir / "ldp.sf.json").string();
  ASSERT_EQ(run(req).code, kOk);
  EXPECT_EQ(read_file(req.out), read_file(data("ldp.sf.json")));
  req.inputs = {req.out};
  req.out = (dir / "back.json").string();
  ASSERT_EQ(run(req).code, kOk);
  EXPECT_EQ(read_file(req.out), read_file(data("ldp.divpoly.json")));
  EXPECT_FALSE(std::filesystem::exists(req.out + ".tmp"));
}

TEST(Cli, Conversions) {
  Result c = run_file("cone", "ldp.sf.json");
  ASSERT_EQ(c.code, kOk);
  EXPECT_EQ(c.output, read_file(data("ldp.pdiv.json")));
  EXPECT_EQ(run_on("validate", c.output).code, kOk);
  Request sf;
  sf.target = "sf";
  EXPECT_EQ(run_file("recover", "ldp.pdiv.json", sf).output, read_file(data("ldp.sf.json")));
  EXPECT_EQ(run_file("recover", "ldp.pdiv.json").output, read_file(data("ldp.divpoly.json")));
  Result f = run_file("fansy", "ldp.divpoly.json");
  ASSERT_EQ(f.code, kOk);
  EXPECT_EQ(f.output, read_file(data("ldp.fansy.json")));
  EXPECT_EQ(run_on("validate", f.output).code, kOk);
  json df = json::parse(run_file("fansy", "ldp.fansy.json").output);
  EXPECT_EQ(df["generators"].size(), 4u);
  for (const auto& d : df["members"]) EXPECT_NO_THROW(io::read_pdiv(d));
  Result g = run_file("generators", "ldp.pdiv.json");
  ASSERT_EQ(g.code, kOk);
  json gj = json::parse(g.output);
  EXPECT_EQ(gj["generator_count"], 6);
  EXPECT_EQ(gj["normality"], "yes");
  Result dg = run_file("downgrade", "unit_square.toric.json");
  ASSERT_EQ(dg.code, kOk) << dg.message;
  EXPECT_EQ(io::read_divpoly(json::parse(dg.output)).box(), Polyhedron::from_generators({make_vec({0}), make_vec({1})}, {}, {}, 1));
}

TEST(Cli, ValidateVerdicts) {
  EXPECT_EQ(run_file("validate", "ldp.divpoly.json").code, kOk);
  EXPECT_EQ(run_file("validate", "ldp.sf.json").code, kOk);
  Result p = run_file("validate", "printed.pdiv.json");
  EXPECT_EQ(p.code, kNegative);
  json j = json::parse(p.output);
  EXPECT_EQ(j["proper"], "no");
  EXPECT_EQ(j["witness"], json::parse("[-2,2]"));
  EXPECT_NE(j["note"].get<std::string>().find("(-2,2)"), std::string::npos);
  EXPECT_NE(p.message.find("known inconsistency"), std::string::npos);
  // deg Psi vanishing inside the box
  json bad = json::parse(read_file(data("ldp.divpoly.json")));
  bad["pieces"][0]["affines"] = json::parse(R"([{"gradient":[0],"constant":"0"}])");
  EXPECT_EQ(run_on("validate", bad.dump()).code, kNegative);
}

TEST(Cli, GenusOverride) {
  json j = json::parse(read_file(data("ldp.sf.json")));
  json curve = {{"kind", "abstract"}, {"genus", 0}, {"points", json::array({"0", "inf", "1"})}};
  j["base"]["curve"] = curve;
  Request req;
  req.genus_override = 1;
  Result r = run_on("normality", j.dump(), req);
  EXPECT_EQ(r.code, kUnknown) << r.message;
  EXPECT_EQ(json::parse(r.output)["normality"], "unknown");
  EXPECT_EQ(run_on("validate", j.dump(), req).code, kUnknown);
  json p = json::parse(read_file(data("ldp.divpoly.json")));
  EXPECT_EQ(run_on("invariants", p.dump(), req).code, kError);
}

TEST(Cli, ParseErrors) {
  Result m = run_on("validate", "{ not json");
  EXPECT_EQ(m.code, kError);
  EXPECT_NE(m.message.find("malformed"), std::string::npos);
  json j = json::parse(read_file(data("ldp.divpoly.json")));
  j["pieces"][0]["affines"][1].erase("constant");
  Result r = run_on("invariants", j.dump());
  EXPECT_EQ(r.code, kError);
  EXPECT_NE(r.message.find("$.pieces[0].affines[1]: missing key 'constant'"), std::string::npos) << r.message;
  json k = json::parse(read_file(data("ldp.divpoly.json")));
  k["box"]["vertices"][0][0] = "x/2";
  EXPECT_NE(run_on("validate", k.dump()).message.find("$.box.vertices[0][0]"), std::string::npos);
  EXPECT_EQ(run_on("validate", R"({"type":"nope"})").code, kError);
  EXPECT_EQ(run_on("validate", R"({"foo":1})").code, kError);
  Request none;
  none.command = "validate";
  EXPECT_EQ(run(none).code, kError);
  Request missing;
  missing.command = "validate";
  missing.inputs = {"/nonexistent/file.json"};
  EXPECT_EQ(run(missing).code, kError);
}

TEST(Cli, Render) {
  Request svg;
  svg.format = "svg";
  Result a = run_file("render", "ldp.fansy.json", svg);
  ASSERT_EQ(a.code, kOk) << a.message;
  EXPECT_EQ(a.output, run_file("render", "ldp.fansy.json", svg).output);
  EXPECT_EQ(a.output.rfind("<svg", 0), 0u);
  for (const char* label : {">0<", ">1<", ">2<", ">-1/2<", "marked:"}) EXPECT_NE(a.output.find(label), std::string::npos) << label;
  Result g = run_file("render", "ldp.divpoly.json", svg);
  ASSERT_EQ(g.code, kOk);
  EXPECT_NE(g.output.find("Psi_0"), std::string::npos);
  EXPECT_NE(g.output.find("Psi_inf"), std::string::npos);
  EXPECT_EQ(run_file("render", "ldp.sf.json", svg).code, kOk);
  EXPECT_EQ(run_file("render", "ldp.pdiv.json", svg).code, kError);
  EXPECT_EQ(run_file("render", "ldp.divpoly.json").code, kError);
  // rank 2 box
  json r2 = json::parse(R"({"curve":{"kind":"P1","points":[{"label":"0","coord":"0"}]},
    "box":{"vertices":[[0,0],[1,0],[0,1]],"rays":[]},"pieces":[]})");
  EXPECT_EQ(run_on("render", r2.dump(), svg).code, kError);
}

TEST(Cli, Binary) {
  std::string bin = DIVPOLY_CLI_PATH;
  auto status = [](const std::string& cmd) {
    int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status(bin + " invariants --in " + data("ldp.divpoly.json")), 0);
  EXPECT_EQ(status(bin + " validate --in " + data("printed.pdiv.json")), 1);
  EXPECT_EQ(status(bin + " normality --in " + data("nonnormal.divpoly.json")), 1);
  EXPECT_EQ(status(bin + " render --in " + data("ldp.pdiv.json") + " --format svg"), 2);
  EXPECT_EQ(status(bin + " nosuch --in " + data("ldp.pdiv.json")), 2);
  EXPECT_EQ(status(bin + " invariants"), 2);
  EXPECT_EQ(status(bin + " invariants --in " + data("ldp.divpoly.json") + " --hilbert-k 1,2"), 0);
}
