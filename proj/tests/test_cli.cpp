#include "warplab/cli.hpp"
#include "warplab/io.hpp"
#include "warplab/regions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace warplab;
namespace fs = std::filesystem;
using io::Json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
    fs::path dir;

    Json json(const std::string& name) const { return Json::parse(io::read_file((dir / name).string())); }
    std::string text(const std::string& name) const { return io::read_file((dir / name).string()); }
};

fs::path scratch(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / ("warplab_cli_" + name);
    fs::remove_all(d);
    return d;
}

CliRun run(const std::string& name, std::vector<std::string> args)
{
    CliRun r;
    r.dir = scratch(name);
    args.push_back("--out");
    args.push_back(r.dir.string());
    std::ostringstream out, err;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

// Numbers within 1e-10 relative, everything else exact.
void expect_json_close(const Json& a, const Json& b, const std::string& path = "$")
{
    if (a.is_number() && b.is_number()) {
        double x = a.get<double>(), y = b.get<double>();
        EXPECT_NEAR(x, y, 1e-10 * std::max(1.0, std::abs(y))) << path;
        return;
    }
    ASSERT_EQ(a.type(), b.type()) << path;
    if (a.is_object()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        auto ia = a.begin();
        for (auto ib = b.begin(); ib != b.end(); ++ia, ++ib) {
            ASSERT_EQ(ia.key(), ib.key()) << path;
            expect_json_close(ia.value(), ib.value(), path + "." + ia.key());
        }
    } else if (a.is_array()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        for (std::size_t i = 0; i < a.size(); ++i) expect_json_close(a[i], b[i], path + "[" + std::to_string(i) + "]");
    } else {
        EXPECT_EQ(a, b) << path;
    }
}

} // namespace

TEST(Cli, InfoReportsHorizon)
{
    CliRun r = run("info_ss", {"--command", "info", "--spec", R"({"family":"SS","n":3,"m":0.1,"c":0})"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_DOUBLE_EQ(r.json("manifold.json")["domain"]["s0"].get<double>(), 0.1);
    Json m = r.json("manifest.json");
    EXPECT_EQ(m["tool"], "warplab");
    EXPECT_EQ(m["version"], version());
    EXPECT_EQ(m["exit_code"], 0);
    EXPECT_EQ(m["outputs"], Json({"manifold.json", "curvature.csv"}));
}

TEST(Cli, InvalidSpecNamesConstraint)
{
    CliRun r = run("info_rn_bad", {"--command", "info", "--spec", R"({"family":"RN","n":3,"m":1,"q":0.6})"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("m>2q"), std::string::npos) << r.err;
}

TEST(Cli, HyperbolicCurvatureRows)
{
    CliRun r = run("info_h3", {"--command", "info", "--spec", R"({"family":"SpaceForm","n":3,"c":-1})"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.text("curvature.csv"));
    ASSERT_EQ(rows.size(), 65u);
    EXPECT_EQ(rows[0][4], "ric_radial");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::stod(rows[i][4]), -2.0, 1e-9) << i;
}

TEST(Cli, VerifySliceIsEquality)
{
    CliRun r = run("verify_slice", {"--command", "verify", "--spec", R"({"family":"SS","n":3,"m":0.3,"c":-1})",
                                 "--mesh", R"({"kind":"slice","s":0.4})", "--cases", "ss-i"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json reps = r.json("reports.json");
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0]["verdict"], "Equality");
    EXPECT_EQ(reps[0]["name"], "ss-i");
}

TEST(Cli, ForcedMinimalSliceViolatesMinkowski)
{
    CliRun r = run("verify_forced", {"--command", "verify", "--spec", R"({"family":"SS","n":3,"m":0.3,"c":0})",
                                  "--mesh", R"({"kind":"slice","s":1.0,"force_minimal":true})"});
    EXPECT_EQ(r.code, 1);
    Json reps = r.json("reports.json");
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0]["name"], "hsiung-minkowski");
    EXPECT_EQ(reps[0]["verdict"], "Violated");
}

TEST(Cli, ChargedConeAboveS2Holds)
{
    ManifoldSpec s;
    s.family = Family::ReissnerNordstrom;
    s.n = 4;
    s.m = 1.0;
    s.q = 0.25;
    double r_lo = radial_coordinate(s, 1.2 * rn_thresholds(s).s2);
    Json mesh{{"kind", "cone"}, {"k", 2}, {"cap_angle", 1.0}, {"r_lo", r_lo}, {"r_hi", r_lo + 3.0}};
    CliRun r = run("verify_rn_cone",
                {"--command", "verify", "--spec", R"({"family":"RN","n":4,"m":1,"q":0.25})", "--mesh", mesh.dump()});
    ASSERT_EQ(r.code, 0) << r.err;
    Json reps = r.json("reports.json");
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0]["name"], "rn-ii");
    EXPECT_EQ(reps[0]["verdict"], "Holds");
}

TEST(Cli, SliceSweepIsEqualityAcrossThreshold)
{
    // quotient threshold of SS n=3, m=0.3 is 0.45
    CliRun r = run("sweep_s", {"--command", "sweep", "--spec", R"({"family":"SS","n":3,"m":0.3,"c":0})", "--sweep",
                            "s=0.35:0.8:10", "--resolution", "1024"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.text("sweep.csv"));
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0][0], "s");
    EXPECT_EQ(rows[0][1], "fundamental.lhs");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][5], "Equality") << i;
}

TEST(Cli, C1SweepChangesSignAtOnset)
{
    ManifoldSpec s;
    s.family = Family::DeSitterSchwarzschild;
    s.n = 3;
    s.m = 0.3;
    double onset = c1_onset(s, 3);
    CliRun r = run("sweep_d", {"--command", "sweep", "--spec", R"({"family":"SS","n":3,"m":0.3,"c":0})", "--sweep",
                            "d=0.3105:0.4395:130", "--band", "0.3:2.0"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.text("sweep.csv"));
    EXPECT_EQ(rows[0][1], "C1");
    double last_neg = 0.0, first_pos = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double d = std::stod(rows[i][0]), C = std::stod(rows[i][1]);
        if (C <= 0.0) last_neg = d;
        else if (first_pos == 0.0) first_pos = d;
    }
    EXPECT_LT(last_neg, onset);
    EXPECT_GT(first_pos, onset);
    EXPECT_LT(first_pos - last_neg, 0.0011);
}

TEST(Cli, ConfigFileAndFlagOverride)
{
    fs::path cfg = scratch("config_file.json");
    io::write_file(cfg.string(), R"({"command":"info","spec":{"family":"SpaceForm","n":3,"c":0},"resolution":128})");
    CliRun r = run("config", {"--config", cfg.string(), "--resolution", "256"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json("manifest.json")["config"]["resolution"], 256);
    CliRun bad = run("bad_res", {"--config", cfg.string(), "--resolution", "16"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("resolution>=64"), std::string::npos);
    CliRun key = run("bad_key", {"--command", "info", "--spec", R"({"family":"SpaceForm","n":3,"x":1})"});
    EXPECT_EQ(key.code, 2);
}

TEST(Cli, MonotonicityCommand)
{
    CliRun r = run("mono", {"--command", "monotonicity", "--spec", R"({"family":"SpaceForm","n":3,"c":0})", "--mesh",
                         R"({"kind":"cone","k":2,"cap_angle":1.5707963267948966,"r_lo":0,"r_hi":5})"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = r.json("monotonicity.json");
    EXPECT_TRUE(j["V1"]["monotone"].get<bool>());
    EXPECT_NEAR(j["growth"]["polynomial"]["order"].get<double>(), 2.0, 0.02);
    auto rows = csv_rows(r.text("trace_v2.csv"));
    EXPECT_EQ(rows[0], (std::vector<std::string>{"r", "h", "V", "volume", "bound"}));
}

TEST(Cli, OutputsAreByteIdentical)
{
    std::vector<std::string> args{"--command", "verify", "--spec", R"({"family":"SpaceForm","n":3,"c":-1})",
                                  "--mesh", R"({"kind":"graph","r0":1,"eps":0.2,"mode":"random"})",
                                  "--seed", "7", "--resolution", "2048"};
    CliRun a = run("det_a", args);
    CliRun b = run("det_b", args);
    ASSERT_EQ(a.code, b.code);
    EXPECT_EQ(a.text("reports.json"), b.text("reports.json"));
    EXPECT_EQ(a.json("manifest.json")["config_hash"], b.json("manifest.json")["config_hash"]);
}

TEST(Cli, GoldenReports)
{
    CliRun r = run("golden", {"--command", "verify", "--spec", R"({"family":"SS","n":4,"m":0.2,"c":-1})", "--mesh",
                           R"({"kind":"slice","s":1.5})", "--cases", "fundamental,ss-iii,ss-iv,hsiung-minkowski",
                           "--resolution", "1024"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string golden = std::string(WARPLAB_GOLDEN_DIR) + "/ss_slice_reports.json";
    if (std::getenv("WARPLAB_UPDATE_GOLDEN")) io::write_file(golden, r.text("reports.json"));
    expect_json_close(r.json("reports.json"), Json::parse(io::read_file(golden)));
}
