// In-process golden cases for the command line tool, checked against the library.

#include "cli_app.hpp"

#include <dmhs/gallery/coordinates.hpp>
#include <dmhs/gallery/models.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace dmhs;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

CliResult invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "dmhs");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    CliResult r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, in);
    r.out = out.str();
    r.err = err.str();
    return r;
}

const char* jordan3 = R"({"rank":3,"W":{"1":[["1","0","0"],["0","1","0"],["0","0","1"]]},
                          "N":[["0","1","0"],["0","0","1"],["0","0","0"]]})";

json orbit_json(const std::string& example, const std::string& a, const std::string& b) {
    CliResult r = invoke({example, "--a", a, "--b", b, "--orbit"});
    EXPECT_EQ(r.code, 0) << r.err;
    return r.doc()["orbit"];
}

}  // namespace

TEST(Cli, RmfMatchesLibrary) {
    CliResult r = invoke({"rmf", "--json", jordan3});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = r.doc();
    EXPECT_EQ(j["schema"], "1");
    EXPECT_TRUE(j["exists"].get<bool>());
    QFiltration w(3, {{1, QSubspace::full(3)}});
    auto m = relative_monodromy(w, QMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
    EXPECT_EQ(j["M"], io::write_filtration(*m));
}

TEST(Cli, RmfNonexistent) {
    CliResult r = invoke({"rmf", "--json", R"({"rank":2,"W":{"-1":[["1","0"]],"0":[["1","0"],["0","1"]]},"N":[["0","1"],["0","0"]]})"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_FALSE(r.doc()["exists"].get<bool>());
    EXPECT_FALSE(r.doc().contains("M"));
}

TEST(Cli, MhsPointPipesIntoDelta) {
    CliResult p = invoke({"example3", "--a", "3", "--b", "-2", "--y", "4", "--mhs-point"});
    ASSERT_EQ(p.code, 0) << p.err;
    CliResult d = invoke({"delta", "--input", "-"}, p.out);
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(d.doc()["delta_coordinates"], "-2e1+12e2");
    auto o = gallery::example3_orbit(3, -2);
    auto dec = decompose({o.data, orbit_point_imag(o, {Rational(4)})});
    EXPECT_EQ(d.doc()["delta"], io::write_matrix(dec.delta));
    EXPECT_EQ(d.doc()["spl"], io::write_matrix(dec.spl));
}

TEST(Cli, SplitTestAndPencil) {
    CliResult s = invoke({"split-test", "--json", jordan3});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_TRUE(s.doc()["splits"].get<bool>());
    CliResult t = invoke({"split-test", "--json", R"({"rank":2,"W":{"-2":[["1","0"]],"0":[["1","0"],["0","1"]]},"N":[["0","1"],["0","0"]]})"});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_FALSE(t.doc()["splits"].get<bool>());
    CliResult p = invoke({"pencil-split", "--json",
                 R"({"rank":3,"W":{"-1":[["1","0","0"],["0","1","0"]],"0":[["1","0","0"],["0","1","0"],["0","0","1"]]},
                     "N1":[["0","1","0"],["0","0","0"],["0","0","0"]],"N2":[["0","1","1"],["0","0","0"],["0","0","0"]]})"});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_TRUE(p.doc()["splits"].get<bool>());
    EXPECT_TRUE(p.doc()["failing_t"].is_null());
}

TEST(Cli, OrbitCommands) {
    json mild = orbit_json("example3", "0", "1"), wild = orbit_json("example3", "2", "1");
    CliResult v = invoke({"validate-orbit", "--json", mild.dump()});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_TRUE(v.doc()["valid"].get<bool>());
    EXPECT_EQ(v.doc()["relative"].size(), 1u);
    EXPECT_TRUE(invoke({"mild", "--json", mild.dump()}).doc()["mild"].get<bool>());
    EXPECT_FALSE(invoke({"mild", "--json", wild.dump()}).doc()["mild"].get<bool>());
    CliResult s = invoke({"sl2-limit", "--json", mild.dump()});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_TRUE(s.doc().contains("r_hat"));
    CliResult d = invoke({"diamond", "--json", mild.dump()});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_TRUE(d.doc()["in_L"].get<bool>());
    EXPECT_EQ(invoke({"diamond", "--json", wild.dump()}).code, 2);
}

TEST(Cli, ProbeAndBattery) {
    json wild = orbit_json("example3", "2", "1");
    CliResult p = invoke({"probe", "--json", wild.dump()});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(p.doc()["verdict"], "diverges");
    EXPECT_NEAR(p.doc()["linear_slope"].get<double>(), 2.0, 1e-6);
    CliResult csv = invoke({"probe", "--json", wild.dump(), "--emit", "csv", "--grid-depth", "6"});
    ASSERT_EQ(csv.code, 0) << csv.err;
    EXPECT_EQ(csv.out.rfind("t,y1,delta_0_0", 0), 0u);
    EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 7);
    CliResult b = invoke({"r1eq", "--json", orbit_json("example4", "0", "3").dump()});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_TRUE(b.doc()["unanimous"].get<bool>());
    EXPECT_TRUE(b.doc()["mild"].get<bool>());
}

TEST(Cli, Nocks) {
    CliResult r = invoke({"nocks", "--m", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rep = gallery::nocks_report(3);
    EXPECT_EQ(r.doc()["claim_holds"].get<bool>(), rep.claim_holds);
    EXPECT_DOUBLE_EQ(r.doc()["limit_gap"].get<double>(), rep.limit_gap);
    EXPECT_EQ(r.doc()["direction"], io::write_vector(rep.direction));
}

TEST(Cli, RatioRoundTrip) {
    CliResult f = invoke({"ratio", "from-chart", "--json", R"({"monoid":{"ambient_rank":3,"generators":[[1,0,0],[0,1,0],[0,0,1]]},"chart":["2","0"]})"});
    ASSERT_EQ(f.code, 0) << f.err;
    json point = f.doc()["point"];
    json in = {{"monoid", f.doc()["monoid"]}, {"point", point}, {"pairs", {{{0, 1, 0}, {1, 0, 0}}, {{0, 0, 1}, {0, 1, 0}}, {{1, 0, 0}, {0, 0, 1}}}}};
    CliResult t = invoke({"ratio", "to-chart", "--json", in.dump()});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(t.doc()["chart"], json({"2", "0"}));
    EXPECT_EQ(t.doc()["pair_values"], json({"2", "0", "inf"}));
    CliResult l = invoke({"ratio", "lift", "--json", in.dump()});
    ASSERT_EQ(l.code, 0) << l.err;
    json pushed = {{"monoid", f.doc()["monoid"]}, {"valuation", l.doc()["valuation"]}};
    CliResult p = invoke({"ratio", "push", "--json", pushed.dump()});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(p.doc()["point"], point);
}

TEST(Cli, ClassifyLimit) {
    CliResult r = invoke({"classify-limit", "--linear", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto l = classify_limit(linear_path(Rational(3)));
    EXPECT_EQ(r.doc()["ratio"]["label"], to_string(l.ratio));
    EXPECT_EQ(r.doc()["val"]["label"], to_string(l.val));
    EXPECT_EQ(r.doc()["ratio_val"]["label"], to_string(l.ratio_val));
    CliResult p = invoke({"classify-limit", "--power", "0.70710678"});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(p.doc()["ratio_val"]["a_kind"], "irrational");
}

TEST(Cli, GalleryLimits) {
    CliResult r = invoke({"example3", "--a", "0", "--b", "3", "--limit"});
    ASSERT_EQ(r.code, 0) << r.err;
    json lim = r.doc()["limits"];
    for (auto& [sp, name] : gallery::space_names()) {
        try {
            EXPECT_EQ(lim[name], gallery::format_limit(gallery::example3_limit(0, 3, sp), false));
        } catch (const ValidationError&) {
            EXPECT_TRUE(lim[name].contains("error"));
        }
    }
    CliResult f = invoke({"example4", "--a", "1/2", "--b", "1", "--space", "star_val", "--limit"});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(f.doc()["limit"], "(p(2, 1/2), 0)");
    EXPECT_EQ(invoke({"example3", "--a", "1", "--space", "diamond", "--limit"}).code, 2);
}

TEST(Cli, GalleryPointsAndPlots) {
    CliResult p = invoke({"example3", "--a", "1", "--b", "2", "--t", "1/2", "--space", "sl2"});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(p.doc()["points"]["sl2"]["coordinate"], gallery::format_point(gallery::example3_point(1, 2, Rational(1, 2), gallery::Space::sl2), false));
    CliResult c = invoke({"example3", "--a", "1", "--b", "2", "--emit", "csv", "--grid-depth", "5", "--space", "star"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 6);
    CliResult g = invoke({"example4", "--a", "1", "--emit", "gnuplot", "--grid-depth", "5"});
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_NE(g.out.find("$data << EOD"), std::string::npos);
    std::string data = g.out.substr(0, g.out.find("\nEOD"));
    EXPECT_EQ(data.find('/'), std::string::npos);  // gnuplot needs decimals
}

TEST(Cli, NoIIStar) {
    CliResult r = invoke({"example3", "--no-ii-star", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.doc()["weak_diamond_limit"], "(0, 0, 0, 0)");
    EXPECT_EQ(r.doc()["star_limit"], "(0, 2e2, 0, 0)");
}

TEST(Cli, Asymptotics) {
    json d = json::array({{{"root_angle", "0"}, {"q_exponent", "1/3"}, {"multiplicity", 1}},
                          {{"root_angle", "0"}, {"q_exponent", "0"}, {"multiplicity", -1}}});
    CliResult r = invoke({"regulator", "--json", json{{"alpha", d}, {"beta", d}}.dump()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.doc()["a"], "0");
    EXPECT_TRUE(r.doc()["b"].is_null());
    json y = json::array({{{"root_angle", "1/2"}, {"q_exponent", "1/2"}, {"multiplicity", 1}},
                          {{"root_angle", "0"}, {"q_exponent", "0"}, {"multiplicity", -1}}});
    json z = json::array({{{"root_angle", "1/3"}, {"q_exponent", "0"}, {"multiplicity", 1}},
                          {{"root_angle", "2/3"}, {"q_exponent", "0"}, {"multiplicity", -1}}});
    CliResult h = invoke({"height", "--json", json{{"Y", y}, {"Z", z}}.dump()});
    ASSERT_EQ(h.code, 0) << h.err;
    EXPECT_EQ(h.doc()["a"], "0");
    EXPECT_FALSE(h.doc()["diagnostics"]["untwisted"].get<bool>());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"bogus"}).code, 2);
    EXPECT_EQ(invoke({"rmf", "--json", "{not json"}).code, 2);
    CliResult missing = invoke({"rmf", "--json", R"({"rank":2,"N":[["0","0"],["0","0"]]})"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("at /W"), std::string::npos) << missing.err;
    CliResult bad = invoke({"rmf", "--json", R"({"rank":2,"W":{"0":[["1","0"],["0","1"]]},"N":[["0","x"],["0","0"]]})"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("/N/0/1"), std::string::npos) << bad.err;
    CliResult deep = invoke({"delta", "--json",
                    R"({"rank":2,"W":{"-6":[["1","0"]],"0":[["1","0"],["0","1"]]},"pairings":{"-6":[["1"]],"0":[["1"]]},
                        "hodge_numbers":{"0,0":1,"-3,-3":1},"F":{"0":[["i","1"]],"-3":[["1","0"],["0","1"]]}})"});
    EXPECT_EQ(deep.code, 3) << deep.err;
}

TEST(Cli, OutputIsDeterministic) {
    auto a = invoke({"nocks", "--m", "2"}), b = invoke({"nocks", "--m", "2"});
    EXPECT_EQ(a.out, b.out);
}
