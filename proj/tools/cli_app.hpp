#ifndef DMHS_TOOLS_CLI_APP_HPP
#define DMHS_TOOLS_CLI_APP_HPP

#include "json_io.hpp"

#include <dmhs/gallery/coordinates.hpp>
#include <dmhs/gallery/models.hpp>
#include <dmhs/gallery/nocks.hpp>
#include <dmhs/mhs/monodromy.hpp>
#include <dmhs/mhs/mhs_point.hpp>
#include <dmhs/mhs/splitting.hpp>
#include <dmhs/sl2/mild.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace dmhs::cli {

using io::json;

struct Options {
    std::string input;
    std::string inline_json;
    std::string emit = "json";
    int grid_depth = 20;
    double tol = 1e-8;
    unsigned long seed = 0;
};

struct Context {
    Options opt;
    std::istream* in = &std::cin;
    std::ostream* out = &std::cout;

    json load() const {
        std::string text;
        if (!opt.inline_json.empty()) {
            text = opt.inline_json;
        } else if (opt.input.empty()) {
            throw ValidationError("this subcommand needs --input FILE|- or --json TEXT");
        } else if (opt.input == "-") {
            std::ostringstream ss;
            ss << in->rdbuf();
            text = ss.str();
        } else {
            std::ifstream f(opt.input);
            if (!f) throw ValidationError("cannot read input file " + opt.input);
            std::ostringstream ss;
            ss << f.rdbuf();
            text = ss.str();
        }
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("malformed JSON: ") + e.what());
        }
    }

    void emit_json(json doc) const {
        doc["schema"] = "1";
        *out << doc.dump(2) << "\n";
    }
    void require_json(const char* cmd) const {
        if (opt.emit != "json") throw ValidationError(std::string("--emit ") + opt.emit + " is not available for " + cmd);
    }
};

// --- adapters for the mixed Hodge core ---

inline json write_hodge_data(const HodgeData& hd) {
    json pj = json::object(), hj = json::object();
    for (auto& [w, p] : hd.pairings()) pj[std::to_string(w)] = io::write_matrix(p);
    for (auto& [pq, d] : hd.hodge_numbers()) hj[std::to_string(pq.first) + "," + std::to_string(pq.second)] = d;
    return {{"rank", hd.rank()}, {"W", io::write_filtration(hd.W())}, {"pairings", pj}, {"hodge_numbers", hj}};
}

inline json write_orbit(const NilpotentOrbit& o) {
    json j = write_hodge_data(o.data);
    j["F"] = io::write_hodge_filtration(o.f);
    json ns = json::array();
    for (auto& n : o.n) ns.push_back(io::write_matrix(n));
    j["nilpotents"] = ns;
    return j;
}

// W and N in original coordinates -> graded frame and adapted N.
struct FramedNilpotent {
    QFiltration w;
    GradedFrame frame;
    QMatrix basis, basis_inv;
    std::vector<QMatrix> adapted;
};

inline FramedNilpotent read_framed(const json& j, const std::vector<std::string>& keys) {
    FramedNilpotent out;
    std::size_t n = io::read_rank(j);
    out.w = io::read_weight_filtration(io::field(j, "W", ""), "/W", n);
    AdaptedBasis ab = adapted_basis(out.w);
    out.basis = ab.basis;
    out.basis_inv = inverse_or_throw(ab.basis, "adapted basis");
    out.frame = GradedFrame{ab.weights};
    for (auto& k : keys) {
        QMatrix m = io::read_qmatrix(io::field(j, k, ""), "/" + k, n);
        QMatrix a = out.basis_inv * m * out.basis;
        if (!out.frame.preserves(a)) throw io::bad("/" + k, "does not preserve W");
        out.adapted.push_back(a);
    }
    return out;
}

inline void cmd_rmf(const Context& cx) {
    cx.require_json("rmf");
    json j = cx.load();
    auto fn = read_framed(j, {"N"});
    QMatrix n = fn.basis * fn.adapted[0] * fn.basis_inv;
    auto m = relative_monodromy(fn.w, n);
    json out = {{"exists", m.has_value()}};
    if (m) out["M"] = io::write_filtration(*m);
    cx.emit_json(out);
}

inline void cmd_delta(const Context& cx) {
    cx.require_json("delta");
    json j = cx.load();
    MhsPoint x = io::read_mhs_point(j);
    DomainCheck dc = validate_point(x);
    if (!dc.in_d()) throw ValidationError("point is not in D: " + dc.failure);
    auto d = decompose(x);
    json out = {{"delta", io::write_matrix(d.delta)}, {"spl", io::write_matrix(d.spl)}};
    if (io::has(j, "delta_basis")) {
        const json& bj = io::array(j["delta_basis"], "/delta_basis");
        std::size_t n = x.data.rank();
        QMatrix a(n * n, bj.size()), rhs(n * n, 1);
        for (std::size_t k = 0; k < bj.size(); ++k) {
            QMatrix b = io::read_qmatrix(bj[k], "/delta_basis/" + std::to_string(k), n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) a(r * n + c, k) = b(r, c);
        }
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) rhs(r * n + c, 0) = d.delta(r, c);
        auto sol = solve(a, rhs);
        if (!sol) throw ValidationError("delta is not in the span of delta_basis");
        out["delta_coordinates"] = gallery::format_vector(sol->column(0));
    }
    cx.emit_json(out);
}

inline void cmd_split_test(const Context& cx) {
    cx.require_json("split-test");
    auto fn = read_framed(cx.load(), {"N"});
    auto s = compatible_splitting(fn.frame, fn.adapted[0]);
    json out = {{"splits", s.has_value()}};
    if (s) out["splitting"] = io::write_matrix(fn.basis * *s);
    cx.emit_json(out);
}

inline void cmd_pencil_split(const Context& cx) {
    cx.require_json("pencil-split");
    auto fn = read_framed(cx.load(), {"N1", "N2"});
    PencilResult p = splits_pencil(fn.frame, fn.adapted[0], fn.adapted[1]);
    json ex = json::array();
    for (auto& t : p.exceptional) ex.push_back(to_string(t));
    json out = {{"splits", p.split}, {"exceptional", ex}};
    out["failing_t"] = p.failing_t ? json(to_string(*p.failing_t)) : json(nullptr);
    cx.emit_json(out);
}

inline void cmd_validate_orbit(const Context& cx) {
    cx.require_json("validate-orbit");
    NilpotentOrbit o = io::read_orbit(cx.load());
    OrbitValidation v = validate_orbit(o);
    json rel = json::array();
    for (auto& f : v.relative) rel.push_back(io::write_filtration(f));
    cx.emit_json({{"valid", true}, {"relative", rel}, {"sample", io::write_vector(v.sample)}});
}

inline void cmd_sl2_limit(const Context& cx) {
    cx.require_json("sl2-limit");
    NilpotentOrbit o = io::read_orbit(cx.load());
    Sl2LimitData d = sl2_limit(o);
    json rel = json::array(), phi = json::array(), tw = json::array();
    for (auto& f : d.relative) rel.push_back(io::write_filtration(f));
    for (auto& f : d.phi) phi.push_back(io::write_filtration(f));
    for (auto& t : d.torus_weights) tw.push_back({{"weights", t.weights}, {"space", io::write_matrix(t.space.rows())}});
    cx.emit_json({{"kind", d.kind == OrbitKind::A ? "A" : "B"},
                  {"relative", rel},
                  {"phi_index", d.phi_index},
                  {"phi", phi},
                  {"r_hat", io::write_hodge_filtration(d.r_hat)},
                  {"torus_weights", tw}});
}

inline void cmd_mild(const Context& cx) {
    cx.require_json("mild");
    NilpotentOrbit o = io::read_orbit(cx.load());
    validate_orbit(o);
    MildResult m = is_mild(o);
    cx.emit_json({{"mild", m.mild}, {"exact", m.exact}, {"samples", m.samples}, {"failing", io::write_vector(m.failing)}});
}

inline void cmd_diamond(const Context& cx) {
    cx.require_json("diamond");
    NilpotentOrbit o = io::read_orbit(cx.load());
    DiamondPoint d = diamond_point(o);
    json comps = json::object();
    for (auto& [w, m] : d.components) {
        std::string key;
        for (int x : w) key += (key.empty() ? "" : ",") + std::to_string(x);
        comps[key] = io::write_matrix(m);
    }
    cx.emit_json({{"in_L", d.in_l},
                  {"weights_nonpositive", d.weights_nonpositive},
                  {"zero_component_in_L", d.zero_component_in_l},
                  {"zero_component_matches", d.zero_component_matches},
                  {"s", io::write_matrix(d.s)},
                  {"delta", io::write_matrix(d.delta)},
                  {"components", comps}});
}

inline json probe_json(const ProbeResult& p) {
    return {{"verdict", p.converges ? "converges" : "diverges"},
            {"converges", p.converges},
            {"limit", p.limit},
            {"cauchy_constant", p.cauchy_constant},
            {"cauchy_bound_holds", p.cauchy_bound_holds},
            {"loglog_slope", p.loglog_slope},
            {"linear_slope", p.linear_slope},
            {"linear_intercept", p.linear_intercept},
            {"dominant_entry", {p.dominant_row, p.dominant_col}}};
}

inline void cmd_probe(const Context& cx) {
    NilpotentOrbit o = io::read_orbit(cx.load());
    validate_orbit(o);
    ProbeResult p = probe_delta_convergence(o, cx.opt.grid_depth, cx.opt.tol);
    if (cx.opt.emit == "csv") {
        std::ostream& os = *cx.out;
        os.precision(17);
        os << "t,y1";
        for (std::size_t k = 0; k < p.samples.front().delta.size(); ++k) os << ",delta_" << k / o.data.rank() << "_" << k % o.data.rank();
        os << "\n";
        for (auto& s : p.samples) {
            os << s.t << "," << s.y1;
            for (double x : s.delta) os << "," << x;
            os << "\n";
        }
        return;
    }
    cx.require_json("probe");
    cx.emit_json(probe_json(p));
}

inline void cmd_r1eq(const Context& cx) {
    cx.require_json("r1eq");
    NilpotentOrbit o = io::read_orbit(cx.load());
    R1eqReport r = r1eq_battery(o, cx.opt.grid_depth, cx.opt.tol);
    cx.emit_json({{"mild", r.mild},
                  {"converges", r.converges},
                  {"split_point_delta_zero", r.split_point_delta_zero},
                  {"splitting_compatible", r.splitting_compatible},
                  {"unanimous", r.unanimous()},
                  {"probe", probe_json(r.probe)}});
}

inline void cmd_nocks(const Context& cx, int m) {
    cx.require_json("nocks");
    gallery::NoCksReport r = gallery::nocks_report(m);
    auto path = [](const std::vector<gallery::NoCksSample>& ps) {
        json a = json::array();
        for (auto& s : ps) a.push_back({{"y1", to_string(s.y1)}, {"y2", to_string(s.y2)}, {"u", to_string(s.u)}, {"delta_e", io::write_vector(s.delta_e)}});
        return a;
    };
    cx.emit_json({{"m", r.m},
                  {"epsilon", r.epsilon},
                  {"w_nonzero", r.w_nonzero},
                  {"claim_holds", r.claim_holds},
                  {"direction", io::write_vector(r.direction)},
                  {"direction_constant", r.direction_constant},
                  {"direction_is_projection", r.direction_is_projection},
                  {"limit_gap", r.limit_gap},
                  {"path_y1_eq_y2_pow4", path(r.path4)},
                  {"path_y1_eq_y2_pow5", path(r.path5)}});
}

// --- monoids ---

inline json pair_values(const FsMonoid& m, const json& j, const std::function<ExtendedRational(const IntVec&, const IntVec&)>& r) {
    json out = json::array();
    if (!io::has(j, "pairs")) return out;
    const json& pj = io::array(j["pairs"], "/pairs");
    for (std::size_t k = 0; k < pj.size(); ++k) {
        std::string p = "/pairs/" + std::to_string(k);
        if (!pj[k].is_array() || pj[k].size() != 2) throw io::bad(p, "expected [f, g]");
        IntVec f = io::read_intvec(pj[k][0], p + "/0", m.ambient_rank()), g = io::read_intvec(pj[k][1], p + "/1", m.ambient_rank());
        out.push_back(to_string(io::wrap(p, [&] { return r(f, g); })));
    }
    return out;
}

inline void cmd_ratio(const Context& cx, const std::string& action) {
    cx.require_json("ratio");
    json j = cx.load();
    FsMonoid m = io::read_monoid(io::field(j, "monoid", ""), "/monoid");
    json out = {{"monoid", io::write_monoid(m)}};
    if (action == "to-chart") {
        RatioPoint p = io::read_ratio_point(m, io::field(j, "point", ""), "/point");
        out["chart"] = io::write_vector(chart_Nn(m, p));
        out["pair_values"] = pair_values(m, j, pair_map_of(m, p));
    } else if (action == "from-chart") {
        auto t = io::read_rows<Rational>(json::array({io::field(j, "chart", "")}), "/chart", 0, io::read_rational)[0];
        RatioPoint p = chart_Nn_inverse(m, t);
        out["point"] = io::write_ratio_point(p);
    } else if (action == "lift") {
        RatioPoint p = io::read_ratio_point(m, io::field(j, "point", ""), "/point");
        LexValuation v = ratio_lift_valuation(m, p);
        json vj = json::array();
        for (auto& l : v.functionals) vj.push_back(io::write_vector(l));
        out["valuation"] = vj;
    } else if (action == "push") {
        LexValuation v = io::read_valuation(m, io::field(j, "valuation", ""), "/valuation");
        RatioPoint p = valuation_to_ratio(m, v);
        out["point"] = io::write_ratio_point(p);
        out["pair_values"] = pair_values(m, j, [&v](const IntVec& f, const IntVec& g) { return valuation_pair(v, f, g); });
    } else {
        throw ValidationError("unknown ratio action " + action);
    }
    cx.emit_json(out);
}

inline LimitValue parse_limit_value(const std::string& s) {
    if (s == "inf") return LimitValue::inf();
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos) {
        try {
            return LimitValue::approx(std::stod(s));
        } catch (const std::exception&) {
            throw ValidationError("malformed number " + s);
        }
    }
    return LimitValue::of(parse_rational(s));
}

inline void cmd_classify(const Context& cx, const std::string& linear, const std::string& power) {
    cx.require_json("classify-limit");
    PathSpec path;
    if (!linear.empty() && !power.empty()) throw ValidationError("give at most one of --linear and --power");
    if (!linear.empty()) path = linear_path(parse_rational(linear));
    else if (!power.empty()) path = power_exponential_path(parse_limit_value(power));
    else path = io::read_path(cx.load());
    LimitClassification c = classify_limit(path);
    cx.emit_json({{"ratio", io::write_label(c.ratio)}, {"val", io::write_label(c.val)}, {"ratio_val", io::write_label(c.ratio_val)}});
}

// --- gallery ---

struct GalleryArgs {
    std::string a = "0", b = "0", space, t, y, no_ii_star;
    bool limit = false, mhs_point = false, orbit = false;
};

inline Rational t_from_args(const GalleryArgs& g) {
    if (!g.t.empty() && !g.y.empty()) throw ValidationError("give at most one of --t and --y");
    if (!g.t.empty()) {
        Rational t = parse_rational(g.t);
        if (sgn(t) <= 0) throw ValidationError("t must be positive");
        return t;
    }
    Rational y = parse_rational(g.y);
    if (sgn(y) <= 0) throw ValidationError("y must be positive");
    mpz_class n = y.get_num(), d = y.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        throw ValidationError("t = y^(-1/2) is irrational; give --t instead");
    return Rational(mpz_class(sqrt(d)), mpz_class(sqrt(n)));
}

inline json point_json(const gallery::GalleryPoint& p, bool packed) {
    return {{"t", to_string(p.t)}, {"delta", io::write_vector(p.delta)}, {"x", to_string(p.x)}, {"s", io::write_vector(p.s)},
            {"coordinate", gallery::format_point(p, packed)}};
}

inline std::vector<gallery::Space> spaces_of(const GalleryArgs& g) {
    if (!g.space.empty()) return {gallery::parse_space(g.space)};
    std::vector<gallery::Space> out;
    for (auto& [s, name] : gallery::space_names()) out.push_back(s);
    return out;
}

// Exact rationals by default; decimals for gnuplot, which cannot read p/q.
inline void gallery_csv(const Context& cx, const GalleryArgs& g, bool four, bool decimal = false) {
    Rational a = parse_rational(g.a), b = parse_rational(g.b);
    std::ostream& os = *cx.out;
    if (decimal) os.precision(17);
    auto num = [decimal](const Rational& x) {
        if (!decimal) return to_string(x);
        std::ostringstream s;
        s.precision(17);
        s << to_double(x);
        return s.str();
    };
    std::size_t nd = four ? 1 : 2, ns = four ? 5 : 2;
    os << "y,t,space";
    for (std::size_t k = 1; k <= nd + 1 + ns; ++k) os << ",coord_" << k;
    os << "\n";
    auto spaces = spaces_of(g);
    std::vector<gallery::Trajectory> trs;
    for (auto sp : spaces) trs.push_back(four ? gallery::example4_trajectory(a, b, sp) : gallery::example3_trajectory(a, b, sp));
    for (int k = 1; k <= cx.opt.grid_depth; ++k) {
        Rational t(1, 1);
        for (int i = 0; i < k; ++i) t /= 2;
        for (std::size_t i = 0; i < spaces.size(); ++i) {
            auto p = trs[i].at(t);
            os << num(gallery::detail::inverse_square(t)) << "," << num(t) << "," << gallery::to_string(spaces[i]);
            for (auto& v : p.delta) os << "," << num(v);
            os << "," << num(p.x);
            for (auto& v : p.s) os << "," << num(v);
            os << "\n";
        }
    }
}

inline void gallery_gnuplot(const Context& cx, const GalleryArgs& g, bool four) {
    std::ostringstream data;
    Context c2 = cx;
    c2.out = &data;
    gallery_csv(c2, g, four, true);
    std::ostream& os = *cx.out;
    os << "# delta coordinates against t, one curve per chart\n";
    os << "$data << EOD\n" << data.str() << "EOD\n";
    os << "set datafile separator ','\nset logscale x\nset xlabel 't'\nset key outside\n";
    auto spaces = spaces_of(g);
    os << "plot ";
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        std::string name = gallery::to_string(spaces[i]);
        if (i) os << ", \\\n     ";
        os << "$data using (strcol(3) eq '" << name << "' ? $2 : 1/0):4 with linespoints title '" << name << " delta_1'";
    }
    os << "\n";
}

inline void cmd_gallery(const Context& cx, const GalleryArgs& g, bool four) {
    Rational a = parse_rational(g.a), b = parse_rational(g.b);
    if (sgn(a) < 0) throw ValidationError("a must be >= 0");
    if (cx.opt.emit == "csv") return gallery_csv(cx, g, four);
    if (cx.opt.emit == "gnuplot") return gallery_gnuplot(cx, g, four);
    cx.require_json(four ? "example4" : "example3");
    json out = {{"example", four ? "IV" : "III"}, {"a", to_string(a)}, {"b", to_string(b)}};
    if (g.orbit) {
        out["orbit"] = write_orbit(four ? gallery::example4_orbit(a, b) : gallery::example3_orbit(a, b));
        return cx.emit_json(out);
    }
    if (g.mhs_point) {
        // the orbit point exp(i y N_a) F_b, with the chart basis of delta attached
        Rational t = t_from_args(g);
        NilpotentOrbit o = four ? gallery::example4_orbit(a, b) : gallery::example3_orbit(a, b);
        json p = write_hodge_data(o.data);
        p["F"] = io::write_hodge_filtration(orbit_point_imag(o, {gallery::detail::inverse_square(t)}));
        std::size_t n = o.data.rank();
        json basis = json::array();
        std::vector<std::pair<std::size_t, std::size_t>> units = four ? std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}}
                                                                      : std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}};
        for (auto [r, c] : units) {
            QMatrix e(n, n);
            e(r, c) = 1;
            basis.push_back(io::write_matrix(e));
        }
        p["delta_basis"] = basis;
        return cx.emit_json(p);
    }
    if (!g.no_ii_star.empty()) {
        if (four) throw ValidationError("--no-ii-star applies to example3 only");
        auto d = gallery::no_ii_star_demo(parse_rational(g.no_ii_star));
        out["c"] = to_string(d.c);
        out["weak_diamond_limit"] = gallery::format_limit(d.weak_limit, false);
        out["star_limit"] = gallery::format_limit(d.star_limit, false);
        return cx.emit_json(out);
    }
    auto spaces = spaces_of(g);
    if (g.limit) {
        json lim = json::object();
        for (auto sp : spaces) {
            if (spaces.size() == 1) {
                auto l = four ? gallery::example4_limit(a, b, sp) : gallery::example3_limit(a, b, sp);
                lim[gallery::to_string(sp)] = gallery::format_limit(l, four);
                continue;
            }
            try {
                auto l = four ? gallery::example4_limit(a, b, sp) : gallery::example3_limit(a, b, sp);
                lim[gallery::to_string(sp)] = gallery::format_limit(l, four);
            } catch (const ValidationError& e) {
                lim[gallery::to_string(sp)] = json{{"error", e.what()}};
            }
        }
        out["limits"] = lim;
        if (spaces.size() == 1) out["limit"] = lim.begin().value();
        return cx.emit_json(out);
    }
    if (g.t.empty() && g.y.empty()) throw ValidationError("give --limit, or a point with --t or --y");
    Rational t = t_from_args(g);
    json pts = json::object();
    for (auto sp : spaces) pts[gallery::to_string(sp)] = point_json(four ? gallery::example4_point(a, b, t, sp) : gallery::example3_point(a, b, t, sp), four);
    out["points"] = pts;
    cx.emit_json(out);
}

// --- asymptotics ---

inline json asymptotic_json(const AsymptoticPair& p, bool untwisted) {
    json out = {{"a", to_string(p.a)}};
    out["b"] = p.b ? json(*p.b) : json(nullptr);
    out["diagnostics"] = {{"untwisted", untwisted}, {"a_zero", sgn(p.a) == 0}};
    return out;
}

inline void cmd_regulator(const Context& cx) {
    cx.require_json("regulator");
    json j = cx.load();
    auto alpha = io::read_divisor(io::field(j, "alpha", ""), "/alpha");
    auto beta = io::read_divisor(io::field(j, "beta", ""), "/beta");
    auto p = k2_regulator_asymptotics(alpha, beta);
    cx.emit_json(asymptotic_json(p, all_untwisted(alpha) && all_untwisted(beta)));
}

inline void cmd_height(const Context& cx) {
    cx.require_json("height");
    json j = cx.load();
    auto ys = io::read_divisor(io::field(j, "Y", ""), "/Y");
    auto zs = io::read_divisor(io::field(j, "Z", ""), "/Z");
    auto p = height_asymptotics(ys, zs);
    cx.emit_json(asymptotic_json(p, all_untwisted(ys) && all_untwisted(zs)));
}

// Exit codes: 0 ok, 1 internal error, 2 validation error (including bad
// flags and malformed JSON), 3 unsupported depth.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr, std::istream& in = std::cin) {
    CLI::App app{"Degenerations of mixed Hodge structures: exact computations and examples"};
    app.require_subcommand(1);
    Context cx;
    cx.in = &in;
    cx.out = &out;
    Options& o = cx.opt;
    auto globals = [&o](CLI::App* c) {
        c->add_option("--input", o.input, "JSON input file, or - for stdin");
        c->add_option("--json", o.inline_json, "inline JSON input");
        c->add_option("--emit", o.emit, "output format")->check(CLI::IsMember({"json", "csv", "gnuplot"}));
        c->add_option("--grid-depth", o.grid_depth, "number of probe samples (default 20)")->check(CLI::Range(4, 60));
        c->add_option("--tol", o.tol, "convergence tolerance (default 1e-8)")->check(CLI::PositiveNumber);
        c->add_option("--seed", o.seed, "seed for randomized harnesses");
    };
    std::function<void()> action;
    auto simple = [&](const char* name, const char* help, void (*f)(const Context&)) {
        auto* c = app.add_subcommand(name, help);
        globals(c);
        c->callback([&action, &cx, f] { action = [&cx, f] { f(cx); }; });
    };
    simple("rmf", "relative monodromy filtration of {rank, W, N}", cmd_rmf);
    simple("delta", "delta_W and spl_W of a mixed Hodge point", cmd_delta);
    simple("split-test", "does (W, N) split", cmd_split_test);
    simple("pencil-split", "does (W, N1 + t N2) split for every t > 0", cmd_pencil_split);
    simple("validate-orbit", "check the nilpotent orbit conditions", cmd_validate_orbit);
    simple("sl2-limit", "relative filtrations, Phi and the limiting torus orbit", cmd_sl2_limit);
    simple("mild", "mildness of a nilpotent orbit", cmd_mild);
    simple("diamond", "limit point in the diamond space", cmd_diamond);
    simple("probe", "numerical convergence probe of delta along the orbit", cmd_probe);
    simple("r1eq", "one-variable equivalence battery", cmd_r1eq);
    simple("regulator", "K2 regulator asymptotics of two torsion divisors", cmd_regulator);
    simple("height", "height pairing asymptotics of two torsion divisors", cmd_height);

    int m = 3;
    auto* nk = app.add_subcommand("nocks", "rank 2m+1 family without CKS-type convergence");
    globals(nk);
    nk->add_option("--m", m, "family parameter")->check(CLI::Range(1, 8));
    nk->callback([&] { action = [&] { cmd_nocks(cx, m); }; });

    std::string ratio_action;
    auto* ra = app.add_subcommand("ratio", "ratio points of fs monoids");
    globals(ra);
    ra->add_option("action", ratio_action, "to-chart | from-chart | lift | push")->required()->check(CLI::IsMember({"to-chart", "from-chart", "lift", "push"}));
    ra->callback([&] { action = [&] { cmd_ratio(cx, ratio_action); }; });

    std::string linear, power;
    auto* cl = app.add_subcommand("classify-limit", "labels of a degenerating path in the compactified spaces");
    globals(cl);
    cl->add_option("--linear", linear, "the path (c q, q)");
    cl->add_option("--power", power, "the path (exp(-1/t), exp(-1/t^a)); decimals are irrational approximations");
    cl->callback([&] { action = [&] { cmd_classify(cx, linear, power); }; });

    GalleryArgs g3, g4;
    for (int k : {3, 4}) {
        GalleryArgs& g = k == 3 ? g3 : g4;
        auto* c = app.add_subcommand(k == 3 ? "example3" : "example4", k == 3 ? "the rank-3 example with V = R^2" : "the rank-4 example");
        globals(c);
        c->add_option("--a", g.a, "a >= 0");
        c->add_option("--b", g.b, "b");
        c->add_option("--space", g.space, "chart")->check(CLI::IsMember({"standard", "weak_diamond", "diamond", "star", "sl2", "star_val", "sl2_val"}));
        c->add_flag("--limit", g.limit, "limit as y -> inf");
        c->add_option("--t", g.t, "point at t");
        c->add_option("--y", g.y, "point at y = 1/t^2");
        c->add_flag("--mhs-point", g.mhs_point, "emit exp(i y N) F as a mixed Hodge point");
        c->add_flag("--orbit", g.orbit, "emit the nilpotent orbit");
        if (k == 3) c->add_option("--no-ii-star", g.no_ii_star, "limits of (t, t c e2, 0, 0) in the weak diamond and star charts");
        bool four = k == 4;
        c->callback([&, four] { action = [&, four] { cmd_gallery(cx, four ? g4 : g3, four); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        action();
        return 0;
    } catch (const UnsupportedDepthError& e) {
        err << "unsupported depth: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dmhs::cli

#endif
