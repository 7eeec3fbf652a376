#ifndef DMHS_TOOLS_JSON_IO_HPP
#define DMHS_TOOLS_JSON_IO_HPP

#include <dmhs/asymptotics/asymptotics.hpp>
#include <dmhs/monoid/limits.hpp>
#include <dmhs/monoid/ratio.hpp>
#include <dmhs/mhs/mhs_point.hpp>
#include <dmhs/sl2/orbit.hpp>

#include <json.hpp>

namespace dmhs::io {

using nlohmann::json;

// Every reader takes the JSON pointer of the value so errors can name it.
inline ValidationError bad(const std::string& ptr, const std::string& what) {
    return ValidationError("at " + (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

inline const json& field(const json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) throw bad(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw bad(ptr + "/" + key, "missing field");
    return *it;
}

inline bool has(const json& j, const std::string& key) { return j.is_object() && j.contains(key); }

template <class F>
auto wrap(const std::string& ptr, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const UnsupportedDepthError&) {
        throw;
    } catch (const ValidationError& e) {
        std::string w = e.what();
        if (w.rfind("at /", 0) == 0) throw;
        throw bad(ptr, w);
    }
}

inline long read_int(const json& j, const std::string& ptr) {
    if (!j.is_number_integer()) throw bad(ptr, "expected an integer");
    return j.get<long>();
}

inline Rational read_rational(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw bad(ptr, "expected a scalar string");
    return wrap(ptr, [&] { return parse_rational(j.get<std::string>()); });
}

inline Gaussian read_gaussian(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Gaussian(Rational(j.get<long>()));
    if (!j.is_string()) throw bad(ptr, "expected a scalar string");
    return wrap(ptr, [&] { return parse_gaussian(j.get<std::string>()); });
}

inline const json& array(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw bad(ptr, "expected an array");
    return j;
}

template <class T, class R>
std::vector<std::vector<T>> read_rows(const json& j, const std::string& ptr, std::size_t width, R read) {
    std::vector<std::vector<T>> out;
    for (std::size_t r = 0; r < array(j, ptr).size(); ++r) {
        std::string p = ptr + "/" + std::to_string(r);
        const json& row = array(j[r], p);
        if (width != 0 && row.size() != width) throw bad(p, "dimension mismatch: expected " + std::to_string(width) + " entries");
        std::vector<T> v;
        for (std::size_t c = 0; c < row.size(); ++c) v.push_back(read(row[c], p + "/" + std::to_string(c)));
        out.push_back(std::move(v));
    }
    return out;
}

inline QMatrix read_qmatrix(const json& j, const std::string& ptr, std::size_t n) {
    auto rows = read_rows<Rational>(j, ptr, n, read_rational);
    if (rows.size() != n) throw bad(ptr, "dimension mismatch: expected " + std::to_string(n) + " rows");
    if (n == 0) return QMatrix(0, 0);
    return QMatrix::from_rows(rows);
}

inline QMatrix read_square(const json& j, const std::string& ptr) {
    std::size_t n = array(j, ptr).size();
    return read_qmatrix(j, ptr, n);
}

inline int read_key_int(const std::string& key, const std::string& ptr) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw bad(ptr, "expected an integer key, got \"" + key + "\"");
    }
}

// {"k": [[scalars]]}: W_k spanned by the listed vectors.
inline QFiltration read_weight_filtration(const json& j, const std::string& ptr, std::size_t n) {
    if (!j.is_object()) throw bad(ptr, "expected an object");
    std::map<int, QSubspace> steps;
    for (auto& [k, v] : j.items()) {
        std::string p = ptr + "/" + k;
        int w = read_key_int(k, p);
        steps[w] = QSubspace::span(read_rows<Rational>(v, p, n, read_rational), n);
    }
    return wrap(ptr, [&] { return QFiltration(n, steps); });
}

inline HodgeFiltration read_hodge_filtration(const json& j, const std::string& ptr, std::size_t n) {
    if (!j.is_object()) throw bad(ptr, "expected an object");
    std::map<int, CSubspace> steps;
    for (auto& [k, v] : j.items()) {
        std::string p = ptr + "/" + k;
        int q = read_key_int(k, p);
        steps[q] = CSubspace::span(read_rows<Gaussian>(v, p, n, read_gaussian), n);
    }
    return wrap(ptr, [&] { return HodgeFiltration(n, steps); });
}

inline std::size_t read_rank(const json& j) {
    long n = read_int(field(j, "rank", ""), "/rank");
    if (n <= 0) throw bad("/rank", "rank must be positive");
    return static_cast<std::size_t>(n);
}

inline HodgeData read_hodge_data(const json& j) {
    std::size_t n = read_rank(j);
    QFiltration w = read_weight_filtration(field(j, "W", ""), "/W", n);
    std::map<int, QMatrix> pairings;
    const json& pj = field(j, "pairings", "");
    if (!pj.is_object()) throw bad("/pairings", "expected an object");
    for (auto& [k, v] : pj.items()) {
        std::string p = "/pairings/" + k;
        pairings[read_key_int(k, p)] = read_square(v, p);
    }
    HodgeNumbers h;
    const json& hj = field(j, "hodge_numbers", "");
    if (!hj.is_object()) throw bad("/hodge_numbers", "expected an object");
    for (auto& [k, v] : hj.items()) {
        std::string p = "/hodge_numbers/" + k;
        auto comma = k.find(',');
        if (comma == std::string::npos) throw bad(p, "expected a key \"p,q\"");
        h[{read_key_int(k.substr(0, comma), p), read_key_int(k.substr(comma + 1), p)}] = static_cast<int>(read_int(v, p));
    }
    return wrap("", [&] { return HodgeData(n, w, pairings, h); });
}

inline MhsPoint read_mhs_point(const json& j) {
    HodgeData hd = read_hodge_data(j);
    return {hd, read_hodge_filtration(field(j, "F", ""), "/F", hd.rank())};
}

inline NilpotentOrbit read_orbit(const json& j) {
    HodgeData hd = read_hodge_data(j);
    HodgeFiltration f = read_hodge_filtration(field(j, "F", ""), "/F", hd.rank());
    const json& nj = array(field(j, "nilpotents", ""), "/nilpotents");
    std::vector<QMatrix> ns;
    for (std::size_t k = 0; k < nj.size(); ++k) ns.push_back(read_qmatrix(nj[k], "/nilpotents/" + std::to_string(k), hd.rank()));
    if (ns.empty()) throw bad("/nilpotents", "need at least one nilpotent");
    if (has(j, "order")) {
        const json& oj = array(j["order"], "/order");
        if (oj.size() != ns.size()) throw bad("/order", "must list every nilpotent once");
        std::vector<QMatrix> re;
        std::vector<bool> seen(ns.size());
        for (std::size_t k = 0; k < oj.size(); ++k) {
            long i = read_int(oj[k], "/order/" + std::to_string(k));
            if (i < 0 || i >= static_cast<long>(ns.size()) || seen[i]) throw bad("/order/" + std::to_string(k), "not a permutation index");
            seen[i] = true;
            re.push_back(ns[i]);
        }
        ns = re;
    }
    return {hd, ns, f};
}

// --- writers ---

inline json write_matrix(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_string(m(i, k)));
        rows.push_back(r);
    }
    return rows;
}

inline json write_vector(const std::vector<Rational>& v) {
    json r = json::array();
    for (auto& x : v) r.push_back(to_string(x));
    return r;
}

inline json write_filtration(const QFiltration& f) {
    json out = json::object();
    for (int k : f.jumps()) out[std::to_string(k)] = write_matrix(f[k].rows());
    return out;
}

inline json write_hodge_filtration(const HodgeFiltration& f) {
    json out = json::object();
    for (auto& [p, s] : f.steps()) {
        json rows = json::array();
        for (std::size_t i = 0; i < s.dim(); ++i) {
            json r = json::array();
            for (auto& z : s.vector(i)) r.push_back(to_string(z));
            rows.push_back(r);
        }
        out[std::to_string(p)] = rows;
    }
    return out;
}

// --- monoids and ratio points ---

inline IntVec read_intvec(const json& j, const std::string& ptr, std::size_t n) {
    const json& a = array(j, ptr);
    if (a.size() != n) throw bad(ptr, "dimension mismatch: expected " + std::to_string(n) + " entries");
    IntVec v;
    for (std::size_t k = 0; k < a.size(); ++k) v.push_back(read_int(a[k], ptr + "/" + std::to_string(k)));
    return v;
}

inline FsMonoid read_monoid(const json& j, const std::string& ptr) {
    long m = read_int(field(j, "ambient_rank", ptr), ptr + "/ambient_rank");
    if (m <= 0) throw bad(ptr + "/ambient_rank", "must be positive");
    const json& g = array(field(j, "generators", ptr), ptr + "/generators");
    std::vector<IntVec> gens;
    for (std::size_t k = 0; k < g.size(); ++k) gens.push_back(read_intvec(g[k], ptr + "/generators/" + std::to_string(k), m));
    return wrap(ptr, [&] { return FsMonoid(static_cast<std::size_t>(m), gens); });
}

inline json write_monoid(const FsMonoid& m) {
    json g = json::array();
    for (auto& v : m.generators()) g.push_back(v);
    return {{"ambient_rank", m.ambient_rank()}, {"generators", g}};
}

inline RatioPoint read_ratio_point(const FsMonoid& m, const json& j, const std::string& ptr) {
    RatioPoint p;
    const json& fl = array(field(j, "flag", ptr), ptr + "/flag");
    for (std::size_t k = 0; k < fl.size(); ++k) {
        std::string q = ptr + "/flag/" + std::to_string(k);
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < array(fl[k], q).size(); ++i) {
            long g = read_int(fl[k][i], q + "/" + std::to_string(i));
            if (g < 0 || g >= static_cast<long>(m.generators().size())) throw bad(q + "/" + std::to_string(i), "generator index out of range");
            idx.push_back(static_cast<std::size_t>(g));
        }
        p.flag.push_back(wrap(q, [&] { return m.face_from_generators(idx); }));
    }
    p.functionals = read_rows<Rational>(field(j, "functionals", ptr), ptr + "/functionals", m.ambient_rank(), read_rational);
    const json& mk = array(field(j, "markers", ptr), ptr + "/markers");
    for (std::size_t k = 0; k < mk.size(); ++k) {
        long g = read_int(mk[k], ptr + "/markers/" + std::to_string(k));
        if (g < 0) throw bad(ptr + "/markers/" + std::to_string(k), "negative index");
        p.markers.push_back(static_cast<std::size_t>(g));
    }
    wrap(ptr, [&] {
        validate_ratio_point(m, p);
        return 0;
    });
    return p;
}

inline json write_ratio_point(const RatioPoint& p) {
    json fl = json::array(), fn = json::array();
    for (auto& f : p.flag) fl.push_back(f.gens);
    for (auto& h : p.functionals) fn.push_back(write_vector(h));
    return {{"flag", fl}, {"functionals", fn}, {"markers", p.markers}};
}

inline ExtendedRational read_extended(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return wrap(ptr, [&] { return ExtendedRational::of(j.get<long>()); });
    if (!j.is_string()) throw bad(ptr, "expected a scalar string or \"inf\"");
    return wrap(ptr, [&] { return parse_extended(j.get<std::string>()); });
}

inline LexValuation read_valuation(const FsMonoid& m, const json& j, const std::string& ptr) {
    LexValuation v{read_rows<Rational>(j, ptr, m.ambient_rank(), read_rational)};
    wrap(ptr, [&] {
        validate_valuation(m, v);
        return 0;
    });
    return v;
}

// --- limit paths ---

inline LimitValue read_limit_value(const json& j, const std::string& ptr) {
    if (j.is_number_float()) return LimitValue::approx(j.get<double>());
    if (j.is_string() && j.get<std::string>() == "inf") return LimitValue::inf();
    return LimitValue::of(read_rational(j, ptr));
}

inline PathComponent read_path_component(const json& j, const std::string& ptr) {
    PathComponent c;
    if (!j.is_object()) throw bad(ptr, "expected an object");
    if (has(j, "coeff")) c.coeff = read_rational(j["coeff"], ptr + "/coeff");
    if (has(j, "alpha")) c.alpha = read_rational(j["alpha"], ptr + "/alpha");
    if (has(j, "kappa")) c.kappa = read_rational(j["kappa"], ptr + "/kappa");
    if (has(j, "beta")) c.beta = read_limit_value(j["beta"], ptr + "/beta");
    return c;
}

inline PathSpec read_path(const json& j) {
    return {read_path_component(field(j, "q1", ""), "/q1"), read_path_component(field(j, "q2", ""), "/q2")};
}

inline json write_label(const LimitLabel& l) {
    json out = {{"label", to_string(l)}, {"a", to_string(l.a)}, {"a_kind", l.a.kind == LimitValue::real ? "irrational" : (l.a.kind == LimitValue::infinite ? "infinite" : "rational")}};
    if (l.c) out["c"] = to_string(*l.c);
    return out;
}

// --- torsion divisors ---

inline std::vector<TorsionSection> read_divisor(const json& j, const std::string& ptr) {
    std::vector<TorsionSection> out;
    for (std::size_t k = 0; k < array(j, ptr).size(); ++k) {
        std::string p = ptr + "/" + std::to_string(k);
        const json& e = j[k];
        out.push_back({read_rational(field(e, "root_angle", p), p + "/root_angle"), read_rational(field(e, "q_exponent", p), p + "/q_exponent"),
                       read_int(field(e, "multiplicity", p), p + "/multiplicity")});
    }
    return out;
}

}  // namespace dmhs::io

#endif
