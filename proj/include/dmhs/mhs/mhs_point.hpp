#ifndef DMHS_MHS_MHS_POINT_HPP
#define DMHS_MHS_MHS_POINT_HPP

#include <dmhs/mhs/hodge_data.hpp>

namespace dmhs {

// A point x of D: Hodge filtration in original coordinates.
struct MhsPoint {
    HodgeData data;
    HodgeFiltration f;
};

inline DomainCheck validate_point(const MhsPoint& x) { return check_domain(x.data, x.data.to_adapted(x.f)); }

inline void require_in_d(const MhsPoint& x) {
    DomainCheck c = validate_point(x);
    if (!c.in_d()) throw ValidationError("point not in D: " + c.failure);
}

// (F_gr, spl_W, delta_W): F_gr and delta live on gr in graded-basis
// coordinates, the splitting maps gr into H in original coordinates.
struct MhsDecomposition {
    HodgeFiltration f_gr;
    QMatrix spl;
    QMatrix delta;
};

inline MhsDecomposition decompose(const MhsPoint& x) {
    auto d = canonical_decomposition(x.data.frame(), x.data.to_adapted(x.f));
    return {d.f_gr, x.data.splitting_from_adapted(d.spl), d.delta};
}

inline QMatrix delta_W(const MhsPoint& x) {
    return delta_splitting(x.data.frame(), x.data.to_adapted(x.f)).delta;
}

inline QMatrix spl_W(const MhsPoint& x) { return decompose(x).spl; }

inline MhsPoint recompose(const HodgeData& hd, const MhsDecomposition& d) {
    const GradedFrame& fr = hd.frame();
    QMatrix s = hd.splitting_to_adapted(d.spl);
    if (!is_splitting(fr, s)) throw ValidationError("not a splitting of W");
    if (!in_L(fr, d.f_gr, d.delta)) throw ValidationError("delta not in L(F_gr)");
    return {hd, hd.from_adapted(recompose(fr, d.f_gr, s, d.delta))};
}

// Filtration s(F_gr) on H, the R-split point attached to x.
inline HodgeFiltration split_point(const MhsPoint& x) {
    auto d = canonical_decomposition(x.data.frame(), x.data.to_adapted(x.f));
    return x.data.from_adapted(d.f_gr.transform(to_complex(d.spl)));
}

// a * x := s a s^{-1} (x) for a in G(gr), s = spl_W(x).
inline MhsPoint lifted_action(const QMatrix& a_graded, const MhsPoint& x) {
    const HodgeData& hd = x.data;
    if (!in_group(hd, a_graded) || hd.frame().graded_part(a_graded) != a_graded)
        throw ValidationError("element is not in G(gr)");
    auto d = canonical_decomposition(hd.frame(), hd.to_adapted(x.f));
    QMatrix g = d.spl * a_graded * inverse_or_throw(d.spl);
    return {hd, hd.from_adapted(hd.to_adapted(x.f).transform(to_complex(g)))};
}

// R-split filtration spl_{W'}(F)(F(gr^{W'})) for a pair (W', F) in original coordinates.
inline HodgeFiltration split_filtration(const QFiltration& w, const HodgeFiltration& f) {
    FrameChange fc(w);
    auto d = canonical_decomposition(fc.frame, fc.in(f));
    return fc.out(d.f_gr.transform(to_complex(d.spl)));
}

inline QMatrix delta_of_pair(const QFiltration& w, const HodgeFiltration& f) {
    FrameChange fc(w);
    return delta_splitting(fc.frame, fc.in(f)).delta;
}

// Real grading of (W', F) from its canonical splitting, as an endomorphism of H.
inline QMatrix split_grading(const QFiltration& w, const HodgeFiltration& f) {
    FrameChange fc(w);
    auto d = canonical_decomposition(fc.frame, fc.in(f));
    QMatrix y(fc.frame.size(), fc.frame.size());
    for (std::size_t k = 0; k < fc.frame.size(); ++k) y(k, k) = fc.frame.weights[k];
    return fc.out(d.spl * y * inverse_or_throw(d.spl));
}

}  // namespace dmhs

#endif
