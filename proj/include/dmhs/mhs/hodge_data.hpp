#ifndef DMHS_MHS_HODGE_DATA_HPP
#define DMHS_MHS_HODGE_DATA_HPP

#include <dmhs/mhs/mixed_hodge.hpp>

#include <limits>

namespace dmhs {

using HodgeNumbers = std::map<std::pair<int, int>, int>;

// The fixed data of a period domain: rank, rational weight filtration,
// graded polarizations and Hodge numbers. Pairings are given on the graded
// basis of gr_w produced by adapted_basis(W).
class HodgeData {
public:
    HodgeData() = default;
    HodgeData(std::size_t rank, QFiltration w, std::map<int, QMatrix> pairings, HodgeNumbers h)
        : rank_(rank), w_(std::move(w)), pairings_(std::move(pairings)), h_(std::move(h)) {
        if (w_.ambient() != rank_) throw ValidationError("dimension mismatch: W ambient " + std::to_string(w_.ambient()) + " vs rank " + std::to_string(rank_));
        basis_ = adapted_basis(w_);
        basis_inv_ = inverse_or_throw(basis_.basis, "adapted basis");
        frame_ = GradedFrame{basis_.weights};
        validate();
    }

    std::size_t rank() const { return rank_; }
    const QFiltration& W() const { return w_; }
    const std::map<int, QMatrix>& pairings() const { return pairings_; }
    const HodgeNumbers& hodge_numbers() const { return h_; }
    const GradedFrame& frame() const { return frame_; }
    const QMatrix& basis() const { return basis_.basis; }
    const QMatrix& basis_inverse() const { return basis_inv_; }

    // Coordinate changes between the original basis and the adapted one.
    HodgeFiltration to_adapted(const HodgeFiltration& f) const { return f.transform(to_complex(basis_inv_)); }
    HodgeFiltration from_adapted(const HodgeFiltration& f) const { return f.transform(to_complex(basis_.basis)); }
    QMatrix to_adapted(const QMatrix& x) const { return basis_inv_ * x * basis_.basis; }
    QMatrix from_adapted(const QMatrix& x) const { return basis_.basis * x * basis_inv_; }
    // Splittings are maps gr -> H; gr keeps graded-basis coordinates.
    QMatrix splitting_from_adapted(const QMatrix& s) const { return basis_.basis * s; }
    QMatrix splitting_to_adapted(const QMatrix& s) const { return basis_inv_ * s; }

    // Full pairing on gr (block diagonal) in adapted coordinates.
    QMatrix graded_pairing() const {
        QMatrix p(rank_, rank_);
        for (int w : frame_.distinct()) {
            auto blk = frame_.block(w);
            const QMatrix& pw = pairings_.at(w);
            for (std::size_t a = 0; a < blk.size(); ++a)
                for (std::size_t b = 0; b < blk.size(); ++b) p(blk[a], blk[b]) = pw(a, b);
        }
        return p;
    }

    int max_hodge_index() const {
        int m = std::numeric_limits<int>::min();
        for (auto& [pq, d] : h_) m = std::max(m, pq.first);
        return m;
    }
    int min_hodge_index() const {
        int m = std::numeric_limits<int>::max();
        for (auto& [pq, d] : h_) m = std::min(m, pq.first);
        return m;
    }

private:
    void validate() const {
        for (int w : frame_.distinct()) {
            auto blk = frame_.block(w);
            auto it = pairings_.find(w);
            if (it == pairings_.end()) throw ValidationError("missing pairing on gr_" + std::to_string(w));
            const QMatrix& p = it->second;
            if (p.rows() != blk.size() || p.cols() != blk.size())
                throw ValidationError("dimension mismatch: pairing on gr_" + std::to_string(w));
            QMatrix expect = (w % 2 == 0) ? p : -p;
            if (p.transpose() != expect) throw ValidationError("pairing on gr_" + std::to_string(w) + " has wrong parity");
            if (dmhs::rank(p) != blk.size()) throw ValidationError("pairing on gr_" + std::to_string(w) + " is degenerate");
            int total = 0;
            for (auto& [pq, d] : h_) {
                if (pq.first + pq.second != w) continue;
                if (d < 0) throw ValidationError("negative Hodge number");
                auto sym = h_.find({pq.second, pq.first});
                if (sym == h_.end() || sym->second != d) throw ValidationError("Hodge numbers not symmetric");
                total += d;
            }
            if (total != static_cast<int>(blk.size()))
                throw ValidationError("dimension mismatch: Hodge numbers on gr_" + std::to_string(w));
        }
        for (auto& [pq, d] : h_) {
            if (d == 0) continue;
            if (frame_.block(pq.first + pq.second).empty()) throw ValidationError("Hodge number outside the weights of W");
        }
    }

    std::size_t rank_ = 0;
    QFiltration w_;
    std::map<int, QMatrix> pairings_;
    HodgeNumbers h_;
    AdaptedBasis basis_;
    QMatrix basis_inv_;
    GradedFrame frame_;
};

// Positive definiteness of a Hermitian matrix over Q(i) by leading minors.
inline bool hermitian_positive_definite(const CMatrix& g) {
    for (std::size_t k = 1; k <= g.rows(); ++k) {
        Gaussian d = determinant(g.block(0, 0, k, k));
        if (!d.is_real() || sgn(d.re()) <= 0) return false;
    }
    return true;
}

inline Gaussian i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Gaussian(1);
        case 1: return Gaussian::i();
        case 2: return Gaussian(-1);
        default: return -Gaussian::i();
    }
}

struct DomainCheck {
    bool hodge_numbers = false;
    bool bilinear = false;
    bool mixed = false;
    bool positive = false;
    std::string failure;

    bool in_check_d() const { return hodge_numbers && bilinear; }
    bool in_d() const { return hodge_numbers && bilinear && mixed && positive; }
};

// F in adapted coordinates. Conditions are checked in a fixed order and the
// first failure is named.
inline DomainCheck check_domain(const HodgeData& hd, const HodgeFiltration& f) {
    DomainCheck out;
    const GradedFrame& fr = hd.frame();
    if (f.ambient() != hd.rank()) {
        out.failure = "dimension mismatch";
        return out;
    }
    HodgeFiltration fgr = graded_hodge(fr, f);
    HodgeNumbers got = hodge_numbers_of(fr, fgr);
    HodgeNumbers want;
    for (auto& [pq, d] : hd.hodge_numbers())
        if (d > 0) want[pq] = d;
    if (got != want) {
        out.failure = "hodge numbers";
        return out;
    }
    out.hodge_numbers = true;
    CMatrix pair = to_complex(hd.graded_pairing());
    for (int w : fr.distinct()) {
        CSubspace g = fr.gr(w);
        for (int p = fgr.lowest(); p <= fgr.highest(); ++p) {
            CSubspace a = fgr[p].intersect(g), b = fgr[w + 1 - p].intersect(g);
            if (a.dim() == 0 || b.dim() == 0) continue;
            if (!(a.rows() * pair * b.columns()).is_zero()) {
                out.failure = "bilinear relation";
                return out;
            }
        }
    }
    out.bilinear = true;
    if (!graded_pieces_pure(fr, fgr)) {
        out.failure = "not a mixed Hodge structure";
        return out;
    }
    try {
        deligne_bigrading(fr, f);
    } catch (const ValidationError&) {
        out.failure = "not a mixed Hodge structure";
        return out;
    }
    out.mixed = true;
    for (auto& [pq, sub] : hodge_decomposition(fr, fgr)) {
        CMatrix v = sub.columns();
        CMatrix gram = v.transpose() * pair * conj(v) * i_power(pq.first - pq.second);
        if (!hermitian_positive_definite(gram)) {
            out.failure = "positivity";
            return out;
        }
    }
    out.positive = true;
    return out;
}

// Element of the Lie algebra of G: preserves W and is an infinitesimal
// isometry of every graded pairing.
inline bool in_lie_algebra(const HodgeData& hd, const QMatrix& x_adapted) {
    const GradedFrame& fr = hd.frame();
    if (!fr.preserves(x_adapted)) return false;
    QMatrix g = fr.graded_part(x_adapted);
    QMatrix p = hd.graded_pairing();
    return (g.transpose() * p + p * g).is_zero();
}

// Element of G (adapted coordinates): preserves W and each graded pairing.
inline bool in_group(const HodgeData& hd, const QMatrix& g_adapted) {
    const GradedFrame& fr = hd.frame();
    if (!fr.preserves(g_adapted)) return false;
    QMatrix g = fr.graded_part(g_adapted);
    QMatrix p = hd.graded_pairing();
    return g.transpose() * p * g == p;
}

}  // namespace dmhs

#endif
