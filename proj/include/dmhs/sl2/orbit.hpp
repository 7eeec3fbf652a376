#ifndef DMHS_SL2_ORBIT_HPP
#define DMHS_SL2_ORBIT_HPP

#include <dmhs/mhs/hodge_data.hpp>

namespace dmhs {

// Nilpotent orbit data (N_1..N_n; F), all in original coordinates.
struct NilpotentOrbit {
    HodgeData data;
    std::vector<QMatrix> n;
    HodgeFiltration f;

    std::size_t size() const { return n.size(); }
    std::vector<QMatrix> adapted_n() const {
        std::vector<QMatrix> out;
        for (auto& x : n) out.push_back(data.to_adapted(x));
        return out;
    }
    HodgeFiltration adapted_f() const { return data.to_adapted(f); }
};

// exp(sum z_j N_j) F with complex z_j, original coordinates.
inline HodgeFiltration orbit_point(const NilpotentOrbit& o, const std::vector<Gaussian>& z) {
    if (z.size() != o.n.size()) throw ValidationError("dimension mismatch: parameters vs nilpotents");
    CMatrix x(o.data.rank(), o.data.rank());
    for (std::size_t j = 0; j < z.size(); ++j) x += to_complex(o.n[j]) * z[j];
    return o.f.transform(exp_nilpotent(x));
}

// exp(i sum y_j N_j) F for real y.
inline HodgeFiltration orbit_point_imag(const NilpotentOrbit& o, const std::vector<Rational>& y) {
    std::vector<Gaussian> z;
    for (auto& v : y) z.emplace_back(Rational(0), v);
    return orbit_point(o, z);
}

}  // namespace dmhs

#endif
