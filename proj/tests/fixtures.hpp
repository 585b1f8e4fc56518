#pragma once

#include "qh/qha.hpp"

namespace qh_test {

using namespace qh;

// group algebra of Z_m with trivial reassociator: a genuine Hopf algebra
inline QuasiHopfData group_algebra(uint32_t m, uint32_t order) {
    QuasiHopfData H;
    H.name = "kZ" + std::to_string(m);
    H.dim = m;
    H.order = order;
    auto t = std::make_shared<MultTable>(m, order);
    for (uint32_t a = 0; a < m; ++a)
        for (uint32_t b = 0; b < m; ++b) t->set(a, b, {{(a + b) % m, CycloNum::one(order)}});
    H.mult = t;
    H.unit = H.basis(0);
    H.counit.assign(m, CycloNum::one(order));
    H.comult = LinearMap(m, {m, m}, order);
    H.antipode = LinearMap(m, {m}, order);
    for (uint32_t a = 0; a < m; ++a) {
        H.comult.images[a].add({a, a}, CycloNum::one(order));
        H.antipode.images[a].add(uint64_t((m - a) % m), CycloNum::one(order));
        H.labels.push_back("g^" + std::to_string(a));
    }
    H.phi = H.unit_tensor(3);
    H.phi_inv = H.phi;
    H.alpha = H.unit;
    H.beta = H.unit;
    return H;
}

}  // namespace qh_test
