#pragma once

// The two-index family of series driving the operator recursion, closed
// under the symmetries phi_{m,l} = -phi_{-m,-l} and l phi_{m,l} =
// m phi_{l,m}. Entries absent after closure are UNKNOWN and reading them
// is an error carrying the exact key, never a silent zero.

#include <map>

#include "k3e/forms.hpp"
#include "k3e/jacobi.hpp"

namespace k3e {

struct PhiUnknown : std::runtime_error {
    long m, l;
    PhiUnknown(long m_, long l_)
        : std::runtime_error("phi table: unknown entry (" + std::to_string(m_) + "," +
                             std::to_string(l_) + ")"),
          m(m_), l(l_) {}
};

template <class F = Rat>
class PhiTable {
public:
    void set(long m, long l, JSeriesT<F> s) { seed_[{m, l}] = std::move(s); }

    bool seeded(long m, long l) const { return seed_.count({m, l}) > 0; }

    bool known(long m, long l) const {
        if (m == 0) return false;
        if (m < 0) return known(-m, -l);
        return seeded(m, l) || (l > 0 && seeded(l, m)) || (l < 0 && seeded(-l, -m));
    }

    JSeriesT<F> get(long m, long l) const {
        if (m == 0) throw std::invalid_argument("phi table: m = 0 is not a valid key");
        if (m < 0) return -get(-m, -l);
        auto it = seed_.find({m, l});
        if (it != seed_.end()) return it->second;
        if (l > 0) {
            it = seed_.find({l, m});
            if (it != seed_.end()) return it->second.scaled(Rat(m, l));
        } else if (l < 0) {
            // l phi_{m,l} = m phi_{l,m} and phi_{l,m} = -phi_{-l,-m}
            it = seed_.find({-l, -m});
            if (it != seed_.end()) return it->second.scaled(Rat(-m, l));
        }
        throw PhiUnknown(m, l);
    }

    const std::map<std::pair<long, long>, JSeriesT<F>>& entries() const { return seed_; }

private:
    std::map<std::pair<long, long>, JSeriesT<F>> seed_;
};

// The eight seed entries (three for m=1, five for m=2) expressed through
// K, dz K, wp K^2 and Eisenstein series, all finite.
PhiTable<Rat> phi_seeds(long Nq);

// m=1 seeds only (the initial conditions); used by the solver tests.
PhiTable<Rat> phi_seeds_m1(long Nq);

template <class F>
PhiTable<F> lift_phi(const PhiTable<Rat>& src) {
    PhiTable<F> out;
    for (auto& [key, s] : src.entries()) out.set(key.first, key.second, field_lift<F>(s));
    return out;
}

}  // namespace k3e
