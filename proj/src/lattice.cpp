#include "k3e/lattice.hpp"

#include <stdexcept>

namespace k3e {

namespace {

// E8 Cartan matrix (even, det 1), nodes 1..7 a chain, node 8 on node 5
const int E8[8][8] = {
    {2, -1, 0, 0, 0, 0, 0, 0},
    {-1, 2, -1, 0, 0, 0, 0, 0},
    {0, -1, 2, -1, 0, 0, 0, 0},
    {0, 0, -1, 2, -1, 0, 0, 0},
    {0, 0, 0, -1, 2, -1, 0, -1},
    {0, 0, 0, 0, -1, 2, -1, 0},
    {0, 0, 0, 0, 0, -1, 2, 0},
    {0, 0, 0, 0, -1, 0, 0, 2},
};

}  // namespace

KLattice::KLattice() {
    for (auto& row : gram_)
        for (auto& x : row) x = Rat(0);

    // middle block: U + U + U + E8(-1) + E8(-1) at indices 1..22
    for (int u = 0; u < 3; ++u) {
        int base = 1 + 2 * u;
        gram_[base][base + 1] = Rat(1);
        gram_[base + 1][base] = Rat(1);
    }
    for (int blk = 0; blk < 2; ++blk) {
        int base = 7 + 8 * blk;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) gram_[base + i][base + j] = Rat(-E8[i][j]);
    }
    // unit pairs with point
    gram_[IDX_ONE][IDX_PT] = Rat(1);
    gram_[IDX_PT][IDX_ONE] = Rat(1);

    // cup products
    for (int a = 0; a < KBASIS; ++a) {
        for (int b = 0; b < KBASIS; ++b) {
            KClass c;
            if (a == IDX_ONE) {
                c[b] = Rat(1);
            } else if (b == IDX_ONE) {
                c[a] = Rat(1);
            } else if (a != IDX_PT && b != IDX_PT) {
                Rat g = gram_[a][b];
                if (!g.is_zero()) c[IDX_PT] = g;
            }
            cup_[a][b] = std::move(c);
        }
    }

    // duals: invert the full pairing matrix by Gaussian elimination
    std::array<std::array<Rat, 2 * KBASIS>, KBASIS> aug;
    for (int i = 0; i < KBASIS; ++i) {
        for (int j = 0; j < KBASIS; ++j) aug[i][j] = gram_[i][j];
        for (int j = 0; j < KBASIS; ++j) aug[i][KBASIS + j] = Rat(i == j ? 1 : 0);
    }
    for (int col = 0; col < KBASIS; ++col) {
        int piv = -1;
        for (int r = col; r < KBASIS; ++r)
            if (!aug[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) throw std::logic_error("KLattice: singular pairing");
        std::swap(aug[col], aug[piv]);
        Rat pinv = aug[col][col].inv();
        for (int j = 0; j < 2 * KBASIS; ++j) aug[col][j] *= pinv;
        for (int r = 0; r < KBASIS; ++r) {
            if (r == col || aug[r][col].is_zero()) continue;
            Rat f = aug[r][col];
            for (int j = 0; j < 2 * KBASIS; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    for (int a = 0; a < KBASIS; ++a) {
        KClass d;
        for (int j = 0; j < KBASIS; ++j)
            if (!aug[j][KBASIS + a].is_zero()) d[j] = aug[j][KBASIS + a];
        dual_[a] = std::move(d);
    }
    // sanity: pair(basis_b, dual_a) = delta
    for (int a = 0; a < KBASIS; ++a)
        for (int b = 0; b < KBASIS; ++b) {
            Rat v(0);
            for (auto& [j, w] : dual_[a]) v += gram_[b][j] * w;
            if (!(v == Rat(a == b ? 1 : 0))) throw std::logic_error("KLattice: dual check failed");
        }

    B_ = KClass{{1, Rat(1)}, {2, Rat(-1)}};
    F_ = KClass{{2, Rat(1)}};
    W_ = KClass{{1, Rat(1)}};
    if (!(pair(B_, B_) == Rat(-2)) || !(pair(B_, F_) == Rat(1)) || !(pair(F_, F_) == Rat(0)))
        throw std::logic_error("KLattice: section/fiber intersections wrong");

    // tau3(unit) components: sum_{i,j,k,l} g^{ij} g^{kl} (g_i cup g_k) x g_l x g_j
    std::map<std::tuple<int, int, int>, Rat> acc;
    // g^{..} entries from dual classes: dual(a) = sum_j ginv[j][a] g_j, and
    // ginv is symmetric; assemble ginv
    std::array<std::array<Rat, KBASIS>, KBASIS> ginv;
    for (auto& row : ginv)
        for (auto& x : row) x = Rat(0);
    for (int a = 0; a < KBASIS; ++a)
        for (auto& [j, w] : dual_[a]) ginv[j][a] = w;
    for (int i = 0; i < KBASIS; ++i)
        for (int j = 0; j < KBASIS; ++j) {
            if (ginv[i][j].is_zero()) continue;
            for (int k = 0; k < KBASIS; ++k)
                for (int l = 0; l < KBASIS; ++l) {
                    if (ginv[k][l].is_zero()) continue;
                    const KClass& cik = cup_[i][k];
                    if (cik.empty()) continue;
                    for (auto& [a, wa] : cik) {
                        Rat w = ginv[i][j] * ginv[k][l] * wa;
                        if (w.is_zero()) continue;
                        acc[{a, l, j}] += w;
                    }
                }
        }
    for (auto& [key, w] : acc)
        if (!w.is_zero())
            tau3_.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key), w);
}

Rat KLattice::pair(const KClass& a, const KClass& b) const {
    Rat acc(0);
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) {
            const Rat& g = gram_[i][j];
            if (!g.is_zero()) acc += x * y * g;
        }
    return acc;
}

KClass KLattice::cup(const KClass& a, const KClass& b) const {
    KClass r;
    for (auto& [i, x] : a)
        for (auto& [j, y] : b)
            for (auto& [k, w] : cup_[i][j]) {
                Rat v = x * y * w;
                if (v.is_zero()) continue;
                auto it = r.find(k);
                if (it == r.end()) r[k] = v;
                else {
                    it->second += v;
                    if (it->second.is_zero()) r.erase(it);
                }
            }
    return r;
}

const KLattice& KLattice::get() {
    static const KLattice lat;
    return lat;
}

}  // namespace k3e
