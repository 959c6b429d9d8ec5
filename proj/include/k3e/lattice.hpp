#pragma once

// The cohomology lattice of the surface: unit, 22 middle classes with the
// even unimodular intersection form U + U + U + E8(-1) + E8(-1), and the
// point class. The first hyperbolic plane carries the section/fiber pair
// B = e1 - f1, F = f1 (B^2 = -2, B.F = 1, F^2 = 0).

#include <array>
#include <map>
#include <vector>

#include "k3e/rational.hpp"

namespace k3e {

constexpr int KBASIS = 24;   // 0 = unit, 1..22 middle, 23 = point
constexpr int IDX_ONE = 0;
constexpr int IDX_PT = 23;

// sparse cohomology class
using KClass = std::map<int, Rat>;

class KLattice {
public:
    KLattice();

    int kdeg(int idx) const { return idx == IDX_ONE ? -1 : (idx == IDX_PT ? 1 : 0); }

    // full intersection pairing of basis classes
    const Rat& pair(int a, int b) const { return gram_[a][b]; }

    Rat pair(const KClass& a, const KClass& b) const;

    // cup product of basis classes, expanded over the basis
    const KClass& cup(int a, int b) const { return cup_[a][b]; }

    KClass cup(const KClass& a, const KClass& b) const;

    // dual basis: pair(x, dual(a)) = coefficient of a in x
    const KClass& dual(int a) const { return dual_[a]; }

    // distinguished classes
    const KClass& B() const { return B_; }
    const KClass& F() const { return F_; }
    const KClass& W() const { return W_; }  // B + F
    KClass unit() const { return {{IDX_ONE, Rat(1)}}; }
    KClass point() const { return {{IDX_PT, Rat(1)}}; }

    Rat pair_B(const KClass& a) const { return pair(a, B_); }
    Rat pair_F(const KClass& a) const { return pair(a, F_); }

    // tensor components of the small-diagonal class: list of
    // (a, b, c, weight) with tau3(unit) = sum w * g_a x g_b x g_c
    const std::vector<std::tuple<int, int, int, Rat>>& tau3() const { return tau3_; }

    static const KLattice& get();

private:
    std::array<std::array<Rat, KBASIS>, KBASIS> gram_;
    std::array<std::array<KClass, KBASIS>, KBASIS> cup_;
    std::array<KClass, KBASIS> dual_;
    KClass B_, F_, W_;
    std::vector<std::tuple<int, int, int, Rat>> tau3_;
};

}  // namespace k3e
