#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tinv/dbm.hpp"

using namespace tinv;

// Clock indices in a 3-clock zone: x = 1, y = 2 (0 is the reference).
namespace {
constexpr int X = 1, Y = 2;

Dbm zone3() { return Dbm::universal(3); }

// Brute-force membership over a half-integer grid; strict bounds make the
// half points necessary.
std::vector<std::vector<double>> grid(double lo, double hi) {
    std::vector<std::vector<double>> pts;
    for (double x = lo; x <= hi; x += 0.5)
        for (double y = lo; y <= hi; y += 0.5) pts.push_back({x, y});
    return pts;
}

}  // namespace

TEST_CASE("canonicalize derives transitive bounds") {
    // x <= 3 and y - x <= 2 entail y <= 5
    Dbm z = zone3();
    z.constrain(X, 0, Bound::le(3));
    z.constrain(Y, X, Bound::le(2));
    CHECK(z.at(Y, 0) == Bound::le(5));
}

TEST_CASE("canonicalize is idempotent and detects contradictions") {
    Dbm z = zone3();
    z.constrain(X, 0, Bound::le(3));
    z.constrain(Y, X, Bound::le(2));
    Dbm before = z;
    z.canonicalize();
    CHECK(z == before);

    Dbm bad = zone3();
    bad.constrain(X, 0, Bound::le(1));
    bad.constrain(0, X, Bound::le(-2));  // x >= 2
    CHECK(bad.is_empty());
}

TEST_CASE("intersection, emptiness, inclusion") {
    Dbm a = zone3();
    a.constrain(0, X, Bound::le(-4));  // x >= 4
    Dbm b = zone3();
    b.constrain(X, 0, Bound::le(4));  // x <= 4
    a.intersect(b);
    CHECK_FALSE(a.is_empty());
    CHECK(a.at(X, 0) == Bound::le(4));
    CHECK(a.at(0, X) == Bound::le(-4));

    Dbm u = zone3();
    Dbm c = zone3();
    c.constrain(X, 0, Bound::le(2));
    Dbm ci = c;
    ci.intersect(u);
    CHECK(ci == c);

    Dbm strict = zone3();
    strict.constrain(X, 0, Bound::lt(2));
    Dbm weak = zone3();
    weak.constrain(X, 0, Bound::le(2));
    CHECK(weak.includes(strict));
    CHECK_FALSE(strict.includes(weak));
}

TEST_CASE("up keeps differences and removes upper bounds") {
    Dbm z = Dbm::zero(3);
    z.up();
    CHECK(z.at(X, Y) == Bound::le(0));
    CHECK(z.at(Y, X) == Bound::le(0));
    CHECK(z.at(X, 0).is_infinity());

    Dbm w = zone3();
    w.constrain(X, 0, Bound::le(2));
    w.constrain(0, X, Bound::le(-2));
    w.constrain(Y, 0, Bound::le(5));
    w.constrain(0, Y, Bound::le(-5));
    w.up();
    CHECK(w.at(Y, X) == Bound::le(3));
    CHECK(w.at(X, Y) == Bound::le(-3));
    CHECK(w.at(0, X) == Bound::le(-2));
    CHECK(w.at(X, 0).is_infinity());

    Dbm w2 = w;
    w2.up();
    CHECK(w2 == w);  // idempotent
}

TEST_CASE("down gives backward closure") {
    Dbm z = zone3();
    z.constrain(X, 0, Bound::le(4));
    z.constrain(0, X, Bound::le(-4));
    z.down();
    CHECK(z.at(X, 0) == Bound::le(4));
    CHECK(z.at(0, X) == Bound::le(0));

    Dbm u = zone3();
    Dbm ud = u;
    ud.down();
    CHECK(ud == u);

    Dbm w = zone3();
    w.constrain(X, 0, Bound::le(3));
    w.constrain(0, X, Bound::le(-3));
    w.constrain(Y, X, Bound::le(1));
    w.constrain(X, Y, Bound::le(-1));
    w.down();
    CHECK(w.at(X, 0) == Bound::le(3));
    CHECK(w.at(Y, X) == Bound::le(1));
    CHECK(w.at(X, Y) == Bound::le(-1));
    CHECK(w.at(0, X) == Bound::le(0));
}

TEST_CASE("reset") {
    Dbm z = zone3();
    z.constrain(X, 0, Bound::le(5));
    z.constrain(0, X, Bound::le(-5));
    z.constrain(Y, 0, Bound::le(5));
    z.constrain(0, Y, Bound::le(-5));
    z.reset({X});
    CHECK(z.at(X, 0) == Bound::le(0));
    CHECK(z.at(0, X) == Bound::le(0));
    CHECK(z.at(Y, 0) == Bound::le(5));

    Dbm r = zone3();
    r.constrain(Y, X, Bound::le(2));
    Dbm r2 = r;
    r2.reset({});
    CHECK(r2 == r);

    Dbm e = Dbm::empty(3);
    e.reset({X});
    CHECK(e.is_empty());
}

TEST_CASE("inverse reset") {
    // [{x}]({x=0, y<=3}) = {y <= 3}, x free
    Dbm z = zone3();
    z.constrain(X, 0, Bound::le(0));
    z.constrain(Y, 0, Bound::le(3));
    z.inverse_reset({X});
    CHECK(z.at(Y, 0) == Bound::le(3));
    CHECK(z.at(X, 0).is_infinity());
    CHECK(z.at(0, X) == Bound::le(0));

    Dbm id = zone3();
    id.constrain(Y, 0, Bound::le(7));
    Dbm id2 = id;
    id2.inverse_reset({});
    CHECK(id2 == id);

    // [{x}]({x >= 1}) is empty: resetting x cannot land in x >= 1.
    Dbm e = zone3();
    e.constrain(0, X, Bound::le(-1));
    e.inverse_reset({X});
    CHECK(e.is_empty());
}

TEST_CASE("extrapolation") {
    std::vector<std::int64_t> maxc{0, 4, 4};

    Dbm z = zone3();
    z.constrain(X, 0, Bound::le(12));
    z.extrapolate(maxc, 4);
    CHECK(z.at(X, 0).is_infinity());

    Dbm fix = zone3();
    fix.constrain(X, 0, Bound::le(4));
    fix.constrain(0, X, Bound::le(-2));
    Dbm fix2 = fix;
    fix2.extrapolate(maxc, 4);
    CHECK(fix2 == fix);

    // Lower difference capped at (-cap, strict) then re-closed: the running
    // example controller history zone h_a <= h0 - 20 with diffcap 8.
    Dbm h = zone3();  // clock 1 = h_a, clock 2 = h0
    h.constrain(X, Y, Bound::le(-20));
    std::vector<std::int64_t> hm{0, 8, 8};
    h.extrapolate(hm, 8);
    CHECK(h.at(X, Y) == Bound::lt(-8));
    CHECK_FALSE(h.is_empty());

    // Extrapolation only ever grows the zone.
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        Dbm r = zone3();
        for (int k = 0; k < 4; ++k) {
            int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
            if (i == j) continue;
            r.constrain(i, j, Bound::of(static_cast<int>(rng() % 17) - 4, rng() % 2 == 0));
        }
        if (r.is_empty()) continue;
        Dbm rx = r;
        rx.extrapolate(maxc, 2);
        CHECK(rx.includes(r));
    }
}

TEST_CASE("projection matches grid semantics") {
    Dbm z = zone3();
    z.constrain(X, Y, Bound::le(0));  // x <= y
    z.constrain(Y, 0, Bound::le(4));
    Dbm p = z.project({0, X});
    CHECK(p.dim() == 2);
    CHECK(p.at(1, 0) == Bound::le(4));  // exists y: x <= y <= 4  =>  x <= 4
}

TEST_CASE("grid oracle: 500 random zones, all ops") {
    std::mt19937 rng(2024);
    auto pts = grid(0, 10);
    int nonempty = 0;
    for (int t = 0; t < 500; ++t) {
        Dbm z = zone3();
        int atoms = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < atoms; ++k) {
            int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
            if (i == j) continue;
            z.constrain(i, j, Bound::of(static_cast<int>(rng() % 13) - 4, rng() % 2 == 0));
        }
        Dbm zc = z;
        zc.canonicalize();
        CHECK(zc == z);  // operations keep canonical form
        if (z.is_empty()) {
            for (auto& p : pts) CHECK_FALSE(z.contains(p));
            continue;
        }
        ++nonempty;

        Dbm up = z;
        up.up();
        Dbm down = z;
        down.down();
        Dbm rst = z;
        rst.reset({X});
        Dbm inv = z;
        inv.inverse_reset({X});

        for (auto& p : pts) {
            // up: exists delta >= 0 with p - delta in z
            bool in_up = false;
            for (double d = 0; d <= 20 && !in_up; d += 0.25)
                if (p[0] - d >= 0 && p[1] - d >= 0 && z.contains({p[0] - d, p[1] - d}))
                    in_up = true;
            CHECK(up.contains(p) == in_up);
            // down: exists delta >= 0 with p + delta in z
            bool in_down = false;
            for (double d = 0; d <= 20 && !in_down; d += 0.25)
                if (z.contains({p[0] + d, p[1] + d})) in_down = true;
            CHECK(down.contains(p) == in_down);
            // reset x: p in z[r] iff p.x == 0 and exists x0 with (x0, p.y) in z
            bool in_rst = p[0] == 0 && [&] {
                for (double x0 = 0; x0 <= 20; x0 += 0.25)
                    if (z.contains({x0, p[1]})) return true;
                return false;
            }();
            CHECK(rst.contains(p) == in_rst);
            // inverse reset: p in [r]z iff (0, p.y) in z
            CHECK(inv.contains(p) == z.contains({0, p[1]}));
        }

        // intersect against a second random zone
        Dbm w = zone3();
        w.constrain(X, 0, Bound::of(static_cast<int>(rng() % 9), rng() % 2 == 0));
        Dbm zi = z;
        zi.intersect(w);
        for (auto& p : pts) CHECK(zi.contains(p) == (z.contains(p) && w.contains(p)));

        // emptiness agrees with the grid at this scale
        bool any = false;
        for (auto& p : pts)
            if (z.contains(p)) any = true;
        CHECK(any == !z.is_empty());
    }
    CHECK(nonempty > 100);
}

TEST_CASE("constraint round-trip dump") {
    Dbm z = zone3();
    z.constrain(X, 0, Bound::le(4));
    z.constrain(0, X, Bound::le(-4));
    auto s = z.dump({"x", "y"});
    CHECK(s.find("x <= 4") != std::string::npos);
    CHECK(s.find("0 - x <= -4") != std::string::npos);
}
