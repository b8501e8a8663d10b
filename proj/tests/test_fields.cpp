#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hedgehog/field.hpp"
#include "hedgehog/quadform.hpp"

#include <random>

using namespace hedgehog;

TEST_CASE("field descriptor validation") {
    CHECK_THROWS_AS(FieldDescriptor::finite_prime(2), UnsupportedField);
    CHECK_THROWS_AS(FieldDescriptor::finite_prime(9), UnsupportedField);
    CHECK_NOTHROW(FieldDescriptor::finite_prime(7));
    CHECK_NOTHROW(FieldDescriptor::padic(2));
    CHECK_THROWS_AS(FieldDescriptor::padic(6), UnsupportedField);
    CHECK_THROWS_AS(FieldDescriptor::real_quadratic(4), UnsupportedField);
    CHECK_THROWS_AS(FieldDescriptor::real_quadratic(1), UnsupportedField);
    CHECK_NOTHROW(FieldDescriptor::real_quadratic(5));
}

TEST_CASE("finite prime arithmetic reduces mod p") {
    Field f(FieldDescriptor::finite_prime(7));
    FieldElem x = f.from_string("10");
    CHECK(f.to_string(x) == "3");
    CHECK(f.to_string(f.inv(x)) == "5"); // 3*5 = 15 = 1 mod 7
    CHECK(f.to_string(f.from_string("1/2")) == "4");
    CHECK_THROWS_AS(f.from_string("1/7"), InvalidElement);
}

TEST_CASE("real quadratic arithmetic") {
    Field f(FieldDescriptor::real_quadratic(5));
    FieldElem x = f.from_string("1,2"); // 1 + 2 sqrt 5
    FieldElem y = f.mul(x, x);          // 21 + 4 sqrt 5
    CHECK(f.to_string(y) == "21,4");
    FieldElem inv = f.inv(x);
    CHECK(f.is_one(f.mul(x, inv)));
}

TEST_CASE("square classes over Q2 follow the unit mod 8") {
    FieldDescriptor q2 = FieldDescriptor::padic(2);
    // oracle: odd squares land on 1 mod 8, so units are squares iff = 1 mod 8
    std::set<long> odd_squares_mod8;
    for (long x = 1; x < 16; x += 2) odd_squares_mod8.insert(x * x % 8);
    CHECK(odd_squares_mod8 == std::set<long>{1});

    CHECK(square_class(q2, Rat(7)).rep == -1); // 7 = -1 mod 8
    CHECK(square_class(q2, Rat(3)).rep == -5);
    CHECK(square_class(q2, Rat(5)).rep == 5);
    CHECK(square_class(q2, Rat(17)).rep == 1);
    CHECK(square_class(q2, Rat(2)).rep == 2);
    CHECK(square_class(q2, Rat(-14)).rep == 2); // 2 ~ -14 modulo squares
    CHECK(square_class(q2, rat_from_string("3/5")).rep == -1); // 15 = 7 mod 8
}

TEST_CASE("square class examples") {
    CHECK(square_class(FieldDescriptor::finite_prime(5), Rat(4)).rep == 1);
    CHECK(square_class(FieldDescriptor::rationals(), Rat(18)).rep == 2);
    CHECK(square_class(FieldDescriptor::reals(), rat_from_string("-3/4")).rep == -1);
    CHECK(square_class(FieldDescriptor::quadratically_closed(), Rat(-7)).rep == 1);
    CHECK_THROWS_AS(square_class(FieldDescriptor::rationals(), Rat(0)), ZeroElement);
    CHECK_THROWS_AS(square_class(FieldDescriptor::real_quadratic(5), Rat(2)), UnsupportedField);
}

TEST_CASE("square class groups") {
    auto g2 = square_class_group(FieldDescriptor::padic(2));
    REQUIRE(g2.has_value());
    CHECK(g2->size() == 8);
    std::set<Int> reps;
    for (const auto& c : *g2) reps.insert(c.rep);
    CHECK(reps == std::set<Int>{1, -1, 2, -2, 5, -5, 10, -10});

    auto gr = square_class_group(FieldDescriptor::reals());
    REQUIRE(gr.has_value());
    CHECK(gr->size() == 2);

    CHECK_FALSE(square_class_group(FieldDescriptor::rationals()).has_value());

    auto g3 = square_class_group(FieldDescriptor::padic(3));
    REQUIRE(g3.has_value());
    CHECK(g3->size() == 4);

    auto gf = square_class_group(FieldDescriptor::finite_prime(13));
    REQUIRE(gf.has_value());
    CHECK(gf->size() == 2);
}

TEST_CASE("square class group reps are pairwise inequivalent and closed") {
    for (FieldDescriptor k : {FieldDescriptor::padic(2), FieldDescriptor::padic(5),
                              FieldDescriptor::finite_prime(11), FieldDescriptor::reals()}) {
        auto g = square_class_group(k);
        REQUIRE(g.has_value());
        for (const auto& a : *g) {
            CHECK(square_class(k, Rat(a.rep)) == a); // canonical
            for (const auto& b : *g) {
                SquareClass prod = class_mul(a, b);
                CHECK(std::find(g->begin(), g->end(), prod) != g->end());
                if (!(a == b)) CHECK(!(square_class(k, Rat(a.rep)) == square_class(k, Rat(b.rep))));
            }
            CHECK(class_mul(a, a).trivial()); // 2-torsion
        }
    }
}

TEST_CASE("square class is constant on squares times x") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> pick(-30, 30);
    for (FieldDescriptor k : {FieldDescriptor::rationals(), FieldDescriptor::padic(2),
                              FieldDescriptor::padic(7), FieldDescriptor::finite_prime(13)}) {
        for (int i = 0; i < 100; ++i) {
            long x = pick(rng), t = pick(rng);
            if (x == 0 || t == 0) continue;
            if (k.kind == FieldKind::FinitePrime && (x % 13 == 0 || t % 13 == 0)) continue;
            CHECK(square_class(k, Rat(x)) == square_class(k, Rat(x * t * t)));
        }
    }
}

namespace {

// solvability oracle: a primitive zero of a x^2 + b y^2 - z^2 mod m is
// necessary for a Q_p zero (reduce a primitive Z_p zero mod m)
bool primitive_zero_mod(long a, long b, long m, long p) {
    for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y)
            for (long z = 0; z < m; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                long v = ((a * x * x + b * y * y - z * z) % m + m) % m;
                if (v == 0) return true;
            }
    return false;
}

} // namespace

TEST_CASE("hilbert symbol examples") {
    // (-1,-1)_2 = -1: x^2 + y^2 + z^2 has no primitive zero mod 8
    CHECK_FALSE(primitive_zero_mod(-1, -1, 8, 2));
    CHECK(hilbert_symbol(Place::finite(2), Rat(-1), Rat(-1)) == -1);

    CHECK(hilbert_symbol(Place::real_place(), Rat(-1), Rat(-1)) == -1);
    CHECK(hilbert_symbol(Place::real_place(), Rat(-1), Rat(2)) == 1);

    // (2,5)_5 = -1 cross-checked by searching solutions mod 25
    CHECK_FALSE(primitive_zero_mod(2, 5, 25, 5));
    CHECK(hilbert_symbol(Place::finite(5), Rat(2), Rat(5)) == -1);

    CHECK_THROWS_AS(hilbert_symbol(Place::finite(3), Rat(0), Rat(1)), ZeroElement);
}

TEST_CASE("hilbert symbol is symmetric and bimultiplicative") {
    std::vector<Place> places = {Place::real_place(), Place::finite(2), Place::finite(3),
                                 Place::finite(5), Place::finite(7)};
    std::vector<Rat> vals;
    for (long v : {-10, -7, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 15}) vals.push_back(Rat(v));
    vals.push_back(rat_from_string("1/2"));
    vals.push_back(rat_from_string("-3/5"));
    for (const Place& v : places)
        for (const Rat& a : vals)
            for (const Rat& b : vals) {
                CHECK(hilbert_symbol(v, a, b) == hilbert_symbol(v, b, a));
                for (const Rat& c : vals)
                    CHECK(hilbert_symbol(v, a, Rat(b * c)) ==
                          hilbert_symbol(v, a, b) * hilbert_symbol(v, a, c));
            }
}

TEST_CASE("hilbert reciprocity") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> pick(-60, 60);
    for (int i = 0; i < 200; ++i) {
        long a = pick(rng), b = pick(rng);
        if (a == 0 || b == 0) continue;
        int prod = 1;
        for (const Place& v : relevant_places({Rat(a), Rat(b)}))
            prod *= hilbert_symbol(v, Rat(a), Rat(b));
        CHECK(prod == 1);
    }
}

TEST_CASE("level table") {
    CHECK(level(FieldDescriptor::padic(2)) == 4);
    CHECK(level(FieldDescriptor::finite_prime(3)) == 2);
    CHECK(level(FieldDescriptor::finite_prime(5)) == 1);
    CHECK(level(FieldDescriptor::padic(7)) == 2);
    CHECK(level(FieldDescriptor::padic(13)) == 1);
    CHECK(level(FieldDescriptor::quadratically_closed()) == 1);
    CHECK_FALSE(level(FieldDescriptor::reals()).has_value());
    CHECK_FALSE(level(FieldDescriptor::rationals()).has_value());
    CHECK_FALSE(level(FieldDescriptor::real_quadratic(5)).has_value());
}

TEST_CASE("level matches the sum-of-squares definition") {
    // s(k) = min m with -1 in D(m x <1>), checked through represents
    for (FieldDescriptor k :
         {FieldDescriptor::padic(2), FieldDescriptor::padic(3), FieldDescriptor::padic(5),
          FieldDescriptor::finite_prime(3), FieldDescriptor::finite_prime(5),
          FieldDescriptor::finite_prime(7), FieldDescriptor::finite_prime(13),
          FieldDescriptor::quadratically_closed()}) {
        Field f(k);
        auto s = level(k);
        REQUIRE(s.has_value());
        for (int m = 1; m <= *s + 1; ++m) {
            DiagonalForm ones(k, Vec(m, f.one()));
            bool hits = represents(ones, f.neg(f.one()));
            CHECK(hits == (m >= *s));
        }
    }
}

TEST_CASE("field serialization helpers") {
    FieldDescriptor k = FieldDescriptor::padic(2);
    CHECK(k.name() == "Q_2");
    CHECK(FieldDescriptor::real_quadratic(7).name() == "Q(sqrt 7)");
    CHECK(k.finite_square_classes());
    CHECK_FALSE(FieldDescriptor::rationals().finite_square_classes());
}
