#include <doctest.h>

#include "kummerlab/localsolve.hpp"

using namespace kummerlab;

namespace {

using Forms = std::vector<std::vector<Integer>>;

// Plain exhaustive check: does a primitive solution mod p^k exist?
// Enumerates the full residue space, so only usable for tiny p^(nk).
bool has_primitive_solution_mod(const Forms& forms, long p, int k) {
    long pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    const int n = static_cast<int>(forms[0].size());
    std::vector<long> x(n, 0);
    for (;;) {
        bool primitive = false;
        for (long c : x)
            if (c % p != 0) primitive = true;
        if (primitive) {
            bool ok = true;
            for (const auto& form : forms) {
                Integer acc = 0;
                for (int i = 0; i < n; ++i) acc += form[i] * x[i] * x[i];
                if (acc % pk != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        int i = 0;
        while (i < n && ++x[i] == pk) x[i++] = 0;
        if (i == n) return false;
    }
}

}  // namespace

TEST_CASE("sum of three squares: the classical local pattern") {
    Forms f = {{1, 1, 1}};
    CHECK(solve_padic(f, Integer(3)).soluble());
    CHECK(solve_padic(f, Integer(5)).soluble());
    CHECK(solve_padic(f, Integer(7)).soluble());
    auto at2 = solve_padic(f, Integer(2));
    CHECK(at2.insoluble());
    CHECK(solve_real(f).insoluble());
    CHECK_FALSE(has_primitive_solution_mod(f, 2, 5));
}

TEST_CASE("witnesses verify and match the oracle") {
    // split-torsor pair: u^2 - v^2 = 3 t^2, u^2 - w^2 = 10 t^2
    Forms pair = {{1, -1, 0, -3}, {1, 0, -1, -10}};
    for (long p : {2, 3, 5, 7}) {
        auto res = solve_padic(pair, Integer(p));
        REQUIRE(res.soluble());
        CHECK(verify_padic_witness(pair, Integer(p), *res.padic));
        CHECK(has_primitive_solution_mod(pair, p, 2));
    }
    CHECK(solve_real(pair).soluble());
}

TEST_CASE("insoluble conic pair is detected and confirmed exhaustively") {
    // u^2 = 3 v^2 demands 3 to be a square in Q_3-units: insoluble at 3.
    Forms f = {{1, -3}};
    auto res = solve_padic(f, Integer(3));
    CHECK(res.insoluble());
    CHECK_FALSE(has_primitive_solution_mod(f, 3, 3));

    // 3 u^2 + 3 v^2 - t^2: at p=3 needs t = 0 mod 3 with (u,v) primitive,
    // then u^2 + v^2 = 0 mod 3 has no unit solution.
    Forms g = {{3, 3, -1}};
    auto res3 = solve_padic(g, Integer(3));
    CHECK(res3.insoluble());
    CHECK_FALSE(has_primitive_solution_mod(g, 3, 3));
    CHECK(solve_padic(g, Integer(5)).soluble());
}

TEST_CASE("2-adic witnesses carry enough precision") {
    // u^2 + v^2 - 17 t^2 = 0 is soluble at 2 (17 = 1 mod 8)
    Forms f = {{1, 1, -17}};
    auto res = solve_padic(f, Integer(2));
    REQUIRE(res.soluble());
    CHECK(res.padic->precision >= 2 * res.padic->minor_valuation + 1);
    CHECK(verify_padic_witness(f, Integer(2), *res.padic));

    // u^2 + v^2 - 3 t^2 = 0: 3 is not a norm from Q_2(i), since the norm
    // form represents exactly the classes with unit part 1 mod 4.
    Forms g = {{1, 1, -3}};
    CHECK(solve_padic(g, Integer(2)).insoluble());
    CHECK_FALSE(has_primitive_solution_mod(g, 2, 5));
}

TEST_CASE("agreement with exhaustive enumeration on a grid of conics") {
    for (long a : {1, -1, 2, 3, 6})
        for (long b : {1, -1, 5, 15})
            for (long c : {-1, -2, -10}) {
                Forms f = {{a, b, c}};
                for (long p : {2, 3, 5}) {
                    auto res = solve_padic(f, Integer(p));
                    if (res.soluble()) {
                        CHECK(verify_padic_witness(f, Integer(p), *res.padic));
                        CHECK(has_primitive_solution_mod(f, p, 3));
                    } else {
                        REQUIRE(res.insoluble());
                        CHECK_FALSE(has_primitive_solution_mod(f, p, p == 2 ? 5 : 3));
                    }
                }
            }
}

TEST_CASE("real cone solver") {
    CHECK(solve_real({{1, 1, 1, 1}}).insoluble());
    CHECK(solve_real({{1, 1, -1}}).soluble());

    auto res = solve_real({{1, -1, 0, 0}, {1, 0, -1, -1}});
    REQUIRE(res.soluble());
    CHECK(verify_real_squares({{1, -1, 0, 0}, {1, 0, -1, -1}}, *res.real_squares));

    // q1 + q2 = t^2 forces t = 0, then u = v realizes a ray
    auto mixed = solve_real({{1, -1, 0}, {-1, 1, 1}});
    CHECK(mixed.soluble());
}

TEST_CASE("six-variable systems: the Kummer shape") {
    // all-ones point on the moment system of a = (0,1,2,3,4,5)
    Forms sys = {{-1, 5, -10, 10, -5, 1},
                 {0, 1, -4, 6, -4, 1},
                 {0, 1, -8, 18, -16, 5}};
    for (long p : {2, 3, 5, 7, 11, 101}) {
        auto res = solve_padic(sys, Integer(p));
        REQUIRE(res.soluble());
        CHECK(verify_padic_witness(sys, Integer(p), *res.padic));
    }
    auto real = solve_real(sys);
    REQUIRE(real.soluble());
    CHECK(verify_real_squares(sys, *real.real_squares));
}
