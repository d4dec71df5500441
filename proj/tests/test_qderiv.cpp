#include <doctest.h>

#include "arithderiv/qderiv.hpp"
#include "support.hpp"

using namespace arithderiv;

TEST_CASE("d_full examples") {
    CHECK(d_full(Rational(-21, 16)) == 2);
    CHECK(d_full(Rational(-5, 4)) == 1);
    CHECK(d_full(0) == 0);
    CHECK(d_full(63) == 51);
    CHECK(d_full(1) == 0);
    CHECK(d_full(-1) == 0);
}

TEST_CASE("d_partial examples") {
    CHECK(d_partial(2, 2) == 1);
    CHECK(d_partial(12, 2) == 12);
    CHECK(d_partial(Rational(8, 3), 2) == 4);
    CHECK(d_partial(0, 2) == 0);
    CHECK(d_partial(7, 2) == 0);
}

TEST_CASE("b p^p is a fixed point of D_p") {
    for (long p : {2L, 3L, 5L}) {
        for (long b : {1L, -7L, 11L}) {
            if (b % p == 0) continue;
            Rational x = Rational(b) * Rational(ipow(p, static_cast<unsigned long>(p)));
            CHECK(d_partial(x, p) == x);
        }
    }
}

TEST_CASE("d_sub examples") {
    CHECK(d_sub(12, PrimeSet{2, 3}) == 16);
    CHECK(d_sub(12, PrimeSet{5}) == 0);
    CHECK(d_sub(Rational(-21, 16), PrimeSet{2, 3, 7}) == 2);
}

TEST_CASE("prime sets are validated") {
    CHECK_THROWS_AS(PrimeSet(std::vector<Integer>{}), DomainError);
    CHECK(PrimeSet{3, 2}.primes() == std::vector<Integer>{2, 3});
    CHECK_THROWS_AS((PrimeSet{3, 3}), DomainError);
    CHECK_THROWS_AS((PrimeSet{2, 4}), DomainError);
    CHECK(PrimeSet::parse("2,3,7").size() == 3);
    CHECK_THROWS_AS(PrimeSet::parse("2,,3"), DomainError);
}

TEST_CASE("ld_partial examples") {
    CHECK(ld_partial(8, 2) == Rational(3, 2));
    CHECK(ld_partial(3, 2) == 0);
    CHECK(ld_partial(Rational(9, 2), 3) == Rational(2, 3));
    CHECK_THROWS_AS(ld_partial(0, 2), DomainError);
    CHECK_THROWS_AS(ld_full(0), DomainError);
    CHECK(ld_full(12) == Rational(4, 3));
}

TEST_CASE("derivatives agree with trial-division oracle") {
    oracle::Rng rng(0x5eed0101);
    for (int t = 0; t < 2000; ++t) {
        Rational x = rng.rational(100000);
        CHECK(d_full(x) == oracle::d_full(x));
        for (long p : {2L, 3L, 5L, 7L}) CHECK(d_partial(x, p) == oracle::d_partial(x, p));
    }
}

TEST_CASE("Leibniz rule for d_full, d_partial and d_sub on 10^4 pairs") {
    oracle::Rng rng(0x5eed0102);
    const std::vector<long> primes{2, 3, 5, 7};
    const PrimeSet T{2, 3, 7};
    int failures = 0;
    for (int t = 0; t < 10000; ++t) {
        Rational x = rng.rational(3000), y = rng.rational(3000);
        long p = rng.pick(primes);
        if (d_full(x * y) != d_full(x) * y + x * d_full(y)) ++failures;
        if (d_partial(x * y, p) != d_partial(x, p) * y + x * d_partial(y, p)) ++failures;
        if (d_sub(x * y, T) != d_sub(x, T) * y + x * d_sub(y, T)) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("d_full decomposes into partial derivatives over the support") {
    oracle::Rng rng(0x5eed0103);
    const std::vector<long> smooth{2, 3, 5, 7, 11, 13};
    for (int t = 0; t < 500; ++t) {
        Rational x = 1;
        for (int k = 0; k < 6; ++k) {
            long q = rng.pick(smooth);
            x *= rng.coin() ? Rational(q) : Rational(1, q);
        }
        x *= rng.uniform(1, 1000);
        Rational sum = 0;
        for (const auto& p : support(x)) sum += d_partial(x, p);
        CHECK(d_full(x) == sum);
    }
}

TEST_CASE("ld_partial is a homomorphism into (1/p)Z") {
    oracle::Rng rng(0x5eed0104);
    for (int t = 0; t < 2000; ++t) {
        Rational x = rng.nonzero_rational(100000), y = rng.nonzero_rational(100000);
        for (long p : {2L, 3L, 5L}) {
            CHECK(ld_partial(x * y, p) == ld_partial(x, p) + ld_partial(y, p));
            Rational l = ld_partial(x, p);
            CHECK(Rational(l * p).get_den() == 1);
        }
    }
}

TEST_CASE("prime power forms normalize and materialize") {
    PrimePowerForm f(2, 12, 1);
    CHECK(f.unit() == 3);
    CHECK(f.exponent() == 3);
    CHECK(f.materialize() == 24);
    CHECK(PrimePowerForm(2, 0, 5).is_zero());
    CHECK(PrimePowerForm::from_rational(Rational(-21, 16), 2).exponent() == -4);
    CHECK(PrimePowerForm::parse("3*2^5", 2).materialize() == 96);
    CHECK(PrimePowerForm::parse("2^64", 2).exponent() == 64);
    CHECK(PrimePowerForm::parse("8/3", 2).exponent() == 3);
    PrimePowerForm huge(2, 1, Integer(1) << 40);
    CHECK(!huge.materializable());
    CHECK_THROWS_AS(huge.materialize(), CapacityError);
    CHECK(huge.valuation() == ExtendedValuation(Integer(1) << 40));
    CHECK(PrimePowerForm(2, 3, 2).to_string() == "3*2^2");
}

TEST_CASE("ppf_derivative examples") {
    auto d = ppf_derivative(PrimePowerForm(2, 1, 3));
    CHECK(d.unit() == 3);
    CHECK(d.exponent() == 2);
    CHECK(d.materialize() == 12);
    CHECK(d.materialize() == d_full(8));
    CHECK(ppf_derivative(PrimePowerForm(2, 1, 0)).is_zero());
    auto e = ppf_derivative(PrimePowerForm(2, 1, 4));
    CHECK(e.unit() == 1);
    CHECK(e.exponent() == 5);
    CHECK(e.materialize() == 32);
}

TEST_CASE("ppf_derivative commutes with materialization up to 2^12") {
    oracle::Rng rng(0x5eed0105);
    for (int t = 0; t < 300; ++t) {
        long p = rng.pick(std::vector<long>{2, 3, 5, 7});
        Rational u = rng.nonzero_rational(50);
        long exponent = rng.uniform(-4096, 4096);
        PrimePowerForm f(p, u, exponent);
        CHECK(ppf_derivative(f).materialize() == d_partial(f.materialize(), p));
    }
}

TEST_CASE("backward chain examples") {
    CHECK(backward_chain(2, 1, Parity::Odd) == Rational(16, 5));
    CHECK(backward_chain(2, 0, Parity::Odd) == 16);
    CHECK(backward_chain(2, 0, Parity::Even) == 16);
    CHECK(backward_chain_term(2, 1) == 16);
    CHECK(d_partial(Rational(32, 5), 2) == 16);
    CHECK(backward_chain_term(2, 2) == Rational(32, 5));
}

TEST_CASE("backward chain descends under D_p") {
    for (long p : {2L, 3L}) {
        for (unsigned long n = 2; n <= 40; ++n) {
            CHECK(d_partial(backward_chain_term(p, n), p) == backward_chain_term(p, n - 1));
        }
    }
}
