#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "cpm/perturb.hpp"
#include "cpm/rational.hpp"

using cpm::rat;
using cpm::Rational;

TEST_CASE("rational canonical form") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(2, 4).str() == "1/2");
  CHECK(rat(3, -6).str() == "-1/2");
  CHECK(rat(4, 2).str() == "2");
  CHECK(rat(1, 2) + rat(1, 2) == 1);
  CHECK((rat(1, 2) + rat(1, 2)).is_integer());
  CHECK(rat(63, 128) < rat(1, 2));
  CHECK_FALSE(rat(1, 2) < rat(63, 128));
  CHECK_THROWS_AS(rat(1, 0), std::domain_error);
  CHECK_THROWS_AS(rat(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("rational parse round trip") {
  for (const char* s : {"0", "7", "-3", "5/8", "-123456789012345678901234567891/1048576"})
    CHECK(Rational::parse(s).str() == s);
  CHECK(Rational::parse("6/4") == rat(3, 2));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("rational association order does not matter") {
  const Rational a = rat(1, 3), b = rat(-5, 7), c = rat(11, 13);
  CHECK((a + b) + c == a + (b + c));
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * (b + c) == a * b + a * c);
  CHECK(abs(b) == rat(5, 7));
}

TEST_CASE("perturb scales costs by 2^m") {
  std::vector<long> c3{1, 1, 1};
  auto p = cpm::perturb(c3);
  REQUIRE(p.scaled.size() == 3);
  CHECK(p.scaled[0] == 12);
  CHECK(p.scaled[1] == 10);
  CHECK(p.scaled[2] == 9);
  CHECK(p.scale == 8);

  std::vector<long> c1{5};
  CHECK(cpm::perturb(c1).scaled[0] == 11);

  std::vector<long> c0{0, 0};
  auto z = cpm::perturb(c0);
  CHECK(z.scaled[0] == 2);
  CHECK(z.scaled[1] == 1);

  CHECK_THROWS_AS(cpm::perturb(std::vector<long>{}), std::invalid_argument);
}

TEST_CASE("perturbation offsets are 2^-i and sum below 1") {
  std::vector<long> c{3, -2, 0, 7, 1, 1, 9};
  auto p = cpm::perturb(c);
  Rational total;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Rational off = p.perturbed(i) - Rational(c[i]);
    CHECK(off == rat(1, 1L << (i + 1)));
    total += off;
  }
  CHECK(total < 1);
  CHECK(p.unscale(Rational(p.scaled[3])) == p.perturbed(3));
}

TEST_CASE("distinct edge sets never tie under perturbation") {
  // All 2^m subsets of zero-cost edges get distinct perturbed totals.
  std::vector<long> c(8, 0);
  auto p = cpm::perturb(c);
  std::vector<mpz_class> seen;
  for (unsigned mask = 0; mask < (1u << c.size()); ++mask) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (mask & (1u << i)) s += p.scaled[i];
    seen.push_back(s);
  }
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}
