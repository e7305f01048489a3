#include "doctest.h"

#include "samplers.hpp"
#include "toolkit/jordan.hpp"

using namespace toolkit;
using J = JordanElement;

namespace {
const GammaVector kC{1, 1, 1};
const GammaVector kB{1, -1, 1};
}  // namespace

TEST_CASE("gamma parsing") {
  CHECK(GammaVector::parse("1,-1,1") == kB);
  CHECK(GammaVector::parse("1/2,3,-5")[0] == Rational(1, 2));
  CHECK_THROWS_AS(GammaVector::parse("1,0,1"), InvalidArgument);
  CHECK_THROWS_AS(GammaVector::parse("1,1"), InvalidArgument);
}

TEST_CASE("realization round trip and hermiticity") {
  Engine g(4);
  for (auto& gamma : {kC, kB, GammaVector(2, 3, -5)}) {
    for (int t = 0; t < 20; ++t) {
      J x = samplers::jordan(g, gamma);
      CHECK(extract(realize(x), gamma) == x);
    }
  }
  OctMatrix bad = realize(J::identity(kC));
  bad[0][1] = OctonionElement::basis(1);
  CHECK_THROWS_AS(extract(bad, kC), InternalError);
}

TEST_CASE("jmul basics") {
  Engine g(5);
  J x = samplers::jordan(g, kB);
  CHECK(jmul(J::identity(kB), x) == x);
  CHECK(jmul(J::diag(1, 2, 3, kB), J::diag(4, 5, 6, kB)) == J::diag(4, 10, 18, kB));
  J box(kB);
  box.x(0) = samplers::octonion(g);
  CHECK(jmul(J::diag(1, 0, 0, kB), box).is_zero());
  CHECK_THROWS_AS(jmul(J::identity(kB), J::identity(kC)), InvalidArgument);
}

TEST_CASE("norm, trace, sharp examples") {
  CHECK(jnorm(J::identity(kC)) == Rational(1));
  CHECK(jtrace(J::identity(kC)) == Rational(3));
  CHECK(jnorm(J::diag(1, 2, 3, kC)) == Rational(6));
  CHECK(jsharp(J::identity(kC)) == J::identity(kC));
  CHECK(jsharp(J::diag(2, 3, 5, kB)) == J::diag(15, 10, 6, kB));
  J x = J::identity(kC);
  x.x(0) = OctonionElement::basis(0);
  CHECK(jnorm(x) == Rational(0));
}

TEST_CASE("printed cubic disagrees with the operational norm") {
  J x = J::identity(kC);
  x.x(0) = OctonionElement::basis(0);
  CHECK(jnorm_printed(x) == Rational(2));
  CHECK(jnorm(x) == Rational(0));
  // they agree on diagonal elements
  CHECK(jnorm_printed(J::diag(2, 3, 5, kB)) == jnorm(J::diag(2, 3, 5, kB)));
}

TEST_CASE("adjoint identity on seeded samples") {
  for (auto& gamma : {kC, kB}) {
    Engine g(1000);
    for (int t = 0; t < 1000; ++t) {
      J x = samplers::jordan(g, gamma);
      J p = jmul(x, jsharp(x));
      Rational n = jnorm(x);
      CHECK(p == J::diag(n, n, n, gamma));
    }
  }
}

TEST_CASE("inverse contract") {
  CHECK(jinverse(J::diag(1, 2, 3, kC)) == J::diag(1, Rational(1, 2), Rational(1, 3), kC));
  CHECK(jinverse(J::identity(kB)) == J::identity(kB));
  CHECK_THROWS_AS(jinverse(J::diag(0, 1, 1, kC)), NotInvertible);
  Engine g(77);
  int inverted = 0;
  for (int t = 0; t < 200; ++t) {
    J x = samplers::jordan(g, kB);
    if (jnorm(x).is_zero()) continue;
    J y = jinverse(x);
    CHECK(jmul(x, y) == J::identity(kB));
    CHECK(jmul(jmul(x, x), y) == x);
    ++inverted;
  }
  CHECK(inverted > 150);
}

TEST_CASE("jordan identity and commutativity") {
  Engine g(300);
  for (int t = 0; t < 300; ++t) {
    const GammaVector& gamma = t % 2 ? kB : kC;
    J x = samplers::jordan(g, gamma), y = samplers::jordan(g, gamma);
    J x2 = jmul(x, x);
    CHECK(jmul(jmul(x2, y), x) == jmul(x2, jmul(y, x)));
    CHECK(jmul(x, y) == jmul(y, x));
  }
}

TEST_CASE("integrality examples") {
  CHECK(is_integral(J::identity(kC)));
  CHECK(jquadratic(J::identity(kC)) == Rational(3));
  CHECK_FALSE(is_integral(J::diag(Rational(1, 2), 2, 2, kC)));
  J x = J::diag(1, 0, 0, kC);
  x.x(0) = OctonionElement::basis(0) + OctonionElement::basis(1);
  auto order = maximal_jordan_order(kC);
  CHECK(in_jordan_order(x, order));
  CHECK(is_integral(x));
  J y = x;
  y.x(0) = OctonionElement::basis(0);
  CHECK_FALSE(in_jordan_order(y, order));
}

TEST_CASE("elements of the maximal Jordan order are integral") {
  for (auto& gamma : {kC, kB}) {
    auto order = maximal_jordan_order(gamma);
    Engine g(200);
    for (int t = 0; t < 200; ++t) {
      J x = samplers::jordan_order_element(g, gamma);
      REQUIRE(in_jordan_order(x, order));
      CHECK(is_integral(x));
    }
  }
}

TEST_CASE("structure table agrees with jmul") {
  auto table = jordan_table(kB);
  CHECK(table->is_commutative());
  Engine g(6);
  for (int t = 0; t < 20; ++t) {
    J x = samplers::jordan(g, kB), y = samplers::jordan(g, kB);
    CHECK(table->mul(x.coords(), y.coords()) == jmul(x, y).coords());
  }
  CHECK(jordan_table(kB) == table);  // cached
}
