#include "doctest.h"

#include "toolkit/exactmath.hpp"
#include "toolkit/rng.hpp"

using namespace toolkit;

TEST_CASE("rational normal form and printing") {
  CHECK(Rational(6, -4).to_string() == "-3/2");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational::parse("10/-4") == Rational(-5, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse("1.5"), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse(""), InvalidArgument);
}

TEST_CASE("rational overflow promotes and demotes") {
  Rational big = Rational(INT64_MAX) * Rational(INT64_MAX);
  CHECK_FALSE(big.is_small());
  CHECK(big.to_string() == "85070591730234615847396907784232501249");
  Rational back = big / Rational(INT64_MAX);
  CHECK(back.is_small());
  CHECK(back == Rational(INT64_MAX));
  Rational tiny = Rational(1, INT64_MAX) * Rational(1, 3);
  CHECK_FALSE(tiny.is_small());
  CHECK(tiny * Rational(3) == Rational(1, INT64_MAX));
  CHECK(Rational(INT64_MIN).to_string() == "-9223372036854775808");
  CHECK(Rational(INT64_MIN) + Rational(1) == Rational(INT64_MIN + 1));
}

TEST_CASE("rational arithmetic agrees with mpq on random operands") {
  Engine g(11);
  for (int t = 0; t < 2000; ++t) {
    long long an = draw(g, -1000000000000L, 1000000000000L), ad = draw(g, 1, 1000000000L);
    long long bn = draw(g, -1000000000000L, 1000000000000L), bd = draw(g, 1, 1000000000L);
    Rational a(an, ad), b(bn, bd);
    mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    CHECK((a + b).to_mpq() == qa + qb);
    CHECK((a - b).to_mpq() == qa - qb);
    CHECK((a * b).to_mpq() == qa * qb);
    if (!b.is_zero()) CHECK((a / b).to_mpq() == qa / qb);
    CHECK((a < b) == (qa < qb));
  }
}

TEST_CASE("quadratic norm identity") {
  for (long long D : {2, 3, 5, 13}) {
    Engine g(100 + D);
    for (int t = 0; t < 100; ++t) {
      Rational a(draw(g, -50, 50), draw(g, 1, 9)), b(draw(g, -50, 50), draw(g, 1, 9));
      QuadraticElement x(a, b, D);
      QuadraticElement p = x * x.conj();
      CHECK(p.b().is_zero());
      CHECK(p.a() == a * a - Rational(D) * b * b);
    }
  }
  CHECK_THROWS_AS(QuadraticElement(1, 1, 4), InvalidArgument);
  CHECK_THROWS_AS(QuadraticElement(1, 1, 1), InvalidArgument);
  QuadraticElement u(1, 1, 2);
  CHECK((u / u) == QuadraticElement(1, 0, 2));
}

TEST_CASE("squarefree helpers") {
  CHECK(squarefree_part(12) == 3);
  CHECK(squarefree_part(5) == 5);
  CHECK(squarefree_part(-8) == -2);
  CHECK(is_perfect_square(49));
  CHECK_FALSE(is_perfect_square(50));
  CHECK_FALSE(is_perfect_square(-4));
}

TEST_CASE("rref small cases") {
  auto [r1, k1] = rref(RationalMatrix::identity(3));
  CHECK(r1 == RationalMatrix::identity(3));
  CHECK(k1 == 3);
  auto [r0, k0] = rref(RationalMatrix(2, 4));
  CHECK(r0.is_zero());
  CHECK(k0 == 0);
  RationalMatrix m{{1, 2}, {2, 4}};
  auto [r2, k2] = rref(m);
  CHECK(k2 == 1);
  CHECK(r2 == RationalMatrix{{1, 2}, {0, 0}});
}

TEST_CASE("rref is idempotent on random matrices") {
  Engine g(5);
  for (int t = 0; t < 60; ++t) {
    size_t R = size_t(draw(g, 1, 6)), C = size_t(draw(g, 1, 6));
    RationalMatrix m(R, C);
    for (auto& v : m.data()) v = Rational(draw(g, -3, 3), draw(g, 1, 3));
    auto once = rref(m).first;
    CHECK(rref(once).first == once);
  }
}

TEST_CASE("nullspace contract") {
  auto b1 = nullspace(RationalMatrix{{1, 1}});
  REQUIRE(b1.size() == 1);
  CHECK(b1[0] == RationalMatrix{{-1}, {1}});
  CHECK(nullspace(RationalMatrix::identity(4)).empty());
  RationalMatrix m{{1, 2}, {2, 4}};
  auto b2 = nullspace(m);
  REQUIRE(b2.size() == 1);
  CHECK((m * b2[0]).is_zero());

  Engine g(9);
  for (int t = 0; t < 40; ++t) {
    size_t R = size_t(draw(g, 1, 5)), C = size_t(draw(g, 1, 7));
    RationalMatrix a(R, C);
    for (auto& v : a.data()) v = draw(g, -2, 2);
    auto basis = nullspace(a);
    CHECK(basis.size() == C - rank(a));
    for (auto& v : basis) CHECK((a * v).is_zero());
  }
}

TEST_CASE("sparse eliminator matches dense nullspace") {
  Engine g(21);
  for (int t = 0; t < 30; ++t) {
    size_t R = size_t(draw(g, 1, 12)), C = size_t(draw(g, 1, 10));
    RationalMatrix a(R, C);
    SparseEliminator se(C);
    for (size_t i = 0; i < R; ++i) {
      SparseRow row;
      for (size_t j = 0; j < C; ++j) {
        if (draw(g, 0, 2) == 0) continue;
        a(i, j) = Rational(draw(g, -4, 4), draw(g, 1, 2));
        row.emplace_back(uint32_t(j), a(i, j));
      }
      se.add_row(row);
    }
    auto ns = se.nullspace();
    CHECK(ns.size() == C - rank(a));
    for (auto& v : ns) {
      auto r = a * v;
      for (auto& x : r) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("span tracker") {
  SpanTracker s(3);
  CHECK(s.add({1, 2, 3}));
  CHECK_FALSE(s.add({2, 4, 6}));
  CHECK(s.add({0, 1, 0}));
  CHECK(s.contains({1, 5, 3}));
  CHECK_FALSE(s.contains({0, 0, 1}));
}

TEST_CASE("inverse and determinant") {
  RationalMatrix m{{2, 1}, {1, 1}};
  CHECK(inverse(m) * m == RationalMatrix::identity(2));
  CHECK(det(m) == Rational(1));
  CHECK_THROWS_AS(inverse(RationalMatrix{{1, 2}, {2, 4}}), InvalidArgument);
}

namespace {
void check_smith(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(::abs(det(s.U)) == 1);
  CHECK(::abs(det(s.V)) == 1);
  for (size_t i = 0; i < s.D.rows(); ++i)
    for (size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  for (size_t k = 0; k + 1 < s.divisors.size(); ++k)
    CHECK(mpz_divisible_p(s.divisors[k + 1].get_mpz_t(), s.divisors[k].get_mpz_t()));
  for (auto& d : s.divisors) CHECK(d > 0);
}
}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix::identity(2)).D == IntMatrix::identity(2));
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).D == IntMatrix{{1, 0}, {0, 6}});
  CHECK(smith_normal_form(IntMatrix{{2}}).D == IntMatrix{{2}});
  CHECK(smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}).divisors ==
        std::vector<mpz_class>{2, 6, 12});
}

TEST_CASE("smith normal form on random matrices") {
  Engine g(3);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m(size_t(draw(g, 1, 5)), size_t(draw(g, 1, 5)));
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) m(i, j) = draw(g, -9, 9);
    check_smith(m);
  }
}

TEST_CASE("hermite normal form is canonical for the row lattice") {
  IntMatrix a{{2, 4}, {0, 8}};
  IntMatrix b{{2, 12}, {2, 4}};
  CHECK(hermite_normal_form(a) == hermite_normal_form(b));
  CHECK(hermite_normal_form(a) == IntMatrix{{2, 4}, {0, 8}});
  CHECK(hermite_normal_form(IntMatrix{{3, 0}, {6, 0}}) == IntMatrix{{3, 0}});

  Engine g(8);
  for (int t = 0; t < 100; ++t) {
    IntMatrix m(3, 4);
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 4; ++j) m(i, j) = draw(g, -5, 5);
    // a unimodular change of basis must not move the HNF
    IntMatrix u = IntMatrix::identity(3);
    u.add_row_multiple(0, 1, draw(g, -3, 3));
    u.add_row_multiple(2, 0, draw(g, -3, 3));
    u.swap_rows(1, 2);
    CHECK(hermite_normal_form(u * m) == hermite_normal_form(m));
  }
}
