#include "doctest.h"

#include <algorithm>
#include <set>

#include "toolkit/lattice.hpp"

using namespace toolkit;
using L = IntegerLattice;

namespace {
RationalMatrix diag(std::vector<Rational> d) {
  RationalMatrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

MatrixLattice lattice_of(size_t n, std::vector<std::vector<Rational>> flat) {
  std::vector<RationalMatrix> b;
  for (auto& f : flat) {
    RationalMatrix m(n, n);
    m.data() = f;
    b.push_back(m);
  }
  return MatrixLattice(n, b);
}

// every rank 1 and rank 2 sublattice of Z^3 with entries in [-2, 2]
std::vector<L> small_corpus() {
  std::vector<std::vector<long>> vecs;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        if (a || b || c) vecs.push_back({a, b, c});
  std::vector<L> out;
  for (auto& v : vecs) out.push_back(L::from_rows({v}, 3));
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = 0; j < vecs.size(); ++j) {
      try {
        out.push_back(L::from_rows({vecs[i], vecs[j]}, 3));
      } catch (const InvalidArgument&) {
      }
    }
  return out;
}
}  // namespace

TEST_CASE("purity examples") {
  CHECK(is_pure(L::from_rows({{1, 0, 0}}, 3)));
  CHECK_FALSE(is_pure(L::from_rows({{2, 0}}, 2)));
  CHECK(is_pure(L::from_rows({{2, 3}}, 2)));
  CHECK(saturate(L::from_rows({{2, 0}}, 2)) == L::from_rows({{1, 0}}, 2));
  CHECK(saturate(L::from_rows({{2, 4}, {0, 8}}, 2)) == L::from_rows({{1, 0}, {0, 1}}, 2));
  CHECK(saturation_index(L::from_rows({{2, 4}, {0, 8}}, 2)) == 16);
  CHECK_THROWS_AS(L::from_rows({{1, 2}, {2, 4}}, 2), InvalidArgument);
  CHECK(L::parse("2,0,0,0;0,3,0,0", 4).rank() == 2);
  CHECK_THROWS_AS(L::parse("2,x", 2), InvalidArgument);
}

TEST_CASE("purity agrees with the brute-force oracle") {
  auto corpus = small_corpus();
  CHECK(corpus.size() > 10000);
  size_t agree = 0, impure = 0, five_or_seven = 0;
  for (auto& w : corpus) {
    bool p = is_pure(w);
    agree += p == is_pure_oracle(w, 8);
    impure += !p;
    mpz_class idx = saturation_index(w);
    five_or_seven += idx == 5 || idx == 7;
  }
  CHECK(agree == corpus.size());
  CHECK(impure > 0);
  // k up to 4 would miss these
  CHECK(five_or_seven > 0);
}

TEST_CASE("saturation properties") {
  auto corpus = small_corpus();
  for (size_t i = 0; i < corpus.size(); i += 7) {
    auto& w = corpus[i];
    auto s = saturate(w);
    CHECK(is_pure(s));
    CHECK(saturate(s) == s);
    CHECK(is_pure(w) == (s == w));
    for (size_t r = 0; r < w.rank(); ++r) {
      std::vector<mpz_class> row(3);
      for (size_t j = 0; j < 3; ++j) row[j] = w.basis()(r, j);
      CHECK(s.contains(row));
    }
    // [s : w]^2 = det Gram(w) / det Gram(s)
    auto gram = [](const L& x) {
      RationalMatrix b = x.basis().to_rational();
      return det(b * b.transpose());
    };
    mpz_class idx = saturation_index(w);
    CHECK(gram(w) == Rational(mpz_class(idx * idx)) * gram(s));
  }
}

TEST_CASE("gamma integrality examples") {
  const L w = L::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}}, 4);
  CHECK(is_gamma_integral(GroupElementQ::make(RationalMatrix::identity(4)), w));
  auto g = GroupElementQ::make(diag({2, 1, Rational(1, 2), 1}));
  CHECK_FALSE(is_gamma_integral(g, w));
  Engine rng(3);
  for (int t = 0; t < 20; ++t) CHECK(is_gamma_integral(GroupElementQ::make(random_sp4z(rng)), w));
  CHECK_THROWS_AS(GroupElementQ::make(diag({2, 1, 1, 1})), InvalidArgument);
  CHECK_NOTHROW(GroupElementQ::make(diag({2, 1, 1, 1}), false));
  CHECK_THROWS_AS(is_gamma_integral(GroupElementQ::make(RationalMatrix::identity(4)),
                                    L::from_rows({{2, 0, 0, 0}}, 4)),
                  InvalidArgument);
}

TEST_CASE("gamma integrality is invariant under left translation by Sp4(Z)") {
  const L w = L::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}}, 4);
  size_t yes = 0;
  for (int t = 0; t < 100; ++t) {
    Engine rng = substream(0, 7, uint64_t(t));
    RationalMatrix g = random_sp4q(rng);
    RationalMatrix gamma = random_sp4z(rng);
    bool a = is_gamma_integral(GroupElementQ::make(g), w);
    bool b = is_gamma_integral(GroupElementQ::make(gamma * g), w);
    CHECK(a == b);
    yes += a;
  }
  CHECK(yes > 0);
  CHECK(yes < 100);
}

TEST_CASE("orders") {
  auto m2 = MatrixLattice::standard(2);
  CHECK(is_order(m2));
  CHECK(right_order(m2) == m2);
  CHECK(left_order(m2) == m2);
  CHECK(right_order(m2.scaled(3)) == m2);
  CHECK_FALSE(is_order(m2.scaled(Rational(1, 2))));
  for (long j : {2, 3, 5}) {
    CHECK(is_order(oj_shape(2, j)));
    CHECK(is_order(oj_shape(3, j)));
    CHECK(right_order(oj_shape(2, j)) == oj_shape(2, j));
  }
  CHECK(oj_shape(2, 2).contains(RationalMatrix{{1, Rational(1, 2)}, {2, 1}}));
  CHECK_FALSE(oj_shape(2, 2).contains(RationalMatrix{{1, Rational(1, 2)}, {1, 1}}));
  CHECK_THROWS_AS(lattice_of(2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 0}}), InvalidArgument);
}

TEST_CASE("right order against a grid oracle") {
  auto l = lattice_of(2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}});
  auto o = right_order(l);
  CHECK(is_order(o));
  // every x with entries in (1/6)Z cap [-2, 2]
  std::vector<Rational> grid;
  for (int k = -12; k <= 12; ++k) grid.push_back(Rational(k, 6));
  size_t members = 0;
  for (auto& a : grid)
    for (auto& b : grid)
      for (auto& c : grid)
        for (auto& d : grid) {
          RationalMatrix x{{a, b}, {c, d}};
          bool want = true;
          for (auto& bm : l.basis()) want = want && l.contains(bm * x);
          if (want != o.contains(x)) {
            CHECK(want == o.contains(x));
            return;
          }
          members += want;
        }
  CHECK(members > 0);
}

TEST_CASE("right order of random full lattices is an order") {
  for (int t = 0; t < 50; ++t) {
    Engine g = substream(0, 8, uint64_t(t));
    std::vector<RationalMatrix> b;
    MatrixLattice l = MatrixLattice::standard(2);
    for (;;) {
      b.clear();
      for (int k = 0; k < 4; ++k) {
        RationalMatrix m(2, 2);
        for (auto& v : m.data()) v = Rational(draw(g, -3, 3), draw(g, 1, 4));
        b.push_back(m);
      }
      try {
        l = MatrixLattice(2, b);
        break;
      } catch (const InvalidArgument&) {
      }
    }
    auto r = right_order(l);
    CHECK(is_order(r));
    CHECK(is_order(left_order(l)));
    CHECK(right_order(r) == r);
    for (auto& x : r.basis())
      for (auto& bm : l.basis()) CHECK(l.contains(bm * x));
  }
}

TEST_CASE("humbert discriminant and class") {
  auto t = [](long long a, long long b, long long c, long long d, long long e) {
    return HumbertTuple::normalized(a, b, c, d, e);
  };
  CHECK(humbert_discriminant(t(0, 1, 0, 0, 0)) == 1);
  CHECK(humbert_discriminant(t(1, 1, -1, 0, 0)) == 5);
  CHECK(humbert_discriminant(t(1, 0, 0, 0, 0)) == 0);
  CHECK(classify_humbert(t(0, 1, 0, 0, 0)).to_string() == "split");
  CHECK(classify_humbert(t(1, 1, -1, 0, 0)).to_string() == "real_quadratic(5)");
  CHECK(classify_humbert(t(1, 0, 0, 0, 0)).to_string() == "degenerate");
  CHECK(classify_humbert(t(1, 0, -1, 0, 0)).kind == HumbertClass::Split);
  CHECK(humbert_discriminant(t(1, 0, -1, 0, 0)) == 4);
  CHECK(classify_humbert(t(1, 0, -3, 0, 0)).to_string() == "real_quadratic(3)");
  CHECK(t(-2, 4, 0, 0, 6) == HumbertTuple{1, -2, 0, 0, -3});
  CHECK_THROWS_AS(t(0, 0, 0, 0, 0), InvalidArgument);
  Engine g(5);
  for (int i = 0; i < 200; ++i) {
    long long v[5];
    for (auto& x : v) x = draw(g, -5, 5);
    if (!v[0] && !v[1] && !v[2] && !v[3] && !v[4]) continue;
    long long k = draw(g, 1, 4);
    HumbertTuple raw{v[0], v[1], v[2], v[3], v[4]};
    HumbertTuple neg{-v[0], -v[1], -v[2], -v[3], -v[4]};
    HumbertTuple scaled{k * v[0], k * v[1], k * v[2], k * v[3], k * v[4]};
    CHECK(humbert_discriminant(raw) == humbert_discriminant(neg));
    CHECK(humbert_discriminant(scaled) == k * k * humbert_discriminant(raw));
    CHECK(classify_humbert(scaled).kind == classify_humbert(raw).kind);
  }
}

TEST_CASE("humbert membership") {
  Gaussian i{0, 1}, z{0, 0}, one{1, 0}, two_i{0, 2};
  Tau diag_tau{{{i, z}, {z, two_i}}};
  CHECK(humbert_membership({0, 1, 0, 0, 0}, diag_tau).on_locus);
  CHECK_FALSE(humbert_membership({0, 1, 0, 0, 0}, diag_tau).outside_upper_half);
  Tau same{{{i, i}, {i, two_i}}};
  CHECK(humbert_membership({1, -1, 0, 0, 0}, same).on_locus);
  Tau t12{{{i, one}, {one, two_i}}};
  CHECK_FALSE(humbert_membership({0, 1, 0, 0, 0}, t12).on_locus);
  Tau low{{{one, z}, {z, one}}};
  CHECK(humbert_membership({0, 1, 0, 0, 0}, low).outside_upper_half);
  Tau asym{{{i, one}, {z, i}}};
  CHECK_THROWS_AS(humbert_membership({0, 1, 0, 0, 0}, asym), InvalidArgument);
  // d(t12^2 - t11 t22) + e on tau = i*1: -(i*i) - 1 = 0
  Tau id{{{i, z}, {z, i}}};
  CHECK(humbert_membership({0, 0, 0, 1, -1}, id).on_locus);
}

TEST_CASE("integral orbit enumeration") {
  auto r1 = enumerate_integral_orbits(1);
  CHECK(std::find(r1.integral_classes.begin(), r1.integral_classes.end(), 1) != r1.integral_classes.end());
  auto r2 = enumerate_integral_orbits(2);
  CHECK(std::find(r2.integral_classes.begin(), r2.integral_classes.end(), 4) != r2.integral_classes.end());
  auto r3 = enumerate_integral_orbits(3);
  auto r3b = enumerate_integral_orbits(3, 4);
  CHECK(r3.tuples == r3b.tuples);
  CHECK(r3.integral_classes == r3b.integral_classes);
  CHECK(r3.classes.size() == r3b.classes.size());
  CHECK(r3.tuples > 0);
  CHECK(r3.mu_estimate == static_cast<long long>(r3.integral_classes.size()));
  for (auto& [delta, bk] : r3.classes) {
    bool square = delta > 0 && is_perfect_square(delta);
    CHECK(bk.split == square);
    CHECK(bk.degenerate == (delta <= 0));
    CHECK(bk.residue_ok);
    CHECK(bk.count > 0);
  }
  CHECK_THROWS_AS(enumerate_integral_orbits(0), InvalidArgument);
  // height 1: 3^5 - 1 nonzero tuples, none imprimitive, half after sign normalization
  CHECK(r1.tuples == 121);
}
