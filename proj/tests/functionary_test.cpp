#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <amplikit/functionary.hpp>
#include <amplikit/grassmann.hpp>
#include <amplikit/panel.hpp>
#include <amplikit/poly.hpp>
#include <amplikit/rng.hpp>

using namespace amplikit;

namespace {

// Reverses the clause order and each clause; a chain names the same rational
// function read from either end (4-index brackets absorb the re-sorting).
std::vector<std::vector<int>> reversed_chain(
    std::vector<std::vector<int>> clauses) {
  std::reverse(clauses.begin(), clauses.end());
  for (auto& clause : clauses) std::reverse(clause.begin(), clause.end());
  return clauses;
}

Mat random_matrix(std::size_t rows, std::size_t cols, RngStream& rng) {
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.at(r, c) = rng.next_signed_rational();
    }
  }
  return m;
}

}  // namespace

TEST_CASE("constructors normalize sums, products, and scalar quotients") {
  auto b = ex_bracket({1, 2, 3, 4});
  auto s = ex_sum({b, ex_scalar(0), ex_sum({b, b})});
  CHECK(s->kind == ExprKind::sum);
  CHECK(s->children.size() == 3);
  auto p = ex_product({ex_scalar(2), b, ex_product({ex_scalar(3), b})});
  CHECK(p->kind == ExprKind::product);
  REQUIRE(p->children.size() == 3);
  CHECK(p->children[0]->scalar_value == 6);
  auto q = ex_quotient(b, ex_scalar(Rat("2")));
  CHECK(q->kind == ExprKind::product);
  CHECK(eval_expr(q, [](const std::vector<int>&) { return Rat(10); }) == 5);
  CHECK(eval_expr(ex_neg(b), [](const std::vector<int>&) { return Rat(7); }) ==
        -7);
  CHECK(ex_product({ex_scalar(0), b})->kind == ExprKind::scalar);
}

TEST_CASE("single-pair chain expands to the signed two-term quadratic") {
  // <123|45|678> = <1234><5678> - <1235><4678>
  auto chain = ex_chain({{1, 2, 3}, {4, 5}, {6, 7, 8}});
  auto expected =
      ex_sum({ex_product({ex_bracket({1, 2, 3, 4}), ex_bracket({5, 6, 7, 8})}),
              ex_neg(ex_product(
                  {ex_bracket({1, 2, 3, 5}), ex_bracket({4, 6, 7, 8})}))});
  CHECK(equal_in_free_ring(chain, expected));
}

TEST_CASE("two-pair chain expands to four signed terms") {
  // The running-example chain <F89|21|34|56|89F> on 15 markers.
  std::vector<std::vector<int>> clauses = {
      {15, 8, 9}, {2, 1}, {3, 4}, {5, 6}, {8, 9, 15}};
  auto chain = ex_chain(clauses);
  auto term = [](int sign, std::vector<int> b1, std::vector<int> b2,
                 std::vector<int> b3) {
    ExprPtr p = ex_product({ex_bracket(std::move(b1)), ex_bracket(std::move(b2)),
                            ex_bracket(std::move(b3))});
    return sign < 0 ? ex_neg(p) : p;
  };
  auto expected = ex_sum({
      term(+1, {15, 8, 9, 2}, {1, 3, 4, 5}, {6, 8, 9, 15}),
      term(-1, {15, 8, 9, 1}, {2, 3, 4, 5}, {6, 8, 9, 15}),
      term(-1, {15, 8, 9, 2}, {1, 3, 4, 6}, {5, 8, 9, 15}),
      term(+1, {15, 8, 9, 1}, {2, 3, 4, 6}, {5, 8, 9, 15}),
  });
  CHECK(equal_in_free_ring(chain, expected));
  CHECK(to_bracket_string(chain) == "<F89|21|34|56|89F>");
}

TEST_CASE("degenerate chains factor") {
  // Repeated index kills one term outright (free-ring identity).
  auto lhs = ex_chain({{1, 2, 4}, {4, 5}, {6, 7, 8}});
  auto rhs =
      ex_neg(ex_product({ex_bracket({1, 2, 4, 5}), ex_bracket({4, 6, 7, 8})}));
  CHECK(equal_in_free_ring(lhs, rhs));

  // Two shared indices factor only modulo the Plücker relations: the
  // free ring distinguishes the two sides, panels identify them.
  // <123|45|128> = <1234><5128> - <1235><4128> = -<1238><1245>.
  auto lhs2 = ex_chain({{1, 2, 3}, {4, 5}, {1, 2, 8}});
  auto mid2 =
      ex_sum({ex_product({ex_bracket({1, 2, 3, 4}), ex_bracket({5, 1, 2, 8})}),
              ex_neg(ex_product(
                  {ex_bracket({1, 2, 3, 5}), ex_bracket({4, 1, 2, 8})}))});
  auto rhs2 = ex_neg(
      ex_product({ex_bracket({1, 2, 3, 8}), ex_bracket({1, 2, 4, 5})}));
  CHECK(equal_in_free_ring(lhs2, mid2));
  CHECK_FALSE(equal_in_free_ring(lhs2, rhs2));
  CHECK(verify_on_panels(lhs2, rhs2, 4, 8, 20260815));

  // Swapping the outer blocks (keeping their innards) flips the sign.
  auto fwd = ex_chain({{1, 2, 3}, {4, 5}, {6, 7, 8}});
  auto swapped = ex_chain({{6, 7, 8}, {4, 5}, {1, 2, 3}});
  CHECK(equal_in_free_ring(ex_neg(fwd), swapped));
}

TEST_CASE("chain reads the same from both ends") {
  std::vector<std::vector<std::vector<int>>> chains = {
      {{1, 2, 3}, {4, 5}, {6, 7, 8}},
      {{15, 8, 9}, {2, 1}, {3, 4}, {5, 6}, {8, 9, 15}},
      {{10, 12, 13}, {9, 8}, {13, 14, 15}},
      {{5, 6, 8}, {2, 1}, {8, 9, 15}},
  };
  for (const auto& clauses : chains) {
    CAPTURE(to_bracket_string(ex_chain(clauses)));
    auto fwd = ex_chain(clauses);
    auto bwd = ex_chain(reversed_chain(clauses));
    CHECK(equal_in_free_ring(fwd, bwd));
    CHECK(verify_on_panels(fwd, bwd, 4, 15, 20260815));
  }
}

TEST_CASE("stacked determinant agrees with the cell-matrix row expansion") {
  RngStream rng(20260815, 7);
  int checked = 0;
  while (checked < 100) {
    int k = static_cast<int>(rng.next_below(4));  // 0..3
    int n = k + 4 + static_cast<int>(rng.next_below(4));
    Mat c = random_matrix(static_cast<std::size_t>(k),
                          static_cast<std::size_t>(n), rng);
    Mat z = random_matrix(static_cast<std::size_t>(n),
                          static_cast<std::size_t>(k + 4), rng);
    Mat y = c * z;
    // Random 4 distinct markers, in random order.
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (std::size_t i = 0; i < 4; ++i) {
      std::swap(pool[i], pool[i + rng.next_below(pool.size() - i)]);
    }
    std::vector<int> rows(pool.begin(), pool.begin() + 4);
    CHECK(eval_twistor(y, z, rows) == eval_twistor_cauchy_binet(c, z, rows));
    ++checked;
  }
}

TEST_CASE("twistor bracket function matches the stacked determinant") {
  RngStream rng(20260815, 8);
  Mat c = random_matrix(2, 7, rng);
  Mat z = random_matrix(7, 6, rng);
  Mat y = c * z;
  auto tw = twistor_bracket_fn(y, z);
  CHECK(tw({1, 2, 3, 4}) == eval_twistor(y, z, {1, 2, 3, 4}));
  CHECK(tw({2, 1, 3, 4}) == -tw({1, 2, 3, 4}));
  CHECK(tw({2, 2, 3, 4}) == 0);
  // k = 0: the bracket is the plain Plücker coordinate of Z.
  Mat z0 = random_matrix(6, 4, rng);
  Mat y0(0, 4);
  auto tw0 = twistor_bracket_fn(y0, z0);
  auto pl = plucker_bracket_fn(z0.transpose());
  CHECK(tw0({1, 3, 4, 6}) == pl({1, 3, 4, 6}));
}

TEST_CASE("multidegree tracks markers and rejects impure sums") {
  auto chain = ex_chain({{15, 8, 9}, {2, 1}, {3, 4}, {5, 6}, {8, 9, 15}});
  auto deg = multidegree(chain);
  CHECK(deg.at(8) == 2);
  CHECK(deg.at(9) == 2);
  CHECK(deg.at(15) == 2);
  CHECK(deg.at(1) == 1);
  CHECK(degree_in(chain, 7) == 0);
  CHECK(degree_in(ex_quotient(ex_product({chain, chain}), chain), 15) == 2);
  auto impure = ex_sum({ex_bracket({1, 2, 3, 4}), ex_bracket({1, 2, 3, 5})});
  CHECK_THROWS_AS(multidegree(impure), ImpureExpression);
}

TEST_CASE("index relabelings match the matrix-level moves") {
  RngStream rng(20260815, 9);
  const int n = 9;
  Mat m = random_matrix(4, n, rng);
  auto e = ex_sum({ex_chain({{1, 2, 3}, {4, 5}, {7, 8, 9}}),
                   ex_product({ex_bracket({1, 4, 5, 8}),
                               ex_bracket({2, 3, 7, 9})})});

  // Column rotation: evaluating on the rotated matrix equals evaluating the
  // index-lowered expression on the original, up to (-1)^{deg_1}: marker 1
  // turns into n and crosses the other three bracket slots when sorting.
  Mat rotated = cyclic_shift(m);
  CHECK(degree_in(e, 1) == 1);
  CHECK(eval_expr(e, plucker_bracket_fn(rotated)) ==
        -eval_expr(cyc_star(e, n), plucker_bracket_fn(m)));
  auto no_one = ex_bracket({3, 5, 6, 8});
  CHECK(eval_expr(no_one, plucker_bracket_fn(rotated)) ==
        eval_expr(cyc_star(no_one, n), plucker_bracket_fn(m)));
  // Round trip.
  CHECK(equal_in_free_ring(cyc_star_inv(cyc_star(e, n), n), e));

  // Reflection: per bracket, a global (-1)^{binom(4,2)} = +1 on 4 rows.
  Mat reflected = reflect(m);
  CHECK(eval_expr(e, plucker_bracket_fn(reflected)) ==
        eval_expr(refl_star(e, n), plucker_bracket_fn(m)));
  CHECK(pullback_expr(e, "refl_star", n) != nullptr);
  CHECK_THROWS(pullback_expr(e, "bogus", n));
}

TEST_CASE("s-expressions round trip and the printer is stable") {
  auto e = ex_quotient(
      ex_sum({ex_chain({{1, 2, 3}, {4, 5}, {6, 7, 8}}),
              ex_neg(ex_product(
                  {ex_scalar(Rat("3/2")), ex_bracket({1, 2, 3, 4})}))}),
      ex_bracket({5, 6, 7, 8}));
  std::string text = to_sexpr(e);
  auto parsed = parse_sexpr(text);
  CHECK(equal_in_free_ring(parsed, e));
  CHECK(to_sexpr(parsed) == text);
  CHECK(parse_sexpr("(sub (tw 1 2 3 4) (tw 1 2 3 5))") != nullptr);
  CHECK_THROWS(parse_sexpr("(tw 1 2 3 4"));
  CHECK_THROWS(parse_sexpr("(frob 1)"));
  CHECK_THROWS(parse_sexpr("(tw 1 2 3 4) junk"));

  CHECK(to_bracket_string(ex_bracket({9, 13, 14, 15})) == "<9DEF>");
  CHECK(to_bracket_string(ex_neg(ex_bracket({1, 2, 3, 4}))) == "-<1234>");
  CHECK(to_bracket_string(ex_sum(
            {ex_bracket({1, 2, 3, 4}), ex_neg(ex_bracket({1, 2, 3, 5}))})) ==
        "<1234> - <1235>");
}

TEST_CASE("free-ring polynomials: arithmetic and exact division") {
  BracketTable table;
  auto x = ex_bracket({1, 2, 3, 4});
  auto y = ex_bracket({1, 2, 3, 5});
  Poly px = expr_to_poly(x, table);
  Poly py = expr_to_poly(y, table);
  // Antisymmetry at interning.
  CHECK(expr_to_poly(ex_bracket({2, 1, 3, 4}), table) == -px);
  CHECK(expr_to_poly(ex_bracket({1, 1, 3, 4}), table).is_zero());

  Poly prod = (px + py) * (px - py);
  auto q = prod.divided_exactly_by(px + py);
  REQUIRE(q.has_value());
  CHECK(*q == px - py);
  CHECK_FALSE((px * px + py).divided_exactly_by(px + py).has_value());

  // Laurent handling through quotient nodes with monomial denominators.
  auto laurent = ex_quotient(ex_product({x, x, y}), ex_product({y, y}));
  Poly pl = expr_to_poly(laurent, table);
  CHECK(pl.is_monomial());
  auto back = poly_to_expr(pl, table);
  CHECK(equal_in_free_ring(
      ex_product({back, ex_product({y, y})}), ex_product({x, x, y})));
  CHECK(pl.min_exponent(expr_to_poly(y, table).terms().begin()
                            ->first.begin()
                            ->first)
            .value() == -1);

  // Non-monomial denominators that do divide are simplified; others throw.
  auto ok = ex_quotient(ex_product({ex_sum({x, y}), x}), ex_sum({x, y}));
  BracketTable t2;
  CHECK(expr_to_poly(ok, t2) == expr_to_poly(x, t2));
  auto bad = ex_quotient(x, ex_sum({x, y}));
  BracketTable t3;
  CHECK_THROWS_AS(expr_to_poly(bad, t3), NonMonomialDenominator);
}

TEST_CASE("panels distinguish unequal functionaries") {
  auto a = ex_bracket({1, 2, 3, 4});
  auto b = ex_bracket({1, 2, 3, 5});
  CHECK_FALSE(verify_on_panels(a, b, 4, 6, 20260815));
  CHECK(verify_on_panels(a, a, 4, 6, 20260815));
  // The three-term quadratic Plücker relation holds on panels only.
  auto lhs = ex_product({ex_bracket({1, 2, 3, 4}), ex_bracket({1, 2, 5, 6})});
  auto rhs =
      ex_sum({ex_product({ex_bracket({1, 2, 3, 5}), ex_bracket({1, 2, 4, 6})}),
              ex_neg(ex_product(
                  {ex_bracket({1, 2, 3, 6}), ex_bracket({1, 2, 4, 5})}))});
  CHECK_FALSE(equal_in_free_ring(lhs, rhs));
  CHECK(verify_on_panels(lhs, rhs, 4, 6, 20260815));
}
