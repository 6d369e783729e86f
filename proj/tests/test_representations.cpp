#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "support.hpp"

using namespace orthorank;
using namespace testsupport;

namespace {

bool has_violation(const VerificationReport& report, const std::string& condition, const std::string& u = "",
                   const std::string& v = "") {
  return std::any_of(report.violations.begin(), report.violations.end(), [&](const Violation& x) {
    if (x.condition != condition) return false;
    if (u.empty()) return true;
    return (x.u == u && x.v == v) || (x.u == v && x.v == u);
  });
}

CMatrix unit(int d, int i) { return standard_columns(d, i, 1); }

Graph k2() { return generate(GraphKind::Complete, 2); }

SubspaceRepresentation single(const Graph& g, int d, std::vector<CMatrix> bases, bool faithful) {
  SubspaceRepresentation rep{g, d, static_cast<int>(bases.front().cols()), {}, faithful};
  for (auto& b : bases) rep.subspaces.emplace_back(std::move(b));
  return rep;
}

double projector_distance(const ProjectiveRepresentation& a, const ProjectiveRepresentation& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.projectors.size(); ++i)
    worst = std::max(worst, (a.projectors[i].dense() - b.projectors[i].dense()).norm());
  return worst;
}

// Complement of the path 1-2-3-4 is the path 3-1-4-2.
SubspaceRepresentation p4_complement_osr(int r) {
  const Graph p4 = generate(GraphKind::Path, 4);
  return transport(fixture_p4_osr(r), complement(p4), {"3", "1", "4", "2"});
}

Graph add_clique(const Graph& g, int t) {
  auto edges = g.edges();
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) edges.emplace_back(i, j);
  return {g.labels(), edges};
}

}  // namespace

TEST_CASE("verify_osr") {
  for (int r = 1; r <= 5; ++r) CHECK(verify_osr(fixture_p4_osr(r)).valid);

  const auto same = single(k2(), 2, {unit(2, 0), unit(2, 0)}, false);
  const auto report = verify_osr(same);
  CHECK_FALSE(report.valid);
  REQUIRE(report.violations.size() == 1);
  CHECK(has_violation(report, "edge-orthogonality", "1", "2"));
  CHECK(report.violations[0].residual == doctest::Approx(1.0));

  const auto empty = single(generate(GraphKind::Empty, 3), 1, {unit(1, 0), unit(1, 0), unit(1, 0)}, false);
  CHECK(verify_osr(empty).valid);
}

TEST_CASE("verify_osr reports structural defects") {
  auto rep = fixture_p4_osr(2);
  rep.subspaces[1] = Subspace(standard_columns(4, 0, 1));
  CHECK(has_violation(verify_osr(rep), "dimension"));
  rep = fixture_p4_osr(2);
  rep.subspaces[2] = Subspace(CMatrix(2.0 * standard_columns(4, 0, 2)));
  CHECK(has_violation(verify_osr(rep), "orthonormal-basis"));
  rep = fixture_p4_osr(2);
  rep.subspaces.pop_back();
  CHECK(has_violation(verify_osr(rep), "vertex-count"));
}

TEST_CASE("verify_fosr") {
  for (int r = 1; r <= 5; ++r) {
    const auto rep = fixture_p4_fosr(r);
    CHECK(rep.d == 2 * r + 1);
    CHECK(verify_fosr(rep).valid);
  }
  const auto report = verify_fosr(fixture_p4_osr(2));
  CHECK_FALSE(report.valid);
  CHECK(has_violation(report, "non-edge-orthogonality", "2", "4"));
  CHECK_FALSE(has_violation(report, "non-edge-orthogonality", "1", "4"));

  const auto k2_rep = single(k2(), 2, {unit(2, 0), CMatrix((unit(2, 0) + unit(2, 1)) / std::sqrt(2.0))}, true);
  CHECK(verify_fosr(k2_rep).valid);
  const auto k2_orth = single(k2(), 2, {unit(2, 0), unit(2, 1)}, true);
  CHECK(has_violation(verify_fosr(k2_orth), "edge-non-orthogonality", "1", "2"));
  CHECK(verify(k2_orth).valid == false);
}

TEST_CASE("verify_projective") {
  const auto image = osr_to_projective(fixture_p4_osr(2));
  CHECK(verify_projective(image).valid);

  auto bad_rank = image;
  bad_rank.projectors[0] = BlockDiagonal(CMatrix(projector_from_basis(Subspace(standard_columns(4, 0, 3)))));
  CHECK(has_violation(verify_projective(bad_rank), "rank", "1"));

  CMatrix skew(2, 2);
  skew << 1, 1, 0, 0;
  const ProjectiveRepresentation k1{generate(GraphKind::Complete, 1), 2, 1, {BlockDiagonal(skew)}, false};
  const auto report = verify_projective(k1);
  CHECK(has_violation(report, "hermitian", "1"));
  CHECK_FALSE(has_violation(report, "idempotent"));
}

TEST_CASE("verify_faithful_projective") {
  CHECK(verify_faithful_projective(osr_to_projective(fixture_p4_fosr(2))).valid);

  const Graph p3 = generate(GraphKind::Path, 3);
  const BlockDiagonal p(CMatrix(projector_from_basis(Subspace(unit(2, 0)))));
  const ProjectiveRepresentation equal{p3, 2, 1, {p, p, p}, true};
  const auto report = verify_faithful_projective(equal);
  CHECK(has_violation(report, "non-edge-product-zero", "1", "3"));
  CHECK(report.violations.size() == 1);

  auto extra = osr_to_projective(fixture_p4_fosr(1));
  extra.graph = Graph(extra.graph.labels(), {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"1", "4"}});
  CHECK(has_violation(verify_faithful_projective(extra), "edge-product-nonzero", "1", "4"));
}

TEST_CASE("osr_to_projective") {
  const auto k1 = single(generate(GraphKind::Complete, 1), 3, {unit(3, 0)}, false);
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(0, 0) = 1.0;
  CHECK(osr_to_projective(k1).projectors[0].dense() == expected);

  const auto f = osr_to_projective(fixture_p4_fosr(1));
  CHECK(f.faithful);
  CHECK(f.value() == Rational(3));
  CHECK(verify_faithful_projective(f).valid);

  for (int r = 1; r <= 3; ++r) {
    const auto o = osr_to_projective(fixture_p4_osr(r));
    CHECK(o.d == 2 * r);
    CHECK(o.r == r);
    CHECK(verify_projective(o).valid);
  }
  CHECK_THROWS_AS((void)osr_to_projective(single(k2(), 2, {unit(2, 0), unit(2, 0)}, false)), PreconditionError);
}

TEST_CASE("projective_to_osr") {
  CMatrix d10 = CMatrix::Zero(2, 2);
  d10(0, 0) = 1.0;
  const ProjectiveRepresentation k1{generate(GraphKind::Complete, 1), 2, 1, {BlockDiagonal(d10)}, false};
  const auto s = projective_to_osr(k1);
  CHECK(std::abs(s.subspaces[0].basis()(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(s.subspaces[0].basis()(1, 0)) < 1e-15);

  const auto image = osr_to_projective(fixture_p4_fosr(2));
  const auto back = osr_to_projective(projective_to_osr(image));
  CHECK(projector_distance(image, back) < 1e-8);
  CHECK(verify(back).valid);

  ProjectiveRepresentation not_idem = k1;
  not_idem.projectors[0] = BlockDiagonal(CMatrix(2.0 * d10));
  CHECK_THROWS_AS((void)projective_to_osr(not_idem), PreconditionError);
}

TEST_CASE("projective_to_osr keeps block structure") {
  const auto pair = faithful_from_pair(osr_to_projective(p4_complement_osr(2)),
                                       osr_to_projective(canonical_faithful_rep(generate(GraphKind::Path, 4))), 0.5);
  const auto s = projective_to_osr(pair.rep);
  CHECK(s.faithful);
  CHECK(verify_fosr(s).valid);
  CHECK(projector_distance(osr_to_projective(s), pair.rep) < 1e-8);
}

TEST_CASE("combine_fold") {
  const auto twice = combine_fold(fixture_p4_fosr(1), fixture_p4_fosr(1));
  CHECK(twice.d == 6);
  CHECK(twice.r == 2);
  CHECK(twice.faithful);
  CHECK(verify_fosr(twice).valid);

  const auto mixed = combine_fold(fixture_p4_fosr(2), fixture_p4_fosr(3));
  CHECK(mixed.d == 12);
  CHECK(mixed.r == 5);
  CHECK(verify_fosr(mixed).valid);

  const auto empty = single(generate(GraphKind::Empty, 2), 1, {unit(1, 0), unit(1, 0)}, false);
  const auto doubled = combine_fold(empty, empty);
  CHECK(doubled.d == 2);
  CHECK(doubled.r == 2);

  CHECK_THROWS_AS((void)combine_fold(fixture_p4_osr(1), coloring_to_osr(k2(), optimal_coloring(k2()), 1)),
                  PreconditionError);
  CHECK_THROWS_AS((void)combine_fold(fixture_p4_osr(1), fixture_p4_fosr(1)), PreconditionError);
}

TEST_CASE("pad_disjoint_union") {
  const Graph a(std::vector<std::string>{"a", "b"}, std::vector<VertexPair>{{"a", "b"}});
  const Graph b(std::vector<std::string>{"c", "d"}, std::vector<VertexPair>{{"c", "d"}});
  const auto ra = coloring_to_osr(a, optimal_coloring(a), 1);
  const auto rb = coloring_to_osr(b, optimal_coloring(b), 1);
  const auto u = pad_disjoint_union({ra, rb});
  CHECK(u.d == 2);
  CHECK(u.graph.order() == 4);
  CHECK(u.graph.size() == 2);
  CHECK(verify_osr(u).valid);

  const Graph k3 = relabel(generate(GraphKind::Complete, 3), {"x", "y", "z"});
  const auto mixed = pad_disjoint_union({coloring_to_osr(k3, optimal_coloring(k3), 1), ra});
  CHECK(mixed.d == 3);
  CHECK(verify_osr(mixed).valid);

  CHECK_THROWS_AS((void)pad_disjoint_union({fixture_p4_fosr(1)}), PreconditionError);
}

TEST_CASE("stack_union") {
  const Graph c5 = generate(GraphKind::Cycle, 5);
  const Graph p4 = induced_subgraph(c5, {"1", "2", "3", "4"});
  const Graph p3 = induced_subgraph(c5, {"4", "5", "1"});
  const auto r1 = coloring_to_osr(p4, optimal_coloring(p4), 1);
  const auto r2 = coloring_to_osr(p3, optimal_coloring(p3), 1);
  CHECK(r1.d == 2);
  CHECK(r2.d == 2);
  const auto u = stack_union(r1, r2, c5);
  CHECK(u.d == 4);
  CHECK(verify_osr(u).valid);

  const Graph disjoint = disjoint_union({p3, relabel(k2(), {"a", "b"})});
  const auto rk = coloring_to_osr(relabel(k2(), {"a", "b"}), optimal_coloring(k2()), 1);
  const auto v = stack_union(r2, rk, disjoint);
  CHECK(v.d == 4);
  CHECK(verify_osr(v).valid);
  CHECK(v.at("a").basis().topRows(2).norm() == 0.0);

  const Graph p4_path(p4.labels(), {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"1", "4"}});
  const auto bad = coloring_to_osr(p4_path, optimal_coloring(p4_path), 1);
  CHECK_THROWS_AS((void)stack_union(bad, r2, c5), PreconditionError);
}

TEST_CASE("standardize_clique") {
  const Graph k1 = generate(GraphKind::Complete, 1);
  const auto diag = single(k1, 2, {CMatrix((unit(2, 0) + unit(2, 1)) / std::sqrt(2.0))}, false);
  const auto s = standardize_clique(diag, {"1"});
  CHECK((projector_from_basis(s.subspaces[0]) - projector_from_basis(Subspace(unit(2, 0)))).norm() < 1e-12);

  const Graph k3 = generate(GraphKind::Complete, 3);
  const auto standard = coloring_to_osr(k3, optimal_coloring(k3), 1);
  const auto same = standardize_clique(standard, {"1", "2", "3"});
  for (int i = 0; i < 3; ++i) CHECK((same.subspaces[i].basis() - standard.subspaces[i].basis()).norm() < 1e-12);

  std::mt19937_64 rng(17);
  const CMatrix u = random_unitary(3, rng);
  auto rotated = standard;
  for (auto& sub : rotated.subspaces) sub = Subspace(CMatrix(u * sub.basis()));
  REQUIRE(verify_osr(rotated).valid);
  const auto restored = standardize_clique(rotated, {"1", "2", "3"});
  for (int i = 0; i < 3; ++i) {
    CHECK((projector_from_basis(restored.subspaces[i]) - projector_from_basis(Subspace(unit(3, i)))).norm() <
          10 * Tolerances{}.orth_tol);
  }

  CHECK_THROWS_AS((void)standardize_clique(fixture_p4_osr(1), {"1", "3"}), PreconditionError);
  CHECK_THROWS_AS((void)standardize_clique(fixture_p4_osr(1), {"1", "2", "1"}), PreconditionError);
  CHECK_THROWS_AS((void)standardize_clique(fixture_p4_osr(1), {"1", "9"}), PreconditionError);
}

TEST_CASE("standardize_clique on a faithful certificate uses an independent set") {
  const auto rep = fixture_p4_fosr(2);
  const auto s = standardize_clique(rep, {"1", "3"});
  CHECK(s.faithful);
  CHECK(verify_fosr(s).valid);
  CHECK((projector_from_basis(s.at("3")) - projector_from_basis(Subspace(standard_columns(5, 2, 2)))).norm() < 1e-9);
  CHECK_THROWS_AS((void)standardize_clique(rep, {"1", "2"}), PreconditionError);
}

TEST_CASE("glue_clique_sum") {
  const Graph t1(std::vector<std::string>{"a", "b", "c"}, std::vector<VertexPair>{{"a", "b"}, {"b", "c"}, {"a", "c"}});
  const Graph t2(std::vector<std::string>{"b", "c", "d"}, std::vector<VertexPair>{{"b", "c"}, {"c", "d"}, {"b", "d"}});
  std::mt19937_64 rng(23);
  auto r1 = coloring_to_osr(t1, optimal_coloring(t1), 1);
  const auto r2 = coloring_to_osr(t2, optimal_coloring(t2), 1);
  const CMatrix u = random_unitary(3, rng);
  for (auto& sub : r1.subspaces) sub = Subspace(CMatrix(u * sub.basis()));
  const auto glued = glue_clique_sum(r1, r2, {"b", "c"});
  CHECK(glued.d == 3);
  CHECK(glued.graph.order() == 4);
  CHECK(glued.graph.size() == 5);
  CHECK_FALSE(glued.graph.adjacent("a", "d"));
  CHECK(verify_osr(glued).valid);

  const Graph e1(std::vector<std::string>{"x", "v"}, std::vector<VertexPair>{{"x", "v"}});
  const Graph e2(std::vector<std::string>{"v", "y"}, std::vector<VertexPair>{{"v", "y"}});
  const auto path = glue_clique_sum(coloring_to_osr(e1, optimal_coloring(e1), 1),
                                    coloring_to_osr(e2, optimal_coloring(e2), 1), {"v"});
  CHECK(path.d == 2);
  CHECK(verify_osr(path).valid);
  CHECK(path.graph.same_structure(generate(GraphKind::Path, 3)));

  CHECK_THROWS_AS((void)glue_clique_sum(r1, r2, {"b"}), PreconditionError);
  CHECK_THROWS_AS((void)glue_clique_sum(r1, r2, {"b", "c", "d"}), PreconditionError);
  const Graph apart(std::vector<std::string>{"b", "c", "d"}, std::vector<VertexPair>{{"c", "d"}, {"b", "d"}});
  CHECK_THROWS_AS((void)glue_clique_sum(r1, coloring_to_osr(apart, optimal_coloring(apart), 1), {"b", "c"}),
                  PreconditionError);
}

TEST_CASE("coloring_to_osr") {
  const Graph p4 = generate(GraphKind::Path, 4);
  const auto rep = coloring_to_osr(p4, optimal_coloring(p4), 1);
  CHECK(rep.d == 2);
  CHECK(rep.subspaces[0].basis() == rep.subspaces[2].basis());
  CHECK(rep.subspaces[1].basis() == rep.subspaces[3].basis());
  CHECK(overlap_norm(rep.subspaces[0], rep.subspaces[1]) == 0.0);

  for (int n = 1; n <= 6; ++n) {
    const Graph kn = generate(GraphKind::Complete, n);
    const auto k = coloring_to_osr(kn, optimal_coloring(kn), 2);
    CHECK(k.d == 2 * n);
    CHECK(k.d == 2 * omega(kn));
    CHECK(verify_osr(k).valid);
  }

  Coloring improper{1, 1, {{1}, {1}}};
  CHECK_THROWS_AS((void)coloring_to_osr(k2(), improper, 1), PreconditionError);
}

TEST_CASE("canonical_faithful_rep") {
  const auto empty = canonical_faithful_rep(generate(GraphKind::Empty, 3));
  CHECK(empty.d == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(overlap_norm(empty.subspaces[i], empty.subspaces[j]) < 1e-15);

  // Adj(K2) has largest eigenvalue 1, so t = 1/2.
  const auto k = canonical_faithful_rep(k2());
  const Complex ip = (k.subspaces[0].basis().adjoint() * k.subspaces[1].basis())(0, 0);
  CHECK(std::abs(ip) == doctest::Approx(0.5));

  const auto p4 = canonical_faithful_rep(generate(GraphKind::Path, 4));
  CHECK(p4.d == 4);
  CHECK(p4.faithful);
  CHECK(verify_fosr(p4).valid);
}

TEST_CASE("choose_k") {
  CHECK(choose_k(4, 2, 2, 0.05) == 1);
  CHECK(choose_k(4, 2, 2, 1e-9) == 1);
  CHECK(choose_k(5, 2, 4, 0.01) == 75);
  CHECK(std::abs(5.0 / 2 - 379.0 / 151) < 0.01);
  CHECK(std::abs(5.0 / 2 - 374.0 / 149) >= 0.01);
  CHECK(choose_k(5, 2, 4, 10.0) == 1);
  CHECK(choose_k(4, 2, 4, 0.05) == 20);
  // Integral bound: 3 / (1 * 0.1) - 1 = 29, so k = 30 makes the gap exactly 3/31 < 0.1.
  CHECK(choose_k(5, 1, 2, 0.1) == 30);
  CHECK(choose_k(4, 1, 1, 0.5) == 6);
  CHECK_THROWS_AS((void)choose_k(4, 2, 4, 0.0), PreconditionError);
  CHECK_THROWS_AS((void)choose_k(1, 2, 4, 0.1), PreconditionError);
}

TEST_CASE("property: choose_k is minimal and sufficient") {
  using boost::multiprecision::cpp_rational;
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    const long long r = 1 + static_cast<long long>(rng() % 6);
    const long long d = r + static_cast<long long>(rng() % 20);
    const long long b = 1 + static_cast<long long>(rng() % 12);
    const long long m = 1 + static_cast<long long>(rng() % 10000);
    const cpp_rational eps(m, 10000);
    // Exact gap |d/r - (kd+b)/(kr+1)| against eps = m / 10^4.
    const auto gap = [&](long long k) -> cpp_rational {
      const cpp_rational diff = cpp_rational(d, r) - cpp_rational(k * d + b, k * r + 1);
      return diff < 0 ? cpp_rational(-diff) : diff;
    };
    const int k = choose_k(static_cast<int>(d), static_cast<int>(r), static_cast<int>(b), static_cast<double>(m) / 10000.0);
    CHECK(k >= 1);
    CHECK(gap(k) < eps);
    if (k > 1) CHECK_FALSE(gap(k - 1) < eps);
  }
}

TEST_CASE("faithful_from_pair") {
  const Graph p4 = generate(GraphKind::Path, 4);
  const auto p = osr_to_projective(p4_complement_osr(2));
  const auto rf = osr_to_projective(canonical_faithful_rep(p4));
  const auto result = faithful_from_pair(p, rf, 0.05);
  CHECK(result.k == 20);
  CHECK(result.rep.d == 84);
  CHECK(result.rep.r == 41);
  CHECK(result.value == Rational(84, 41));
  CHECK(result.source_value == Rational(2));
  CHECK(result.gap < 0.05);
  CHECK(verify_faithful_projective(result.rep).valid);

  const Graph empty2 = generate(GraphKind::Empty, 2);
  const auto pk2 = osr_to_projective(coloring_to_osr(k2(), optimal_coloring(k2()), 1));
  const auto standard = osr_to_projective(single(empty2, 2, {unit(2, 0), unit(2, 1)}, true));
  const auto e = faithful_from_pair(pk2, standard, 0.1);
  CHECK(e.k == 1);
  CHECK(e.rep.value() == Rational(2));
  CHECK(product_norm(e.rep.projectors[0], e.rep.projectors[1]) == 0.0);

  CHECK_THROWS_AS((void)faithful_from_pair(osr_to_projective(fixture_p4_osr(2)), rf, 0.05), PreconditionError);
  CHECK_THROWS_AS((void)faithful_from_pair(p, p, 0.05), PreconditionError);
}

TEST_CASE("fixtures") {
  for (int r = 1; r <= 5; ++r) {
    const auto f = fixture_p4_fosr(r);
    CHECK(f.d == 2 * r + 1);
    CHECK(f.r == r);
    CHECK(verify_fosr(f).valid);
    const auto o = fixture_p4_osr(r);
    CHECK(o.d == 2 * r);
    CHECK(o.d == r * omega(o.graph));
    CHECK(verify_osr(o).valid);
    CHECK(o.subspaces[0].basis() == o.subspaces[2].basis());
  }
  const auto f2 = fixture_p4_fosr(2);
  CHECK(f2.subspaces[0].basis() == standard_columns(5, 0, 2));
  CHECK(f2.subspaces[1].basis() == standard_columns(5, 1, 2));
  CHECK(f2.subspaces[2].basis() == standard_columns(5, 2, 2));
  CHECK(f2.subspaces[3].basis() == standard_columns(5, 3, 2));
  CHECK_THROWS_AS((void)fixture_p4_fosr(0), PreconditionError);
}

TEST_CASE("restrict_representation and transport") {
  const auto f = fixture_p4_fosr(2);
  const Graph p4 = f.graph;
  const auto sub = restrict_representation(f, induced_subgraph(p4, {"2", "3", "4"}));
  CHECK(sub.graph.order() == 3);
  CHECK(verify_fosr(sub).valid);
  const Graph spanning(p4.labels(), {{"1", "2"}, {"3", "4"}});
  CHECK_THROWS_AS((void)restrict_representation(f, spanning), PreconditionError);
  CHECK(verify_osr(restrict_representation(fixture_p4_osr(2), spanning)).valid);

  const auto moved = p4_complement_osr(2);
  CHECK(moved.graph.same_labelled_graph(complement(p4)));
  CHECK(verify_osr(moved).valid);
  CHECK_THROWS_AS((void)transport(fixture_p4_osr(2), complement(p4), {"1", "2", "3", "4"}), PreconditionError);
  CHECK_THROWS_AS((void)transport(fixture_p4_osr(2), complement(p4), {"3", "3", "4", "2"}), PreconditionError);
}

TEST_CASE("property: random certificates verify and survive projective round trips") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int r = 1 + static_cast<int>(rng() % 2);
    const Graph g = random_graph(n, 0.5, rng);
    for (const bool faithful : {false, true}) {
      const auto rep = faithful ? random_fosr(g, r, rng) : random_osr(g, r, rng);
      REQUIRE(verify(rep).valid);
      const auto proj = osr_to_projective(rep);
      const auto back = projective_to_osr(proj);
      CHECK(verify(back).valid);
      const auto again = osr_to_projective(back);
      for (std::size_t i = 0; i < proj.projectors.size(); ++i) {
        CHECK(relative_difference(again.projectors[i].dense(), proj.projectors[i].dense()) < 1e-8);
      }
    }
  }
}

TEST_CASE("property: combine_fold is closed on verified certificates") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Graph g = random_graph(n, 0.5, rng);
    const int r = 1 + static_cast<int>(rng() % 2);
    const int s = 1 + static_cast<int>(rng() % 2);
    const bool faithful = trial % 2 == 1;
    const auto a = faithful ? random_fosr(g, r, rng) : random_osr(g, r, rng);
    const auto b = faithful ? random_fosr(g, s, rng) : random_osr(g, s, rng);
    const auto c = combine_fold(a, b);
    CHECK(c.d == a.d + b.d);
    CHECK(c.r == r + s);
    CHECK(c.faithful == faithful);
    CHECK(verify(c).valid);
  }
}

TEST_CASE("property: standardize_clique preserves overlaps") {
  std::mt19937_64 rng(107);
  const double bound = 10 * Tolerances{}.orth_tol;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int r = 1 + static_cast<int>(rng() % 2);
    const Graph g = random_graph(n, 0.6, rng);
    const auto rep = random_osr(g, r, rng);
    std::vector<std::string> clique;
    for (int v : maximum_clique(g)) clique.push_back(g.label(v));
    std::shuffle(clique.begin(), clique.end(), rng);
    const auto s = standardize_clique(rep, clique);
    CHECK(verify_osr(s).valid);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        CHECK(std::abs(overlap_norm(s.subspaces[i], s.subspaces[j]) - overlap_norm(rep.subspaces[i], rep.subspaces[j])) <
              bound);
    for (std::size_t i = 0; i < clique.size(); ++i) {
      const CMatrix target = projector_from_basis(Subspace(standard_columns(rep.d, static_cast<int>(i) * r, r)));
      CHECK((projector_from_basis(s.at(clique[i])) - target).norm() < bound);
    }
  }
}

TEST_CASE("property: glue_clique_sum has dimension max(d1, d2)") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 30; ++trial) {
    const int t = 1 + static_cast<int>(rng() % 3);
    const int n1 = t + static_cast<int>(rng() % 3);
    const int n2 = t + 1 + static_cast<int>(rng() % 3);
    const Graph g1 = add_clique(random_graph(n1, 0.5, rng), t);
    std::vector<std::string> labels2 = numbered(t);
    for (int i = t; i < n2; ++i) labels2.push_back("b" + std::to_string(i));
    const Graph g2 = relabel(add_clique(random_graph(n2, 0.5, rng), t), labels2);
    const int r = 1 + static_cast<int>(rng() % 2);
    const auto rep1 = random_osr(g1, r, rng);
    const auto rep2 = random_osr(g2, r, rng);
    const auto clique = numbered(t);
    const auto glued = glue_clique_sum(rep1, rep2, clique);
    CHECK(glued.d == std::max(rep1.d, rep2.d));
    CHECK(glued.graph.same_labelled_graph(clique_sum(g1, g2, t).graph));
    CHECK(verify_osr(glued).valid);
  }
}

TEST_CASE("property: faithful_from_pair verifies within eps") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Graph g = random_graph(n, 0.5, rng);
    const Graph gc = complement(g);
    const int r = 1 + static_cast<int>(rng() % 3);
    const auto p = osr_to_projective(trial % 2 ? coloring_to_osr(gc, optimal_coloring(gc), r) : random_osr(gc, r, rng));
    const auto rf = osr_to_projective(canonical_faithful_rep(g));
    const double eps = trial % 3 == 0 ? 0.01 : 0.1;
    const auto result = faithful_from_pair(p, rf, eps);
    CHECK(result.k == choose_k(p.d, p.r, rf.d, eps));
    CHECK(verify_faithful_projective(result.rep).valid);
    CHECK(result.gap < eps);
    CHECK(result.value == Rational(static_cast<std::int64_t>(result.k) * p.d + rf.d,
                                   static_cast<std::int64_t>(result.k) * p.r + 1));
  }
}
