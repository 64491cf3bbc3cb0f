#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "alphaform/alpha.hpp"
#include "alphaform/families.hpp"

using namespace af;

namespace {

// alpha transported along an edge relabeling: word entries mapped and
// re-sorted with sign, coefficients renamed.
DiffForm transport_body(const DiffForm& body, const std::vector<int>& perm,
                        const RegistryPtr& target) {
  std::vector<int> vmap(perm.size());
  for (size_t e = 0; e < perm.size(); ++e) vmap[e] = perm[e] - 1;
  DiffForm out(target, body.da_limit());
  for (const auto& [w, c] : body.terms()) {
    Word nw;
    for (int e : w) nw.push_back(perm[e - 1]);
    out.add_term(nw, embed_vars(c, vmap, target));
  }
  return out;
}

bool equal_up_to_sign(const DiffForm& a, const DiffForm& b) {
  return a == b || a == -b;
}

}  // namespace

TEST_CASE("rho forms of the dunce's cap") {
  Graph g = families::dunce();
  RegistryPtr mixed = mixed_registry(g);
  auto a = [&](int i) { return MPoly::var(mixed, i - 1); };
  auto x = [&](int i) { return MPoly::var(mixed, 4 + i - 1); };
  int m = 4;

  DiffForm r1 = rho_edge(g, 1, mixed);  // (x1 - x2) da1 - 2 a1 (dx1 - dx2)
  DiffForm e1(mixed, m);
  e1.add_canonical({1}, x(1) - x(2));
  e1.add_canonical({m + 1}, a(1) * Rational(-2));
  e1.add_canonical({m + 2}, a(1) * Rational(2));
  REQUIRE(r1 == e1);

  DiffForm r2 = rho_edge(g, 2, mixed);  // x1 da2 - 2 a2 dx1
  DiffForm e2(mixed, m);
  e2.add_canonical({2}, x(1));
  e2.add_canonical({m + 1}, a(2) * Rational(-2));
  REQUIRE(r2 == e2);

  DiffForm r3 = rho_edge(g, 3, mixed);  // x2 da3 - 2 a3 dx2
  DiffForm e3(mixed, m);
  e3.add_canonical({3}, x(2));
  e3.add_canonical({m + 2}, a(3) * Rational(-2));
  REQUIRE(r3 == e3);

  DiffForm r4 = rho_edge(g, 4, mixed);
  DiffForm e4(mixed, m);
  e4.add_canonical({4}, x(2));
  e4.add_canonical({m + 2}, a(4) * Rational(-2));
  REQUIRE(r4 == e4);
}

TEST_CASE("P selection on the dunce's cap") {
  Graph g = families::dunce();
  RegistryPtr mixed = mixed_registry(g);
  auto a = [&](int i) { return MPoly::var(mixed, i - 1); };
  auto x = [&](int i) { return MPoly::var(mixed, 4 + i - 1); };
  int m = 4;

  DiffForm p = p_select(pbar_expand(g, mixed), g);
  DiffForm expect(mixed, m);
  Rational four(4);
  expect.add_canonical({2, 4, m + 1, m + 2}, a(1) * a(3) * x(1) * x(2) * Rational(-4));
  expect.add_canonical({2, 3, m + 1, m + 2}, a(1) * a(4) * x(1) * x(2) * four);
  expect.add_canonical({3, 4, m + 1, m + 2}, a(1) * a(2) * x(2) * x(2) * four);
  expect.add_canonical({1, 4, m + 1, m + 2}, a(2) * a(3) * (x(1) - x(2)) * x(2) * four);
  expect.add_canonical({1, 3, m + 1, m + 2}, a(2) * a(4) * (x(1) - x(2)) * x(2) * Rational(-4));
  REQUIRE(p == expect);
}

TEST_CASE("pbar guard") {
  REQUIRE_THROWS_AS(pbar_expand(families::banana(21)), std::invalid_argument);
}

TEST_CASE("tree terms and matching counts") {
  // distinct matching counts 1, 3, 15, 105 for L = 2, 4, 6, 8
  std::vector<std::pair<int, int>> cases = {{3, 1}, {5, 3}, {7, 15}, {9, 105}};
  for (auto [k, matchings] : cases) {
    Graph g = families::banana(k);
    int L = g.loop_number();
    DodgsonCache cache(g, schwinger_registry(g));
    auto terms = tree_terms(g, cache);
    REQUIRE(terms.size() == static_cast<size_t>(k));
    for (const auto& t : terms) {
      REQUIRE(t.distinct_matchings == matchings);
      REQUIRE(static_cast<int>(t.cobasis.size()) == L);
      REQUIRE(t.dodgson_sum.is_homogeneous());
      REQUIRE(t.dodgson_sum.total_degree() == (L - 1) * L / 2);
    }
  }
  Graph odd = families::banana(2);
  DodgsonCache cache(odd, schwinger_registry(odd));
  REQUIRE_THROWS(tree_terms(odd, cache));
}

TEST_CASE("alpha of a tree is a constant") {
  Graph g = families::path(2);
  RegistryPtr reg = schwinger_registry(g);
  AlphaForm a = alpha_tree_sum(g, reg);
  REQUIRE(a.body.terms().size() == 1);
  REQUIRE(a.body.terms().begin()->first.empty());
  REQUIRE(a.prefactor.coeff == 1);
  REQUIRE(a.prefactor.pi_half == 2);
  REQUIRE(a.prefactor.psi_half == -1);
  AlphaForm b = alpha_brute(g, reg);
  REQUIRE(a.body == b.body);
}

TEST_CASE("odd loop number vanishes") {
  for (const Graph& g : {families::banana(2), families::cycle(3),
                         families::random_connected(4, 6, 11)}) {
    if (g.loop_number() % 2 == 0) continue;
    AlphaForm t = alpha_tree_sum(g);
    AlphaForm b = alpha_brute(g);
    REQUIRE(t.is_zero());
    REQUIRE(b.is_zero());
    REQUIRE_FALSE(t.note.empty());
  }
}

TEST_CASE("disconnected graphs vanish with a note") {
  Graph g(4, {{1, 2}, {3, 4}});
  AlphaForm a = alpha_tree_sum(g);
  REQUIRE(a.is_zero());
  REQUIRE(a.note.find("disconnected") != std::string::npos);
  REQUIRE_THROWS(alpha_brute(g));
}

TEST_CASE("pipelines agree on the corpus") {
  for (const Graph& g : {families::dunce(), families::dunce_subdivided(1),
                         families::theta_subdivided(2, 2, 1),
                         families::theta_subdivided(2, 2, 2), families::banana(5),
                         families::wheel(4), families::k4_doubled(),
                         families::path(3), families::cycle(4)}) {
    auto r = pipelines_agree(g);
    INFO(r.witness);
    REQUIRE(r.ok);
  }
}

TEST_CASE("edge bound and trivial wedge") {
  Graph b3 = families::banana(3);
  REQUIRE(edge_bound_check(b3));
  AlphaForm a = alpha_tree_sum(b3);
  REQUIRE_FALSE(a.is_zero());
  REQUIRE(wedge_self(a).empty());  // no admissible 2L-subset
  REQUIRE_FALSE(edge_bound_check(families::dunce()));
}

TEST_CASE("alpha wedge alpha vanishes coefficient-wise") {
  // k4_doubled is excluded: 2L > |E| leaves no admissible edge subset
  for (const Graph& g : {families::dunce(), families::theta_subdivided(2, 2, 2),
                         families::wheel(4), families::theta_subdivided(2, 2, 1)}) {
    AlphaForm a = alpha_tree_sum(g);
    auto qe = wedge_self(a);
    REQUIRE_FALSE(qe.empty());
    for (const auto& q : qe) {
      INFO("edge subset size " << q.edge_set.size());
      REQUIRE(q.value.is_zero());
    }
  }
}

TEST_CASE("qe_graph triple sum vanishes") {
  Graph g = families::dunce();
  REQUIRE(qe_graph(g, {1, 2, 3, 4}).is_zero());
  REQUIRE_THROWS(qe_graph(g, {1, 2, 3}));
  REQUIRE_THROWS(qe_graph(g, {1, 1, 2, 3}));

  Graph th = families::theta_subdivided(5, 5, 5);
  RegistryPtr reg = schwinger_registry(th);
  REQUIRE(qe_graph(th, {1, 6, 11, 12}, reg).is_zero());
  REQUIRE(qe_graph(th, {2, 3, 4, 5}, reg).is_zero());
  REQUIRE(qe_graph(th, {1, 2, 14, 15}, reg).is_zero());
}

TEST_CASE("formal Q_E vanishes") {
  REQUIRE(qe_formal(2).is_zero());
  REQUIRE(qe_formal_full(2).is_zero());
  REQUIRE(qe_formal(4).is_zero());
  REQUIRE_THROWS(qe_formal(3));
  REQUIRE_THROWS(qe_formal(6));
  REQUIRE(qe_term_families(2).size() == 6);
  REQUIRE(qe_term_families(4).size() == 7560);
}

TEST_CASE("cancellation certificate L=2") {
  auto cert = cancellation_certificate(2);
  REQUIRE(cert.total_terms == 6);
  REQUIRE(cert.pairs == 3);
  REQUIRE(cert.valid());

  // spot-check the depicted pairing: +(1,2)(3,4) with solid {1,2},{3,4}
  // cancels -(1,3)(2,4), fixing {1,4} and exchanging 2 <-> 3.
  bool found = false;
  for (const auto& e : cert.entries) {
    for (const auto* t : {&e.term, &e.partner}) {
      if (t->e1 == std::vector<int>{1, 2} &&
          t->dashed == std::vector<std::pair<int, int>>{{1, 3}, {2, 4}} &&
          t->solid1 == std::vector<std::pair<int, int>>{{1, 2}} &&
          t->solid2 == std::vector<std::pair<int, int>>{{3, 4}}) {
        found = true;
        REQUIRE(e.fixed == std::vector<int>{1, 4});
        REQUIRE(e.swapped == std::vector<std::pair<int, int>>{{2, 3}});
        const QETerm& other = (t == &e.term) ? e.partner : e.term;
        REQUIRE(other.e1 == std::vector<int>{1, 3});
        REQUIRE(other.sign == -t->sign);
        REQUIRE(other.factor_multiset() == t->factor_multiset());
      }
    }
  }
  REQUIRE(found);
}

TEST_CASE("cancellation certificate L=4") {
  auto cert = cancellation_certificate(4);
  REQUIRE(cert.total_terms == 7560);
  REQUIRE(cert.pairs == 3780);
  REQUIRE(cert.valid());

  // depicted pairing: E1 = {1,2,5,7}, dashed 1-3, 5-4, 2-6, 7-8,
  // solid {1,7},{2,5} and {3,4},{6,8}: fix {1,2}, exchange 3<->7, 4<->8, 5<->6
  QETerm probe;
  probe.e1 = {1, 2, 5, 7};
  probe.dashed = {{1, 3}, {2, 6}, {5, 4}, {7, 8}};
  probe.solid1 = {{1, 7}, {2, 5}};
  probe.solid2 = {{3, 4}, {6, 8}};
  auto entry = detail::certificate_partner(probe, 4);
  REQUIRE(entry.fixed == std::vector<int>{1, 2});
  REQUIRE(entry.swapped ==
          std::vector<std::pair<int, int>>{{3, 7}, {4, 8}, {5, 6}});

  // alternate solid pairing {1,5},{2,7}: fix {1,4}, exchange 3<->5
  probe.solid1 = {{1, 5}, {2, 7}};
  auto entry2 = detail::certificate_partner(probe, 4);
  REQUIRE(entry2.fixed == std::vector<int>{1, 4});
  REQUIRE(entry2.swapped == std::vector<std::pair<int, int>>{{3, 5}});
}

TEST_CASE("factorization: disjoint union vanishes") {
  auto rep = factorization_check(families::dunce_pair_disjoint());
  REQUIRE(rep.kind == FactorizationReport::Kind::Disconnected);
  REQUIRE(rep.ok);
}

TEST_CASE("factorization: shared vertex") {
  auto rep = factorization_check(families::dunce_pair_shared_vertex());
  REQUIRE(rep.kind == FactorizationReport::Kind::CutVertex);
  REQUIRE(rep.ok);
  REQUIRE(rep.join_vertex == 3);
  REQUIRE(rep.pi_half_offset == 0);
  REQUIRE((rep.sign == 1 || rep.sign == -1));
}

TEST_CASE("factorization: bridge") {
  auto rep = factorization_check(families::dunce_pair_bridge());
  REQUIRE(rep.kind == FactorizationReport::Kind::Bridge);
  REQUIRE(rep.ok);
  REQUIRE(rep.split_edge == 9);
  REQUIRE(rep.pi_half_offset == 1);
  REQUIRE(rep.integrand_factor_ok);
  REQUIRE((rep.sign == 1 || rep.sign == -1));
}

TEST_CASE("factorization: 1PI graphs have nothing to factor") {
  auto rep = factorization_check(families::dunce());
  REQUIRE(rep.kind == FactorizationReport::Kind::OnePI);
  REQUIRE(rep.ok);
}

TEST_CASE("relabeling transports alpha up to a global sign") {
  std::mt19937 rng(31);
  std::vector<Graph> corpus = {families::dunce(), families::theta_subdivided(2, 2, 1),
                               families::banana(4)};
  for (const Graph& g : corpus) {
    RegistryPtr reg = schwinger_registry(g);
    AlphaForm base = alpha_tree_sum(g, reg);
    MPoly psi = symanzik_first(g, reg);
    for (int rep = 0; rep < 6; ++rep) {
      std::vector<int> perm(g.edge_count());
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<EdgeDef> edges(g.edge_count());
      for (int e = 1; e <= g.edge_count(); ++e) edges[perm[e - 1] - 1] = g.edge(e);
      Graph h(g.vertex_count(), edges, g.v_star());
      RegistryPtr hreg = schwinger_registry(h);
      AlphaForm moved = alpha_tree_sum(h, hreg);

      std::vector<int> vmap(perm.size());
      for (size_t e = 0; e < perm.size(); ++e) vmap[e] = perm[e] - 1;
      REQUIRE(embed_vars(psi, vmap, hreg) == symanzik_first(h, hreg));
      REQUIRE(equal_up_to_sign(moved.body, transport_body(base.body, perm, hreg)));
    }
  }
}

TEST_CASE("reorientation flips alpha by at most a global sign") {
  std::mt19937 rng(33);
  for (const Graph& g : {families::dunce(), families::theta_subdivided(2, 2, 1)}) {
    RegistryPtr reg = schwinger_registry(g);
    AlphaForm base = alpha_tree_sum(g, reg);
    for (int e = 1; e <= g.edge_count(); ++e) {
      std::vector<EdgeDef> edges = g.edges();
      std::swap(edges[e - 1].tail, edges[e - 1].head);
      Graph h(g.vertex_count(), edges, g.v_star());
      AlphaForm moved = alpha_tree_sum(h, reg);
      REQUIRE(symanzik_first(h, reg) == symanzik_first(g, reg));
      REQUIRE(equal_up_to_sign(moved.body, base.body));
    }
  }
}

TEST_CASE("graph hash and metadata") {
  Graph g = families::dunce();
  AlphaForm a = alpha_tree_sum(g);
  REQUIRE(a.pipeline == "tree-sum");
  REQUIRE(a.v_star == 3);
  REQUIRE(a.loops == 2);
  REQUIRE(a.graph_hash == graph_hash(g));
  REQUIRE(graph_hash(g) != graph_hash(families::banana(4)));
}
