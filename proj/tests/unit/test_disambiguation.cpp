#include <catch2/catch_amalgamated.hpp>

#include "entlink/disambiguation.hpp"
#include "entlink/linker.hpp"
#include "test_support.hpp"

using namespace entlink;
using Catch::Approx;

namespace {

Candidate cand(std::size_t mention, const char* iri) {
  Candidate c;
  c.mention_index = mention;
  c.entity = Iri(iri);
  c.sim = 1.0;
  return c;
}

// Candidate lists of the rio sentence: Rio de Janeiro -> {city, state}, Copacabana -> {Copacabana}.
CandidateLists rio_candidates() {
  return {{cand(0, "e:Rio_city"), cand(0, "e:Rio_state")}, {cand(1, "e:Copacabana")}};
}

std::vector<std::string> node_names(const DisambiguationGraph& g) {
  std::vector<std::string> out;
  for (const auto& n : g.nodes) out.push_back(n.str());
  return out;
}

std::vector<std::pair<std::string, std::string>> edge_names(const DisambiguationGraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : g.edges) out.emplace_back(g.nodes[u].str(), g.nodes[v].str());
  return out;
}

}  // namespace

TEST_CASE("build_graph on the rio fixture") {
  const auto bundle = testing::fixture_bundle("rio.kb");

  SECTION("depth 0 keeps only candidates") {
    const auto g = build_graph(rio_candidates(), bundle->graph, 0);
    CHECK(node_names(g) == std::vector<std::string>{"e:Copacabana", "e:Rio_city", "e:Rio_state"});
    for (int lvl : g.level) CHECK(lvl == 0);
  }
  SECTION("depth 1") {
    const auto g = build_graph(rio_candidates(), bundle->graph, 1);
    CHECK(node_names(g) == std::vector<std::string>{"e:Brazil", "e:Copacabana", "e:Rio_city", "e:Rio_state"});
    CHECK(g.level == std::vector<int>{1, 0, 0, 0});
    const std::vector<std::pair<std::string, std::string>> expected = {{"e:Copacabana", "e:Rio_city"},
                                                                       {"e:Rio_city", "e:Brazil"},
                                                                       {"e:Rio_city", "e:Rio_state"},
                                                                       {"e:Rio_state", "e:Brazil"},
                                                                       {"e:Rio_state", "e:Rio_city"}};
    CHECK(edge_names(g) == expected);
    CHECK(g.mentions[*g.index_of(Iri("e:Rio_city"))] == std::set<std::size_t>{0});
    CHECK(g.mentions[*g.index_of(Iri("e:Brazil"))].empty());
  }
  SECTION("depth 2 reaches the continent") {
    const auto g = build_graph(rio_candidates(), bundle->graph, 2);
    CHECK(node_names(g) ==
          std::vector<std::string>{"e:Brazil", "e:Copacabana", "e:Rio_city", "e:Rio_state", "e:South_America"});
    CHECK(g.level.back() == 2);
  }
  SECTION("node sets grow monotonically with depth") {
    auto previous = build_graph(rio_candidates(), bundle->graph, 0);
    for (int depth = 1; depth <= 5; ++depth) {
      const auto g = build_graph(rio_candidates(), bundle->graph, depth);
      for (const auto& n : previous.nodes) CHECK(g.index_of(n));
      for (int lvl : g.level) CHECK(lvl <= depth);
      previous = g;
    }
  }
}

TEST_CASE("hits on the rio depth-2 graph matches the hand-run values") {
  const auto bundle = testing::fixture_bundle("rio.kb");
  const auto g = build_graph(rio_candidates(), bundle->graph, 2);
  const auto scores = run_hits(g, 20);
  const auto auth = [&](const char* iri) { return scores.at(Iri(iri)).authority; };
  const auto hub = [&](const char* iri) { return scores.at(Iri(iri)).hub; };
  CHECK(auth("e:Brazil") == Approx(0.445041858360).margin(1e-11));
  CHECK(auth("e:Rio_city") == Approx(0.356895898839).margin(1e-11));
  CHECK(auth("e:Rio_state") == Approx(0.198062242762).margin(1e-11));
  CHECK(auth("e:Copacabana") == Approx(0.0).margin(1e-11));
  CHECK(auth("e:South_America") == Approx(0.0).margin(1e-9));
  CHECK(hub("e:Copacabana") == Approx(0.198062279018).margin(1e-11));
  CHECK(hub("e:Rio_city") == Approx(0.356895846459).margin(1e-11));
  CHECK(hub("e:Rio_state") == Approx(0.445041874502).margin(1e-11));

  const auto result = select(scores, rio_candidates(), Algorithm::hits);
  CHECK(result.links[0].chosen == Iri("e:Rio_city"));
  CHECK(result.links[1].chosen == Iri("e:Copacabana"));
}

TEST_CASE("pagerank scores sum to one") {
  const auto bundle = testing::fixture_bundle("rio.kb");
  for (int depth = 0; depth <= 3; ++depth) {
    const auto scores = run_pagerank(build_graph(rio_candidates(), bundle->graph, depth), 0.85, 50);
    double total = 0.0;
    for (const auto& [_, s] : scores) total += s.pagerank;
    CHECK(total == Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("select") {
  ScoreMap scores;
  scores[Iri("X")].authority = 0.4;
  scores[Iri("Y")].authority = 0.1;
  scores[Iri("e:A")].authority = 0.3;
  scores[Iri("e:B")].authority = 0.3;

  SECTION("argmax") {
    CHECK(select(scores, {{cand(0, "Y"), cand(0, "X")}}, Algorithm::hits).links[0].chosen == Iri("X"));
  }
  SECTION("ties go to the smaller IRI") {
    CHECK(select(scores, {{cand(0, "e:B"), cand(0, "e:A")}}, Algorithm::hits).links[0].chosen == Iri("e:A"));
  }
  SECTION("empty list is NIL") {
    const auto r = select(scores, {{}}, Algorithm::hits);
    CHECK_FALSE(r.links[0].chosen);
    CHECK(r.links[0].candidates_considered == 0);
  }
  SECTION("positive scaling leaves choices unchanged") {
    const CandidateLists lists = {{cand(0, "X"), cand(0, "Y")}, {cand(1, "e:A"), cand(1, "e:B"), cand(1, "Y")}};
    ScoreMap scaled = scores;
    for (auto& [_, s] : scaled) s.authority *= 7.5;
    const auto a = select(scores, lists, Algorithm::hits);
    const auto b = select(scaled, lists, Algorithm::hits);
    for (std::size_t i = 0; i < a.links.size(); ++i) CHECK(a.links[i].chosen == b.links[i].chosen);
  }
  SECTION("choices stay inside the candidate list") {
    const auto r = select(scores, {{cand(0, "Y")}}, Algorithm::hits);
    CHECK(r.links[0].chosen == Iri("Y"));
  }
}

TEST_CASE("linker resolves the rio sentence to the city") {
  const Linker linker(testing::fixture_bundle("rio.kb"));
  const auto doc = parse_entity_tagged_text(testing::read_file(testing::fixture("rio_sentence.txt")));
  LinkerConfig cfg;
  cfg.algorithm = Algorithm::hits;
  cfg.depth = 2;
  const auto linking = linker.link(doc, cfg);
  CHECK(linking.result.links.at(0).chosen == Iri("e:Rio_city"));
  CHECK(linking.result.links.at(1).chosen == Iri("e:Copacabana"));

  cfg.algorithm = Algorithm::pagerank;
  for (const auto& link : linker.link(doc, cfg).result.links) CHECK(link.chosen);
}
