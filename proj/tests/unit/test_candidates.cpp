#include <catch2/catch_amalgamated.hpp>

#include "entlink/candidates.hpp"
#include "entlink/kernels/ngram.hpp"
#include "entlink/text.hpp"
#include "test_support.hpp"

using namespace entlink;
using Catch::Approx;

namespace {

std::set<std::string> urls(const std::vector<Candidate>& list) {
  std::set<std::string> out;
  for (const auto& c : list) out.insert(c.entity.str());
  return out;
}

CandidateLists candidates_for(const IndexBundle& bundle, const std::string& tagged, const LinkerConfig& cfg = {}) {
  return generate_candidates(parse_entity_tagged_text(tagged), bundle, cfg);
}

}  // namespace

TEST_CASE("ngram_similarity") {
  CHECK(ngram_similarity("london", "london", 3) == 1.0);
  CHECK(ngram_similarity("abc", "xyz", 3) == 0.0);
  CHECK(ngram_similarity("london", "londno", 3) == 0.5);
  CHECK(ngram_similarity("ab", "ab", 2) == 1.0);
  CHECK(ngram_similarity("東京都", "東京", 2) == Approx(2.0 * 2 / (4 + 3)));
  CHECK_THROWS(ngram_similarity("a", "b", 1));
}

TEST_CASE("heuristic_expansion") {
  SECTION("short mention grows to the co-occurring full name") {
    const auto e = heuristic_expansion({"Barack", "Barack Obama"});
    CHECK(e == std::map<std::size_t, std::string>{{0, "Barack Obama"}});
  }
  SECTION("no superstring, no change") { CHECK(heuristic_expansion({"Paris"}).empty()); }
  SECTION("longest superstring wins, then the earliest") {
    const auto e = heuristic_expansion({"Obama", "Barack Obama", "Obama Care"});
    CHECK(e.at(0) == "Barack Obama");
    const auto tie = heuristic_expansion({"Obama", "Michelle Obama", "Obama Foundati"});
    CHECK(tie.at(0) == "Michelle Obama");
  }
  SECTION("only whole tokens count") { CHECK(heuristic_expansion({"Bar", "Barack Obama"}).empty()); }
}

TEST_CASE("acronym_lookup is exact and case-sensitive") {
  const auto bundle = testing::fixture_bundle("psg.kb", "psg.properties");
  CHECK(acronym_lookup("PSG", bundle->acronyms) == std::set<std::string>{"Paris Saint-Germain"});
  CHECK(acronym_lookup("psg", bundle->acronyms).empty());
  CHECK(acronym_lookup("XYZQ", bundle->acronyms).empty());
}

TEST_CASE("synonym labels retrieve the same entity") {
  const auto bundle = testing::fixture_bundle("nyc.kb");
  const auto lists = candidates_for(*bundle, "<entity>Big Apple</entity> and <entity>NY City</entity>");
  CHECK(urls(lists[0]).contains("e:NYC"));
  CHECK(urls(lists[1]) == std::set<std::string>{"e:NYC"});
  CHECK(lists[1][0].source == CandidateSource::rare);
}

TEST_CASE("pipeline stages on the rio fixture") {
  const auto bundle = testing::fixture_bundle("rio.kb");
  LinkerConfig cfg;

  SECTION("exhausted pipeline gives an empty list") {
    CHECK(candidates_for(*bundle, "<entity>Zanzibar</entity>", cfg)[0].empty());
  }
  SECTION("exact hits carry sim 1") {
    const auto list = candidates_for(*bundle, "<entity>Rio de Janeiro</entity>", cfg)[0];
    CHECK(urls(list) == std::set<std::string>{"e:Rio_city", "e:Rio_state"});
    for (const auto& c : list) CHECK(c.sim == 1.0);
  }
  SECTION("misspellings fall back to the n-gram scan") {
    const auto list = candidates_for(*bundle, "<entity>Copacabanna</entity>", cfg)[0];
    REQUIRE(urls(list) == std::set<std::string>{"e:Copacabana"});
    CHECK(list[0].sim == Approx(ngram_similarity("copacabanna", "copacabana", 3)));
    CHECK(list[0].sim >= cfg.sim_threshold);
    cfg.sim_threshold = 0.99;
    CHECK(candidates_for(*bundle, "<entity>Copacabanna</entity>", cfg)[0].empty());
  }
  SECTION("type filter drops entities outside person/place/organization") {
    CHECK(urls(candidates_for(*bundle, "<entity>Copacabana</entity>", cfg)[0]) ==
          std::set<std::string>{"e:Copacabana"});
    cfg.common_entities = true;
    CHECK(urls(candidates_for(*bundle, "<entity>Copacabana</entity>", cfg)[0]) ==
          std::set<std::string>{"e:Copacabana", "e:Copacabana_(song)"});
  }
  SECTION("popularity changes order but not membership") {
    for (const char* text : {"<entity>Rio de Janeiro</entity>", "<entity>Rio</entity> <entity>Copacabana</entity>",
                             "<entity>Rio de Janeiro City</entity>"}) {
      cfg.popularity = false;
      const auto by_sim = candidates_for(*bundle, text, cfg);
      cfg.popularity = true;
      const auto by_pop = candidates_for(*bundle, text, cfg);
      REQUIRE(by_sim.size() == by_pop.size());
      for (std::size_t i = 0; i < by_sim.size(); ++i) CHECK(urls(by_sim[i]) == urls(by_pop[i]));
      for (const auto& list : by_pop)
        for (std::size_t k = 1; k < list.size(); ++k) CHECK(list[k - 1].popularity >= list[k].popularity);
    }
  }
  SECTION("max candidates truncates") {
    cfg.max_candidates = 1;
    CHECK(candidates_for(*bundle, "<entity>Rio de Janeiro</entity>", cfg)[0].size() == 1);
  }
}

TEST_CASE("context search ranks by cosine against abstracts") {
  const auto bundle = testing::fixture_bundle("rio.kb");
  const TokenBag doc{{"carnival", 1}, {"beach", 1}};
  const auto list = context_search("Rio", doc, *bundle, 10);
  REQUIRE(list.size() == 3);
  CHECK(list[0].entity == Iri("e:Rio_city"));
  CHECK(list[0].sim == Approx(0.342997170285018).margin(1e-12));
  CHECK(list[1].entity == Iri("e:Copacabana"));
  CHECK(list[1].sim == Approx(0.166666666666667).margin(1e-12));
  CHECK(list[2].entity == Iri("e:Rio_state"));
  CHECK(list[2].sim == Approx(0.166666666666667).margin(1e-12));
  for (const auto& c : list) CHECK(c.source == CandidateSource::context);
  CHECK(context_search("Zanzibar", doc, *bundle, 10).empty());
}

TEST_CASE("context fallback only when enabled and nothing else matched") {
  const auto bundle = testing::fixture_bundle("rio.kb");
  LinkerConfig cfg;
  const std::string text = "<entity>Rio carnival town</entity> has a beach";
  CHECK(candidates_for(*bundle, text, cfg)[0].empty());
  cfg.context = true;
  const auto list = candidates_for(*bundle, text, cfg)[0];
  REQUIRE_FALSE(list.empty());
  CHECK(list[0].entity == Iri("e:Rio_city"));
}

TEST_CASE("acronym candidates") {
  const auto bundle = testing::fixture_bundle("psg.kb", "psg.properties");
  LinkerConfig cfg;
  CHECK(candidates_for(*bundle, "<entity>PSG</entity>", cfg)[0].empty());
  cfg.acronym = true;
  const auto list = candidates_for(*bundle, "<entity>PSG</entity>", cfg)[0];
  REQUIRE(list.size() == 1);
  CHECK(list[0].entity == Iri("e:Paris_Saint-Germain"));
  CHECK(list[0].sim == 1.0);
  CHECK(list[0].source == CandidateSource::acronym);
  CHECK(list[0].matched_label == "Paris Saint-Germain");
}

TEST_CASE("heuristic expansion switches the short mention's candidates") {
  const auto bundle = testing::fixture_bundle("barack.kb");
  const std::string text = testing::read_file(testing::fixture("barack_sentence.txt"));
  LinkerConfig cfg;
  const auto on = candidates_for(*bundle, text, cfg);
  cfg.heuristic_expansion = false;
  const auto off = candidates_for(*bundle, text, cfg);
  CHECK(urls(on[0]) == std::set<std::string>{"e:Barack_Obama"});
  CHECK(on[0][0].source == CandidateSource::expanded);
  CHECK(urls(off[0]) != urls(on[0]));
  CHECK(urls(off[1]) == urls(on[1]));
}

TEST_CASE("non-latin scripts") {
  const auto bundle = testing::fixture_bundle("tokyo_ja.kb", "tokyo_ja.properties");
  const auto lists = candidates_for(*bundle, testing::read_file(testing::fixture("tokyo_sentence.txt")));
  REQUIRE(lists.size() == 2);
  CHECK(urls(lists[0]) == std::set<std::string>{"e:東京都"});
  CHECK(urls(lists[1]) == std::set<std::string>{"e:京都市"});
  CHECK_FALSE(bundle->surface.contains("tokyo"));
}

TEST_CASE("fuzzy_keys equals an exhaustive threshold scan") {
  for (const auto& [kb, props] : {std::pair{"rio.kb", (const char*)nullptr}, std::pair{"psg.kb", "psg.properties"}}) {
    const auto bundle = testing::fixture_bundle(kb, props);
    const CandidateGenerator gen(*bundle);
    for (int n : {2, 3, 4}) {
      for (const char* q : {"rio de janiero", "copacabanna", "paris st germain", "brasil", "rio", "x"}) {
        const std::string query = normalize_surface_form(q);
        std::vector<std::string> expected;
        for (const auto& key : gen.lookup_keys())
          if (ngram_similarity(query, key, n) >= 0.5) expected.push_back(key);
        CHECK(gen.fuzzy_keys(query, n, 0.5) == expected);
      }
    }
  }
}
