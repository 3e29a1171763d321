#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "entlink/kb.hpp"
#include "test_support.hpp"

using namespace entlink;
using entlink::testing::fixture;
using entlink::testing::read_file;

namespace {

KnowledgeBase load_text(const std::string& text, const std::string& language = "en") {
  std::istringstream in(text);
  return load_kb(in, language, "test");
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("parse_triple_line") {
  SECTION("label literal") {
    const auto t = parse_triple_line(R"(<e:NYC> <rdfs:label> "Big Apple"@en)");
    REQUIRE(t);
    CHECK(t->subject.str() == "e:NYC");
    CHECK(t->predicate.str() == "rdfs:label");
    CHECK(std::get<Literal>(t->object) == Literal{"Big Apple", "en"});
  }
  SECTION("iri object, escapes and an N-Triples terminator") {
    CHECK(std::get<Iri>(parse_triple_line("<a> <b> <c> .")->object).str() == "c");
    CHECK(std::get<Literal>(parse_triple_line(R"(<a> <b> "say \"hi\" \\ ok")")->object).text == R"(say "hi" \ ok)");
  }
  SECTION("comments and blank lines") {
    CHECK_FALSE(parse_triple_line("# comment"));
    CHECK_FALSE(parse_triple_line("   "));
  }
  SECTION("malformed lines") {
    CHECK_THROWS_AS(parse_triple_line("<a> <b>", 3), MalformedLine);
    CHECK_THROWS_AS(parse_triple_line("<> <b> <c>"), MalformedLine);
    CHECK_THROWS_AS(parse_triple_line(R"(<a> <b> "bad \n escape")"), MalformedLine);
    CHECK_THROWS_AS(parse_triple_line("<a> <b> <c> <d>"), MalformedLine);
    CHECK_THROWS_AS(parse_triple_line(R"(<a> <b> "unterminated)"), MalformedLine);
    try {
      parse_triple_line("<a> <b>", 17);
      FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(e.line_number() == 17);
    }
  }
}

TEST_CASE("Iri validation") {
  CHECK(Iri::is_valid("e:Rio_city"));
  CHECK_FALSE(Iri::is_valid(""));
  CHECK_FALSE(Iri::is_valid("has space"));
  CHECK_FALSE(Iri::is_valid("a<b"));
  CHECK_THROWS_AS(Iri("a b"), std::invalid_argument);
}

TEST_CASE("load_kb record mapping") {
  SECTION("empty input") { CHECK(load_text("").entities.empty()); }
  SECTION("redirects") {
    const auto kb = load_text("<e:NY> <dbo:wikiPageRedirects> <e:NYC>\n");
    CHECK(kb.find(Iri("e:NY"))->redirect_to == Iri("e:NYC"));
    CHECK(kb.find(Iri("e:NYC")) != nullptr);
    CHECK_THROWS_AS(load_text("<e:NY> <dbo:wikiPageRedirects> <e:NYC>\n<e:NY> <dbo:wikiPageRedirects> <e:X>\n"),
                    DuplicateRedirect);
  }
  SECTION("types are not entities") {
    const auto kb = load_text("<e:A> <rdf:type> <dbo:Place>\n<e:A> <dbo:near> <e:B>\n");
    CHECK(kb.entities.size() == 2);
    CHECK(kb.find(Iri("dbo:Place")) == nullptr);
    CHECK(kb.find(Iri("e:A"))->types.contains(Iri("dbo:Place")));
    CHECK(kb.edge_count() == 1);
  }
  SECTION("labels in other languages are dropped") {
    const auto kb = load_text("<e:A> <rdfs:label> \"Deutsch\"@de\n<e:A> <rdfs:label> \"English\"@en-GB\n");
    const auto* a = kb.find(Iri("e:A"));
    CHECK(a->alt_labels == std::set<std::string>{"English"});
    CHECK(a->preferred_label == "English");
  }
  SECTION("malformed line numbers propagate") {
    std::string text;
    for (int i = 1; i < 17; ++i) text += "<e:A" + std::to_string(i) + "> <rdfs:label> \"x\"\n";
    text += "<broken> <line>\n";
    try {
      load_text(text);
      FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(e.line_number() == 17);
    }
  }
}

TEST_CASE("rio fixture") {
  const auto kb = testing::load_fixture_kb("rio.kb");
  CHECK(kb.entities.size() == 12);
  const auto* rio = kb.find(Iri("e:Rio_city"));
  REQUIRE(rio);
  CHECK(rio->alt_labels.contains("Rio de Janeiro"));
  CHECK(rio->preferred_label);
  CHECK(rio->alt_labels.contains(*rio->preferred_label));
  CHECK(kb.find(Iri("e:Rio_de_Janeiro_City"))->redirect_to == Iri("e:Rio_city"));
}

TEST_CASE("writing and re-reading a KB is an identity") {
  for (const auto& set : testing::kFixtureSets) {
    const auto kb = testing::load_fixture_kb(set.kb, set.properties);
    std::ostringstream out;
    write_kb(kb, out);
    std::istringstream in(out.str());
    CHECK(load_kb(in, kb.language, kb.name, kb.predicates) == kb);
  }
}

TEST_CASE("load_kb ignores line order") {
  const auto lines = lines_of(read_file(fixture("rio.kb")));
  const auto reference = load_text(read_file(fixture("rio.kb")));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto shuffled = lines;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::string text;
    for (const auto& l : shuffled) text += l + "\n";
    CHECK(load_text(text) == reference);
  }
}

TEST_CASE("every edge endpoint resolves to an entity") {
  for (const auto& set : testing::kFixtureSets) {
    const auto kb = testing::load_fixture_kb(set.kb, set.properties);
    for (const auto& [subject, edges] : kb.out_edges) {
      CHECK(kb.find(subject));
      for (const auto& e : edges) CHECK(kb.find(e.target));
    }
  }
}
