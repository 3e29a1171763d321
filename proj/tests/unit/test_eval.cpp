#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "entlink/eval.hpp"
#include "test_support.hpp"

using namespace entlink;
using Catch::Approx;

namespace {

std::map<std::string, std::string> docs_from(const std::string& text) {
  std::istringstream in(text);
  return parse_documents_tsv(in);
}

std::vector<GoldRecord> gold_from(const std::string& text) {
  std::istringstream in(text);
  return parse_gold_tsv(in);
}

}  // namespace

TEST_CASE("summary arithmetic") {
  SECTION("all correct") {
    const auto r = summarize({{"a", 3, 3, 3}});
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.f1 == 1.0);
  }
  SECTION("all NIL") {
    const auto r = summarize({{"a", 0, 0, 4}});
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.f1 == 0.0);
  }
  SECTION("3 gold, 2 predicted, 1 correct") {
    const auto r = summarize({{"a", 1, 2, 3}});
    CHECK(r.precision == 0.5);
    CHECK(r.recall == Approx(1.0 / 3));
    CHECK(r.f1 == Approx(0.4).margin(1e-15));
  }
  SECTION("documents sorted by id") {
    const auto r = summarize({{"b", 0, 0, 1}, {"a", 1, 1, 1}});
    CHECK(r.documents[0].doc_id == "a");
    CHECK(r.gold == 2);
  }
}

TEST_CASE("gold parsing") {
  const auto g = gold_from("d1\t4\t14\tRio de Janeiro\te:Rio_city\r\n\n");
  REQUIRE(g.size() == 1);
  CHECK(g[0].mention == Mention{4, 14, "Rio de Janeiro"});
  CHECK_THROWS_AS(gold_from("d1\t4\t14\tRio"), EvalInputError);
  CHECK_THROWS_AS(gold_from("d1\tx\t14\tRio\te:R"), EvalInputError);
  CHECK_THROWS_AS(gold_from("d1\t4\t14\tRio\tnot an iri"), EvalInputError);
  CHECK_THROWS_AS(docs_from("d1\ta\nd1\tb\n"), EvalInputError);
}

TEST_CASE("evaluating the rio fixture") {
  const Linker linker(testing::fixture_bundle("rio.kb"));
  const auto docs = docs_from(testing::read_file(testing::fixture("rio_docs.tsv")));
  const auto gold = gold_from(testing::read_file(testing::fixture("rio_gold.tsv")));
  const auto report = evaluate(linker, docs, gold, LinkerConfig{});
  CHECK(report.gold == 4);
  CHECK(report.predicted == 4);
  CHECK(report.correct == 4);
  CHECK(report.f1 == 1.0);

  SECTION("document and gold order do not matter") {
    std::string docs_text = testing::read_file(testing::fixture("rio_docs.tsv"));
    const auto cut = docs_text.find('\n') + 1;
    const auto swapped_docs = docs_from(docs_text.substr(cut) + docs_text.substr(0, cut));
    auto reversed = gold;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(evaluate(linker, swapped_docs, reversed, LinkerConfig{}) == report);
  }
  SECTION("wrong gold counts as a miss") {
    auto wrong = gold;
    wrong[0].gold = Iri("e:Rio_state");
    const auto r = evaluate(linker, docs, wrong, LinkerConfig{});
    CHECK(r.correct == 3);
    CHECK(r.precision == 0.75);
  }
  SECTION("span mismatches are rejected") {
    auto bad = gold;
    bad[0].mention.surface = "Rio";
    CHECK_THROWS_AS(evaluate(linker, docs, bad, LinkerConfig{}), EvalInputError);
    bad = gold;
    bad[0].mention.start = 500;
    CHECK_THROWS_AS(evaluate(linker, docs, bad, LinkerConfig{}), EvalInputError);
    bad = gold;
    bad[0].doc_id = "d9";
    CHECK_THROWS_AS(evaluate(linker, docs, bad, LinkerConfig{}), EvalInputError);
  }
}

TEST_CASE("report rendering") {
  const auto r = summarize({{"d1", 1, 2, 3}});
  CHECK(render_report_json(r) ==
        R"({"precision":0.5,"recall":0.3333333333333333,"f1":0.4,"correct":1,"predicted":2,"gold":3,"documents":[{"id":"d1","correct":1,"predicted":2,"gold":3}]})");
  const auto table = render_report_table(r);
  CHECK(table.find("f1         0.4000") != std::string::npos);
  CHECK(table.find("total") != std::string::npos);
}
