#include <doctest.h>

#include <random>

#include "tmn/core.hpp"

using namespace tmn;

namespace {

ComplexQuestion fig3_question() {
  ComplexQuestion q;
  q.id = "fig3";
  q.text = "How many years did it take for the services sector to rebound?";
  q.contexts.push_back(Context{
      std::nullopt,
      "The sector decreased by 7.8 percent in 2002, before rebounding in 2003."});
  q.gold_answer = "1";
  return q;
}

}  // namespace

TEST_CASE("append_step builds immutable chains") {
  Chain empty = make_chain(fig3_question());
  Chain one = append_step(empty, ChainStep{ModelId::Squad, "q", "a", 1.0}, 0.0);
  CHECK(one.steps.size() == 1);
  CHECK(one.theta == 0.0);
  CHECK(empty.steps.empty());  // input untouched

  Chain two = append_step(one, ChainStep{ModelId::Squad, "q2", "a2", 1.0}, 0.1);
  CHECK(two.steps.size() == 2);
  CHECK(two.theta == 0.1);
  CHECK(one.steps.size() == 1);

  Chain same_theta = append_step(two, ChainStep{ModelId::Calc, "diff(1, 2)", "1", 1.0}, 0.1);
  CHECK(same_theta.theta == 0.1);

  CHECK_THROWS_AS(append_step(two, ChainStep{ModelId::Squad, "q", "a", 1.0}, 0.05), Error);
  CHECK_THROWS_AS(append_step(two, ChainStep{ModelId::Eoq, "", "", 1.0}, 0.2), Error);

  Chain done = mark_complete(two, 0.37);
  CHECK_THROWS_AS(append_step(done, ChainStep{ModelId::Squad, "q", "a", 1.0}, 0.2),
                  AlreadyComplete);
}

TEST_CASE("mark_complete stores delta and exposes the final answer") {
  Chain chain = make_chain(fig3_question());
  CHECK_THROWS_AS(mark_complete(chain, 0.5), EmptyChain);
  CHECK_THROWS_AS(chain.final_answer(), EmptyChain);

  chain = append_step(chain, ChainStep{ModelId::Squad, "q1", "2003", 1.0}, 0.0);
  Chain one = mark_complete(chain, 0.0);
  CHECK(one.complete);
  CHECK(one.delta == 0.0);
  CHECK(one.final_answer() == "2003");

  chain = append_step(chain, ChainStep{ModelId::Calc, "diff(2003, 2002)", "1", 1.0}, 0.0);
  Chain two = mark_complete(chain, 0.37);
  CHECK(two.delta == 0.37);
  CHECK(two.final_answer() == "1");
  CHECK_FALSE(chain.complete);

  CHECK_THROWS_AS(mark_complete(chain, 1.5), Error);
}

TEST_CASE("render_history serializes the transcript") {
  Chain chain = make_chain(fig3_question());
  CHECK(render_history(chain) ==
        "QC: How many years did it take for the services sector to rebound?");

  chain = append_step(
      chain, ChainStep{ModelId::Squad, "In what year did the services sector rebound?", "2003", 1.0},
      0.0);
  CHECK(render_history(chain) ==
        "QC: How many years did it take for the services sector to rebound? "
        "Q: In what year did the services sector rebound? A: 2003");
}

TEST_CASE("history parses back") {
  History history = parse_history(
      "QC: How many years did it take for the services sector to rebound? "
      "Q: In what year did the services sector rebound? A: 2003 "
      "Q: diff(2003, 2002) A: 1");
  CHECK(history.qc == "How many years did it take for the services sector to rebound?");
  REQUIRE(history.qa_pairs.size() == 2);
  CHECK(history.qa_pairs[0].first == "In what year did the services sector rebound?");
  CHECK(history.qa_pairs[0].second == "2003");
  CHECK(history.qa_pairs[1].first == "diff(2003, 2002)");
  CHECK(history.qa_pairs[1].second == "1");

  CHECK_THROWS_AS(parse_history("How many?"), ParseError);
  CHECK_THROWS_AS(parse_history("QC: x Q: unanswered"), ParseError);
  CHECK_THROWS_AS(parse_history("QC: x A: answer with no question"), ParseError);
}

TEST_CASE("history round-trips on adversarial fields") {
  std::mt19937_64 rng(99);
  const std::string alphabet[] = {"Q:", "A:", "QC:", "\\", " ", "q", "2003", ":", "\\Q:", "?"};
  auto random_field = [&]() {
    std::string out;
    std::size_t pieces = rng() % 6;
    for (std::size_t i = 0; i < pieces; ++i) out += alphabet[rng() % 10];
    return out;
  };

  for (int round = 0; round < 500; ++round) {
    std::string qc = random_field();
    std::vector<std::pair<std::string, std::string>> qa;
    std::size_t steps = rng() % 4;
    for (std::size_t i = 0; i < steps; ++i) qa.emplace_back(random_field(), random_field());

    std::string rendered = render_history(qc, qa);
    History parsed = parse_history(rendered);
    CAPTURE(rendered);
    REQUIRE(parsed.qc == qc);
    REQUIRE(parsed.qa_pairs == qa);
    REQUIRE(render_history(parsed.qc, parsed.qa_pairs) == rendered);
  }
}

TEST_CASE("escaping is reversible") {
  for (const char* s : {"plain", "Q: inside", "ends with QC:", "\\", "\\Q:", "A:A:A:", ""}) {
    CHECK(unescape_field(escape_field(s)) == s);
  }
}

TEST_CASE("model prefix surface form") {
  CHECK(render_prefixed(ModelId::Squad, "Who?") == "(SQUAD) Who?");
  CHECK(render_prefixed(ModelId::Calc, "diff(2003, 2002)") == "(CALC) diff(2003, 2002)");
  CHECK(render_prefixed(ModelId::Eoq, "") == "[EOQ]");

  auto parsed = parse_prefixed("(CALC) diff(2003, 2002)");
  REQUIRE(parsed.has_value());
  CHECK(parsed->first == ModelId::Calc);
  CHECK(parsed->second == "diff(2003, 2002)");

  auto eoq = parse_prefixed("  [EOQ]  ");
  REQUIRE(eoq.has_value());
  CHECK(eoq->first == ModelId::Eoq);

  CHECK(parse_prefixed("??") == std::nullopt);
  CHECK(parse_prefixed("(BERT) who?") == std::nullopt);
  CHECK(parse_prefixed("(SQUAD)") == std::nullopt);
  CHECK(parse_prefixed("(EOQ) trailing") == std::nullopt);
}

TEST_CASE("question validation") {
  ComplexQuestion q = fig3_question();
  CHECK_NOTHROW(validate(q));

  ComplexQuestion blank = q;
  blank.text = "   ";
  CHECK_THROWS_AS(validate(blank), Error);

  ComplexQuestion no_context = q;
  no_context.contexts.clear();
  CHECK_THROWS_AS(validate(no_context), Error);

  ComplexQuestion empty_context = q;
  empty_context.contexts[0].text = "";
  CHECK_THROWS_AS(validate(empty_context), Error);
}
