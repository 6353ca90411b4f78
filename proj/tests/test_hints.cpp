#include <doctest.h>

#include <variant>

#include "tmn/hints.hpp"

using namespace tmn;
using namespace tmn::hints;

namespace {

ComplexQuestion make_question(std::string id, std::string text,
                              std::vector<Context> contexts,
                              std::optional<std::string> gold = std::nullopt) {
  ComplexQuestion q;
  q.id = std::move(id);
  q.text = std::move(text);
  q.contexts = std::move(contexts);
  q.gold_answer = std::move(gold);
  return q;
}

ComplexQuestion sendling_question() {
  return make_question(
      "ex1",
      "How many days passed between the Sendling Christmas Day Massacre and the Battle of "
      "Aidenbach?",
      {Context{std::nullopt,
               "The Sendling Christmas Day Massacre took place on 25 December 1705. The Battle "
               "of Aidenbach followed on 8 January 1706."}},
      "14");
}

ComplexQuestion ancestry_question() {
  return make_question(
      "ex2", "Which ancestral group is smaller: Irish or Italian?",
      {Context{std::nullopt,
               "By ancestry, 12.2 percent of the group were Irish while the Italian share "
               "stood at 6.1 percent."}},
      "Italian");
}

ComplexQuestion bangkok_question() {
  return make_question(
      "ex3", "How many percent of the national population does not live in Bangkok?",
      {Context{std::nullopt,
               "About 12.6 percent of the national population lives in Bangkok."}},
      "87.4");
}

ComplexQuestion simpsons_question() {
  return make_question(
      "ex4",
      "Little Big Girl was a Simpsons episode directed by the animator and artist of what "
      "nationality?",
      {Context{"Little Big Girl",
               "Little Big Girl is an episode of The Simpsons directed by Raymond S Persi."},
       Context{"Raymond S Persi",
               "Raymond S Persi is an American animator, director and voice actor."}},
      "American");
}

ComplexQuestion conjunction_question() {
  return make_question(
      "ex5", "Who is a politician and an actor?",
      {Context{"Doc One", "John Smith is a politician from Ohio."},
       Context{"Doc Two", "As an actor, John Smith appeared in several films."}},
      "John Smith");
}

ComplexQuestion touchdown_question() {
  return make_question("ex6", "How many touchdowns were scored by X?",
                       {Context{std::nullopt, "X scored 3 touchdowns in 2002."}}, "3");
}

ComplexQuestion rebound_question() {
  return make_question(
      "fig4", "How many years did it take for the services sector to rebound?",
      {Context{std::nullopt,
               "The sector decreased by 7.8 percent in 2002, before rebounding in 2003."}},
      "1");
}

}  // namespace

TEST_CASE("classification of the reference questions") {
  CHECK(classify(sendling_question()) == ClassSet{QuestionClass::Difference});
  CHECK(classify(ancestry_question()) == ClassSet{QuestionClass::Comparison});
  CHECK(classify(bangkok_question()) == ClassSet{QuestionClass::Complementation});
  CHECK(classify(simpsons_question()) == ClassSet{QuestionClass::Composition});
  CHECK(classify(conjunction_question()) == ClassSet{QuestionClass::Conjunction});
  CHECK(classify(touchdown_question()) == ClassSet{QuestionClass::OutOfScope});
  CHECK(classify(rebound_question()) == ClassSet{QuestionClass::Difference});
}

TEST_CASE("difference exclusions block near-miss phrasings") {
  auto cls = [](const char* text) {
    return classify(make_question("x", text, {Context{std::nullopt, "ctx"}}));
  };
  CHECK(cls("How many more touchdowns did X score than Y?") ==
        ClassSet{QuestionClass::OutOfScope});
  CHECK(cls("How many more yards was the longest field goal than the shortest?") ==
        ClassSet{QuestionClass::OutOfScope});
  CHECK(cls("How many more people lived in X than in Y?") ==
        ClassSet{QuestionClass::Difference});
  CHECK(cls("What was the difference in population size?") ==
        ClassSet{QuestionClass::Difference});
  CHECK(cls("How many days was the first siege?") == ClassSet{QuestionClass::OutOfScope});
}

TEST_CASE("comparison entities come from the colon-or pattern") {
  auto entities = comparison_entities("Which ancestral group is smaller: Irish or Italian?");
  REQUIRE(entities.has_value());
  CHECK(entities->first == "Irish");
  CHECK(entities->second == "Italian");

  auto commas = comparison_entities("Which is longer, the Nile or the Amazon?");
  REQUIRE(commas.has_value());
  CHECK(commas->first == "the Nile");
  CHECK(commas->second == "the Amazon");

  CHECK(comparison_entities("Did Holland's Magazine and Moondance both begin in 1996?") ==
        std::nullopt);
  CHECK(comparison_entities("Plain question without the pattern?") == std::nullopt);
}

TEST_CASE("extract_values finds numbers and dates with spans") {
  Context ctx{std::nullopt,
              "The sector decreased by 7.8 percent in 2002, before rebounding in 2003."};
  auto mentions = extract_values(ctx, std::nullopt, 0);

  REQUIRE(mentions.size() == 5);  // 7.8, 2002 (number+date), 2003 (number+date)
  CHECK(mentions[0].surface == "7.8");
  CHECK(std::holds_alternative<calc::Number>(mentions[0].value));
  CHECK(mentions[1].surface == "2002");
  CHECK(std::holds_alternative<calc::Number>(mentions[1].value));
  CHECK(mentions[2].surface == "2002");
  CHECK(std::holds_alternative<calc::CivilDate>(mentions[2].value));
  CHECK(mentions[3].surface == "2003");
  CHECK(mentions[4].surface == "2003");

  for (const ValueMention& mention : mentions) {
    CHECK(ctx.text.substr(mention.begin, mention.end - mention.begin) == mention.surface);
  }
}

TEST_CASE("extract_values parses full dates as single mentions") {
  Context ctx{std::nullopt,
              "The massacre took place on 25 December 1705 and the battle on January 8, 1706; "
              "a report of 1,234 casualties followed."};
  auto mentions = extract_values(ctx, std::nullopt, 0);
  REQUIRE(mentions.size() == 3);
  CHECK(mentions[0].surface == "25 December 1705");
  CHECK(std::get<calc::CivilDate>(mentions[0].value) == calc::CivilDate{1705, 12, 25});
  CHECK(mentions[1].surface == "January 8, 1706");
  CHECK(std::get<calc::CivilDate>(mentions[1].value) == calc::CivilDate{1706, 1, 8});
  CHECK(mentions[2].surface == "1,234");
  CHECK(std::get<calc::Number>(mentions[2].value).value.to_string() == "1234");
}

TEST_CASE("extract_values honors the entity proximity window") {
  Context ctx{std::nullopt,
              "By ancestry, 12.2 percent of the group were Irish while the Italian share "
              "stood at 6.1 percent."};
  // "12.2" sits 6 tokens from "Irish", "6.1" sits 7 away
  auto near_irish = extract_values(ctx, std::string("Irish"), 6);
  REQUIRE(near_irish.size() == 1);
  CHECK(near_irish[0].surface == "12.2");

  // "6.1" sits 4 tokens from "Italian", "12.2" sits 9 away
  auto near_italian = extract_values(ctx, std::string("Italian"), 5);
  REQUIRE(near_italian.size() == 1);
  CHECK(near_italian[0].surface == "6.1");

  auto wide = extract_values(ctx, std::string("Irish"), 20);
  CHECK(wide.size() == 2);

  CHECK(extract_values(ctx, std::string("Swedish"), 10).empty());
  CHECK(extract_values(Context{std::nullopt, "no values at all"}, std::nullopt, 0).empty());
}

TEST_CASE("difference hints cover value pairs and swapped variants") {
  ComplexQuestion q = rebound_question();
  auto chains = extract_hints(q, classify(q));
  REQUIRE(!chains.empty());

  bool found_plain = false;
  bool found_swapped = false;
  bool found_years = false;
  for (const HintChain& chain : chains) {
    REQUIRE(chain.hints.size() == 3);
    CHECK(chain.hints[0].target == ModelId::Squad);
    CHECK(chain.hints[1].target == ModelId::Squad);
    CHECK(chain.hints[2].target == ModelId::Calc);
    CHECK(chain.hints[2].empty_context());
    CHECK(chain.hints[2].answer == "1");
    CHECK(chain.hints[2].vocabulary.contains("diff"));
    CHECK(chain.hints[0].step_index == 1);
    CHECK(chain.hints[2].step_index == 3);

    const auto& vocab = chain.hints[2].vocabulary.items();
    if (chain.hints[0].answer == "2002" && chain.hints[1].answer == "2003" &&
        vocab.size() == 3) {
      found_plain = true;
    }
    if (chain.hints[0].answer == "2003" && chain.hints[1].answer == "2002" &&
        vocab.size() == 3) {
      found_swapped = true;
    }
    if (chain.hints[2].vocabulary.contains("years")) found_years = true;

    // step hints carry the question's essential words
    CHECK(chain.hints[0].vocabulary.contains("rebound"));
    CHECK(chain.hints[0].vocabulary.contains("sector"));
  }
  CHECK(found_plain);
  CHECK(found_swapped);
  CHECK(found_years);
}

TEST_CASE("comparison hints pair entity-adjacent values") {
  ComplexQuestion q = ancestry_question();
  auto chains = extract_hints(q, classify(q));
  // both values fall inside the default window of both entities, so the
  // reversed pairing (6.1 > 12.2) is emitted as a second consistent chain
  REQUIRE(chains.size() == 2);
  const HintChain& chain = chains[0];
  REQUIRE(chain.hints.size() == 3);
  CHECK(chain.hints[0].answer == "12.2");
  CHECK(chain.hints[1].answer == "6.1");
  CHECK(chain.hints[2].answer == "Italian");
  CHECK(chain.hints[2].vocabulary.items() ==
        std::vector<std::string>{"if_then", "12.2", "6.1", "irish", "italian"});
  // entity tokens are dropped from the opposite step's vocabulary
  CHECK_FALSE(chain.hints[0].vocabulary.contains("italian"));
  CHECK(chain.hints[0].vocabulary.contains("irish"));
  CHECK_FALSE(chain.hints[1].vocabulary.contains("irish"));
}

TEST_CASE("complementation hints find the complement number") {
  ComplexQuestion q = bangkok_question();
  auto chains = extract_hints(q, classify(q));
  REQUIRE(chains.size() == 1);
  REQUIRE(chains[0].hints.size() == 2);
  CHECK(chains[0].hints[0].answer == "12.6");
  CHECK(chains[0].hints[1].answer == "87.4");
  CHECK(chains[0].hints[1].vocabulary.items() ==
        std::vector<std::string>{"not", "12.6"});
}

TEST_CASE("composition hints bridge through the title mention") {
  ComplexQuestion q = simpsons_question();
  auto chains = extract_hints(q, classify(q));
  REQUIRE(chains.size() == 1);
  const HintChain& chain = chains[0];
  REQUIRE(chain.hints.size() == 2);
  CHECK(chain.hints[0].context_index == 0);
  CHECK(chain.hints[0].answer == "Raymond S Persi");
  CHECK(chain.hints[1].context_index == 1);
  CHECK(chain.hints[1].answer == "American");
  // the bridge entity's tokens are appended to the second step's vocabulary
  CHECK(chain.hints[1].vocabulary.contains("raymond"));
  CHECK(chain.hints[1].vocabulary.contains("persi"));
}

TEST_CASE("composition without a title mention is skipped") {
  ComplexQuestion q = simpsons_question();
  q.contexts[0].text = "Little Big Girl is an episode of The Simpsons directed by somebody.";
  CHECK(classify(q) == ClassSet{QuestionClass::OutOfScope});
  CHECK_FALSE(in_scope(q));
}

TEST_CASE("conjunction hints put the answer in both documents") {
  ComplexQuestion q = conjunction_question();
  auto chains = extract_hints(q, classify(q));
  REQUIRE(chains.size() == 1);
  REQUIRE(chains[0].hints.size() == 2);
  CHECK(chains[0].hints[0].answer == "John Smith");
  CHECK(chains[0].hints[1].answer == "John Smith");
  CHECK(chains[0].hints[0].context_index == 0);
  CHECK(chains[0].hints[1].context_index == 1);
}

TEST_CASE("calculator hints replay to the gold answer") {
  for (ComplexQuestion q : {rebound_question(), ancestry_question(), bangkok_question()}) {
    auto chains = extract_hints(q, classify(q));
    REQUIRE(!chains.empty());
    for (const HintChain& chain : chains) {
      const Hint& last = chain.hints.back();
      CHECK(last.answer == *q.gold_answer);
    }
  }
}

TEST_CASE("in_scope requires a class and at least one chain") {
  CHECK(in_scope(sendling_question()));
  CHECK(in_scope(ancestry_question()));
  CHECK(in_scope(bangkok_question()));
  CHECK_FALSE(in_scope(touchdown_question()));

  // in-class question whose context lacks consistent values
  ComplexQuestion inconsistent = rebound_question();
  inconsistent.contexts[0].text = "The sector rebounded at some point.";
  CHECK_FALSE(in_scope(inconsistent));

  ComplexQuestion no_gold = rebound_question();
  no_gold.gold_answer = std::nullopt;
  CHECK_FALSE(in_scope(no_gold));
  CHECK_THROWS_AS(extract_hints(no_gold, classify(no_gold)), NoGoldAnswer);
}

TEST_CASE("hints serialize to the documented record shape") {
  ComplexQuestion q = bangkok_question();
  auto classes = classify(q);
  auto chains = extract_hints(q, classes);
  nlohmann::json record = classification_record(q, classes, chains);

  CHECK(record["id"] == "ex3");
  CHECK(record["classes"] == nlohmann::json::array({"complementation"}));
  REQUIRE(record["chains"].size() == 1);
  const auto& first = record["chains"][0][0];
  CHECK(first["context_index"] == 0);
  CHECK(first["answer"] == "12.6");
  const auto& second = record["chains"][0][1];
  CHECK(second["empty"] == true);
  CHECK(second["target"] == "CALC");

  Hint round_trip = hint_from_json(record["chains"][0][1]);
  CHECK(round_trip.empty_context());
  CHECK(round_trip.answer == "87.4");
  CHECK(round_trip.target == ModelId::Calc);
  CHECK(round_trip.vocabulary.contains("not"));
}
