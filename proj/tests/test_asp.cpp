#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "support.hpp"
#include "symbreak/asp.hpp"
#include "symbreak/errors.hpp"

using namespace symbreak;
using testsupport::R;

namespace {

bool has_line(const std::vector<std::string>& lines, const std::string& want) {
  return std::find(lines.begin(), lines.end(), want) != lines.end();
}

bool has_line_containing(const std::vector<std::string>& lines, const std::string& part) {
  return std::any_of(lines.begin(), lines.end(),
                     [&](const std::string& l) { return l.find(part) != std::string::npos; });
}

}  // namespace

TEST_CASE("tuple rendering") {
  CHECK(render_tuple({}) == "()");
  CHECK(render_tuple({4}) == "(4,)");
  CHECK(render_tuple({0, 2}) == "(0,2)");
  CHECK(render_tuple({0, 0, 3}) == "(0,0,3)");
}

TEST_CASE("fact families for a two-variable space") {
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}});
  const EncodingDoc doc = emit_encoding(sig, {.max_vars = 2});

  CHECK(doc.k == 2);
  CHECK(doc.max_vars == 2);

  // Four raw pairs, identity padding at k = arity.
  REQUIRE(doc.padded.size() == 4);
  CHECK(doc.padded.at({1, 0}) == Tuple{1, 0});
  CHECK(doc.sorted_of.at({1, 0}) == Tuple{0, 1});
  CHECK(doc.sorted_of.at({0, 1}) == Tuple{0, 1});
  CHECK(doc.sorted_of.at({1, 1}) == Tuple{1, 1});

  // Membership covers head tuples, raw body tuples and sorted tuples.
  CHECK(doc.var_member.contains({0, Tuple{0}}));
  CHECK(doc.var_member.contains({1, Tuple{1}}));
  CHECK(doc.var_member.contains({0, Tuple{1, 0}}));
  CHECK(doc.var_member.contains({1, Tuple{1, 0}}));
  CHECK(!doc.var_member.contains({1, Tuple{0, 0}}));
  CHECK(doc.var_member.size() == 8);

  // Two variables leave no room for a skip.
  CHECK(doc.skipped_facts.empty());

  // Three sorted tuples in a chain.
  CHECK(doc.lower_facts.size() == 3);
  CHECK(doc.lower_facts.contains({Tuple{0, 0}, Tuple{0, 1}}));
  CHECK(doc.lower_facts.contains({Tuple{0, 0}, Tuple{1, 1}}));
  CHECK(doc.lower_facts.contains({Tuple{0, 1}, Tuple{1, 1}}));

  CHECK(has_line(doc.fact_lines, "padded_vars((1,0),(1,0))."));
  CHECK(has_line(doc.fact_lines, "ordered_vars((1,0),(0,1))."));
  CHECK(has_line(doc.fact_lines, "var_member(0,(0,))."));
  CHECK(has_line(doc.fact_lines, "lower((0,0),(0,1))."));
}

TEST_CASE("a third variable introduces skipped facts") {
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}});
  const EncodingDoc doc = emit_encoding(sig, {.max_vars = 3});
  CHECK(doc.skipped_facts == std::set<std::pair<Tuple, int>>{{{0, 2}, 1}});
  CHECK(has_line(doc.fact_lines, "skipped((0,2),1)."));
}

TEST_CASE("padding beyond the arity") {
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}});
  const EncodingDoc doc = emit_encoding(sig, {.max_vars = 2, .k = 4});
  CHECK(doc.padded.at({1, 0}) == Tuple{0, 0, 1, 0});
  CHECK(doc.sorted_of.at({0, 0, 1, 0}) == Tuple{0, 0, 0, 1});
  CHECK(has_line(doc.fact_lines, "padded_vars((1,0),(0,0,1,0))."));
}

TEST_CASE("document sorting agrees with the literal order") {
  // The document pads and then sorts; the safety calculus sorts and then
  // pads. Zero-prefix padding makes the two compositions equal.
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}, {"q", 3}});
  const EncodingDoc doc = emit_encoding(sig, {.max_vars = 3});
  REQUIRE(doc.k == 3);
  const SafetyContext ctx{3};
  for (const auto& [raw, padded] : doc.padded) {
    std::vector<Variable> args;
    for (int v : raw) args.emplace_back(v);
    const Literal l(raw.size() == 2 ? "p" : "q", args);
    Tuple via_literal;
    for (Variable v : pre_pad(l, ctx).vars) via_literal.push_back(v.index);
    CHECK(doc.sorted_of.at(padded) == via_literal);
  }
}

TEST_CASE("header and rule sections") {
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}});
  const EncodingDoc doc = emit_encoding(sig, {.max_vars = 2});

  REQUIRE(!doc.header.empty());
  CHECK(doc.header[0] == "% generated by symbreak 0.1.0");
  CHECK(has_line(doc.header, "% signature: head h/1"));
  CHECK(has_line(doc.header, "% signature: body p/2"));
  CHECK(has_line(doc.header, "% max_vars=2 k=2"));

  CHECK(has_line_containing(doc.rule_lines, "head_var(Rule,V) :- hlit(Rule,_,Vars)"));
  CHECK(has_line_containing(doc.rule_lines, "body_var(Rule,V) :- blit(Rule,_,Vars)"));
  CHECK(has_line_containing(doc.rule_lines,
                            "appears(Rule,OrderedVars) :- blit(Rule,_,Vars), "
                            "padded_vars(Vars,PaddedVars), ordered_vars(PaddedVars,OrderedVars)"));
  CHECK(has_line_containing(doc.rule_lines,
                            "witnessed(Rule,V,Vars1) :- appears(Rule,Vars1), skipped(Vars1,V), "
                            "lower(Vars2,Vars1), var_member(V,Vars2), appears(Rule,Vars2)"));
  CHECK(has_line_containing(doc.rule_lines,
                            ":- body_var(Rule,V), appears(Rule,Vars), skipped(Vars,V), "
                            "not witnessed(Rule,V,Vars)"));
  CHECK(!has_line_containing(doc.rule_lines, "blit(Rule,Pred,Vars) } :-"));  // no generator

  EncodingOptions bare{.max_vars = 2};
  bare.with_defs = false;
  const EncodingDoc undef = emit_encoding(sig, bare);
  CHECK(!has_line_containing(undef.rule_lines, "head_var(Rule,V) :-"));
  CHECK(has_line_containing(undef.rule_lines, ":- body_var(Rule,V)"));
}

TEST_CASE("standalone generator") {
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}});
  EncodingOptions opts{.max_vars = 2};
  opts.standalone = true;
  opts.max_body = 2;
  const EncodingDoc doc = emit_encoding(sig, opts);

  CHECK(has_line(doc.header, "% max_vars=2 k=2 standalone"));
  CHECK(has_line(doc.rule_lines, "rule(0)."));
  CHECK(has_line(doc.rule_lines, "hlit(0,h,(0,))."));
  CHECK(has_line(doc.rule_lines, "bpred(p,2)."));
  CHECK(has_line(doc.rule_lines, "vars((0,1),2)."));
  CHECK(has_line(doc.rule_lines, "var_pos((0,1),0,0)."));
  CHECK(has_line(doc.rule_lines, "var_pos((0,1),1,1)."));
  CHECK(has_line(doc.rule_lines,
                 "{ blit(Rule,Pred,Vars) } :- rule(Rule), bpred(Pred,Arity), vars(Vars,Arity)."));
  CHECK(has_line_containing(doc.rule_lines, "#count{ Pred,Vars : blit(Rule,Pred,Vars) } > 2"));
  CHECK(has_line_containing(doc.rule_lines, ":- head_var(Rule,V), not in_body(Rule,V)."));
  CHECK(has_line_containing(doc.rule_lines, ":- used(Rule,V), V > 0, not used(Rule,V-1)."));
  CHECK(has_line(doc.rule_lines, "#show blit/3."));

  CHECK_THROWS_AS(emit_encoding(sig, {.max_vars = 2, .standalone = true, .max_body = 0}), Error);
}

TEST_CASE("text layout") {
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}});
  const EncodingDoc doc = emit_encoding(sig, {.max_vars = 2});
  const std::string text = to_text(doc);
  CHECK(text.rfind("% generated by symbreak 0.1.0\n", 0) == 0);
  CHECK(text.find("\n\n% raw tuple to left-padded tuple, arity >= 2\n") != std::string::npos);
  CHECK(text.find("\n\n% variable roles\n") != std::string::npos);
  CHECK(text.find("\n% prune rules with an unwitnessed skipped variable\n") != std::string::npos);
  CHECK(text.back() == '\n');

  // Byte determinism.
  CHECK(to_text(emit_encoding(sig, {.max_vars = 2})) == text);
}

TEST_CASE("encoding options are validated") {
  const Signature sig(PredicateSym{"h", 2}, {{"p", 2}});
  CHECK_THROWS_AS(emit_encoding(sig, {.max_vars = 1}), Error);  // below head arity
  CHECK_THROWS_AS(emit_encoding(sig, {.max_vars = 2, .k = 1}), Error);
}

TEST_CASE("native evaluation matches the safety verdict") {
  const std::vector<SpaceConfig> configs{
      {Signature(PredicateSym{"h", 1}, {{"p", 2}}), 2, 3},
      {Signature(PredicateSym{"h", 2}, {{"p", 2}}), 2, 4},
      {Signature(PredicateSym{"h", 1}, {{"p", 2}, {"q", 1}}), 3, 3},
  };
  for (const auto& cfg : configs) {
    const EncodingDoc doc = emit_encoding(cfg.signature, {.max_vars = cfg.max_vars});
    const SafetyContext ctx = cfg.context();
    REQUIRE(doc.k == ctx.k);
    for (const Rule& r : testsupport::naive_enumerate(cfg))
      CHECK(evaluate_encoding(r, doc) == !is_safe(r, ctx));
  }
}

TEST_CASE("evaluation rejects rules outside the document") {
  const Signature sig(PredicateSym{"h", 1}, {{"p", 2}});
  const EncodingDoc doc = emit_encoding(sig, {.max_vars = 2});
  CHECK_THROWS_AS(evaluate_encoding(R("g(A) :- p(A,A)."), doc), Error);
  CHECK_THROWS_AS(evaluate_encoding(R("h(A,B) :- p(A,B)."), doc), Error);
  CHECK_THROWS_AS(evaluate_encoding(R("h(A) :- q(A,A)."), doc), Error);
  CHECK_THROWS_AS(evaluate_encoding(R("h(A) :- p(A,C), p(C,A)."), doc), Error);  // C out of range
  CHECK_NOTHROW(evaluate_encoding(R("h(A) :- p(A,B), p(B,A)."), doc));
}

TEST_CASE("solver discovery") {
  ::setenv("SYMBREAK_SOLVER", "/opt/custom/clingo", 1);
  CHECK(find_solver() == "/opt/custom/clingo");
  ::unsetenv("SYMBREAK_SOLVER");
  // Without the override this returns a clingo from PATH or empty; both are
  // fine, it just must not throw.
  CHECK_NOTHROW(find_solver());
}

TEST_CASE("model counting via a stub solver") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::current_path() / "symbreak_asp_test";
  fs::create_directories(dir);
  const fs::path input = dir / "input.lp";
  std::ofstream(input) << "p.\n";

  const fs::path good = dir / "good_solver.sh";
  std::ofstream(good) << "#!/bin/sh\necho 'Answer: 1'\necho 'Models       : 7'\n";
  fs::permissions(good, fs::perms::owner_all);
  const SolverCount counted = count_models(good.string(), input.string());
  CHECK(counted.models == 7);
  CHECK(counted.raw_output.find("Models") != std::string::npos);

  const fs::path bad = dir / "bad_solver.sh";
  std::ofstream(bad) << "#!/bin/sh\necho 'no counts here'\n";
  fs::permissions(bad, fs::perms::owner_all);
  CHECK_THROWS_AS(count_models(bad.string(), input.string()), Error);

  fs::remove_all(dir);
}
