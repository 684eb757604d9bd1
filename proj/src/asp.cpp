#include "symbreak/asp.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "symbreak/errors.hpp"
#include "symbreak/version.hpp"

namespace symbreak {

namespace {

std::vector<Tuple> all_tuples(int arity, int max_vars) {
  std::vector<Tuple> out;
  Tuple current(static_cast<std::size_t>(arity), 0);
  auto walk = [&](auto&& self, int pos) -> void {
    if (pos == arity) {
      out.push_back(current);
      return;
    }
    for (int v = 0; v < max_vars; ++v) {
      current[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1);
    }
  };
  walk(walk, 0);
  return out;
}

Tuple pad_tuple(const Tuple& raw, int k) {
  const int pad = std::max(0, k - static_cast<int>(raw.size()));
  Tuple out(static_cast<std::size_t>(pad), 0);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

}  // namespace

std::string render_tuple(const Tuple& t) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out << ",";
    out << t[i];
  }
  if (t.size() == 1) out << ",";
  out << ")";
  return out.str();
}

EncodingDoc emit_encoding(const Signature& sig, const EncodingOptions& opts) {
  const int k = opts.k.value_or(std::max(1, sig.max_arity()));
  if (k < sig.max_arity())
    throw Error("padding length " + std::to_string(k) +
                " is below the signature's largest arity " + std::to_string(sig.max_arity()));
  if (opts.max_vars < std::max(1, sig.head().arity))
    throw Error("max_vars must cover the head arity");
  if (opts.standalone && opts.max_body < 1)
    throw Error("standalone generator needs max_body >= 1");

  EncodingDoc doc{sig, opts.max_vars, k, opts.standalone, opts.with_defs, opts.max_body,
                  {},  {},            {}, {},             {},             {}, {}, {}};

  std::set<int> arities;
  arities.insert(sig.head().arity);
  for (const auto& p : sig.body()) arities.insert(p.arity);

  for (int arity : arities) {
    if (arity < 1) continue;
    for (const auto& raw : all_tuples(arity, opts.max_vars)) {
      for (int v : raw) doc.var_member.insert({v, raw});
      if (arity >= 2) {
        Tuple padded = pad_tuple(raw, k);
        Tuple sorted = padded;
        std::sort(sorted.begin(), sorted.end());
        doc.padded[raw] = padded;
        doc.sorted_of[padded] = sorted;
        for (int v : sorted) doc.var_member.insert({v, sorted});

        const std::set<int> present(raw.begin(), raw.end());
        for (int y = sorted.front() + 1; y < sorted.back(); ++y)
          if (!present.contains(y)) doc.skipped_facts.insert({sorted, y});
      }
    }
  }

  std::set<Tuple> sorted_tuples;
  for (const auto& [p, s] : doc.sorted_of) sorted_tuples.insert(s);
  for (const auto& t1 : sorted_tuples)
    for (const auto& t2 : sorted_tuples)
      if (t1 < t2) doc.lower_facts.insert({t1, t2});

  doc.header.push_back(std::string("% generated by ") + kToolName + " " + kToolVersion);
  doc.header.push_back("% signature: head " + sig.head().name + "/" +
                       std::to_string(sig.head().arity));
  for (const auto& p : sig.body())
    doc.header.push_back("% signature: body " + p.name + "/" + std::to_string(p.arity));
  doc.header.push_back("% max_vars=" + std::to_string(opts.max_vars) + " k=" + std::to_string(k) +
                       (opts.standalone ? " standalone" : ""));

  auto& facts = doc.fact_lines;
  facts.push_back("% raw tuple to left-padded tuple, arity >= 2");
  for (const auto& [raw, padded] : doc.padded)
    facts.push_back("padded_vars(" + render_tuple(raw) + "," + render_tuple(padded) + ").");
  facts.push_back("% padded tuple sorted ascending");
  for (const auto& [padded, sorted] : doc.sorted_of)
    facts.push_back("ordered_vars(" + render_tuple(padded) + "," + render_tuple(sorted) + ").");
  facts.push_back("% tuple membership");
  for (const auto& [v, t] : doc.var_member)
    facts.push_back("var_member(" + std::to_string(v) + "," + render_tuple(t) + ").");
  facts.push_back("% variables inside the span of a sorted tuple but absent from it");
  for (const auto& [t, v] : doc.skipped_facts)
    facts.push_back("skipped(" + render_tuple(t) + "," + std::to_string(v) + ").");
  facts.push_back("% strict lexicographic order on sorted padded tuples");
  for (const auto& [t1, t2] : doc.lower_facts)
    facts.push_back("lower(" + render_tuple(t1) + "," + render_tuple(t2) + ").");

  auto& rules = doc.rule_lines;
  if (opts.standalone) {
    rules.push_back("% generator: one answer set per valid rule of the space");
    rules.push_back("rule(0).");
    Tuple head_tuple;
    for (int i = 0; i < sig.head().arity; ++i) head_tuple.push_back(i);
    rules.push_back("hlit(0," + sig.head().name + "," + render_tuple(head_tuple) + ").");
    for (const auto& p : sig.body())
      rules.push_back("bpred(" + p.name + "," + std::to_string(p.arity) + ").");
    for (int arity : arities) {
      if (arity < 1) continue;
      for (const auto& raw : all_tuples(arity, opts.max_vars)) {
        rules.push_back("vars(" + render_tuple(raw) + "," + std::to_string(arity) + ").");
        for (std::size_t i = 0; i < raw.size(); ++i)
          rules.push_back("var_pos(" + render_tuple(raw) + "," + std::to_string(i) + "," +
                          std::to_string(raw[i]) + ").");
      }
    }
    rules.push_back("{ blit(Rule,Pred,Vars) } :- rule(Rule), bpred(Pred,Arity), vars(Vars,Arity).");
    rules.push_back(":- rule(Rule), #count{ Pred,Vars : blit(Rule,Pred,Vars) } > " +
                    std::to_string(opts.max_body) + ".");
    rules.push_back("has_body(Rule) :- blit(Rule,_,_).");
    rules.push_back(":- rule(Rule), not has_body(Rule).");
    rules.push_back("in_body(Rule,V) :- blit(Rule,_,Vars), var_member(V,Vars).");
    rules.push_back("used(Rule,V) :- in_body(Rule,V).");
    rules.push_back("used(Rule,V) :- head_var(Rule,V).");
    rules.push_back(":- head_var(Rule,V), not in_body(Rule,V).");
    rules.push_back(
        ":- in_body(Rule,V), not head_var(Rule,V), "
        "#count{ Pred,Vars,I : blit(Rule,Pred,Vars), var_pos(Vars,I,V) } < 2.");
    rules.push_back(":- used(Rule,V), V > 0, not used(Rule,V-1).");
  }
  if (opts.with_defs) {
    rules.push_back("% variable roles");
    rules.push_back("head_var(Rule,V) :- hlit(Rule,_,Vars), var_member(V,Vars).");
    rules.push_back("body_var(Rule,V) :- blit(Rule,_,Vars), var_member(V,Vars), "
                    "not head_var(Rule,V).");
  }
  rules.push_back("% prune rules with an unwitnessed skipped variable");
  rules.push_back("appears(Rule,OrderedVars) :- blit(Rule,_,Vars), padded_vars(Vars,PaddedVars), "
                  "ordered_vars(PaddedVars,OrderedVars).");
  rules.push_back("witnessed(Rule,V,Vars1) :- appears(Rule,Vars1), skipped(Vars1,V), "
                  "lower(Vars2,Vars1), var_member(V,Vars2), appears(Rule,Vars2).");
  rules.push_back(":- body_var(Rule,V), appears(Rule,Vars), skipped(Vars,V), "
                  "not witnessed(Rule,V,Vars).");
  if (opts.standalone) rules.push_back("#show blit/3.");

  return doc;
}

std::string to_text(const EncodingDoc& doc) {
  std::ostringstream out;
  for (const auto& line : doc.header) out << line << "\n";
  out << "\n";
  for (const auto& line : doc.fact_lines) out << line << "\n";
  out << "\n";
  for (const auto& line : doc.rule_lines) out << line << "\n";
  return out.str();
}

bool evaluate_encoding(const Rule& r, const EncodingDoc& doc) {
  auto fits = [&](const Literal& l, const PredicateSym& expected) {
    if (l.pred() != expected) return false;
    if (!l.arity_consistent()) return false;
    return std::all_of(l.args().begin(), l.args().end(), [&](Variable v) {
      return v.index >= 0 && v.index < doc.max_vars;
    });
  };
  if (!fits(r.head(), doc.signature.head()))
    throw Error("head does not fit the encoding: " + render_literal(r.head()));
  for (const auto& l : r.body()) {
    const PredicateSym* p = doc.signature.find(l.pred().name);
    if (!p || !fits(l, *p)) throw Error("body literal does not fit the encoding: " +
                                        render_literal(l));
  }

  auto tuple_of = [](const Literal& l) {
    Tuple t;
    for (Variable v : l.args()) t.push_back(v.index);
    return t;
  };

  const Tuple head_tuple = tuple_of(r.head());
  std::set<int> head_vars;
  for (int v = 0; v < doc.max_vars; ++v)
    if (doc.var_member.contains({v, head_tuple})) head_vars.insert(v);
  if (!head_tuple.empty() && head_vars.empty())
    throw SoundnessError("no membership facts for the head tuple");

  std::set<int> body_vars;
  std::set<Tuple> appears;
  for (const auto& l : r.body()) {
    const Tuple raw = tuple_of(l);
    for (int v : raw)
      if (!head_vars.contains(v)) body_vars.insert(v);
    if (l.arity() >= 2) {
      const auto p = doc.padded.find(raw);
      if (p == doc.padded.end()) throw SoundnessError("missing padded_vars fact");
      const auto s = doc.sorted_of.find(p->second);
      if (s == doc.sorted_of.end()) throw SoundnessError("missing ordered_vars fact");
      appears.insert(s->second);
    }
  }

  for (int v : body_vars) {
    for (const Tuple& t1 : appears) {
      if (!doc.skipped_facts.contains({t1, v})) continue;
      bool witnessed = false;
      for (const Tuple& t2 : appears) {
        if (doc.lower_facts.contains({t2, t1}) && doc.var_member.contains({v, t2})) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) return true;
    }
  }
  return false;
}

std::string find_solver() {
  if (const char* env = std::getenv("SYMBREAK_SOLVER"); env && *env) return env;
  if (const char* path = std::getenv("PATH")) {
    std::string_view rest(path);
    while (!rest.empty()) {
      const auto cut = rest.find(':');
      const std::string_view dir = rest.substr(0, cut);
      rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
      if (dir.empty()) continue;
      std::filesystem::path candidate = std::filesystem::path(dir) / "clingo";
      std::error_code ec;
      if (std::filesystem::is_regular_file(candidate, ec) &&
          ::access(candidate.c_str(), X_OK) == 0)
        return candidate.string();
    }
  }
  return "";
}

SolverCount count_models(const std::string& solver, const std::string& file) {
  const std::string cmd = "'" + solver + "' --models 0 '" + file + "' 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error("could not run solver: " + solver);
  std::string output;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  pclose(pipe);

  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("Models", 0) != 0) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::istringstream field(line.substr(colon + 1));
    std::uint64_t n;
    if (field >> n) return {n, output};
  }
  throw Error("could not parse a model count from solver output:\n" + output);
}

}  // namespace symbreak
