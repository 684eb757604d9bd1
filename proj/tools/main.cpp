#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "symbreak/asp.hpp"
#include "symbreak/canonicalize.hpp"
#include "symbreak/enumerate.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/parser.hpp"
#include "symbreak/safety.hpp"
#include "symbreak/variant.hpp"
#include "symbreak/version.hpp"

namespace {

using namespace symbreak;

enum class Format { Human, Kv, Csv };

Format parse_format(const std::string& name) {
  if (name == "human") return Format::Human;
  if (name == "kv") return Format::Kv;
  if (name == "csv") return Format::Csv;
  throw Error("unknown format: " + name);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string ms_text(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms;
  return out.str();
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

// Re-throws parse errors with the file name in front, "file:line:col: ...".
template <typename F>
auto with_source(const std::string& path, F&& parse) {
  try {
    return parse();
  } catch (const ParseError& e) {
    throw Error((path.empty() || path == "-" ? "<stdin>" : path) + ":" + e.what());
  }
}

std::vector<Rule> read_rules(const std::string& path) {
  auto rules = with_source(path, [&] { return parse_rules(read_input(path)); });
  if (rules.empty()) throw Error("no rules in " + (path == "-" ? "input" : path));
  return rules;
}

// Signature arguments accept either a file name or inline text (line format
// or a JSON document).
Signature load_signature(const std::string& arg) {
  if (std::ifstream in(arg); in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return with_source(arg, [&] { return parse_signature(buf.str()); });
  }
  return parse_signature(arg);
}

SafetyContext context_for(const std::vector<Rule>& rules, std::optional<int> k) {
  if (k) return SafetyContext::with_k(*k);
  int max_arity = 1;
  for (const auto& r : rules) max_arity = std::max(max_arity, r.max_arity());
  return SafetyContext::with_k(max_arity);
}

// Every predicate of every rule must appear in the signature with the same
// arity; the head literal must use the signature's head predicate.
void require_in_signature(const std::vector<Rule>& rules, const Signature& sig) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    auto fail = [&](const PredicateSym& p) {
      throw Error("rule " + std::to_string(i + 1) + ": predicate " + p.name + "/" +
                  std::to_string(p.arity) + " is not in the signature");
    };
    if (r.head().pred() != sig.head()) fail(r.head().pred());
    for (const auto& l : r.body()) {
      const PredicateSym* found = sig.find(l.pred().name);
      if (!found || found->arity != l.pred().arity) fail(l.pred());
    }
  }
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

int cmd_check(const std::string& input, const std::string& sig_arg, std::optional<int> k,
              Format fmt) {
  const auto rules = read_rules(input);
  SafetyContext ctx = context_for(rules, k);
  if (!sig_arg.empty()) {
    const Signature sig = load_signature(sig_arg);
    require_in_signature(rules, sig);
    if (!k) ctx = SafetyContext::for_signature(sig.max_arity());
  }

  bool any_unsafe = false, any_invalid = false;
  std::ostringstream csv;
  if (fmt == Format::Csv) csv << "rule,status,unsafe_vars,detail\n";
  if (fmt == Format::Kv) std::cout << "command=check\nk=" << ctx.k << "\n";

  for (const auto& r : rules) {
    const std::string text = render_rule(r);
    const auto violations = validate(r);
    if (!violations.empty()) {
      any_invalid = true;
      std::ostringstream detail;
      for (std::size_t i = 0; i < violations.size(); ++i)
        detail << (i ? "; " : "") << violation_kind_name(violations[i].kind) << ": "
               << violations[i].detail;
      switch (fmt) {
        case Format::Human:
          std::cout << text << "\n  INVALID\n";
          for (const auto& v : violations)
            std::cout << "    " << violation_kind_name(v.kind) << ": " << v.detail << "\n";
          break;
        case Format::Kv:
          std::cout << "\nrule=" << text << "\nstatus=INVALID\n";
          for (const auto& v : violations)
            std::cout << "violation=" << violation_kind_name(v.kind) << ": " << v.detail << "\n";
          break;
        case Format::Csv:
          csv << csv_quote(text) << ",INVALID,," << csv_quote(detail.str()) << "\n";
          break;
      }
      continue;
    }

    const auto findings = unsafe_findings(r, ctx);
    const auto vars = unsafe_vars(r, ctx);
    if (!findings.empty()) any_unsafe = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < findings.size(); ++i)
      detail << (i ? "; " : "") << var_name(findings[i].var) << " skipped in "
             << render_literal(findings[i].literal) << " with no witness";
    switch (fmt) {
      case Format::Human:
        std::cout << text << "\n";
        if (findings.empty()) {
          std::cout << "  SAFE\n";
        } else {
          std::cout << "  UNSAFE " << render_var_set(vars) << "\n";
          for (const auto& f : findings)
            std::cout << "    " << var_name(f.var) << " skipped in " << render_literal(f.literal)
                      << " with no witness\n";
        }
        break;
      case Format::Kv:
        std::cout << "\nrule=" << text << "\nstatus=" << (findings.empty() ? "SAFE" : "UNSAFE")
                  << "\n";
        if (!findings.empty()) {
          std::cout << "unsafe_vars=" << render_var_set(vars) << "\n";
          for (const auto& f : findings)
            std::cout << "finding=" << var_name(f.var) << " skipped in "
                      << render_literal(f.literal) << "\n";
        }
        break;
      case Format::Csv:
        csv << csv_quote(text) << "," << (findings.empty() ? "SAFE" : "UNSAFE") << ","
            << csv_quote(findings.empty() ? "" : render_var_set(vars)) << ","
            << csv_quote(detail.str()) << "\n";
        break;
    }
  }
  if (fmt == Format::Csv) std::cout << csv.str();
  if (any_invalid) return 2;
  return any_unsafe ? 1 : 0;
}

int cmd_canon(const std::string& input, std::optional<int> k, bool trace, Format fmt) {
  const auto rules = read_rules(input);
  const SafetyContext ctx = context_for(rules, k);

  std::ostringstream csv;
  if (fmt == Format::Csv) csv << "input,result,steps,net,verified\n";
  if (fmt == Format::Kv) std::cout << "command=canon\nk=" << ctx.k << "\n";

  for (const auto& r : rules) {
    const CanonTrace result = safe_variant(r, ctx);
    std::string verified;
    try {
      const auto witness = is_body_variant(r, result.result);
      if (!witness || !is_safe(result.result, ctx))
        throw SoundnessError("safe variant of " + render_rule(r) + " failed verification");
      verified = "ok";
    } catch (const CapError&) {
      verified = "skipped (oracle bound)";
    }

    switch (fmt) {
      case Format::Human:
        std::cout << render_rule(r) << "\n  => " << render_rule(result.result) << "\n";
        if (trace) {
          int n = 0;
          for (const auto& s : result.steps)
            std::cout << "  step " << ++n << ": " << var_name(s.unsafe_var) << " via "
                      << render_literal(s.pivot) << " renamed " << render_renaming(s.sigma)
                      << "\n";
          std::cout << "  net " << render_renaming(result.composed) << ", verified " << verified
                    << "\n";
        }
        break;
      case Format::Kv: {
        std::cout << "\ninput=" << render_rule(r) << "\nresult=" << render_rule(result.result)
                  << "\nsteps=" << result.steps.size() << "\n";
        int n = 0;
        for (const auto& s : result.steps) {
          ++n;
          std::cout << "step" << n << "_var=" << var_name(s.unsafe_var) << "\n"
                    << "step" << n << "_pivot=" << render_literal(s.pivot) << "\n"
                    << "step" << n << "_renaming=" << render_renaming(s.sigma) << "\n";
        }
        std::cout << "net=" << render_renaming(result.composed) << "\nverified=" << verified
                  << "\n";
        break;
      }
      case Format::Csv:
        csv << csv_quote(render_rule(r)) << "," << csv_quote(render_rule(result.result)) << ","
            << result.steps.size() << "," << csv_quote(render_renaming(result.composed)) << ","
            << csv_quote(verified) << "\n";
        break;
    }
  }
  if (fmt == Format::Csv) std::cout << csv.str();
  return 0;
}

int cmd_variant(const std::string& file_a, const std::string& file_b, bool hypothesis,
                Format fmt) {
  const auto rules_a = read_rules(file_a);
  const auto rules_b = read_rules(file_b);

  if (hypothesis) {
    const Hypothesis a(rules_a), b(rules_b);
    const auto pairing = is_hypothesis_variant(a, b);
    switch (fmt) {
      case Format::Human:
        if (!pairing) {
          std::cout << "not a hypothesis variant\n";
        } else {
          std::cout << "hypothesis variant\n";
          for (std::size_t i = 0; i < pairing->rule_map.size(); ++i)
            std::cout << "  " << render_rule(a.rules()[i]) << "\n    -> "
                      << render_rule(b.rules()[pairing->rule_map[i]]) << " via "
                      << render_renaming(pairing->witnesses[i]) << "\n";
        }
        break;
      case Format::Kv:
        std::cout << "variant=" << (pairing ? "true" : "false") << "\n";
        if (pairing)
          for (std::size_t i = 0; i < pairing->rule_map.size(); ++i)
            std::cout << "\nfrom=" << render_rule(a.rules()[i])
                      << "\nto=" << render_rule(b.rules()[pairing->rule_map[i]])
                      << "\nwitness=" << render_renaming(pairing->witnesses[i]) << "\n";
        break;
      case Format::Csv:
        std::cout << "variant,from,to,witness\n";
        if (!pairing) {
          std::cout << "false,,,\n";
        } else {
          for (std::size_t i = 0; i < pairing->rule_map.size(); ++i)
            std::cout << "true," << csv_quote(render_rule(a.rules()[i])) << ","
                      << csv_quote(render_rule(b.rules()[pairing->rule_map[i]])) << ","
                      << csv_quote(render_renaming(pairing->witnesses[i])) << "\n";
        }
        break;
    }
    return pairing ? 0 : 1;
  }

  if (rules_a.size() != 1 || rules_b.size() != 1)
    throw Error("rule mode expects exactly one rule per input (use --hypothesis for sets)");
  const auto witness = is_body_variant(rules_a[0], rules_b[0]);
  switch (fmt) {
    case Format::Human:
      if (witness)
        std::cout << "body variant via " << render_renaming(witness->sigma) << "\n";
      else
        std::cout << "not a body variant\n";
      break;
    case Format::Kv:
      std::cout << "variant=" << (witness ? "true" : "false") << "\n";
      if (witness) std::cout << "witness=" << render_renaming(witness->sigma) << "\n";
      break;
    case Format::Csv:
      std::cout << "variant,witness\n"
                << (witness ? "true" : "false") << ","
                << csv_quote(witness ? render_renaming(witness->sigma) : "") << "\n";
      break;
  }
  return witness ? 0 : 1;
}

int cmd_enumerate(const std::string& sig_arg, int max_body, int max_vars, std::optional<int> k,
                  bool distinct_vars, int jobs, bool classes, bool no_symmetry,
                  const std::string& out_file, Format fmt) {
  SpaceConfig cfg{load_signature(sig_arg), max_body, max_vars, k, !distinct_vars, jobs};
  cfg.check();

  if (!out_file.empty()) {
    const SafetyContext ctx = cfg.context();
    std::ostringstream dump;
    for (const Rule& r : enumerate_rules(cfg))
      if (no_symmetry || is_safe(r, ctx)) dump << render_rule(r) << "\n";
    write_out(out_file, dump.str());
    if (out_file == "-") return 0;  // rules went to stdout, skip the stats
  }

  const SpaceStats stats = space_stats(cfg, classes);
  switch (fmt) {
    case Format::Human: {
      std::cout << "total " << stats.total << "\nsafe " << stats.safe << "\n";
      if (stats.classes)
        std::cout << "classes " << *stats.classes << "\nmin_safe_per_class "
                  << *stats.min_safe_per_class << "\nmax_safe_per_class "
                  << *stats.max_safe_per_class << "\n";
      break;
    }
    case Format::Kv: {
      std::cout << "command=enumerate\nhead=" << cfg.signature.head().name << "/"
                << cfg.signature.head().arity << "\n";
      for (const auto& p : cfg.signature.body())
        std::cout << "body=" << p.name << "/" << p.arity << "\n";
      std::cout << "max_body=" << cfg.max_body << "\nmax_vars=" << cfg.max_vars
                << "\nk=" << cfg.resolved_k() << "\nrepeated_vars="
                << (cfg.allow_repeated_vars ? "true" : "false") << "\ntotal=" << stats.total
                << "\nsafe=" << stats.safe << "\n";
      if (stats.classes)
        std::cout << "classes=" << *stats.classes << "\nmin_safe_per_class="
                  << *stats.min_safe_per_class << "\nmax_safe_per_class="
                  << *stats.max_safe_per_class << "\n";
      std::cout << "gen_ms=" << ms_text(stats.gen_ms) << "\nprune_ms=" << ms_text(stats.prune_ms)
                << "\n";
      break;
    }
    case Format::Csv: {
      std::cout << "vars,total,safe,classes,max_safe_per_class,gen_ms,prune_ms\n"
                << cfg.max_vars << "," << stats.total << "," << stats.safe << ",";
      if (stats.classes)
        std::cout << *stats.classes << "," << *stats.max_safe_per_class;
      else
        std::cout << ",";
      std::cout << "," << ms_text(stats.gen_ms) << "," << ms_text(stats.prune_ms) << "\n";
      break;
    }
  }
  return 0;
}

int cmd_bench(const std::string& sig_arg, int max_body, int vars_from, int vars_to,
              std::optional<int> k, double budget_ms, Format fmt) {
  SpaceConfig base{load_signature(sig_arg), max_body, std::max(1, vars_from), k};
  const auto rows = benchmark_scaling(base, vars_from, vars_to, budget_ms);
  switch (fmt) {
    case Format::Human:
      for (const auto& row : rows)
        std::cout << "vars " << row.vars << ": total " << row.total << ", safe " << row.safe
                  << ", gen with pruning " << ms_text(row.gen_with_ms) << " ms, without "
                  << ms_text(row.gen_without_ms) << " ms\n";
      break;
    case Format::Kv:
      std::cout << "command=bench\n";
      for (const auto& row : rows)
        std::cout << "\nvars=" << row.vars << "\ntotal=" << row.total << "\nsafe=" << row.safe
                  << "\ngen_with_ms=" << ms_text(row.gen_with_ms)
                  << "\ngen_without_ms=" << ms_text(row.gen_without_ms) << "\n";
      break;
    case Format::Csv:
      std::cout << "vars,total,safe,gen_with_ms,gen_without_ms\n";
      for (const auto& row : rows)
        std::cout << row.vars << "," << row.total << "," << row.safe << ","
                  << ms_text(row.gen_with_ms) << "," << ms_text(row.gen_without_ms) << "\n";
      break;
  }
  return 0;
}

int cmd_emit_asp(const std::string& sig_arg, int max_vars, std::optional<int> k, bool standalone,
                 bool no_defs, int max_body, const std::string& out_file) {
  const Signature sig = load_signature(sig_arg);
  EncodingOptions opts;
  opts.max_vars = max_vars;
  opts.k = k;
  opts.standalone = standalone;
  opts.with_defs = !no_defs;
  opts.max_body = max_body;
  write_out(out_file, to_text(emit_encoding(sig, opts)));
  return 0;
}

int cmd_graph(const std::string& input, Format fmt) {
  const Graph g = with_source(input, [&] { return parse_graph(read_input(input)); });
  const GraphRuleResult result = graph_to_rule(g);
  switch (fmt) {
    case Format::Human:
      if (result.dropped_isolated_nodes)
        std::cerr << "warning: graph has isolated nodes, the rule only covers nodes with edges\n";
      std::cout << render_rule(result.rule) << "\n";
      break;
    case Format::Kv:
      std::cout << "rule=" << render_rule(result.rule) << "\ndropped_isolated_nodes="
                << (result.dropped_isolated_nodes ? "true" : "false") << "\n";
      break;
    case Format::Csv:
      std::cout << "rule,dropped_isolated_nodes\n"
                << csv_quote(render_rule(result.rule)) << ","
                << (result.dropped_isolated_nodes ? "true" : "false") << "\n";
      break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule-space symmetry tools: safety checking, canonical safe variants,\n"
               "variant detection, enumeration and ASP encoding generation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  std::string input = "-", input_b, sig_arg, out_file, format = "human";
  std::optional<int> k;
  int max_body = 3, max_vars = 3, jobs = 1, vars_from = 1, vars_to = 4;
  double budget_ms = 0;
  bool trace = false, hypothesis = false, classes = false, standalone = false, no_defs = false,
       no_symmetry = false, distinct_vars = false;

  const auto format_check = CLI::IsMember({"human", "kv", "csv"});

  auto* check = app.add_subcommand("check", "Report unsafe variables per rule");
  check->add_option("rules", input, "rule file, or - for stdin");
  check->add_option("signature", sig_arg, "optional signature file fixing predicates and k");
  check->add_option("--k", k, "padding length for tuple comparison");
  check->add_option("--format", format, "human, kv or csv")->check(format_check);

  auto* canon = app.add_subcommand("canon", "Rewrite each rule into its safe variant");
  canon->add_option("rules", input, "rule file, or - for stdin");
  canon->add_option("--k", k, "padding length for tuple comparison");
  canon->add_flag("--trace", trace, "print each renaming step");
  canon->add_option("--format", format, "human, kv or csv")->check(format_check);

  auto* variant = app.add_subcommand("variant", "Decide whether two inputs differ only by renaming");
  variant->add_option("a", input, "first rule file")->required();
  variant->add_option("b", input_b, "second rule file")->required();
  variant->add_flag("--hypothesis", hypothesis, "compare rule sets instead of single rules");
  variant->add_option("--format", format, "human, kv or csv")->check(format_check);

  auto* enumerate = app.add_subcommand("enumerate", "Count or list all valid rules of a space");
  enumerate->add_option("signature", sig_arg, "signature file or inline text")->required();
  enumerate->add_option("--max-body", max_body, "largest body size")->required();
  enumerate->add_option("--max-vars", max_vars, "number of usable variables")->required();
  enumerate->add_option("--k", k, "padding length for tuple comparison");
  enumerate->add_option("--jobs", jobs, "worker threads");
  enumerate->add_flag("--classes", classes, "partition the space into variant classes");
  enumerate->add_flag("--no-symmetry", no_symmetry, "dump every valid rule, not just safe ones");
  enumerate->add_flag("--distinct-vars", distinct_vars,
                      "forbid repeated variables within a literal");
  enumerate->add_option("--out", out_file, "write the rule stream here, - for stdout");
  enumerate->add_option("--format", format, "human, kv or csv")->check(format_check);

  auto* bench = app.add_subcommand("bench", "Sweep max_vars and report space growth");
  bench->add_option("signature", sig_arg, "signature file or inline text")->required();
  bench->add_option("--max-body", max_body, "largest body size")->required();
  bench->add_option("--vars-from", vars_from, "first max_vars value")->required();
  bench->add_option("--vars-to", vars_to, "last max_vars value")->required();
  bench->add_option("--k", k, "padding length for tuple comparison");
  bench->add_option("--budget-ms", budget_ms, "stop the sweep after this much time");
  bench->add_option("--format", format, "human, kv or csv")->check(format_check);

  auto* emit = app.add_subcommand("emit-asp", "Write the pruning encoding for a rule space");
  emit->add_option("signature", sig_arg, "signature file or inline text")->required();
  emit->add_option("--max-vars", max_vars, "number of usable variables")->required();
  emit->add_option("--k", k, "padding length for tuple comparison");
  emit->add_flag("--standalone", standalone, "add a generator so answer sets are the safe rules");
  emit->add_flag("--no-defs", no_defs, "omit head_var/body_var definitions for embedding");
  emit->add_option("--max-body", max_body, "body bound for the standalone generator");
  emit->add_option("--out", out_file, "output file, - for stdout");

  auto* graph = app.add_subcommand("graph2rule", "Encode an edge list as a rule body");
  graph->add_option("input", input, "graph file, or - for stdin");
  graph->add_option("--format", format, "human, kv or csv")->check(format_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format fmt = parse_format(format);
    if (app.got_subcommand(check)) return cmd_check(input, sig_arg, k, fmt);
    if (app.got_subcommand(canon)) return cmd_canon(input, k, trace, fmt);
    if (app.got_subcommand(variant)) return cmd_variant(input, input_b, hypothesis, fmt);
    if (app.got_subcommand(enumerate))
      return cmd_enumerate(sig_arg, max_body, max_vars, k, distinct_vars, jobs, classes,
                           no_symmetry, out_file, fmt);
    if (app.got_subcommand(bench))
      return cmd_bench(sig_arg, max_body, vars_from, vars_to, k, budget_ms, fmt);
    if (app.got_subcommand(emit))
      return cmd_emit_asp(sig_arg, max_vars, k, standalone, no_defs, max_body,
                          out_file.empty() ? "-" : out_file);
    if (app.got_subcommand(graph)) return cmd_graph(input, fmt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
