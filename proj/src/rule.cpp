#include "symbreak/rule.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "symbreak/errors.hpp"

namespace symbreak {

std::string var_name(Variable v) {
  if (v.index >= 0 && v.index < 26) return std::string(1, static_cast<char>('A' + v.index));
  return "V" + std::to_string(v.index);
}

std::optional<Variable> var_from_name(std::string_view name) {
  if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'Z') return Variable{name[0] - 'A'};
  if (name.size() >= 2 && name[0] == 'V') {
    int value = 0;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      if (value > 100000000) return std::nullopt;
      value = value * 10 + (c - '0');
    }
    return Variable{value};
  }
  return std::nullopt;
}

bool is_valid_pred_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Literal::Literal(PredicateSym pred, std::vector<Variable> args)
    : pred_(std::move(pred)), args_(std::move(args)) {}

Literal::Literal(std::string name, std::vector<Variable> args)
    : pred_{std::move(name), static_cast<int>(args.size())}, args_(std::move(args)) {}

std::set<Variable> Literal::vars() const {
  return std::set<Variable>(args_.begin(), args_.end());
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.pred_.name <=> b.pred_.name; c != 0) return c;
  if (auto c = a.args_ <=> b.args_; c != 0) return c;
  return a.pred_.arity <=> b.pred_.arity;
}

Rule::Rule(Literal head, std::vector<Literal> body)
    : head_(std::move(head)), body_(std::move(body)) {
  std::sort(body_.begin(), body_.end());
  body_.erase(std::unique(body_.begin(), body_.end()), body_.end());
}

std::vector<Literal> Rule::body_geq2() const {
  std::vector<Literal> out;
  for (const auto& l : body_)
    if (l.arity() >= 2) out.push_back(l);
  return out;
}

std::set<Variable> Rule::vars() const {
  std::set<Variable> out = head_.vars();
  for (const auto& l : body_) out.merge(l.vars());
  return out;
}

std::set<Variable> Rule::head_vars() const { return head_.vars(); }

std::set<Variable> Rule::body_vars() const {
  std::set<Variable> out;
  for (const auto& l : body_) out.merge(l.vars());
  return out;
}

std::set<Variable> Rule::body_only_vars() const {
  std::set<Variable> out = body_vars();
  for (Variable v : head_vars()) out.erase(v);
  return out;
}

int Rule::max_arity() const {
  int m = head_.arity();
  for (const auto& l : body_) m = std::max(m, l.arity());
  return m;
}

std::strong_ordering operator<=>(const Rule& a, const Rule& b) {
  if (auto c = a.head_ <=> b.head_; c != 0) return c;
  return a.body_ <=> b.body_;
}

Hypothesis::Hypothesis(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::sort(rules_.begin(), rules_.end());
  rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
}

Renaming::Renaming(const std::map<Variable, Variable>& mapping) {
  for (const auto& [from, to] : mapping)
    if (from != to) map_.emplace(from, to);
  std::set<Variable> image;
  for (const auto& [from, to] : map_)
    if (!image.insert(to).second)
      throw std::invalid_argument("renaming is not injective: two variables map to " +
                                  var_name(to));
}

Variable Renaming::operator()(Variable v) const {
  auto it = map_.find(v);
  return it == map_.end() ? v : it->second;
}

Literal Renaming::operator()(const Literal& l) const {
  std::vector<Variable> args;
  args.reserve(l.args().size());
  for (Variable v : l.args()) args.push_back((*this)(v));
  return Literal(l.pred(), std::move(args));
}

Renaming Renaming::inverse() const {
  std::map<Variable, Variable> inv;
  for (const auto& [from, to] : map_) inv.emplace(to, from);
  return Renaming(inv);
}

Renaming Renaming::then(const Renaming& next) const {
  std::map<Variable, Variable> out;
  for (const auto& [from, to] : map_) out[from] = next(to);
  for (const auto& [from, to] : next.map_)
    if (!map_.contains(from)) out[from] = to;
  return Renaming(out);
}

bool Renaming::fixes(const std::set<Variable>& vars) const {
  return std::none_of(vars.begin(), vars.end(),
                      [this](Variable v) { return map_.contains(v); });
}

bool Renaming::injective_on(const std::set<Variable>& vars) const {
  std::set<Variable> image;
  for (Variable v : vars)
    if (!image.insert((*this)(v)).second) return false;
  return true;
}

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::ArityMismatch: return "arity mismatch";
    case ViolationKind::EmptyBody: return "empty body";
    case ViolationKind::NotHeadConnected: return "head variable not in body";
    case ViolationKind::SingletonVariable: return "singleton variable";
    case ViolationKind::HeadVarsNotSmallest: return "head variables not smallest";
    case ViolationKind::VariableGap: return "variable index gap";
  }
  return "unknown";
}

namespace {

std::string join_vars(const std::set<Variable>& vs) {
  std::ostringstream out;
  bool first = true;
  for (Variable v : vs) {
    if (!first) out << ",";
    out << var_name(v);
    first = false;
  }
  return out.str();
}

}  // namespace

std::vector<Violation> validate(const Rule& r) {
  std::vector<Violation> out;

  auto check_arity = [&](const Literal& l) {
    if (!l.arity_consistent())
      out.push_back({ViolationKind::ArityMismatch,
                     l.pred().name + " declares arity " + std::to_string(l.arity()) +
                         " but has " + std::to_string(l.args().size()) + " arguments"});
  };
  check_arity(r.head());
  for (const auto& l : r.body()) check_arity(l);
  if (!out.empty()) return out;

  if (r.body().empty()) out.push_back({ViolationKind::EmptyBody, "rule has no body literals"});

  std::set<Variable> disconnected;
  const auto body_vars = r.body_vars();
  for (Variable v : r.head_vars())
    if (!body_vars.contains(v)) disconnected.insert(v);
  if (!disconnected.empty())
    out.push_back({ViolationKind::NotHeadConnected,
                   "head variables missing from body: " + join_vars(disconnected)});

  std::map<Variable, int> occurrences;
  for (Variable v : r.head().args()) ++occurrences[v];
  for (const auto& l : r.body())
    for (Variable v : l.args()) ++occurrences[v];

  std::set<Variable> singletons;
  for (const auto& [v, n] : occurrences)
    if (n == 1) singletons.insert(v);
  if (!singletons.empty())
    out.push_back({ViolationKind::SingletonVariable,
                   "variables with a single occurrence: " + join_vars(singletons)});

  const auto head_vars = r.head_vars();
  const int h = static_cast<int>(head_vars.size());
  bool head_smallest = true;
  for (Variable v : head_vars)
    if (v.index < 0 || v.index >= h) head_smallest = false;
  if (!head_smallest)
    out.push_back({ViolationKind::HeadVarsNotSmallest,
                   "head variables are " + join_vars(head_vars) + ", expected indices 0.." +
                       std::to_string(h - 1)});

  const auto vars = r.vars();
  const int m = static_cast<int>(vars.size());
  std::set<Variable> expected_missing;
  bool contiguous = true;
  for (Variable v : vars)
    if (v.index < 0 || v.index >= m) contiguous = false;
  if (!contiguous) {
    for (int i = 0; i < m; ++i)
      if (!vars.contains(Variable{i})) expected_missing.insert(Variable{i});
    out.push_back({ViolationKind::VariableGap,
                   "variable indices skip " + join_vars(expected_missing)});
  }

  return out;
}

bool is_valid(const Rule& r) { return validate(r).empty(); }

Rule normalize(const Rule& r) {
  const auto violations = validate(r);
  if (violations.empty()) return r;

  for (const auto& v : violations) {
    switch (v.kind) {
      case ViolationKind::ArityMismatch:
      case ViolationKind::EmptyBody:
      case ViolationKind::NotHeadConnected:
      case ViolationKind::SingletonVariable:
        throw NormalizeError(std::string("cannot normalize: ") + violation_kind_name(v.kind) +
                             " (" + v.detail + ")");
      default:
        break;
    }
  }

  std::map<Variable, Variable> mapping;
  int next = 0;
  auto assign = [&](Variable v) {
    if (!mapping.contains(v)) mapping.emplace(v, Variable{next++});
  };
  for (Variable v : r.head().args()) assign(v);
  for (const auto& l : r.body())
    for (Variable v : l.args()) assign(v);

  return apply_renaming(r, Renaming(mapping));
}

Rule apply_renaming(const Rule& r, const Renaming& sigma) {
  if (!sigma.injective_on(r.vars()))
    throw std::invalid_argument("renaming collapses distinct variables of the rule");
  std::vector<Literal> body;
  body.reserve(r.body().size());
  for (const auto& l : r.body()) body.push_back(sigma(l));
  return Rule(sigma(r.head()), std::move(body));
}

Literal substitute(const Literal& l, const std::map<Variable, Variable>& mapping) {
  std::vector<Variable> args;
  args.reserve(l.args().size());
  for (Variable v : l.args()) {
    auto it = mapping.find(v);
    args.push_back(it == mapping.end() ? v : it->second);
  }
  return Literal(l.pred(), std::move(args));
}

}  // namespace symbreak
