#include "symbreak/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "symbreak/errors.hpp"

namespace symbreak {

Signature::Signature(PredicateSym head, std::vector<PredicateSym> body)
    : head_(std::move(head)), body_(std::move(body)) {
  auto check = [](const PredicateSym& p) {
    if (!is_valid_pred_name(p.name)) throw Error("invalid predicate name: " + p.name);
    if (p.arity < 0) throw Error("negative arity for " + p.name);
  };
  check(head_);
  if (body_.empty()) throw Error("signature needs at least one body predicate");
  for (const auto& p : body_) check(p);
  std::sort(body_.begin(), body_.end(),
            [](const PredicateSym& a, const PredicateSym& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < body_.size(); ++i)
    if (body_[i - 1].name == body_[i].name)
      throw Error("duplicate predicate: " + body_[i].name);
  if (find(head_.name)) throw Error("duplicate predicate: " + head_.name);
}

const PredicateSym* Signature::find(std::string_view name) const {
  auto it = std::lower_bound(body_.begin(), body_.end(), name,
                             [](const PredicateSym& p, std::string_view n) { return p.name < n; });
  if (it != body_.end() && it->name == name) return &*it;
  return nullptr;
}

int Signature::max_arity() const {
  int m = head_.arity;
  for (const auto& p : body_) m = std::max(m, p.arity);
  return m;
}

namespace {

enum class Tok { Ident, Var, Number, Neck, LParen, RParen, Comma, Period, Slash, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Scanner {
public:
  explicit Scanner(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    const int tl = line_, tc = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", tl, tc};
    const char c = text_[pos_];
    if (c == '(') return make(Tok::LParen, 1, tl, tc);
    if (c == ')') return make(Tok::RParen, 1, tl, tc);
    if (c == ',') return make(Tok::Comma, 1, tl, tc);
    if (c == '.') return make(Tok::Period, 1, tl, tc);
    if (c == '/') return make(Tok::Slash, 1, tl, tc);
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-')
      return make(Tok::Neck, 2, tl, tc);
    if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-')
      return make(Tok::Neck, 2, tl, tc);
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (pos_ + n < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + n])))
        ++n;
      return make(Tok::Number, n, tl, tc);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 1;
      while (pos_ + n < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_ + n])) || text_[pos_ + n] == '_'))
        ++n;
      const Tok kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Var : Tok::Ident;
      return make(kind, n, tl, tc);
    }
    throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
  }

private:
  Token make(Tok kind, std::size_t len, int line, int col) {
    Token t{kind, std::string(text_.substr(pos_, len)), line, col};
    for (std::size_t i = 0; i < len; ++i) advance();
    return t;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view text) : scan_(text) { shift(); }

  bool at_end() const { return cur_.kind == Tok::End; }

  Rule rule() {
    Literal head = literal();
    std::vector<Literal> body;
    if (cur_.kind == Tok::Neck) {
      shift();
      if (cur_.kind != Tok::Period) {
        body.push_back(literal());
        while (cur_.kind == Tok::Comma) {
          shift();
          body.push_back(literal());
        }
      }
    }
    expect(Tok::Period, "'.'");
    return Rule(std::move(head), std::move(body));
  }

  void expect_end() { expect(Tok::End, "end of input"); }

private:
  Literal literal() {
    const Token name = expect(Tok::Ident, "predicate name");
    std::vector<Variable> args;
    if (cur_.kind == Tok::LParen) {
      shift();
      args.push_back(variable());
      while (cur_.kind == Tok::Comma) {
        shift();
        args.push_back(variable());
      }
      expect(Tok::RParen, "')'");
    }
    return Literal(name.text, std::move(args));
  }

  Variable variable() {
    const Token t = expect(Tok::Var, "variable");
    if (auto v = var_from_name(t.text)) return *v;
    throw ParseError(t.line, t.col, "invalid variable name: " + t.text);
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind)
      throw ParseError(cur_.line, cur_.col,
                       "expected " + what + (cur_.text.empty() ? "" : ", got '" + cur_.text + "'"));
    Token t = cur_;
    shift();
    return t;
  }

  void shift() { cur_ = scan_.next(); }

  Scanner scan_;
  Token cur_{Tok::End, "", 1, 1};
};

// Parses "name/arity" from `line` starting at offset `at`; `line_no` and the
// offsets are only used for error positions.
PredicateSym pred_at(const std::string& line, std::size_t at, int line_no) {
  auto col = [&](std::size_t pos) { return static_cast<int>(pos) + 1; };
  std::size_t i = at;
  while (i < line.size() &&
         (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
    ++i;
  if (i == at) throw ParseError(line_no, col(at), "expected predicate name");
  const std::string name = line.substr(at, i - at);
  if (i >= line.size() || line[i] != '/')
    throw ParseError(line_no, col(i), "expected '/' after predicate name");
  const std::size_t digits = ++i;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i == digits || i != line.size())
    throw ParseError(line_no, col(digits), "non-numeric arity for " + name);
  return PredicateSym{name, std::stoi(line.substr(digits))};
}

Signature parse_signature_lines(std::string_view text) {
  std::optional<PredicateSym> head;
  std::vector<PredicateSym> body;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto cut = line.find('%'); cut != std::string::npos) line.erase(cut);
    std::size_t b = 0, e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    line = line.substr(b, e - b);
    if (line.empty()) continue;
    const std::size_t space = line.find(' ');
    const std::string keyword = line.substr(0, space);
    if (keyword != "head" && keyword != "body")
      throw ParseError(line_no, 1, "expected 'head' or 'body', got '" + keyword + "'");
    if (space == std::string::npos)
      throw ParseError(line_no, static_cast<int>(line.size()) + 1, "expected predicate name");
    std::size_t at = space;
    while (at < line.size() && line[at] == ' ') ++at;
    PredicateSym pred = pred_at(line, at, line_no);
    if (keyword == "head") {
      if (head) throw ParseError(line_no, 1, "duplicate head line");
      head = std::move(pred);
    } else {
      body.push_back(std::move(pred));
    }
  }
  if (!head) throw ParseError(line_no > 0 ? line_no : 1, 1, "missing head line");
  return Signature(std::move(*head), std::move(body));
}

Signature parse_signature_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("signature document: ") + e.what());
  }
  auto pred_of = [](const nlohmann::json& j, const std::string& where) -> PredicateSym {
    if (!j.is_object() || !j.contains("name") || !j.contains("arity"))
      throw Error("signature document: " + where + " needs 'name' and 'arity'");
    if (!j.at("name").is_string())
      throw Error("signature document: " + where + " name must be a string");
    const std::string name = j.at("name").get<std::string>();
    if (!j.at("arity").is_number_integer())
      throw Error("signature document: non-numeric arity for " + name);
    return PredicateSym{name, j.at("arity").get<int>()};
  };
  if (!doc.is_object() || !doc.contains("head"))
    throw Error("signature document: missing head");
  PredicateSym head = pred_of(doc.at("head"), "head");
  if (!doc.contains("body") || !doc.at("body").is_array())
    throw Error("signature document: missing body list");
  std::vector<PredicateSym> body;
  for (std::size_t i = 0; i < doc.at("body").size(); ++i)
    body.push_back(pred_of(doc.at("body")[i], "body[" + std::to_string(i) + "]"));
  return Signature(std::move(head), std::move(body));
}

}  // namespace

Signature parse_signature(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') return parse_signature_json(text);
  return parse_signature_lines(text);
}

std::string render_signature(const Signature& s) {
  std::ostringstream out;
  out << "head " << s.head().name << "/" << s.head().arity << "\n";
  for (const auto& p : s.body()) out << "body " << p.name << "/" << p.arity << "\n";
  return out.str();
}

Rule parse_rule(std::string_view text) {
  Parser p(text);
  Rule r = p.rule();
  p.expect_end();
  return r;
}

std::vector<Rule> parse_rules(std::string_view text) {
  Parser p(text);
  std::vector<Rule> out;
  while (!p.at_end()) out.push_back(p.rule());
  return out;
}

std::string render_literal(const Literal& l) {
  std::ostringstream out;
  out << l.pred().name;
  if (!l.args().empty()) {
    out << "(";
    bool first = true;
    for (Variable v : l.args()) {
      if (!first) out << ",";
      out << var_name(v);
      first = false;
    }
    out << ")";
  }
  return out.str();
}

std::string render_rule(const Rule& r) {
  std::ostringstream out;
  out << render_literal(r.head());
  if (!r.body().empty()) {
    out << " :- ";
    bool first = true;
    for (const auto& l : r.body()) {
      if (!first) out << ", ";
      out << render_literal(l);
      first = false;
    }
  }
  out << ".";
  return out.str();
}

std::string render_renaming(const Renaming& sigma) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [from, to] : sigma.entries()) {
    if (!first) out << ", ";
    out << var_name(from) << "->" << var_name(to);
    first = false;
  }
  out << "}";
  return out.str();
}

std::string render_var_set(const std::set<Variable>& vs) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (Variable v : vs) {
    if (!first) out << ",";
    out << var_name(v);
    first = false;
  }
  out << "}";
  return out.str();
}

}  // namespace symbreak
