#include "finstoch/document.hpp"

#include <cctype>
#include <optional>
#include <utility>

#include "json.hpp"

namespace finstoch {

const ProbSpace* Document::find_space(std::string_view name) const {
  for (const auto& [n, s] : spaces)
    if (n == name) return &s;
  return nullptr;
}

const Document::MapDecl* Document::find_map(std::string_view name) const {
  for (const auto& m : maps)
    if (m.name == name) return &m;
  return nullptr;
}

const ProbSpace& Document::space(std::string_view name) const {
  if (const ProbSpace* s = find_space(name)) return *s;
  throw Error("no space named '" + std::string(name) + "'");
}

const Document::MapDecl& Document::map(std::string_view name) const {
  if (const MapDecl* m = find_map(name)) return *m;
  throw Error("no map named '" + std::string(name) + "'");
}

namespace {

bool is_reserved(char c) {
  switch (c) {
    case '{': case '}': case ':': case '|': case '=': case ',':
    case '"': case '#': case '/':
      return true;
    default:
      return false;
  }
}

// Labels and names are printable bare when relexing them reproduces the same
// token: no reserved characters or whitespace outside balanced parentheses,
// no "->", and parenthesized groups kept verbatim.
bool is_bare_safe(const std::string& s) {
  if (s.empty()) return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) return false;
    } else if (depth > 0) {
      if (c == '\n' || c == '"') return false;
    } else {
      if (is_reserved(c) || std::isspace(static_cast<unsigned char>(c))) return false;
      if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') return false;
    }
  }
  return depth == 0;
}

std::string quote_label(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string print_label(const std::string& s) {
  return is_bare_safe(s) ? s : quote_label(s);
}

struct Token {
  enum Kind { kEnd, kPunct, kArrow, kWord, kQuoted } kind = kEnd;
  std::string text;
  std::size_t line = 0;
  std::size_t col = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token peek() {
    if (!lookahead_) lookahead_ = lex();
    return *lookahead_;
  }

  Token next() {
    Token t = peek();
    lookahead_.reset();
    return t;
  }

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  char cur() const { return text_[pos_]; }
  bool done() const { return pos_ >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (!done()) {
      if (std::isspace(static_cast<unsigned char>(cur()))) {
        advance();
      } else if (cur() == '#') {
        while (!done() && cur() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token lex() {
    skip_blank();
    Token t;
    t.line = line_;
    t.col = col_;
    if (done()) return t;
    char c = cur();
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = Token::kArrow;
      t.text = "->";
      return t;
    }
    if (is_reserved(c) && c != '"' && c != '#') {
      advance();
      t.kind = Token::kPunct;
      t.text = std::string(1, c);
      return t;
    }
    if (c == '"') {
      advance();
      t.kind = Token::kQuoted;
      while (true) {
        if (done() || cur() == '\n')
          throw SyntaxError("unterminated quoted label", t.line, t.col);
        char d = cur();
        advance();
        if (d == '"') break;
        if (d == '\\') {
          if (done()) throw SyntaxError("unterminated escape", line_, col_);
          t.text += cur();
          advance();
        } else {
          t.text += d;
        }
      }
      return t;
    }
    // Bare word: runs of unreserved characters, with parenthesized groups
    // taken verbatim so product labels like "(x0,y1)" stay one token.
    t.kind = Token::kWord;
    while (!done()) {
      char d = cur();
      if (d == '(') {
        std::size_t open_line = line_, open_col = col_;
        int depth = 0;
        do {
          if (done() || cur() == '\n')
            throw SyntaxError("unterminated '('", open_line, open_col);
          if (cur() == '(') ++depth;
          if (cur() == ')') --depth;
          t.text += cur();
          advance();
        } while (depth > 0);
        continue;
      }
      if (d == ')') throw SyntaxError("unmatched ')'", line_, col_);
      if (is_reserved(d) || std::isspace(static_cast<unsigned char>(d))) break;
      if (d == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') break;
      t.text += d;
      advance();
    }
    if (t.text.empty())
      throw SyntaxError("unexpected character '" + std::string(1, cur()) + "'",
                        line_, col_);
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::optional<Token> lookahead_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Document parse() {
    Document doc;
    while (true) {
      Token t = lex_.peek();
      if (t.kind == Token::kEnd) break;
      if (t.kind == Token::kWord && t.text == "space") {
        parse_space(doc);
      } else if (t.kind == Token::kWord && t.text == "map") {
        parse_map(doc);
      } else {
        throw SyntaxError("expected 'space' or 'map', got '" + t.text + "'",
                          t.line, t.col);
      }
    }
    return doc;
  }

 private:
  Token expect_name(const char* what) {
    Token t = lex_.next();
    if (t.kind != Token::kWord && t.kind != Token::kQuoted)
      throw SyntaxError(std::string("expected ") + what, t.line, t.col);
    return t;
  }

  void expect_punct(char c) {
    Token t = lex_.next();
    if (t.kind != Token::kPunct || t.text[0] != c)
      throw SyntaxError("expected '" + std::string(1, c) + "'", t.line, t.col);
  }

  Rational parse_value() {
    Token t = lex_.next();
    if (t.kind != Token::kWord)
      throw SyntaxError("expected a rational", t.line, t.col);
    std::string text = t.text;
    if (lex_.peek().kind == Token::kPunct && lex_.peek().text == "/") {
      lex_.next();
      Token den = lex_.next();
      if (den.kind != Token::kWord)
        throw SyntaxError("expected a denominator", den.line, den.col);
      text += "/" + den.text;
    }
    try {
      return parse_rational(text);
    } catch (const Error& e) {
      throw SyntaxError(e.what(), t.line, t.col);
    }
  }

  void maybe_comma() {
    if (lex_.peek().kind == Token::kPunct && lex_.peek().text == ",") lex_.next();
  }

  void parse_space(Document& doc) {
    Token kw = lex_.next();  // "space"
    Token name = expect_name("a space name");
    if (doc.find_space(name.text))
      throw ValidationError("space '" + name.text + "' already declared",
                            name.line, name.col);
    expect_punct('{');
    std::vector<Label> labels;
    std::vector<Rational> probs;
    while (!(lex_.peek().kind == Token::kPunct && lex_.peek().text == "}")) {
      Token label = expect_name("a label");
      expect_punct(':');
      Rational v = parse_value();
      labels.push_back(label.text);
      probs.push_back(std::move(v));
      maybe_comma();
    }
    lex_.next();  // "}"
    try {
      doc.spaces.emplace_back(name.text, ProbSpace(std::move(labels), std::move(probs)));
    } catch (const Error& e) {
      throw ValidationError("space '" + name.text + "': " + e.what(), kw.line,
                            kw.col);
    }
  }

  void parse_map(Document& doc) {
    Token kw = lex_.next();  // "map"
    Token name = expect_name("a map name");
    if (doc.find_map(name.text))
      throw ValidationError("map '" + name.text + "' already declared",
                            name.line, name.col);
    expect_punct(':');
    Token src_name = expect_name("a source space name");
    Token arrow = lex_.next();
    if (arrow.kind != Token::kArrow)
      throw SyntaxError("expected '->'", arrow.line, arrow.col);
    Token tgt_name = expect_name("a target space name");
    const ProbSpace* src = doc.find_space(src_name.text);
    if (!src)
      throw UnresolvedReference("space '" + src_name.text + "' is not declared",
                                src_name.line, src_name.col);
    const ProbSpace* tgt = doc.find_space(tgt_name.text);
    if (!tgt)
      throw UnresolvedReference("space '" + tgt_name.text + "' is not declared",
                                tgt_name.line, tgt_name.col);

    expect_punct('{');
    std::vector<Rational> matrix(src->size() * tgt->size(), Rational(0));
    std::vector<char> given(matrix.size(), 0);
    while (!(lex_.peek().kind == Token::kPunct && lex_.peek().text == "}")) {
      Token row = expect_name("a target label");
      expect_punct('|');
      Token col = expect_name("a source label");
      expect_punct('=');
      Rational v = parse_value();
      auto t = tgt->index_of(row.text);
      if (!t)
        throw ValidationError("'" + row.text + "' is not a label of space '" +
                              tgt_name.text + "'", row.line, row.col);
      auto s = src->index_of(col.text);
      if (!s)
        throw ValidationError("'" + col.text + "' is not a label of space '" +
                              src_name.text + "'", col.line, col.col);
      std::size_t idx = *t * src->size() + *s;
      if (given[idx])
        throw ValidationError("entry " + row.text + "|" + col.text +
                              " given twice", row.line, row.col);
      given[idx] = 1;
      matrix[idx] = std::move(v);
      maybe_comma();
    }
    lex_.next();  // "}"
    try {
      Morphism m(StochMap(src->labels(), tgt->labels(), std::move(matrix)),
                 *src, *tgt);
      doc.maps.push_back({name.text, src_name.text, tgt_name.text, std::move(m)});
    } catch (const Error& e) {
      throw ValidationError("map '" + name.text + "': " + e.what(), kw.line,
                            kw.col);
    }
  }

  Lexer lex_;
};

Document parse_json_document(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(e.what(), 1, e.byte);
  }
  auto fail = [](const std::string& msg) -> ValidationError {
    return ValidationError(msg, 1, 1);
  };
  auto as_rational = [&](const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw fail("rationals must be strings like \"1/2\" or integers");
  };

  Document doc;
  try {
    for (const auto& js : j.value("spaces", nlohmann::json::array())) {
      std::string name = js.at("name").get<std::string>();
      if (doc.find_space(name)) throw fail("space '" + name + "' already declared");
      std::vector<Label> labels;
      for (const auto& l : js.at("labels")) labels.push_back(l.get<std::string>());
      std::vector<Rational> probs;
      for (const auto& p : js.at("probs")) probs.push_back(as_rational(p));
      doc.spaces.emplace_back(name, ProbSpace(std::move(labels), std::move(probs)));
    }
    for (const auto& jm : j.value("maps", nlohmann::json::array())) {
      std::string name = jm.at("name").get<std::string>();
      if (doc.find_map(name)) throw fail("map '" + name + "' already declared");
      std::string src_name = jm.at("src").get<std::string>();
      std::string tgt_name = jm.at("tgt").get<std::string>();
      const ProbSpace* src = doc.find_space(src_name);
      if (!src)
        throw UnresolvedReference("space '" + src_name + "' is not declared", 1, 1);
      const ProbSpace* tgt = doc.find_space(tgt_name);
      if (!tgt)
        throw UnresolvedReference("space '" + tgt_name + "' is not declared", 1, 1);
      const auto& rows = jm.at("matrix");
      if (rows.size() != tgt->size())
        throw fail("map '" + name + "': expected one matrix row per target label");
      std::vector<Rational> matrix;
      for (const auto& row : rows) {
        if (row.size() != src->size())
          throw fail("map '" + name + "': expected one entry per source label");
        for (const auto& v : row) matrix.push_back(as_rational(v));
      }
      Morphism m(StochMap(src->labels(), tgt->labels(), std::move(matrix)),
                 *src, *tgt);
      doc.maps.push_back({name, src_name, tgt_name, std::move(m)});
    }
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(e.what(), 1, 1);
  } catch (const Error& e) {
    throw ValidationError(e.what(), 1, 1);
  }
  return doc;
}

}  // namespace

Document parse_document(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_json_document(text);
    break;
  }
  return Parser(text).parse();
}

std::string print_document(const Document& doc) {
  std::string out;
  for (const auto& [name, space] : doc.spaces) {
    out += "space " + print_label(name) + " {";
    for (std::size_t i = 0; i < space.size(); ++i) {
      out += i ? ", " : " ";
      out += print_label(space.label(i)) + ": " + to_string(space.prob(i));
    }
    out += " }\n";
  }
  for (const auto& m : doc.maps) {
    out += "map " + print_label(m.name) + " : " + print_label(m.src_space) +
           " -> " + print_label(m.tgt_space) + " {";
    const StochMap& f = m.morphism.map();
    bool first = true;
    for (std::size_t s = 0; s < f.src_size(); ++s) {
      for (std::size_t t = 0; t < f.tgt_size(); ++t) {
        if (f.at(t, s) == 0) continue;
        out += first ? " " : ", ";
        first = false;
        out += print_label(f.tgt()[t]) + "|" + print_label(f.src()[s]) + " = " +
               to_string(f.at(t, s));
      }
    }
    out += " }\n";
  }
  return out;
}

}  // namespace finstoch
