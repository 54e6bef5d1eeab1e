#include "algebra_spec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace voacheck::cli {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

bool is_symbol(char ch) { return ch == '=' || ch == '+' || ch == '-' || ch == '*'; }

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char ch = line[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_symbol(ch)) {
      ++i;
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && !is_symbol(line[i]) &&
             line[i] != '#')
        ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/') return false;
  return true;
}

class LineParser {
 public:
  LineParser(int line, std::vector<Token> toks, int end_col) : line_(line), toks_(std::move(toks)), end_col_(end_col) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    if (done()) fail_at(end_col_, "unexpected end of line");
    return toks_[pos_];
  }
  Token next() {
    Token t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& s) {
    Token t = next();
    if (t.text != s) fail(t, "expected '" + s + "', found '" + t.text + "'");
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { fail_at(t.column, msg); }
  [[noreturn]] void fail_at(int col, const std::string& msg) const { throw ParseError(line_, col, msg); }

 private:
  int line_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int end_col_;
};

int lookup(const LineParser& p, const CommAssocSpec& s, const Token& t) {
  for (int i = 0; i < s.dim(); ++i)
    if (s.names[i] == t.text) return i;
  p.fail(t, "unknown basis element '" + t.text + "'");
}

Scalar coefficient(const LineParser& p, const Token& t) {
  try {
    return parse_scalar(t.text);
  } catch (const std::exception&) {
    p.fail(t, "bad coefficient '" + t.text + "'");
  }
}

Vec parse_terms(LineParser& p, const CommAssocSpec& s) {
  Vec out;
  const Token& first = p.peek();
  if (first.text == "0" && !std::count(s.names.begin(), s.names.end(), "0")) {
    p.next();
    if (!p.done()) p.fail(p.peek(), "nothing may follow a zero right-hand side");
    return out;
  }
  bool leading = true;
  while (!p.done()) {
    int sign = 1;
    if (p.peek().text == "+" || p.peek().text == "-") {
      sign = p.next().text == "-" ? -1 : 1;
    } else if (!leading) {
      p.fail(p.peek(), "expected '+' or '-' between terms");
    }
    leading = false;
    Token t = p.next();
    Scalar c = 1;
    if (!p.done() && p.peek().text == "*") {
      if (!looks_numeric(t.text)) p.fail(t, "bad coefficient '" + t.text + "'");
      c = coefficient(p, t);
      p.next();
      t = p.next();
    }
    if (is_symbol(t.text[0])) p.fail(t, "expected a basis element, found '" + t.text + "'");
    out.add(lookup(p, s, t), sign * c);
  }
  return out;
}

}  // namespace

CommAssocSpec parse_algebra_text(const std::string& text) {
  CommAssocSpec s;
  bool have_basis = false;
  std::optional<int> unit;
  std::istringstream in(text);
  std::string raw;
  int line = 0, last_line = 1;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    last_line = line;
    LineParser p(line, toks, static_cast<int>(raw.size()) + 1);
    const Token kw = p.next();
    if (kw.text == "basis") {
      if (have_basis) p.fail(kw, "second basis header");
      if (p.done()) p.fail_at(static_cast<int>(raw.size()) + 1, "basis header names no elements");
      while (!p.done()) {
        Token t = p.next();
        if (is_symbol(t.text[0])) p.fail(t, "'" + t.text + "' cannot be a basis name");
        if (std::count(s.names.begin(), s.names.end(), t.text)) p.fail(t, "duplicate basis element '" + t.text + "'");
        s.names.push_back(t.text);
      }
      have_basis = true;
      continue;
    }
    if (!have_basis) p.fail(kw, "expected 'basis' header before '" + kw.text + "'");
    if (kw.text == "unit") {
      if (unit) p.fail(kw, "second unit declaration");
      unit = lookup(p, s, p.next());
      if (!p.done()) p.fail(p.peek(), "unexpected '" + p.peek().text + "' after unit");
    } else if (kw.text == "mul") {
      const int i = lookup(p, s, p.next());
      const int j = lookup(p, s, p.next());
      p.expect("=");
      if (p.done()) p.fail_at(static_cast<int>(raw.size()) + 1, "missing right-hand side");
      if (s.table.count({i, j})) p.fail(kw, "product " + s.names[i] + " " + s.names[j] + " given twice");
      s.table[{i, j}] = parse_terms(p, s);
    } else {
      p.fail(kw, "unknown statement '" + kw.text + "'");
    }
  }
  if (!have_basis) throw ParseError(last_line, 1, "empty specification: missing 'basis' header");
  if (!unit) throw ParseError(last_line, 1, "missing 'unit' declaration");
  s.unit = *unit;
  s = completed(std::move(s));
  auto violations = validate(s);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::string w;
    for (int k : v.witness) w += (w.empty() ? "" : ",") + s.names.at(k);
    throw SpecError(v.axiom + " fails at (" + w + "): " + v.detail, violations);
  }
  return s;
}

CommAssocSpec parse_algebra_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open algebra spec '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_algebra_text(buf.str());
}

}  // namespace voacheck::cli
