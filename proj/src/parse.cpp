#include <cctype>
#include <charconv>

#include "hopfbound/words.hpp"

namespace hopfbound {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recursive-descent parser for one wordexpr. Columns are 1-based and offset
// by the position of the expression within its line.
class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& gens, std::size_t line,
             std::size_t col_offset)
      : text_(text), gens_(gens), line_(line), col_offset_(col_offset) {}

  Word parse_all() {
    Word w = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_offset_ + pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_factor_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '[' || c == '*' || is_ident_start(c);
  }

  Word expr() {
    Word w = factor();
    while (peek_factor_start()) {
      if (text_[pos_] == '*') {
        ++pos_;
        skip_ws();
      }
      w *= factor();
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      Word rhs = expr();
      w *= rhs.inverse();
    }
    return w;
  }

  Word factor() {
    Word a = atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      return power(a, signed_integer());
    }
    return a;
  }

  std::int64_t signed_integer() {
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected integer exponent");
    pos_ += static_cast<std::size_t>(ptr - first);
    return neg ? -value : value;
  }

  Word atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = expr();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word x = expr();
      expect(',');
      Word y = expr();
      expect(']');
      return commutator(x, y);
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i] == name) return Word::generator(static_cast<GenIndex>(i));
      pos_ = start;
      fail("unknown generator '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  const std::vector<std::string>& gens_;
  std::size_t line_;
  std::size_t col_offset_;
  std::size_t pos_ = 0;
};

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::string name;
  std::vector<std::string> gens;
  bool have_gens = false;
  bool seen_content = false;
  std::vector<Word> rels;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim_right(line);
    std::size_t p = 0;
    while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
    if (p == line.size()) continue;

    std::size_t kw_end = p;
    while (kw_end < line.size() && !std::isspace(static_cast<unsigned char>(line[kw_end]))) ++kw_end;
    const std::string_view keyword = line.substr(p, kw_end - p);
    std::size_t rest = kw_end;
    while (rest < line.size() && std::isspace(static_cast<unsigned char>(line[rest]))) ++rest;
    const std::string_view body = line.substr(rest);

    if (keyword == "group") {
      if (seen_content) throw ParseError("'group' must be the first line", line_no, p + 1);
      if (body.empty()) throw ParseError("'group' needs a name", line_no, rest + 1);
      name = std::string(body);
    } else if (keyword == "gens") {
      if (have_gens) throw ParseError("duplicate 'gens' line", line_no, p + 1);
      have_gens = true;
      std::size_t q = rest;
      while (q < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[q]))) {
          ++q;
          continue;
        }
        if (!is_ident_start(line[q])) throw ParseError("invalid generator name", line_no, q + 1);
        const std::size_t s = q;
        while (q < line.size() && is_ident_char(line[q])) ++q;
        if (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q])))
          throw ParseError("invalid generator name", line_no, q + 1);
        std::string g(line.substr(s, q - s));
        for (const auto& existing : gens)
          if (existing == g) throw ParseError("duplicate generator '" + g + "'", line_no, s + 1);
        gens.push_back(std::move(g));
      }
      if (gens.empty()) throw ParseError("'gens' needs at least one name", line_no, rest + 1);
      if (gens.size() > kMaxGenerators) throw ParseError("too many generators", line_no, p + 1);
    } else if (keyword == "rel") {
      if (!have_gens) throw ParseError("'rel' before 'gens'", line_no, p + 1);
      Word w = WordParser(body, gens, line_no, rest).parse_all();
      if (w.is_identity()) throw ParseError("relator reduces to the identity", line_no, rest + 1);
      rels.push_back(std::move(w));
    } else {
      throw ParseError("unknown keyword '" + std::string(keyword) + "'", line_no, p + 1);
    }
    seen_content = true;
  }
  if (!have_gens) throw ParseError("missing 'gens' line", line_no, 1);
  return Presentation(std::move(gens), std::move(rels), std::move(name));
}

Word parse_word(std::string_view expr, const Presentation& p) {
  return WordParser(expr, p.generators(), 1, 0).parse_all();
}

}  // namespace hopfbound
