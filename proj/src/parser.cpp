#include <cctype>

#include "dkm/syntax.hpp"

namespace dkm {

const std::string& Declaration::name() const {
  static const std::string empty;
  if (auto* c = std::get_if<ConstDecl>(&value)) return c->name;
  if (auto* d = std::get_if<Definition>(&value)) return d->name;
  return empty;
}

bool isReservedWord(std::string_view s) { return s == "Type" || s == "Kind" || s == "def"; }

bool isIdentifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || !(std::isalnum(u) || c == '_')) return false;
  }
  return true;
}

namespace {

enum class Tok {
  Ident,
  KwType,
  KwDef,
  Colon,
  ColonEq,
  Dot,
  LBrack,
  RBrack,
  Comma,
  LongArrow,
  Arrow,
  FatArrow,
  Backslash,
  LParen,
  RParen,
  End,
};

std::string_view tokName(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::KwType: return "'Type'";
    case Tok::KwDef: return "'def'";
    case Tok::Colon: return "':'";
    case Tok::ColonEq: return "':='";
    case Tok::Dot: return "'.'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::LongArrow: return "'-->'";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Backslash: return "'\\'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
  int endLine;
  int endCol;
};

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipBlank();
      int l = line_, c = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", l, c, l, c});
        return out;
      }
      char ch = text_[pos_];
      auto u = static_cast<unsigned char>(ch);
      Tok kind;
      std::string lexeme;
      if (u < 0x80 && std::isalpha(u)) {
        while (pos_ < text_.size()) {
          auto d = static_cast<unsigned char>(text_[pos_]);
          if (d >= 0x80 || !(std::isalnum(d) || d == '_')) break;
          lexeme += text_[pos_];
          advance();
        }
        if (lexeme == "Type") {
          kind = Tok::KwType;
        } else if (lexeme == "def") {
          kind = Tok::KwDef;
        } else if (lexeme == "Kind") {
          fail(l, c, "'Kind' cannot be written in source");
        } else {
          kind = Tok::Ident;
        }
      } else if (startsWith("-->")) {
        kind = Tok::LongArrow, lexeme = "-->";
      } else if (startsWith("->")) {
        kind = Tok::Arrow, lexeme = "->";
      } else if (startsWith("=>")) {
        kind = Tok::FatArrow, lexeme = "=>";
      } else if (startsWith(":=")) {
        kind = Tok::ColonEq, lexeme = ":=";
      } else {
        switch (ch) {
          case ':': kind = Tok::Colon; break;
          case '.': kind = Tok::Dot; break;
          case '[': kind = Tok::LBrack; break;
          case ']': kind = Tok::RBrack; break;
          case ',': kind = Tok::Comma; break;
          case '\\': kind = Tok::Backslash; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          default:
            fail(l, c, u >= 0x80 ? std::string("non-ASCII character outside a comment")
                                 : "unexpected character '" + std::string(1, ch) + "'");
        }
        lexeme = std::string(1, ch);
      }
      if (kind != Tok::Ident && kind != Tok::KwType && kind != Tok::KwDef) {
        for (std::size_t i = 0; i < lexeme.size(); ++i) advance();
      }
      out.push_back({kind, std::move(lexeme), l, c, line_, col_});
    }
  }

 private:
  bool startsWith(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skipBlank() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\f' || ch == '\v') {
        advance();
      } else if (startsWith("//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (pos_ == 0 && startsWith("\xEF\xBB\xBF")) {
        pos_ += 3;
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(int l, int c, const std::string& msg) const {
    throw DiagnosticError(ErrorCode::Parse, msg, SourceSpan{file_, l, c, l, c + 1});
  }

  std::string_view text_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

constexpr int kMaxNesting = 2000;

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file, NameSet known)
      : toks_(std::move(toks)), file_(std::move(file)), known_(std::move(known)) {}

  std::vector<Declaration> file() {
    std::vector<Declaration> out;
    while (peek().kind != Tok::End) out.push_back(declaration());
    return out;
  }

  Term standaloneTerm(std::vector<std::string> bound) {
    bound_ = std::move(bound);
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  const Token& expect(Tok k) {
    if (peek().kind != k) {
      const Token& t = peek();
      std::string found = t.kind == Tok::Ident ? "'" + t.text + "'" : std::string(tokName(t.kind));
      fail(t, "expected " + std::string(tokName(k)) + ", found " + found);
    }
    return next();
  }

  SourceSpan spanOf(const Token& t) const { return {file_, t.line, t.col, t.endLine, t.endCol}; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw DiagnosticError(ErrorCode::Parse, msg, spanOf(t));
  }

  void declareName(const Token& t) {
    if (t.text.empty()) return;
    known_.insert(t.text);
  }

  Declaration declaration() {
    const Token& first = peek();
    Declaration d;
    if (accept(Tok::KwDef)) {
      const Token& name = expect(Tok::Ident);
      expect(Tok::Colon);
      Term type = term();
      expect(Tok::ColonEq);
      Term body = term();
      d.value = Definition{name.text, std::move(type), std::move(body)};
      declareName(name);
    } else if (accept(Tok::LBrack)) {
      d.value = rule(first);
    } else {
      const Token& name = expect(Tok::Ident);
      expect(Tok::Colon);
      Term type = term();
      d.value = ConstDecl{name.text, std::move(type)};
      declareName(name);
    }
    const Token& dot = expect(Tok::Dot);
    d.span = SourceSpan{file_, first.line, first.col, dot.endLine, dot.endCol};
    return d;
  }

  RewriteRule rule(const Token& open) {
    RewriteRule r;
    bound_.clear();
    if (peek().kind != Tok::RBrack) {
      do {
        const Token& v = expect(Tok::Ident);
        RuleVar rv{v.text, std::nullopt};
        if (accept(Tok::Colon)) rv.type = term();
        for (const RuleVar& other : r.context) {
          if (other.name == v.text) {
            throw DiagnosticError(ErrorCode::Scope,
                                  "pattern variable '" + v.text + "' declared twice",
                                  spanOf(v));
          }
        }
        r.context.push_back(std::move(rv));
        bound_.push_back(v.text);
      } while (accept(Tok::Comma));
    }
    expect(Tok::RBrack);
    r.lhs = term();
    expect(Tok::LongArrow);
    r.rhs = term();
    const std::size_t n = r.context.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (!occursFree(r.lhs, static_cast<std::uint32_t>(n - 1 - k))) {
        throw DiagnosticError(ErrorCode::Scope,
                              "pattern variable '" + r.context[k].name +
                                  "' does not occur in the left-hand side",
                              spanOf(open));
      }
    }
    bound_.clear();
    return r;
  }

  struct DepthGuard {
    int& depth;
    DepthGuard(int& d, const Token& t, const Parser& p) : depth(d) {
      if (++depth > kMaxNesting) p.fail(t, "term nesting too deep");
    }
    ~DepthGuard() { --depth; }
  };

  Term term() {
    DepthGuard guard(depth_, peek(), *this);
    if (accept(Tok::Backslash)) {
      const Token& name = expect(Tok::Ident);
      expect(Tok::Colon);
      Term type = term();
      expect(Tok::FatArrow);
      bound_.push_back(name.text);
      Term body = term();
      bound_.pop_back();
      return Term::lam(name.text, std::move(type), std::move(body));
    }
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::Colon) {
      const Token& name = next();
      next();
      Term domain = app();
      expect(Tok::Arrow);
      bound_.push_back(name.text);
      Term codomain = term();
      bound_.pop_back();
      return Term::pi(name.text, std::move(domain), std::move(codomain));
    }
    Term lhs = app();
    if (accept(Tok::Arrow)) return Term::arrow(std::move(lhs), term());
    return lhs;
  }

  static bool startsAtom(Tok k) { return k == Tok::Ident || k == Tok::KwType || k == Tok::LParen; }

  Term app() {
    Term t = atom();
    while (startsAtom(peek().kind)) t = Term::app(std::move(t), atom());
    return t;
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwType:
        next();
        return Term::sort(Sort::Type);
      case Tok::LParen: {
        next();
        Term inner = term();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Ident: {
        next();
        for (std::size_t i = bound_.size(); i-- > 0;) {
          if (bound_[i] == t.text) return Term::var(static_cast<std::uint32_t>(bound_.size() - 1 - i));
        }
        if (known_.count(t.text)) return Term::constant(t.text);
        throw DiagnosticError(ErrorCode::Scope, "unbound identifier '" + t.text + "'", spanOf(t));
      }
      default:
        fail(t, "expected a term, found " + std::string(tokName(t.kind)));
    }
  }

  std::vector<Token> toks_;
  std::string file_;
  NameSet known_;
  std::vector<std::string> bound_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

std::vector<Declaration> parse(std::string_view text, const std::string& fileName,
                               const NameSet& known) {
  Parser p(Lexer(text, fileName).run(), fileName, known);
  return p.file();
}

Term parseTerm(std::string_view text, const NameSet& known, const std::vector<std::string>& bound) {
  std::string file = "<term>";
  Parser p(Lexer(text, file).run(), file, known);
  return p.standaloneTerm(bound);
}

}  // namespace dkm
