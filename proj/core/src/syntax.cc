/*
 * Copyright (c) 2026, The protoweave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "protoweave/syntax.hh"

#include <fstream>
#include <set>
#include <sstream>

#include "protoweave/error.hh"

namespace protoweave {

namespace {

enum class Tok { kIdent, kPunct, kEof };

struct Token {
  Tok type = Tok::kEof;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  Lexer(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (is_start(c)) {
        t.type = Tok::kIdent;
        while (pos_ < text_.size() && is_part(text_[pos_])) t.text += advance();
      } else if (std::string("!?.{}:,()+=").find(c) != std::string::npos) {
        t.type = Tok::kPunct;
        t.text = std::string(1, advance());
      } else {
        std::ostringstream msg;
        msg << origin_ << ":" << line_ << ":" << col_ << ": unexpected character '" << c << "'";
        throw Error(ErrorCategory::kSyntax, msg.str());
      }
      out.push_back(t);
    }
  }

 private:
  static bool is_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_part(char c) { return is_start(c) || (c >= '0' && c <= '9'); }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  const std::string& text_;
  std::string origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {"end",     "rec", "assert", "require",
                                           "consume", "sel", "bra",    "protocol"};
  return kw;
}

class Parser {
 public:
  Parser(const std::string& text, std::string origin)
      : origin_(origin), toks_(Lexer(text, origin).run()) {}

  Protocol term() {
    const Token& t = peek();
    if (t.type == Tok::kPunct) {
      if (t.text == "!" || t.text == "?") {
        Polarity pol = t.text == "!" ? Polarity::kSend : Polarity::kReceive;
        next();
        std::string payload = ident("payload");
        expect(".");
        return Protocol::prefix({pol, std::move(payload)}, term());
      }
      if (t.text == "+") {
        next();
        return branches(ChoiceOp::kPlain);
      }
      fail(t, "expected a protocol");
    }
    if (t.type == Tok::kEof) fail(t, "expected a protocol");
    const std::string word = t.text;
    if (word == "end") {
      next();
      return Protocol::end();
    }
    if (word == "rec") {
      next();
      std::string var = ident("recursion variable");
      expect(".");
      return Protocol::rec(std::move(var), term());
    }
    if (word == "assert" || word == "require" || word == "consume") {
      next();
      expect("(");
      std::string name = ident("assertion name", true);
      expect(")");
      expect(".");
      Protocol cont = term();
      if (word == "assert") return Protocol::assert_(std::move(name), std::move(cont));
      if (word == "require") return Protocol::require(std::move(name), std::move(cont));
      return Protocol::consume(std::move(name), std::move(cont));
    }
    if (word == "sel") {
      next();
      return branches(ChoiceOp::kSelect);
    }
    if (word == "bra") {
      next();
      return branches(ChoiceOp::kOffer);
    }
    if (keywords().count(word)) fail(t, "unexpected keyword '" + word + "'");
    next();
    if (peek().type == Tok::kPunct && peek().text == ".") {
      next();
      return Protocol::prefix(Action::neutral(word), term());
    }
    return Protocol::var(word);
  }

  std::vector<NamedProtocol> file() {
    std::vector<NamedProtocol> out;
    std::set<std::string> seen;
    while (peek().type != Tok::kEof) {
      const Token& kw = peek();
      if (kw.type != Tok::kIdent || kw.text != "protocol") fail(kw, "expected 'protocol'");
      int line = kw.line;
      next();
      const Token name_tok = peek();
      std::string name = ident("protocol name");
      if (!seen.insert(name).second) fail(name_tok, "protocol " + name + " defined twice");
      expect("=");
      out.push_back({name, finish(term(), name), line});
    }
    return out;
  }

  Protocol single() {
    Protocol p = term();
    if (peek().type != Tok::kEof) fail(peek(), "trailing input");
    return finish(p, "");
  }

 private:
  Protocol branches(ChoiceOp op) {
    expect("{");
    std::vector<Branch> bs;
    while (true) {
      std::string label = ident("label", true);
      expect(":");
      bs.push_back({std::move(label), term()});
      if (peek().type == Tok::kPunct && peek().text == ",") {
        next();
        continue;
      }
      expect("}");
      return Protocol::choice(op, std::move(bs));
    }
  }

  Protocol finish(const Protocol& raw, const std::string& name) {
    Protocol p = freshen(raw);
    auto violations = validate(p);
    if (!violations.empty()) {
      std::string msg = origin_;
      if (!name.empty()) msg += ":" + name;
      msg += ": ";
      for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) msg += "; ";
        msg += violations[i].str();
      }
      throw Error(ErrorCategory::kValidation, msg);
    }
    return p;
  }

  const Token& peek() const { return toks_[pos_]; }
  void next() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  std::string ident(const char* what, bool keyword_ok = false) {
    const Token& t = peek();
    if (t.type != Tok::kIdent || (!keyword_ok && keywords().count(t.text))) {
      fail(t, std::string("expected ") + what);
    }
    std::string out = t.text;
    next();
    return out;
  }

  void expect(const char* punct) {
    const Token& t = peek();
    if (t.type != Tok::kPunct || t.text != punct) {
      fail(t, std::string("expected '") + punct + "'");
    }
    next();
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    std::ostringstream out;
    out << origin_ << ":" << t.line << ":" << t.col << ": " << msg;
    if (t.type == Tok::kEof) {
      out << " at end of input";
    } else {
      out << " near '" << t.text << "'";
    }
    throw Error(ErrorCategory::kSyntax, out.str());
  }

  std::string origin_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Protocol parse_protocol(const std::string& text, const std::string& origin) {
  return Parser(text, origin).single();
}

std::vector<NamedProtocol> parse_file(const std::string& text, const std::string& origin) {
  return Parser(text, origin).file();
}

std::vector<NamedProtocol> load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_file(ss.str(), path);
}

const NamedProtocol& find_protocol(const std::vector<NamedProtocol>& file,
                                   const std::string& name) {
  for (const auto& np : file) {
    if (np.name == name) return np;
  }
  throw Error(ErrorCategory::kNotFound, "no protocol named " + name);
}

std::string print(const Protocol& s) { return to_string(s); }

std::string print_file(const std::vector<NamedProtocol>& file) {
  std::string out;
  for (const auto& np : file) out += "protocol " + np.name + " = " + print(np.protocol) + "\n";
  return out;
}

}  // namespace protoweave
