// Copyright 2026 The unifactor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unifactor/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <vector>

namespace unifactor {

QasmError::QasmError(std::size_t line, std::size_t column,
                     const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double value = 0.0;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        t.kind = Tok::Number;
        lex_number(t);
      } else if (ch == '"') {
        t.kind = Tok::String;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
          t.text += advance();
        }
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw QasmError(t.line, t.column, "unterminated string literal");
        }
        advance();
      } else if (src_.substr(pos_, 2) == "->" || src_.substr(pos_, 2) == "==") {
        // only so that unsupported statements get a statement-level diagnostic
        t.kind = Tok::Symbol;
        t.text += advance();
        t.text += advance();
      } else if (std::string_view(";,()[]+-*/{}^>").find(ch) != std::string_view::npos) {
        t.kind = Tok::Symbol;
        t.text = std::string(1, advance());
      } else {
        throw QasmError(t.line, t.column,
                        std::string("unexpected character '") + ch + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char ch = src_[pos_++];
    if (ch == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return ch;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        throw QasmError(t.line, t.column, "malformed number exponent");
      }
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        advance();
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    const auto res =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
    if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
      throw QasmError(t.line, t.column, "malformed number '" + t.text + "'");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Circuit run() {
    bool first = true;
    while (peek().kind != Tok::End) {
      statement(first);
      first = false;
    }
    if (!register_size_) {
      const Token& t = peek();
      throw QasmError(t.line, t.column, "missing qreg declaration");
    }
    return std::move(circuit_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw QasmError(t.line, t.column, msg);
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::String: return "string \"" + t.text + "\"";
      default: return "'" + t.text + "'";
    }
  }

  bool at_symbol(char ch) const {
    return peek().kind == Tok::Symbol && peek().text.size() == 1 && peek().text[0] == ch;
  }

  void expect_symbol(char ch) {
    if (!at_symbol(ch)) {
      fail(peek(), std::string("expected '") + ch + "' but found " + describe(peek()));
    }
    next();
  }

  std::size_t expect_integer() {
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
      fail(t, "expected integer but found " + describe(t));
    }
    next();
    return static_cast<std::size_t>(t.value);
  }

  void statement(bool first) {
    const Token& head = next();
    if (head.kind != Tok::Ident) fail(head, "expected statement but found " + describe(head));
    const std::string& kw = head.text;
    if (kw == "OPENQASM") {
      if (!first) fail(head, "OPENQASM header must be the first statement");
      const Token& ver = next();
      if (ver.kind != Tok::Number || ver.value != 2.0) {
        fail(ver, "unsupported OpenQASM version " + describe(ver) + " (only 2.0)");
      }
      expect_symbol(';');
    } else if (kw == "include") {
      const Token& file = next();
      if (file.kind != Tok::String) fail(file, "expected file name after include");
      expect_symbol(';');
    } else if (kw == "qreg") {
      if (register_size_) fail(head, "multiple qreg declarations are not supported");
      const Token& name = next();
      if (name.kind != Tok::Ident) fail(name, "expected register name");
      expect_symbol('[');
      const Token& size_tok = peek();
      const std::size_t size = expect_integer();
      if (size == 0) fail(size_tok, "qreg size must be positive");
      expect_symbol(']');
      expect_symbol(';');
      register_name_ = name.text;
      register_size_ = size;
      circuit_ = Circuit(size);
    } else if (kw == "u3" || kw == "u" || kw == "U") {
      const auto args = parameter_list(head, 3);
      const std::size_t q = qubit();
      expect_symbol(';');
      circuit_.append(LocatedGate::u3(q, args[0], args[1], args[2]));
    } else if (kw == "rz") {
      const auto args = parameter_list(head, 1);
      const std::size_t q = qubit();
      expect_symbol(';');
      circuit_.append(LocatedGate::rz(q, args[0]));
    } else if (kw == "cx" || kw == "CX") {
      if (at_symbol('(')) fail(peek(), "cx takes no parameters");
      const Token& ctl_tok = peek();
      const std::size_t ctl = qubit();
      expect_symbol(',');
      const std::size_t tgt = qubit();
      expect_symbol(';');
      if (ctl == tgt) fail(ctl_tok, "cx control and target are the same qubit");
      circuit_.append(LocatedGate::cnot(ctl, tgt));
    } else if (kw == "barrier") {
      while (!at_symbol(';')) {
        if (peek().kind == Tok::End) fail(peek(), "expected ';' but found end of input");
        next();
      }
      next();
    } else if (kw == "creg" || kw == "measure" || kw == "gate" || kw == "reset" ||
               kw == "if" || kw == "opaque") {
      fail(head, "unsupported statement '" + kw + "'");
    } else {
      fail(head, "unknown gate '" + kw + "'");
    }
  }

  std::vector<double> parameter_list(const Token& gate, std::size_t expected) {
    std::vector<double> args;
    expect_symbol('(');
    if (!at_symbol(')')) {
      args.push_back(expression());
      while (at_symbol(',')) {
        next();
        args.push_back(expression());
      }
    }
    expect_symbol(')');
    if (args.size() != expected) {
      fail(gate, gate.text + " expects " + std::to_string(expected) +
                     " parameter(s), got " + std::to_string(args.size()));
    }
    return args;
  }

  std::size_t qubit() {
    const Token& name = next();
    if (name.kind != Tok::Ident) fail(name, "expected qubit but found " + describe(name));
    if (!register_size_) fail(name, "qubit used before qreg declaration");
    if (name.text != register_name_) fail(name, "unknown register '" + name.text + "'");
    expect_symbol('[');
    const Token& idx_tok = peek();
    const std::size_t idx = expect_integer();
    expect_symbol(']');
    if (idx >= *register_size_) {
      fail(idx_tok, "qubit index " + std::to_string(idx) + " out of range for qreg " +
                        register_name_ + "[" + std::to_string(*register_size_) + "]");
    }
    return idx;
  }

  double expression() {
    double v = term();
    while (at_symbol('+') || at_symbol('-')) {
      const bool plus = next().text[0] == '+';
      const double rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = unary();
    while (at_symbol('*') || at_symbol('/')) {
      const Token& op = next();
      const double rhs = unary();
      if (op.text[0] == '*') {
        v *= rhs;
      } else {
        if (rhs == 0.0) fail(op, "division by zero in angle expression");
        v /= rhs;
      }
    }
    return v;
  }

  double unary() {
    if (at_symbol('-')) {
      next();
      return -unary();
    }
    if (at_symbol('+')) {
      next();
      return unary();
    }
    return primary();
  }

  double primary() {
    const Token& t = next();
    if (t.kind == Tok::Number) return t.value;
    if (t.kind == Tok::Ident) {
      if (t.text == "pi") return std::numbers::pi;
      fail(t, "unknown identifier '" + t.text + "' in angle expression");
    }
    if (t.kind == Tok::Symbol && t.text[0] == '(') {
      const double v = expression();
      expect_symbol(')');
      return v;
    }
    fail(t, "expected angle expression but found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Circuit circuit_;
  std::string register_name_;
  std::optional<std::size_t> register_size_;
};

std::string format_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

std::string write_qasm(const Circuit& c) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(c.num_qubits) + "];\n";
  auto q = [](std::size_t i) { return "q[" + std::to_string(i) + "]"; };
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::U3:
        out += "u3(" + format_angle(g.params[0]) + "," + format_angle(g.params[1]) +
               "," + format_angle(g.params[2]) + ") " + q(g.location[0]) + ";\n";
        break;
      case GateKind::RZ:
        out += "rz(" + format_angle(g.params[0]) + ") " + q(g.location[0]) + ";\n";
        break;
      case GateKind::CNOT:
        out += "cx " + q(g.location[0]) + "," + q(g.location[1]) + ";\n";
        break;
      case GateKind::ConstantUnitary:
      case GateKind::VariableUnitary: {
        if (g.arity() != 1) {
          throw std::invalid_argument(
              "write_qasm: " + std::to_string(g.arity()) +
              "-qubit unitary gate must be lowered before writing QASM");
        }
        const U3Angles a = unitary_to_u3(g.matrix);
        out += "u3(" + format_angle(a.theta) + "," + format_angle(a.phi) + "," +
               format_angle(a.lambda) + ") " + q(g.location[0]) + ";\n";
        break;
      }
    }
  }
  return out;
}

}  // namespace unifactor
