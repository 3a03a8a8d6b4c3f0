#ifndef REPSPACE_FN_LITERAL_HPP
#define REPSPACE_FN_LITERAL_HPP

// Textual function names, for the command line and tests.
//
//   fn   := atom | head '(' arg {',' arg} ')'
//   atom := identity | proj1 | proj2 | diagonal | eval | swap | empty | full
//         | and | or | countable_or | nat_eq | nat_neq | cantor_neq
//         | real_less | real_add | real_sub | real_mul
//   head := compose f g | product f g | fanout f g | curry f | uncurry f
//         | union f g | intersection f g | cylinder i b | const <name literal>
//         | asm "<assembly, ';' or '|' separating lines>"
//
// union and intersection are pointwise or/and of two S-valued functions. A
// bare name literal (word/periodic/nat) is accepted as a raw function name.

#include "reals.hpp"

namespace repspace {

namespace detail {

struct FnParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("function literal, at " + std::to_string(pos) + ": " + msg);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (start == pos) fail("expected a name");
    return std::string(s.substr(start, pos - start));
  }
  std::size_t number() {
    std::string t = ident();
    if (!std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) fail("expected a number, got " + t);
    return std::stoull(t);
  }
  // Raw text up to the ',' or ')' closing the current argument, quotes respected.
  std::string_view raw_arg() {
    skip();
    std::size_t start = pos;
    bool quoted = false;
    int depth = 0;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (c == '"') quoted = !quoted;
      if (quoted) continue;
      if (c == '(') ++depth;
      if ((c == ',' || c == ')') && depth == 0) break;
      if (c == ')') --depth;
    }
    if (quoted) fail("unterminated string");
    return s.substr(start, pos - start);
  }
  void close() {
    if (!eat(')')) fail("expected `)`");
  }
  void comma() {
    if (!eat(',')) fail("expected `,`");
  }

  Name fn() {
    const std::string head = ident();
    static const std::map<std::string, std::function<Name()>> atoms = {
        {"identity", [] { return fn::identity(); }},
        {"proj1", [] { return fn::proj1(); }},
        {"proj2", [] { return fn::proj2(); }},
        {"diagonal", [] { return fn::diagonal(); }},
        {"eval", [] { return fn::eval(); }},
        {"swap", [] { return fn::swap(); }},
        {"empty", [] { return fn::empty_open(); }},
        {"full", [] { return fn::full_open(); }},
        {"and", [] { return fn::sierp_and(); }},
        {"or", [] { return fn::sierp_or(); }},
        {"countable_or", [] { return fn::sierp_countable_or(); }},
        {"nat_eq", [] { return fn::builtin(Builtin::NatEq); }},
        {"nat_neq", [] { return fn::builtin(Builtin::NatNeq); }},
        {"cantor_neq", [] { return fn::builtin(Builtin::CantorNeq); }},
        {"real_less", [] { return fn::builtin(Builtin::RealLess); }},
        {"real_add", [] { return fn::builtin(Builtin::RealAdd); }},
        {"real_sub", [] { return fn::builtin(Builtin::RealSub); }},
        {"real_mul", [] { return fn::builtin(Builtin::RealMul); }},
    };
    if (!eat('(')) {
      auto it = atoms.find(head);
      if (it == atoms.end()) fail("unknown function `" + head + "`");
      return it->second();
    }
    auto two = [&](auto make) {
      Name f = fn();
      comma();
      Name g = fn();
      close();
      return make(std::move(f), std::move(g));
    };
    if (head == "compose") return two([](Name f, Name g) { return fn::compose(f, g); });
    if (head == "product") return two([](Name f, Name g) { return fn::product(f, g); });
    if (head == "fanout") return two([](Name f, Name g) { return fn::fanout(f, g); });
    if (head == "union") return two([](Name f, Name g) { return detail::pointwise(fn::sierp_or(), f, g); });
    if (head == "intersection") return two([](Name f, Name g) { return detail::pointwise(fn::sierp_and(), f, g); });
    if (head == "curry" || head == "uncurry") {
      Name f = fn();
      close();
      return head == "curry" ? fn::curry(f) : fn::uncurry(f);
    }
    if (head == "cylinder") {
      std::size_t i = number();
      comma();
      std::size_t b = number();
      close();
      if (b > 1) fail("cylinder bit must be 0 or 1");
      return fn::cylinder(i, b == 1);
    }
    if (head == "const") {
      Name y = parse_name_literal(raw_arg());
      close();
      return fn::const_fn(y);
    }
    if (head == "asm") {
      std::string text(raw_arg());
      close();
      text.erase(std::remove(text.begin(), text.end(), '"'), text.end());
      std::replace(text.begin(), text.end(), '|', '\n');
      // ';' separates lines here; assembly comments are unavailable inline.
      std::replace(text.begin(), text.end(), ';', '\n');
      return fn::machine(t2vm::assemble(text));
    }
    fail("unknown function `" + head + "`");
  }
};

}  // namespace detail

inline Name parse_fn_literal(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  if (t.starts_with("word ") || t.starts_with("periodic ") || t.starts_with("nat ")) return parse_name_literal(t);
  detail::FnParser p{text};
  Name f = p.fn();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing text");
  return f;
}

}  // namespace repspace

#endif  // REPSPACE_FN_LITERAL_HPP
