// repspace: command-line front end.
// Exit status: 0 confirmed or done, 2 unknown within the fuel given, 1 usage
// or input error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "acceptance/criteria.hpp"
#include "json.hpp"
#include "repspace/repspace.hpp"

using namespace repspace;
using nlohmann::json;

namespace {

constexpr int kDone = 0, kUsage = 1, kUnknown = 2;

struct Globals {
  Fuel fuel = 1000000;
  std::size_t depth = 24;
  std::size_t bits = 32;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<mpq_class> parse_rational_list(const std::string& text) {
  std::vector<mpq_class> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty element in set");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

/// q rounded to `digits` decimals, half away from zero.
std::string decimal(const mpq_class& q, unsigned digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpq_class scaled = abs(q) * scale + mpq_class(1, 2);
  mpz_class n = scaled.get_num() / scaled.get_den();
  std::string s = n.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits) s.insert(s.size() - digits, ".");
  return (q < 0 && n != 0 ? "-" : "") + s;
}

/// Least n with 2^-n <= 10^-digits / 2.
std::size_t bits_for_digits(unsigned digits) {
  mpz_class need;
  mpz_ui_pow_ui(need.get_mpz_t(), 10, digits);
  need *= 2;
  std::size_t n = 0;
  for (mpz_class p = 1; p < need; p *= 2) ++n;
  return n;
}

/// Least d with 10^d >= 2^n.
unsigned digits_for_bits(std::size_t n) {
  mpz_class p = 1, t = 1;
  p <<= static_cast<mp_bitcnt_t>(n);
  unsigned d = 0;
  for (; t < p; t *= 10) ++d;
  return d;
}

/// q_n of x, doubling the fuel from 1024 up to the cap.
std::optional<std::pair<mpq_class, Fuel>> approx_upto(const Point& x, std::size_t n, Fuel cap) {
  for (Fuel f = std::min<Fuel>(1024, cap);; f = std::min(cap, 2 * f)) {
    if (auto q = real_approx(x, n, f)) return std::pair{*q, f};
    if (f == cap) return std::nullopt;
  }
}

int emit(const json& j, int code) {
  std::cout << j.dump() << "\n";
  return code;
}

const char* status(bool ok) { return ok ? "Confirmed" : "Unknown"; }

SpaceDescriptor space_named(const std::string& s) {
  if (s == "cantor") return cantor();
  if (s == "nat") return nat();
  if (s == "real") return real();
  throw std::invalid_argument("unknown space `" + s + "`");
}

Point point_of(const SpaceDescriptor& x, const std::string& text) {
  if (x->kind == Kind::Real) return real_from_rational(parse_rational(text));
  if (x->kind == Kind::Nat && !text.empty() && std::isdigit(static_cast<unsigned char>(text[0])))
    return nat_encode(std::stoull(text));
  return {x, parse_name_literal(text)};
}

/// {W_n}: W_0 = [p(5) = 0], W_{n+1} = [p(n) = 1]. Only W_0..W_6 are needed.
Point shifted_cylinders() {
  return set_sequence(open_space(cantor()),
                      [](std::size_t n) { return n == 0 ? fn::cylinder(5, false) : fn::cylinder(n - 1, true); });
}

Point cover_of(const std::vector<std::string>& fns) {
  std::vector<Name> parts;
  for (const auto& f : fns) parts.push_back(parse_fn_literal(f));
  return set_sequence(open_space(cantor()),
                      [parts](std::size_t i) { return i < parts.size() ? parts[i] : fn::empty_open(); });
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  CLI::App app{"repspace: computable topology on represented spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--fuel", g.fuel, "fuel cap (steps)")->capture_default_str();
  app.add_option("--depth", g.depth, "search depth cap")->capture_default_str();
  app.add_option("--bits", g.bits, "output bits to produce")->capture_default_str();
  app.add_flag("--json", g.json, "JSON output where text is the default");

  std::function<int()> action;

  // t2vm
  auto* t2 = app.add_subcommand("t2vm", "run machine programs");
  t2->require_subcommand(1);
  std::string prog_file, oracle_lit = "periodic \"0\"", input_lit = "periodic \"0\"";
  auto* run = t2->add_subcommand("run", "run an assembly file on an input and oracle");
  run->add_option("file", prog_file, "assembly file")->required();
  run->add_option("--oracle", oracle_lit, "oracle name literal");
  run->add_option("--input", input_lit, "input name literal");
  run->callback([&] {
    action = [&] {
      auto prog = t2vm::assemble(read_file(prog_file));
      Name out = t2vm::run_program(prog, parse_name_literal(oracle_lit), parse_name_literal(input_lit));
      Bits b;
      for (std::size_t k = 0; k < g.bits; ++k) {
        auto p = out.bit(k, g.fuel);
        if (!p) break;
        b.push_back(*p);
      }
      bool done = b.size() == g.bits;
      return emit({{"status", status(done)}, {"bits", bits_to_string(b)}, {"requested", g.bits}, {"fuel", g.fuel}},
                  done ? kDone : kUnknown);
    };
  });
  auto* enc = t2->add_subcommand("encode", "print the wire encoding of an assembly file");
  enc->add_option("file", prog_file, "assembly file")->required();
  enc->callback([&] {
    action = [&] {
      auto prog = t2vm::assemble(read_file(prog_file));
      auto bits = t2vm::encode(prog);
      return emit({{"instructions", prog.size()}, {"encoding", bits_to_string(bits)}}, kDone);
    };
  });

  // spaces
  auto* sp = app.add_subcommand("spaces", "apply function names");
  sp->require_subcommand(1);
  std::string fn_lit, arg_lit;
  auto* ev = sp->add_subcommand("eval", "output prefix of f(x)");
  ev->add_option("--fn", fn_lit, "function literal")->required();
  ev->add_option("--arg", arg_lit, "argument name literal")->required();
  ev->callback([&] {
    action = [&] {
      Name out = apply(parse_fn_literal(fn_lit), parse_name_literal(arg_lit));
      Bits b;
      for (std::size_t k = 0; k < g.bits; ++k) {
        auto p = out.bit(k, g.fuel);
        if (!p) break;
        b.push_back(*p);
      }
      bool done = b.size() == g.bits;
      return emit({{"status", status(done)}, {"bits", bits_to_string(b)}, {"requested", g.bits}, {"fuel", g.fuel}},
                  done ? kDone : kUnknown);
    };
  });

  // sets
  auto* st = app.add_subcommand("sets", "open and closed sets");
  st->require_subcommand(1);
  std::string space_name = "cantor", open_lit, point_lit;
  bool closed = false;
  auto* mem = st->add_subcommand("member", "semidecide x in U (or x not in A with --closed)");
  mem->add_option("--space", space_name, "cantor, nat or real");
  mem->add_option("--open", open_lit, "function literal X -> S")->required();
  mem->add_option("--point", point_lit, "point")->required();
  mem->add_flag("--closed", closed, "read the function as a closed set");
  mem->callback([&] {
    action = [&] {
      auto x = space_named(space_name);
      Name u = parse_fn_literal(open_lit);
      Point s = closed ? make_closed(x, u) : make_open(x, u);
      bool ok = confirmed(member(point_of(x, point_lit), s), g.fuel);
      return emit({{"status", status(ok)}, {"fuel", g.fuel}}, ok ? kDone : kUnknown);
    };
  });

  // compact
  auto* cp = app.add_subcommand("compact", "compactness of Cantor space");
  cp->require_subcommand(1);
  std::string example;
  std::vector<std::string> cover;
  auto cantor_only = [&] {
    if (space_name != "cantor") throw std::invalid_argument("only --space cantor has a search tree");
  };
  auto search_cap = [&] { return std::min<Fuel>(g.fuel, Fuel{1} << std::min<std::size_t>(g.depth == 0 ? 0 : g.depth - 1, 62)); };
  auto* isfull = cp->add_subcommand("isfull", "semidecide U = Cantor space by tree search");
  isfull->add_option("--space", space_name, "cantor");
  isfull->add_option("--open", open_lit, "function literal Cantor -> S");
  isfull->add_option("--example", example, "shifted-cylinders");
  isfull->callback([&] {
    action = [&] {
      cantor_only();
      OpenSet u = example == "shifted-cylinders" ? countable_union(shifted_cylinders())
                  : example.empty()              ? make_open(cantor(), parse_fn_literal(open_lit))
                                                 : throw std::invalid_argument("unknown example `" + example + "`");
      const Fuel cap = search_cap();
      auto r = search_is_full(cantor_tree(), u, cap);
      // fuel: the confirming round, or the budget spent without confirmation
      json j{{"status", status(r.confirmed)}, {"depth", r.confirmed ? json(r.depth) : json(nullptr)}, {"N", nullptr},
             {"fuel", r.confirmed ? r.fuel : cap}, {"nodes", r.nodes}};
      return emit(j, r.confirmed ? kDone : kUnknown);
    };
  });
  auto* sub = cp->add_subcommand("subcover", "least N such that U_0..U_N cover Cantor space");
  sub->add_option("--space", space_name, "cantor");
  sub->add_option("--example", example, "shifted-cylinders");
  sub->add_option("--cover", cover, "function literals U_0, U_1, ... (repeatable)");
  sub->callback([&] {
    action = [&] {
      cantor_only();
      if (example.empty() == cover.empty()) throw std::invalid_argument("give exactly one of --example, --cover");
      if (!example.empty() && example != "shifted-cylinders") throw std::invalid_argument("unknown example `" + example + "`");
      Point us = example.empty() ? cover_of(cover) : shifted_cylinders();
      auto r = finite_subcover(us, cantor_as_compact(), search_cap());
      if (!r) return emit({{"status", "Unknown"}, {"depth", nullptr}, {"N", nullptr}}, kUnknown);
      auto s = search_is_full(cantor_tree(), countable_union(Point{us.space, fn::truncate(us.name, r->n)}), r->fuel);
      json j{{"status", status(r->validated)}, {"depth", s.confirmed ? json(s.depth) : json(nullptr)}, {"N", r->n},
             {"traced", r->traced}, {"fuel", r->fuel}};
      return emit(j, r->validated ? kDone : kUnknown);
    };
  });

  // overt
  auto* ov = app.add_subcommand("overt", "overtness");
  ov->require_subcommand(1);
  std::vector<std::string> points;
  auto* inter = ov->add_subcommand("intersects", "semidecide A meets U; A is the listed points, or the whole space");
  inter->add_option("--space", space_name, "cantor, nat or real");
  inter->add_option("--open", open_lit, "function literal X -> S")->required();
  inter->add_option("--point", points, "points of A (repeatable)");
  inter->callback([&] {
    action = [&] {
      auto x = space_named(space_name);
      OvertSet a = whole_overt(x);
      if (!points.empty()) {
        a = closure_singleton(point_of(x, points[0]));
        for (std::size_t i = 1; i < points.size(); ++i) a = v_union(a, closure_singleton(point_of(x, points[i])));
      }
      bool ok = confirmed(intersects(a, make_open(x, parse_fn_literal(open_lit))), g.fuel);
      return emit({{"status", status(ok)}, {"fuel", g.fuel}}, ok ? kDone : kUnknown);
    };
  });

  // sep
  auto* sep = app.add_subcommand("sep", "inequality and equality");
  sep->require_subcommand(1);
  std::string xs, ys;
  space_name = "cantor";
  for (const char* which : {"neq", "eq"}) {
    auto* c = sep->add_subcommand(which, std::string("semidecide x ") + (which[0] == 'n' ? "!=" : "=") + " y");
    c->add_option("--space", space_name, "cantor, nat or real");
    c->add_option("--x", xs, "first point")->required();
    c->add_option("--y", ys, "second point")->required();
    const bool is_neq = which[0] == 'n';
    c->callback([&, is_neq] {
      action = [&, is_neq] {
        auto x = space_named(space_name);
        Point px = point_of(x, xs), py = point_of(x, ys);
        bool ok = confirmed(is_neq ? neq(px, py) : eq(px, py), g.fuel);
        return emit({{"status", status(ok)}, {"fuel", g.fuel}}, ok ? kDone : kUnknown);
      };
    });
  }

  // real
  auto* rl = app.add_subcommand("real", "exact reals");
  rl->require_subcommand(1);
  std::string set_text, expr_text, sup_on, at_text;
  unsigned digits = 6;
  std::size_t prec = 12;
  auto* mx = rl->add_subcommand("max", "max of a finite set of rationals, given as compact and overt");
  mx->add_option("--set", set_text, "comma-separated rationals")->required();
  mx->add_option("--digits", digits, "decimal digits")->capture_default_str();
  mx->callback([&] {
    action = [&] {
      auto qs = parse_rational_list(set_text);
      if (qs.empty()) throw std::invalid_argument("max of the empty set");
      auto r = approx_upto(real_max(finite_compact(qs), finite_overt(qs)), bits_for_digits(digits), g.fuel);
      const std::string bound = "1e-" + std::to_string(digits);
      if (!r) {
        if (g.json) return emit({{"status", "Unknown"}}, kUnknown);
        std::cout << "Unknown\n";
        return kUnknown;
      }
      if (g.json) return emit({{"status", "Confirmed"}, {"value", decimal(r->first, digits)}, {"error", bound}, {"fuel", r->second}}, kDone);
      std::cout << decimal(r->first, digits) << " ± " << bound << "\n";
      return kDone;
    };
  });
  auto* re = rl->add_subcommand("eval", "value at a rational, or sup over [0,1], of a polynomial in x");
  re->add_option("--expr", expr_text, "expression in x with + - * and rational literals")->required();
  auto* sup_opt = re->add_option("--sup-on", sup_on, "unit");
  auto* at_opt = re->add_option("--at", at_text, "rational point");
  sup_opt->excludes(at_opt);
  re->add_option("--prec", prec, "error bound 2^-prec")->capture_default_str();
  re->callback([&] {
    action = [&] {
      auto e = RealExpr::parse(expr_text);
      Point v;
      if (!sup_on.empty()) {
        if (sup_on != "unit") throw std::invalid_argument("--sup-on supports only `unit`");
        auto [ku, vu] = unit_interval();
        Point f = e.realizer();
        v = real_max(k_image(f, ku), v_image(f, vu));
      } else if (!at_text.empty()) {
        v = eval(e.realizer(), real_from_rational(parse_rational(at_text)));
      } else {
        throw std::invalid_argument("give --sup-on unit or --at <q>");
      }
      // q_{prec+1} rounded to d decimals is within 2^-(prec+1) + 10^-d / 2 <= 2^-prec.
      auto r = approx_upto(v, prec + 1, g.fuel);
      const std::string bound = "2^-" + std::to_string(prec);
      if (!r) {
        if (g.json) return emit({{"status", "Unknown"}}, kUnknown);
        std::cout << "Unknown\n";
        return kUnknown;
      }
      const unsigned d = digits_for_bits(prec);
      if (g.json)
        return emit({{"status", "Confirmed"}, {"value", decimal(r->first, d)}, {"exact", r->first.get_str()}, {"error", bound},
                     {"fuel", r->second}},
                    kDone);
      std::cout << decimal(r->first, d) << " ± " << bound << "\n";
      return kDone;
    };
  });

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->callback([&] {
    action = [] { return acceptance::run_all(std::cout) ? kDone : kUsage; };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kDone : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kDone : kUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
