#include "dcont/cli.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcont/dsl.hpp"
#include "dcont/monadic.hpp"

namespace dcont::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string subcommand;
  std::string file;
  std::string object;
  std::string shape_expr;
  std::string payloads;
  std::string func;
  std::string name;
  std::vector<std::string> args;
  std::string mode;
  std::string construct_kind;
  bool json = false;
  Bounds bounds;
};

[[noreturn]] void usage_fail(const std::string& message) {
  fail("usage-error", message + "\n" + usage());
}

Bounds default_bounds() {
  Bounds b;
  if (const char* env = std::getenv("DCONT_DEFAULT_BOUNDS")) {
    std::istringstream in(env);
    std::string part;
    std::vector<std::int64_t> nums;
    while (std::getline(in, part, ',')) nums.push_back(std::stoll(part));
    if (nums.size() != 3) fail("usage-error", "DCONT_DEFAULT_BOUNDS must be 'shapes,fuel,payloads'");
    b.shape_bound = static_cast<std::uint64_t>(nums[0]);
    b.position_fuel = Fuel{static_cast<int>(nums[1])};
    b.payload_samples = static_cast<int>(nums[2]);
  }
  return b;
}

Options parse_options(const std::vector<std::string>& argv) {
  Options o;
  o.bounds = default_bounds();
  if (argv.empty()) usage_fail("missing subcommand");
  o.subcommand = argv[0];
  std::size_t i = 1;
  if (o.subcommand == "construct") {
    if (argv.size() < 2) usage_fail("construct needs a kind");
    o.construct_kind = argv[1];
    i = 2;
  }
  auto need_value = [&](const std::string& flag) -> std::string {
    if (i + 1 >= argv.size()) usage_fail(flag + " needs a value");
    return argv[++i];
  };
  for (; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--json") {
      o.json = true;
    } else if (a == "--object") {
      o.object = need_value(a);
    } else if (a == "--shape") {
      o.shape_expr = need_value(a);
    } else if (a == "--payloads") {
      o.payloads = need_value(a);
    } else if (a == "--f") {
      o.func = need_value(a);
    } else if (a == "--name") {
      o.name = need_value(a);
    } else if (a == "--mode") {
      o.mode = need_value(a);
    } else if (a == "--args") {
      std::istringstream in(need_value(a));
      std::string part;
      while (std::getline(in, part, ',')) o.args.push_back(part);
    } else if (a == "--shape-bound") {
      o.bounds.shape_bound = static_cast<std::uint64_t>(std::stoll(need_value(a)));
    } else if (a == "--pos-fuel") {
      o.bounds.position_fuel = Fuel{static_cast<int>(std::stoll(need_value(a)))};
    } else if (a == "--payload-samples") {
      o.bounds.payload_samples = static_cast<int>(std::stoll(need_value(a)));
    } else if (!a.empty() && a[0] == '-') {
      usage_fail("unknown flag " + a);
    } else if (o.file.empty()) {
      o.file = a;
    } else {
      usage_fail("unexpected argument " + a);
    }
  }
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("usage-error", "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ordered_json report_to_json(const std::string& object, const Bounds& b, const LawReport& report) {
  ordered_json doc;
  doc["object"] = object;
  doc["bounds"] = {{"shapes", b.shape_bound},
                   {"fuel", b.position_fuel.depth},
                   {"payloads", b.payload_samples}};
  ordered_json laws = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json law;
    law["id"] = e.id;
    law["status"] = to_string(e.status);
    law["cases"] = e.cases;
    if (!e.counterexample.empty()) {
      ordered_json ce;
      for (const auto& bd : e.counterexample) ce[bd.var] = bd.rendered;
      law["counterexample"] = ce;
    }
    if (!e.note.empty()) law["note"] = e.note;
    laws.push_back(law);
  }
  doc["laws"] = laws;
  return doc;
}

void report_to_text(const std::string& object, const LawReport& report, std::ostream& out) {
  out << "object " << object << "\n";
  for (const auto& e : report.entries) {
    out << "  " << e.id << ": " << to_string(e.status) << " (" << e.cases << " cases)";
    if (!e.counterexample.empty()) {
      out << "  counterexample:";
      for (const auto& bd : e.counterexample) out << " " << bd.var << " = " << bd.rendered;
    }
    if (!e.note.empty()) out << "  [" << e.note << "]";
    out << "\n";
  }
}

LawReport check_morphism_wf(const ContainerMorphism& m, const Bounds& b) {
  LawCheck lc("position-map-in-range");
  Fuel fuel = b.position_fuel;
  for_shapes(m.source.shapes(), b.shape_bound, lc, [&](const Value& s) {
    lc.guarded({bind("s", s)}, [&] {
      Value ts = m.shape_map(s);
      if (m.target.shapes().contains(ts, fuel) == Tri::Unequal) {
        lc.case_eq(Value::boolean(true), Value::boolean(false), fuel,
                   {bind("s", s), bind("t(s)", ts)});
        return;
      }
      Enumeration src_pos = m.source.positions(s);
      for_each_bounded(m.target.positions(ts), static_cast<std::uint64_t>(fuel.depth), lc,
                       [&](const Value& p) {
                         lc.guarded({bind("s", s), bind("p", p)}, [&] {
                           Value q = m.position_map(s, p);
                           bool ok = src_pos.contains(q, fuel) != Tri::Unequal;
                           lc.case_eq(Value::boolean(true), Value::boolean(ok), fuel,
                                      {bind("s", s), bind("p", p), bind("q", q)});
                         });
                       });
    });
  });
  LawReport report;
  report.entries = {lc.finish()};
  return report;
}

struct CheckedObject {
  std::string name;
  LawReport report;
};

std::vector<CheckedObject> run_checks(const dsl::Env& env, const Options& o) {
  std::vector<CheckedObject> out;
  for (const auto& name : env.order) {
    if (!o.object.empty() && name != o.object) continue;
    if (auto it = env.directed.find(name); it != env.directed.end()) {
      out.push_back({name, check_dc_laws(it->second, o.bounds)});
    } else if (auto is = env.stricts.find(name); is != env.stricts.end()) {
      out.push_back({name, check_strict_laws(is->second, o.bounds)});
    } else if (auto im = env.morphisms.find(name); im != env.morphisms.end()) {
      if (im->second.as_dc)
        out.push_back({name, check_dc_morphism_laws(*im->second.as_dc, o.bounds)});
      else
        out.push_back({name, check_morphism_wf(im->second.morphism, o.bounds)});
    }
  }
  if (out.empty()) {
    if (!o.object.empty()) fail("unknown-identifier", "no checkable object named " + o.object);
    fail("usage-error", "no checkable objects in " + o.file);
  }
  return out;
}

CommandResult emit_reports(const std::vector<CheckedObject>& checked, const Options& o) {
  bool any_fail = false;
  for (const auto& c : checked)
    if (!c.report.all_ok()) any_fail = true;
  std::ostringstream out;
  if (o.json) {
    if (checked.size() == 1) {
      out << report_to_json(checked[0].name, o.bounds, checked[0].report).dump(2) << "\n";
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& c : checked) arr.push_back(report_to_json(c.name, o.bounds, c.report));
      out << arr.dump(2) << "\n";
    }
  } else {
    for (const auto& c : checked) report_to_text(c.name, c.report, out);
  }
  return CommandResult{any_fail ? 1 : 0, out.str()};
}

const DirectedContainer& pick_directed(const dsl::Env& env, const Options& o) {
  if (!o.object.empty()) {
    auto it = env.directed.find(o.object);
    if (it == env.directed.end())
      fail("unknown-identifier", "no directed container named " + o.object);
    return it->second;
  }
  for (const auto& name : env.order)
    if (auto it = env.directed.find(name); it != env.directed.end()) return it->second;
  fail("usage-error", "no directed container in " + o.file);
}

DataStructure build_structure(const DirectedContainer& e, const Options& o) {
  if (o.shape_expr.empty()) usage_fail("--shape is required");
  Value shape = dsl::eval_expr(dsl::parse_expr_string(o.shape_expr), {});
  if (e.base.shapes().contains(shape, Fuel{64}) == Tri::Unequal)
    fail("shape-not-in-container", render(shape) + " is not a shape of " + e.base.name());
  Enumeration pos = e.base.positions(shape);
  auto card = pos.cardinality();
  if (!card) fail("usage-error", "shape has infinitely many positions; cannot list payloads");
  std::vector<Value> payloads;
  if (!o.payloads.empty()) {
    std::istringstream in(o.payloads);
    std::string part;
    while (std::getline(in, part, ',')) {
      bool numeric = !part.empty() && (std::isdigit(static_cast<unsigned char>(part[0])) ||
                                       (part[0] == '-' && part.size() > 1));
      payloads.push_back(numeric ? Value::integer(std::stoll(part)) : Value::symbol(part));
    }
  }
  if (payloads.size() != *card)
    fail("usage-error", "shape " + render(shape) + " has " + std::to_string(*card) +
                            " positions but " + std::to_string(payloads.size()) +
                            " payloads were given");
  auto table = std::make_shared<std::vector<Value>>(std::move(payloads));
  Enumeration pos_copy = pos;
  return DataStructure{e.base, shape, [table, pos_copy](const Value& p) {
                         auto idx = pos_copy.index_of(p, 4096, Fuel{16});
                         if (!idx) fail("position-not-found", render(p));
                         return (*table)[*idx];
                       }};
}

CommandResult cmd_check(const Options& o) {
  dsl::Env env = dsl::elaborate(dsl::parse_spec(read_file(o.file)));
  return emit_reports(run_checks(env, o), o);
}

CommandResult cmd_builtins(const Options& o) {
  std::vector<CheckedObject> checked;
  for (const auto& name : builtin_names())
    checked.push_back({name, check_dc_laws(builtin(name), o.bounds)});
  return emit_reports(checked, o);
}

CommandResult cmd_interp(const Options& o) {
  dsl::Env env = dsl::elaborate(dsl::parse_spec(read_file(o.file)));
  const DirectedContainer& e = pick_directed(env, o);
  DataStructure d = build_structure(e, o);
  return CommandResult{0, render(encode_structure(d), Fuel{32}) + "\n"};
}

CommandResult cmd_duplicate(const Options& o) {
  dsl::Env env = dsl::elaborate(dsl::parse_spec(read_file(o.file)));
  const DirectedContainer& e = pick_directed(env, o);
  DataStructure d = build_structure(e, o);
  return CommandResult{0, render(encode_structure(dc_comult(e, d)), Fuel{32}) + "\n"};
}

CommandResult cmd_extract(const Options& o) {
  dsl::Env env = dsl::elaborate(dsl::parse_spec(read_file(o.file)));
  const DirectedContainer& e = pick_directed(env, o);
  DataStructure d = build_structure(e, o);
  return CommandResult{0, render(dc_counit(e, d), Fuel{32}) + "\n"};
}

CommandResult cmd_extend(const Options& o) {
  dsl::Env env = dsl::elaborate(dsl::parse_spec(read_file(o.file)));
  const DirectedContainer& e = pick_directed(env, o);
  DataStructure d = build_structure(e, o);
  std::function<Value(const DataStructure&)> f;
  if (o.func == "counit" || o.func.empty()) {
    DirectedContainer ec = e;
    f = [ec](const DataStructure& sub) { return dc_counit(ec, sub); };
  } else if (o.func == "shape") {
    f = [](const DataStructure& sub) { return sub.shape; };
  } else if (o.func.rfind("const:", 0) == 0) {
    std::string lit = o.func.substr(6);
    bool numeric = !lit.empty() && (std::isdigit(static_cast<unsigned char>(lit[0])) ||
                                    (lit[0] == '-' && lit.size() > 1));
    Value v = numeric ? Value::integer(std::stoll(lit)) : Value::symbol(lit);
    f = [v](const DataStructure&) { return v; };
  } else {
    usage_fail("--f must be one of counit, shape, const:<value>");
  }
  return CommandResult{0, render(encode_structure(dc_extend(e, f, d)), Fuel{32}) + "\n"};
}

CommandResult cmd_construct(const Options& o) {
  if (o.name.empty()) usage_fail("construct needs --name");
  if (o.args.empty()) usage_fail("construct needs --args");
  dsl::Spec spec = dsl::parse_spec(read_file(o.file));
  dsl::ConstructDecl directive;
  directive.name = o.name;
  directive.kind = o.construct_kind;
  directive.args = o.args;
  directive.mode = o.mode;
  // Validate by elaborating the input together with the directive.
  dsl::Spec with_directive = spec;
  with_directive.decls.push_back(directive);
  dsl::elaborate(with_directive);
  return CommandResult{0, dsl::emit_construct(spec, directive)};
}

}  // namespace

std::string usage() {
  return "usage:\n"
         "  dcont check <file.dcont> [--object NAME] [--shape-bound N] [--pos-fuel N]\n"
         "        [--payload-samples N] [--json]\n"
         "  dcont interp <file.dcont> [--object NAME] --shape EXPR --payloads a,b,c\n"
         "  dcont duplicate <file.dcont> [--object NAME] --shape EXPR --payloads a,b,c\n"
         "  dcont extract <file.dcont> [--object NAME] --shape EXPR --payloads a,b,c\n"
         "  dcont extend <file.dcont> [--object NAME] --shape EXPR --payloads a,b,c\n"
         "        --f {counit|shape|const:<v>}\n"
         "  dcont construct {coproduct|product|cofree|focus} <file.dcont> --name NAME\n"
         "        --args A[,B] [--mode recursive|bounded]\n"
         "  dcont builtins [--json] [bounds flags]\n"
         "\n"
         "bounds default to 6,8,3 (shapes, fuel, payload samples); the\n"
         "DCONT_DEFAULT_BOUNDS environment variable ('s,f,p') overrides them.\n";
}

CommandResult run_command(const std::vector<std::string>& argv) {
  try {
    Options o = parse_options(argv);
    if (o.subcommand == "check") {
      if (o.file.empty()) usage_fail("check needs a file");
      return cmd_check(o);
    }
    if (o.subcommand == "builtins") return cmd_builtins(o);
    if (o.subcommand == "interp") return cmd_interp(o);
    if (o.subcommand == "duplicate") return cmd_duplicate(o);
    if (o.subcommand == "extract") return cmd_extract(o);
    if (o.subcommand == "extend") return cmd_extend(o);
    if (o.subcommand == "construct") return cmd_construct(o);
    usage_fail("unknown subcommand " + o.subcommand);
  } catch (const Error& e) {
    return CommandResult{2, std::string(e.what()) + "\n"};
  } catch (const std::exception& e) {
    return CommandResult{2, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace dcont::cli
