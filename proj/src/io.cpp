#include "semfo/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace semfo {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

namespace {

json parse_doc(const std::string& text, const char* what) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

const json& field(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

template <class T>
T get(const json& j, const char* key, const char* what) {
  try {
    return field(j, key, what).get<T>();
  } catch (const json::type_error&) {
    throw FormatError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

Semiring doc_semiring(const json& j, const std::optional<Semiring>& expected, const char* what) {
  Semiring k = Semiring::from_name(get<std::string>(j, "semiring", what));
  if (expected && expected->kind != k.kind)
    throw InstanceMismatch(std::string(what) + " is over " + std::string(k.name()) + ", expected " +
                           std::string(expected->name()));
  return k;
}

Element element(const Semiring& k, const json& v) {
  if (v.is_string()) return k.parse(v.get<std::string>());
  if (v.is_boolean()) return k.parse(v.get<bool>() ? "true" : "false");
  if (v.is_number_integer()) return k.parse(v.dump());
  throw FormatError("element must be a string, integer or boolean: " + v.dump());
}

json element_json(const Semiring& k, const Element& e) { return k.format(e); }

std::vector<Symbol> symbols(const json& arr, const char* what) {
  std::vector<Symbol> out;
  for (const auto& s : arr) out.push_back({get<std::string>(s, "name", what), get<std::size_t>(s, "arity", what)});
  return out;
}

json symbols_json(const std::vector<Symbol>& v) {
  json arr = json::array();
  for (const auto& s : v) arr.push_back({{"name", s.name}, {"arity", s.arity}});
  return arr;
}

}  // namespace

// ---------------------------------------------------------------- interpretations

Interpretation interpretation_from_json(const std::string& text, const std::optional<Semiring>& expected) {
  const char* what = "interpretation";
  json j = parse_doc(text, what);
  Semiring k = doc_semiring(j, expected, what);
  auto universe = get<std::vector<std::string>>(j, "universe", what);
  auto rels = symbols(field(j, "vocabulary", what), what);
  Interpretation pi(k, universe, rels);
  std::vector<std::set<std::size_t>> seen(rels.size());
  for (const auto& lit : field(j, "literals", what)) {
    auto name = get<std::string>(lit, "relation", what);
    auto r = pi.relation_index(name);
    if (!r) throw FormatError("interpretation: unknown relation '" + name + "'");
    Tuple t;
    for (const auto& a : get<std::vector<std::string>>(lit, "args", what)) {
      auto e = pi.element_index(a);
      if (!e) throw FormatError("interpretation: '" + a + "' is not a universe element");
      t.push_back(*e);
    }
    if (t.size() != rels[*r].arity)
      throw FormatError("interpretation: literal of '" + name + "' has " + std::to_string(t.size()) +
                        " arguments, expected " + std::to_string(rels[*r].arity));
    std::size_t rank = pi.tuple_rank(*r, t);
    if (!seen[*r].insert(rank).second) throw FormatError("interpretation: duplicate literal of '" + name + "'");
    pi.set(*r, rank, false, element(k, field(lit, "pos", what)));
    pi.set(*r, rank, true, element(k, field(lit, "neg", what)));
  }
  for (std::size_t r = 0; r < rels.size(); ++r)
    if (seen[r].size() != pi.tuple_count(r)) {
      for (std::size_t rank = 0; rank < pi.tuple_count(r); ++rank)
        if (!seen[r].count(rank)) {
          std::string args;
          for (auto a : pi.tuple_at(r, rank)) args += (args.empty() ? "" : ",") + universe[a];
          throw FormatError("interpretation: missing literal " + rels[r].name + "(" + args + ")");
        }
    }
  return pi;
}

std::string interpretation_to_json(const Interpretation& pi) {
  const Semiring& k = pi.semiring();
  json j;
  j["semiring"] = std::string(k.name());
  j["universe"] = pi.universe();
  j["vocabulary"] = symbols_json(pi.relations());
  json lits = json::array();
  for (std::size_t r = 0; r < pi.relations().size(); ++r)
    for (std::size_t rank = 0; rank < pi.tuple_count(r); ++rank) {
      std::vector<std::string> args;
      for (auto a : pi.tuple_at(r, rank)) args.push_back(pi.universe()[a]);
      lits.push_back({{"relation", pi.relations()[r].name},
                      {"args", args},
                      {"pos", element_json(k, pi.value(r, rank, false))},
                      {"neg", element_json(k, pi.value(r, rank, true))}});
    }
  j["literals"] = lits;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- built-ins

namespace {

Family family_from_json(const Semiring& k, const json& j) {
  const char* what = "built-in family";
  if (j.contains("tables")) {
    Family f;
    f.generator = Family::Generator::table;
    for (const auto& t : j["tables"]) {
      Family::Table tab;
      tab.fallback = t.contains("default") ? element(k, t["default"]) : k.zero;
      if (t.contains("entries"))
        for (const auto& e : t["entries"])
          tab.entries[get<std::vector<std::size_t>>(e, "args", what)] = element(k, field(e, "value", what));
      f.tables[get<std::size_t>(t, "n", what)] = std::move(tab);
    }
    return f;
  }
  auto gen = get<std::string>(j, "generator", what);
  Element v = j.contains("value") ? element(k, j["value"]) : k.one;
  if (gen == "constant") return Family::constant(v);
  if (gen == "equality") return Family::equality(v);
  if (gen == "successor") return Family::successor(v);
  if (gen == "less") return Family::less(v);
  throw FormatError("unknown built-in generator '" + gen + "'");
}

json family_json(const Semiring& k, const Family& f, std::size_t arity, std::optional<std::size_t> tab_n) {
  switch (f.generator) {
    case Family::Generator::constant: return {{"generator", "constant"}, {"value", element_json(k, f.value)}};
    case Family::Generator::equality: return {{"generator", "equality"}, {"value", element_json(k, f.value)}};
    case Family::Generator::successor: return {{"generator", "successor"}, {"value", element_json(k, f.value)}};
    case Family::Generator::less: return {{"generator", "less"}, {"value", element_json(k, f.value)}};
    case Family::Generator::table: {
      json tables = json::array();
      for (const auto& [n, t] : f.tables) {
        json entries = json::array();
        for (const auto& [args, v] : t.entries) entries.push_back({{"args", args}, {"value", element_json(k, v)}});
        tables.push_back({{"n", n}, {"default", element_json(k, t.fallback)}, {"entries", entries}});
      }
      return {{"tables", tables}};
    }
    case Family::Generator::function: {
      if (!tab_n) break;
      const std::size_t n = *tab_n;
      json entries = json::array();
      std::vector<std::size_t> args(arity, 1);
      while (true) {
        Element v = f.at(k, n, args);
        if (!k.is_zero(v)) entries.push_back({{"args", args}, {"value", element_json(k, v)}});
        std::size_t i = arity;
        while (i > 0 && args[i - 1] == n) args[--i] = 1;
        if (i == 0) break;
        ++args[i - 1];
      }
      return {{"tables", json::array({{{"n", n}, {"default", element_json(k, k.zero)}, {"entries", entries}}})}};
    }
  }
  throw FormatError("computed built-in families need a universe size to be written as tables");
}

}  // namespace

BuiltinInterpretation builtins_from_json(const std::string& text, const Semiring& k) {
  const char* what = "built-in interpretation";
  json j = parse_doc(text, what);
  doc_semiring(j, k, what);
  BuiltinInterpretation rho;
  for (const auto& s : field(j, "symbols", what)) {
    BuiltinInterpretation::Entry e;
    auto name = get<std::string>(s, "name", what);
    e.arity = get<std::size_t>(s, "arity", what);
    if (e.arity == 0) throw FormatError("built-in '" + name + "' is nullary");
    e.positive = family_from_json(k, field(s, "positive", what));
    e.negative = family_from_json(k, field(s, "negative", what));
    if (!rho.symbols.emplace(name, std::move(e)).second) throw FormatError("duplicate built-in '" + name + "'");
  }
  return rho;
}

std::string builtins_to_json(const BuiltinInterpretation& rho, const Semiring& k, std::optional<std::size_t> tabulate_n) {
  json j;
  j["semiring"] = std::string(k.name());
  json arr = json::array();
  for (const auto& [name, e] : rho.symbols)
    arr.push_back({{"name", name},
                   {"arity", e.arity},
                   {"positive", family_json(k, e.positive, e.arity, tabulate_n)},
                   {"negative", family_json(k, e.negative, e.arity, tabulate_n)}});
  j["symbols"] = arr;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- circuits

Circuit circuit_from_json(const std::string& text, const std::optional<Semiring>& expected) {
  const char* what = "circuit";
  json j = parse_doc(text, what);
  Circuit c(doc_semiring(j, expected, what));
  for (const auto& g : field(j, "gates", what)) {
    Gate gate;
    gate.id = get<std::size_t>(g, "id", what);
    int t = get<int>(g, "type", what);
    if (t < 1 || t > 9) throw FormatError("circuit: gate " + std::to_string(gate.id) + " has type " + std::to_string(t));
    gate.type = static_cast<GateType>(t);
    if (g.contains("preds")) gate.preds = g["preds"].get<std::vector<std::size_t>>();
    if (g.contains("value")) gate.value = element(c.k, g["value"]);
    if (g.contains("input")) gate.io = g["input"].get<std::size_t>();
    if (g.contains("output")) gate.io = g["output"].get<std::size_t>();
    c.gates.push_back(std::move(gate));
  }
  return c;
}

std::string circuit_to_json(const Circuit& c) {
  json j;
  j["semiring"] = std::string(c.k.name());
  json gates = json::array();
  for (const auto& g : c.gates) {
    json r = {{"id", g.id}, {"type", static_cast<int>(g.type)}};
    if (!g.preds.empty()) r["preds"] = g.preds;
    if (g.value) r["value"] = element_json(c.k, *g.value);
    if (g.io && g.type == GateType::input) r["input"] = *g.io;
    if (g.io && g.type == GateType::output) r["output"] = *g.io;
    gates.push_back(r);
  }
  j["gates"] = gates;
  // one gate per line keeps fixtures diffable
  std::string out = "{\n  \"semiring\": " + json(j["semiring"]).dump() + ",\n  \"gates\": [\n";
  for (std::size_t i = 0; i < gates.size(); ++i) out += "    " + gates[i].dump() + (i + 1 < gates.size() ? ",\n" : "\n");
  return out + "  ]\n}\n";
}

// ---------------------------------------------------------------- BSS programs

BssProgram bss_from_json(const std::string& text, const std::optional<Semiring>& expected) {
  const char* what = "BSS program";
  json j = parse_doc(text, what);
  BssProgram p(doc_semiring(j, expected, what));
  for (const auto& r : field(j, "nodes", what)) {
    BssNode n;
    n.label = get<std::size_t>(r, "label", what);
    auto type = get<std::string>(r, "type", what);
    if (type == "input") {
      n.type = BssNodeType::input;
      n.next = get<std::size_t>(r, "next", what);
    } else if (type == "output") {
      n.type = BssNodeType::output;
    } else if (type == "compute") {
      n.type = BssNodeType::compute;
      auto op = get<std::string>(r, "op", what);
      n.target = get<long>(r, "target", what);
      if (op == "const") {
        n.op = BssOp::constant;
        n.value = element(p.k, field(r, "value", what));
      } else if (op == "add" || op == "mul") {
        n.op = op == "add" ? BssOp::add : BssOp::mul;
        n.lhs = get<long>(r, "lhs", what);
        n.rhs = get<long>(r, "rhs", what);
      } else {
        throw FormatError("BSS program: unknown operation '" + op + "'");
      }
      n.next = get<std::size_t>(r, "next", what);
    } else if (type == "branch") {
      n.type = BssNodeType::branch;
      auto mode = r.contains("mode") ? r["mode"].get<std::string>() : "eq";
      if (mode != "eq" && mode != "order") throw FormatError("BSS program: unknown branch mode '" + mode + "'");
      n.mode = mode == "eq" ? BranchMode::eq : BranchMode::order;
      n.yes = get<std::size_t>(r, "yes", what);
      n.no = get<std::size_t>(r, "no", what);
    } else if (type == "shift") {
      n.type = BssNodeType::shift;
      auto dir = get<std::string>(r, "dir", what);
      if (dir != "left" && dir != "right") throw FormatError("BSS program: unknown shift direction '" + dir + "'");
      n.left = dir == "left";
      n.next = get<std::size_t>(r, "next", what);
    } else {
      throw FormatError("BSS program: unknown node type '" + type + "'");
    }
    p.nodes.push_back(std::move(n));
  }
  return p;
}

std::string bss_to_json(const BssProgram& p) {
  std::string out = "{\n  \"semiring\": " + json(std::string(p.k.name())).dump() + ",\n  \"nodes\": [\n";
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const BssNode& n = p.nodes[i];
    json r = {{"label", n.label}};
    switch (n.type) {
      case BssNodeType::input:
        r["type"] = "input";
        r["next"] = n.next;
        break;
      case BssNodeType::output: r["type"] = "output"; break;
      case BssNodeType::compute:
        r["type"] = "compute";
        r["target"] = n.target;
        if (n.op == BssOp::constant) {
          r["op"] = "const";
          r["value"] = element_json(p.k, n.value);
        } else {
          r["op"] = n.op == BssOp::add ? "add" : "mul";
          r["lhs"] = n.lhs;
          r["rhs"] = n.rhs;
        }
        r["next"] = n.next;
        break;
      case BssNodeType::branch:
        r["type"] = "branch";
        r["mode"] = n.mode == BranchMode::eq ? "eq" : "order";
        r["yes"] = n.yes;
        r["no"] = n.no;
        break;
      case BssNodeType::shift:
        r["type"] = "shift";
        r["dir"] = n.left ? "left" : "right";
        r["next"] = n.next;
        break;
    }
    out += "    " + r.dump() + (i + 1 < p.nodes.size() ? ",\n" : "\n");
  }
  return out + "  ]\n}\n";
}

// ---------------------------------------------------------------- K-TMs

namespace {

Move move_from(const std::string& s) {
  if (s == "left") return Move::left;
  if (s == "right") return Move::right;
  if (s == "stay") return Move::stay;
  throw FormatError("K-TM: unknown move '" + s + "'");
}

std::string move_name(Move m) { return m == Move::left ? "left" : m == Move::right ? "right" : "stay"; }

}  // namespace

KtmProgram ktm_from_json(const std::string& text, const std::optional<Semiring>& expected) {
  const char* what = "K-TM";
  json j = parse_doc(text, what);
  KtmProgram p(doc_semiring(j, expected, what));
  p.states = get<std::vector<std::string>>(j, "states", what);
  p.initial = get<std::string>(j, "initial", what);
  if (j.contains("registers")) p.registers = j["registers"].get<std::vector<std::string>>();
  p.gamma = get<std::vector<std::string>>(j, "gamma", what);
  if (j.contains("blank")) p.blank = j["blank"].get<std::string>();
  if (j.contains("predicates"))
    for (const auto& [q, pr] : j["predicates"].items()) {
      auto op = get<std::string>(pr, "op", what);
      if (op != "=" && op != "<=") throw FormatError("K-TM: predicate comparison must be = or <=");
      p.predicate[q] = {op == "<=", get<std::string>(pr, "reg", what)};
    }
  for (const auto& t : field(j, "transitions", what)) {
    KtmTransition tr;
    auto q = get<std::string>(t, "state", what);
    tr.next = get<std::string>(t, "next", what);
    if (t.contains("move")) tr.move = move_from(t["move"].get<std::string>());
    if (t.contains("assign")) tr.assign = t["assign"].get<std::vector<std::string>>();
    if (t.contains("action")) {
      const json& a = t["action"];
      if (a.is_string() && a.get<std::string>() == "keep") {
      } else if (a.is_object() && a.contains("write")) {
        tr.action.kind = KtmAction::Kind::write_symbol;
        tr.action.symbol = a["write"].get<std::string>();
      } else if (a.is_object() && a.contains("value")) {
        tr.action.kind = KtmAction::Kind::write_value;
        tr.action.value = element(p.k, a["value"]);
      } else if (a.is_object() && a.contains("add")) {
        tr.action.kind = KtmAction::Kind::add;
        tr.action.reg = a["add"].get<std::string>();
      } else if (a.is_object() && a.contains("mul")) {
        tr.action.kind = KtmAction::Kind::mul;
        tr.action.reg = a["mul"].get<std::string>();
      } else {
        throw FormatError("K-TM: unknown action " + a.dump());
      }
    }
    bool dup;
    if (t.contains("read"))
      dup = !p.on_symbol.emplace(std::make_pair(q, t["read"].get<std::string>()), tr).second;
    else if (t.contains("test"))
      dup = !p.on_test.emplace(std::make_pair(q, t["test"].get<bool>()), tr).second;
    else
      throw FormatError("K-TM: transition of '" + q + "' needs \"read\" or \"test\"");
    if (dup) throw FormatError("K-TM: two transitions for the same case of '" + q + "'");
  }
  auto problems = p.validate();
  if (!problems.empty()) throw FormatError("K-TM: " + problems.front());
  return p;
}

std::string ktm_to_json(const KtmProgram& p) {
  json j;
  j["semiring"] = std::string(p.k.name());
  j["states"] = p.states;
  j["initial"] = p.initial;
  j["registers"] = p.registers;
  j["gamma"] = p.gamma;
  j["blank"] = p.blank;
  json preds = json::object();
  for (const auto& [q, pr] : p.predicate) preds[q] = {{"op", pr.order ? "<=" : "="}, {"reg", pr.reg}};
  j["predicates"] = preds;
  auto tr_json = [&](const std::string& q, const KtmTransition& t) {
    json r = {{"state", q}};
    switch (t.action.kind) {
      case KtmAction::Kind::keep: r["action"] = "keep"; break;
      case KtmAction::Kind::write_symbol: r["action"] = {{"write", t.action.symbol}}; break;
      case KtmAction::Kind::write_value: r["action"] = {{"value", element_json(p.k, t.action.value)}}; break;
      case KtmAction::Kind::add: r["action"] = {{"add", t.action.reg}}; break;
      case KtmAction::Kind::mul: r["action"] = {{"mul", t.action.reg}}; break;
    }
    if (!t.assign.empty()) r["assign"] = t.assign;
    r["move"] = move_name(t.move);
    r["next"] = t.next;
    return r;
  };
  json trs = json::array();
  for (const auto& [key, t] : p.on_symbol) {
    json r = tr_json(key.first, t);
    r["read"] = key.second;
    trs.push_back(r);
  }
  for (const auto& [key, t] : p.on_test) {
    json r = tr_json(key.first, t);
    r["test"] = key.second;
    trs.push_back(r);
  }
  j["transitions"] = trs;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- lists

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    auto b = cur.find_first_not_of(" \t\n\r"), e = cur.find_last_not_of(" \t\n\r");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    cur.clear();
  };
  if (text.find_first_not_of(" \t\n\r") == std::string::npos) return out;
  for (char c : text) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  for (const auto& s : out)
    if (s.empty()) throw ParseError("empty list item", 0);
  return out;
}

}  // namespace

std::vector<Element> parse_element_list(const Semiring& k, const std::string& text) {
  std::vector<Element> out;
  for (const auto& s : split_list(text)) out.push_back(k.parse(s));
  return out;
}

std::string format_element_list(const Semiring& k, const std::vector<Element>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + k.format(v[i]);
  return out;
}

std::vector<Cell> parse_cell_list(const KtmProgram& p, const std::string& text) {
  std::vector<Cell> out;
  for (const auto& s : split_list(text)) {
    if (std::find(p.gamma.begin(), p.gamma.end(), s) != p.gamma.end())
      out.push_back(Cell::sym(s));
    else
      out.push_back(Cell::val(p.k.parse(s)));
  }
  return out;
}

std::string format_cell_list(const Semiring& k, const std::vector<Cell>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + (v[i].is_value ? k.format(v[i].value) : v[i].symbol);
  return out;
}

Assignment parse_assignment(const Interpretation& pi, const std::string& text) {
  Assignment s;
  for (const auto& item : split_list(text)) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("assignment item '" + item + "' lacks '='", 0);
    auto strip = [](std::string x) {
      auto b = x.find_first_not_of(" \t"), e = x.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
    };
    std::string var = strip(item.substr(0, eq)), val = strip(item.substr(eq + 1));
    auto idx = pi.element_index(val);
    if (!idx) throw EvalError("'" + val + "' is not a universe element");
    s[var] = *idx;
  }
  return s;
}

}  // namespace semfo
