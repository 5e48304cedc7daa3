#include "semfo/ktm.hpp"

#include <algorithm>
#include <set>

namespace semfo {

bool same_cell(const Cell& a, const Cell& b) {
  if (a.is_value != b.is_value) return false;
  return a.is_value ? equal(a.value, b.value) : a.symbol == b.symbol;
}

std::vector<std::string> KtmProgram::validate() const {
  std::vector<std::string> out;
  std::set<std::string> st(states.begin(), states.end()), gm(gamma.begin(), gamma.end()),
      regs(registers.begin(), registers.end());
  if (gamma.empty()) out.push_back("empty tape alphabet");
  if (!gm.count(blank)) out.push_back("blank symbol '" + blank + "' not in the tape alphabet");
  if (!st.count(initial)) out.push_back("initial state '" + initial + "' is not a state");
  for (const auto& [q, pr] : predicate) {
    if (!st.count(q)) out.push_back("predicate for unknown state '" + q + "'");
    if (!regs.count(pr.reg)) out.push_back("predicate of '" + q + "' uses unknown register '" + pr.reg + "'");
    if (pr.order && !k.ordered) out.push_back("order predicate over unordered semiring");
  }
  auto check = [&](const std::string& q, const KtmTransition& t) {
    if (!st.count(q) || !st.count(t.next)) out.push_back("transition between unknown states");
    if (t.action.kind == KtmAction::Kind::write_symbol && !gm.count(t.action.symbol))
      out.push_back("write of unknown symbol '" + t.action.symbol + "'");
    if (t.action.kind == KtmAction::Kind::write_value && !k.contains(t.action.value))
      out.push_back("written value outside the semiring");
    if ((t.action.kind == KtmAction::Kind::add || t.action.kind == KtmAction::Kind::mul) && !regs.count(t.action.reg))
      out.push_back("operation on unknown register '" + t.action.reg + "'");
    for (const auto& r : t.assign)
      if (!regs.count(r)) out.push_back("assignment to unknown register '" + r + "'");
  };
  for (const auto& [key, t] : on_symbol) {
    if (!gm.count(key.second)) out.push_back("transition on unknown symbol '" + key.second + "'");
    check(key.first, t);
  }
  for (const auto& [key, t] : on_test) {
    check(key.first, t);
    if (!predicate.count(key.first)) out.push_back("state '" + key.first + "' tests values but has no predicate");
  }
  return out;
}

KtmRunResult ktm_run(const KtmProgram& p, const std::vector<Cell>& input, const KtmRunOptions& opts) {
  auto problems = p.validate();
  if (!problems.empty()) throw MachineError("malformed K-TM: " + problems.front());
  const Semiring& k = p.k;
  std::map<long, Cell> tape;  // absent cells are blank
  for (std::size_t i = 0; i < input.size(); ++i) {
    const Cell& c = input[i];
    if (c.is_value ? !k.contains(c.value) : (c.symbol == p.blank || std::find(p.gamma.begin(), p.gamma.end(), c.symbol) == p.gamma.end()))
      throw MachineError("input symbol " + std::to_string(i + 1) + " is not an input symbol");
    tape[static_cast<long>(i) + 1] = c;
  }
  std::map<std::string, Element> regs;
  for (const auto& r : p.registers) regs[r] = k.zero;
  long head = 1, lo = 1, hi = std::max<long>(1, static_cast<long>(input.size()));
  const Cell blank = Cell::sym(p.blank);
  KtmRunResult res;
  std::string q = p.initial;
  while (true) {
    auto it = tape.find(head);
    const Cell a = it == tape.end() ? blank : it->second;
    const KtmTransition* t = nullptr;
    if (!a.is_value) {
      auto f = p.on_symbol.find({q, a.symbol});
      if (f != p.on_symbol.end()) t = &f->second;
    } else {
      auto pr = p.predicate.find(q);
      if (pr != p.predicate.end()) {
        const Element& x = regs.at(pr->second.reg);
        bool v = pr->second.order ? k.leq(a.value, x) : equal(a.value, x);
        auto f = p.on_test.find({q, v});
        if (f != p.on_test.end()) t = &f->second;
      }
    }
    if (!t) break;
    const auto kind = t->action.kind;
    if (!a.is_value && (kind == KtmAction::Kind::add || kind == KtmAction::Kind::mul || !t->assign.empty())) {
      res.ill_typed_halt = true;
      break;
    }
    if (res.steps >= opts.step_limit)
      throw StepLimitExceeded("step limit " + std::to_string(opts.step_limit) + " exceeded in state '" + q + "'");
    ++res.steps;
    if (opts.trace) opts.trace({res.steps, q, head, static_cast<std::size_t>(hi - lo + 1)});
    Cell written = a;
    switch (kind) {
      case KtmAction::Kind::write_symbol: written = Cell::sym(t->action.symbol); break;
      case KtmAction::Kind::write_value: written = Cell::val(t->action.value); break;
      case KtmAction::Kind::keep: break;
      case KtmAction::Kind::add: written = Cell::val(k.add(a.value, regs.at(t->action.reg))); break;
      case KtmAction::Kind::mul: written = Cell::val(k.mul(a.value, regs.at(t->action.reg))); break;
    }
    for (const auto& r : t->assign) regs[r] = a.value;
    if (!written.is_value && written.symbol == p.blank)
      tape.erase(head);
    else
      tape[head] = written;
    if (t->move == Move::left) ++head;
    if (t->move == Move::right) --head;
    lo = std::min(lo, head);
    hi = std::max(hi, head);
    q = t->next;
  }
  for (long i = head;; ++i) {
    auto it = tape.find(i);
    if (it == tape.end()) break;
    res.output.push_back(it->second);
  }
  res.span = static_cast<std::size_t>(hi - lo + 1);
  res.final_state = q;
  return res;
}

std::vector<Element> cells_to_values(const std::vector<Cell>& cells) {
  std::vector<Element> out;
  for (const auto& c : cells) {
    if (!c.is_value) throw MachineError("output contains tape symbol '" + c.symbol + "'");
    out.push_back(c.value);
  }
  return out;
}

std::vector<Cell> values_to_cells(const std::vector<Element>& values) {
  std::vector<Cell> out;
  for (const auto& v : values) out.push_back(Cell::val(v));
  return out;
}

// ---------------------------------------------------------------- fixtures

namespace {

KtmTransition tr(std::string next, KtmAction a, Move m, std::vector<std::string> assign = {}) {
  return {std::move(next), std::move(a), std::move(assign), m};
}
KtmAction keep() { return {}; }
KtmAction write_sym(std::string s) { return {KtmAction::Kind::write_symbol, std::move(s), false, {}}; }
KtmAction write_val(Element v) { return {KtmAction::Kind::write_value, {}, std::move(v), {}}; }
KtmAction op(KtmAction::Kind k, std::string r) { return {k, {}, false, std::move(r)}; }

void on_value(KtmProgram& p, const std::string& q, const KtmTransition& t) {
  p.on_test[{q, true}] = t;
  p.on_test[{q, false}] = t;
}

}  // namespace

// Moves the word one cell to the right, last value first, and halts on its first value.
KtmProgram ktm_fixture_shift_copy(const Semiring& k) {
  KtmProgram p(k);
  p.states = {"start", "seek", "pick", "drop", "put", "back", "clear", "done"};
  p.initial = "start";
  p.registers = {"r"};
  p.gamma = {"b"};
  p.blank = "b";
  for (const auto& q : {"start", "seek", "pick", "drop", "put", "back", "clear"}) p.predicate[q] = {false, "r"};
  on_value(p, "start", tr("seek", keep(), Move::left));
  on_value(p, "seek", tr("seek", keep(), Move::left));
  p.on_symbol[{"seek", "b"}] = tr("pick", keep(), Move::right);
  on_value(p, "pick", tr("drop", keep(), Move::left, {"r"}));
  p.on_symbol[{"pick", "b"}] = tr("clear", keep(), Move::left);
  on_value(p, "drop", tr("put", write_val(k.zero), Move::stay));
  p.on_symbol[{"drop", "b"}] = tr("put", write_val(k.zero), Move::stay);
  on_value(p, "put", tr("back", op(KtmAction::Kind::add, "r"), Move::right));
  on_value(p, "back", tr("pick", keep(), Move::right));
  on_value(p, "clear", tr("done", write_sym("b"), Move::left));
  return p;
}

// r <- x_1, then every value is multiplied by r.
KtmProgram ktm_fixture_register_multiply(const Semiring& k) {
  KtmProgram p(k);
  p.states = {"load", "scale", "rewind", "done"};
  p.initial = "load";
  p.registers = {"r"};
  p.gamma = {"b"};
  for (const auto& q : {"load", "scale", "rewind"}) p.predicate[q] = {false, "r"};
  on_value(p, "load", tr("scale", keep(), Move::stay, {"r"}));
  on_value(p, "scale", tr("scale", op(KtmAction::Kind::mul, "r"), Move::left));
  p.on_symbol[{"scale", "b"}] = tr("rewind", keep(), Move::right);
  on_value(p, "rewind", tr("rewind", keep(), Move::right));
  p.on_symbol[{"rewind", "b"}] = tr("done", keep(), Move::left);
  return p;
}

// Replaces every x_i by 1 if x_i <= x_1 and by 0 otherwise, via tape symbols.
KtmProgram ktm_fixture_leq_indicator(const Semiring& k) {
  KtmProgram p(k);
  p.states = {"load", "test", "emit", "rewind", "done"};
  p.initial = "load";
  p.registers = {"r"};
  p.gamma = {"b", "p", "n", "w"};
  p.predicate["load"] = {false, "r"};
  p.predicate["test"] = {true, "r"};
  p.predicate["rewind"] = {false, "r"};
  on_value(p, "load", tr("test", keep(), Move::stay, {"r"}));
  p.on_test[{"test", true}] = tr("emit", write_sym("p"), Move::stay);
  p.on_test[{"test", false}] = tr("emit", write_sym("n"), Move::stay);
  p.on_symbol[{"test", "b"}] = tr("rewind", keep(), Move::right);
  p.on_symbol[{"emit", "p"}] = tr("test", write_val(k.one), Move::left);
  p.on_symbol[{"emit", "n"}] = tr("test", write_val(k.zero), Move::left);
  on_value(p, "rewind", tr("rewind", keep(), Move::right));
  p.on_symbol[{"rewind", "b"}] = tr("done", keep(), Move::left);
  return p;
}

}  // namespace semfo
