#include "semfo/bss.hpp"

#include <set>

namespace semfo {

std::vector<std::string> BssProgram::validate() const {
  std::vector<std::string> out;
  const std::size_t n = nodes.size();
  if (n < 2) {
    out.push_back("program needs an input and an output node");
    return out;
  }
  auto in_range = [&](std::size_t l) { return l >= 1 && l <= n; };
  for (std::size_t i = 0; i < n; ++i) {
    const BssNode& node = nodes[i];
    std::string name = "node " + std::to_string(i + 1);
    if (node.label != i + 1) out.push_back(name + ": label " + std::to_string(node.label) + " out of sequence");
    if ((node.type == BssNodeType::input) != (i == 0)) out.push_back(name + ": only node 1 is the input node");
    if ((node.type == BssNodeType::output) != (i + 1 == n)) out.push_back(name + ": only node N is the output node");
    switch (node.type) {
      case BssNodeType::branch:
        if (!in_range(node.yes) || !in_range(node.no)) out.push_back(name + ": dangling branch target");
        if (node.mode == BranchMode::order && !k.ordered) out.push_back(name + ": order branch over unordered semiring");
        break;
      case BssNodeType::output: break;
      case BssNodeType::compute:
        if (node.op == BssOp::constant && !k.contains(node.value)) out.push_back(name + ": constant outside semiring");
        [[fallthrough]];
      default:
        if (!in_range(node.next)) out.push_back(name + ": dangling next");
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- state

BssState::BssState(const Semiring& k) : k_(k) {}

void BssState::touch(long p) {
  if (!touched_) {
    lo_ = hi_ = p;
    touched_ = true;
  } else {
    lo_ = std::min(lo_, p);
    hi_ = std::max(hi_, p);
  }
}

const Element& BssState::get(long i) {
  long p = i + offset_;
  touch(p);
  auto it = cells_.find(p);
  return it == cells_.end() ? k_.zero : it->second;
}

void BssState::set(long i, Element v) {
  long p = i + offset_;
  touch(p);
  if (k_.is_zero(v))
    cells_.erase(p);
  else
    cells_[p] = std::move(v);
}

void BssState::shift(bool left) { offset_ += left ? 1 : -1; }

std::map<long, Element> BssState::snapshot() const {
  std::map<long, Element> out;
  for (const auto& [p, v] : cells_) out.emplace(p - offset_, v);
  return out;
}

BssState bss_input_state(const Semiring& k, const std::vector<Element>& input) {
  BssState s(k);
  const long n = static_cast<long>(input.size());
  for (long i = 1; i <= n; ++i) {
    if (!k.contains(input[i - 1])) throw InstanceMismatch("input value outside " + std::string(k.name()));
    s.set(i, input[i - 1]);
    s.set(-i, k.one);
  }
  if (n > 0) s.set(0, k.zero);
  return s;
}

std::vector<Element> bss_output(const BssState& s) {
  const Semiring& k = s.semiring();
  auto snap = s.snapshot();
  auto at = [&](long i) -> const Element& {
    auto it = snap.find(i);
    return it == snap.end() ? k.zero : it->second;
  };
  long l = 0;
  while (k.is_one(at(-(l + 1)))) ++l;
  std::vector<Element> out;
  for (long i = 1; i <= l; ++i) out.push_back(at(i));
  return out;
}

// ---------------------------------------------------------------- run

BssRunResult bss_run_state(const BssProgram& p, BssState state, const BssRunOptions& opts) {
  auto problems = p.validate();
  if (!problems.empty()) throw MachineError("malformed BSS program: " + problems.front());
  const Semiring& k = p.k;
  BssRunResult r;
  std::size_t cur = 1;
  while (true) {
    const BssNode& node = p.nodes[cur - 1];
    if (node.type == BssNodeType::output) break;
    if (r.steps >= opts.step_limit)
      throw StepLimitExceeded("step limit " + std::to_string(opts.step_limit) + " exceeded at node " +
                              std::to_string(cur));
    ++r.steps;
    if (opts.trace) opts.trace({r.steps, cur, state.offset(), state.span()});
    switch (node.type) {
      case BssNodeType::input: cur = node.next; break;
      case BssNodeType::compute: {
        Element v;
        switch (node.op) {
          case BssOp::add: v = k.add(state.get(node.lhs), state.get(node.rhs)); break;
          case BssOp::mul: v = k.mul(state.get(node.lhs), state.get(node.rhs)); break;
          case BssOp::constant: v = node.value; break;
        }
        state.set(node.target, std::move(v));
        cur = node.next;
        break;
      }
      case BssNodeType::branch: {
        const Element a = state.get(1);
        const Element& b = state.get(2);
        bool yes = node.mode == BranchMode::eq ? equal(a, b) : k.leq(a, b);
        cur = yes ? node.yes : node.no;
        break;
      }
      case BssNodeType::shift:
        state.shift(node.left);
        cur = node.next;
        break;
      case BssNodeType::output: break;
    }
  }
  r.span = state.span();
  r.output = bss_output(state);
  r.final_state = state.snapshot();
  return r;
}

BssRunResult bss_run(const BssProgram& p, const std::vector<Element>& input, const BssRunOptions& opts) {
  return bss_run_state(p, bss_input_state(p.k, input), opts);
}

// ---------------------------------------------------------------- builder

BssBuilder::Label BssBuilder::fresh() {
  parent_.push_back(parent_.size());
  return parent_.size() - 1;
}

BssBuilder::Label BssBuilder::resolve(Label l) const {
  while (parent_.at(l) != l) l = parent_[l];
  return l;
}

void BssBuilder::alias(Label from, Label to) {
  Label f = resolve(from), t = resolve(to);
  if (f == t) throw MachineError("builder: label aliased to itself");
  if (nodes_.count(f)) throw MachineError("builder: aliasing a placed label");
  parent_[f] = t;
}

void BssBuilder::place(Label at, BssNode node) {
  Label l = resolve(at);
  if (nodes_.count(l)) throw MachineError("builder: label placed twice");
  nodes_.emplace(l, std::move(node));
  order_.push_back(l);
}

BssProgram BssBuilder::build(Label entry, Label exit) const {
  std::map<Label, std::size_t> number;
  std::size_t next = 2;
  for (Label l : order_) number[l] = next++;
  const std::size_t out_label = next;
  Label ex = resolve(exit);
  if (nodes_.count(ex)) throw MachineError("builder: exit label was placed");
  auto num = [&](Label l) -> std::size_t {
    Label r = resolve(l);
    if (r == ex) return out_label;
    auto it = number.find(r);
    if (it == number.end()) throw MachineError("builder: reference to an unplaced label");
    return it->second;
  };
  BssProgram p(k_);
  BssNode input;
  input.label = 1;
  input.type = BssNodeType::input;
  input.next = num(entry);
  p.nodes.push_back(input);
  for (Label l : order_) {
    BssNode n = nodes_.at(l);
    n.label = number[l];
    if (n.type == BssNodeType::branch) {
      n.yes = num(n.yes);
      n.no = num(n.no);
    } else {
      n.next = num(n.next);
    }
    p.nodes.push_back(std::move(n));
  }
  BssNode output;
  output.label = out_label;
  output.type = BssNodeType::output;
  p.nodes.push_back(output);
  return p;
}

BssSeq& BssSeq::step(BssNode n) {
  auto next = b_->fresh();
  n.next = next;
  b_->place(cur_, std::move(n));
  cur_ = next;
  return *this;
}

BssSeq& BssSeq::shl(std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) {
    BssNode n;
    n.type = BssNodeType::shift;
    n.left = true;
    step(std::move(n));
  }
  return *this;
}

BssSeq& BssSeq::shr(std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) {
    BssNode n;
    n.type = BssNodeType::shift;
    n.left = false;
    step(std::move(n));
  }
  return *this;
}

BssSeq& BssSeq::set(long t, Element v) {
  BssNode n;
  n.type = BssNodeType::compute;
  n.op = BssOp::constant;
  n.target = t;
  n.value = std::move(v);
  return step(std::move(n));
}

BssSeq& BssSeq::add(long t, long a, long b) {
  BssNode n;
  n.type = BssNodeType::compute;
  n.op = BssOp::add;
  n.target = t;
  n.lhs = a;
  n.rhs = b;
  return step(std::move(n));
}

BssSeq& BssSeq::mul(long t, long a, long b) {
  BssNode n;
  n.type = BssNodeType::compute;
  n.op = BssOp::mul;
  n.target = t;
  n.lhs = a;
  n.rhs = b;
  return step(std::move(n));
}

BssSeq& BssSeq::copy(long t, long s) {
  if (t == s) return *this;
  set(t, b_->semiring().zero);
  return add(t, s, t);
}

void BssSeq::jump(BssBuilder::Label l) { b_->alias(cur_, l); }

void BssSeq::branch(BranchMode m, BssBuilder::Label yes, BssBuilder::Label no) {
  BssNode n;
  n.type = BssNodeType::branch;
  n.mode = m;
  n.yes = yes;
  n.no = no;
  b_->place(cur_, std::move(n));
}

}  // namespace semfo
