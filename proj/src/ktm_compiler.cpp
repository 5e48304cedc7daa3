#include "semfo/ktm.hpp"

#include <cmath>

namespace semfo {

// Tape cell i of the machine is simulated by a block of 2k state cells made of
// k slots (value cell 2s+1, flag cell 2s+2). Slot 0 tells the cell type:
// (0,0) blank, (0,1) tape symbol, (1,1) semiring value. A symbol stores its
// code bits in slots 1..l, a value stores (a,1) in slot 1. The last |R| slots
// of the block under the head hold the registers. Cell 4 is 1 in every block
// the head has visited, which bounds the region cleaned up at the end.

namespace {

using Label = BssBuilder::Label;

class Compiler {
public:
  explicit Compiler(const KtmProgram& p) : p_(p), b_(p.k), zero_(p.k.zero), one_(p.k.one) {
    std::size_t symbols = p.gamma.size();
    l_ = 1;
    while ((std::size_t{1} << l_) < symbols) ++l_;
    k_ = l_ + p.registers.size() + 1;
    block_ = static_cast<long>(2 * k_);
    d_ = block_ - 2;
    for (std::size_t i = 0; i < p.registers.size(); ++i) reg_cell_[p.registers[i]] = 2 * static_cast<long>(l_ + 1 + i) + 1;
    unsigned code = 0;
    for (const auto& g : p.gamma)
      if (g != p.blank) code_[g] = code++;
    for (const auto& q : p.states) entry_[q] = b_.fresh();
  }

  KtmCompileResult run() {
    Label start = b_.fresh(), exit = b_.fresh();
    halt_ = b_.fresh();

    std::size_t before = b_.placed();
    phase1(start);
    const std::size_t n1 = b_.placed() - before;

    std::size_t s_max = 0;
    for (const auto& q : p_.states) {
      before = b_.placed();
      state(q);
      s_max = std::max(s_max, b_.placed() - before);
    }

    before = b_.placed();
    Label compact = b_.fresh();
    phase3_linear(compact, exit);
    const std::size_t n3 = b_.placed() - before;
    before = b_.placed();
    phase3_compact(compact, exit);
    const std::size_t n3c = b_.placed() - before;

    KtmCompileResult r{b_.build(start, exit), 0, static_cast<std::size_t>(block_)};
    r.constant = 2 * n1 + s_max + 2 * n3 + 2 * n3c;
    return r;
  }

private:
  const KtmProgram& p_;
  BssBuilder b_;
  Element zero_, one_;
  std::size_t l_ = 1, k_ = 2;
  long block_ = 4, d_ = 2;
  std::map<std::string, long> reg_cell_;
  std::map<std::string, unsigned> code_;
  std::map<std::string, Label> entry_;
  Label halt_ = 0;

  Label fresh() { return b_.fresh(); }

  // Tests whether cell c (holding 0 or 1) is 1, keeping all cells intact.
  // Requires x2 to hold `x2` on entry; x1 is parked in cell c meanwhile.
  void test_rotating(BssSeq& s, long c, const Element& x2, Label one, Label zero) {
    Label y = fresh(), n = fresh();
    s.copy(2, c).copy(c, 1).set(1, one_).branch(BranchMode::eq, y, n);
    s.at(y);
    s.copy(1, c).set(c, one_).set(2, x2).jump(one);
    s.at(n);
    s.copy(1, c).set(c, zero_).set(2, x2).jump(zero);
  }

  // Same test when x1 and x2 are both known to be zero.
  void test_in_zero_block(BssSeq& s, long c, Label one, Label zero) {
    Label y = fresh(), n = fresh();
    s.copy(1, c).branch(BranchMode::eq, y, n);
    s.at(y);
    s.jump(zero);
    s.at(n);
    s.set(1, zero_).jump(one);
  }

  // Branches on the type marker in slot 0; the marker is intact at every target.
  void dispatch(BssSeq& s, Label blank, Label symbol, Label value) {
    Label same = fresh(), v = fresh();
    s.branch(BranchMode::eq, same, symbol);
    s.at(same);
    s.set(2, zero_).branch(BranchMode::eq, blank, v);
    s.at(v);
    s.set(2, one_).jump(value);
  }

  void clear_block(BssSeq& s) {
    for (long i = 1; i <= block_; ++i) s.set(i, zero_);
  }

  void phase1(Label start) {
    Label after_init = fresh(), empty = fresh(), nonempty = fresh(), round = fresh(), walk = fresh(),
          walk_start = fresh(), shift = fresh(), round_done = fresh(), last = fresh(), back = fresh();
    const Label first = entry_.at(p_.initial);
    emit_gap_init(b_, start, after_init, false);

    // x2 is the marker of the first pair, 0 iff the input is empty; x0 = 0 parks x1.
    BssSeq s(b_, after_init);
    s.copy(0, 1).set(1, zero_).branch(BranchMode::eq, empty, nonempty);
    s.at(empty);
    s.copy(1, 0).set(0, zero_).set(4, one_).jump(first);
    s.at(nonempty);
    s.copy(1, 0).set(0, zero_).jump(round);

    // Round r: pairs 0..r-1 sit at block starts, pairs r.. follow pair r-1
    // contiguously. Flag 0 on pair r-1 stops the right-to-left shift.
    s.at(round);
    s.set(2, zero_);
    test_rotating(s, 4, zero_, walk_start, last);
    s.at(walk_start);
    s.shl(2).jump(walk);
    s.at(walk);
    {
      Label more = fresh();
      test_rotating(s, 4, one_, more, shift);
      s.at(more);
      s.shl(2).jump(walk);
    }
    s.at(shift);
    {
      Label y = fresh(), n = fresh();
      s.copy(1 + d_, 1).set(2 + d_, one_).set(1, zero_).set(2, zero_).copy(1, 0).branch(BranchMode::eq, y, n);
      s.at(y);
      s.jump(round_done);
      s.at(n);
      s.set(1, zero_).shr(2).jump(shift);
    }
    s.at(round_done);
    s.shr(2);
    to_value_block(s);
    s.shl(static_cast<std::size_t>(block_)).jump(round);

    s.at(last);
    to_value_block(s);
    s.jump(back);

    s.at(back);
    {
      Label y = fresh(), n = fresh();
      s.copy(1, 1 - block_).branch(BranchMode::eq, y, n);
      s.at(y);
      s.shr(static_cast<std::size_t>(block_)).jump(back);
      s.at(n);
      s.set(1, one_).jump(first);
    }
  }

  // Pair (a, flag) in cells 1,2 with zeros behind it becomes a value block.
  void to_value_block(BssSeq& s) { s.copy(3, 1).set(4, one_).set(1, one_).set(2, one_); }

  const KtmTransition* find_symbol(const std::string& q, const std::string& a) const {
    auto it = p_.on_symbol.find({q, a});
    return it == p_.on_symbol.end() ? nullptr : &it->second;
  }

  const KtmTransition* find_test(const std::string& q, bool v) const {
    auto it = p_.on_test.find({q, v});
    return it == p_.on_test.end() ? nullptr : &it->second;
  }

  void state(const std::string& q) {
    BssSeq s(b_, entry_.at(q));
    Label blank = fresh(), symbol = fresh(), value = fresh();
    dispatch(s, blank, symbol, value);

    s.at(blank);
    apply(s, find_symbol(q, p_.blank), false);

    s.at(symbol);
    decode(s, q, 0, 0);

    s.at(value);
    auto pr = p_.predicate.find(q);
    if (pr == p_.predicate.end()) {
      s.jump(halt_);
      return;
    }
    Label t = fresh(), f = fresh();
    s.copy(1, 3).copy(2, reg_cell_.at(pr->second.reg));
    s.branch(pr->second.order ? BranchMode::order : BranchMode::eq, t, f);
    s.at(t);
    s.set(1, one_).set(2, one_);
    apply(s, find_test(q, true), true);
    s.at(f);
    s.set(1, one_).set(2, one_);
    apply(s, find_test(q, false), true);
  }

  void decode(BssSeq& s, const std::string& q, std::size_t depth, unsigned prefix) {
    if (depth == l_) {
      s.set(1, zero_).set(2, one_);
      for (const auto& [sym, code] : code_)
        if (code == prefix) {
          apply(s, find_symbol(q, sym), false);
          return;
        }
      s.jump(halt_);
      return;
    }
    Label zero = fresh(), one = fresh();
    s.copy(1, 2 * static_cast<long>(depth + 1) + 1).set(2, zero_).branch(BranchMode::eq, zero, one);
    s.at(zero);
    decode(s, q, depth + 1, prefix << 1);
    s.at(one);
    decode(s, q, depth + 1, (prefix << 1) | 1);
  }

  void apply(BssSeq& s, const KtmTransition* t, bool on_value) {
    if (!t) {
      s.jump(halt_);
      return;
    }
    const auto kind = t->action.kind;
    const bool op = kind == KtmAction::Kind::add || kind == KtmAction::Kind::mul;
    if (!on_value && (op || !t->assign.empty())) {
      s.jump(halt_);
      return;
    }
    if (op || !t->assign.empty()) {
      s.copy(1, 3);
      if (kind == KtmAction::Kind::add) s.add(3, 3, reg_cell_.at(t->action.reg));
      if (kind == KtmAction::Kind::mul) s.mul(3, 3, reg_cell_.at(t->action.reg));
      for (const auto& r : t->assign) s.copy(reg_cell_.at(r), 1);
      s.set(1, one_);
    }
    switch (kind) {
      case KtmAction::Kind::write_symbol:
        if (t->action.symbol == p_.blank) {
          s.set(1, zero_).set(2, zero_).set(4, one_);
        } else {
          unsigned code = code_.at(t->action.symbol);
          s.set(1, zero_).set(2, one_);
          for (std::size_t i = 1; i <= l_; ++i) {
            bool bit = (code >> (l_ - i)) & 1;
            s.set(2 * static_cast<long>(i) + 1, bit ? one_ : zero_).set(2 * static_cast<long>(i) + 2, one_);
          }
        }
        break;
      case KtmAction::Kind::write_value:
        s.set(1, one_).set(2, one_).set(3, t->action.value).set(4, one_);
        break;
      default: break;
    }
    if (t->move != Move::stay) {
      const long delta = t->move == Move::left ? block_ : -block_;
      for (const auto& [name, cell] : reg_cell_) s.copy(cell + delta, cell);
      if (t->move == Move::left)
        s.shl(static_cast<std::size_t>(block_));
      else
        s.shr(static_cast<std::size_t>(block_));
      s.set(4, one_);
    }
    s.jump(entry_.at(t->next));
  }

  // Right clean-up: clears visited blocks from the current one rightwards and
  // stops on the first unvisited block.
  void right_clear(BssSeq& s, Label loop, Label done) {
    Label blank = fresh(), clear = fresh();
    s.at(loop);
    dispatch(s, blank, clear, clear);
    s.at(blank);
    test_in_zero_block(s, 4, clear, done);
    s.at(clear);
    clear_block(s);
    s.shl(static_cast<std::size_t>(block_)).jump(loop);
  }

  void phase3_linear(Label compact, Label exit) {
    const auto B = static_cast<std::size_t>(block_);
    Label left = fresh(), lblank = fresh(), lclear = fresh(), ret = fresh(), head = fresh(), empty = fresh(),
          conv = fresh(), conv_next = fresh(), rc_empty = fresh(), rc_out = fresh(), walkback = fresh();
    BssSeq s(b_, halt_);
    s.shr(B).jump(left);

    s.at(left);
    dispatch(s, lblank, lclear, lclear);
    s.at(lblank);
    test_in_zero_block(s, 4, lclear, ret);
    s.at(lclear);
    clear_block(s);
    s.shr(B).jump(left);

    // Back over the cleared blocks to the first visited one, the head block.
    s.at(ret);
    {
      Label more = fresh(), found = fresh();
      test_in_zero_block(s, block_ + 4, found, more);
      s.at(more);
      s.shl(B).jump(ret);
      s.at(found);
      s.shl(B).jump(head);
    }

    s.at(head);
    dispatch(s, empty, empty, conv);
    s.at(empty);
    clear_block(s);
    s.shl(B).jump(rc_empty);
    right_clear(s, rc_empty, exit);

    // Value blocks of the output become pairs (a, 1) at block starts.
    s.at(conv);
    s.copy(1, 3);
    for (long i = 3; i <= block_; ++i) s.set(i, zero_);
    s.shl(B).jump(conv_next);
    s.at(conv_next);
    dispatch(s, rc_out, rc_out, conv);
    right_clear(s, rc_out, walkback);

    s.at(walkback);
    {
      Label more = fresh(), found = fresh();
      test_in_zero_block(s, 2 - block_, found, more);
      s.at(more);
      s.shr(B).jump(walkback);
      s.at(found);
      s.shr(B).jump(compact);
    }
  }

  // Pairs at block starts are packed into gap normal form. Each round moves
  // the rightmost contiguous run of pairs left by d onto its predecessor.
  void phase3_compact(Label check, Label exit) {
    Label round = fresh(), next = fresh(), back = fresh(), done = fresh();
    BssSeq s(b_, check);
    test_rotating(s, 2 - block_, one_, round, done);

    s.at(round);
    s.copy(1 - d_, 1).set(2 - d_, one_).set(1, zero_).set(2, zero_).jump(next);
    s.at(next);
    {
      Label more = fresh(), end = fresh();
      test_in_zero_block(s, 4, more, end);
      s.at(more);
      s.shl(2).jump(round);
      s.at(end);
      s.shr(static_cast<std::size_t>(d_)).jump(back);
    }
    s.at(back);
    {
      Label more = fresh();
      test_rotating(s, 0, one_, more, check);
      s.at(more);
      s.shr(2).jump(back);
    }
    emit_gap_init(b_, done, exit, true);
  }
};

}  // namespace

KtmCompileResult ktm_to_bss(const KtmProgram& p) {
  auto problems = p.validate();
  if (!problems.empty()) throw MachineError("malformed K-TM: " + problems.front());
  return Compiler(p).run();
}

}  // namespace semfo
