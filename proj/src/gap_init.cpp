#include "semfo/bss.hpp"

namespace semfo {

namespace {

using Label = BssBuilder::Label;

// Numbered nodes are the labelled ones; a, b suffixes are the unlabeled shift nodes.
void emit_forward(BssBuilder& b, Label entry, Label exit) {
  const Element one = b.semiring().one, zero = b.semiring().zero;
  auto L = [&] { return b.fresh(); };
  Label n4 = L(), n5 = L(), n7 = L(), n8 = L(), n10 = L(), n12b = L(), n13 = L(), n14 = L(), n17 = L(),
        n18 = L(), n21 = L();
  BssSeq s(b, entry);
  s.shr(3).jump(n4);

  s.at(n4);
  s.branch(BranchMode::eq, n5, n14);

  s.at(n5);
  s.copy(2, 4).set(3, one).set(4, zero).shr();
  s.jump(n7);

  s.at(n7);
  s.branch(BranchMode::eq, n8, n10);

  s.at(n8);
  s.copy(2, 3).set(3, one).shr();
  s.jump(n7);

  s.at(n10);
  s.copy(1, 3).set(3, zero).shl(2);
  s.jump(n12b);

  s.at(n12b);
  s.shl();
  s.jump(n13);

  s.at(n13);
  Label n13a = L();
  s.branch(BranchMode::eq, n12b, n13a);
  s.at(n13a);
  s.shr();
  s.jump(n4);

  s.at(n14);
  s.copy(1, 4).set(3, one).set(4, zero).shl();
  s.jump(n17);

  s.at(n17);
  s.branch(BranchMode::eq, n18, n21);

  s.at(n18);
  s.shr().copy(2, 1).set(1, one).shr();
  s.jump(n17);

  s.at(n21);
  s.set(2, zero).shl(2);
  s.jump(exit);
}

void emit_reverse(BssBuilder& b, Label entry, Label exit) {
  const Element one = b.semiring().one, zero = b.semiring().zero;
  auto L = [&] { return b.fresh(); };
  Label n2 = L(), n3 = L(), n5 = L(), n9 = L(), n10 = L(), n11 = L(), n12 = L(), n13 = L(), n15 = L(),
        n16 = L(), n17 = L(), n18 = L(), n21 = L(), n23 = L(), n24 = L(), n25 = L();
  BssSeq s(b, entry);
  Label n1 = entry;
  s.copy(0, 1).set(1, one);
  s.jump(n2);

  s.at(n2);
  s.branch(BranchMode::eq, n3, n5);

  s.at(n3);
  s.shl(2);
  s.jump(n1);

  s.at(n5);
  s.shr(3).copy(4, 1).set(1, zero);
  s.jump(n9);

  s.at(n9);
  s.branch(BranchMode::eq, n10, n11);

  s.at(n10);
  s.shr();
  s.jump(n9);

  s.at(n11);
  s.shr();
  s.jump(n12);

  s.at(n12);
  s.branch(BranchMode::eq, n21, n13);

  s.at(n13);
  s.copy(2, 0).set(0, zero).shl();
  s.jump(n15);

  s.at(n15);
  s.shl();
  s.jump(n16);

  s.at(n16);
  s.branch(BranchMode::eq, n17, n18);

  s.at(n17);
  s.copy(1, 0).set(0, one);
  s.jump(n15);

  s.at(n18);
  s.copy(2, 0).set(1, zero).set(0, one).shr(2);
  s.jump(n9);

  s.at(n21);
  s.shl(2);
  s.jump(n23);

  s.at(n23);
  s.branch(BranchMode::eq, n24, n25);

  s.at(n24);
  s.shl();
  s.jump(n23);

  s.at(n25);
  s.shl(2);
  s.jump(exit);
}

}  // namespace

// Both programs loop forever on an empty input, so a guard first tests for the
// all-zero state without comparing input values.
void emit_gap_init(BssBuilder& b, Label entry, Label exit, bool reverse) {
  const Element zero = b.semiring().zero;
  Label empty = b.fresh(), nonempty = b.fresh(), body = b.fresh();
  BssSeq s(b, entry);
  if (!reverse) {
    // x1 <- x_{-1}, x2 <- x_0 = 0; a zero marker means n = 0
    s.shr(2).branch(BranchMode::eq, empty, nonempty);
    s.at(empty);
    s.shl(2).jump(exit);
    s.at(nonempty);
    s.shl(2).jump(body);
    emit_forward(b, body, exit);
  } else {
    // x_{-1} <- x_2, the first marker; compared against x_0 = 0
    s.copy(-1, 2).shr(2).branch(BranchMode::eq, empty, nonempty);
    s.at(empty);
    s.shl(2).set(-1, zero).jump(exit);
    s.at(nonempty);
    s.shl(2).set(-1, zero).jump(body);
    emit_reverse(b, body, exit);
  }
}

BssProgram gap_init(const Semiring& k, bool reverse) {
  BssBuilder b(k);
  auto entry = b.fresh(), exit = b.fresh();
  emit_gap_init(b, entry, exit, reverse);
  return b.build(entry, exit);
}

}  // namespace semfo
