#pragma once

#include "semfo/semiring.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace semfo {

class MachineError : public Error {
public:
  using Error::Error;
};

class StepLimitExceeded : public MachineError {
public:
  using MachineError::MachineError;
};

enum class BssNodeType { input, compute, branch, shift, output };
enum class BssOp { add, mul, constant };
enum class BranchMode { eq, order };

struct BssNode {
  std::size_t label = 0;
  BssNodeType type = BssNodeType::compute;
  // compute: x[target] <- x[lhs] op x[rhs], or x[target] <- value
  BssOp op = BssOp::constant;
  long target = 0, lhs = 0, rhs = 0;
  Element value = false;
  // branch: `yes` when x1 = x2 (eq) or x1 <= x2 (order), else `no`
  BranchMode mode = BranchMode::eq;
  std::size_t yes = 0, no = 0;
  // shift: left means new x_i = old x_{i+1}
  bool left = true;
  std::size_t next = 0;  // input, compute, shift
};

/// Nodes labelled 1..N: node 1 is the input node, node N the output node.
struct BssProgram {
  Semiring k;
  std::vector<BssNode> nodes;

  explicit BssProgram(Semiring k_) : k(std::move(k_)) {}
  std::vector<std::string> validate() const;
};

/// Sparse two-way infinite state; the dot sits between coordinates 0 and 1.
class BssState {
public:
  explicit BssState(const Semiring& k);

  const Element& get(long i);
  void set(long i, Element v);
  void shift(bool left);

  /// Nonzero coordinates, in current (logical) coordinates.
  std::map<long, Element> snapshot() const;
  const Semiring& semiring() const noexcept { return k_; }
  long offset() const noexcept { return offset_; }
  long touched_min() const noexcept { return lo_; }
  long touched_max() const noexcept { return hi_; }
  std::size_t span() const noexcept { return touched_ ? static_cast<std::size_t>(hi_ - lo_ + 1) : 0; }

private:
  Semiring k_;
  std::map<long, Element> cells_;  // physical coordinate -> nonzero value
  long offset_ = 0;                // logical i is physical i + offset
  long lo_ = 0, hi_ = 0;
  bool touched_ = false;
  void touch(long physical);
};

/// Places (x_1..x_n) after the dot with n ones at coordinates -1..-n.
BssState bss_input_state(const Semiring& k, const std::vector<Element>& input);
/// First l positive coordinates, l = number of consecutive ones from coordinate -1.
std::vector<Element> bss_output(const BssState& s);

struct BssTraceEntry {
  std::uint64_t step;
  std::size_t node;
  long offset;
  std::size_t span;
};

struct BssRunResult {
  std::vector<Element> output;
  std::uint64_t steps = 0;  // nodes executed before reaching the output node
  std::size_t span = 0;     // touched coordinates, including the input placement
  std::map<long, Element> final_state;
};

struct BssRunOptions {
  std::uint64_t step_limit = 10'000'000;
  std::function<void(const BssTraceEntry&)> trace;
};

BssRunResult bss_run(const BssProgram& p, const std::vector<Element>& input, const BssRunOptions& opts = {});
/// Runs from an explicit state instead of the input mapping.
BssRunResult bss_run_state(const BssProgram& p, BssState state, const BssRunOptions& opts = {});

/// Incremental construction of BSS programs with symbolic labels.
class BssBuilder {
public:
  using Label = std::size_t;

  explicit BssBuilder(Semiring k) : k_(std::move(k)) {}

  Label fresh();
  /// Makes the unplaced label `from` an alias of `to`.
  void alias(Label from, Label to);
  void place(Label at, BssNode node);  // next/yes/no hold labels
  std::size_t placed() const noexcept { return order_.size(); }
  const Semiring& semiring() const noexcept { return k_; }

  /// Input node jumps to `entry`; every reference to `exit` becomes the output node.
  BssProgram build(Label entry, Label exit) const;

private:
  Semiring k_;
  std::vector<Label> parent_;
  std::map<Label, BssNode> nodes_;
  std::vector<Label> order_;
  Label resolve(Label l) const;
};

/// Cursor that appends straight-line code to a builder.
class BssSeq {
public:
  BssSeq(BssBuilder& b, BssBuilder::Label start) : b_(&b), cur_(start) {}

  BssBuilder::Label here() const noexcept { return cur_; }
  void at(BssBuilder::Label l) { cur_ = l; }

  BssSeq& shl(std::size_t times = 1);
  BssSeq& shr(std::size_t times = 1);
  BssSeq& set(long t, Element v);
  BssSeq& add(long t, long a, long b);
  BssSeq& mul(long t, long a, long b);
  /// x_t <- x_s as two primitive nodes: x_t <- 0, then x_t <- x_s + x_t.
  BssSeq& copy(long t, long s);
  void jump(BssBuilder::Label l);
  void branch(BranchMode m, BssBuilder::Label yes, BssBuilder::Label no);

private:
  BssBuilder* b_;
  BssBuilder::Label cur_;
  BssSeq& step(BssNode n);
};

/// Gap normal form conversion (forward) and its inverse (reverse).
BssProgram gap_init(const Semiring& k, bool reverse);

/// Emits the gap conversion as a subroutine between two builder labels.
void emit_gap_init(BssBuilder& b, BssBuilder::Label entry, BssBuilder::Label exit, bool reverse);

}  // namespace semfo
