#include "semfo/transforms.hpp"

namespace semfo {

namespace {

Formula negate_free(const Formula& f) {
  switch (f->kind) {
    case NodeKind::var_eq: return var_neq(f->vars[0], f->vars[1]);
    case NodeKind::var_neq: return var_eq(f->vars[0], f->vars[1]);
    case NodeKind::atom: return neg_atom(f->symbol, f->vars);
    case NodeKind::neg_atom: return atom(f->symbol, f->vars);
    case NodeKind::builtin: return neg_builtin_atom(f->symbol, f->vars);
    case NodeKind::neg_builtin: return builtin_atom(f->symbol, f->vars);
    case NodeKind::conj: return disj(negate_free(f->left), negate_free(f->right));
    case NodeKind::disj: return conj(negate_free(f->left), negate_free(f->right));
    case NodeKind::exists: return forall(f->vars[0], negate_free(f->left));
    case NodeKind::forall: return exists(f->vars[0], negate_free(f->left));
    case NodeKind::compare: break;
  }
  throw Error("negate_free: comparison left in formula");
}

}  // namespace

Formula nnf_negate(const Formula& f) { return negate_free(eliminate_comparisons_boolean(f)); }

Formula eliminate_comparisons_boolean(const Formula& f) {
  switch (f->kind) {
    case NodeKind::conj: return conj(eliminate_comparisons_boolean(f->left), eliminate_comparisons_boolean(f->right));
    case NodeKind::disj: return disj(eliminate_comparisons_boolean(f->left), eliminate_comparisons_boolean(f->right));
    case NodeKind::exists: return exists(f->vars[0], eliminate_comparisons_boolean(f->left));
    case NodeKind::forall: return forall(f->vars[0], eliminate_comparisons_boolean(f->left));
    case NodeKind::compare: {
      Formula a = eliminate_comparisons_boolean(f->left);
      Formula b = eliminate_comparisons_boolean(f->right);
      switch (f->op) {
        case CmpOp::leq: return disj(negate_free(a), b);
        case CmpOp::nleq: return conj(a, negate_free(b));
        case CmpOp::eq: return disj(conj(a, b), conj(negate_free(a), negate_free(b)));
        case CmpOp::neq: return disj(conj(negate_free(a), b), conj(a, negate_free(b)));
      }
      break;
    }
    default: return f;
  }
  return f;
}

}  // namespace semfo
