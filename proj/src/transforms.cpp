#include "bcproof/transforms.hpp"

#include "bcproof/verify.hpp"

namespace bcproof {

TransformError::TransformError(NodeId node, const std::string& message)
    : std::runtime_error("node " + std::to_string(node) + ": " + message), node_(node) {}

namespace {

void require_verified(const ProofTree& tree, const std::string& what) {
  const VerifyReport report = verify_proof(tree);
  if (!report.accepted()) {
    throw TransformError(report.issue->node, what + " does not verify (" + to_string(report.issue->condition) +
                                                 ": " + report.issue->message + ")");
  }
}

bool has_cuts(const ProofTree& tree) {
  for (const auto& n : tree.nodes()) {
    if (n.kind == NodeKind::Cut) return true;
  }
  return false;
}

// Leaf reason that holds for the (possibly smaller) relaxation of `id`.
void close_leaf(ProofTree& out, NodeId id, LeafReason original) {
  const Instance& inst = out.instance();
  const LpResult lp = solve_lp(out.relaxation(id), inst.objective);
  if (lp.infeasible()) {
    out.leaf(id, LeafReason::LpInfeasible);
    return;
  }
  if (inst.goal != Goal::ProveBound || !lp.optimal() || lp.value > inst.bound) {
    throw std::logic_error("leaf " + std::to_string(id) + " lost its certificate while shrinking");
  }
  const bool integral = is_integral(lp.point, inst.n_int());
  out.leaf(id, original == LeafReason::IntegralOptimum && integral ? LeafReason::IntegralOptimum
                                                                    : LeafReason::BoundCertified);
}

struct SplitOfCut {
  bool vacuous = false;  // 0 <= delta with delta >= 0
  bool empty = false;    // 0 <= delta with delta < 0
  Disjunction split;
};

SplitOfCut split_of_cut(const Instance& inst, NodeId where, const LinearConstraint& h) {
  SplitOfCut s;
  if (nonzeros(h.coeffs) == 0) {
    (h.rhs >= 0 ? s.vacuous : s.empty) = true;
    return s;
  }
  for (std::size_t i = inst.n_int(); i < inst.dimension(); ++i) {
    if (h.coeffs[static_cast<Eigen::Index>(i)] != 0) {
      throw TransformError(where, "cut has a nonzero coefficient on continuous x" + std::to_string(i + 1));
    }
  }
  const PrimitiveForm pf = primitive_form(h.coeffs);
  s.split = make_split(pf.primitive, floor(Rational(h.rhs / pf.scale)), inst.n_int(), inst.n_cont());
  return s;
}

class CpBuilder {
 public:
  explicit CpBuilder(const ProofTree& in) : in_(in), out_(in.instance(), ProofMode::Unrestricted) {}

  ProofTree run() {
    build(in_.root(), out_.ensure_root());
    return std::move(out_);
  }

 private:
  void build(NodeId old_id, NodeId new_id) {
    const ProofNode& u = in_.node(old_id);
    switch (u.kind) {
      case NodeKind::Leaf:
        close_leaf(out_, new_id, u.reason);
        return;
      case NodeKind::Pending:
        throw TransformError(old_id, "pending node");
      case NodeKind::Branch: {
        const auto kids = out_.branch(new_id, *u.disjunction);
        for (std::size_t k = 0; k < kids.size(); ++k) build(u.children[k], kids[k]);
        return;
      }
      case NodeKind::Cut:
        break;
    }
    const CuttingPlane& cut = *u.cut;
    const SplitOfCut s = split_of_cut(out_.instance(), old_id, cut.halfspace);
    if (s.vacuous) {
      build(u.children[0], new_id);
      return;
    }
    if (s.empty) {
      if (!solve_lp(out_.relaxation(new_id), out_.instance().objective).infeasible()) {
        throw TransformError(old_id, "empty cut on a feasible relaxation");
      }
      out_.leaf(new_id, LeafReason::LpInfeasible);
      return;
    }
    const auto kids = out_.branch(new_id, s.split);
    build(u.children[0], kids[0]);
    const NodeId far = kids[1];
    if (solve_lp(out_.relaxation(far), out_.instance().objective).infeasible()) {
      out_.leaf(far, LeafReason::LpInfeasible);
      return;
    }
    const auto* cert = std::get_if<DisjunctiveCertificate>(&cut.certificate);
    if (cert == nullptr) throw TransformError(old_id, "far side of a Chvatal-Gomory cut is feasible");
    const auto terms = out_.branch(far, cert->disjunction);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (!solve_lp(out_.relaxation(terms[k]), out_.instance().objective).infeasible()) {
        throw TransformError(old_id, "term " + std::to_string(k + 1) + " of the cut's disjunction is not empty beyond the cut");
      }
      out_.leaf(terms[k], LeafReason::LpInfeasible);
    }
  }

  const ProofTree& in_;
  ProofTree out_;
};

class BcBuilder {
 public:
  BcBuilder(const ProofTree& in, const CutOracle& oracle)
      : in_(in), oracle_(oracle), out_(in.instance(), ProofMode::Unrestricted) {}

  ProofTree run() {
    build(in_.root(), out_.ensure_root());
    return std::move(out_);
  }

 private:
  void build(NodeId old_id, NodeId new_id) {
    const ProofNode& u = in_.node(old_id);
    switch (u.kind) {
      case NodeKind::Leaf:
        close_leaf(out_, new_id, u.reason);
        return;
      case NodeKind::Pending:
        throw TransformError(old_id, "pending node");
      case NodeKind::Branch: {
        const auto kids = out_.branch(new_id, *u.disjunction);
        for (std::size_t k = 0; k < kids.size(); ++k) build(u.children[k], kids[k]);
        return;
      }
      case NodeKind::Cut:
        break;
    }
    const CuttingPlane& cut = *u.cut;
    const Polyhedron n_old = in_.relaxation(old_id);
    const ProofTree proof = oracle_(n_old, cut);
    check_oracle(old_id, n_old, cut, proof);

    const SplitOfCut s = split_of_cut(out_.instance(), old_id, cut.halfspace);
    if (s.vacuous) {
      build(u.children[0], new_id);
      return;
    }
    if (s.empty) {
      out_.leaf(new_id, LeafReason::LpInfeasible);
      return;
    }
    const auto kids = out_.branch(new_id, s.split);
    build(u.children[0], kids[0]);
    replay(old_id, proof, proof.root(), kids[1]);
  }

  void check_oracle(NodeId where, const Polyhedron& n, const CuttingPlane& cut, const ProofTree& proof) const {
    if (proof.empty()) throw TransformError(where, "oracle returned an empty tree");
    const Instance& oi = proof.instance();
    if (oi.goal != Goal::ProveBound || oi.polyhedron.constraints() != n.constraints() ||
        oi.n_int() != n.n_int() || !equal(oi.objective, cut.halfspace.coeffs) || oi.bound > cut.halfspace.rhs) {
      throw TransformError(where, "oracle proof is for a different instance");
    }
    if (has_cuts(proof)) throw TransformError(where, "oracle proof contains cuts");
    const VerifyReport report = verify_proof(proof);
    if (!report.accepted()) {
      throw TransformError(where, "oracle proof rejected at its node " + std::to_string(report.issue->node) + " (" +
                                      to_string(report.issue->condition) + ": " + report.issue->message + ")");
    }
  }

  void replay(NodeId where, const ProofTree& proof, NodeId src, NodeId dst) {
    const ProofNode& o = proof.node(src);
    if (o.kind == NodeKind::Branch) {
      const auto kids = out_.branch(dst, *o.disjunction);
      for (std::size_t k = 0; k < kids.size(); ++k) replay(where, proof, o.children[k], kids[k]);
      return;
    }
    if (!solve_lp(out_.relaxation(dst), out_.instance().objective).infeasible()) {
      throw TransformError(where, "replayed oracle leaf is feasible beyond the cut");
    }
    out_.leaf(dst, LeafReason::LpInfeasible);
  }

  const ProofTree& in_;
  const CutOracle& oracle_;
  ProofTree out_;
};

// ---------------------------------------------------------------------------
// Coordinate liftings.

struct Lifting {
  Instance target;
  std::vector<std::size_t> coord;  // old coordinate -> new coordinate
  std::size_t insert_at = 0;       // oriented row index where new rows start
  std::size_t insert_count = 0;    // number of new oriented rows
};

Vector map_vector(const Lifting& l, const Vector& v) {
  Vector out = zeros(l.target.dimension());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(l.coord[static_cast<std::size_t>(i)])] = v[i];
  return out;
}

LinearConstraint map_constraint(const Lifting& l, const LinearConstraint& c) {
  return {map_vector(l, c.coeffs), c.relation, c.rhs};
}

std::vector<LinearConstraint> map_constraints(const Lifting& l, const std::vector<LinearConstraint>& cs) {
  std::vector<LinearConstraint> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(map_constraint(l, c));
  return out;
}

Disjunction map_disjunction(const Lifting& l, const Disjunction& d) {
  const std::size_t n = l.target.n_int();
  const std::size_t dc = l.target.n_cont();
  if (d.kind() == DisjunctionKind::Generic) return make_interval_partition(l.coord[d.variable()], d.intervals(), n, dc);
  return make_split(map_vector(l, d.pi()), d.pi0(), n, dc);
}

Vector insert_rows(const Lifting& l, const Vector& m) {
  Vector out = zeros(static_cast<std::size_t>(m.size()) + l.insert_count);
  const auto at = static_cast<Eigen::Index>(l.insert_at);
  out.head(at) = m.head(at);
  out.tail(m.size() - at) = m.tail(m.size() - at);
  return out;
}

CuttingPlane map_cut(const Lifting& l, const CuttingPlane& c) {
  CuttingPlane out;
  out.halfspace = map_constraint(l, c.halfspace);
  if (const auto* cg = std::get_if<CgCertificate>(&c.certificate)) {
    out.certificate = CgCertificate{insert_rows(l, cg->multipliers)};
  } else {
    const auto& dc = std::get<DisjunctiveCertificate>(c.certificate);
    DisjunctiveCertificate mapped{map_disjunction(l, dc.disjunction), {}};
    for (const auto& w : dc.witnesses) mapped.witnesses.push_back({insert_rows(l, w.multipliers)});
    out.certificate = std::move(mapped);
  }
  return out;
}

ProofTree lift_proof(const ProofTree& tree, const Lifting& l) {
  ProofTree out(l.target, tree.mode());
  for (const auto& n : tree.nodes()) {
    ProofNode m;
    m.id = n.id;
    m.parent = n.parent;
    m.added = map_constraints(l, n.added);
    m.kind = n.kind;
    m.children = n.children;
    m.reason = n.reason;
    if (n.disjunction) m.disjunction = map_disjunction(l, *n.disjunction);
    if (n.cut) m.cut = map_cut(l, *n.cut);
    out.push_raw(std::move(m));
  }
  return out;
}

Lifting embedding(const Instance& inst, std::size_t extra_int, std::size_t extra_cont) {
  const std::size_t n = inst.n_int();
  const std::size_t d = inst.n_cont();
  Lifting l;
  for (std::size_t i = 0; i < n; ++i) l.coord.push_back(i);
  for (std::size_t j = 0; j < d; ++j) l.coord.push_back(n + extra_int + j);
  const std::size_t dim = n + extra_int + d + extra_cont;
  l.target = Instance(Polyhedron(n + extra_int, d + extra_cont), zeros(dim), inst.bound, inst.goal);
  for (const auto& c : inst.polyhedron.constraints()) l.target.polyhedron.add(map_constraint(l, c));
  for (std::size_t i = 0; i < extra_int; ++i) l.target.polyhedron.add(equal_to(unit_vector(dim, n + i), 0));
  for (std::size_t j = 0; j < extra_cont; ++j) l.target.polyhedron.add(equal_to(unit_vector(dim, n + extra_int + d + j), 0));
  l.target.objective = map_vector(l, inst.objective);
  l.insert_at = oriented_row_count(inst.polyhedron.constraints());
  l.insert_count = 2 * (extra_int + extra_cont);
  return l;
}

Lifting objective_lifting(const Instance& inst) {
  const std::size_t dim = inst.dimension() + 1;
  Lifting l;
  for (std::size_t i = 0; i < inst.dimension(); ++i) l.coord.push_back(i);
  l.target = Instance(Polyhedron(inst.n_int(), inst.n_cont() + 1), zeros(dim), inst.bound, inst.goal);
  for (const auto& c : inst.polyhedron.constraints()) l.target.polyhedron.add(map_constraint(l, c));
  Vector row = -map_vector(l, inst.objective);
  row[static_cast<Eigen::Index>(dim - 1)] = 1;
  l.target.polyhedron.add(equal_to(std::move(row), 0));
  l.target.objective = unit_vector(dim, dim - 1);
  l.insert_at = oriented_row_count(inst.polyhedron.constraints());
  l.insert_count = 2;
  return l;
}

}  // namespace

ProofTree cp_proof_to_bb(const ProofTree& tree) {
  require_verified(tree, "input proof");
  if (!has_cuts(tree)) return tree;
  return CpBuilder(tree).run();
}

std::size_t cp_transform_size_bound(const ProofTree& tree) {
  std::size_t size = tree.size();
  for (const auto& n : tree.nodes()) {
    if (n.kind != NodeKind::Cut) continue;
    size += 1;
    if (const auto* cert = std::get_if<DisjunctiveCertificate>(&n.cut->certificate)) size += cert->disjunction.term_count();
  }
  return size;
}

CutOracle cut_oracle_via_split() {
  return [](const Polyhedron& n, const CuttingPlane& cut) {
    ProofTree single(Instance(n, cut.halfspace.coeffs, cut.halfspace.rhs, Goal::ProveBound), ProofMode::Unrestricted);
    const NodeId child = single.cut(single.ensure_root(), cut);
    single.leaf(child, LeafReason::BoundCertified);
    return cp_proof_to_bb(single);
  };
}

ProofTree bc_proof_to_bb(const ProofTree& tree, const CutOracle& oracle) {
  if (tree.instance().n_cont() != 0) {
    throw TransformError(tree.root(), "branch-and-cut conversion needs a pure-integer instance");
  }
  require_verified(tree, "input proof");
  if (!has_cuts(tree)) return tree;
  return BcBuilder(tree, oracle).run();
}

Instance embed_instance(const Instance& inst, std::size_t extra_int, std::size_t extra_cont) {
  return embedding(inst, extra_int, extra_cont).target;
}

Instance add_objective_variable(const Instance& inst) { return objective_lifting(inst).target; }

ProofTree embed_proof(const ProofTree& tree, std::size_t extra_int, std::size_t extra_cont) {
  return lift_proof(tree, embedding(tree.instance(), extra_int, extra_cont));
}

ProofTree lift_proof_to_objective_variable(const ProofTree& tree) {
  return lift_proof(tree, objective_lifting(tree.instance()));
}

// ---------------------------------------------------------------------------
// Composition gadget.

std::size_t CompositionGadget::z_index(std::size_t i) const {
  if (i < common_int) return i;
  return common_int + 1 + (i - common_int);
}

std::size_t CompositionGadget::u_index(std::size_t i) const { return t_index + 1 + i; }

std::size_t CompositionGadget::v_index(std::size_t i) const {
  return t_index + 1 + (common_int + common_cont + 1) + i;
}

CompositionGadget compose_complementary(const Instance& a, const Instance& b) {
  if (a.goal != Goal::ProveBound || b.goal != Goal::ProveBound) {
    throw std::invalid_argument("composition needs two prove-bound instances");
  }
  if (!is_bounded(a.polyhedron) || !is_bounded(b.polyhedron)) {
    throw UnboundedPolyhedron("composition needs bounded polyhedra");
  }
  CompositionGadget g;
  g.common_int = std::max(a.n_int(), b.n_int());
  g.common_cont = std::max(a.n_cont(), b.n_cont());
  g.instance_a = add_objective_variable(embed_instance(a, g.common_int - a.n_int(), g.common_cont - a.n_cont()));
  g.instance_b = add_objective_variable(embed_instance(b, g.common_int - b.n_int(), g.common_cont - b.n_cont()));

  const std::size_t lifted = g.common_int + g.common_cont + 1;
  g.y_index = g.common_int;
  g.t_index = g.common_int + 1 + g.common_cont;
  const std::size_t n_int = g.common_int + 1;
  const std::size_t n_cont = g.common_cont + 1 + 2 * lifted;
  const std::size_t dim = n_int + n_cont;
  const auto y = static_cast<Eigen::Index>(g.y_index);

  Polyhedron p(n_int, n_cont);
  for (std::size_t i = 0; i < lifted; ++i) {
    Vector row = zeros(dim);
    row[static_cast<Eigen::Index>(g.z_index(i))] = 1;
    row[static_cast<Eigen::Index>(g.u_index(i))] = -1;
    row[static_cast<Eigen::Index>(g.v_index(i))] = -1;
    p.add(equal_to(std::move(row), 0));
  }
  // A_a u <= b_a (1 - y)
  for (const auto& c : g.instance_a.polyhedron.constraints()) {
    Vector row = zeros(dim);
    for (std::size_t i = 0; i < lifted; ++i) row[static_cast<Eigen::Index>(g.u_index(i))] = c.coeffs[static_cast<Eigen::Index>(i)];
    row[y] = c.rhs;
    p.add(LinearConstraint{std::move(row), c.relation, c.rhs});
  }
  // A_b v <= b_b y
  for (const auto& c : g.instance_b.polyhedron.constraints()) {
    Vector row = zeros(dim);
    for (std::size_t i = 0; i < lifted; ++i) row[static_cast<Eigen::Index>(g.v_index(i))] = c.coeffs[static_cast<Eigen::Index>(i)];
    row[y] = -c.rhs;
    p.add(LinearConstraint{std::move(row), c.relation, Rational(0)});
  }
  p.add(greater_equal(unit_vector(dim, g.y_index), 0));
  p.add(less_equal(unit_vector(dim, g.y_index), 1));

  Vector objective = unit_vector(dim, g.t_index);
  objective[y] = a.bound - b.bound;
  g.composed = Instance(std::move(p), std::move(objective), a.bound, Goal::ProveBound);
  return g;
}

Polyhedron gadget_fiber(const CompositionGadget& g, int value) {
  return g.composed.polyhedron.with({equal_to(unit_vector(g.composed.dimension(), g.y_index), value)});
}

ActionChooser gadget_cg_chooser(const CompositionGadget& g, const Vector& objective_a) {
  // Instance a's coordinates: integer block first, then continuous.
  const std::size_t dim = g.composed.dimension();
  const std::size_t a_int = g.instance_a.n_int();
  Vector alpha = zeros(dim);
  const std::size_t orig_int = static_cast<std::size_t>(objective_a.size());
  for (std::size_t i = 0; i < orig_int && i < a_int; ++i) {
    alpha[static_cast<Eigen::Index>(g.z_index(i))] = objective_a[static_cast<Eigen::Index>(i)];
  }
  return first_of({cg_cut_in_direction(alpha), variable_branching()});
}

ProofTree prove_composed(const CompositionGadget& g, const ActionChooser& fiber_a, const ActionChooser& fiber_b,
                         std::size_t budget) {
  Strategy s;
  s.name = "composed";
  s.mode = ProofMode::Unrestricted;
  s.budget = budget;
  const std::size_t y = g.y_index;
  const std::size_t n_int = g.composed.n_int();
  const std::size_t n_cont = g.composed.n_cont();
  s.choose = [=](const NodeContext& ctx) -> std::optional<Action> {
    if (ctx.depth == 0) return Action::branch(make_variable_split(y, 0, n_int, n_cont));
    return ctx.lp.point[static_cast<Eigen::Index>(y)] == 0 ? fiber_a(ctx) : fiber_b(ctx);
  };
  return run_branch_and_cut(g.composed, s);
}

}  // namespace bcproof
