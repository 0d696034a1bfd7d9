// Conversions between proof systems and the instance liftings they rely on.

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bcproof/driver.hpp"
#include "bcproof/proof_tree.hpp"

namespace bcproof {

/// A transform could not be carried out; `node` is the offending node of the
/// input tree (or of the oracle tree, see bc_proof_to_bb).
class TransformError : public std::runtime_error {
 public:
  TransformError(NodeId node, const std::string& message);
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

/// Replaces every cut node of a verified tree by branching.
///
/// A cut <alpha, x> <= delta with primitive integer alpha becomes the split
/// {<alpha, x> <= floor(delta)} u {<alpha, x> >= floor(delta) + 1}. The first
/// child takes over the cut's subtree. The second child N' is a leaf when its
/// LP is already infeasible (always the case for Chvatal-Gomory cuts);
/// otherwise it branches on the certificate's disjunction, whose terms are
/// all LP-infeasible inside N'. Branch nodes are copied and leaves are
/// re-labelled against their (smaller) relaxations. The output is an
/// unrestricted pure branch-and-bound proof of size
///
///   (input size) + (number of cuts) + sum over cuts with feasible N' of k_i
///
/// where k_i is the number of terms of that cut's disjunction.
/// Throws TransformError if the input does not verify or a cut touches a
/// continuous coordinate.
ProofTree cp_proof_to_bb(const ProofTree& tree);

/// Upper bound on the output size of cp_proof_to_bb:
/// input size + sum over cuts of (1 + k_i).
std::size_t cp_transform_size_bound(const ProofTree& tree);

/// Given a relaxation N and a cut <alpha, x> <= delta certified on it,
/// returns a verified pure branch-and-bound proof of the prove-bound instance
/// with polyhedron N, objective alpha (exactly the cut's coefficients) and a
/// bound no larger than delta.
using CutOracle = std::function<ProofTree(const Polyhedron&, const CuttingPlane&)>;

/// Oracle that proves a single certified cut by running cp_proof_to_bb on
/// the one-cut proof.
CutOracle cut_oracle_via_split();

/// Replaces each cut node by the split on the cut and replays the oracle's
/// tree on the far side N' = N n {<alpha, x> >= floor(delta) + 1}, where every
/// oracle leaf becomes LP-infeasible. Output size is the input size plus the
/// sum of the oracle tree sizes. Pure-integer instances only. Throws
/// TransformError when the oracle's tree is not a verified pure
/// branch-and-bound proof for (N, alpha, delta); the error names the cut node.
ProofTree bc_proof_to_bb(const ProofTree& tree, const CutOracle& oracle);

/// Appends `extra_int` integer and `extra_cont` continuous coordinates fixed
/// to 0. New layout: old integer, new integer, old continuous, new continuous.
/// The zero-fixing equalities follow the original constraints.
Instance embed_instance(const Instance& inst, std::size_t extra_int, std::size_t extra_cont);

/// Adds a continuous coordinate t (last), the equality t - <c, x> = 0 after
/// the original constraints, objective e_t and the same bound.
Instance add_objective_variable(const Instance& inst);

/// Carries a proof over to embed_instance(tree.instance(), ...) node for
/// node (same size); certificates gain zero multipliers on the new rows.
ProofTree embed_proof(const ProofTree& tree, std::size_t extra_int, std::size_t extra_cont);

/// Carries a proof over to add_objective_variable(tree.instance()).
ProofTree lift_proof_to_objective_variable(const ProofTree& tree);

/// conv(X_a x {0} u X_b x {1}) as an extended formulation.
///
/// Both instances are embedded into common dimensions and given an
/// objective variable, then combined with the two-block formulation
///   z = u + v,  A_a u <= b_a (1 - y),  A_b v <= b_b y,  0 <= y <= 1.
/// Coordinates of the composed instance, in order:
///   integer:    z_int (n), y
///   continuous: z_cont (d), t, u (n+d+1), v (n+d+1)
/// The objective is t + (gamma_a - gamma_b) y with bound gamma_a, i.e. the
/// claim t - gamma_a (1 - y) - gamma_b y <= 0.
struct CompositionGadget {
  Instance instance_a;  // lifted: common dimensions plus t
  Instance instance_b;
  Instance composed;
  std::size_t y_index = 0;
  std::size_t t_index = 0;
  std::size_t common_int = 0;   // n
  std::size_t common_cont = 0;  // d (without t)

  /// Index in the composed space of coordinate i of the lifted instances
  /// (i < n + d + 1, with t last).
  std::size_t z_index(std::size_t i) const;
  std::size_t u_index(std::size_t i) const;
  std::size_t v_index(std::size_t i) const;
};

/// Both instances must be prove-bound instances over bounded polyhedra
/// (UnboundedPolyhedron otherwise).
CompositionGadget compose_complementary(const Instance& a, const Instance& b);

/// The fiber y = value of the composed instance (extra equality on y).
Polyhedron gadget_fiber(const CompositionGadget& g, int value);

/// Branch on y first, then hand the y = 0 side to `fiber_a` and the y = 1
/// side to `fiber_b` (through the driver, unrestricted mode).
ProofTree prove_composed(const CompositionGadget& g, const ActionChooser& fiber_a, const ActionChooser& fiber_b,
                         std::size_t budget = kDefaultNodeBudget);

/// Chvatal-Gomory chooser on instance a's original objective lifted to the
/// z coordinates, falling back to variable branching.
ActionChooser gadget_cg_chooser(const CompositionGadget& g, const Vector& objective_a);

}  // namespace bcproof
