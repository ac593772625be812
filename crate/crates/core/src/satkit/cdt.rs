use super::restriction::{apply_restriction, Restriction};
use crate::instances::CnfFormula;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdtNode {
    Leaf(bool),
    /// Query a variable; `children[0]` is the branch setting it false.
    Query { var: usize, children: [usize; 2] },
}

/// The canonical decision tree of a CNF. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDecisionTree {
    nodes: Vec<CdtNode>,
    depth: usize,
}

impl CanonicalDecisionTree {
    pub fn nodes(&self) -> &[CdtNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn has_one_leaf(&self) -> bool {
        self.nodes.contains(&CdtNode::Leaf(true))
    }

    /// Follows the tree under a total assignment.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        let mut cur = 0;
        loop {
            match self.nodes[cur] {
                CdtNode::Leaf(b) => return b,
                CdtNode::Query { var, children } => cur = children[assignment[var] as usize],
            }
        }
    }
}

/// Builds the canonical decision tree: a formula without clauses is a
/// 1-leaf, one with an empty clause a 0-leaf; otherwise every variable of
/// the first clause is queried in literal order (the full `2^p` expansion)
/// and construction continues on the restricted formula at each leaf.
///
/// Fails with [`Error::DepthCapExceeded`] when a path would be deeper than
/// `cap`.
pub fn build_canonical_decision_tree(phi: &CnfFormula, cap: usize) -> Result<CanonicalDecisionTree> {
    let mut b = Builder {
        nodes: Vec::new(),
        depth: 0,
        cap,
        stop_at_one: false,
    };
    b.node(phi, &Restriction::stars(phi.num_vars()), 0)?;
    Ok(CanonicalDecisionTree {
        nodes: b.nodes,
        depth: b.depth,
    })
}

/// Builds the tree depth-first but stops at the first 1-leaf. Returns whether
/// one was found and how many nodes were created.
pub(crate) fn search_one_leaf(phi: &CnfFormula, cap: usize) -> Result<(bool, usize)> {
    let mut b = Builder {
        nodes: Vec::new(),
        depth: 0,
        cap,
        stop_at_one: true,
    };
    let found = b.node(phi, &Restriction::stars(phi.num_vars()), 0)?.1;
    Ok((found, b.nodes.len()))
}

struct Builder {
    nodes: Vec<CdtNode>,
    depth: usize,
    cap: usize,
    stop_at_one: bool,
}

impl Builder {
    /// Expands the subtree for `phi|rho`; returns the node index and whether
    /// a 1-leaf was created (only tracked when stopping early).
    fn node(&mut self, phi: &CnfFormula, rho: &Restriction, depth: usize) -> Result<(usize, bool)> {
        if depth > self.cap {
            return Err(Error::DepthCapExceeded(self.cap));
        }
        self.depth = self.depth.max(depth);
        let reduced = apply_restriction(phi, rho);
        let leaf = if reduced.num_clauses() == 0 {
            Some(true)
        } else if reduced.has_empty_clause() {
            Some(false)
        } else {
            None
        };
        if let Some(b) = leaf {
            self.nodes.push(CdtNode::Leaf(b));
            return Ok((self.nodes.len() - 1, b));
        }
        let vars: Vec<usize> = reduced.clauses()[0].iter().map(|l| l.var).collect();
        self.expand(phi, rho.clone(), &vars, depth)
    }

    fn expand(&mut self, phi: &CnfFormula, mut rho: Restriction, vars: &[usize], depth: usize) -> Result<(usize, bool)> {
        let Some((&v, rest)) = vars.split_first() else {
            return self.node(phi, &rho, depth);
        };
        if depth >= self.cap {
            return Err(Error::DepthCapExceeded(self.cap));
        }
        let me = self.nodes.len();
        self.nodes.push(CdtNode::Query { var: v, children: [0, 0] });
        let mut children = [0usize; 2];
        for (bit, slot) in children.iter_mut().enumerate() {
            rho.set(v, Some(bit == 1));
            let (c, found) = self.expand(phi, rho.clone(), rest, depth + 1)?;
            *slot = c;
            if found && self.stop_at_one {
                self.nodes[me] = CdtNode::Query { var: v, children };
                return Ok((me, true));
            }
        }
        self.nodes[me] = CdtNode::Query { var: v, children };
        Ok((me, false))
    }
}
