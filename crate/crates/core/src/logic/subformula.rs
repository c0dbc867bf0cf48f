//! Canonical enumeration of distinct subformulas: atoms first (by colour),
//! then every other subformula in left-to-right post-order. Position `i`
//! (0-based) here is `phi_{i+1}` in the usual 1-based notation.

use super::Formula;
use std::collections::HashMap;

/// One subformula with its children replaced by their positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Diamond(usize),
    Yesterday(usize),
    Past(usize),
}

impl Node {
    pub fn children(&self) -> Vec<usize> {
        match *self {
            Node::Atom(_) => vec![],
            Node::Not(a) | Node::Diamond(a) | Node::Yesterday(a) | Node::Past(a) => vec![a],
            Node::And(a, b) => vec![a, b],
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Node::Atom(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubformulaIndex {
    formulas: Vec<Formula>,
    nodes: Vec<Node>,
    atoms: usize,
    lookup: HashMap<Formula, usize>,
    parents: Vec<Vec<usize>>,
}

impl SubformulaIndex {
    /// `n`
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `m`
    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn node(&self, i: usize) -> Node {
        self.nodes[i]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.lookup.get(f).copied()
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    /// Height in the subformula DAG (atoms are 0).
    pub fn height(&self, i: usize) -> usize {
        self.nodes[i]
            .children()
            .into_iter()
            .map(|c| self.height(c) + 1)
            .max()
            .unwrap_or(0)
    }
}

pub fn enumerate_subformulas(phi: &Formula) -> SubformulaIndex {
    let mut atoms = Vec::new();
    phi.walk(&mut |f| {
        if let Formula::Atom(c) = f {
            atoms.push(*c);
        }
    });
    atoms.sort_unstable();
    atoms.dedup();

    let mut index = SubformulaIndex {
        formulas: Vec::new(),
        nodes: Vec::new(),
        atoms: atoms.len(),
        lookup: HashMap::new(),
        parents: Vec::new(),
    };
    for c in atoms {
        let f = Formula::Atom(c);
        index.lookup.insert(f.clone(), index.formulas.len());
        index.formulas.push(f);
        index.nodes.push(Node::Atom(c));
    }
    visit(phi, &mut index);
    index.parents = vec![Vec::new(); index.nodes.len()];
    for (i, n) in index.nodes.iter().enumerate() {
        for c in n.children() {
            if !index.parents[c].contains(&i) {
                index.parents[c].push(i);
            }
        }
    }
    index
}

fn visit(f: &Formula, index: &mut SubformulaIndex) -> usize {
    if let Some(&i) = index.lookup.get(f) {
        return i;
    }
    let node = match f {
        Formula::Atom(_) => unreachable!("atoms are registered up front"),
        Formula::Not(a) => Node::Not(visit(a, index)),
        Formula::And(a, b) => {
            let a = visit(a, index);
            Node::And(a, visit(b, index))
        }
        Formula::Diamond(a) => Node::Diamond(visit(a, index)),
        Formula::Yesterday(a) => Node::Yesterday(visit(a, index)),
        Formula::Past(a) => Node::Past(visit(a, index)),
    };
    let i = index.nodes.len();
    index.lookup.insert(f.clone(), i);
    index.formulas.push(f.clone());
    index.nodes.push(node);
    i
}
