//! Congruence closure with explanations.
//!
//! Every union is recorded in a proof forest whose edges are never
//! compressed, so any derived equality can be read back as a path of
//! external or congruence edges. A separate union-find with path
//! compression answers `find` queries.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::logic::Term;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EdgeJustification {
    /// An input equality `lhs = rhs`.
    External { lhs: Term, rhs: Term },
    /// Two applications with the same head and pairwise congruent arguments.
    Congruence(Term, Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: Term,
    pub to: Term,
    pub justification: EdgeJustification,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Explanation {
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExplainError {
    #[error("`{0}` and `{1}` are not congruent")]
    NotCongruent(Term, Term),
}

#[derive(Debug, Clone)]
struct Node {
    term: Term,
    /// Head symbol and argument nodes; `None` for variables.
    app: Option<(String, Vec<NodeId>)>,
}

#[derive(Debug, Default)]
pub struct EGraph {
    nodes: Vec<Node>,
    memo: HashMap<Term, NodeId>,
    parent: RefCell<Vec<NodeId>>,
    rank: Vec<u32>,
    /// For each class root, the application nodes having an argument in it.
    uses: Vec<Vec<NodeId>>,
    sigs: HashMap<(String, Vec<NodeId>), NodeId>,
    proof: Vec<Option<(NodeId, EdgeJustification)>>,
    pending: Vec<(NodeId, NodeId, EdgeJustification)>,
    classes: usize,
}

impl EGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn lookup(&self, t: &Term) -> Option<NodeId> {
        self.memo.get(t).copied()
    }

    pub fn term(&self, id: NodeId) -> &Term {
        &self.nodes[id].term
    }

    pub fn find(&self, id: NodeId) -> NodeId {
        let mut parent = self.parent.borrow_mut();
        let mut root = id;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = id;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Adds `t` and its subterms; returns the node of `t`.
    pub fn add_term(&mut self, t: &Term) -> NodeId {
        if let Some(id) = self.lookup(t) {
            return id;
        }
        let app = match t {
            Term::Var(_) => None,
            Term::App(f, args) => Some((f.clone(), args.iter().map(|a| self.add_term(a)).collect())),
        };
        let id = self.nodes.len();
        self.nodes.push(Node { term: t.clone(), app });
        self.memo.insert(t.clone(), id);
        self.parent.get_mut().push(id);
        self.rank.push(0);
        self.uses.push(Vec::new());
        self.proof.push(None);
        self.classes += 1;
        if let Some((_, args)) = &self.nodes[id].app {
            let args = args.clone();
            for a in args {
                let r = self.find(a);
                self.uses[r].push(id);
            }
            self.insert_signature(id);
            self.propagate();
        }
        id
    }

    fn signature(&self, id: NodeId) -> Option<(String, Vec<NodeId>)> {
        let (f, args) = self.nodes[id].app.as_ref()?;
        Some((f.clone(), args.iter().map(|&a| self.find(a)).collect()))
    }

    fn insert_signature(&mut self, id: NodeId) {
        let Some(sig) = self.signature(id) else { return };
        match self.sigs.get(&sig) {
            Some(&other) if self.find(other) != self.find(id) => {
                let j = EdgeJustification::Congruence(self.nodes[id].term.clone(), self.nodes[other].term.clone());
                self.pending.push((id, other, j));
            }
            Some(_) => {}
            None => {
                self.sigs.insert(sig, id);
            }
        }
    }

    /// Records `t = u` and closes under congruence.
    pub fn merge(&mut self, t: &Term, u: &Term, j: EdgeJustification) {
        let a = self.add_term(t);
        let b = self.add_term(u);
        self.pending.push((a, b, j));
        self.propagate();
    }

    /// Adds an input equality `lhs = rhs`.
    pub fn assert_eq(&mut self, lhs: &Term, rhs: &Term) {
        let j = EdgeJustification::External { lhs: lhs.clone(), rhs: rhs.clone() };
        self.merge(lhs, rhs, j);
    }

    fn propagate(&mut self) {
        while let Some((a, b, j)) = self.pending.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            self.reroot(a);
            self.proof[a] = Some((b, j));

            let (winner, loser) = match self.rank[ra].cmp(&self.rank[rb]) {
                std::cmp::Ordering::Greater => (ra, rb),
                std::cmp::Ordering::Less => (rb, ra),
                std::cmp::Ordering::Equal => {
                    let (w, l) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    self.rank[w] += 1;
                    (w, l)
                }
            };
            self.parent.get_mut()[loser] = winner;
            self.classes -= 1;
            let moved = std::mem::take(&mut self.uses[loser]);
            for &app in &moved {
                self.insert_signature(app);
            }
            self.uses[winner].extend(moved);
        }
    }

    /// Reverses the proof-forest path so that `x` becomes its tree's root.
    fn reroot(&mut self, x: NodeId) {
        let mut prev: Option<(NodeId, EdgeJustification)> = None;
        let mut cur = x;
        loop {
            let next = self.proof[cur].take();
            self.proof[cur] = prev;
            match next {
                Some((p, j)) => {
                    prev = Some((cur, j));
                    cur = p;
                }
                None => break,
            }
        }
    }

    pub fn congruent(&self, t: &Term, u: &Term) -> bool {
        match (self.lookup(t), self.lookup(u)) {
            (Some(a), Some(b)) => self.find(a) == self.find(b),
            _ => t == u,
        }
    }

    /// Path of justified edges from `t` to `u`.
    pub fn explain(&self, t: &Term, u: &Term) -> Result<Explanation, ExplainError> {
        if t == u {
            return Ok(Explanation::default());
        }
        let not = || ExplainError::NotCongruent(t.clone(), u.clone());
        let (a, b) = (self.lookup(t).ok_or_else(not)?, self.lookup(u).ok_or_else(not)?);
        if self.find(a) != self.find(b) {
            return Err(not());
        }
        let ancestors = |mut x: NodeId| {
            let mut v = vec![x];
            while let Some((p, _)) = &self.proof[x] {
                x = *p;
                v.push(x);
            }
            v
        };
        let up_a = ancestors(a);
        let up_b = ancestors(b);
        let lca = *up_a.iter().find(|n| up_b.contains(n)).expect("same proof tree");

        let mut edges = Vec::new();
        let mut x = a;
        while x != lca {
            let (p, j) = self.proof[x].as_ref().expect("below lca");
            edges.push(Edge { from: self.term(x).clone(), to: self.term(*p).clone(), justification: j.clone() });
            x = *p;
        }
        let mut tail = Vec::new();
        let mut y = b;
        while y != lca {
            let (p, j) = self.proof[y].as_ref().expect("below lca");
            tail.push(Edge { from: self.term(*p).clone(), to: self.term(y).clone(), justification: j.clone() });
            y = *p;
        }
        edges.extend(tail.into_iter().rev());
        Ok(Explanation { edges })
    }

    /// Edges in `explain(t, u)` plus, recursively, those explaining the
    /// arguments of each congruence edge.
    pub fn recursive_edge_count(&self, t: &Term, u: &Term) -> Result<usize, ExplainError> {
        let mut n = 0;
        for e in self.explain(t, u)?.edges {
            n += 1;
            if let EdgeJustification::Congruence(x, y) = &e.justification {
                for (xa, ya) in args(x).iter().zip(args(y)) {
                    n += self.recursive_edge_count(xa, ya)?;
                }
            }
        }
        Ok(n)
    }
}

fn args(t: &Term) -> &[Term] {
    match t {
        Term::App(_, a) => a,
        Term::Var(_) => &[],
    }
}
