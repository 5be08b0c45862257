use std::collections::HashSet;

use super::{Formula, NamelessForm};

/// `left ⊢ right`. Lists keep source order so integer parameters can index
/// into them; comparisons treat each side as a set of alpha-classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub left: Vec<Formula>,
    pub right: Vec<Formula>,
}

impl Sequent {
    pub fn new(left: Vec<Formula>, right: Vec<Formula>) -> Self {
        Sequent { left, right }
    }

    pub fn formula(f: Formula) -> Self {
        Sequent { left: Vec::new(), right: vec![f] }
    }

    pub fn side(&self, side: Side) -> &[Formula] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.left.iter().chain(self.right.iter())
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        self.formulas().any(|f| f.has_free_var(name))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A set of formulas modulo alpha-equivalence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormulaSet(HashSet<NamelessForm>);

impl FormulaSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Self {
        FormulaSet(fs.into_iter().map(NamelessForm::of).collect())
    }

    pub fn insert(&mut self, f: &Formula) -> bool {
        self.0.insert(NamelessForm::of(f))
    }

    pub fn remove(&mut self, f: &Formula) -> bool {
        self.0.remove(&NamelessForm::of(f))
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(&NamelessForm::of(f))
    }

    pub fn extend<'a>(&mut self, fs: impl IntoIterator<Item = &'a Formula>) {
        self.0.extend(fs.into_iter().map(NamelessForm::of));
    }

    pub fn with<'a>(mut self, fs: impl IntoIterator<Item = &'a Formula>) -> Self {
        self.extend(fs);
        self
    }

    pub fn union(mut self, other: FormulaSet) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &FormulaSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

pub fn sequent_sets_equal(s1: &Sequent, s2: &Sequent) -> bool {
    FormulaSet::of(&s1.left) == FormulaSet::of(&s2.left) && FormulaSet::of(&s1.right) == FormulaSet::of(&s2.right)
}
