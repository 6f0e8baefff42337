//! Enumeration of birack labelings of a diagram by backtracking with constraint
//! propagation.
//!
//! Every crossing is a relation `B(a, b) = (c, d)` between four semiarcs. At a
//! positive crossing `(a, b, c, d)` = (over in, under in, under out, over out);
//! at a negative crossing the relation reads `B(over out, under out) = (under in, over in)`.
//! Any one of four pairs determines the other two:
//!
//! * `(a, b)` via `B`,
//! * `(c, d)` via `B⁻¹`,
//! * `(c, a)` via `S`, since `S(B₁(a,b), a) = (B₂(a,b), b)`,
//! * `(d, b)` via `S⁻¹`.
//!
//! The pairs `(a, d)` and `(b, c)` determine nothing and are only checked.

use std::collections::BTreeSet;

use crate::birack::FiniteBirack;
use crate::diagram::{CrossingArcs, Diagram, Sign};

const UNSET: usize = usize::MAX;

/// An assignment of birack elements to the semiarcs of a diagram that satisfies
/// every crossing relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.0
    }
}

#[derive(Clone, Copy, Debug)]
struct Relation {
    a: usize,
    b: usize,
    c: usize,
    d: usize,
}

impl From<&CrossingArcs> for Relation {
    fn from(x: &CrossingArcs) -> Self {
        match x.sign {
            Sign::Positive => Relation { a: x.over_in, b: x.under_in, c: x.under_out, d: x.over_out },
            Sign::Negative => Relation { a: x.over_out, b: x.under_out, c: x.under_in, d: x.over_in },
        }
    }
}

/// Whether `labels` satisfies every crossing of `d` under `b`.
pub fn satisfies_crossings(d: &Diagram, b: &FiniteBirack, labels: &[usize]) -> bool {
    labels.len() == d.num_semiarcs()
        && d.crossing_arcs().iter().map(Relation::from).all(|r| b.b(labels[r.a], labels[r.b]) == (labels[r.c], labels[r.d]))
}

struct Search<'a> {
    birack: &'a FiniteBirack,
    relations: Vec<Relation>,
    touching: Vec<Vec<usize>>,
    assign: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(d: &Diagram, birack: &'a FiniteBirack) -> Self {
        let relations: Vec<Relation> = d.crossing_arcs().iter().map(Relation::from).collect();
        let mut touching = vec![Vec::new(); d.num_semiarcs()];
        for (i, r) in relations.iter().enumerate() {
            for v in [r.a, r.b, r.c, r.d] {
                if !touching[v].contains(&i) {
                    touching[v].push(i);
                }
            }
        }
        Self {
            birack,
            relations,
            touching,
            assign: vec![UNSET; d.num_semiarcs()],
            trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    /// Sets `var := value` unless it already holds something else.
    fn set(&mut self, var: usize, value: usize) -> bool {
        match self.assign[var] {
            UNSET => {
                self.assign[var] = value;
                self.trail.push(var);
                self.queue.extend_from_slice(&self.touching[var]);
                true
            }
            current => current == value,
        }
    }

    fn revise(&mut self, r: Relation) -> bool {
        let b = self.birack;
        let get = |s: &Self, v: usize| Some(s.assign[v]).filter(|&x| x != UNSET);
        if let (Some(a), Some(bb)) = (get(self, r.a), get(self, r.b)) {
            let (c, d) = b.b(a, bb);
            return self.set(r.c, c) && self.set(r.d, d);
        }
        if let (Some(c), Some(d)) = (get(self, r.c), get(self, r.d)) {
            let (a, bb) = b.b_inv(c, d);
            return self.set(r.a, a) && self.set(r.b, bb);
        }
        if let (Some(c), Some(a)) = (get(self, r.c), get(self, r.a)) {
            let (d, bb) = b.s(c, a);
            return self.set(r.d, d) && self.set(r.b, bb);
        }
        if let (Some(d), Some(bb)) = (get(self, r.d), get(self, r.b)) {
            let (c, a) = b.s_inv(d, bb);
            return self.set(r.c, c) && self.set(r.a, a);
        }
        true
    }

    fn assign_and_propagate(&mut self, var: usize, value: usize) -> bool {
        self.queue.clear();
        if !self.set(var, value) {
            return false;
        }
        while let Some(i) = self.queue.pop() {
            let r = self.relations[i];
            if !self.revise(r) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.assign[v] = UNSET;
        }
    }

    /// Branches on the smallest unassigned semiarc with values in increasing
    /// order, so solutions are visited in lexicographic order.
    fn run(&mut self, from: usize, visit: &mut dyn FnMut(&[usize])) {
        let Some(var) = (from..self.assign.len()).find(|&v| self.assign[v] == UNSET) else {
            visit(&self.assign);
            return;
        };
        for value in 0..self.birack.n() {
            let mark = self.trail.len();
            if self.assign_and_propagate(var, value) {
                self.run(var + 1, visit);
            }
            self.undo(mark);
        }
    }
}

/// Calls `visit` on every labeling of `d` by `b`, in lexicographic order.
pub fn for_each_labeling(d: &Diagram, b: &FiniteBirack, mut visit: impl FnMut(&[usize])) {
    let mut search = Search::new(d, b);
    search.run(0, &mut visit);
}

/// All labelings of `d` by `b`, lexicographically ordered.
pub fn enumerate_labelings(d: &Diagram, b: &FiniteBirack) -> Vec<Labeling> {
    let mut out = Vec::new();
    for_each_labeling(d, b, |l| out.push(Labeling(l.to_vec())));
    out
}

/// Number of labelings of `d` by `b`, without materializing them.
pub fn count_labelings(d: &Diagram, b: &FiniteBirack) -> u64 {
    let mut count = 0;
    for_each_labeling(d, b, |_| count += 1);
    count
}

/// The image subbirack of a labeling: the closure of the labels it uses.
pub fn labeling_image(labels: &[usize], b: &FiniteBirack) -> BTreeSet<usize> {
    b.subbirack_closure(&labels.iter().copied().collect())
}
