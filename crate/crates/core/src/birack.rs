//! Finite biracks: axiom verification, the sideways and kink structure, and subbiracks.
//!
//! Elements of a birack of order `n` are `0..n`. A map `X × X → X` is stored as a
//! row-major table with `table[x * n + y]` holding its value at `(x, y)`.
//!
//! The axioms checked are:
//!
//! * `B` is a bijection of `X × X`;
//! * `y ↦ B₁(x, y)` and `x ↦ B₂(x, y)` are bijections, which is exactly what is
//!   needed for the sideways map `S(B₁(x,y), x) = (B₂(x,y), y)` to exist, be
//!   unique and be invertible;
//! * the four diagonal maps `x ↦ S₁^{±1}(x,x)`, `x ↦ S₂^{±1}(x,x)` are bijections;
//! * the set-theoretic Yang-Baxter equation on all of `X³`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::perm::Permutation;

/// Raw component tables of a candidate birack, not yet verified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BirackTables {
    n: usize,
    b1: Vec<usize>,
    b2: Vec<usize>,
}

impl BirackTables {
    /// Builds tables from closures giving `B₁` and `B₂`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> (usize, usize)) -> Result<Self, Error> {
        let mut b1 = Vec::with_capacity(n * n);
        let mut b2 = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (u, v) = f(x, y);
                if u >= n || v >= n {
                    return Err(Error::BadMatrix(format!(
                        "B({}, {}) = ({}, {}) is outside 1..={}",
                        x + 1,
                        y + 1,
                        u + 1,
                        v + 1,
                        n
                    )));
                }
                b1.push(u);
                b2.push(v);
            }
        }
        if n == 0 {
            return Err(Error::BadMatrix("a birack needs at least one element".into()));
        }
        Ok(Self { n, b1, b2 })
    }

    /// Reads the `n × 2n` block matrix `[B₁ | B₂]` of 1-indexed labels.
    ///
    /// Entry `(i, j)` of the left block is `B₁(x_j, x_i)` and entry `(i, j)` of the
    /// right block is `B₂(x_i, x_j)`.
    pub fn from_block(n: usize, block: &[Vec<usize>]) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::BadMatrix("a birack needs at least one element".into()));
        }
        if block.len() != n {
            return Err(Error::BadMatrix(format!("expected {} rows, found {}", n, block.len())));
        }
        for (i, row) in block.iter().enumerate() {
            if row.len() != 2 * n {
                return Err(Error::BadMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    2 * n
                )));
            }
            if let Some(&bad) = row.iter().find(|&&e| e == 0 || e > n) {
                return Err(Error::BadMatrix(format!("row {} has entry {} outside 1..={}", i + 1, bad, n)));
            }
        }
        Self::from_fn(n, |x, y| (block[y][x] - 1, block[x][n + y] - 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn b1(&self, x: usize, y: usize) -> usize {
        self.b1[x * self.n + y]
    }

    #[inline]
    pub fn b2(&self, x: usize, y: usize) -> usize {
        self.b2[x * self.n + y]
    }

    /// The block matrix `[B₁ | B₂]` with 1-indexed entries.
    pub fn to_block(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.b1(j, i) + 1)
                    .chain((0..n).map(|j| self.b2(i, j) + 1))
                    .collect()
            })
            .collect()
    }
}

/// One of the four diagonal compositions that must be bijective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiagonalMap {
    S1,
    S2,
    S1Inv,
    S2Inv,
}

/// The first witness found for a failed axiom. Element indices are 0-based;
/// `Display` prints them 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason")]
pub enum AxiomViolation {
    /// Two input pairs share the same image under `B`.
    NotPairBijective { first: (usize, usize), second: (usize, usize) },
    /// `component` 1: `B₁(fixed, first) = B₁(fixed, second)`;
    /// `component` 2: `B₂(first, fixed) = B₂(second, fixed)`.
    SidewaysNotUnique { component: u8, fixed: usize, first: usize, second: usize },
    /// `map` takes the same value on the diagonal at `first` and `second`.
    DiagonalNotBijective { map: DiagonalMap, first: usize, second: usize },
    YangBaxterFails { x: usize, y: usize, z: usize },
}

impl AxiomViolation {
    /// Machine-readable reason name.
    pub fn reason(&self) -> &'static str {
        match self {
            AxiomViolation::NotPairBijective { .. } => "NotPairBijective",
            AxiomViolation::SidewaysNotUnique { .. } => "SidewaysNotUnique",
            AxiomViolation::DiagonalNotBijective { .. } => "DiagonalNotBijective",
            AxiomViolation::YangBaxterFails { .. } => "YangBaxterFails",
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::NotPairBijective { first, second } => write!(
                f,
                "NotPairBijective: B({},{}) = B({},{})",
                first.0 + 1,
                first.1 + 1,
                second.0 + 1,
                second.1 + 1
            ),
            AxiomViolation::SidewaysNotUnique { component: 1, fixed, first, second } => write!(
                f,
                "SidewaysNotUnique: B1({x},{}) = B1({x},{})",
                first + 1,
                second + 1,
                x = fixed + 1
            ),
            AxiomViolation::SidewaysNotUnique { fixed, first, second, .. } => write!(
                f,
                "SidewaysNotUnique: B2({},{y}) = B2({},{y})",
                first + 1,
                second + 1,
                y = fixed + 1
            ),
            AxiomViolation::DiagonalNotBijective { map, first, second } => write!(
                f,
                "DiagonalNotBijective: {:?}({a},{a}) = {:?}({b},{b})",
                map,
                map,
                a = first + 1,
                b = second + 1
            ),
            AxiomViolation::YangBaxterFails { x, y, z } => {
                write!(f, "YangBaxterFails at (x,y,z) = ({},{},{})", x + 1, y + 1, z + 1)
            }
        }
    }
}

/// The axioms reported by [`verify_axioms`], in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    PairBijective,
    SidewaysInvertible,
    DiagonalBijective,
    YangBaxter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Could not be evaluated because an earlier axiom it depends on failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub status: CheckStatus,
    pub violation: Option<AxiomViolation>,
}

/// Per-axiom outcome of [`verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn first_violation(&self) -> Option<&AxiomViolation> {
        self.checks.iter().find_map(|c| c.violation.as_ref())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skipped",
            };
            write!(f, "{:<20} {}", format!("{:?}", c.axiom), status)?;
            if let Some(v) = &c.violation {
                write!(f, "  {}", v)?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "valid birack" } else { "not a birack" })
    }
}

fn first_collision(values: impl Iterator<Item = (usize, usize)>, range: usize) -> Option<(usize, usize)> {
    let mut seen = vec![usize::MAX; range];
    for (key, v) in values {
        if seen[v] != usize::MAX {
            return Some((seen[v], key));
        }
        seen[v] = key;
    }
    None
}

fn check_pair_bijective(t: &BirackTables) -> Option<AxiomViolation> {
    let n = t.n;
    first_collision((0..n * n).map(|k| (k, t.b1[k] * n + t.b2[k])), n * n).map(|(a, b)| {
        AxiomViolation::NotPairBijective { first: (a / n, a % n), second: (b / n, b % n) }
    })
}

fn check_sideways(t: &BirackTables) -> Option<AxiomViolation> {
    let n = t.n;
    for x in 0..n {
        if let Some((a, b)) = first_collision((0..n).map(|y| (y, t.b1(x, y))), n) {
            return Some(AxiomViolation::SidewaysNotUnique { component: 1, fixed: x, first: a, second: b });
        }
    }
    for y in 0..n {
        if let Some((a, b)) = first_collision((0..n).map(|x| (x, t.b2(x, y))), n) {
            return Some(AxiomViolation::SidewaysNotUnique { component: 2, fixed: y, first: a, second: b });
        }
    }
    None
}

/// Sideways map and its inverse, as pair tables. Requires the sideways axiom.
fn sideways_tables(t: &BirackTables) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let n = t.n;
    let mut s = vec![(0, 0); n * n];
    let mut s_inv = vec![(0, 0); n * n];
    for x in 0..n {
        for y in 0..n {
            let from = (t.b1(x, y), x);
            let to = (t.b2(x, y), y);
            s[from.0 * n + from.1] = to;
            s_inv[to.0 * n + to.1] = from;
        }
    }
    (s, s_inv)
}

fn check_diagonal(n: usize, s: &[(usize, usize)], s_inv: &[(usize, usize)]) -> Option<AxiomViolation> {
    let diag = |table: &[(usize, usize)], second: bool, map: DiagonalMap| {
        first_collision(
            (0..n).map(|x| {
                let p = table[x * n + x];
                (x, if second { p.1 } else { p.0 })
            }),
            n,
        )
        .map(|(a, b)| AxiomViolation::DiagonalNotBijective { map, first: a, second: b })
    };
    diag(s, false, DiagonalMap::S1)
        .or_else(|| diag(s, true, DiagonalMap::S2))
        .or_else(|| diag(s_inv, false, DiagonalMap::S1Inv))
        .or_else(|| diag(s_inv, true, DiagonalMap::S2Inv))
}

fn check_yang_baxter(t: &BirackTables) -> Option<AxiomViolation> {
    let n = t.n;
    let b = |x: usize, y: usize| (t.b1(x, y), t.b2(x, y));
    for x in 0..n {
        for y in 0..n {
            let (a1, a2) = b(x, y);
            for z in 0..n {
                // (B × Id)(Id × B)(B × Id), applied right to left
                let (c1, c2) = b(a2, z);
                let (e1, e2) = b(a1, c1);
                let left = (e1, e2, c2);
                // (Id × B)(B × Id)(Id × B)
                let (d1, d2) = b(y, z);
                let (f1, f2) = b(x, d1);
                let (g1, g2) = b(f2, d2);
                let right = (f1, g1, g2);
                if left != right {
                    return Some(AxiomViolation::YangBaxterFails { x, y, z });
                }
            }
        }
    }
    None
}

/// Checks every birack axiom and reports each one separately. Never fails;
/// `report.passed()` holds exactly when [`FiniteBirack::from_tables`] succeeds.
pub fn verify_axioms(tables: &BirackTables) -> ValidationReport {
    let outcome = |axiom, v: Option<AxiomViolation>| AxiomCheck {
        axiom,
        status: if v.is_some() { CheckStatus::Fail } else { CheckStatus::Pass },
        violation: v,
    };
    let mut checks = vec![outcome(Axiom::PairBijective, check_pair_bijective(tables))];
    let sideways = check_sideways(tables);
    let sideways_ok = sideways.is_none();
    checks.push(outcome(Axiom::SidewaysInvertible, sideways));
    if sideways_ok {
        let (s, s_inv) = sideways_tables(tables);
        checks.push(outcome(Axiom::DiagonalBijective, check_diagonal(tables.n, &s, &s_inv)));
    } else {
        checks.push(AxiomCheck { axiom: Axiom::DiagonalBijective, status: CheckStatus::Skipped, violation: None });
    }
    checks.push(outcome(Axiom::YangBaxter, check_yang_baxter(tables)));
    ValidationReport { n: tables.n, checks }
}

/// Cheaper than [`verify_axioms`]: stops at the first violated axiom.
pub fn first_violation(tables: &BirackTables) -> Option<AxiomViolation> {
    if let Some(v) = check_pair_bijective(tables).or_else(|| check_sideways(tables)) {
        return Some(v);
    }
    let (s, s_inv) = sideways_tables(tables);
    check_diagonal(tables.n, &s, &s_inv).or_else(|| check_yang_baxter(tables))
}

/// Structural flags of a birack.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_biquandle: bool,
    pub is_rack: bool,
    pub is_quandle: bool,
    pub is_semiquandle: bool,
    pub is_simple: bool,
}

/// A verified finite birack with its derived inverse, sideways and kink data.
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct FiniteBirack {
    tables: BirackTables,
    b_inv: Vec<(usize, usize)>,
    s: Vec<(usize, usize)>,
    s_inv: Vec<(usize, usize)>,
    alpha: Permutation,
    pi: Permutation,
    rank: usize,
}

impl PartialEq for FiniteBirack {
    fn eq(&self, other: &Self) -> bool {
        self.tables == other.tables
    }
}

impl Eq for FiniteBirack {}

impl FiniteBirack {
    /// Verifies the axioms and derives `B⁻¹`, `S`, `S⁻¹`, `α`, `π` and the rank.
    pub fn from_tables(tables: BirackTables) -> Result<Self, Error> {
        if let Some(v) = first_violation(&tables) {
            return Err(Error::Axiom(v));
        }
        let n = tables.n;
        let mut b_inv = vec![(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                b_inv[tables.b1(x, y) * n + tables.b2(x, y)] = (x, y);
            }
        }
        let (s, s_inv) = sideways_tables(&tables);

        let s2_inv_diag = (0..n).map(|x| s_inv[x * n + x].1).collect();
        let alpha = Permutation::from_images(s2_inv_diag).expect("diagonal bijectivity checked").inverse();
        let pi = Permutation::from_images((0..n).map(|x| s_inv[alpha.apply(x) * (n + 1)].0).collect())
            .expect("kink map is a bijection");
        let rank = pi.order();

        let birack = Self { tables, b_inv, s, s_inv, alpha, pi, rank };
        assert!(birack.kink_relations_hold(), "derived kink data contradicts the birack axioms");
        Ok(birack)
    }

    /// Builds a birack from its `n × 2n` block matrix of 1-indexed labels.
    pub fn from_matrix(n: usize, block: &[Vec<usize>]) -> Result<Self, Error> {
        Self::from_tables(BirackTables::from_block(n, block)?)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> (usize, usize)) -> Result<Self, Error> {
        Self::from_tables(BirackTables::from_fn(n, f)?)
    }

    /// The birack `B(x, y) = (y, x)`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |x, y| (y, x)).expect("the swap map is a birack")
    }

    pub fn to_matrix(&self) -> Vec<Vec<usize>> {
        self.tables.to_block()
    }

    pub fn tables(&self) -> &BirackTables {
        &self.tables
    }

    pub fn n(&self) -> usize {
        self.tables.n
    }

    #[inline]
    pub fn b1(&self, x: usize, y: usize) -> usize {
        self.tables.b1(x, y)
    }

    #[inline]
    pub fn b2(&self, x: usize, y: usize) -> usize {
        self.tables.b2(x, y)
    }

    #[inline]
    pub fn b(&self, x: usize, y: usize) -> (usize, usize) {
        (self.b1(x, y), self.b2(x, y))
    }

    #[inline]
    pub fn b_inv(&self, x: usize, y: usize) -> (usize, usize) {
        self.b_inv[x * self.n() + y]
    }

    #[inline]
    pub fn s(&self, x: usize, y: usize) -> (usize, usize) {
        self.s[x * self.n() + y]
    }

    #[inline]
    pub fn s_inv(&self, x: usize, y: usize) -> (usize, usize) {
        self.s_inv[x * self.n() + y]
    }

    /// `α = (S₂⁻¹ ∘ Δ)⁻¹`.
    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// The kink map `π = S₁⁻¹ ∘ Δ ∘ α`: the label change through a positive kink.
    pub fn kink_map(&self) -> &Permutation {
        &self.pi
    }

    /// `φ = S₁ ∘ Δ ∘ (S₂ ∘ Δ)⁻¹`, the kink map of the other oriented double-I move.
    pub fn dual_kink_map(&self) -> Permutation {
        let n = self.n();
        let s2_diag = Permutation::from_images((0..n).map(|x| self.s(x, x).1).collect())
            .expect("diagonal bijectivity checked");
        let s1_diag = Permutation::from_images((0..n).map(|x| self.s(x, x).0).collect())
            .expect("diagonal bijectivity checked");
        s1_diag.compose(&s2_diag.inverse())
    }

    /// Order of the kink map.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `S(π(x), x) = (α(x), α(x))` for all `x`, and `φ = π`.
    pub fn kink_relations_hold(&self) -> bool {
        let figure = (0..self.n()).all(|x| {
            let a = self.alpha.apply(x);
            self.s(self.pi.apply(x), x) == (a, a)
        });
        figure && self.dual_kink_map() == self.pi
    }

    pub fn is_biquandle(&self) -> bool {
        self.pi.is_identity()
    }

    pub fn is_rack(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (0..n).all(|y| self.b2(x, y) == x))
    }

    pub fn classify(&self) -> Classification {
        let n = self.n();
        let is_biquandle = self.is_biquandle();
        let is_rack = self.is_rack();
        let involutive = (0..n).all(|x| {
            (0..n).all(|y| {
                let (u, v) = self.b(x, y);
                self.b(u, v) == (x, y)
            })
        });
        Classification {
            is_biquandle,
            is_rack,
            is_quandle: is_biquandle && is_rack,
            is_semiquandle: is_biquandle && involutive,
            is_simple: self.all_subbiracks().len() == 1,
        }
    }

    /// Whether `subset` is closed under `B₁`, `B₂`, `S₁` and `S₂`.
    pub fn is_closed(&self, subset: &BTreeSet<usize>) -> bool {
        subset.iter().all(|&x| {
            subset.iter().all(|&y| {
                let (b1, b2) = self.b(x, y);
                let (s1, s2) = self.s(x, y);
                [b1, b2, s1, s2].iter().all(|e| subset.contains(e))
            })
        })
    }

    /// Smallest superset of `seed` closed under `B₁`, `B₂`, `S₁` and `S₂`.
    pub fn subbirack_closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let n = self.n();
        let mut member = vec![false; n];
        let mut elems: Vec<usize> = Vec::with_capacity(n);
        for &x in seed {
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        }
        // every pair (elems[i], elems[j]) with max(i, j) < done has been processed
        let mut done = 0;
        while done < elems.len() {
            let k = done;
            done += 1;
            for i in 0..=k {
                let (a, b) = (elems[i], elems[k]);
                for (x, y) in [(a, b), (b, a)] {
                    let (b1, b2) = self.b(x, y);
                    let (s1, s2) = self.s(x, y);
                    for e in [b1, b2, s1, s2] {
                        if !member[e] {
                            member[e] = true;
                            elems.push(e);
                        }
                    }
                }
            }
        }
        let closed: BTreeSet<usize> = elems.into_iter().collect();
        assert!(
            closed.iter().all(|&x| closed.iter().all(|&y| {
                let (i1, i2) = self.b_inv(x, y);
                let (j1, j2) = self.s_inv(x, y);
                [i1, i2, j1, j2].iter().all(|e| closed.contains(e))
            })),
            "finite subbirack not closed under inverse maps"
        );
        closed
    }

    /// All non-empty subbiracks, sorted by size and then lexicographically.
    ///
    /// Every closed set is the join of the closures of its elements, so the
    /// family is generated from singleton closures by repeated joins.
    pub fn all_subbiracks(&self) -> Vec<BTreeSet<usize>> {
        let n = self.n();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<BTreeSet<usize>> = Vec::new();
        for x in 0..n {
            let c = self.subbirack_closure(&BTreeSet::from([x]));
            if found.insert(c.iter().copied().collect()) {
                frontier.push(c);
            }
        }
        while let Some(set) = frontier.pop() {
            for x in (0..n).filter(|x| !set.contains(x)) {
                let mut seed = set.clone();
                seed.insert(x);
                let c = self.subbirack_closure(&seed);
                if found.insert(c.iter().copied().collect()) {
                    frontier.push(c);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.into_iter().map(|v| v.into_iter().collect()).collect()
    }

    /// The subbirack on `subset`, relabeled to `0..|subset|` in increasing order.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> Result<FiniteBirack, Error> {
        if subset.is_empty() || !self.is_closed(subset) {
            return Err(Error::NotASubbirack(subset.iter().map(|x| x + 1).collect()));
        }
        let elems: Vec<usize> = subset.iter().copied().collect();
        let index = |e: usize| elems.binary_search(&e).expect("closed subset");
        Self::from_fn(elems.len(), |i, j| {
            let (u, v) = self.b(elems[i], elems[j]);
            (index(u), index(v))
        })
    }

    /// The isomorphic birack obtained by renaming each `x` to `relabel(x)`.
    pub fn relabeled(&self, relabel: &Permutation) -> FiniteBirack {
        let inv = relabel.inverse();
        Self::from_fn(self.n(), |x, y| {
            let (u, v) = self.b(inv.apply(x), inv.apply(y));
            (relabel.apply(u), relabel.apply(v))
        })
        .expect("isomorphic image of a birack is a birack")
    }
}
