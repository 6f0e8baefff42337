//! Birack counting invariants and their enhancements.
//!
//! For a birack of rank `N` and a `c`-component diagram, labelings are collected
//! over every framing vector `w ∈ (Z_N)^c` (in lexicographic order), each framing
//! realized by [`Diagram::with_framing`]. Each labeling then contributes a
//! signature:
//!
//! | kind       | signature              | polynomial form               |
//! |------------|------------------------|-------------------------------|
//! | `integral` | none                   | the total count               |
//! | `writhe`   | the framing vector `w` | `Σ count(w) · q₁^{w₁}…q_c^{w_c}` |
//! | `image`    | image size `|Im f|`    | `Σ z^{|Im f|}`                |
//! | `rho`      | subbirack polynomial of `Im f` | `Σ z^{ρ(Im f ⊂ X)}`   |
//!
//! A labeling whose image is a single element contributes `z` (resp.
//! `z^{ρ({x} ⊂ X)}`), never the constant 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::birack::FiniteBirack;
use crate::diagram::Diagram;
use crate::error::Error;
use crate::homsearch::{for_each_labeling, labeling_image};
use crate::poly::{count, Coefficient, Monomial, MultiPoly, NestedPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantKind {
    Integral,
    Writhe,
    Image,
    Rho,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 4] =
        [InvariantKind::Integral, InvariantKind::Writhe, InvariantKind::Image, InvariantKind::Rho];

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::Integral => "integral",
            InvariantKind::Writhe => "writhe",
            InvariantKind::Image => "image",
            InvariantKind::Rho => "rho",
        }
    }

    fn needs_images(self) -> bool {
        matches!(self, InvariantKind::Image | InvariantKind::Rho)
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        InvariantKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown invariant {:?} (expected integral, writhe, image or rho)", s))
    }
}

/// Per-element statistics `(c₁, c₂, r₁, r₂)` feeding the birack polynomial:
///
/// * `c₁(x) = |{y : B₁(x, y) = y}|`
/// * `c₂(x) = |{y : B₂(y, x) = y}|`
/// * `r₁(x) = |{y : B₁(y, x) = x}|`
/// * `r₂(x) = |{y : B₂(x, y) = x}|`
pub fn element_statistics(b: &FiniteBirack, x: usize) -> [u32; 4] {
    let n = b.n();
    let tally = |pred: &dyn Fn(usize) -> bool| (0..n).filter(|&y| pred(y)).count() as u32;
    [
        tally(&|y| b.b1(x, y) == y),
        tally(&|y| b.b2(y, x) == y),
        tally(&|y| b.b1(y, x) == x),
        tally(&|y| b.b2(x, y) == x),
    ]
}

fn statistics_monomial(stats: [u32; 4]) -> Monomial {
    Monomial::new(&[("s1", stats[0]), ("s2", stats[1]), ("t1", stats[2]), ("t2", stats[3])])
}

/// `Σ_{x ∈ X} s₁^{c₁(x)} s₂^{c₂(x)} t₁^{r₁(x)} t₂^{r₂(x)}`.
pub fn birack_polynomial<C: Coefficient>(b: &FiniteBirack) -> MultiPoly<C> {
    let mut p = MultiPoly::zero();
    for x in 0..b.n() {
        p.add_term(statistics_monomial(element_statistics(b, x)), C::one());
    }
    p
}

/// The same sum restricted to a subbirack `Y`, with statistics still counted over all of `X`.
pub fn subbirack_polynomial<C: Coefficient>(b: &FiniteBirack, y: &BTreeSet<usize>) -> Result<MultiPoly<C>, Error> {
    if y.is_empty() || y.iter().any(|&e| e >= b.n()) || !b.is_closed(y) {
        return Err(Error::NotASubbirack(y.iter().map(|e| e + 1).collect()));
    }
    let mut p = MultiPoly::zero();
    for &x in y {
        p.add_term(statistics_monomial(element_statistics(b, x)), C::one());
    }
    Ok(p)
}

/// Labelings of one framed diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingCensus {
    pub framing: Vec<usize>,
    pub count: u64,
    /// Image subbirack of each labeling with its multiplicity; empty unless images were requested.
    pub images: BTreeMap<BTreeSet<usize>, u64>,
}

/// Labeling counts (and optionally images) over a full framing period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub rank: usize,
    pub components: usize,
    pub framings: Vec<FramingCensus>,
}

/// All vectors in `(Z_rank)^len`, lexicographically.
pub fn framing_vectors(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..rank).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

impl Census {
    pub fn collect(d: &Diagram, b: &FiniteBirack, with_images: bool) -> Self {
        let rank = b.rank();
        let mut closure_cache: BTreeMap<BTreeSet<usize>, BTreeSet<usize>> = BTreeMap::new();
        let framings = framing_vectors(rank, d.num_components())
            .into_iter()
            .map(|framing| {
                let target: Vec<i64> = framing.iter().map(|&w| w as i64).collect();
                let framed = d.with_framing(&target, rank).expect("framing length matches");
                let mut count = 0;
                let mut images: BTreeMap<BTreeSet<usize>, u64> = BTreeMap::new();
                for_each_labeling(&framed, b, |labels| {
                    count += 1;
                    if with_images {
                        let used: BTreeSet<usize> = labels.iter().copied().collect();
                        let image = closure_cache.entry(used).or_insert_with_key(|u| {
                            labeling_image(&u.iter().copied().collect::<Vec<_>>(), b)
                        });
                        *images.entry(image.clone()).or_default() += 1;
                    }
                });
                FramingCensus { framing, count, images }
            })
            .collect();
        Census { rank, components: d.num_components(), framings }
    }

    pub fn total(&self) -> u64 {
        self.framings.iter().map(|f| f.count).sum()
    }

    fn image_multiplicities(&self) -> BTreeMap<&BTreeSet<usize>, u64> {
        let mut out: BTreeMap<&BTreeSet<usize>, u64> = BTreeMap::new();
        for f in &self.framings {
            for (img, &m) in &f.images {
                *out.entry(img).or_default() += m;
            }
        }
        out
    }

    pub fn integral<C: Coefficient>(&self) -> InvariantValue<C> {
        let total = self.total();
        InvariantValue {
            kind: InvariantKind::Integral,
            value: Value::Integer(count(total as usize)),
            multiset: Multiset::from_counts([("labelings".to_string(), total)]),
        }
    }

    pub fn writhe<C: Coefficient>(&self) -> InvariantValue<C> {
        let mut p = MultiPoly::zero();
        for f in &self.framings {
            let factors: Vec<(String, u32)> =
                f.framing.iter().enumerate().map(|(i, &w)| (format!("q{}", i + 1), w as u32)).collect();
            p.add_term(Monomial::new(&factors), count(f.count as usize));
        }
        let multiset = Multiset::from_counts(self.framings.iter().map(|f| {
            let w: Vec<String> = f.framing.iter().map(usize::to_string).collect();
            (format!("({})", w.join(",")), f.count)
        }));
        InvariantValue { kind: InvariantKind::Writhe, value: Value::Poly(p), multiset }
    }

    pub fn image<C: Coefficient>(&self) -> InvariantValue<C> {
        let mut by_size: BTreeMap<usize, u64> = BTreeMap::new();
        for (img, m) in self.image_multiplicities() {
            *by_size.entry(img.len()).or_default() += m;
        }
        let mut p = MultiPoly::zero();
        for (&size, &m) in &by_size {
            p.add_term(Monomial::new(&[("z", size as u32)]), count(m as usize));
        }
        let multiset = Multiset::from_counts(by_size.iter().map(|(s, &m)| (s.to_string(), m)));
        InvariantValue { kind: InvariantKind::Image, value: Value::Poly(p), multiset }
    }

    pub fn rho<C: Coefficient>(&self, b: &FiniteBirack) -> InvariantValue<C> {
        let mut nested = NestedPoly::zero();
        for (img, m) in self.image_multiplicities() {
            let exponent = subbirack_polynomial::<C>(b, img).expect("labeling images are subbiracks");
            nested.add_term(&exponent, count(m as usize));
        }
        let multiset = Multiset::from_counts(nested.terms().map(|(p, m)| {
            (p.canonical_string(), m.to_u64().expect("multiplicities are nonnegative"))
        }));
        InvariantValue { kind: InvariantKind::Rho, value: Value::Nested(nested), multiset }
    }

    pub fn value<C: Coefficient>(&self, kind: InvariantKind, b: &FiniteBirack) -> InvariantValue<C> {
        match kind {
            InvariantKind::Integral => self.integral(),
            InvariantKind::Writhe => self.writhe(),
            InvariantKind::Image => self.image(),
            InvariantKind::Rho => self.rho(b),
        }
    }
}

/// Signature → multiplicity, sorted by signature. Multiplicities can be negative
/// after normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Multiset<C>(pub BTreeMap<String, C>);

impl<C: Coefficient> Multiset<C> {
    fn from_counts(items: impl IntoIterator<Item = (String, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (sig, m) in items {
            if m > 0 {
                let e = map.entry(sig).or_insert_with(C::zero);
                *e = *e + count::<C>(m as usize);
            }
        }
        Self(map)
    }

    fn difference(&self, other: &Self) -> Self {
        let mut map = self.0.clone();
        for (sig, &m) in &other.0 {
            let e = map.entry(sig.clone()).or_insert_with(C::zero);
            *e = *e - m;
        }
        map.retain(|_, m| !m.is_zero());
        Self(map)
    }

    pub fn total(&self) -> C {
        self.0.values().fold(C::zero(), |a, &m| a + m)
    }

    pub fn get(&self, signature: &str) -> C {
        self.0.get(signature).copied().unwrap_or_else(C::zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value<C> {
    Integer(C),
    Poly(MultiPoly<C>),
    Nested(NestedPoly<C>),
}

impl<C: Coefficient> fmt::Display for Value<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(c) => write!(f, "{}", c),
            Value::Poly(p) => write!(f, "{}", p),
            Value::Nested(n) => write!(f, "{}", n),
        }
    }
}

/// A computed invariant in polynomial and multiset form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue<C> {
    pub kind: InvariantKind,
    pub value: Value<C>,
    pub multiset: Multiset<C>,
}

impl<C: Coefficient> InvariantValue<C> {
    pub fn canonical_string(&self) -> String {
        self.value.to_string()
    }

    /// `self − other`, both of the same kind.
    pub fn difference(&self, other: &Self) -> Result<Self, Error> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch);
        }
        let value = match (&self.value, &other.value) {
            (Value::Integer(a), Value::Integer(b)) => Value::Integer(*a - *b),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a - b),
            (Value::Nested(a), Value::Nested(b)) => Value::Nested(a - b),
            _ => return Err(Error::KindMismatch),
        };
        Ok(Self { kind: self.kind, value, multiset: self.multiset.difference(&other.multiset) })
    }

    pub fn as_integer(&self) -> Option<C> {
        match self.value {
            Value::Integer(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&MultiPoly<C>> {
        match &self.value {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_nested(&self) -> Option<&NestedPoly<C>> {
        match &self.value {
            Value::Nested(n) => Some(n),
            _ => None,
        }
    }
}

/// Integral birack counting invariant: total labelings over one framing period.
pub fn phi_integral(d: &Diagram, b: &FiniteBirack) -> u64 {
    Census::collect(d, b, false).total()
}

/// Writhe-enhanced invariant `Σ_w |Hom(BR(L, w), X)| q^w`.
pub fn phi_writhe<C: Coefficient>(d: &Diagram, b: &FiniteBirack) -> MultiPoly<C> {
    match Census::collect(d, b, false).writhe::<C>().value {
        Value::Poly(p) => p,
        _ => unreachable!(),
    }
}

/// Image-enhanced invariant `Σ_f z^{|Im f|}`.
pub fn phi_image<C: Coefficient>(d: &Diagram, b: &FiniteBirack) -> MultiPoly<C> {
    match Census::collect(d, b, true).image::<C>().value {
        Value::Poly(p) => p,
        _ => unreachable!(),
    }
}

/// Birack-polynomial-enhanced invariant `Σ_f z^{ρ(Im f ⊂ X)}`.
pub fn phi_rho<C: Coefficient>(d: &Diagram, b: &FiniteBirack) -> NestedPoly<C> {
    match Census::collect(d, b, true).rho::<C>(b).value {
        Value::Nested(n) => n,
        _ => unreachable!(),
    }
}

/// One invariant of `d`, as a value with its multiset form.
pub fn compute<C: Coefficient>(kind: InvariantKind, d: &Diagram, b: &FiniteBirack) -> InvariantValue<C> {
    Census::collect(d, b, kind.needs_images()).value(kind, b)
}

/// `v` minus the same invariant of the unlink with as many components as `d`.
pub fn normalize<C: Coefficient>(v: &InvariantValue<C>, d: &Diagram, b: &FiniteBirack) -> Result<InvariantValue<C>, Error> {
    let unlink = compute::<C>(v.kind, &Diagram::unlink(d.num_components()), b);
    v.difference(&unlink)
}

/// JSON result record for one (link, invariant) computation.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub invariant: InvariantKind,
    pub normalized: bool,
    pub birack_file: Option<String>,
    pub gauss_code: String,
    pub value_canonical_string: String,
    pub multiset: Vec<(String, i64)>,
    pub per_framing_counts: Vec<FramingCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramingCount {
    pub framing: Vec<usize>,
    pub count: u64,
}

impl InvariantReport {
    /// Computes `kind` for `d` (normalized if asked) and records the per-framing counts.
    pub fn build(
        kind: InvariantKind,
        normalized: bool,
        d: &Diagram,
        b: &FiniteBirack,
        birack_file: Option<String>,
    ) -> Result<Self, Error> {
        let census = Census::collect(d, b, kind.needs_images());
        let mut value = census.value::<i64>(kind, b);
        if normalized {
            value = normalize(&value, d, b)?;
        }
        Ok(Self {
            invariant: kind,
            normalized,
            birack_file,
            gauss_code: d.to_code(),
            value_canonical_string: value.canonical_string(),
            multiset: value.multiset.0.into_iter().collect(),
            per_framing_counts: census
                .framings
                .iter()
                .map(|f| FramingCount { framing: f.framing.clone(), count: f.count })
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{constant_action, tsr_birack};
    use crate::perm::Permutation;

    type P = MultiPoly<i64>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    fn hopf_birack() -> FiniteBirack {
        constant_action(&Permutation::identity(2), &Permutation::from_cycles(2, "(1 2)").unwrap()).unwrap()
    }

    fn un_birack() -> FiniteBirack {
        FiniteBirack::from_matrix(
            4,
            &[
                vec![2, 2, 1, 1, 2, 2, 1, 1],
                vec![1, 1, 2, 2, 1, 1, 2, 2],
                vec![3, 4, 3, 3, 4, 3, 4, 4],
                vec![4, 3, 4, 4, 3, 4, 3, 3],
            ],
        )
        .unwrap()
    }

    #[test]
    fn framing_vectors_are_lexicographic() {
        assert_eq!(framing_vectors(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(framing_vectors(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(framing_vectors(1, 3).len(), 1);
    }

    #[test]
    fn hopf_versus_unlink() {
        let b = hopf_birack();
        let hopf = Diagram::parse("O1+,U2+;U1+,O2+").unwrap();
        let unlink = Diagram::unlink(2);
        assert_eq!(phi_integral(&hopf, &b), 4);
        assert_eq!(phi_integral(&unlink, &b), 4);
        assert_eq!(phi_writhe::<i64>(&hopf, &b).to_string(), "4q1q2");
        assert_eq!(phi_writhe::<i64>(&unlink, &b).to_string(), "4");
        let v = compute::<i64>(InvariantKind::Writhe, &hopf, &b);
        assert_eq!(normalize(&v, &hopf, &b).unwrap().canonical_string(), "4q1q2 - 4");
    }

    #[test]
    fn unknot_writhe_with_hopf_birack() {
        // π = (1 2) has no fixed points, so the once-kinked unknot has no labelings
        assert_eq!(phi_writhe::<i64>(&Diagram::unlink(1), &hopf_birack()), p("2"));
    }

    #[test]
    fn un_polynomials() {
        let b = un_birack();
        assert_eq!(birack_polynomial::<i64>(&b), p("s1^2t1^2t2^2 + s2^2t1^2t2^2 + 2s1^4s2^2t1^3t2"));
        let y = subbirack_polynomial::<i64>(&b, &BTreeSet::from([0, 1])).unwrap();
        let z = subbirack_polynomial::<i64>(&b, &BTreeSet::from([2, 3])).unwrap();
        assert_eq!(y, p("s1^2t1^2t2^2 + s2^2t1^2t2^2"));
        assert_eq!(z, p("2s1^4s2^2t1^3t2"));
        assert!(matches!(
            subbirack_polynomial::<i64>(&b, &BTreeSet::from([0, 2])),
            Err(Error::NotASubbirack(_))
        ));
    }

    #[test]
    fn small_birack_polynomials() {
        // B(x,y) = (y,x): every statistic counts all of X
        for n in 1..5u32 {
            let expected = P::monomial(&[("s1", n), ("s2", n), ("t1", n), ("t2", n)], n as i64);
            assert_eq!(birack_polynomial::<i64>(&FiniteBirack::identity(n as usize)), expected);
        }
        // B(x,y) = (y, ρ(x)) with ρ fixed-point free: c₁ = r₁ = 2, c₂ = r₂ = 0
        assert_eq!(birack_polynomial::<i64>(&hopf_birack()), p("2s1^2t1^2"));
    }

    #[test]
    fn un_unknot_rho() {
        let v = phi_rho::<i64>(&Diagram::unlink(1), &un_birack());
        assert_eq!(v.to_string(), "4z^{s1^2t1^2t2^2 + s2^2t1^2t2^2} + 2z^{2s1^4s2^2t1^3t2}");
    }

    #[test]
    fn trefoil_over_z3() {
        let b = tsr_birack(3, 1, 2, 2, 1).unwrap();
        let d = Diagram::parse("O1+,U2+,O3+,U1+,O2+,U3+").unwrap();
        assert_eq!(phi_integral(&d, &b), 9);
        assert_eq!(phi_image::<i64>(&d, &b), p("z + 8z^3"));
        assert_eq!(phi_image::<i64>(&Diagram::unlink(1), &b), p("z + 2z^3"));
        let v = compute::<i64>(InvariantKind::Integral, &d, &b);
        assert_eq!(normalize(&v, &d, &b).unwrap().as_integer(), Some(6));
        let img = compute::<i64>(InvariantKind::Image, &d, &b);
        assert_eq!(img.multiset.get("1"), 1);
        assert_eq!(img.multiset.get("3"), 8);
    }

    #[test]
    fn singleton_birack_rho() {
        let b = FiniteBirack::from_matrix(1, &[vec![1, 1]]).unwrap();
        for code in ["", "O1+,U2+,O3+,U1+,O2+,U3+", "O1+,U2+;U1+,O2+"] {
            let d = Diagram::parse(code).unwrap();
            let k = phi_integral(&d, &b) as i64;
            let v = phi_rho::<i64>(&d, &b);
            assert_eq!(v.num_terms(), 1);
            assert_eq!(v.multiplicity(&p("s1s2t1t2")), k);
        }
    }

    #[test]
    fn normalized_unlink_is_zero() {
        let b = un_birack();
        for c in 1..3 {
            let d = Diagram::unlink(c);
            for kind in InvariantKind::ALL {
                let v = compute::<i64>(kind, &d, &b);
                let n = normalize(&v, &d, &b).unwrap();
                assert_eq!(n.canonical_string(), "0", "{} on unlink({})", kind, c);
                assert!(n.multiset.0.is_empty());
            }
        }
    }

    #[test]
    fn kind_mismatch() {
        let b = hopf_birack();
        let d = Diagram::unlink(1);
        let a = compute::<i64>(InvariantKind::Integral, &d, &b);
        let w = compute::<i64>(InvariantKind::Writhe, &d, &b);
        assert_eq!(a.difference(&w), Err(Error::KindMismatch));
    }

    #[test]
    fn report_json_shape() {
        let b = hopf_birack();
        let d = Diagram::parse("O1+,U2+;U1+,O2+").unwrap();
        let r = InvariantReport::build(InvariantKind::Writhe, false, &d, &b, Some("hopf.txt".into())).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["invariant"], "writhe");
        assert_eq!(j["value_canonical_string"], "4q1q2");
        assert_eq!(j["per_framing_counts"][3]["framing"], serde_json::json!([1, 1]));
        assert_eq!(j["per_framing_counts"][3]["count"], 4);
        assert_eq!(j["multiset"], serde_json::json!([["(1,1)", 4]]));
    }

    #[test]
    fn generic_over_coefficient_width() {
        let b = un_birack();
        let a = phi_rho::<i32>(&Diagram::unlink(1), &b).to_string();
        let c = phi_rho::<i128>(&Diagram::unlink(1), &b).to_string();
        assert_eq!(a, c);
    }
}
