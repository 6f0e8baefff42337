//! Constructors for the standard birack families: constant action biracks,
//! linear `(t, s, r)`-biracks over `(Z_n)^m`, and group-based `(τ, σ, ρ)`-biracks.
//!
//! Every constructor builds the tables and hands them to
//! [`FiniteBirack::from_tables`], so the kink map is always derived from the
//! sideways map. The closed forms each family predicts for `π` are checked
//! against that derivation.

use num_integer::Integer;

use crate::birack::{BirackTables, FiniteBirack};
use crate::error::{Error, Param};
use crate::perm::Permutation;

/// Largest birack a family constructor will build.
pub const MAX_FAMILY_ORDER: usize = 1024;

/// `B(x, y) = (τ(y), ρ(x))` for commuting permutations `τ`, `ρ`.
///
/// The kink map of this birack is `τρ`.
pub fn constant_action(tau: &Permutation, rho: &Permutation) -> Result<FiniteBirack, Error> {
    if tau.len() != rho.len() {
        return Err(Error::NotAPermutation(format!(
            "tau acts on {} points but rho on {}",
            tau.len(),
            rho.len()
        )));
    }
    if tau.compose(rho) != rho.compose(tau) {
        return Err(Error::NonCommuting);
    }
    let b = FiniteBirack::from_fn(tau.len(), |x, y| (tau.apply(y), rho.apply(x)))?;
    assert_eq!(*b.kink_map(), tau.compose(rho));
    Ok(b)
}

fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let e = (a as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as u64)
}

/// Multiplicative order of `a` modulo `n`, for `a` a unit.
pub fn multiplicative_order(a: u64, n: u64) -> usize {
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut p = a % n;
    while p != 1 {
        p = p * a % n;
        k += 1;
    }
    k
}

/// Parameters of a linear birack `B(x, y) = (ty + sx, rx)` over `Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearParams {
    pub n: u64,
    pub t: u64,
    pub s: u64,
    pub r: u64,
}

impl LinearParams {
    /// Reduces the parameters mod `n` and checks invertibility of `t`, `r` and
    /// the relation `s² = (1 − tr)s`.
    pub fn new(n: u64, t: u64, s: u64, r: u64) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::BadMatrix(format!("modulus must be at least 2, got {}", n)));
        }
        let p = Self { n, t: t % n, s: s % n, r: r % n };
        if p.t.gcd(&n) != 1 {
            return Err(Error::NotInvertible(Param::T));
        }
        if p.r.gcd(&n) != 1 {
            return Err(Error::NotInvertible(Param::R));
        }
        let one_minus_tr = (1 + n * n - p.t * p.r % n) % n;
        if p.s * p.s % n != one_minus_tr * p.s % n {
            return Err(Error::IdealViolation);
        }
        Ok(p)
    }

    /// `tr + s`, the factor by which the kink map multiplies.
    pub fn kink_multiplier(&self) -> u64 {
        (self.t * self.r + self.s) % self.n
    }

    /// `t⁻¹r⁻¹(1 − s)`, the inverse of the kink multiplier.
    pub fn kink_inverse(&self) -> u64 {
        let n = self.n;
        let tr_inv = inverse_mod(self.t * self.r % n, n).expect("t and r are units");
        tr_inv * ((1 + n - self.s) % n) % n
    }

    /// `1 + t⁻¹r⁻¹s`, the inverse of `1 − s`.
    pub fn one_minus_s_inverse(&self) -> u64 {
        let n = self.n;
        let tr_inv = inverse_mod(self.t * self.r % n, n).expect("t and r are units");
        (1 + tr_inv * self.s) % n
    }

    /// `(tr + s)·t⁻¹r⁻¹(1 − s) ≡ 1` and `(1 − s)(1 + t⁻¹r⁻¹s) ≡ 1`.
    pub fn inverse_identities_hold(&self) -> bool {
        let n = self.n;
        self.kink_multiplier() * self.kink_inverse() % n == 1 % n
            && (1 + n - self.s) % n * self.one_minus_s_inverse() % n == 1 % n
    }

    /// Order of `tr + s` in the unit group of `Z_n`.
    pub fn rank(&self) -> usize {
        multiplicative_order(self.kink_multiplier(), self.n)
    }
}

/// Base-`n` digits of `index`, least significant first.
fn digits(mut index: usize, n: usize, m: usize) -> Vec<usize> {
    (0..m)
        .map(|_| {
            let d = index % n;
            index /= n;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], n: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * n + d)
}

/// The `(t, s, r)`-birack on `(Z_n)^m` with componentwise `B(x, y) = (ty + sx, rx)`.
///
/// The tuple `(x₀, …, x_{m−1})` is element `x₀ + x₁·n + … + x_{m−1}·n^{m−1}`.
pub fn tsr_birack(n: u64, t: u64, s: u64, r: u64, m: u32) -> Result<FiniteBirack, Error> {
    let p = LinearParams::new(n, t, s, r)?;
    if m == 0 {
        return Err(Error::BadMatrix("tuple length must be at least 1".into()));
    }
    let nn = n as usize;
    let order = (n as u128).checked_pow(m).filter(|&o| o <= MAX_FAMILY_ORDER as u128);
    let order = match order {
        Some(o) => o as usize,
        None => return Err(Error::SizeTooLarge(nn.saturating_pow(m))),
    };
    assert!(p.inverse_identities_hold(), "unit identities fail for {:?}", p);

    let (tt, ss, rr) = (p.t as usize, p.s as usize, p.r as usize);
    let m = m as usize;
    let b = FiniteBirack::from_fn(order, |x, y| {
        let (xs, ys) = (digits(x, nn, m), digits(y, nn, m));
        let first: Vec<usize> = xs.iter().zip(&ys).map(|(&a, &b)| (tt * b + ss * a) % nn).collect();
        let second: Vec<usize> = xs.iter().map(|&a| rr * a % nn).collect();
        (undigits(&first, nn), undigits(&second, nn))
    })?;

    let k = p.kink_multiplier() as usize;
    for x in 0..order {
        let scaled: Vec<usize> = digits(x, nn, m).iter().map(|&d| k * d % nn).collect();
        assert_eq!(b.kink_map().apply(x), undigits(&scaled, nn), "kink map is not multiplication by tr+s");
    }
    assert_eq!(b.rank(), p.rank());
    Ok(b)
}

/// A finite group given by its Cayley table, elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl Group {
    /// Checks associativity, a two-sided identity and two-sided inverses.
    /// `rows[a][b]` is the 0-indexed product `ab`.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&e| e >= n)) {
            return Err(Error::NotAGroup("table is not n×n over 1..=n".into()));
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        let mul = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("element {} has no inverse", a + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { n, table, identity, inverses })
    }

    /// The additive group `Z_n`.
    pub fn cyclic(n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&rows).expect("Z_n is a group")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_endomorphism(&self, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&v| v < self.n)
            && (0..self.n).all(|a| (0..self.n).all(|b| f[self.mul(a, b)] == self.mul(f[a], f[b])))
    }

    pub fn is_automorphism(&self, f: &[usize]) -> bool {
        self.is_endomorphism(f) && Permutation::from_images(f.to_vec()).is_ok()
    }
}

/// Tables of `B(x, y) = (τ(y)σ(x), ρ(x))` without any checks on the maps.
pub fn group_birack_tables(
    group: &Group,
    tau: &[usize],
    sigma: &[usize],
    rho: &[usize],
) -> Result<BirackTables, Error> {
    let n = group.order();
    if [tau, sigma, rho].iter().any(|f| f.len() != n || f.iter().any(|&v| v >= n)) {
        return Err(Error::BadMatrix("maps must send the group to itself".into()));
    }
    BirackTables::from_fn(n, |x, y| (group.mul(tau[y], sigma[x]), rho[x]))
}

/// The `(τ, σ, ρ)`-birack `B(x, y) = (τ(y)σ(x), ρ(x))` on a group.
///
/// Requires `τ, ρ` automorphisms, `σ` an endomorphism, `ρ` commuting with `τ` and
/// `σ`, and `τσ(y)·σ(z) = τσρ(z)·στ(y)·σ²(z)` for all `y, z`. The kink map is
/// `x ↦ τρ(x)·σ(x)`.
pub fn tau_sigma_rho_birack(
    group: &Group,
    tau: &[usize],
    sigma: &[usize],
    rho: &[usize],
) -> Result<FiniteBirack, Error> {
    let n = group.order();
    if !group.is_automorphism(tau) {
        return Err(Error::NotAutomorphism(Param::Tau));
    }
    if !group.is_automorphism(rho) {
        return Err(Error::NotAutomorphism(Param::Rho));
    }
    if !group.is_endomorphism(sigma) {
        return Err(Error::NotEndomorphism(Param::Sigma));
    }
    if (0..n).any(|x| rho[tau[x]] != tau[rho[x]] || rho[sigma[x]] != sigma[rho[x]]) {
        return Err(Error::NotCommuting);
    }
    for y in 0..n {
        for z in 0..n {
            let lhs = group.mul(tau[sigma[y]], sigma[z]);
            let rhs = group.mul(group.mul(tau[sigma[rho[z]]], sigma[tau[y]]), sigma[sigma[z]]);
            if lhs != rhs {
                return Err(Error::Eq4Fails { y, z });
            }
        }
    }
    let b = FiniteBirack::from_tables(group_birack_tables(group, tau, sigma, rho)?)?;
    for x in 0..n {
        assert_eq!(b.kink_map().apply(x), group.mul(tau[rho[x]], sigma[x]), "kink map is not τρ(x)σ(x)");
    }
    Ok(b)
}
