//! Signed Gauss codes and the semiarc model of a link diagram.
//!
//! A code lists the components separated by `;`. Each component is a
//! comma-separated sequence of passes `O<id><sign>` or `U<id><sign>` in
//! traversal order, e.g. the trefoil `O1+,U2+,O3+,U1+,O2+,U3+`. An empty
//! component is a crossing-free circle, so `""` is the unknot and `";"` the
//! two-component unlink. Virtual crossings are simply not listed.
//!
//! A component with `k ≥ 1` passes has `k` semiarcs, semiarc `i` running from
//! pass `i` to pass `i + 1` (cyclically); a crossing-free component has one.
//! Semiarcs are numbered globally in component order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// One passage of a component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: u32,
    pub role: Role,
    pub sign: Sign,
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        let sign = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{}{}{}", role, self.crossing, sign)
    }
}

impl FromStr for Pass {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad token {:?}", token));
        let mut chars = token.chars();
        let role = match chars.next() {
            Some('O') => Role::Over,
            Some('U') => Role::Under,
            _ => return Err(bad()),
        };
        let sign = match chars.next_back() {
            Some('+') => Sign::Positive,
            Some('-') => Sign::Negative,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let crossing: u32 = digits.parse().map_err(|_| bad())?;
        if crossing == 0 {
            return Err(bad());
        }
        Ok(Pass { crossing, role, sign })
    }
}

/// Position of a pass: component index and index within that component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PassRef {
    pub component: usize,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub id: u32,
    pub sign: Sign,
    pub over: PassRef,
    pub under: PassRef,
}

/// A validated diagram: components, crossings and semiarc numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    components: Vec<Vec<Pass>>,
    crossings: BTreeMap<u32, Crossing>,
    offsets: Vec<usize>,
    num_semiarcs: usize,
}

/// The semiarcs meeting at one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingArcs {
    pub sign: Sign,
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
}

impl Diagram {
    pub fn from_components(components: Vec<Vec<Pass>>) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::Parse("a diagram needs at least one component".into()));
        }
        let mut seen: BTreeMap<u32, (Option<(PassRef, Sign)>, Option<(PassRef, Sign)>)> = BTreeMap::new();
        for (c, comp) in components.iter().enumerate() {
            for (p, pass) in comp.iter().enumerate() {
                let slot = seen.entry(pass.crossing).or_default();
                let target = match pass.role {
                    Role::Over => &mut slot.0,
                    Role::Under => &mut slot.1,
                };
                if target.is_some() {
                    return Err(Error::BadPairing {
                        id: pass.crossing,
                        reason: format!("{:?} pass appears twice", pass.role),
                    });
                }
                *target = Some((PassRef { component: c, position: p }, pass.sign));
            }
        }
        let mut crossings = BTreeMap::new();
        for (id, slot) in seen {
            match slot {
                (Some((over, s1)), Some((under, s2))) => {
                    if s1 != s2 {
                        return Err(Error::BadPairing { id, reason: "over and under passes disagree on sign".into() });
                    }
                    crossings.insert(id, Crossing { id, sign: s1, over, under });
                }
                (Some(_), None) => return Err(Error::BadPairing { id, reason: "missing under pass".into() }),
                (None, Some(_)) => return Err(Error::BadPairing { id, reason: "missing over pass".into() }),
                (None, None) => unreachable!(),
            }
        }
        let mut offsets = Vec::with_capacity(components.len());
        let mut total = 0;
        for comp in &components {
            offsets.push(total);
            total += comp.len().max(1);
        }
        Ok(Self { components, crossings, offsets, num_semiarcs: total })
    }

    /// Parses a signed Gauss code.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let components = text
            .split(';')
            .map(|comp| {
                let comp = comp.trim();
                if comp.is_empty() {
                    return Ok(Vec::new());
                }
                comp.split(',').map(|t| t.trim().parse::<Pass>()).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_components(components)
    }

    /// The crossing-free diagram with `c` components.
    pub fn unlink(c: usize) -> Self {
        assert!(c > 0, "an unlink needs at least one component");
        Self::from_components(vec![Vec::new(); c]).expect("crossing-free diagrams are valid")
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Crossing> {
        self.crossings.values()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_semiarcs(&self) -> usize {
        self.num_semiarcs
    }

    /// Semiarc leaving the given pass.
    pub fn outgoing(&self, at: PassRef) -> usize {
        self.offsets[at.component] + at.position
    }

    /// Semiarc arriving at the given pass.
    pub fn incoming(&self, at: PassRef) -> usize {
        let k = self.components[at.component].len();
        self.offsets[at.component] + (at.position + k - 1) % k
    }

    /// Component that semiarc `arc` belongs to.
    pub fn component_of(&self, arc: usize) -> usize {
        self.offsets.partition_point(|&o| o <= arc) - 1
    }

    pub fn crossing_arcs(&self) -> Vec<CrossingArcs> {
        self.crossings
            .values()
            .map(|c| CrossingArcs {
                sign: c.sign,
                over_in: self.incoming(c.over),
                over_out: self.outgoing(c.over),
                under_in: self.incoming(c.under),
                under_out: self.outgoing(c.under),
            })
            .collect()
    }

    /// Sum of crossing signs over each component's self-crossings.
    pub fn writhe_vector(&self) -> Vec<i64> {
        let mut w = vec![0; self.components.len()];
        for c in self.crossings.values() {
            if c.over.component == c.under.component {
                w[c.over.component] += c.sign.value();
            }
        }
        w
    }

    /// Appends positive kinks (`O` then `U`, fresh ids) to the end of each
    /// component until its writhe is congruent to `target` modulo `rank`.
    pub fn with_framing(&self, target: &[i64], rank: usize) -> Result<Self, Error> {
        if target.len() != self.components.len() {
            return Err(Error::LengthMismatch { expected: self.components.len(), got: target.len() });
        }
        assert!(rank > 0, "rank must be positive");
        let n = rank as i64;
        let mut next_id = self.crossings.keys().next_back().map_or(1, |&m| m + 1);
        let mut components = self.components.clone();
        for ((comp, &w), &t) in components.iter_mut().zip(&self.writhe_vector()).zip(target) {
            let kinks = (t - w).rem_euclid(n);
            for _ in 0..kinks {
                comp.push(Pass { crossing: next_id, role: Role::Over, sign: Sign::Positive });
                comp.push(Pass { crossing: next_id, role: Role::Under, sign: Sign::Positive });
                next_id += 1;
            }
        }
        Self::from_components(components)
    }

    /// The signed Gauss code of this diagram.
    pub fn to_code(&self) -> String {
        self.components
            .iter()
            .map(|c| c.iter().map(Pass::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Structured export for external tooling.
    pub fn export(&self) -> DiagramExport {
        let mut semiarcs = Vec::with_capacity(self.num_semiarcs);
        for (c, comp) in self.components.iter().enumerate() {
            let k = comp.len();
            if k == 0 {
                semiarcs.push(SemiarcExport { index: self.offsets[c], component: c, from_pass: None, to_pass: None });
            }
            for p in 0..k {
                semiarcs.push(SemiarcExport {
                    index: self.offsets[c] + p,
                    component: c,
                    from_pass: Some(p),
                    to_pass: Some((p + 1) % k),
                });
            }
        }
        DiagramExport {
            code: self.to_code(),
            components: self.components.iter().map(|c| c.iter().map(Pass::to_string).collect()).collect(),
            crossings: self.crossings.values().copied().collect(),
            semiarcs,
            writhe: self.writhe_vector(),
        }
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse(s)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiarcExport {
    pub index: usize,
    pub component: usize,
    pub from_pass: Option<usize>,
    pub to_pass: Option<usize>,
}

/// JSON shape of a diagram: components, crossings, semiarc map and writhe vector.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramExport {
    pub code: String,
    pub components: Vec<Vec<String>>,
    pub crossings: Vec<Crossing>,
    pub semiarcs: Vec<SemiarcExport>,
    pub writhe: Vec<i64>,
}
