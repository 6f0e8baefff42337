//! Permutations of `{0, …, n-1}` with 1-indexed cycle notation for I/O.

use std::fmt;

use num_integer::Integer;

use crate::error::Error;

/// A bijection of `{0, …, n-1}` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Builds a permutation from its images, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::NotAPermutation(format!("{:?}", images)));
            }
            seen[y] = true;
        }
        Ok(Self { images })
    }

    /// Parses 1-indexed cycle notation such as `"(1 2)(3 4)"` on `{1, …, n}`.
    ///
    /// Entries inside a cycle may be separated by spaces or commas. When `n < 10`
    /// the compact form `"(12)(34)"` is accepted as well. `""`, `"()"` and `"id"`
    /// denote the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self, Error> {
        let bad = || Error::NotAPermutation(text.to_string());
        let trimmed = text.trim();
        let mut images: Vec<usize> = (0..n).collect();
        if trimmed.is_empty() || trimmed == "id" {
            return Ok(Self { images });
        }
        let mut seen = vec![false; n];
        let mut rest = trimmed;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let body_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..body_end];
            rest = &rest[body_end + 1..];

            let tokens: Vec<&str> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect();
            let labels: Vec<usize> = if tokens.len() == 1 && tokens[0].len() > 1 && n < 10 {
                tokens[0]
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                    .collect::<Result<_, _>>()?
            } else {
                tokens
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?
            };
            let cycle: Vec<usize> = labels
                .into_iter()
                .map(|l| if (1..=n).contains(&l) { Ok(l - 1) } else { Err(bad()) })
                .collect::<Result<_, _>>()?;
            for &x in &cycle {
                if seen[x] {
                    return Err(bad());
                }
                seen[x] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order in the symmetric group: the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// 1-indexed cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}
