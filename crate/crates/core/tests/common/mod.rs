#![allow(dead_code)]

use birack::diagram::{Pass, Role, Sign};
use birack::{constant_action, group_birack_tables, tsr_birack, Diagram, FiniteBirack, Group, Permutation};

pub const UNKNOT: &str = "";
pub const TREFOIL: &str = "U1+,O3+,U2+,O1+,U3+,O2+";
pub const TREFOIL_ALT: &str = "O1+,U2+,O3+,U1+,O2+,U3+";
pub const FIGURE_EIGHT: &str = "O1+,U4-,O3-,U1+,O2+,U3-,O4-,U2+";
pub const CINQUEFOIL: &str = "U1-,O4-,U2-,O5-,U3-,O1-,U4-,O2-,U5-,O3-";
pub const STEVEDORE: &str = "U1-,O4+,U3+,O1-,U5-,O6-,U2-,O3+,U4+,O2-,U6-,O5-";
pub const HOPF: &str = "O1+,U2+;U1+,O2+";
pub const KINK: &str = "O1+,U1+";
pub const VIRTUAL_TREFOIL: &str = "O1-,O2-,U1-,U2-";

/// Small test links, classical and virtual.
pub fn test_links() -> Vec<(&'static str, Diagram)> {
    [
        ("unknot", UNKNOT),
        ("kink", KINK),
        ("trefoil", TREFOIL),
        ("figure-eight", FIGURE_EIGHT),
        ("hopf", HOPF),
        ("virtual trefoil", VIRTUAL_TREFOIL),
        ("unlink2", ";"),
    ]
    .into_iter()
    .map(|(name, code)| (name, Diagram::parse(code).unwrap()))
    .collect()
}

pub fn m(rows: &[&[usize]]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

pub fn cab1() -> FiniteBirack {
    FiniteBirack::from_matrix(
        4,
        &m(&[&[2, 2, 2, 2, 1, 1, 1, 1], &[1, 1, 1, 1, 2, 2, 2, 2], &[3, 3, 3, 3, 4, 4, 4, 4], &[4, 4, 4, 4, 3, 3, 3, 3]]),
    )
    .unwrap()
}

pub fn ex_hopf() -> FiniteBirack {
    FiniteBirack::from_matrix(2, &m(&[&[1, 1, 2, 2], &[2, 2, 1, 1]])).unwrap()
}

pub fn ex_un() -> FiniteBirack {
    FiniteBirack::from_matrix(
        4,
        &m(&[&[2, 2, 1, 1, 2, 2, 1, 1], &[1, 1, 2, 2, 1, 1, 2, 2], &[3, 4, 3, 3, 4, 3, 4, 4], &[4, 3, 4, 4, 3, 4, 3, 3]]),
    )
    .unwrap()
}

pub fn ten_rows() -> Vec<Vec<usize>> {
    m(&[
        &[1, 3, 5, 2, 4, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[5, 2, 4, 1, 3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
        &[4, 1, 3, 5, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
        &[3, 5, 2, 4, 1, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4],
        &[2, 4, 1, 3, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5],
        &[7, 7, 7, 7, 7, 6, 10, 9, 8, 7, 8, 8, 8, 8, 8, 6, 6, 6, 6, 6],
        &[9, 9, 9, 9, 9, 8, 7, 6, 10, 9, 6, 6, 6, 6, 6, 7, 7, 7, 7, 7],
        &[6, 6, 6, 6, 6, 10, 9, 8, 7, 6, 9, 9, 9, 9, 9, 8, 8, 8, 8, 8],
        &[8, 8, 8, 8, 8, 7, 6, 10, 9, 8, 7, 7, 7, 7, 7, 9, 9, 9, 9, 9],
        &[10, 10, 10, 10, 10, 9, 8, 7, 6, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10],
    ])
}

pub fn ten() -> FiniteBirack {
    FiniteBirack::from_matrix(10, &ten_rows()).unwrap()
}

/// The order-8 group ⟨α, β | α⁴, β², αβ = βα⁻¹⟩ with `α^iβ^j` at index `4j + i`.
pub fn d4() -> Group {
    let idx = |i: usize, j: usize| 4 * j + i;
    let rows: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (i, j, k, l) = (a % 4, a / 4, b % 4, b / 4);
                    let k = if j == 1 { (4 - k) % 4 } else { k };
                    idx((i + k) % 4, (j + l) % 2)
                })
                .collect()
        })
        .collect();
    Group::from_table(&rows).unwrap()
}

/// `τ = ρ : α^iβ^j ↦ β^jα^i`, `σ : α^iβ^j ↦ α^{2i}`.
pub fn dihedral_maps() -> (Vec<usize>, Vec<usize>) {
    let g = d4();
    let tau: Vec<usize> = (0..8).map(|x| g.mul(4 * (x / 4), x % 4)).collect();
    let sigma: Vec<usize> = (0..8).map(|x| (2 * (x % 4)) % 4).collect();
    (tau, sigma)
}

pub fn dihedral() -> FiniteBirack {
    let (tau, sigma) = dihedral_maps();
    FiniteBirack::from_tables(group_birack_tables(&d4(), &tau, &sigma, &tau).unwrap()).unwrap()
}

/// A spread of biracks: small, of rank > 1, non-biquandles, racks and a group birack.
pub fn test_biracks() -> Vec<(&'static str, FiniteBirack)> {
    vec![
        ("cab1", cab1()),
        ("ex_hopf", ex_hopf()),
        ("ex_un", ex_un()),
        ("tsr(3,1,2,2)", tsr_birack(3, 1, 2, 2, 1).unwrap()),
        ("tsr(4,3,2,3)", tsr_birack(4, 3, 2, 3, 1).unwrap()),
        ("tsr(5,2,0,3)", tsr_birack(5, 2, 0, 3, 1).unwrap()),
        ("ca((1 2 3),(1 2 3))", constant_action(&perm(3, "(1 2 3)"), &perm(3, "(1 2 3)")).unwrap()),
        ("dihedral", dihedral()),
        ("ten", ten()),
    ]
}

pub fn perm(n: usize, cycles: &str) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

/// Semiarc incidence recomputed from the pass sequences: pass `p` of a component
/// with `k` passes is entered by semiarc `offset + (p − 1 mod k)` and left by
/// `offset + p`.
pub struct Incidence {
    pub semiarcs: usize,
    /// (sign, over in, over out, under in, under out) per crossing.
    pub crossings: Vec<(Sign, usize, usize, usize, usize)>,
}

pub fn incidence(d: &Diagram) -> Incidence {
    let mut offset = 0;
    let mut over = std::collections::BTreeMap::new();
    let mut under = std::collections::BTreeMap::new();
    for comp in d.components() {
        let k = comp.len();
        for (p, pass) in comp.iter().enumerate() {
            let inc = offset + (p + k - 1) % k;
            let out = offset + p;
            match pass.role {
                Role::Over => {
                    over.insert(pass.crossing, (pass.sign, inc, out));
                }
                Role::Under => {
                    under.insert(pass.crossing, (inc, out));
                }
            }
        }
        offset += k.max(1);
    }
    let crossings = over
        .iter()
        .map(|(id, &(sign, oi, oo))| {
            let (ui, uo) = under[id];
            (sign, oi, oo, ui, uo)
        })
        .collect();
    Incidence { semiarcs: offset, crossings }
}

/// Every assignment of `0..n` to the semiarcs that satisfies each crossing, by
/// exhaustive search in lexicographic order.
pub fn brute_force_labelings(d: &Diagram, b: &FiniteBirack) -> Vec<Vec<usize>> {
    let inc = incidence(d);
    let n = b.n();
    let total = (n as u64).pow(inc.semiarcs as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut labels = vec![0; inc.semiarcs];
        let mut c = code;
        for slot in labels.iter_mut().rev() {
            *slot = (c % n as u64) as usize;
            c /= n as u64;
        }
        let ok = inc.crossings.iter().all(|&(sign, oi, oo, ui, uo)| {
            match sign {
                Sign::Positive => b.b1(labels[oi], labels[ui]) == labels[uo] && b.b2(labels[oi], labels[ui]) == labels[oo],
                Sign::Negative => b.b1(labels[oo], labels[uo]) == labels[ui] && b.b2(labels[oo], labels[uo]) == labels[oi],
            }
        });
        if ok {
            out.push(labels);
        }
    }
    out
}

/// The closure of the braid word on `strands` strands. Generator `k` (1-based)
/// crosses strands `k` and `k+1`; positive entries put the left strand over with
/// a positive crossing, negative entries are the mirror crossings.
pub fn braid_closure(strands: usize, word: &[i32]) -> Diagram {
    let mut visited = vec![false; strands];
    let mut components = Vec::new();
    for start in 0..strands {
        if visited[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut pos = start;
        loop {
            visited[pos] = true;
            for (j, &g) in word.iter().enumerate() {
                let left = g.unsigned_abs() as usize - 1;
                let sign = if g > 0 { Sign::Positive } else { Sign::Negative };
                if pos == left {
                    let role = if g > 0 { Role::Over } else { Role::Under };
                    comp.push(Pass { crossing: j as u32 + 1, role, sign });
                    pos = left + 1;
                } else if pos == left + 1 {
                    let role = if g > 0 { Role::Under } else { Role::Over };
                    comp.push(Pass { crossing: j as u32 + 1, role, sign });
                    pos = left;
                }
            }
            if pos == start {
                break;
            }
        }
        components.push(comp);
    }
    Diagram::from_components(components).unwrap()
}

fn pass(crossing: u32, role: Role, sign: Sign) -> Pass {
    Pass { crossing, role, sign }
}

/// Inserts a Reidemeister II pair of fresh crossings: two overpasses before
/// position `over_at` and two underpasses before `under_at`. `direct` strands run
/// parallel (both meet the crossings in the same order); otherwise antiparallel.
pub fn insert_r2(d: &Diagram, over_at: (usize, usize), under_at: (usize, usize), direct: bool, first: Sign) -> Diagram {
    let fresh = d.crossings().map(|c| c.id).max().unwrap_or(0) + 1;
    let (a, b) = (fresh, fresh + 1);
    let second = if first == Sign::Positive { Sign::Negative } else { Sign::Positive };
    let mut comps: Vec<Vec<Pass>> = d.components().to_vec();
    let unders = if direct {
        [pass(a, Role::Under, first), pass(b, Role::Under, second)]
    } else {
        [pass(b, Role::Under, second), pass(a, Role::Under, first)]
    };
    let overs = [pass(a, Role::Over, first), pass(b, Role::Over, second)];
    // insert the later position first so the earlier index stays valid
    let mut edits = [(over_at, overs), (under_at, unders)];
    edits.sort_by(|x, y| y.0.cmp(&x.0));
    for ((c, p), passes) in edits {
        comps[c].splice(p..p, passes);
    }
    Diagram::from_components(comps).unwrap()
}

/// A rack (B₂(x, y) = x) as its operation table `x ▷ y = B₁(x, y)`.
pub fn rack_biracks() -> Vec<(&'static str, FiniteBirack)> {
    let dihedral = |n: usize| FiniteBirack::from_fn(n, |x, y| ((2 * x + n - y) % n, x)).unwrap();
    let alexander = FiniteBirack::from_fn(5, |x, y| ((2 * y + 4 * x) % 5, x)).unwrap();
    let cyclic_perm = FiniteBirack::from_fn(3, |x, y| ((y + 1) % 3, x)).unwrap();
    let twisted = FiniteBirack::from_fn(4, |x, y| ((3 * y + 2 * x) % 4, x)).unwrap();
    vec![
        ("R3", dihedral(3)),
        ("R4", dihedral(4)),
        ("alexander(5,2)", alexander),
        ("permutation rack", cyclic_perm),
        ("affine Z4", twisted),
    ]
}

/// Order of the map `x ↦ x ▷ x` of a rack.
pub fn rack_rank(b: &FiniteBirack) -> usize {
    let n = b.n();
    let f: Vec<usize> = (0..n).map(|x| b.b1(x, x)).collect();
    let mut cur: Vec<usize> = (0..n).collect();
    for k in 1.. {
        cur = cur.iter().map(|&x| f[x]).collect();
        if cur.iter().enumerate().all(|(i, &x)| i == x) {
            return k;
        }
    }
    unreachable!()
}

/// Rack labelings of arcs: arcs are unions of semiarcs joined at overpasses;
/// at each crossing the under strand's outgoing label is `over ▷ incoming`.
pub fn rack_arc_count(d: &Diagram, b: &FiniteBirack) -> u64 {
    let inc = incidence(d);
    let mut parent: Vec<usize> = (0..inc.semiarcs).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(_, oi, oo, _, _) in &inc.crossings {
        let (a, c) = (find(&mut parent, oi), find(&mut parent, oo));
        parent[a] = c;
    }
    let mut roots: Vec<usize> = (0..inc.semiarcs).map(|x| find(&mut parent, x)).collect();
    let mut ids: Vec<usize> = roots.clone();
    ids.sort_unstable();
    ids.dedup();
    for r in roots.iter_mut() {
        *r = ids.binary_search(r).unwrap();
    }
    let arcs = ids.len();
    let n = b.n();
    let mut count = 0;
    let mut labels = vec![0usize; arcs];
    loop {
        let l = |s: usize| labels[roots[s]];
        if inc.crossings.iter().all(|&(sign, oi, _, ui, uo)| match sign {
            Sign::Positive => b.b1(l(oi), l(ui)) == l(uo),
            Sign::Negative => b.b1(l(oi), l(uo)) == l(ui),
        }) {
            count += 1;
        }
        let mut i = 0;
        while i < arcs {
            labels[i] += 1;
            if labels[i] < n {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
        if i == arcs {
            return count;
        }
    }
}

/// `d` with `k` positive overpass-first kinks appended to component `c`.
pub fn add_kinks(d: &Diagram, c: usize, k: usize) -> Diagram {
    let mut comps = d.components().to_vec();
    let mut next = d.crossings().map(|x| x.id).max().unwrap_or(0) + 1;
    for _ in 0..k {
        comps[c].push(pass(next, Role::Over, Sign::Positive));
        comps[c].push(pass(next, Role::Under, Sign::Positive));
        next += 1;
    }
    Diagram::from_components(comps).unwrap()
}

/// Self-crossing writhe of each component.
pub fn writhes(d: &Diagram) -> Vec<i64> {
    let comps = d.components();
    let mut w = vec![0i64; comps.len()];
    for (ci, comp) in comps.iter().enumerate() {
        for p in comp.iter().filter(|p| p.role == Role::Over) {
            if comps[ci].iter().any(|q| q.crossing == p.crossing && q.role == Role::Under) {
                w[ci] += p.sign.value();
            }
        }
    }
    w
}
