mod common;

use birack::diagram::Sign;
use birack::homsearch::satisfies_crossings;
use birack::invariants::framing_vectors;
use birack::{compute, count_labelings, enumerate_labelings, tsr_birack, Diagram, FiniteBirack, InvariantKind};
use common::*;

const MAX_ASSIGNMENTS: u64 = 1_000_000;

fn oracle_cases() -> Vec<(String, Diagram, FiniteBirack)> {
    let mut diagrams: Vec<(String, Diagram)> =
        test_links().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    diagrams.push(("hopf (1,1)".into(), Diagram::parse(HOPF).unwrap().with_framing(&[1, 1], 2).unwrap()));
    diagrams.push(("trefoil'".into(), Diagram::parse(TREFOIL_ALT).unwrap()));
    diagrams.push(("r2 unlink".into(), Diagram::parse("O1+,O2-;U1+,U2-").unwrap()));
    diagrams.push(("braid s1s2s1".into(), braid_closure(3, &[1, 2, 1])));
    diagrams.push(("cinquefoil".into(), Diagram::parse(CINQUEFOIL).unwrap()));
    let mut cases = Vec::new();
    for (bn, b) in test_biracks() {
        for (dn, d) in &diagrams {
            if (b.n() as u64).checked_pow(d.num_semiarcs() as u32).map_or(false, |t| t <= MAX_ASSIGNMENTS) {
                cases.push((format!("{} / {}", dn, bn), d.clone(), b.clone()));
            }
        }
    }
    cases
}

#[test]
fn search_agrees_with_exhaustive_assignment() {
    let cases = oracle_cases();
    assert!(cases.len() >= 40, "only {} oracle cases", cases.len());
    for (name, d, b) in cases {
        let fast: Vec<Vec<usize>> = enumerate_labelings(&d, &b).into_iter().map(|l| l.into_labels()).collect();
        let slow = brute_force_labelings(&d, &b);
        assert_eq!(fast, slow, "{}", name);
        assert_eq!(count_labelings(&d, &b), slow.len() as u64, "{}", name);
        assert!(fast.iter().all(|l| satisfies_crossings(&d, &b, l)), "{}", name);
    }
}

#[test]
fn labels_violating_a_crossing_are_rejected() {
    let b = tsr_birack(3, 1, 2, 2, 1).unwrap();
    let d = Diagram::parse(TREFOIL).unwrap();
    let good = enumerate_labelings(&d, &b);
    let mut bad = good[1].labels().to_vec();
    bad[0] = (bad[0] + 1) % 3;
    assert!(!satisfies_crossings(&d, &b, &bad));
    assert!(!satisfies_crossings(&d, &b, &bad[1..]));
}

fn all_values(d: &Diagram, b: &FiniteBirack) -> Vec<String> {
    InvariantKind::ALL.iter().map(|&k| compute::<i64>(k, d, b).canonical_string()).collect()
}

fn assert_move_pair(name: &str, before: &Diagram, after: &Diagram) {
    assert_eq!(before.writhe_vector(), after.writhe_vector(), "{}: move changed writhe", name);
    for (bn, b) in test_biracks() {
        assert_eq!(count_labelings(before, &b), count_labelings(after, &b), "{} / {}: raw count", name, bn);
        assert_eq!(all_values(before, &b), all_values(after, &b), "{} / {}: invariants", name, bn);
    }
}

#[test]
fn direct_reidemeister_two() {
    let unlink = Diagram::unlink(2);
    for first in [Sign::Positive, Sign::Negative] {
        assert_move_pair("unlink", &unlink, &insert_r2(&unlink, (0, 0), (1, 0), true, first));
    }
    let trefoil = braid_closure(2, &[1, 1, 1]);
    assert_move_pair("trefoil braid", &trefoil, &braid_closure(2, &[1, 1, -1, 1, 1]));
    assert_move_pair("3-braid", &braid_closure(3, &[1, -2]), &braid_closure(3, &[1, 2, -2, -2]));
    let k = Diagram::parse(TREFOIL).unwrap();
    assert_move_pair("trefoil self", &k, &insert_r2(&k, (0, 1), (0, 4), true, Sign::Positive));
}

#[test]
fn reverse_reidemeister_two() {
    let unlink = Diagram::unlink(2);
    for first in [Sign::Positive, Sign::Negative] {
        assert_move_pair("unlink", &unlink, &insert_r2(&unlink, (0, 0), (1, 0), false, first));
    }
    let hopf = Diagram::parse(HOPF).unwrap();
    assert_move_pair("hopf", &hopf, &insert_r2(&hopf, (0, 1), (1, 2), false, Sign::Negative));
    let k = Diagram::parse(FIGURE_EIGHT).unwrap();
    assert_move_pair("figure-eight", &k, &insert_r2(&k, (0, 2), (0, 6), false, Sign::Positive));
}

#[test]
fn reidemeister_three() {
    for (strands, lhs, rhs) in [
        (3, vec![1, 2, 1], vec![2, 1, 2]),
        (3, vec![-1, -2, -1], vec![-2, -1, -2]),
        (3, vec![1, 2, -1], vec![-2, 1, 2]),
        (3, vec![1, 1, 2, 1, -2], vec![1, 2, 1, 2, -2]),
        (4, vec![3, 1, 2, 1, 3], vec![3, 2, 1, 2, 3]),
    ] {
        let name = format!("{:?} ~ {:?}", lhs, rhs);
        assert_move_pair(&name, &braid_closure(strands, &lhs), &braid_closure(strands, &rhs));
    }
}

#[test]
fn braid_closures_match_knot_codes() {
    for (bn, b) in test_biracks() {
        let known = Diagram::parse(TREFOIL_ALT).unwrap();
        assert_eq!(
            count_labelings(&braid_closure(2, &[1, 1, 1]), &b),
            count_labelings(&known, &b),
            "trefoil / {}",
            bn
        );
    }
}

fn is_power_of(mut v: u64, p: u64) -> bool {
    while v > 1 && v % p == 0 {
        v /= p;
    }
    v == 1
}

#[test]
fn linear_labelings_over_prime_fields_are_powers() {
    let biracks = [
        (3, tsr_birack(3, 1, 2, 2, 1).unwrap()),
        (3, tsr_birack(3, 2, 0, 1, 1).unwrap()),
        (3, tsr_birack(3, 1, 2, 2, 2).unwrap()),
        (5, tsr_birack(5, 1, 4, 2, 1).unwrap()),
        (5, tsr_birack(5, 2, 0, 3, 1).unwrap()),
        (5, tsr_birack(5, 3, 0, 3, 1).unwrap()),
    ];
    let mut links = test_links();
    links.push(("cinquefoil", Diagram::parse(CINQUEFOIL).unwrap()));
    links.push(("stevedore", Diagram::parse(STEVEDORE).unwrap()));
    for (p, b) in &biracks {
        for (name, d) in &links {
            for w in framing_vectors(b.rank(), d.num_components()) {
                let w: Vec<i64> = w.iter().map(|&x| x as i64).collect();
                let c = count_labelings(&d.with_framing(&w, b.rank()).unwrap(), b);
                assert!(is_power_of(c, *p), "{} at {:?}: {} labelings", name, w, c);
            }
            if b.rank() == 1 {
                let v = birack::phi_integral(d, b);
                assert!(is_power_of(v, *p), "{}: phi = {}", name, v);
            }
        }
    }
}

fn relabel_crossings(d: &Diagram, map: impl Fn(u32) -> u32) -> Diagram {
    let comps = d
        .components()
        .iter()
        .map(|c| c.iter().map(|p| birack::Pass { crossing: map(p.crossing), ..*p }).collect())
        .collect();
    Diagram::from_components(comps).unwrap()
}

fn rotate(d: &Diagram, c: usize, k: usize) -> Diagram {
    let mut comps = d.components().to_vec();
    let len = comps[c].len();
    if len > 0 {
        comps[c].rotate_left(k % len);
    }
    Diagram::from_components(comps).unwrap()
}

#[test]
fn invariants_ignore_code_presentation() {
    let links = [TREFOIL, FIGURE_EIGHT, VIRTUAL_TREFOIL, KINK];
    for (bn, b) in test_biracks().into_iter().filter(|(_, b)| b.n() <= 8) {
        for code in links {
            let d = Diagram::parse(code).unwrap();
            let base = all_values(&d, &b);
            let n = d.num_crossings() as u32;
            assert_eq!(all_values(&relabel_crossings(&d, |i| n + 1 - i), &b), base, "{} {}", code, bn);
            assert_eq!(all_values(&relabel_crossings(&d, |i| 10 * i + 7), &b), base, "{} {}", code, bn);
            for k in 1..d.components()[0].len() {
                assert_eq!(all_values(&rotate(&d, 0, k), &b), base, "{} rotated {} / {}", code, k, bn);
            }
        }
    }
}

#[test]
fn swapping_components_renames_writhe_variables() {
    let links = ["O1+,U2+;U1+,O2+", "O1-,U2+,O3+;U1-,O2+,U3+", "O1+,U1+;U2-,O2-,O3+;U3+"];
    for (bn, b) in test_biracks().into_iter().filter(|(_, b)| b.n() <= 8) {
        for code in links {
            let d = Diagram::parse(code).unwrap();
            let mut comps = d.components().to_vec();
            comps.swap(0, 1);
            let swapped = Diagram::from_components(comps).unwrap();
            for kind in [InvariantKind::Integral, InvariantKind::Image, InvariantKind::Rho] {
                assert_eq!(
                    compute::<i64>(kind, &d, &b).canonical_string(),
                    compute::<i64>(kind, &swapped, &b).canonical_string(),
                    "{} {} / {}",
                    kind,
                    code,
                    bn
                );
            }
            let w = birack::phi_writhe::<i64>(&d, &b);
            let ws = birack::phi_writhe::<i64>(&swapped, &b).rename_vars(|v| match v {
                "q1" => "q2".into(),
                "q2" => "q1".into(),
                other => other.into(),
            });
            assert_eq!(w, ws, "{} / {}", code, bn);
        }
    }
}
