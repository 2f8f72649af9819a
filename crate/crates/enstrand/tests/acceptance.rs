//! Acceptance suite: one test per criterion, each printing a pass line
//! with its runtime (run with `--nocapture` to see them). Every tolerance
//! is exact; any mismatch fails the build with a witness in the message.

use std::time::Instant;

use enstrand::algebra::FieldCfg;
use enstrand::betti::BettiOracle;
use enstrand::combinatorics::{
    clutter_from_skeleton, enumerate_clutters, enumerate_complexes_up_to, random_complex, Clutter,
    Face, SimplicialComplex,
};
use enstrand::encomplex::GenComplex;

fn face(v: &[u32]) -> Face {
    Face::new(v.to_vec()).unwrap()
}

fn complete_clutter(n: u32, m: u32) -> Clutter {
    let facet: Vec<u32> = (1..=n).collect();
    let simplex = SimplicialComplex::from_facets(vec![Face::new(facet).unwrap()], n).unwrap();
    clutter_from_skeleton(&simplex, m).unwrap()
}

fn path3() -> Clutter {
    Clutter::new(vec![face(&[1, 2]), face(&[2, 3])], 3, 2).unwrap()
}

/// The 3-uniform clutter on six vertices whose clique complex has facets
/// {1,2,3}, {1,3,4}, {2,3,4}, {3,4,5,6}.
fn big_clutter() -> Clutter {
    Clutter::new(
        vec![
            face(&[1, 2, 3]),
            face(&[1, 3, 4]),
            face(&[2, 3, 4]),
            face(&[3, 4, 5]),
            face(&[3, 4, 6]),
            face(&[3, 5, 6]),
            face(&[4, 5, 6]),
        ],
        6,
        3,
    )
    .unwrap()
}

/// 100 seeded random complexes on 5 vertices plus 100 on 6 vertices.
fn random_complexes_5_6() -> Vec<SimplicialComplex> {
    let mut out = Vec::with_capacity(200);
    for seed in 0..100u64 {
        let dim = 2 + (seed % 2) as u32;
        out.push(random_complex(5, dim, 0.5, seed).unwrap());
    }
    for seed in 100..200u64 {
        let dim = 2 + (seed % 2) as u32;
        out.push(random_complex(6, dim, 0.4, seed).unwrap());
    }
    out
}

fn random_complexes_5() -> Vec<SimplicialComplex> {
    (0..100u64)
        .map(|seed| random_complex(5, 2 + (seed % 2) as u32, 0.5, seed).unwrap())
        .collect()
}

/// The clutter corpus of the Betti criteria: every 2-uniform clutter on
/// 2..=4 vertices, the complete clutters with m in {2,3} and n <= 5, and
/// the six-vertex 3-clutter.
fn clutter_corpus() -> Vec<Clutter> {
    let mut out: Vec<Clutter> = Vec::new();
    for n in 2..=4u32 {
        out.extend(enumerate_clutters(n, 2));
    }
    for m in 2..=3u32 {
        for n in m..=5 {
            out.push(complete_clutter(n, m));
        }
    }
    out.push(big_clutter());
    out
}

/// Raised assembly budget for the six-vertex 3-clutter's high-degree
/// cells; the default per-cell cap refuses them by design.
fn oracle_with_room(c: &Clutter, field: FieldCfg) -> BettiOracle {
    BettiOracle::new(c, field).with_cap(32_000_000)
}

#[test]
fn criterion_1_symbolic_soundness() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut run = |delta: &SimplicialComplex| {
        for m in 1..=3u32 {
            let k = GenComplex::build(delta, m);
            assert!(
                k.d_squared_zero().is_ok(),
                "d^2 != 0 on {:?} with m={m}",
                delta.facets()
            );
            assert!(
                k.augmentation_check().is_ok(),
                "psi . d != 0 on {:?} with m={m}",
                delta.facets()
            );
            checked += 1;
        }
    };
    for delta in enumerate_complexes_up_to(4) {
        run(&delta);
    }
    for delta in random_complexes_5_6() {
        run(&delta);
    }
    println!(
        "criterion 1 (symbolic soundness, {checked} complexes x m): PASS in {:.1?} (target < 2 min)",
        start.elapsed()
    );
}

#[test]
fn criterion_2_missing_equivalence() {
    let start = Instant::now();
    let field = FieldCfg::Rational;
    let mut checked = 0usize;
    let mut run = |delta: &SimplicialComplex, ms: &[u32]| {
        for &m in ms {
            let vanish = enstrand::encomplex::vanishing_check(delta, m, &field);
            let no_big_nonface = !delta.has_minimal_nonface_card_geq(m as usize + 2);
            assert_eq!(
                vanish,
                no_big_nonface,
                "equivalence fails on {:?} with m={m}",
                delta.facets()
            );
            checked += 1;
        }
    };
    for delta in enumerate_complexes_up_to(4) {
        run(&delta, &[1, 2]);
    }
    for delta in random_complexes_5() {
        run(&delta, &[1, 2, 3]);
    }
    println!(
        "criterion 2 (strand criterion equivalence, {checked} instances): PASS in {:.1?} (target < 5 min)",
        start.elapsed()
    );
}

#[test]
fn criterion_3_degree_m_plus_i_vanishing() {
    let start = Instant::now();
    let field = FieldCfg::Rational;
    let mut checked = 0usize;
    let mut run = |delta: &SimplicialComplex, ms: &[u32]| {
        for &m in ms {
            let k = GenComplex::build(delta, m);
            for i in 1..=(delta.n().saturating_sub(m)) as usize {
                assert!(
                    k.homology_witness_at_shift(i, 0, &field).is_none(),
                    "nonzero homology in lowest degree on {:?}, m={m}, i={i}",
                    delta.facets()
                );
            }
            checked += 1;
        }
    };
    for delta in enumerate_complexes_up_to(4) {
        run(&delta, &[1, 2]);
    }
    for delta in random_complexes_5() {
        run(&delta, &[1, 2, 3]);
    }
    println!(
        "criterion 3 (lowest-degree homology vanishes, {checked} instances): PASS in {:.1?}",
        start.elapsed()
    );
}

#[test]
fn criterion_4_complete_clutter_betti_values() {
    let start = Instant::now();
    let field = FieldCfg::Rational;

    let o = BettiOracle::new(&complete_clutter(4, 2), field);
    let t = o.betti_table(2, 5, 1).unwrap();
    let expected: std::collections::BTreeMap<(usize, u32), u64> =
        [((0usize, 2u32), 6u64), ((1, 3), 8), ((2, 4), 3)]
            .into_iter()
            .collect();
    assert_eq!(t.cells, expected, "complete m=2 n=4 table");

    let o = BettiOracle::new(&complete_clutter(3, 2), field);
    let t = o.betti_table(1, 4, 1).unwrap();
    let expected: std::collections::BTreeMap<(usize, u32), u64> =
        [((0usize, 2u32), 3u64), ((1, 3), 2)].into_iter().collect();
    assert_eq!(t.cells, expected, "complete m=2 n=3 table");

    println!(
        "criterion 4 (complete-clutter Betti values 6/8/3 and 3/2): PASS in {:.1?} (target < 1 min)",
        start.elapsed()
    );
}

#[test]
fn criterion_5_linear_strand_formula() {
    let start = Instant::now();
    let field = FieldCfg::Rational;
    let mut cells = 0usize;
    for n in 2..=4u32 {
        for c in enumerate_clutters(n, 2) {
            let o = BettiOracle::new(&c, field);
            let (i_max, _) = o.default_window();
            for i in 0..=i_max {
                let computed = o.betti_koszul(i, i as u32 + 2).unwrap();
                assert_eq!(
                    computed,
                    o.strand_betti_formula(i),
                    "strand cell i={i} on {:?}",
                    c.circuits()
                );
                cells += 1;
            }
        }
    }
    let c = big_clutter();
    let o = oracle_with_room(&c, field);
    let (i_max, _) = o.default_window();
    for i in 0..=i_max {
        let computed = o.betti_koszul(i, i as u32 + 3).unwrap();
        assert_eq!(computed, o.strand_betti_formula(i), "3-clutter strand i={i}");
        cells += 1;
    }
    assert_eq!(o.betti_koszul(0, 3).unwrap(), 7);
    assert_eq!(o.betti_koszul(1, 4).unwrap(), 3);
    println!(
        "criterion 5 (strand formula on {cells} cells incl. 3-clutter values 7/3): PASS in {:.1?} (target < 10 min)",
        start.elapsed()
    );
}

#[test]
fn criterion_6_linear_resolution_characterization() {
    let start = Instant::now();
    let field = FieldCfg::Rational;

    // complete clutters: no off-linear cells with j <= i+m+2
    for m in 2..=3u32 {
        for n in m..=5 {
            let c = complete_clutter(n, m);
            let o = BettiOracle::new(&c, field);
            let (i_max, _) = o.default_window();
            for i in 0..=i_max {
                for j in (i as u32 + m + 1)..=(i as u32 + m + 2) {
                    let v = o.betti_koszul(i, j).unwrap();
                    assert_eq!(v, 0, "off-linear cell ({i},{j}) on complete ({n},{m})");
                }
            }
        }
    }

    // non-complete clutters: an off-linear first syzygy exists in window
    let mut witnesses = 0usize;
    for c in clutter_corpus() {
        if c.is_complete() {
            continue;
        }
        let o = oracle_with_room(&c, field);
        let (_, j_max) = o.default_window();
        let m = c.m();
        let found = ((m + 2)..=j_max).find(|&j| o.betti_koszul(1, j).unwrap() != 0);
        assert!(
            found.is_some(),
            "no off-linear first syzygy in window for {:?}",
            c.circuits()
        );
        witnesses += 1;
    }

    // the path's witness is pinned exactly
    let o = BettiOracle::new(&path3(), field);
    assert_eq!(o.betti_koszul(1, 4).unwrap(), 1);

    println!(
        "criterion 6 (linear resolution iff complete; {witnesses} non-complete witnesses): PASS in {:.1?}",
        start.elapsed()
    );
}

#[test]
fn criterion_7_strand_length() {
    let start = Instant::now();
    let field = FieldCfg::Rational;
    for c in clutter_corpus() {
        let o = oracle_with_room(&c, field);
        let (i_max, _) = o.default_window();
        let m = c.m();
        let mut top: i64 = -1;
        for i in 0..=i_max {
            if o.betti_koszul(i, i as u32 + m).unwrap() != 0 {
                top = i as i64;
            }
        }
        assert_eq!(
            top,
            o.strand_length(),
            "strand length on {:?}",
            c.circuits()
        );
    }
    println!(
        "criterion 7 (strand length = dim clique complex - m + 1): PASS in {:.1?}",
        start.elapsed()
    );
}

#[test]
fn criterion_8_oracle_cross_agreement() {
    let start = Instant::now();
    let rat = FieldCfg::Rational;
    let fp = FieldCfg::prime(32003).unwrap();
    let mut cells = 0usize;
    for c in clutter_corpus() {
        let m = c.m();
        let o_rat = oracle_with_room(&c, rat);
        let o_fp = oracle_with_room(&c, fp);
        let (i_max, j_max) = o_rat.default_window();

        // the two first-syzygy routes agree, over both fields, on the
        // whole degree window
        for j in m..=j_max {
            let koszul_rat = o_rat.betti_koszul(1, j).unwrap();
            let syz_rat = o_rat.betti_first_syzygy(j).unwrap();
            assert_eq!(
                koszul_rat,
                syz_rat,
                "syzygy routes disagree at j={j} on {:?}",
                c.circuits()
            );
            let koszul_fp = o_fp.betti_koszul(1, j).unwrap();
            let syz_fp = o_fp.betti_first_syzygy(j).unwrap();
            assert_eq!(koszul_fp, syz_fp, "fp routes disagree at j={j}");
            assert_eq!(
                koszul_rat,
                koszul_fp,
                "characteristic dependence at (1,{j}) on {:?}",
                c.circuits()
            );
            cells += 1;
        }

        // rational and mod-p values agree on the linear diagonal
        for i in 0..=i_max {
            assert_eq!(
                o_rat.betti_koszul(i, i as u32 + m).unwrap(),
                o_fp.betti_koszul(i, i as u32 + m).unwrap(),
                "characteristic dependence at ({i},{}) on {:?}",
                i as u32 + m,
                c.circuits()
            );
            cells += 1;
        }
    }
    println!(
        "criterion 8 (oracle cross-agreement over rat and fp:32003, {cells} cells): PASS in {:.1?}",
        start.elapsed()
    );
}
