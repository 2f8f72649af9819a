//! Executable verifiers: each confronts one structural statement about
//! `C(Δ;φ)` or `J_C` with concrete instances and reports agreement plus
//! witnesses. The suite runs them over exhaustive desk-scale tiers and
//! seeded random instances; any disagreement is a build-failing event.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FieldCfg;
use crate::betti::{BettiError, BettiOracle};
use crate::combinatorics::{
    clutter_from_skeleton, enumerate_clutters, enumerate_complexes, random_clutter,
    random_complex, Clutter, CombinatoricsError, SimplicialComplex,
};
use crate::encomplex::{vanishing_witness, GenComplex, Multidegree};
use crate::jobs::run_indexed;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// What a verifier asserts about its two computed conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Agreement means `left ⟺ right`.
    Iff,
    /// Agreement means `left ⟹ right` (necessity checks).
    Implies,
}

/// A concrete exhibit attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    MinimalNonface {
        face: crate::combinatorics::Face,
    },
    NonzeroHomology {
        i: usize,
        degree: Multidegree,
        dim: usize,
    },
    BettiCell {
        i: usize,
        j: u32,
        value: u64,
    },
    StrandMismatch {
        i: usize,
        oracle: u64,
        formula: u64,
    },
    RankMismatch {
        i: usize,
        rank: u64,
        betti: u64,
    },
    StrandLength {
        oracle: i64,
        expected: i64,
    },
    LemmaConditions {
        a: bool,
        b: bool,
    },
}

/// Instance identification embedded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDesc {
    pub kind: String,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub sets: Vec<Vec<u32>>,
}

impl InstanceDesc {
    fn complex(delta: &SimplicialComplex, m: Option<u32>) -> Self {
        InstanceDesc {
            kind: "complex".into(),
            n: delta.n(),
            m,
            sets: delta
                .facets()
                .iter()
                .map(|f| f.vertices().to_vec())
                .collect(),
        }
    }

    fn clutter(c: &Clutter) -> Self {
        InstanceDesc {
            kind: "clutter".into(),
            n: c.n(),
            m: Some(c.m()),
            sets: c.circuits().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }
}

/// Outcome of one verifier on one instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictReport {
    pub verifier: String,
    pub instance: InstanceDesc,
    pub relation: Relation,
    pub left: bool,
    pub right: bool,
    pub agreement: bool,
    pub witnesses: Vec<Witness>,
    /// Wall time; excluded from serialized reports so output is
    /// byte-identical across runs and thread counts.
    #[serde(skip)]
    pub timing_ms: Option<u64>,
}

impl VerdictReport {
    fn check_invariant(self) -> Self {
        debug_assert!(
            self.agreement || !self.witnesses.is_empty(),
            "a false agreement must carry a witness"
        );
        self
    }
}

/// The linear-strand criterion: homology of `C(Δ;φ)` vanishes in internal
/// degrees `i+m` and `i+m+1` iff `Δ` has no minimal nonface of cardinality
/// at least `m+2`.
pub fn verify_theorem_missing(
    delta: &SimplicialComplex,
    m: u32,
    field: &FieldCfg,
) -> VerdictReport {
    let start = Instant::now();
    let mut witnesses = Vec::new();
    let hom = vanishing_witness(delta, m, field);
    let left = hom.is_none();
    if let Some((i, degree, dim)) = hom {
        witnesses.push(Witness::NonzeroHomology { i, degree, dim });
    }
    let big_nonface = delta
        .minimal_nonfaces()
        .into_iter()
        .find(|f| f.len() >= m as usize + 2);
    let right = big_nonface.is_none();
    if let Some(face) = big_nonface {
        witnesses.push(Witness::MinimalNonface { face });
    }
    VerdictReport {
        verifier: "missing".into(),
        instance: InstanceDesc::complex(delta, Some(m)),
        relation: Relation::Iff,
        left,
        right,
        agreement: left == right,
        witnesses,
        timing_ms: Some(start.elapsed().as_millis() as u64),
    }
    .check_invariant()
}

/// Linear-strand Betti numbers from the Koszul oracle match the
/// closed-form `C(m+i-1, m-1) * f_{m+i-1}(Δ(C))` for all `i <= i_max`.
pub fn verify_cor_linearbetti(
    c: &Clutter,
    i_max: usize,
    field: &FieldCfg,
) -> Result<VerdictReport, VerifyError> {
    let start = Instant::now();
    let oracle = BettiOracle::new(c, *field);
    let m = c.m();
    let mut witnesses = Vec::new();
    let mut all_equal = true;
    for i in 0..=i_max {
        let computed = oracle.betti_koszul(i, i as u32 + m)?;
        let formula = oracle.strand_betti_formula(i);
        if computed != formula {
            all_equal = false;
            witnesses.push(Witness::StrandMismatch {
                i,
                oracle: computed,
                formula,
            });
        }
    }
    Ok(VerdictReport {
        verifier: "linearbetti".into(),
        instance: InstanceDesc::clutter(c),
        relation: Relation::Iff,
        left: true,
        right: all_equal,
        agreement: all_equal,
        witnesses,
        timing_ms: Some(start.elapsed().as_millis() as u64),
    }
    .check_invariant())
}

/// Linear resolution / linear presentation happen exactly for complete
/// clutters. Complete clutters get a full-window off-linear scan;
/// non-complete ones must exhibit a nonzero `β_{1,j}` with `j >= m+2`.
pub fn verify_thm_linear_res(
    c: &Clutter,
    i_max: usize,
    j_max: u32,
    field: &FieldCfg,
) -> Result<VerdictReport, VerifyError> {
    let start = Instant::now();
    let oracle = BettiOracle::new(c, *field);
    let m = c.m();
    let left = c.is_complete();
    let mut witnesses = Vec::new();
    let right = if left {
        let mut clean = true;
        for i in 0..=i_max {
            for j in (i as u32 + m)..=j_max {
                if j == i as u32 + m {
                    continue;
                }
                let v = oracle.betti_koszul(i, j)?;
                if v != 0 {
                    clean = false;
                    witnesses.push(Witness::BettiCell { i, j, value: v });
                }
            }
        }
        clean
    } else {
        // an off-linear first syzygy falsifies linear presentation, hence
        // linear resolution; the scan stops at the first witness
        let mut found = false;
        for j in (m + 2)..=j_max {
            let v = oracle.betti_koszul(1, j)?;
            if v != 0 {
                witnesses.push(Witness::BettiCell { i: 1, j, value: v });
                found = true;
                break;
            }
        }
        !found
    };
    Ok(VerdictReport {
        verifier: "linearres".into(),
        instance: InstanceDesc::clutter(c),
        relation: Relation::Iff,
        left,
        right,
        agreement: left == right,
        witnesses,
        timing_ms: Some(start.elapsed().as_millis() as u64),
    }
    .check_invariant())
}

/// The linear strand has length `dim Δ(C) - m + 1`, and the window shows
/// at least that many nonzero homological degrees.
pub fn verify_cor_projdim(c: &Clutter, field: &FieldCfg) -> Result<VerdictReport, VerifyError> {
    let start = Instant::now();
    let oracle = BettiOracle::new(c, *field);
    let (i_max, _) = oracle.default_window();
    let m = c.m();
    let mut top: i64 = -1;
    for i in 0..=i_max {
        if oracle.betti_koszul(i, i as u32 + m)? != 0 {
            top = i as i64;
        }
    }
    let expected = oracle.strand_length();
    let agreement = top == expected;
    let mut witnesses = Vec::new();
    if !agreement {
        witnesses.push(Witness::StrandLength {
            oracle: top,
            expected,
        });
    }
    Ok(VerdictReport {
        verifier: "projdim".into(),
        instance: InstanceDesc::clutter(c),
        relation: Relation::Iff,
        left: top == expected,
        right: true,
        agreement,
        witnesses,
        timing_ms: Some(start.elapsed().as_millis() as u64),
    }
    .check_invariant())
}

/// `C(Δ;φ)` is the linear strand of the skeleton clutter's ideal iff
/// `Δ` is the clique complex of that clutter; strand equality is observed
/// through per-index rank agreement with the Betti oracle.
pub fn verify_cor_skeleton(
    delta: &SimplicialComplex,
    m: u32,
    field: &FieldCfg,
) -> Result<VerdictReport, VerifyError> {
    let start = Instant::now();
    let c = clutter_from_skeleton(delta, m)?;
    let left = c.clique_complex() == *delta;
    let oracle = BettiOracle::new(&c, *field);
    let (i_max, _) = oracle.default_window();
    let complex = GenComplex::build(delta, m);
    let ranks = complex.ranks();
    let mut witnesses = Vec::new();
    let mut right = true;
    for i in 0..=i_max {
        let rank = ranks.get(i).copied().unwrap_or(0) as u64;
        let betti = oracle.betti_koszul(i, i as u32 + m)?;
        if rank != betti {
            right = false;
            witnesses.push(Witness::RankMismatch { i, rank, betti });
        }
    }
    Ok(VerdictReport {
        verifier: "skeleton".into(),
        instance: InstanceDesc::complex(delta, Some(m)),
        relation: Relation::Iff,
        left,
        right,
        agreement: left == right,
        witnesses,
        timing_ms: Some(start.elapsed().as_millis() as u64),
    }
    .check_invariant())
}

/// If the window shows `J_C` linearly presented then the union and
/// exchange conditions on `Δ(C)` must hold (a necessity check, so
/// agreement is the implication).
pub fn verify_lemma_necessity(
    c: &Clutter,
    field: &FieldCfg,
) -> Result<VerdictReport, VerifyError> {
    let start = Instant::now();
    let oracle = BettiOracle::new(c, *field);
    let (_, j_max) = oracle.default_window();
    let m = c.m();
    let mut witnesses = Vec::new();
    let mut presented = true;
    for j in (m + 2)..=j_max {
        let v = oracle.betti_koszul(1, j)?;
        if v != 0 {
            presented = false;
            witnesses.push(Witness::BettiCell { i: 1, j, value: v });
            break;
        }
    }
    let (a, b) = c.lemma_conditions();
    let right = a && b;
    if !right {
        witnesses.push(Witness::LemmaConditions { a, b });
    }
    Ok(VerdictReport {
        verifier: "lemma".into(),
        instance: InstanceDesc::clutter(c),
        relation: Relation::Implies,
        left: presented,
        right,
        agreement: !presented || right,
        witnesses,
        timing_ms: Some(start.elapsed().as_millis() as u64),
    }
    .check_invariant())
}

/// Configuration for the aggregated verification suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random instances per randomized tier.
    pub trials: u32,
    pub field: FieldCfg,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 2,
            field: FieldCfg::Rational,
            jobs: 1,
        }
    }
}

enum SuiteTask {
    Missing(SimplicialComplex, u32),
    Skeleton(SimplicialComplex, u32),
    ClutterChecks(Clutter),
}

/// Runs every verifier over (1) all complexes on at most 4 vertices with
/// `m` in {1,2}, (2) all 2-uniform clutters on at most 4 vertices, and
/// (3) seeded random complexes and clutters on 5 vertices. Deterministic
/// for a fixed seed; report order follows instance enumeration order.
pub fn suite(config: &SuiteConfig) -> Result<Vec<VerdictReport>, VerifyError> {
    let mut tasks: Vec<SuiteTask> = Vec::new();
    for n in 1..=4u32 {
        for delta in enumerate_complexes(n) {
            for m in 1..=2u32 {
                tasks.push(SuiteTask::Missing(delta.clone(), m));
                if delta.facets().iter().all(|f| f.len() >= m as usize) {
                    tasks.push(SuiteTask::Skeleton(delta.clone(), m));
                }
            }
        }
    }
    for n in 2..=4u32 {
        for c in enumerate_clutters(n, 2) {
            tasks.push(SuiteTask::ClutterChecks(c));
        }
    }
    for t in 0..config.trials {
        let complex_seed = config.seed.wrapping_add(2 * t as u64);
        let delta = random_complex(5, 2, 0.5, complex_seed)?;
        for m in 1..=3u32 {
            tasks.push(SuiteTask::Missing(delta.clone(), m));
        }
        for m in 2..=3u32 {
            let clutter_seed = config.seed.wrapping_add(2 * t as u64 + 1 + m as u64);
            tasks.push(SuiteTask::ClutterChecks(random_clutter(
                5,
                m,
                0.6,
                clutter_seed,
            )?));
        }
    }

    let results = run_indexed(tasks.len(), config.jobs, |k| -> Result<_, VerifyError> {
        let field = &config.field;
        match &tasks[k] {
            SuiteTask::Missing(delta, m) => Ok(vec![verify_theorem_missing(delta, *m, field)]),
            SuiteTask::Skeleton(delta, m) => Ok(vec![verify_cor_skeleton(delta, *m, field)?]),
            SuiteTask::ClutterChecks(c) => {
                let oracle = BettiOracle::new(c, *field);
                let (i_max, j_max) = oracle.default_window();
                Ok(vec![
                    verify_cor_linearbetti(c, i_max, field)?,
                    verify_thm_linear_res(c, i_max, j_max, field)?,
                    verify_cor_projdim(c, field)?,
                    verify_lemma_necessity(c, field)?,
                ])
            }
        }
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Face;

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn complex(facets: &[&[u32]], n: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| face(f)).collect(), n).unwrap()
    }

    fn triangle_cycle() -> SimplicialComplex {
        complex(&[&[1, 2, 3], &[1, 3, 4], &[2, 3, 4]], 4)
    }

    fn path3() -> Clutter {
        Clutter::new(vec![face(&[1, 2]), face(&[2, 3])], 3, 2).unwrap()
    }

    fn section4_clutter() -> Clutter {
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

    fn rat() -> FieldCfg {
        FieldCfg::Rational
    }

    #[test]
    fn missing_examples() {
        let r = verify_theorem_missing(&triangle_cycle(), 2, &rat());
        assert!(r.agreement && r.left && r.right);

        let r = verify_theorem_missing(&triangle_cycle(), 1, &rat());
        assert!(r.agreement && !r.left && !r.right);
        assert!(r
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::MinimalNonface { face: f } if *f == face(&[1, 2, 4]))));
        assert!(r
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::NonzeroHomology { i: 1, .. })));

        let r = verify_theorem_missing(&complex(&[&[1, 2, 3, 4]], 4), 2, &rat());
        assert!(r.agreement && r.left && r.right);
    }

    #[test]
    fn linearbetti_examples() {
        let k3 = clutter_from_skeleton(&complex(&[&[1, 2, 3]], 3), 2).unwrap();
        let r = verify_cor_linearbetti(&k3, 1, &rat()).unwrap();
        assert!(r.agreement);

        let r = verify_cor_linearbetti(&section4_clutter(), 1, &rat()).unwrap();
        assert!(r.agreement);

        let r = verify_cor_linearbetti(&path3(), 1, &rat()).unwrap();
        assert!(r.agreement);
    }

    #[test]
    fn linear_res_examples() {
        let k4 = clutter_from_skeleton(&complex(&[&[1, 2, 3, 4]], 4), 2).unwrap();
        let r = verify_thm_linear_res(&k4, 2, 6, &rat()).unwrap();
        assert!(r.agreement && r.left && r.right && r.witnesses.is_empty());

        let r = verify_thm_linear_res(&path3(), 1, 5, &rat()).unwrap();
        assert!(r.agreement && !r.left && !r.right);
        assert!(matches!(
            r.witnesses[0],
            Witness::BettiCell {
                i: 1,
                j: 4,
                value: 1
            }
        ));

        let r = verify_thm_linear_res(&section4_clutter(), 3, 8, &rat()).unwrap();
        assert!(r.agreement && !r.left && !r.right);
        assert!(
            matches!(r.witnesses[0], Witness::BettiCell { i: 1, j, value } if j >= 5 && value > 0)
        );
    }

    #[test]
    fn projdim_examples() {
        for (c, len) in [
            (
                clutter_from_skeleton(&complex(&[&[1, 2, 3, 4]], 4), 2).unwrap(),
                2,
            ),
            (section4_clutter(), 1),
            (path3(), 0),
        ] {
            let r = verify_cor_projdim(&c, &rat()).unwrap();
            assert!(r.agreement, "strand length {len}");
        }
    }

    #[test]
    fn skeleton_examples() {
        let path_complex = complex(&[&[1, 2], &[2, 3]], 3);
        let r = verify_cor_skeleton(&path_complex, 2, &rat()).unwrap();
        assert!(r.agreement && r.left && r.right);

        let r = verify_cor_skeleton(&triangle_cycle(), 2, &rat()).unwrap();
        assert!(r.agreement && !r.left && !r.right);
        assert!(r.witnesses.iter().any(|w| matches!(
            w,
            Witness::RankMismatch {
                i: 1,
                rank: 6,
                betti: 8
            }
        )));

        let r = verify_cor_skeleton(&complex(&[&[1, 2, 3, 4]], 4), 3, &rat()).unwrap();
        assert!(r.agreement && r.left && r.right);
    }

    #[test]
    fn lemma_examples() {
        let k4 = clutter_from_skeleton(&complex(&[&[1, 2, 3, 4]], 4), 2).unwrap();
        let r = verify_lemma_necessity(&k4, &rat()).unwrap();
        assert!(r.agreement && r.left && r.right);

        let r = verify_lemma_necessity(&path3(), &rat()).unwrap();
        assert!(r.agreement && !r.left && !r.right);

        let r = verify_lemma_necessity(&section4_clutter(), &rat()).unwrap();
        assert!(r.agreement && !r.left && !r.right);

        // the necessity is not an equivalence: two disjoint edges satisfy
        // both conditions yet have a degree-4 first syzygy
        let disjoint = Clutter::new(vec![face(&[1, 2]), face(&[3, 4])], 4, 2).unwrap();
        let r = verify_lemma_necessity(&disjoint, &rat()).unwrap();
        assert!(r.agreement && !r.left && r.right);
    }

    #[test]
    fn small_suite_is_deterministic_and_agrees() {
        let config = SuiteConfig {
            seed: 7,
            trials: 1,
            field: rat(),
            jobs: 1,
        };
        let a = suite(&config).unwrap();
        assert!(a.iter().all(|r| r.agreement), "all verdicts agree");
        let b = suite(&SuiteConfig { jobs: 3, ..config }).unwrap();
        let ser = |v: &[VerdictReport]| serde_json::to_string(v).unwrap();
        assert_eq!(ser(&a), ser(&b));
    }
}
