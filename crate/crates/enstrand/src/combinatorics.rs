//! Simplicial complexes, uniform clutters, clique complexes, f-vectors,
//! minimal nonfaces, critical cliques, and banner predicates.
//!
//! Vertices are 1-based integers in `1..=n`. Every complex and clutter must
//! cover its vertex set: constructors reject isolated vertices instead of
//! re-indexing. All enumeration is exhaustive over subsets of facets, which
//! is fine at desk scale (n <= ~12); internally subsets are bitmasks.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("input face list is empty")]
    EmptyInput,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("vertex {vertex} repeated within a face")]
    DuplicateVertex { vertex: u32 },
    #[error("vertex {vertex} lies in no facet or circuit")]
    IsolatedVertex { vertex: u32 },
    #[error("circuit {{{}}} has size {got}, expected {expected}", face_list(.circuit))]
    WrongCircuitSize {
        circuit: Vec<u32>,
        expected: u32,
        got: u32,
    },
    #[error("facet {{{}}} has dimension < {} required for an {m}-clutter", face_list(.facet), .m - 1)]
    FacetTooSmall { facet: Vec<u32>, m: u32 },
    #[error("banner index {i} out of range 1..={max}")]
    BannerIndexOutOfRange { i: u32, max: u32 },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}

fn face_list(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).join(",")
}

/// A face: a strictly ascending set of vertices from `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<u32>);

impl Face {
    /// Builds a face from arbitrary vertex order; rejects duplicates and
    /// nonpositive vertices.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self, CombinatoricsError> {
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(CombinatoricsError::DuplicateVertex { vertex: w[0] });
            }
        }
        if vertices.first().is_some_and(|&v| v == 0) {
            return Err(CombinatoricsError::VertexOutOfRange { vertex: 0, n: 0 });
        }
        Ok(Face(vertices))
    }

    /// Face from a bitmask, bit `v-1` for vertex `v`.
    pub(crate) fn from_mask(mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros();
            v.push(b + 1);
            m &= m - 1;
        }
        Face(v)
    }

    pub(crate) fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &v| acc | 1u64 << (v - 1))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, `|σ| - 1`.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.mask() & !other.mask() == 0
    }

    /// The face with the vertex at `pos` (0-based) removed.
    pub fn remove_at(&self, pos: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(pos);
        Face(v)
    }

    /// The face with vertex `v` inserted (must be absent).
    pub fn insert(&self, v: u32) -> Face {
        debug_assert!(!self.contains(v));
        let mut w = self.0.clone();
        let pos = w.partition_point(|&x| x < v);
        w.insert(pos, v);
        Face(w)
    }

    fn check_range(&self, n: u32) -> Result<(), CombinatoricsError> {
        for &v in &self.0 {
            if v == 0 || v > n {
                return Err(CombinatoricsError::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for Face {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", face_list(&self.0))
    }
}

/// Sorts faces by cardinality first, then lexicographically. Used wherever
/// the artifact reports face lists (minimal nonfaces, critical cliques).
fn sort_by_card_then_lex(faces: &mut [Face]) {
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// A simplicial complex on the vertex set `1..=n`, stored by its facets.
///
/// Invariants: facets pairwise incomparable, sorted lexicographically, and
/// every vertex lies in some facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: u32,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Normalizes a face list into a complex: removes duplicates and faces
    /// contained in others, sorts lexicographically, and validates that the
    /// vertex range is respected and every vertex of `1..=n` is covered.
    pub fn from_facets(faces: Vec<Face>, n: u32) -> Result<Self, CombinatoricsError> {
        if faces.is_empty() {
            return Err(CombinatoricsError::EmptyInput);
        }
        if n == 0 || n > 63 {
            return Err(CombinatoricsError::ParamOutOfRange(format!(
                "vertex count {n} unsupported"
            )));
        }
        for f in &faces {
            f.check_range(n)?;
            if f.is_empty() {
                return Err(CombinatoricsError::EmptyInput);
            }
        }
        let masks: BTreeSet<u64> = faces.iter().map(Face::mask).collect();
        let mut facets: Vec<Face> = masks
            .iter()
            .filter(|&&m| !masks.iter().any(|&other| other != m && m & !other == 0))
            .map(|&m| Face::from_mask(m))
            .collect();
        facets.sort();
        let covered = facets.iter().fold(0u64, |acc, f| acc | f.mask());
        for v in 1..=n {
            if covered & (1 << (v - 1)) == 0 {
                return Err(CombinatoricsError::IsolatedVertex { vertex: v });
            }
        }
        Ok(SimplicialComplex { n, facets })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Dimension of the complex.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(Face::dim).max().unwrap()
    }

    /// Every nonempty face, as bitmasks.
    pub(crate) fn face_masks(&self) -> HashSet<u64> {
        let mut out = HashSet::new();
        for f in &self.facets {
            let m = f.mask();
            // enumerate all submasks of m
            let mut sub = m;
            loop {
                if sub != 0 {
                    out.insert(sub);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        out
    }

    /// All nonempty faces in (cardinality, lex) order.
    pub fn faces(&self) -> Vec<Face> {
        let mut v: Vec<Face> = self.face_masks().into_iter().map(Face::from_mask).collect();
        sort_by_card_then_lex(&mut v);
        v
    }

    pub fn is_face(&self, f: &Face) -> bool {
        let m = f.mask();
        self.facets.iter().any(|g| m & !g.mask() == 0)
    }

    /// `f_t(Δ)` = number of faces of dimension `t`, for `t = 0..=dim`.
    pub fn f_vector(&self) -> FVector {
        let dim = self.dim() as usize;
        let mut counts = vec![0u64; dim + 1];
        for mask in self.face_masks() {
            counts[mask.count_ones() as usize - 1] += 1;
        }
        FVector { counts }
    }

    /// Inclusion-minimal nonfaces: subsets that are not faces but all of
    /// whose proper subsets are faces. Output sorted by (cardinality, lex).
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let faces = self.face_masks();
        let mut out = Vec::new();
        for mask in 1u64..(1 << self.n) {
            if faces.contains(&mask) {
                continue;
            }
            // check every proper nonempty subset is a face
            let mut sub = (mask - 1) & mask;
            let mut minimal = true;
            loop {
                if sub == 0 {
                    break;
                }
                if !faces.contains(&sub) {
                    minimal = false;
                    break;
                }
                sub = (sub - 1) & mask;
            }
            if minimal {
                out.push(Face::from_mask(mask));
            }
        }
        sort_by_card_then_lex(&mut out);
        out
    }

    /// True iff some minimal nonface has cardinality at least `c`.
    pub fn has_minimal_nonface_card_geq(&self, c: usize) -> bool {
        self.minimal_nonfaces().iter().any(|f| f.len() >= c)
    }

    /// The `i`-skeleton: faces of dimension at most `i`.
    pub fn skeleton(&self, i: u32) -> SimplicialComplex {
        if i as i64 >= self.dim() {
            return self.clone();
        }
        let keep = i as usize + 1;
        let faces: HashSet<u64> = self
            .face_masks()
            .into_iter()
            .filter(|m| m.count_ones() as usize <= keep)
            .collect();
        let mut facets: Vec<Face> = faces
            .iter()
            .filter(|&&m| {
                (1..=self.n).all(|v| {
                    let bit = 1u64 << (v - 1);
                    m & bit != 0 || !faces.contains(&(m | bit))
                })
            })
            .map(|&m| Face::from_mask(m))
            .collect();
        facets.sort();
        SimplicialComplex { n: self.n, facets }
    }

    /// Critical cliques: sets `T` whose pairs are all edges and with
    /// `T \ {v}` a face for some `v in T`. Sorted by (cardinality, lex).
    pub fn critical_cliques(&self) -> Vec<Face> {
        let faces = self.face_masks();
        let mut out = Vec::new();
        for mask in 1u64..(1 << self.n) {
            let verts: Vec<u32> = (0..self.n).filter(|b| mask & (1 << b) != 0).collect();
            let pairs_ok = verts
                .iter()
                .tuple_combinations()
                .all(|(a, b)| faces.contains(&((1 << a) | (1 << b))));
            if !pairs_ok {
                continue;
            }
            let dropped_ok = verts.iter().any(|b| {
                let sub = mask & !(1 << b);
                sub == 0 || faces.contains(&sub)
            });
            if dropped_ok {
                out.push(Face::from_mask(mask));
            }
        }
        sort_by_card_then_lex(&mut out);
        out
    }

    /// `i`-banner: every critical clique of cardinality >= `i+1` is a face.
    pub fn is_banner(&self, i: u32) -> Result<bool, CombinatoricsError> {
        let max = (self.dim() + 1) as u32;
        if i < 1 || i > max {
            return Err(CombinatoricsError::BannerIndexOutOfRange { i, max });
        }
        let faces = self.face_masks();
        Ok(self
            .critical_cliques()
            .iter()
            .all(|t| t.len() < (i + 1) as usize || faces.contains(&t.mask())))
    }
}

/// An `m`-uniform clutter: circuits of size exactly `m`, no duplicates,
/// every vertex of `1..=n` in some circuit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clutter {
    n: u32,
    m: u32,
    circuits: Vec<Face>,
}

impl Clutter {
    pub fn new(circuits: Vec<Face>, n: u32, m: u32) -> Result<Self, CombinatoricsError> {
        if circuits.is_empty() {
            return Err(CombinatoricsError::EmptyInput);
        }
        if m == 0 || n == 0 || n > 63 {
            return Err(CombinatoricsError::ParamOutOfRange(format!(
                "clutter parameters n={n}, m={m}"
            )));
        }
        for c in &circuits {
            c.check_range(n)?;
            if c.len() != m as usize {
                return Err(CombinatoricsError::WrongCircuitSize {
                    circuit: c.vertices().to_vec(),
                    expected: m,
                    got: c.len() as u32,
                });
            }
        }
        let set: BTreeSet<Face> = circuits.into_iter().collect();
        let circuits: Vec<Face> = set.into_iter().collect();
        let covered = circuits.iter().fold(0u64, |acc, f| acc | f.mask());
        for v in 1..=n {
            if covered & (1 << (v - 1)) == 0 {
                return Err(CombinatoricsError::IsolatedVertex { vertex: v });
            }
        }
        Ok(Clutter { n, m, circuits })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn circuits(&self) -> &[Face] {
        &self.circuits
    }

    pub fn is_circuit(&self, f: &Face) -> bool {
        self.circuits.binary_search(f).is_ok()
    }

    /// The clique complex `Δ(C)`: faces are the sets all of whose
    /// `m`-subsets are circuits, together with all subsets of circuits of
    /// size below `m`.
    pub fn clique_complex(&self) -> SimplicialComplex {
        let circuit_masks: HashSet<u64> = self.circuits.iter().map(Face::mask).collect();
        let m = self.m as usize;
        let mut faces: HashSet<u64> = HashSet::new();
        for mask in 1u64..(1 << self.n) {
            let k = mask.count_ones() as usize;
            let ok = if k < m {
                circuit_masks.iter().any(|&c| mask & !c == 0)
            } else {
                let verts: Vec<u64> = (0..self.n as u64)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| 1u64 << b)
                    .collect();
                verts
                    .iter()
                    .combinations(m)
                    .all(|sel| circuit_masks.contains(&sel.into_iter().sum::<u64>()))
            };
            if ok {
                faces.insert(mask);
            }
        }
        let mut facets: Vec<Face> = faces
            .iter()
            .filter(|&&f| {
                (0..self.n).all(|b| {
                    let bit = 1u64 << b;
                    f & bit != 0 || !faces.contains(&(f | bit))
                })
            })
            .map(|&f| Face::from_mask(f))
            .collect();
        facets.sort();
        SimplicialComplex { n: self.n, facets }
    }

    /// True iff the circuits are all `m`-subsets of the vertex set.
    pub fn is_complete(&self) -> bool {
        self.circuits.len() as u64 == binomial(self.n as u64, self.m as u64)
    }

    /// Conditions (a) and (b) that necessarily hold when the minor ideal of
    /// the clutter is linearly presented.
    ///
    /// (a): faces `σ1, σ2` of `Δ(C)` with `|σ1 ∩ σ2| >= m-1` have
    /// `σ1 ∪ σ2` a face. (b): for circuits `τ, σ` inside a common face `ρ`
    /// and `c ∉ ρ`, `τ ∪ {c}` is a face iff `σ ∪ {c}` is.
    pub fn lemma_conditions(&self) -> (bool, bool) {
        let delta = self.clique_complex();
        let faces = delta.face_masks();
        let face_list: Vec<u64> = {
            let mut v: Vec<u64> = faces.iter().copied().collect();
            v.sort_unstable();
            v
        };
        let m = self.m;

        let cond_a = face_list.iter().all(|&s1| {
            face_list.iter().all(|&s2| {
                (s1 & s2).count_ones() + 1 < m || faces.contains(&(s1 | s2))
            })
        });

        let circuit_masks: Vec<u64> = self.circuits.iter().map(Face::mask).collect();
        let mut cond_b = true;
        'outer: for &tau in &circuit_masks {
            for &sigma in &circuit_masks {
                for &rho in &face_list {
                    if (tau | sigma) & !rho != 0 {
                        continue;
                    }
                    for c in 0..self.n {
                        let bit = 1u64 << c;
                        if rho & bit != 0 {
                            continue;
                        }
                        if faces.contains(&(tau | bit)) != faces.contains(&(sigma | bit)) {
                            cond_b = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        (cond_a, cond_b)
    }
}

/// The f-vector: `counts[t]` is the number of `t`-dimensional faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector {
    counts: Vec<u64>,
}

impl FVector {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `f_t`, zero outside the stored range.
    pub fn get(&self, t: i64) -> u64 {
        if t < 0 || t as usize >= self.counts.len() {
            0
        } else {
            self.counts[t as usize]
        }
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.counts.iter().join(","))
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u64 = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// The `m`-clutter whose circuits are the facets of the `(m-1)`-skeleton,
/// i.e. all `m`-subsets that are faces. Requires every facet to have
/// dimension at least `m-1`.
pub fn clutter_from_skeleton(
    delta: &SimplicialComplex,
    m: u32,
) -> Result<Clutter, CombinatoricsError> {
    if m == 0 {
        return Err(CombinatoricsError::ParamOutOfRange("m = 0".into()));
    }
    for f in delta.facets() {
        if f.len() < m as usize {
            return Err(CombinatoricsError::FacetTooSmall {
                facet: f.vertices().to_vec(),
                m,
            });
        }
    }
    let circuits: Vec<Face> = delta
        .face_masks()
        .into_iter()
        .filter(|mask| mask.count_ones() == m)
        .map(Face::from_mask)
        .collect();
    Clutter::new(circuits, delta.n(), m)
}

/// Deterministic random `m`-clutter: each `m`-subset is kept with
/// probability `density`; any vertex left uncovered gets the
/// lexicographically smallest missing circuit through it.
pub fn random_clutter(
    n: u32,
    m: u32,
    density: f64,
    seed: u64,
) -> Result<Clutter, CombinatoricsError> {
    check_density(density)?;
    if m == 0 || m > n {
        return Err(CombinatoricsError::ParamOutOfRange(format!(
            "m={m} not in 1..={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: BTreeSet<Face> = BTreeSet::new();
    for combo in (1..=n).combinations(m as usize) {
        if rng.random::<f64>() < density {
            chosen.insert(Face::new(combo).unwrap());
        }
    }
    let mut covered = chosen.iter().fold(0u64, |acc, f| acc | f.mask());
    for v in 1..=n {
        if covered & (1 << (v - 1)) != 0 {
            continue;
        }
        let patch = (1..=n)
            .combinations(m as usize)
            .map(|c| Face::new(c).unwrap())
            .find(|f| f.contains(v) && !chosen.contains(f))
            .expect("some m-subset through v is available");
        covered |= patch.mask();
        chosen.insert(patch);
    }
    Clutter::new(chosen.into_iter().collect(), n, m)
}

/// Deterministic random complex of dimension at most `dim`: candidate
/// facets are the `(dim+1)`-subsets, kept with probability `density`;
/// uncovered vertices become singleton facets.
pub fn random_complex(
    n: u32,
    dim: u32,
    density: f64,
    seed: u64,
) -> Result<SimplicialComplex, CombinatoricsError> {
    check_density(density)?;
    if dim + 1 > n {
        return Err(CombinatoricsError::ParamOutOfRange(format!(
            "dim={dim} too large for n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<Face> = Vec::new();
    for combo in (1..=n).combinations(dim as usize + 1) {
        if rng.random::<f64>() < density {
            faces.push(Face::new(combo).unwrap());
        }
    }
    let covered = faces.iter().fold(0u64, |acc, f| acc | f.mask());
    for v in 1..=n {
        if covered & (1 << (v - 1)) == 0 {
            faces.push(Face::new(vec![v]).unwrap());
        }
    }
    SimplicialComplex::from_facets(faces, n)
}

fn check_density(density: f64) -> Result<(), CombinatoricsError> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(CombinatoricsError::ParamOutOfRange(format!(
            "density {density} not in (0,1]"
        )));
    }
    Ok(())
}

/// Enumerates every simplicial complex on the vertex set exactly `1..=n`
/// (facet-set identity, no isomorphism reduction). Complexes are antichains
/// of nonempty subsets covering `1..=n`, produced in a fixed DFS order.
pub fn enumerate_complexes(n: u32) -> impl Iterator<Item = SimplicialComplex> {
    assert!((1..=5).contains(&n), "enumeration is desk-scale only (n <= 5)");
    let mut candidates: Vec<u64> = (1u64..(1 << n)).collect();
    candidates.sort_by_key(|&m| (m.count_ones(), m));
    let full = (1u64 << n) - 1;
    let mut out: Vec<SimplicialComplex> = Vec::new();
    let mut chosen: Vec<u64> = Vec::new();
    fn dfs(
        idx: usize,
        candidates: &[u64],
        chosen: &mut Vec<u64>,
        full: u64,
        n: u32,
        out: &mut Vec<SimplicialComplex>,
    ) {
        if idx == candidates.len() {
            if !chosen.is_empty() && chosen.iter().fold(0, |a, &m| a | m) == full {
                let mut facets: Vec<Face> = chosen.iter().map(|&m| Face::from_mask(m)).collect();
                facets.sort();
                out.push(SimplicialComplex { n, facets });
            }
            return;
        }
        let c = candidates[idx];
        if chosen.iter().all(|&f| f & !c != 0 && c & !f != 0) {
            chosen.push(c);
            dfs(idx + 1, candidates, chosen, full, n, out);
            chosen.pop();
        }
        dfs(idx + 1, candidates, chosen, full, n, out);
    }
    dfs(0, &candidates, &mut chosen, full, n, &mut out);
    out.into_iter()
}

/// Chains [`enumerate_complexes`] over all vertex counts `1..=n`.
pub fn enumerate_complexes_up_to(n: u32) -> impl Iterator<Item = SimplicialComplex> {
    (1..=n).flat_map(enumerate_complexes)
}

/// Enumerates every `m`-uniform clutter on the vertex set exactly `1..=n`
/// (all subsets of the `m`-subsets whose union covers `1..=n`).
pub fn enumerate_clutters(n: u32, m: u32) -> impl Iterator<Item = Clutter> {
    let subsets: Vec<Face> = (1..=n)
        .combinations(m as usize)
        .map(|c| Face::new(c).unwrap())
        .collect();
    assert!(subsets.len() <= 20, "enumeration is desk-scale only");
    let full = (1u64 << n) - 1;
    let count = 1u64 << subsets.len();
    (1..count).filter_map(move |pick| {
        let chosen: Vec<Face> = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| pick & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        if chosen.iter().fold(0, |a, f| a | f.mask()) == full {
            Some(Clutter::new(chosen, n, m).unwrap())
        } else {
            None
        }
    })
}
