//! The generalized Eagon-Northcott complex `C(Δ;φ)` for a simplicial
//! complex `Δ` and the generic `m x n` matrix: basis enumeration,
//! differentials, symbolic soundness checks, the `Z^m x Z^n` multigrading,
//! and exact homology of multigraded pieces.
//!
//! Component `i` has basis `b(σ;a)` with `σ` a face of size `m+i` and `a`
//! a nonnegative integer vector of length `m` with `|a| = i`. The
//! differential is
//!
//! ```text
//! ∂ b(σ;a) = Σ_{k=1}^{m+i} Σ_{l=1}^{m} (-1)^{k+1} x[l, σ_k] b(σ \ σ_k; a - e_l)
//! ```
//!
//! with terms dropped when `a - e_l` goes negative; `k` is the 1-based
//! position inside ascending `σ`. The overall sign depending only on the
//! homological degree is omitted; `∂² = 0` certifies the convention.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{
    maximal_minor, monomials_with_margins, FieldCfg, Monomial, PolyMatrix, Polynomial,
    ScalarMatrix,
};
use crate::combinatorics::{binomial, Face, SimplicialComplex};

/// A basis element `b(σ;a)` of component `|a|` of `C(Δ;φ)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub sigma: Face,
    pub a: Vec<u32>,
}

/// A `Z^m x Z^n` multidegree, componentwise nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multidegree {
    pub u: Vec<u32>,
    pub gamma: Vec<u32>,
}

impl Multidegree {
    pub fn new(u: Vec<u32>, gamma: Vec<u32>) -> Self {
        Multidegree { u, gamma }
    }

    /// Total internal degree, `|γ|`.
    pub fn total(&self) -> u32 {
        self.gamma.iter().sum()
    }

    /// Componentwise difference, `None` if any coordinate goes negative.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        let u = self
            .u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        let gamma = self
            .gamma
            .iter()
            .zip(&other.gamma)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Multidegree { u, gamma })
    }

    /// The multidegree shifted by one variable `x[l,j]` (1-based).
    pub fn plus_var(&self, l: u16, j: u16) -> Multidegree {
        let mut d = self.clone();
        d.u[l as usize - 1] += 1;
        d.gamma[j as usize - 1] += 1;
        d
    }
}

impl std::fmt::Display for Multidegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{};{}", list(&self.u), list(&self.gamma))
    }
}

/// One entry of a stored differential column: row index, sign, variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffEntry {
    pub row: usize,
    pub sign: i8,
    pub var: (u16, u16),
}

/// A symbolic check failure with the first offending entry.
#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub index: usize,
    pub position: (usize, usize),
    pub entry: String,
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "nonzero entry at component {}, position ({}, {}): {}",
            self.index, self.position.0, self.position.1, self.entry
        )
    }
}

/// The chain complex `C(Δ;φ)`: per-index ordered bases and sparse
/// differentials whose entries are `± x[l,j]`.
#[derive(Debug, Clone)]
pub struct GenComplex {
    m: u32,
    n: u32,
    delta: SimplicialComplex,
    bases: Vec<Vec<BasisElement>>,
    /// `diffs[i-1]` describes `∂_i`: one entry list per column of component `i`.
    diffs: Vec<Vec<Vec<DiffEntry>>>,
}

impl GenComplex {
    /// Builds `C(Δ;φ)` with bases in canonical order (`σ` lexicographic,
    /// then `a` lexicographic). Empty when `m > dim Δ + 1`.
    pub fn build(delta: &SimplicialComplex, m: u32) -> GenComplex {
        assert!(m >= 1, "m must be positive");
        let n = delta.n();
        let mut faces_by_size: Vec<Vec<Face>> = vec![Vec::new(); n as usize + 1];
        for mask in delta.face_masks() {
            faces_by_size[mask.count_ones() as usize].push(Face::from_mask(mask));
        }
        for v in &mut faces_by_size {
            v.sort();
        }

        let mut bases: Vec<Vec<BasisElement>> = Vec::new();
        for i in 0.. {
            let size = (m as usize) + i;
            if size > n as usize || faces_by_size[size].is_empty() {
                break;
            }
            let comps = compositions(i as u32, m as usize);
            let mut basis = Vec::with_capacity(faces_by_size[size].len() * comps.len());
            for sigma in &faces_by_size[size] {
                for a in &comps {
                    basis.push(BasisElement {
                        sigma: sigma.clone(),
                        a: a.clone(),
                    });
                }
            }
            bases.push(basis);
        }

        let index: Vec<HashMap<(u64, Vec<u32>), usize>> = bases
            .iter()
            .map(|basis| {
                basis
                    .iter()
                    .enumerate()
                    .map(|(pos, b)| ((b.sigma.mask(), b.a.clone()), pos))
                    .collect()
            })
            .collect();

        let mut diffs = Vec::new();
        for i in 1..bases.len() {
            let mut cols = Vec::with_capacity(bases[i].len());
            for b in &bases[i] {
                let verts = b.sigma.vertices();
                let mut entries = Vec::new();
                for (k0, &j) in verts.iter().enumerate() {
                    let sign = if k0 % 2 == 0 { 1i8 } else { -1 };
                    let smaller = b.sigma.remove_at(k0);
                    let mask = smaller.mask();
                    for l in 0..b.a.len() {
                        if b.a[l] == 0 {
                            continue;
                        }
                        let mut a = b.a.clone();
                        a[l] -= 1;
                        let row = index[i - 1][&(mask, a)];
                        entries.push(DiffEntry {
                            row,
                            sign,
                            var: (l as u16 + 1, j as u16),
                        });
                    }
                }
                cols.push(entries);
            }
            diffs.push(cols);
        }

        let complex = GenComplex {
            m,
            n,
            delta: delta.clone(),
            bases,
            diffs,
        };
        debug_assert!(complex.ranks_match_f_vector());
        complex
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn delta(&self) -> &SimplicialComplex {
        &self.delta
    }

    /// Number of components (0 for the empty complex).
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn basis(&self, i: usize) -> &[BasisElement] {
        &self.bases[i]
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    fn ranks_match_f_vector(&self) -> bool {
        let fv = self.delta.f_vector();
        self.bases.iter().enumerate().all(|(i, basis)| {
            let expected = binomial((self.m as u64) + i as u64 - 1, self.m as u64 - 1)
                * fv.get(self.m as i64 + i as i64 - 1);
            basis.len() as u64 == expected
        })
    }

    /// The stored sparse columns of `∂_i`, `1 <= i < len`.
    pub fn diff_columns(&self, i: usize) -> &[Vec<DiffEntry>] {
        &self.diffs[i - 1]
    }

    /// `∂_i` as a polynomial matrix in the canonical bases.
    pub fn differential(&self, i: usize) -> PolyMatrix {
        assert!(i >= 1 && i < self.bases.len(), "differential index");
        let field = FieldCfg::Rational;
        let mut m = PolyMatrix::new(self.bases[i - 1].len(), self.bases[i].len());
        for (col, entries) in self.diffs[i - 1].iter().enumerate() {
            for e in entries {
                let p = Polynomial::term(
                    Monomial::var(e.var.0, e.var.1),
                    field.from_i64(e.sign as i64),
                );
                m.set(e.row, col, m.get(e.row, col).add(&p));
            }
        }
        m
    }

    /// Symbolically verifies `∂_i ∘ ∂_{i+1} = 0` for every pair of
    /// consecutive differentials.
    pub fn d_squared_zero(&self) -> Result<(), CheckFailure> {
        for i in 1..self.bases.len().saturating_sub(1) {
            let prod = self.differential(i).mul(&self.differential(i + 1));
            if let Some(((r, c), p)) = prod.first_nonzero() {
                return Err(CheckFailure {
                    index: i,
                    position: (r, c),
                    entry: p.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Symbolically verifies `ψ ∘ ∂_1 = 0`, where `ψ` maps `b(σ;0)` to the
    /// maximal minor on the columns `σ`.
    pub fn augmentation_check(&self) -> Result<(), CheckFailure> {
        if self.bases.len() < 2 {
            return Ok(());
        }
        let field = FieldCfg::Rational;
        let minors: Vec<Polynomial> = self.bases[0]
            .iter()
            .map(|b| maximal_minor(&field, self.m, &b.sigma).expect("sized by construction"))
            .collect();
        for (col, entries) in self.diffs[0].iter().enumerate() {
            let mut acc = Polynomial::zero();
            for e in entries {
                let term = minors[e.row]
                    .mul_var(e.var.0, e.var.1)
                    .scale(&field.from_i64(e.sign as i64));
                acc = acc.add(&term);
            }
            if !acc.is_zero() {
                return Err(CheckFailure {
                    index: 1,
                    position: (0, col),
                    entry: acc.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Multidegree of a basis element: `(a + 1, Σ_{j in σ} ε_j)`.
    pub fn mdeg(&self, b: &BasisElement) -> Multidegree {
        let u = b.a.iter().map(|x| x + 1).collect();
        let mut gamma = vec![0u32; self.n as usize];
        for &v in b.sigma.vertices() {
            gamma[v as usize - 1] = 1;
        }
        Multidegree { u, gamma }
    }

    /// Ordered basis of the degree-`d` piece of component `i`: pairs of a
    /// basis-element index and a monomial, basis order then monomial order.
    pub fn graded_piece(&self, i: usize, d: &Multidegree) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        if i >= self.bases.len() {
            return out;
        }
        for (pos, b) in self.bases[i].iter().enumerate() {
            let Some(rest) = d.checked_sub(&self.mdeg(b)) else {
                continue;
            };
            for mono in monomials_with_margins(&rest.u, &rest.gamma) {
                out.push((pos, mono));
            }
        }
        out
    }

    /// The matrix of `∂_i` restricted to the degree-`d` pieces, in the
    /// `graded_piece` bases. For `i` outside `1..len` the matrix is empty.
    pub fn scalar_differential(&self, i: usize, d: &Multidegree, field: &FieldCfg) -> ScalarMatrix {
        if i < 1 || i >= self.bases.len() {
            let rows = if i >= 1 && i - 1 < self.bases.len() {
                self.graded_piece(i - 1, d).len()
            } else {
                0
            };
            return ScalarMatrix::new(*field, rows, 0);
        }
        let domain = self.graded_piece(i, d);
        let codomain = self.graded_piece(i - 1, d);
        let row_index: HashMap<(usize, &Monomial), usize> = codomain
            .iter()
            .enumerate()
            .map(|(r, (pos, mono))| ((*pos, mono), r))
            .collect();
        let mut mat = ScalarMatrix::new(*field, codomain.len(), domain.len());
        for (col, (pos, mono)) in domain.iter().enumerate() {
            for e in &self.diffs[i - 1][*pos] {
                let target = mono.mul_var(e.var.0, e.var.1);
                let row = row_index[&(e.row, &target)];
                mat.add_to(row, col, field.from_i64(e.sign as i64));
            }
        }
        mat
    }

    /// `dim ker(∂_i)_d - rank(∂_{i+1})_d`, computed exactly.
    pub fn homology_dim(&self, i: usize, d: &Multidegree, field: &FieldCfg) -> usize {
        if i >= self.bases.len() {
            return 0;
        }
        let piece = self.graded_piece(i, d).len();
        if piece == 0 {
            return 0;
        }
        let rank_out = if i >= 1 {
            self.scalar_differential(i, d, field).rank()
        } else {
            0
        };
        let rank_in = if i + 1 < self.bases.len() {
            self.scalar_differential(i + 1, d, field).rank()
        } else {
            0
        };
        piece - rank_out - rank_in
    }

    /// Searches homological index `i`, internal degree `i + m + shift`
    /// (`shift` is 0 or 1), over all reachable multidegrees; returns the
    /// first nonzero homology piece found.
    pub fn homology_witness_at_shift(
        &self,
        i: usize,
        shift: u32,
        field: &FieldCfg,
    ) -> Option<(Multidegree, usize)> {
        assert!(shift <= 1, "only the strand degrees i+m and i+m+1 matter");
        if i >= self.bases.len() {
            return None;
        }
        let mut candidates: BTreeSet<Multidegree> = BTreeSet::new();
        for b in &self.bases[i] {
            let base = self.mdeg(b);
            if shift == 0 {
                candidates.insert(base);
            } else {
                for l in 1..=self.m as u16 {
                    for j in 1..=self.n as u16 {
                        candidates.insert(base.plus_var(l, j));
                    }
                }
            }
        }
        for d in candidates {
            let h = self.homology_dim(i, &d, field);
            if h > 0 {
                return Some((d, h));
            }
        }
        None
    }
}

/// All vectors of length `parts` with nonnegative entries summing to
/// `total`, in lexicographic order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; parts];
    fn rec(idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == cur.len() {
            cur[idx] = left;
            out.push(cur.clone());
            cur[idx] = 0;
            return;
        }
        for v in 0..=left {
            cur[idx] = v;
            rec(idx + 1, left - v, cur, out);
        }
        cur[idx] = 0;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Builds `C(Δ;φ)` and checks that its homology vanishes in internal
/// degrees `i+m` and `i+m+1` for all `1 <= i <= n-m`.
pub fn vanishing_check(delta: &SimplicialComplex, m: u32, field: &FieldCfg) -> bool {
    vanishing_witness(delta, m, field).is_none()
}

/// As [`vanishing_check`], returning the first offending `(i, degree, dim)`.
pub fn vanishing_witness(
    delta: &SimplicialComplex,
    m: u32,
    field: &FieldCfg,
) -> Option<(usize, Multidegree, usize)> {
    let complex = GenComplex::build(delta, m);
    let top = delta.n().saturating_sub(m) as usize;
    for i in 1..=top {
        for shift in 0..=1 {
            if let Some((d, h)) = complex.homology_witness_at_shift(i, shift, field) {
                return Some((i, d, h));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn complex(facets: &[&[u32]], n: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| face(f)).collect(), n).unwrap()
    }

    fn triangle_cycle() -> SimplicialComplex {
        complex(&[&[1, 2, 3], &[1, 3, 4], &[2, 3, 4]], 4)
    }

    fn four_facet() -> SimplicialComplex {
        complex(&[&[1, 2, 3], &[1, 3, 4], &[2, 3, 4], &[3, 4, 5, 6]], 6)
    }

    #[test]
    fn build_ranks() {
        let k = GenComplex::build(&complex(&[&[1, 2, 3]], 3), 2);
        assert_eq!(k.ranks(), vec![3, 2]);

        let k = GenComplex::build(&triangle_cycle(), 2);
        assert_eq!(k.ranks(), vec![6, 6]);

        let k = GenComplex::build(&triangle_cycle(), 4);
        assert!(k.is_empty());
    }

    #[test]
    fn rank_formula_holds() {
        for (delta, ms) in [
            (triangle_cycle(), vec![1, 2, 3]),
            (four_facet(), vec![1, 2, 3, 4]),
        ] {
            let fv = delta.f_vector();
            for m in ms {
                let k = GenComplex::build(&delta, m);
                for (i, r) in k.ranks().iter().enumerate() {
                    let expected = binomial(m as u64 + i as u64 - 1, m as u64 - 1)
                        * fv.get(m as i64 + i as i64 - 1);
                    assert_eq!(*r as u64, expected, "m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn differential_columns_match_formula() {
        // m=2: ∂ b({1,2,3};(1,0)) = x11 b({2,3}) - x12 b({1,3}) + x13 b({1,2})
        let k = GenComplex::build(&complex(&[&[1, 2, 3]], 3), 2);
        let b = BasisElement {
            sigma: face(&[1, 2, 3]),
            a: vec![1, 0],
        };
        let col = k.basis(1).iter().position(|x| *x == b).unwrap();
        let entries = &k.diff_columns(1)[col];
        let basis0 = k.basis(0);
        let named: Vec<(&Face, i8, (u16, u16))> = entries
            .iter()
            .map(|e| (&basis0[e.row].sigma, e.sign, e.var))
            .collect();
        assert_eq!(
            named,
            vec![
                (&face(&[2, 3]), 1, (1, 1)),
                (&face(&[1, 3]), -1, (1, 2)),
                (&face(&[1, 2]), 1, (1, 3)),
            ]
        );

        // only l=2 survives for a = (0,1)
        let b = BasisElement {
            sigma: face(&[1, 2, 3]),
            a: vec![0, 1],
        };
        let col = k.basis(1).iter().position(|x| *x == b).unwrap();
        let named: Vec<(&Face, i8, (u16, u16))> = k.diff_columns(1)[col]
            .iter()
            .map(|e| (&basis0[e.row].sigma, e.sign, e.var))
            .collect();
        assert_eq!(
            named,
            vec![
                (&face(&[2, 3]), 1, (2, 1)),
                (&face(&[1, 3]), -1, (2, 2)),
                (&face(&[1, 2]), 1, (2, 3)),
            ]
        );

        // m=1 Koszul relation on the edge {1,2}
        let k = GenComplex::build(&complex(&[&[1, 2]], 2), 1);
        let b = BasisElement {
            sigma: face(&[1, 2]),
            a: vec![1],
        };
        let col = k.basis(1).iter().position(|x| *x == b).unwrap();
        let named: Vec<(&Face, i8, (u16, u16))> = k.diff_columns(1)[col]
            .iter()
            .map(|e| (&k.basis(0)[e.row].sigma, e.sign, e.var))
            .collect();
        assert_eq!(
            named,
            vec![(&face(&[2]), 1, (1, 1)), (&face(&[1]), -1, (1, 2))]
        );
    }

    #[test]
    fn d_squared_and_augmentation() {
        let cases: Vec<(SimplicialComplex, Vec<u32>)> = vec![
            (complex(&[&[1, 2, 3, 4]], 4), vec![1, 2, 3]),
            (triangle_cycle(), vec![1, 2]),
            (four_facet(), vec![1, 2, 3]),
        ];
        for (delta, ms) in cases {
            for m in ms {
                let k = GenComplex::build(&delta, m);
                assert!(k.d_squared_zero().is_ok(), "d^2 for m={m}");
                assert!(k.augmentation_check().is_ok(), "psi for m={m}");
            }
        }
        // empty complex: both vacuous
        let k = GenComplex::build(&triangle_cycle(), 4);
        assert!(k.d_squared_zero().is_ok());
        assert!(k.augmentation_check().is_ok());
    }

    #[test]
    fn every_entry_is_one_variable_linking_adjacent_multidegrees() {
        let k = GenComplex::build(&four_facet(), 2);
        for i in 1..k.len() {
            for (col, entries) in k.diff_columns(i).iter().enumerate() {
                let src = k.mdeg(&k.basis(i)[col]);
                for e in entries {
                    assert!(e.sign == 1 || e.sign == -1);
                    let dst = k.mdeg(&k.basis(i - 1)[e.row]);
                    let diff = src.checked_sub(&dst).unwrap();
                    assert_eq!(diff.u.iter().sum::<u32>(), 1);
                    assert_eq!(diff.gamma.iter().sum::<u32>(), 1);
                    assert_eq!(diff.u[e.var.0 as usize - 1], 1);
                    assert_eq!(diff.gamma[e.var.1 as usize - 1], 1);
                }
            }
        }
    }

    #[test]
    fn mdeg_examples() {
        let k = GenComplex::build(&complex(&[&[1, 2, 3]], 3), 2);
        let b = BasisElement {
            sigma: face(&[1, 3]),
            a: vec![0, 0],
        };
        assert_eq!(k.mdeg(&b), Multidegree::new(vec![1, 1], vec![1, 0, 1]));
        let b = BasisElement {
            sigma: face(&[1, 2, 3]),
            a: vec![1, 0],
        };
        assert_eq!(k.mdeg(&b), Multidegree::new(vec![2, 1], vec![1, 1, 1]));

        let k1 = GenComplex::build(&complex(&[&[1, 2]], 2), 1);
        let b = BasisElement {
            sigma: face(&[2]),
            a: vec![0],
        };
        assert_eq!(k1.mdeg(&b), Multidegree::new(vec![1], vec![0, 1]));
    }

    #[test]
    fn graded_piece_examples() {
        let k = GenComplex::build(&complex(&[&[1, 2, 3]], 3), 2);
        let d = Multidegree::new(vec![1, 1], vec![1, 1, 0]);
        let piece = k.graded_piece(0, &d);
        assert_eq!(piece.len(), 1);
        assert_eq!(k.basis(0)[piece[0].0].sigma, face(&[1, 2]));
        assert_eq!(piece[0].1, Monomial::one());

        let d = Multidegree::new(vec![2, 1], vec![1, 1, 1]);
        let piece = k.graded_piece(0, &d);
        // b({1,2};0)*x13, b({1,3};0)*x12, b({2,3};0)*x11
        assert_eq!(piece.len(), 3);
        let named: Vec<(Face, Monomial)> = piece
            .iter()
            .map(|(p, mono)| (k.basis(0)[*p].sigma.clone(), mono.clone()))
            .collect();
        assert!(named.contains(&(face(&[1, 2]), Monomial::var(1, 3))));
        assert!(named.contains(&(face(&[1, 3]), Monomial::var(1, 2))));
        assert!(named.contains(&(face(&[2, 3]), Monomial::var(1, 1))));

        // negative coordinates give the empty piece
        let d = Multidegree::new(vec![1, 1], vec![2, 0, 0]);
        assert!(k.graded_piece(0, &d).is_empty());
    }

    #[test]
    fn homology_examples() {
        // the triangle cycle with m=1 has nonzero H_1 exactly at the
        // minimal-nonface degree ((3), e1+e2+e4)
        let k = GenComplex::build(&triangle_cycle(), 1);
        let d = Multidegree::new(vec![3], vec![1, 1, 0, 1]);
        for field in [FieldCfg::Rational, FieldCfg::prime(32003).unwrap()] {
            assert_eq!(k.homology_dim(1, &d, &field), 1);
        }

        // full generic complex is exact away from homological degree 0
        let k = GenComplex::build(&complex(&[&[1, 2, 3]], 3), 2);
        let f = FieldCfg::Rational;
        assert!(k.homology_witness_at_shift(1, 0, &f).is_none());
        assert!(k.homology_witness_at_shift(1, 1, &f).is_none());
    }

    #[test]
    fn homology_independent_of_basis_order() {
        // permuting rows and columns of a graded differential (reordering
        // the piece bases) cannot change its rank
        let k = GenComplex::build(&triangle_cycle(), 1);
        let d = Multidegree::new(vec![3], vec![1, 1, 0, 1]);
        let f = FieldCfg::Rational;
        let m = k.scalar_differential(1, &d, &f);
        let mut permuted = ScalarMatrix::new(f, m.rows(), m.cols());
        for ((r, c), v) in m.entries() {
            permuted.set(m.rows() - 1 - r, m.cols() - 1 - c, v.clone());
        }
        assert_eq!(m.rank(), permuted.rank());
    }

    #[test]
    fn vanishing_examples() {
        let f = FieldCfg::Rational;
        assert!(vanishing_check(&triangle_cycle(), 2, &f));
        assert!(!vanishing_check(&triangle_cycle(), 1, &f));
        for m in 1..=3 {
            assert!(vanishing_check(&complex(&[&[1, 2, 3]], 3), m, &f));
        }
        // witness for the failing case names the minimal-nonface degree
        let (i, d, h) = vanishing_witness(&triangle_cycle(), 1, &f).unwrap();
        assert_eq!(i, 1);
        assert!(h > 0);
        assert_eq!(d.total(), 3);
    }

    #[test]
    fn composition_order_is_lexicographic() {
        let comps = compositions(2, 3);
        assert_eq!(
            comps,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
    }
}
