//! Sparse exact matrices and deterministic rank/kernel computations.
//!
//! Rational ranks run integer-preserving elimination: rows are scaled to
//! integers, reduction steps are cross-multiplications, and each reduced
//! row is divided by the gcd of its entries, so no fractions ever appear.
//! Prime-field ranks use plain elimination mod p. Pivoting is
//! deterministic: rows are processed in ascending index and each row's
//! pivot is its leftmost surviving column.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::scalar::{mulmod, FieldCfg, Scalar};

/// A sparse matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: FieldCfg,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl ScalarMatrix {
    pub fn new(field: FieldCfg, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            field,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(field: FieldCfg, k: usize) -> Self {
        let mut m = ScalarMatrix::new(field, k, k);
        for i in 0..k {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> FieldCfg {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry index out of range");
        if s.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), s);
        }
    }

    /// Adds `s` to the entry at `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, s: Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur.add(&s));
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        match self.field {
            FieldCfg::Rational => self.echelon_int().len(),
            FieldCfg::Prime { p } => self.echelon_fp(p).len(),
        }
    }

    /// Vectors spanning the null space; `len = cols - rank`. Each vector
    /// has a 1 at its free column and solved values at pivot columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        match self.field {
            FieldCfg::Rational => {
                let pivots = self.echelon_int();
                let piv_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
                let mut out = Vec::new();
                for f in self.free_columns(&piv_cols) {
                    let mut x = vec![BigRational::zero(); self.cols];
                    x[f] = BigRational::one();
                    for (pc, row) in pivots.iter().rev() {
                        let mut acc = BigRational::zero();
                        for &(c, ref v) in row {
                            let c = c as usize;
                            if c > *pc && !x[c].is_zero() {
                                acc += BigRational::from(v.clone()) * &x[c];
                            }
                        }
                        let pv = row.iter().find(|&&(c, _)| c as usize == *pc).unwrap();
                        x[*pc] = -acc / BigRational::from(pv.1.clone());
                    }
                    out.push(x.into_iter().map(Scalar::Rat).collect());
                }
                out
            }
            FieldCfg::Prime { p } => {
                let pivots = self.echelon_fp(p);
                let piv_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
                let mut out = Vec::new();
                for f in self.free_columns(&piv_cols) {
                    let mut x = vec![0u64; self.cols];
                    x[f] = 1;
                    for (pc, row) in pivots.iter().rev() {
                        let mut acc = 0u64;
                        for &(c, v) in row {
                            let c = c as usize;
                            if c > *pc && x[c] != 0 {
                                acc = (acc + mulmod(v, x[c], p)) % p;
                            }
                        }
                        let pv = row.iter().find(|&&(c, _)| c as usize == *pc).unwrap().1;
                        let inv = Scalar::Fp { p, val: pv }.inv();
                        let inv = match inv {
                            Scalar::Fp { val, .. } => val,
                            _ => unreachable!(),
                        };
                        x[*pc] = mulmod((p - acc) % p, inv, p);
                    }
                    out.push(x.into_iter().map(|val| Scalar::Fp { p, val }).collect());
                }
                out
            }
        }
    }

    /// Echelon rows spanning the row space, as sparse scalar vectors in
    /// pivot-column order.
    pub fn echelon_basis(&self) -> Vec<Vec<(usize, Scalar)>> {
        match self.field {
            FieldCfg::Rational => self
                .echelon_int()
                .into_iter()
                .map(|(_, row)| {
                    row.into_iter()
                        .map(|(c, v)| (c as usize, Scalar::Rat(BigRational::from(v))))
                        .collect()
                })
                .collect(),
            FieldCfg::Prime { p } => self
                .echelon_fp(p)
                .into_iter()
                .map(|(_, row)| {
                    row.into_iter()
                        .map(|(c, val)| (c as usize, Scalar::Fp { p, val }))
                        .collect()
                })
                .collect(),
        }
    }

    fn free_columns(&self, piv_cols: &[usize]) -> Vec<usize> {
        let mut piv = vec![false; self.cols];
        for &c in piv_cols {
            piv[c] = true;
        }
        (0..self.cols).filter(|&c| !piv[c]).collect()
    }

    /// Integer row echelon: rows scaled to integers, reduced by
    /// cross-multiplication, divided by their content. Returns the pivot
    /// rows keyed by pivot column, in creation order.
    fn echelon_int(&self) -> Vec<(usize, Vec<(u32, BigInt)>)> {
        let mut pivots: Vec<(usize, Vec<(u32, BigInt)>)> = Vec::new();
        for r in 0..self.rows {
            let mut row = self.int_row(r);
            while let Some(&(lead, _)) = row.first() {
                match pivots.iter().find(|(pc, _)| *pc == lead as usize) {
                    None => break,
                    Some((_, prow)) => {
                        let pv = prow[0].1.clone();
                        let lv = row[0].1.clone();
                        row = axpy_int(&pv, &row, &lv, prow);
                        divide_content(&mut row);
                    }
                }
            }
            if !row.is_empty() {
                let lead = row[0].0 as usize;
                pivots.push((lead, row));
                pivots.sort_by_key(|(c, _)| *c);
            }
        }
        pivots
    }

    fn int_row(&self, r: usize) -> Vec<(u32, BigInt)> {
        let mut denom_lcm = BigInt::one();
        let mut entries: Vec<(u32, BigRational)> = Vec::new();
        for ((rr, c), v) in self.entries.range((r, 0)..=(r, usize::MAX)) {
            debug_assert_eq!(*rr, r);
            let Scalar::Rat(q) = v else {
                panic!("rational elimination on non-rational entries")
            };
            denom_lcm = denom_lcm.lcm(q.denom());
            entries.push((*c as u32, q.clone()));
        }
        let scale = BigRational::from(denom_lcm);
        entries
            .into_iter()
            .map(|(c, q)| {
                let v = q * &scale;
                debug_assert!(v.denom().is_one());
                (c, v.numer().clone())
            })
            .collect()
    }

    fn echelon_fp(&self, p: u64) -> Vec<(usize, Vec<(u32, u64)>)> {
        let mut pivots: Vec<(usize, Vec<(u32, u64)>)> = Vec::new();
        for r in 0..self.rows {
            let mut row: Vec<(u32, u64)> = self
                .entries
                .range((r, 0)..=(r, usize::MAX))
                .map(|((_, c), v)| {
                    let Scalar::Fp { val, p: q } = v else {
                        panic!("prime-field elimination on non-fp entries")
                    };
                    assert_eq!(*q, p, "scalar field mismatch");
                    (*c as u32, *val)
                })
                .filter(|&(_, v)| v != 0)
                .collect();
            while let Some(&(lead, lv)) = row.first() {
                match pivots.iter().find(|(pc, _)| *pc == lead as usize) {
                    None => break,
                    Some((_, prow)) => {
                        let pv = prow[0].1;
                        row = axpy_fp(pv, &row, lv, prow, p);
                    }
                }
            }
            if !row.is_empty() {
                let lead = row[0].0 as usize;
                pivots.push((lead, row));
                pivots.sort_by_key(|(c, _)| *c);
            }
        }
        pivots
    }
}

/// `a*x - b*y` on sorted sparse integer rows.
fn axpy_int(
    a: &BigInt,
    x: &[(u32, BigInt)],
    b: &BigInt,
    y: &[(u32, BigInt)],
) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let mut i = 0;
    let mut j = 0;
    while i < x.len() || j < y.len() {
        let (c, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let t = (x[i].0, a * &x[i].1);
            i += 1;
            t
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let t = (y[j].0, -(b * &y[j].1));
            j += 1;
            t
        } else {
            let t = (x[i].0, a * &x[i].1 - b * &y[j].1);
            i += 1;
            j += 1;
            t
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

fn divide_content(row: &mut [(u32, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// `a*x - b*y` mod p on sorted sparse rows.
fn axpy_fp(a: u64, x: &[(u32, u64)], b: u64, y: &[(u32, u64)], p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let mut i = 0;
    let mut j = 0;
    while i < x.len() || j < y.len() {
        let (c, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let t = (x[i].0, mulmod(a, x[i].1, p));
            i += 1;
            t
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let t = (y[j].0, (p - mulmod(b, y[j].1, p)) % p);
            j += 1;
            t
        } else {
            let t = (
                x[i].0,
                (mulmod(a, x[i].1, p) + p - mulmod(b, y[j].1, p)) % p,
            );
            i += 1;
            j += 1;
            t
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// A sparse matrix of polynomials (differentials with linear entries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(r < self.rows && c < self.cols, "entry index out of range");
        if p.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), p);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Polynomial {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Polynomial)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix product over the polynomial ring.
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = PolyMatrix::new(self.rows, other.cols);
        let mut acc: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
        for ((r, k), a) in &self.entries {
            for ((k2, c), b) in &other.entries {
                if k != k2 {
                    continue;
                }
                let prod = a.mul(b);
                acc.entry((*r, *c))
                    .and_modify(|e| *e = e.add(&prod))
                    .or_insert(prod);
            }
        }
        for ((r, c), p) in acc {
            out.set(r, c, p);
        }
        out
    }

    /// The lexicographically first nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<((usize, usize), &Polynomial)> {
        self.entries.iter().next().map(|(k, v)| (*k, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{maximal_minor, monomials_of_degree};
    use crate::combinatorics::Face;
    use proptest::prelude::*;

    #[test]
    fn rank_of_identity_and_zero() {
        for field in [FieldCfg::Rational, FieldCfg::prime(32003).unwrap()] {
            let id = ScalarMatrix::identity(field, 4);
            assert_eq!(id.rank(), 4);
            assert!(id.kernel_basis().is_empty());

            let z = ScalarMatrix::new(field, 3, 5);
            assert_eq!(z.rank(), 0);
            assert_eq!(z.kernel_basis().len(), 5);
        }
    }

    #[test]
    fn rank_with_rational_entries() {
        let f = FieldCfg::Rational;
        let mut m = ScalarMatrix::new(f, 2, 2);
        m.set(0, 0, Scalar::Rat(BigRational::new(1.into(), 2.into())));
        m.set(0, 1, f.from_i64(1));
        m.set(1, 0, f.from_i64(1));
        m.set(1, 1, f.from_i64(2));
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
    }

    /// 12 degree-3 multiples of the two path-graph minors (m=2, n=3) are
    /// linearly independent: the path's binomial edge ideal has no linear
    /// first syzygy.
    #[test]
    fn path_graph_degree3_columns_have_rank_12() {
        let f = FieldCfg::Rational;
        let basis = monomials_of_degree(2, 3, 3);
        let index: std::collections::HashMap<_, _> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let minors = [
            maximal_minor(&f, 2, &Face::new(vec![1, 2]).unwrap()).unwrap(),
            maximal_minor(&f, 2, &Face::new(vec![2, 3]).unwrap()).unwrap(),
        ];
        let mut mat = ScalarMatrix::new(f, basis.len(), 12);
        let mut col = 0;
        for minor in &minors {
            for l in 1..=2u16 {
                for j in 1..=3u16 {
                    for (mono, coef) in minor.mul_var(l, j).terms() {
                        mat.set(index[mono], col, coef.clone());
                    }
                    col += 1;
                }
            }
        }
        assert_eq!(mat.rank(), 12);
    }

    #[test]
    fn polymatrix_product() {
        let f = FieldCfg::Rational;
        let mut a = PolyMatrix::new(1, 2);
        a.set(0, 0, Polynomial::variable(&f, 1, 1));
        a.set(0, 1, Polynomial::variable(&f, 1, 2).neg());
        let mut b = PolyMatrix::new(2, 1);
        b.set(0, 0, Polynomial::variable(&f, 1, 2));
        b.set(1, 0, Polynomial::variable(&f, 1, 1));
        let prod = a.mul(&b);
        assert!(prod.is_zero(), "x11*x12 - x12*x11 = 0");
    }

    /// Naive dense Gaussian elimination over BigRational, the independent
    /// oracle for exact rank.
    #[allow(clippy::needless_range_loop)]
    fn naive_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from(BigInt::from(v))).collect())
            .collect();
        let mut rank = 0;
        let cols = m.first().map_or(0, Vec::len);
        let mut row = 0;
        for c in 0..cols {
            let Some(pr) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(row, pr);
            let pv = m[row][c].clone();
            for r in 0..m.len() {
                if r != row && !m[r][c].is_zero() {
                    let factor = &m[r][c] / &pv;
                    for cc in 0..cols {
                        let delta = &factor * &m[row][cc];
                        m[r][cc] -= delta;
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == m.len() {
                break;
            }
        }
        rank
    }

    fn to_matrix(field: FieldCfg, rows: &[Vec<i64>]) -> ScalarMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = ScalarMatrix::new(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    proptest! {
        #[test]
        fn rank_matches_naive_oracle(
            rows in proptest::collection::vec(
                proptest::collection::vec(-4i64..=4, 5), 1..=6)
        ) {
            let m = to_matrix(FieldCfg::Rational, &rows);
            prop_assert_eq!(m.rank(), naive_rank(&rows));
        }

        #[test]
        #[allow(clippy::needless_range_loop)]
        fn kernel_vectors_are_exact(
            rows in proptest::collection::vec(
                proptest::collection::vec(-3i64..=3, 4), 1..=5)
        ) {
            for field in [FieldCfg::Rational, FieldCfg::prime(32003).unwrap()] {
                let m = to_matrix(field, &rows);
                let ker = m.kernel_basis();
                prop_assert_eq!(ker.len(), m.cols() - m.rank());
                for v in &ker {
                    for r in 0..m.rows() {
                        let mut acc = field.zero();
                        for c in 0..m.cols() {
                            acc = acc.add(&m.get(r, c).mul(&v[c]));
                        }
                        prop_assert!(acc.is_zero());
                    }
                }
            }
        }

        #[test]
        fn minor_alternates_and_matches_numeric_determinant(
            vals in proptest::collection::vec(
                proptest::collection::vec(-5i64..=5, 5), 3),
            c0 in 0usize..3, c1 in 3usize..5,
        ) {
            // evaluate the symbolic 3x3 minor at a random integer matrix and
            // compare with the numeric determinant of that submatrix
            let f = FieldCfg::Rational;
            let cols = vec![c0 as u32 + 1, 4, c1 as u32 + 1];
            let mut cols = cols;
            cols.sort_unstable();
            cols.dedup();
            if cols.len() == 3 {
                let tau = Face::new(cols.clone()).unwrap();
                let minor = maximal_minor(&f, 3, &tau).unwrap();
                let sym = minor.evaluate_at(&f, &vals);
                // numeric determinant by cofactor expansion on i128
                fn det3(m: &[[i64; 3]; 3]) -> i128 {
                    let m = m.map(|r| r.map(|v| v as i128));
                    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
                }
                let sub = |perm: &[usize; 3]| {
                    let mut s = [[0i64; 3]; 3];
                    for (r, row) in vals.iter().enumerate() {
                        for (k, &ci) in perm.iter().enumerate() {
                            s[r][k] = row[ci];
                        }
                    }
                    s
                };
                let idx = [cols[0] as usize - 1, cols[1] as usize - 1, cols[2] as usize - 1];
                prop_assert_eq!(sym.clone(), f.from_i64(det3(&sub(&idx)) as i64));
                // swapping two columns negates the determinant
                let swapped = [idx[1], idx[0], idx[2]];
                prop_assert_eq!(sym.neg(), f.from_i64(det3(&sub(&swapped)) as i64));
            }
        }
    }
}
