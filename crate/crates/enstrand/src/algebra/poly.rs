//! Sparse multivariate polynomials in the entries `x[l,j]` of a generic
//! `m x n` matrix, plus maximal minors and monomial enumeration.

use std::collections::BTreeMap;

use crate::combinatorics::Face;

use super::scalar::{FieldCfg, Scalar};
use super::AlgebraError;

/// A variable `x[l,j]`: row `l` in `1..=m`, column `j` in `1..=n`.
pub type VarId = (u16, u16);

/// A monomial: sparse exponent map over the matrix variables, ordered by
/// `(l, j)`, with the total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: Vec::new(),
            deg: 0,
        }
    }

    pub fn var(l: u16, j: u16) -> Self {
        assert!(l >= 1 && j >= 1, "variables are 1-based");
        Monomial {
            exps: vec![((l, j), 1)],
            deg: 1,
        }
    }

    pub fn from_exponents(exps: Vec<(VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in exps {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let deg = map.values().sum();
        Monomial {
            exps: map.into_iter().collect(),
            deg,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<VarId, u32> = self.exps.iter().copied().collect();
        for &(v, e) in &other.exps {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps: out.into_iter().collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn mul_var(&self, l: u16, j: u16) -> Monomial {
        self.mul(&Monomial::var(l, j))
    }

    /// Multidegree: row sums over `1..=m` and column sums over `1..=n`.
    pub fn multidegree(&self, m: usize, n: usize) -> (Vec<u32>, Vec<u32>) {
        let mut u = vec![0u32; m];
        let mut g = vec![0u32; n];
        for &((l, j), e) in &self.exps {
            u[l as usize - 1] += e;
            g[j as usize - 1] += e;
        }
        (u, g)
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on the exponent vector read in
    /// ascending `(l, j)` order (larger exponent at the first differing
    /// variable means the larger monomial).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            let mut a = self.exps.iter();
            let mut b = other.exps.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return std::cmp::Ordering::Equal,
                    // remaining exponents sit on later variables: the side
                    // that ran out has exponent 0 at the earlier variable
                    (None, Some(_)) => return std::cmp::Ordering::Less,
                    (Some(_), None) => return std::cmp::Ordering::Greater,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va != vb {
                            // the smaller variable id carries a positive
                            // exponent on exactly one side
                            return if va < vb {
                                std::cmp::Ordering::Greater
                            } else {
                                std::cmp::Ordering::Less
                            };
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &((l, j), e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x[{l},{j}]")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: monomial -> nonzero coefficient, iterated in
/// canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldCfg, v: i64) -> Self {
        let s = field.from_i64(v);
        let mut p = Polynomial::zero();
        if !s.is_zero() {
            p.terms.insert(Monomial::one(), s);
        }
        p
    }

    pub fn variable(field: &FieldCfg, l: u16, j: u16) -> Self {
        Polynomial::term(Monomial::var(l, j), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            match out.get_mut(m) {
                Some(acc) => {
                    let s = acc.add(c);
                    if s.is_zero() {
                        out.remove(m);
                    } else {
                        *acc = s;
                    }
                }
                None => {
                    out.insert(m.clone(), c.clone());
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match out.get_mut(&m) {
                    Some(acc) => {
                        let s = acc.add(&c);
                        if s.is_zero() {
                            out.remove(&m);
                        } else {
                            *acc = s;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            out.insert(m, c);
                        }
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn mul_var(&self, l: u16, j: u16) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul_var(l, j), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at an integer matrix (`values[l-1][j-1]`), over the
    /// coefficient field.
    pub fn evaluate_at(&self, field: &FieldCfg, values: &[Vec<i64>]) -> Scalar {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &((l, j), e) in m.exponents() {
                let v = field.from_i64(values[l as usize - 1][j as usize - 1]);
                for _ in 0..e {
                    t = t.mul(&v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                if c.is_one() && m.total_degree() > 0 {
                    write!(f, "{m}")?;
                } else {
                    write!(f, "{c}")?;
                    if m.total_degree() > 0 {
                        write!(f, "*{m}")?;
                    }
                }
            } else {
                let neg = c.neg();
                if neg.is_one() && m.total_degree() > 0 {
                    write!(f, " - {m}")?;
                } else if c.is_one() && m.total_degree() > 0 {
                    write!(f, " + {m}")?;
                } else {
                    write!(f, " + {c}")?;
                    if m.total_degree() > 0 {
                        write!(f, "*{m}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// The `m x m` minor of the generic matrix on the ascending column set
/// `tau`, expanded by cofactors along the first row: `m!` monomials with
/// coefficients `±1`.
pub fn maximal_minor(field: &FieldCfg, m: u32, tau: &Face) -> Result<Polynomial, AlgebraError> {
    if tau.len() != m as usize {
        return Err(AlgebraError::WrongCardinality {
            expected: m as usize,
            got: tau.len(),
        });
    }
    Ok(minor_rec(field, 1, tau.vertices()))
}

fn minor_rec(field: &FieldCfg, row: u16, cols: &[u32]) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::constant(field, 1);
    }
    let mut acc = Polynomial::zero();
    for (t, &col) in cols.iter().enumerate() {
        let rest: Vec<u32> = cols
            .iter()
            .enumerate()
            .filter(|&(s, _)| s != t)
            .map(|(_, &c)| c)
            .collect();
        let sub = minor_rec(field, row + 1, &rest);
        let term = sub.mul_var(row, col as u16);
        acc = if t % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// All monomials of total degree `d` in the `m*n` matrix variables, in
/// canonical order. Count is `C(m*n + d - 1, d)`; desk scale only.
pub fn monomials_of_degree(m: u16, n: u16, d: u32) -> Vec<Monomial> {
    let vars: Vec<VarId> = (1..=m)
        .flat_map(|l| (1..=n).map(move |j| (l, j)))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<(VarId, u32)> = Vec::new();
    fn rec(
        vars: &[VarId],
        idx: usize,
        remaining: u32,
        current: &mut Vec<(VarId, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if idx == vars.len() {
            if remaining == 0 {
                out.push(Monomial::from_exponents(current.clone()));
            }
            return;
        }
        if idx + 1 == vars.len() {
            current.push((vars[idx], remaining));
            out.push(Monomial::from_exponents(current.clone()));
            current.pop();
            return;
        }
        for e in 0..=remaining {
            if e > 0 {
                current.push((vars[idx], e));
            }
            rec(vars, idx + 1, remaining - e, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }
    rec(&vars, 0, d, &mut current, &mut out);
    out.sort();
    out
}

/// All monomials whose row sums equal `row_sums` and column sums equal
/// `col_sums` (contingency tables), in a fixed deterministic order.
pub fn monomials_with_margins(row_sums: &[u32], col_sums: &[u32]) -> Vec<Monomial> {
    let m = row_sums.len();
    let n = col_sums.len();
    if row_sums.iter().sum::<u32>() != col_sums.iter().sum::<u32>() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut table = vec![vec![0u32; n]; m];
    let mut col_left = col_sums.to_vec();
    fill_rows(row_sums, 0, &mut col_left, &mut table, &mut out);
    out
}

fn fill_rows(
    row_sums: &[u32],
    l: usize,
    col_left: &mut Vec<u32>,
    table: &mut Vec<Vec<u32>>,
    out: &mut Vec<Monomial>,
) {
    let m = row_sums.len();
    if l == m {
        let mut exps = Vec::new();
        for (li, row) in table.iter().enumerate() {
            for (ji, &e) in row.iter().enumerate() {
                if e > 0 {
                    exps.push(((li as u16 + 1, ji as u16 + 1), e));
                }
            }
        }
        out.push(Monomial::from_exponents(exps));
        return;
    }
    // remaining rows must be able to absorb the remaining column totals
    let remaining_rows: u32 = row_sums[l + 1..].iter().sum();
    fill_cells(row_sums, l, 0, row_sums[l], remaining_rows, col_left, table, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_cells(
    row_sums: &[u32],
    l: usize,
    j: usize,
    left_in_row: u32,
    remaining_rows: u32,
    col_left: &mut Vec<u32>,
    table: &mut Vec<Vec<u32>>,
    out: &mut Vec<Monomial>,
) {
    let n = col_left.len();
    if j == n {
        if left_in_row == 0 {
            fill_rows(row_sums, l + 1, col_left, table, out);
        }
        return;
    }
    // columns after j can take at most their col_left in this row
    let later_capacity: u32 = col_left[j + 1..].iter().sum();
    let max_e = left_in_row.min(col_left[j]);
    let min_e = left_in_row.saturating_sub(later_capacity);
    for e in min_e..=max_e {
        // the column must still be fillable by the remaining rows
        if col_left[j] - e > remaining_rows {
            continue;
        }
        table[l][j] = e;
        col_left[j] -= e;
        fill_cells(
            row_sums,
            l,
            j + 1,
            left_in_row - e,
            remaining_rows,
            col_left,
            table,
            out,
        );
        col_left[j] += e;
        table[l][j] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use itertools::Itertools;

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    #[test]
    fn poly_ring_basics() {
        let f = FieldCfg::Rational;
        let p = Polynomial::variable(&f, 1, 1).mul(&Polynomial::variable(&f, 2, 2));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.add(&Polynomial::zero()), p);
        assert!(p.sub(&p).is_zero());

        // (x11 x22 - x12 x21)(x12 x23 - x13 x22) has four degree-4 terms
        let m12 = maximal_minor(&f, 2, &face(&[1, 2])).unwrap();
        let m23 = maximal_minor(&f, 2, &face(&[2, 3])).unwrap();
        let prod = m12.mul(&m23);
        assert_eq!(prod.num_terms(), 4);
        assert!(prod
            .terms()
            .all(|(m, _)| m.total_degree() == 4));
    }

    #[test]
    fn minor_examples() {
        let f = FieldCfg::Rational;
        let m1 = maximal_minor(&f, 1, &face(&[5])).unwrap();
        assert_eq!(m1, Polynomial::variable(&f, 1, 5));

        let m2 = maximal_minor(&f, 2, &face(&[1, 2])).unwrap();
        let expect = Polynomial::variable(&f, 1, 1)
            .mul(&Polynomial::variable(&f, 2, 2))
            .sub(&Polynomial::variable(&f, 1, 2).mul(&Polynomial::variable(&f, 2, 1)));
        assert_eq!(m2, expect);

        assert!(maximal_minor(&f, 3, &face(&[1, 2])).is_err());
    }

    /// Leibniz-sum oracle for the minor on columns `tau`.
    fn leibniz_minor(field: &FieldCfg, m: u32, tau: &Face) -> Polynomial {
        let cols = tau.vertices();
        let mut acc = Polynomial::zero();
        for perm in (0..m as usize).permutations(m as usize) {
            let mut sign = 0;
            for i in 0..perm.len() {
                for j in i + 1..perm.len() {
                    if perm[i] > perm[j] {
                        sign += 1;
                    }
                }
            }
            let mut term = Polynomial::constant(field, if sign % 2 == 0 { 1 } else { -1 });
            for (row, &which) in perm.iter().enumerate() {
                term = term.mul_var(row as u16 + 1, cols[which] as u16);
            }
            acc = acc.add(&term);
        }
        acc
    }

    #[test]
    fn minor_matches_leibniz_sum() {
        let f = FieldCfg::Rational;
        for tau in [face(&[1, 2, 3]), face(&[1, 3, 5]), face(&[2, 4, 5])] {
            let cof = maximal_minor(&f, 3, &tau).unwrap();
            assert_eq!(cof.num_terms(), 6);
            assert_eq!(cof, leibniz_minor(&f, 3, &tau));
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(2, 3, 0), vec![Monomial::one()]);
        assert_eq!(monomials_of_degree(2, 3, 1).len(), 6);
        assert_eq!(monomials_of_degree(2, 3, 2).len(), 21);
        for d in 0..4u32 {
            assert_eq!(
                monomials_of_degree(2, 2, d).len() as u64,
                binomial(4 + d as u64 - 1, d as u64).max(1)
            );
        }
        // canonical order is strictly increasing
        let ms = monomials_of_degree(2, 3, 3);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn margin_enumeration_matches_filter() {
        let all = monomials_of_degree(2, 3, 3);
        for u in [[3u32, 0], [2, 1], [1, 2]] {
            for g in [[1u32, 1, 1], [2, 1, 0], [3, 0, 0], [0, 2, 1]] {
                let by_margin = monomials_with_margins(&u, &g);
                let by_filter: Vec<&Monomial> = all
                    .iter()
                    .filter(|m| m.multidegree(2, 3) == (u.to_vec(), g.to_vec()))
                    .collect();
                assert_eq!(by_margin.len(), by_filter.len(), "u={u:?} g={g:?}");
            }
        }
    }

    #[test]
    fn evaluation_and_alternation() {
        let f = FieldCfg::Rational;
        // evaluating the 2x2 minor at a concrete matrix
        let vals = vec![vec![3, 1, 4], vec![1, 5, 9]];
        let m = maximal_minor(&f, 2, &face(&[1, 3])).unwrap();
        assert_eq!(m.evaluate_at(&f, &vals), f.from_i64(3 * 9 - 4));
    }
}
