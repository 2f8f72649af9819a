//! Brute-force graded Betti numbers of the determinantal facet ideal `J_C`
//! via Koszul homology, plus the closed-form linear-strand values.
//!
//! `β_{i,j}(J_C)` is the `i`-th homology of the degree-`j` strand of the
//! Koszul complex on all `m*n` variables with coefficients in `J_C`, with
//! wedge basis indexed by ascending variable subsets `T` and differential
//! `e_T ⊗ f -> Σ_k (-1)^{k+1} x_{t_k} e_{T\t_k} ⊗ (x_{t_k} f)`.
//!
//! Both the minors and the variables are homogeneous for the `Z^m x Z^n`
//! multigrading, so every strand splits into multidegree blocks `(u, γ)`
//! and the strand homology is the sum of the tiny block homologies; this
//! is what makes the oracle feasible at desk scale. Row permutations of
//! the generic matrix fix `J_C` and permute `u`, so only sorted `u` are
//! computed, weighted by their orbit size.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::algebra::{
    maximal_minor, monomials_of_degree, monomials_with_margins, FieldCfg, Monomial, Scalar,
    ScalarMatrix,
};
use crate::combinatorics::{binomial, Clutter, SimplicialComplex};
use crate::encomplex::compositions;
use crate::jobs::run_indexed;

/// Default cap on nonzero matrix entries assembled per Betti cell.
pub const DEFAULT_NNZ_CAP: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BettiError {
    #[error("resource cap exceeded at cell (i={i}, j={j}): {nnz} nonzero entries > cap {cap}")]
    ResourceCap {
        i: usize,
        j: u32,
        nnz: usize,
        cap: usize,
    },
}

/// Graded Betti numbers on an explicit window, with the field recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldCfg,
    pub m: u32,
    pub i_max: usize,
    pub j_max: u32,
    /// Nonzero cells only.
    pub cells: std::collections::BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.cells.get(&(i, j)).copied().unwrap_or(0)
    }

    /// The largest `i` with a nonzero linear-strand cell `β_{i,i+m}`.
    pub fn strand_top(&self) -> Option<usize> {
        (0..=self.i_max)
            .filter(|&i| self.get(i, i as u32 + self.m) > 0)
            .max()
    }
}

/// An echelonized basis of a graded piece of the ideal inside the
/// monomial coordinate space of its degree.
#[derive(Debug, Clone)]
pub struct IdealPiece {
    pub degree: u32,
    pub dim: usize,
    /// Echelon rows: sparse coordinates over `monomials_of_degree`,
    /// ordered by pivot column.
    pub basis: Vec<Vec<(usize, Scalar)>>,
}

/// The Koszul-homology Betti oracle for one clutter over one field.
pub struct BettiOracle {
    clutter: Clutter,
    field: FieldCfg,
    clique: SimplicialComplex,
    cap: usize,
    /// Per circuit: the minor's terms as (monomial, sign).
    minor_terms: Vec<Vec<(Monomial, i8)>>,
    /// Column-support mask per circuit.
    circuit_masks: Vec<u64>,
    cell_cache: Mutex<HashMap<(usize, u32), u64>>,
    piece_cache: Mutex<HashMap<u32, Arc<IdealPiece>>>,
}

impl BettiOracle {
    pub fn new(clutter: &Clutter, field: FieldCfg) -> Self {
        let rat = FieldCfg::Rational;
        let minor_terms = clutter
            .circuits()
            .iter()
            .map(|tau| {
                maximal_minor(&rat, clutter.m(), tau)
                    .expect("circuits have size m")
                    .terms()
                    .map(|(mono, c)| (mono.clone(), if c.is_one() { 1i8 } else { -1 }))
                    .collect()
            })
            .collect();
        let circuit_masks = clutter.circuits().iter().map(|c| c.mask()).collect();
        BettiOracle {
            clique: clutter.clique_complex(),
            clutter: clutter.clone(),
            field,
            cap: DEFAULT_NNZ_CAP,
            minor_terms,
            circuit_masks,
            cell_cache: Mutex::new(HashMap::new()),
            piece_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn clutter(&self) -> &Clutter {
        &self.clutter
    }

    pub fn field(&self) -> FieldCfg {
        self.field
    }

    pub fn clique_complex(&self) -> &SimplicialComplex {
        &self.clique
    }

    /// Window defaults: `i_max = min(n-m, dim Δ(C)-m+3)`,
    /// `j_max = i_max + m + 2`. Covers the linear strand plus two
    /// off-linear diagonals.
    pub fn default_window(&self) -> (usize, u32) {
        let n = self.clutter.n() as i64;
        let m = self.clutter.m() as i64;
        let i_max = (n - m).min(self.clique.dim() - m + 3).max(0) as usize;
        (i_max, i_max as u32 + self.clutter.m() + 2)
    }

    /// `β_{i,i+m}(J_C) = C(m+i-1, m-1) * f_{m+i-1}(Δ(C))`.
    pub fn strand_betti_formula(&self, i: usize) -> u64 {
        let m = self.clutter.m() as u64;
        binomial(m + i as u64 - 1, m - 1) * self.clique.f_vector().get(m as i64 + i as i64 - 1)
    }

    /// Length of the linear strand: `dim Δ(C) - m + 1`.
    pub fn strand_length(&self) -> i64 {
        self.clique.dim() - self.clutter.m() as i64 + 1
    }

    /// `β_{i,j}(J_C)` by Koszul homology, exact over the configured field.
    pub fn betti_koszul(&self, i: usize, j: u32) -> Result<u64, BettiError> {
        if let Some(&v) = self.cell_cache.lock().unwrap().get(&(i, j)) {
            return Ok(v);
        }
        let v = self.betti_cell(i, j, true)?;
        self.cell_cache.lock().unwrap().insert((i, j), v);
        Ok(v)
    }

    fn betti_cell(&self, i: usize, j: u32, fold: bool) -> Result<u64, BettiError> {
        let m = self.clutter.m() as usize;
        let n = self.clutter.n() as usize;
        if (j as i64) < i as i64 + m as i64 {
            return Ok(0);
        }
        let mut budget = NnzBudget {
            cap: self.cap,
            used: 0,
            i,
            j,
        };
        let row_degrees: Vec<(Vec<u32>, u64)> = if fold {
            partitions_desc(j, m)
                .into_iter()
                .map(|u| {
                    let mult = multiset_permutations(&u);
                    (u, mult)
                })
                .collect()
        } else {
            compositions(j, m).into_iter().map(|u| (u, 1)).collect()
        };
        let mut total = 0u64;
        for gamma in compositions(j, n) {
            let supp = support_mask(&gamma);
            if !self.circuit_masks.iter().any(|&c| c & !supp == 0) {
                continue;
            }
            for (u, mult) in &row_degrees {
                if u.contains(&0) {
                    continue;
                }
                let h = self.block_homology(i, u, &gamma, &mut budget)?;
                total += mult * h as u64;
            }
        }
        Ok(total)
    }

    /// Homology dimension of the Koszul strand at one multidegree block:
    /// `dim C_i - rank ∂_i - rank ∂_{i+1}` on spanning sets.
    fn block_homology(
        &self,
        i: usize,
        u: &[u32],
        gamma: &[u32],
        budget: &mut NnzBudget,
    ) -> Result<usize, BettiError> {
        let span_i = self.block_spanning(i, u, gamma);
        if span_i.is_empty() {
            return Ok(0);
        }
        let p = {
            let mut rows = RowIndex::default();
            let cols: Vec<SignRow> = span_i
                .iter()
                .map(|c| rows.intern(c.ambient(), budget))
                .collect::<Result<_, _>>()?;
            self.rank_of_sign_rows(&cols)
        };
        let r_out = if i >= 1 {
            let mut rows = RowIndex::default();
            let cols: Vec<SignRow> = span_i
                .iter()
                .map(|c| rows.intern(c.boundary(), budget))
                .collect::<Result<_, _>>()?;
            self.rank_of_sign_rows(&cols)
        } else {
            0
        };
        let span_up = self.block_spanning(i + 1, u, gamma);
        let r_in = if span_up.is_empty() {
            0
        } else {
            let mut rows = RowIndex::default();
            let cols: Vec<SignRow> = span_up
                .iter()
                .map(|c| rows.intern(c.boundary(), budget))
                .collect::<Result<_, _>>()?;
            self.rank_of_sign_rows(&cols)
        };
        debug_assert!(p >= r_out + r_in, "homology dimension must be nonnegative");
        Ok(p - r_out - r_in)
    }

    fn rank_of_sign_rows(&self, rows: &[SignRow]) -> usize {
        let cols = rows
            .iter()
            .flat_map(|r| r.iter().map(|(c, _)| c + 1))
            .max()
            .unwrap_or(0);
        let mut mat = ScalarMatrix::new(self.field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for &(c, s) in row {
                mat.add_to(r, c, self.field.from_i64(s as i64));
            }
        }
        mat.rank()
    }

    /// Spanning columns of `∧^i V ⊗ J` at multidegree `(u, γ)`: one per
    /// `(T, τ, w)` with `T` an `i`-subset of variables, `τ` a circuit and
    /// `w` a monomial filling the remaining degree.
    fn block_spanning(&self, i: usize, u: &[u32], gamma: &[u32]) -> Vec<SpanColumn<'_>> {
        let mut out = Vec::new();
        let mut picked: Vec<(u16, u16)> = Vec::with_capacity(i);
        self.enumerate_wedges(i, 0, u, gamma, &mut picked, &mut |vars, ut, gt| {
            let supp = support_mask(gt);
            for (ci, cmask) in self.circuit_masks.iter().enumerate() {
                if cmask & !supp != 0 {
                    continue;
                }
                let v_rows: Vec<u32> = ut.iter().map(|&x| x - 1).collect();
                let mut d_cols = gt.to_vec();
                for &c in self.clutter.circuits()[ci].vertices() {
                    d_cols[c as usize - 1] -= 1;
                }
                for w in monomials_with_margins(&v_rows, &d_cols) {
                    out.push(SpanColumn {
                        wedge: vars.to_vec(),
                        w,
                        minor: &self.minor_terms[ci],
                    });
                }
            }
        });
        out
    }

    /// Recursively picks ascending variables for the wedge part, keeping
    /// every row of the remaining multidegree at least 1 (the minor always
    /// contributes one unit per row).
    fn enumerate_wedges(
        &self,
        left: usize,
        start: usize,
        u: &[u32],
        gamma: &[u32],
        picked: &mut Vec<(u16, u16)>,
        f: &mut impl FnMut(&[(u16, u16)], &[u32], &[u32]),
    ) {
        if left == 0 {
            f(picked, u, gamma);
            return;
        }
        let m = self.clutter.m() as usize;
        let n = self.clutter.n() as usize;
        for idx in start..m * n {
            let (l, j) = (idx / n, idx % n);
            if u[l] <= 1 || gamma[j] == 0 {
                continue;
            }
            let mut u2 = u.to_vec();
            let mut g2 = gamma.to_vec();
            u2[l] -= 1;
            g2[j] -= 1;
            picked.push((l as u16 + 1, j as u16 + 1));
            self.enumerate_wedges(left - 1, idx + 1, &u2, &g2, picked, f);
            picked.pop();
        }
    }

    /// `β_{1,j}` by the degree-truncated syzygy route: `dim Z_j` minus
    /// `dim S_1 Z_{j-1}`, where `Z` is the kernel of the presentation
    /// `F_0 -> J_C` on the circuit generators. Computed blockwise over
    /// multidegrees; an independent cross-check of `betti_koszul(1, j)`.
    pub fn betti_first_syzygy(&self, j: u32) -> Result<u64, BettiError> {
        let m = self.clutter.m();
        let n = self.clutter.n() as usize;
        if j < m {
            return Ok(0);
        }
        let mut budget = NnzBudget {
            cap: self.cap,
            used: 0,
            i: 1,
            j,
        };
        let mut kernels: HashMap<(Vec<u32>, Vec<u32>), Arc<KernelBlock>> = HashMap::new();
        let mut total = 0u64;
        for gamma in compositions(j, n) {
            let supp = support_mask(&gamma);
            if !self.circuit_masks.iter().any(|&c| c & !supp == 0) {
                continue;
            }
            for u in compositions(j, m as usize) {
                if u.contains(&0) {
                    continue;
                }
                let z = self.kernel_block(&u, &gamma, &mut kernels, &mut budget)?;
                if z.vectors.is_empty() {
                    continue;
                }
                let dim_z = z.vectors.len();
                let index: HashMap<(usize, &Monomial), usize> = z
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(r, (ci, w))| ((*ci, w), r))
                    .collect();
                // the span of x * Z over the neighbor multidegrees
                let mut shifted: Vec<Vec<(usize, Scalar)>> = Vec::new();
                for l in 0..m as usize {
                    for c in 0..n {
                        if u[l] == 0 || gamma[c] == 0 {
                            continue;
                        }
                        let mut u2 = u.clone();
                        let mut g2 = gamma.clone();
                        u2[l] -= 1;
                        g2[c] -= 1;
                        let nb = self.kernel_block(&u2, &g2, &mut kernels, &mut budget)?;
                        for vec in &nb.vectors {
                            let mut row: Vec<(usize, Scalar)> = Vec::new();
                            for (pos, s) in vec.iter().enumerate() {
                                if s.is_zero() {
                                    continue;
                                }
                                let (ci, w) = &nb.basis[pos];
                                let target = w.mul_var(l as u16 + 1, c as u16 + 1);
                                row.push((index[&(*ci, &target)], s.clone()));
                            }
                            budget.charge(row.len())?;
                            shifted.push(row);
                        }
                    }
                }
                let dim_mz = rank_of_scalar_rows(self.field, z.basis.len(), &shifted);
                total += (dim_z - dim_mz) as u64;
            }
        }
        Ok(total)
    }

    /// Kernel of `F_0 -> J_C` at one multidegree, with its `(circuit, w)`
    /// column basis.
    fn kernel_block(
        &self,
        u: &[u32],
        gamma: &[u32],
        cache: &mut HashMap<(Vec<u32>, Vec<u32>), Arc<KernelBlock>>,
        budget: &mut NnzBudget,
    ) -> Result<Arc<KernelBlock>, BettiError> {
        let key = (u.to_vec(), gamma.to_vec());
        if let Some(k) = cache.get(&key) {
            return Ok(k.clone());
        }
        let supp = support_mask(gamma);
        let mut basis: Vec<(usize, Monomial)> = Vec::new();
        if u.iter().all(|&x| x >= 1) {
            for (ci, cmask) in self.circuit_masks.iter().enumerate() {
                if cmask & !supp != 0 {
                    continue;
                }
                let v_rows: Vec<u32> = u.iter().map(|&x| x - 1).collect();
                let mut d_cols = gamma.to_vec();
                for &c in self.clutter.circuits()[ci].vertices() {
                    d_cols[c as usize - 1] -= 1;
                }
                for w in monomials_with_margins(&v_rows, &d_cols) {
                    basis.push((ci, w));
                }
            }
        }
        let block = if basis.is_empty() {
            KernelBlock {
                basis,
                vectors: Vec::new(),
            }
        } else {
            let mut rows: HashMap<Monomial, usize> = HashMap::new();
            let mut triplets: Vec<(usize, usize, i8)> = Vec::new();
            for (col, (ci, w)) in basis.iter().enumerate() {
                for (mono, s) in &self.minor_terms[*ci] {
                    let key = w.mul(mono);
                    let next = rows.len();
                    let r = *rows.entry(key).or_insert(next);
                    triplets.push((r, col, *s));
                }
            }
            budget.charge(triplets.len())?;
            let mut mat = ScalarMatrix::new(self.field, rows.len(), basis.len());
            for (r, c, s) in triplets {
                mat.add_to(r, c, self.field.from_i64(s as i64));
            }
            let vectors = mat.kernel_basis();
            KernelBlock { basis, vectors }
        };
        let arc = Arc::new(block);
        cache.insert(key, arc.clone());
        Ok(arc)
    }

    /// Echelonized basis of the whole degree-`d` piece of the ideal in
    /// the `monomials_of_degree` coordinate space. Memoized.
    pub fn ideal_piece(&self, d: u32) -> Arc<IdealPiece> {
        if let Some(p) = self.piece_cache.lock().unwrap().get(&d) {
            return p.clone();
        }
        let m = self.clutter.m();
        let n = self.clutter.n();
        let piece = if d < m {
            IdealPiece {
                degree: d,
                dim: 0,
                basis: Vec::new(),
            }
        } else {
            let coords = monomials_of_degree(m as u16, n as u16, d);
            let index: HashMap<&Monomial, usize> =
                coords.iter().enumerate().map(|(i, mo)| (mo, i)).collect();
            let mults = monomials_of_degree(m as u16, n as u16, d - m);
            let mut mat =
                ScalarMatrix::new(self.field, mults.len() * self.minor_terms.len(), coords.len());
            let mut r = 0;
            for terms in &self.minor_terms {
                for w in &mults {
                    for (mono, s) in terms {
                        mat.add_to(r, index[&w.mul(mono)], self.field.from_i64(*s as i64));
                    }
                    r += 1;
                }
            }
            let basis = mat.echelon_basis();
            IdealPiece {
                degree: d,
                dim: basis.len(),
                basis,
            }
        };
        let arc = Arc::new(piece);
        self.piece_cache.lock().unwrap().insert(d, arc.clone());
        arc
    }

    /// Fills the window `(i <= i_max, j <= j_max)` via `betti_koszul`,
    /// except `β_{0,m}` which equals the circuit count (the minors are
    /// distinct irreducible degree-m forms). Cells run on up to `jobs`
    /// threads.
    pub fn betti_table(
        &self,
        i_max: usize,
        j_max: u32,
        jobs: usize,
    ) -> Result<BettiTable, BettiError> {
        let m = self.clutter.m();
        let mut cells_todo: Vec<(usize, u32)> = Vec::new();
        for i in 0..=i_max {
            for j in (i as u32 + m)..=j_max {
                if (i, j) != (0, m) {
                    cells_todo.push((i, j));
                }
            }
        }
        let results = run_indexed(cells_todo.len(), jobs, |k| {
            let (i, j) = cells_todo[k];
            self.betti_koszul(i, j)
        });
        let mut cells = std::collections::BTreeMap::new();
        if j_max >= m {
            cells.insert((0usize, m), self.clutter.circuits().len() as u64);
        }
        for (k, res) in results.into_iter().enumerate() {
            let v = res?;
            if v > 0 {
                cells.insert(cells_todo[k], v);
            }
        }
        Ok(BettiTable {
            field: self.field,
            m,
            i_max,
            j_max,
            cells,
        })
    }
}

struct KernelBlock {
    basis: Vec<(usize, Monomial)>,
    vectors: Vec<Vec<Scalar>>,
}

type SignRow = Vec<(usize, i8)>;

/// One spanning column `e_T ⊗ (w * m_τ)` of a Koszul block.
struct SpanColumn<'a> {
    wedge: Vec<(u16, u16)>,
    w: Monomial,
    minor: &'a [(Monomial, i8)],
}

impl SpanColumn<'_> {
    /// Coordinates in the ambient `(T, monomial)` space.
    fn ambient(&self) -> Vec<(RowKey, i8)> {
        self.minor
            .iter()
            .map(|(mono, s)| (RowKey(self.wedge.clone(), self.w.mul(mono)), *s))
            .collect()
    }

    /// Coordinates of the Koszul boundary in level `|T| - 1`.
    fn boundary(&self) -> Vec<(RowKey, i8)> {
        let mut out = Vec::with_capacity(self.wedge.len() * self.minor.len());
        for (k0, &(l, j)) in self.wedge.iter().enumerate() {
            let sign = if k0 % 2 == 0 { 1i8 } else { -1 };
            let mut rest = self.wedge.clone();
            rest.remove(k0);
            let shifted = self.w.mul_var(l, j);
            for (mono, s) in self.minor {
                out.push((RowKey(rest.clone(), shifted.mul(mono)), sign * s));
            }
        }
        out
    }
}

#[derive(PartialEq, Eq, Hash, Clone)]
struct RowKey(Vec<(u16, u16)>, Monomial);

/// Interns row keys to dense indices per block, in first-seen order.
#[derive(Default)]
struct RowIndex {
    map: HashMap<RowKey, usize>,
}

impl RowIndex {
    fn intern(
        &mut self,
        entries: Vec<(RowKey, i8)>,
        budget: &mut NnzBudget,
    ) -> Result<SignRow, BettiError> {
        budget.charge(entries.len())?;
        Ok(entries
            .into_iter()
            .map(|(k, s)| {
                let next = self.map.len();
                (*self.map.entry(k).or_insert(next), s)
            })
            .collect())
    }
}

struct NnzBudget {
    cap: usize,
    used: usize,
    i: usize,
    j: u32,
}

impl NnzBudget {
    fn charge(&mut self, nnz: usize) -> Result<(), BettiError> {
        self.used += nnz;
        if self.used > self.cap {
            return Err(BettiError::ResourceCap {
                i: self.i,
                j: self.j,
                nnz: self.used,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Rank of the span of sparse scalar vectors (given as rows).
fn rank_of_scalar_rows(field: FieldCfg, cols: usize, rows: &[Vec<(usize, Scalar)>]) -> usize {
    let mut mat = ScalarMatrix::new(field, rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row {
            mat.add_to(r, *c, s.clone());
        }
    }
    mat.rank()
}

fn support_mask(v: &[u32]) -> u64 {
    v.iter()
        .enumerate()
        .fold(0, |acc, (i, &x)| if x > 0 { acc | 1 << i } else { acc })
}

/// Nonincreasing vectors of length `parts` with entries summing to `total`.
fn partitions_desc(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; parts];
    fn rec(idx: usize, left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == cur.len() {
            if left <= max {
                cur[idx] = left;
                out.push(cur.clone());
            }
            return;
        }
        let slots = (cur.len() - idx) as u32;
        let lo = left.div_ceil(slots);
        for v in (lo..=left.min(max)).rev() {
            cur[idx] = v;
            rec(idx + 1, left - v, v, cur, out);
        }
    }
    rec(0, total, total, &mut cur, &mut out);
    out
}

fn multiset_permutations(sorted: &[u32]) -> u64 {
    let mut fact = vec![1u64; sorted.len() + 1];
    for i in 1..=sorted.len() {
        fact[i] = fact[i - 1] * i as u64;
    }
    let mut denom = 1u64;
    let mut run = 1usize;
    for k in 1..=sorted.len() {
        if k < sorted.len() && sorted[k] == sorted[k - 1] {
            run += 1;
        } else {
            denom *= fact[run];
            run = 1;
        }
    }
    fact[sorted.len()] / denom
}
