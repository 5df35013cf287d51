//! Exact sparse linear algebra over the integers: rank, kernels, Smith
//! normal form, products.
//!
//! Everything is arbitrary-precision. Rank and kernels are computed by
//! fraction-free row elimination (rows stay integral, stripped to content
//! one), with Markowitz-style pivoting: smallest active column first, then
//! unit pivots, then minimal fill-in estimate. Pivoting is deterministic
//! given the input, so all downstream reports are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// SparseIntMatrix
// ---------------------------------------------------------------------------

/// A sparse matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(u32, u32), BigInt>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseIntMatrix::zero(n, n);
        for i in 0..n {
            m.entries.insert((i as u32, i as u32), BigInt::one());
        }
        m
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut m = SparseIntMatrix::zero(rows, cols);
        for (r, c, v) in triplets {
            m.add_to(r, c, v)?;
        }
        Ok(m)
    }

    /// Dense construction, mostly for tests.
    pub fn from_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut m = SparseIntMatrix::zero(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((r as u32, c as u32), BigInt::from(v));
                }
            }
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries
            .get(&(r as u32, c as u32))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::InvalidInput(format!(
                "index ({r},{c}) out of range for {}×{} matrix",
                self.rows, self.cols
            )));
        }
        if v.is_zero() {
            self.entries.remove(&(r as u32, c as u32));
        } else {
            self.entries.insert((r as u32, c as u32), v);
        }
        Ok(())
    }

    /// Accumulate `v` into entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: BigInt) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::InvalidInput(format!(
                "index ({r},{c}) out of range for {}×{} matrix",
                self.rows, self.cols
            )));
        }
        if v.is_zero() {
            return Ok(());
        }
        let key = (r as u32, c as u32);
        let slot = self.entries.entry(key).or_insert_with(BigInt::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries
            .iter()
            .map(|(&(r, c), v)| (r as usize, c as usize, v))
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn neg(&self) -> SparseIntMatrix {
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v = -v.clone();
        }
        m
    }

    pub fn add(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidInput(format!(
                "shape mismatch in add: {}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = self.clone();
        for (&(r, c), v) in &other.entries {
            m.add_to(r as usize, c as usize, v.clone())?;
        }
        Ok(m)
    }

    pub fn sub(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        self.add(&other.neg())
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "dimension mismatch in multiply: {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // row-major view of `other`
        let mut other_rows: Vec<Vec<(u32, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            other_rows[r as usize].push((c, v));
        }
        let mut result = SparseIntMatrix::zero(self.rows, other.cols);
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        let mut current_row = u32::MAX;
        let flush =
            |row: u32, acc: &mut BTreeMap<u32, BigInt>, result: &mut SparseIntMatrix| {
                for (c, v) in std::mem::take(acc) {
                    if !v.is_zero() {
                        result.entries.insert((row, c), v);
                    }
                }
            };
        for (&(r, k), v) in &self.entries {
            if r != current_row {
                if current_row != u32::MAX {
                    flush(current_row, &mut acc, &mut result);
                }
                current_row = r;
            }
            for &(c, w) in &other_rows[k as usize] {
                let slot = acc.entry(c).or_insert_with(BigInt::zero);
                *slot += v * w;
            }
        }
        if current_row != u32::MAX {
            flush(current_row, &mut acc, &mut result);
        }
        Ok(result)
    }

    /// Apply to an integer column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::InvalidInput(format!(
                "vector length {} does not match column count {}",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(r, c), w) in &self.entries {
            out[r as usize] += w * &v[c as usize];
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&SparseIntMatrix]) -> Result<SparseIntMatrix> {
        let rows = blocks.first().map_or(0, |m| m.rows);
        if blocks.iter().any(|m| m.rows != rows) {
            return Err(Error::InvalidInput("hstack: row count mismatch".into()));
        }
        let cols = blocks.iter().map(|m| m.cols).sum();
        let mut out = SparseIntMatrix::zero(rows, cols);
        let mut offset = 0u32;
        for m in blocks {
            for (&(r, c), v) in &m.entries {
                out.entries.insert((r, c + offset), v.clone());
            }
            offset += m.cols as u32;
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&SparseIntMatrix]) -> Result<SparseIntMatrix> {
        let cols = blocks.first().map_or(0, |m| m.cols);
        if blocks.iter().any(|m| m.cols != cols) {
            return Err(Error::InvalidInput("vstack: column count mismatch".into()));
        }
        let rows = blocks.iter().map(|m| m.rows).sum();
        let mut out = SparseIntMatrix::zero(rows, cols);
        let mut offset = 0u32;
        for m in blocks {
            for (&(r, c), v) in &m.entries {
                out.entries.insert((r + offset, c), v.clone());
            }
            offset += m.rows as u32;
        }
        Ok(out)
    }

    /// Submatrix on the given row and column index lists (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseIntMatrix {
        let row_pos: BTreeMap<u32, u32> = rows
            .iter()
            .enumerate()
            .map(|(i, &r)| (r as u32, i as u32))
            .collect();
        let col_pos: BTreeMap<u32, u32> = cols
            .iter()
            .enumerate()
            .map(|(i, &c)| (c as u32, i as u32))
            .collect();
        let mut out = SparseIntMatrix::zero(rows.len(), cols.len());
        for (&(r, c), v) in &self.entries {
            if let (Some(&ri), Some(&ci)) = (row_pos.get(&r), col_pos.get(&c)) {
                out.entries.insert((ri, ci), v.clone());
            }
        }
        out
    }

    /// Rank over the rationals.
    pub fn rank_exact(&self) -> usize {
        Eliminator::new(self, false).run().rank
    }

    /// Basis of the right kernel over the rationals (returned with integer
    /// entries cleared of content; dimension is `cols − rank`).
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        self.kernel_basis_int()
            .into_iter()
            .map(|v| v.into_iter().map(BigRational::from_integer).collect())
            .collect()
    }

    /// Integer form of the kernel basis.
    pub fn kernel_basis_int(&self) -> Vec<Vec<BigInt>> {
        // Row-eliminate [selfᵀ | I]; rows whose left part vanishes carry the
        // kernel in the right part.
        let t = self.transpose();
        let elim = Eliminator::new(&t, true).run();
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        for (row, aug) in elim.rows.into_iter().zip(elim.aug.into_iter()) {
            if row.is_empty() && !aug.is_empty() {
                let mut dense = vec![BigInt::zero(); self.cols];
                for (c, v) in aug {
                    dense[c as usize] = v;
                }
                normalize_vector(&mut dense);
                basis.push(dense);
            }
        }
        basis.sort_by_key(|v| v.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX));
        basis
    }

    /// Smith normal form over the integers.
    pub fn smith_normal_form(&self) -> SnfReport {
        smith_normal_form(self)
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseIntMatrix {}×{} ({} nnz)", self.rows, self.cols, self.nnz())?;
        if self.rows <= 12 && self.cols <= 12 {
            for r in 0..self.rows {
                write!(f, "  [")?;
                for c in 0..self.cols {
                    write!(f, " {}", self.get(r, c))?;
                }
                writeln!(f, " ]")?;
            }
        }
        Ok(())
    }
}

fn normalize_vector(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Row elimination engine
// ---------------------------------------------------------------------------

type SparseRow = Vec<(u32, BigInt)>; // sorted by column

struct Eliminator {
    rows: Vec<SparseRow>,
    aug: Vec<SparseRow>,
    /// rows known to touch each column; may contain stale ids, cleaned lazily
    col_rows: Vec<Vec<u32>>,
    /// exact count of active rows with a nonzero entry per column
    col_count: Vec<usize>,
    row_active: Vec<bool>,
    col_active: Vec<bool>,
    rank: usize,
}

impl Eliminator {
    /// With `carry_identity` an identity block is carried along on the right,
    /// never eligible for pivots; rows whose left part dies end up holding
    /// left-kernel vectors there.
    fn new(m: &SparseIntMatrix, carry_identity: bool) -> Self {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); m.rows];
        for (&(r, c), v) in &m.entries {
            rows[r as usize].push((c, v.clone()));
        }
        let aug = (0..m.rows)
            .map(|r| {
                if carry_identity {
                    vec![(r as u32, BigInt::one())]
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c as usize].push(r as u32);
            }
        }
        let col_count = col_rows.iter().map(Vec::len).collect();
        Eliminator {
            rows,
            aug,
            col_rows,
            col_count,
            row_active: vec![true; m.rows],
            col_active: vec![true; m.cols],
            rank: 0,
        }
    }

    fn run(mut self) -> Self {
        loop {
            let Some((pr, pc)) = self.choose_pivot() else {
                break;
            };
            self.eliminate(pr, pc);
            self.rank += 1;
        }
        self
    }

    /// Smallest active column first; inside it prefer unit pivots, then the
    /// Markowitz fill estimate, then magnitude, then row index.
    fn choose_pivot(&mut self) -> Option<(usize, usize)> {
        let mut best_col: Option<(usize, usize)> = None; // (count, col)
        for c in 0..self.col_count.len() {
            if !self.col_active[c] || self.col_count[c] == 0 {
                continue;
            }
            let count = self.col_count[c];
            match best_col {
                None => best_col = Some((count, c)),
                Some((bc, _)) if count < bc => best_col = Some((count, c)),
                _ => {}
            }
            if count == 1 {
                break; // cannot do better
            }
        }
        let (col_count, pc) = best_col?;
        // clean the chosen column list before scanning it
        let (rows, row_active) = (&self.rows, &self.row_active);
        self.col_rows[pc].retain(|&r| {
            row_active[r as usize]
                && rows[r as usize]
                    .binary_search_by_key(&(pc as u32), |e| e.0)
                    .is_ok()
        });
        // a row can be registered twice if it lost and regained this column
        self.col_rows[pc].sort_unstable();
        self.col_rows[pc].dedup();
        debug_assert_eq!(self.col_rows[pc].len(), col_count);
        let mut best: Option<(bool, usize, BigInt, u32)> = None; // (non_unit, cost, |v|, row)
        for &r in &self.col_rows[pc] {
            let row = &self.rows[r as usize];
            let idx = row
                .binary_search_by_key(&(pc as u32), |e| e.0)
                .expect("entry present");
            let v = row[idx].1.abs();
            let non_unit = !v.is_one();
            let cost = (row.len() - 1) * (col_count - 1);
            let cand = (non_unit, cost, v, r);
            let better = match &best {
                None => true,
                Some(b) => cand < *b,
            };
            if better {
                best = Some(cand);
            }
        }
        let (_, _, _, pr) = best?;
        Some((pr as usize, pc))
    }

    fn eliminate(&mut self, pr: usize, pc: usize) {
        let targets: Vec<u32> = self.col_rows[pc]
            .iter()
            .copied()
            .filter(|&r| r as usize != pr)
            .collect();
        let pivot_val = {
            let row = &self.rows[pr];
            let idx = row
                .binary_search_by_key(&(pc as u32), |e| e.0)
                .expect("pivot entry");
            row[idx].1.clone()
        };
        for r in targets {
            let r = r as usize;
            if !self.row_active[r] {
                continue;
            }
            let target_val = {
                let row = &self.rows[r];
                match row.binary_search_by_key(&(pc as u32), |e| e.0) {
                    Ok(idx) => row[idx].1.clone(),
                    Err(_) => continue,
                }
            };
            // row_r := pivot·row_r − target·row_pr, then strip content
            let (alpha, beta) = if (&target_val % &pivot_val).is_zero() {
                (BigInt::one(), -(&target_val / &pivot_val))
            } else {
                (pivot_val.clone(), -target_val)
            };
            let new_left = axpy(&alpha, &self.rows[r], &beta, &self.rows[pr]);
            let new_aug = axpy(&alpha, &self.aug[r], &beta, &self.aug[pr]);
            let (new_left, new_aug) = strip_content(new_left, new_aug);
            self.update_column_index(r, &new_left);
            self.rows[r] = new_left;
            self.aug[r] = new_aug;
        }
        // retire the pivot row and column
        self.row_active[pr] = false;
        for &(c, _) in &self.rows[pr] {
            let c = c as usize;
            if self.col_active[c] {
                self.col_count[c] -= 1;
            }
        }
        self.col_active[pc] = false;
        self.col_count[pc] = 0;
        self.col_rows[pc].clear();
    }

    /// Merge-walk old and new entries of row `r`, keeping `col_count` exact
    /// and registering fill-in in `col_rows`.
    fn update_column_index(&mut self, r: usize, new_left: &SparseRow) {
        let old = &self.rows[r];
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < new_left.len() {
            if j >= new_left.len() || (i < old.len() && old[i].0 < new_left[j].0) {
                let c = old[i].0 as usize;
                if self.col_active[c] {
                    self.col_count[c] -= 1;
                }
                i += 1;
            } else if i >= old.len() || new_left[j].0 < old[i].0 {
                let c = new_left[j].0 as usize;
                if self.col_active[c] {
                    self.col_count[c] += 1;
                    self.col_rows[c].push(r as u32);
                }
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
    }
}

/// `alpha·x + beta·y` on sorted sparse rows.
fn axpy(alpha: &BigInt, x: &SparseRow, beta: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let e = (x[i].0, alpha * &x[i].1);
            i += 1;
            e
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let e = (y[j].0, beta * &y[j].1);
            j += 1;
            e
        } else {
            let e = (x[i].0, alpha * &x[i].1 + beta * &y[j].1);
            i += 1;
            j += 1;
            e
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

fn strip_content(mut left: SparseRow, mut aug: SparseRow) -> (SparseRow, SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in left.iter().chain(aug.iter()) {
        g = g.gcd(v);
        if g.is_one() {
            return (left, aug);
        }
    }
    if g > BigInt::one() {
        for (_, v) in left.iter_mut().chain(aug.iter_mut()) {
            *v = &*v / &g;
        }
    }
    (left, aug)
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfReport {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfReport {
    /// All invariant factors equal to one: the cokernel is free and the
    /// conclusion holds over every base ring.
    pub fn all_ones(&self) -> bool {
        self.invariant_factors.iter().all(|d| d.is_one())
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SnfReport {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; rows];
    for (r, c, v) in m.iter() {
        a[r][c] = v.clone();
    }
    let n = rows.min(cols);
    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = min_nonzero(&a, k) else {
            break;
        };
        a.swap(k, pi);
        swap_cols(&mut a, k, pj);
        // reduce column k then row k; restart when a remainder shrinks the pivot
        let mut clean = true;
        for i in k + 1..rows {
            if a[i][k].is_zero() {
                continue;
            }
            let q = div_nearest(&a[i][k], &a[k][k]);
            for j in k..cols {
                let t = &a[k][j] * &q;
                a[i][j] -= t;
            }
            if !a[i][k].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        for j in k + 1..cols {
            if a[k][j].is_zero() {
                continue;
            }
            let q = div_nearest(&a[k][j], &a[k][k]);
            for i in k..rows {
                let t = &a[i][k] * &q;
                a[i][j] -= t;
            }
            if !a[k][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the submatrix
        let mut offending = None;
        'search: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&a[i][j] % &a[k][k]).is_zero() {
                    offending = Some(i);
                    break 'search;
                }
            }
        }
        if let Some(i) = offending {
            for j in k..cols {
                let t = a[i][j].clone();
                a[k][j] += t;
            }
            continue;
        }
        if a[k][k].is_negative() {
            for j in k..cols {
                a[k][j] = -a[k][j].clone();
            }
        }
        k += 1;
    }
    let invariant_factors: Vec<BigInt> = (0..k).map(|i| a[i][i].clone()).collect();
    debug_assert!(invariant_factors
        .windows(2)
        .all(|w| (&w[1] % &w[0]).is_zero()));
    SnfReport {
        rank: invariant_factors.len(),
        invariant_factors,
    }
}

fn min_nonzero(a: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            match &best {
                None => best = Some((m, i, j)),
                Some((bm, _, _)) if m < *bm => best = Some((m, i, j)),
                _ => {}
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn swap_cols(a: &mut [Vec<BigInt>], j1: usize, j2: usize) {
    if j1 == j2 {
        return;
    }
    for row in a.iter_mut() {
        row.swap(j1, j2);
    }
}

/// Quotient rounded to nearest, so remainders shrink fast.
fn div_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let two_r = r.abs() * BigInt::from(2);
    if two_r > d.abs() {
        if (n.is_negative()) == (d.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rational_rank(m: &SparseIntMatrix) -> usize {
        // independent oracle: dense Gauss over BigRational
        let mut a: Vec<Vec<BigRational>> =
            vec![vec![BigRational::from_integer(BigInt::zero()); m.cols()]; m.rows()];
        for (r, c, v) in m.iter() {
            a[r][c] = BigRational::from_integer(v.clone());
        }
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][col].clone();
            for r in 0..m.rows() {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &inv;
                    for c in col..m.cols() {
                        let t = &a[rank][c] * &f;
                        a[r][c] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn naive_dense_snf(m: &SparseIntMatrix) -> Vec<BigInt> {
        // independent oracle: d_k = gcd of k×k minors divided by gcd of
        // (k−1)×(k−1) minors, via brute-force minor enumeration
        use itertools::Itertools;
        let rows = m.rows();
        let cols = m.cols();
        let mut gcds: Vec<BigInt> = vec![BigInt::zero(); rows.min(cols) + 1];
        gcds[0] = BigInt::one();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for rsel in (0..rows).combinations(k) {
                for csel in (0..cols).combinations(k) {
                    let d = naive_det(&m.select(&rsel, &csel));
                    g = g.gcd(&d);
                }
            }
            gcds[k] = g;
            if gcds[k].is_zero() {
                break;
            }
        }
        let mut out = Vec::new();
        for k in 1..gcds.len() {
            if gcds[k].is_zero() {
                break;
            }
            out.push(&gcds[k] / &gcds[k - 1]);
        }
        out
    }

    fn naive_det(m: &SparseIntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m.get(0, 0);
        }
        let mut det = BigInt::zero();
        for c in 0..n {
            let v = m.get(0, c);
            if v.is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&x| x != c).collect();
            let minor = naive_det(&m.select(&rows, &cols));
            let signed = if c % 2 == 0 { v * minor } else { -v * minor };
            det += signed;
        }
        det
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(SparseIntMatrix::identity(2).rank_exact(), 2);
        assert_eq!(SparseIntMatrix::from_rows(&[vec![1, 1]]).rank_exact(), 1);
        assert_eq!(SparseIntMatrix::zero(3, 4).rank_exact(), 0);
    }

    #[test]
    fn kernel_trivial_cases() {
        assert!(SparseIntMatrix::identity(3).kernel_basis().is_empty());
        let k = SparseIntMatrix::from_rows(&[vec![1, 1]]).kernel_basis_int();
        assert_eq!(k.len(), 1);
        let m = SparseIntMatrix::from_rows(&[vec![1, 1]]);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|x| x.is_zero()));
        // spanning (1, −1) up to scaling
        assert_eq!(k[0][0].abs(), BigInt::one());
        assert_eq!(k[0][0], -k[0][1].clone());
    }

    #[test]
    fn kernel_of_zero_rows() {
        let m = SparseIntMatrix::zero(0, 3);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn multiply_examples() {
        let m = SparseIntMatrix::from_rows(&[vec![1, 2], vec![3, 4], vec![0, 5]]);
        let id = SparseIntMatrix::identity(2);
        assert_eq!(id.multiply(&m.transpose()).unwrap(), m.transpose());
        let z = SparseIntMatrix::zero(2, 4);
        assert!(m.multiply(&z).unwrap().is_zero());
        assert!(m.multiply(&SparseIntMatrix::identity(3)).is_err());
    }

    #[test]
    fn snf_examples() {
        let d = SparseIntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let r = d.smith_normal_form();
        assert_eq!(r.invariant_factors, vec![BigInt::one(), BigInt::from(6)]);
        let id = SparseIntMatrix::identity(4).smith_normal_form();
        assert_eq!(id.rank, 4);
        assert!(id.all_ones());
    }

    #[test]
    fn snf_against_minor_gcd_oracle() {
        let cases = [
            vec![vec![-6, 111, -36, 6], vec![5, -672, 210, 74], vec![0, -255, 81, 24], vec![-7, 255, -81, -10]],
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]],
            vec![vec![1, 2, 3], vec![4, 5, 6]],
            vec![vec![0, 0], vec![0, 0]],
        ];
        for rows in cases {
            let m = SparseIntMatrix::from_rows(&rows);
            let got = m.smith_normal_form();
            assert_eq!(got.invariant_factors, naive_dense_snf(&m), "snf of {rows:?}");
            assert_eq!(got.rank, m.rank_exact());
        }
    }

    #[test]
    fn rank_and_kernel_match_naive_elimination_on_random_sparse() {
        // deterministic pseudo-random sparse matrices up to 50×50
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..24 {
            let rows = 1 + (next() % 50) as usize;
            let cols = 1 + (next() % 50) as usize;
            let mut m = SparseIntMatrix::zero(rows, cols);
            let fill = 1 + (rows * cols) / 8;
            for _ in 0..fill {
                let r = (next() % rows as u64) as usize;
                let c = (next() % cols as u64) as usize;
                let v = (next() % 19) as i64 - 9;
                m.set(r, c, BigInt::from(v)).unwrap();
            }
            let rank = m.rank_exact();
            assert_eq!(rank, naive_rational_rank(&m), "trial {trial}");
            let kernel = m.kernel_basis_int();
            assert_eq!(kernel.len(), cols - rank, "kernel dimension, trial {trial}");
            for v in &kernel {
                assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
            }
            // kernel vectors are linearly independent
            let kmat = SparseIntMatrix::from_triplets(
                cols,
                kernel.len(),
                kernel.iter().enumerate().flat_map(|(j, v)| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(move |(i, x)| (i, j, x.clone()))
                        .collect::<Vec<_>>()
                }),
            )
            .unwrap();
            assert_eq!(kmat.rank_exact(), kernel.len());
        }
    }

    #[test]
    fn rank_matches_snf_rank() {
        let m = SparseIntMatrix::from_rows(&[vec![2, 4, 6], vec![1, 2, 3], vec![0, 0, 5]]);
        assert_eq!(m.rank_exact(), m.smith_normal_form().rank);
    }
}
