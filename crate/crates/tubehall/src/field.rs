//! Exact arithmetic and dense linear algebra over prime fields F_p.
//!
//! Everything downstream (Hom spaces, Ext cocycles, Hall counting) reduces to
//! the primitives here: rank, kernel bases, solving, and enumerating the
//! points of a subspace. All arithmetic is exact; row reduction uses
//! first-nonzero pivoting so results are deterministic.

use crate::error::{Error, Result};

/// A prime field F_p. Primality is checked at construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Canonical representative of a signed integer.
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// A generator of the cyclic group F_p^x.
    pub fn primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        for g in 2..self.p {
            if factors.iter().all(|&f| self.pow(g, order / f) != 1) {
                return g;
            }
        }
        unreachable!("no primitive root found for prime {}", self.p)
    }
}

/// A dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from signed row data, reducing entries mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged row data".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            for &v in row {
                entries.push(field.reduce(v));
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.field.p);
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch in matrix product");
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, t: u64) -> Matrix {
        let f = self.field;
        let entries = self.entries.iter().map(|&a| f.mul(a, t)).collect();
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &x) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(self.at(i, j), x));
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    /// Columns of `self` stacked as a list of coordinate vectors.
    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(field: PrimeField, len: usize, cols: &[Vec<u64>]) -> Matrix {
        let mut m = Matrix::zeros(field, len, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), len);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// In-place Gauss-Jordan elimination. Returns pivot columns; afterwards the
    /// matrix is in reduced row-echelon form.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    let a = self.at(row, j);
                    let b = self.at(pr, j);
                    self.set(row, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.inv(self.at(row, col));
            for j in 0..self.cols {
                let v = f.mul(self.at(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let factor = self.at(r, col);
                    for j in 0..self.cols {
                        let v = f.sub(self.at(r, j), f.mul(factor, self.at(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank over F_p.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// A basis of {v : Mv = 0}, as coordinate columns. The list has
    /// cols - rank entries, one per free column, in ascending column order.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.at(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of Mx = b, or None when the system is
    /// inconsistent. The length of `b` must equal the row count.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: rhs length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let solver = SpanSolver::new(self.field, self.rows, &self.columns());
        Ok(solver.coordinates(b))
    }
}

/// Yields all p^k linear combinations of the basis columns exactly once, in
/// lexicographic coefficient order (first coefficient most significant).
pub fn enumerate_space<'a>(
    field: PrimeField,
    basis: &'a [Vec<u64>],
    len: usize,
) -> impl Iterator<Item = Vec<u64>> + 'a {
    for b in basis {
        assert_eq!(b.len(), len, "basis columns must share one length");
    }
    let p = field.modulus();
    let k = basis.len() as u32;
    let total = p.checked_pow(k).expect("space too large to enumerate");
    (0..total).map(move |idx| {
        let mut v = vec![0u64; len];
        let mut rem = idx;
        for j in (0..basis.len()).rev() {
            let c = rem % p;
            rem /= p;
            if c != 0 {
                for (t, &x) in basis[j].iter().enumerate() {
                    v[t] = field.add(v[t], field.mul(c, x));
                }
            }
        }
        v
    })
}

/// Precomputed elimination data for expressing vectors in the span of a fixed
/// list of columns. Used wherever coordinates with respect to a computed basis
/// are extracted repeatedly.
pub struct SpanSolver {
    len: usize,
    ncols: usize,
    rank: usize,
    /// Elimination matrix E with E * A in reduced row-echelon form.
    elim: Matrix,
    /// pivots[r] = column of A holding the pivot of row r.
    pivots: Vec<usize>,
}

impl SpanSolver {
    pub fn new(field: PrimeField, len: usize, columns: &[Vec<u64>]) -> Self {
        let ncols = columns.len();
        // Augment [A | I] and reduce; the right block records the operations.
        let mut m = Matrix::zeros(field, len, ncols + len);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        for i in 0..len {
            m.set(i, ncols + i, 1);
        }
        let f = field;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..ncols {
            if row == len {
                break;
            }
            let Some(pr) = (row..len).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols() {
                    let a = m.at(row, j);
                    let b = m.at(pr, j);
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.at(row, col));
            for j in 0..m.cols() {
                let v = f.mul(m.at(row, j), inv);
                m.set(row, j, v);
            }
            for r in 0..len {
                if r != row && m.at(r, col) != 0 {
                    let factor = m.at(r, col);
                    for j in 0..m.cols() {
                        let v = f.sub(m.at(r, j), f.mul(factor, m.at(row, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        let mut elim = Matrix::zeros(field, len, len);
        for i in 0..len {
            for j in 0..len {
                elim.set(i, j, m.at(i, ncols + j));
            }
        }
        SpanSolver {
            len,
            ncols,
            rank,
            elim,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coordinates x with A x = v, or None when v is outside the span.
    /// Free coordinates are set to zero.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.len);
        let w = self.elim.apply(v);
        if w[self.rank..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0u64; self.ncols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = w[r];
        }
        Some(x)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Greedily selects, from `candidates`, a subset extending `seed` to an
/// independent family; returns the indices chosen. Deterministic: candidates
/// are scanned in order. Maintains an incremental echelon basis, so each
/// candidate costs one reduction pass.
pub fn greedy_extend(
    field: PrimeField,
    len: usize,
    seed: &[Vec<u64>],
    candidates: &[Vec<u64>],
) -> Vec<usize> {
    // each stored pivot vector is reduced against all earlier pivots, so one
    // in-order pass leaves a fresh vector with zeros at every pivot column
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let insert = |v: &[u64], pivots: &mut Vec<(usize, Vec<u64>)>| -> bool {
        let mut w = v.to_vec();
        for (pc, pv) in pivots.iter() {
            let c = w[*pc];
            if c != 0 {
                for t in 0..len {
                    w[t] = field.sub(w[t], field.mul(c, pv[t]));
                }
            }
        }
        if let Some(pc) = w.iter().position(|&x| x != 0) {
            let inv = field.inv(w[pc]);
            for t in 0..len {
                w[t] = field.mul(w[t], inv);
            }
            pivots.push((pc, w));
            true
        } else {
            false
        }
    };
    for s in seed {
        insert(s, &mut pivots);
    }
    let mut idx = Vec::new();
    for (i, cand) in candidates.iter().enumerate() {
        if insert(cand, &mut pivots) {
            idx.push(i);
        }
    }
    idx
}
