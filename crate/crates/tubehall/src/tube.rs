//! The abelian category T_n of finite-dimensional nilpotent representations
//! of the cyclic quiver with n vertices over a prime field.
//!
//! Vertices are labeled 1..=n with arrows a_i : i -> i+1 (indices mod n).
//! The indecomposable with socle vertex s and length l has basis
//! b_0, ..., b_{l-1} with b_j sitting at vertex s - j (mod n) and arrow
//! action b_j -> b_{j-1}; its socle is the simple at s.

use crate::error::{Error, Result};
use crate::field::{greedy_extend, enumerate_space, Matrix, PrimeField, SpanSolver};

/// The cyclic quiver with n vertices.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct CyclicQuiver {
    n: usize,
}

impl CyclicQuiver {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "cyclic quiver needs at least one vertex");
        CyclicQuiver { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn next(&self, v: usize) -> usize {
        (v + 1) % self.n
    }
}

/// Label of an indecomposable tube object: socle vertex (1-based) and length.
///
/// Canonical order is by (length, socle), so serialized multisets are
/// deterministic. For n = 2 the signed rendering is +len for socle 1 and
/// -len for socle 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct IndecLabel {
    len: usize,
    socle: usize,
}

impl IndecLabel {
    pub fn new(socle: usize, len: usize) -> Self {
        assert!(len >= 1, "indecomposable length must be positive");
        assert!(socle >= 1, "socle vertex is 1-based");
        IndecLabel { len, socle }
    }

    pub fn socle(&self) -> usize {
        self.socle
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Signed rendering for n <= 2: socle 1 -> +len, socle 2 -> -len.
    pub fn to_signed(&self) -> i64 {
        match self.socle {
            1 => self.len as i64,
            2 => -(self.len as i64),
            _ => panic!("signed labels only exist for n <= 2"),
        }
    }

    pub fn from_signed(m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidLabel("label must be nonzero".into()));
        }
        let socle = if m > 0 { 1 } else { 2 };
        Ok(IndecLabel::new(socle, m.unsigned_abs() as usize))
    }
}

/// AR translation on labels: socle shifts down by one, length is preserved.
pub fn ar_translate(quiver: CyclicQuiver, label: IndecLabel) -> IndecLabel {
    let s = label.socle();
    let s2 = if s == 1 { quiver.n() } else { s - 1 };
    IndecLabel::new(s2, label.len())
}

pub fn ar_translate_inv(quiver: CyclicQuiver, label: IndecLabel) -> IndecLabel {
    let s = label.socle();
    let s2 = if s == quiver.n() { 1 } else { s + 1 };
    IndecLabel::new(s2, label.len())
}

/// A nilpotent representation: per-vertex dimensions and arrow matrices.
/// maps[i] is the matrix of a_{i+1} : M_{i+1} -> M_{i+2} in 1-based terms;
/// internally vertex i is 0-based and maps[i] : M_i -> M_{i+1 mod n}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilpRep {
    quiver: CyclicQuiver,
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl NilpRep {
    pub fn new(
        quiver: CyclicQuiver,
        field: PrimeField,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        let n = quiver.n();
        if dims.len() != n || maps.len() != n {
            return Err(Error::DimensionMismatch(
                "dims/maps must have one entry per vertex".into(),
            ));
        }
        for i in 0..n {
            let (r, c) = (maps[i].rows(), maps[i].cols());
            if r != dims[quiver.next(i)] || c != dims[i] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} has shape {}x{}, expected {}x{}",
                    i + 1,
                    r,
                    c,
                    dims[quiver.next(i)],
                    dims[i]
                )));
            }
        }
        let rep = NilpRep {
            quiver,
            field,
            dims,
            maps,
        };
        if !rep.is_nilpotent() {
            return Err(Error::InvalidParameter(
                "representation is not nilpotent".into(),
            ));
        }
        Ok(rep)
    }

    pub fn zero(quiver: CyclicQuiver, field: PrimeField) -> Self {
        let n = quiver.n();
        let maps = (0..n).map(|_| Matrix::zeros(field, 0, 0)).collect();
        NilpRep {
            quiver,
            field,
            dims: vec![0; n],
            maps,
        }
    }

    pub fn quiver(&self) -> CyclicQuiver {
        self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, i: usize) -> &Matrix {
        &self.maps[i]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_rep(&self) -> bool {
        self.total_dim() == 0
    }

    fn is_nilpotent(&self) -> bool {
        let d = self.total_dim();
        let n = self.quiver.n();
        for start in 0..n {
            let mut acc = Matrix::identity(self.field, self.dims[start]);
            let mut v = start;
            for _ in 0..d {
                acc = self.maps[v].mul(&acc);
                v = self.quiver.next(v);
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn direct_sum(&self, other: &NilpRep) -> Result<NilpRep> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch(self.quiver.n(), other.quiver.n()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        let n = self.quiver.n();
        let dims: Vec<usize> = (0..n).map(|i| self.dims[i] + other.dims[i]).collect();
        let mut maps = Vec::with_capacity(n);
        for i in 0..n {
            let t = self.quiver.next(i);
            let mut m = Matrix::zeros(self.field, dims[t], dims[i]);
            for r in 0..self.dims[t] {
                for c in 0..self.dims[i] {
                    m.set(r, c, self.maps[i].at(r, c));
                }
            }
            for r in 0..other.dims[t] {
                for c in 0..other.dims[i] {
                    m.set(self.dims[t] + r, self.dims[i] + c, other.maps[i].at(r, c));
                }
            }
            maps.push(m);
        }
        NilpRep::new(self.quiver, self.field, dims, maps)
    }
}

/// Builds the unique indecomposable with the given socle vertex and length.
pub fn build_indec(quiver: CyclicQuiver, field: PrimeField, label: IndecLabel) -> NilpRep {
    let n = quiver.n();
    assert!(label.socle() <= n, "socle vertex out of range");
    let s0 = label.socle() - 1; // 0-based socle vertex
    let l = label.len();
    let vertex_of = |j: usize| (s0 + n - (j % n)) % n;
    let mut dims = vec![0usize; n];
    let mut pos = vec![0usize; l];
    for j in 0..l {
        let v = vertex_of(j);
        pos[j] = dims[v];
        dims[v] += 1;
    }
    let mut maps: Vec<Matrix> = (0..n)
        .map(|i| Matrix::zeros(field, dims[quiver.next(i)], dims[i]))
        .collect();
    for j in 1..l {
        let v = vertex_of(j); // b_j lives here; arrow a_v sends it to b_{j-1}
        maps[v].set(pos[j - 1], pos[j], 1);
    }
    NilpRep {
        quiver,
        field,
        dims,
        maps,
    }
}

/// The canonical nilpotent endomorphism of an indecomposable built by
/// `build_indec`: b_j -> b_{j - n*power}. Power 0 gives the identity;
/// the powers 1..ceil(l/n)-1 span the radical of End.
pub fn chain_endo(quiver: CyclicQuiver, field: PrimeField, label: IndecLabel, power: usize) -> RepMorphism {
    let rep = build_indec(quiver, field, label);
    let n = quiver.n();
    let s0 = label.socle() - 1;
    let l = label.len();
    let vertex_of = |j: usize| (s0 + n - (j % n)) % n;
    let mut pos = vec![0usize; l];
    let mut fill = vec![0usize; n];
    for j in 0..l {
        let v = vertex_of(j);
        pos[j] = fill[v];
        fill[v] += 1;
    }
    let mut comps: Vec<Matrix> = (0..n)
        .map(|i| Matrix::zeros(field, rep.dims[i], rep.dims[i]))
        .collect();
    let drop = n * power;
    for j in drop..l {
        let v = vertex_of(j); // target b_{j-drop} lives at the same vertex
        comps[v].set(pos[j - drop], pos[j], 1);
    }
    RepMorphism {
        source: rep.clone(),
        target: rep,
        comps,
    }
}

/// A morphism of representations: per-vertex matrices satisfying the
/// commuting-square constraints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepMorphism {
    source: NilpRep,
    target: NilpRep,
    comps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn new(source: NilpRep, target: NilpRep, comps: Vec<Matrix>) -> Result<Self> {
        let m = RepMorphism {
            source,
            target,
            comps,
        };
        if !m.commutes() {
            return Err(Error::InvalidParameter(
                "components do not satisfy the commuting squares".into(),
            ));
        }
        Ok(m)
    }

    pub fn zero(source: NilpRep, target: NilpRep) -> Self {
        let n = source.quiver.n();
        let comps = (0..n)
            .map(|i| Matrix::zeros(source.field, target.dims[i], source.dims[i]))
            .collect();
        RepMorphism {
            source,
            target,
            comps,
        }
    }

    pub fn identity(rep: &NilpRep) -> Self {
        let comps = (0..rep.quiver.n())
            .map(|i| Matrix::identity(rep.field, rep.dims[i]))
            .collect();
        RepMorphism {
            source: rep.clone(),
            target: rep.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &NilpRep {
        &self.source
    }

    pub fn target(&self) -> &NilpRep {
        &self.target
    }

    pub fn comp(&self, i: usize) -> &Matrix {
        &self.comps[i]
    }

    pub fn commutes(&self) -> bool {
        let n = self.source.quiver.n();
        (0..n).all(|i| {
            let t = self.source.quiver.next(i);
            self.target.maps[i].mul(&self.comps[i]) == self.comps[t].mul(&self.source.maps[i])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    pub fn compose(&self, inner: &RepMorphism) -> Result<RepMorphism> {
        if inner.target.dims != self.source.dims {
            return Err(Error::NotComposable);
        }
        let comps = self
            .comps
            .iter()
            .zip(&inner.comps)
            .map(|(g, f)| g.mul(f))
            .collect();
        Ok(RepMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn scale(&self, t: u64) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|m| m.scale(t)).collect(),
        }
    }
}

/// Rotates a representation one step against the arrows: (tau M)_i = M_{i+1}.
/// On labels this is the AR translation (socle - 1).
pub fn tau_rep(rep: &NilpRep) -> NilpRep {
    let n = rep.quiver.n();
    let dims: Vec<usize> = (0..n).map(|i| rep.dims[(i + 1) % n]).collect();
    let maps: Vec<Matrix> = (0..n).map(|i| rep.maps[(i + 1) % n].clone()).collect();
    NilpRep {
        quiver: rep.quiver,
        field: rep.field,
        dims,
        maps,
    }
}

pub fn tau_inv_rep(rep: &NilpRep) -> NilpRep {
    let n = rep.quiver.n();
    let dims: Vec<usize> = (0..n).map(|i| rep.dims[(i + n - 1) % n]).collect();
    let maps: Vec<Matrix> = (0..n).map(|i| rep.maps[(i + n - 1) % n].clone()).collect();
    NilpRep {
        quiver: rep.quiver,
        field: rep.field,
        dims,
        maps,
    }
}

pub fn tau_inv_mor(f: &RepMorphism) -> RepMorphism {
    let n = f.source.quiver.n();
    let comps: Vec<Matrix> = (0..n).map(|i| f.comps[(i + n - 1) % n].clone()).collect();
    RepMorphism {
        source: tau_inv_rep(&f.source),
        target: tau_inv_rep(&f.target),
        comps,
    }
}

/// A 1-cocycle representing an element of Ext^1(M, N): per-arrow components
/// c_i : M_i -> N_{i+1}, taken modulo coboundaries c_i = n_i h_i - h_{i+1} m_i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtCocycle {
    source: NilpRep,
    target: NilpRep,
    comps: Vec<Matrix>,
}

impl ExtCocycle {
    pub fn new(source: NilpRep, target: NilpRep, comps: Vec<Matrix>) -> Result<Self> {
        let q = source.quiver;
        if comps.len() != q.n() {
            return Err(Error::DimensionMismatch(
                "one cocycle component per arrow".into(),
            ));
        }
        for (i, c) in comps.iter().enumerate() {
            if c.rows() != target.dims[q.next(i)] || c.cols() != source.dims[i] {
                return Err(Error::DimensionMismatch(format!(
                    "cocycle component {} has shape {}x{}, expected {}x{}",
                    i + 1,
                    c.rows(),
                    c.cols(),
                    target.dims[q.next(i)],
                    source.dims[i]
                )));
            }
        }
        Ok(ExtCocycle {
            source,
            target,
            comps,
        })
    }

    pub fn zero(source: NilpRep, target: NilpRep) -> Self {
        let n = source.quiver.n();
        let q = source.quiver;
        let comps = (0..n)
            .map(|i| Matrix::zeros(source.field, target.dims[q.next(i)], source.dims[i]))
            .collect();
        ExtCocycle {
            source,
            target,
            comps,
        }
    }

    pub fn source(&self) -> &NilpRep {
        &self.source
    }

    pub fn target(&self) -> &NilpRep {
        &self.target
    }

    pub fn comp(&self, i: usize) -> &Matrix {
        &self.comps[i]
    }

    pub fn is_zero_cocycle(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    pub fn add(&self, other: &ExtCocycle) -> ExtCocycle {
        ExtCocycle {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, t: u64) -> ExtCocycle {
        ExtCocycle {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|m| m.scale(t)).collect(),
        }
    }

    /// Pullback along a : X -> M, i.e. the restriction of the extension.
    pub fn precompose(&self, a: &RepMorphism) -> ExtCocycle {
        let comps = self
            .comps
            .iter()
            .zip(&a.comps)
            .map(|(c, ai)| c.mul(ai))
            .collect();
        ExtCocycle {
            source: a.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    /// Pushout along b : N -> Y.
    pub fn postcompose(&self, b: &RepMorphism) -> ExtCocycle {
        let q = self.source.quiver;
        let n = q.n();
        let comps = (0..n)
            .map(|i| b.comps[q.next(i)].mul(&self.comps[i]))
            .collect();
        ExtCocycle {
            source: self.source.clone(),
            target: b.target.clone(),
            comps,
        }
    }
}

fn check_pair(m: &NilpRep, n: &NilpRep) -> Result<()> {
    if m.quiver != n.quiver {
        return Err(Error::QuiverMismatch(m.quiver.n(), n.quiver.n()));
    }
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field.modulus(), n.field.modulus()));
    }
    Ok(())
}

/// Offsets of the flattened per-vertex matrix coordinates used by the Hom and
/// Ext linear systems.
fn block_offsets(rows: &[usize], cols: &[usize]) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(rows.len());
    let mut total = 0;
    for i in 0..rows.len() {
        offs.push(total);
        total += rows[i] * cols[i];
    }
    (offs, total)
}

/// A basis of Hom(M, N), from the kernel of the commuting-square system.
pub fn hom_basis(m: &NilpRep, n: &NilpRep) -> Result<Vec<RepMorphism>> {
    check_pair(m, n)?;
    let q = m.quiver;
    let nv = q.n();
    let f = m.field;
    let rows_per: Vec<usize> = (0..nv).map(|i| n.dims[i]).collect();
    let cols_per: Vec<usize> = (0..nv).map(|i| m.dims[i]).collect();
    let (offs, nvars) = block_offsets(&rows_per, &cols_per);
    // Equations: n_i phi_i - phi_{i+1} m_i = 0 for each arrow i.
    let mut eq_rows = 0;
    for i in 0..nv {
        eq_rows += n.dims[q.next(i)] * m.dims[i];
    }
    let mut sys = Matrix::zeros(f, eq_rows, nvars);
    let mut row0 = 0;
    for i in 0..nv {
        let t = q.next(i);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[i] {
                let row = row0 + r * m.dims[i] + c;
                // n_i phi_i term: sum_k n_i[r,k] phi_i[k,c]
                for k in 0..n.dims[i] {
                    let coef = n.maps[i].at(r, k);
                    if coef != 0 {
                        let var = offs[i] + k * m.dims[i] + c;
                        sys.set(row, var, f.add(sys.at(row, var), coef));
                    }
                }
                // - phi_{i+1} m_i term: sum_k phi_{t}[r,k] m_i[k,c]
                for k in 0..m.dims[t] {
                    let coef = m.maps[i].at(k, c);
                    if coef != 0 {
                        let var = offs[t] + r * m.dims[t] + k;
                        sys.set(row, var, f.sub(sys.at(row, var), coef));
                    }
                }
            }
        }
        row0 += n.dims[t] * m.dims[i];
    }
    let kernel = sys.kernel_basis();
    let mut out = Vec::with_capacity(kernel.len());
    for v in kernel {
        let comps = unflatten(f, &v, &rows_per, &cols_per, &offs);
        out.push(RepMorphism {
            source: m.clone(),
            target: n.clone(),
            comps,
        });
    }
    Ok(out)
}

fn unflatten(
    f: PrimeField,
    v: &[u64],
    rows_per: &[usize],
    cols_per: &[usize],
    offs: &[usize],
) -> Vec<Matrix> {
    (0..rows_per.len())
        .map(|i| {
            let mut mat = Matrix::zeros(f, rows_per[i], cols_per[i]);
            for r in 0..rows_per[i] {
                for c in 0..cols_per[i] {
                    mat.set(r, c, v[offs[i] + r * cols_per[i] + c]);
                }
            }
            mat
        })
        .collect()
}

pub fn flatten_mor(f: &RepMorphism) -> Vec<u64> {
    let mut v = Vec::new();
    for m in &f.comps {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                v.push(m.at(r, c));
            }
        }
    }
    v
}

pub fn flatten_cocycle(c: &ExtCocycle) -> Vec<u64> {
    let mut v = Vec::new();
    for m in &c.comps {
        for r in 0..m.rows() {
            for cc in 0..m.cols() {
                v.push(m.at(r, cc));
            }
        }
    }
    v
}

/// Linear data for working with Ext^1(M, N) as cocycles mod coboundaries.
pub struct ExtContext {
    source: NilpRep,
    target: NilpRep,
    rows_per: Vec<usize>,
    cols_per: Vec<usize>,
    offs: Vec<usize>,
    cocycle_len: usize,
    /// chosen standard-unit representatives, as flattened vectors
    basis_flat: Vec<Vec<u64>>,
    /// columns: [basis ... | coboundary image basis ...]
    solver: SpanSolver,
}

impl ExtContext {
    pub fn new(m: &NilpRep, n: &NilpRep) -> Result<Self> {
        check_pair(m, n)?;
        let q = m.quiver;
        let nv = q.n();
        let f = m.field;
        let rows_per: Vec<usize> = (0..nv).map(|i| n.dims[q.next(i)]).collect();
        let cols_per: Vec<usize> = (0..nv).map(|i| m.dims[i]).collect();
        let (offs, clen) = block_offsets(&rows_per, &cols_per);
        // Coboundary map delta(h)_i = n_i h_i - h_{i+1} m_i, h_i : M_i -> N_i.
        let h_rows: Vec<usize> = (0..nv).map(|i| n.dims[i]).collect();
        let h_cols: Vec<usize> = (0..nv).map(|i| m.dims[i]).collect();
        let (h_offs, hvars) = block_offsets(&h_rows, &h_cols);
        let mut delta = Matrix::zeros(f, clen, hvars);
        for i in 0..nv {
            let t = q.next(i);
            for r in 0..n.dims[t] {
                for c in 0..m.dims[i] {
                    let row = offs[i] + r * m.dims[i] + c;
                    for k in 0..n.dims[i] {
                        let coef = n.maps[i].at(r, k);
                        if coef != 0 {
                            let var = h_offs[i] + k * m.dims[i] + c;
                            delta.set(row, var, f.add(delta.at(row, var), coef));
                        }
                    }
                    for k in 0..m.dims[t] {
                        let coef = m.maps[i].at(k, c);
                        if coef != 0 {
                            let var = h_offs[t] + r * m.dims[t] + k;
                            delta.set(row, var, f.sub(delta.at(row, var), coef));
                        }
                    }
                }
            }
        }
        // Independent columns of delta span the coboundaries.
        let all_cols = delta.columns();
        let cob_idx = greedy_extend(f, clen, &[], &all_cols);
        let cob_basis: Vec<Vec<u64>> = cob_idx.iter().map(|&i| all_cols[i].clone()).collect();
        // Standard unit cocycles completing the coboundaries to all of the
        // cocycle space; their classes are the chosen Ext basis.
        let units: Vec<Vec<u64>> = (0..clen)
            .map(|k| {
                let mut v = vec![0u64; clen];
                v[k] = 1;
                v
            })
            .collect();
        let unit_idx = greedy_extend(f, clen, &cob_basis, &units);
        let basis_flat: Vec<Vec<u64>> = unit_idx.iter().map(|&k| units[k].clone()).collect();
        let mut cols: Vec<Vec<u64>> = basis_flat.clone();
        cols.extend(cob_basis);
        let solver = SpanSolver::new(f, clen, &cols);
        Ok(ExtContext {
            source: m.clone(),
            target: n.clone(),
            rows_per,
            cols_per,
            offs,
            cocycle_len: clen,
            basis_flat,
            solver,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis_flat.len()
    }

    pub fn cocycle_len(&self) -> usize {
        self.cocycle_len
    }

    pub fn basis(&self) -> Vec<ExtCocycle> {
        self.basis_flat
            .iter()
            .map(|v| self.cocycle_from_flat(v))
            .collect()
    }

    pub fn cocycle_from_flat(&self, v: &[u64]) -> ExtCocycle {
        let comps = unflatten(
            self.source.field,
            v,
            &self.rows_per,
            &self.cols_per,
            &self.offs,
        );
        ExtCocycle {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    /// Class coordinates of a cocycle with respect to the chosen basis.
    pub fn class_coordinates(&self, c: &ExtCocycle) -> Vec<u64> {
        let flat = flatten_cocycle(c);
        let coords = self
            .solver
            .coordinates(&flat)
            .expect("cocycle space coordinates must exist");
        coords[..self.basis_flat.len()].to_vec()
    }

    /// Builds the cocycle sum_j coeffs[j] * basis[j].
    pub fn combination(&self, coeffs: &[u64]) -> ExtCocycle {
        let f = self.source.field;
        let mut flat = vec![0u64; self.cocycle_len];
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (t, &x) in self.basis_flat[j].iter().enumerate() {
                    flat[t] = f.add(flat[t], f.mul(c, x));
                }
            }
        }
        self.cocycle_from_flat(&flat)
    }
}

/// A basis of Ext^1(M, N) as chosen cocycle representatives.
pub fn ext_basis(m: &NilpRep, n: &NilpRep) -> Result<Vec<ExtCocycle>> {
    Ok(ExtContext::new(m, n)?.basis())
}

/// The middle term of the extension represented by a cocycle, with the
/// canonical inclusion of N and projection onto M. Arrow maps are the block
/// triangular [[n_i, c_i], [0, m_i]], which is automatically nilpotent.
pub fn extension_middle(c: &ExtCocycle) -> (NilpRep, RepMorphism, RepMorphism) {
    let m = &c.source;
    let n = &c.target;
    let q = m.quiver;
    let nv = q.n();
    let f = m.field;
    let dims: Vec<usize> = (0..nv).map(|i| n.dims[i] + m.dims[i]).collect();
    let mut maps = Vec::with_capacity(nv);
    for i in 0..nv {
        let t = q.next(i);
        let mut mat = Matrix::zeros(f, dims[t], dims[i]);
        for r in 0..n.dims[t] {
            for cc in 0..n.dims[i] {
                mat.set(r, cc, n.maps[i].at(r, cc));
            }
            for cc in 0..m.dims[i] {
                mat.set(r, n.dims[i] + cc, c.comps[i].at(r, cc));
            }
        }
        for r in 0..m.dims[t] {
            for cc in 0..m.dims[i] {
                mat.set(n.dims[t] + r, n.dims[i] + cc, m.maps[i].at(r, cc));
            }
        }
        maps.push(mat);
    }
    let e = NilpRep {
        quiver: q,
        field: f,
        dims,
        maps,
    };
    let mut incl_comps = Vec::with_capacity(nv);
    let mut proj_comps = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut inc = Matrix::zeros(f, e.dims[i], n.dims[i]);
        for r in 0..n.dims[i] {
            inc.set(r, r, 1);
        }
        incl_comps.push(inc);
        let mut prj = Matrix::zeros(f, m.dims[i], e.dims[i]);
        for r in 0..m.dims[i] {
            prj.set(r, n.dims[i] + r, 1);
        }
        proj_comps.push(prj);
    }
    let incl = RepMorphism {
        source: n.clone(),
        target: e.clone(),
        comps: incl_comps,
    };
    let proj = RepMorphism {
        source: e.clone(),
        target: m.clone(),
        comps: proj_comps,
    };
    (e, incl, proj)
}

/// Recovers a connecting cocycle from a short exact sequence
/// 0 -> N --incl--> E --proj--> M -> 0, by choosing a linear section of proj.
pub fn ext_from_ses(incl: &RepMorphism, proj: &RepMorphism) -> Result<ExtCocycle> {
    let n_rep = incl.source.clone();
    let e_rep = incl.target.clone();
    let m_rep = proj.target.clone();
    if proj.source.dims != e_rep.dims {
        return Err(Error::NotComposable);
    }
    let q = e_rep.quiver;
    let nv = q.n();
    let f = e_rep.field;
    // sections sigma_i with proj_i sigma_i = id
    let mut sigma = Vec::with_capacity(nv);
    for i in 0..nv {
        let cols: Vec<Vec<u64>> = (0..m_rep.dims[i])
            .map(|k| {
                let mut b = vec![0u64; m_rep.dims[i]];
                b[k] = 1;
                proj.comps[i]
                    .solve(&b)
                    .expect("shape checked")
                    .expect("projection must be surjective")
            })
            .collect();
        sigma.push(Matrix::from_columns(f, e_rep.dims[i], &cols));
    }
    // d_i = e-arrow . sigma_i - sigma_{i+1} . m-arrow lands in im(incl_{i+1})
    let mut comps = Vec::with_capacity(nv);
    for i in 0..nv {
        let t = q.next(i);
        let d = e_rep.maps[i]
            .mul(&sigma[i])
            .sub(&sigma[t].mul(&m_rep.maps[i]));
        let cols: Vec<Vec<u64>> = (0..d.cols())
            .map(|k| {
                incl.comps[t]
                    .solve(&d.column(k))
                    .expect("shape checked")
                    .expect("connecting data must land in the image of incl")
            })
            .collect();
        comps.push(Matrix::from_columns(f, n_rep.dims[t], &cols));
    }
    Ok(ExtCocycle {
        source: m_rep,
        target: n_rep,
        comps,
    })
}

/// Kernel and cokernel of a morphism with their structural maps.
pub struct KernelCokernel {
    pub kernel: NilpRep,
    pub incl: RepMorphism,
    pub cokernel: NilpRep,
    pub proj: RepMorphism,
}

pub fn kernel_cokernel(f: &RepMorphism) -> KernelCokernel {
    let src = &f.source;
    let tgt = &f.target;
    let q = src.quiver;
    let nv = q.n();
    let fld = src.field;

    // Vertex-wise kernel bases.
    let kbases: Vec<Vec<Vec<u64>>> = (0..nv).map(|i| f.comps[i].kernel_basis()).collect();
    let kdims: Vec<usize> = kbases.iter().map(|b| b.len()).collect();
    let kmats: Vec<Matrix> = (0..nv)
        .map(|i| Matrix::from_columns(fld, src.dims[i], &kbases[i]))
        .collect();
    let mut kmaps = Vec::with_capacity(nv);
    for i in 0..nv {
        let t = q.next(i);
        // solve K_{t} X = m_i K_i column by column
        let rhs = src.maps[i].mul(&kmats[i]);
        let cols: Vec<Vec<u64>> = (0..rhs.cols())
            .map(|k| {
                kmats[t]
                    .solve(&rhs.column(k))
                    .expect("shape checked")
                    .expect("arrow maps preserve kernels")
            })
            .collect();
        kmaps.push(Matrix::from_columns(fld, kdims[t], &cols));
    }
    let kernel = NilpRep {
        quiver: q,
        field: fld,
        dims: kdims,
        maps: kmaps,
    };
    let incl = RepMorphism {
        source: kernel.clone(),
        target: src.clone(),
        comps: kmats,
    };

    // Vertex-wise cokernels via standard-basis completion of the image.
    let mut cdims = Vec::with_capacity(nv);
    let mut projs = Vec::with_capacity(nv);
    let mut injs = Vec::with_capacity(nv); // complement injections, for arrows
    for i in 0..nv {
        let img_cols = f.comps[i].columns();
        let img_idx = greedy_extend(fld, tgt.dims[i], &[], &img_cols);
        let img_basis: Vec<Vec<u64>> = img_idx.iter().map(|&k| img_cols[k].clone()).collect();
        let units: Vec<Vec<u64>> = (0..tgt.dims[i])
            .map(|k| {
                let mut v = vec![0u64; tgt.dims[i]];
                v[k] = 1;
                v
            })
            .collect();
        let comp_idx = greedy_extend(fld, tgt.dims[i], &img_basis, &units);
        let comp_basis: Vec<Vec<u64>> = comp_idx.iter().map(|&k| units[k].clone()).collect();
        let cdim = comp_basis.len();
        // B = [img | comp] is invertible; the projection is the lower block of B^{-1}.
        let mut all = img_basis.clone();
        all.extend(comp_basis.clone());
        let solver = SpanSolver::new(fld, tgt.dims[i], &all);
        assert_eq!(solver.rank(), tgt.dims[i], "image + complement must span");
        let mut proj = Matrix::zeros(fld, cdim, tgt.dims[i]);
        for k in 0..tgt.dims[i] {
            let mut e = vec![0u64; tgt.dims[i]];
            e[k] = 1;
            let coords = solver.coordinates(&e).expect("spanning set");
            for r in 0..cdim {
                proj.set(r, k, coords[img_basis.len() + r]);
            }
        }
        cdims.push(cdim);
        projs.push(proj);
        injs.push(Matrix::from_columns(fld, tgt.dims[i], &comp_basis));
    }
    let mut cmaps = Vec::with_capacity(nv);
    for i in 0..nv {
        let t = q.next(i);
        cmaps.push(projs[t].mul(&tgt.maps[i]).mul(&injs[i]));
    }
    let cokernel = NilpRep {
        quiver: q,
        field: fld,
        dims: cdims,
        maps: cmaps,
    };
    let proj = RepMorphism {
        source: tgt.clone(),
        target: cokernel.clone(),
        comps: projs,
    };
    debug_assert!(incl.commutes());
    debug_assert!(proj.commutes());
    KernelCokernel {
        kernel,
        incl,
        cokernel,
        proj,
    }
}

/// Krull-Schmidt decomposition into indecomposable labels, sorted canonically.
///
/// Uses the rank matrix R(s, l) = rank of the composite of l consecutive
/// arrows starting at s: the count of summands with socle t and length > l is
/// R(t-l, l) - R(t-l, l+1), and multiplicities are recovered by differencing.
pub fn decompose(m: &NilpRep) -> Vec<IndecLabel> {
    let q = m.quiver;
    let nv = q.n();
    let total = m.total_dim();
    if total == 0 {
        return Vec::new();
    }
    // ranks[s][l] for l = 0..=total+1
    let mut ranks = vec![vec![0usize; total + 2]; nv];
    for (s, row) in ranks.iter_mut().enumerate() {
        let mut acc = Matrix::identity(m.field, m.dims[s]);
        row[0] = m.dims[s];
        let mut v = s;
        for l in 1..=total + 1 {
            acc = m.maps[v].mul(&acc);
            v = q.next(v);
            row[l] = acc.rank();
        }
    }
    let g = |t0: usize, l: usize| -> i64 {
        // summands with socle t0 (0-based) and length > l
        let s = (t0 + nv - (l % nv)) % nv;
        ranks[s][l] as i64 - ranks[s][l + 1] as i64
    };
    let mut out = Vec::new();
    let mut seen = 0usize;
    for t0 in 0..nv {
        for len in 1..=total {
            let mult = g(t0, len - 1) - g(t0, len);
            assert!(mult >= 0, "negative multiplicity in decomposition");
            for _ in 0..mult {
                out.push(IndecLabel::new(t0 + 1, len));
                seen += len;
            }
        }
    }
    assert_eq!(seen, total, "decomposition must exhaust the dimension");
    out.sort();
    out
}

/// Dimension of Hom between indecomposables by counting compatible windows of
/// the two support chains; used as an independent oracle for `hom_basis`.
pub fn chain_hom_dim(n: usize, a: IndecLabel, b: IndecLabel) -> usize {
    let (s, l) = (a.socle() as i64, a.len() as i64);
    let (t, k) = (b.socle() as i64, b.len() as i64);
    let lo = 0.max(l - k);
    (lo..l)
        .filter(|j| (j - (s - t)).rem_euclid(n as i64) == 0)
        .count()
}

/// Enumerate every point of Hom(M, N) (test-scale spaces only).
pub fn hom_elements(m: &NilpRep, n: &NilpRep) -> Result<Vec<RepMorphism>> {
    let basis = hom_basis(m, n)?;
    let f = m.field;
    let flat: Vec<Vec<u64>> = basis.iter().map(flatten_mor).collect();
    let rows_per: Vec<usize> = (0..m.quiver.n()).map(|i| n.dims[i]).collect();
    let cols_per: Vec<usize> = (0..m.quiver.n()).map(|i| m.dims[i]).collect();
    let (offs, len) = block_offsets(&rows_per, &cols_per);
    Ok(enumerate_space(f, &flat, len)
        .map(|v| RepMorphism {
            source: m.clone(),
            target: n.clone(),
            comps: unflatten(f, &v, &rows_per, &cols_per, &offs),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn lab(s: usize, l: usize) -> IndecLabel {
        IndecLabel::new(s, l)
    }

    #[test]
    fn simple_module_s1() {
        let q = CyclicQuiver::new(2);
        let m = build_indec(q, f(3), lab(1, 1));
        assert_eq!(m.dims(), &[1, 0]);
        assert!(m.map(0).is_zero());
        assert!(m.map(1).is_zero());
    }

    #[test]
    fn length_two_module_over_two_vertices() {
        let q = CyclicQuiver::new(2);
        let m = build_indec(q, f(3), lab(1, 2));
        assert_eq!(m.dims(), &[1, 1]);
        // alpha_1 : M_1 -> M_2 is zero, alpha_2 : M_2 -> M_1 is [1]
        assert!(m.map(0).is_zero());
        assert_eq!(m.map(1).at(0, 0), 1);
        // socle = joint kernel of outgoing arrows = S_1
        assert_eq!(m.map(0).kernel_basis().len(), 1);
        assert_eq!(m.map(1).kernel_basis().len(), 0);
    }

    #[test]
    fn jordan_block_on_one_vertex() {
        let q = CyclicQuiver::new(1);
        let m = build_indec(q, f(2), lab(1, 3));
        assert_eq!(m.dims(), &[3]);
        // nilpotent single Jordan block: rank 2, square rank 1, cube zero
        assert_eq!(m.map(0).rank(), 2);
        assert_eq!(m.map(0).mul(m.map(0)).rank(), 1);
        assert!(m.map(0).mul(m.map(0)).mul(m.map(0)).is_zero());
        // local endomorphism algebra: End is spanned by chain endos
        let endos = hom_basis(&m, &m).unwrap();
        assert_eq!(endos.len(), 3);
    }

    #[test]
    fn hom_dims_match_chain_count() {
        let field = f(3);
        for n in 1..=3usize {
            let q = CyclicQuiver::new(n);
            for s in 1..=n {
                for t in 1..=n {
                    for l in 1..=5 {
                        for k in 1..=5 {
                            let a = build_indec(q, field, lab(s, l));
                            let b = build_indec(q, field, lab(t, k));
                            let hb = hom_basis(&a, &b).unwrap();
                            for mor in &hb {
                                assert!(mor.commutes());
                            }
                            assert_eq!(
                                hb.len(),
                                chain_hom_dim(n, lab(s, l), lab(t, k)),
                                "n={} ({},{}) -> ({},{})",
                                n,
                                s,
                                l,
                                t,
                                k
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hom_examples_n2() {
        let q = CyclicQuiver::new(2);
        let field = f(3);
        let one = build_indec(q, field, lab(1, 1));
        let neg_one = build_indec(q, field, lab(2, 1));
        assert_eq!(hom_basis(&one, &one).unwrap().len(), 1);
        assert_eq!(hom_basis(&one, &neg_one).unwrap().len(), 0);
        let four = build_indec(q, field, lab(1, 4));
        let three = build_indec(q, field, lab(1, 3));
        assert_eq!(hom_basis(&four, &three).unwrap().len(), 1);
        assert_eq!(chain_hom_dim(2, lab(1, 4), lab(1, 3)), 1);
    }

    #[test]
    fn ext_dims_match_ar_duality_oracle() {
        // dim Ext^1(M, N) = dim Hom(N, tau M), brute force over both sides
        for p in [2u64, 3] {
            let field = f(p);
            for n in [1usize, 2] {
                let q = CyclicQuiver::new(n);
                for s in 1..=n {
                    for t in 1..=n {
                        for l in 1..=4 {
                            for k in 1..=4 {
                                let m = build_indec(q, field, lab(s, l));
                                let nn = build_indec(q, field, lab(t, k));
                                let e = ext_basis(&m, &nn).unwrap().len();
                                let tau_m = build_indec(q, field, ar_translate(q, lab(s, l)));
                                let h = hom_basis(&nn, &tau_m).unwrap().len();
                                assert_eq!(e, h, "p={} n={} M=({},{}) N=({},{})", p, n, s, l, t, k);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ext_examples_n2() {
        let q = CyclicQuiver::new(2);
        let field = f(3);
        let one = build_indec(q, field, lab(1, 1));
        let neg_one = build_indec(q, field, lab(2, 1));
        assert_eq!(ext_basis(&one, &one).unwrap().len(), 0);
        assert_eq!(ext_basis(&one, &neg_one).unwrap().len(), 1);
    }

    #[test]
    fn split_extension_is_direct_sum() {
        let q = CyclicQuiver::new(2);
        let field = f(3);
        let m = build_indec(q, field, lab(1, 2));
        let n = build_indec(q, field, lab(2, 3));
        let c = ExtCocycle::zero(m.clone(), n.clone());
        let (e, incl, proj) = extension_middle(&c);
        assert!(incl.commutes() && proj.commutes());
        let mut want = decompose(&m);
        want.extend(decompose(&n));
        want.sort();
        assert_eq!(decompose(&e), want);
    }

    #[test]
    fn nonsplit_extension_of_simples() {
        let q = CyclicQuiver::new(2);
        let field = f(3);
        let m = build_indec(q, field, lab(1, 1)); // <1>
        let n = build_indec(q, field, lab(2, 1)); // <-1>
        let basis = ext_basis(&m, &n).unwrap();
        assert_eq!(basis.len(), 1);
        let (e, _, _) = extension_middle(&basis[0]);
        assert_eq!(decompose(&e), vec![lab(2, 2)]); // <-2>
    }

    #[test]
    fn paper_shape_extension_of_four_by_neg_three() {
        // 0 -> <-3> -> <-7> -> <4> -> 0 realized from the uniserial <-7>,
        // recovered as a cocycle, and rebuilt as an extension middle.
        let q = CyclicQuiver::new(2);
        let field = f(3);
        let big = build_indec(q, field, lab(2, 7));
        // submodule <-3> = span(b_0, b_1, b_2); quotient is <4>
        let sub = build_indec(q, field, lab(2, 3));
        let quot = build_indec(q, field, lab(1, 4));
        // inclusion: match chain bases; b_j of sub -> b_j of big
        let incl = {
            let mut comps = Vec::new();
            for i in 0..2 {
                let mut mat = Matrix::zeros(field, big.dims()[i], sub.dims()[i]);
                for r in 0..sub.dims()[i] {
                    mat.set(r, r, 1);
                }
                comps.push(mat);
            }
            RepMorphism::new(sub.clone(), big.clone(), comps).unwrap()
        };
        // projection: kills the first 3 chain vectors
        let proj = {
            let mut comps = Vec::new();
            for i in 0..2 {
                let mut mat = Matrix::zeros(field, quot.dims()[i], big.dims()[i]);
                for r in 0..quot.dims()[i] {
                    mat.set(r, sub.dims()[i] + r, 1);
                }
                comps.push(mat);
            }
            RepMorphism::new(big.clone(), quot.clone(), comps).unwrap()
        };
        let c = ext_from_ses(&incl, &proj).unwrap();
        assert!(!c.is_zero_cocycle());
        let (e, _, _) = extension_middle(&c);
        assert_eq!(decompose(&e), vec![lab(2, 7)]);
    }

    #[test]
    fn kernel_cokernel_of_identity_and_zero() {
        let q = CyclicQuiver::new(2);
        let field = f(3);
        let m = build_indec(q, field, lab(1, 2));
        let n = build_indec(q, field, lab(1, 3));
        let kk = kernel_cokernel(&RepMorphism::identity(&m));
        assert!(kk.kernel.is_zero_rep());
        assert!(kk.cokernel.is_zero_rep());
        let kk = kernel_cokernel(&RepMorphism::zero(m.clone(), n.clone()));
        assert_eq!(decompose(&kk.kernel), vec![lab(1, 2)]);
        assert_eq!(decompose(&kk.cokernel), vec![lab(1, 3)]);
    }

    #[test]
    fn kernel_cokernel_of_mixed_map() {
        // f : <4> ->> <2> >-> <3> has kernel <2> and cokernel <1>
        let q = CyclicQuiver::new(2);
        let field = f(3);
        let four = build_indec(q, field, lab(1, 4));
        let three = build_indec(q, field, lab(1, 3));
        let hb = hom_basis(&four, &three).unwrap();
        assert_eq!(hb.len(), 1);
        let kk = kernel_cokernel(&hb[0]);
        assert_eq!(decompose(&kk.kernel), vec![lab(1, 2)]);
        assert_eq!(decompose(&kk.cokernel), vec![lab(1, 1)]);
        // exactness bookkeeping per vertex
        for i in 0..2 {
            assert_eq!(
                kk.kernel.dims()[i] + hb[0].comp(i).rank(),
                four.dims()[i]
            );
            assert_eq!(
                kk.cokernel.dims()[i] + hb[0].comp(i).rank(),
                three.dims()[i]
            );
        }
    }

    #[test]
    fn decompose_round_trips_and_sums() {
        let field = f(3);
        for n in 1..=3usize {
            let q = CyclicQuiver::new(n);
            for s in 1..=n {
                for l in 1..=6 {
                    let m = build_indec(q, field, lab(s, l));
                    assert_eq!(decompose(&m), vec![lab(s, l)]);
                }
            }
        }
        let q = CyclicQuiver::new(2);
        let a = build_indec(q, field, lab(1, 1));
        let sum = a.direct_sum(&a).unwrap();
        assert_eq!(decompose(&sum), vec![lab(1, 1), lab(1, 1)]);
        let b = build_indec(q, field, lab(2, 3));
        let sum = a.direct_sum(&b).unwrap().direct_sum(&a).unwrap();
        assert_eq!(decompose(&sum), vec![lab(1, 1), lab(1, 1), lab(2, 3)]);
    }

    /// Exhaustive isomorphism search over all invertible vertex matrices.
    fn iso_search(a: &NilpRep, b: &NilpRep) -> bool {
        if a.dims() != b.dims() {
            return false;
        }
        let field = a.field();
        let n = a.quiver().n();
        // enumerate tuples of invertible matrices per vertex
        fn all_invertible(field: PrimeField, d: usize) -> Vec<Matrix> {
            let p = field.modulus();
            let total = p.pow((d * d) as u32);
            let mut out = Vec::new();
            for code in 0..total {
                let mut m = Matrix::zeros(field, d, d);
                let mut rem = code;
                for t in 0..d * d {
                    m.set(t / d, t % d, rem % p);
                    rem /= p;
                }
                if m.rank() == d {
                    out.push(m);
                }
            }
            out
        }
        let choices: Vec<Vec<Matrix>> = (0..n)
            .map(|i| all_invertible(field, a.dims()[i]))
            .collect();
        let mut idx = vec![0usize; n];
        loop {
            let gs: Vec<&Matrix> = (0..n).map(|i| &choices[i][idx[i]]).collect();
            // need g_{i+1} a_i = b_i g_i for all i
            let ok = (0..n).all(|i| {
                let t = (i + 1) % n;
                gs[t].mul(a.map(i)) == b.map(i).mul(gs[i])
            });
            if ok {
                return true;
            }
            let mut carry = 0;
            loop {
                idx[carry] += 1;
                if idx[carry] < choices[carry].len() {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
                if carry == n {
                    return false;
                }
            }
        }
    }

    fn all_nilpotent_reps(n: usize, dims: &[usize], field: PrimeField) -> Vec<NilpRep> {
        let q = CyclicQuiver::new(n);
        let p = field.modulus();
        let shapes: Vec<(usize, usize)> = (0..n).map(|i| (dims[(i + 1) % n], dims[i])).collect();
        let sizes: Vec<usize> = shapes.iter().map(|(r, c)| r * c).collect();
        let total_vars: usize = sizes.iter().sum();
        let count = p.pow(total_vars as u32);
        let mut out = Vec::new();
        for code in 0..count {
            let mut rem = code;
            let mut maps = Vec::with_capacity(n);
            for i in 0..n {
                let (r, c) = shapes[i];
                let mut m = Matrix::zeros(field, r, c);
                for t in 0..sizes[i] {
                    m.set(t / c.max(1), t % c.max(1), rem % p);
                    rem /= p;
                }
                maps.push(m);
            }
            if let Ok(rep) = NilpRep::new(q, field, dims.to_vec(), maps) {
                out.push(rep);
            }
        }
        out
    }

    #[test]
    fn decompose_agrees_with_exhaustive_iso_search_dim_le_3() {
        let field = f(2);
        let mut dim_vectors: Vec<(usize, Vec<usize>)> = Vec::new();
        for n in 1..=3usize {
            // all dims with total <= 3
            let mut stack = vec![vec![]];
            for _ in 0..n {
                let mut next = Vec::new();
                for v in &stack {
                    let used: usize = v.iter().sum();
                    for d in 0..=(3 - used) {
                        let mut w = v.clone();
                        w.push(d);
                        next.push(w);
                    }
                }
                stack = next;
            }
            for v in stack {
                if v.iter().sum::<usize>() >= 1 {
                    dim_vectors.push((n, v));
                }
            }
        }
        for (n, dims) in dim_vectors {
            let reps = all_nilpotent_reps(n, &dims, field);
            for i in 0..reps.len() {
                for j in i..reps.len() {
                    let same_label = decompose(&reps[i]) == decompose(&reps[j]);
                    let iso = iso_search(&reps[i], &reps[j]);
                    assert_eq!(
                        same_label, iso,
                        "n={} dims={:?} reps {} vs {}",
                        n, dims, i, j
                    );
                }
            }
        }
    }

    #[test]
    fn decompose_is_conjugation_invariant() {
        // conjugating all arrow maps by invertible vertex matrices fixes the labels
        let field = f(5);
        let q = CyclicQuiver::new(2);
        let m = build_indec(q, field, lab(1, 3))
            .direct_sum(&build_indec(q, field, lab(2, 2)))
            .unwrap();
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..20 {
            // random invertible per vertex by rejection
            let gs: Vec<Matrix> = (0..2)
                .map(|i| loop {
                    let d = m.dims()[i];
                    let mut g = Matrix::zeros(field, d, d);
                    for r in 0..d {
                        for c in 0..d {
                            g.set(r, c, rng() % field.modulus());
                        }
                    }
                    if g.rank() == d {
                        break g;
                    }
                })
                .collect();
            let ginv: Vec<Matrix> = gs
                .iter()
                .map(|g| {
                    let d = g.rows();
                    let cols: Vec<Vec<u64>> = (0..d)
                        .map(|k| {
                            let mut e = vec![0u64; d];
                            e[k] = 1;
                            g.solve(&e).unwrap().unwrap()
                        })
                        .collect();
                    Matrix::from_columns(field, d, &cols)
                })
                .collect();
            let maps: Vec<Matrix> = (0..2)
                .map(|i| gs[(i + 1) % 2].mul(m.map(i)).mul(&ginv[i]))
                .collect();
            let conj = NilpRep::new(q, field, m.dims().to_vec(), maps).unwrap();
            assert_eq!(decompose(&conj), decompose(&m));
        }
    }

    #[test]
    fn ar_translate_examples() {
        let q2 = CyclicQuiver::new(2);
        assert_eq!(ar_translate(q2, lab(1, 3)), lab(2, 3));
        let q1 = CyclicQuiver::new(1);
        assert_eq!(ar_translate(q1, lab(1, 5)), lab(1, 5));
        let q3 = CyclicQuiver::new(3);
        assert_eq!(ar_translate(q3, lab(1, 4)), lab(3, 4));
        assert_eq!(ar_translate_inv(q3, ar_translate(q3, lab(2, 7))), lab(2, 7));
    }

    #[test]
    fn tau_rep_rotates_socle() {
        let field = f(3);
        for n in [2usize, 3] {
            let q = CyclicQuiver::new(n);
            for s in 1..=n {
                for l in 1..=4 {
                    let m = build_indec(q, field, lab(s, l));
                    assert_eq!(decompose(&tau_rep(&m)), vec![ar_translate(q, lab(s, l))]);
                    assert_eq!(
                        decompose(&tau_inv_rep(&m)),
                        vec![ar_translate_inv(q, lab(s, l))]
                    );
                }
            }
        }
    }

    #[test]
    fn chain_endos_span_local_endomorphisms() {
        // End(M)/rad is one-dimensional: the chain endos with power >= 1 are
        // nilpotent and, with the identity, exhaust a basis of End(M).
        let field = f(3);
        let q = CyclicQuiver::new(2);
        for l in 1..=6 {
            let label = lab(1, l);
            let m = build_indec(q, field, label);
            let e = hom_basis(&m, &m).unwrap().len();
            let expected = l.div_ceil(2);
            assert_eq!(e, expected);
            assert_eq!(
                chain_endo(q, field, label, 0),
                RepMorphism::identity(&m)
            );
            for pw in 1..expected {
                let theta = chain_endo(q, field, label, pw);
                assert!(theta.commutes());
                // nilpotent: high enough power is zero
                let mut acc = theta.clone();
                for _ in 0..l {
                    acc = acc.compose(&theta).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn ext_class_coordinates_round_trip() {
        let field = f(3);
        let q = CyclicQuiver::new(2);
        let m = build_indec(q, field, lab(1, 4));
        let n = build_indec(q, field, lab(2, 3));
        let ctx = ExtContext::new(&m, &n).unwrap();
        let d = ctx.dim();
        // AR duality cross-check on the dimension
        let tau_m = build_indec(q, field, ar_translate(q, lab(1, 4)));
        assert_eq!(d, hom_basis(&n, &tau_m).unwrap().len());
        for code in 0..3u64.pow(d as u32) {
            let mut rem = code;
            let coeffs: Vec<u64> = (0..d)
                .map(|_| {
                    let c = rem % 3;
                    rem /= 3;
                    c
                })
                .collect();
            let c = ctx.combination(&coeffs);
            assert_eq!(ctx.class_coordinates(&c), coeffs);
        }
    }
}
