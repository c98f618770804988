//! Quiver coverings behind the orbit-category equivalence: the quiver Q
//! (|d| copies of the linear A-infinity-infinity quiver), its automorphism
//! sigma, the quotient Q-bar (m copies of the cyclic quiver of rank n'), the
//! covering map C, the induced automorphism sigma-bar, the commuting-diagram
//! checks, the orbit-sum identity of the pull-back of a push-forward, and the
//! dimension identity behind the simplification of orbit Hom spaces.
//!
//! All floor divisions are toward minus infinity, matching the displayed
//! formulas on possibly negative arguments.

use std::collections::BTreeMap;

use crate::derived::{hom_dim_pair, Shifted, StalkObject};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::tube::CyclicQuiver;

/// Vertex (j, i) of Q: component j in [0, |d|), position i in Z.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct VertexQ {
    pub j: i64,
    pub i: i64,
}

/// Vertex (j, i) of Q-bar: component j in [0, m), position i in [0, n').
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct VertexBarQ {
    pub j: i64,
    pub i: i64,
}

/// Covering data derived from a nonzero degree d and a positive n.
#[derive(Clone, Copy, Debug)]
pub struct CoverContext {
    pub d: i64,
    pub n: i64,
    pub m: i64,
    pub n_prime: i64,
    pub d_prime: i64,
    pub c: i64,
}

impl CoverContext {
    pub fn new(d: i64, n: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter(
                "the covering context needs d != 0".into(),
            ));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let m = num_integer::gcd(n, d.abs());
        let n_prime = n / m;
        let d_prime = d / m;
        let c = if n_prime == 1 {
            0
        } else {
            crate::atlas::mod_inverse(d_prime, n_prime).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "{} is not invertible mod {}",
                    d_prime, n_prime
                ))
            })?
        };
        Ok(CoverContext {
            d,
            n,
            m,
            n_prime,
            d_prime,
            c,
        })
    }

    pub fn abs_d(&self) -> i64 {
        self.d.abs()
    }
}

/// sigma(j, i) = (j - 1, i) for 1 <= j <= |d| - 1 and (|d| - 1, i + sgn d)
/// for j = 0.
pub fn sigma(ctx: &CoverContext, v: VertexQ) -> VertexQ {
    if v.j >= 1 {
        VertexQ { j: v.j - 1, i: v.i }
    } else {
        VertexQ {
            j: ctx.abs_d() - 1,
            i: v.i + ctx.d.signum(),
        }
    }
}

pub fn sigma_inv(ctx: &CoverContext, v: VertexQ) -> VertexQ {
    if v.j <= ctx.abs_d() - 2 {
        VertexQ { j: v.j + 1, i: v.i }
    } else {
        VertexQ {
            j: 0,
            i: v.i - ctx.d.signum(),
        }
    }
}

/// sigma^pow in closed form: the component index drops by pow mod |d| and i
/// advances by sgn(d) once per wrap through component 0.
pub fn sigma_pow(ctx: &CoverContext, v: VertexQ, pow: i64) -> VertexQ {
    let dd = ctx.abs_d();
    let wraps = (pow + dd - 1 - v.j).div_euclid(dd);
    VertexQ {
        j: (v.j - pow).rem_euclid(dd),
        i: v.i + ctx.d.signum() * wraps,
    }
}

/// The covering map C(j, i) = (j mod m, (i - floor(j/m) c) mod n'), floors
/// toward minus infinity.
pub fn cover_map(ctx: &CoverContext, v: VertexQ) -> VertexBarQ {
    let q = v.j.div_euclid(ctx.m);
    VertexBarQ {
        j: v.j.rem_euclid(ctx.m),
        i: (v.i - q * ctx.c).rem_euclid(ctx.n_prime),
    }
}

/// sigma-bar(j, i) = (j - 1, i) for 1 <= j <= m - 1 and
/// (m - 1, (i + c) mod n') for j = 0.
pub fn bar_sigma(ctx: &CoverContext, v: VertexBarQ) -> VertexBarQ {
    if v.j >= 1 {
        VertexBarQ { j: v.j - 1, i: v.i }
    } else {
        VertexBarQ {
            j: ctx.m - 1,
            i: (v.i + ctx.c).rem_euclid(ctx.n_prime),
        }
    }
}

pub fn bar_sigma_inv(ctx: &CoverContext, v: VertexBarQ) -> VertexBarQ {
    if v.j <= ctx.m - 2 {
        VertexBarQ { j: v.j + 1, i: v.i }
    } else {
        VertexBarQ {
            j: 0,
            i: (v.i - ctx.c).rem_euclid(ctx.n_prime),
        }
    }
}

#[derive(Debug)]
pub struct DiagramReport {
    pub window: i64,
    pub checked: u64,
    pub violations: Vec<String>,
}

/// Verifies on the window |i| <= window: sigma and its inverse cancel,
/// C . sigma^{-1} = sigma-bar^{-1} . C, C . sigma^n = C, and C sends the
/// arrow (j, i+1) -> (j, i) to the arrow (jbar, ibar+1) -> (jbar, ibar).
pub fn check_diagrams(ctx: &CoverContext, window: i64) -> DiagramReport {
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for j in 0..ctx.abs_d() {
        for i in -window..=window {
            let v = VertexQ { j, i };
            checked += 1;
            if sigma(ctx, sigma_inv(ctx, v)) != v || sigma_inv(ctx, sigma(ctx, v)) != v {
                violations.push(format!("sigma inverse fails at ({}, {})", j, i));
            }
            let lhs = cover_map(ctx, sigma_inv(ctx, v));
            let rhs = bar_sigma_inv(ctx, cover_map(ctx, v));
            if lhs != rhs {
                violations.push(format!("commuting square fails at ({}, {})", j, i));
            }
            if cover_map(ctx, sigma_pow(ctx, v, ctx.n)) != cover_map(ctx, v) {
                violations.push(format!("sigma^n periodicity fails at ({}, {})", j, i));
            }
            let src = cover_map(ctx, VertexQ { j, i: i + 1 });
            let tgt = cover_map(ctx, v);
            if src.j != tgt.j || src.i != (tgt.i + 1).rem_euclid(ctx.n_prime) {
                violations.push(format!("arrow image fails at ({}, {})", j, i));
            }
        }
    }
    DiagramReport {
        window,
        checked,
        violations,
    }
}

/// A finitely supported dimension assignment on the vertices of Q.
pub type DimsQ = BTreeMap<VertexQ, u64>;
pub type DimsBarQ = BTreeMap<VertexBarQ, u64>;

#[derive(Debug)]
pub struct OrbitSumReport {
    pub pushed: DimsBarQ,
    pub checked: u64,
    pub violations: Vec<String>,
}

/// Pushes dims along C, pulls back, and checks the pull-back equals the sum
/// of the sigma^{n p}-translates of the original on the window.
pub fn orbit_sum_dims(ctx: &CoverContext, dims: &DimsQ, window: i64) -> OrbitSumReport {
    let mut pushed: DimsBarQ = BTreeMap::new();
    for (&v, &d) in dims {
        *pushed.entry(cover_map(ctx, v)).or_insert(0) += d;
    }
    let span = dims.keys().map(|v| v.i.abs()).max().unwrap_or(0);
    // sigma^{n p} advances i by about n p / |d|, so the support is exhausted
    // once |p| passes |d| (span + window + 2)
    let bound = ctx.abs_d() * (span + window + 2) + 2;
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for j in 0..ctx.abs_d() {
        for i in -window..=window {
            let v = VertexQ { j, i };
            checked += 1;
            let pull = pushed.get(&cover_map(ctx, v)).copied().unwrap_or(0);
            let mut direct = 0u64;
            for p in -bound..=bound {
                let w = sigma_pow(ctx, v, -ctx.n * p);
                direct += dims.get(&w).copied().unwrap_or(0);
            }
            if pull != direct {
                violations.push(format!(
                    "orbit sum fails at ({}, {}): pull {} vs direct {}",
                    j, i, pull, direct
                ));
            }
        }
    }
    OrbitSumReport {
        pushed,
        checked,
        violations,
    }
}

/// Index bookkeeping for iterates of the twisted rotation: p' = ceil(p / m)
/// and j_p = m + p - m p', which always lies in [1, m].
pub fn index_bookkeeping(m: i64, p: i64) -> (i64, i64) {
    assert!(m >= 1);
    let p_prime = -((-p).div_euclid(m));
    let j_p = m + p - m * p_prime;
    debug_assert!((1..=m).contains(&j_p));
    (p_prime, j_p)
}

/// An m-tuple of stalk objects in the derived category of the rank-n' tube,
/// i.e. an object of the derived category of Q-bar.
pub type BarTuple = Vec<StalkObject>;

/// One application of the twisted rotation W = Sigma . sigma-bar^{-1} on
/// tuples: the wrapped entry picks up tau^c, everything suspends once.
fn w_apply(ctx: &CoverContext, quiver: CyclicQuiver, y: &BarTuple) -> BarTuple {
    let m = ctx.m as usize;
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let pulled = if j == 0 {
            y[m - 1].tau_pow(quiver, ctx.c)
        } else {
            y[j - 1].clone()
        };
        out.push(pulled.shifted(1));
    }
    out
}

fn w_apply_inv(ctx: &CoverContext, quiver: CyclicQuiver, y: &BarTuple) -> BarTuple {
    let m = ctx.m as usize;
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let pulled = if j == m - 1 {
            y[0].tau_pow(quiver, -ctx.c)
        } else {
            y[j + 1].clone()
        };
        out.push(pulled.shifted(-1));
    }
    out
}

/// The closed form of W^p via (p', j_p): the tuple
/// Sigma^p (tau^{c p'} Y_{m-j_p}, ..., tau^{c p'} Y_{m-1},
///          tau^{c (p'-1)} Y_0, ..., tau^{c (p'-1)} Y_{m-j_p-1}).
fn w_pow_closed(ctx: &CoverContext, quiver: CyclicQuiver, y: &BarTuple, p: i64) -> BarTuple {
    let m = ctx.m;
    let (p_prime, j_p) = index_bookkeeping(m, p);
    let mut out = Vec::with_capacity(m as usize);
    for idx in 0..m {
        let entry = if idx < j_p {
            y[(m - j_p + idx) as usize].tau_pow(quiver, ctx.c * p_prime)
        } else {
            y[(idx - j_p) as usize].tau_pow(quiver, ctx.c * (p_prime - 1))
        };
        out.push(entry.shifted(p));
    }
    out
}

/// Cached Hom dimension between shifted summands of the rank-n' tube,
/// computed over F_2 and F_3 and asserted equal.
struct DimCache {
    quiver: CyclicQuiver,
    f2: PrimeField,
    f3: PrimeField,
    cache: BTreeMap<(Shifted, Shifted), usize>,
}

impl DimCache {
    fn new(n_prime: i64) -> Self {
        DimCache {
            quiver: CyclicQuiver::new(n_prime as usize),
            f2: PrimeField::new(2).expect("prime"),
            f3: PrimeField::new(3).expect("prime"),
            cache: BTreeMap::new(),
        }
    }

    fn pair(&mut self, a: Shifted, b: Shifted) -> usize {
        let key = (Shifted::new(0, a.label), Shifted::new(b.shift - a.shift, b.label));
        if let Some(&d) = self.cache.get(&key) {
            return d;
        }
        let d2 = hom_dim_pair(self.quiver, self.f2, key.0, key.1);
        let d3 = hom_dim_pair(self.quiver, self.f3, key.0, key.1);
        assert_eq!(d2, d3, "Hom dimensions must be field-independent");
        self.cache.insert(key, d2);
        d2
    }

    fn stalk(&mut self, a: &StalkObject, b: &StalkObject) -> usize {
        a.summands()
            .iter()
            .map(|&x| b.summands().iter().map(|&y| self.pair(x, y)).sum::<usize>())
            .sum()
    }
}

/// The two sides of the orbit Hom dimension identity:
/// lhs sums dim Hom(Psi X, (tau^c Sigma^m)^p Psi Y) over the window, with
/// Psi X = sum_j Sigma^{m-1-j} X_j in the rank-n' tube; rhs sums the tuple
/// Hom dimensions against the iterated twisted rotation W^p, whose closed
/// form via (p', j_p) is asserted along the way. Nonzero boundary terms are a
/// window error.
pub fn psi_dim_identity(
    ctx: &CoverContext,
    x: &BarTuple,
    y: &BarTuple,
    window: i64,
) -> Result<(usize, usize)> {
    let m = ctx.m as usize;
    if x.len() != m || y.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "tuples must have m = {} entries",
            m
        )));
    }
    let quiver = CyclicQuiver::new(ctx.n_prime as usize);
    let mut dims = DimCache::new(ctx.n_prime);
    let psi = |t: &BarTuple| -> StalkObject {
        let mut parts = Vec::new();
        for (j, obj) in t.iter().enumerate() {
            for s in obj.shifted((m - 1 - j) as i64).summands() {
                parts.push(*s);
            }
        }
        StalkObject::new(parts)
    };
    let psi_x = psi(x);
    let psi_y = psi(y);
    // lhs over powers p of tau^c Sigma^m
    let mut lhs = 0usize;
    for p in -window..=window {
        let twisted = psi_y.tau_pow(quiver, ctx.c * p).shifted(ctx.m * p);
        let term = dims.stalk(&psi_x, &twisted);
        if term != 0 && (p == -window || p == window) {
            return Err(Error::WindowTooSmall(format!(
                "lhs boundary term {} at p = {}",
                term, p
            )));
        }
        lhs += term;
    }
    // rhs over powers of W, iterated and checked against the closed form
    let mut rhs = 0usize;
    let wp = ctx.m * window;
    let mut fwd = y.clone();
    let mut bwd = y.clone();
    for p in 0..=wp {
        let current = if p == 0 { y.clone() } else { fwd.clone() };
        assert_eq!(
            current,
            w_pow_closed(ctx, quiver, y, p),
            "closed form of the twisted rotation at p = {}",
            p
        );
        let term: usize = (0..m).map(|j| dims.stalk(&x[j], &current[j])).sum();
        if term != 0 && p == wp {
            return Err(Error::WindowTooSmall(format!(
                "rhs boundary term {} at p = {}",
                term, p
            )));
        }
        rhs += term;
        fwd = w_apply(ctx, quiver, &current);
    }
    for p in 1..=wp {
        bwd = w_apply_inv(ctx, quiver, &bwd);
        assert_eq!(
            bwd,
            w_pow_closed(ctx, quiver, y, -p),
            "closed form of the twisted rotation at p = {}",
            -p
        );
        let term: usize = (0..m).map(|j| dims.stalk(&x[j], &bwd[j])).sum();
        if term != 0 && p == wp {
            return Err(Error::WindowTooSmall(format!(
                "rhs boundary term {} at p = {}",
                term, -p
            )));
        }
        rhs += term;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tube::IndecLabel;

    #[test]
    fn sigma_examples() {
        let ctx = CoverContext::new(-1, 2).unwrap();
        // |d| = 1: sigma(0, i) = (0, i - 1)
        assert_eq!(
            sigma(&ctx, VertexQ { j: 0, i: 5 }),
            VertexQ { j: 0, i: 4 }
        );
        let ctx = CoverContext::new(2, 2).unwrap();
        assert_eq!(
            sigma(&ctx, VertexQ { j: 1, i: 5 }),
            VertexQ { j: 0, i: 5 }
        );
        assert_eq!(
            sigma(&ctx, VertexQ { j: 0, i: 5 }),
            VertexQ { j: 1, i: 6 }
        );
        // inverses on a spread of vertices
        for d in [-4i64, -3, -1, 1, 2, 3, 4] {
            let ctx = CoverContext::new(d, 6).unwrap();
            for j in 0..d.abs() {
                for i in -10..=10 {
                    let v = VertexQ { j, i };
                    assert_eq!(sigma_inv(&ctx, sigma(&ctx, v)), v);
                }
            }
        }
    }

    #[test]
    fn sigma_pow_matches_iteration() {
        for d in (-4..=4i64).filter(|&d| d != 0) {
            let ctx = CoverContext::new(d, 3).unwrap();
            for j in 0..d.abs() {
                for i in -5..=5 {
                    let mut fwd = VertexQ { j, i };
                    let mut bwd = VertexQ { j, i };
                    for k in 0..=17i64 {
                        assert_eq!(sigma_pow(&ctx, VertexQ { j, i }, k), fwd, "d={} k={}", d, k);
                        assert_eq!(
                            sigma_pow(&ctx, VertexQ { j, i }, -k),
                            bwd,
                            "d={} k={}",
                            d,
                            -k
                        );
                        fwd = sigma(&ctx, fwd);
                        bwd = sigma_inv(&ctx, bwd);
                    }
                }
            }
        }
    }

    #[test]
    fn cover_map_examples() {
        let ctx = CoverContext::new(-1, 2).unwrap();
        assert_eq!(
            cover_map(&ctx, VertexQ { j: 0, i: 5 }),
            VertexBarQ { j: 0, i: 1 }
        );
        // second coordinate always reduced
        let ctx = CoverContext::new(3, 6).unwrap();
        for j in 0..3 {
            for i in -12..=12 {
                let v = cover_map(&ctx, VertexQ { j, i });
                assert!(v.i >= 0 && v.i < ctx.n_prime);
                assert!(v.j >= 0 && v.j < ctx.m);
            }
        }
    }

    #[test]
    fn cover_map_is_surjective_on_window() {
        for (d, n) in [(-1i64, 2i64), (2, 4), (3, 6), (-4, 6)] {
            let ctx = CoverContext::new(d, n).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for j in 0..ctx.abs_d() {
                for i in -(2 * n)..=(2 * n) {
                    seen.insert(cover_map(&ctx, VertexQ { j, i }));
                }
            }
            assert_eq!(seen.len() as i64, ctx.m * ctx.n_prime);
        }
    }

    #[test]
    fn bar_sigma_examples() {
        // m = 1, n' = 2, c = 1: bar sigma flips the cyclic position
        let ctx = CoverContext::new(-1, 2).unwrap();
        assert_eq!(
            bar_sigma(&ctx, VertexBarQ { j: 0, i: 0 }),
            VertexBarQ { j: 0, i: 1 }
        );
        let ctx = CoverContext::new(2, 2).unwrap();
        assert_eq!(
            bar_sigma(&ctx, VertexBarQ { j: 1, i: 0 }),
            VertexBarQ { j: 0, i: 0 }
        );
        // bar sigma^m adds c to the position
        for (d, n) in [(-3i64, 6i64), (2, 6), (4, 6), (-1, 4)] {
            let ctx = CoverContext::new(d, n).unwrap();
            for j in 0..ctx.m {
                for i in 0..ctx.n_prime {
                    let mut v = VertexBarQ { j, i };
                    for _ in 0..ctx.m {
                        v = bar_sigma(&ctx, v);
                    }
                    assert_eq!(
                        v,
                        VertexBarQ {
                            j,
                            i: (i + ctx.c).rem_euclid(ctx.n_prime)
                        }
                    );
                }
            }
        }
    }

    #[test]
    fn diagrams_commute_on_windows() {
        for d in (-4..=4i64).filter(|&d| d != 0) {
            for n in 1..=6i64 {
                let ctx = CoverContext::new(d, n).unwrap();
                let report = check_diagrams(&ctx, 50);
                assert!(
                    report.violations.is_empty(),
                    "d={} n={}: {:?}",
                    d,
                    n,
                    report.violations
                );
            }
        }
    }

    #[test]
    fn index_bookkeeping_examples() {
        assert_eq!(index_bookkeeping(2, 3), (2, 1));
        assert_eq!(index_bookkeeping(2, 0), (0, 2));
        for p in -20..=20 {
            assert_eq!(index_bookkeeping(1, p), (p, 1));
        }
        for m in 1..=5i64 {
            for p in -100..=100 {
                let (pp, jp) = index_bookkeeping(m, p);
                assert!((1..=m).contains(&jp));
                assert_eq!(p, m * pp + jp - m);
            }
        }
    }

    #[test]
    fn orbit_sum_identity() {
        // single-vertex support
        let ctx = CoverContext::new(-1, 2).unwrap();
        let mut dims = DimsQ::new();
        dims.insert(VertexQ { j: 0, i: 0 }, 1);
        let report = orbit_sum_dims(&ctx, &dims, 20);
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        // a spread of supports over several contexts
        for (d, n) in [(2i64, 4i64), (3, 6), (-2, 2)] {
            let ctx = CoverContext::new(d, n).unwrap();
            let mut dims = DimsQ::new();
            let mut s = 41u64;
            for _ in 0..6 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                let j = (s >> 33) as i64 % ctx.abs_d();
                let i = ((s >> 17) as i64 % 15) - 7;
                *dims.entry(VertexQ { j, i }).or_insert(0) += 1 + (s % 3);
            }
            let report = orbit_sum_dims(&ctx, &dims, 25);
            assert!(report.violations.is_empty(), "{:?}", report.violations);
        }
        // empty support
        let report = orbit_sum_dims(&ctx, &DimsQ::new(), 10);
        assert!(report.violations.is_empty());
        assert!(report.pushed.is_empty());
    }

    #[test]
    fn psi_identity_single_simple() {
        let ctx = CoverContext::new(-1, 2).unwrap();
        let x = vec![StalkObject::new(vec![Shifted::new(
            0,
            IndecLabel::new(1, 1),
        )])];
        let (lhs, rhs) = psi_dim_identity(&ctx, &x, &x, 6).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs > 0);
    }

    #[test]
    fn psi_identity_zero_objects() {
        let ctx = CoverContext::new(2, 4).unwrap();
        let x = vec![StalkObject::zero(), StalkObject::zero()];
        let (lhs, rhs) = psi_dim_identity(&ctx, &x, &x, 4).unwrap();
        assert_eq!((lhs, rhs), (0, 0));
    }

    #[test]
    fn psi_identity_random_tuples() {
        let mut s = 0x1234_5678_9abc_def0u64;
        let mut rng = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        let contexts = [(-1i64, 3i64), (2, 2), (2, 6), (-3, 3), (3, 6), (-2, 6)];
        for &(d, n) in &contexts {
            let ctx = CoverContext::new(d, n).unwrap();
            if ctx.n_prime > 3 || ctx.m > 3 {
                continue;
            }
            for _ in 0..8 {
                let mut make = |count: u64| -> BarTuple {
                    (0..ctx.m)
                        .map(|_| {
                            let k = rng() % (count + 1);
                            let parts = (0..k)
                                .map(|_| {
                                    Shifted::new(
                                        (rng() % 3) as i64 - 1,
                                        IndecLabel::new(
                                            (rng() % ctx.n_prime as u64 + 1) as usize,
                                            (rng() % 3 + 1) as usize,
                                        ),
                                    )
                                })
                                .collect();
                            StalkObject::new(parts)
                        })
                        .collect()
                };
                let x = make(3);
                let y = make(3);
                let (lhs, rhs) = psi_dim_identity(&ctx, &x, &y, 5).unwrap();
                assert_eq!(lhs, rhs, "d={} n={}", d, n);
            }
        }
    }

    #[test]
    fn window_too_small_is_detected() {
        let ctx = CoverContext::new(-1, 2).unwrap();
        let x = vec![StalkObject::new(vec![Shifted::new(
            0,
            IndecLabel::new(1, 1),
        )])];
        assert!(matches!(
            psi_dim_identity(&ctx, &x, &x, 0),
            Err(Error::WindowTooSmall(_))
        ));
    }
}
