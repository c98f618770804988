//! Orbit enumeration for a group acting linearly on a finite coordinate
//! space F_q^h. The group is presented by generators given as right-action
//! matrices; orbits are found by breadth-first closure over the whole space,
//! so each point is touched once per generator.
//!
//! Coordinates split as [deg0 | deg1] so callers can classify orbits by
//! whether they meet the pure degree-0 locus or lie in the pure degree-1 one.

use crate::error::{Error, Result};
use crate::field::{Matrix, PrimeField};

pub struct ActionSpace {
    pub field: PrimeField,
    pub h0: usize,
    pub h1: usize,
    /// Right-action matrices of a generating set of the acting group.
    pub gens: Vec<Matrix>,
}

pub struct ScanOrbit {
    pub rep: Vec<u64>,
    pub size: u64,
    /// Some element of the orbit has vanishing deg1 coordinates.
    pub meets_pure_deg0: bool,
}

impl ScanOrbit {
    pub fn rep_deg0(&self, h0: usize) -> &[u64] {
        &self.rep[..h0]
    }

    pub fn is_pure_deg1(&self, h0: usize) -> bool {
        self.rep[..h0].iter().all(|&c| c == 0) && self.rep.iter().any(|&c| c != 0)
    }
}

fn decode(idx: u64, p: u64, h: usize) -> Vec<u64> {
    let mut v = vec![0u64; h];
    let mut rem = idx;
    for slot in v.iter_mut() {
        *slot = rem % p;
        rem /= p;
    }
    v
}

fn encode(v: &[u64], p: u64) -> u64 {
    let mut idx = 0u64;
    for &c in v.iter().rev() {
        idx = idx * p + c;
    }
    idx
}

/// Enumerates all orbits, ordered by their minimal point index. Errors when
/// the space has more than `space_limit` points.
pub fn orbit_scan(space: &ActionSpace, space_limit: u64) -> Result<Vec<ScanOrbit>> {
    let p = space.field.modulus();
    let h = space.h0 + space.h1;
    let size = (0..h).try_fold(1u64, |acc, _| acc.checked_mul(p)).filter(|&s| s <= space_limit);
    let Some(size) = size else {
        return Err(Error::BoundExceeded(format!(
            "morphism space {}^{} exceeds the enumeration limit {}",
            p, h, space_limit
        )));
    };
    for g in &space.gens {
        assert_eq!(g.rows(), h);
        assert_eq!(g.cols(), h);
    }
    let mut visited = vec![false; size as usize];
    let mut orbits = Vec::new();
    let mut stack: Vec<u64> = Vec::new();
    for start in 0..size {
        if visited[start as usize] {
            continue;
        }
        visited[start as usize] = true;
        stack.clear();
        stack.push(start);
        let mut count = 0u64;
        let mut meets_pure = false;
        while let Some(idx) = stack.pop() {
            count += 1;
            let v = decode(idx, p, h);
            if v[space.h0..].iter().all(|&c| c == 0) {
                meets_pure = true;
            }
            for g in &space.gens {
                let w = g.apply(&v);
                let widx = encode(&w, p);
                if !visited[widx as usize] {
                    visited[widx as usize] = true;
                    stack.push(widx);
                }
            }
        }
        orbits.push(ScanOrbit {
            rep: decode(start, p, h),
            size: count,
            meets_pure_deg0: meets_pure,
        });
    }
    Ok(orbits)
}

/// Default cap on enumerated morphism spaces.
pub const SPACE_LIMIT: u64 = 2_000_000;
