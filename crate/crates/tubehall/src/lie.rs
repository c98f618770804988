//! Hall numbers F^L_{YX} mod (q-1) and the associated Lie algebra: the
//! bracket on the basis {z} u {u_m}, the symmetric Euler form acting through
//! z, verification of the closed-form structure constants of both variants,
//! integral lifting by CRT over several primes, the quotient by the center,
//! and the Heisenberg identification for the root category.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::orbit::{Census, CensusCell, OrbitCategory, Variant};

/// Basis symbol of the Lie algebra: the Grothendieck generator z or u_m.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum BasisSym {
    Z,
    U(i64),
}

impl fmt::Display for BasisSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSym::Z => write!(f, "z"),
            BasisSym::U(m) => write!(f, "u[{}]", m),
        }
    }
}

/// A finite linear combination over {z} u {u_m}; no explicit zeros stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LieElement {
    coeffs: BTreeMap<BasisSym, i64>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn z(c: i64) -> Self {
        let mut e = LieElement::zero();
        e.add_term(BasisSym::Z, c);
        e
    }

    pub fn u(m: i64, c: i64) -> Self {
        let mut e = LieElement::zero();
        e.add_term(BasisSym::U(m), c);
        e
    }

    pub fn add_term(&mut self, sym: BasisSym, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(sym).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&sym);
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (&s, &c) in &other.coeffs {
            out.add_term(s, c);
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, t: i64) -> LieElement {
        let mut out = LieElement::zero();
        for (&s, &c) in &self.coeffs {
            out.add_term(s, c * t);
        }
        out
    }

    /// Canonical residues in [0, m).
    pub fn reduce_mod(&self, m: u64) -> LieElement {
        let mut out = LieElement::zero();
        for (&s, &c) in &self.coeffs {
            out.add_term(s, c.rem_euclid(m as i64));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, sym: BasisSym) -> i64 {
        self.coeffs.get(&sym).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisSym, i64)> + '_ {
        self.coeffs.iter().map(|(&s, &c)| (s, c))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.coeffs {
            if first {
                write!(f, "{}*{}", c, s)?;
                first = false;
            } else {
                write!(f, " + {}*{}", c, s)?;
            }
        }
        Ok(())
    }
}

/// Brute-force Hall computations over one prime field, with a census cache.
pub struct HallEngine {
    cat: OrbitCategory,
    census_cache: RefCell<BTreeMap<(i64, i64), Rc<Census>>>,
}

impl HallEngine {
    pub fn new(variant: Variant, q: u64, max_len: usize) -> Result<Self> {
        if q == 2 {
            return Err(Error::DegenerateModulus);
        }
        let field = PrimeField::new(q)?;
        Ok(HallEngine {
            cat: OrbitCategory::new(variant, field, max_len),
            census_cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn cat(&self) -> &OrbitCategory {
        &self.cat
    }

    pub fn q(&self) -> u64 {
        self.cat.field().modulus()
    }

    pub fn modulus(&self) -> u64 {
        self.q() - 1
    }

    fn census(&self, x: i64, l: i64) -> Result<Rc<Census>> {
        if let Some(c) = self.census_cache.borrow().get(&(x, l)) {
            return Ok(Rc::clone(c));
        }
        let c = Rc::new(self.cat.census(x, l)?);
        self.census_cache
            .borrow_mut()
            .insert((x, l), Rc::clone(&c));
        Ok(c)
    }

    /// Raw orbit counts behind F^L_{YX}: morphisms X -> L with cone Y.
    pub fn hall_cell(&self, y: i64, x: i64, l: i64) -> Result<CensusCell> {
        let census = self.census(x, l)?;
        Ok(census.get(&vec![y]).copied().unwrap_or_default())
    }

    /// F^L_{YX} = |Hom(X, L)*_Y| reduced mod q-1.
    pub fn hall_f(&self, y: i64, x: i64, l: i64) -> Result<u64> {
        Ok(self.hall_cell(y, x, l)?.total() % self.modulus())
    }

    /// [u_x, u_y] as residues mod q-1: Hall-number differences over all
    /// candidate cones plus the delta-term -h_X when X = Sigma Y.
    pub fn bracket_basis(&self, x: i64, y: i64) -> Result<LieElement> {
        self.bracket_basis_inner(x, y, false)
    }

    /// Same bracket with the S2 cells zeroed; |S2| = 0 mod (q-1), so this
    /// must agree with `bracket_basis`.
    pub fn bracket_basis_without_s2(&self, x: i64, y: i64) -> Result<LieElement> {
        self.bracket_basis_inner(x, y, true)
    }

    fn bracket_basis_inner(&self, x: i64, y: i64, drop_s2: bool) -> Result<LieElement> {
        if x == 0 || y == 0 {
            return Err(Error::InvalidLabel("labels must be nonzero".into()));
        }
        let reach = (x.abs() + y.abs()) as i64;
        let mut out = LieElement::zero();
        let count = |cell: CensusCell| {
            if drop_s2 {
                cell.s1 + cell.s3
            } else {
                cell.total()
            }
        };
        for l in (-reach..=reach).filter(|&l| l != 0) {
            let f_yx = count(self.hall_cell(y, x, l)?);
            let f_xy = count(self.hall_cell(x, y, l)?);
            out.add_term(BasisSym::U(l), f_yx as i64 - f_xy as i64);
        }
        if x == -y {
            out.add_term(BasisSym::Z, -self.cat.class_of(x));
        }
        Ok(out.reduce_mod(self.modulus()))
    }

    /// The symmetric Euler form on representatives:
    /// I(h_X, h_Y) = dim(X,Y) - dim(X,SY) + dim(Y,X) - dim(Y,SX).
    pub fn euler_pair(&self, x: i64, y: i64) -> Result<i64> {
        let d = |a: i64, b: i64| -> Result<i64> { Ok(self.cat.hom_space(a, b)?.len() as i64) };
        Ok(d(x, y)? - d(x, self.cat.suspend(y))? + d(y, x)? - d(y, self.cat.suspend(x))?)
    }

    /// I(z, z) computed on the generator's representative <1>.
    pub fn euler_zz(&self) -> Result<i64> {
        self.euler_pair(1, 1)
    }

    /// The Euler form on Grothendieck classes given as multiples of z.
    pub fn euler_form(&self, a: i64, b: i64) -> Result<i64> {
        Ok(a * b * self.euler_zz()?)
    }

    /// [z, u_y] = I(z, h_Y) u_y, as residues.
    pub fn z_bracket_u(&self, y: i64) -> Result<LieElement> {
        let c = self.euler_form(1, self.cat.class_of(y))?;
        Ok(LieElement::u(y, c).reduce_mod(self.modulus()))
    }

    /// Bracket of arbitrary elements by bilinear extension, as residues.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        let mut out = LieElement::zero();
        for (sa, ca) in a.terms() {
            for (sb, cb) in b.terms() {
                let term = match (sa, sb) {
                    (BasisSym::Z, BasisSym::Z) => LieElement::zero(),
                    (BasisSym::Z, BasisSym::U(m)) => self.z_bracket_u(m)?,
                    (BasisSym::U(m), BasisSym::Z) => self.z_bracket_u(m)?.scale(-1),
                    (BasisSym::U(m), BasisSym::U(n)) => self.bracket_basis(m, n)?,
                };
                out = out.add(&term.scale(ca * cb));
            }
        }
        Ok(out.reduce_mod(self.modulus()))
    }
}

/// Closed-form integral structure constants for the cluster tube.
fn cluster_closed_pair(i: i64, j: i64) -> LieElement {
    let even = |v: i64| v % 2 == 0;
    if even(i) && even(j) {
        return LieElement::zero();
    }
    if !even(i) && !even(j) {
        if i.signum() == j.signum() {
            return LieElement::zero();
        }
        // odd indices of opposite signs: relation 7
        return if i > 0 {
            rel7((i + 1) / 2, (1 - j) / 2)
        } else {
            rel7((j + 1) / 2, (1 - i) / 2).scale(-1)
        };
    }
    if even(i) {
        // i even, j odd: relations 3-6 by sign pattern
        let x = i.abs() / 2;
        let y = (j.abs() + 1) / 2;
        match (i > 0, j > 0) {
            (true, true) => rel3(x, y),
            (true, false) => rel4(x, y),
            (false, true) => rel5(x, y),
            (false, false) => rel6(x, y),
        }
    } else {
        cluster_closed_pair(j, i).scale(-1)
    }
}

fn rel3(x: i64, y: i64) -> LieElement {
    let mut e = LieElement::u(2 * (x + y) - 1, 1);
    if x < y {
        e.add_term(BasisSym::U(2 * (y - x) - 1), 1);
    } else {
        e.add_term(BasisSym::U(2 * (x - y) + 1), -1);
    }
    e
}

fn rel4(x: i64, y: i64) -> LieElement {
    let mut e = LieElement::u(-(2 * (x + y) - 1), -1);
    if x < y {
        e.add_term(BasisSym::U(2 * (x - y) + 1), -1);
    } else {
        e.add_term(BasisSym::U(2 * (y - x) - 1), 1);
    }
    e
}

fn rel5(x: i64, y: i64) -> LieElement {
    let mut e = LieElement::u(2 * (x + y) - 1, -1);
    if x < y {
        e.add_term(BasisSym::U(2 * (y - x) - 1), -1);
    } else {
        e.add_term(BasisSym::U(2 * (x - y) + 1), 1);
    }
    e
}

fn rel6(x: i64, y: i64) -> LieElement {
    let mut e = LieElement::u(-(2 * (x + y) - 1), 1);
    if x < y {
        e.add_term(BasisSym::U(2 * (x - y) + 1), 1);
    } else {
        e.add_term(BasisSym::U(2 * (y - x) - 1), -1);
    }
    e
}

fn rel7(x: i64, y: i64) -> LieElement {
    use std::cmp::Ordering;
    match x.cmp(&y) {
        Ordering::Equal => {
            let mut e = LieElement::z(-1);
            e.add_term(BasisSym::U(4 * x - 2), 1);
            e.add_term(BasisSym::U(-(4 * x - 2)), -1);
            e
        }
        Ordering::Less => {
            let mut e = LieElement::u(2 * x + 2 * y - 2, 1);
            e.add_term(BasisSym::U(-(2 * x + 2 * y - 2)), -1);
            e.add_term(BasisSym::U(2 * x - 2 * y), 1);
            e.add_term(BasisSym::U(2 * y - 2 * x), -1);
            e
        }
        Ordering::Greater => {
            let mut e = LieElement::u(2 * x + 2 * y - 2, 1);
            e.add_term(BasisSym::U(-(2 * x + 2 * y - 2)), -1);
            e.add_term(BasisSym::U(2 * y - 2 * x), 1);
            e.add_term(BasisSym::U(2 * x - 2 * y), -1);
            e
        }
    }
}

/// Closed-form integral constants [u_i, u_j] for either variant.
pub fn closed_pair(variant: Variant, i: i64, j: i64) -> LieElement {
    match variant {
        Variant::ClusterTube => cluster_closed_pair(i, j),
        Variant::RootCategory => {
            if i == -j {
                LieElement::z(-i)
            } else {
                LieElement::zero()
            }
        }
    }
}

/// Closed-form [z, u_n].
pub fn closed_z_u(variant: Variant, n: i64) -> LieElement {
    match variant {
        Variant::ClusterTube => {
            if n % 2 == 0 {
                LieElement::zero()
            } else {
                LieElement::u(n, 4 * n.signum())
            }
        }
        Variant::RootCategory => LieElement::zero(),
    }
}

/// Closed-form bracket of basis symbols.
pub fn closed_sym(variant: Variant, a: BasisSym, b: BasisSym) -> LieElement {
    match (a, b) {
        (BasisSym::Z, BasisSym::Z) => LieElement::zero(),
        (BasisSym::Z, BasisSym::U(n)) => closed_z_u(variant, n),
        (BasisSym::U(n), BasisSym::Z) => closed_z_u(variant, n).scale(-1),
        (BasisSym::U(m), BasisSym::U(n)) => closed_pair(variant, m, n),
    }
}

/// Closed-form bracket extended bilinearly.
pub fn closed_bracket(variant: Variant, a: &LieElement, b: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (sa, ca) in a.terms() {
        for (sb, cb) in b.terms() {
            out = out.add(&closed_sym(variant, sa, sb).scale(ca * cb));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub x: BasisSym,
    pub y: BasisSym,
    pub got: LieElement,
    pub expected: LieElement,
}

#[derive(Debug)]
pub struct ConstantsReport {
    pub variant: Variant,
    pub q: u64,
    pub max_index: i64,
    pub brackets: Vec<(BasisSym, BasisSym, LieElement)>,
    pub mismatches: Vec<Mismatch>,
}

fn basis_range(max_index: i64) -> Vec<BasisSym> {
    let mut syms = vec![BasisSym::Z];
    for m in (-max_index..=max_index).filter(|&m| m != 0) {
        syms.push(BasisSym::U(m));
    }
    syms
}

/// Computes every bracket of basis pairs with |indices| <= max_index by brute
/// force and diffs against the closed forms.
pub fn verify_constants(engine: &HallEngine, max_index: i64) -> Result<ConstantsReport> {
    let variant = engine.cat().variant();
    let syms = basis_range(max_index);
    let mut brackets = Vec::new();
    let mut mismatches = Vec::new();
    for &a in &syms {
        for &b in &syms {
            let got = match (a, b) {
                (BasisSym::Z, BasisSym::Z) => LieElement::zero(),
                (BasisSym::Z, BasisSym::U(n)) => engine.z_bracket_u(n)?,
                (BasisSym::U(n), BasisSym::Z) => engine.z_bracket_u(n)?.scale(-1),
                (BasisSym::U(m), BasisSym::U(n)) => engine.bracket_basis(m, n)?,
            };
            let got = got.reduce_mod(engine.modulus());
            let expected = closed_sym(variant, a, b).reduce_mod(engine.modulus());
            if got != expected {
                mismatches.push(Mismatch {
                    x: a,
                    y: b,
                    got: got.clone(),
                    expected,
                });
            }
            brackets.push((a, b, got));
        }
    }
    Ok(ConstantsReport {
        variant,
        q: engine.q(),
        max_index,
        brackets,
        mismatches,
    })
}

/// Integral structure constants lifted from residues at several primes.
#[derive(Debug)]
pub struct LiftedTable {
    pub variant: Variant,
    pub primes: Vec<u64>,
    /// lcm of the moduli p - 1.
    pub modulus: u64,
    pub brackets: BTreeMap<(BasisSym, BasisSym), LieElement>,
}

fn crt_combine(r1: i128, m1: i128, r2: i128, m2: i128) -> Result<(i128, i128)> {
    fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = egcd(b, a % b);
            (g, y, x - (a / b) * y)
        }
    }
    let (g, s, _) = egcd(m1, m2);
    if (r2 - r1) % g != 0 {
        return Err(Error::InconsistentResidues(format!(
            "{} mod {} vs {} mod {}",
            r1, m1, r2, m2
        )));
    }
    let lcm = m1 / g * m2;
    let diff = (r2 - r1) / g;
    let r = (r1 + m1 * (diff * s).rem_euclid(m2 / g)).rem_euclid(lcm);
    Ok((r, lcm))
}

/// Lifts the brute-force residue tables at the given odd primes to integers
/// via CRT on the moduli p-1, representing each constant in the symmetric
/// range. Residue disagreement or an ambiguous representative is an error.
pub fn lift_integral(variant: Variant, primes: &[u64], max_index: i64) -> Result<LiftedTable> {
    if primes.len() < 2 {
        return Err(Error::InsufficientPrimes(
            "need at least two odd primes".into(),
        ));
    }
    let mut engines = Vec::new();
    for &p in primes {
        engines.push(HallEngine::new(variant, p, max_index.unsigned_abs() as usize)?);
    }
    let syms = basis_range(max_index);
    let mut brackets = BTreeMap::new();
    let mut modulus = 1u64;
    for &a in &syms {
        for &b in &syms {
            let mut tables = Vec::new();
            for engine in &engines {
                let t = match (a, b) {
                    (BasisSym::Z, BasisSym::Z) => LieElement::zero(),
                    (BasisSym::Z, BasisSym::U(n)) => engine.z_bracket_u(n)?,
                    (BasisSym::U(n), BasisSym::Z) => engine.z_bracket_u(n)?.scale(-1),
                    (BasisSym::U(m), BasisSym::U(n)) => engine.bracket_basis(m, n)?,
                };
                tables.push(t);
            }
            // union of keys across primes
            let mut keys: Vec<BasisSym> = Vec::new();
            for t in &tables {
                for (s, _) in t.terms() {
                    if !keys.contains(&s) {
                        keys.push(s);
                    }
                }
            }
            keys.sort();
            let mut lifted = LieElement::zero();
            for &key in &keys {
                let mut acc = (0i128, 1i128);
                for (engine, t) in engines.iter().zip(&tables) {
                    let m = engine.modulus() as i128;
                    let r = t.coeff(key).rem_euclid(m as i64) as i128;
                    acc = crt_combine(acc.0, acc.1, r, m)?;
                }
                let (r, m) = acc;
                modulus = m as u64;
                // symmetric representative
                let half = m / 2;
                let rep = if r > half { r - m } else { r };
                if rep.abs() == half && m % 2 == 0 {
                    return Err(Error::InsufficientPrimes(format!(
                        "constant at [{}, {}] {} is ambiguous modulo {}",
                        a, b, key, m
                    )));
                }
                lifted.add_term(key, rep as i64);
            }
            brackets.insert((a, b), lifted);
        }
    }
    Ok(LiftedTable {
        variant,
        primes: primes.to_vec(),
        modulus,
        brackets,
    })
}

impl LiftedTable {
    /// Mismatches against the closed-form integral constants.
    pub fn diff_closed(&self) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for (&(a, b), got) in &self.brackets {
            let expected = closed_sym(self.variant, a, b);
            if *got != expected {
                out.push(Mismatch {
                    x: a,
                    y: b,
                    got: got.clone(),
                    expected,
                });
            }
        }
        out
    }
}

/// Basis symbol of the quotient of the even-case algebra by its center:
/// a_x for x >= 0, and b_y, c_y indexed by t = 2y odd.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum QuotientSym {
    A(i64),
    B(i64),
    C(i64),
}

impl fmt::Display for QuotientSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSym::A(x) => write!(f, "a[{}]", x),
            QuotientSym::B(t) => write!(f, "b[{}/2]", t),
            QuotientSym::C(t) => write!(f, "c[{}/2]", t),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QuotientElement {
    pub coeffs: BTreeMap<QuotientSym, i64>,
}

impl QuotientElement {
    fn add_term(&mut self, s: QuotientSym, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(s).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&s);
        }
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.coeffs {
            if first {
                write!(f, "{}*{}", c, s)?;
                first = false;
            } else {
                write!(f, " + {}*{}", c, s)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct QuotientReport {
    pub max_index: i64,
    pub brackets: Vec<(QuotientSym, QuotientSym, QuotientElement)>,
    pub mismatches: Vec<(QuotientSym, QuotientSym, QuotientElement, QuotientElement)>,
}

/// Reduces a u/z expression modulo the center span{u_{2x} + u_{-2x}} and
/// rewrites it in the quotient basis (z maps to 2 a_0).
fn reduce_to_quotient(e: &LieElement) -> QuotientElement {
    let mut out = QuotientElement::default();
    for (s, c) in e.terms() {
        match s {
            BasisSym::Z => out.add_term(QuotientSym::A(0), 2 * c),
            BasisSym::U(m) => {
                if m % 2 == 0 {
                    if m > 0 {
                        out.add_term(QuotientSym::A(m / 2), c);
                    } else {
                        out.add_term(QuotientSym::A(-m / 2), -c);
                    }
                } else if m > 0 {
                    out.add_term(QuotientSym::B(m), c);
                } else {
                    out.add_term(QuotientSym::C(-m), c);
                }
            }
        }
    }
    out
}

fn sgn(r: i64) -> i64 {
    if r > 0 {
        1
    } else {
        -1
    }
}

/// Closed-form quotient constants for indices t = 2y.
fn expected_quotient(a: QuotientSym, b: QuotientSym) -> QuotientElement {
    let mut out = QuotientElement::default();
    match (a, b) {
        (QuotientSym::A(_), QuotientSym::A(_)) => {}
        (QuotientSym::B(_), QuotientSym::B(_)) => {}
        (QuotientSym::C(_), QuotientSym::C(_)) => {}
        (QuotientSym::A(x), QuotientSym::B(t)) => {
            out.add_term(QuotientSym::B(t + 2 * x), 1);
            out.add_term(QuotientSym::B((t - 2 * x).abs()), sgn(t - 2 * x));
        }
        (QuotientSym::B(t), QuotientSym::A(x)) => {
            out.add_term(QuotientSym::B(t + 2 * x), -1);
            out.add_term(QuotientSym::B((t - 2 * x).abs()), -sgn(t - 2 * x));
        }
        (QuotientSym::A(x), QuotientSym::C(t)) => {
            out.add_term(QuotientSym::C(t + 2 * x), -1);
            out.add_term(QuotientSym::C((t - 2 * x).abs()), -sgn(t - 2 * x));
        }
        (QuotientSym::C(t), QuotientSym::A(x)) => {
            out.add_term(QuotientSym::C(t + 2 * x), 1);
            out.add_term(QuotientSym::C((t - 2 * x).abs()), sgn(t - 2 * x));
        }
        (QuotientSym::B(t), QuotientSym::C(t2)) => {
            out.add_term(QuotientSym::A((t + t2) / 2), 2);
            out.add_term(QuotientSym::A((t - t2).abs() / 2), -2);
        }
        (QuotientSym::C(t), QuotientSym::B(t2)) => {
            out.add_term(QuotientSym::A((t + t2) / 2), -2);
            out.add_term(QuotientSym::A((t2 - t).abs() / 2), 2);
        }
    }
    out
}

/// Quotient of the even-case integral Lie algebra by its center, on the basis
/// {a_x} u {b_y, c_y}. The input is any table of integral constants, e.g. the
/// verified closed forms or a CRT-lifted table; centrality of u_{2x}+u_{-2x}
/// is checked before substituting.
pub fn quotient_by_center<F, G>(table: F, zu: G, max_index: i64) -> Result<QuotientReport>
where
    F: Fn(i64, i64) -> LieElement,
    G: Fn(i64) -> LieElement,
{
    // centrality of u_{2x} + u_{-2x}
    for x in 1..=2 * max_index {
        for m in (-4 * max_index..=4 * max_index).filter(|&m| m != 0) {
            let s = table(2 * x, m).add(&table(-2 * x, m));
            if !s.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "u[{}] + u[{}] is not central against u[{}]",
                    2 * x,
                    -2 * x,
                    m
                )));
            }
        }
        let s = zu(2 * x).add(&zu(-2 * x));
        if !s.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "u[{}] + u[{}] is not central against z",
                2 * x,
                -2 * x
            )));
        }
    }
    // quotient basis within range
    let mut syms = Vec::new();
    for x in 0..=max_index {
        syms.push(QuotientSym::A(x));
    }
    for t in (1..=2 * max_index - 1).step_by(2) {
        syms.push(QuotientSym::B(t));
        syms.push(QuotientSym::C(t));
    }
    // representative in the u/z algebra; a_0 = z/2 handled by doubling
    let lift = |s: QuotientSym| -> (LieElement, i64) {
        match s {
            QuotientSym::A(0) => (LieElement::z(1), 2),
            QuotientSym::A(x) => (LieElement::u(2 * x, 1), 1),
            QuotientSym::B(t) => (LieElement::u(t, 1), 1),
            QuotientSym::C(t) => (LieElement::u(-t, 1), 1),
        }
    };
    let bracket_lifts = |ea: &LieElement, eb: &LieElement| -> LieElement {
        let mut out = LieElement::zero();
        for (sa, ca) in ea.terms() {
            for (sb, cb) in eb.terms() {
                let term = match (sa, sb) {
                    (BasisSym::Z, BasisSym::Z) => LieElement::zero(),
                    (BasisSym::Z, BasisSym::U(n)) => zu(n),
                    (BasisSym::U(n), BasisSym::Z) => zu(n).scale(-1),
                    (BasisSym::U(m), BasisSym::U(n)) => table(m, n),
                };
                out = out.add(&term.scale(ca * cb));
            }
        }
        out
    };
    let mut brackets = Vec::new();
    let mut mismatches = Vec::new();
    for &s1 in &syms {
        for &s2 in &syms {
            let (e1, d1) = lift(s1);
            let (e2, d2) = lift(s2);
            let raw = bracket_lifts(&e1, &e2);
            let mut got = reduce_to_quotient(&raw);
            // divide by the denominators from a_0 = z/2
            let den = d1 * d2;
            if den != 1 {
                let mut scaled = QuotientElement::default();
                for (&s, &c) in &got.coeffs {
                    if c % den != 0 {
                        return Err(Error::InvalidParameter(format!(
                            "non-integral quotient constant at [{}, {}]",
                            s1, s2
                        )));
                    }
                    scaled.add_term(s, c / den);
                }
                got = scaled;
            }
            let expected = expected_quotient(s1, s2);
            if got != expected {
                mismatches.push((s1, s2, got.clone(), expected));
            }
            brackets.push((s1, s2, got));
        }
    }
    Ok(QuotientReport {
        max_index,
        brackets,
        mismatches,
    })
}

#[derive(Debug)]
pub struct HeisenbergReport {
    pub max_index: i64,
    pub primes: Vec<u64>,
    pub failures: Vec<String>,
}

/// Smallest primes from a fixed pool until lcm(p-1) can pin magnitudes up to
/// `bound` in the symmetric range.
pub fn primes_for_magnitude(bound: i64) -> Vec<u64> {
    let pool = [3u64, 5, 7, 11, 13, 17, 19, 23];
    let mut chosen = Vec::new();
    let mut lcm = 1i64;
    for &p in &pool {
        chosen.push(p);
        let m = (p - 1) as i64;
        lcm = num_integer::lcm(lcm, m);
        if chosen.len() >= 2 && lcm > 2 * bound {
            break;
        }
    }
    chosen
}

/// Verifies the Chevalley-basis relations of the infinite-dimensional
/// Heisenberg algebra on the lifted root-category constants:
/// [-1/n u_n, u_{-n}] = z, z central, all other brackets zero.
pub fn heisenberg_check(max_index: i64, primes: &[u64]) -> Result<HeisenbergReport> {
    let table = lift_integral(Variant::RootCategory, primes, max_index)?;
    let mut failures = Vec::new();
    let get = |a: BasisSym, b: BasisSym| -> LieElement {
        table.brackets.get(&(a, b)).cloned().unwrap_or_default()
    };
    for n in 1..=max_index {
        // [-1/n u_n, u_{-n}] = z <=> [u_n, u_{-n}] = -n z
        let got = get(BasisSym::U(n), BasisSym::U(-n));
        if got != LieElement::z(-n) {
            failures.push(format!("[u[{}], u[{}]] = {} expected {}*z", n, -n, got, -n));
        }
        for m in (-max_index..=max_index).filter(|&m| m != 0) {
            if m == -n {
                continue;
            }
            let got = get(BasisSym::U(n), BasisSym::U(m));
            if !got.is_zero() {
                failures.push(format!("[u[{}], u[{}]] = {} expected 0", n, m, got));
            }
        }
    }
    for m in (-max_index..=max_index).filter(|&m| m != 0) {
        let got = get(BasisSym::Z, BasisSym::U(m));
        if !got.is_zero() {
            failures.push(format!("[z, u[{}]] = {} expected 0", m, got));
        }
    }
    Ok(HeisenbergReport {
        max_index,
        primes: primes.to_vec(),
        failures,
    })
}

/// Jacobi identity for the closed-form integral constants on all basis
/// triples with indices bounded by max_index; returns the failing triples.
pub fn jacobi_failures(variant: Variant, max_index: i64) -> Vec<(BasisSym, BasisSym, BasisSym)> {
    let syms = basis_range(max_index);
    let mut failures = Vec::new();
    for &a in &syms {
        let ea = sym_elem(a);
        for &b in &syms {
            let eb = sym_elem(b);
            let ab = closed_bracket(variant, &ea, &eb);
            for &c in &syms {
                let ec = sym_elem(c);
                let bc = closed_bracket(variant, &eb, &ec);
                let ca = closed_bracket(variant, &ec, &ea);
                let jac = closed_bracket(variant, &ab, &ec)
                    .add(&closed_bracket(variant, &bc, &ea))
                    .add(&closed_bracket(variant, &ca, &eb));
                if !jac.is_zero() {
                    failures.push((a, b, c));
                }
            }
        }
    }
    failures
}

fn sym_elem(s: BasisSym) -> LieElement {
    match s {
        BasisSym::Z => LieElement::z(1),
        BasisSym::U(m) => LieElement::u(m, 1),
    }
}
