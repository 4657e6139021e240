//! Exact arithmetic in cyclotomic fields.
//!
//! A [`CycNum`] is an element of `Q(zeta_n)` stored as a rational coefficient
//! vector in the power basis of `Q[x]/(Phi_n)`. Every value is kept in a
//! canonical form: coefficients reduced mod `Phi_n`, rationals in lowest
//! terms, and the conductor minimal for the element. Structural equality
//! therefore coincides with equality in the field, which is what makes these
//! numbers usable as hash keys in group closures.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Mutex;

use num::{BigInt, BigRational, One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported radicand: not a rational multiple of a root of unity")]
    UnsupportedRadicand,
    #[error("root degree must be positive")]
    ZeroRootDegree,
    #[error("{0} is not a conductor of a subfield containing this element")]
    NotInSubfield(u32),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rat(s: &str) -> Result<Rat, CycError> {
    Rat::from_str(s.trim()).map_err(|_| CycError::BadRational(s.to_string()))
}

pub fn phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q, little-endian coefficient vectors.
// Only what the field arithmetic needs: ring ops, division, extended Euclid.
// ---------------------------------------------------------------------------

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_deg(p: &[Rat]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn poly_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(out)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    poly_trim(out)
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = poly_trim(b.to_vec());
    let db = poly_deg(&b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = poly_trim(a.to_vec());
    let mut quot: Vec<Rat> = Vec::new();
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let coef = &rem[dr] / &lead;
        if quot.len() < shift + 1 {
            quot.resize(shift + 1, Rat::zero());
        }
        quot[shift] = coef.clone();
        let mut sub = vec![Rat::zero(); shift];
        sub.extend(b.iter().map(|c| c * &coef));
        rem = poly_sub(&rem, &sub);
    }
    (poly_trim(quot), rem)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`.
fn poly_egcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Rat::one()];
    let mut s1: Vec<Rat> = Vec::new();
    let mut t0: Vec<Rat> = Vec::new();
    let mut t1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Vec<Rat>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients of the n-th cyclotomic polynomial `Phi_n`, little-endian.
pub fn cyclotomic_poly(n: u32) -> Vec<Rat> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively.
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    let mut den = vec![Rat::one()];
    for d in divisors(n) {
        if d < n {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    let (q, r) = poly_divmod(&num, &den);
    debug_assert!(r.is_empty(), "cyclotomic division must be exact");
    CYCLOTOMIC_CACHE.lock().unwrap().insert(n, q.clone());
    q
}

fn poly_mod_phi(p: &[Rat], n: u32) -> Vec<Rat> {
    let phi_poly = cyclotomic_poly(n);
    let (_, r) = poly_divmod(p, &phi_poly);
    r
}

/// Solves `A c = b` exactly; columns of `A` are `cols`. Returns `None` when
/// the system is inconsistent.
fn solve_linear(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = b.len();
    let ncols = cols.len();
    // Augmented matrix, row-major.
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols
                .iter()
                .map(|c| c.get(r).cloned().unwrap_or_else(Rat::zero))
                .collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..=ncols {
            let v = &m[row][c] * &inv;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=ncols {
                    let v = &m[r][c] - &(&m[row][c] * &f);
                    m[r][c] = v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero rhs.
    for r in row..rows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        sol[col] = m[i][ncols].clone();
    }
    Some(sol)
}

// ---------------------------------------------------------------------------
// CycNum
// ---------------------------------------------------------------------------

/// A cyclotomic number in canonical form (minimal conductor, reduced basis
/// coefficients). See the module docs for the equality guarantee.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    /// Builds an element of `Q(zeta_n)` from power-basis coefficients
    /// (little-endian in `zeta_n`; any length is accepted and reduced).
    pub fn new(n: u32, coeffs: Vec<Rat>) -> Result<Self, CycError> {
        if n == 0 {
            return Err(CycError::ZeroConductor);
        }
        let reduced = poly_mod_phi(&coeffs, n);
        Ok(Self::canonical(n, reduced))
    }

    pub fn from_coeffs_i64(n: u32, coeffs: &[i64]) -> Result<Self, CycError> {
        Self::new(n, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn canonical(n: u32, reduced: Vec<Rat>) -> Self {
        let mut padded = reduced;
        padded.resize(phi(n) as usize, Rat::zero());
        let candidate = CycNum {
            conductor: n,
            coeffs: padded,
        };
        candidate.minimize_conductor()
    }

    /// Reduces to the smallest conductor `d | n` whose field contains the
    /// element. The set of valid conductors is closed under gcd, so scanning
    /// divisors in increasing order finds the canonical one.
    fn minimize_conductor(self) -> Self {
        if self.conductor == 1 {
            return self;
        }
        for d in divisors(self.conductor) {
            if d == self.conductor {
                break;
            }
            if let Some(c) = self.project_coeffs(d) {
                return CycNum {
                    conductor: d,
                    coeffs: c,
                };
            }
        }
        self
    }

    /// Coefficients of `self` in the power basis of `Q(zeta_d)` when the
    /// element lies in that subfield (`d` must divide the conductor).
    fn project_coeffs(&self, d: u32) -> Option<Vec<Rat>> {
        let n = self.conductor;
        debug_assert!(n % d == 0);
        let step = (n / d) as usize;
        let cols: Vec<Vec<Rat>> = (0..phi(d) as usize)
            .map(|j| {
                let mut mono = vec![Rat::zero(); j * step + 1];
                mono[j * step] = Rat::one();
                let mut v = poly_mod_phi(&mono, n);
                v.resize(phi(n) as usize, Rat::zero());
                v
            })
            .collect();
        let mut sol = solve_linear(&cols, &self.coeffs)?;
        sol.resize(phi(d) as usize, Rat::zero());
        Some(sol)
    }

    pub fn zero() -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `zeta_n^k` in canonical form.
    pub fn root_of_unity(n: u32, k: u32) -> Result<Self, CycError> {
        if n == 0 {
            return Err(CycError::ZeroConductor);
        }
        let k = (k % n) as usize;
        let mut mono = vec![Rat::zero(); k + 1];
        mono[k] = Rat::one();
        Self::new(n, mono)
    }

    /// Primitive cube root of unity.
    pub fn omega() -> Self {
        Self::root_of_unity(3, 1).unwrap()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &CycNum::one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Power-basis coefficients of `self` inside `Q(zeta_m)`; the conductor
    /// must divide `m`.
    pub fn power_basis_in(&self, m: u32) -> Result<Vec<Rat>, CycError> {
        if m == 0 || m % self.conductor != 0 {
            return Err(CycError::NotInSubfield(m));
        }
        let step = (m / self.conductor) as usize;
        let mut acc = vec![Rat::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = vec![Rat::zero(); i * step + 1];
            mono[i * step] = c.clone();
            acc = poly_add(&acc, &mono);
        }
        let mut v = poly_mod_phi(&acc, m);
        v.resize(phi(m) as usize, Rat::zero());
        Ok(v)
    }

    fn binop(&self, other: &CycNum, f: impl Fn(&[Rat], &[Rat]) -> Vec<Rat>) -> CycNum {
        let m = lcm(self.conductor, other.conductor);
        let a = self.power_basis_in(m).expect("lcm embedding");
        let b = other.power_basis_in(m).expect("lcm embedding");
        let raw = f(&a, &b);
        let reduced = poly_mod_phi(&raw, m);
        CycNum::canonical(m, reduced)
    }

    pub fn inverse(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let n = self.conductor;
        let phi_poly = cyclotomic_poly(n);
        let (g, s, _) = poly_egcd(&self.coeffs, &phi_poly);
        debug_assert_eq!(poly_deg(&g), Some(0), "Phi_n is irreducible");
        let ginv = g[0].recip();
        let inv: Vec<Rat> = s.iter().map(|c| c * &ginv).collect();
        Ok(CycNum::canonical(n, poly_mod_phi(&inv, n)))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = CycNum::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiplicative order when `self` is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let cap = 2 * self.conductor.max(1);
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_one() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// Writes `self = q * u` with `q` rational and `u` a root of unity of the
    /// ambient field, when such a decomposition exists. Deterministic choice:
    /// smallest exponent first, `+zeta^j` before `-zeta^j`.
    pub fn decompose_rational_times_root(&self) -> Option<(Rat, CycNum)> {
        if self.is_zero() {
            return Some((Rat::zero(), CycNum::one()));
        }
        let n = self.conductor;
        for j in 0..n {
            for sign in [1i64, -1] {
                let mut u = CycNum::root_of_unity(n, j).unwrap();
                if sign < 0 {
                    u = -&u;
                }
                let q = self * &u.inverse().unwrap();
                if let Some(r) = q.as_rational() {
                    return Some((r.clone(), u));
                }
            }
        }
        None
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.binop(rhs, poly_add)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.binop(rhs, poly_sub)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.binop(rhs, poly_mul)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Div for &CycNum {
    type Output = CycNum;
    fn div(self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs).expect("division by zero CycNum")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let symbol = match self.conductor {
            1 => String::new(),
            3 => "w".to_string(),
            4 => "i".to_string(),
            n => format!("z{n}"),
        };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let unit = match k {
                0 => String::new(),
                1 => symbol.clone(),
                _ => format!("{symbol}^{k}"),
            };
            if unit.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{mag}*{unit}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

fn rat_nth_root(x: &Rat, k: u32) -> Option<Rat> {
    debug_assert!(x.is_positive());
    let num = x.numer().nth_root(k);
    let den = x.denom().nth_root(k);
    let cand = Rat::new(num, den);
    let mut p = Rat::one();
    for _ in 0..k {
        p *= &cand;
    }
    if &p == x {
        Some(cand)
    } else {
        None
    }
}

/// Complete set of k-th roots of `c` of the form rational times root of
/// unity, sorted canonically. Returns the empty vector when no root of that
/// form exists, and all `k` roots otherwise.
///
/// The radicand must itself be a rational multiple of a root of unity.
pub fn binomial_roots(k: u32, c: &CycNum) -> Result<Vec<CycNum>, CycError> {
    if k == 0 {
        return Err(CycError::ZeroRootDegree);
    }
    if c.is_zero() {
        return Ok(vec![CycNum::zero()]);
    }
    let (q, u) = c
        .decompose_rational_times_root()
        .ok_or(CycError::UnsupportedRadicand)?;
    let Some(s) = rat_nth_root(&q.abs(), k) else {
        return Ok(Vec::new());
    };
    // Fold the sign of q into the root-of-unity part.
    let u_eff = if q.is_negative() {
        -&u
    } else {
        u
    };
    let m = u_eff
        .root_of_unity_order()
        .expect("decomposition returns a root of unity");
    // u_eff is a primitive m-th root: locate its exponent.
    let j = (0..m)
        .find(|&j| CycNum::root_of_unity(m, j).unwrap() == u_eff)
        .expect("order search");
    let w0 = CycNum::root_of_unity(m * k, j)?;
    let s_cyc = CycNum::from_rat(s);
    let base = &s_cyc * &w0;
    let mut roots: Vec<CycNum> = (0..k)
        .map(|i| {
            let zk = CycNum::root_of_unity(k, i).unwrap();
            &base * &zk
        })
        .collect();
    for r in &roots {
        debug_assert_eq!(&r.pow(k as i64).unwrap(), c, "root verification");
    }
    roots.sort();
    roots.dedup();
    debug_assert_eq!(roots.len(), k as usize);
    Ok(roots)
}

/// Deterministic total order helper for sorting points and witnesses.
pub fn cyc_cmp(a: &CycNum, b: &CycNum) -> Ordering {
    a.cmp(b)
}
