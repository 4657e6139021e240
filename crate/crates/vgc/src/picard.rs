//! Intersection lattice of the compactified surface.
//!
//! Dropping the last coordinate maps the surface birationally onto P1 x P1:
//! the pair (x, y) determines z away from the two base points (0, oo) and
//! (oo, 0), and the boundary sides sitting over those base points are
//! contracted.  The surface is therefore P1 x P1 blown up in two points, and
//! its divisor class group is free of rank four on
//!
//!   f1 = a fiber {x = const},  f2 = a fiber {y = const},
//!   e  = the exceptional curve over (0, oo),
//!   e' = the exceptional curve over (oo, 0),
//!
//! with pairing f1.f2 = 1, e^2 = e'^2 = -1 and all other products zero.  The
//! module derives the classes of the six boundary sides from that projection,
//! transports monomial maps to lattice automorphisms through the hexagon
//! permutation they induce, and computes invariant sublattices exactly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclo::{CycError, CycNum, Rat};
use crate::surface::{
    CurveFactor, FactorVal, MonomialCurve, MonomialMap, ProjPoint, SurfaceError,
};

#[derive(Debug, Error)]
pub enum PicError {
    #[error("curve is not a boundary side of the compactified surface")]
    NotABoundaryCurve,
    #[error("the fiber over 0 or infinity is reducible and carries no single class")]
    DegenerateFiber,
    #[error("map does not permute the boundary hexagon")]
    NotAHexagonImage,
    #[error("hexagon permutation does not extend to a lattice map")]
    InconsistentAction,
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

// ---------------------------------------------------------------------------
// Divisor classes
// ---------------------------------------------------------------------------

/// A divisor class, written in the basis (f1, f2, e, e').
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PicClass(pub [i64; 4]);

impl PicClass {
    pub const ZERO: PicClass = PicClass([0, 0, 0, 0]);
    pub const F1: PicClass = PicClass([1, 0, 0, 0]);
    pub const F2: PicClass = PicClass([0, 1, 0, 0]);
    pub const E: PicClass = PicClass([0, 0, 1, 0]);
    pub const E_PRIME: PicClass = PicClass([0, 0, 0, 1]);
    /// Canonical class -2f1 - 2f2 + e + e'.
    pub const K: PicClass = PicClass([-2, -2, 1, 1]);

    /// The intersection pairing: f1.f2 = 1, e^2 = e'^2 = -1, all else 0.
    pub fn pairing(&self, other: &PicClass) -> i64 {
        let a = &self.0;
        let b = &other.0;
        a[0] * b[1] + a[1] * b[0] - a[2] * b[2] - a[3] * b[3]
    }

    pub fn self_intersection(&self) -> i64 {
        self.pairing(self)
    }

    /// Degree against the anticanonical class, (-K).C.
    pub fn anticanonical_degree(&self) -> i64 {
        (-PicClass::K).pairing(self)
    }
}

impl Add for PicClass {
    type Output = PicClass;
    fn add(self, rhs: PicClass) -> PicClass {
        PicClass([0, 1, 2, 3].map(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for PicClass {
    type Output = PicClass;
    fn sub(self, rhs: PicClass) -> PicClass {
        PicClass([0, 1, 2, 3].map(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for PicClass {
    type Output = PicClass;
    fn neg(self) -> PicClass {
        PicClass(self.0.map(|c| -c))
    }
}

impl Mul<PicClass> for i64 {
    type Output = PicClass;
    fn mul(self, rhs: PicClass) -> PicClass {
        PicClass(rhs.0.map(|c| self * c))
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["f1", "f2", "e", "e'"];
        let mut wrote = false;
        for (c, name) in self.0.iter().zip(NAMES) {
            if *c == 0 {
                continue;
            }
            if *c > 0 && wrote {
                write!(f, "+")?;
            }
            match c {
                1 => write!(f, "{name}")?,
                -1 => write!(f, "-{name}")?,
                c => write!(f, "{c}{name}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Boundary hexagon
// ---------------------------------------------------------------------------

/// A boundary side with its derived divisor class.
#[derive(Clone, Debug)]
pub struct BoundaryCurve {
    pub name: &'static str,
    pub locus: MonomialCurve,
    pub class: PicClass,
}

/// The six boundary sides in cyclic order: consecutive sides meet in one
/// point, all other pairs are disjoint.
pub fn hexagon() -> Result<Vec<BoundaryCurve>, PicError> {
    let zero = || FactorVal::zero();
    let inf = || FactorVal::Infinity;
    let free = || CurveFactor::Param {
        coeff: CycNum::one(),
        exp: 1,
    };
    let pin = |v: FactorVal| CurveFactor::Pinned(v);
    let sides: [(&'static str, [CurveFactor; 3]); 6] = [
        ("C1", [pin(inf()), pin(zero()), free()]),
        ("C2", [pin(inf()), free(), pin(zero())]),
        ("C3", [free(), pin(inf()), pin(zero())]),
        ("C4", [pin(zero()), pin(inf()), free()]),
        ("C5", [pin(zero()), free(), pin(inf())]),
        ("C6", [free(), pin(zero()), pin(inf())]),
    ];
    sides
        .into_iter()
        .map(|(name, factors)| {
            let locus = MonomialCurve::new(factors);
            let class = boundary_class(&locus)?;
            Ok(BoundaryCurve { name, locus, class })
        })
        .collect()
}

/// Class of a boundary side, read off from the projection to the first two
/// coordinates: a side with x and y both pinned is contracted to a base
/// point, so it is an exceptional curve; a side with x (resp. y) pinned and z
/// pinned projects onto a ruling fiber, and passes through a base point, so
/// it is the fiber class minus the matching exceptional class.
pub fn boundary_class(locus: &MonomialCurve) -> Result<PicClass, PicError> {
    if !locus.lies_on_surface() {
        return Err(PicError::NotABoundaryCurve);
    }
    let mut pinned: Vec<(usize, &FactorVal)> = Vec::new();
    let mut moving = 0usize;
    for (i, f) in locus.factors().iter().enumerate() {
        match f {
            CurveFactor::Pinned(v) => pinned.push((i, v)),
            CurveFactor::Param { exp, .. } if *exp != 0 => moving += 1,
            CurveFactor::Param { .. } => return Err(PicError::NotABoundaryCurve),
        }
    }
    if pinned.len() != 2 || moving != 1 {
        return Err(PicError::NotABoundaryCurve);
    }
    let at_zero = |v: &FactorVal| matches!(v, FactorVal::Finite(c) if c.is_zero());
    let at_inf = |v: &FactorVal| matches!(v, FactorVal::Infinity);
    if !pinned.iter().all(|(_, v)| at_zero(v) || at_inf(v)) {
        return Err(PicError::NotABoundaryCurve);
    }
    let (s0, v0) = pinned[0];
    let (s1, v1) = pinned[1];
    match (s0, s1) {
        // (x, y) pinned: the side over a base point.
        (0, 1) if at_zero(v0) && at_inf(v1) => Ok(PicClass::E),
        (0, 1) if at_inf(v0) && at_zero(v1) => Ok(PicClass::E_PRIME),
        // x pinned at a base-point abscissa: ruling fiber minus the
        // exceptional curve it meets.
        (0, 2) if at_zero(v0) => Ok(PicClass::F1 - PicClass::E),
        (0, 2) if at_inf(v0) => Ok(PicClass::F1 - PicClass::E_PRIME),
        // y pinned: the other ruling.
        (1, 2) if at_inf(v0) => Ok(PicClass::F2 - PicClass::E),
        (1, 2) if at_zero(v0) => Ok(PicClass::F2 - PicClass::E_PRIME),
        _ => Err(PicError::NotABoundaryCurve),
    }
}

// ---------------------------------------------------------------------------
// Fibers
// ---------------------------------------------------------------------------

/// A ruling fiber {x = v} avoiding the blown-up base points.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub x_value: CycNum,
    pub locus: MonomialCurve,
    pub class: PicClass,
}

/// The fiber over a finite nonzero abscissa: (v, t, 1/(v t)).  Over 0 and
/// infinity the fiber breaks into two boundary sides, so those are refused.
pub fn fiber_at(v: &CycNum) -> Result<Fiber, PicError> {
    if v.is_zero() {
        return Err(PicError::DegenerateFiber);
    }
    let locus = MonomialCurve::new([
        CurveFactor::Pinned(FactorVal::finite(v.clone())),
        CurveFactor::Param {
            coeff: CycNum::one(),
            exp: 1,
        },
        CurveFactor::Param {
            coeff: v.inverse()?,
            exp: -1,
        },
    ]);
    debug_assert!(locus.lies_on_surface());
    Ok(Fiber {
        x_value: v.clone(),
        locus,
        class: PicClass::F1,
    })
}

/// How many of the given points lie on the closed curve.
pub fn incidence_count(locus: &MonomialCurve, points: &[ProjPoint]) -> Result<usize, PicError> {
    let mut n = 0;
    for p in points {
        if locus.contains(p)? {
            n += 1;
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// Induced lattice action
// ---------------------------------------------------------------------------

pub type Mat4 = [[i64; 4]; 4];

/// A monomial map seen on the divisor lattice: the permutation of the six
/// boundary sides and the matrix it forces on the basis (f1, f2, e, e'),
/// acting on coefficient columns.
#[derive(Clone, Debug)]
pub struct InducedAction {
    /// `curve_images[i] = j` means the map carries side i to side j (0-based).
    pub curve_images: [usize; 6],
    pub matrix: Mat4,
}

/// Whether two monomial curves cover the same locus: pinned slots must agree
/// and a moving slot covers its whole P1 regardless of coefficient and
/// exponent sign.
fn same_locus(a: &MonomialCurve, b: &MonomialCurve) -> bool {
    a.factors().iter().zip(b.factors()).all(|(fa, fb)| match (fa, fb) {
        (CurveFactor::Pinned(u), CurveFactor::Pinned(v)) => u == v,
        (CurveFactor::Param { exp: ea, .. }, CurveFactor::Param { exp: eb, .. }) => {
            *ea != 0 && *eb != 0
        }
        _ => false,
    })
}

/// Transport a monomial map to the divisor lattice.  The first four hexagon
/// sides form a unimodular basis, so the permutation determines the matrix;
/// the remaining two sides then double-check its linearity.
pub fn induced_action(g: &MonomialMap) -> Result<InducedAction, PicError> {
    let hex = hexagon()?;
    let mut curve_images = [0usize; 6];
    for (i, side) in hex.iter().enumerate() {
        let image = side.locus.mapped_by(g);
        curve_images[i] = hex
            .iter()
            .position(|other| same_locus(&image, &other.locus))
            .ok_or(PicError::NotAHexagonImage)?;
    }
    let mut seen = [false; 6];
    for &j in &curve_images {
        if std::mem::replace(&mut seen[j], true) {
            return Err(PicError::NotAHexagonImage);
        }
    }

    let basis: Mat4 = columns([0, 1, 2, 3].map(|i| hex[i].class));
    let images: Mat4 = columns([0, 1, 2, 3].map(|i| hex[curve_images[i]].class));
    let inv = rational_inverse4(&basis).expect("the first four hexagon sides form a basis");
    let matrix = integer_product(&images, &inv).ok_or(PicError::InconsistentAction)?;

    // The matrix was forced by four sides; the other two must follow suit.
    for i in [4, 5] {
        if apply_matrix(&matrix, hex[i].class) != hex[curve_images[i]].class {
            return Err(PicError::InconsistentAction);
        }
    }
    Ok(InducedAction { curve_images, matrix })
}

pub fn apply_matrix(m: &Mat4, v: PicClass) -> PicClass {
    PicClass([0, 1, 2, 3].map(|i| (0..4).map(|j| m[i][j] * v.0[j]).sum()))
}

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0i64; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat4_identity() -> Mat4 {
    let mut m = [[0i64; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Matrix whose columns are the coefficient vectors of the given classes.
fn columns(classes: [PicClass; 4]) -> Mat4 {
    let mut m = [[0i64; 4]; 4];
    for (j, c) in classes.iter().enumerate() {
        for i in 0..4 {
            m[i][j] = c.0[i];
        }
    }
    m
}

fn rational_inverse4(b: &Mat4) -> Option<Vec<Vec<Rat>>> {
    // Gauss-Jordan on [b | I].
    let mut a: Vec<Vec<Rat>> = (0..4)
        .map(|i| {
            (0..8)
                .map(|j| {
                    if j < 4 {
                        Rat::from_integer(BigInt::from(b[i][j]))
                    } else if j == i + 4 {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..4 {
        let p = (c..4).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for entry in &mut a[c] {
            *entry = &*entry / &pivot;
        }
        for r in 0..4 {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let factor = a[r][c].clone();
            for j in 0..8 {
                let delta = &factor * &a[c][j];
                a[r][j] = &a[r][j] - &delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[4..].to_vec()).collect())
}

/// `a * binv`, demanding an integer result.
fn integer_product(a: &Mat4, binv: &[Vec<Rat>]) -> Option<Mat4> {
    let mut out = [[0i64; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for k in 0..4 {
                acc = &acc + &(&Rat::from_integer(BigInt::from(a[i][k])) * &binv[k][j]);
            }
            if !acc.is_integer() {
                return None;
            }
            *entry = acc.to_integer().to_i64()?;
        }
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Invariant sublattices
// ---------------------------------------------------------------------------

/// Basis of the common fixed sublattice {v : m v = v for every m}.  The
/// result spans the full saturated lattice of solutions; each basis vector is
/// normalized so its first nonzero entry is positive.
pub fn invariant_sublattice(mats: &[Mat4]) -> Vec<PicClass> {
    let mut rows: Vec<[i64; 4]> = Vec::new();
    for m in mats {
        for r in 0..4 {
            let mut row = m[r];
            row[r] -= 1;
            rows.push(row);
        }
    }
    integer_kernel(&rows).into_iter().map(PicClass).collect()
}

/// Induced lattice actions of the given maps, then their common fixed
/// sublattice.  Invariance under generators gives invariance under the whole
/// generated group.
pub fn invariant_sublattice_of_maps(maps: &[MonomialMap]) -> Result<Vec<PicClass>, PicError> {
    let mats = maps
        .iter()
        .map(|g| induced_action(g).map(|a| a.matrix))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(invariant_sublattice(&mats))
}

/// Integer kernel of a stacked matrix with four columns, via unimodular
/// column operations: reduce to column echelon form while tracking the
/// transform; the transform columns matching zero echelon columns span the
/// kernel lattice exactly.
fn integer_kernel(rows: &[[i64; 4]]) -> Vec<[i64; 4]> {
    let mut h: Vec<[i64; 4]> = rows.to_vec();
    let mut u = [[0i64; 4]; 4];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut pivots = 0usize;
    for r in 0..h.len() {
        if pivots == 4 {
            break;
        }
        loop {
            let mut nz: Vec<usize> = (pivots..4).filter(|&j| h[r][j] != 0).collect();
            match nz.as_slice() {
                [] => break,
                [j] => {
                    let j = *j;
                    col_swap(&mut h, &mut u, j, pivots);
                    pivots += 1;
                    break;
                }
                _ => {
                    // Euclid on the row entries: subtract multiples of the
                    // smallest from the others until at most one survives.
                    nz.sort_by_key(|&j| h[r][j].unsigned_abs());
                    let jp = nz[0];
                    for &j in &nz[1..] {
                        let q = h[r][j] / h[r][jp];
                        col_axpy(&mut h, &mut u, j, jp, -q);
                    }
                }
            }
        }
    }
    (pivots..4)
        .map(|j| {
            let mut v = [u[0][j], u[1][j], u[2][j], u[3][j]];
            if let Some(first) = v.iter().find(|&&c| c != 0) {
                if *first < 0 {
                    v = v.map(|c| -c);
                }
            }
            v
        })
        .collect()
}

fn col_swap(h: &mut [[i64; 4]], u: &mut Mat4, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut() {
        row.swap(a, b);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

fn col_axpy(h: &mut [[i64; 4]], u: &mut Mat4, dst: usize, src: usize, q: i64) {
    if q == 0 {
        return;
    }
    for row in h.iter_mut() {
        row[dst] += q * row[src];
    }
    for row in u.iter_mut() {
        row[dst] += q * row[src];
    }
}

// ---------------------------------------------------------------------------
