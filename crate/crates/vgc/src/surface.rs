//! The degree-6 surface inside (P1)^3 cut out by `x0*y0*z0 = x1*y1*z1`, the
//! signed monomial maps acting on it, exact fixed loci, and the finite
//! classification of small orbits.
//!
//! Points are stored per factor as an affine value or the point at infinity,
//! which keeps every branch of the fixed-locus case analysis exact: a factor
//! map is `v -> eps * v(source)`, so fixed conditions reduce to binomial
//! equations `t^k = c` solved in closed form over cyclotomic numbers.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::closure::{bfs_closure, BfsClosure};
use crate::cyclo::{binomial_roots, CycError, CycNum};
use crate::matgroup::{FiniteGroup, Mat3};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("matrix is not monomial (one nonzero entry per row and column)")]
    NotMonomial,
    #[error("factor permutation is not a bijection on three slots")]
    BadPermutation,
    #[error("map scalar must be nonzero")]
    ZeroScalar,
    #[error("map group did not close within cap of {cap} elements")]
    NotClosedWithinCap { cap: usize },
    #[error("curve parameter must be nonzero; use limits for the endpoints")]
    ZeroParameter,
    #[error(
        "subgroup of order {subgroup_order} fixes a curve pointwise; small orbits are not finite"
    )]
    FixedCurveInSmallOrbitSearch { subgroup_order: usize },
    #[error(transparent)]
    Cyc(#[from] CycError),
}

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

/// One P1 factor of a point: an exact affine value or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorVal {
    Finite(CycNum),
    Infinity,
}

impl FactorVal {
    pub fn zero() -> Self {
        FactorVal::Finite(CycNum::zero())
    }

    pub fn finite(v: CycNum) -> Self {
        FactorVal::Finite(v)
    }

    /// Homogeneous coordinates `[a, b]` with affine value `b/a`.
    fn homog(&self) -> (CycNum, CycNum) {
        match self {
            FactorVal::Finite(v) => (CycNum::one(), v.clone()),
            FactorVal::Infinity => (CycNum::zero(), CycNum::one()),
        }
    }

    fn scaled(&self, eps: &CycNum) -> FactorVal {
        match self {
            FactorVal::Finite(v) => FactorVal::Finite(eps * v),
            FactorVal::Infinity => FactorVal::Infinity,
        }
    }
}

impl fmt::Debug for FactorVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorVal::Finite(v) => write!(f, "{v}"),
            FactorVal::Infinity => write!(f, "oo"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    factors: [FactorVal; 3],
}

impl ProjPoint {
    pub fn new(factors: [FactorVal; 3]) -> Self {
        ProjPoint { factors }
    }

    pub fn from_affine(values: [CycNum; 3]) -> Self {
        let [x, y, z] = values;
        ProjPoint::new([
            FactorVal::Finite(x),
            FactorVal::Finite(y),
            FactorVal::Finite(z),
        ])
    }

    pub fn factor(&self, i: usize) -> &FactorVal {
        &self.factors[i]
    }

    pub fn infinity_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| matches!(f, FactorVal::Infinity))
            .count()
    }

    /// Value of the defining trihomogeneous form `x0*y0*z0 - x1*y1*z1` at
    /// this point (in the canonical coordinates of each factor).
    pub fn surface_form(&self) -> CycNum {
        let mut first = CycNum::one();
        let mut second = CycNum::one();
        for f in &self.factors {
            let (a, b) = f.homog();
            first = &first * &a;
            second = &second * &b;
        }
        &first - &second
    }

    pub fn on_surface(&self) -> bool {
        self.surface_form().is_zero()
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?}, {:?}, {:?})",
            self.factors[0], self.factors[1], self.factors[2]
        )
    }
}

// ---------------------------------------------------------------------------
// Monomial maps
// ---------------------------------------------------------------------------

/// A monomial automorphism of (P1)^3: image factor `i` is source factor
/// `perm[i]` with its affine value scaled by `scalars[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    perm: [usize; 3],
    scalars: [CycNum; 3],
}

impl MonomialMap {
    pub fn new(perm: [usize; 3], scalars: [CycNum; 3]) -> Result<Self, SurfaceError> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p >= 3 || seen[p] {
                return Err(SurfaceError::BadPermutation);
            }
            seen[p] = true;
        }
        if scalars.iter().any(CycNum::is_zero) {
            return Err(SurfaceError::ZeroScalar);
        }
        Ok(MonomialMap { perm, scalars })
    }

    pub fn identity() -> Self {
        MonomialMap {
            perm: [0, 1, 2],
            scalars: [CycNum::one(), CycNum::one(), CycNum::one()],
        }
    }

    /// Reads a monomial matrix as a map on (P1)^3 under the row-vector
    /// convention: the homomorphism sends a matrix product to `then` of the
    /// corresponding maps, in the same order.
    pub fn from_matrix(m: &Mat3) -> Result<Self, SurfaceError> {
        let mut perm = [usize::MAX; 3];
        let mut scalars = [CycNum::zero(), CycNum::zero(), CycNum::zero()];
        for j in 0..3 {
            let mut nonzero_rows = (0..3).filter(|&i| !m.entry(i, j).is_zero());
            let i = nonzero_rows.next().ok_or(SurfaceError::NotMonomial)?;
            if nonzero_rows.next().is_some() {
                return Err(SurfaceError::NotMonomial);
            }
            perm[j] = i;
            scalars[j] = m.entry(i, j).clone();
        }
        // Column check done; row check follows from perm being a bijection.
        MonomialMap::new(perm, scalars)
    }

    pub fn perm(&self) -> &[usize; 3] {
        &self.perm
    }

    pub fn scalars(&self) -> &[CycNum; 3] {
        &self.scalars
    }

    pub fn act(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(std::array::from_fn(|i| {
            p.factor(self.perm[i]).scaled(&self.scalars[i])
        }))
    }

    /// `self` followed by `other` as a right action: `p^(self.then(other)) =
    /// (p^self)^other`.
    pub fn then(&self, other: &MonomialMap) -> MonomialMap {
        MonomialMap {
            perm: std::array::from_fn(|i| self.perm[other.perm[i]]),
            scalars: std::array::from_fn(|i| {
                &other.scalars[i] * &self.scalars[other.perm[i]]
            }),
        }
    }

    /// The scalar `c` with `F o g = m1 - c*m2` for the two trihomogeneous
    /// monomials of the surface form; the surface is invariant iff `c = 1`.
    pub fn invariance_scalar(&self) -> CycNum {
        let mut c = CycNum::one();
        for s in &self.scalars {
            c = &c * s;
        }
        c
    }

    pub fn is_identity(&self) -> bool {
        self == &MonomialMap::identity()
    }
}

impl fmt::Debug for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Map(perm={:?}, eps=[{}, {}, {}])",
            self.perm, self.scalars[0], self.scalars[1], self.scalars[2]
        )
    }
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

/// One factor of a monomial curve: pinned at an exact point, or moving as
/// `coeff * t^exp` in the affine coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CurveFactor {
    Pinned(FactorVal),
    Param { coeff: CycNum, exp: i64 },
}

/// A curve `t -> (f0(t), f1(t), f2(t))` with monomial moving factors; the
/// closed curve includes the two limit points `t -> 0` and `t -> oo`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialCurve {
    factors: [CurveFactor; 3],
}

impl MonomialCurve {
    pub fn new(factors: [CurveFactor; 3]) -> Self {
        debug_assert!(
            factors.iter().any(|f| matches!(f, CurveFactor::Param { .. })),
            "a curve needs a moving factor"
        );
        MonomialCurve { factors }
    }

    pub fn factors(&self) -> &[CurveFactor; 3] {
        &self.factors
    }

    pub fn point_at(&self, t: &CycNum) -> Result<ProjPoint, SurfaceError> {
        if t.is_zero() {
            return Err(SurfaceError::ZeroParameter);
        }
        Ok(ProjPoint::new(std::array::from_fn(|i| {
            match &self.factors[i] {
                CurveFactor::Pinned(v) => v.clone(),
                CurveFactor::Param { coeff, exp } => {
                    let tv = t.pow(*exp).expect("nonzero parameter");
                    FactorVal::Finite(coeff * &tv)
                }
            }
        })))
    }

    /// Limit point as `t -> 0` (`at_zero`) or `t -> oo`.
    pub fn limit(&self, at_zero: bool) -> ProjPoint {
        ProjPoint::new(std::array::from_fn(|i| match &self.factors[i] {
            CurveFactor::Pinned(v) => v.clone(),
            CurveFactor::Param { coeff, exp } => {
                let sign = if at_zero { *exp } else { -*exp };
                match sign.cmp(&0) {
                    std::cmp::Ordering::Greater => FactorVal::zero(),
                    std::cmp::Ordering::Less => FactorVal::Infinity,
                    std::cmp::Ordering::Equal => FactorVal::Finite(coeff.clone()),
                }
            }
        }))
    }

    /// Whether every point of the curve satisfies the surface equation:
    /// the restriction of the form is `Pa - Pb*C*t^E` for pinned products
    /// `Pa`, `Pb` and moving data `C`, `E`, which vanishes identically iff
    /// both sides vanish or they match with `E = 0`.
    pub fn lies_on_surface(&self) -> bool {
        let mut pa = CycNum::one();
        let mut pb = CycNum::one();
        let mut c = CycNum::one();
        let mut e: i64 = 0;
        for f in &self.factors {
            match f {
                CurveFactor::Pinned(v) => {
                    let (a, b) = v.homog();
                    pa = &pa * &a;
                    pb = &pb * &b;
                }
                CurveFactor::Param { coeff, exp } => {
                    c = &c * coeff;
                    e += exp;
                }
            }
        }
        let rhs = &pb * &c;
        (pa.is_zero() && rhs.is_zero()) || (e == 0 && pa == rhs)
    }

    /// Whether the closed curve passes through `p`, endpoints included.
    pub fn contains(&self, p: &ProjPoint) -> Result<bool, SurfaceError> {
        if &self.limit(true) == p || &self.limit(false) == p {
            return Ok(true);
        }
        // Interior membership: solve for t from the first moving factor and
        // verify the full point.
        let Some(k) = self
            .factors
            .iter()
            .position(|f| matches!(f, CurveFactor::Param { exp, .. } if *exp != 0))
        else {
            // Every factor is constant in t; the "curve" is a single point.
            return Ok(&self.point_at(&CycNum::one())? == p);
        };
        let CurveFactor::Param { coeff, exp } = &self.factors[k] else {
            unreachable!()
        };
        let FactorVal::Finite(v) = p.factor(k) else {
            return Ok(false);
        };
        if v.is_zero() {
            return Ok(false);
        }
        let mut radicand = v.checked_div(coeff)?;
        if *exp < 0 {
            radicand = radicand.inverse()?;
        }
        for t in binomial_roots(exp.unsigned_abs() as u32, &radicand)? {
            if &self.point_at(&t)? == p {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Image curve under a monomial map, with the same parameter.
    pub fn mapped_by(&self, g: &MonomialMap) -> MonomialCurve {
        MonomialCurve {
            factors: std::array::from_fn(|i| match &self.factors[g.perm[i]] {
                CurveFactor::Pinned(v) => CurveFactor::Pinned(v.scaled(&g.scalars[i])),
                CurveFactor::Param { coeff, exp } => CurveFactor::Param {
                    coeff: &g.scalars[i] * coeff,
                    exp: *exp,
                },
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Fixed loci
// ---------------------------------------------------------------------------

/// Fixed locus of a monomial map on the surface: isolated points, pointwise
/// fixed curves, or the whole surface (identity only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocus {
    pub whole_surface: bool,
    pub points: Vec<ProjPoint>,
    pub curves: Vec<MonomialCurve>,
}

/// Per-cycle and per-fixed-factor solution choices for the fixed-point
/// conditions `v_i = eps_i * v_perm(i)`.
enum SlotChoice {
    /// Moving family along a cycle with closing scalar product 1:
    /// `(slot, coeff)` pairs with `v_slot = coeff * t`.
    Family(Vec<(usize, CycNum)>),
    /// All slots of the cycle pinned together at 0 or oo.
    Pinned(Vec<(usize, FactorVal)>),
    /// A fixed factor with scalar 1: unconstrained slot.
    Free(usize),
}

fn cycles_of(perm: &[usize; 3]) -> Vec<Vec<usize>> {
    let mut seen = [false; 3];
    let mut cycles = Vec::new();
    for start in 0..3 {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut j = perm[start];
        while j != start {
            seen[j] = true;
            cycle.push(j);
            j = perm[j];
        }
        cycles.push(cycle);
    }
    cycles
}

pub fn fixed_locus(g: &MonomialMap) -> Result<FixedLocus, SurfaceError> {
    if g.is_identity() {
        return Ok(FixedLocus {
            whole_surface: true,
            points: Vec::new(),
            curves: Vec::new(),
        });
    }

    // Options per cycle of the factor permutation. A length-1 cycle with
    // scalar 1 is a free slot; with scalar != 1 the slot is pinned to 0 or
    // oo. A longer cycle closes into a moving family iff the product of its
    // scalars is 1, and otherwise pins all its slots together at 0 or oo.
    let mut options: Vec<Vec<SlotChoice>> = Vec::new();
    for cycle in cycles_of(&g.perm) {
        if cycle.len() == 1 {
            let s = cycle[0];
            if g.scalars[s].is_one() {
                options.push(vec![SlotChoice::Free(s)]);
            } else {
                options.push(vec![
                    SlotChoice::Pinned(vec![(s, FactorVal::zero())]),
                    SlotChoice::Pinned(vec![(s, FactorVal::Infinity)]),
                ]);
            }
        } else {
            let mut prod = CycNum::one();
            for &s in &cycle {
                prod = &prod * &g.scalars[s];
            }
            if prod.is_one() {
                // Walk the cycle: v_perm(i) = v_i / eps_i, starting at t.
                let mut coeffs = vec![(cycle[0], CycNum::one())];
                let mut at = cycle[0];
                let mut val = CycNum::one();
                loop {
                    let next = g.perm[at];
                    if next == cycle[0] {
                        break;
                    }
                    val = val.checked_div(&g.scalars[at])?;
                    coeffs.push((next, val.clone()));
                    at = next;
                }
                options.push(vec![SlotChoice::Family(coeffs)]);
            } else {
                options.push(vec![
                    SlotChoice::Pinned(
                        cycle.iter().map(|&s| (s, FactorVal::zero())).collect(),
                    ),
                    SlotChoice::Pinned(
                        cycle.iter().map(|&s| (s, FactorVal::Infinity)).collect(),
                    ),
                ]);
            }
        }
    }

    let mut points: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut curves: Vec<MonomialCurve> = Vec::new();

    // Cartesian product over per-cycle options (at most 8 combinations).
    let mut combo = vec![0usize; options.len()];
    loop {
        let choices: Vec<&SlotChoice> = combo
            .iter()
            .zip(&options)
            .map(|(&c, opts)| &opts[c])
            .collect();
        resolve_combination(&choices, &mut points, &mut curves)?;

        // Advance the mixed-radix counter.
        let mut k = 0;
        loop {
            if k == combo.len() {
                break;
            }
            combo[k] += 1;
            if combo[k] < options[k].len() {
                break;
            }
            combo[k] = 0;
            k += 1;
        }
        if k == combo.len() {
            break;
        }
    }

    Ok(FixedLocus {
        whole_surface: false,
        points: points.into_iter().collect(),
        curves,
    })
}

/// Intersects one choice combination with the surface and pushes the
/// resulting components.
fn resolve_combination(
    choices: &[&SlotChoice],
    points: &mut BTreeSet<ProjPoint>,
    curves: &mut Vec<MonomialCurve>,
) -> Result<(), SurfaceError> {
    let mut pinned: Vec<(usize, FactorVal)> = Vec::new();
    let mut family: Option<&[(usize, CycNum)]> = None;
    let mut free: Vec<usize> = Vec::new();
    for ch in choices {
        match ch {
            SlotChoice::Pinned(ps) => pinned.extend(ps.iter().cloned()),
            SlotChoice::Family(cs) => {
                debug_assert!(family.is_none(), "at most one moving cycle on three slots");
                family = Some(cs.as_slice());
            }
            SlotChoice::Free(s) => free.push(*s),
        }
    }

    // Products of homogeneous coordinates over the pinned slots.
    let mut pa = CycNum::one();
    let mut pb = CycNum::one();
    for (_, v) in &pinned {
        let (a, b) = v.homog();
        pa = &pa * &a;
        pb = &pb * &b;
    }

    let assemble_point = |extra: &[(usize, FactorVal)]| -> ProjPoint {
        let mut slots: [Option<FactorVal>; 3] = [None, None, None];
        for (s, v) in pinned.iter().chain(extra) {
            slots[*s] = Some(v.clone());
        }
        ProjPoint::new(slots.map(|s| s.expect("all slots assigned")))
    };
    let curve_factors = |moving: &[(usize, CurveFactor)]| -> MonomialCurve {
        let mut slots: [Option<CurveFactor>; 3] = [None, None, None];
        for (s, v) in &pinned {
            slots[*s] = Some(CurveFactor::Pinned(v.clone()));
        }
        for (s, f) in moving {
            slots[*s] = Some(f.clone());
        }
        MonomialCurve::new(slots.map(|s| s.expect("all slots assigned")))
    };

    match (family, free.len()) {
        (None, 0) => {
            let p = assemble_point(&[]);
            if p.on_surface() {
                points.insert(p);
            }
        }
        (None, 1) => {
            let f = free[0];
            if pa.is_zero() && pb.is_zero() {
                // Form vanishes identically: the whole free factor survives.
                let c = curve_factors(&[(
                    f,
                    CurveFactor::Param {
                        coeff: CycNum::one(),
                        exp: 1,
                    },
                )]);
                debug_assert!(c.lies_on_surface());
                curves.push(c);
            } else if pa.is_zero() {
                points.insert(assemble_point(&[(f, FactorVal::zero())]));
            } else if pb.is_zero() {
                points.insert(assemble_point(&[(f, FactorVal::Infinity)]));
            }
            // pa, pb both nonzero cannot happen for 0/oo pinned slots.
        }
        (None, 2) => {
            // One pinned slot at 0 or oo; the form factors as a product over
            // the free slots, giving two crossing lines.
            let pin_at_zero = pb.is_zero();
            for &moving_slot in &free {
                let other: Vec<(usize, FactorVal)> = free
                    .iter()
                    .filter(|&&s| s != moving_slot)
                    .map(|&s| {
                        let v = if pin_at_zero {
                            FactorVal::Infinity
                        } else {
                            FactorVal::zero()
                        };
                        (s, v)
                    })
                    .collect();
                let mut moving = vec![(
                    moving_slot,
                    CurveFactor::Param {
                        coeff: CycNum::one(),
                        exp: 1,
                    },
                )];
                for (s, v) in other {
                    moving.push((s, CurveFactor::Pinned(v)));
                }
                let c = curve_factors(&moving);
                debug_assert!(c.lies_on_surface());
                curves.push(c);
            }
        }
        (None, 3..) => unreachable!("three free slots means the identity map"),
        (Some(fam), 0) => {
            // Restriction of the form: Pa - Pb * C * t^L.
            let mut c = CycNum::one();
            for (_, ci) in fam {
                c = &c * ci;
            }
            let l = fam.len() as i64;
            let fam_factors: Vec<(usize, CurveFactor)> = fam
                .iter()
                .map(|(s, ci)| {
                    (
                        *s,
                        CurveFactor::Param {
                            coeff: ci.clone(),
                            exp: 1,
                        },
                    )
                })
                .collect();
            let curve = curve_factors(&fam_factors);
            let rhs_coeff = &pb * &c;
            if pa.is_zero() && rhs_coeff.is_zero() {
                debug_assert!(curve.lies_on_surface());
                curves.push(curve);
            } else {
                if !pa.is_zero() && !rhs_coeff.is_zero() {
                    let radicand = pa.checked_div(&rhs_coeff)?;
                    for t in binomial_roots(l as u32, &radicand)? {
                        let p = curve.point_at(&t)?;
                        debug_assert!(p.on_surface());
                        points.insert(p);
                    }
                }
                for at_zero in [true, false] {
                    let p = curve.limit(at_zero);
                    if p.on_surface() {
                        points.insert(p);
                    }
                }
            }
        }
        (Some(fam), 1) => {
            // No slot left to pin: the free factor is forced to C^-1 * t^-L.
            debug_assert!(pinned.is_empty());
            let mut c = CycNum::one();
            for (_, ci) in fam {
                c = &c * ci;
            }
            let l = fam.len() as i64;
            let mut moving: Vec<(usize, CurveFactor)> = fam
                .iter()
                .map(|(s, ci)| {
                    (
                        *s,
                        CurveFactor::Param {
                            coeff: ci.clone(),
                            exp: 1,
                        },
                    )
                })
                .collect();
            moving.push((
                free[0],
                CurveFactor::Param {
                    coeff: c.inverse().expect("scalar coefficients are nonzero"),
                    exp: -l,
                },
            ));
            let curve = curve_factors(&moving);
            debug_assert!(curve.lies_on_surface());
            curves.push(curve);
        }
        (Some(_), _) => unreachable!("a moving cycle and two free slots exceed three factors"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Map groups
// ---------------------------------------------------------------------------

pub struct MapGroup {
    closure: BfsClosure<MonomialMap>,
    labels: Vec<String>,
    inv: Vec<usize>,
}

impl MapGroup {
    pub const DEFAULT_CAP: usize = 10_000;

    pub fn generate(
        generators: &[(String, MonomialMap)],
        cap: usize,
    ) -> Result<Self, SurfaceError> {
        let (labels, gens): (Vec<String>, Vec<MonomialMap>) = generators.iter().cloned().unzip();
        let closure = bfs_closure(MonomialMap::identity(), &gens, |a, b| a.then(b), cap)
            .map_err(|e| SurfaceError::NotClosedWithinCap { cap: e.cap })?;
        let n = closure.elements.len();
        let all_labels = (0..n).map(|i| closure.label(i, &labels)).collect();
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            if inv[i] != usize::MAX {
                continue;
            }
            let j = (0..n)
                .find(|&j| closure.mul_idx(i, j) == 0)
                .expect("finite group has inverses");
            inv[i] = j;
            inv[j] = i;
        }
        Ok(MapGroup {
            closure,
            labels: all_labels,
            inv,
        })
    }

    /// Group generated by the monomial maps of matrix generators, under the
    /// row-vector reading; the element order mirrors the matrix closure.
    pub fn from_matrices(generators: &[(String, Mat3)], cap: usize) -> Result<Self, SurfaceError> {
        let maps: Vec<(String, MonomialMap)> = generators
            .iter()
            .map(|(l, m)| Ok((l.clone(), MonomialMap::from_matrix(m)?)))
            .collect::<Result<_, SurfaceError>>()?;
        Self::generate(&maps, cap)
    }

    pub fn maps(&self) -> &[MonomialMap] {
        &self.closure.elements
    }

    pub fn map(&self, i: usize) -> &MonomialMap {
        &self.closure.elements[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn orbit(&self, p: &ProjPoint) -> Vec<ProjPoint> {
        let set: BTreeSet<ProjPoint> = self.maps().iter().map(|g| g.act(p)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer_order(&self, p: &ProjPoint) -> usize {
        self.maps().iter().filter(|g| &g.act(p) == p).count()
    }
}

impl FiniteGroup for MapGroup {
    fn order(&self) -> usize {
        self.closure.elements.len()
    }

    fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.closure.mul_idx(i, j)
    }

    fn inv_idx(&self, i: usize) -> usize {
        self.inv[i]
    }
}

// ---------------------------------------------------------------------------
// Small-orbit classification
// ---------------------------------------------------------------------------

/// A finite orbit found by the small-orbit search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<ProjPoint>,
    pub stabilizer_order: usize,
    pub label: String,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

/// Result of the small-orbit classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallOrbits {
    /// True when the bound exceeds the group order, making every point's
    /// orbit small; no finite list exists then.
    pub whole_surface: bool,
    /// Orbits of size strictly below the bound, sorted by decreasing size
    /// then by point list.
    pub orbits: Vec<Orbit>,
}

impl SmallOrbits {
    pub fn total_points(&self) -> usize {
        self.orbits.iter().map(Orbit::size).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::size).collect()
    }
}

/// Structural name for an orbit of the standard order-24 action: size-4
/// orbits carry the affine value of their diagonal member, size-3 orbits
/// split by their boundary pattern (two infinities vs one).
fn orbit_label(points: &[ProjPoint]) -> String {
    if points.len() == 4 {
        let omega = CycNum::omega();
        let omega2 = &omega * &omega;
        for p in points {
            if let (FactorVal::Finite(a), FactorVal::Finite(b), FactorVal::Finite(c)) =
                (p.factor(0), p.factor(1), p.factor(2))
            {
                if a == b && b == c {
                    if a.is_one() {
                        return "R1".to_string();
                    } else if *a == omega {
                        return "R2".to_string();
                    } else if *a == omega2 {
                        return "R3".to_string();
                    }
                }
            }
        }
    } else if points.len() == 3 {
        match points[0].infinity_count() {
            2 => return "P".to_string(),
            1 => return "Q".to_string(),
            _ => {}
        }
    }
    format!("orbit{}", points.len())
}

/// Solution set in the curve parameter `t` (over nonzero values).
enum TSet {
    All,
    Finite(BTreeSet<CycNum>),
    Empty,
}

impl TSet {
    fn intersect(self, other: TSet) -> TSet {
        match (self, other) {
            (TSet::All, o) => o,
            (s, TSet::All) => s,
            (TSet::Empty, _) | (_, TSet::Empty) => TSet::Empty,
            (TSet::Finite(a), TSet::Finite(b)) => {
                let i: BTreeSet<CycNum> = a.intersection(&b).cloned().collect();
                if i.is_empty() {
                    TSet::Empty
                } else {
                    TSet::Finite(i)
                }
            }
        }
    }
}

/// Parameter values where `image(t) = original(t)` holds for one factor of a
/// mapped curve.
fn factor_constraint(original: &CurveFactor, image: &CurveFactor) -> Result<TSet, SurfaceError> {
    let solve_monomial = |coeff: &CycNum, exp: i64, target: &CycNum| -> Result<TSet, SurfaceError> {
        // coeff * t^exp = target over t != 0.
        if exp == 0 {
            return Ok(if coeff == target { TSet::All } else { TSet::Empty });
        }
        if target.is_zero() {
            return Ok(TSet::Empty);
        }
        let mut radicand = target.checked_div(coeff)?;
        if exp < 0 {
            radicand = radicand.inverse()?;
        }
        let roots = binomial_roots(exp.unsigned_abs() as u32, &radicand)?;
        Ok(if roots.is_empty() {
            TSet::Empty
        } else {
            TSet::Finite(roots.into_iter().collect())
        })
    };

    match (original, image) {
        (CurveFactor::Pinned(a), CurveFactor::Pinned(b)) => {
            Ok(if a == b { TSet::All } else { TSet::Empty })
        }
        (CurveFactor::Param { coeff: c1, exp: e1 }, CurveFactor::Param { coeff: c2, exp: e2 }) => {
            // c2 * t^e2 = c1 * t^e1  <=>  t^(e2-e1) = c1/c2.
            let ratio = c1.checked_div(c2)?;
            solve_monomial(&CycNum::one(), e2 - e1, &ratio)
        }
        (CurveFactor::Pinned(v), CurveFactor::Param { coeff, exp }) => match v {
            FactorVal::Infinity => Ok(TSet::Empty),
            FactorVal::Finite(v) => solve_monomial(coeff, *exp, v),
        },
        (CurveFactor::Param { coeff, exp }, CurveFactor::Pinned(v)) => match v {
            FactorVal::Infinity => Ok(TSet::Empty),
            FactorVal::Finite(v) => solve_monomial(coeff, *exp, v),
        },
    }
}

/// All orbits of size strictly less than `bound`, found by scanning fixed
/// loci of the subgroups large enough to stabilize such an orbit.
///
/// Errors if some qualifying subgroup fixes a curve pointwise — the set of
/// small-orbit points is infinite then and no classification list exists.
pub fn classify_small_orbits(
    group: &MapGroup,
    bound: usize,
) -> Result<SmallOrbits, SurfaceError> {
    let n = group.order();
    let mut candidates: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut whole_surface = false;

    for sub in group.all_subgroups() {
        if sub.len() * bound <= n {
            continue;
        }
        if sub.len() == 1 {
            // Even trivial stabilizers qualify: every orbit is small.
            whole_surface = true;
            continue;
        }
        let h0 = group.map(sub[1]);
        let locus = fixed_locus(h0)?;
        debug_assert!(!locus.whole_surface);
        let fixed_by_all =
            |p: &ProjPoint| sub.iter().all(|&hi| &group.map(hi).act(p) == p);
        for p in &locus.points {
            if fixed_by_all(p) {
                candidates.insert(p.clone());
            }
        }
        for curve in &locus.curves {
            // Interior: intersect the per-element fixedness constraints.
            let mut ts = TSet::All;
            for &hi in &sub {
                let h = group.map(hi);
                let image = curve.mapped_by(h);
                for k in 0..3 {
                    let c = factor_constraint(&curve.factors()[k], &image.factors()[k])?;
                    ts = ts.intersect(c);
                }
            }
            match ts {
                TSet::All => {
                    return Err(SurfaceError::FixedCurveInSmallOrbitSearch {
                        subgroup_order: sub.len(),
                    });
                }
                TSet::Finite(roots) => {
                    for t in roots {
                        let p = curve.point_at(&t)?;
                        debug_assert!(p.on_surface());
                        if fixed_by_all(&p) {
                            candidates.insert(p);
                        }
                    }
                }
                TSet::Empty => {}
            }
            // Endpoints live on the closed curve but need their own check.
            for at_zero in [true, false] {
                let p = curve.limit(at_zero);
                if p.on_surface() && fixed_by_all(&p) {
                    candidates.insert(p.clone());
                }
            }
        }
    }

    // Group candidate points into orbits and keep the small ones.
    let mut orbits: BTreeSet<Vec<ProjPoint>> = BTreeSet::new();
    for p in &candidates {
        let orbit = group.orbit(p);
        if orbit.len() < bound {
            orbits.insert(orbit);
        }
    }
    let mut list: Vec<Orbit> = orbits
        .into_iter()
        .map(|points| {
            let stab = group.stabilizer_order(&points[0]);
            debug_assert_eq!(stab * points.len(), n, "orbit-stabilizer consistency");
            let label = orbit_label(&points);
            Orbit {
                points,
                stabilizer_order: stab,
                label,
            }
        })
        .collect();
    list.sort_by(|a, b| {
        b.size()
            .cmp(&a.size())
            .then_with(|| a.points.cmp(&b.points))
    });
    Ok(SmallOrbits {
        whole_surface,
        orbits: list,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;
    use crate::matgroup::rho_s4_generators;
    use proptest::prelude::*;

    fn standard_group() -> MapGroup {
        let gens: Vec<(String, Mat3)> = rho_s4_generators()
            .into_iter()
            .map(|(l, g)| (l, g.mat().clone()))
            .collect();
        MapGroup::from_matrices(&gens, MapGroup::DEFAULT_CAP).unwrap()
    }

    fn fin(n: i64) -> FactorVal {
        FactorVal::Finite(CycNum::from_int(n))
    }

    fn pt(f0: FactorVal, f1: FactorVal, f2: FactorVal) -> ProjPoint {
        ProjPoint::new([f0, f1, f2])
    }

    fn oo() -> FactorVal {
        FactorVal::Infinity
    }

    #[test]
    fn surface_membership() {
        // (2, 3, 1/6) satisfies xyz = 1; (1, 1, 2) does not.
        let p = ProjPoint::from_affine([
            CycNum::from_int(2),
            CycNum::from_int(3),
            CycNum::from_rat(rat(1, 6)),
        ]);
        assert!(p.on_surface());
        let q = ProjPoint::from_affine([
            CycNum::from_int(1),
            CycNum::from_int(1),
            CycNum::from_int(2),
        ]);
        assert!(!q.on_surface());
        // Boundary points need one 0 and one oo.
        assert!(pt(oo(), fin(0), fin(5)).on_surface());
        assert!(!pt(oo(), fin(3), fin(5)).on_surface());
        assert!(!pt(fin(0), fin(3), fin(5)).on_surface());
    }

    #[test]
    fn map_group_closes_at_order_24() {
        let g = standard_group();
        assert_eq!(g.order(), 24);
        assert_eq!(g.class_sizes(), vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn every_element_preserves_the_surface() {
        let g = standard_group();
        for m in g.maps() {
            assert!(m.invariance_scalar().is_one());
        }
        // Spot check: images of a surface point stay on the surface.
        let p = ProjPoint::from_affine([
            CycNum::from_int(2),
            CycNum::from_int(3),
            CycNum::from_rat(rat(1, 6)),
        ]);
        for m in g.maps() {
            assert!(m.act(&p).on_surface());
        }
    }

    #[test]
    fn sign_change_map_fixes_two_points_and_two_curves() {
        // l1*l2 reads as (x, y, z) -> (x, -y, -z).
        let gens = rho_s4_generators();
        let l1 = MonomialMap::from_matrix(gens[2].1.mat()).unwrap();
        let l2 = MonomialMap::from_matrix(gens[3].1.mat()).unwrap();
        let m = l1.then(&l2);
        assert_eq!(m.perm(), &[0, 1, 2]);
        let locus = fixed_locus(&m).unwrap();
        assert_eq!(locus.points.len(), 2);
        assert!(locus.points.contains(&pt(fin(0), oo(), oo())));
        assert!(locus.points.contains(&pt(oo(), fin(0), fin(0))));
        assert_eq!(locus.curves.len(), 2);
        for c in &locus.curves {
            assert!(c.lies_on_surface());
            assert!(matches!(c.factors()[0], CurveFactor::Param { .. }));
        }
    }

    #[test]
    fn three_cycle_fixes_the_three_diagonal_cube_roots() {
        let gens = rho_s4_generators();
        let tau = MonomialMap::from_matrix(gens[1].1.mat()).unwrap();
        assert_eq!(tau.perm(), &[1, 2, 0]);
        let locus = fixed_locus(&tau).unwrap();
        assert!(locus.curves.is_empty());
        assert_eq!(locus.points.len(), 3);
        let w = CycNum::omega();
        for k in 0..3u32 {
            let r = w.pow(k as i64).unwrap();
            let p = ProjPoint::from_affine([r.clone(), r.clone(), r]);
            assert!(locus.points.contains(&p), "missing diagonal root {k}");
        }
    }

    #[test]
    fn transposition_fixes_a_twisted_diagonal_curve() {
        let gens = rho_s4_generators();
        let sigma = MonomialMap::from_matrix(gens[0].1.mat()).unwrap();
        let locus = fixed_locus(&sigma).unwrap();
        assert!(locus.points.is_empty());
        assert_eq!(locus.curves.len(), 1);
        let c = &locus.curves[0];
        assert!(c.lies_on_surface());
        // (t, t, t^-2): check a sample point and the two limits.
        let two = CycNum::from_int(2);
        let sample = c.point_at(&two).unwrap();
        assert_eq!(
            sample,
            ProjPoint::from_affine([
                CycNum::from_int(2),
                CycNum::from_int(2),
                CycNum::from_rat(rat(1, 4)),
            ])
        );
        assert_eq!(c.limit(true), pt(fin(0), fin(0), oo()));
        assert_eq!(c.limit(false), pt(oo(), oo(), fin(0)));
    }

    #[test]
    fn orbit_and_stabilizer_of_the_unit_diagonal() {
        let g = standard_group();
        let p = ProjPoint::from_affine([CycNum::one(), CycNum::one(), CycNum::one()]);
        let orbit = g.orbit(&p);
        assert_eq!(orbit.len(), 4);
        assert_eq!(g.stabilizer_order(&p), 6);
        // Sign patterns: (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
        assert!(orbit.contains(&pt(fin(1), fin(-1), fin(-1))));
        assert!(orbit.contains(&pt(fin(-1), fin(1), fin(-1))));
        assert!(orbit.contains(&pt(fin(-1), fin(-1), fin(1))));
    }

    #[test]
    fn orbit_and_stabilizer_of_a_boundary_point() {
        let g = standard_group();
        let p1 = pt(oo(), fin(0), oo());
        assert_eq!(g.stabilizer_order(&p1), 8);
        let orbit = g.orbit(&p1);
        assert_eq!(orbit.len(), 3);
        assert!(orbit.contains(&pt(fin(0), oo(), oo())));
        assert!(orbit.contains(&pt(oo(), oo(), fin(0))));
    }

    #[test]
    fn generic_point_has_trivial_stabilizer() {
        let g = standard_group();
        let p = ProjPoint::from_affine([
            CycNum::from_int(2),
            CycNum::from_int(3),
            CycNum::from_rat(rat(1, 6)),
        ]);
        assert_eq!(g.stabilizer_order(&p), 1);
        assert_eq!(g.orbit(&p).len(), 24);
    }

    #[test]
    fn small_orbit_classification_finds_the_five_orbits() {
        let g = standard_group();
        let result = classify_small_orbits(&g, 6).unwrap();
        assert!(!result.whole_surface);
        assert_eq!(result.sizes(), vec![4, 4, 4, 3, 3]);
        assert_eq!(result.total_points(), 18);
        let labels: Vec<&str> = result.orbits.iter().map(|o| o.label.as_str()).collect();
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec!["P", "Q", "R1", "R2", "R3"]);
        for o in &result.orbits {
            let expected_stab = match o.size() {
                4 => 6,
                3 => 8,
                _ => unreachable!(),
            };
            assert_eq!(o.stabilizer_order, expected_stab);
            for p in &o.points {
                assert!(p.on_surface());
            }
        }
    }

    #[test]
    fn no_orbits_below_three() {
        let g = standard_group();
        let result = classify_small_orbits(&g, 3).unwrap();
        assert!(result.orbits.is_empty());
        assert!(!result.whole_surface);
    }

    #[test]
    fn boundary_orbits_split_by_infinity_pattern() {
        let g = standard_group();
        let result = classify_small_orbits(&g, 6).unwrap();
        let p_orbit = result.orbits.iter().find(|o| o.label == "P").unwrap();
        let q_orbit = result.orbits.iter().find(|o| o.label == "Q").unwrap();
        assert!(p_orbit.points.iter().all(|p| p.infinity_count() == 2));
        assert!(q_orbit.points.iter().all(|p| p.infinity_count() == 1));
        assert!(q_orbit.points.contains(&pt(fin(0), fin(0), oo())));
        assert!(p_orbit.points.contains(&pt(fin(0), oo(), oo())));
    }

    fn arb_map() -> impl Strategy<Value = MonomialMap> {
        let perms = prop_oneof![
            Just([0usize, 1, 2]),
            Just([1, 0, 2]),
            Just([0, 2, 1]),
            Just([2, 1, 0]),
            Just([1, 2, 0]),
            Just([2, 0, 1]),
        ];
        let sign = prop_oneof![Just(1i64), Just(-1)];
        (perms, [sign.clone(), sign.clone(), sign]).prop_map(|(p, s)| {
            MonomialMap::new(p, s.map(CycNum::from_int)).unwrap()
        })
    }

    fn arb_point() -> impl Strategy<Value = ProjPoint> {
        let factor = prop_oneof![
            (-3i64..=3).prop_map(|v| FactorVal::Finite(CycNum::from_int(v))),
            Just(FactorVal::Infinity),
        ];
        [factor.clone(), factor.clone(), factor].prop_map(ProjPoint::new)
    }

    proptest! {
        #[test]
        fn then_matches_pointwise_composition(
            g in arb_map(), h in arb_map(), p in arb_point()
        ) {
            let lhs = g.then(&h).act(&p);
            let rhs = h.act(&g.act(&p));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn then_is_associative(a in arb_map(), b in arb_map(), c in arb_map()) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        }

        #[test]
        fn fixed_locus_points_are_fixed_and_on_surface(g in arb_map()) {
            prop_assume!(!g.is_identity());
            let locus = fixed_locus(&g).unwrap();
            for p in &locus.points {
                prop_assert!(p.on_surface());
                prop_assert_eq!(&g.act(p), p);
            }
            for c in &locus.curves {
                prop_assert!(c.lies_on_surface());
                let sample = c.point_at(&CycNum::from_int(5)).unwrap();
                prop_assert!(sample.on_surface());
                prop_assert_eq!(&g.act(&sample), &sample);
            }
        }
    }
}
