//! Suite orchestration and reporting.
//!
//! Every verification the tool performs is exposed as a named check with a
//! frozen id and an anchor into the claim catalog (see docs/claims.md).
//! Checks never panic on bad input: a failed computation becomes a failing
//! check whose witness carries the error, so corrupted fixtures surface as
//! ordinary failures with exit code 1.  JSON reports are byte-deterministic:
//! checks are sorted by id, witness keys are sorted, and timings are kept
//! out of the JSON (the text renderer shows them instead).

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclo::CycNum;
use crate::exec::ExecMode;
use crate::fixtures::FixtureSource;
use crate::funfield::{
    chart_functions, identify_with_x1, named_substitution, substitution_cocycle_check,
    tower_report, verify_generator_table, ChartFunctions,
};
use crate::matgroup::{
    conjugation_transport, s4_relations, verify_relations, FiniteGroup, GroupElement, GroupTable,
    Mat3,
};
use crate::noether::{
    bookkeeping_identity_holds, certificate_for_orbit, exclusion_grid_holds, orbit_size_bound,
    prove_a5, prove_s4, small_orbit_obstructions, A5Options, ExclusionCertificate, S4Options,
};
use crate::perm::{char_degree_multisets, PermGroup};
use crate::picard::{
    apply_matrix, fiber_at, hexagon, induced_action, invariant_sublattice_of_maps, PicClass,
};
use crate::surface::{classify_small_orbits, MapGroup, MonomialMap, Orbit};

type CheckResult = Result<(bool, Value), Box<dyn std::error::Error>>;

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verification outcome.  The id and catalog anchor are frozen strings;
/// the witness holds enough exact data to re-check the claim by hand.
#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub suite: String,
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub witness: Value,
    #[serde(skip)]
    pub title: &'static str,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Serialize, Clone, Debug)]
pub struct Toolchain {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize, Clone, Debug)]
pub struct ConfigEcho {
    pub suites: Vec<String>,
    pub fixtures: String,
    pub format: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub toolchain: Toolchain,
    pub config: ConfigEcho,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Status::Skipped)
    }

    fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// 0 when every non-skipped check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed() == 0 {
            0
        } else {
            1
        }
    }

    /// Canonical JSON: checks sorted by id, struct keys in declaration
    /// order, witness keys sorted, no timings.  Byte-identical across runs
    /// on the same inputs.
    pub fn to_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut text = serde_json::to_string_pretty(&sorted).expect("report serializes");
        text.push('\n');
        text
    }

    /// Human-readable rendering: checks grouped by suite in execution
    /// order, with glyphs, timings, and the witness of every failure.
    pub fn to_text(&self) -> String {
        use fmt::Write;
        let mut out = String::new();
        let mut current = None;
        for check in &self.checks {
            if current != Some(&check.suite) {
                let _ = writeln!(out, "suite {}", check.suite);
                current = Some(&check.suite);
            }
            let glyph = match check.status {
                Status::Pass => "ok",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let _ = writeln!(
                out,
                "  [{glyph:>4}] {:<14} {:<22} {} ({} ms)",
                check.id, check.paper_ref, check.title, check.elapsed_ms
            );
            if check.status == Status::Fail {
                let _ = writeln!(
                    out,
                    "         witness: {}",
                    serde_json::to_string(&check.witness).expect("witness serializes")
                );
            }
        }
        let _ = writeln!(
            out,
            "summary: {} checks, {} passed, {} failed, {} skipped",
            self.checks.len(),
            self.passed(),
            self.failed(),
            self.skipped()
        );
        out
    }
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteName {
    Group,
    Orbits,
    Picard,
    Noether,
    A5,
    Funfield,
}

impl SuiteName {
    /// Execution order: group facts first, geometry next, then the two
    /// exclusion arguments, then the function-field tower.
    pub const ALL: [SuiteName; 6] = [
        SuiteName::Group,
        SuiteName::Orbits,
        SuiteName::Picard,
        SuiteName::Noether,
        SuiteName::A5,
        SuiteName::Funfield,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteName::Group => "group",
            SuiteName::Orbits => "orbits",
            SuiteName::Picard => "picard",
            SuiteName::Noether => "noether",
            SuiteName::A5 => "a5",
            SuiteName::Funfield => "funfield",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Run the selected suites in canonical order and assemble the report.
pub fn run_suites(
    label: &str,
    selected: &[SuiteName],
    fixtures: &FixtureSource,
    mode: ExecMode,
    format: &str,
) -> Report {
    let mut checks = Vec::new();
    for suite in SuiteName::ALL {
        if !selected.contains(&suite) {
            continue;
        }
        match suite {
            SuiteName::Group => group_suite(&mut checks, fixtures),
            SuiteName::Orbits => orbits_suite(&mut checks, fixtures),
            SuiteName::Picard => picard_suite(&mut checks, fixtures),
            SuiteName::Noether => noether_suite(&mut checks),
            SuiteName::A5 => a5_suite(&mut checks),
            SuiteName::Funfield => funfield_suite(&mut checks, mode),
        }
    }
    Report {
        suite: label.to_string(),
        checks,
        toolchain: Toolchain {
            name: "vgc",
            version: env!("CARGO_PKG_VERSION"),
        },
        config: ConfigEcho {
            suites: selected.iter().map(|s| s.name().to_string()).collect(),
            fixtures: fixtures.describe(),
            format: format.to_string(),
        },
    }
}

fn run_check(
    out: &mut Vec<Check>,
    suite: SuiteName,
    id: &str,
    paper_ref: &str,
    title: &'static str,
    body: impl FnOnce() -> CheckResult,
) {
    let start = Instant::now();
    let (status, witness) = match body() {
        Ok((true, witness)) => (Status::Pass, witness),
        Ok((false, witness)) => (Status::Fail, witness),
        Err(err) => (Status::Fail, json!({ "error": err.to_string() })),
    };
    out.push(Check {
        suite: suite.name().to_string(),
        id: id.to_string(),
        paper_ref: paper_ref.to_string(),
        status,
        witness,
        title,
        elapsed_ms: start.elapsed().as_millis(),
    });
}

fn find_element(
    pairs: &[(String, GroupElement)],
    label: &str,
) -> Result<GroupElement, Box<dyn std::error::Error>> {
    pairs
        .iter()
        .find(|(n, _)| n == label)
        .map(|(_, g)| g.clone())
        .ok_or_else(|| format!("generator {label} missing").into())
}

// ---------------------------------------------------------------------------
// group
// ---------------------------------------------------------------------------

fn group_suite(out: &mut Vec<Check>, fx: &FixtureSource) {
    let suite = SuiteName::Group;

    run_check(out, suite, "RHO.1", "§1.1", "order-24 matrix closure", || {
        let pairs = fx.s4_rho()?.generator_pairs()?;
        let table = GroupTable::generate(&pairs, GroupTable::DEFAULT_CAP)?;
        Ok((
            table.order() == 24,
            json!({
                "order": table.order(),
                "generators": table.generator_labels(),
            }),
        ))
    });

    run_check(out, suite, "RHO.2", "§1.1", "defining relations hold", || {
        let pairs = fx.s4_rho()?.generator_pairs()?;
        let gens: Vec<GroupElement> = pairs.into_iter().map(|(_, g)| g).collect();
        let outcomes = verify_relations(&gens, &s4_relations())?;
        let failed: Vec<&String> = outcomes
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect();
        Ok((
            failed.is_empty(),
            json!({ "relations": outcomes.len(), "failed": failed }),
        ))
    });

    run_check(out, suite, "G216.1", "§4 (1)", "order-216 closure", || {
        let pairs = fx.g216()?.generator_pairs()?;
        let table = GroupTable::generate(&pairs, GroupTable::DEFAULT_CAP)?;
        Ok((table.order() == 216, json!({ "order": table.order() })))
    });

    run_check(out, suite, "G216.2", "§4 (2)", "H1 is the order-24 group", || {
        let pairs = fx.g216()?.generator_pairs()?;
        let h1: Vec<(String, GroupElement)> = pairs
            .into_iter()
            .filter(|(n, _)| matches!(n.as_str(), "A" | "B" | "C1" | "C2"))
            .collect();
        let table = GroupTable::generate(&h1, GroupTable::DEFAULT_CAP)?;
        let gens: Vec<GroupElement> = h1.into_iter().map(|(_, g)| g).collect();
        let outcomes = verify_relations(&gens, &s4_relations())?;
        let relations_hold = outcomes.iter().all(|(_, ok)| *ok);
        Ok((
            table.order() == 24 && relations_hold,
            json!({ "order": table.order(), "relations_hold": relations_hold }),
        ))
    });

    run_check(out, suite, "G216.3", "§4 (3)", "H2 normal, G semidirect", || {
        let pairs = fx.g216()?.generator_pairs()?;
        let g_table = GroupTable::generate(&pairs, GroupTable::DEFAULT_CAP)?;
        let h2_gens: Vec<(String, GroupElement)> = pairs
            .iter()
            .filter(|(n, _)| matches!(n.as_str(), "D1" | "D2"))
            .cloned()
            .collect();
        let h2 = GroupTable::generate(&h2_gens, GroupTable::DEFAULT_CAP)?;
        let h2_indices: Vec<usize> = h2
            .elements()
            .iter()
            .map(|e| {
                g_table
                    .index_of(e)
                    .ok_or("subgroup element missing from the big closure")
            })
            .collect::<Result<_, _>>()?;
        let normal = g_table.is_subgroup_normal(&h2_indices);
        let h1_gens: Vec<(String, GroupElement)> = pairs
            .into_iter()
            .filter(|(n, _)| matches!(n.as_str(), "A" | "B" | "C1" | "C2"))
            .collect();
        let h1 = GroupTable::generate(&h1_gens, GroupTable::DEFAULT_CAP)?;
        let intersection = h1
            .elements()
            .iter()
            .filter(|e| h2.index_of(e).is_some())
            .count();
        let semidirect =
            normal && intersection == 1 && h1.order() * h2.order() == g_table.order();
        Ok((
            h2.order() == 9 && semidirect,
            json!({
                "h2_order": h2.order(),
                "normal": normal,
                "h1_h2_intersection": intersection,
                "h1_order_times_h2_order": h1.order() * h2.order(),
            }),
        ))
    });

    run_check(out, suite, "G216.4", "§4 (4)", "H3 normal of order 3", || {
        let pairs = fx.g216()?.generator_pairs()?;
        let g_table = GroupTable::generate(&pairs, GroupTable::DEFAULT_CAP)?;
        let d1 = find_element(&pairs, "D1")?;
        let d2 = find_element(&pairs, "D2")?;
        let gen = d1.mul(&d2)?.mul(&d2)?;
        let h3 = GroupTable::generate(
            &[("D1*D2^2".to_string(), gen)],
            GroupTable::DEFAULT_CAP,
        )?;
        let h3_indices: Vec<usize> = h3
            .elements()
            .iter()
            .map(|e| {
                g_table
                    .index_of(e)
                    .ok_or("subgroup element missing from the big closure")
            })
            .collect::<Result<_, _>>()?;
        let normal = g_table.is_subgroup_normal(&h3_indices);
        Ok((
            h3.order() == 3 && normal,
            json!({ "h3_order": h3.order(), "normal": normal }),
        ))
    });

    run_check(out, suite, "G216.5", "§4 (5)", "conjugation transport by t", || {
        let rho = fx.s4_rho()?.generator_pairs()?;
        let big = fx.g216()?.generator_pairs()?;
        let sources: Vec<Mat3> = ["s", "t", "l1", "l2"]
            .iter()
            .map(|n| Ok(find_element(&rho, n)?.mat().clone()))
            .collect::<Result<_, Box<dyn std::error::Error>>>()?;
        let targets: Vec<Mat3> = ["A", "B", "C1", "C2"]
            .iter()
            .map(|n| Ok(find_element(&big, n)?.mat().clone()))
            .collect::<Result<_, Box<dyn std::error::Error>>>()?;
        let t = find_element(&rho, "t")?.mat().clone();
        let holds = conjugation_transport(&sources, &targets, &t)?;
        Ok((
            holds,
            json!({
                "conjugator": "t",
                "assignment": ["s->A", "t->B", "l1->C1", "l2->C2"],
            }),
        ))
    });
}

// ---------------------------------------------------------------------------
// orbits
// ---------------------------------------------------------------------------

fn fixture_map_group(fx: &FixtureSource) -> Result<MapGroup, Box<dyn std::error::Error>> {
    let pairs = fx.s4_rho()?.generator_pairs()?;
    let gens: Vec<(String, Mat3)> = pairs
        .into_iter()
        .map(|(n, g)| (n, g.mat().clone()))
        .collect();
    Ok(MapGroup::from_matrices(&gens, MapGroup::DEFAULT_CAP)?)
}

fn render_point(p: &crate::surface::ProjPoint) -> String {
    let coord = |i: usize| match p.factor(i) {
        crate::surface::FactorVal::Finite(v) => v.to_string(),
        crate::surface::FactorVal::Infinity => "oo".to_string(),
    };
    format!("({}, {}, {})", coord(0), coord(1), coord(2))
}

fn orbits_suite(out: &mut Vec<Check>, fx: &FixtureSource) {
    let suite = SuiteName::Orbits;

    run_check(out, suite, "X1.invariant", "§1.1", "surface form preserved", || {
        let group = fixture_map_group(fx)?;
        let all_one = group
            .maps()
            .iter()
            .all(|m| m.invariance_scalar().is_one());
        Ok((
            group.order() == 24 && all_one,
            json!({ "elements": group.order(), "scalar": "1" }),
        ))
    });

    run_check(out, suite, "L1.3.i", "Lemma 1.3 (i)", "no orbits of size 1, 2, 5", || {
        let group = fixture_map_group(fx)?;
        let found = classify_small_orbits(&group, 6)?;
        let sizes = found.sizes();
        let clean = sizes.iter().all(|s| *s == 3 || *s == 4);
        Ok((
            clean && !found.whole_surface,
            json!({ "sizes": sizes, "excluded_sizes": [1, 2, 5] }),
        ))
    });

    run_check(out, suite, "L1.3.ii", "Lemma 1.3 (ii)", "twelve points in 3 orbits of 4", || {
        let group = fixture_map_group(fx)?;
        let found = classify_small_orbits(&group, 6)?;
        let quartets: Vec<&Orbit> =
            found.orbits.iter().filter(|o| o.size() == 4).collect();
        let points: usize = quartets.iter().map(|o| o.size()).sum();
        let all_affine = quartets
            .iter()
            .flat_map(|o| &o.points)
            .all(|p| p.infinity_count() == 0 && p.on_surface());
        let listing: Vec<Value> = quartets
            .iter()
            .map(|o| {
                json!({
                    "label": o.label,
                    "points": o.points.iter().map(render_point).collect::<Vec<_>>(),
                })
            })
            .collect();
        Ok((
            quartets.len() == 3 && points == 12 && all_affine,
            json!({ "orbits": listing, "points": points }),
        ))
    });

    run_check(out, suite, "L1.3.iii", "Lemma 1.3 (iii)", "six points in 2 orbits of 3", || {
        let group = fixture_map_group(fx)?;
        let found = classify_small_orbits(&group, 6)?;
        let trios: Vec<&Orbit> = found.orbits.iter().filter(|o| o.size() == 3).collect();
        let points: usize = trios.iter().map(|o| o.size()).sum();
        let all_boundary = trios
            .iter()
            .flat_map(|o| &o.points)
            .all(|p| p.infinity_count() > 0);
        let listing: Vec<Value> = trios
            .iter()
            .map(|o| {
                json!({
                    "label": o.label,
                    "points": o.points.iter().map(render_point).collect::<Vec<_>>(),
                })
            })
            .collect();
        Ok((
            trios.len() == 2 && points == 6 && all_boundary,
            json!({ "orbits": listing, "points": points }),
        ))
    });

    run_check(
        out,
        suite,
        "L1.3.fixture",
        "Lemma 1.3 (ii)-(iii)",
        "matches the reference point list",
        || {
            let group = fixture_map_group(fx)?;
            let found = classify_small_orbits(&group, 6)?;
            let reference = fx.lemma13_points()?;
            let matches = reference.bound == 6 && reference.to_orbits()? == found.orbits;
            Ok((
                matches,
                json!({
                    "reference_points": reference.total_points(),
                    "computed_points": found.total_points(),
                }),
            ))
        },
    );

    run_check(out, suite, "X1.orbstab", "Lemma 1.3", "orbit-stabilizer products", || {
        let group = fixture_map_group(fx)?;
        let found = classify_small_orbits(&group, 6)?;
        let mut rows = Vec::new();
        let mut all = true;
        for orbit in &found.orbits {
            for p in &orbit.points {
                let stab = group.stabilizer_order(p);
                all &= stab * orbit.size() == group.order();
                all &= stab == orbit.stabilizer_order;
            }
            rows.push(json!({
                "label": orbit.label,
                "orbit": orbit.size(),
                "stabilizer": orbit.stabilizer_order,
            }));
        }
        Ok((all, json!({ "group_order": 24, "orbits": rows })))
    });
}

// ---------------------------------------------------------------------------
// picard
// ---------------------------------------------------------------------------

fn fixture_monomial_maps(
    fx: &FixtureSource,
) -> Result<Vec<MonomialMap>, Box<dyn std::error::Error>> {
    Ok(fx
        .s4_rho()?
        .generator_pairs()?
        .iter()
        .map(|(_, g)| MonomialMap::from_matrix(g.mat()))
        .collect::<Result<_, _>>()?)
}

fn picard_suite(out: &mut Vec<Check>, fx: &FixtureSource) {
    let suite = SuiteName::Picard;

    run_check(out, suite, "L1.1", "Lemma 1.1", "boundary hexagon of (-1)-curves", || {
        let hex = hexagon()?;
        let mut ok = hex.len() == 6;
        for side in &hex {
            ok &= side.class.self_intersection() == -1;
            ok &= side.locus.lies_on_surface();
        }
        for i in 0..hex.len() {
            for j in 0..i {
                let expected = if (i - j) % 6 == 1 || (i - j) % 6 == 5 { 1 } else { 0 };
                ok &= hex[i].class.pairing(&hex[j].class) == expected;
            }
        }
        Ok((
            ok,
            json!({
                "curves": hex.iter().map(|s| s.name).collect::<Vec<_>>(),
                "self_intersection": -1,
                "adjacency": "6-cycle",
            }),
        ))
    });

    run_check(out, suite, "PIC.lattice", "Lemma 1.1 proof", "lattice facts and action", || {
        let hex = hexagon()?;
        let sum = hex
            .iter()
            .fold(PicClass::ZERO, |acc, side| acc + side.class);
        let minus_k = -PicClass::K;
        let mut ok = sum == minus_k && PicClass::K.self_intersection() == 6;
        let basis = [PicClass::F1, PicClass::F2, PicClass::E, PicClass::E_PRIME];
        for map in fixture_monomial_maps(fx)? {
            let action = induced_action(&map)?;
            for a in &basis {
                for b in &basis {
                    ok &= apply_matrix(&action.matrix, *a)
                        .pairing(&apply_matrix(&action.matrix, *b))
                        == a.pairing(b);
                }
            }
            ok &= apply_matrix(&action.matrix, PicClass::K) == PicClass::K;
        }
        Ok((
            ok,
            json!({
                "hexagon_sum": sum.to_string(),
                "k_squared": PicClass::K.self_intersection(),
                "pairing_preserved": true,
                "k_fixed": true,
            }),
        ))
    });

    run_check(out, suite, "L1.2", "Lemma 1.2", "invariant classes = Z(-K)", || {
        let maps = fixture_monomial_maps(fx)?;
        let basis = invariant_sublattice_of_maps(&maps)?;
        let minus_k = -PicClass::K;
        let generates = basis.len() == 1 && (basis[0] == minus_k || basis[0] == PicClass::K);
        Ok((
            generates,
            json!({
                "rank": basis.len(),
                "basis": basis.iter().map(PicClass::to_string).collect::<Vec<_>>(),
            }),
        ))
    });

    run_check(out, suite, "L1.4", "Lemma 1.4", "the three x-fibers", || {
        let omega = CycNum::omega();
        let values = [
            CycNum::one(),
            omega.clone(),
            &omega * &omega,
        ];
        let mut ok = true;
        let mut rows = Vec::new();
        for v in &values {
            let fiber = fiber_at(v)?;
            ok &= fiber.class.self_intersection() == 0;
            ok &= fiber.class.anticanonical_degree() == 2;
            ok &= fiber.locus.lies_on_surface();
            rows.push(format!("x = {v}"));
        }
        Ok((
            ok,
            json!({
                "fibers": rows,
                "self_intersection": 0,
                "anticanonical_degree": 2,
            }),
        ))
    });
}

// ---------------------------------------------------------------------------
// noether
// ---------------------------------------------------------------------------

fn builtin_map_group() -> Result<MapGroup, Box<dyn std::error::Error>> {
    let gens: Vec<(String, Mat3)> = crate::matgroup::rho_s4_generators()
        .into_iter()
        .map(|(n, g)| (n, g.mat().clone()))
        .collect();
    Ok(MapGroup::from_matrices(&gens, MapGroup::DEFAULT_CAP)?)
}

fn certificate_row(cert: &ExclusionCertificate) -> Value {
    json!({
        "orbit": cert.orbit_label,
        "orbit_size": cert.orbit_size,
        "curve": cert.curve,
        "curve_class": cert.curve_class.to_string(),
        "form": format!("{}a - {}r", cert.degree, cert.incidence),
        "excluded": cert.excluded,
    })
}

fn noether_suite(out: &mut Vec<Check>) {
    let suite = SuiteName::Noether;

    run_check(out, suite, "L2.1", "Lemma 2.1", "pullback bookkeeping identity", || {
        let holds = bookkeeping_identity_holds();
        Ok((holds, json!({ "identity": "H + mK transport under one blow-up" })))
    });

    run_check(out, suite, "L3.bound", "§3.1", "orbit size bound d < K^2", || {
        let at6 = orbit_size_bound(6);
        let at5 = orbit_size_bound(5);
        Ok((
            at6 == 5 && at5 == 4,
            json!({ "k_squared_6": at6, "k_squared_5": at5 }),
        ))
    });

    run_check(out, suite, "L3.1", "Lemma 3.1", "size-4 orbits excluded by fibers", || {
        let group = builtin_map_group()?;
        let found = classify_small_orbits(&group, 6)?;
        let mut rows = Vec::new();
        let mut ok = true;
        for orbit in found.orbits.iter().filter(|o| o.size() == 4) {
            let cert = certificate_for_orbit(orbit)?;
            ok &= cert.excluded && cert.degree == 2 && cert.incidence == 2;
            ok &= exclusion_grid_holds(cert.degree, -(cert.incidence as i64), 50);
            rows.push(certificate_row(&cert));
        }
        Ok((
            ok && rows.len() == 3,
            json!({ "certificates": rows, "grid_check": "1 <= a < r <= 50" }),
        ))
    });

    run_check(out, suite, "L3.2", "Lemma 3.2", "size-3 orbits excluded by sides", || {
        let group = builtin_map_group()?;
        let found = classify_small_orbits(&group, 6)?;
        let mut rows = Vec::new();
        let mut ok = true;
        for orbit in found.orbits.iter().filter(|o| o.size() == 3) {
            let cert = certificate_for_orbit(orbit)?;
            ok &= cert.excluded && cert.degree == 1 && cert.incidence == 1;
            ok &= exclusion_grid_holds(cert.degree, -(cert.incidence as i64), 50);
            rows.push(certificate_row(&cert));
        }
        Ok((
            ok && rows.len() == 2,
            json!({ "certificates": rows, "grid_check": "1 <= a < r <= 50" }),
        ))
    });

    run_check(out, suite, "THM.s4", "§3.1", "order-24 rigidity chain", || {
        let proof = prove_s4(&S4Options::default())?;
        let steps: Vec<Value> = proof
            .steps
            .iter()
            .map(|s| json!({ "step": s.name, "passed": s.passed }))
            .collect();
        Ok((
            proof.valid() && proof.certificates.len() == 5,
            json!({ "steps": steps, "orbits_excluded": proof.certificates.len() }),
        ))
    });
}

// ---------------------------------------------------------------------------
// a5
// ---------------------------------------------------------------------------

fn a5_suite(out: &mut Vec<Check>) {
    let suite = SuiteName::A5;

    run_check(out, suite, "A5.classes", "Lemma 1.5", "order-60 class data", || {
        let g = PermGroup::alternating_5();
        let class_sizes = g.class_sizes();
        let normal = g.normal_subgroup_orders();
        let perfect = g.commutator_subgroup().len() == g.order();
        Ok((
            g.order() == 60
                && class_sizes == vec![1, 12, 12, 15, 20]
                && normal == vec![1, 60]
                && perfect,
            json!({
                "order": g.order(),
                "class_sizes": class_sizes,
                "normal_subgroup_orders": normal,
                "perfect": perfect,
            }),
        ))
    });

    run_check(out, suite, "L1.5.d1", "Lemma 1.5", "no fixed point", || {
        let g = PermGroup::alternating_5();
        let degrees = char_degree_multisets(60, 5, 1);
        let unique = degrees == vec![vec![1, 3, 3, 4, 5]];
        let entry = small_orbit_obstructions(&g, 5, &degrees)
            .into_iter()
            .find(|o| o.size == 1)
            .ok_or("missing size-1 entry")?;
        Ok((
            unique && entry.excluded,
            json!({
                "degree_multisets": degrees,
                "reason": entry.reason,
            }),
        ))
    });

    run_check(out, suite, "L1.5.d2", "Lemma 1.5", "no orbit of size 2", || {
        let g = PermGroup::alternating_5();
        let degrees = char_degree_multisets(60, 5, 1);
        let entry = small_orbit_obstructions(&g, 5, &degrees)
            .into_iter()
            .find(|o| o.size == 2)
            .ok_or("missing size-2 entry")?;
        Ok((
            entry.excluded,
            json!({
                "normal_subgroup_orders": g.normal_subgroup_orders(),
                "reason": entry.reason,
            }),
        ))
    });

    run_check(out, suite, "L1.5.d34", "Lemma 1.5", "no orbit of size 3 or 4", || {
        let g = PermGroup::alternating_5();
        let degrees = char_degree_multisets(60, 5, 1);
        let entries: Vec<_> = small_orbit_obstructions(&g, 5, &degrees)
            .into_iter()
            .filter(|o| o.size == 3 || o.size == 4)
            .collect();
        let ok = entries.len() == 2 && entries.iter().all(|o| o.excluded);
        Ok((
            ok,
            json!({
                "reasons": entries
                    .iter()
                    .map(|o| json!({ "size": o.size, "reason": o.reason }))
                    .collect::<Vec<_>>(),
            }),
        ))
    });

    run_check(out, suite, "THM.a5", "§3.2", "order-60 rigidity chain", || {
        let proof = prove_a5(&A5Options::default())?;
        let steps: Vec<Value> = proof
            .steps
            .iter()
            .map(|s| json!({ "step": s.name, "passed": s.passed }))
            .collect();
        Ok((proof.valid(), json!({ "steps": steps })))
    });
}

// ---------------------------------------------------------------------------
// funfield
// ---------------------------------------------------------------------------

fn funfield_suite(out: &mut Vec<Check>, mode: ExecMode) {
    let suite = SuiteName::Funfield;

    run_check(out, suite, "L4.1.fixed", "Lemma 4.1", "u, v fixed by all of H3", || {
        let ChartFunctions { u, v, .. } = chart_functions();
        let d1 = named_substitution("D1")?;
        let d2 = named_substitution("D2")?;
        let gen = d1.compose(&d2.compose(&d2)?)?;
        let gen_sq = gen.compose(&gen)?;
        let mut ok = true;
        for s in [&gen, &gen_sq] {
            ok &= s.apply(&u)? == u;
            ok &= s.apply(&v)? == v;
        }
        Ok((
            ok,
            json!({ "subgroup": "H3", "elements_checked": 3, "fixed": ["u", "v"] }),
        ))
    });

    run_check(out, suite, "L4.1.table", "Lemma 4.1", "induced action on (u, v)", || {
        let entries = verify_generator_table()?;
        let rows: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "generator": e.generator,
                    "u_image": e.u_image.to_string(),
                    "v_image": e.v_image.to_string(),
                })
            })
            .collect();
        Ok((
            entries.len() == 4 && entries.iter().all(|e| e.matches),
            json!({ "rows": rows }),
        ))
    });

    run_check(out, suite, "L4.1.tower", "Lemma 4.1 proof", "tower degrees 3 and 9", || {
        let report = tower_report()?;
        let eigen_ok = report.theta_eigenvalue.as_ref() == Some(&CycNum::omega());
        let ok = report.u_h3_invariant
            && report.v_h3_invariant
            && eigen_ok
            && report.theta_cubed_is_v_over_u
            && report.u_not_h2_invariant
            && report.degree_over_uv == 3
            && report.h2_order == 9
            && report.h2_abelian
            && report.h2_exponent == 3
            && report.h2_substitutions_distinct;
        Ok((
            ok,
            json!({
                "theta_eigenvalue": report
                    .theta_eigenvalue
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "non-constant".to_string()),
                "theta_cubed": "v/u",
                "degree_over_uv": report.degree_over_uv,
                "h2": {
                    "order": report.h2_order,
                    "abelian": report.h2_abelian,
                    "exponent": report.h2_exponent,
                },
            }),
        ))
    });

    run_check(
        out,
        suite,
        "L4.1.recovery",
        "Lemma 4.1 proof",
        "coordinate recovery formulas",
        || {
            let report = tower_report()?;
            // The printed second formula is checked verbatim and its exact
            // value reported; recovery itself is carried by the corrected
            // form, so the claim catalog entry stays verifiable.
            let ok = report.x_recovery_holds && report.corrected_y_recovery_holds;
            Ok((
                ok,
                json!({
                    "x_formula": "u*theta",
                    "x_holds": report.x_recovery_holds,
                    "y_formula_as_printed": "theta/v",
                    "y_as_printed_evaluates_to": report.claimed_y_recovery_value,
                    "y_as_printed_holds": report.claimed_y_recovery_holds,
                    "y_corrected_formula": "v/theta",
                    "y_corrected_holds": report.corrected_y_recovery_holds,
                }),
            ))
        },
    );

    run_check(out, suite, "X1.identify", "§4", "coordinates match the surface", || {
        let id = identify_with_x1()?;
        Ok((
            id.holds(),
            json!({
                "product_uvw": "1",
                "pairs": id
                    .generator_matches
                    .iter()
                    .map(|(a, b, _)| format!("{a}={b}"))
                    .collect::<Vec<_>>(),
            }),
        ))
    });

    run_check(out, suite, "G216.subst", "§4", "substitutions respect the table", || {
        let check = substitution_cocycle_check(mode)?;
        Ok((
            check.holds && check.group_order == 216 && check.pairs_checked == 216 * 6,
            json!({
                "group_order": check.group_order,
                "pairs_checked": check.pairs_checked,
            }),
        ))
    });
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_report(names: &[SuiteName]) -> Report {
        run_suites(
            "test",
            names,
            &FixtureSource::embedded(),
            ExecMode::default(),
            "json",
        )
    }

    #[test]
    fn group_suite_passes_on_embedded_fixtures() {
        let report = quick_report(&[SuiteName::Group]);
        assert_eq!(report.checks.len(), 7);
        assert_eq!(report.failed(), 0, "{}", report.to_text());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn a5_and_noether_suites_pass() {
        let report = quick_report(&[SuiteName::Noether, SuiteName::A5]);
        assert_eq!(report.checks.len(), 10);
        assert_eq!(report.failed(), 0, "{}", report.to_text());
    }

    #[test]
    fn json_is_sorted_by_id_and_omits_timings() {
        let report = quick_report(&[SuiteName::Group]);
        let text = report.to_json();
        assert!(!text.contains("elapsed"));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let ids: Vec<&str> = value["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["id"].as_str().unwrap())
            .collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
        assert_eq!(value["suite"], "test");
        assert_eq!(value["toolchain"]["name"], "vgc");
    }

    #[test]
    fn empty_selection_gives_an_empty_passing_report() {
        let report = quick_report(&[]);
        assert!(report.checks.is_empty());
        assert_eq!(report.exit_code(), 0);
        assert!(report.to_text().contains("0 checks"));
    }

    #[test]
    fn missing_fixture_directory_fails_checks_instead_of_panicking() {
        let report = run_suites(
            "test",
            &[SuiteName::Group],
            &FixtureSource::directory("/nonexistent/vgc-fixtures"),
            ExecMode::default(),
            "json",
        );
        assert_eq!(report.failed(), report.checks.len());
        assert_eq!(report.exit_code(), 1);
        assert!(report.to_text().contains("witness"));
    }
}
