//! End-to-end gate: one line per criterion, sequential, no test harness.
//! Exits nonzero if any criterion fails, so `cargo test` reports it.

use std::fs;
use std::path::Path;
use std::process::Command;

use vgc::cyclo::CycNum;
use vgc::fixtures::FixtureSource;
use vgc::funfield::{
    chart_functions, identify_with_x1, named_substitution, tower_report, verify_generator_table,
    ChartFunctions,
};
use vgc::matgroup::{
    conjugation_transport, g216_generators, rho_s4_generators, s4_relations, verify_relations,
    FiniteGroup, GroupElement, GroupTable, Mat3,
};
use vgc::noether::{
    certificate_for_orbit, exclusion_grid_holds, exclusion_test, orbit_size_bound, prove_a5,
    prove_s4, A5Options, S4Options,
};
use vgc::perm::{char_degree_multisets, PermGroup};
use vgc::picard::{fiber_at, hexagon, invariant_sublattice_of_maps, PicClass};
use vgc::surface::{classify_small_orbits, MapGroup, MonomialMap, SmallOrbits};

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

type Outcome = Result<(), String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn main() {
    let criteria: Vec<(u32, fn() -> Outcome)> = vec![
        (1, group_orders),
        (2, presentation_and_transport),
        (3, surface_invariance),
        (4, small_orbit_census),
        (5, picard_suite),
        (6, noether_suite),
        (7, a5_suite),
        (8, function_field_suite),
        (9, deterministic_json),
        (10, fault_injection),
    ];
    let mut failures = 0;
    for (n, body) in criteria {
        match body() {
            Ok(()) => println!("criterion {n}: PASS"),
            Err(msg) => {
                println!("criterion {n}: FAIL - {msg}");
                failures += 1;
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

fn find(pairs: &[(String, GroupElement)], label: &str) -> Result<GroupElement, String> {
    pairs
        .iter()
        .find(|(n, _)| n == label)
        .map(|(_, g)| g.clone())
        .ok_or_else(|| format!("generator {label} missing"))
}

fn subgroup_order(
    pairs: &[(String, GroupElement)],
    labels: &[&str],
) -> Result<usize, String> {
    let gens: Vec<(String, GroupElement)> = pairs
        .iter()
        .filter(|(n, _)| labels.contains(&n.as_str()))
        .cloned()
        .collect();
    ensure!(gens.len() == labels.len(), "missing generators among {labels:?}");
    Ok(GroupTable::generate(&gens, GroupTable::DEFAULT_CAP)
        .map_err(err)?
        .order())
}

fn group_orders() -> Outcome {
    let rho = rho_s4_generators();
    let rho_order = GroupTable::generate(&rho, GroupTable::DEFAULT_CAP)
        .map_err(err)?
        .order();
    ensure!(rho_order == 24, "linear closure has order {rho_order}, want 24");

    let big = g216_generators();
    let big_order = GroupTable::generate(&big, GroupTable::DEFAULT_CAP)
        .map_err(err)?
        .order();
    ensure!(big_order == 216, "projective closure has order {big_order}, want 216");

    let h2 = subgroup_order(&big, &["D1", "D2"])?;
    ensure!(h2 == 9, "diagonal subgroup has order {h2}, want 9");

    let d1 = find(&big, "D1")?;
    let d2 = find(&big, "D2")?;
    let h3_gen = d1.mul(&d2).map_err(err)?.mul(&d2).map_err(err)?;
    let h3 = GroupTable::generate(&[("g".to_string(), h3_gen)], GroupTable::DEFAULT_CAP)
        .map_err(err)?
        .order();
    ensure!(h3 == 3, "cyclic center factor has order {h3}, want 3");
    Ok(())
}

fn presentation_and_transport() -> Outcome {
    let relations = s4_relations();

    let rho = rho_s4_generators();
    let rho_gens: Vec<GroupElement> = rho.iter().map(|(_, g)| g.clone()).collect();
    let outcomes = verify_relations(&rho_gens, &relations).map_err(err)?;
    for (name, ok) in &outcomes {
        ensure!(*ok, "relation {name} fails on the linear generators");
    }

    let big = g216_generators();
    let assigned: Vec<GroupElement> = ["A", "B", "C1", "C2"]
        .iter()
        .map(|n| find(&big, n))
        .collect::<Result<_, _>>()?;
    let outcomes = verify_relations(&assigned, &relations).map_err(err)?;
    for (name, ok) in &outcomes {
        ensure!(*ok, "relation {name} fails on the A, B, C1, C2 assignment");
    }

    let sources: Vec<Mat3> = rho_gens.iter().map(|g| g.mat().clone()).collect();
    let targets: Vec<Mat3> = assigned.iter().map(|g| g.mat().clone()).collect();
    let conjugator = rho_gens[1].mat().clone();
    let transported = conjugation_transport(&sources, &targets, &conjugator).map_err(err)?;
    ensure!(transported, "conjugation by the order-3 generator does not transport");
    Ok(())
}

fn standard_map_group() -> Result<MapGroup, String> {
    let gens: Vec<(String, Mat3)> = rho_s4_generators()
        .into_iter()
        .map(|(n, g)| (n, g.mat().clone()))
        .collect();
    MapGroup::from_matrices(&gens, MapGroup::DEFAULT_CAP).map_err(err)
}

fn surface_invariance() -> Outcome {
    let group = standard_map_group()?;
    ensure!(group.order() == 24, "map closure has order {}, want 24", group.order());
    for (i, map) in group.maps().iter().enumerate() {
        let scalar = map.invariance_scalar();
        ensure!(
            scalar.is_one(),
            "element {i} rescales the surface form by {scalar}"
        );
    }
    Ok(())
}

fn census() -> Result<SmallOrbits, String> {
    classify_small_orbits(&standard_map_group()?, 6).map_err(err)
}

fn small_orbit_census() -> Outcome {
    let found = census()?;
    ensure!(!found.whole_surface, "bound exceeds the group order");
    let sizes = found.sizes();
    ensure!(sizes == vec![4, 4, 4, 3, 3], "orbit sizes are {sizes:?}, want [4, 4, 4, 3, 3]");
    ensure!(found.total_points() == 18, "{} points, want 18", found.total_points());
    for forbidden in [1, 2, 5] {
        ensure!(
            !sizes.contains(&forbidden),
            "an orbit of forbidden size {forbidden} exists"
        );
    }
    let reference = FixtureSource::embedded().lemma13_points().map_err(err)?;
    ensure!(reference.bound == 6, "reference bound is {}", reference.bound);
    let reference_orbits = reference.to_orbits().map_err(err)?;
    ensure!(
        reference_orbits == found.orbits,
        "computed orbits disagree with the reference point table"
    );
    Ok(())
}

fn picard_suite() -> Outcome {
    let hex = hexagon().map_err(err)?;
    ensure!(hex.len() == 6, "{} boundary curves, want 6", hex.len());
    let mut sum = PicClass::ZERO;
    for (i, side) in hex.iter().enumerate() {
        let sq = side.class.self_intersection();
        ensure!(sq == -1, "side {} has self-intersection {sq}, want -1", side.name);
        sum = sum + side.class;
        for (j, other) in hex.iter().enumerate().take(i) {
            let expected = if (i - j) % 6 == 1 || (i - j) % 6 == 5 { 1 } else { 0 };
            let got = side.class.pairing(&other.class);
            ensure!(
                got == expected,
                "sides {} and {} meet in {got} points, want {expected}",
                side.name,
                other.name
            );
        }
    }
    ensure!(sum == -PicClass::K, "hexagon sum is {sum}, want -K");
    ensure!(PicClass::K.self_intersection() == 6, "K^2 != 6");

    let omega = CycNum::omega();
    for x in [CycNum::one(), omega.clone(), &omega * &omega] {
        let fiber = fiber_at(&x).map_err(err)?;
        ensure!(
            fiber.class.self_intersection() == 0,
            "fiber over {x} has nonzero self-intersection"
        );
        ensure!(
            fiber.class.anticanonical_degree() == 2,
            "fiber over {x} has anticanonical degree {}",
            fiber.class.anticanonical_degree()
        );
    }

    let maps: Vec<MonomialMap> = rho_s4_generators()
        .iter()
        .map(|(_, g)| MonomialMap::from_matrix(g.mat()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let basis = invariant_sublattice_of_maps(&maps).map_err(err)?;
    ensure!(basis.len() == 1, "invariant sublattice has rank {}", basis.len());
    ensure!(
        basis[0] == -PicClass::K || basis[0] == PicClass::K,
        "invariant generator is {}, want the primitive anticanonical class",
        basis[0]
    );
    Ok(())
}

fn noether_suite() -> Outcome {
    ensure!(orbit_size_bound(6) == 5, "bound at degree 6 is {}", orbit_size_bound(6));
    ensure!(orbit_size_bound(5) == 4, "bound at degree 5 is {}", orbit_size_bound(5));

    let found = census()?;
    let mut quartets = 0;
    let mut trios = 0;
    for orbit in &found.orbits {
        let cert = certificate_for_orbit(orbit).map_err(err)?;
        ensure!(cert.excluded, "orbit {} is not excluded", orbit.label);
        let (c0, c1) = (cert.degree, -(cert.incidence as i64));
        match orbit.size() {
            4 => {
                quartets += 1;
                ensure!(
                    (c0, c1) == (2, -2),
                    "quartet {} gives the form {c0}a - {}r, want 2a - 2r",
                    orbit.label,
                    -c1
                );
            }
            3 => {
                trios += 1;
                ensure!(
                    (c0, c1) == (1, -1),
                    "trio {} gives the form {c0}a - {}r, want a - r",
                    orbit.label,
                    -c1
                );
            }
            n => return Err(format!("unexpected orbit size {n}")),
        }
        ensure!(exclusion_test(c0, c1), "symbolic negativity fails for ({c0}, {c1})");
        ensure!(
            exclusion_grid_holds(c0, c1, 50),
            "grid negativity fails for ({c0}, {c1}) on 1 <= a < r <= 50"
        );
    }
    ensure!(quartets == 3 && trios == 2, "{quartets} quartets and {trios} trios");

    let proof = prove_s4(&S4Options::default()).map_err(err)?;
    for step in &proof.steps {
        ensure!(step.passed, "proof step '{}' fails: {}", step.name, step.detail);
    }
    ensure!(
        proof.certificates.len() == 5,
        "{} exclusion certificates, want 5",
        proof.certificates.len()
    );
    ensure!(
        proof.certificates.iter().all(|c| c.excluded),
        "an orbit escaped exclusion"
    );
    Ok(())
}

fn a5_suite() -> Outcome {
    let group = PermGroup::alternating_5();
    ensure!(group.order() == 60, "order {}", group.order());
    let class_sizes = group.class_sizes();
    ensure!(
        class_sizes == vec![1, 12, 12, 15, 20],
        "class sizes {class_sizes:?}, want {{1, 15, 20, 12, 12}}"
    );
    let normal = group.normal_subgroup_orders();
    ensure!(normal == vec![1, 60], "normal subgroup orders {normal:?}, want [1, 60]");

    let degrees = char_degree_multisets(60, 5, 1);
    ensure!(
        degrees == vec![vec![1, 3, 3, 4, 5]],
        "degree multisets {degrees:?}, want exactly [1, 3, 3, 4, 5]"
    );

    let proof = prove_a5(&A5Options::default()).map_err(err)?;
    for step in &proof.steps {
        ensure!(step.passed, "proof step '{}' fails: {}", step.name, step.detail);
    }
    Ok(())
}

fn function_field_suite() -> Outcome {
    let ChartFunctions { u, v, theta, .. } = chart_functions();

    let d1 = named_substitution("D1").map_err(err)?;
    let d2 = named_substitution("D2").map_err(err)?;
    let h3_gen = d1
        .compose(&d2.compose(&d2).map_err(err)?)
        .map_err(err)?;
    let h3_sq = h3_gen.compose(&h3_gen).map_err(err)?;
    for (i, s) in [&h3_gen, &h3_sq].iter().enumerate() {
        ensure!(
            s.apply(&u).map_err(err)? == u,
            "u moves under power {} of the cyclic generator",
            i + 1
        );
        ensure!(
            s.apply(&v).map_err(err)? == v,
            "v moves under power {} of the cyclic generator",
            i + 1
        );
    }

    let table = verify_generator_table().map_err(err)?;
    ensure!(table.len() == 4, "{} table rows, want 4", table.len());
    for entry in &table {
        ensure!(
            entry.matches,
            "generator {} sends (u, v) to ({}, {})",
            entry.generator,
            entry.u_image,
            entry.v_image
        );
    }

    ensure!(
        &theta.pow(3) * &u == v,
        "theta^3 * u differs from v as a rational function"
    );

    let report = tower_report().map_err(err)?;
    ensure!(report.h2_order == 9, "diagonal group order {}", report.h2_order);
    ensure!(report.h2_abelian, "diagonal group is not abelian");
    ensure!(report.h2_exponent == 3, "diagonal group exponent {}", report.h2_exponent);
    ensure!(
        report.h2_substitutions_distinct,
        "diagonal substitutions collide; the Galois group is smaller than (Z/3)^2"
    );

    let id = identify_with_x1().map_err(err)?;
    ensure!(id.holds(), "coordinate identification table mismatch");
    Ok(())
}

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vgc"));
    cmd.env_remove("VGC_FIXTURES");
    cmd
}

fn deterministic_json() -> Outcome {
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let out = binary()
            .args(["run", "--suite", "all", "--format", "json"])
            .output()
            .map_err(err)?;
        ensure!(
            out.status.success(),
            "full run failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        outputs.push(out.stdout);
    }
    ensure!(!outputs[0].is_empty(), "empty report");
    ensure!(outputs[0] == outputs[1], "consecutive reports differ");
    Ok(())
}

fn fault_injection() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["s4_rho.json", "g216.json", "lemma13_points.json"] {
        fs::copy(src.join(name), dir.path().join(name)).map_err(err)?;
    }

    let target = dir.path().join("g216.json");
    let text = fs::read_to_string(&target).map_err(err)?;
    let corrupted = text.replacen("\"-1\"", "\"1\"", 1);
    ensure!(corrupted != text, "no sign entry available to corrupt");
    fs::write(&target, corrupted).map_err(err)?;

    let out = binary()
        .args(["run", "--suite", "group", "--fixtures"])
        .arg(dir.path())
        .output()
        .map_err(err)?;
    ensure!(
        out.status.code() == Some(1),
        "exit code {:?}, want 1",
        out.status.code()
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure!(stdout.contains("FAIL"), "no failing check reported:\n{stdout}");
    ensure!(stdout.contains("witness"), "no witness printed:\n{stdout}");
    Ok(())
}
