//! Acceptance run: one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use xconn::{run, Command, Input, Options};
use xconn_core::category::{classify_category, left_ideal_category, right_ideal_category};
use xconn_core::classify::{is_inverse, is_locally_inverse, is_regular};
use xconn_core::cones::{cone_semigroup, verify_representation, DEFAULT_CONE_BOUND};
use xconn_core::cxn::{canonical_cxn, cxn_semigroup, rebuild_check};
use xconn_core::esn::{
    category_to_groupoid, find_groupoid_isomorphism, groupoid_to_category, inductive_groupoid_of,
    inversive_cone_semigroup_of, rho_iso_check, round_trip,
};
use xconn_core::rees::{matrix_cxn, rees_cone_iso};
use xconn_core::{fixtures, Error, FiniteSemigroup};

type Outcome = Result<String, String>;

fn small() -> Vec<(String, FiniteSemigroup)> {
    (1..=3)
        .flat_map(|n| fixtures::enumerate_semigroups(n).into_iter().enumerate().map(move |(k, s)| (format!("order{n}#{k}"), s)))
        .collect()
}

fn corpus() -> Vec<(String, FiniteSemigroup)> {
    fixtures::corpus().into_iter().map(|f| (f.name, f.semigroup)).collect()
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn a1() -> Outcome {
    let mut regular = 0;
    for (name, s) in small() {
        if !is_regular(&s).holds {
            continue;
        }
        regular += 1;
        let l = left_ideal_category(&s).map_err(err)?;
        let rep = classify_category(&l.cat, DEFAULT_CONE_BOUND).map_err(err)?;
        ensure(rep.is_normal(), || format!("{name}: L(S) is not normal: {:?}", rep.witnesses))?;
    }
    Ok(format!("{regular} regular semigroups of order ≤ 3, all normal"))
}

fn a2() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for (name, s) in small().into_iter().chain(corpus()) {
        let local = is_locally_inverse(&s).map_err(err)?.holds;
        let unambiguous = match left_ideal_category(&s) {
            Ok(l) => classify_category(&l.cat, DEFAULT_CONE_BOUND).map_err(err)?.is_unambiguous(),
            Err(Error::NotRegular(_)) => false,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        ensure(local == unambiguous, || format!("{name}: locally inverse {local}, unambiguous {unambiguous}"))?;
        if local {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("{yes} unambiguous and locally inverse, {no} neither, 0 exceptions"))
}

fn a3() -> Outcome {
    let mut count = 0;
    for (name, s) in corpus() {
        if !is_regular(&s).holds {
            continue;
        }
        for ideal in [left_ideal_category(&s).map_err(err)?, right_ideal_category(&s).map_err(err)?] {
            let rep = classify_category(&ideal.cat, DEFAULT_CONE_BOUND).map_err(err)?;
            if !rep.is_unambiguous() {
                continue;
            }
            let cs = cone_semigroup(&ideal.cat, DEFAULT_CONE_BOUND).map_err(err)?;
            let v = is_locally_inverse(&cs.semigroup).map_err(err)?;
            let all = v.cross_check.conditions.len() == 4 && v.cross_check.conditions.iter().all(|c| c.1);
            ensure(v.holds && all, || format!("{name}: cone semigroup fails {:?}", v.cross_check))?;
            count += 1;
        }
    }
    Ok(format!("{count} unambiguous fixture categories, cone semigroups locally inverse under all 4 conditions"))
}

fn a4() -> Outcome {
    let mut sizes = Vec::new();
    for (name, s) in [("SL2", fixtures::sl2()), ("LZ2", fixtures::lz2()), ("B2", fixtures::b2()), ("M9", fixtures::m9())] {
        let l = left_ideal_category(&s).map_err(err)?;
        let rep = verify_representation(&l.cat, DEFAULT_CONE_BOUND).map_err(err)?;
        ensure(rep.is_isomorphism, || format!("{name}: {:?}", rep.failures))?;
        sizes.push(format!("{name} {}", rep.target.cat.object_count()));
    }
    Ok(format!("F is an inclusion-preserving isomorphism for {}", sizes.join(", ")))
}

fn a5() -> Outcome {
    let b2 = left_ideal_category(&fixtures::b2()).map_err(err)?;
    let all_cones = cone_semigroup(&b2.cat, DEFAULT_CONE_BOUND).map_err(err)?.len();
    let (_, inv) = inversive_cone_semigroup_of(&fixtures::b2()).map_err(err)?;
    ensure(all_cones == 7 && inv.semigroup.order() == 5, || format!("B2: |Ĉ| = {all_cones}, |C̃| = {}", inv.semigroup.order()))?;
    let mut count = 0;
    let named = [("SL2", fixtures::sl2()), ("B2", fixtures::b2()), ("Z2", fixtures::z2())].map(|(n, s)| (n.to_string(), s));
    for (name, s) in named.into_iter().chain(small()) {
        if !is_inverse(&s).map_err(err)?.holds {
            continue;
        }
        let (_, inv) = inversive_cone_semigroup_of(&s).map_err(err)?;
        ensure(inv.semigroup.order() == s.order(), || format!("{name}: |C̃| = {}, |S| = {}", inv.semigroup.order(), s.order()))?;
        let rho = rho_iso_check(&s).map_err(err)?;
        ensure(rho.holds(), || format!("{name}: {rho:?}"))?;
        count += 1;
    }
    Ok(format!("B2 |Ĉ| = 7, |C̃| = 5; a ↦ ρ^a an isomorphism on {count} inverse semigroups"))
}

fn a6() -> Outcome {
    let mut count = 0;
    for (name, s) in corpus() {
        if !is_locally_inverse(&s).map_err(err)?.holds {
            continue;
        }
        let rep = rebuild_check(&s).map_err(err)?;
        ensure(rep.holds(), || format!("{name}: {:?}", rep.failures))?;
        count += 1;
    }
    let cli = run(Command::Rebuild, &Input::Fixtures, &Options::default());
    ensure(cli.exit_code == 0, || format!("rebuild --fixtures exited with {}", cli.exit_code))?;
    Ok(format!("SΩ ≅ S, L(SΩ) ≅ L(S), R(SΩ) ≅ R(S) for {count} locally inverse fixtures"))
}

fn a7() -> Outcome {
    let mut sizes = Vec::new();
    for (name, spec, file, expected) in
        [("B2", fixtures::b2_spec(), "b2.rees", 7), ("M9", fixtures::m9_spec(), "m9.rees", 17)]
    {
        let cones = rees_cone_iso(&spec).map_err(err)?;
        ensure(cones.holds() && cones.isomorphism.is_some(), || format!("{name}: {:?}", cones.failures))?;
        ensure(cones.cones == expected && cones.quotient == expected && cones.formula == expected, || {
            format!("{name}: {} cones, quotient {}, formula {}", cones.cones, cones.quotient, cones.formula)
        })?;
        let m = matrix_cxn(&spec).map_err(err)?;
        ensure(m.holds() && m.gamma_matches_canonical && m.delta_matches_canonical, || format!("{name}: {:?}", m.failures))?;
        let cli = run(Command::Rees, &Input::File(fixture_path(file)), &Options::default());
        ensure(cli.exit_code == 0, || format!("rees {file} exited with {}", cli.exit_code))?;
        sizes.push(format!("{name} {} = {}", cones.cones, cones.quotient));
    }
    Ok(format!("{}; Γ_P = Γ_S, Δ_P = Δ_S, SΩ ≅ M°", sizes.join(", ")))
}

fn a8() -> Outcome {
    let mut count = 0;
    for (name, s) in corpus().into_iter().chain(small()) {
        if !is_inverse(&s).map_err(err)?.holds {
            continue;
        }
        let g = inductive_groupoid_of(&s).map_err(err)?;
        g.verify().map_err(|e| format!("{name}: {e}"))?;
        let back = category_to_groupoid(&groupoid_to_category(&g).map_err(err)?).map_err(err)?;
        ensure(find_groupoid_isomorphism(&back, &g).map_err(err)?.is_some(), || format!("{name}: G_(C_G) is not G"))?;
        let l = left_ideal_category(&s).map_err(err)?;
        let rt = round_trip(&l.cat).map_err(err)?;
        ensure(rt.holds(), || format!("{name}: {rt:?}"))?;
        count += 1;
    }
    Ok(format!("both round trips and OG1-OG3* on {count} inverse semigroups"))
}

fn a9() -> Outcome {
    let mut parts = Vec::new();
    for (name, s) in [("B2", fixtures::b2()), ("SL2", fixtures::sl2()), ("M9", fixtures::m9())] {
        let cx = canonical_cxn(&s).map_err(err)?;
        let chi = match cx.omega.verify_chi() {
            Ok(c) => c,
            Err(e @ Error::MultipleTransposes { .. }) => return Err(format!("{name}: {e}")),
            Err(e) => return Err(format!("{name}: {e}")),
        };
        ensure(chi.holds(), || format!("{name}: {:?}", chi.failures))?;
        ensure(chi.tables.len() == cx.omega.c().object_count() * cx.omega.d().object_count(), || {
            format!("{name}: χ missing at some (c, d)")
        })?;
        parts.push(format!("{name} {} squares", chi.squares));
    }
    Ok(format!("χ natural and bijective: {}", parts.join(", ")))
}

fn a10() -> Outcome {
    let mut count = 0;
    for (name, s) in corpus() {
        if !is_locally_inverse(&s).map_err(err)?.holds {
            continue;
        }
        let cx = canonical_cxn(&s).map_err(err)?;
        let so = cxn_semigroup(&cx.omega).map_err(err)?;
        let labels: Vec<(usize, usize)> = so.idempotent_labels.values().copied().collect();
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        ensure(sorted == cx.omega.e_omega && labels.len() == sorted.len(), || format!("{name}: labels are not a bijection"))?;
        ensure(so.semigroup.idempotents() == so.idempotent_labels.keys().copied().collect::<Vec<_>>(), || {
            format!("{name}: idempotents of SΩ")
        })?;
        let (c, d) = (cx.omega.c(), cx.omega.d());
        for (&x, &(c1, d1)) in &so.idempotent_labels {
            for (&y, &(c2, d2)) in &so.idempotent_labels {
                ensure((so.semigroup.mul(x, y) == x) == c.le(c1, c2), || format!("{name}: ≤ℓ at {x}, {y}"))?;
                ensure((so.semigroup.mul(y, x) == x) == d.le(d1, d2), || format!("{name}: ≤r at {x}, {y}"))?;
            }
        }
        let v = is_locally_inverse(&so.semigroup).map_err(err)?;
        ensure(v.condition_witnesses[1].is_none() && v.condition_witnesses[2].is_none(), || {
            format!("{name}: E_Ω is not a pseudo-semilattice")
        })?;
        count += 1;
    }
    Ok(format!("biorder transported and pseudo-semilattice on {count} locally inverse fixtures"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] =
        [("A1", a1), ("A2", a2), ("A3", a3), ("A4", a4), ("A5", a5), ("A6", a6), ("A7", a7), ("A8", a8), ("A9", a9), ("A10", a10)];
    let mut failed = 0;
    for (id, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        match outcome {
            Ok(detail) => println!("{id:<4} PASS  {detail} ({ms:.0} ms)"),
            Err(detail) => {
                failed += 1;
                println!("{id:<4} FAIL  {detail} ({ms:.0} ms)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
