//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lieshift::cli::reproduce_paper_example;
use lieshift::construct::{
    abelian_qhat, commuting_failures, construct_theorem, mf_subalgebra, quantum_mf, reductive_mf,
    verify_hat_lemmas, ConstructOptions,
};
use lieshift::invariants::{b_of, index, is_regular, trdeg_jacobian, trdeg_symbols, Purpose, Sampling};
use lieshift::liealg::presets::{preset, random_heisenberg_extension, PRESET_NAMES};
use lieshift::liealg::{classify_nilradical, NilradicalClass, Subspace};
use lieshift::pbw::Pbw;
use lieshift::polyring::poisson;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

/// The sl2 ⋉ h3 worked example.
fn worked_example() -> Outcome {
    let start = Instant::now();
    let ex = reproduce_paper_example(&Sampling::default()).map_err(|e| e.to_string())?;
    for c in &ex.checks {
        ensure(c.pass, format!("{}: {}", c.name, c.detail))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{} checks, trdeg {} = b {}, {:.1}s",
        ex.checks.len(),
        ex.trdeg,
        ex.b,
        start.elapsed().as_secs_f64()
    ))
}

fn index_and_b() -> Outcome {
    let s = Sampling::default();
    let table = [("borel-sl3", 1), ("sl2", 1), ("sl3", 2), ("heisenberg(1)", 1), ("aff1", 0)];
    for (name, want) in table {
        let got = index(&preset(name).map_err(|e| e.to_string())?, &s).value;
        ensure(got == want, format!("ind({name}) = {got}, expected {want}"))?;
    }
    for (name, want) in [("sl3", 5), ("gl4", 10)] {
        let got = b_of(&preset(name).map_err(|e| e.to_string())?, &s);
        ensure(got == num_rational_from(want), format!("b({name}) = {got}, expected {want}"))?;
    }
    Ok("5 indices, b(sl3) = 5, b(gl4) = 10".into())
}

fn hat_lemmas() -> Outcome {
    let q = preset("sl2-semidirect-h3").map_err(|e| e.to_string())?;
    let split = match classify_nilradical(&q).map_err(|e| e.to_string())? {
        NilradicalClass::Heisenberg(s) => s,
        other => return Err(format!("sl2 ⋉ h3 classified as {other:?}")),
    };
    let pbw = Pbw::new(Arc::new(q));
    let r = verify_hat_lemmas(&pbw, &split).map_err(|e| e.to_string())?;
    ensure(r.ok(), format!("sl2 ⋉ h3: {:?}", r.failures))?;
    let mut checks = r.checks;
    let mut rng = ChaCha8Rng::seed_from_u64(2020);
    let mut count = 0;
    for round in 0..3 {
        for n in 1..=3 {
            for l_dim in 1..=3 {
                // n = 3 only once per l_dim: those are the slow cases.
                if n == 3 && round > 0 {
                    continue;
                }
                let (q, split) = random_heisenberg_extension(&mut rng, n, l_dim);
                let pbw = Pbw::new(Arc::new(q.clone()));
                let r = verify_hat_lemmas(&pbw, &split).map_err(|e| e.to_string())?;
                ensure(r.ok(), format!("{}: {:?}", q.name(), r.failures))?;
                checks += r.checks;
                count += 1;
            }
        }
    }
    ensure(count >= 20, format!("only {count} random splits"))?;
    Ok(format!("sl2 ⋉ h3 + {count} random splits, {checks} identities"))
}

fn abelian_reduction() -> Outcome {
    let s = Sampling::default();
    // (preset, ideal labels, expected dim of the reduced algebra); no labels
    // means the center, the control case.
    let cases = [
        ("aff1", vec!["y"], 1),
        ("heisenberg(1)", vec!["y", "z"], 1),
        ("heisenberg(1)", vec!["z"], 3),
        ("gl2", vec![], 4),
    ];
    let mut out = Vec::new();
    for (name, labels, want) in cases {
        let q = preset(name).map_err(|e| e.to_string())?;
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| q.label_index(l).ok_or(format!("{name} has no {l}")))
            .collect::<Result<_, _>>()?;
        let h = if idx.is_empty() { q.center() } else { Subspace::units(q.dim(), &idx) };
        let hat = abelian_qhat(&q, &h, &s).map_err(|e| e.to_string())?;
        let dim = hat.algebra.dim();
        ensure(dim == want, format!("{name} / {labels:?}: dim {dim}, expected {want}"))?;
        ensure(hat.dim_formula_holds, format!("{name} / {labels:?}: dimension formula fails"))?;
        // b(q̂) + dim h − 1 = b(q), recomputed here.
        let lhs = b_of(&hat.algebra, &s) + num_rational_from(h.dim() as i64 - 1);
        ensure(
            lhs == b_of(&q, &s) && hat.b_identity_holds,
            format!("{name} / {labels:?}: b identity fails"),
        )?;
        let ideal = if labels.is_empty() { "center".to_string() } else { labels.join(",") };
        out.push(format!("{name}/{ideal}→{dim}"));
    }
    Ok(out.join(", "))
}

fn num_rational_from(k: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(k.into())
}

fn mishchenko_fomenko() -> Outcome {
    let start = Instant::now();
    let s = Sampling::default();
    let mut out = Vec::new();
    for (name, b) in [("sl2", 2usize), ("sl3", 5)] {
        let l = preset(name).map_err(|e| e.to_string())?;
        let pbw = Pbw::new(Arc::new(l.clone()));
        let ind = index(&l, &s).value;
        let base = reductive_mf(&l, &pbw, None, 3, &s).map_err(|e| e.to_string())?;
        let casimirs = base.casimirs;
        ensure(casimirs.len() == ind, format!("{name}: {} Casimirs", casimirs.len()))?;
        let mut found = 0;
        for idx in 0..64u64 {
            if found == 5 {
                break;
            }
            let gamma = s.point(Purpose::Regular, 1000 + idx, l.dim(), false);
            if !is_regular(&l, &gamma, ind) {
                continue;
            }
            found += 1;
            let mf = mf_subalgebra(&l, &casimirs, &gamma).map_err(|e| e.to_string())?;
            let polys = mf.poisson_elements().ok_or("not a Poisson set")?;
            for (i, f) in polys.iter().enumerate() {
                for g in &polys[i + 1..] {
                    ensure(poisson(&l, f, g).is_zero(), format!("{name}: shifts do not commute"))?;
                }
            }
            let t = trdeg_jacobian(polys, l.dim(), &s).value;
            ensure(t == b, format!("{name}: trdeg {t}, expected {b}"))?;
            let quantum = quantum_mf(&pbw, &mf).map_err(|e| e.to_string())?;
            let lifted = quantum.generators.associative_elements().ok_or("not associative")?;
            ensure(
                commuting_failures(&pbw, lifted).is_empty() && quantum.symbols_match,
                format!("{name}: symmetrised shifts do not commute"),
            )?;
        }
        ensure(found == 5, format!("{name}: only {found} regular forms sampled"))?;
        out.push(format!("{name} trdeg {b}"));
    }
    within(start, Duration::from_secs(180))?;
    Ok(format!("{} over 5 regular γ each, {:.1}s", out.join(", "), start.elapsed().as_secs_f64()))
}

fn construction() -> Outcome {
    let s = Sampling::default();
    let mut out = Vec::new();
    // Every preset of dimension at most 8, the parametrised families at the
    // sizes that fit.
    let mut names: Vec<String> = PRESET_NAMES
        .iter()
        .filter(|n| !n.contains("(n)"))
        .map(|n| n.to_string())
        .collect();
    names.extend(["abelian(1)", "abelian(3)", "abelian(8)", "heisenberg(1)", "heisenberg(2)", "heisenberg(3)"].map(String::from));
    let mut skipped = 0;
    for name in &names {
        let name = name.as_str();
        if preset(name).map_err(|e| e.to_string())?.dim() > 8 {
            skipped += 1;
            continue;
        }
        let l = preset(name).map_err(|e| e.to_string())?;
        let cert = construct_theorem(&l, &ConstructOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(cert.ok(), format!("{name}: certificate not ok"))?;
        // Re-verify independently of the certificate's own flags.
        let pbw = Pbw::new(Arc::new(l.clone()));
        let gens = cert.generators.associative_elements().ok_or("not associative")?;
        ensure(commuting_failures(&pbw, gens).is_empty(), format!("{name}: generators do not commute"))?;
        let t = trdeg_symbols(gens, l.dim(), &s).value;
        let b = b_of(&l, &s);
        ensure(b == num_rational_from(t as i64), format!("{name}: trdeg {t}, b {b}"))?;
        out.push(format!("{name}:{t}"));
    }
    ensure(out.len() >= 7, "too few presets")?;
    Ok(format!("{} presets, trdeg = b each ({} larger ones skipped): {}", out.len(), skipped, out.join(" ")))
}

fn properties() -> Outcome {
    let suites = common::all_suites();
    for (name, f) in &suites {
        f(common::CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites × {} cases", suites.len(), common::CASES))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("worked example sl2 ⋉ h3", worked_example),
        ("index and b values", index_and_b),
        ("hat-map identities", hat_lemmas),
        ("abelian-ideal reduction", abelian_reduction),
        ("Mishchenko–Fomenko shifts and quantum lift", mishchenko_fomenko),
        ("recursive construction", construction),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.1}s]", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e} [{secs:.1}s]", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
