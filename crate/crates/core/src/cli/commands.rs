use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::construct::{
    abelian_qhat, commuting_failures, construct_theorem, maximality_probe, normalize_split,
    reductive_mf, verify_hat_lemmas, ConstructOptions,
};
use crate::field::{FieldElement, Vector};
use crate::invariants::{b_of, b_rel, index, invariants_of_degree, trdeg_jacobian, trdeg_symbols};
use crate::liealg::presets::preset;
use crate::liealg::{
    classify_nilradical, render_combination, structure_series, LieAlgebra, LinearForm,
    NilradicalClass, Subspace,
};
use crate::pbw::{PBWElement, Pbw};
use crate::polyring::{PolyContext, PolyElement};

use super::{reproduce, AlgebraFile, CliError, Command, CommandResult, GlobalOpts};

fn load(opts: &GlobalOpts, checked: bool) -> Result<LieAlgebra, CliError> {
    match (&opts.preset, &opts.file) {
        (Some(p), None) => Ok(preset(p)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let f: AlgebraFile = serde_json::from_str(&text)?;
            if checked {
                f.to_algebra()
            } else {
                f.to_algebra_unchecked()
            }
        }
        (None, None) => Err(CliError::Usage("give --preset NAME or --file PATH".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--preset and --file are exclusive".into())),
    }
}

fn label_index(l: &LieAlgebra, lab: &str) -> Result<usize, CliError> {
    l.label_index(lab)
        .ok_or_else(|| CliError::Usage(format!("unknown basis label '{lab}'")))
}

fn parse_labels(l: &LieAlgebra, s: &str) -> Result<Subspace, CliError> {
    let idx = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| label_index(l, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(l.dim(), idx.iter().map(|&i| l.unit(i))))
}

/// `label=value,...` with values in the coefficient field.
fn parse_gamma(l: &LieAlgebra, s: &str) -> Result<BTreeMap<String, FieldElement>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (lab, val) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected label=value, got '{part}'")))?;
        let lab = lab.trim();
        label_index(l, lab)?;
        out.insert(lab.to_string(), l.field().parse(val.trim())?);
    }
    Ok(out)
}

fn gamma_vector(l: &LieAlgebra, map: &BTreeMap<String, FieldElement>) -> LinearForm {
    l.labels()
        .iter()
        .map(|lab| map.get(lab).cloned().unwrap_or_else(FieldElement::zero))
        .collect()
}

fn split_gens(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty())
}

fn render_vectors(l: &LieAlgebra, vs: &[Vector]) -> Vec<String> {
    vs.iter().map(|v| l.render_vector(v)).collect()
}

fn render_form(l: &LieAlgebra, g: &[FieldElement]) -> String {
    let labels: Vec<String> = l.labels().iter().map(|s| format!("{s}*")).collect();
    render_combination(&labels, g)
}

fn bracket_lines(l: &LieAlgebra) -> Vec<String> {
    l.brackets()
        .iter()
        .map(|(&(i, j), v)| format!("[{}, {}] = {}", l.labels()[i], l.labels()[j], l.render_vector(v)))
        .collect()
}

fn case_of(l: &LieAlgebra) -> String {
    if l.is_reductive() {
        return "reductive".into();
    }
    match classify_nilradical(l) {
        Ok(NilradicalClass::AbelianIdeal(h)) => format!(
            "abelian ideal span{{{}}}",
            render_vectors(l, h.basis()).join(", ")
        ),
        Ok(NilradicalClass::Heisenberg(s)) => format!("heisenberg ideal, n = {}", s.n()),
        Ok(NilradicalClass::Line(_)) => "one-dimensional nilradical".into(),
        Ok(NilradicalClass::Trivial) => "trivial nilradical".into(),
        Err(e) => format!("unclassified: {e}"),
    }
}

fn require_reductive(l: &LieAlgebra) -> Result<(), CliError> {
    if l.is_reductive() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{} is not reductive", l.name())))
    }
}

pub(crate) fn dispatch(cmd: &Command, opts: &GlobalOpts) -> Result<CommandResult, CliError> {
    if let Command::ReproducePaperExample = cmd {
        return reproduce::command(opts);
    }
    let l = load(opts, !matches!(cmd, Command::Validate))?;
    let algebra_json = AlgebraFile::from_algebra(&l).to_json();
    let s = opts.sampling();
    let name = l.name().to_string();
    let labels = l.labels().to_vec();
    let (results, text, ok): (Value, Vec<String>, bool) = match cmd {
        Command::Validate => {
            let r = l.validate();
            let jf: Vec<Vec<String>> = r
                .jacobi_failures
                .iter()
                .map(|t| t.iter().map(|&i| labels[i].clone()).collect())
                .collect();
            let mut text = vec![format!(
                "{name}: {}",
                if r.is_valid() { "valid" } else { "INVALID" }
            )];
            text.extend(jf.iter().map(|t| format!("Jacobi fails on ({})", t.join(", "))));
            text.extend(r.annotation_failures.iter().cloned());
            (
                json!({
                    "valid": r.is_valid(),
                    "jacobi_failures": jf,
                    "annotation_failures": r.annotation_failures,
                }),
                text,
                r.is_valid(),
            )
        }
        Command::Info => {
            let ser = structure_series(&l);
            let center = render_vectors(&l, ser.center.basis());
            let nil = render_vectors(&l, l.nilradical().basis());
            let rad = render_vectors(&l, l.solvable_radical().basis());
            let case = case_of(&l);
            let brackets = bracket_lines(&l);
            let vars: Vec<String> = l.field().vars().iter().map(|v| v.to_string()).collect();
            let mut text = vec![
                format!("{name}: dim {}, basis {}", l.dim(), labels.join(", ")),
            ];
            text.extend(brackets.iter().cloned());
            text.push(format!("center: span{{{}}}", center.join(", ")));
            text.push(format!("derived algebra: dim {}", ser.derived.dim()));
            text.push(format!("nilradical: span{{{}}}", nil.join(", ")));
            text.push(format!("solvable radical: span{{{}}}", rad.join(", ")));
            text.push(format!("case: {case}"));
            (
                json!({
                    "name": name,
                    "dim": l.dim(),
                    "basis": labels,
                    "field_variables": vars,
                    "brackets": brackets,
                    "center": center,
                    "derived_dim": ser.derived.dim(),
                    "abelian": ser.is_abelian,
                    "nilpotent": ser.is_nilpotent,
                    "solvable": l.is_solvable(&Subspace::full(l.dim())),
                    "reductive": l.is_reductive(),
                    "nilradical": nil,
                    "solvable_radical": rad,
                    "case": case,
                }),
                text,
                true,
            )
        }
        Command::Index => {
            let r = index(&l, &s);
            let mut text = vec![format!("ind({name}) = {}", r.value)];
            if let Some(w) = r.witness() {
                text.push(format!(
                    "witness: coadjoint rank {} at ({}); {}/{} samples agree",
                    w.rank,
                    w.point.join(", "),
                    r.agreeing,
                    r.samples.len()
                ));
            }
            (json!({"index": r.value, "sampling": r}), text, true)
        }
        Command::B => {
            let b = b_of(&l, &s);
            let ind = index(&l, &s).value;
            (
                json!({"b": b.to_string(), "index": ind, "dim": l.dim()}),
                vec![format!("b({name}) = {b}"), format!("dim {}, index {ind}", l.dim())],
                true,
            )
        }
        Command::BRel { sub } => {
            let sub_space = parse_labels(&l, sub)?;
            let v = b_rel(&l, &sub_space, &s)?;
            (
                json!({"b_rel": v.to_string(), "sub": render_vectors(&l, sub_space.basis())}),
                vec![format!("b^l({name}) = {v} for l = span{{{sub}}}")],
                true,
            )
        }
        Command::Invariants => {
            let mut per_degree = Vec::new();
            let mut text = Vec::new();
            for d in 1..=opts.max_deg {
                let inv: Vec<String> = invariants_of_degree(&l, d)
                    .iter()
                    .map(|p| p.render(&labels))
                    .collect();
                text.push(format!("degree {d}: {} invariant(s)", inv.len()));
                text.extend(inv.iter().map(|p| format!("  {p}")));
                per_degree.push(json!({"degree": d, "elements": inv}));
            }
            (json!({"max_deg": opts.max_deg, "invariants": per_degree}), text, true)
        }
        Command::Mf { gamma } | Command::QuantumMf { gamma } => {
            require_reductive(&l)?;
            let g = gamma
                .as_deref()
                .map(|g| parse_gamma(&l, g).map(|m| gamma_vector(&l, &m)))
                .transpose()?;
            let pbw = Pbw::new(Arc::new(l.clone()));
            let r = reductive_mf(&l, &pbw, g.as_ref(), opts.max_deg, &s)?;
            let b = (l.dim() + r.index) / 2;
            let mut text = vec![
                format!("gamma = {} ({})", render_form(&l, &r.gamma), if r.gamma_regular { "regular" } else { "NOT regular" }),
                format!("primitive invariants: {}", r.casimirs.len()),
            ];
            let quantum = matches!(cmd, Command::QuantumMf { .. });
            let set = if quantum { &r.quantum.generators } else { &r.mf };
            let gens = set.render(&labels);
            text.extend(gens.iter().map(|g| format!("  {g}")));
            text.push(format!("trdeg = {} (b = {b})", r.trdeg.value));
            let mut res = json!({
                "gamma": render_form(&l, &r.gamma),
                "gamma_regular": r.gamma_regular,
                "casimirs": r.casimirs.iter().map(|p| p.render(&labels)).collect::<Vec<_>>(),
                "generators": gens,
                "provenance": set.provenance,
                "trdeg": r.trdeg,
                "b": b,
            });
            let mut ok = r.trdeg.value == b;
            if quantum {
                res["commuting"] = json!(r.quantum.commuting);
                res["failing_pairs"] = json!(r.quantum.failing_pairs);
                res["symbols_match"] = json!(r.quantum.symbols_match);
                text.push(format!(
                    "commutators: {}",
                    if r.quantum.commuting { "all zero".to_string() } else { format!("nonzero for {:?}", r.quantum.failing_pairs) }
                ));
                ok = ok && r.quantum.commuting && r.quantum.symbols_match;
            }
            (res, text, ok)
        }
        Command::HatCheck => {
            let split = match &l.annotations().heisenberg_split {
                Some(sp) => sp.clone(),
                None => match classify_nilradical(&l)? {
                    NilradicalClass::Heisenberg(sp) => sp,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "{name} has no Heisenberg ideal to check"
                        )))
                    }
                },
            };
            let ns = normalize_split(&l, &split)?;
            let pbw = Pbw::new(Arc::new(ns.algebra.clone()));
            let report = verify_hat_lemmas(&pbw, &ns.split)?;
            let l_labels: Vec<String> = ns
                .split
                .l_basis
                .basis()
                .iter()
                .map(|v| ns.algebra.render_vector(v))
                .collect();
            let text = vec![
                format!("basis: {}", ns.algebra.labels().join(", ")),
                format!("l = span{{{}}}{}", l_labels.join(", "), if ns.algebraic { "" } else { " (l~)" }),
                format!("{} checks, {} failures", report.checks, report.failures.len()),
            ]
            .into_iter()
            .chain(report.failures.iter().cloned())
            .collect();
            (
                json!({
                    "basis": ns.algebra.labels(),
                    "basis_vectors": render_vectors(&l, &ns.basis),
                    "l": l_labels,
                    "algebraic": ns.algebraic,
                    "checks": report.checks,
                    "failures": report.failures,
                }),
                text,
                report.ok(),
            )
        }
        Command::ReduceAbelian { ideal } => {
            let h = match ideal {
                Some(i) => parse_labels(&l, i)?,
                None => match classify_nilradical(&l)? {
                    NilradicalClass::AbelianIdeal(h) => h,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "{name} has no suitable abelian ideal; pass --ideal"
                        )))
                    }
                },
            };
            let hat = abelian_qhat(&l, &h, &s)?;
            let comp_labels: Vec<String> = hat.complement.iter().map(|&i| labels[i].clone()).collect();
            let kernel: Vec<String> = hat
                .kernel
                .iter()
                .enumerate()
                .map(|(a, k)| format!("K{} = {}", a + 1, render_combination(&comp_labels, k)))
                .collect();
            let vars: Vec<String> = hat.vars.iter().map(|v| v.name().to_string()).collect();
            let brackets = bracket_lines(&hat.algebra);
            let mut text = vec![
                format!("h = span{{{}}}", render_vectors(&l, h.basis()).join(", ")),
                format!("F = K({})", vars.join(", ")),
                format!("reduced algebra: dim {} ({})", hat.algebra.dim(), hat.algebra.labels().join(", ")),
            ];
            text.extend(kernel.iter().cloned());
            text.extend(brackets.iter().cloned());
            text.push(format!(
                "min dim of stabilizers = {}; dimension formula {}; b identity {}",
                hat.min_stabilizer,
                if hat.dim_formula_holds { "holds" } else { "FAILS" },
                if hat.b_identity_holds { "holds" } else { "FAILS" }
            ));
            (
                json!({
                    "h": render_vectors(&l, h.basis()),
                    "variables": vars,
                    "dim": hat.algebra.dim(),
                    "basis": hat.algebra.labels(),
                    "kernel": kernel,
                    "brackets": brackets,
                    "min_stabilizer_dim": hat.min_stabilizer,
                    "dim_formula_holds": hat.dim_formula_holds,
                    "b_identity_holds": hat.b_identity_holds,
                }),
                text,
                hat.dim_formula_holds && hat.b_identity_holds,
            )
        }
        Command::Construct { gamma } => {
            let copts = ConstructOptions {
                sampling: s,
                max_deg: opts.max_deg,
                max_tower_depth: opts.depth,
                gamma: gamma.as_deref().map(|g| parse_gamma(&l, g)).transpose()?,
            };
            let cert = construct_theorem(&l, &copts)?;
            let gens = cert.rendered();
            let mut text = vec![format!("{name}: {} generator(s)", gens.len())];
            text.extend(gens.iter().map(|g| format!("  {g}")));
            text.push(format!(
                "trdeg = {}, b = {}; commutators {}",
                cert.trdeg.value,
                cert.b,
                if cert.commutative() { "all zero" } else { "NONZERO" }
            ));
            for st in &cert.trace {
                text.push(format!("  [{}] {} (dim {}): {}", st.depth, st.algebra, st.dim, st.case));
            }
            (
                json!({
                    "generators": gens,
                    "provenance": cert.generators.provenance,
                    "b": cert.b.to_string(),
                    "trdeg": cert.trdeg,
                    "commutative": cert.commutative(),
                    "failing_pairs": cert.failing_pairs,
                    "degree_bound": cert.degree_bound(),
                    "trace": cert.trace,
                }),
                text,
                cert.ok(),
            )
        }
        Command::Trdeg { gens, symmetric } => {
            let r = if *symmetric {
                let pc = PolyContext::new(&l);
                let elems = split_gens(gens)
                    .map(|g| pc.parse(g))
                    .collect::<Result<Vec<PolyElement>, _>>()?;
                trdeg_jacobian(&elems, l.dim(), &s)
            } else {
                let pbw = Pbw::new(Arc::new(l.clone()));
                let elems = split_gens(gens)
                    .map(|g| pbw.parse(g))
                    .collect::<Result<Vec<PBWElement>, _>>()?;
                trdeg_symbols(&elems, l.dim(), &s)
            };
            let b = b_of(&l, &s);
            let within = num_rational::BigRational::from_integer(r.value.into()) <= b;
            (
                json!({"trdeg": r, "b": b.to_string(), "within_bound": within}),
                vec![format!("trdeg = {} (b = {b})", r.value)],
                within,
            )
        }
        Command::Maximality { gens, degree } => {
            let pbw = Pbw::new(Arc::new(l.clone()));
            let elems = split_gens(gens)
                .map(|g| pbw.parse(g))
                .collect::<Result<Vec<PBWElement>, _>>()?;
            let failing = commuting_failures(&pbw, &elems);
            if !failing.is_empty() {
                (
                    json!({"commutative": false, "failing_pairs": failing}),
                    vec![format!("generators do not commute: pairs {failing:?}")],
                    false,
                )
            } else {
                let r = maximality_probe(&pbw, &elems, *degree);
                let mut enlarged = elems.clone();
                enlarged.extend(r.extra.iter().cloned());
                let enlarged_commutative = commuting_failures(&pbw, &enlarged).is_empty();
                let summary = r.summary(&labels);
                let mut text = vec![format!(
                    "centralizer in degree <= {degree}: dim {}, subalgebra part dim {}",
                    summary.centralizer_dim, summary.subalgebra_dim
                )];
                if r.maximal_up_to_degree() {
                    text.push(format!("maximal up to degree {degree}"));
                } else {
                    text.push(format!("not maximal: new commuting elements up to degree {degree}"));
                    text.extend(summary.extra.iter().map(|e| format!("  {e}")));
                    text.push(format!(
                        "enlarged set {}",
                        if enlarged_commutative { "still commutative" } else { "NOT commutative" }
                    ));
                }
                (
                    json!({
                        "commutative": true,
                        "probe": summary,
                        "enlarged_commutative": enlarged_commutative,
                    }),
                    text,
                    true,
                )
            }
        }
        Command::ReproducePaperExample => unreachable!("handled above"),
    };
    Ok(CommandResult {
        algebra_json,
        results,
        text,
        ok,
    })
}
