use std::fs;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use albert::albert::{AlbertAlgebra, AlbertElem, DIM};
use albert::assoc3::AssocElem;
use albert::exactfield::FieldElem;
use albert::fixpoint::{contains_one, det_on_trace_zero, fixed_subspace};
use albert::hexagon::{hex_mul, relation_audit, HexElem, HexJson};
use albert::innerfact::{
    chi_map, commutator, ia_word, jp_word, phi_p_word, psi_word, reduce_similarity, reduce_to_isometry, reflection,
    Expansion,
};
use albert::random::Sampler;
use albert::strmaps::{classify, is_automorphism, make_ia, make_jp, make_phi, make_psi, InstrWord, LinOp};
use albert::suites::{self, hex_associativity, random_symmetric_factorization, Tally, SUITES};
use albert::workspace::{elem_json, parse_q, q_strings, word_json, Workspace};
use albert::Q;

use crate::{Cli, Command, Factor};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EvalOp {
    Norm,
    Newton,
    Trace,
    Adjoint,
    Inv,
    Square,
    Mul,
    Cross,
    TraceForm,
    /// U_x y
    U,
    /// Evaluates a config word and classifies it.
    Word,
}

/// Runs one command; Ok(false) means a verification failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let ws = || load(cli, 0);
    match &cli.cmd {
        Command::Define => define(cli),
        Command::Verify { suite } => {
            let report = suites::run(suite, cli.seed, cli.count.unwrap_or(20))
                .ok_or_else(|| anyhow!("unknown suite {suite:?}; known: {}", SUITES.join(", ")))?;
            for c in report.checks.iter().filter_map(|c| c.note.as_ref()) {
                eprintln!("note: {c}");
            }
            let ok = report.ok();
            emit(cli, &json!({ "report": report, "ok": ok }))?;
            Ok(ok)
        }
        Command::Factor { kind } => factor(cli, &ws()?, kind),
        Command::Fixpoint { algebra, word, jp, ia, psi, b } => {
            let ws = ws()?;
            let alg = pick(&ws, algebra)?;
            let (desc, op) = if let Some(label) = word {
                (format!("word {label}"), config_word(&ws, &alg, label)?.eval()?.op)
            } else if let Some(p) = jp {
                ("J_p".to_string(), make_jp(&alg, &d_elem(&alg, p)?)?)
            } else if let Some(a) = ia {
                ("I_a".to_string(), make_ia(&alg, &d_elem(&alg, a)?)?)
            } else if let (Some(a), Some(b)) = (psi, b) {
                ("psi_(a,b)".to_string(), make_psi(&alg, &d_elem(&alg, a)?, &d_elem(&alg, b)?)?)
            } else {
                bail!("give one of --word, --jp, --ia, --psi");
            };
            fixpoint(cli, &desc, &op)
        }
        Command::Hexagon { algebra, mul } => {
            let ws = ws()?;
            let alg = pick_or(&ws, algebra, "split")?;
            match mul {
                Some(files) => {
                    let read = |p: &std::path::PathBuf| -> Result<HexElem> {
                        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                        let j: HexJson =
                            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
                        Ok(HexElem::from_json(&alg, &j)?)
                    };
                    let prod = hex_mul(&read(&files[0])?, &read(&files[1])?)?;
                    emit(cli, &prod.to_json())?;
                    Ok(true)
                }
                None => {
                    let count = cli.count.unwrap_or(50);
                    let audit = relation_audit(&alg, count, cli.seed);
                    let mut t = Tally::new();
                    hex_associativity(&mut t, &alg, cli.seed.wrapping_add(1), count);
                    let ok = audit.iter().all(|l| l.ok()) && t.checks.iter().all(|c| c.ok());
                    emit(
                        cli,
                        &json!({ "algebra": alg.label(), "seed": cli.seed, "relations": audit, "associativity": t.checks, "ok": ok }),
                    )?;
                    Ok(ok)
                }
            }
        }
        Command::Eval { algebra, op, args } => {
            let ws = ws()?;
            let alg = pick(&ws, algebra)?;
            eval(cli, &ws, &alg, *op, args)
        }
    }
}

fn load(cli: &Cli, samples: usize) -> Result<Workspace> {
    match &cli.config {
        None => Ok(Workspace::shipped_with(cli.seed, samples)),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Workspace::from_str(&text, cli.seed, samples)?)
        }
    }
}

fn emit(cli: &Cli, v: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn define(cli: &Cli) -> Result<bool> {
    let ws = load(cli, cli.count.unwrap_or(5))?;
    for o in &ws.summary {
        let failed = o.checks.iter().filter(|c| !c.ok()).count();
        let size = if o.kind == "word" { "length" } else { "dim" };
        eprintln!("{} {}: {size} {}, {} checks, {} failed", o.kind, o.label, o.dim, o.checks.len(), failed);
        for c in o.checks.iter().filter_map(|c| c.note.as_ref()) {
            eprintln!("  note: {c}");
        }
    }
    let ok = ws.ok();
    let source = cli.config.as_ref().map_or("shipped".to_string(), |p| p.display().to_string());
    emit(cli, &json!({ "config": source, "seed": cli.seed, "objects": ws.summary, "ok": ok }))?;
    Ok(ok)
}

/// The named algebra, or the only one in the workspace.
fn pick(ws: &Workspace, label: &Option<String>) -> Result<Arc<AlbertAlgebra>> {
    match label {
        Some(l) => Ok(ws.algebra(l)?),
        None if ws.albert.len() == 1 => Ok(ws.albert.values().next().expect("one entry").clone()),
        None => bail!("several algebras loaded; choose one with --algebra ({})", labels(ws)),
    }
}

fn pick_or(ws: &Workspace, label: &Option<String>, fallback: &str) -> Result<Arc<AlbertAlgebra>> {
    match (label, ws.albert.contains_key(fallback)) {
        (None, true) if ws.albert.len() > 1 => Ok(ws.algebra(fallback)?),
        _ => pick(ws, label),
    }
}

fn labels(ws: &Workspace) -> String {
    ws.albert.keys().cloned().collect::<Vec<_>>().join(", ")
}

fn rationals(s: &str) -> Result<Vec<Q>> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(|t| Ok(parse_q(t)?)).collect()
}

/// An element of the coordinate algebra D of a first construction.
fn d_elem(alg: &Arc<AlbertAlgebra>, s: &str) -> Result<AssocElem> {
    let (d, _) = alg.first_data().map_err(|_| anyhow!("{} is not a first construction", alg.label()))?;
    Ok(d.from_q_coords(&rationals(s)?)?)
}

fn elem(ws: &Workspace, alg: &Arc<AlbertAlgebra>, s: &str) -> Result<AlbertElem> {
    if let Some(label) = s.strip_prefix('@') {
        let x = ws.elements.get(label).ok_or_else(|| anyhow!("unknown element {label:?}"))?;
        if !Arc::ptr_eq(x.algebra(), alg) {
            bail!("element {label} belongs to {}", x.algebra().label());
        }
        return Ok(x.clone());
    }
    let v = rationals(s)?;
    if v.len() != DIM {
        bail!("expected {DIM} coordinates, got {}", v.len());
    }
    Ok(alg.elem(v)?)
}

fn config_word(ws: &Workspace, alg: &Arc<AlbertAlgebra>, label: &str) -> Result<InstrWord> {
    let w = ws.words.get(label).ok_or_else(|| anyhow!("unknown word {label:?}"))?;
    if !Arc::ptr_eq(w.algebra(), alg) {
        bail!("word {label} belongs to {}", w.algebra().label());
    }
    Ok(w.clone())
}

fn assoc_json(a: &AssocElem) -> Vec<String> {
    q_strings(&a.to_q_coords())
}

fn flag(e: &Expansion) -> Option<&'static str> {
    match e {
        Expansion::Unexpanded => Some("NoDecomposition"),
        _ => None,
    }
}

/// Evaluates `w`, compares it with `target` and writes the report.
fn word_report(
    cli: &Cli,
    kind: &str,
    target: Value,
    w: &InstrWord,
    expected: &LinOp,
    flags: Vec<&str>,
) -> Result<bool> {
    let e = w.eval()?;
    let verified = e.op == *expected;
    emit(
        cli,
        &json!({
            "kind": kind,
            "algebra": w.algebra().label(),
            "target": target,
            "length": w.len(),
            "word": word_json(w),
            "only_u_and_scalars": w.is_inner_modulo_scalars(),
            "similitude": e.similitude.to_string(),
            "flags": flags,
            "verified": verified,
        }),
    )?;
    Ok(verified)
}

fn factor(cli: &Cli, ws: &Workspace, kind: &Factor) -> Result<bool> {
    match kind {
        Factor::Jp { algebra, i, j } => {
            let alg = pick(ws, algebra)?;
            let (i, j) = (d_elem(&alg, i)?, d_elem(&alg, j)?);
            let p = commutator(&i, &j)?;
            let w = jp_word(&alg, &i, &j)?;
            let target = json!({ "map": "J_p", "p": assoc_json(&p), "i": assoc_json(&i), "j": assoc_json(&j) });
            word_report(cli, "jp", target, &w, &make_jp(&alg, &p)?, vec![])
        }
        Factor::Ia { algebra, a } => {
            let alg = pick(ws, algebra)?;
            let a = d_elem(&alg, a)?;
            let w = ia_word(&alg, &a, None, cli.seed)?;
            let target = json!({ "map": "I_a", "a": assoc_json(&a) });
            word_report(cli, "ia", target, &w.word, &make_ia(&alg, &a)?, flag(&w.expansion).into_iter().collect())
        }
        Factor::Psi { algebra, a, b } => {
            let alg = pick(ws, algebra)?;
            let (a, b) = (d_elem(&alg, a)?, d_elem(&alg, b)?);
            let w = psi_word(&alg, &a, &b, cli.seed)?;
            let target = json!({ "map": "psi_(a,b)", "a": assoc_json(&a), "b": assoc_json(&b) });
            word_report(cli, "psi", target, &w.word, &make_psi(&alg, &a, &b)?, flag(&w.expansion).into_iter().collect())
        }
        Factor::Phi { algebra, v } => {
            let alg = pick(ws, algebra)?;
            let (b, tau, _, _) =
                alg.second_data().map_err(|_| anyhow!("{} is not a second construction", alg.label()))?;
            let factors = if v.is_empty() {
                random_symmetric_factorization(tau, &mut Sampler::new(cli.seed))
            } else {
                let k = b.entry_field();
                v.iter()
                    .map(|s| {
                        let c = rationals(s)?;
                        if c.len() != 6 {
                            bail!("--v needs six rationals, got {}", c.len());
                        }
                        let e = |n: usize| FieldElem::new(k, c[2 * n..2 * n + 2].to_vec());
                        Ok(reflection(tau, &[e(0)?, e(1)?, e(2)?])?)
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let p = factors.iter().fold(b.one(), |acc, x| acc.mul(x));
            let w = phi_p_word(&alg, &factors)?;
            let target = json!({ "map": "phi_p", "p": assoc_json(&p), "factors": factors.iter().map(assoc_json).collect::<Vec<_>>() });
            word_report(cli, "phi", target, &w, &make_phi(&alg, &p, &b.one())?, vec![])
        }
        Factor::Chi { algebra, c } => {
            let alg = pick(ws, algebra)?;
            let c = d_elem(&alg, c)?;
            let w = chi_map(&alg, &c)?;
            let op = w.eval()?.op;
            let d = c.algebra();
            let z = d.zero();
            let verified = (0..d.dim_q()).all(|k| {
                let x = d.basis_q(k);
                let img = op.apply(&alg.from_first(&x, &z, &z).expect("same D"));
                img == alg.from_first(&c.mul(&x), &z, &z).expect("same D")
            });
            let e = w.eval()?;
            emit(
                cli,
                &json!({
                    "kind": "chi",
                    "algebra": alg.label(),
                    "target": { "map": "(x,0,0) -> (cx,0,0)", "c": assoc_json(&c) },
                    "length": w.len(),
                    "word": word_json(&w),
                    "similitude": e.similitude.to_string(),
                    "verified": verified,
                }),
            )?;
            Ok(verified)
        }
        Factor::Reduce { algebra, word } => {
            let alg = pick(ws, algebra)?;
            let f = match word {
                Some(l) => config_word(ws, &alg, l)?,
                None => {
                    let mut s = Sampler::new(cli.seed);
                    InstrWord::new(&alg)
                        .scalar(s.nonzero_q(), "sample")
                        .u(alg.random_invertible(&mut s), "sample")
                        .u(alg.random_invertible(&mut s), "sample")
                }
            };
            let fop = f.eval()?.op;
            let (chi, g) = reduce_to_isometry(&fop)?;
            let e = chi.eval()?;
            let verified = e.op.compose(&fop) == g && g.apply(&alg.one()).norm() == Q::from_integer(1.into());
            let similarity = match reduce_similarity(&fop) {
                Ok((w, (a, b))) => json!({ "chi": word_json(&w), "a": assoc_json(&a), "b": assoc_json(&b) }),
                Err(e) => json!({ "unavailable": e.to_string() }),
            };
            emit(
                cli,
                &json!({
                    "kind": "reduce",
                    "algebra": alg.label(),
                    "input": word_json(&f),
                    "chi": word_json(&chi),
                    "chi_similitude": e.similitude.to_string(),
                    "isometry_image_of_one": elem_json(&g.apply(&alg.one())),
                    "psi_form": similarity,
                    "verified": verified,
                }),
            )?;
            Ok(verified)
        }
    }
}

fn fixpoint(cli: &Cli, desc: &str, op: &LinOp) -> Result<bool> {
    let alg = op.algebra();
    let auto = op.apply(&alg.one()) == alg.one() && is_automorphism(op);
    let fixed = fixed_subspace(op);
    let det = if auto { Some(det_on_trace_zero(op)?) } else { None };
    // an automorphism must fix a nonzero trace-zero vector
    let verified = det.as_ref().is_none_or(|d| *d == Q::from_integer(0.into()));
    emit(
        cli,
        &json!({
            "operator": desc,
            "algebra": alg.label(),
            "automorphism": auto,
            "det_on_trace_zero_minus_id": det.map(|d| d.to_string()),
            "fixed": {
                "dim": fixed.dim(),
                "basis": fixed.basis().iter().map(|v| q_strings(v)).collect::<Vec<_>>(),
                "subalgebra": fixed.is_subalgebra(),
                "contains_one": contains_one(&fixed),
            },
            "verified": verified,
        }),
    )?;
    Ok(verified)
}

fn eval(cli: &Cli, ws: &Workspace, alg: &Arc<AlbertAlgebra>, op: EvalOp, args: &[String]) -> Result<bool> {
    let arity = match op {
        EvalOp::Mul | EvalOp::Cross | EvalOp::TraceForm | EvalOp::U => 2,
        _ => 1,
    };
    if args.len() != arity {
        bail!("{op:?} takes {arity} argument(s), got {}", args.len());
    }
    if let EvalOp::Word = op {
        let w = config_word(ws, alg, &args[0])?;
        let e = w.eval()?;
        let c = classify(&e.op)?;
        emit(
            cli,
            &json!({
                "word": args[0],
                "length": w.len(),
                "similitude": e.similitude.to_string(),
                "similarity_factor": c.similarity_factor.to_string(),
                "isometry": c.isometry,
                "automorphism": c.automorphism,
                "matrix": e.op.matrix().entries().chunks(DIM).map(q_strings).collect::<Vec<_>>(),
            }),
        )?;
        return Ok(c.similarity_factor == e.similitude);
    }
    let xs = args.iter().map(|a| elem(ws, alg, a)).collect::<Result<Vec<_>>>()?;
    let x = &xs[0];
    let result = match op {
        EvalOp::Norm => json!(x.norm().to_string()),
        EvalOp::Newton => json!(x.newton_norm().to_string()),
        EvalOp::Trace => json!(x.trace().to_string()),
        EvalOp::TraceForm => json!(x.trace_form(&xs[1]).to_string()),
        EvalOp::Adjoint => json!(elem_json(&x.adjoint())),
        EvalOp::Inv => json!(elem_json(&x.inv()?)),
        EvalOp::Square => json!(elem_json(&x.jmul(x))),
        EvalOp::Mul => json!(elem_json(&x.jmul(&xs[1]))),
        EvalOp::Cross => json!(elem_json(&x.cross(&xs[1]))),
        EvalOp::U => json!(elem_json(&x.u_apply(&xs[1]))),
        EvalOp::Word => unreachable!("handled above"),
    };
    emit(cli, &json!({ "algebra": alg.label(), "op": format!("{op:?}").to_lowercase(), "result": result }))?;
    Ok(true)
}
