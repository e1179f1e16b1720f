use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use serde_json::{json, Value};

use mfdo_core::catalog::{self, catalog, Filter, SpaceEntry};
use mfdo_core::radial::{self, radial, rais_form, rais_product, KernelForm};
use mfdo_core::ratpoly::{fmt_rational, parse, RatPoly};
use mfdo_core::smith::{
    casimir, parse_letters, rewrite_word, s_normal_form, CoeffRing, SmithAlgebra, SmithElement, Strategy, T_VAR,
};
use mfdo_core::torus::{canonical_elements, eval_word, f_xy, parse_word, u_xy, SpaceParams, TorusElement};
use mfdo_core::verify::{run_suite, Suite};
use mfdo_core::weyl::{build_instance, calibration, extract_bs, InstanceKind};
use mfdo_core::{Error, Result};

use crate::{Command, RedexStrategy, SpaceArgs};

pub struct Output {
    pub text: String,
    pub json: Value,
    /// False when a check ran and failed.
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

pub fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Bs { space, element } => bs(space, element),
        Command::Uxy { space } => uxy(space),
        Command::Radial { space, a, element, kernel, check_rais } => {
            radial_cmd(space, a.as_deref(), element, *kernel, *check_rais)
        }
        Command::Smith { f, n, ring, word, strategy, seed, casimir } => {
            smith(f, *n, ring, word.as_deref(), *strategy, *seed, *casimir)
        }
        Command::Oracle { instance, operator, grid } => oracle(instance, operator, *grid),
        Command::Catalog { name, n, m, p, table, commutative, max_rank } => {
            let params = collect_params(*n, *m, *p);
            catalog_cmd(name.as_deref(), &params, *table, *commutative, *max_rank)
        }
        Command::Verify { suite, seed } => verify(suite, *seed),
    }
}

fn collect_params(n: Option<i64>, m: Option<i64>, p: Option<i64>) -> Vec<(&'static str, i64)> {
    [("n", n), ("m", m), ("p", p)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
}

fn resolve(args: &SpaceArgs) -> Result<(SpaceEntry, Arc<SpaceParams>)> {
    let entry = catalog().lookup(&args.space, &collect_params(args.n, args.m, args.p))?;
    let space = match (&args.by, &args.degrees) {
        (Some(b), degrees) => catalog::with_b_y(&entry, parse(b)?, degrees.clone())?,
        (None, Some(_)) => return Err(Error::InvalidParams("--degrees needs --by".into())),
        (None, None) => catalog::to_space_params(&entry)?,
    };
    Ok((entry, space))
}

fn parts_json(e: &TorusElement) -> Value {
    let parts: BTreeMap<String, String> = e.parts().iter().map(|(m, p)| (m.to_string(), p.to_string())).collect();
    json!(parts)
}

fn space_json(entry: &SpaceEntry, s: &SpaceParams) -> Value {
    json!({ "name": entry.label(), "degrees": s.degrees, "b_y": s.b_y.to_string() })
}

fn bs(args: &SpaceArgs, element: &str) -> Result<Output> {
    let (entry, s) = resolve(args)?;
    let d = eval_word(&s, &parse_word(element)?);
    let degree = match d.parts().len() {
        1 => d.parts().keys().next().copied(),
        _ => None,
    };
    let text = match degree {
        Some(m) => d.part(m).to_string(),
        None => d.to_string(),
    };
    let json = json!({
        "space": space_json(&entry, &s),
        "element": element,
        "degree": degree,
        "parts": parts_json(&d),
    });
    Ok(Output::new(text, json))
}

fn uxy(args: &SpaceArgs) -> Result<Output> {
    let (entry, s) = resolve(args)?;
    let t = RatPoly::var(T_VAR);
    let u = RatPoly::horner(&u_xy(&s), &t);
    let f = RatPoly::horner(&f_xy(&s), &t);
    let c = canonical_elements(&s);
    let center = c.x.t_mul(&c.y).project_center()?.part(0);
    let text = format!("u_XY(t) = {u}\nf_XY(t) = {f}\nd0 = {}\nproj(XY) = {center}", s.d0());
    let json = json!({
        "space": space_json(&entry, &s),
        "u_xy": u.to_string(),
        "f_xy": f.to_string(),
        "d0": s.d0(),
        "center_xy": center.to_string(),
    });
    Ok(Output::new(text, json))
}

fn radial_cmd(args: &SpaceArgs, a: Option<&[i64]>, element: &str, kernel: bool, check_rais: bool) -> Result<Output> {
    let (entry, s) = resolve(args)?;
    let zeros = vec![0; s.r()];
    let a = a.unwrap_or(&zeros);
    let d = eval_word(&s, &parse_word(element)?);
    let r = radial(&d, a)?;
    let mut text = format!("{r}\n= {}\n", r.expanded_string());
    let parts: BTreeMap<String, String> = r.parts().iter().map(|(m, q)| (m.to_string(), q.to_string())).collect();
    let mut json = json!({
        "space": space_json(&entry, &s),
        "element": element,
        "label": a,
        "theta": parts,
        "expanded": r.expanded_string(),
    });
    let mut ok = true;
    if kernel {
        let gens = radial::kernel_generators(&s, &radial::standard_generators(&s), a, KernelForm::FixedLabel)?;
        let mut listed = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let inside = radial::in_kernel(g, a)?;
            ok &= inside;
            let _ = writeln!(text, "G{i} = {g}  [{}]", if inside { "in kernel" } else { "NOT in kernel" });
            listed.push(json!({ "generator": g.to_string(), "in_kernel": inside }));
        }
        json["kernel"] = json!(listed);
    }
    if check_rais {
        if entry.name != "det" {
            return Err(Error::InvalidParams("--check-rais needs --space det".into()));
        }
        let n = entry.params["n"];
        let ry = radial(&canonical_elements(&s).y, &vec![0; s.r()])?;
        let derived = rais_form(n as u32)?;
        let printed = rais_product(2, n - 1);
        let agrees = derived == ry;
        ok &= agrees;
        let verdict = |same: bool| if same { "agrees" } else { "differs" };
        let rows = [
            ("radial(Y, 0)".to_string(), ry.to_string(), String::new()),
            (format!("j = 2..{n}"), derived.to_string(), format!("  [{}]", verdict(agrees))),
            (format!("j = 2..{}", n - 1), printed.to_string(), format!("  [{}]", verdict(printed == ry))),
        ];
        for (label, op, note) in rows {
            let _ = writeln!(text, "{label:<14} = {op}{note}");
        }
        json["rais"] = json!({
            "radial_y": ry.to_string(),
            "upper_n": { "operator": derived.to_string(), "agrees": agrees },
            "upper_n_minus_1": { "operator": printed.to_string(), "agrees": printed == ry },
        });
    }
    Ok(Output { text, json, ok })
}

fn smith(
    f: &str,
    n: i64,
    ring: &[String],
    word: Option<&str>,
    strategy: Option<RedexStrategy>,
    seed: u64,
    want_casimir: bool,
) -> Result<Output> {
    if word.is_none() && !want_casimir {
        return Err(Error::InvalidParams("nothing to do: pass --word or --casimir".into()));
    }
    let ring = if ring.is_empty() { CoeffRing::Q } else { CoeffRing::QPoly(ring.to_vec()) };
    let alg = SmithAlgebra::new(ring, parse(f)?, n)?;
    let mut text = String::new();
    let mut json = json!({ "f": alg.f.to_string(), "n": n });
    let mut ok = true;
    if let Some(w) = word {
        let letters = parse_letters(w)?;
        let nf = match strategy {
            None => s_normal_form(&alg, &letters)?,
            Some(kind) => {
                let mut s = match kind {
                    RedexStrategy::Leftmost => Strategy::Leftmost,
                    RedexStrategy::Rightmost => Strategy::Rightmost,
                    RedexStrategy::Random => Strategy::Random(mfdo_core::random::rng(seed)),
                };
                rewrite_word(&alg, &letters, &mut s)?
            }
        };
        let _ = writeln!(text, "{nf}");
        json["word"] = json!(w);
        json["normal_form"] = json!(nf.to_string());
    }
    if want_casimir {
        let omega = casimir(&alg);
        let central = [SmithElement::x(&alg), SmithElement::y(&alg), SmithElement::e(&alg)]
            .iter()
            .all(|g| omega.commutator(g).is_zero());
        ok &= central;
        let _ = writeln!(text, "Omega = {omega}\ncentral: {}", if central { "yes" } else { "no" });
        json["casimir"] = json!({ "element": omega.to_string(), "central": central });
    }
    Ok(Output { text, json, ok })
}

fn oracle(instance: &str, operator: &str, grid: Option<u32>) -> Result<Output> {
    let kind: InstanceKind = instance.parse()?;
    let inst = build_instance(kind)?;
    let op = inst.operator(operator)?;
    let m = match operator {
        "X" => 1,
        "Y" => -1,
        _ => 0,
    };
    let per_axis = grid.unwrap_or_else(|| (op.order().max(0) as u32 + 1).max(inst.r() as u32 + 2));
    let axes = vec![(0..per_axis).collect::<Vec<u32>>(); inst.r() + 1];
    let b = extract_bs(&inst, &op, m, &axes)?;
    let mut text = format!("{b}\n");
    let mut json = json!({
        "instance": kind.to_string(),
        "operator": operator,
        "degree": m,
        "grid": per_axis,
        "b": b.to_string(),
    });
    if operator == "Y" {
        let d_half = inst.d_half();
        let c = calibration(&b, inst.r(), &d_half)?;
        let formula = catalog::product_formula(inst.r(), &d_half);
        let proportional = b == formula.scale(&c);
        let _ = writeln!(
            text,
            "d/2 = {}\nc = {}\nproportional to the product formula: {}",
            fmt_rational(&d_half),
            fmt_rational(&c),
            if proportional { "yes" } else { "no" }
        );
        json["d_half"] = json!(fmt_rational(&d_half));
        json["c"] = json!(fmt_rational(&c));
        json["proportional"] = json!(proportional);
    }
    Ok(Output::new(text, json))
}

fn catalog_cmd(
    name: Option<&str>,
    params: &[(&str, i64)],
    table: Option<u8>,
    commutative: bool,
    max_rank: Option<i64>,
) -> Result<Output> {
    if let Some(name) = name {
        let e = catalog().lookup(name, params)?;
        let formula = catalog::by_formula(&e).ok();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let mut text = String::new();
        let _ = writeln!(text, "name: {}", e.label());
        let _ = writeln!(text, "table: {}", e.table);
        let _ = writeln!(text, "group: {}", e.group);
        let _ = writeln!(text, "invariant: {}", e.invariant_desc);
        let _ = writeln!(text, "rank: {}\ndim: {}\nd0: {}", e.rank, e.dim, e.d0);
        let _ = writeln!(text, "degrees: {}", opt(e.degrees.as_ref().map(|d| format!("{d:?}"))));
        let _ = writeln!(text, "d: {}", opt(e.d_param.as_ref().map(fmt_rational)));
        let _ = writeln!(text, "regular: {}", e.regular);
        let _ = writeln!(text, "type: {}", structure_name(&e));
        let _ = writeln!(text, "b_Y: {}", opt(formula.as_ref().map(|b| b.to_string())));
        let _ = writeln!(text, "oracle: {}", opt(e.oracle.map(|k| k.to_string())));
        let mut json = serde_json::to_value(&e).expect("entries serialize");
        json["b_y"] = json!(formula.map(|b| b.to_string()));
        return Ok(Output::new(text, json));
    }
    let entries = catalog().list(&Filter { table, commutative_only: commutative, max_rank });
    let mut text = format!(
        "{:<26} {:>5} {:>4} {:>4} {:>3} {:>5} {:>7}  {}\n",
        "name", "table", "rank", "dim", "d0", "d", "regular", "type"
    );
    for e in &entries {
        let _ = writeln!(
            text,
            "{:<26} {:>5} {:>4} {:>4} {:>3} {:>5} {:>7}  {}",
            e.label(),
            e.table,
            e.rank,
            e.dim,
            e.d0,
            e.d_param.as_ref().map(fmt_rational).unwrap_or_else(|| "-".into()),
            if e.regular { "yes" } else { "no" },
            structure_name(e)
        );
    }
    let json = serde_json::to_value(&entries).expect("entries serialize");
    Ok(Output::new(text, json))
}

fn structure_name(e: &SpaceEntry) -> &'static str {
    if e.commutative_parabolic() {
        "commutative parabolic"
    } else if e.parabolic() {
        "parabolic"
    } else {
        "non-parabolic"
    }
}

fn verify(suite: &str, seed: u64) -> Result<Output> {
    let suite: Suite = suite.parse()?;
    let results = run_suite(suite, seed);
    let mut text = String::new();
    let mut rows = Vec::new();
    for (s, c) in &results {
        let _ = writeln!(text, "{:<8} {c}", s.name());
        rows.push(json!({
            "suite": s.name(),
            "check": c.name,
            "passed": c.passed,
            "cases": c.cases,
            "detail": c.detail,
        }));
    }
    let failed = results.iter().filter(|(_, c)| !c.passed).count();
    let _ = writeln!(text, "{} of {} suites passed (seed {seed})", results.len() - failed, results.len());
    Ok(Output { text, json: json!({ "seed": seed, "suites": rows }), ok: failed == 0 })
}
