use std::fmt::Write as _;
use std::path::Path;

use lears_core::classify::{enumerate_nulldim1, invariants, isomorphic, lars_catalog, IsoVerdict};
use lears_core::lears::{
    construct as construct_window, construct_product, decompose as decompose_window,
    group_decomposition_check, parse_spec_line, verify_window, LearsSpec, LearsWindow,
};
use lears_core::loopalg::{
    trace_identity_check, Cocycle, JacobiMode, LoopLabel, TwistedGroupAlgebra,
};
use lears_core::qgroup::parse_group;
use lears_core::rational::{fmt_q, parse_q};
use lears_core::report::{Check, Report};
use lears_core::rootsys::{format_root, write_root_lines};
use lears_core::{Error, Result, RootSystemDesc, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{RealizeArgs, SpecInput};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

const DEFAULT_WINDOW: i128 = 3;
const TRACE_SAMPLES: usize = 100;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_window(src: &SpecInput) -> Result<LearsWindow> {
    let over = src.window.as_deref().map(parse_q).transpose()?;
    match (&src.spec, &src.input) {
        (Some(line), None) => {
            let sl = parse_spec_line(line)?;
            if sl.null_dim() == 1 {
                let b = over
                    .or(sl.window())
                    .unwrap_or(Q::from_integer(DEFAULT_WINDOW));
                construct_window(&sl.single()?, &b)
            } else {
                let bounds = match over {
                    Some(b) => vec![b; sl.null_dim()],
                    None if sl.windows.len() == sl.null_dim() => sl.windows.clone(),
                    None => vec![Q::from_integer(DEFAULT_WINDOW); sl.null_dim()],
                };
                construct_product(&sl.desc, &sl.factors, &bounds)
            }
        }
        (None, Some(p)) => LearsWindow::from_text(&read(p)?),
        _ => Err(Error::InvalidArgument(
            "give exactly one of --spec and --input".into(),
        )),
    }
}

pub fn construct(src: &SpecInput) -> Result<Outcome> {
    if src.spec.is_none() {
        return Err(Error::InvalidArgument("construct needs --spec".into()));
    }
    let w = load_window(src)?;
    let roots: Vec<String> = w.roots.iter().map(format_root).collect();
    Ok(Outcome {
        text: w.to_text(),
        json: json!({
            "spec": w.spec().map(|s| s.to_string()),
            "bounds": w.bounds.iter().map(fmt_q).collect::<Vec<_>>(),
            "count": roots.len(),
            "roots": roots,
        }),
        passed: true,
    })
}

pub fn verify(src: &SpecInput, split: bool) -> Result<Outcome> {
    let w = load_window(src)?;
    let rep = verify_window(&w);
    let mut text = format!(
        "{}\nroots {} reduced {}\n",
        rep.report, rep.root_count, rep.is_reduced
    );
    let mut passed = rep.passed();
    let mut json = json!({ "window": to_value(&rep) });
    if split {
        let s = group_decomposition_check(&w);
        let _ = writeln!(text, "{}", s.report);
        passed &= s.report.passed();
        json["split"] = to_value(&s);
    }
    Ok(Outcome { text, json, passed })
}

pub fn decompose(src: &SpecInput) -> Result<Outcome> {
    let w = load_window(src)?;
    let d = decompose_window(&w, None)?;
    let spec = match (&d.group, &d.triple) {
        (Some(g), Some(t)) => Some(LearsSpec::new(d.desc, g.clone(), t.shift_normal_form())?),
        _ => None,
    };
    let mut text = String::new();
    match &spec {
        Some(s) => {
            let _ = writeln!(text, "{s} reduced={}", d.reduced);
        }
        None => {
            let _ = writeln!(
                text,
                "type={} reduced={} (no single triple)",
                d.desc, d.reduced
            );
        }
    }
    let _ = writeln!(text, "{}", d.report);
    Ok(Outcome {
        text,
        json: json!({
            "spec": spec.as_ref().map(|s| s.to_string()),
            "decomposition": to_value(&d),
        }),
        passed: d.report.passed(),
    })
}

fn spec_of(w: &LearsWindow) -> Result<LearsSpec> {
    if let Some(s) = w.spec() {
        return Ok(s);
    }
    let d = decompose_window(w, None)?;
    match (d.group, d.triple) {
        (Some(g), Some(t)) => LearsSpec::new(d.desc, g, t.shift_normal_form()),
        _ => Err(Error::Decompose("null dimension one is required".into())),
    }
}

pub fn classify(src: &SpecInput, with: Option<&Path>) -> Result<Outcome> {
    let w = load_window(src)?;
    match with {
        None => {
            let inv = invariants(&spec_of(&w)?);
            Ok(Outcome {
                text: format!("{inv}\n"),
                json: json!({ "invariants": to_value(&inv) }),
                passed: true,
            })
        }
        Some(p) => {
            let w2 = LearsWindow::from_text(&read(p)?)?;
            let v = isomorphic(&w, &w2)?;
            let text = match &v {
                IsoVerdict::Isomorphic(m) => format!("isomorphic\n{m}\n"),
                IsoVerdict::NotIsomorphic(why) => format!("not isomorphic: {why}\n"),
                IsoVerdict::Undecided(why) => format!("undecided: {why}\n"),
            };
            Ok(Outcome {
                text,
                json: json!({ "verdict": to_value(&v) }),
                passed: v.is_isomorphic(),
            })
        }
    }
}

pub fn enumerate(ty: &str, group: &str) -> Result<Outcome> {
    let desc: RootSystemDesc = ty.parse()?;
    let g = parse_group(group)?;
    let specs = enumerate_nulldim1(&desc, &g)?;
    let mut text = String::new();
    for s in &specs {
        let _ = writeln!(text, "{s} reduced={}", s.reduced_claim);
    }
    let rows: Vec<Value> = specs
        .iter()
        .map(|s| json!({ "spec": s.to_string(), "reduced": s.reduced_claim }))
        .collect();
    Ok(Outcome {
        text,
        json: json!({ "count": specs.len(), "specs": rows }),
        passed: true,
    })
}

pub fn catalog(index: u32, verify_at: Option<&str>) -> Result<Outcome> {
    let bound = verify_at.map(parse_q).transpose()?;
    let entries = lars_catalog(index);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut passed = true;
    for e in &entries {
        let status = match &bound {
            Some(b) => {
                let ok = verify_window(&construct_window(&e.spec, b)?).passed();
                passed &= ok;
                Some(ok)
            }
            None => None,
        };
        let _ = write!(text, "{:<8} {}", e.label, e.spec);
        if let Some(ok) = status {
            let _ = write!(text, "  {}", if ok { "pass" } else { "fail" });
        }
        text.push('\n');
        rows.push(json!({ "label": e.label, "spec": e.spec.to_string(), "verified": status }));
    }
    Ok(Outcome {
        text,
        json: json!({ "count": entries.len(), "entries": rows }),
        passed,
    })
}

pub fn similar(a: &str, b: &str) -> Result<Outcome> {
    let (s1, s2) = (parse_spec_line(a)?.single()?, parse_spec_line(b)?.single()?);
    let w = lears_core::classify::similar((&s1.group, &s1.triple), (&s2.group, &s2.triple))?;
    let text = match &w {
        Some(w) => format!("similar: {w}\n"),
        None => "not similar\n".to_string(),
    };
    Ok(Outcome {
        text,
        json: json!({ "witness": w.as_ref().map(to_value) }),
        passed: w.is_some(),
    })
}

/// Accepts `G2(3)`, `B(2)` with `--index`, or an index written into the
/// label (`B2(2)`, `BC3`, `A2(1)`).
fn parse_label(label: &str, index: usize) -> Result<LoopLabel> {
    if let Ok(l) = LoopLabel::parse(label, index) {
        return Ok(l);
    }
    let letters: String = label
        .chars()
        .take_while(|c| c.is_ascii_alphabetic())
        .collect();
    let digits: String = label[letters.len()..]
        .chars()
        .take_while(|c| c.is_ascii_digit())
        .collect();
    let n = digits
        .parse::<usize>()
        .map_err(|_| Error::InvalidArgument(format!("no realization for label {label}")))?;
    LoopLabel::parse(
        &format!("{letters}{}", &label[letters.len() + digits.len()..]),
        n,
    )
}

pub fn realize(a: &RealizeArgs) -> Result<Outcome> {
    let label = parse_label(&a.label, a.index)?;
    let group = parse_group(&a.group)?;
    let bound = parse_q(&a.window)?;
    let tau = match &a.cocycle_lambda {
        Some(l) => Cocycle::Power {
            lambda: parse_q(l)?,
            unit: group.unit(),
        },
        None => Cocycle::One,
    };
    let mut want = (false, false, false);
    for c in &a.check {
        match c.trim() {
            "jacobi" => want.0 = true,
            "roots" => want.1 = true,
            "trace" => want.2 = true,
            other => return Err(Error::InvalidArgument(format!("unknown check `{other}`"))),
        }
    }
    let mode = match (a.samples, a.seed) {
        (Some(count), Some(seed)) => JacobiMode::Sampled { count, seed },
        (Some(_), None) => return Err(Error::InvalidArgument("--samples needs --seed".into())),
        _ => JacobiMode::Exhaustive,
    };
    let r = lears_core::loopalg::realize(&label, &group, &tau, &bound, want.0.then_some(mode))?;
    let mut report = Report::new(r.report.subject.clone());
    for c in r
        .report
        .checks
        .iter()
        .filter(|c| want.1 || c.axiom != "roots match prediction")
    {
        report.push(c.clone());
    }
    if want.2 {
        report.push(trace_checks(&label, &group, &tau, a.seed.unwrap_or(0))?);
    }
    let l = &r.algebra;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "realization {label} over {group} window {}",
        fmt_q(&bound)
    );
    let _ = writeln!(
        text,
        "basis {} ({} fiber symbols, c, d)",
        l.dim(),
        l.dim() - 2
    );
    let _ = writeln!(text, "inventory:");
    let inventory = l.inventory();
    for ((g, w), n) in &inventory {
        let _ = writeln!(
            text,
            "  degree {:>4}  weight {:<12} {n}",
            fmt_q(g),
            w.to_string()
        );
    }
    if let Some(j) = &r.jacobi {
        let _ = writeln!(text, "{j}");
    }
    let _ = writeln!(text, "{report}");
    let header = vec![
        ("label".to_string(), label.to_string()),
        ("group".to_string(), group.to_string()),
        ("window".to_string(), fmt_q(&bound)),
        ("count".to_string(), r.roots.anisotropic.len().to_string()),
    ];
    text.push_str(&write_root_lines(&header, &r.roots.anisotropic));
    let matched = report.get("roots match prediction").map(Check::passed);
    if let Some(m) = matched {
        let _ = writeln!(
            text,
            "prediction: {} {}",
            if m { "match" } else { "mismatch" },
            r.predicted
        );
    }
    let mut json = json!({
        "label": label.to_string(),
        "group": group.to_string(),
        "window": fmt_q(&bound),
        "basis_dim": l.dim(),
        "inventory": inventory
            .iter()
            .map(|((g, w), n)| json!({ "degree": fmt_q(g), "weight": w.to_string(), "count": n }))
            .collect::<Vec<_>>(),
        "jacobi": r.jacobi.as_ref().map(to_value),
        "report": to_value(&report),
        "roots": r.roots.anisotropic.iter().map(format_root).collect::<Vec<_>>(),
        "predicted": r.predicted.to_string(),
        "prediction_matches": matched,
    });
    if a.dump_structure_constants {
        text.push_str(&l.structure_constants_text());
        json["structure_constants"] = Value::Array(
            l.brackets
                .iter()
                .flat_map(|((i, j), v)| v.iter().map(move |(k, c)| json!([i, j, k, fmt_q(c)])))
                .collect(),
        );
    }
    Ok(Outcome {
        text,
        json,
        passed: report.passed(),
    })
}

fn trace_checks(
    label: &LoopLabel,
    group: &lears_core::QSubgroup,
    tau: &Cocycle,
    seed: u64,
) -> Result<Check> {
    if *label != LoopLabel::G2Twisted {
        return Err(Error::InvalidArgument(
            "the trace check applies to G2(3) only".into(),
        ));
    }
    let alg = TwistedGroupAlgebra::new(group.clone(), tau.clone(), 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = group.unit() * Q::from_integer(3);
    let mut bad = Vec::new();
    for _ in 0..TRACE_SAMPLES {
        let x = alg.random_element(&support, &mut rng)?;
        let c = trace_identity_check(&alg, &x)?;
        bad.extend(c.witnesses);
    }
    Ok(Check::new("trace identity", bad))
}
