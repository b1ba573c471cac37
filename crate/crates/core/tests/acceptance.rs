//! Acceptance suite: one pass/fail line per criterion, with timings.
//! Run with `cargo test -p lears-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lears_core::classify::{
    enumerate_nulldim1, isomorphic, lars_catalog, random_valid_spec, IsoVerdict,
};
use lears_core::lears::{construct, group_decomposition_check, verify_window, LearsSpec};
use lears_core::linalg::rank;
use lears_core::loopalg::matrix::{dvv_matrix, flatten, form_s};
use lears_core::loopalg::octonion::{act, derivation_basis, derivation_dxy, Octonion};
use lears_core::loopalg::{
    realize, trace_identity_check, Cocycle, JacobiMode, LoopLabel, TwistedGroupAlgebra,
};
use lears_core::qgroup::parse_group;
use lears_core::rational::q;
use lears_core::rootsys::{generate, reflectable_base, RootSystemDesc};
use lears_core::{QSubgroup, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LIMIT_CATALOG: Duration = Duration::from_secs(1);
const LIMIT_LARS: Duration = Duration::from_secs(10);
const LIMIT_LOOPS: Duration = Duration::from_secs(300);
const RANDOM_PER_TYPE: usize = 20;
const TRACE_SAMPLES: usize = 100;
const SEED: u64 = 20261014;

type Outcome = Result<String, String>;

fn d(s: &str) -> RootSystemDesc {
    s.parse().expect("valid type")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() <= limit, || {
        format!("took {:.2?}, limit {limit:?}", t.elapsed())
    })
}

fn c1_catalogs() -> Outcome {
    let t = Instant::now();
    let z = QSubgroup::integers();
    let want = [
        ("A2", 1),
        ("A5", 1),
        ("D4", 1),
        ("D6", 1),
        ("E6", 1),
        ("E7", 1),
        ("E8", 1),
        ("B2", 2),
        ("B3", 2),
        ("C2", 2),
        ("C4", 2),
        ("F4", 2),
        ("G2", 2),
        ("BC1", 4),
        ("BC2", 5),
        ("BC3", 5),
        ("BC5", 5),
    ];
    for (ty, n) in want {
        let specs = enumerate_nulldim1(&d(ty), &z).map_err(|e| e.to_string())?;
        ensure(specs.len() == n, || {
            format!("{ty}: {} specs, want {n}", specs.len())
        })?;
        let reduced: Vec<&LearsSpec> = specs.iter().filter(|s| s.reduced_claim).collect();
        if ty.starts_with("BC") {
            ensure(reduced.len() == 1, || {
                format!("{ty}: {} reduced", reduced.len())
            })?;
            let e = reduced[0].triple.e.as_ref().expect("BC has E");
            ensure(
                e.period() == 2 && e.contains(&q(1)) && !e.contains(&q(0)),
                || format!("{ty}: E = {e}"),
            )?;
        } else {
            ensure(reduced.len() == n, || {
                format!("{ty}: non-BC entries must be reduced")
            })?;
        }
    }
    within(t, LIMIT_CATALOG)?;
    Ok(format!("{} types", want.len()))
}

fn c2_lars() -> Outcome {
    let t = Instant::now();
    let c = lars_catalog(3);
    ensure(c.len() == 14, || format!("{} entries", c.len()))?;
    let line = |label: &str| {
        c.iter()
            .find(|e| e.label == label)
            .map(|e| e.spec.to_string())
    };
    let expect = [
        ("A3(1)", "type=A3 group=Z S=G"),
        ("B3(1)", "type=B3 group=Z S=G L=G"),
        ("B3(2)", "type=B3 group=Z S=G L=2G+{0}"),
        ("C3(1)", "type=C3 group=Z S=G L=G"),
        ("C3(2)", "type=C3 group=Z S=G L=2G+{0}"),
        ("D4(1)", "type=D4 group=Z S=G"),
        ("BC3(2)", "type=BC3 group=Z S=G L=G E=2G+{1}"),
    ];
    for (label, spec) in expect {
        ensure(line(label).as_deref() == Some(spec), || {
            format!("{label}: {:?}", line(label))
        })?;
    }
    for e in &c {
        let w = construct(&e.spec, &q(3)).map_err(|x| x.to_string())?;
        let r = verify_window(&w);
        ensure(r.passed(), || format!("{}: {}", e.label, r.report))?;
    }
    within(t, LIMIT_LARS)?;
    Ok("14 entries verified at bound 3".into())
}

const TYPES: [&str; 11] = [
    "A3", "B2", "B3", "C2", "C3", "D4", "BC1", "BC2", "BC3", "F4", "G2",
];

fn c3_converse() -> Outcome {
    let z = QSubgroup::integers();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut n = 0;
    let mut unchecked = 0u64;
    for ty in TYPES {
        let mut specs = enumerate_nulldim1(&d(ty), &z).map_err(|e| e.to_string())?;
        for _ in 0..RANDOM_PER_TYPE {
            specs.push(random_valid_spec(&d(ty), &mut rng).map_err(|e| e.to_string())?);
        }
        for s in &specs {
            let w = construct(s, &(s.group.unit() * q(2))).map_err(|e| format!("{s}: {e}"))?;
            let r = verify_window(&w);
            ensure(r.passed(), || format!("{s}: {}", r.report))?;
            unchecked += r
                .report
                .checks
                .iter()
                .map(|c| c.unchecked_count)
                .sum::<u64>();
            n += 1;
        }
    }
    Ok(format!(
        "{n} windows, zero failures, {unchecked} boundary pairs unchecked"
    ))
}

fn shifted_spec(s: &LearsSpec, k: i128, j: i128) -> Result<LearsSpec, String> {
    let t = &s.triple;
    let u = s.group.unit();
    let pick = |sp: &lears_core::ReflectionSpace, m: i128| {
        sp.representatives()[0] + u * q(m * sp.period() as i128)
    };
    let sh = pick(&t.s, k);
    let lh = t.l.as_ref().map(|l| pick(l, j)).unwrap_or_else(|| q(0));
    let moved = t.shifted(&sh, &lh).map_err(|e| e.to_string())?;
    LearsSpec::new(s.desc, s.group.clone(), moved).map_err(|e| e.to_string())
}

fn c4_isomorphism() -> Outcome {
    let z = QSubgroup::integers();
    let bound = q(4);
    let (mut iso, mut non) = (0, 0);
    for ty in TYPES {
        let specs = enumerate_nulldim1(&d(ty), &z).map_err(|e| e.to_string())?;
        let mut bases = Vec::new();
        for s in &specs {
            let ws: Vec<_> = [(0, 0), (1, 1), (-1, 2)]
                .iter()
                .map(|(k, j)| {
                    shifted_spec(s, *k, *j)
                        .and_then(|x| construct(&x, &bound).map_err(|e| e.to_string()))
                })
                .collect::<Result<_, _>>()?;
            for a in 0..3 {
                for b in a + 1..3 {
                    match isomorphic(&ws[a], &ws[b]).map_err(|e| e.to_string())? {
                        IsoVerdict::Isomorphic(_) => iso += 1,
                        v => return Err(format!("{s} shifts {a},{b}: {v:?}")),
                    }
                }
            }
            bases.push(ws.into_iter().next().expect("three windows"));
        }
        for a in 0..bases.len() {
            for b in a + 1..bases.len() {
                match isomorphic(&bases[a], &bases[b]).map_err(|e| e.to_string())? {
                    IsoVerdict::NotIsomorphic(_) => non += 1,
                    v => return Err(format!("{ty} entries {a},{b}: {v:?}")),
                }
            }
        }
    }
    Ok(format!(
        "{iso} shifted pairs isomorphic with witnesses, {non} distinct pairs separated"
    ))
}

fn c5_quotients() -> Outcome {
    let g = |s: &str| parse_group(s).expect("group");
    let order = |s: &str, n: u32| g(s).quotient_order(2, n).map_err(|e| e.to_string());
    for s in ["Z", "Zinv(3)", "Zloc(2)"] {
        ensure(order(s, 1)? == 2, || format!("|{s}/2{s}| ≠ 2"))?;
    }
    ensure(order("Zinv(2)", 1)? == 1, || "Z[1/2] is 2-divisible".into())?;
    ensure(order("Zinv(3)", 2)? == 4, || "|Z[1/3]/4Z[1/3]| ≠ 4".into())?;
    Ok("5 quotient orders".into())
}

fn c6_splitting() -> Outcome {
    let mut n = 0;
    for e in lars_catalog(3) {
        let w = construct(&e.spec, &q(2)).map_err(|x| x.to_string())?;
        let r = group_decomposition_check(&w);
        ensure(r.report.passed(), || format!("{}: {}", e.label, r.report))?;
        n += 1;
    }
    Ok(format!("{n} catalog windows split"))
}

fn c7_loops() -> Outcome {
    let t = Instant::now();
    let z = QSubgroup::integers();
    let labels = [
        LoopLabel::A(2),
        LoopLabel::B(1),
        LoopLabel::B(2),
        LoopLabel::C(2),
        LoopLabel::D(4),
        LoopLabel::BTwisted(1),
        LoopLabel::BTwisted(2),
        LoopLabel::CTwisted(2),
        LoopLabel::BC(1),
        LoopLabel::BC(2),
        LoopLabel::G2,
        LoopLabel::G2Twisted,
    ];
    let mut triples = 0;
    for l in labels {
        let r = realize(&l, &z, &Cocycle::One, &q(2), Some(JacobiMode::Exhaustive))
            .map_err(|e| format!("{l}: {e}"))?;
        ensure(r.report.passed(), || format!("{l}: {}", r.report))?;
        triples += r.jacobi.map(|j| j.triples_checked).unwrap_or(0);
    }
    within(t, LIMIT_LOOPS)?;
    Ok(format!("{} labels, {triples} Jacobi triples", labels.len()))
}

fn c8_octonions() -> Outcome {
    ensure(derivation_basis().len() == 14, || "dim D_{O,O} ≠ 14".into())?;
    for i in 0..8 {
        for j in 0..8 {
            let dm = derivation_dxy(&Octonion::basis(i), &Octonion::basis(j));
            for a in 0..8 {
                for b in 0..8 {
                    let (x, y) = (Octonion::basis(a), Octonion::basis(b));
                    ensure(
                        act(&dm, &(x * y)) == act(&dm, &x) * y + x * act(&dm, &y),
                        || format!("Leibniz fails for D(e{i},e{j}) on e{a}, e{b}"),
                    )?;
                }
            }
        }
    }
    for n in 1..=3usize {
        let s = form_s(n);
        let e = |i: usize| -> Vec<Q> { (0..2 * n + 1).map(|k| q((k == i) as i128)).collect() };
        let all: Vec<Vec<Q>> = (0..2 * n + 1)
            .flat_map(|i| (0..2 * n + 1).map(move |j| (i, j)))
            .map(|(i, j)| flatten(&dvv_matrix(&e(i), &e(j), &s)))
            .collect();
        ensure(rank(&all) == n * (2 * n + 1), || {
            format!("rank D_VV at I={n}")
        })?;
    }
    let alg = TwistedGroupAlgebra::new(QSubgroup::integers(), Cocycle::One, 3)
        .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..TRACE_SAMPLES {
        let x = alg
            .random_element(&q(3), &mut rng)
            .map_err(|e| e.to_string())?;
        let c = trace_identity_check(&alg, &x).map_err(|e| e.to_string())?;
        ensure(c.passed(), || c.witnesses.join("; "))?;
    }
    Ok(format!(
        "Leibniz on 64x64 pairs, D_VV ranks, {TRACE_SAMPLES} trace samples"
    ))
}

fn c9_bases() -> Outcome {
    let types = [
        "A2", "A3", "A4", "A5", "B1", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
    ];
    let mut words = 0;
    for ty in types {
        let desc = d(ty);
        let sys = generate(&desc);
        let b = reflectable_base(&sys).map_err(|e| format!("{ty}: {e}"))?;
        ensure(b.words.len() == sys.len(), || {
            format!("{ty}: {} of {} roots reached", b.words.len(), sys.len())
        })?;
        ensure(b.verify(), || {
            format!("{ty}: a witness word does not replay")
        })?;
        words += b.words.len();
    }
    Ok(format!(
        "{} types, {words} witness words replayed",
        types.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("null-dimension-one catalogs", c1_catalogs),
        ("fourteen reduced affine systems", c2_lars),
        ("construct then verify", c3_converse),
        ("shift isomorphism and separation", c4_isomorphism),
        ("quotient orders", c5_quotients),
        ("lattice splitting", c6_splitting),
        ("loop-algebra realization", c7_loops),
        ("octonion layer", c8_octonions),
        ("reflectable bases", c9_bases),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({el:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({el:.2?})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
