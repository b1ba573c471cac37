use super::{check_shape, LearsSpec, Triple};
use crate::qgroup::{QSubgroup, ReflectionSpace};
use crate::report::{Check, Report};
use crate::rootsys::RootSystemDesc;

fn incl(
    rep: &mut Report,
    name: String,
    x: &ReflectionSpace,
    n: i64,
    y: &ReflectionSpace,
    z: &ReflectionSpace,
) {
    let ok = ReflectionSpace::sum_in(x, n, y, z);
    rep.push(Check::from_bool(name, ok, || {
        format!("X={x} Y={y} Z={z} with coefficient {n}")
    }));
}

/// Every condition a triple of the given type must satisfy, decided on
/// residues.
pub fn validate_triple(desc: &RootSystemDesc, group: &QSubgroup, t: &Triple) -> Report {
    let mut rep = Report::new(format!("type={desc} group={group} {t}"));
    if let Err(e) = check_shape(desc, group, t) {
        rep.push(Check::fail("shape", e.to_string()));
        return rep;
    }
    rep.push(Check::pass("shape"));
    let k = desc.long_ratio() as i64;
    let s = &t.s;
    let sr = s.check();
    rep.push(Check::from_bool(
        "S reflection space",
        sr.is_reflection_space,
        || s.to_string(),
    ));
    rep.push(Check::from_bool("S full", sr.is_full, || s.to_string()));
    rep.push(Check::from_bool("S pointed", sr.is_pointed, || {
        s.to_string()
    }));
    if desc.forces_s_whole() {
        rep.push(Check::from_bool("S=G", s.is_group_whole(), || {
            format!("S={s}")
        }));
    }
    if let Some(l) = &t.l {
        let lr = l.check();
        rep.push(Check::from_bool(
            "L reflection space",
            lr.is_reflection_space,
            || l.to_string(),
        ));
        rep.push(Check::from_bool("L pointed", lr.is_pointed, || {
            l.to_string()
        }));
        incl(&mut rep, format!("L+{k}S⊂L"), l, k, s, l);
        incl(&mut rep, "S+L⊂S".into(), s, 1, l, s);
        if desc.forces_l_subgroup() {
            rep.push(Check::from_bool("L subgroup", l.is_subgroup(), || {
                format!("L={l}")
            }));
        }
    }
    if let Some(e) = &t.e {
        let er = e.check();
        rep.push(Check::from_bool(
            "E reflection space",
            er.is_reflection_space,
            || e.to_string(),
        ));
        rep.push(Check::from_bool("E nonempty", !e.is_empty(), || {
            e.to_string()
        }));
        incl(&mut rep, "E+4S⊂E".into(), e, 4, s, e);
        incl(&mut rep, "S+E⊂S".into(), s, 1, e, s);
        if let Some(l) = &t.l {
            incl(&mut rep, "E+2L⊂E".into(), e, 2, l, e);
            incl(&mut rep, "L+E⊂L".into(), l, 1, e, l);
        }
    }
    let chain = t.l.as_ref().is_none_or(|l| l.subset_of(s))
        && t.e
            .as_ref()
            .is_none_or(|e| e.subset_of(t.l.as_ref().unwrap_or(s)));
    rep.push(Check::from_bool("E⊂L⊂S", chain, || t.to_string()));
    rep
}

/// [`validate_triple`] plus the reduced claim `E ∩ 2S = ∅`.
pub fn validate_spec(spec: &LearsSpec) -> Report {
    let mut rep = validate_triple(&spec.desc, &spec.group, &spec.triple);
    if spec.reduced_claim {
        rep.push(Check::from_bool(
            "E∩2S=∅",
            spec.triple.is_reduced(),
            || "reduced claim but E meets 2S".into(),
        ));
    }
    rep
}
