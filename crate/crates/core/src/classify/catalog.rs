use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::map_space;
use crate::error::Result;
use crate::lears::{LearsSpec, Triple};
use crate::qgroup::{QSubgroup, ReflectionSpace};
use crate::rational::Q;
use crate::rootsys::{Family, RootSystemDesc};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub spec: LearsSpec,
}

fn sp(g: &QSubgroup, period: u64, class: u64) -> ReflectionSpace {
    if period == 1 {
        ReflectionSpace::whole(g.clone())
    } else {
        ReflectionSpace::coset(g.clone(), period, class)
    }
}

/// The prime whose divisibility collapses the catalog: 3 for `G2`, else 2.
fn collapsing_prime(desc: &RootSystemDesc) -> u64 {
    if desc.family == Family::G2 {
        3
    } else {
        2
    }
}

/// Every LEARS of null dimension one with the given type and group, one
/// spec per similarity class.
pub fn enumerate_nulldim1(desc: &RootSystemDesc, group: &QSubgroup) -> Result<Vec<LearsSpec>> {
    let g = group;
    let whole = Triple::whole(desc, g);
    let mut out = vec![whole];
    if desc.has_long() || desc.has_extra_long() {
        let p = collapsing_prime(desc);
        if !g.is_divisible(p)? {
            let s = sp(g, 1, 0);
            if desc.family == Family::BC {
                let (l1, l2) = (sp(g, 1, 0), sp(g, 2, 0));
                let (e2, e4, e2s) = (sp(g, 2, 0), sp(g, 4, 0), sp(g, 2, 1));
                if desc.has_long() {
                    out.push(Triple::new(s.clone(), Some(l1.clone()), Some(e2.clone())));
                    out.push(Triple::new(s.clone(), Some(l2.clone()), Some(e2)));
                    out.push(Triple::new(s.clone(), Some(l2), Some(e4)));
                    out.push(Triple::new(s, Some(l1), Some(e2s)));
                } else {
                    out.push(Triple::new(s.clone(), None, Some(e2)));
                    out.push(Triple::new(s.clone(), None, Some(e4)));
                    out.push(Triple::new(s, None, Some(e2s)));
                }
            } else {
                out.push(Triple::new(s, Some(sp(g, p, 0)), None));
            }
        }
    }
    out.into_iter()
        .map(|t| LearsSpec::new(*desc, g.clone(), t))
        .collect()
}

fn at_least(family: Family, n: u32, min: u32) -> RootSystemDesc {
    RootSystemDesc::new(family, n.max(min)).expect("clamped index is valid")
}

/// The fourteen reduced affine systems over `ℤ` with their affine labels;
/// classical families are instantiated at `index_size` (raised to the least
/// size where the family has the required root lengths).
pub fn lars_catalog(index_size: u32) -> Vec<CatalogEntry> {
    let z = QSubgroup::integers();
    let n = index_size.max(1);
    let mut entries: Vec<(RootSystemDesc, &str, u8)> = vec![
        (at_least(Family::A, n, 2), "1", 0),
        (at_least(Family::B, n, 2), "1", 0),
        (at_least(Family::B, n, 2), "2", 1),
        (at_least(Family::C, n, 2), "1", 0),
        (at_least(Family::C, n, 2), "2", 1),
        (at_least(Family::D, n, 4), "1", 0),
        (at_least(Family::BC, n, 1), "2", 2),
    ];
    for (f, label, kind) in [
        (Family::E6, "1", 0),
        (Family::E7, "1", 0),
        (Family::E8, "1", 0),
        (Family::F4, "1", 0),
        (Family::F4, "2", 1),
        (Family::G2, "1", 0),
        (Family::G2, "3", 1),
    ] {
        entries.push((RootSystemDesc::exceptional(f), label, kind));
    }
    entries
        .into_iter()
        .map(|(d, label, kind)| {
            let t = match kind {
                0 => Triple::whole(&d, &z),
                1 => Triple::new(sp(&z, 1, 0), Some(sp(&z, d.long_ratio(), 0)), None),
                _ => Triple::new(
                    sp(&z, 1, 0),
                    d.has_long().then(|| sp(&z, 1, 0)),
                    Some(sp(&z, 2, 1)),
                ),
            };
            CatalogEntry {
                label: format!("{d}({label})"),
                spec: LearsSpec::new(d, z.clone(), t).expect("catalog triples fit their types"),
            }
        })
        .collect()
}

fn random_group<R: Rng>(rng: &mut R) -> QSubgroup {
    match rng.gen_range(0..4) {
        0 => QSubgroup::integers(),
        1 => {
            let num = rng.gen_range(1..=6);
            let den = rng.gen_range(1..=6);
            QSubgroup::cyclic(Q::new(num, den)).expect("nonzero")
        }
        2 => {
            QSubgroup::truncated(QSubgroup::PrimeInverted(3), rng.gen_range(1..=2)).expect("valid")
        }
        _ => QSubgroup::truncated(QSubgroup::Localization(2), 1).expect("valid"),
    }
}

fn random_member<R: Rng>(sp: &ReflectionSpace, rng: &mut R) -> Q {
    let r = *sp.representatives().choose(rng).expect("nonempty space");
    let k = Q::from_integer(rng.gen_range(-2..=2) * sp.period() as i128);
    r + k * sp.group().unit()
}

/// A valid spec of the given type: a random catalog entry over a random
/// enumerable group, moved by a random base shift and a random integer scale.
pub fn random_valid_spec<R: Rng>(desc: &RootSystemDesc, rng: &mut R) -> Result<LearsSpec> {
    let g = random_group(rng);
    let entries = enumerate_nulldim1(desc, &g)?;
    let base = entries
        .choose(rng)
        .expect("catalogs are nonempty")
        .triple
        .clone();
    let s = random_member(&base.s, rng);
    let l = base
        .l
        .as_ref()
        .map(|l| random_member(l, rng))
        .unwrap_or_else(|| Q::from_integer(0));
    let shifted = base.shifted(&s, &l)?;
    let n = rng.gen_range(1..=3);
    let target = g.scale(n)?;
    let c = Q::from_integer(n);
    let t = Triple::new(
        map_space(&shifted.s, &c, &target)?,
        shifted
            .l
            .as_ref()
            .map(|x| map_space(x, &c, &target))
            .transpose()?,
        shifted
            .e
            .as_ref()
            .map(|x| map_space(x, &c, &target))
            .transpose()?,
    );
    LearsSpec::new(*desc, target, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lears::validate_spec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(s: &str) -> RootSystemDesc {
        s.parse().unwrap()
    }

    #[test]
    fn catalog_sizes_over_z() {
        let z = QSubgroup::integers();
        let count = |s: &str| enumerate_nulldim1(&d(s), &z).unwrap().len();
        assert_eq!(count("D4"), 1);
        assert_eq!(count("E8"), 1);
        assert_eq!(count("B3"), 2);
        assert_eq!(count("G2"), 2);
        assert_eq!(count("BC2"), 5);
        assert_eq!(count("BC1"), 4);
        let reduced: Vec<_> = enumerate_nulldim1(&d("BC2"), &z)
            .unwrap()
            .into_iter()
            .filter(|s| s.reduced_claim)
            .collect();
        assert_eq!(reduced.len(), 1);
    }

    #[test]
    fn divisible_groups_collapse() {
        let half = QSubgroup::PrimeInverted(2);
        assert_eq!(enumerate_nulldim1(&d("BC2"), &half).unwrap().len(), 1);
        assert_eq!(enumerate_nulldim1(&d("G2"), &half).unwrap().len(), 2);
        let third = QSubgroup::PrimeInverted(3);
        assert_eq!(enumerate_nulldim1(&d("G2"), &third).unwrap().len(), 1);
        assert_eq!(enumerate_nulldim1(&d("BC1"), &third).unwrap().len(), 4);
    }

    #[test]
    fn fourteen_labels() {
        let c = lars_catalog(3);
        let labels: Vec<&str> = c.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(
            labels,
            [
                "A3(1)", "B3(1)", "B3(2)", "C3(1)", "C3(2)", "D4(1)", "BC3(2)", "E6(1)", "E7(1)",
                "E8(1)", "F4(1)", "F4(2)", "G2(1)", "G2(3)"
            ]
        );
        assert!(c.iter().all(|e| e.spec.reduced_claim));
    }

    #[test]
    fn random_specs_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ty in ["A3", "B2", "C3", "BC1", "BC2", "G2", "F4"] {
            for _ in 0..10 {
                let s = random_valid_spec(&d(ty), &mut rng).unwrap();
                assert!(validate_spec(&s).passed(), "{s}");
            }
        }
    }
}
