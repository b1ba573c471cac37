//! LEARS of null dimension one built from a finite type and a triple of
//! reflection spaces, windowed verification, and decomposition of concrete
//! root sets back into triples.

mod decompose;
mod spec_text;
mod validate;
mod verify;
mod window;

pub use decompose::{decompose, restrict_to_ears, Decomposition};
pub use spec_text::{parse_spec_line, SpecLine};
pub use validate::{validate_spec, validate_triple};
pub use verify::{group_decomposition_check, verify_window, GroupSplitReport, WindowReport};
pub use window::{construct, construct_product, LearsWindow, ProductFactor};

use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qgroup::{QSubgroup, ReflectionSpace};
use crate::rootsys::{LengthClass, RootSystemDesc};

/// Shift sets for short, long and extra-long roots. `L` and `E` are
/// present exactly when the type has long, respectively extra-long, roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub s: ReflectionSpace,
    pub l: Option<ReflectionSpace>,
    pub e: Option<ReflectionSpace>,
}

impl Triple {
    pub fn new(s: ReflectionSpace, l: Option<ReflectionSpace>, e: Option<ReflectionSpace>) -> Self {
        Self { s, l, e }
    }

    pub fn whole(desc: &RootSystemDesc, g: &QSubgroup) -> Self {
        let w = ReflectionSpace::whole(g.clone());
        Self {
            s: w.clone(),
            l: desc.has_long().then(|| w.clone()),
            e: desc.has_extra_long().then_some(w),
        }
    }

    pub fn group(&self) -> &QSubgroup {
        self.s.group()
    }

    pub fn for_class(&self, c: LengthClass) -> Option<&ReflectionSpace> {
        match c {
            LengthClass::Short => Some(&self.s),
            LengthClass::Long => self.l.as_ref(),
            LengthClass::ExtraLong => self.e.as_ref(),
        }
    }

    /// `E ∩ 2S = ∅` (vacuous without `E`).
    pub fn is_reduced(&self) -> bool {
        self.e
            .as_ref()
            .is_none_or(|e| ReflectionSpace::disjoint_from_multiple(e, 2, &self.s))
    }

    pub fn normalized(&self) -> Self {
        Self {
            s: self.s.normalized(),
            l: self.l.as_ref().map(ReflectionSpace::normalized),
            e: self.e.as_ref().map(ReflectionSpace::normalized),
        }
    }

    /// `(S − s, L − l, E − 2s)`.
    pub fn shifted(&self, s: &crate::Q, l: &crate::Q) -> Result<Self> {
        let two_s = *s * crate::Q::from_integer(2);
        Ok(Self {
            s: self.s.translate(s)?,
            l: self.l.as_ref().map(|x| x.translate(l)).transpose()?,
            e: self.e.as_ref().map(|x| x.translate(&two_s)).transpose()?,
        })
    }

    /// Canonical representative of the orbit under the shifts `(s, l)` with
    /// `s ∈ S`, `l ∈ L`, taken over residues fine enough to see every effect.
    pub fn shift_normal_form(&self) -> Self {
        let n = self.normalized();
        let g = n.group();
        let unit = g.unit();
        let candidates = |period: u64, sp: &ReflectionSpace| -> Vec<crate::Q> {
            (0..g.coset_modulus(period))
                .map(|j| unit * crate::Q::from_integer(j as i128))
                .filter(|x| sp.contains(x))
                .collect()
        };
        let ks =
            n.e.as_ref()
                .map_or(n.s.period(), |e| n.s.period().lcm(&e.period()));
        let ss = candidates(ks, &n.s);
        let ls =
            n.l.as_ref()
                .map(|l| candidates(l.period(), l))
                .unwrap_or_else(|| vec![crate::Q::from_integer(0)]);
        ss.iter()
            .cartesian_product(ls.iter())
            .filter_map(|(s, l)| n.shifted(s, l).ok().map(|t| t.normalized()))
            .min()
            .unwrap_or(n)
    }

    pub fn same_sets(&self, o: &Self) -> bool {
        let eq = |a: &Option<ReflectionSpace>, b: &Option<ReflectionSpace>| match (a, b) {
            (None, None) => true,
            (Some(x), Some(y)) => x.set_eq(y),
            _ => false,
        };
        self.s.set_eq(&o.s) && eq(&self.l, &o.l) && eq(&self.e, &o.e)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={}", self.s)?;
        if let Some(l) = &self.l {
            write!(f, " L={l}")?;
        }
        if let Some(e) = &self.e {
            write!(f, " E={e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LearsSpec {
    pub desc: RootSystemDesc,
    pub group: QSubgroup,
    pub triple: Triple,
    pub reduced_claim: bool,
}

impl LearsSpec {
    /// Checks the shape of the triple against the type; the reduced claim is
    /// set from `E ∩ 2S`.
    pub fn new(desc: RootSystemDesc, group: QSubgroup, triple: Triple) -> Result<Self> {
        check_shape(&desc, &group, &triple)?;
        let reduced_claim = triple.is_reduced();
        Ok(Self {
            desc,
            group,
            triple,
            reduced_claim,
        })
    }

    pub fn with_claim(mut self, reduced: bool) -> Self {
        self.reduced_claim = reduced;
        self
    }

    pub fn whole(desc: RootSystemDesc, group: QSubgroup) -> Self {
        let triple = Triple::whole(&desc, &group);
        Self::new(desc, group, triple).expect("whole triple has the right shape")
    }

    pub fn to_line(&self, window: Option<&crate::Q>) -> String {
        let mut s = format!("type={} group={} {}", self.desc, self.group, self.triple);
        if let Some(w) = window {
            s.push_str(&format!(" window={}", crate::rational::fmt_q(w)));
        }
        s
    }
}

impl fmt::Display for LearsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line(None))
    }
}

pub(crate) fn check_shape(desc: &RootSystemDesc, group: &QSubgroup, t: &Triple) -> Result<()> {
    if desc.has_long() != t.l.is_some() {
        return Err(Error::TripleMismatch(format!(
            "{desc} {} long-root shifts but L is {}",
            if desc.has_long() { "has" } else { "has no" },
            if t.l.is_some() { "given" } else { "missing" }
        )));
    }
    if desc.has_extra_long() != t.e.is_some() {
        return Err(Error::TripleMismatch(format!(
            "{desc} {} extra-long roots but E is {}",
            if desc.has_extra_long() {
                "has"
            } else {
                "has no"
            },
            if t.e.is_some() { "given" } else { "missing" }
        )));
    }
    let spaces = [Some(&t.s), t.l.as_ref(), t.e.as_ref()];
    if spaces.iter().flatten().any(|x| x.group() != group) {
        return Err(Error::TripleMismatch(
            "reflection spaces live in different groups".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn z() -> QSubgroup {
        QSubgroup::integers()
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let b2: RootSystemDesc = "B2".parse().unwrap();
        let g = ReflectionSpace::whole(z());
        let t = Triple::new(g.clone(), Some(g.clone()), Some(g.clone()));
        assert!(matches!(
            LearsSpec::new(b2, z(), t),
            Err(Error::TripleMismatch(_))
        ));
        let t = Triple::new(g.clone(), None, None);
        assert!(LearsSpec::new(b2, z(), t).is_err());
        let b1: RootSystemDesc = "B1".parse().unwrap();
        assert!(LearsSpec::new(b1, z(), Triple::new(g, None, None)).is_ok());
    }

    #[test]
    fn normal_form_identifies_shifted_triples() {
        let g = ReflectionSpace::whole(z());
        let l2 = ReflectionSpace::new(z(), 2, &[q(0)]).unwrap();
        let e4 = ReflectionSpace::new(z(), 4, &[q(0)]).unwrap();
        let e42 = ReflectionSpace::new(z(), 4, &[q(2)]).unwrap();
        let a = Triple::new(g.clone(), Some(l2.clone()), Some(e4));
        let b = Triple::new(g, Some(l2), Some(e42));
        assert_ne!(a, b);
        assert_eq!(a.shift_normal_form(), b.shift_normal_form());
    }
}
