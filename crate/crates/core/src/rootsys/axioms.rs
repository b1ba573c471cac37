use std::collections::BTreeSet;

use num_traits::Zero;

use super::{cartan_int, reflect, RootVector};
use crate::report::{Check, Report};

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// A1–A4 for a finite system with positive definite form.
pub fn verify_finite_axioms(system: &[RootVector]) -> Report {
    let mut rep = Report::new(format!("finite system of {} roots", system.len()));
    let bad: Vec<String> = system
        .iter()
        .filter(|r| r.is_zero() || r.is_isotropic())
        .map(|r| format!("isotropic member {r}"))
        .collect();
    let mut a1 = Check::new("A1", bad);
    if system.is_empty() {
        a1 = Check::fail("A1", "empty system");
    }
    rep.push(a1);
    let anisotropic: Vec<&RootVector> = system.iter().filter(|r| !r.is_isotropic()).collect();

    let mut bad2 = Vec::new();
    for a in &anisotropic {
        for b in &anisotropic {
            let c = cartan_int(a, b).expect("anisotropic");
            if !c.is_integer() {
                bad2.push(format!("<{a},{b}> = {c}"));
            }
        }
    }
    rep.push(Check::new("A2", bad2));

    let set: BTreeSet<&RootVector> = system.iter().collect();
    let mut bad3 = Vec::new();
    for a in &anisotropic {
        for b in system {
            let img = reflect(a, b).expect("anisotropic");
            if !set.contains(&img) {
                bad3.push(format!("s_{{{a}}}({b}) = {img} missing"));
            }
        }
    }
    rep.push(Check::new("A3", bad3));

    let mut uf = UnionFind::new(system.len());
    for i in 0..system.len() {
        for j in (i + 1)..system.len() {
            if !system[i].form(&system[j]).is_zero() {
                uf.union(i, j);
            }
        }
    }
    let comps = uf.components();
    rep.push(Check::from_bool("A4", comps <= 1, || {
        format!("nonorthogonality graph has {comps} components")
    }));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::report::Status;
    use crate::rootsys::{generate, RootSystemDesc};

    fn d(s: &str) -> RootSystemDesc {
        s.parse().unwrap()
    }

    #[test]
    fn b2_passes_all() {
        let r = verify_finite_axioms(&generate(&d("B2")));
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn disjoint_copies_fail_a4() {
        let mut sys = generate(&d("A3"));
        for r in generate(&d("A3")) {
            let moved = r.eps().iter().map(|(i, c)| (i + 3, *c)).collect::<Vec<_>>();
            sys.push(RootVector::from_eps(&moved));
        }
        let r = verify_finite_axioms(&sys);
        assert_eq!(r.status_of("A4"), Some(Status::Fail));
        assert_eq!(r.status_of("A3"), Some(Status::Pass));
    }

    #[test]
    fn removed_root_fails_a3() {
        let mut sys = generate(&d("B2"));
        sys.retain(|r| *r != RootVector::from_eps(&[(1, q(1)), (2, q(1))]));
        let r = verify_finite_axioms(&sys);
        assert_eq!(r.status_of("A3"), Some(Status::Fail));
        assert!(!r.get("A3").unwrap().witnesses.is_empty());
    }

    #[test]
    fn zero_vector_fails_a1() {
        let mut sys = generate(&d("A3"));
        sys.push(RootVector::zero());
        assert_eq!(
            verify_finite_axioms(&sys).status_of("A1"),
            Some(Status::Fail)
        );
    }
}
