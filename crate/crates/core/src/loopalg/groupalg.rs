//! The twisted group algebra `F^τ[G]` with `t^g t^h = τ(g, h) t^{g+h}` and
//! the projection `tr` onto `F^τ[G′]` for `G′ = pG`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::qgroup::QSubgroup;
use crate::rational::{fmt_q, Q};
use crate::report::Check;

/// Finite sums `Σ a_g t^g`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub terms: BTreeMap<Q, Q>,
}

impl GroupElement {
    pub fn monomial(g: Q, a: Q) -> Self {
        let mut e = Self::default();
        e.add_term(g, a);
        e
    }

    pub fn scalar(a: Q) -> Self {
        Self::monomial(Q::zero(), a)
    }

    fn add_term(&mut self, g: Q, a: Q) {
        let e = self.terms.entry(g).or_insert_with(Q::zero);
        *e += a;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (g, a) in &o.terms {
            out.add_term(*g, *a);
        }
        out
    }

    pub fn scale(&self, x: Q) -> Self {
        let mut out = Self::default();
        for (g, a) in &self.terms {
            out.add_term(*g, *a * x);
        }
        out
    }

    pub fn support_bound(&self) -> Q {
        self.terms
            .keys()
            .map(|g| g.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, a)| format!("{} t^{}", fmt_q(a), fmt_q(g)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedGroupAlgebra {
    pub group: QSubgroup,
    pub tau: Cocycle,
    /// `G′ = pG`.
    pub p: u64,
}

impl TwistedGroupAlgebra {
    pub fn new(group: QSubgroup, tau: Cocycle, p: u64) -> Result<Self> {
        if p < 2 || group.coset_modulus(p) != p {
            return Err(Error::Construction(format!("|{group} / {p}{group}| ≠ {p}")));
        }
        Ok(Self { group, tau, p })
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let mut out = GroupElement::default();
        for (g, a) in &x.terms {
            for (h, b) in &y.terms {
                out.add_term(*g + *h, *a * *b * self.tau.value(g, h)?);
            }
        }
        Ok(out)
    }

    /// Keeps the terms with `g ∈ G′`.
    pub fn tr(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            terms: x
                .terms
                .iter()
                .filter(|(g, _)| self.group.residue(g, self.p) == Some(0))
                .map(|(g, a)| (*g, *a))
                .collect(),
        }
    }

    /// `x³ − 3tr(x)x² + (9/2 tr(x)² − 3/2 tr(x²))x − tr(x³) + 9/2 tr(x²)tr(x) − 9/2 tr(x)³`.
    pub fn cubic_identity(&self, x: &GroupElement) -> Result<GroupElement> {
        let m = |a: &GroupElement, b: &GroupElement| self.mul(a, b);
        let x2 = m(x, x)?;
        let x3 = m(&x2, x)?;
        let t1 = self.tr(x);
        let t2 = self.tr(&x2);
        let t3 = self.tr(&x3);
        let t1sq = m(&t1, &t1)?;
        let coef = t1sq.scale(Q::new(9, 2)).add(&t2.scale(Q::new(-3, 2)));
        let terms = [
            x3,
            m(&t1, &x2)?.scale(Q::from_integer(-3)),
            m(&coef, x)?,
            t3.scale(Q::from_integer(-1)),
            m(&t2, &t1)?.scale(Q::new(9, 2)),
            m(&t1sq, &t1)?.scale(Q::new(-9, 2)),
        ];
        Ok(terms
            .iter()
            .fold(GroupElement::default(), |acc, t| acc.add(t)))
    }

    /// A random element supported on `|g| ≤ bound` with small coefficients.
    pub fn random_element<R: Rng>(&self, bound: &Q, rng: &mut R) -> Result<GroupElement> {
        let mut x = GroupElement::default();
        for g in self.group.enumerate_window(bound)? {
            if rng.gen_bool(0.6) {
                x.add_term(g, Q::new(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
            }
        }
        Ok(x)
    }
}

/// Evaluates the cubic trace identity on `x`. A tabulated `τ` must cover
/// the pairs reached by `x³`.
pub fn trace_identity_check(alg: &TwistedGroupAlgebra, x: &GroupElement) -> Result<Check> {
    let v = alg.cubic_identity(x)?;
    Ok(Check::from_bool("trace identity", v.is_zero(), || {
        format!("x = {x}: {v}")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(tau: Cocycle) -> TwistedGroupAlgebra {
        TwistedGroupAlgebra::new(QSubgroup::integers(), tau, 3).unwrap()
    }

    #[test]
    fn unit_and_generator() {
        let a = alg(Cocycle::One);
        assert!(a
            .cubic_identity(&GroupElement::scalar(q(1)))
            .unwrap()
            .is_zero());
        let t = GroupElement::monomial(q(1), q(1));
        assert!(a.tr(&t).is_zero());
        assert!(a.tr(&a.mul(&t, &t).unwrap()).is_zero());
        assert!(a.cubic_identity(&t).unwrap().is_zero());
    }

    #[test]
    fn random_elements_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for tau in [
            Cocycle::One,
            Cocycle::Power {
                lambda: q(2),
                unit: q(1),
            },
        ] {
            let a = alg(tau);
            for _ in 0..20 {
                let x = a.random_element(&q(3), &mut rng).unwrap();
                assert!(trace_identity_check(&a, &x).unwrap().passed());
            }
        }
    }

    #[test]
    fn identity_needs_the_right_projection() {
        let a = TwistedGroupAlgebra::new(QSubgroup::integers(), Cocycle::One, 2).unwrap();
        let x = GroupElement::monomial(q(0), q(1)).add(&GroupElement::monomial(q(1), q(1)));
        assert!(!a.cubic_identity(&x).unwrap().is_zero());
    }

    #[test]
    fn divisible_group_is_rejected() {
        assert!(TwistedGroupAlgebra::new(QSubgroup::PrimeInverted(3), Cocycle::One, 3).is_err());
    }
}
