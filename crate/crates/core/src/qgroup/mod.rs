//! Subgroups of ℚ and the reflection-space calculus over them.
//!
//! Every non-finitely-generated family is enumerable only through
//! [`QSubgroup::Truncated`]. Coset computations (`kG`, residues, divisibility)
//! always use the underlying family, so `trunc(Zinv(2),3)` behaves like
//! `ℤ[1/2]` for `2G = G` while enumerating only denominators up to `2³`.

mod notation;
mod reflection;

pub use notation::{parse_group, parse_reflection_text, ReflectionText};
pub use reflection::{FullClassification, ReflectionReport, ReflectionSpace};

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{
    checked_pow, factorize, fmt_q, gcd_q, is_prime, primes_except, split_prime_power, Q,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QSubgroup {
    /// `⟨g⟩` with `g > 0`.
    Cyclic(Q),
    /// `ℤ_(p)`: rationals whose denominator is prime to `p`.
    Localization(u64),
    /// `ℤ[1/q]`.
    PrimeInverted(u64),
    /// `n·H` for a non-cyclic family `H`; `n` is already stripped of factors
    /// that act invertibly on `H`.
    Scaled(Box<QSubgroup>, u64),
    /// Finite-depth approximation of a family: `ℤ[1/q]` keeps denominators
    /// dividing `q^depth`; `ℤ_(p)` keeps denominators dividing `N^depth`
    /// where `N` is the product of the first `depth` primes other than `p`.
    Truncated(Box<QSubgroup>, u32),
}

impl QSubgroup {
    pub fn integers() -> Self {
        QSubgroup::Cyclic(Q::one())
    }

    pub fn cyclic(g: Q) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidArgument(
                "cyclic generator must be nonzero".into(),
            ));
        }
        Ok(QSubgroup::Cyclic(g.abs()))
    }

    /// A finitely generated subgroup is cyclic; generated by the gcd.
    pub fn generated_by(gens: &[Q]) -> Result<Self> {
        let g = gcd_q(gens);
        Self::cyclic(g)
    }

    pub fn localization(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(QSubgroup::Localization(p))
    }

    pub fn prime_inverted(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(QSubgroup::PrimeInverted(q))
    }

    pub fn truncated(base: QSubgroup, depth: u32) -> Result<Self> {
        Ok(match base {
            QSubgroup::Cyclic(_) => base,
            QSubgroup::Truncated(inner, d) => QSubgroup::Truncated(inner, d.min(depth)),
            other => QSubgroup::Truncated(Box::new(other), depth),
        })
    }

    /// The untruncated family this group approximates.
    pub fn family(&self) -> &QSubgroup {
        match self {
            QSubgroup::Truncated(b, _) => b.family(),
            other => other,
        }
    }

    /// Set membership (truncations use their finite window of denominators).
    pub fn member(&self, x: &Q) -> bool {
        match self {
            QSubgroup::Truncated(..) => {
                let g = self.generator().expect("truncations are cyclic");
                (x / g).is_integer()
            }
            _ => self.in_family(x),
        }
    }

    /// Membership in the underlying family, ignoring truncation.
    pub fn in_family(&self, x: &Q) -> bool {
        match self {
            QSubgroup::Cyclic(g) => (x / g).is_integer(),
            QSubgroup::Localization(p) => x.denom() % (*p as i128) != 0,
            QSubgroup::PrimeInverted(q) => {
                let (_, rest) = split_prime_power(*x.denom(), *q as i128);
                rest == 1
            }
            QSubgroup::Scaled(b, n) => b.in_family(&(x / Q::from_integer(*n as i128))),
            QSubgroup::Truncated(b, _) => b.in_family(x),
        }
    }

    /// Positive generator when the group (as a set) is cyclic.
    pub fn generator(&self) -> Option<Q> {
        match self {
            QSubgroup::Cyclic(g) => Some(*g),
            QSubgroup::Truncated(b, d) => b.truncation_generator(*d),
            _ => None,
        }
    }

    fn truncation_generator(&self, depth: u32) -> Option<Q> {
        match self {
            QSubgroup::Cyclic(g) => Some(*g),
            QSubgroup::PrimeInverted(q) => {
                let den = (*q as i128).checked_pow(depth)?;
                Some(Q::new(1, den))
            }
            QSubgroup::Localization(p) => {
                let n: i128 = primes_except(*p, depth as usize)
                    .iter()
                    .map(|x| *x as i128)
                    .product();
                Some(Q::new(1, n.checked_pow(depth)?))
            }
            QSubgroup::Scaled(b, n) => {
                Some(b.truncation_generator(depth)? * Q::from_integer(*n as i128))
            }
            QSubgroup::Truncated(b, d) => b.truncation_generator(depth.min(*d)),
        }
    }

    /// Canonical element outside `pG` for every prime `p` that does not divide `G`.
    pub fn unit(&self) -> Q {
        match self {
            QSubgroup::Cyclic(g) => *g,
            QSubgroup::Localization(_) | QSubgroup::PrimeInverted(_) => Q::one(),
            QSubgroup::Scaled(b, n) => b.unit() * Q::from_integer(*n as i128),
            QSubgroup::Truncated(b, _) => b.unit(),
        }
    }

    pub fn is_cyclic_family(&self) -> bool {
        matches!(self.family(), QSubgroup::Cyclic(_))
    }

    /// `nG`.
    pub fn scale(&self, n: i128) -> Result<QSubgroup> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "cannot scale a subgroup by 0".into(),
            ));
        }
        let m = n.unsigned_abs() as u64;
        Ok(match self {
            QSubgroup::Cyclic(g) => QSubgroup::Cyclic(g * Q::from_integer(m as i128)),
            QSubgroup::Localization(p) => {
                let (e, _) = split_prime_power(m as i128, *p as i128);
                let f = checked_pow(*p, e)?;
                if f == 1 {
                    self.clone()
                } else {
                    QSubgroup::Scaled(Box::new(self.clone()), f)
                }
            }
            QSubgroup::PrimeInverted(q) => {
                let (_, rest) = split_prime_power(m as i128, *q as i128);
                if rest == 1 {
                    self.clone()
                } else {
                    QSubgroup::Scaled(Box::new(self.clone()), rest as u64)
                }
            }
            QSubgroup::Scaled(b, f) => {
                let total = f
                    .checked_mul(m)
                    .ok_or_else(|| Error::Overflow("scale factor".into()))?;
                b.scale(total as i128)?
            }
            QSubgroup::Truncated(b, d) => QSubgroup::Truncated(Box::new(b.scale(n)?), *d),
        })
    }

    /// `G = pG`.
    pub fn is_divisible(&self, p: u64) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(self.divisible_unchecked(p))
    }

    fn divisible_unchecked(&self, p: u64) -> bool {
        match self {
            QSubgroup::Cyclic(_) => false,
            QSubgroup::Localization(r) => p != *r,
            QSubgroup::PrimeInverted(q) => p == *q,
            QSubgroup::Scaled(b, _) | QSubgroup::Truncated(b, _) => b.divisible_unchecked(p),
        }
    }

    /// For a truncation at depth `d`, every generator-multiple `g` must have
    /// `g/p` in the truncation at depth `d+1` exactly when the family is
    /// divisible by `p`. Returns whether the two answers agree.
    pub fn divisibility_certificate(&self, p: u64) -> Result<bool> {
        let claimed = self.is_divisible(p)?;
        let QSubgroup::Truncated(b, d) = self else {
            return Ok(true);
        };
        let g = self.generator().expect("truncations are cyclic");
        let deeper = QSubgroup::Truncated(b.clone(), d + 1);
        let half = g / Q::from_integer(p as i128);
        Ok(deeper.member(&half) == claimed)
    }

    /// `|G / pⁿG|`.
    pub fn quotient_order(&self, p: u64, n: u32) -> Result<u64> {
        if self.is_divisible(p)? {
            Ok(1)
        } else {
            checked_pow(p, n)
        }
    }

    /// `|G / kG|` for any positive `k`.
    pub fn coset_modulus(&self, k: u64) -> u64 {
        factorize(k)
            .into_iter()
            .map(|(p, e)| {
                if self.divisible_unchecked(p) {
                    1
                } else {
                    p.pow(e)
                }
            })
            .product()
    }

    /// The residue `j ∈ [0, |G/kG|)` with `x − j·unit ∈ kG`, or `None` if
    /// `x` is not in the family.
    pub fn residue(&self, x: &Q, k: u64) -> Option<u64> {
        if !self.in_family(x) {
            return None;
        }
        let m = self.coset_modulus(k);
        let u = self.unit();
        let kq = Q::from_integer(k as i128);
        (0..m).find(|j| self.in_family(&((x - u * Q::from_integer(*j as i128)) / kq)))
    }

    /// Sorted elements with `|g| ≤ bound`.
    pub fn enumerate_window(&self, bound: &Q) -> Result<Vec<Q>> {
        let g = self
            .generator()
            .ok_or_else(|| Error::Unenumerable(self.to_string()))?;
        let n = (bound.abs() / g).floor().to_integer();
        Ok((-n..=n).map(|k| g * Q::from_integer(k)).collect())
    }

    /// Free abelian (cyclic, possibly as a truncation) vs a named non-free family.
    pub fn is_free_family(&self) -> bool {
        self.is_cyclic_family()
    }

    pub fn kind_tag(&self) -> &'static str {
        match self.family() {
            QSubgroup::Cyclic(_) => "cyclic",
            QSubgroup::Localization(_) => "localization",
            QSubgroup::PrimeInverted(_) => "prime-inverted",
            QSubgroup::Scaled(b, _) => match **b {
                QSubgroup::Localization(_) => "scaled-localization",
                _ => "scaled-prime-inverted",
            },
            QSubgroup::Truncated(..) => unreachable!(),
        }
    }
}

impl fmt::Display for QSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSubgroup::Cyclic(g) if g.is_one() => write!(f, "Z"),
            QSubgroup::Cyclic(g) => write!(f, "Z*{}", fmt_q(g)),
            QSubgroup::Localization(p) => write!(f, "Zloc({p})"),
            QSubgroup::PrimeInverted(q) => write!(f, "Zinv({q})"),
            QSubgroup::Scaled(b, n) => write!(f, "scaled({b},{n})"),
            QSubgroup::Truncated(b, d) => write!(f, "trunc({b},{d})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn zinv(p: u64) -> QSubgroup {
        QSubgroup::prime_inverted(p).unwrap()
    }

    #[test]
    fn membership_examples() {
        let z = QSubgroup::integers();
        assert!(z.member(&q(3)));
        assert!(!z.member(&qf(1, 2)));
        let t = QSubgroup::truncated(zinv(3), 2).unwrap();
        assert!(t.member(&qf(5, 9)));
        assert!(!t.member(&qf(1, 27)));
        assert!(t.in_family(&qf(1, 27)));
        let loc = QSubgroup::localization(2).unwrap();
        assert!(loc.member(&qf(7, 15)) && !loc.member(&qf(1, 6)));
    }

    #[test]
    fn scale_examples() {
        let z = QSubgroup::integers();
        assert_eq!(z.scale(2).unwrap(), QSubgroup::Cyclic(q(2)));
        assert_eq!(QSubgroup::Cyclic(qf(1, 3)).scale(3).unwrap(), z);
        assert_eq!(zinv(2).scale(2).unwrap(), zinv(2));
        assert!(z.scale(0).is_err());
        let s = zinv(3).scale(2).unwrap();
        assert!(s.member(&qf(2, 9)) && !s.member(&qf(1, 9)));
        let l = QSubgroup::localization(2).unwrap().scale(6).unwrap();
        assert_eq!(
            l,
            QSubgroup::Scaled(Box::new(QSubgroup::Localization(2)), 2)
        );
    }

    #[test]
    fn scale_by_own_prime_is_same_set_on_windows() {
        // 2·ℤ[1/2] = ℤ[1/2], checked both ways on a window of denominators.
        let g = zinv(2);
        let s = g.scale(2).unwrap();
        for den in [1, 2, 4, 8, 16] {
            for num in -20..=20 {
                let x = qf(num, den);
                assert_eq!(g.member(&x), s.member(&x));
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        assert!(!QSubgroup::integers().is_divisible(2).unwrap());
        assert!(zinv(2).is_divisible(2).unwrap());
        assert!(!QSubgroup::localization(2).unwrap().is_divisible(2).unwrap());
        assert!(QSubgroup::localization(2).unwrap().is_divisible(3).unwrap());
        assert_eq!(
            QSubgroup::integers().is_divisible(4),
            Err(Error::NotPrime(4))
        );
        for g in [zinv(2), zinv(3), QSubgroup::localization(2).unwrap()] {
            let t = QSubgroup::truncated(g, 2).unwrap();
            for p in [2, 3, 5] {
                assert!(t.divisibility_certificate(p).unwrap(), "{t} p={p}");
            }
        }
    }

    #[test]
    fn quotient_orders() {
        assert_eq!(QSubgroup::integers().quotient_order(2, 1).unwrap(), 2);
        assert_eq!(zinv(3).quotient_order(2, 2).unwrap(), 4);
        assert_eq!(zinv(2).quotient_order(2, 1).unwrap(), 1);
        assert!(QSubgroup::integers().quotient_order(6, 1).is_err());
    }

    #[test]
    fn quotient_order_matches_windowed_coset_count() {
        // |G/4G| windowed: residues of a window of ℤ[1/3] mod 4G.
        let t = QSubgroup::truncated(zinv(3), 2).unwrap();
        let elems = t.enumerate_window(&q(3)).unwrap();
        let classes: std::collections::BTreeSet<_> =
            elems.iter().map(|x| t.residue(x, 4).unwrap()).collect();
        assert_eq!(classes.len() as u64, zinv(3).quotient_order(2, 2).unwrap());
    }

    #[test]
    fn window_enumeration() {
        let z = QSubgroup::integers();
        assert_eq!(
            z.enumerate_window(&q(2)).unwrap(),
            vec![q(-2), q(-1), q(0), q(1), q(2)]
        );
        let half = QSubgroup::Cyclic(qf(1, 2));
        assert_eq!(
            half.enumerate_window(&q(1)).unwrap(),
            vec![q(-1), qf(-1, 2), q(0), qf(1, 2), q(1)]
        );
        let t = QSubgroup::truncated(zinv(3), 1).unwrap();
        assert_eq!(
            t.enumerate_window(&q(1)).unwrap(),
            vec![q(-1), qf(-2, 3), qf(-1, 3), q(0), qf(1, 3), qf(2, 3), q(1)]
        );
        assert!(matches!(
            zinv(3).enumerate_window(&q(1)),
            Err(Error::Unenumerable(_))
        ));
    }

    #[test]
    fn finitely_generated_normalizes_to_cyclic() {
        let g = QSubgroup::generated_by(&[qf(1, 2), qf(1, 3), q(-5)]).unwrap();
        assert_eq!(g, QSubgroup::Cyclic(qf(1, 6)));
        assert!(QSubgroup::generated_by(&[q(0)]).is_err());
    }

    #[test]
    fn residues_use_the_unit() {
        let z = QSubgroup::integers();
        assert_eq!(z.residue(&q(-3), 4), Some(1));
        let t = QSubgroup::truncated(zinv(2), 3).unwrap();
        assert_eq!(t.coset_modulus(4), 1);
        assert_eq!(zinv(3).coset_modulus(12), 4);
        assert_eq!(zinv(3).residue(&qf(1, 3), 4), Some(3));
    }
}
