use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::report::Check;

/// A symmetric 2-cocycle `τ: G × G → ℚ^×`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Cocycle {
    #[default]
    One,
    /// `τ(g, h) = λ^{(g/u)(h/u)}`; the exponent must be an integer.
    Power { lambda: Q, unit: Q },
    /// Explicit values on a finite window.
    Table(BTreeMap<(Q, Q), Q>),
}

fn pow(lambda: Q, e: i128) -> Q {
    let mut out = Q::one();
    let base = if e < 0 { lambda.recip() } else { lambda };
    for _ in 0..e.unsigned_abs() {
        out *= base;
    }
    out
}

impl Cocycle {
    pub fn value(&self, g: &Q, h: &Q) -> Result<Q> {
        match self {
            Cocycle::One => Ok(Q::one()),
            Cocycle::Power { lambda, unit } => {
                if lambda.is_zero() || unit.is_zero() {
                    return Err(Error::CocycleDomain(
                        "λ and the unit must be nonzero".into(),
                    ));
                }
                let e = (*g / *unit) * (*h / *unit);
                if !e.is_integer() {
                    return Err(Error::CocycleDomain(format!(
                        "exponent {} at ({}, {}) is not an integer",
                        fmt_q(&e),
                        fmt_q(g),
                        fmt_q(h)
                    )));
                }
                Ok(pow(*lambda, e.to_integer()))
            }
            Cocycle::Table(t) => t
                .get(&(*g, *h))
                .or_else(|| t.get(&(*h, *g)))
                .copied()
                .ok_or_else(|| {
                    Error::CocycleDomain(format!("no value at ({}, {})", fmt_q(g), fmt_q(h)))
                }),
        }
    }

    /// Tabulates `τ` on all pairs of `window`.
    pub fn tabulate(&self, window: &[Q]) -> Result<Cocycle> {
        let mut t = BTreeMap::new();
        for g in window {
            for h in window {
                t.insert((*g, *h), self.value(g, h)?);
            }
        }
        Ok(Cocycle::Table(t))
    }

    /// Nonzero values, symmetry, and `τ(g+h,k)τ(g,h) = τ(g,h+k)τ(h,k)` on
    /// the triples of `window` whose partial sums stay in the window.
    pub fn check(&self, window: &[Q]) -> Check {
        let inside = |x: &Q| window.contains(x);
        let mut bad = Vec::new();
        let v = |g: &Q, h: &Q| self.value(g, h);
        for g in window {
            for h in window {
                match (v(g, h), v(h, g)) {
                    (Ok(a), Ok(b)) if a == b && !a.is_zero() => {}
                    (Ok(a), Ok(_)) if a.is_zero() => {
                        bad.push(format!("τ({}, {}) = 0", fmt_q(g), fmt_q(h)))
                    }
                    (Ok(_), Ok(_)) => {
                        bad.push(format!("τ({}, {}) not symmetric", fmt_q(g), fmt_q(h)))
                    }
                    (Err(e), _) | (_, Err(e)) => bad.push(e.to_string()),
                }
            }
        }
        let mut unchecked = 0u64;
        for g in window {
            for h in window {
                for k in window {
                    if !inside(&(*g + *h)) || !inside(&(*h + *k)) {
                        unchecked += 1;
                        continue;
                    }
                    let lhs = v(&(*g + *h), k).and_then(|a| v(g, h).map(|b| a * b));
                    let rhs = v(g, &(*h + *k)).and_then(|a| v(h, k).map(|b| a * b));
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Ok(_), Ok(_)) => bad.push(format!(
                            "cocycle law at ({}, {}, {})",
                            fmt_q(g),
                            fmt_q(h),
                            fmt_q(k)
                        )),
                        (Err(e), _) | (_, Err(e)) => bad.push(e.to_string()),
                    }
                }
            }
        }
        Check::new("cocycle", bad).with_unchecked(unchecked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn window(n: i128) -> Vec<Q> {
        (-n..=n).map(q).collect()
    }

    #[test]
    fn power_cocycles_pass() {
        let w = window(3);
        for lambda in [q(2), qf(-1, 3), q(1)] {
            let c = Cocycle::Power { lambda, unit: q(1) };
            assert!(c.check(&w).passed());
        }
        let c = Cocycle::Power {
            lambda: q(2),
            unit: q(1),
        };
        assert_eq!(c.value(&q(2), &q(-1)).unwrap(), qf(1, 4));
        assert!(Cocycle::One.check(&w).passed());
    }

    #[test]
    fn broken_tables_fail() {
        let w = window(1);
        let mut t = match (Cocycle::Power {
            lambda: q(3),
            unit: q(1),
        })
        .tabulate(&w)
        .unwrap()
        {
            Cocycle::Table(t) => t,
            _ => unreachable!(),
        };
        assert!(Cocycle::Table(t.clone()).check(&w).passed());
        t.insert((q(1), q(0)), q(5));
        assert!(!Cocycle::Table(t.clone()).check(&w).passed());
        t.remove(&(q(1), q(0)));
        t.remove(&(q(0), q(1)));
        let r = Cocycle::Table(t).check(&w);
        assert!(!r.passed());
    }

    #[test]
    fn fractional_exponents_are_rejected() {
        let c = Cocycle::Power {
            lambda: q(2),
            unit: q(1),
        };
        assert!(matches!(
            c.value(&qf(1, 3), &q(1)),
            Err(Error::CocycleDomain(_))
        ));
    }
}
