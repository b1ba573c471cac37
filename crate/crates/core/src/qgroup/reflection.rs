use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::QSubgroup;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// A union of cosets `⋃ (kG + r)`. Residues are stored as integers
/// `j ∈ [0, |G/kG|)` standing for the coset of `j·unit`; the unit generates
/// every quotient `G/kG` of a subgroup of ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReflectionSpace {
    group: QSubgroup,
    period: u64,
    residues: BTreeSet<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionReport {
    pub is_reflection_space: bool,
    pub is_pointed: bool,
    pub is_full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FullClassification {
    EqualsGroup,
    /// `2G + s` with `s ∉ 2G`.
    TwoGPlus(Q),
    /// Outside the classified shapes; carries the coset data as a certificate.
    Other {
        period: u64,
        residues: Vec<Q>,
    },
}

impl ReflectionSpace {
    /// Builds `⋃_{r ∈ reps} (kG + r)`. Each representative must lie in `G`
    /// and the representatives must be pairwise distinct modulo `kG`.
    pub fn new(group: QSubgroup, period: u64, reps: &[Q]) -> Result<Self> {
        if period == 0 {
            return Err(Error::MalformedReflectionSpace(
                "period must be positive".into(),
            ));
        }
        let mut residues = BTreeSet::new();
        for r in reps {
            let j = group.residue(r, period).ok_or_else(|| {
                Error::MalformedReflectionSpace(format!("residue {} is not in {}", fmt_q(r), group))
            })?;
            if !residues.insert(j) {
                return Err(Error::MalformedReflectionSpace(format!(
                    "residue {} repeats a class modulo {}G",
                    fmt_q(r),
                    period
                )));
            }
        }
        Ok(Self {
            group,
            period,
            residues,
        })
    }

    pub fn from_residue_classes(
        group: QSubgroup,
        period: u64,
        classes: BTreeSet<u64>,
    ) -> Result<Self> {
        let m = group.coset_modulus(period);
        if let Some(bad) = classes.iter().find(|j| **j >= m) {
            return Err(Error::MalformedReflectionSpace(format!(
                "class {bad} not reduced mod {m}"
            )));
        }
        Ok(Self {
            group,
            period,
            residues: classes,
        })
    }

    pub fn whole(group: QSubgroup) -> Self {
        Self {
            group,
            period: 1,
            residues: [0].into(),
        }
    }

    /// `kG + j·unit` for a single class.
    pub fn coset(group: QSubgroup, period: u64, class: u64) -> Self {
        let m = group.coset_modulus(period);
        Self {
            group,
            period,
            residues: [class % m].into(),
        }
    }

    pub fn group(&self) -> &QSubgroup {
        &self.group
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn modulus(&self) -> u64 {
        self.group.coset_modulus(self.period)
    }

    pub fn residue_classes(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    /// Canonical representatives `j·unit`.
    pub fn representatives(&self) -> Vec<Q> {
        let u = self.group.unit();
        self.residues
            .iter()
            .map(|j| u * Q::from_integer(*j as i128))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.group.member(x)
            && self
                .group
                .residue(x, self.period)
                .is_some_and(|j| self.residues.contains(&j))
    }

    /// Classes modulo `KG` for a period `K` divisible by ours.
    pub fn classes_at(&self, big: u64) -> BTreeSet<u64> {
        assert!(
            big.is_multiple_of(self.period),
            "period {} does not divide {}",
            self.period,
            big
        );
        let m_small = self.modulus();
        let m_big = self.group.coset_modulus(big);
        let mut out = BTreeSet::new();
        for j in &self.residues {
            let mut x = *j;
            while x < m_big {
                out.insert(x);
                x += m_small;
            }
        }
        out
    }

    /// Classes of `n·E` modulo `KG`; requires `|n|·k | K`.
    pub fn scaled_classes_at(&self, n: i64, big: u64) -> BTreeSet<u64> {
        let na = n.unsigned_abs();
        assert!(big.is_multiple_of(na * self.period), "n·k must divide K");
        let m_big = self.group.coset_modulus(big) as i128;
        let step = ((na * self.period) as i128).gcd(&m_big);
        let mut out = BTreeSet::new();
        for j in &self.residues {
            let base = (n as i128 * *j as i128).rem_euclid(m_big);
            let mut t = 0;
            while t < m_big {
                out.insert(((base + t) % m_big) as u64);
                t += step;
            }
        }
        out
    }

    fn same_group(&self, other: &Self) -> bool {
        self.group == other.group
    }

    /// `X + nY ⊂ Z`, decided exactly on residues.
    pub fn sum_in(x: &Self, n: i64, y: &Self, z: &Self) -> bool {
        assert!(x.same_group(y) && y.same_group(z));
        let big = lcm3(x.period, z.period, n.unsigned_abs() * y.period);
        let xs = x.classes_at(big);
        let ys = y.scaled_classes_at(n, big);
        let zs = z.classes_at(big);
        let m = x.group.coset_modulus(big);
        xs.iter()
            .all(|a| ys.iter().all(|b| zs.contains(&((a + b) % m))))
    }

    /// `X ∩ nY = ∅`.
    pub fn disjoint_from_multiple(x: &Self, n: i64, y: &Self) -> bool {
        assert!(x.same_group(y));
        let big = x.period.lcm(&(n.unsigned_abs() * y.period));
        let xs = x.classes_at(big);
        let ys = y.scaled_classes_at(n, big);
        xs.is_disjoint(&ys)
    }

    /// `self ⊂ other`.
    pub fn subset_of(&self, other: &Self) -> bool {
        assert!(self.same_group(other));
        let big = self.period.lcm(&other.period);
        self.classes_at(big).is_subset(&other.classes_at(big))
    }

    pub fn set_eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.subset_of(other) && other.subset_of(self)
    }

    /// The same set with the smallest period that represents it.
    pub fn normalized(&self) -> Self {
        let mut divisors: Vec<u64> = (1..=self.period)
            .filter(|d| self.period.is_multiple_of(*d))
            .collect();
        divisors.sort();
        for d in divisors {
            let m_d = self.group.coset_modulus(d);
            let mine = self.classes_at(self.period);
            let projected: BTreeSet<u64> = mine.iter().map(|j| j % m_d).collect();
            let candidate = Self {
                group: self.group.clone(),
                period: d,
                residues: projected,
            };
            if candidate.classes_at(self.period) == mine {
                return candidate;
            }
        }
        self.clone()
    }

    /// `E − s` for `s ∈ G`.
    pub fn translate(&self, s: &Q) -> Result<Self> {
        let j = self
            .group
            .residue(s, self.period)
            .ok_or_else(|| Error::InvalidArgument(format!("{} not in {}", fmt_q(s), self.group)))?;
        let m = self.modulus();
        Ok(Self {
            group: self.group.clone(),
            period: self.period,
            residues: self.residues.iter().map(|r| (r + m - j % m) % m).collect(),
        })
    }

    pub fn check(&self) -> ReflectionReport {
        let m = self.modulus();
        let is_reflection_space = Self::sum_in(self, -2, self, self);
        let is_pointed = self.residues.contains(&0);
        let g = self.residues.iter().fold(m, |acc, j| acc.gcd(j));
        ReflectionReport {
            is_reflection_space,
            is_pointed,
            is_full: !self.residues.is_empty() && g == 1,
        }
    }

    pub fn is_group_whole(&self) -> bool {
        self.residues.len() as u64 == self.modulus()
    }

    /// Pointed and closed under addition (negation follows for a finite quotient).
    pub fn is_subgroup(&self) -> bool {
        self.residues.contains(&0) && Self::sum_in(self, 1, self, self)
    }

    /// `[G : ⟨E⟩]`; the subgroup generated always contains `kG` when `E ≠ ∅`.
    pub fn index_of_span(&self) -> u64 {
        let m = self.modulus();
        self.residues.iter().fold(m, |acc, j| acc.gcd(j))
    }

    pub fn classify_full(&self) -> Result<FullClassification> {
        if !self.check().is_full {
            return Err(Error::MalformedReflectionSpace(format!(
                "{self} is not full"
            )));
        }
        if self.is_group_whole() {
            return Ok(FullClassification::EqualsGroup);
        }
        if self.group.coset_modulus(2) == 2 {
            let odd = Self::coset(self.group.clone(), 2, 1);
            if self.set_eq(&odd) {
                return Ok(FullClassification::TwoGPlus(self.group.unit()));
            }
        }
        let n = self.normalized();
        Ok(FullClassification::Other {
            period: n.period,
            residues: n.representatives(),
        })
    }
}

fn lcm3(a: u64, b: u64, c: u64) -> u64 {
    a.lcm(&b).lcm(&c)
}

impl fmt::Display for ReflectionSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.period == 1 && self.residues.contains(&0) {
            return write!(f, "G");
        }
        let reps: Vec<String> = self.representatives().iter().map(fmt_q).collect();
        if self.period == 1 {
            write!(f, "G+{{{}}}", reps.join(","))
        } else {
            write!(f, "{}G+{{{}}}", self.period, reps.join(","))
        }
    }
}
