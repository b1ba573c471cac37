use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{
    eps_rank, generate, is_reduced, recognize, reflect, Family, RootSystemDesc, RootVector,
};
use crate::error::{Error, Result};
use crate::rational::Q;

/// A base `Π` and, for each root `α`, a word `(i_1, …, i_k, i_{k+1})` with
/// `α = σ_{Π[i_1]} ⋯ σ_{Π[i_k]}(Π[i_{k+1}])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectableBase {
    pub base: Vec<RootVector>,
    pub words: BTreeMap<RootVector, Vec<usize>>,
}

impl ReflectableBase {
    pub fn replay(&self, word: &[usize]) -> Result<RootVector> {
        let (last, rest) = word
            .split_last()
            .ok_or_else(|| Error::BaseSearch("empty witness word".into()))?;
        let mut v = self.base[*last].clone();
        for i in rest.iter().rev() {
            v = reflect(&self.base[*i], &v)?;
        }
        Ok(v)
    }

    /// Every stored word reproduces its root exactly.
    pub fn verify(&self) -> bool {
        self.words
            .iter()
            .all(|(r, w)| self.replay(w).map(|v| &v == r).unwrap_or(false))
    }

    pub fn max_word_len(&self) -> usize {
        self.words.values().map(Vec::len).max().unwrap_or(0)
    }
}

fn ev(f: &[Q], v: &RootVector) -> Q {
    v.eps().iter().map(|(i, c)| f[*i as usize] * c).sum()
}

/// Simple roots with respect to a generic linear functional: the positive
/// roots that are not sums of two positive roots.
pub(crate) fn generic_simple_roots(system: &[RootVector]) -> Result<Vec<RootVector>> {
    let dim = system.iter().map(|r| r.eps_dim()).max().unwrap_or(0) as usize;
    for b in [101i128, 103, 107, 109, 113, 127] {
        let mut f = vec![Q::zero(); dim + 1];
        let mut x = Q::one();
        for c in f.iter_mut().skip(1) {
            *c = x;
            x *= Q::from_integer(b);
        }
        if system.iter().any(|r| ev(&f, r).is_zero()) {
            continue;
        }
        let pos: Vec<&RootVector> = system.iter().filter(|r| ev(&f, r) > Q::zero()).collect();
        let set: BTreeSet<&RootVector> = pos.iter().copied().collect();
        let simple: Vec<RootVector> = pos
            .iter()
            .filter(|r| !pos.iter().any(|a| *a != **r && set.contains(&r.sub(a))))
            .map(|r| (*r).clone())
            .collect();
        let mut simple = simple;
        simple.sort_by_key(|r| ev(&f, r));
        return Ok(simple);
    }
    Err(Error::BaseSearch("no generic functional found".into()))
}

/// Bourbaki simple roots of the pinned realization (`B` for `BC`).
pub fn standard_simple_roots(desc: &RootSystemDesc) -> Vec<RootVector> {
    let one = Q::one();
    let h = Q::new(1, 2);
    let l = desc.index_size;
    let chain = |n: u32| -> Vec<RootVector> {
        (1..n)
            .map(|i| RootVector::from_eps(&[(i, one), (i + 1, -one)]))
            .collect()
    };
    match desc.family {
        Family::A => chain(l),
        Family::B | Family::BC => {
            let mut v = chain(l);
            v.push(RootVector::from_eps(&[(l, one)]));
            v
        }
        Family::C => {
            let mut v = chain(l);
            v.push(RootVector::from_eps(&[(l, Q::from_integer(2))]));
            v
        }
        Family::D => {
            let mut v = chain(l);
            v.push(RootVector::from_eps(&[(l - 1, one), (l, one)]));
            v
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let mut a1 = vec![-h; 8];
            a1[0] = h;
            a1[7] = h;
            let mut v = vec![
                RootVector::from_dense(&a1),
                RootVector::from_eps(&[(1, one), (2, one)]),
            ];
            for i in 1..(desc.index_size - 1) {
                v.push(RootVector::from_eps(&[(i, -one), (i + 1, one)]));
            }
            v
        }
        Family::F4 => vec![
            RootVector::from_eps(&[(2, one), (3, -one)]),
            RootVector::from_eps(&[(3, one), (4, -one)]),
            RootVector::from_eps(&[(4, one)]),
            RootVector::from_dense(&[h, -h, -h, -h]),
        ],
        Family::G2 => vec![
            RootVector::from_eps(&[(1, one), (2, -one)]),
            RootVector::from_eps(&[(1, -Q::from_integer(2)), (2, one), (3, one)]),
        ],
    }
}

fn bfs(base: Vec<RootVector>, system: &[RootVector]) -> Result<ReflectableBase> {
    let target: BTreeSet<&RootVector> = system.iter().collect();
    let mut words: BTreeMap<RootVector, Vec<usize>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for (i, b) in base.iter().enumerate() {
        if !target.contains(b) {
            return Err(Error::BaseSearch(format!(
                "base root {b} is not in the system"
            )));
        }
        words.entry(b.clone()).or_insert_with(|| vec![i]);
        queue.push_back(b.clone());
    }
    while let Some(r) = queue.pop_front() {
        let w = words[&r].clone();
        for (i, b) in base.iter().enumerate() {
            let img = reflect(b, &r)?;
            if !words.contains_key(&img) {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(i);
                nw.extend_from_slice(&w);
                words.insert(img.clone(), nw);
                queue.push_back(img);
            }
        }
    }
    if let Some(missed) = system.iter().find(|r| !words.contains_key(r)) {
        return Err(Error::BaseSearch(format!("orbit closure misses {missed}")));
    }
    if words.len() != system.len() {
        return Err(Error::BaseSearch("orbit closure leaves the system".into()));
    }
    Ok(ReflectableBase { base, words })
}

/// A reflectable base of a reduced finite system with a witness word per
/// root. The pinned Bourbaki base is used when the input is exactly a
/// pinned realization; otherwise simple roots of a generic functional.
pub fn reflectable_base(system: &[RootVector]) -> Result<ReflectableBase> {
    if !is_reduced(system) {
        return Err(Error::InvalidRootSystem(
            "reflectable bases need a reduced system".into(),
        ));
    }
    let set: BTreeSet<&RootVector> = system.iter().collect();
    let standard = recognize(system).ok().and_then(|d| {
        let g = generate(&d);
        (g.len() == set.len() && g.iter().all(|r| set.contains(r)))
            .then(|| standard_simple_roots(&d))
    });
    let base = match standard {
        Some(b) => b,
        None => generic_simple_roots(system)?,
    };
    if base.len() != eps_rank(system) || eps_rank(&base) != base.len() {
        return Err(Error::BaseSearch(
            "candidate is not a basis of the span".into(),
        ));
    }
    bfs(base, system)
}
