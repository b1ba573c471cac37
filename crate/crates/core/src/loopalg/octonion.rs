//! Split octonions in the Zorn vector-matrix model. The pinned basis is
//! `1, h, u₁, u₂, u₃, v₁, v₂, v₃` where `h = e₁ − e₂` for the two diagonal
//! idempotents, and `(a, u, v, b)` multiplies as
//! `(aa' + u·v', au' + b'u − v×v', a'v + bv' + u×u', bb' + v·u')`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::{commutator, flatten, lin, scale, HomMatrix, Mat};
use crate::linalg::rank;
use crate::rational::Q;
use crate::rootsys::RootVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Octonion {
    pub coords: [Q; 8],
}

pub const BASIS_LABELS: [&str; 8] = ["1", "h", "u1", "u2", "u3", "v1", "v2", "v3"];

type Zorn = (Q, [Q; 3], [Q; 3], Q);

fn dot(a: &[Q; 3], b: &[Q; 3]) -> Q {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl Octonion {
    pub fn zero() -> Self {
        Self {
            coords: [Q::zero(); 8],
        }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [Q::zero(); 8];
        c[i] = Q::from_integer(1);
        Self { coords: c }
    }

    pub fn from_coords(c: &[Q]) -> Self {
        let mut coords = [Q::zero(); 8];
        coords.copy_from_slice(&c[..8]);
        Self { coords }
    }

    fn zorn(&self) -> Zorn {
        let c = &self.coords;
        (
            c[0] + c[1],
            [c[2], c[3], c[4]],
            [c[5], c[6], c[7]],
            c[0] - c[1],
        )
    }

    fn from_zorn((a, u, v, b): Zorn) -> Self {
        let two = Q::from_integer(2);
        Self {
            coords: [
                (a + b) / two,
                (a - b) / two,
                u[0],
                u[1],
                u[2],
                v[0],
                v[1],
                v[2],
            ],
        }
    }

    /// Normalized trace: `t(1) = 1`, zero on the seven other basis units.
    pub fn trace(&self) -> Q {
        self.coords[0]
    }

    /// `N(x)` with `x² − 2t(x)x + N(x)1 = 0`.
    pub fn norm(&self) -> Q {
        let (a, u, v, b) = self.zorn();
        a * b - dot(&u, &v)
    }

    pub fn scale(&self, x: Q) -> Self {
        Self {
            coords: self.coords.map(|c| c * x),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn multiply(&self, o: &Self) -> Self {
        let (a, u, v, b) = self.zorn();
        let (a1, u1, v1, b1) = o.zorn();
        let vv = cross(&v, &v1);
        let uu = cross(&u, &u1);
        let nu: [Q; 3] = std::array::from_fn(|i| a * u1[i] + b1 * u[i] - vv[i]);
        let nv: [Q; 3] = std::array::from_fn(|i| a1 * v[i] + b * v1[i] + uu[i]);
        Self::from_zorn((a * a1 + dot(&u, &v1), nu, nv, b * b1 + dot(&v, &u1)))
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.multiply(o) - o.multiply(self)
    }

    /// The trace-zero part of `xy`.
    pub fn star(&self, o: &Self) -> Self {
        let p = self.multiply(o);
        p - Self::one().scale(p.trace())
    }

    /// `t(xy)`.
    pub fn trace_form(&self, o: &Self) -> Q {
        self.multiply(o).trace()
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, o: Self) -> Self {
        Self {
            coords: std::array::from_fn(|i| self.coords[i] + o.coords[i]),
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Self {
        self.scale(Q::from_integer(-1))
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, o: Self) -> Self {
        self.multiply(&o)
    }
}

pub fn multiply(x: &Octonion, y: &Octonion) -> Octonion {
    x.multiply(y)
}

pub fn star(x: &Octonion, y: &Octonion) -> Octonion {
    x.star(y)
}

fn operator(f: impl Fn(&Octonion) -> Octonion) -> Mat {
    let cols: Vec<Octonion> = (0..8).map(|j| f(&Octonion::basis(j))).collect();
    (0..8)
        .map(|i| cols.iter().map(|c| c.coords[i]).collect())
        .collect()
}

pub fn left_mult(x: &Octonion) -> Mat {
    operator(|y| x.multiply(y))
}

pub fn right_mult(x: &Octonion) -> Mat {
    operator(|y| y.multiply(x))
}

/// `D_{x,y} = ¼(L_{[x,y]} − R_{[x,y]} − 3[L_x, R_y])` as an 8×8 matrix.
pub fn derivation_dxy(x: &Octonion, y: &Octonion) -> Mat {
    let c = x.bracket(y);
    let first = lin(&left_mult(&c), Q::from_integer(-1), &right_mult(&c));
    let second = commutator(&left_mult(x), &right_mult(y));
    scale(&lin(&first, Q::from_integer(-3), &second), Q::new(1, 4))
}

pub fn act(d: &Mat, x: &Octonion) -> Octonion {
    Octonion::from_coords(&super::matrix::apply(d, &x.coords))
}

/// Weights of the pinned basis in the `G₂` coordinates of `rootsys`:
/// `1, h ↦ 0`, `u_i ↦ σ_i`, `v_i ↦ −σ_i` with `σ_i = ε_{i+1} − ε_{i+2}`.
pub fn basis_weight(i: usize) -> RootVector {
    let sigma = |k: usize| {
        let (a, b) = ((k + 1) % 3 + 1, (k + 2) % 3 + 1);
        RootVector::from_eps(&[
            (a as u32, Q::from_integer(1)),
            (b as u32, Q::from_integer(-1)),
        ])
    };
    match i {
        0 | 1 => RootVector::zero(),
        2..=4 => sigma(i - 2),
        _ => sigma(i - 5).neg(),
    }
}

/// A weight-homogeneous basis of `D_{𝕆,𝕆}` chosen greedily among the
/// `D_{f_i,f_j}` of trace-zero basis units, grouped by weight.
pub fn derivation_basis() -> Vec<(String, HomMatrix)> {
    let mut groups: BTreeMap<RootVector, Vec<(String, Mat)>> = BTreeMap::new();
    for i in 1..8 {
        for j in i + 1..8 {
            let d = derivation_dxy(&Octonion::basis(i), &Octonion::basis(j));
            if flatten(&d).iter().any(|x| !x.is_zero()) {
                let label = format!("D({},{})", BASIS_LABELS[i], BASIS_LABELS[j]);
                groups
                    .entry(basis_weight(i).add(&basis_weight(j)))
                    .or_default()
                    .push((label, d));
            }
        }
    }
    let mut out = Vec::new();
    for (w, ds) in groups {
        let mut kept: Vec<Vec<Q>> = Vec::new();
        for (label, d) in ds {
            let mut trial = kept.clone();
            trial.push(flatten(&d));
            if rank(&trial) > kept.len() {
                kept = trial;
                out.push((
                    label,
                    HomMatrix {
                        matrix: d,
                        weight: w.clone(),
                    },
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng) -> Octonion {
        let c: Vec<Q> = (0..8).map(|_| q(rng.gen_range(-3..=3))).collect();
        Octonion::from_coords(&c)
    }

    #[test]
    fn alternative_composition_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (x, y) = (random(&mut rng), random(&mut rng));
            assert_eq!(x * (x * y), (x * x) * y);
            assert_eq!((y * x) * x, y * (x * x));
            assert_eq!((x * y).norm(), x.norm() * y.norm());
            let quad = x * x - x.scale(q(2) * x.trace()) + Octonion::one().scale(x.norm());
            assert!(quad.is_zero());
        }
        assert_eq!(Octonion::one().trace(), q(1));
        assert!((1..8).all(|i| Octonion::basis(i).trace() == q(0)));
    }

    #[test]
    fn star_is_skew_on_trace_zero() {
        for i in 1..8 {
            for j in 1..8 {
                let (x, y) = (Octonion::basis(i), Octonion::basis(j));
                assert_eq!(x.star(&y), -y.star(&x));
                assert_eq!(x * y, Octonion::one().scale((x * y).trace()) + x.star(&y));
            }
        }
    }

    #[test]
    fn derivations() {
        let x = Octonion::basis(3);
        assert!(flatten(&derivation_dxy(&x, &x)).iter().all(Zero::is_zero));
        assert!(flatten(&derivation_dxy(&Octonion::one(), &x))
            .iter()
            .all(Zero::is_zero));
        let mut all = Vec::new();
        for i in 1..8 {
            for j in i + 1..8 {
                let d = derivation_dxy(&Octonion::basis(i), &Octonion::basis(j));
                assert!(act(&d, &Octonion::one()).is_zero());
                for a in 0..8 {
                    assert_eq!(act(&d, &Octonion::basis(a)).trace(), q(0));
                    for b in 0..8 {
                        let (fa, fb) = (Octonion::basis(a), Octonion::basis(b));
                        assert_eq!(act(&d, &(fa * fb)), act(&d, &fa) * fb + fa * act(&d, &fb));
                    }
                }
                all.push(flatten(&d));
            }
        }
        assert_eq!(all.len(), 21);
        assert_eq!(rank(&all), 14);
        assert_eq!(derivation_basis().len(), 14);
    }
}
