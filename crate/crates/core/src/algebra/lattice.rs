//! Transforms over the subset lattice: Yates' algorithm for Kronecker
//! powers, zeta/Möbius transforms, and variants restricted to a closed
//! sub-family of masks.
//!
//! Dense vectors are indexed by mask value, so coordinate `l` of the
//! Kronecker power is bit (or base-`c` digit) `l` of the index.

use std::collections::{BTreeMap, HashMap};

use super::field::Ring;
use super::matrix::Matrix;
use crate::mask::{self, SubsetMask};
use crate::{Counters, Error, Result};

pub type SmallMatrix<E> = Matrix<E>;

/// The named base matrices of the Kronecker powers used by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallMatrixKind {
    /// `[[1, 0], [1, 1]]`
    Zeta,
    /// `[[1, 0], [-1, 1]]`
    Moebius,
    /// The 3x3 all-ones matrix minus the identity.
    NarrowCutQ,
}

impl SmallMatrixKind {
    pub fn build<R: Ring>(self, ring: &R) -> SmallMatrix<R::Elem> {
        let (o, z) = (ring.one(), ring.zero());
        match self {
            SmallMatrixKind::Zeta => Matrix::from_fn(2, 2, |i, j| if j <= i { o.clone() } else { z.clone() }),
            SmallMatrixKind::Moebius => Matrix::from_fn(2, 2, |i, j| match (i, j) {
                (1, 0) => ring.neg(&o),
                (a, b) if a == b => o.clone(),
                _ => z.clone(),
            }),
            SmallMatrixKind::NarrowCutQ => Matrix::from_fn(3, 3, |i, j| if i == j { z.clone() } else { o.clone() }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Zeta,
    Moebius,
}

/// A ring-valued vector indexed by all subsets of an `n`-element universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector<E> {
    n: usize,
    values: Vec<E>,
}

impl<E: Clone> LatticeVector<E> {
    pub fn new(values: Vec<E>) -> Result<Self> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(Error::Dimension(format!("length {len} is not a power of two")));
        }
        Ok(LatticeVector {
            n: len.trailing_zeros() as usize,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    pub fn into_values(self) -> Vec<E> {
        self.values
    }

    pub fn get(&self, m: SubsetMask) -> &E {
        &self.values[m as usize]
    }
}

/// Computes `base^{⊗n} v` one coordinate at a time. `v` has `c^n` entries
/// for an `r x c` base and the result has `r^n`.
pub fn yates<R: Ring>(
    ring: &R,
    base: &SmallMatrix<R::Elem>,
    n: usize,
    v: &[R::Elem],
    counters: &mut Counters,
) -> Result<Vec<R::Elem>> {
    let (r, c) = (base.rows(), base.cols());
    if r == 0 || c == 0 {
        return Err(Error::Dimension("empty base matrix".into()));
    }
    let expect = c.checked_pow(n as u32).ok_or_else(|| Error::Dimension("c^n overflows".into()))?;
    if v.len() != expect {
        return Err(Error::Dimension(format!("vector has {} entries, expected {c}^{n} = {expect}", v.len())));
    }
    let mut cur = v.to_vec();
    for l in 0..n {
        let lo = r.pow(l as u32);
        let hi = c.pow((n - l - 1) as u32);
        let mut next = vec![ring.zero(); lo * r * hi];
        for h in 0..hi {
            for low in 0..lo {
                for i in 0..r {
                    let mut acc = ring.zero();
                    for j in 0..c {
                        let b = base.get(i, j);
                        if !ring.is_zero(b) {
                            acc = ring.add(&acc, &ring.mul(b, &cur[low + lo * (j + c * h)]));
                        }
                    }
                    next[low + lo * (i + r * h)] = acc;
                }
            }
        }
        counters.incr("passes");
        counters.add("entries_touched", (lo * r.max(c) * hi) as u64);
        cur = next;
    }
    Ok(cur)
}

fn check_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::Dimension(format!("length {len} is not a power of two")));
    }
    Ok(len.trailing_zeros() as usize)
}

fn transform_dense<R: Ring>(ring: &R, kind: TransformKind, v: &mut [R::Elem], counters: &mut Counters) -> Result<()> {
    let n = check_len(v.len())?;
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..v.len() {
            if m & bit != 0 {
                let below = v[m ^ bit].clone();
                v[m] = match kind {
                    TransformKind::Zeta => ring.add(&v[m], &below),
                    TransformKind::Moebius => ring.sub(&v[m], &below),
                };
            }
        }
        counters.incr("passes");
        counters.add("masks_touched", v.len() as u64);
    }
    Ok(())
}

/// `(Zv)[Y] = sum over X ⊆ Y of v[X]`.
pub fn zeta<R: Ring>(ring: &R, v: &[R::Elem], counters: &mut Counters) -> Result<Vec<R::Elem>> {
    let mut out = v.to_vec();
    transform_dense(ring, TransformKind::Zeta, &mut out, counters)?;
    Ok(out)
}

/// `(Mv)[Y] = sum over X ⊆ Y of (-1)^{|Y \ X|} v[X]`, the inverse of [`zeta`].
pub fn moebius<R: Ring>(ring: &R, v: &[R::Elem], counters: &mut Counters) -> Result<Vec<R::Elem>> {
    let mut out = v.to_vec();
    transform_dense(ring, TransformKind::Moebius, &mut out, counters)?;
    Ok(out)
}

/// Applies a zeta or Möbius transform to values stored on `family` (sorted
/// ascending, `values[i]` belonging to `family[i]`), where `family` is
/// up-closed or down-closed inside the universe. Entries outside the family
/// are treated as zero, which is exact in both cases.
pub fn transform_on_family<R: Ring>(
    ring: &R,
    kind: TransformKind,
    n: usize,
    family: &[SubsetMask],
    values: &mut [R::Elem],
    counters: &mut Counters,
) {
    debug_assert_eq!(family.len(), values.len());
    let index: HashMap<SubsetMask, usize> = family.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    for b in 0..n {
        let bit = 1u64 << b;
        for (i, &m) in family.iter().enumerate() {
            if m & bit == 0 {
                continue;
            }
            if let Some(&j) = index.get(&(m ^ bit)) {
                let below = values[j].clone();
                values[i] = match kind {
                    TransformKind::Zeta => ring.add(&values[i], &below),
                    TransformKind::Moebius => ring.sub(&values[i], &below),
                };
            }
        }
        counters.incr("passes");
    }
}

/// The transform of a sparse vector evaluated on `↑supp(v)` only. Returns
/// the closure with the transformed values; `masks_touched` is `|↑supp(v)|`.
pub fn trimmed_up_closure_transform<R: Ring>(
    ring: &R,
    kind: TransformKind,
    n: usize,
    v: &BTreeMap<SubsetMask, R::Elem>,
    counters: &mut Counters,
) -> BTreeMap<SubsetMask, R::Elem> {
    let support: Vec<SubsetMask> = v.keys().copied().collect();
    let closure = mask::up_closure(&support, n);
    let mut values: Vec<R::Elem> = closure
        .iter()
        .map(|m| v.get(m).cloned().unwrap_or_else(|| ring.zero()))
        .collect();
    counters.add("masks_touched", closure.len() as u64);
    transform_on_family(ring, kind, n, &closure, &mut values, counters);
    closure.into_iter().zip(values).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf2k, Integers, Zp};
    use num_bigint::BigInt;
    use rand::Rng as _;

    fn naive_kron<R: Ring>(ring: &R, base: &Matrix<R::Elem>, n: usize, v: &[R::Elem]) -> Vec<R::Elem> {
        let (r, c) = (base.rows(), base.cols());
        (0..r.pow(n as u32))
            .map(|out| {
                (0..c.pow(n as u32)).fold(ring.zero(), |acc, inp| {
                    let mut coef = ring.one();
                    let (mut o, mut i) = (out, inp);
                    for _ in 0..n {
                        coef = ring.mul(&coef, base.get(o % r, i % c));
                        o /= r;
                        i /= c;
                    }
                    ring.add(&acc, &ring.mul(&coef, &v[inp]))
                })
            })
            .collect()
    }

    #[test]
    fn yates_examples() {
        let mut c = Counters::new();
        let id = Matrix::from_fn(2, 2, |i, j| i64::from(i == j)).map(|&x| BigInt::from(x));
        let v: Vec<BigInt> = (0..8).map(BigInt::from).collect();
        assert_eq!(yates(&Integers, &id, 3, &v, &mut c).unwrap(), v);
        let z = SmallMatrixKind::Zeta.build(&Integers);
        let ab = vec![BigInt::from(5), BigInt::from(7)];
        assert_eq!(yates(&Integers, &z, 1, &ab, &mut c).unwrap(), vec![BigInt::from(5), BigInt::from(12)]);
        assert!(yates(&Integers, &z, 2, &ab, &mut c).is_err());
    }

    #[test]
    fn yates_matches_naive_product() {
        let mut rng = crate::Seed(3).rng();
        let z101 = Zp::new(101).unwrap();
        let gf = Gf2k::new(6).unwrap();
        for n in 0..=4 {
            for (r, c) in [(1, 1), (2, 2), (3, 3), (2, 3), (3, 2)] {
                let base = Matrix::from_fn(r, c, |_, _| rng.random_range(0..101u64));
                let v: Vec<u64> = (0..c.pow(n)).map(|_| rng.random_range(0..101)).collect();
                let mut cnt = Counters::new();
                assert_eq!(yates(&z101, &base, n as usize, &v, &mut cnt).unwrap(), naive_kron(&z101, &base, n as usize, &v));
                assert_eq!(cnt.get("passes"), n as u64);
                let gb = Matrix::from_fn(r, c, |_, _| gf.random(&mut rng));
                let gv: Vec<u64> = (0..c.pow(n)).map(|_| gf.random(&mut rng)).collect();
                assert_eq!(yates(&gf, &gb, n as usize, &gv, &mut cnt).unwrap(), naive_kron(&gf, &gb, n as usize, &gv));
            }
        }
    }

    #[test]
    fn zeta_examples() {
        let mut c = Counters::new();
        let one = |m: usize| (0..4).map(|i| BigInt::from(i64::from(i == m))).collect::<Vec<_>>();
        let all: Vec<BigInt> = vec![BigInt::from(1); 4];
        assert_eq!(zeta(&Integers, &one(0), &mut c).unwrap(), all);
        assert_eq!(zeta(&Integers, &one(3), &mut c).unwrap(), one(3));
        assert!(zeta(&Integers, &one(0)[..3], &mut c).is_err());
    }

    #[test]
    fn zeta_is_yates_of_z() {
        let mut rng = crate::Seed(4).rng();
        let z = Zp::new(97).unwrap();
        let base = SmallMatrixKind::Zeta.build(&z);
        let mb = SmallMatrixKind::Moebius.build(&z);
        let v: Vec<u64> = (0..64).map(|_| rng.random_range(0..97)).collect();
        let mut c = Counters::new();
        assert_eq!(zeta(&z, &v, &mut c).unwrap(), yates(&z, &base, 6, &v, &mut c).unwrap());
        assert_eq!(moebius(&z, &v, &mut c).unwrap(), yates(&z, &mb, 6, &v, &mut c).unwrap());
    }

    #[test]
    fn trimmed_examples() {
        let n = 4;
        let mut c = Counters::new();
        let top: BTreeMap<u64, BigInt> = [(0b1111, BigInt::from(9))].into();
        assert_eq!(trimmed_up_closure_transform(&Integers, TransformKind::Zeta, n, &top, &mut c), top);
        assert_eq!(c.get("masks_touched"), 1);
        let bottom: BTreeMap<u64, BigInt> = [(0, BigInt::from(2))].into();
        let mut c = Counters::new();
        let t = trimmed_up_closure_transform(&Integers, TransformKind::Moebius, n, &bottom, &mut c);
        assert_eq!(c.get("masks_touched"), 16);
        let dense: Vec<BigInt> = (0..16).map(|m| if m == 0 { BigInt::from(2) } else { BigInt::from(0) }).collect();
        let expect = moebius(&Integers, &dense, &mut Counters::new()).unwrap();
        assert_eq!(t.into_values().collect::<Vec<_>>(), expect);
    }
}
