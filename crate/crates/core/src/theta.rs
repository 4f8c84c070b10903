//! The deck-transformation extension of a rotation of order n - 1: the
//! semidirect product (Z/r)^(n-1) x| Z/(r(n-1)), where the cyclic factor
//! shifts the coordinates of the abelian factor one slot forward. Setting
//! r = 0 gives the integral form Z^(n-1) x| Z. The module decides when the
//! quotient rotation admits a finite-order lift and models the same data as
//! affine self-maps of the covering graph.

use crate::affine::AffineLift;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::word::{FreeAut, Word};
use num_integer::Integer;
use serde::Serialize;

/// An element (v, k): v in the shifted abelian factor, k the rotation
/// exponent. Stored canonically reduced when the group is finite.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SemidirectElt {
    pub vec: Vec<i64>,
    pub xexp: i64,
}

/// The extension group for a given rank n >= 2 and modulus r (r = 0 means
/// the integral form).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaGroup {
    n: u32,
    r: i64,
}

impl ThetaGroup {
    pub fn new(n: u32, r: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("rank must be at least 2, got {n}")));
        }
        if r < 0 || r == 1 {
            return Err(Error::Invalid(format!(
                "modulus must be 0 (integral) or at least 2, got {r}"
            )));
        }
        Ok(ThetaGroup { n, r })
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> i64 {
        self.r
    }

    fn slots(&self) -> usize {
        (self.n - 1) as usize
    }

    fn xmod(&self) -> i64 {
        self.r * i64::from(self.n - 1)
    }

    fn reduce(&self, vec: Vec<i64>, xexp: i64) -> SemidirectElt {
        if self.r == 0 {
            return SemidirectElt { vec, xexp };
        }
        SemidirectElt {
            vec: vec.into_iter().map(|v| v.rem_euclid(self.r)).collect(),
            xexp: xexp.rem_euclid(self.xmod()),
        }
    }

    pub fn elt(&self, vec: &[i64], xexp: i64) -> Result<SemidirectElt> {
        if vec.len() != self.slots() {
            return Err(Error::Dimension(format!(
                "vector must have {} slots for rank {}, got {}",
                self.slots(),
                self.n,
                vec.len()
            )));
        }
        Ok(self.reduce(vec.to_vec(), xexp))
    }

    pub fn identity(&self) -> SemidirectElt {
        SemidirectElt {
            vec: vec![0; self.slots()],
            xexp: 0,
        }
    }

    /// The rotation generator x.
    pub fn x(&self) -> SemidirectElt {
        self.reduce(vec![0; self.slots()], 1)
    }

    /// x^(n-1), the smallest central rotation power.
    pub fn alpha0(&self) -> SemidirectElt {
        self.reduce(vec![0; self.slots()], i64::from(self.n - 1))
    }

    /// The diagonal translation (1, ..., 1; 0), fixed by the shift.
    pub fn mu(&self) -> SemidirectElt {
        self.reduce(vec![1; self.slots()], 0)
    }

    fn shift(&self, v: &[i64], k: i64) -> Vec<i64> {
        let len = self.slots();
        if len == 0 {
            return Vec::new();
        }
        let k = (k.rem_euclid(len as i64)) as usize;
        let mut out = vec![0; len];
        for (i, &val) in v.iter().enumerate() {
            out[(i + k) % len] = val;
        }
        out
    }

    /// (v, k)(w, l) = (v + shift^k(w), k + l).
    pub fn mul(&self, a: &SemidirectElt, b: &SemidirectElt) -> SemidirectElt {
        let moved = self.shift(&b.vec, a.xexp);
        let vec: Vec<i64> = a.vec.iter().zip(moved.iter()).map(|(x, y)| x + y).collect();
        self.reduce(vec, a.xexp + b.xexp)
    }

    pub fn inv(&self, a: &SemidirectElt) -> SemidirectElt {
        let back = self.shift(&a.vec, -a.xexp);
        self.reduce(back.into_iter().map(|v| -v).collect(), -a.xexp)
    }

    pub fn pow(&self, a: &SemidirectElt, e: i64) -> SemidirectElt {
        let base = if e >= 0 { a.clone() } else { self.inv(a) };
        let mut out = self.identity();
        for _ in 0..e.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }

    pub fn is_identity(&self, a: &SemidirectElt) -> bool {
        let canon = self.reduce(a.vec.clone(), a.xexp);
        canon.xexp == 0 && canon.vec.iter().all(|&v| v == 0)
    }

    /// Element order; None when infinite (integral form only).
    pub fn order(&self, a: &SemidirectElt) -> Option<u64> {
        if self.r == 0 {
            if a.xexp != 0 {
                return None;
            }
            if a.vec.iter().all(|&v| v == 0) {
                return Some(1);
            }
            return None;
        }
        let mut acc = a.clone();
        let mut k = 1u64;
        while !self.is_identity(&acc) {
            acc = self.mul(&acc, a);
            k += 1;
        }
        Some(k)
    }
}

/// The lift candidate determined by an integer tuple (m_0, ..., m_(n-1)):
/// vector part (m_1, ..., m_(n-1)) and rotation exponent m_0 (n - 1) + 1.
/// Every lift of the quotient rotation generator has this shape.
pub fn lift_candidate(group: &ThetaGroup, m: &[i64]) -> Result<SemidirectElt> {
    let n = group.rank();
    if m.len() != n as usize {
        return Err(Error::Dimension(format!(
            "candidate tuple must have {n} entries, got {}",
            m.len()
        )));
    }
    group.elt(&m[1..], m[0] * i64::from(n - 1) + 1)
}

/// Exponents (a0, mu) with candidate^(n-1) = alpha0^a0 mu^mu:
/// a0 = m_0 (n - 1) + 1 and mu = m_1 + ... + m_(n-1), both mod r.
pub fn power_exponents(n: u32, r: i64, m: &[i64]) -> Result<(i64, i64)> {
    if m.len() != n as usize {
        return Err(Error::Dimension(format!(
            "candidate tuple must have {n} entries, got {}",
            m.len()
        )));
    }
    let a0 = m[0] * i64::from(n - 1) + 1;
    let mu: i64 = m[1..].iter().sum();
    if r == 0 {
        Ok((a0, mu))
    } else {
        Ok((a0.rem_euclid(r), mu.rem_euclid(r)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub n: u32,
    pub modulus: i64,
    pub gcd: i64,
    pub exists: bool,
    pub witness: Option<SemidirectElt>,
    pub witness_order: Option<u64>,
}

/// Searches for a finite-order lift of the quotient rotation: an element
/// with rotation exponent 1 mod (n - 1) whose (n - 1)-st power is trivial.
/// The zero vector is always feasible when any vector is, so scanning
/// rotation exponents in increasing order finds the least witness.
pub fn splitting_search(n: u32, r: i64) -> Result<SplittingReport> {
    if r == 0 {
        return Err(Error::Invalid(
            "splitting search needs a finite modulus; use the torsion check for the integral form"
                .to_string(),
        ));
    }
    let group = ThetaGroup::new(n, r)?;
    let gcd = r.gcd(&i64::from(n - 1));
    let residue = 1 % i64::from(n - 1);
    let mut witness = None;
    for e in 0..group.xmod() {
        if e % i64::from(n - 1) != residue {
            continue;
        }
        let g = group.elt(&vec![0; group.slots()], e)?;
        if group.is_identity(&group.pow(&g, i64::from(n - 1))) {
            witness = Some(g);
            break;
        }
    }
    let witness_order = witness.as_ref().and_then(|w| group.order(w));
    if let (Some(w), Some(ord)) = (&witness, witness_order) {
        debug_assert_eq!(u64::from(n - 1) % ord, 0);
        debug_assert_eq!(w.xexp % i64::from(n - 1), residue);
    }
    Ok(SplittingReport {
        n,
        modulus: r,
        gcd,
        exists: witness.is_some(),
        witness,
        witness_order,
    })
}

/// In the integral form every lift candidate has rotation exponent
/// m_0 (n - 1) + 1, which is never zero for n >= 3, so no candidate has
/// finite order. Confirms this over a box of tuples by direct computation.
pub fn integral_no_torsion_lift(n: u32, bound: i64) -> Result<bool> {
    if n < 3 {
        return Err(Error::Invalid(
            "the quotient rotation is trivial below rank 3; no lift obstruction exists".to_string(),
        ));
    }
    if bound < 0 {
        return Err(Error::Invalid(format!("bound must be nonnegative, got {bound}")));
    }
    let group = ThetaGroup::new(n, 0)?;
    let mut m = vec![-bound; n as usize];
    loop {
        let g = lift_candidate(&group, &m)?;
        debug_assert_ne!(g.xexp, 0);
        if group.order(&g).is_some() {
            return Ok(false);
        }
        let mut pos = 0usize;
        loop {
            if pos == m.len() {
                return Ok(true);
            }
            m[pos] += 1;
            if m[pos] <= bound {
                break;
            }
            m[pos] = -bound;
            pos += 1;
        }
    }
}

/// The affine self-map of the covering graph determined by a shift
/// (s; t_1, ..., t_(n-1)): coordinate 0 advances by 1 + s (n - 1) along the
/// distinguished loop, the remaining coordinates rotate one slot and
/// translate by t.
pub fn rotation_lift(n: u32, s: i64, t: &[i64]) -> Result<AffineLift> {
    if n < 2 {
        return Err(Error::Invalid(format!("rank must be at least 2, got {n}")));
    }
    let slots = (n - 1) as usize;
    if t.len() != slots {
        return Err(Error::Dimension(format!(
            "shift vector must have {slots} entries for rank {n}, got {}",
            t.len()
        )));
    }
    let d = n as usize;
    let mut a = IntMatrix::zeros(d, d);
    let mut a_inv = IntMatrix::zeros(d, d);
    a.set(0, 0, 1);
    a_inv.set(0, 0, 1);
    for i in 0..slots {
        let from = 1 + i;
        let to = 1 + (i + 1) % slots;
        a.set(to, from, 1);
        a_inv.set(from, to, 1);
    }
    let mut b = vec![0i64; d];
    b[0] = 1 + s * i64::from(n - 1);
    b[1..].copy_from_slice(t);
    AffineLift::from_parts(n, None, &a, &a_inv, &b)
}

/// Reads a pure translation of the covering graph in deck coordinates:
/// coordinate 0 counts central rotation powers, so the graph coordinate
/// must be divisible by n - 1.
pub fn deck_coordinates(lift: &AffineLift) -> Result<Vec<i64>> {
    if !lift.is_translation() {
        return Err(Error::Invalid(
            "deck coordinates are defined for pure translations only".to_string(),
        ));
    }
    let n = lift.rank();
    let t = lift.translation_part();
    let step = i64::from(n - 1);
    if t[0] % step != 0 {
        return Err(Error::NotInSubgroup {
            vector: t,
            modulus: u64::from(n - 1),
        });
    }
    let mut out = t;
    out[0] /= step;
    Ok(out)
}

/// The rotation as an automorphism of the fundamental group of the quotient
/// graph: basis a_1 = the distinguished loop, a_2, ..., a_n the vertex loops
/// in cyclic order. The loop is fixed, each vertex loop moves one slot on,
/// and the last wraps around conjugated by the distinguished loop.
pub fn rotation_aut(n: u32) -> Result<FreeAut> {
    if n < 2 {
        return Err(Error::Invalid(format!("rank must be at least 2, got {n}")));
    }
    let mut images = Vec::with_capacity(n as usize);
    images.push(Word::generator(n, 1)?);
    for i in 2..=n {
        if i < n {
            images.push(Word::generator(n, i + 1)?);
        } else {
            images.push(Word::new(n, &[1, 2, -1])?);
        }
    }
    let mut inverse_images = Vec::with_capacity(n as usize);
    inverse_images.push(Word::generator(n, 1)?);
    for i in 2..=n {
        if i > 2 {
            inverse_images.push(Word::generator(n, i - 1)?);
        } else {
            inverse_images.push(Word::new(n, &[-1, n as i32, 1])?);
        }
    }
    FreeAut::new(n, images, inverse_images)
}
