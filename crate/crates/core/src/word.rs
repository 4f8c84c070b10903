//! Reduced words in a free group of finite rank and automorphisms given by
//! generator images. Letters are nonzero signed indices: `k` is the k-th
//! generator, `-k` its inverse. Words are kept freely reduced at all times.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A freely reduced word in the free group of the given rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    rank: u32,
    letters: Vec<i32>,
}

fn push_reduced(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl Word {
    /// The empty word.
    pub fn identity(rank: u32) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Builds a word from raw letters, validating and freely reducing.
    pub fn new(rank: u32, letters: &[i32]) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() > rank {
                return Err(Error::LetterOutOfRange { letter: l, rank });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    /// The single-letter word a_i (1-based).
    pub fn generator(rank: u32, i: u32) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        Ok(Word {
            rank,
            letters: vec![i as i32],
        })
    }

    /// The word a_i^e.
    pub fn generator_power(rank: u32, i: u32, e: i64) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        let letter = if e >= 0 { i as i32 } else { -(i as i32) };
        Ok(Word {
            rank,
            letters: vec![letter; e.unsigned_abs() as usize],
        })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when the word is the single positive letter a_i.
    pub fn is_generator(&self, i: u32) -> bool {
        self.letters.len() == 1 && self.letters[0] == i as i32
    }

    /// Concatenation followed by free reduction.
    pub fn multiply(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let mut out = self.letters.clone();
        out.reserve(other.letters.len());
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Word {
            rank: self.rank,
            letters: out,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            out = out.multiply(&base).expect("equal ranks");
        }
        out
    }

    /// w * self * w^-1.
    pub fn conjugated_by(&self, w: &Word) -> Result<Word> {
        w.multiply(self)?.multiply(&w.inverse())
    }

    /// Exponent sum of each generator, as a column vector.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank as usize];
        for &l in &self.letters {
            let i = (l.unsigned_abs() - 1) as usize;
            v[i] += l.signum() as i64;
        }
        v
    }

    /// Splits `self = c * core * c^-1` with `core` cyclically reduced.
    pub fn cyclic_split(&self) -> (Word, Word) {
        let ls = &self.letters;
        let mut i = 0usize;
        let mut j = ls.len();
        while j - i >= 2 && ls[i] == -ls[j - 1] {
            i += 1;
            j -= 1;
        }
        let conj = Word {
            rank: self.rank,
            letters: ls[..i].to_vec(),
        };
        let core = Word {
            rank: self.rank,
            letters: ls[i..j].to_vec(),
        };
        (conj, core)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut idx = 0;
        while idx < self.letters.len() {
            let l = self.letters[idx];
            let mut run = 1;
            while idx + run < self.letters.len() && self.letters[idx + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = l.signum() as i64 * run as i64;
            if e == 1 {
                write!(f, "a{}", l.unsigned_abs())?;
            } else {
                write!(f, "a{}^{}", l.unsigned_abs(), e)?;
            }
            idx += run;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.letters.len()))?;
        for l in &self.letters {
            seq.serialize_element(l)?;
        }
        seq.end()
    }
}

fn apply_images_to(images: &[Word], w: &Word, out_rank: u32) -> Word {
    let mut out: Vec<i32> = Vec::new();
    for &l in w.letters() {
        let img = &images[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            for &m in img.letters() {
                push_reduced(&mut out, m);
            }
        } else {
            for &m in img.letters().iter().rev() {
                push_reduced(&mut out, -m);
            }
        }
    }
    Word {
        rank: out_rank,
        letters: out,
    }
}

/// An automorphism of a free group, certified at construction by a full set
/// of inverse images. Both composites are checked to be the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeAut {
    rank: u32,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl FreeAut {
    pub fn new(rank: u32, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self> {
        if images.len() != rank as usize || inverse_images.len() != rank as usize {
            return Err(Error::NotAutomorphism(format!(
                "expected {} images and {} inverse images, got {} and {}",
                rank,
                rank,
                images.len(),
                inverse_images.len()
            )));
        }
        for w in images.iter().chain(inverse_images.iter()) {
            if w.rank() != rank {
                return Err(Error::RankMismatch(rank, w.rank()));
            }
        }
        let aut = FreeAut {
            rank,
            images,
            inverse_images,
        };
        for i in 1..=rank {
            let g = Word::generator(rank, i)?;
            let fwd = apply_images_to(&aut.images, &aut.inverse_images[(i - 1) as usize], rank);
            if fwd != g {
                return Err(Error::NotAutomorphism(format!(
                    "images(inverse_images(a{i})) = {fwd}, not a{i}"
                )));
            }
            let back = apply_images_to(&aut.inverse_images, &aut.images[(i - 1) as usize], rank);
            if back != g {
                return Err(Error::NotAutomorphism(format!(
                    "inverse_images(images(a{i})) = {back}, not a{i}"
                )));
            }
        }
        Ok(aut)
    }

    fn new_unchecked(rank: u32, images: Vec<Word>, inverse_images: Vec<Word>) -> Self {
        debug_assert!(
            FreeAut::new(rank, images.clone(), inverse_images.clone()).is_ok(),
            "unchecked FreeAut failed certification"
        );
        FreeAut {
            rank,
            images,
            inverse_images,
        }
    }

    pub fn identity(rank: u32) -> Self {
        let gens: Vec<Word> = (1..=rank)
            .map(|i| Word::generator(rank, i).expect("valid index"))
            .collect();
        FreeAut {
            rank,
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    /// Right transvection: a_i -> a_i a_j, other generators fixed.
    pub fn rho(rank: u32, i: u32, j: u32) -> Result<Self> {
        if i == j {
            return Err(Error::Invalid(format!("rho indices must differ, got ({i}, {j})")));
        }
        let mut images = FreeAut::identity(rank).images;
        let mut inv = images.clone();
        let gi = Word::generator(rank, i)?;
        let gj = Word::generator(rank, j)?;
        images[(i - 1) as usize] = gi.multiply(&gj)?;
        inv[(i - 1) as usize] = gi.multiply(&gj.inverse())?;
        Ok(FreeAut::new_unchecked(rank, images, inv))
    }

    /// Left transvection: a_i -> a_j a_i, other generators fixed.
    pub fn lambda(rank: u32, i: u32, j: u32) -> Result<Self> {
        if i == j {
            return Err(Error::Invalid(format!(
                "lambda indices must differ, got ({i}, {j})"
            )));
        }
        let mut images = FreeAut::identity(rank).images;
        let mut inv = images.clone();
        let gi = Word::generator(rank, i)?;
        let gj = Word::generator(rank, j)?;
        images[(i - 1) as usize] = gj.multiply(&gi)?;
        inv[(i - 1) as usize] = gj.inverse().multiply(&gi)?;
        Ok(FreeAut::new_unchecked(rank, images, inv))
    }

    /// Inverts the first generator; all others fixed.
    pub fn tau(rank: u32) -> Result<Self> {
        FreeAut::epsilon(rank, 1)
    }

    /// Inverts a_i; all others fixed.
    pub fn epsilon(rank: u32, i: u32) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        let mut images = FreeAut::identity(rank).images;
        images[(i - 1) as usize] = Word::generator(rank, i)?.inverse();
        Ok(FreeAut::new_unchecked(rank, images.clone(), images))
    }

    /// Permutation automorphism; `perm[i-1]` is the image index of a_i.
    pub fn permutation(rank: u32, perm: &[u32]) -> Result<Self> {
        if perm.len() != rank as usize {
            return Err(Error::Invalid(format!(
                "permutation length {} does not match rank {rank}",
                perm.len()
            )));
        }
        let mut seen = vec![false; rank as usize];
        for &p in perm {
            if p == 0 || p > rank || seen[(p - 1) as usize] {
                return Err(Error::Invalid(format!("not a permutation: {perm:?}")));
            }
            seen[(p - 1) as usize] = true;
        }
        let images: Vec<Word> = perm
            .iter()
            .map(|&p| Word::generator(rank, p).expect("checked"))
            .collect();
        let mut inv_perm = vec![0u32; rank as usize];
        for (i, &p) in perm.iter().enumerate() {
            inv_perm[(p - 1) as usize] = i as u32 + 1;
        }
        let inverse_images: Vec<Word> = inv_perm
            .iter()
            .map(|&p| Word::generator(rank, p).expect("checked"))
            .collect();
        Ok(FreeAut::new_unchecked(rank, images, inverse_images))
    }

    /// Inner automorphism x -> w x w^-1.
    pub fn conjugation(rank: u32, w: &Word) -> Result<Self> {
        if w.rank() != rank {
            return Err(Error::RankMismatch(rank, w.rank()));
        }
        let mut images = Vec::with_capacity(rank as usize);
        let mut inverse_images = Vec::with_capacity(rank as usize);
        for i in 1..=rank {
            let g = Word::generator(rank, i)?;
            images.push(g.conjugated_by(w)?);
            inverse_images.push(g.conjugated_by(&w.inverse())?);
        }
        Ok(FreeAut::new_unchecked(rank, images, inverse_images))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, w.rank()));
        }
        Ok(apply_images_to(&self.images, w, self.rank))
    }

    fn apply_inverse(&self, w: &Word) -> Word {
        apply_images_to(&self.inverse_images, w, self.rank)
    }

    /// (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &FreeAut) -> Result<FreeAut> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let images: Vec<Word> = other
            .images
            .iter()
            .map(|w| apply_images_to(&self.images, w, self.rank))
            .collect();
        let inverse_images: Vec<Word> = self
            .inverse_images
            .iter()
            .map(|w| other.apply_inverse(w))
            .collect();
        Ok(FreeAut::new_unchecked(self.rank, images, inverse_images))
    }

    pub fn inverse(&self) -> FreeAut {
        FreeAut {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// Evaluates a product of automorphisms (each factor optionally inverted)
    /// by tracking generator images only, never the intermediate composites.
    /// The product f_1 f_2 ... f_k acts by f_1(f_2(...f_k(x))).
    pub fn evaluate_product(rank: u32, factors: &[(&FreeAut, bool)]) -> Result<FreeAut> {
        for (f, _) in factors {
            if f.rank() != rank {
                return Err(Error::RankMismatch(rank, f.rank()));
            }
        }
        let mut images = FreeAut::identity(rank).images;
        for (f, inverted) in factors.iter().rev() {
            for w in images.iter_mut() {
                *w = if *inverted {
                    f.apply_inverse(w)
                } else {
                    apply_images_to(&f.images, w, rank)
                };
            }
        }
        let mut inverse_images = FreeAut::identity(rank).images;
        for (f, inverted) in factors.iter() {
            for w in inverse_images.iter_mut() {
                *w = if *inverted {
                    apply_images_to(&f.images, w, rank)
                } else {
                    f.apply_inverse(w)
                };
            }
        }
        Ok(FreeAut::new_unchecked(rank, images, inverse_images))
    }

    pub fn pow(&self, e: i64) -> FreeAut {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = FreeAut::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            out = out.compose(&base).expect("equal ranks");
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.is_generator(i as u32 + 1))
    }

    /// If self is conjugation by some w (that is, x -> w x w^-1 for all x),
    /// returns w. The search is bounded: any conjugator must be c * a_l^k
    /// where c conjugates the first moved generator image to its cyclically
    /// reduced core, because the centralizer of a generator is the cyclic
    /// group it generates.
    pub fn as_inner(&self) -> Option<Word> {
        let rank = self.rank;
        let moved = (1..=rank).find(|&i| !self.images[(i - 1) as usize].is_generator(i));
        let l = match moved {
            None => return Some(Word::identity(rank)),
            Some(l) => l,
        };
        if rank == 1 {
            return None;
        }
        let g_l = &self.images[(l - 1) as usize];
        let (conj, core) = g_l.cyclic_split();
        if !core.is_generator(l) {
            return None;
        }
        let max_len = self.images.iter().map(|w| w.len()).max().unwrap_or(0);
        let bound = (max_len + conj.len() + 2) as i64;
        let al = Word::generator(rank, l).expect("valid");
        for k in -bound..=bound {
            let w = conj.multiply(&al.pow(k)).expect("equal ranks");
            let ok = (1..=rank).all(|i| {
                let g = Word::generator(rank, i).expect("valid");
                g.conjugated_by(&w).expect("equal ranks") == self.images[(i - 1) as usize]
            });
            if ok {
                return Some(w);
            }
        }
        None
    }

    /// Equality of outer classes: self = inner . other for some inner.
    pub fn equal_in_out(&self, other: &FreeAut) -> Result<bool> {
        Ok(self.compose(&other.inverse())?.as_inner().is_some())
    }

    /// Induced matrix on abelianized exponent columns: column j is the
    /// exponent vector of the image of a_j.
    pub fn abelianize(&self) -> IntMatrix {
        let n = self.rank as usize;
        let mut m = IntMatrix::zeros(n, n);
        for (j, w) in self.images.iter().enumerate() {
            for (i, &e) in w.exponent_vector().iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }
}

#[derive(Serialize, Deserialize)]
struct FreeAutRaw {
    rank: u32,
    images: Vec<Vec<i32>>,
    inverse_images: Vec<Vec<i32>>,
}

impl Serialize for FreeAut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = FreeAutRaw {
            rank: self.rank,
            images: self.images.iter().map(|w| w.letters().to_vec()).collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| w.letters().to_vec())
                .collect(),
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeAut {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FreeAutRaw::deserialize(d)?;
        let build = |ls: Vec<Vec<i32>>| -> Result<Vec<Word>> {
            ls.iter().map(|l| Word::new(raw.rank, l)).collect()
        };
        let images = build(raw.images).map_err(serde::de::Error::custom)?;
        let inverse_images = build(raw.inverse_images).map_err(serde::de::Error::custom)?;
        FreeAut::new(raw.rank, images, inverse_images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(rank: u32, ls: &[i32]) -> Word {
        Word::new(rank, ls).unwrap()
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        assert_eq!(w(2, &[1, -1, 2]).letters(), &[2]);
        assert_eq!(w(2, &[1, 2, -2, -1]).letters(), &[] as &[i32]);
        assert_eq!(w(3, &[1, 2, -2, 2]).letters(), &[1, 2]);
    }

    #[test]
    fn letter_validation() {
        assert!(Word::new(2, &[0]).is_err());
        assert!(Word::new(2, &[3]).is_err());
        assert!(Word::new(2, &[-3]).is_err());
        assert!(Word::new(2, &[2, -2]).is_ok());
    }

    #[test]
    fn multiply_and_invert_round_trip() {
        let u = w(3, &[1, 2, -3]);
        let prod = u.multiply(&u.inverse()).unwrap();
        assert!(prod.is_identity());
        assert!(u.multiply(&w(2, &[1])).is_err());
    }

    #[test]
    fn cyclic_split_recovers_word() {
        let u = w(3, &[1, 2, 3, -2, -1]);
        let (c, core) = u.cyclic_split();
        assert_eq!(c.letters(), &[1, 2]);
        assert_eq!(core.letters(), &[3]);
        assert_eq!(core.conjugated_by(&c).unwrap(), u);
    }

    #[test]
    fn display_groups_runs() {
        assert_eq!(w(2, &[1, 1, -2]).to_string(), "a1^2 a2^-1");
        assert_eq!(Word::identity(2).to_string(), "1");
    }

    #[test]
    fn elementary_images() {
        let rho = FreeAut::rho(2, 1, 2).unwrap();
        assert_eq!(rho.images()[0].letters(), &[1, 2]);
        assert_eq!(rho.images()[1].letters(), &[2]);
        let lam = FreeAut::lambda(2, 1, 2).unwrap();
        assert_eq!(lam.images()[0].letters(), &[2, 1]);
        let tau = FreeAut::tau(2).unwrap();
        assert_eq!(tau.images()[0].letters(), &[-1]);
        assert!(tau.compose(&tau).unwrap().is_identity());
        assert!(FreeAut::rho(3, 2, 2).is_err());
    }

    #[test]
    fn apply_is_substitution() {
        let rho = FreeAut::rho(2, 1, 2).unwrap();
        assert_eq!(rho.apply(&w(2, &[1, 2])).unwrap().letters(), &[1, 2, 2]);
        assert_eq!(rho.apply(&w(2, &[-1])).unwrap().letters(), &[-2, -1]);
    }

    #[test]
    fn certification_rejects_non_inverse_pairs() {
        let rank = 2;
        let images = vec![w(2, &[1, 2]), w(2, &[2])];
        let bad_inv = vec![w(2, &[1]), w(2, &[2])];
        assert!(FreeAut::new(rank, images, bad_inv).is_err());
    }

    #[test]
    fn compose_against_hand_value() {
        // rho_21 . lambda_21^-1 sends a_2 -> a_1^-1 a_2 a_1.
        let rho = FreeAut::rho(2, 2, 1).unwrap();
        let lam_inv = FreeAut::lambda(2, 2, 1).unwrap().inverse();
        let comp = rho.compose(&lam_inv).unwrap();
        assert_eq!(comp.images()[1].letters(), &[-1, 2, 1]);
    }

    #[test]
    fn as_inner_finds_conjugator() {
        let n = 3;
        // prod_{i=2..n} rho_i1 lambda_i1^-1 is conjugation by a_1^-1.
        let mut prod = FreeAut::identity(n);
        for i in 2..=n {
            let step = FreeAut::rho(n, i, 1)
                .unwrap()
                .compose(&FreeAut::lambda(n, i, 1).unwrap().inverse())
                .unwrap();
            prod = prod.compose(&step).unwrap();
        }
        let inner = prod.as_inner().expect("inner");
        assert_eq!(inner.letters(), &[-1]);
    }

    #[test]
    fn as_inner_rejects_non_inner() {
        let swap = FreeAut::permutation(2, &[2, 1]).unwrap();
        assert!(swap.as_inner().is_none());
        assert!(FreeAut::rho(2, 1, 2).unwrap().as_inner().is_none());
        assert!(FreeAut::identity(4).as_inner().unwrap().is_identity());
    }

    #[test]
    fn rho_and_lambda_agree_in_out() {
        // lambda_12 = (inner by a_2) . rho_12, so they are equal as outer classes.
        let rho = FreeAut::rho(2, 1, 2).unwrap();
        let lam = FreeAut::lambda(2, 1, 2).unwrap();
        assert!(rho.equal_in_out(&lam).unwrap());
        assert!(!rho.equal_in_out(&FreeAut::rho(2, 2, 1).unwrap()).unwrap());
    }

    #[test]
    fn abelianize_elementary() {
        let m = FreeAut::rho(2, 1, 2).unwrap().abelianize();
        assert_eq!(m.row(0), &[1, 0]);
        assert_eq!(m.row(1), &[1, 1]);
        assert_eq!(m.det().unwrap(), 1);
        let t = FreeAut::tau(3).unwrap().abelianize();
        assert_eq!(t.row(0), &[-1, 0, 0]);
        assert_eq!(t.det().unwrap(), -1);
    }

    #[test]
    fn evaluate_product_matches_composition() {
        let n = 3;
        let a = FreeAut::rho(n, 1, 2).unwrap();
        let b = FreeAut::lambda(n, 2, 3).unwrap();
        let c = FreeAut::tau(n).unwrap();
        let lazy = FreeAut::evaluate_product(n, &[(&a, false), (&b, true), (&c, false)]).unwrap();
        let eager = a.compose(&b.inverse()).unwrap().compose(&c).unwrap();
        assert_eq!(lazy, eager);
        assert!(FreeAut::evaluate_product(n, &[(&a, false), (&a, true)])
            .unwrap()
            .is_identity());
        assert!(FreeAut::evaluate_product(n, &[]).unwrap().is_identity());
        let wrong_rank = FreeAut::rho(2, 1, 2).unwrap();
        assert!(FreeAut::evaluate_product(n, &[(&wrong_rank, false)]).is_err());
    }

    #[test]
    fn serde_round_trip_validates() {
        let rho = FreeAut::rho(2, 1, 2).unwrap();
        let js = serde_json::to_string(&rho).unwrap();
        let back: FreeAut = serde_json::from_str(&js).unwrap();
        assert_eq!(back, rho);
        let bad = r#"{"rank":2,"images":[[1],[2]],"inverse_images":[[1,2],[2]]}"#;
        assert!(serde_json::from_str::<FreeAut>(bad).is_err());
    }

    fn arb_word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(
            (1..=rank as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]),
            0..max_len,
        )
        .prop_map(move |ls| Word::new(rank, &ls).unwrap())
    }

    fn arb_aut(rank: u32) -> impl Strategy<Value = FreeAut> {
        let elem = (1..=rank, 1..=rank, 0..4u8).prop_filter_map("distinct", move |(i, j, kind)| {
            match kind {
                0 if i != j => Some(FreeAut::rho(rank, i, j).unwrap()),
                1 if i != j => Some(FreeAut::lambda(rank, i, j).unwrap()),
                2 => Some(FreeAut::epsilon(rank, i).unwrap()),
                3 => Some(FreeAut::identity(rank)),
                _ => None,
            }
        });
        prop::collection::vec(elem, 0..5).prop_map(move |auts| {
            auts.iter()
                .fold(FreeAut::identity(rank), |acc, a| acc.compose(a).unwrap())
        })
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(word in arb_word(3, 24)) {
            let again = Word::new(3, word.letters()).unwrap();
            prop_assert_eq!(again, word);
        }

        #[test]
        fn multiplication_associates(u in arb_word(3, 12), v in arb_word(3, 12), t in arb_word(3, 12)) {
            let uv_t = u.multiply(&v).unwrap().multiply(&t).unwrap();
            let u_vt = u.multiply(&v.multiply(&t).unwrap()).unwrap();
            prop_assert_eq!(uv_t, u_vt);
        }

        #[test]
        fn inverse_cancels(u in arb_word(3, 16)) {
            prop_assert!(u.multiply(&u.inverse()).unwrap().is_identity());
            prop_assert!(u.inverse().multiply(&u).unwrap().is_identity());
        }

        #[test]
        fn apply_is_homomorphism(phi in arb_aut(3), u in arb_word(3, 10), v in arb_word(3, 10)) {
            let lhs = phi.apply(&u.multiply(&v).unwrap()).unwrap();
            let rhs = phi.apply(&u).unwrap().multiply(&phi.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_matches_pointwise(phi in arb_aut(3), psi in arb_aut(3), u in arb_word(3, 10)) {
            let lhs = phi.compose(&psi).unwrap().apply(&u).unwrap();
            let rhs = phi.apply(&psi.apply(&u).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn abelianize_is_functorial(phi in arb_aut(3), psi in arb_aut(3)) {
            let lhs = phi.compose(&psi).unwrap().abelianize();
            let rhs = phi.abelianize().multiply(&psi.abelianize()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inner_detection_round_trip(conj in arb_word(3, 8)) {
            let inner = FreeAut::conjugation(3, &conj).unwrap();
            let found = inner.as_inner().expect("conjugation is inner");
            for i in 1..=3u32 {
                let g = Word::generator(3, i).unwrap();
                prop_assert_eq!(
                    g.conjugated_by(&found).unwrap(),
                    g.conjugated_by(&conj).unwrap()
                );
            }
        }

        #[test]
        fn inner_implies_trivial_abelianization(conj in arb_word(3, 8)) {
            let inner = FreeAut::conjugation(3, &conj).unwrap();
            prop_assert!(inner.abelianize().is_identity());
        }
    }
}
