//! Rewriting along the mod-r homology cover: the kernel N of the map from
//! a rank-n free group onto (Z/r)^n is free of rank m = r^n (n - 1) + 1,
//! with a concrete basis indexed by the non-tree edges of the covering
//! graph. Automorphisms of the base restrict to N because N is
//! characteristic, and the shifted-lift assignment of the presentation
//! generators realizes the outer automorphism group of the base inside the
//! outer automorphism group of N.

use crate::affine::{make_split_params, SplitParams};
use crate::error::{Error, Result};
use crate::parallel;
use crate::presentation::{
    self, Flavor, FormalProduct, FormalProductOps, GenName, OuterAutOps, Report,
};
use crate::word::{FreeAut, Word};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

pub const DEFAULT_MAX_COSETS: u64 = 4096;

fn coset_limit() -> u64 {
    std::env::var("OUTFN_MAX_COSETS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_COSETS)
}

/// Coset structure of N in the rank-n free group: cosets are vectors in
/// (Z/r)^n with representatives a_1^(v_1) ... a_n^(v_n). The spanning tree
/// consists of the edges (v, a_i) with v_i < r - 1 and v_j = 0 for j > i;
/// each remaining edge carries one basis element of N.
#[derive(Clone, Debug)]
pub struct CosetTable {
    n: u32,
    r: u32,
    size: u64,
    m: u32,
    /// One entry per (coset, generator): 0 marks a tree edge, otherwise the
    /// 1-based basis letter of the Schreier generator on that edge.
    edge_basis: Vec<u32>,
    basis: Vec<Word>,
}

impl CosetTable {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        CosetTable::with_limit(n, r, coset_limit())
    }

    pub fn with_limit(n: u32, r: u32, limit: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("rank must be at least 2, got {n}")));
        }
        if r < 2 {
            return Err(Error::Invalid(format!("modulus must be at least 2, got {r}")));
        }
        let size = (u64::from(r) as u128).pow(n);
        if size > u128::from(limit) {
            return Err(Error::ResourceBound {
                what: "cosets",
                got: size.min(u128::from(u64::MAX)) as u64,
                limit,
            });
        }
        let size = size as u64;
        let m_big = size as u128 * (u128::from(n) - 1) + 1;
        if m_big > i32::MAX as u128 {
            return Err(Error::ResourceBound {
                what: "basis rank",
                got: m_big.min(u128::from(u64::MAX)) as u64,
                limit: i32::MAX as u64,
            });
        }
        let m = m_big as u32;
        let mut table = CosetTable {
            n,
            r,
            size,
            m,
            edge_basis: vec![0; (size * u64::from(n)) as usize],
            basis: Vec::with_capacity(m as usize),
        };
        for c in 0..size {
            let v = table.decode(c);
            for i in 1..=n {
                let iz = (i - 1) as usize;
                let tree = v[iz] < r - 1 && v[iz + 1..].iter().all(|&x| x == 0);
                if tree {
                    continue;
                }
                let target = table.step(c, i, true);
                let word = table
                    .rep(c)
                    .multiply(&Word::generator(n, i)?)?
                    .multiply(&table.rep(target).inverse())?;
                table.basis.push(word);
                table.edge_basis[(c * u64::from(n)) as usize + iz] = table.basis.len() as u32;
            }
        }
        debug_assert_eq!(table.basis.len(), m as usize);
        Ok(table)
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.r
    }

    pub fn num_cosets(&self) -> u64 {
        self.size
    }

    /// Rank of the kernel: r^n (n - 1) + 1.
    pub fn basis_rank(&self) -> u32 {
        self.m
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    fn decode(&self, c: u64) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.n as usize);
        let mut rest = c;
        for _ in 0..self.n {
            v.push((rest % u64::from(self.r)) as u32);
            rest /= u64::from(self.r);
        }
        v
    }

    fn step(&self, c: u64, i: u32, forward: bool) -> u64 {
        let mut v = self.decode(c);
        let iz = (i - 1) as usize;
        let r = self.r;
        v[iz] = if forward { (v[iz] + 1) % r } else { (v[iz] + r - 1) % r };
        let mut out = 0u64;
        for &d in v.iter().rev() {
            out = out * u64::from(r) + u64::from(d);
        }
        out
    }

    /// Representative a_1^(v_1) ... a_n^(v_n) of a coset.
    pub fn rep(&self, c: u64) -> Word {
        let v = self.decode(c);
        let mut letters = Vec::new();
        for (iz, &count) in v.iter().enumerate() {
            for _ in 0..count {
                letters.push(iz as i32 + 1);
            }
        }
        Word::new(self.n, &letters).expect("valid representative")
    }

    /// Coset of a word under the exponent map mod r.
    pub fn coset_of(&self, w: &Word) -> Result<u64> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch(self.n, w.rank()));
        }
        let exp = w.exponent_vector();
        let mut out = 0u64;
        for &e in exp.iter().rev() {
            out = out * u64::from(self.r) + e.rem_euclid(i64::from(self.r)) as u64;
        }
        Ok(out)
    }

    /// Rewrites a member of N as a word in the Schreier basis: walk the
    /// letters tracking the coset of the prefix and emit the basis letter of
    /// every non-tree edge crossed.
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        let c = self.coset_of(w)?;
        if c != 0 {
            let exp: Vec<i64> = w
                .exponent_vector()
                .iter()
                .map(|e| e.rem_euclid(i64::from(self.r)))
                .collect();
            return Err(Error::NotInSubgroup {
                vector: exp,
                modulus: u64::from(self.r),
            });
        }
        let mut cur = 0u64;
        let mut letters = Vec::new();
        for &l in w.letters() {
            let i = l.unsigned_abs();
            if l > 0 {
                let e = self.edge_basis[(cur * u64::from(self.n)) as usize + (i - 1) as usize];
                if e != 0 {
                    letters.push(e as i32);
                }
                cur = self.step(cur, i, true);
            } else {
                cur = self.step(cur, i, false);
                let e = self.edge_basis[(cur * u64::from(self.n)) as usize + (i - 1) as usize];
                if e != 0 {
                    letters.push(-(e as i32));
                }
            }
        }
        debug_assert_eq!(cur, 0);
        Word::new(self.m, &letters)
    }

    /// Substitutes basis words for letters: the inverse of rewriting.
    pub fn evaluate(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.m {
            return Err(Error::RankMismatch(self.m, w.rank()));
        }
        let mut acc = Word::identity(self.n);
        for &l in w.letters() {
            let b = &self.basis[(l.unsigned_abs() - 1) as usize];
            let factor = if l > 0 { b.clone() } else { b.inverse() };
            acc = acc.multiply(&factor)?;
        }
        Ok(acc)
    }

    /// Restriction of an automorphism of the base group to N, expressed in
    /// the Schreier basis. N is characteristic, so this is always defined.
    pub fn restrict(&self, phi: &FreeAut) -> Result<FreeAut> {
        if phi.rank() != self.n {
            return Err(Error::RankMismatch(self.n, phi.rank()));
        }
        let inv = phi.inverse();
        let images = parallel::map_collect(&self.basis, |b| {
            self.rewrite(&phi.apply(b).expect("rank checked"))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let inverse_images = parallel::map_collect(&self.basis, |b| {
            self.rewrite(&inv.apply(b).expect("rank checked"))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        FreeAut::new(self.m, images, inverse_images)
    }
}

/// The shifted-lift assignment on presentation generators at the base rank:
/// row transvections stay put, column transvections gain the inner factor
/// a_j^(-s), and the inverter gains a_1^(s).
pub fn section_aut(params: &SplitParams, g: GenName) -> Result<FreeAut> {
    let n = params.n;
    let s = params.s;
    match g {
        GenName::Rho(i, j) => FreeAut::rho(n, i, j),
        GenName::Lambda(i, j) => {
            let twist = FreeAut::conjugation(n, &Word::generator_power(n, j, -s)?)?;
            twist.compose(&FreeAut::lambda(n, i, j)?)
        }
        GenName::Tau => {
            let twist = FreeAut::conjugation(n, &Word::generator_power(n, 1, s)?)?;
            twist.compose(&FreeAut::tau(n)?)
        }
    }
}

/// The embedding data for given (n, r): the coset table, the splitting
/// parameters, and the restriction of every shifted generator lift to the
/// kernel basis.
pub struct EmbedImages {
    pub params: SplitParams,
    pub table: CosetTable,
    pub images: BTreeMap<GenName, FreeAut>,
}

pub fn embed_generators(n: u32, r: u32) -> Result<EmbedImages> {
    let params = make_split_params(n, i64::from(r))?;
    let table = CosetTable::new(n, r)?;
    let gens = presentation::generators(n, Flavor::Out);
    let restricted = parallel::map_collect(&gens, |g| {
        section_aut(&params, *g).and_then(|aut| table.restrict(&aut))
    });
    let mut images = BTreeMap::new();
    for (g, res) in gens.into_iter().zip(restricted) {
        images.insert(g, res?);
    }
    Ok(EmbedImages { params, table, images })
}

/// Checks every relation of the outer presentation at the base rank against
/// the embedded generators, comparing up to inner automorphisms of the
/// kernel. Products are kept formal so composites never materialize.
pub fn verify_embedding(n: u32, r: u32) -> Result<Report> {
    let embed = embed_generators(n, r)?;
    let m = embed.table.basis_rank();
    let ops = FormalProductOps { rank: m, outer: true };
    let assign = |g: GenName| -> Option<FormalProduct> {
        embed
            .images
            .get(&g)
            .map(|aut| FormalProduct(vec![(Arc::new(aut.clone()), false)]))
    };
    presentation::verify_assignment(n, Flavor::Out, &ops, &assign)
}

/// The composite of the inner-product word under the embedding, evaluated
/// exactly. It equals conjugation by the rewritten word a_1^(-t r).
pub fn embedded_product_conjugator(n: u32, r: u32) -> Result<(FreeAut, Word)> {
    let embed = embed_generators(n, r)?;
    let m = embed.table.basis_rank();
    let mut acc = FreeAut::identity(m);
    for i in 2..=n {
        let rho = embed.images.get(&GenName::Rho(i, 1)).expect("generator present");
        let lam = embed.images.get(&GenName::Lambda(i, 1)).expect("generator present");
        acc = acc.compose(rho)?.compose(&lam.inverse())?;
    }
    let conj_word = Word::generator_power(n, 1, -embed.params.t * i64::from(r))?;
    let expected = embed.table.rewrite(&conj_word)?;
    Ok((acc, expected))
}

/// Reading of the printed rank-2 embedding table: the column transvection
/// on the second letter is stated as a conjugate of the wrong row
/// transvection; `Corrected` swaps in the matching one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum RemarkReading {
    AsPrinted,
    Corrected,
}

/// The explicit rank-5 images of the rank-2 presentation generators, as
/// printed, over the basis letters a..e (1..5).
pub fn remark_assignment(reading: RemarkReading) -> Result<BTreeMap<GenName, FreeAut>> {
    let w = |letters: &[i32]| Word::new(5, letters);
    let rho12 = FreeAut::new(
        5,
        vec![w(&[4, 2])?, w(&[2])?, w(&[3])?, w(&[5, 1])?, w(&[5])?],
        vec![w(&[-5, 4])?, w(&[2])?, w(&[3])?, w(&[1, -2])?, w(&[5])?],
    )?;
    let rho21 = FreeAut::new(
        5,
        vec![w(&[1])?, w(&[3, 5, 1])?, w(&[3])?, w(&[4])?, w(&[4, 2])?],
        vec![w(&[1])?, w(&[-4, 5])?, w(&[3])?, w(&[4])?, w(&[-3, 2, -1])?],
    )?;
    let tau_images = vec![w(&[-1])?, w(&[5])?, w(&[-3])?, w(&[-4])?, w(&[2])?];
    let tau = FreeAut::new(5, tau_images.clone(), tau_images)?;
    let conj_a = FreeAut::conjugation(5, &Word::generator(5, 1)?)?;
    let conj_b = FreeAut::conjugation(5, &Word::generator(5, 2)?)?;
    let lambda12 = conj_b.compose(&rho12)?;
    let lambda21 = match reading {
        RemarkReading::AsPrinted => conj_a.compose(&rho12)?,
        RemarkReading::Corrected => conj_a.compose(&rho21)?,
    };
    let mut map = BTreeMap::new();
    map.insert(GenName::Rho(1, 2), rho12);
    map.insert(GenName::Rho(2, 1), rho21);
    map.insert(GenName::Lambda(1, 2), lambda12);
    map.insert(GenName::Lambda(2, 1), lambda21);
    map.insert(GenName::Tau, tau);
    Ok(map)
}

/// Runs the rank-2 outer relation suite against the printed table, compared
/// up to inner automorphisms at rank 5.
pub fn check_remark(reading: RemarkReading) -> Result<Report> {
    let map = remark_assignment(reading)?;
    let ops = OuterAutOps { rank: 5 };
    presentation::verify_assignment(2, Flavor::Out, &ops, &|g| map.get(&g).cloned())
}
