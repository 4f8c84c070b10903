//! Finite presentations of the special, full, and outer automorphism groups
//! of a free group on the transvection generators, with a generic verifier:
//! any target group that can multiply, invert, and test identity can be
//! checked against the relation families.

use crate::error::{Error, Result};
use crate::parallel;
use crate::word::FreeAut;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Which presentation to use: transvections only, with the inverting
/// generator, or with the inverting generator plus the inner-product relation
/// that collapses to the outer quotient.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Saut,
    Aut,
    Out,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Saut => write!(f, "saut"),
            Flavor::Aut => write!(f, "aut"),
            Flavor::Out => write!(f, "out"),
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "saut" => Ok(Flavor::Saut),
            "aut" => Ok(Flavor::Aut),
            "out" => Ok(Flavor::Out),
            other => Err(Error::Parse(format!("unknown flavor: {other}"))),
        }
    }
}

/// Presentation generator names. `Rho(i, j)` sends a_i to a_i a_j,
/// `Lambda(i, j)` sends a_i to a_j a_i, `Tau` inverts a_1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum GenName {
    Rho(u32, u32),
    Lambda(u32, u32),
    Tau,
}

impl fmt::Display for GenName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenName::Rho(i, j) => write!(f, "r {i} {j}"),
            GenName::Lambda(i, j) => write!(f, "l {i} {j}"),
            GenName::Tau => write!(f, "t"),
        }
    }
}

impl FromStr for GenName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let pair = |parts: &[&str]| -> Result<(u32, u32)> {
            let i = parts[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in generator name: {s}")))?;
            let j = parts[2]
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in generator name: {s}")))?;
            Ok((i, j))
        };
        match parts.as_slice() {
            ["t"] => Ok(GenName::Tau),
            ["r", _, _] => pair(&parts).map(|(i, j)| GenName::Rho(i, j)),
            ["l", _, _] => pair(&parts).map(|(i, j)| GenName::Lambda(i, j)),
            _ => Err(Error::Parse(format!("unknown generator name: {s}"))),
        }
    }
}

impl Serialize for GenName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GenName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A word in the presentation generators: (name, exponent) factors.
pub type RelWord = Vec<(GenName, i32)>;

/// Orientation of commutators when materializing relation words.
/// `Printed` is [a, b] = a b a^-1 b^-1; `Transposed` is a^-1 b^-1 a b.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convention {
    Printed,
    Transposed,
}

/// One relation instance, materialized as a word that must evaluate to the
/// identity of the target group.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub family: u8,
    pub form: u8,
    pub indices: Vec<u32>,
    pub word: RelWord,
    pub display: String,
}

fn inv_word(w: &RelWord) -> RelWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn commutator(a: RelWord, b: RelWord, conv: Convention) -> RelWord {
    let (ai, bi) = (inv_word(&a), inv_word(&b));
    let mut out = Vec::new();
    match conv {
        Convention::Printed => {
            out.extend(a);
            out.extend(b);
            out.extend(ai);
            out.extend(bi);
        }
        Convention::Transposed => {
            out.extend(ai);
            out.extend(bi);
            out.extend(a);
            out.extend(b);
        }
    }
    out
}

fn display_word(w: &RelWord) -> String {
    w.iter()
        .map(|(g, e)| {
            let name = match g {
                GenName::Rho(i, j) => format!("r{i}{j}"),
                GenName::Lambda(i, j) => format!("l{i}{j}"),
                GenName::Tau => "t".to_string(),
            };
            if *e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Presentation generators for the given rank and flavor, in a fixed order.
pub fn generators(rank: u32, flavor: Flavor) -> Vec<GenName> {
    let mut out = Vec::new();
    for i in 1..=rank {
        for j in 1..=rank {
            if i != j {
                out.push(GenName::Rho(i, j));
            }
        }
    }
    for i in 1..=rank {
        for j in 1..=rank {
            if i != j {
                out.push(GenName::Lambda(i, j));
            }
        }
    }
    if flavor != Flavor::Saut {
        out.push(GenName::Tau);
    }
    out
}

/// All relation instances for the given rank and flavor under the printed
/// commutator orientation.
pub fn relations(rank: u32, flavor: Flavor) -> Vec<Relation> {
    relations_with_convention(rank, flavor, Convention::Printed)
}

/// Relation families:
///   (1) commuting transvections, three type combinations;
///   (2) row transvections with a shared moving index commute;
///   (3) and (4) partial-commutation identities producing a third transvection;
///   (5) the mixed braid-like identity; (6) its fourth-power twist;
///   (7)-(10) behavior of the inverting generator;
///   (11) the product of row moves equal to an inner factor, trivial in the
///        outer quotient.
pub fn relations_with_convention(rank: u32, flavor: Flavor, conv: Convention) -> Vec<Relation> {
    let n = rank;
    let mut rels: Vec<Relation> = Vec::new();
    let mut push = |family: u8, form: u8, indices: Vec<u32>, word: RelWord| {
        let display = format!("({family}.{form}) {}", display_word(&word));
        rels.push(Relation {
            family,
            form,
            indices,
            word,
            display,
        });
    };
    let r = |i, j| vec![(GenName::Rho(i, j), 1)];
    let l = |i, j| vec![(GenName::Lambda(i, j), 1)];
    let rp = |i, j, e| vec![(GenName::Rho(i, j), e)];
    let lp = |i, j, e| vec![(GenName::Lambda(i, j), e)];

    // (1): [x_ij, y_kl] = 1 when i != k, i != l, j != k, for x, y in {r, l}
    // except the mixed pair with roles swapped, which is family (2)'s scope.
    for i in 1..=n {
        for j in 1..=n {
            if j == i {
                continue;
            }
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                for lx in 1..=n {
                    if lx == k || lx == i {
                        continue;
                    }
                    push(1, 0, vec![i, j, k, lx], commutator(r(i, j), r(k, lx), conv));
                    push(1, 1, vec![i, j, k, lx], commutator(r(i, j), l(k, lx), conv));
                    push(1, 2, vec![i, j, k, lx], commutator(l(i, j), l(k, lx), conv));
                }
            }
        }
    }

    // (2): [r_ij, l_ik] = 1 for all j, k different from i (j = k allowed).
    for i in 1..=n {
        for j in 1..=n {
            if j == i {
                continue;
            }
            for k in 1..=n {
                if k == i {
                    continue;
                }
                push(2, 0, vec![i, j, k], commutator(r(i, j), l(i, k), conv));
            }
        }
    }

    // (3) and (4): for pairwise distinct (i, j, k).
    for i in 1..=n {
        for j in 1..=n {
            if j == i {
                continue;
            }
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let mut w30 = commutator(rp(i, j, -1), rp(j, k, -1), conv);
                w30.extend(r(i, k));
                push(3, 0, vec![i, j, k], w30);
                let mut w31 = commutator(r(i, j), l(j, k), conv);
                w31.extend(r(i, k));
                push(3, 1, vec![i, j, k], w31);
                let mut w32 = commutator(rp(i, j, -1), r(j, k), conv);
                w32.extend(rp(i, k, -1));
                push(3, 2, vec![i, j, k], w32);
                let mut w33 = commutator(r(i, j), lp(j, k, -1), conv);
                w33.extend(rp(i, k, -1));
                push(3, 3, vec![i, j, k], w33);

                let mut w40 = commutator(lp(i, j, -1), lp(j, k, -1), conv);
                w40.extend(l(i, k));
                push(4, 0, vec![i, j, k], w40);
                let mut w41 = commutator(l(i, j), r(j, k), conv);
                w41.extend(l(i, k));
                push(4, 1, vec![i, j, k], w41);
                let mut w42 = commutator(lp(i, j, -1), l(j, k), conv);
                w42.extend(lp(i, k, -1));
                push(4, 2, vec![i, j, k], w42);
                let mut w43 = commutator(l(i, j), rp(j, k, -1), conv);
                w43.extend(lp(i, k, -1));
                push(4, 3, vec![i, j, k], w43);
            }
        }
    }

    // (5): l_ij l_ji^-1 r_ij = r_ij r_ji^-1 l_ij; (6): (r_ij r_ji^-1 l_ij)^4 = 1.
    for i in 1..=n {
        for j in 1..=n {
            if j == i {
                continue;
            }
            let lhs = vec![
                (GenName::Lambda(i, j), 1),
                (GenName::Lambda(j, i), -1),
                (GenName::Rho(i, j), 1),
            ];
            let rhs = vec![
                (GenName::Rho(i, j), 1),
                (GenName::Rho(j, i), -1),
                (GenName::Lambda(i, j), 1),
            ];
            let mut w5 = lhs.clone();
            w5.extend(inv_word(&rhs));
            push(5, 0, vec![i, j], w5);
            let mut w6 = Vec::new();
            for _ in 0..4 {
                w6.extend(rhs.clone());
            }
            push(6, 0, vec![i, j], w6);
        }
    }

    if flavor == Flavor::Saut {
        return rels;
    }

    // (7): t^2 = 1.
    push(7, 0, vec![], vec![(GenName::Tau, 2)]);

    // (8): t r_1j t = l_1j^-1 and t l_1j t = r_1j^-1, j != 1.
    for j in 2..=n {
        push(
            8,
            0,
            vec![j],
            vec![
                (GenName::Tau, 1),
                (GenName::Rho(1, j), 1),
                (GenName::Tau, 1),
                (GenName::Lambda(1, j), 1),
            ],
        );
        push(
            8,
            1,
            vec![j],
            vec![
                (GenName::Tau, 1),
                (GenName::Lambda(1, j), 1),
                (GenName::Tau, 1),
                (GenName::Rho(1, j), 1),
            ],
        );
    }

    // (9): t r_i1 t = r_i1^-1 and t l_i1 t = l_i1^-1, i != 1.
    for i in 2..=n {
        push(
            9,
            0,
            vec![i],
            vec![
                (GenName::Tau, 1),
                (GenName::Rho(i, 1), 1),
                (GenName::Tau, 1),
                (GenName::Rho(i, 1), 1),
            ],
        );
        push(
            9,
            1,
            vec![i],
            vec![
                (GenName::Tau, 1),
                (GenName::Lambda(i, 1), 1),
                (GenName::Tau, 1),
                (GenName::Lambda(i, 1), 1),
            ],
        );
    }

    // (10): [t, r_ij] = [t, l_ij] = 1 for i, j both different from 1.
    for i in 2..=n {
        for j in 2..=n {
            if j == i {
                continue;
            }
            push(10, 0, vec![i, j], commutator(vec![(GenName::Tau, 1)], r(i, j), conv));
            push(10, 1, vec![i, j], commutator(vec![(GenName::Tau, 1)], l(i, j), conv));
        }
    }

    if flavor == Flavor::Aut {
        return rels;
    }

    // (11): prod_{i=2..n} r_i1 l_i1^-1 = 1 in the outer quotient.
    let mut w11 = Vec::new();
    for i in 2..=n {
        w11.push((GenName::Rho(i, 1), 1));
        w11.push((GenName::Lambda(i, 1), -1));
    }
    push(11, 0, (2..=n).collect(), w11);

    rels
}

/// Closed-form instance count, kept in sync with the enumeration above and
/// checked by an independent recount in tests.
pub fn relation_count(rank: u32, flavor: Flavor) -> usize {
    let n = rank as usize;
    let saut = 3 * n * (n - 1) * (n - 2) * (n - 2)
        + n * (n - 1) * (n - 1)
        + 8 * n * (n - 1) * (n - 2)
        + 2 * n * (n - 1);
    let aut_extra = 1 + 4 * (n - 1) + 2 * (n - 1) * (n - 2);
    match flavor {
        Flavor::Saut => saut,
        Flavor::Aut => saut + aut_extra,
        Flavor::Out => saut + aut_extra + 1,
    }
}

/// Group operations a verification target must provide.
pub trait GroupOps: Sync {
    type Elt: Clone + Send + Sync;
    fn identity(&self) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn inv(&self, a: &Self::Elt) -> Self::Elt;
    fn is_identity(&self, a: &Self::Elt) -> bool;
}

/// Evaluates a relation word under an assignment of generator names.
pub fn evaluate_word<O: GroupOps>(
    ops: &O,
    assign: &(impl Fn(GenName) -> Option<O::Elt> + Sync),
    word: &RelWord,
) -> Result<O::Elt> {
    let mut acc = ops.identity();
    for &(g, e) in word {
        let elt = assign(g).ok_or_else(|| Error::Invalid(format!("assignment missing generator: {g}")))?;
        let factor = if e < 0 { ops.inv(&elt) } else { elt };
        for _ in 0..e.unsigned_abs() {
            acc = ops.mul(&acc, &factor);
        }
    }
    Ok(acc)
}

/// Evaluates a word over indexed generators (used by graph actions).
pub fn evaluate_indexed<O: GroupOps>(ops: &O, elts: &[O::Elt], word: &[(usize, i32)]) -> Result<O::Elt> {
    let mut acc = ops.identity();
    for &(g, e) in word {
        let elt = elts
            .get(g)
            .ok_or_else(|| Error::Invalid(format!("generator index {g} out of range")))?;
        let factor = if e < 0 { ops.inv(elt) } else { elt.clone() };
        for _ in 0..e.unsigned_abs() {
            acc = ops.mul(&acc, &factor);
        }
    }
    Ok(acc)
}

/// Verification result for one relation instance.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub family: u8,
    pub form: u8,
    pub indices: Vec<u32>,
    pub display: String,
    pub pass: bool,
    /// Set when the instance fails as printed but passes with the commutator
    /// orientation transposed; flags convention drift instead of hiding it.
    pub convention_discrepancy: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rank: u32,
    pub flavor: Flavor,
    pub total: usize,
    pub failed: usize,
    pub all_pass: bool,
    pub checks: Vec<RelationCheck>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Checks every relation instance of the presentation against the assignment.
/// Instances are independent and are verified in parallel when enabled.
pub fn verify_assignment<O: GroupOps>(
    rank: u32,
    flavor: Flavor,
    ops: &O,
    assign: &(impl Fn(GenName) -> Option<O::Elt> + Sync),
) -> Result<Report> {
    let rels = relations(rank, flavor);
    let checked: Vec<Result<RelationCheck>> = parallel::map_collect(&rels, |rel| {
        let value = evaluate_word(ops, assign, &rel.word)?;
        let pass = ops.is_identity(&value);
        let mut convention_discrepancy = false;
        if !pass {
            let transposed = relations_with_convention(rank, flavor, Convention::Transposed);
            let twin = transposed
                .iter()
                .find(|t| t.family == rel.family && t.form == rel.form && t.indices == rel.indices);
            if let Some(t) = twin {
                let v2 = evaluate_word(ops, assign, &t.word)?;
                convention_discrepancy = ops.is_identity(&v2);
            }
        }
        Ok(RelationCheck {
            family: rel.family,
            form: rel.form,
            indices: rel.indices.clone(),
            display: rel.display.clone(),
            pass,
            convention_discrepancy,
        })
    });
    let checks = checked.into_iter().collect::<Result<Vec<_>>>()?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    Ok(Report {
        rank,
        flavor,
        total: checks.len(),
        failed,
        all_pass: failed == 0,
        checks,
    })
}

/// The standard assignment: each generator name maps to the corresponding
/// elementary automorphism at the same rank.
pub fn standard_assignment(rank: u32) -> BTreeMap<GenName, FreeAut> {
    let mut map = BTreeMap::new();
    for g in generators(rank, Flavor::Out) {
        let aut = match g {
            GenName::Rho(i, j) => FreeAut::rho(rank, i, j),
            GenName::Lambda(i, j) => FreeAut::lambda(rank, i, j),
            GenName::Tau => FreeAut::tau(rank),
        }
        .expect("valid elementary generator");
        map.insert(g, aut);
    }
    map
}

/// Automorphisms compared exactly: the target is the automorphism group itself.
pub struct ExactAutOps {
    pub rank: u32,
}

impl GroupOps for ExactAutOps {
    type Elt = FreeAut;
    fn identity(&self) -> FreeAut {
        FreeAut::identity(self.rank)
    }
    fn mul(&self, a: &FreeAut, b: &FreeAut) -> FreeAut {
        a.compose(b).expect("equal ranks")
    }
    fn inv(&self, a: &FreeAut) -> FreeAut {
        a.inverse()
    }
    fn is_identity(&self, a: &FreeAut) -> bool {
        a.is_identity()
    }
}

/// Automorphisms compared up to inner: the target is the outer quotient.
pub struct OuterAutOps {
    pub rank: u32,
}

impl GroupOps for OuterAutOps {
    type Elt = FreeAut;
    fn identity(&self) -> FreeAut {
        FreeAut::identity(self.rank)
    }
    fn mul(&self, a: &FreeAut, b: &FreeAut) -> FreeAut {
        a.compose(b).expect("equal ranks")
    }
    fn inv(&self, a: &FreeAut) -> FreeAut {
        a.inverse()
    }
    fn is_identity(&self, a: &FreeAut) -> bool {
        a.as_inner().is_some()
    }
}

/// Lazy products of automorphisms: multiplication is concatenation and the
/// identity test evaluates generator images right to left. This avoids
/// materializing huge intermediate compositions at large rank.
pub struct FormalProductOps {
    pub rank: u32,
    /// Compare up to inner automorphisms when set.
    pub outer: bool,
}

#[derive(Clone)]
pub struct FormalProduct(pub Vec<(std::sync::Arc<FreeAut>, bool)>);

impl GroupOps for FormalProductOps {
    type Elt = FormalProduct;
    fn identity(&self) -> FormalProduct {
        FormalProduct(Vec::new())
    }
    fn mul(&self, a: &FormalProduct, b: &FormalProduct) -> FormalProduct {
        let mut v = a.0.clone();
        v.extend(b.0.iter().cloned());
        FormalProduct(v)
    }
    fn inv(&self, a: &FormalProduct) -> FormalProduct {
        FormalProduct(a.0.iter().rev().map(|(f, inv)| (f.clone(), !inv)).collect())
    }
    fn is_identity(&self, a: &FormalProduct) -> bool {
        let factors: Vec<(&FreeAut, bool)> = a.0.iter().map(|(f, inv)| (f.as_ref(), *inv)).collect();
        let aut = FreeAut::evaluate_product(self.rank, &factors).expect("rank-consistent product");
        if self.outer {
            aut.as_inner().is_some()
        } else {
            aut.is_identity()
        }
    }
}
