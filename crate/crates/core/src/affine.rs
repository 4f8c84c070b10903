//! Affine-linear lifts of the elementary automorphisms: (n+1) x (n+1)
//! integer block matrices [[A, b], [0, 1]] acting on column vectors (x, 1).
//! The transvection lifts are exact solutions of relation families (1)-(10)
//! over the integers; the inner-product relation becomes a translation whose
//! size is controlled by the splitting parameter s.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::presentation::{self, Flavor, GenName, GroupOps, Report};
use num_integer::Integer;
use serde::Serialize;

/// Solution of s(n - 1) + t r = 1 with |s| minimal, ties broken positive.
/// Exists exactly when gcd(n - 1, r) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitParams {
    pub n: u32,
    pub modulus: i64,
    pub s: i64,
    pub t: i64,
}

pub fn make_split_params(n: u32, r: i64) -> Result<SplitParams> {
    if n < 2 {
        return Err(Error::Invalid(format!("rank must be at least 2, got {n}")));
    }
    if r < 2 {
        return Err(Error::Invalid(format!("modulus must be at least 2, got {r}")));
    }
    let m = i64::from(n) - 1;
    let g = m.gcd(&r);
    if g != 1 {
        return Err(Error::Coprimality {
            rank: n,
            modulus: r as u64,
            gcd: g as u64,
        });
    }
    let ext = m.extended_gcd(&r);
    // ext.x * m + ext.y * r = 1; slide s into (-r/2, r/2], preferring the
    // positive representative when both signs reach the same magnitude.
    let mut s = ext.x.rem_euclid(r);
    if 2 * s > r {
        s -= r;
    }
    let t = (1 - s * m) / r;
    debug_assert_eq!(s * m + t * r, 1);
    Ok(SplitParams { n, modulus: r, s, t })
}

/// An invertible affine map stored with its inverse, both as (n+1) x (n+1)
/// matrices with last row (0, ..., 0, 1). Entries are reduced into [0, r)
/// when a modulus is attached.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AffineLift {
    n: u32,
    modulus: Option<i64>,
    mat: IntMatrix,
    inv_mat: IntMatrix,
}

fn check_affine_shape(n: u32, m: &IntMatrix) -> Result<()> {
    let d = n as usize + 1;
    if m.rows() != d || m.cols() != d {
        return Err(Error::Dimension(format!(
            "affine matrix for rank {n} must be {d} x {d}, got {} x {}",
            m.rows(),
            m.cols()
        )));
    }
    for c in 0..d {
        let want = if c == d - 1 { 1 } else { 0 };
        if m.get(d - 1, c) != want {
            return Err(Error::Invalid(format!(
                "last row must be (0, ..., 0, 1), found {} in column {c}",
                m.get(d - 1, c)
            )));
        }
    }
    Ok(())
}

impl AffineLift {
    pub fn new(n: u32, modulus: Option<i64>, mat: IntMatrix, inv_mat: IntMatrix) -> Result<Self> {
        if let Some(r) = modulus {
            if r < 2 {
                return Err(Error::Invalid(format!("modulus must be at least 2, got {r}")));
            }
        }
        check_affine_shape(n, &mat)?;
        check_affine_shape(n, &inv_mat)?;
        let reduce = |m: &IntMatrix| match modulus {
            Some(r) => m.mod_reduce(r),
            None => m.clone(),
        };
        let lift = AffineLift {
            n,
            modulus,
            mat: reduce(&mat),
            inv_mat: reduce(&inv_mat),
        };
        let prod = reduce(&lift.mat.multiply(&lift.inv_mat)?);
        let prod_back = reduce(&lift.inv_mat.multiply(&lift.mat)?);
        if !prod.is_identity() || !prod_back.is_identity() {
            return Err(Error::Invalid(
                "claimed inverse does not invert the affine map".to_string(),
            ));
        }
        Ok(lift)
    }

    pub fn identity(n: u32, modulus: Option<i64>) -> Self {
        let id = IntMatrix::identity(n as usize + 1);
        AffineLift {
            n,
            modulus,
            mat: id.clone(),
            inv_mat: id,
        }
    }

    /// Builds the map from an n x n linear part and its inverse plus a
    /// translation vector: x -> A x + b.
    pub fn from_parts(
        n: u32,
        modulus: Option<i64>,
        a: &IntMatrix,
        a_inv: &IntMatrix,
        b: &[i64],
    ) -> Result<Self> {
        let d = n as usize;
        if a.rows() != d || a.cols() != d || a_inv.rows() != d || a_inv.cols() != d {
            return Err(Error::Dimension(format!(
                "linear part for rank {n} must be {d} x {d}"
            )));
        }
        if b.len() != d {
            return Err(Error::Dimension(format!(
                "translation for rank {n} must have {d} entries, got {}",
                b.len()
            )));
        }
        let mut mat = IntMatrix::identity(d + 1);
        let mut inv = IntMatrix::identity(d + 1);
        for i in 0..d {
            for j in 0..d {
                mat.set(i, j, a.get(i, j));
                inv.set(i, j, a_inv.get(i, j));
            }
            mat.set(i, d, b[i]);
        }
        // Inverse translation is -A^-1 b.
        for i in 0..d {
            let mut acc: i64 = 0;
            for j in 0..d {
                acc = acc
                    .checked_add(
                        a_inv
                            .get(i, j)
                            .checked_mul(b[j])
                            .ok_or_else(|| Error::Invalid("translation overflow".into()))?,
                    )
                    .ok_or_else(|| Error::Invalid("translation overflow".into()))?;
            }
            inv.set(i, d, -acc);
        }
        AffineLift::new(n, modulus, mat, inv)
    }

    pub fn translation(n: u32, modulus: Option<i64>, v: &[i64]) -> Result<Self> {
        let d = n as usize;
        let id = IntMatrix::identity(d);
        AffineLift::from_parts(n, modulus, &id, &id, v)
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> Option<i64> {
        self.modulus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn linear_part(&self) -> IntMatrix {
        let d = self.n as usize;
        let mut a = IntMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                a.set(i, j, self.mat.get(i, j));
            }
        }
        a
    }

    pub fn translation_part(&self) -> Vec<i64> {
        let d = self.n as usize;
        (0..d).map(|i| self.mat.get(i, d)).collect()
    }

    pub fn is_translation(&self) -> bool {
        self.linear_part().is_identity()
    }

    /// (self . other)(x) = self(other(x)); the block product realizes it.
    pub fn compose(&self, other: &AffineLift) -> Result<AffineLift> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        if self.modulus != other.modulus {
            return Err(Error::Invalid(format!(
                "modulus mismatch: {:?} vs {:?}",
                self.modulus, other.modulus
            )));
        }
        let reduce = |m: IntMatrix| match self.modulus {
            Some(r) => m.mod_reduce(r),
            None => m,
        };
        Ok(AffineLift {
            n: self.n,
            modulus: self.modulus,
            mat: reduce(self.mat.multiply(&other.mat)?),
            inv_mat: reduce(other.inv_mat.multiply(&self.inv_mat)?),
        })
    }

    pub fn inverse(&self) -> AffineLift {
        AffineLift {
            n: self.n,
            modulus: self.modulus,
            mat: self.inv_mat.clone(),
            inv_mat: self.mat.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> AffineLift {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = AffineLift::identity(self.n, self.modulus);
        for _ in 0..e.unsigned_abs() {
            out = out.compose(&base).expect("same shape");
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        match self.modulus {
            Some(r) => self.mat.mod_reduce(r).is_identity(),
            None => self.mat.is_identity(),
        }
    }

    /// Applies the map to an integer point.
    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        let d = self.n as usize;
        if x.len() != d {
            return Err(Error::Dimension(format!(
                "point must have {d} coordinates, got {}",
                x.len()
            )));
        }
        let mut out = vec![0i64; d];
        for i in 0..d {
            let mut acc: i128 = i128::from(self.mat.get(i, d));
            for j in 0..d {
                acc += i128::from(self.mat.get(i, j)) * i128::from(x[j]);
            }
            out[i] = match self.modulus {
                Some(r) => (acc.rem_euclid(i128::from(r))) as i64,
                None => i64::try_from(acc).map_err(|_| Error::Invalid("apply overflow".into()))?,
            };
        }
        Ok(out)
    }

    pub fn reduce_mod(&self, r: i64) -> Result<AffineLift> {
        if r < 2 {
            return Err(Error::Invalid(format!("modulus must be at least 2, got {r}")));
        }
        Ok(AffineLift {
            n: self.n,
            modulus: Some(r),
            mat: self.mat.mod_reduce(r),
            inv_mat: self.inv_mat.mod_reduce(r),
        })
    }
}

/// The affine lift of one presentation generator, over the integers.
/// Rho(i, j) lifts to the bare transvection, Lambda(i, j) carries the
/// translation -s e_j, and Tau negates the first coordinate and shifts it
/// by s.
pub fn lift_generator(params: &SplitParams, g: GenName) -> Result<AffineLift> {
    let n = params.n;
    let d = n as usize;
    let s = params.s;
    let check = |i: u32| -> Result<usize> {
        if i < 1 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        Ok((i - 1) as usize)
    };
    match g {
        GenName::Rho(i, j) | GenName::Lambda(i, j) => {
            if i == j {
                return Err(Error::Invalid(format!(
                    "transvection indices must differ, got ({i}, {j})"
                )));
            }
            let (iz, jz) = (check(i)?, check(j)?);
            let mut a = IntMatrix::identity(d);
            a.set(jz, iz, 1);
            let mut a_inv = IntMatrix::identity(d);
            a_inv.set(jz, iz, -1);
            let mut b = vec![0i64; d];
            if matches!(g, GenName::Lambda(_, _)) {
                b[jz] = -s;
            }
            AffineLift::from_parts(n, None, &a, &a_inv, &b)
        }
        GenName::Tau => {
            let mut a = IntMatrix::identity(d);
            a.set(0, 0, -1);
            let mut b = vec![0i64; d];
            b[0] = s;
            AffineLift::from_parts(n, None, &a, &a, &b)
        }
    }
}

/// Group operations on affine lifts of a fixed rank and modulus.
pub struct LiftOps {
    pub n: u32,
    pub modulus: Option<i64>,
}

impl GroupOps for LiftOps {
    type Elt = AffineLift;
    fn identity(&self) -> AffineLift {
        AffineLift::identity(self.n, self.modulus)
    }
    fn mul(&self, a: &AffineLift, b: &AffineLift) -> AffineLift {
        a.compose(b).expect("same shape")
    }
    fn inv(&self, a: &AffineLift) -> AffineLift {
        a.inverse()
    }
    fn is_identity(&self, a: &AffineLift) -> bool {
        a.is_identity()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub params: SplitParams,
    /// Families (1)-(10) checked as exact integer matrix identities.
    pub relations: Report,
    /// The inner-product word evaluates to a pure translation; its vector.
    pub product_translation: Vec<i64>,
    /// Whether that vector is (n - 1) s e_1 exactly.
    pub translation_matches_formula: bool,
    /// Whether (n - 1) s is 1 modulo r, so the translation generates the
    /// first coordinate shift on the quotient torus.
    pub congruence_ok: bool,
    pub all_pass: bool,
}

/// Checks families (1)-(10) exactly over the integers and analyzes the
/// inner-product word separately: it must be translation by (n - 1) s e_1
/// with (n - 1) s inverse to 1 modulo r.
pub fn verify_lift_relations(params: &SplitParams) -> Result<LiftReport> {
    let n = params.n;
    let ops = LiftOps { n, modulus: None };
    let assign = |g: GenName| lift_generator(params, g).ok();
    let relations = presentation::verify_assignment(n, Flavor::Aut, &ops, &assign)?;

    let product_word = presentation::relations(n, Flavor::Out)
        .into_iter()
        .find(|rel| rel.family == 11)
        .expect("outer flavor includes the product relation");
    let product = presentation::evaluate_word(&ops, &assign, &product_word.word)?;
    if !product.is_translation() {
        return Err(Error::Invalid(
            "inner-product word did not evaluate to a translation".to_string(),
        ));
    }
    let product_translation = product.translation_part();
    let mut expected = vec![0i64; n as usize];
    expected[0] = i64::from(n - 1) * params.s;
    let translation_matches_formula = product_translation == expected;
    let congruence_ok = (i64::from(n - 1) * params.s).rem_euclid(params.modulus) == 1;
    let all_pass = relations.all_pass && translation_matches_formula && congruence_ok;
    Ok(LiftReport {
        params: *params,
        relations,
        product_translation,
        translation_matches_formula,
        congruence_ok,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lift(params: &SplitParams, g: GenName) -> AffineLift {
        lift_generator(params, g).unwrap()
    }

    #[test]
    fn split_params_minimal_magnitude() {
        let p = make_split_params(2, 2).unwrap();
        assert_eq!((p.s, p.t), (1, 0));
        let p = make_split_params(3, 3).unwrap();
        assert_eq!((p.s, p.t), (-1, 1));
        let p = make_split_params(2, 5).unwrap();
        assert_eq!((p.s, p.t), (1, 0));
        let p = make_split_params(4, 5).unwrap();
        assert_eq!((p.s, p.t), (2, -1));
        let p = make_split_params(6, 4).unwrap();
        assert_eq!((p.s, p.t), (1, -1));
        for (n, r) in [(2u32, 2i64), (2, 9), (3, 4), (5, 7), (8, 9), (6, 25)] {
            if let Ok(p) = make_split_params(n, r) {
                assert_eq!(p.s * i64::from(n - 1) + p.t * r, 1);
                assert!(2 * p.s.abs() <= r, "|s| too large for (n, r) = ({n}, {r})");
            }
        }
    }

    #[test]
    fn split_params_requires_coprimality() {
        for (n, r, g) in [(3u32, 2i64, 2i64), (4, 3, 3), (5, 2, 2), (3, 4, 2)] {
            match make_split_params(n, r) {
                Err(Error::Coprimality { rank, modulus, gcd }) => {
                    assert_eq!((rank, modulus, gcd), (n, r as u64, g as u64));
                }
                other => panic!("expected coprimality failure, got {other:?}"),
            }
        }
    }

    #[test]
    fn generator_matrices_at_rank_two() {
        let p = make_split_params(2, 2).unwrap();
        let rho = lift(&p, GenName::Rho(1, 2));
        assert_eq!(rho.matrix().to_rows(), vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        let lam = lift(&p, GenName::Lambda(1, 2));
        assert_eq!(lam.matrix().to_rows(), vec![vec![1, 0, 0], vec![1, 1, -1], vec![0, 0, 1]]);
        let tau = lift(&p, GenName::Tau);
        assert_eq!(tau.matrix().to_rows(), vec![vec![-1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn linear_parts_match_abelianized_automorphisms() {
        use crate::word::FreeAut;
        let p = make_split_params(3, 5).unwrap();
        for (g, aut) in [
            (GenName::Rho(1, 2), FreeAut::rho(3, 1, 2).unwrap()),
            (GenName::Rho(3, 1), FreeAut::rho(3, 3, 1).unwrap()),
            (GenName::Lambda(2, 3), FreeAut::lambda(3, 2, 3).unwrap()),
            (GenName::Tau, FreeAut::tau(3).unwrap()),
        ] {
            assert_eq!(lift(&p, g).linear_part(), aut.abelianize(), "linear part of {g}");
        }
    }

    #[test]
    fn lambda_commutator_produces_third_lambda() {
        let p = make_split_params(3, 3).unwrap();
        let l12 = lift(&p, GenName::Lambda(1, 2));
        let l23 = lift(&p, GenName::Lambda(2, 3));
        let l13 = lift(&p, GenName::Lambda(1, 3));
        let comm = l12
            .inverse()
            .compose(&l23.inverse())
            .unwrap()
            .compose(&l12)
            .unwrap()
            .compose(&l23)
            .unwrap();
        assert_eq!(comm, l13.inverse());
    }

    #[test]
    fn twist_has_order_four() {
        for (n, r) in [(2u32, 3i64), (3, 5)] {
            let p = make_split_params(n, r).unwrap();
            let w = lift(&p, GenName::Rho(1, 2))
                .compose(&lift(&p, GenName::Rho(2, 1)).inverse())
                .unwrap()
                .compose(&lift(&p, GenName::Lambda(1, 2)))
                .unwrap();
            assert!(!w.pow(2).is_identity());
            assert!(w.pow(4).is_identity(), "({n}, {r})");
        }
    }

    #[test]
    fn tau_conjugation_swaps_transvection_kinds() {
        let p = make_split_params(2, 3).unwrap();
        let t = lift(&p, GenName::Tau);
        let conj = |x: &AffineLift| t.compose(x).unwrap().compose(&t).unwrap();
        assert_eq!(
            conj(&lift(&p, GenName::Rho(1, 2))),
            lift(&p, GenName::Lambda(1, 2)).inverse()
        );
        assert_eq!(
            conj(&lift(&p, GenName::Rho(2, 1))),
            lift(&p, GenName::Rho(2, 1)).inverse()
        );
        assert_eq!(
            conj(&lift(&p, GenName::Lambda(2, 1))),
            lift(&p, GenName::Lambda(2, 1)).inverse()
        );
    }

    #[test]
    fn relation_suite_passes_for_coprime_parameters() {
        for (n, r) in [(2u32, 2i64), (2, 3), (3, 3), (3, 5), (4, 5), (5, 3)] {
            let p = make_split_params(n, r).unwrap();
            let report = verify_lift_relations(&p).unwrap();
            assert!(report.relations.all_pass, "families 1-10 at ({n}, {r})");
            assert!(report.translation_matches_formula, "translation at ({n}, {r})");
            assert!(report.congruence_ok, "congruence at ({n}, {r})");
            assert!(report.all_pass);
            let want = i64::from(n - 1) * p.s;
            assert_eq!(report.product_translation[0], want);
        }
    }

    #[test]
    fn product_relation_is_pure_translation() {
        let p = make_split_params(3, 3).unwrap();
        let prod = lift(&p, GenName::Rho(2, 1))
            .compose(&lift(&p, GenName::Lambda(2, 1)).inverse())
            .unwrap()
            .compose(&lift(&p, GenName::Rho(3, 1)))
            .unwrap()
            .compose(&lift(&p, GenName::Lambda(3, 1)).inverse())
            .unwrap();
        assert!(prod.is_translation());
        assert_eq!(prod.translation_part(), vec![2 * p.s, 0, 0]);
    }

    #[test]
    fn apply_moves_points() {
        let p = make_split_params(2, 5).unwrap();
        let lam = lift(&p, GenName::Lambda(1, 2));
        // x -> (x_1, x_1 + x_2 - s)
        assert_eq!(lam.apply(&[3, 4]).unwrap(), vec![3, 3 + 4 - p.s]);
        let lam5 = lam.reduce_mod(5).unwrap();
        assert_eq!(lam5.apply(&[3, 4]).unwrap(), vec![3, (3 + 4 - p.s).rem_euclid(5)]);
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let p = make_split_params(2, 3).unwrap();
        let a = lift(&p, GenName::Rho(1, 2));
        let b = a.reduce_mod(3).unwrap();
        assert!(a.compose(&b).is_err());
        assert!(b.compose(&b.inverse()).unwrap().is_identity());
    }

    #[test]
    fn new_rejects_bad_inverse_and_shape() {
        let id = IntMatrix::identity(3);
        let mut wrong = id.clone();
        wrong.set(0, 0, 2);
        assert!(AffineLift::new(2, None, wrong.clone(), id.clone()).is_err());
        let mut bad_row = id.clone();
        bad_row.set(2, 0, 1);
        assert!(AffineLift::new(2, None, bad_row.clone(), bad_row).is_err());
        assert!(AffineLift::new(3, None, id.clone(), id).is_err());
    }

    fn arb_gen(n: u32) -> impl Strategy<Value = GenName> {
        (1..=n, 1..=n, 0..3u8).prop_filter_map("distinct indices", move |(i, j, kind)| {
            if kind == 2 {
                return Some(GenName::Tau);
            }
            if i == j {
                return None;
            }
            Some(if kind == 0 {
                GenName::Rho(i, j)
            } else {
                GenName::Lambda(i, j)
            })
        })
    }

    proptest! {
        #[test]
        fn reduction_commutes_with_composition(
            gens in prop::collection::vec((arb_gen(3), prop::bool::ANY), 1..6),
            r in 2i64..9,
        ) {
            let p = match make_split_params(3, r) {
                Ok(p) => p,
                Err(_) => return Ok(()),
            };
            let mut over_z = AffineLift::identity(3, None);
            let mut mod_r = AffineLift::identity(3, Some(r));
            for (g, invert) in gens {
                let f = lift(&p, g);
                let f = if invert { f.inverse() } else { f };
                over_z = over_z.compose(&f).unwrap();
                mod_r = mod_r.compose(&f.reduce_mod(r).unwrap()).unwrap();
            }
            prop_assert_eq!(over_z.reduce_mod(r).unwrap(), mod_r);
        }

        #[test]
        fn inverse_composes_to_identity(
            gens in prop::collection::vec((arb_gen(3), prop::bool::ANY), 1..6),
        ) {
            let p = make_split_params(3, 5).unwrap();
            let mut acc = AffineLift::identity(3, None);
            for (g, invert) in gens {
                let f = lift(&p, g);
                let f = if invert { f.inverse() } else { f };
                acc = acc.compose(&f).unwrap();
            }
            prop_assert!(acc.compose(&acc.inverse()).unwrap().is_identity());
            prop_assert!(acc.inverse().compose(&acc).unwrap().is_identity());
        }
    }
}
