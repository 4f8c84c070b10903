//! Dense integer matrices with exact arithmetic: multiplication, determinant
//! (fraction-free), rank over the rationals, and Smith normal form with
//! unimodular transforms. Internal arithmetic runs in i128 and fails loudly
//! on overflow rather than wrapping.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer matrix entry overflow")
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c));
            }
        }
        m
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| narrow(a as i128 + b as i128))
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|&a| narrow(a as i128 * k as i128))
                .collect(),
        }
    }

    pub fn multiply(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as i128 * other.get(k, c) as i128;
                }
                m.set(r, c, narrow(acc));
            }
        }
        Ok(m)
    }

    pub fn pow(&self, e: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("pow of non-square matrix".into()));
        }
        let mut out = IntMatrix::identity(self.rows);
        for _ in 0..e {
            out = out.multiply(self)?;
        }
        Ok(out)
    }

    pub fn mod_reduce(&self, modulus: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a.rem_euclid(modulus)).collect(),
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let at = |a: &Vec<i128>, r: usize, c: usize| a[r * n + c];
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if at(&a, k, k) == 0 {
                let swap = (k + 1..n).find(|&r| at(&a, r, k) != 0);
                match swap {
                    None => return Ok(0),
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, i, j)
                        .checked_mul(at(&a, k, k))
                        .and_then(|x| x.checked_sub(at(&a, i, k).checked_mul(at(&a, k, j))?))
                        .expect("determinant overflow");
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = at(&a, k, k);
        }
        Ok(narrow(sign * at(&a, n - 1, n - 1)))
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank_q(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut rank = 0usize;
        let mut pivot_row = 0usize;
        for col in 0..cols {
            let found = (pivot_row..rows).find(|&r| a[r * cols + col] != 0);
            let r0 = match found {
                None => continue,
                Some(r) => r,
            };
            for c in 0..cols {
                a.swap(pivot_row * cols + c, r0 * cols + c);
            }
            let p = a[pivot_row * cols + col];
            for r in pivot_row + 1..rows {
                let q = a[r * cols + col];
                if q == 0 {
                    continue;
                }
                for c in 0..cols {
                    let v = a[r * cols + c]
                        .checked_mul(p)
                        .and_then(|x| x.checked_sub(a[pivot_row * cols + c].checked_mul(q)?))
                        .expect("rank elimination overflow");
                    a[r * cols + c] = v;
                }
            }
            rank += 1;
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
        rank
    }

    /// Smith normal form: returns (u, d, v) with u * self * v = d diagonal,
    /// u and v unimodular, diagonal nonnegative and in divisibility order.
    pub fn smith_normal_form(&self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let mut work = Snf::new(self);
        work.diagonalize();
        work.fix_divisibility();
        work.fix_signs();
        work.finish()
    }

    /// Basis of the integer right-kernel, as matrix columns. The basis spans
    /// the full kernel lattice (saturated), because the transform is unimodular.
    pub fn kernel_lattice_basis(&self) -> IntMatrix {
        let (_, d, v) = self.smith_normal_form();
        let t = self.rows.min(self.cols);
        let mut zero_cols: Vec<usize> = (0..t).filter(|&i| d.get(i, i) == 0).collect();
        zero_cols.extend(t..self.cols);
        let mut out = IntMatrix::zeros(self.cols, zero_cols.len());
        for (k, &c) in zero_cols.iter().enumerate() {
            for r in 0..self.cols {
                out.set(r, k, v.get(r, c));
            }
        }
        out
    }
}

/// Working state for the Smith reduction; all ops are recorded in u and v so
/// that u * a_original * v = a at every step.
struct Snf {
    rows: usize,
    cols: usize,
    a: Vec<i128>,
    u: Vec<i128>,
    v: Vec<i128>,
}

impl Snf {
    fn new(m: &IntMatrix) -> Self {
        let id = |n: usize| {
            let mut d = vec![0i128; n * n];
            for i in 0..n {
                d[i * n + i] = 1;
            }
            d
        };
        Snf {
            rows: m.rows,
            cols: m.cols,
            a: m.data.iter().map(|&x| x as i128).collect(),
            u: id(m.rows),
            v: id(m.cols),
        }
    }

    fn a(&self, r: usize, c: usize) -> i128 {
        self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
        for c in 0..self.rows {
            self.u.swap(r1 * self.rows + c, r2 * self.rows + c);
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + c1, r * self.cols + c2);
        }
        for r in 0..self.cols {
            self.v.swap(r * self.cols + c1, r * self.cols + c2);
        }
    }

    /// row r1 -= q * row r2
    fn row_op(&mut self, r1: usize, q: i128, r2: usize) {
        for c in 0..self.cols {
            self.a[r1 * self.cols + c] -= q * self.a[r2 * self.cols + c];
        }
        for c in 0..self.rows {
            self.u[r1 * self.rows + c] -= q * self.u[r2 * self.rows + c];
        }
    }

    /// col c1 -= q * col c2
    fn col_op(&mut self, c1: usize, q: i128, c2: usize) {
        for r in 0..self.rows {
            self.a[r * self.cols + c1] -= q * self.a[r * self.cols + c2];
        }
        for r in 0..self.cols {
            self.v[r * self.cols + c1] -= q * self.v[r * self.cols + c2];
        }
    }

    fn diagonalize(&mut self) {
        self.diagonalize_from(0);
    }

    fn diagonalize_from(&mut self, start: usize) {
        let t_max = self.rows.min(self.cols);
        let mut t = start;
        while t < t_max {
            // Minimal nonzero pivot keeps entries small without fractions.
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..self.rows {
                for c in t..self.cols {
                    let x = self.a(r, c);
                    if x != 0 && pivot.is_none_or(|(pr, pc)| x.abs() < self.a(pr, pc).abs()) {
                        pivot = Some((r, c));
                    }
                }
            }
            let (pr, pc) = match pivot {
                None => return,
                Some(p) => p,
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            let mut clean = true;
            for r in t + 1..self.rows {
                let q = self.a(r, t).div_euclid(self.a(t, t));
                if q != 0 {
                    self.row_op(r, q, t);
                }
                if self.a(r, t) != 0 {
                    clean = false;
                }
            }
            for c in t + 1..self.cols {
                let q = self.a(t, c).div_euclid(self.a(t, t));
                if q != 0 {
                    self.col_op(c, q, t);
                }
                if self.a(t, c) != 0 {
                    clean = false;
                }
            }
            if clean {
                t += 1;
            }
        }
    }

    fn fix_divisibility(&mut self) {
        let t_max = self.rows.min(self.cols);
        loop {
            let violation = (0..t_max.saturating_sub(1)).find_map(|t| {
                (t + 1..t_max).find_map(|s| {
                    let (dt, ds) = (self.a(t, t), self.a(s, s));
                    (dt != 0 && ds % dt != 0).then_some((t, s))
                })
            });
            match violation {
                None => return,
                Some((t, s)) => {
                    // Fold column s into column t, then re-diagonalize from t.
                    // Rows and columns before t are untouched, and the new
                    // entry at (t, t) is gcd(d_t, d_s) < d_t, so this ends.
                    self.col_op(t, -1, s);
                    self.diagonalize_from(t);
                }
            }
        }
    }

    fn fix_signs(&mut self) {
        for t in 0..self.rows.min(self.cols) {
            if self.a(t, t) < 0 {
                for c in 0..self.cols {
                    self.a[t * self.cols + c] = -self.a[t * self.cols + c];
                }
                for c in 0..self.rows {
                    self.u[t * self.rows + c] = -self.u[t * self.rows + c];
                }
            }
        }
    }

    fn finish(self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let pack = |data: Vec<i128>, rows: usize, cols: usize| IntMatrix {
            rows,
            cols,
            data: data.into_iter().map(narrow).collect(),
        };
        (
            pack(self.u, self.rows, self.rows),
            pack(self.a, self.rows, self.cols),
            pack(self.v, self.cols, self.cols),
        )
    }
}

/// Deterministic unimodular matrix together with its inverse, produced by
/// composing seeded elementary shears; every entry of both factors stays
/// within absolute value 8.
pub fn seeded_unimodular(n: usize, seed: u64) -> (IntMatrix, IntMatrix) {
    let mut state = seed;
    let mut next = move || -> u64 {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, u_inv);
    }
    let mut applied = 0usize;
    for _ in 0..60 * n {
        if applied == 3 * n {
            break;
        }
        let r1 = (next() % n as u64) as usize;
        let r2 = (next() % n as u64) as usize;
        if r1 == r2 {
            continue;
        }
        let c = [-2i64, -1, 1, 2][(next() % 4) as usize];
        let new_row: Vec<i64> = (0..n).map(|j| u.get(r1, j) + c * u.get(r2, j)).collect();
        let new_col: Vec<i64> = (0..n)
            .map(|i| u_inv.get(i, r2) - c * u_inv.get(i, r1))
            .collect();
        if new_row.iter().chain(&new_col).any(|v| v.abs() > 8) {
            continue;
        }
        for j in 0..n {
            u.set(r1, j, new_row[j]);
        }
        for i in 0..n {
            u_inv.set(i, r2, new_col[i]);
        }
        applied += 1;
    }
    debug_assert!(u.multiply(&u_inv).unwrap().is_identity());
    (u, u_inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_unimodular_pairs_are_actual_inverses() {
        for n in 1..=6 {
            for seed in 0..10 {
                let (u, u_inv) = seeded_unimodular(n, seed);
                assert!(u.multiply(&u_inv).unwrap().is_identity());
                assert!(u_inv.multiply(&u).unwrap().is_identity());
                assert_eq!(u.det().unwrap().abs(), 1);
                assert!(u.to_rows().iter().flatten().all(|v| v.abs() <= 8));
            }
        }
        assert_ne!(seeded_unimodular(4, 1).0, seeded_unimodular(4, 2).0);
    }

    #[test]
    fn det_and_rank() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), -2);
        assert_eq!(m.rank_q(), 2);
        let s = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.det().unwrap(), 0);
        assert_eq!(s.rank_q(), 1);
        assert_eq!(IntMatrix::identity(5).det().unwrap(), 1);
    }

    #[test]
    fn multiply_shapes() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 2], vec![0, 1, 1]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![1], vec![2], vec![3]]).unwrap();
        let c = a.multiply(&b).unwrap();
        assert_eq!(c.to_rows(), vec![vec![7], vec![5]]);
        assert!(b.multiply(&b).is_err());
    }

    fn check_snf(m: &IntMatrix) {
        let (u, d, v) = m.smith_normal_form();
        assert_eq!(u.det().unwrap().abs(), 1, "u not unimodular");
        assert_eq!(v.det().unwrap().abs(), 1, "v not unimodular");
        let prod = u.multiply(m).unwrap().multiply(&v).unwrap();
        assert_eq!(prod, d, "u*m*v != d");
        let t = d.rows().min(d.cols());
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if r != c {
                    assert_eq!(d.get(r, c), 0, "off-diagonal entry in SNF");
                }
            }
        }
        for i in 0..t.saturating_sub(1) {
            let (a, b) = (d.get(i, i), d.get(i + 1, i + 1));
            assert!(a >= 0 && b >= 0, "negative diagonal");
            if a != 0 {
                assert_eq!(b % a, 0, "divisibility chain broken: {a} then {b}");
            } else {
                assert_eq!(b, 0, "zero before nonzero in SNF diagonal");
            }
        }
    }

    #[test]
    fn smith_form_examples() {
        check_snf(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]).unwrap());
        check_snf(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap());
        check_snf(&IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap());
        check_snf(&IntMatrix::from_rows(&[vec![6, 0], vec![0, 4]]).unwrap());
        check_snf(&IntMatrix::identity(4));
        check_snf(&IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]).unwrap());
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        check_snf(&swap.sub(&IntMatrix::identity(2)).unwrap());
    }

    #[test]
    fn smith_form_known_invariants() {
        // diag(2, 3) has SNF diag(1, 6).
        let m = IntMatrix::diagonal(&[2, 3]);
        let (_, d, _) = m.smith_normal_form();
        assert_eq!(d.get(0, 0), 1);
        assert_eq!(d.get(1, 1), 6);
    }

    #[test]
    fn kernel_lattice_of_vertex_swap_difference() {
        // M = [[0, I], [I, 0]] (4x4); kernel of M - I is spanned by (e_i, e_i).
        let m = IntMatrix::from_rows(&[
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        let mi = m.sub(&IntMatrix::identity(4)).unwrap();
        let k = mi.kernel_lattice_basis();
        assert_eq!(k.cols(), 2);
        assert!(mi.multiply(&k).unwrap().is_zero());
        for c in 0..k.cols() {
            let g = (0..4).fold(0i64, |acc, r| num_integer::gcd(acc, k.get(r, c)));
            assert_eq!(g.abs(), 1, "kernel basis column not primitive");
        }
    }

    #[test]
    fn mod_reduce_wraps_into_range() {
        let m = IntMatrix::from_rows(&[vec![-1, 5], vec![7, -9]]).unwrap();
        assert_eq!(m.mod_reduce(4).to_rows(), vec![vec![3, 1], vec![3, 3]]);
    }
}
