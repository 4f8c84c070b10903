//! Rational eigenspace dimensions and, for integer involutions, the index of
//! the sublattice spanned by the fixed and negated eigenlattices. That index
//! separates involutions that are conjugate over Q but not over Z.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

fn require_square(m: &IntMatrix, what: &str) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "{what} needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

/// Dimension over Q of the eigenspace of `m` for the integer eigenvalue
/// `lambda`.
pub fn eigenspace_dim(m: &IntMatrix, lambda: i64) -> Result<usize> {
    require_square(m, "eigenspace dimension")?;
    let k = m.rows();
    let shifted = m.sub(&IntMatrix::identity(k).scale(lambda))?;
    Ok(k - shifted.rank_q())
}

/// Index in the ambient lattice of the sublattice spanned jointly by the
/// (+1) and (-1) eigenlattices of an involution. The index is 1 exactly when
/// the lattice splits as the direct sum of the two eigenlattices, and it is
/// invariant under integral change of basis.
pub fn eigenlattice_covolume(m: &IntMatrix) -> Result<u64> {
    require_square(m, "eigenlattice covolume")?;
    let k = m.rows();
    let id = IntMatrix::identity(k);
    if !m.pow(2)?.is_identity() {
        return Err(Error::NotInvolution);
    }
    let plus = m.sub(&id)?.kernel_lattice_basis();
    let minus = m.add(&id)?.kernel_lattice_basis();
    debug_assert_eq!(plus.cols() + minus.cols(), k);
    let mut combined = IntMatrix::zeros(k, k);
    for c in 0..plus.cols() {
        for r in 0..k {
            combined.set(r, c, plus.get(r, c));
        }
    }
    for c in 0..minus.cols() {
        for r in 0..k {
            combined.set(r, plus.cols() + c, minus.get(r, c));
        }
    }
    Ok(combined.det()?.unsigned_abs())
}

/// The 2n-by-2n involution exchanging the two n-blocks of coordinates.
pub fn block_swap(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, 1);
        m.set(n + i, i, 1);
    }
    m
}
