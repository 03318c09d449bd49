//! Adjacency matrices of mixed graphs and exact linear algebra over the
//! Gaussian integers.

use crate::error::Error;
use crate::gaussian::{CharPoly, GaussianInt, GaussianIntMatrix};
use crate::graph::{EdgeKind, MixedGraph};
use crate::int::Int;

/// Hermitian adjacency matrix: undirected edges contribute 1 to both
/// entries, an arc `u -> v` contributes `i` at `(u, v)` and `-i` at `(v, u)`.
pub fn hermitian_adjacency(g: &MixedGraph) -> GaussianIntMatrix {
    let n = g.n();
    let mut m = GaussianIntMatrix::zeros(n, n);
    for e in g.edges() {
        match e.kind {
            EdgeKind::Undirected => {
                m.set(e.u, e.v, GaussianInt::one());
                m.set(e.v, e.u, GaussianInt::one());
            }
            EdgeKind::Arc => {
                m.set(e.u, e.v, GaussianInt::i());
                m.set(e.v, e.u, GaussianInt::i().neg());
            }
        }
    }
    m
}

/// Real skew-symmetric adjacency for arc-only graphs: 1 at `(u, v)` and -1
/// at `(v, u)` for an arc `u -> v`. The Hermitian matrix is `i` times this.
pub fn skew_adjacency(g: &MixedGraph) -> Result<GaussianIntMatrix, Error> {
    let n = g.n();
    let mut m = GaussianIntMatrix::zeros(n, n);
    for e in g.edges() {
        match e.kind {
            EdgeKind::Undirected => return Err(Error::HasUndirectedEdge),
            EdgeKind::Arc => {
                m.set(e.u, e.v, GaussianInt::one());
                m.set(e.v, e.u, GaussianInt::one().neg());
            }
        }
    }
    Ok(m)
}

/// Exact rank by fraction-free Gaussian elimination (Bareiss). Works for
/// rectangular matrices; every division is exact by Sylvester's identity.
pub fn rank_exact(m: &GaussianIntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<GaussianInt>> =
        (0..rows).map(|r| (0..cols).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut prev = GaussianInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (done, rest) = a.split_at_mut(rank + 1);
        let piv = &done[rank];
        for row in rest.iter_mut() {
            // Rows with a zero in the pivot column still get rescaled; the
            // Bareiss divisibility invariant needs every row updated.
            for c in (col + 1)..cols {
                let t = piv[col].mul(&row[c]).sub(&row[col].mul(&piv[c]));
                row[c] = t.exact_div(&prev);
            }
            row[col] = GaussianInt::zero();
        }
        prev = piv[col].clone();
        rank += 1;
    }
    rank
}

/// Rank of the Hermitian adjacency matrix.
pub fn h_rank(g: &MixedGraph) -> usize {
    rank_exact(&hermitian_adjacency(g))
}

/// Characteristic polynomial by the Faddeev–LeVerrier recurrence, computed
/// exactly over the Gaussian integers. Fails with `NonRealCoefficient` when
/// a coefficient has a nonzero imaginary part; Hermitian inputs never do.
pub fn charpoly_exact(m: &GaussianIntMatrix) -> Result<CharPoly, Error> {
    assert_eq!(m.rows(), m.cols(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Int::one()];
    if n == 0 {
        return Ok(CharPoly { coeffs });
    }
    let mut b = m.clone();
    for k in 1..=n {
        let tr = b.trace();
        let divisor = Int::from(k as i64);
        let ck = GaussianInt::new(
            tr.re.exact_div(&divisor).neg(),
            tr.im.exact_div(&divisor).neg(),
        );
        if !ck.im.is_zero() {
            return Err(Error::NonRealCoefficient);
        }
        coeffs.push(ck.re.clone());
        if k < n {
            b = m.mul(&b.add_diag(&ck));
        }
    }
    Ok(CharPoly { coeffs })
}
