//! Finite-dimensional associative unital algebras from structure constants,
//! their representations, radicals, primitive idempotents, projective
//! indecomposables, Hom spaces and Jordan-Hoelder multiplicities.

mod split;

pub use split::{
    central_primitive_idempotents, newton_idempotent, primitive_idempotents, quotient_algebra,
    radical, semisimple_simples, IdempotentSet,
};

use crate::error::AlgebraError;
use crate::linalg::{Field, Matrix};
use crate::scalars::{Cyclo, RatFunc};

/// How a representation arose, for bookkeeping in reports.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Marker {
    Simple,
    ProjectiveIndecomposable,
    Unmarked,
}

/// An associative unital algebra given by structure constants over a field
/// (or over R, via [`DeformedAlgebra`]). Stored as the left-multiplication
/// matrices of the basis: `left[i][(k, j)]` is the coefficient of `e_k` in
/// `e_i e_j`.
#[derive(Clone)]
pub struct Algebra<T: Field> {
    dim: usize,
    unit: usize,
    left: Vec<Matrix<T>>,
    labels: Vec<String>,
}

impl<T: Field> Algebra<T> {
    /// Validate structure constants: `constants[i][j][k]` is the coefficient
    /// of `e_k` in `e_i e_j`. Associativity and the unit law are checked
    /// exhaustively.
    pub fn new(
        constants: Vec<Vec<Vec<T>>>,
        unit: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        let dim = constants.len();
        assert!(unit < dim, "unit index out of range");
        let left: Vec<Matrix<T>> = (0..dim)
            .map(|i| Matrix::from_fn(dim, dim, |k, j| constants[i][j][k].clone()))
            .collect();

        // Unit law: e_u e_j = e_j = e_j e_u.
        for j in 0..dim {
            for k in 0..dim {
                let expect = if j == k { T::one() } else { T::zero() };
                if constants[unit][j][k] != expect || constants[j][unit][k] != expect {
                    return Err(AlgebraError::UnitLaw { unit, j, k });
                }
            }
        }

        // Associativity as the matrix identity L_i L_j = sum_k a_ij^k L_k.
        for i in 0..dim {
            for j in 0..dim {
                let lhs = left[i].mul(&left[j]);
                let mut rhs = Matrix::zero(dim, dim);
                for k in 0..dim {
                    if !constants[i][j][k].is_zero() {
                        rhs = rhs.add(&left[k].scale(&constants[i][j][k]));
                    }
                }
                if lhs != rhs {
                    for k in 0..dim {
                        for l in 0..dim {
                            if lhs[(l, k)] != rhs[(l, k)] {
                                return Err(AlgebraError::Associativity { i, j, k, l });
                            }
                        }
                    }
                }
            }
        }

        let labels =
            labels.unwrap_or_else(|| (0..dim).map(|i| format!("e{}", i + 1)).collect());
        Ok(Algebra {
            dim,
            unit,
            left,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coefficient of `e_k` in `e_i e_j`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &T {
        &self.left[i][(k, j)]
    }

    pub fn left_mul_matrix(&self, i: usize) -> &Matrix<T> {
        &self.left[i]
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mul(&self, x: &[T]) -> Matrix<T> {
        let mut acc = Matrix::zero(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.left[i].scale(c));
            }
        }
        acc
    }

    /// Right multiplication by an arbitrary element.
    pub fn right_mul(&self, x: &[T]) -> Matrix<T> {
        // (R_x)_{k,i} = coefficient of e_k in e_i * x
        Matrix::from_fn(self.dim, self.dim, |k, i| {
            let mut acc = T::zero();
            for (j, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&self.constant(i, j, k).mul(c));
                }
            }
            acc
        })
    }

    pub fn multiply(&self, x: &[T], y: &[T]) -> Vec<T> {
        self.left_mul(x).mul_vec(y)
    }

    pub fn unit_vector(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim];
        v[self.unit] = T::one();
        v
    }

    pub fn is_idempotent(&self, x: &[T]) -> bool {
        self.multiply(x, x) == x
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular_module(&self) -> Representation<T> {
        Representation {
            algebra_dim: self.dim,
            dim: self.dim,
            action: self.left.clone(),
            marker: Marker::Unmarked,
        }
    }

    /// Basis of the center, as coordinate vectors.
    pub fn center(&self) -> Vec<Vec<T>> {
        if self.dim == 0 {
            return vec![];
        }
        let blocks: Vec<Matrix<T>> = (0..self.dim)
            .map(|i| self.left[i].sub(&self.right_mul_basis(i)))
            .collect();
        Matrix::vstack(&blocks).kernel()
    }

    fn right_mul_basis(&self, i: usize) -> Matrix<T> {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.constant(j, i, k).clone())
    }

    /// Express the multiplication in a new basis (columns of `basis`, in old
    /// coordinates, with `basis` invertible); `new_unit` in old coordinates.
    pub fn rebase(&self, basis: &Matrix<T>, unit_index: usize) -> Result<Algebra<T>, AlgebraError> {
        let inv = basis.inverse().expect("basis change must be invertible");
        let n = self.dim;
        let mut constants = vec![vec![vec![T::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.multiply(&basis.col(i), &basis.col(j));
                let coords = inv.mul_vec(&prod);
                constants[i][j] = coords;
            }
        }
        Algebra::new(constants, unit_index, None)
    }
}

/// An algebra over R: a deformation whose structure constants are regular at
/// t = 0. The generic fiber lives over K, the special fiber over k.
#[derive(Clone)]
pub struct DeformedAlgebra {
    inner: Algebra<RatFunc>,
}

impl DeformedAlgebra {
    pub fn new(
        constants: Vec<Vec<Vec<RatFunc>>>,
        unit: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        for (i, plane) in constants.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (k, c) in row.iter().enumerate() {
                    if !c.is_r_integral() {
                        return Err(AlgebraError::NonIntegralConstant { i, j, k });
                    }
                }
            }
        }
        Ok(DeformedAlgebra {
            inner: Algebra::new(constants, unit, labels)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Scalar extension to K: the same structure constants read in k(t).
    pub fn generic_fiber(&self) -> &Algebra<RatFunc> {
        &self.inner
    }

    /// Reduction modulo the maximal ideal: evaluate every constant at t = 0.
    pub fn special_fiber(&self) -> Algebra<Cyclo> {
        let n = self.inner.dim();
        let constants: Vec<Vec<Vec<Cyclo>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| self.inner.constant(i, j, k).reduce_at_zero().unwrap())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Algebra::new(constants, self.inner.unit_index(), Some(self.inner.labels().to_vec()))
            .expect("reduction of a valid algebra is valid")
    }
}

/// A left module over an [`Algebra`], one action matrix per basis element;
/// action matrices multiply column coordinate vectors.
#[derive(Clone)]
pub struct Representation<T: Field> {
    algebra_dim: usize,
    dim: usize,
    action: Vec<Matrix<T>>,
    marker: Marker,
}

impl<T: Field> Representation<T> {
    pub fn new(
        algebra: &Algebra<T>,
        action: Vec<Matrix<T>>,
        marker: Marker,
    ) -> Result<Self, AlgebraError> {
        assert_eq!(action.len(), algebra.dim());
        let d = action.first().map_or(0, Matrix::rows);
        for m in &action {
            assert_eq!((m.rows(), m.cols()), (d, d), "action matrices must be square");
        }
        if action[algebra.unit_index()] != Matrix::identity(d) {
            return Err(AlgebraError::NotAModule {
                i: algebra.unit_index(),
                j: algebra.unit_index(),
            });
        }
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                let lhs = action[i].mul(&action[j]);
                let mut rhs = Matrix::zero(d, d);
                for k in 0..algebra.dim() {
                    let c = algebra.constant(i, j, k);
                    if !c.is_zero() {
                        rhs = rhs.add(&action[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(AlgebraError::NotAModule { i, j });
                }
            }
        }
        Ok(Representation {
            algebra_dim: algebra.dim(),
            dim: d,
            action,
            marker,
        })
    }

    /// Zero module.
    pub fn zero(algebra: &Algebra<T>) -> Self {
        Representation {
            algebra_dim: algebra.dim(),
            dim: 0,
            action: (0..algebra.dim()).map(|_| Matrix::zero(0, 0)).collect(),
            marker: Marker::Unmarked,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn marker(&self) -> Marker {
        self.marker
    }

    pub fn with_marker(mut self, marker: Marker) -> Self {
        self.marker = marker;
        self
    }

    pub fn action(&self, i: usize) -> &Matrix<T> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<T>] {
        &self.action
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, x: &[T]) -> Matrix<T> {
        assert_eq!(x.len(), self.algebra_dim);
        let mut acc = Matrix::zero(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.action[i].scale(c));
            }
        }
        acc
    }

    /// Direct sum, block diagonal action.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.algebra_dim, other.algebra_dim);
        let d = self.dim + other.dim;
        let action = (0..self.algebra_dim)
            .map(|i| {
                Matrix::from_fn(d, d, |r, c| {
                    if r < self.dim && c < self.dim {
                        self.action[i][(r, c)].clone()
                    } else if r >= self.dim && c >= self.dim {
                        other.action[i][(r - self.dim, c - self.dim)].clone()
                    } else {
                        T::zero()
                    }
                })
            })
            .collect();
        Representation {
            algebra_dim: self.algebra_dim,
            dim: d,
            action,
            marker: Marker::Unmarked,
        }
    }

    /// Restrict to an invariant subspace spanned by `basis` columns.
    pub fn restrict_to(&self, basis: &[Vec<T>]) -> Self {
        Representation {
            algebra_dim: self.algebra_dim,
            dim: basis.len(),
            action: restrict_action(&self.action, basis, self.dim),
            marker: Marker::Unmarked,
        }
    }
}

/// Restrict a family of commuting-compatible action matrices to the span of
/// `basis` columns; panics if the span is not invariant.
pub fn restrict_action<T: Field>(
    action: &[Matrix<T>],
    basis: &[Vec<T>],
    ambient_dim: usize,
) -> Vec<Matrix<T>> {
    let r = basis.len();
    let b = Matrix::from_columns(basis, ambient_dim);
    action
        .iter()
        .map(|m| {
            let mut out = Matrix::zero(r, r);
            for j in 0..r {
                let image = m.mul_vec(&basis[j]);
                let coords = b
                    .solve(&image)
                    .expect("subspace must be invariant under the action");
                for i in 0..r {
                    out[(i, j)] = coords[i].clone();
                }
            }
            out
        })
        .collect()
}

/// Quotient of the ambient module by the span of `sub` columns: returns the
/// quotient action matrices together with the projection matrix.
pub fn quotient_action<T: Field>(
    action: &[Matrix<T>],
    sub: &[Vec<T>],
    ambient_dim: usize,
) -> (Vec<Matrix<T>>, Matrix<T>) {
    // Choose complement coordinates: standard vectors whose indices are not
    // pivot rows of the column space of `sub`.
    let sub_matrix = Matrix::from_columns(sub, ambient_dim);
    let mut echelon = sub_matrix.transpose();
    let pivots = echelon.rref();
    let complement: Vec<usize> = (0..ambient_dim).filter(|i| !pivots.contains(i)).collect();
    // Full basis F = [sub basis | complement std]; projection = last rows of F^-1.
    let rank = pivots.len();
    let reduced_sub: Vec<Vec<T>> = (0..rank).map(|i| echelon.row(i).to_vec()).collect();
    let mut fcols: Vec<Vec<T>> = reduced_sub;
    for &c in &complement {
        let mut v = vec![T::zero(); ambient_dim];
        v[c] = T::one();
        fcols.push(v);
    }
    let f = Matrix::from_columns(&fcols, ambient_dim);
    let finv = f.inverse().expect("completed basis is invertible");
    let qdim = complement.len();
    let proj = Matrix::from_fn(qdim, ambient_dim, |i, j| finv[(rank + i, j)].clone());
    let sect = Matrix::from_fn(ambient_dim, qdim, |i, j| {
        if complement[j] == i {
            T::one()
        } else {
            T::zero()
        }
    });
    let q_action = action
        .iter()
        .map(|m| proj.mul(&m.mul(&sect)))
        .collect();
    (q_action, proj)
}

/// Basis of the space of intertwiners M -> N, as matrices.
pub fn hom_space<T: Field>(
    m: &Representation<T>,
    n: &Representation<T>,
) -> Vec<Matrix<T>> {
    assert_eq!(m.algebra_dim, n.algebra_dim);
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return vec![];
    }
    // Unknown f is dn x dm, vectorized row-major: f[a][b] at index a*dm + b.
    let unknowns = dn * dm;
    let mut rows: Vec<Vec<T>> = vec![];
    for i in 0..m.algebra_dim {
        let rm = m.action(i);
        let rn = n.action(i);
        for a in 0..dn {
            for b in 0..dm {
                let mut row = vec![T::zero(); unknowns];
                // (rn * f)[a][b] = sum_c rn[a][c] f[c][b]
                for c in 0..dn {
                    if !rn[(a, c)].is_zero() {
                        row[c * dm + b] = row[c * dm + b].add(&rn[(a, c)]);
                    }
                }
                // (f * rm)[a][b] = sum_c f[a][c] rm[c][b]
                for c in 0..dm {
                    if !rm[(c, b)].is_zero() {
                        row[a * dm + c] = row[a * dm + c].sub(&rm[(c, b)]);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        // No constraints: every matrix intertwines (zero algebra edge case).
        return (0..unknowns)
            .map(|idx| Matrix::from_fn(dn, dm, |a, b| {
                if a * dm + b == idx {
                    T::one()
                } else {
                    T::zero()
                }
            }))
            .collect();
    }
    let system = Matrix::from_rows(rows);
    system
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_fn(dn, dm, |a, b| v[a * dm + b].clone()))
        .collect()
}

/// Number of times the simple module with index `i` (in the idempotent set)
/// occurs in a Jordan-Hoelder series of `n`, computed as the rank of the
/// action of the corresponding primitive idempotent.
pub fn jh_multiplicity<T: Field>(
    n: &Representation<T>,
    idempotents: &IdempotentSet<T>,
    simple_index: usize,
) -> usize {
    if n.dim() == 0 {
        return 0;
    }
    n.act(idempotents.representative(simple_index)).rank()
}

/// Independent brute-force composition multiset: refine the radical
/// filtration N > JN > J^2 N > ... and split each semisimple layer by Hom
/// dimensions against the given simples. Returns per-simple multiplicities.
pub fn composition_series_oracle<T: Field>(
    algebra: &Algebra<T>,
    n: &Representation<T>,
    simples: &[Representation<T>],
) -> Vec<usize> {
    let rad = radical(algebra);
    let mut counts = vec![0usize; simples.len()];
    if n.dim() == 0 {
        return counts;
    }
    // Current submodule basis, starting with all of N.
    let mut current: Vec<Vec<T>> = (0..n.dim())
        .map(|i| {
            let mut v = vec![T::zero(); n.dim()];
            v[i] = T::one();
            v
        })
        .collect();
    loop {
        // J * current
        let mut next_cols: Vec<Vec<T>> = vec![];
        for r in &rad {
            let act = n.act(r);
            for v in &current {
                next_cols.push(act.mul_vec(v));
            }
        }
        let next: Vec<Vec<T>> = if next_cols.is_empty() {
            vec![]
        } else {
            let (basis, _) = Matrix::from_columns(&next_cols, n.dim()).column_space_basis();
            basis
        };
        // Layer = current / next, a semisimple module.
        let cur_action = restrict_action(n.actions(), &current, n.dim());
        let cur_dim = current.len();
        let b = Matrix::from_columns(&current, n.dim());
        let next_in_cur: Vec<Vec<T>> = next
            .iter()
            .map(|v| b.solve(v).expect("J N is contained in N"))
            .collect();
        let (layer_action, _) = quotient_action(&cur_action, &next_in_cur, cur_dim);
        let layer = Representation {
            algebra_dim: algebra.dim(),
            dim: cur_dim - next_in_cur.len(),
            action: layer_action,
            marker: Marker::Unmarked,
        };
        for (s, simple) in simples.iter().enumerate() {
            counts[s] += hom_space(&layer, simple).len();
        }
        if next.is_empty() {
            break;
        }
        current = next;
    }
    counts
}

/// The simple quotient P / (rad A) P of a projective indecomposable.
pub fn top<T: Field>(algebra: &Algebra<T>, p: &Representation<T>) -> Representation<T> {
    let rad = radical(algebra);
    let mut cols: Vec<Vec<T>> = vec![];
    for r in &rad {
        let act = p.act(r);
        for j in 0..p.dim() {
            cols.push(act.col(j));
        }
    }
    let sub: Vec<Vec<T>> = if cols.is_empty() {
        vec![]
    } else {
        Matrix::from_columns(&cols, p.dim()).column_space_basis().0
    };
    let (action, _) = quotient_action(p.actions(), &sub, p.dim());
    Representation {
        algebra_dim: algebra.dim(),
        dim: p.dim() - sub.len(),
        action,
        marker: Marker::Simple,
    }
}

/// The projective indecomposables A e_i, one per simple class (block), in
/// block order, each marked.
pub fn indecomposable_projectives<T: Field>(
    algebra: &Algebra<T>,
    idempotents: &IdempotentSet<T>,
) -> Vec<Representation<T>> {
    (0..idempotents.block_count())
        .map(|b| {
            let e = idempotents.representative(b);
            let re = algebra.right_mul(e);
            let (basis, _) = re.column_space_basis();
            let action = restrict_action(
                &(0..algebra.dim())
                    .map(|i| algebra.left_mul_matrix(i).clone())
                    .collect::<Vec<_>>(),
                &basis,
                algebra.dim(),
            );
            Representation {
                algebra_dim: algebra.dim(),
                dim: basis.len(),
                action,
                marker: Marker::ProjectiveIndecomposable,
            }
        })
        .collect()
}

/// End(M) as an abstract algebra with the identity moved to basis index 0;
/// returns the algebra together with the endomorphism matrices realizing the
/// chosen basis.
pub fn endomorphism_algebra<T: Field>(
    m: &Representation<T>,
) -> Result<(Algebra<T>, Vec<Matrix<T>>), AlgebraError> {
    let hom = hom_space(m, m);
    let d = m.dim();
    let r = hom.len();
    assert!(r >= 1, "End of a nonzero module contains the identity");
    // Basis with the identity first: stack vectorized [id | hom...] and take
    // the column space (the identity is independent, so it is kept first).
    let vecize = |mat: &Matrix<T>| -> Vec<T> {
        let mut v = Vec::with_capacity(d * d);
        for i in 0..d {
            v.extend(mat.row(i).iter().cloned());
        }
        v
    };
    let mut cols = vec![vecize(&Matrix::identity(d))];
    for h in &hom {
        cols.push(vecize(h));
    }
    let (basis_vecs, _) = Matrix::from_columns(&cols, d * d).column_space_basis();
    assert_eq!(basis_vecs.len(), r, "identity lies in the hom space");
    let basis_mats: Vec<Matrix<T>> = basis_vecs
        .iter()
        .map(|v| Matrix::from_fn(d, d, |i, j| v[i * d + j].clone()))
        .collect();
    let b = Matrix::from_columns(&basis_vecs, d * d);
    let mut constants = vec![vec![vec![T::zero(); r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            let prod = basis_mats[i].mul(&basis_mats[j]);
            let coords = b
                .solve(&vecize(&prod))
                .expect("End(M) is closed under composition");
            constants[i][j] = coords;
        }
    }
    let alg = Algebra::new(constants, 0, None)?;
    Ok((alg, basis_mats))
}

/// Whether End(M) is a local ring (no nontrivial idempotents). Complete for
/// modules whose endomorphism ring splits over the base field; a matrix
/// block that resists the deterministic zero-divisor search is reported as
/// local, which matches the split inputs this library accepts elsewhere.
pub fn is_local_endoring<T: Field>(m: &Representation<T>) -> bool {
    if m.dim() == 0 {
        return false;
    }
    let (end_alg, _) = endomorphism_algebra(m).expect("endomorphism algebra construction");
    if end_alg.dim() == 1 {
        return true;
    }
    let rad = radical(&end_alg);
    if end_alg.dim() - rad.len() == 1 {
        return true;
    }
    match primitive_idempotents(&end_alg) {
        Ok(set) => set.elements().len() == 1,
        Err(_) => true,
    }
}

#[cfg(test)]
mod tests;
