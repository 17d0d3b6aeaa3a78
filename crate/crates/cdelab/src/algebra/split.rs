//! Radical computation and primitive idempotent extraction.
//!
//! The radical is the kernel of the trace form of the regular representation
//! (characteristic zero). The semisimple quotient is split by locating a
//! separating central element, finding the roots of its minimal polynomial
//! in the base field, and forming Lagrange idempotents; matrix blocks are
//! refined to primitive idempotents through a deterministic zero-divisor
//! search. Idempotents are lifted back along the nilpotent radical by the
//! Newton step e <- 3e^2 - 2e^3 in successive corners, which keeps the
//! lifted family orthogonal.

use super::{Algebra, Marker, Representation};
use crate::error::AlgebraError;
use crate::linalg::{Field, Matrix};

/// Basis of the Jacobson radical (characteristic zero only).
pub fn radical<T: Field>(algebra: &Algebra<T>) -> Vec<Vec<T>> {
    let n = algebra.dim();
    let gram = Matrix::from_fn(n, n, |i, j| {
        // trace(L_i L_j) without forming the product
        let (li, lj) = (algebra.left_mul_matrix(i), algebra.left_mul_matrix(j));
        let mut acc = T::zero();
        for a in 0..n {
            for b in 0..n {
                if !li[(a, b)].is_zero() && !lj[(b, a)].is_zero() {
                    acc = acc.add(&li[(a, b)].mul(&lj[(b, a)]));
                }
            }
        }
        acc
    });
    gram.kernel()
}

/// A complete orthogonal family of primitive idempotents, grouped by block
/// of the semisimple quotient; blocks are in bijection with the simple
/// modules.
#[derive(Clone, Debug)]
pub struct IdempotentSet<T> {
    elements: Vec<Vec<T>>,
    block_of: Vec<usize>,
    representatives: Vec<usize>,
}

impl<T: Field> IdempotentSet<T> {
    pub fn elements(&self) -> &[Vec<T>] {
        &self.elements
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn block_count(&self) -> usize {
        self.representatives.len()
    }

    /// The chosen primitive idempotent for one simple class.
    pub fn representative(&self, block: usize) -> &Vec<T> {
        &self.elements[self.representatives[block]]
    }
}

/// Quotient by a two-sided ideal: the quotient algebra (unit moved to basis
/// index 0), a section S -> A and the projection A -> S.
pub fn quotient_algebra<T: Field>(
    algebra: &Algebra<T>,
    ideal: &[Vec<T>],
) -> Result<(Algebra<T>, Matrix<T>, Matrix<T>), AlgebraError> {
    let dim = algebra.dim();
    if ideal.is_empty() {
        let id = Matrix::identity(dim);
        return Ok((algebra.clone(), id.clone(), id));
    }
    // Complement coordinates: indices that are not pivot rows of the ideal.
    let mut echelon = Matrix::from_columns(ideal, dim).transpose();
    let pivots = echelon.rref();
    let rank = pivots.len();
    let complement: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let mut fcols: Vec<Vec<T>> = (0..rank).map(|i| echelon.row(i).to_vec()).collect();
    for &c in &complement {
        let mut v = vec![T::zero(); dim];
        v[c] = T::one();
        fcols.push(v);
    }
    let f = Matrix::from_columns(&fcols, dim);
    let finv = f.inverse().expect("ideal basis completes to a basis");
    let qdim = complement.len();
    let proj0 = Matrix::from_fn(qdim, dim, |i, j| finv[(rank + i, j)].clone());
    let sect0 = Matrix::from_fn(dim, qdim, |i, j| {
        if complement[j] == i {
            T::one()
        } else {
            T::zero()
        }
    });

    // Move the image of the unit to basis index 0.
    let unit_q = proj0.mul_vec(&algebra.unit_vector());
    let mut cols = vec![unit_q];
    for i in 0..qdim {
        let mut v = vec![T::zero(); qdim];
        v[i] = T::one();
        cols.push(v);
    }
    let (basis_vecs, _) = Matrix::from_columns(&cols, qdim).column_space_basis();
    let g = Matrix::from_columns(&basis_vecs, qdim);
    let ginv = g.inverse().expect("completed quotient basis is invertible");

    let section = sect0.mul(&g);
    let proj = ginv.mul(&proj0);
    let mut constants = vec![vec![vec![T::zero(); qdim]; qdim]; qdim];
    for i in 0..qdim {
        for j in 0..qdim {
            let prod = algebra.multiply(&section.col(i), &section.col(j));
            constants[i][j] = proj.mul_vec(&prod);
        }
    }
    let quotient = Algebra::new(constants, 0, None)?;
    Ok((quotient, section, proj))
}

/// Minimal polynomial of an element, relative to a unit element (low degree
/// first, monic).
fn minimal_polynomial<T: Field>(
    algebra: &Algebra<T>,
    x: &[T],
    unit: &[T],
    ambient_rank: usize,
) -> Vec<T> {
    let dim = algebra.dim();
    let mut powers: Vec<Vec<T>> = vec![unit.to_vec()];
    loop {
        let k = powers.len();
        let next = algebra.multiply(powers.last().unwrap(), x);
        let mut cols = powers.clone();
        cols.push(next.clone());
        let m = Matrix::from_columns(&cols, dim);
        let kernel = m.kernel();
        if let Some(v) = kernel.first() {
            let lead_inv = v[k].inv().expect("dependency involves the last power");
            return v.iter().map(|c| c.mul(&lead_inv)).collect();
        }
        powers.push(next);
        if k > ambient_rank {
            unreachable!("minimal polynomial degree exceeds the algebra dimension");
        }
    }
}

/// Central primitive idempotents of a (semisimple) algebra, sorted by the
/// root of the separating element so the block order is deterministic.
pub fn central_primitive_idempotents<T: Field>(
    s: &Algebra<T>,
) -> Result<Vec<Vec<T>>, AlgebraError> {
    let center = s.center();
    let m = center.len();
    if m == 1 {
        return Ok(vec![s.unit_vector()]);
    }
    let unit = s.unit_vector();
    let cap = 2 + m * m * m;
    let mut separating: Option<(Vec<T>, Vec<T>)> = None;
    for w in 1..=cap as i64 {
        let wt = T::from_int(w);
        let mut z = vec![T::zero(); s.dim()];
        let mut pw = T::one();
        for basis in &center {
            for (acc, c) in z.iter_mut().zip(basis) {
                *acc = acc.add(&pw.mul(c));
            }
            pw = pw.mul(&wt);
        }
        let min_poly = minimal_polynomial(s, &z, &unit, m + 1);
        if min_poly.len() == m + 1 {
            separating = Some((z, min_poly));
            break;
        }
    }
    let Some((z, min_poly)) = separating else {
        return Err(AlgebraError::NonSplit {
            reason: "no separating central element found".into(),
        });
    };
    let mut roots = T::poly_roots(&min_poly);
    roots.sort_by(|a, b| a.cmp_key(b));
    if roots.len() < m {
        return Err(AlgebraError::NonSplit {
            reason: format!(
                "central minimal polynomial has only {} of {} roots in the base field",
                roots.len(),
                m
            ),
        });
    }
    // Lagrange idempotents of the separating element.
    let mut blocks = Vec::with_capacity(m);
    for b in 0..m {
        let mut e = unit.clone();
        for (j, cj) in roots.iter().enumerate() {
            if j == b {
                continue;
            }
            let denom = roots[b].sub(cj);
            let dinv = denom.inv().expect("roots of a squarefree polynomial are distinct");
            // e *= (z - c_j) / (c_b - c_j)
            let mut shifted = z.clone();
            for (x, u) in shifted.iter_mut().zip(&unit) {
                *x = x.sub(&cj.mul(u));
            }
            let scaled: Vec<T> = shifted.iter().map(|x| x.mul(&dinv)).collect();
            e = s.multiply(&e, &scaled);
        }
        debug_assert!(s.is_idempotent(&e));
        blocks.push(e);
    }
    Ok(blocks)
}

/// Basis of the corner algebra u S u, as vectors of S.
fn corner_basis<T: Field>(s: &Algebra<T>, u: &[T]) -> Vec<Vec<T>> {
    let lu = s.left_mul(u);
    let ru = s.right_mul(u);
    let mut cols = Vec::with_capacity(s.dim());
    for i in 0..s.dim() {
        let mut v = vec![T::zero(); s.dim()];
        v[i] = T::one();
        cols.push(lu.mul_vec(&ru.mul_vec(&v)));
    }
    Matrix::from_columns(&cols, s.dim()).column_space_basis().0
}

/// Split a corner of a (semisimple, single-block) algebra into a complete
/// orthogonal family of primitive idempotents summing to the corner unit.
fn split_corner<T: Field>(s: &Algebra<T>, unit_elem: Vec<T>) -> Result<Vec<Vec<T>>, AlgebraError> {
    let basis = corner_basis(s, &unit_elem);
    if basis.len() <= 1 {
        return Ok(vec![unit_elem]);
    }
    let e = find_proper_idempotent(s, &basis, &unit_elem)?;
    let rest: Vec<T> = unit_elem.iter().zip(&e).map(|(u, x)| u.sub(x)).collect();
    let mut out = split_corner(s, e)?;
    out.extend(split_corner(s, rest)?);
    Ok(out)
}

/// Deterministic zero-divisor search inside a corner algebra: find an
/// element with an eigenvalue in the base field, pass to the left ideal it
/// generates, and solve linearly for an idempotent right unit of that ideal.
fn find_proper_idempotent<T: Field>(
    s: &Algebra<T>,
    basis: &[Vec<T>],
    unit_elem: &[T],
) -> Result<Vec<T>, AlgebraError> {
    let dim_s = s.dim();
    let mut candidates: Vec<Vec<T>> = basis.to_vec();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            candidates.push(s.multiply(&basis[i], &basis[j]));
        }
    }
    for w in 1..=4i64 {
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let wt = T::from_int(w);
                let combo: Vec<T> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(a, b)| a.add(&wt.mul(b)))
                    .collect();
                candidates.push(combo);
            }
        }
    }

    for u in candidates {
        // Skip scalar multiples of the corner unit.
        let pair = Matrix::from_columns(&[u.clone(), unit_elem.to_vec()], dim_s);
        if pair.rank() < 2 {
            continue;
        }
        let min_poly = minimal_polynomial(s, &u, unit_elem, basis.len() + 1);
        let roots = T::poly_roots(&min_poly);
        for c in roots {
            let v: Vec<T> = u
                .iter()
                .zip(unit_elem)
                .map(|(a, b)| a.sub(&c.mul(b)))
                .collect();
            if v.iter().all(T::is_zero) {
                continue;
            }
            // Left ideal L = (corner) * v.
            let cols: Vec<Vec<T>> = basis
                .iter()
                .map(|b| s.multiply(b, &v))
                .collect();
            let (lbasis, _) = Matrix::from_columns(&cols, dim_s).column_space_basis();
            if lbasis.is_empty() {
                continue;
            }
            // Solve for e in L with x e = x for every basis element x of L.
            let r = lbasis.len();
            let mut rows: Vec<Vec<T>> = vec![];
            let mut rhs: Vec<T> = vec![];
            for x in &lbasis {
                let lx = s.left_mul(x);
                // row block: coefficients of alpha_j in x * l_j
                let images: Vec<Vec<T>> = lbasis.iter().map(|l| lx.mul_vec(l)).collect();
                for coord in 0..dim_s {
                    let row: Vec<T> = (0..r).map(|j| images[j][coord].clone()).collect();
                    rows.push(row);
                    rhs.push(x[coord].clone());
                }
            }
            let system = Matrix::from_rows(rows);
            let Some(alpha) = system.solve(&rhs) else {
                continue;
            };
            let mut e = vec![T::zero(); dim_s];
            for (j, a) in alpha.iter().enumerate() {
                for (acc, l) in e.iter_mut().zip(&lbasis[j]) {
                    *acc = acc.add(&a.mul(l));
                }
            }
            if e.iter().all(T::is_zero) || e == *unit_elem {
                continue;
            }
            debug_assert!(s.is_idempotent(&e));
            return Ok(e);
        }
    }
    Err(AlgebraError::NonSplit {
        reason: "matrix block resists the zero-divisor search".into(),
    })
}

/// Newton iteration e <- 3e^2 - 2e^3 from a lift of an idempotent of the
/// semisimple quotient; stabilizes exactly once the nilpotent error is gone.
pub fn newton_idempotent<T: Field>(
    algebra: &Algebra<T>,
    start: Vec<T>,
) -> Result<Vec<T>, AlgebraError> {
    let mut e = start;
    for _ in 0..64 {
        let e2 = algebra.multiply(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = algebra.multiply(&e2, &e);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| {
                T::from_int(3).mul(a).sub(&T::from_int(2).mul(b))
            })
            .collect();
    }
    Err(AlgebraError::NonSplit {
        reason: "idempotent lifting did not stabilize within 64 Newton steps".into(),
    })
}

/// Complete orthogonal set of primitive idempotents of an algebra over a
/// field with split semisimple quotient, lifted from the quotient along the
/// radical. One block per simple module, in deterministic order.
pub fn primitive_idempotents<T: Field>(
    algebra: &Algebra<T>,
) -> Result<IdempotentSet<T>, AlgebraError> {
    let rad = radical(algebra);
    let (s, section, _proj) = quotient_algebra(algebra, &rad)?;
    let blocks = central_primitive_idempotents(&s)?;

    let mut elements: Vec<Vec<T>> = vec![];
    let mut block_of: Vec<usize> = vec![];
    let mut representatives: Vec<usize> = vec![];
    let unit = algebra.unit_vector();
    for (b, block_e) in blocks.iter().enumerate() {
        representatives.push(elements.len());
        let prims = split_corner(&s, block_e.clone())?;
        for p in prims {
            // Corner-ize against the already-lifted family, then lift.
            let mut x = section.mul_vec(&p);
            let mut complement = unit.clone();
            for done in &elements {
                for (c, d) in complement.iter_mut().zip(done) {
                    *c = c.sub(d);
                }
            }
            x = algebra.multiply(&complement, &algebra.multiply(&x, &complement));
            let e = newton_idempotent(algebra, x)?;
            elements.push(e);
            block_of.push(b);
        }
    }

    // The family is orthogonal and congruent to a decomposition of 1 modulo
    // a nilpotent ideal, so it must sum to 1 exactly.
    let mut total = vec![T::zero(); algebra.dim()];
    for e in &elements {
        for (t, x) in total.iter_mut().zip(e) {
            *t = t.add(x);
        }
    }
    if total != unit {
        return Err(AlgebraError::NonSplit {
            reason: "lifted idempotents do not sum to the unit".into(),
        });
    }
    Ok(IdempotentSet {
        elements,
        block_of,
        representatives,
    })
}

/// The simple modules of a split semisimple algebra (each projective
/// indecomposable is already simple).
pub fn semisimple_simples<T: Field>(
    algebra: &Algebra<T>,
) -> Result<Vec<Representation<T>>, AlgebraError> {
    let rad = radical(algebra);
    if !rad.is_empty() {
        return Err(AlgebraError::NonSplit {
            reason: "algebra is not semisimple over the generic fiber".into(),
        });
    }
    let idem = primitive_idempotents(algebra)?;
    Ok(super::indecomposable_projectives(algebra, &idem)
        .into_iter()
        .map(|p| p.with_marker(Marker::Simple))
        .collect())
}
