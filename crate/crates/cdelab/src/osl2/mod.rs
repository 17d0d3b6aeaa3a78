//! Truncated deformed category O for sl2 over R.
//!
//! Objects are weight-graded modules supported on a window Gamma + Delta^-,
//! cut off at a finite depth N: weight spaces deeper than N are discarded
//! and lowering maps across the cut are zeroed. The commutator identity
//! [e, f] = h therefore cannot hold on the cut spaces themselves; those are
//! recorded per module and exempted from validation, and callers assert
//! claims only for constituents whose linkage class sits strictly inside
//! the window (the acceptance depths are chosen with that margin).
//!
//! The deformation direction is Lambda(h) = t: a reduced weight gamma lifts
//! to gamma + t, which is transcendental over k, so Verma modules over K
//! are irreducible and the deformed category is semisimple.

mod decompose;
mod homs;
#[cfg(test)]
mod tests;

pub use decompose::{
    decompose_projective, duality_report, o_jh_multiplicity, projective_cover_summand,
    DualityPair, DualityReport, Summand,
};
pub use homs::{
    character_matches_filtration, generic_verma_multiplicities, graded_hom_basis, graded_hom_dim,
};

use crate::error::OslError;
use crate::linalg::{Field, Matrix};
use crate::scalars::{Cyclo, RatFunc};

/// A validated window: chains gamma - 2j for each gamma, depths 0..=N, with
/// no two retained weights congruent modulo t.
#[derive(Clone, Debug)]
pub struct Window {
    gammas_reduced: Vec<Cyclo>,
    depth: usize,
    deformed: bool,
}

/// Check the congruence condition and build the window. With `deform` each
/// reduced weight gamma is lifted to gamma + t.
pub fn validate_window(
    gammas_reduced: &[Cyclo],
    deform: bool,
    depth: usize,
) -> Result<Window, OslError> {
    assert!(depth >= 1, "window depth must be positive");
    let n = gammas_reduced.len();
    for a in 0..n {
        for b in a + 1..n {
            for j_a in 0..=depth {
                for j_b in 0..=depth {
                    let wa = gammas_reduced[a].sub(&Cyclo::from_int(2 * j_a as i64));
                    let wb = gammas_reduced[b].sub(&Cyclo::from_int(2 * j_b as i64));
                    if wa == wb {
                        return Err(OslError::CongruenceViolation {
                            gamma_a: gammas_reduced[a].to_string(),
                            depth_a: j_a,
                            gamma_b: gammas_reduced[b].to_string(),
                            depth_b: j_b,
                        });
                    }
                }
            }
        }
    }
    Ok(Window {
        gammas_reduced: gammas_reduced.to_vec(),
        depth,
        deformed: deform,
    })
}

impl Window {
    pub fn chains(&self) -> usize {
        self.gammas_reduced.len()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_deformed(&self) -> bool {
        self.deformed
    }

    pub fn gammas_reduced(&self) -> &[Cyclo] {
        &self.gammas_reduced
    }

    /// The R-weight gamma + Lambda of one chain.
    pub fn gamma(&self, chain: usize) -> RatFunc {
        let base = RatFunc::constant(self.gammas_reduced[chain].clone());
        if self.deformed {
            base.add(&RatFunc::var())
        } else {
            base
        }
    }

    /// Deformed weight value at (chain, depth).
    pub fn weight(&self, chain: usize, j: usize) -> RatFunc {
        self.gamma(chain).sub(&RatFunc::from_int(2 * j as i64))
    }

    /// Reduced weight value at (chain, depth).
    pub fn reduced_weight(&self, chain: usize, j: usize) -> Cyclo {
        self.gammas_reduced[chain].sub(&Cyclo::from_int(2 * j as i64))
    }

    /// Locate a deformed weight value in the window.
    pub fn locate(&self, w: &RatFunc) -> Option<(usize, usize)> {
        for chain in 0..self.chains() {
            for j in 0..=self.depth {
                if self.weight(chain, j) == *w {
                    return Some((chain, j));
                }
            }
        }
        None
    }

    /// Locate a reduced weight value.
    pub fn locate_reduced(&self, w: &Cyclo) -> Option<(usize, usize)> {
        for chain in 0..self.chains() {
            for j in 0..=self.depth {
                if self.reduced_weight(chain, j) == *w {
                    return Some((chain, j));
                }
            }
        }
        None
    }

    /// All reduced weights, chain-major, shallow to deep.
    pub fn all_reduced_weights(&self) -> Vec<Cyclo> {
        let mut out = vec![];
        for chain in 0..self.chains() {
            for j in 0..=self.depth {
                out.push(self.reduced_weight(chain, j));
            }
        }
        out
    }
}

/// A weight-graded sl2-module: per-weight free spaces with raising and
/// lowering maps; h acts on the space of weight w as the scalar w. Maps that
/// leave the window are zero; spaces whose lowering map was cut by the
/// window bottom are exempt from the commutator validation.
#[derive(Clone)]
pub struct GradedModule<T: Field> {
    weights: Vec<T>,
    ranks: Vec<usize>,
    /// raise[i]: space i -> space up[i]; rows = rank of target (0 if none).
    raise: Vec<Matrix<T>>,
    lower: Vec<Matrix<T>>,
    up: Vec<Option<usize>>,
    down: Vec<Option<usize>>,
    bracket_exempt: Vec<bool>,
}

impl<T: Field> GradedModule<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        weights: Vec<T>,
        ranks: Vec<usize>,
        raise: Vec<Matrix<T>>,
        lower: Vec<Matrix<T>>,
        up: Vec<Option<usize>>,
        down: Vec<Option<usize>>,
        bracket_exempt: Vec<bool>,
    ) -> Self {
        let m = GradedModule {
            weights,
            ranks,
            raise,
            lower,
            up,
            down,
            bracket_exempt,
        };
        debug_assert!(m.brackets_hold(), "commutator identities violated");
        m
    }

    pub fn spaces(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, i: usize) -> &T {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn raise_map(&self, i: usize) -> &Matrix<T> {
        &self.raise[i]
    }

    pub fn lower_map(&self, i: usize) -> &Matrix<T> {
        &self.lower[i]
    }

    pub fn up_index(&self, i: usize) -> Option<usize> {
        self.up[i]
    }

    pub fn down_index(&self, i: usize) -> Option<usize> {
        self.down[i]
    }

    pub fn is_bracket_exempt(&self, i: usize) -> bool {
        self.bracket_exempt[i]
    }

    pub fn locate_weight(&self, w: &T) -> Option<usize> {
        self.weights.iter().position(|x| x == w)
    }

    /// Verify [e, f] = h on every non-exempt space ([h, e] = 2e and
    /// [h, f] = -2f hold by the grading itself).
    pub fn brackets_hold(&self) -> bool {
        for i in 0..self.spaces() {
            if self.bracket_exempt[i] {
                continue;
            }
            let r = self.ranks[i];
            let ef = match self.down[i] {
                Some(d) => self.raise[d].mul(&self.lower[i]),
                None => Matrix::zero(r, r),
            };
            let fe = match self.up[i] {
                Some(u) => self.lower[u].mul(&self.raise[i]),
                None => Matrix::zero(r, r),
            };
            let h = Matrix::identity(r).scale(&self.weights[i]);
            if ef.sub(&fe) != h {
                return false;
            }
        }
        true
    }

    /// Graded ranks as (weight, rank) pairs.
    pub fn character(&self) -> Vec<(T, usize)> {
        self.weights
            .iter()
            .cloned()
            .zip(self.ranks.iter().copied())
            .collect()
    }

    /// Direct sum, matching spaces by weight value.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut weights = self.weights.clone();
        for w in &other.weights {
            if !weights.contains(w) {
                weights.push(w.clone());
            }
        }
        let part_rank = |part: &Self, w: &T| part.locate_weight(w).map_or(0, |i| part.ranks[i]);
        let ranks: Vec<usize> = weights
            .iter()
            .map(|w| part_rank(self, w) + part_rank(other, w))
            .collect();
        let up: Vec<Option<usize>> = weights
            .iter()
            .map(|w| {
                let t = w.add(&T::from_int(2));
                weights.iter().position(|x| *x == t)
            })
            .collect();
        let down: Vec<Option<usize>> = weights
            .iter()
            .map(|w| {
                let t = w.sub(&T::from_int(2));
                weights.iter().position(|x| *x == t)
            })
            .collect();
        let assemble = |targets: &[Option<usize>], raising: bool| -> Vec<Matrix<T>> {
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let Some(u) = targets[i] else {
                        return Matrix::zero(0, ranks[i]);
                    };
                    let mut mat = Matrix::zero(ranks[u], ranks[i]);
                    let wu = &weights[u];
                    let self_target = part_rank(self, wu);
                    let self_source = part_rank(self, w);
                    if let Some(si) = self.locate_weight(w) {
                        let block = if raising {
                            &self.raise[si]
                        } else {
                            &self.lower[si]
                        };
                        for r in 0..block.rows() {
                            for c in 0..block.cols() {
                                mat[(r, c)] = block[(r, c)].clone();
                            }
                        }
                    }
                    if let Some(oi) = other.locate_weight(w) {
                        let block = if raising {
                            &other.raise[oi]
                        } else {
                            &other.lower[oi]
                        };
                        for r in 0..block.rows() {
                            for c in 0..block.cols() {
                                mat[(self_target + r, self_source + c)] = block[(r, c)].clone();
                            }
                        }
                    }
                    mat
                })
                .collect()
        };
        let raise = assemble(&up, true);
        let lower = assemble(&down, false);
        let exempt: Vec<bool> = weights
            .iter()
            .map(|w| {
                self.locate_weight(w)
                    .is_some_and(|i| self.bracket_exempt[i])
                    || other
                        .locate_weight(w)
                        .is_some_and(|i| other.bracket_exempt[i])
            })
            .collect();
        GradedModule::new(weights, ranks, raise, lower, up, down, exempt)
    }
}

impl GradedModule<RatFunc> {
    /// Whether all action entries and weights are regular at t = 0.
    pub fn is_integral(&self) -> bool {
        self.raise
            .iter()
            .chain(&self.lower)
            .all(|m| m.entries().all(RatFunc::is_r_integral))
            && self.weights.iter().all(RatFunc::is_r_integral)
    }

    /// Reduce every map and weight at t = 0.
    pub fn reduce_mod_t(&self) -> GradedModule<Cyclo> {
        let red = |m: &Matrix<RatFunc>| m.map(|x| x.reduce_at_zero().expect("integral entries"));
        GradedModule {
            weights: self
                .weights
                .iter()
                .map(|w| w.reduce_at_zero().expect("integral weight"))
                .collect(),
            ranks: self.ranks.clone(),
            raise: self.raise.iter().map(&red).collect(),
            lower: self.lower.iter().map(&red).collect(),
            up: self.up.clone(),
            down: self.down.clone(),
            bracket_exempt: self.bracket_exempt.clone(),
        }
    }
}

/// A (truncated) Verma module: space index m holds the weight
/// highest - 2m, each of rank 1.
#[derive(Clone)]
pub struct Verma<T: Field> {
    pub highest: T,
    pub module: GradedModule<T>,
}

fn verma_generic<T: Field>(highest: T, retained: usize) -> Verma<T> {
    let weights: Vec<T> = (0..retained)
        .map(|m| highest.sub(&T::from_int(2 * m as i64)))
        .collect();
    let ranks = vec![1usize; retained];
    let up: Vec<Option<usize>> = (0..retained).map(|m| m.checked_sub(1)).collect();
    let down: Vec<Option<usize>> = (0..retained)
        .map(|m| (m + 1 < retained).then_some(m + 1))
        .collect();
    let raise: Vec<Matrix<T>> = (0..retained)
        .map(|m| {
            if m == 0 {
                Matrix::zero(0, 1)
            } else {
                // e v_m = m (highest - m + 1) v_{m-1}
                let c = T::from_int(m as i64).mul(&highest.sub(&T::from_int(m as i64 - 1)));
                Matrix::from_rows(vec![vec![c]])
            }
        })
        .collect();
    let lower: Vec<Matrix<T>> = (0..retained)
        .map(|m| {
            if m + 1 < retained {
                Matrix::from_rows(vec![vec![T::one()]])
            } else {
                Matrix::zero(0, 1)
            }
        })
        .collect();
    let mut exempt = vec![false; retained];
    exempt[retained - 1] = true; // lowering map cut by the window bottom
    Verma {
        highest,
        module: GradedModule::new(weights, ranks, raise, lower, up, down, exempt),
    }
}

/// The deformed Verma module with the given highest weight of the window.
pub fn verma(window: &Window, highest: &RatFunc) -> Result<Verma<RatFunc>, OslError> {
    let (chain, j) = window.locate(highest).ok_or(OslError::WeightOutsideWindow {
        weight: highest.to_string(),
    })?;
    let retained = window.depth() - j + 1;
    Ok(verma_generic(window.weight(chain, j), retained))
}

/// The Verma module of the special fiber with the given reduced highest weight.
pub fn verma_reduced(window: &Window, highest: &Cyclo) -> Result<Verma<Cyclo>, OslError> {
    let (chain, j) = window
        .locate_reduced(highest)
        .ok_or(OslError::WeightOutsideWindow {
            weight: highest.to_string(),
        })?;
    let retained = window.depth() - j + 1;
    Ok(verma_generic(window.reduced_weight(chain, j), retained))
}

/// A projective object built by two-step induction: a rank-1 space of
/// weight lambda is induced up the raising direction inside the window
/// (levels lambda + 2m, 0 <= m <= j0) and then induced down freely,
/// truncated at the window depth. Basis vectors are labeled (m, j) for
/// f^j e^m applied to the generator; a map out of the object is determined
/// by the image of the generator in the lambda-space of the target.
#[derive(Clone)]
pub struct Projective<T: Field> {
    pub highest: T,
    /// Number of levels of the inducing b-module (rank of Q).
    pub levels: usize,
    pub module: GradedModule<T>,
    /// Per space: the (m, j) labels of its basis vectors, in order.
    pub basis: Vec<Vec<(usize, usize)>>,
    /// Space index holding the generator weight lambda.
    pub generator_space: usize,
}

fn projective_generic<T: Field>(lambda: T, j0: usize, window_depth: usize) -> Projective<T> {
    // Space s sits at window depth d = s: weight lambda + 2 j0 - 2d.
    let levels = j0 + 1;
    let spaces = window_depth + 1;
    let weights: Vec<T> = (0..spaces)
        .map(|d| {
            lambda
                .add(&T::from_int(2 * j0 as i64))
                .sub(&T::from_int(2 * d as i64))
        })
        .collect();
    let basis: Vec<Vec<(usize, usize)>> = (0..spaces)
        .map(|d| {
            (j0.saturating_sub(d)..=j0)
                .map(|m| (m, d + m - j0))
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = basis.iter().map(Vec::len).collect();
    let up: Vec<Option<usize>> = (0..spaces).map(|d| d.checked_sub(1)).collect();
    let down: Vec<Option<usize>> = (0..spaces)
        .map(|d| (d + 1 < spaces).then_some(d + 1))
        .collect();
    let pos_of = |d: usize, m: usize, j: usize| -> Option<usize> {
        basis
            .get(d)?
            .iter()
            .position(|&(bm, bj)| bm == m && bj == j)
    };
    // lowering: (m, j) -> (m, j+1)
    let lower: Vec<Matrix<T>> = (0..spaces)
        .map(|d| {
            if d + 1 >= spaces {
                return Matrix::zero(0, ranks[d]);
            }
            let mut mat = Matrix::zero(ranks[d + 1], ranks[d]);
            for (col, &(m, j)) in basis[d].iter().enumerate() {
                if let Some(row) = pos_of(d + 1, m, j + 1) {
                    mat[(row, col)] = T::one();
                }
            }
            mat
        })
        .collect();
    // raising: (m, j) -> (m+1, j), plus (m, j-1) with the commutator
    // coefficient j (mu - j + 1) for mu = lambda + 2m.
    let raise: Vec<Matrix<T>> = (0..spaces)
        .map(|d| {
            if d == 0 {
                return Matrix::zero(0, ranks[0]);
            }
            let mut mat = Matrix::zero(ranks[d - 1], ranks[d]);
            for (col, &(m, j)) in basis[d].iter().enumerate() {
                if m + 1 < levels {
                    if let Some(row) = pos_of(d - 1, m + 1, j) {
                        mat[(row, col)] = T::one();
                    }
                }
                if j >= 1 {
                    if let Some(row) = pos_of(d - 1, m, j - 1) {
                        let mu = lambda.add(&T::from_int(2 * m as i64));
                        let c = T::from_int(j as i64).mul(&mu.sub(&T::from_int(j as i64 - 1)));
                        mat[(row, col)] = mat[(row, col)].add(&c);
                    }
                }
            }
            mat
        })
        .collect();
    let mut exempt = vec![false; spaces];
    exempt[spaces - 1] = true;
    let module = GradedModule::new(weights, ranks, raise, lower, up, down, exempt);
    Projective {
        highest: lambda,
        levels,
        module,
        basis,
        generator_space: j0,
    }
}

/// Build the projective object P(lambda) over R for a deformed window weight.
pub fn build_projective(
    window: &Window,
    lambda: &RatFunc,
) -> Result<Projective<RatFunc>, OslError> {
    let (chain, j0) = window.locate(lambda).ok_or(OslError::WeightOutsideWindow {
        weight: lambda.to_string(),
    })?;
    Ok(projective_generic(
        window.weight(chain, j0),
        j0,
        window.depth(),
    ))
}

/// Reduce a projective object at t = 0, keeping the basis bookkeeping.
pub fn reduce_projective(p: &Projective<RatFunc>) -> Projective<Cyclo> {
    Projective {
        highest: p.highest.reduce_at_zero().expect("integral weight"),
        levels: p.levels,
        module: p.module.reduce_mod_t(),
        basis: p.basis.clone(),
        generator_space: p.generator_space,
    }
}

/// Highest weights of the successive Verma quotients of a projective,
/// in descending weight order.
pub fn verma_filtration<T: Field>(p: &Projective<T>) -> Vec<T> {
    (0..p.levels)
        .rev()
        .map(|m| p.highest.add(&T::from_int(2 * m as i64)))
        .collect()
}

/// Value of the contravariant form on the depth-j basis vector of a Verma,
/// computed by raising f^j v back up with the module's own matrices.
pub fn contravariant_gram<T: Field>(z: &Verma<T>, depth: usize) -> T {
    assert!(depth < z.module.spaces(), "depth outside the truncation");
    let mut current = vec![T::one()];
    let mut space = depth;
    for _ in 0..depth {
        current = z.module.raise_map(space).mul_vec(&current);
        space = z
            .module
            .up_index(space)
            .expect("raising stays inside the Verma");
    }
    current[0].clone()
}

/// Weight-wise dual with the action twisted by e <-> f: the raising map at
/// w is the transpose of the original lowering map out of w + 2, and
/// symmetrically. Graded ranks are preserved.
pub fn graded_dual<T: Field>(m: &GradedModule<T>) -> GradedModule<T> {
    let spaces = m.spaces();
    let raise: Vec<Matrix<T>> = (0..spaces)
        .map(|i| match m.up_index(i) {
            Some(u) => m.lower_map(u).transpose(),
            None => Matrix::zero(0, m.rank(i)),
        })
        .collect();
    let lower: Vec<Matrix<T>> = (0..spaces)
        .map(|i| match m.down_index(i) {
            Some(d) => m.raise_map(d).transpose(),
            None => Matrix::zero(0, m.rank(i)),
        })
        .collect();
    GradedModule {
        weights: m.weights.clone(),
        ranks: m.ranks.clone(),
        raise,
        lower,
        up: m.up.clone(),
        down: m.down.clone(),
        bracket_exempt: m.bracket_exempt.clone(),
    }
}
