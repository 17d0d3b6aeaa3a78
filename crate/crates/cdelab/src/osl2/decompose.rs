//! Splitting reduced projectives into indecomposable summands and the
//! reciprocity table.
//!
//! A map out of P(lambda) is the same thing as an element of the target's
//! lambda-space, so End(P(lambda)) is computed without solving any linear
//! system: its basis is indexed by the lambda-space of P itself and
//! composition is evaluated by applying raising and lowering words. The
//! primitive idempotents of that endomorphism algebra split P; each
//! filtration layer generator is acted on by each idempotent with scalar 0
//! or 1, which attributes the Verma filtration steps to summands.

use super::{
    build_projective, reduce_projective, verma_reduced, GradedModule, Projective, Window,
};
use crate::algebra::{primitive_idempotents, Algebra};
use crate::error::OslError;
use crate::linalg::{Field, Matrix};
use crate::par::par_map;
use crate::scalars::Cyclo;
use serde::{Deserialize, Serialize};

/// An indecomposable summand of a reduced projective, labeled by the
/// reduced highest weight of its top.
#[derive(Clone)]
pub struct Summand {
    pub label: Cyclo,
    /// Indices m of the Verma filtration layers (weights highest + 2m)
    /// attributed to this summand, ascending.
    pub layers: Vec<usize>,
    pub module: GradedModule<Cyclo>,
}

/// Apply e^m then f^j to a vector in the given space of a graded module,
/// returning the resulting vector and its space.
fn apply_word<T: Field>(
    module: &GradedModule<T>,
    space: usize,
    vector: &[T],
    raises: usize,
    lowers: usize,
) -> (usize, Vec<T>) {
    let mut s = space;
    let mut v = vector.to_vec();
    for _ in 0..raises {
        v = module.raise_map(s).mul_vec(&v);
        s = module.up_index(s).expect("word stays inside the window");
    }
    for _ in 0..lowers {
        v = module.lower_map(s).mul_vec(&v);
        s = module.down_index(s).expect("word stays inside the window");
    }
    (s, v)
}

/// Like `apply_word` but a word that leaves the module returns the zero
/// vector in the starting space (raises and lowers balance out).
fn apply_word_or_zero<T: Field>(
    module: &GradedModule<T>,
    space: usize,
    vector: &[T],
    raises: usize,
    lowers: usize,
) -> Vec<T> {
    let mut s = space;
    let mut v = vector.to_vec();
    for _ in 0..raises {
        let Some(u) = module.up_index(s) else {
            return vec![T::zero(); module.rank(space)];
        };
        v = module.raise_map(s).mul_vec(&v);
        s = u;
    }
    for _ in 0..lowers {
        let Some(d) = module.down_index(s) else {
            return vec![T::zero(); module.rank(space)];
        };
        v = module.lower_map(s).mul_vec(&v);
        s = d;
    }
    debug_assert_eq!(s, space);
    v
}

/// The endomorphism algebra of a reduced projective in the basis of its
/// generator weight space, together with that basis dimension.
fn endomorphism_algebra_of_projective(
    p: &Projective<Cyclo>,
) -> Result<Algebra<Cyclo>, OslError> {
    let gs = p.generator_space;
    let levels = p.levels;
    debug_assert_eq!(p.module.rank(gs), levels);
    // phi_a composed with phi_b sends the generator to phi_a(w_b); w_b is
    // expanded over the basis (m, m) of the lambda-space and each basis
    // vector maps to f^m e^m w_a.
    let mut constants = vec![vec![vec![Cyclo::zero(); levels]; levels]; levels];
    for a in 0..levels {
        let mut w_a = vec![Cyclo::zero(); levels];
        w_a[a] = Cyclo::one();
        // precompute f^m e^m w_a for every level m
        let words: Vec<Vec<Cyclo>> = (0..levels)
            .map(|m| apply_word(&p.module, gs, &w_a, m, m).1)
            .collect();
        for b in 0..levels {
            // w_b = basis vector b of the lambda-space; phi_a(w_b)
            // has coordinates words[m] weighted by w_b's coordinates,
            // and w_b is the standard basis vector with index b only if
            // the basis ordering matches (m, m) positions, which it does.
            constants[a][b] = words[b].clone();
        }
    }
    Algebra::new(constants, 0, None).map_err(OslError::Algebra)
}

/// Split a reduced projective into indecomposable summands via the
/// primitive idempotents of its endomorphism algebra. Each summand carries
/// the filtration layers its idempotent retains and is labeled by the
/// reduced weight of its lowest attributed layer (the top of the summand).
pub fn decompose_projective(p: &Projective<Cyclo>) -> Result<Vec<Summand>, OslError> {
    let end = endomorphism_algebra_of_projective(p)?;
    let idempotents = primitive_idempotents(&end).map_err(OslError::Algebra)?;
    let gs = p.generator_space;
    let levels = p.levels;
    let mut out = vec![];
    for eps in idempotents.elements() {
        // image of the generator under the idempotent endomorphism
        let w_eps: Vec<Cyclo> = eps.to_vec();
        // matrix of the endomorphism on every weight space; the basis of
        // space d is (m, j) and eps(f^j e^m v) = f^j e^m w_eps
        let mut image_basis: Vec<Vec<Vec<Cyclo>>> = vec![];
        for d in 0..p.module.spaces() {
            let mut cols: Vec<Vec<Cyclo>> = vec![];
            for &(m, j) in &p.basis[d] {
                let (space, v) = apply_word(&p.module, gs, &w_eps, m, j);
                debug_assert_eq!(space, d);
                cols.push(v);
            }
            let rank = p.module.rank(d);
            let basis = if cols.is_empty() {
                vec![]
            } else {
                Matrix::from_columns(&cols, rank).column_space_basis().0
            };
            image_basis.push(basis);
        }
        // attributed layers: eps on the layer generator (m, 0) has class
        // 0 or 1 on the leading basis vector of its space
        let mut layers = vec![];
        for m in 0..levels {
            let (space, v) = apply_word(&p.module, gs, &w_eps, m, 0);
            // basis of that space is (m', m' - m) for m' >= m; position 0 is (m, 0)
            debug_assert_eq!(p.basis[space][0], (m, 0));
            let scalar = &v[0];
            if scalar.is_one() {
                layers.push(m);
            } else {
                debug_assert!(scalar.is_zero(), "layer class must be idempotent");
            }
        }
        // restrict the module maps to the image
        let ranks: Vec<usize> = image_basis.iter().map(Vec::len).collect();
        let restrict = |maps: &dyn Fn(usize) -> (Matrix<Cyclo>, Option<usize>)| -> Vec<Matrix<Cyclo>> {
            (0..p.module.spaces())
                .map(|d| {
                    let (full, target) = maps(d);
                    let Some(u) = target else {
                        return Matrix::zero(0, ranks[d]);
                    };
                    if ranks[u] == 0 || ranks[d] == 0 {
                        return Matrix::zero(ranks[u], ranks[d]);
                    }
                    let tb = Matrix::from_columns(&image_basis[u], p.module.rank(u));
                    let mut out = Matrix::zero(ranks[u], ranks[d]);
                    for (c, vec) in image_basis[d].iter().enumerate() {
                        let image = full.mul_vec(vec);
                        let coords = tb
                            .solve(&image)
                            .expect("summand is invariant under the action");
                        for (r, x) in coords.into_iter().enumerate() {
                            out[(r, c)] = x;
                        }
                    }
                    out
                })
                .collect()
        };
        let raise = restrict(&|d| (p.module.raise_map(d).clone(), p.module.up_index(d)));
        let lower = restrict(&|d| (p.module.lower_map(d).clone(), p.module.down_index(d)));
        let module = GradedModule::new(
            p.module.weights().to_vec(),
            ranks,
            raise,
            lower,
            (0..p.module.spaces()).map(|d| p.module.up_index(d)).collect(),
            (0..p.module.spaces()).map(|d| p.module.down_index(d)).collect(),
            (0..p.module.spaces())
                .map(|d| p.module.is_bracket_exempt(d))
                .collect(),
        );
        let min_layer = *layers.first().expect("idempotent owns at least one layer");
        let label = p.highest.add(&Cyclo::from_int(2 * min_layer as i64));
        out.push(Summand {
            label,
            layers,
            module,
        });
    }
    Ok(out)
}

/// The indecomposable projective cover of the simple with reduced highest
/// weight mu: the summand of the reduced P(mu + Lambda) owning filtration
/// layer 0, together with the deformed filtration weights it retains.
pub fn projective_cover_summand(
    window: &Window,
    mu_reduced: &Cyclo,
) -> Result<(Summand, Vec<crate::scalars::RatFunc>), OslError> {
    let (chain, j) = window
        .locate_reduced(mu_reduced)
        .ok_or(OslError::WeightOutsideWindow {
            weight: mu_reduced.to_string(),
        })?;
    let mu = window.weight(chain, j);
    let p = build_projective(window, &mu)?;
    let reduced = reduce_projective(&p);
    let summands = decompose_projective(&reduced)?;
    let cover = summands
        .into_iter()
        .find(|s| s.layers.contains(&0))
        .expect("some summand owns the quotient layer");
    debug_assert_eq!(&cover.label, mu_reduced);
    // deformed filtration weights attributed to the cover
    let fil: Vec<crate::scalars::RatFunc> = cover
        .layers
        .iter()
        .map(|&m| mu.add(&crate::scalars::RatFunc::from_int(2 * m as i64)))
        .collect();
    Ok((cover, fil))
}

/// Jordan-Hoelder multiplicity [Zbar : Vbar(mu)] in the truncated category,
/// computed as the dimension of the graded intertwiner space from the
/// projective cover of Vbar(mu) into Zbar.
pub fn o_jh_multiplicity(
    z: &super::Verma<Cyclo>,
    mu_reduced: &Cyclo,
    window: &Window,
) -> Result<usize, OslError> {
    let (cover, _) = projective_cover_summand(window, mu_reduced)?;
    Ok(super::graded_hom_dim(&cover.module, &z.module))
}

/// Lean form of the cover: the idempotent's generator image and layer set,
/// without materializing the summand module.
struct CoverData {
    mu_reduced: Cyclo,
    levels: usize,
    /// Coordinates of the idempotent generator image in the lambda-space.
    generator_image: Vec<Cyclo>,
    layers: Vec<usize>,
}

fn cover_data(window: &Window, chain: usize, j: usize) -> Result<CoverData, OslError> {
    let mu = window.weight(chain, j);
    let p = build_projective(window, &mu)?;
    let reduced = reduce_projective(&p);
    let end = endomorphism_algebra_of_projective(&reduced)?;
    let idempotents = primitive_idempotents(&end).map_err(OslError::Algebra)?;
    let gs = reduced.generator_space;
    for eps in idempotents.elements() {
        let mut layers = vec![];
        for m in 0..reduced.levels {
            let v = apply_word(&reduced.module, gs, eps, m, 0).1;
            if v[0].is_one() {
                layers.push(m);
            }
        }
        if layers.first() == Some(&0) {
            return Ok(CoverData {
                mu_reduced: window.reduced_weight(chain, j),
                levels: reduced.levels,
                generator_image: eps.clone(),
                layers,
            });
        }
    }
    unreachable!("some summand owns the quotient layer")
}

/// dim Hom(cover, target): the rank of the map sending w in the mu-space of
/// the target to sum_m eps_m f^m e^m w (the restriction of maps out of the
/// full projective to the summand cut out by the idempotent).
fn cover_hom_rank(cover: &CoverData, target: &GradedModule<Cyclo>) -> usize {
    let Some(space) = target.locate_weight(&cover.mu_reduced) else {
        return 0;
    };
    let r = target.rank(space);
    if r == 0 {
        return 0;
    }
    let mut cols = vec![];
    for idx in 0..r {
        let mut w = vec![Cyclo::zero(); r];
        w[idx] = Cyclo::one();
        let mut acc = vec![Cyclo::zero(); r];
        for m in 0..cover.levels {
            if cover.generator_image[m].is_zero() {
                continue;
            }
            let word = apply_word_or_zero(target, space, &w, m, m);
            for (a, x) in acc.iter_mut().zip(&word) {
                *a = a.add(&cover.generator_image[m].mul(x));
            }
        }
        cols.push(acc);
    }
    Matrix::from_columns(&cols, r).rank()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DualityPair {
    pub lambda: String,
    pub mu: String,
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DualityReport {
    pub gammas: Vec<String>,
    pub depth: usize,
    pub pairs: Vec<DualityPair>,
}

impl DualityReport {
    pub fn all_equal(&self) -> bool {
        self.pairs.iter().all(|p| p.equal)
    }
}

/// For every pair of reduced window weights (lambda, mu): the multiplicity
/// of Vbar(mu) in Zbar(lambda) against the number of Verma filtration steps
/// of the cover of Vbar(mu) that reduce to lambda. The filtration count is
/// read off over R before reduction (or over k when `deform` is off).
/// Fails if any pair disagrees.
pub fn duality_report(
    gammas_reduced: &[Cyclo],
    depth: usize,
    deform: bool,
) -> Result<DualityReport, OslError> {
    let window = super::validate_window(gammas_reduced, deform, depth)?;
    let mus = window.all_reduced_weights();
    let lambdas = mus.clone();
    let positions: Vec<(usize, usize)> = (0..window.chains())
        .flat_map(|chain| (0..=depth).map(move |j| (chain, j)))
        .collect();
    // Per mu: the cover summand and its attributed filtration (over R, i.e.
    // the deformed weights mu + 2m for the retained layers m).
    let columns: Vec<Result<Vec<(usize, usize)>, OslError>> =
        par_map(positions, |(chain, j)| {
            let cover = cover_data(&window, chain, j)?;
            let fil_reduced: Vec<Cyclo> = cover
                .layers
                .iter()
                .map(|&m| cover.mu_reduced.add(&Cyclo::from_int(2 * m as i64)))
                .collect();
            lambdas
                .iter()
                .map(|lambda| {
                    let z = verma_reduced(&window, lambda)?;
                    let lhs = cover_hom_rank(&cover, &z.module);
                    let rhs = fil_reduced.iter().filter(|x| *x == lambda).count();
                    Ok((lhs, rhs))
                })
                .collect()
        });
    let mut pairs = vec![];
    let mut mismatches = vec![];
    let mut by_mu = vec![];
    for col in columns {
        by_mu.push(col?);
    }
    for (li, lambda) in lambdas.iter().enumerate() {
        for (mi, mu) in mus.iter().enumerate() {
            let (lhs, rhs) = by_mu[mi][li];
            let equal = lhs == rhs;
            if !equal {
                mismatches.push((lambda.to_string(), mu.to_string(), lhs, rhs));
            }
            pairs.push(DualityPair {
                lambda: lambda.to_string(),
                mu: mu.to_string(),
                lhs,
                rhs,
                equal,
            });
        }
    }
    if !mismatches.is_empty() {
        return Err(OslError::DualityMismatch { pairs: mismatches });
    }
    Ok(DualityReport {
        gammas: gammas_reduced.iter().map(Cyclo::to_string).collect(),
        depth,
        pairs,
    })
}
