//! Hecke algebras of types A1 and A2 over R, with their generic simple
//! modules. Generators satisfy (s - q)(s + 1) = 0 and, in type A2, the braid
//! relation s u s = u s u.
//!
//! The six-element A2 basis is ordered 1, s, u, su, us, sus. The q -> 0
//! specialization follows the defining relation, whose eigenvalues at q = 0
//! are {0, -1}; the four one-dimensional modules of the special fiber are
//! the pairs (s, u) in {0, -1}^2.

use crate::algebra::{DeformedAlgebra, Marker, Representation};
use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::scalars::{Cyclo, RatFunc};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HeckeType {
    A1,
    A2,
}

/// A Hecke algebra family member: the type and the R-integral parameter q.
#[derive(Clone, Debug)]
pub struct HeckeSpec {
    pub family: HeckeType,
    pub q: RatFunc,
    /// The specialization q(0), recorded at construction.
    pub q_at_zero: Cyclo,
}

impl HeckeSpec {
    pub fn new(family: HeckeType, q: RatFunc) -> Result<Self, AlgebraError> {
        let q_at_zero = q.reduce_at_zero()?;
        Ok(HeckeSpec {
            family,
            q,
            q_at_zero,
        })
    }
}

/// Index permutation induced by the diagram symmetry s <-> u of type A2.
pub const A2_DIAGRAM_INVOLUTION: [usize; 6] = [0, 2, 1, 4, 3, 5];

/// Words in the generators for the A2 basis 1, s, u, su, us, sus
/// (generator 0 is s, generator 1 is u).
const A2_WORDS: [&[usize]; 6] = [&[], &[0], &[1], &[0, 1], &[1, 0], &[0, 1, 0]];

/// Right multiplication of a basis word by one generator, as a linear
/// combination of basis words; rewriting uses the quadratic relation and
/// s u s = u s u.
fn a2_right_mul_generator(word: usize, generator: usize, q: &RatFunc) -> Vec<(usize, RatFunc)> {
    let qm1 = q.sub(&RatFunc::one());
    match (word, generator) {
        (0, 0) => vec![(1, RatFunc::one())],
        (1, 0) => vec![(0, q.clone()), (1, qm1)],
        (2, 0) => vec![(4, RatFunc::one())],
        (3, 0) => vec![(5, RatFunc::one())],
        (4, 0) => vec![(2, q.clone()), (4, qm1)],
        (5, 0) => vec![(3, q.clone()), (5, qm1)],
        (0, 1) => vec![(2, RatFunc::one())],
        (1, 1) => vec![(3, RatFunc::one())],
        (2, 1) => vec![(0, q.clone()), (2, qm1)],
        (3, 1) => vec![(1, q.clone()), (3, qm1)],
        (4, 1) => vec![(5, RatFunc::one())], // u s u = s u s
        (5, 1) => vec![(4, q.clone()), (5, qm1)], // s u s u = s (s u s) = q us + (q-1) sus
        _ => unreachable!(),
    }
}

fn a2_structure(q: &RatFunc) -> Vec<Vec<Vec<RatFunc>>> {
    let mut constants = vec![vec![vec![RatFunc::zero(); 6]; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            // Start from e_i and apply the generator word of e_j.
            let mut combo: Vec<RatFunc> = (0..6)
                .map(|k| if k == i { RatFunc::one() } else { RatFunc::zero() })
                .collect();
            for &g in A2_WORDS[j] {
                let mut next = vec![RatFunc::zero(); 6];
                for (w, coeff) in combo.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (target, c) in a2_right_mul_generator(w, g, q) {
                        next[target] = next[target].add(&coeff.mul(&c));
                    }
                }
                combo = next;
            }
            constants[i][j] = combo;
        }
    }
    constants
}

/// Construct the Hecke algebra of the given spec over R. The multiplication
/// table is derived by word rewriting and then validated by the exhaustive
/// associativity check of the algebra constructor.
pub fn hecke_algebra(spec: &HeckeSpec) -> Result<DeformedAlgebra, AlgebraError> {
    let q = &spec.q;
    match spec.family {
        HeckeType::A1 => {
            let z = RatFunc::zero;
            let o = RatFunc::one;
            DeformedAlgebra::new(
                vec![
                    vec![vec![o(), z()], vec![z(), o()]],
                    vec![vec![z(), o()], vec![q.clone(), q.sub(&o())]],
                ],
                0,
                Some(vec!["1".into(), "s".into()]),
            )
        }
        HeckeType::A2 => DeformedAlgebra::new(
            a2_structure(q),
            0,
            Some(
                ["1", "s", "u", "su", "us", "sus"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            ),
        ),
    }
}

/// Whether q, as an element of K, lies in the set where the generic fiber
/// fails to be semisimple: {0, -1} and the primitive cube roots of unity.
fn is_degenerate_parameter(q: &RatFunc) -> bool {
    if q.is_zero() || *q == RatFunc::from_int(-1) {
        return true;
    }
    // primitive cube roots of unity: q^3 = 1, q != 1
    let q3 = q.mul(q).mul(q);
    q3.is_one() && !q.is_one()
}

/// The complete set of simple modules of the generic fiber: the two
/// one-dimensional modules where both generators act by -1 resp. by q, and
/// for A2 the two-dimensional module. Completeness is audited by the sum of
/// squared dimensions.
pub fn hecke_k_simples(spec: &HeckeSpec) -> Result<Vec<Representation<RatFunc>>, AlgebraError> {
    if is_degenerate_parameter(&spec.q) {
        return Err(AlgebraError::DegenerateParameter {
            q: spec.q.to_string(),
        });
    }
    let algebra = hecke_algebra(spec)?;
    let generic = algebra.generic_fiber();
    let q = &spec.q;
    let scalar_module = |value: &RatFunc| -> Result<Representation<RatFunc>, AlgebraError> {
        let dim_a = generic.dim();
        let mut action = Vec::with_capacity(dim_a);
        for i in 0..dim_a {
            // a word of length L acts by value^L
            let len = match spec.family {
                HeckeType::A1 => usize::from(i == 1),
                HeckeType::A2 => A2_WORDS[i].len(),
            };
            let mut v = RatFunc::one();
            for _ in 0..len {
                v = v.mul(value);
            }
            action.push(Matrix::from_rows(vec![vec![v]]));
        }
        Representation::new(generic, action, Marker::Simple)
    };
    let mut simples = vec![
        scalar_module(&RatFunc::from_int(-1))?,
        scalar_module(q)?,
    ];
    if spec.family == HeckeType::A2 {
        // Two-dimensional module: s and u act with eigenvalues {q, -1} and
        // the braid relation holds.
        let s = Matrix::from_rows(vec![
            vec![RatFunc::from_int(-1), q.clone()],
            vec![RatFunc::zero(), q.clone()],
        ]);
        let u = Matrix::from_rows(vec![
            vec![q.clone(), RatFunc::zero()],
            vec![RatFunc::one(), RatFunc::from_int(-1)],
        ]);
        let action = vec![
            Matrix::identity(2),
            s.clone(),
            u.clone(),
            s.mul(&u),
            u.mul(&s),
            s.mul(&u).mul(&s),
        ];
        simples.push(Representation::new(generic, action, Marker::Simple)?);
    }
    let sum_sq: usize = simples.iter().map(|m| m.dim() * m.dim()).sum();
    if sum_sq != generic.dim() {
        return Err(AlgebraError::IncompleteSimples {
            found: sum_sq,
            expected: generic.dim(),
        });
    }
    Ok(simples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    fn spec(family: HeckeType, q: &str, order: u32) -> HeckeSpec {
        HeckeSpec::new(family, parse_scalar(q, order).unwrap()).unwrap()
    }

    #[test]
    fn a1_is_two_dimensional_over_r() {
        let a = hecke_algebra(&spec(HeckeType::A1, "-1 + t", 1)).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn a2_is_six_dimensional_for_the_cyclotomic_parameter() {
        let a = hecke_algebra(&spec(HeckeType::A2, "z + t", 3)).unwrap();
        assert_eq!(a.dim(), 6);
        let a0 = hecke_algebra(&spec(HeckeType::A2, "t", 1)).unwrap();
        assert_eq!(a0.dim(), 6);
    }

    #[test]
    fn defining_relations_hold_in_every_simple() {
        let sp = spec(HeckeType::A2, "z + t", 3);
        let q = sp.q.clone();
        for m in hecke_k_simples(&sp).unwrap() {
            let d = m.dim();
            let id = Matrix::identity(d);
            for gen in [1usize, 2] {
                let g = m.action(gen);
                let lhs = g.sub(&id.scale(&q)).mul(&g.add(&id));
                assert!(lhs.is_zero(), "quadratic relation fails in dim {d}");
            }
            let (s, u) = (m.action(1), m.action(2));
            assert_eq!(s.mul(u).mul(s), u.mul(s).mul(u), "braid relation");
        }
    }

    #[test]
    fn simple_dimensions() {
        let a1 = hecke_k_simples(&spec(HeckeType::A1, "-1 + t", 1)).unwrap();
        assert_eq!(
            a1.iter().map(Representation::dim).collect::<Vec<_>>(),
            vec![1, 1]
        );
        let a2 = hecke_k_simples(&spec(HeckeType::A2, "z + t", 3)).unwrap();
        assert_eq!(
            a2.iter().map(Representation::dim).collect::<Vec<_>>(),
            vec![1, 1, 2]
        );
    }

    #[test]
    fn degenerate_constants_are_rejected() {
        for bad in ["-1", "0"] {
            let sp = spec(HeckeType::A2, bad, 3);
            assert!(matches!(
                hecke_k_simples(&sp),
                Err(AlgebraError::DegenerateParameter { .. })
            ));
        }
        let zeta = spec(HeckeType::A2, "z", 3);
        assert!(matches!(
            hecke_k_simples(&zeta),
            Err(AlgebraError::DegenerateParameter { .. })
        ));
        // z + t is fine
        assert!(hecke_k_simples(&spec(HeckeType::A2, "z + t", 3)).is_ok());
    }

    #[test]
    fn diagram_involution_is_an_algebra_automorphism() {
        let a = hecke_algebra(&spec(HeckeType::A2, "z + t", 3)).unwrap();
        let g = a.generic_fiber();
        let p = A2_DIAGRAM_INVOLUTION;
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    assert_eq!(
                        g.constant(i, j, k),
                        g.constant(p[i], p[j], p[k]),
                        "automorphism fails at ({i}, {j}, {k})"
                    );
                }
            }
        }
    }
}
