//! Assembly of the decomposition matrix D, the Cartan matrix C and the
//! multiplicity matrix E = D^t, with exact consistency audits.
//!
//! D is computed from lattices: each simple module of the generic fiber is
//! spun to a lattice from the standard basis, reduced at t = 0, and measured
//! against the simples of the special fiber. C is computed independently
//! from Hom spaces between projective indecomposables. E is defined as D^t;
//! the rank and regular-module audits would fail if that identity were
//! violated in any computed instance.

use crate::algebra::{
    hom_space, indecomposable_projectives, jh_multiplicity, primitive_idempotents,
    semisimple_simples, top, Algebra, DeformedAlgebra, Representation,
};
use crate::error::CdeError;
use crate::lattices::spin_lattice;

use crate::par::par_map;
use crate::scalars::{Cyclo, RatFunc};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GenericSimpleInfo {
    pub label: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecialSimpleInfo {
    pub label: String,
    pub dim: usize,
    pub projective_cover_dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Audit {
    pub name: String,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
}

/// The full cde data of one deformed algebra. Matrix conventions: D is
/// (special simples) x (generic simples), C is square on the special side,
/// E = D^t.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CdeReport {
    pub generic_simples: Vec<GenericSimpleInfo>,
    pub special_simples: Vec<SpecialSimpleInfo>,
    pub d: Vec<Vec<u64>>,
    pub c: Vec<Vec<u64>>,
    pub e: Vec<Vec<u64>>,
    pub audits: Vec<Audit>,
}

impl CdeReport {
    pub fn all_audits_pass(&self) -> bool {
        self.audits.iter().all(|a| a.passed)
    }

    /// Apply a permutation to the special-simple axis (rows of D and C,
    /// columns of C and E): `perm[new_index] = old_index`.
    pub fn permute_special(mut self, perm: &[usize]) -> Self {
        let l = self.special_simples.len();
        assert_eq!(perm.len(), l);
        let pick_rows = |m: &[Vec<u64>]| -> Vec<Vec<u64>> {
            perm.iter().map(|&i| m[i].clone()).collect()
        };
        let pick_cols = |m: &[Vec<u64>]| -> Vec<Vec<u64>> {
            m.iter()
                .map(|row| perm.iter().map(|&j| row[j]).collect())
                .collect()
        };
        self.special_simples = perm
            .iter()
            .map(|&i| self.special_simples[i].clone())
            .collect();
        self.d = pick_rows(&self.d);
        self.c = pick_cols(&pick_rows(&self.c));
        self.e = pick_cols(&self.e);
        self
    }
}

fn int_matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    (0..cols)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

/// Everything the special fiber contributes: the algebra, its primitive
/// idempotents, projective covers and simple tops, in deterministic order.
pub struct SpecialFiberData {
    pub algebra: Algebra<Cyclo>,
    pub idempotents: crate::algebra::IdempotentSet<Cyclo>,
    pub projectives: Vec<Representation<Cyclo>>,
    pub simples: Vec<Representation<Cyclo>>,
}

pub fn special_fiber_data(deformed: &DeformedAlgebra) -> Result<SpecialFiberData, CdeError> {
    let algebra = deformed.special_fiber();
    let idempotents = primitive_idempotents(&algebra)?;
    let projectives = indecomposable_projectives(&algebra, &idempotents);
    let simples = projectives.iter().map(|p| top(&algebra, p)).collect();
    Ok(SpecialFiberData {
        algebra,
        idempotents,
        projectives,
        simples,
    })
}

/// D_{ij}: multiplicity of the i-th special simple in the reduction of a
/// lattice spun inside the j-th generic simple. Columns are computed
/// independently (and in parallel when enabled) with a deterministic merge.
pub fn decomposition_matrix(
    deformed: &DeformedAlgebra,
    generic_simples: &[Representation<RatFunc>],
    special: &SpecialFiberData,
) -> Result<Vec<Vec<u64>>, CdeError> {
    let sum_sq: usize = generic_simples.iter().map(|m| m.dim() * m.dim()).sum();
    if sum_sq != deformed.dim() {
        return Err(CdeError::Algebra(
            crate::error::AlgebraError::IncompleteSimples {
                found: sum_sq,
                expected: deformed.dim(),
            },
        ));
    }
    let columns: Vec<Result<Vec<u64>, CdeError>> =
        par_map(generic_simples.iter().collect::<Vec<_>>(), |m| {
            let seeds: Vec<Vec<RatFunc>> = (0..m.dim())
                .map(|i| {
                    (0..m.dim())
                        .map(|j| {
                            if i == j {
                                RatFunc::one()
                            } else {
                                RatFunc::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            let lattice = spin_lattice(deformed, m, &seeds)?;
            let reduced = lattice.reduce(&special.algebra);
            Ok((0..special.simples.len())
                .map(|i| jh_multiplicity(&reduced, &special.idempotents, i) as u64)
                .collect())
        });
    let mut d = vec![vec![0u64; generic_simples.len()]; special.simples.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col?.into_iter().enumerate() {
            d[i][j] = v;
        }
    }
    Ok(d)
}

/// C_{ij} = dim Hom(P_i, P_j) over the special fiber.
pub fn cartan_matrix(special: &SpecialFiberData) -> Vec<Vec<u64>> {
    let l = special.projectives.len();
    (0..l)
        .map(|i| {
            (0..l)
                .map(|j| hom_space(&special.projectives[i], &special.projectives[j]).len() as u64)
                .collect()
        })
        .collect()
}

/// Compute D and C independently, set E = D^t, and run the three audits:
/// C = D E, the rank audit on projective covers, and the regular-module
/// audit. Failing audits produce an error carrying both sides.
pub fn cde_verify(
    deformed: &DeformedAlgebra,
    generic_simples: Option<Vec<Representation<RatFunc>>>,
) -> Result<CdeReport, CdeError> {
    let generic_simples = match generic_simples {
        Some(s) => s,
        None => semisimple_simples(deformed.generic_fiber())?,
    };
    let special = special_fiber_data(deformed)?;
    let d = decomposition_matrix(deformed, &generic_simples, &special)?;
    let c = cartan_matrix(&special);
    let e = transpose(&d, generic_simples.len());

    let mut audits = vec![];
    let de = int_matmul(&d, &e);
    audits.push(Audit {
        name: "cartan_equals_d_times_e".into(),
        passed: de == c,
        lhs: format!("{de:?}"),
        rhs: format!("{c:?}"),
    });

    // Rank audit: dim P_i = sum_j E_{ji} dim M_j and dim P_j = sum_i C_{ij} dim S_i.
    let mut rank_ok = true;
    let mut rank_lhs = vec![];
    let mut rank_rhs = vec![];
    for (i, p) in special.projectives.iter().enumerate() {
        let via_e: u64 = generic_simples
            .iter()
            .enumerate()
            .map(|(j, m)| e[j][i] * m.dim() as u64)
            .sum();
        let via_c: u64 = special
            .simples
            .iter()
            .enumerate()
            .map(|(s, simple)| c[s][i] * simple.dim() as u64)
            .sum();
        rank_lhs.push(p.dim() as u64);
        rank_rhs.push((via_e, via_c));
        if p.dim() as u64 != via_e || p.dim() as u64 != via_c {
            rank_ok = false;
        }
    }
    audits.push(Audit {
        name: "projective_rank".into(),
        passed: rank_ok,
        lhs: format!("{rank_lhs:?}"),
        rhs: format!("{rank_rhs:?}"),
    });

    let sum_sq: usize = generic_simples.iter().map(|m| m.dim() * m.dim()).sum();
    let sum_cover: usize = special
        .simples
        .iter()
        .zip(&special.projectives)
        .map(|(s, p)| s.dim() * p.dim())
        .sum();
    audits.push(Audit {
        name: "regular_module".into(),
        passed: sum_sq == deformed.dim() && sum_cover == deformed.dim(),
        lhs: format!("{sum_sq} = dim A = {sum_cover}"),
        rhs: format!("{}", deformed.dim()),
    });

    let report = CdeReport {
        generic_simples: generic_simples
            .iter()
            .enumerate()
            .map(|(j, m)| GenericSimpleInfo {
                label: format!("M{}", j + 1),
                dim: m.dim(),
            })
            .collect(),
        special_simples: special
            .simples
            .iter()
            .zip(&special.projectives)
            .enumerate()
            .map(|(i, (s, p))| SpecialSimpleInfo {
                label: format!("S{}", i + 1),
                dim: s.dim(),
                projective_cover_dim: p.dim(),
            })
            .collect(),
        d,
        c,
        e,
        audits,
    };
    if let Some(bad) = report.audits.iter().find(|a| !a.passed) {
        return Err(CdeError::AuditFailure {
            name: bad.name.clone(),
            lhs: bad.lhs.clone(),
            rhs: bad.rhs.clone(),
        });
    }
    Ok(report)
}

/// cde data for a Hecke algebra, with the special simples reordered so that
/// reductions of the one-dimensional generic simples come first, matching
/// the usual presentation of these matrices.
pub fn hecke_cde_report(spec: &crate::hecke::HeckeSpec) -> Result<CdeReport, CdeError> {
    let algebra = crate::hecke::hecke_algebra(spec)?;
    let simples = crate::hecke::hecke_k_simples(spec)?;
    let report = cde_verify(&algebra, Some(simples))?;
    // Row permutation from the one-dimensional columns of D.
    let l = report.special_simples.len();
    let mut perm: Vec<usize> = vec![];
    for (j, info) in report.generic_simples.iter().enumerate() {
        if info.dim != 1 {
            continue;
        }
        if let Some(i) = (0..l).find(|&i| report.d[i][j] != 0) {
            if !perm.contains(&i) {
                perm.push(i);
            }
        }
    }
    for i in 0..l {
        if !perm.contains(&i) {
            perm.push(i);
        }
    }
    Ok(report.permute_special(&perm))
}
