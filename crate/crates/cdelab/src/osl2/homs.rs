//! Weight-graded intertwiner spaces and character arithmetic.

use super::{GradedModule, Window};
use crate::error::OslError;
use crate::linalg::{Field, Matrix};
use crate::scalars::RatFunc;

/// Basis of the space of maps A -> B commuting with the raising and
/// lowering actions. Maps preserve weights (h-equivariance), so the
/// unknowns are one block per weight common to A and B.
pub fn graded_hom_basis<T: Field>(
    a: &GradedModule<T>,
    b: &GradedModule<T>,
) -> Vec<Vec<Matrix<T>>> {
    // Unknown layout: for each common weight, a rankB x rankA block.
    let common: Vec<(usize, usize)> = a
        .weights()
        .iter()
        .enumerate()
        .filter_map(|(ia, w)| b.locate_weight(w).map(|ib| (ia, ib)))
        .collect();
    if common.is_empty() {
        return vec![];
    }
    let mut offsets = vec![0usize; common.len()];
    let mut total = 0usize;
    for (slot, &(ia, ib)) in common.iter().enumerate() {
        offsets[slot] = total;
        total += a.rank(ia) * b.rank(ib);
    }
    if total == 0 {
        return vec![];
    }
    let slot_of_a = |ia: usize| common.iter().position(|&(x, _)| x == ia);

    let mut rows: Vec<Vec<T>> = vec![];
    // One equation family per A-weight and direction.
    for dir_raise in [true, false] {
        for ia in 0..a.spaces() {
            let target_a = if dir_raise {
                a.up_index(ia)
            } else {
                a.down_index(ia)
            };
            let w = a.weight(ia);
            let shift = if dir_raise { 2 } else { -2 };
            let target_weight = w.add(&T::from_int(shift));
            let ib = b.locate_weight(w);
            let tb = b.locate_weight(&target_weight);
            let Some(tb) = tb else { continue }; // equation lands in a zero space
            let rows_b = b.rank(tb);
            let cols_a = a.rank(ia);
            if rows_b == 0 || cols_a == 0 {
                continue;
            }
            let act_b = ib.map(|ib| {
                if dir_raise {
                    b.raise_map(ib)
                } else {
                    b.lower_map(ib)
                }
            });
            let act_a = target_a.map(|_| {
                if dir_raise {
                    a.raise_map(ia)
                } else {
                    a.lower_map(ia)
                }
            });
            // equation entries: (act_b . phi_w)[r][c] - (phi_target . act_a)[r][c] = 0
            for r in 0..rows_b {
                for c in 0..cols_a {
                    let mut row = vec![T::zero(); total];
                    let mut nonzero = false;
                    // first term: needs phi at w (slot for ia)
                    if let (Some(slot), Some(mb)) = (slot_of_a(ia), act_b) {
                        // phi_w has shape rankB(w) x rankA(w); act_b: B_w -> B_target
                        if mb.rows() == rows_b {
                            let rank_bw = b.rank(common[slot].1);
                            for x in 0..rank_bw {
                                if !mb[(r, x)].is_zero() {
                                    row[offsets[slot] + x * cols_a + c] =
                                        row[offsets[slot] + x * cols_a + c].add(&mb[(r, x)]);
                                    nonzero = true;
                                }
                            }
                        }
                    }
                    // second term: phi at target composed with act_a
                    if let (Some(ta), Some(ma)) = (target_a, act_a) {
                        if let Some(slot_t) = slot_of_a(ta) {
                            let cols_t = a.rank(ta);
                            for x in 0..cols_t {
                                if !ma[(x, c)].is_zero() {
                                    row[offsets[slot_t] + r * cols_t + x] =
                                        row[offsets[slot_t] + r * cols_t + x].sub(&ma[(x, c)]);
                                    nonzero = true;
                                }
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        // no constraints: every block choice works
        (0..total)
            .map(|i| {
                let mut v = vec![T::zero(); total];
                v[i] = T::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    kernel
        .into_iter()
        .map(|v| {
            common
                .iter()
                .enumerate()
                .map(|(slot, &(ia, ib))| {
                    let (rb, ca) = (b.rank(ib), a.rank(ia));
                    Matrix::from_fn(rb, ca, |r, c| v[offsets[slot] + r * ca + c].clone())
                })
                .collect()
        })
        .collect()
}

pub fn graded_hom_dim<T: Field>(a: &GradedModule<T>, b: &GradedModule<T>) -> usize {
    graded_hom_basis(a, b).len()
}

/// Multiplicities of (truncated) Verma characters in a module over K inside
/// a deformed window, solved from the top weight down; the solution must be
/// nonnegative and is verified against the dimensions of the kernels of the
/// raising maps (highest weight vectors).
pub fn generic_verma_multiplicities(
    m: &GradedModule<RatFunc>,
    window: &Window,
) -> Result<Vec<(RatFunc, usize)>, OslError> {
    let mut out: Vec<(RatFunc, usize)> = vec![];
    for chain in 0..window.chains() {
        let mut running: i64 = 0;
        for j in 0..=window.depth() {
            let w = window.weight(chain, j);
            let rank = m.locate_weight(&w).map_or(0, |i| m.rank(i)) as i64;
            let n = rank - running;
            if n < 0 {
                return Err(OslError::NonIntegralSolution {
                    weight: w.to_string(),
                });
            }
            running += n;
            // verify: the kernel of the raising map at this weight has
            // dimension exactly n
            let hw = match m.locate_weight(&w) {
                None => 0,
                Some(i) => {
                    let raise = m.raise_map(i);
                    if raise.rows() == 0 {
                        m.rank(i)
                    } else {
                        m.rank(i) - raise.rank()
                    }
                }
            };
            if hw != n as usize {
                return Err(OslError::NonIntegralSolution {
                    weight: w.to_string(),
                });
            }
            if n > 0 {
                out.push((w, n as usize));
            }
        }
    }
    // weights not in the window are not allowed
    for w in m.weights() {
        if m.rank(m.locate_weight(w).unwrap()) > 0 && window.locate(w).is_none() {
            return Err(OslError::WeightOutsideWindow {
                weight: w.to_string(),
            });
        }
    }
    Ok(out)
}

/// Character bookkeeping: the graded ranks of a projective equal the sums
/// of the graded ranks of the Vermas in its filtration (truncation-aware:
/// a Verma contributes 1 at every weight top - 2s retained by the window).
pub fn character_matches_filtration<T: Field>(
    p: &super::Projective<T>,
    filtration: &[T],
    window_depth: usize,
) -> bool {
    for (i, w) in p.module.weights().iter().enumerate() {
        let mut expected = 0usize;
        for top in filtration {
            // does w = top - 2s for some s >= 0 within the window?
            let mut cur = top.clone();
            for _ in 0..=window_depth {
                if cur == *w {
                    expected += 1;
                    break;
                }
                cur = cur.sub(&T::from_int(2));
            }
        }
        if expected != p.module.rank(i) {
            return false;
        }
    }
    true
}

