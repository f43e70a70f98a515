//! Exact linear systems `A x = b` with `A` integral and `x, b ∈ (ℚ/ℤ)^n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::abgroup::{smith_normal_form, IntMatrix};
use crate::forms::Phase;
use crate::{Error, Result};

/// One equation `Σ coeff · x_var = rhs`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub terms: Vec<(usize, i64)>,
    pub rhs: Phase,
}

type Row = BTreeMap<usize, i64>;

fn add_scaled(dst: &mut Row, src: &Row, k: i64) -> Result<()> {
    for (&j, &v) in src {
        let e = dst.entry(j).or_insert(0);
        *e = v
            .checked_mul(k)
            .and_then(|t| e.checked_add(t))
            .ok_or(Error::Overflow("coefficient growth in linear solver"))?;
        if *e == 0 {
            dst.remove(&j);
        }
    }
    Ok(())
}

/// Solves the system over ℚ/ℤ. Returns `None` when it is inconsistent.
///
/// Unit pivots are eliminated by substitution, which is invertible over ℤ;
/// whatever remains is solved through Smith normal form, where
/// `d_i y_i = (U b)_i` has the canonical solution `(U b)_i / d_i` and rows
/// beyond the rank must have zero right-hand side.
pub fn solve_qz(nvars: usize, equations: &[Equation]) -> Result<Option<Vec<Phase>>> {
    let mut rows: Vec<Row> = Vec::with_capacity(equations.len());
    let mut rhs: Vec<Phase> = Vec::with_capacity(equations.len());
    let mut by_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nvars];
    for eq in equations {
        let mut row = Row::new();
        for &(j, c) in &eq.terms {
            if j >= nvars {
                return Err(Error::DimensionMismatch(format!("variable {j} of {nvars}")));
            }
            let e = row.entry(j).or_insert(0);
            *e += c;
            if *e == 0 {
                row.remove(&j);
            }
        }
        let r = rows.len();
        for &j in row.keys() {
            by_col[j].insert(r);
        }
        rows.push(row);
        rhs.push(eq.rhs);
    }

    // Pivot records: (variable, pivot row contents, rhs), in elimination order.
    let mut pivots: Vec<(usize, Row, Phase)> = vec![];
    let mut active: BTreeSet<usize> = (0..rows.len()).collect();
    loop {
        let mut progress = false;
        let candidates: Vec<usize> = active.iter().copied().collect();
        for r in candidates {
            if !active.contains(&r) {
                continue;
            }
            if rows[r].is_empty() {
                if !rhs[r].is_zero() {
                    return Ok(None);
                }
                active.remove(&r);
                continue;
            }
            let Some((&j, &c)) = rows[r]
                .iter()
                .filter(|(_, &c)| c == 1 || c == -1)
                .min_by_key(|(&j, _)| by_col[j].len())
            else {
                continue;
            };
            progress = true;
            active.remove(&r);
            let prow = std::mem::take(&mut rows[r]);
            let prhs = rhs[r];
            for &k in prow.keys() {
                by_col[k].remove(&r);
            }
            let others: Vec<usize> = by_col[j].iter().copied().collect();
            for o in others {
                // row_o -= (a_oj / c) row_r, with c = ±1
                let k = -rows[o][&j] * c;
                let before: Vec<usize> = rows[o].keys().copied().collect();
                add_scaled(&mut rows[o], &prow, k)?;
                rhs[o] += prhs.scale(k);
                for b in before {
                    if !rows[o].contains_key(&b) {
                        by_col[b].remove(&o);
                    }
                }
                for &a in rows[o].keys() {
                    by_col[a].insert(o);
                }
            }
            pivots.push((j, prow, prhs));
        }
        if !progress {
            break;
        }
    }

    // Residual system on the remaining rows.
    let pivot_vars: BTreeSet<usize> = pivots.iter().map(|p| p.0).collect();
    let residual_rows: Vec<usize> = active
        .into_iter()
        .filter(|&r| !rows[r].is_empty())
        .collect();
    let mut residual_vars: BTreeSet<usize> = BTreeSet::new();
    for &r in &residual_rows {
        residual_vars.extend(rows[r].keys().copied());
    }
    let residual_vars: Vec<usize> = residual_vars.into_iter().collect();
    let mut x = vec![Phase::ZERO; nvars];
    if !residual_rows.is_empty() {
        let col_of: BTreeMap<usize, usize> = residual_vars
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let dense: Vec<Vec<i64>> = residual_rows
            .iter()
            .map(|&r| {
                let mut d = vec![0i64; residual_vars.len()];
                for (&j, &c) in &rows[r] {
                    d[col_of[&j]] = c;
                }
                d
            })
            .collect();
        let b: Vec<Phase> = residual_rows.iter().map(|&r| rhs[r]).collect();
        match solve_dense(residual_vars.len(), &dense, &b)? {
            None => return Ok(None),
            Some(y) => {
                for (i, &v) in residual_vars.iter().enumerate() {
                    x[v] = y[i];
                }
            }
        }
    }
    debug_assert!(residual_vars.iter().all(|v| !pivot_vars.contains(v)));

    // Back substitution: each pivot row only mentions variables that were
    // still unresolved when it was chosen.
    for (j, row, b) in pivots.into_iter().rev() {
        let c = row[&j];
        let mut acc = b;
        for (&k, &a) in &row {
            if k != j {
                acc -= x[k].scale(a);
            }
        }
        x[j] = acc.scale(c);
    }
    Ok(Some(x))
}

fn phase_times_bigint(p: Phase, k: &BigInt) -> Phase {
    let d = BigInt::from(p.denom());
    let r = (k.mod_floor(&d))
        .to_i64()
        .expect("reduced below denominator");
    p.scale(r)
}

/// Dense solve through Smith normal form.
pub fn solve_dense(nvars: usize, a: &[Vec<i64>], b: &[Phase]) -> Result<Option<Vec<Phase>>> {
    let m = IntMatrix::from_i64_rows(nvars, a)?;
    let snf = smith_normal_form(&m);
    let ub: Vec<Phase> = (0..m.rows())
        .map(|i| {
            snf.u
                .row(i)
                .iter()
                .zip(b)
                .map(|(k, &p)| phase_times_bigint(p, k))
                .sum()
        })
        .collect();
    if ub[snf.rank..].iter().any(|p| !p.is_zero()) {
        return Ok(None);
    }
    let mut y = vec![Phase::ZERO; nvars];
    for i in 0..snf.rank {
        let d = snf
            .d
            .get(i, i)
            .to_i64()
            .ok_or(Error::Overflow("elementary divisor exceeds i64"))?;
        y[i] = ub[i].div_int(d);
    }
    let x = (0..nvars)
        .map(|j| {
            (0..nvars)
                .filter(|&k| !snf.v.get(j, k).is_zero())
                .map(|k| phase_times_bigint(y[k], snf.v.get(j, k)))
                .sum()
        })
        .collect();
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(terms: &[(usize, i64)], rhs: Phase) -> Equation {
        Equation {
            terms: terms.to_vec(),
            rhs,
        }
    }

    fn check(nvars: usize, eqs: &[Equation], x: &[Phase]) {
        assert_eq!(x.len(), nvars);
        for e in eqs {
            let lhs: Phase = e.terms.iter().map(|&(j, c)| x[j].scale(c)).sum();
            assert_eq!(lhs, e.rhs, "{e:?}");
        }
    }

    #[test]
    fn divisible_equation() {
        let eqs = [eq(&[(0, 2)], Phase::frac(1, 2))];
        let x = solve_qz(1, &eqs).unwrap().unwrap();
        check(1, &eqs, &x);
        assert_eq!(x[0], Phase::frac(1, 4));
    }

    #[test]
    fn inconsistent_system() {
        // x0 + x1 = 1/2 and x0 + x1 = 0
        let eqs = [
            eq(&[(0, 1), (1, 1)], Phase::frac(1, 2)),
            eq(&[(0, 1), (1, 1)], Phase::ZERO),
        ];
        assert!(solve_qz(2, &eqs).unwrap().is_none());
        // 0 = 1/3
        let eqs = [eq(&[(0, 2), (0, -2)], Phase::frac(1, 3))];
        assert!(solve_qz(1, &eqs).unwrap().is_none());
    }

    #[test]
    fn mixed_pivots() {
        let eqs = [
            eq(&[(0, 1), (1, 2)], Phase::frac(1, 3)),
            eq(&[(1, 4), (2, 6)], Phase::frac(1, 2)),
            eq(&[(2, 3)], Phase::frac(1, 5)),
        ];
        let x = solve_qz(3, &eqs).unwrap().unwrap();
        check(3, &eqs, &x);
    }

    #[test]
    fn dense_matches_definition() {
        let a = vec![vec![2, 4], vec![6, 8]];
        let b = vec![Phase::frac(1, 3), Phase::frac(1, 7)];
        let x = solve_dense(2, &a, &b).unwrap().unwrap();
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: Phase = row.iter().zip(&x).map(|(&c, p)| p.scale(c)).sum();
            assert_eq!(lhs, *rhs);
        }
    }
}
