use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U · M · V = D` together with `V⁻¹`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | … | d_rank` (all positive).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form by elementary operations, always pivoting on the entry
/// of least absolute value in the remaining block.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = min_abs_entry(&d, t) else {
                return finish(u, d, v, v_inv, rank);
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            swap_cols(&mut d, &mut v, &mut v_inv, t, pc);

            let pivot = d.get(t, t).clone();
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    d.add_row_multiple(i, t, &nq);
                    u.add_row_multiple(i, t, &nq);
                }
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    add_col_multiple(&mut d, &mut v, &mut v_inv, j, t, &nq);
                }
            }
            let row_clear = (t + 1..cols).all(|j| d.get(t, j).is_zero());
            let col_clear = (t + 1..rows).all(|i| d.get(i, t).is_zero());
            if !(row_clear && col_clear) {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank = t + 1;
    }
    finish(u, d, v, v_inv, rank)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix, v_inv: IntMatrix, rank: usize) -> Snf {
    Snf {
        u,
        d,
        v,
        v_inv,
        rank,
    }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

// Column operation on D and V; the inverse row operation on V⁻¹.
fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, a: usize, b: usize) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    v_inv.swap_rows(a, b);
}

fn add_col_multiple(
    d: &mut IntMatrix,
    v: &mut IntMatrix,
    v_inv: &mut IntMatrix,
    dst: usize,
    src: usize,
    k: &BigInt,
) {
    d.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
    // (V E)^{-1} = E^{-1} V^{-1}; E adds k·col src to col dst, E^{-1} subtracts
    // k·row dst from row src.
    let nk = -k;
    v_inv.add_row_multiple(src, dst, &nk);
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        let prod = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d, "U·M·V != D for {m:?}");
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "chain broken: {diag:?}");
        }
        for i in s.rank..m.rows().min(m.cols()) {
            assert!(s.d.get(i, i).is_zero());
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let s = check(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn two_by_two_example() {
        // Hand reduction: gcd of entries is 2, det = -8, so diag(2, 4).
        let m = IntMatrix::from_i64_rows(2, &[vec![2, 4], vec![6, 8]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn divisibility_fixup() {
        let m = IntMatrix::from_i64_rows(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
    }

    proptest! {
        #[test]
        fn random_matrices(rows in 0usize..5, cols in 0usize..5,
                           seed in prop::collection::vec(-30i64..30, 25)) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|r| (0..cols).map(|c| seed[r * 5 + c]).collect())
                .collect();
            let m = IntMatrix::from_i64_rows(cols, &data).unwrap();
            check(&m);
        }
    }
}
