use super::linear::{solve_qz, Equation};
use super::{coboundary_d2, coboundary_d3, is_cocycle, is_symmetric, Cochain, Sums};
use crate::forms::{Bicharacter, Phase};
use crate::{Error, Result};

/// Finds `λ` with `∂₂λ = ρ` for a symmetric 2-cocycle `ρ`.
pub fn solve_symmetric_coboundary(rho: &Cochain) -> Result<Cochain> {
    rho.require_arity(2)?;
    if !is_symmetric(rho)? {
        return Err(Error::InvalidInput("2-cochain is not symmetric".into()));
    }
    if !is_cocycle(rho)? {
        return Err(Error::InvalidInput("2-cochain is not a cocycle".into()));
    }
    let n = rho.order;
    let s = Sums::new(rho);
    let mut eqs = vec![];
    for x in 1..n {
        for y in x..n {
            let mut terms = vec![(x - 1, 1), (y - 1, 1)];
            let xy = s.add(x, y);
            if xy != 0 {
                terms.push((xy - 1, -1));
            }
            eqs.push(Equation {
                terms,
                rhs: rho.table[x * n + y],
            });
        }
    }
    let sol = solve_qz(n.saturating_sub(1), &eqs)?
        .ok_or_else(|| Error::Internal("symmetric 2-cocycle has no trivialization".into()))?;
    let mut lambda = Cochain::zero(rho.group.clone(), 1)?;
    for (x, v) in sol.into_iter().enumerate() {
        lambda.table[x + 1] = v;
    }
    if &coboundary_d2(&lambda)? != rho {
        return Err(Error::Internal("trivialization failed verification".into()));
    }
    Ok(lambda)
}

/// Finds a normalized `η` with `∂₃η = ω`, or `None` if `ω` is not a coboundary.
pub fn solve_d3(omega: &Cochain) -> Result<Option<Cochain>> {
    omega.require_arity(3)?;
    if !is_cocycle(omega)? {
        return Err(Error::InvalidInput("3-cochain is not a cocycle".into()));
    }
    let n = omega.order;
    let m = n.saturating_sub(1);
    let s = Sums::new(omega);
    let var = |a: usize, b: usize| (a - 1) * m + (b - 1);
    let mut eqs = vec![];
    for x in 1..n {
        for y in 1..n {
            let xy = s.add(x, y);
            for z in 1..n {
                let yz = s.add(y, z);
                let mut terms = vec![(var(x, y), 1), (var(y, z), -1)];
                if yz != 0 {
                    terms.push((var(x, yz), -1));
                }
                if xy != 0 {
                    terms.push((var(xy, z), 1));
                }
                eqs.push(Equation {
                    terms,
                    rhs: omega.table[(x * n + y) * n + z],
                });
            }
        }
    }
    let Some(sol) = solve_qz(m * m, &eqs)? else {
        return Ok(None);
    };
    let mut eta = Cochain::zero(omega.group.clone(), 2)?;
    for x in 1..n {
        for y in 1..n {
            eta.table[x * n + y] = sol[var(x, y)];
        }
    }
    if &coboundary_d3(&eta)? != omega {
        return Err(Error::Internal(
            "solution of the 3-coboundary equation failed verification".into(),
        ));
    }
    Ok(Some(eta))
}

/// Multiplication cochain of the commutative algebra on a finite group with
/// braiding bicharacter `β` (which must vanish on the diagonal).
///
/// Uses the ordered lower-triangular bicharacter: `η(g_i, g_j) = β(g_i, g_j)`
/// for `i > j` and `0` otherwise, so that `η(x, y) − η(y, x) = β(x, y)`.
pub fn construct_eta(beta: &Bicharacter) -> Result<Cochain> {
    let g = beta.group().clone();
    if !g.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    if !beta.is_alternating() {
        return Err(Error::NoCommutativeStructure(
            "the quadratic form does not vanish on the subgroup".into(),
        ));
    }
    let k = g.ngens();
    let gram = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i > j { beta.entry(i, j) } else { Phase::ZERO })
                .collect()
        })
        .collect();
    let lower = Bicharacter::new(g.clone(), gram)?;
    let eta = Cochain::from_fn(g.clone(), 2, |a| lower.eval(&a[0], &a[1]))?;
    let elements = g.enumerate()?;
    for x in &elements {
        for y in &elements {
            if eta.get(&[x.clone(), y.clone()]) - eta.get(&[y.clone(), x.clone()])
                != beta.eval(x, y)
            {
                return Err(Error::Internal(format!(
                    "multiplication cochain does not antisymmetrize to the braiding at ({x}, {y})"
                )));
            }
        }
    }
    if !is_cocycle(&eta)? {
        return Err(Error::Internal(
            "multiplication cochain is not a cocycle".into(),
        ));
    }
    Ok(eta)
}
