//! Phase-I simplex for `A w = b, w ≥ 0`, generic over the scalar field.
//!
//! Dense tableau. Pivots follow Dantzig's most-negative rule until a run of
//! degenerate pivots, then Bland's rule, which cannot cycle. Over an exact field the
//! answer is exact; over floats, pivots and signs are judged with
//! [`Scalar::is_negligible`].

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    /// A nonnegative solution.
    Feasible(Vec<T>),
    Infeasible,
}

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_RUN: usize = 12;

fn is_pos<T: Scalar>(x: &T) -> bool {
    x.is_positive() && !x.is_negligible()
}

fn is_neg<T: Scalar>(x: &T) -> bool {
    x.is_negative() && !x.is_negligible()
}

/// Find `w ≥ 0` with `A w = b`. `a` is row-major, `m × n`.
pub fn feasible<T: Scalar>(a: &[Vec<T>], b: &[T]) -> LpOutcome<T> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    // tableau rows [A | I | b] with b ≥ 0
    let mut t: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row: Vec<T> = a[i].iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of the phase-I objective Σ artificials
    let mut cost: Vec<T> = (0..width)
        .map(|j| {
            if (n..n + m).contains(&j) {
                T::zero()
            } else {
                (0..m).fold(T::zero(), |acc, i| acc - t[i][j].clone())
            }
        })
        .collect();

    let mut degenerate = 0usize;
    loop {
        let enter = if degenerate < DEGENERATE_RUN {
            (0..n + m).filter(|&j| is_neg(&cost[j])).min_by(|&a, &b| {
                cost[a].partial_cmp(&cost[b]).unwrap_or(std::cmp::Ordering::Equal)
            })
        } else {
            (0..n + m).find(|&j| is_neg(&cost[j]))
        };
        let Some(enter) = enter else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !is_pos(&t[i][enter]) {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let ri = t[i][width - 1].clone() / t[i][enter].clone();
                    let rl = t[l][width - 1].clone() / t[l][enter].clone();
                    let tie = (ri.clone() - rl.clone()).is_negligible();
                    if (!tie && ri < rl) || (tie && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // phase I is bounded below by zero, so a ratio row always exists
        let Some(r) = leave else { break };
        if t[r][width - 1].is_negligible() {
            degenerate += 1;
        } else {
            degenerate = 0;
        }
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let d = f.clone() * t[r][j].clone();
                    t[i][j] = t[i][j].clone() - d;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..width {
                cost[j] = cost[j].clone() - f.clone() * t[r][j].clone();
            }
        }
        basis[r] = enter;
    }

    // objective value is −cost[rhs]
    if !cost[width - 1].is_negligible() {
        return LpOutcome::Infeasible;
    }
    let mut w = vec![T::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            w[j] = t[i][width - 1].clone();
        }
    }
    LpOutcome::Feasible(w)
}
