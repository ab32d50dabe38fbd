//! Exact rational simplex for strict homogeneous feasibility.
//!
//! A system `A m > 0, m >= 0` has a solution iff the bounded program
//! `max t  s.t.  A m - t >= 0,  sum m <= 1,  t <= 1,  m, t >= 0`
//! has optimum `t > 0`. All right-hand sides are nonnegative, so the
//! origin is a feasible starting vertex and no phase one is needed.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Result of the strict feasibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictSolution {
    /// Optimal uniform slack `t`.
    pub slack: BigRational,
    /// Optimal `m` (meaningful as a witness when `slack > 0`).
    pub point: Vec<BigRational>,
    /// Optimal dual weights on the input rows. When `slack = 0` they form a
    /// Farkas certificate: `y >= 0`, `sum y >= 1` and `y^T A <= 0`.
    pub duals: Vec<BigRational>,
    pub pivots: usize,
}

impl StrictSolution {
    pub fn feasible(&self) -> bool {
        self.slack.is_positive()
    }
}

/// Dictionary `x_B = b - D x_N`, objective `z = z0 + c x_N`.
struct Dictionary {
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    b: Vec<BigRational>,
    d: Vec<Vec<BigRational>>,
    c: Vec<BigRational>,
    z: BigRational,
}

impl Dictionary {
    fn pivot(&mut self, r: usize, j: usize) {
        let a = self.d[r][j].clone();
        let inv = a.recip();
        // new row r expresses the entering variable
        let br = &self.b[r] * &inv;
        let mut row: Vec<BigRational> = self.d[r].iter().map(|x| x * &inv).collect();
        row[j] = inv.clone();
        for i in 0..self.b.len() {
            if i == r || self.d[i][j].is_zero() {
                continue;
            }
            let f = self.d[i][j].clone();
            self.b[i] -= &f * &br;
            for (k, x) in self.d[i].iter_mut().enumerate() {
                if k == j {
                    *x = -(&f * &row[j]);
                } else if !row[k].is_zero() {
                    *x -= &f * &row[k];
                }
            }
        }
        let f = self.c[j].clone();
        if !f.is_zero() {
            self.z += &f * &br;
            for (k, x) in self.c.iter_mut().enumerate() {
                if k == j {
                    *x = -(&f * &row[j]);
                } else if !row[k].is_zero() {
                    *x -= &f * &row[k];
                }
            }
        }
        self.b[r] = br;
        self.d[r] = row;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[j]);
    }

    /// Bland's rule: smallest-index improving variable, smallest-index leaving variable on ties.
    fn solve(&mut self) -> usize {
        let mut pivots = 0;
        loop {
            let entering = (0..self.c.len())
                .filter(|&j| self.c[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(j) = entering else { return pivots };
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.b.len() {
                if !self.d[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.d[r][j];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basic[r] < self.basic[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let (r, _) = best.expect("program is bounded");
            self.pivot(r, j);
            pivots += 1;
        }
    }
}

/// Decides whether some `m >= 0` makes every row of `rows` strictly positive.
pub fn strict_feasibility(rows: &[Vec<BigRational>], nvars: usize) -> StrictSolution {
    // variables: m_0..m_{n-1}, t = n; slacks n+1..
    let n = nvars + 1;
    let mut d = Vec::with_capacity(rows.len() + 2);
    let mut b = Vec::with_capacity(rows.len() + 2);
    for row in rows {
        // t - row.m <= 0
        let mut r: Vec<BigRational> = row.iter().map(|x| -x).collect();
        r.push(BigRational::one());
        d.push(r);
        b.push(BigRational::zero());
    }
    let mut norm = vec![BigRational::one(); nvars];
    norm.push(BigRational::zero());
    d.push(norm);
    b.push(BigRational::one());
    let mut cap = vec![BigRational::zero(); nvars];
    cap.push(BigRational::one());
    d.push(cap);
    b.push(BigRational::one());
    let mut c = vec![BigRational::zero(); nvars];
    c.push(BigRational::one());
    let m = d.len();
    let mut dict = Dictionary {
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
        b,
        d,
        c,
        z: BigRational::zero(),
    };
    let pivots = dict.solve();
    let mut point = vec![BigRational::zero(); nvars];
    for (r, &v) in dict.basic.iter().enumerate() {
        if v < nvars {
            point[v] = dict.b[r].clone();
        }
    }
    // the dual of a constraint is minus the reduced cost of its slack
    let mut duals = vec![BigRational::zero(); rows.len()];
    for (j, &v) in dict.nonbasic.iter().enumerate() {
        if v > nvars && v - n < rows.len() {
            duals[v - n] = -dict.c[j].clone();
        }
    }
    StrictSolution {
        slack: dict.z,
        point,
        duals,
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    fn check_witness(rows: &[Vec<BigRational>], sol: &StrictSolution) {
        for row in rows {
            let v: BigRational = row.iter().zip(&sol.point).map(|(a, b)| a * b).sum();
            assert!(v >= sol.slack);
        }
    }

    #[test]
    fn feasible_systems() {
        let rows = q(&[&[1, -1], &[-1, 2]]);
        let s = strict_feasibility(&rows, 2);
        assert!(s.feasible());
        check_witness(&rows, &s);
        // no constraints at all
        assert!(strict_feasibility(&[], 3).feasible());
    }

    fn check_certificate(rows: &[Vec<BigRational>], nvars: usize, sol: &StrictSolution) {
        assert!(sol.duals.iter().all(|y| !y.is_negative()));
        assert!(sol.duals.iter().sum::<BigRational>() >= BigRational::one());
        for j in 0..nvars {
            let c: BigRational = rows.iter().zip(&sol.duals).map(|(r, y)| &r[j] * y).sum();
            assert!(!c.is_positive());
        }
    }

    #[test]
    fn infeasible_systems_carry_certificates() {
        for (rows, n) in [
            (q(&[&[1], &[-1]]), 1),
            (q(&[&[1, -1], &[-1, 1]]), 2),
            (q(&[&[1, -1, 0], &[1, -1, 0], &[0, 1, -1], &[-1, 0, 1], &[0, 0, 0]]), 3),
            (q(&[&[2, -3], &[-1, 1], &[0, 1]]), 2),
        ] {
            let s = strict_feasibility(&rows, n);
            assert!(!s.feasible());
            check_certificate(&rows, n, &s);
        }
    }

    #[test]
    fn infeasible_systems() {
        // x > 0 and -x > 0
        assert!(!strict_feasibility(&q(&[&[1], &[-1]]), 1).feasible());
        // no variables but a constraint 0 > 0
        assert!(!strict_feasibility(&q(&[&[]]), 0).feasible());
        // x - y > 0, y - x > 0
        assert!(!strict_feasibility(&q(&[&[1, -1], &[-1, 1]]), 2).feasible());
    }

    #[test]
    fn optimum_is_exact() {
        // max t: x >= t, y >= t, x + y <= 1 gives t = 1/2
        let s = strict_feasibility(&q(&[&[1, 0], &[0, 1]]), 2);
        assert_eq!(s.slack, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn degenerate_rows_terminate() {
        let rows = q(&[&[1, -1, 0], &[1, -1, 0], &[0, 1, -1], &[-1, 0, 1], &[0, 0, 0]]);
        let s = strict_feasibility(&rows, 3);
        assert!(!s.feasible());
    }
}
