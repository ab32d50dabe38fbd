//! Irreducible characters by inducing linear characters of subgroups.
//!
//! Candidates are screened in floating point (norms and inner products of
//! characters are integers, so rounding decides them), and every row that
//! is kept is certified exactly: its exact norm is 1 and its degree is
//! positive. Completeness is certified by `sum d^2 = |G|`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{all_subgroups, FiniteGroup, GroupRef, Subgroup};

type Complex = (f64, f64);

struct Search<'a> {
    g: &'a GroupRef,
    e: u64,
    sizes: Vec<usize>,
    /// Class permutations `K -> K^a` for every unit `a` modulo `e`.
    power_perms: Vec<Vec<usize>>,
    linear: Vec<Vec<Cyclotomic>>,
    rows: Vec<Vec<Cyclotomic>>,
    complex_rows: Vec<Vec<Complex>>,
    square_sum: i64,
}

fn to_complex_row(row: &[Cyclotomic]) -> Vec<Complex> {
    row.iter().map(|v| v.to_complex()).collect()
}

impl<'a> Search<'a> {
    fn complete(&self) -> bool {
        self.square_sum == self.g.order() as i64
    }

    fn float_inner(&self, a: &[Complex], b: &[Complex]) -> Complex {
        let mut re = 0.0;
        let mut im = 0.0;
        for ((x, y), &s) in a.iter().zip(b).zip(&self.sizes) {
            // x * conj(y)
            re += s as f64 * (x.0 * y.0 + x.1 * y.1);
            im += s as f64 * (x.1 * y.0 - x.0 * y.1);
        }
        let n = self.g.order() as f64;
        (re / n, im / n)
    }

    fn exact_norm(&self, row: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.e);
        for (v, &s) in row.iter().zip(&self.sizes) {
            acc += &(v * &v.conjugate()).scale_int(s as i64);
        }
        acc.scale(&BigRational::new(1.into(), BigInt::from(self.g.order())))
    }

    fn known(&self, row: &[Cyclotomic]) -> bool {
        self.rows.iter().any(|r| r.as_slice() == row)
    }

    /// Adds an irreducible together with its Galois conjugates and its
    /// products with the linear characters of `G`.
    fn insert(&mut self, row: Vec<Cyclotomic>) {
        let mut queue = VecDeque::from([row]);
        while let Some(r) = queue.pop_front() {
            if self.known(&r) {
                continue;
            }
            let d = i64::try_from(r[0].as_integer().expect("integer degree")).unwrap();
            self.square_sum += d * d;
            for perm in &self.power_perms {
                queue.push_back(perm.iter().map(|&k| r[k].clone()).collect());
            }
            for lam in &self.linear {
                queue.push_back(r.iter().zip(lam).map(|(x, y)| x * y).collect());
            }
            self.complex_rows.push(to_complex_row(&r));
            self.rows.push(r);
        }
    }

    /// Tries an induced character; keeps it (or what remains after
    /// removing known constituents) when it is irreducible.
    fn offer(&mut self, exact: impl Fn() -> Vec<Cyclotomic>, approx: Vec<Complex>) {
        let norm = self.float_inner(&approx, &approx).0.round() as i64;
        if norm == 1 {
            let known = self.complex_rows.iter().any(|r| {
                r.iter()
                    .zip(&approx)
                    .all(|(x, y)| (x.0 - y.0).abs() < 1e-6 && (x.1 - y.1).abs() < 1e-6)
            });
            if known {
                return;
            }
            let row = exact();
            if self.exact_norm(&row) == Cyclotomic::one(1) {
                self.insert(row);
            }
            return;
        }
        // subtract the known constituents
        let mults: Vec<i64> = self
            .complex_rows
            .iter()
            .map(|r| self.float_inner(&approx, r).0.round() as i64)
            .collect();
        let known_sq: i64 = mults.iter().map(|m| m * m).sum();
        if norm - known_sq != 1 {
            return;
        }
        let mut row = exact();
        for (m, r) in mults.iter().zip(&self.rows) {
            if *m != 0 {
                for (x, y) in row.iter_mut().zip(r) {
                    *x = &*x - &y.scale_int(*m);
                }
            }
        }
        let positive = row[0].as_integer().is_some_and(|d| d > BigInt::from(0));
        if positive && !self.known(&row) && self.exact_norm(&row) == Cyclotomic::one(1) {
            self.insert(row);
        }
    }
}

/// Linear characters of `h` as exponent maps `x -> k` meaning `zeta_e^k`,
/// indexed by parent element (entries outside `h` are `u32::MAX`).
pub(crate) fn linear_characters(g: &FiniteGroup, h: &Subgroup, e: u64) -> Vec<Vec<u32>> {
    let gens = h.small_generating_set();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    linear_search(g, &gens, e, &mut chosen, &mut out);
    out
}

fn extend_additive(g: &FiniteGroup, gens: &[u32], imgs: &[u32], e: u64) -> Option<Vec<u32>> {
    let mut images = vec![u32::MAX; g.order()];
    images[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let v = ((images[x as usize] as u64 + t as u64) % e) as u32;
            match images[y as usize] {
                u32::MAX => {
                    images[y as usize] = v;
                    queue.push_back(y);
                }
                old if old != v => return None,
                _ => {}
            }
        }
    }
    Some(images)
}

fn linear_search(g: &FiniteGroup, gens: &[u32], e: u64, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let j = chosen.len();
    if j == gens.len() {
        out.push(extend_additive(g, gens, chosen, e).expect("consistent"));
        return;
    }
    let ord = g.element_order(gens[j]) as u64;
    let step = e / ord;
    for k in 0..ord {
        chosen.push((k * step) as u32);
        if extend_additive(g, &gens[..=j], chosen, e).is_some() {
            linear_search(g, gens, e, chosen, out);
        }
        chosen.pop();
    }
}

pub(super) fn compute(g: &GroupRef, bound: usize) -> Result<Vec<Vec<Cyclotomic>>> {
    let cd = g.classes();
    let k = cd.len();
    let e = g.exponent();
    let n = g.order();
    let power_perms: Vec<Vec<usize>> = (2..e as i64)
        .filter(|a| a.gcd(&(e as i64)) == 1)
        .map(|a| (0..k).map(|c| cd.power_class(g, c, a)).collect())
        .collect();
    let sizes: Vec<usize> = (0..k).map(|c| cd.size(c)).collect();
    let roots: Vec<Complex> = (0..e)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / e as f64;
            (t.cos(), t.sin())
        })
        .collect();

    let whole = Subgroup::whole(g);
    let linear: Vec<Vec<Cyclotomic>> = linear_characters(g, &whole, e)
        .into_iter()
        .map(|lam| {
            (0..k)
                .map(|c| Cyclotomic::root_of_unity(e, lam[cd.class(c).representative as usize] as i64))
                .collect()
        })
        .collect();
    let mut search = Search {
        g,
        e,
        sizes,
        power_perms,
        linear: linear.clone(),
        rows: Vec::new(),
        complex_rows: Vec::new(),
        square_sum: 0,
    };
    for lam in linear {
        search.insert(lam);
    }

    if !search.complete() {
        let lattice = all_subgroups(g, bound)?;
        let class_sizes = search.sizes.clone();
        let mut reps = lattice.orbit_representatives();
        reps.sort_by_key(|h| std::cmp::Reverse(h.order()));
        'outer: for h in reps {
            if h.is_whole() {
                continue;
            }
            for lam in linear_characters(g, &h, e) {
                // root counts of lambda on (K ∩ H)
                let mut counts = vec![vec![0i64; e as usize]; k];
                for &x in h.elements() {
                    counts[cd.class_of(x)][lam[x as usize] as usize] += 1;
                }
                let scale: Vec<f64> = (0..k)
                    .map(|c| n as f64 / (class_sizes[c] as f64 * h.order() as f64))
                    .collect();
                let approx: Vec<Complex> = counts
                    .iter()
                    .zip(&scale)
                    .map(|(cnt, &s)| {
                        let mut re = 0.0;
                        let mut im = 0.0;
                        for (j, &m) in cnt.iter().enumerate() {
                            if m != 0 {
                                re += m as f64 * roots[j].0;
                                im += m as f64 * roots[j].1;
                            }
                        }
                        (re * s, im * s)
                    })
                    .collect();
                let sizes = &class_sizes;
                let exact = || {
                    counts
                        .iter()
                        .enumerate()
                        .map(|(c, cnt)| {
                            let r = BigRational::new(BigInt::from(n), BigInt::from(sizes[c] * h.order()));
                            Cyclotomic::from_root_counts(e, cnt).scale(&r)
                        })
                        .collect::<Vec<_>>()
                };
                search.offer(exact, approx);
                if search.complete() {
                    break 'outer;
                }
            }
        }
    }
    if !search.complete() || search.rows.len() != k {
        return Err(Error::Unsupported(format!(
            "monomial search found {} of {} irreducible characters of {}",
            search.rows.len(),
            k,
            g.name()
        )));
    }
    let mut rows = search.rows;
    super::sort_rows(&mut rows);
    Ok(rows)
}
