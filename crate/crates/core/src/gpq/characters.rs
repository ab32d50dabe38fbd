use std::sync::Arc;

use serde::Serialize;

use crate::arith::{mod_inv, mod_pow};
use crate::chartab::{inner_product_int, CharacterTable, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{cyclic, direct_product, frobenius_with, GroupRef, Homomorphism, Subgroup};

use super::GpqContext;

/// Characters built from closed formulas: Gauss periods
/// `sigma_{t,x} = sum_{s in <u>} zeta_p^(v_t x s)` for `F_{p,q}` and the
/// products `rho_s x chi_t` for `N_{pq^2} ≅ C_q x F_{p,q}`.
#[derive(Debug, Clone)]
pub struct ExplicitCharacters {
    /// `F_{p,q} = <beta, gamma | gamma beta gamma^-1 = beta^u>`.
    pub frobenius: GroupRef,
    /// `lambda_k(beta^x gamma^m) = zeta_q^(km)`, `k = 0..q`.
    pub frobenius_linear: Vec<ClassFunction>,
    /// `chi_t`, stored at `t - 1` for `t = 1..=r`.
    pub chi: Vec<ClassFunction>,
    /// `N_{pq^2}` inside `G_{p,q}`; the characters below live on `n.as_group()`.
    pub n: Subgroup,
    /// `rho_s x lambda_k`, stored at `s * q + k`.
    pub linear: Vec<ClassFunction>,
    /// `psi_{s,t} = rho_s x chi_t`, stored at `[s][t - 1]`.
    pub psi: Vec<Vec<ClassFunction>>,
}

impl ExplicitCharacters {
    pub fn psi(&self, s: u64, t: u64) -> &ClassFunction {
        &self.psi[s as usize][t as usize - 1]
    }

    /// All irreducibles of `N_{pq^2}`: linear ones first, then `psi_{s,t}`.
    pub fn n_irreducibles(&self) -> Vec<ClassFunction> {
        let mut out = self.linear.clone();
        out.extend(self.psi.iter().flatten().cloned());
        out
    }

    pub fn frobenius_irreducibles(&self) -> Vec<ClassFunction> {
        let mut out = self.frobenius_linear.clone();
        out.extend(self.chi.iter().cloned());
        out
    }

    /// `U = 2 Re psi_{s,t}` and `V = 2 Re psi_{q-s,t}` for `s != 0`.
    pub fn witness_pair(&self, s: u64, t: u64) -> Result<WitnessPair> {
        let q = self.psi.len() as u64;
        if s == 0 || s >= q || t == 0 || t as usize > self.chi.len() {
            return Err(Error::Params(format!("witness index (s, t) = ({s}, {t}) out of range")));
        }
        Ok(WitnessPair {
            s,
            t,
            u: self.psi(s, t).real_double(),
            v: self.psi(q - s, t).real_double(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessPair {
    pub s: u64,
    pub t: u64,
    #[serde(skip)]
    pub u: ClassFunction,
    #[serde(skip)]
    pub v: ClassFunction,
}

/// Root-of-unity counts in `Q(zeta_pq)`.
struct Counts {
    pq: u64,
    c: Vec<i64>,
}

impl Counts {
    fn new(pq: u64) -> Self {
        Counts {
            pq,
            c: vec![0; pq as usize],
        }
    }

    fn add(&mut self, e: u64) {
        self.c[(e % self.pq) as usize] += 1;
    }

    fn value(&self) -> Cyclotomic {
        Cyclotomic::from_root_counts(self.pq, &self.c)
    }
}

pub fn explicit_characters(ctx: &GpqContext) -> Result<ExplicitCharacters> {
    let (p, q, u) = (ctx.p, ctx.q, ctx.u);
    let pq = p * q;
    let orbit: Vec<u64> = (0..q).map(|k| mod_pow(u, k, p)).collect();
    // zeta_q^a * sigma_{t,x} as exponents of zeta_pq
    let term = |a: u64, t: usize, x: u64| -> Cyclotomic {
        let mut c = Counts::new(pq);
        for &s in &orbit {
            c.add(p * (a % q) + q * (ctx.coset_reps[t] * x % p * s % p));
        }
        c.value()
    };
    let root_q = |a: u64| -> Cyclotomic {
        let mut c = Counts::new(pq);
        c.add(p * (a % q));
        c.value()
    };
    let zero = Cyclotomic::zero(pq);

    let frobenius: GroupRef = Arc::new(frobenius_with(p, q, u)?);
    let fc = frobenius.classes();
    let f_reps: Vec<(u64, u64)> = fc
        .classes()
        .iter()
        .map(|c| (c.representative as u64 / q, c.representative as u64 % q))
        .collect();
    let frobenius_linear = (0..q)
        .map(|k| ClassFunction::new(&frobenius, f_reps.iter().map(|&(_, m)| root_q(k * m)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let chi = (0..ctx.r as usize)
        .map(|t| {
            let vals = f_reps
                .iter()
                .map(|&(x, m)| if m == 0 { term(0, t, x) } else { zero.clone() })
                .collect();
            ClassFunction::new(&frobenius, vals)
        })
        .collect::<Result<Vec<_>>>()?;

    // a^l c^m = f(alpha^A beta^B gamma^m) with A = l p^-1 mod q, B = l q^-1 mod p
    let p_inv = mod_inv(p as i64, q as i64).expect("p is invertible mod q") as u64;
    let q_inv = mod_inv(q as i64, p as i64).expect("q is invertible mod p") as u64;
    let n = ctx.subgroups.n_pq2.clone();
    let ng = n.as_group();
    let n_reps: Vec<(u64, u64, u64)> = ng
        .classes()
        .classes()
        .iter()
        .map(|c| {
            let e = ctx.decode(n.elements()[c.representative as usize]);
            (e.l * p_inv % q, e.l * q_inv % p, e.m)
        })
        .collect();
    let mut linear = Vec::new();
    for s in 0..q {
        for k in 0..q {
            let vals = n_reps.iter().map(|&(a, _, m)| root_q(s * a + k * m)).collect();
            linear.push(ClassFunction::new(&ng, vals)?);
        }
    }
    let mut psi = Vec::new();
    for s in 0..q {
        let mut row = Vec::new();
        for t in 0..ctx.r as usize {
            let vals = n_reps
                .iter()
                .map(|&(a, b, m)| if m == 0 { term(s * a, t, b) } else { zero.clone() })
                .collect();
            row.push(ClassFunction::new(&ng, vals)?);
        }
        psi.push(row);
    }
    Ok(ExplicitCharacters {
        frobenius,
        frobenius_linear,
        chi,
        n,
        linear,
        psi,
    })
}

/// Comparison of closed-form characters with a computed table.
#[derive(Debug, Clone, Serialize)]
pub struct TableAgreement {
    pub matches: bool,
    pub explicit_rows: usize,
    pub table_rows: usize,
    pub all_norms_one: bool,
    /// Table row of each explicit character.
    pub permutation: Vec<Option<usize>>,
}

pub fn table_agreement(explicit: &[ClassFunction], table: &CharacterTable) -> Result<TableAgreement> {
    let mut all_norms_one = true;
    for chi in explicit {
        all_norms_one &= inner_product_int(chi, chi)? == 1;
    }
    let permutation: Vec<Option<usize>> = explicit.iter().map(|chi| table.position(chi)).collect();
    let mut hit = vec![false; table.len()];
    let mut injective = true;
    for &i in permutation.iter().flatten() {
        injective &= !std::mem::replace(&mut hit[i], true);
    }
    Ok(TableAgreement {
        matches: all_norms_one && injective && explicit.len() == table.len() && permutation.iter().all(|x| x.is_some()),
        explicit_rows: explicit.len(),
        table_rows: table.len(),
        all_norms_one,
        permutation,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoCheck {
    pub bijective: bool,
    pub elements: usize,
    /// `|f(alpha)| = |a^p|`.
    pub alpha_image_order: u32,
    #[serde(skip)]
    pub map: Homomorphism,
}

/// Checks exhaustively that `alpha -> a^p`, `beta -> a^q`, `gamma -> c`
/// defines an isomorphism `C_q x F_{p,q} -> N_{pq^2}`.
pub fn iso_f_check(ctx: &GpqContext) -> Result<IsoCheck> {
    let (p, q) = (ctx.p, ctx.q);
    let cq = cyclic(q)?;
    let f = frobenius_with(p, q, ctx.u)?;
    let source: GroupRef = Arc::new(direct_product(&cq, &f, &format!("C_{q} x F_{p},{q}"))?);
    let n = &ctx.subgroups.n_pq2;
    let target = n.as_group();
    let fo = f.order() as u64;
    let images = (0..source.order() as u64)
        .map(|idx| {
            let (a, y) = (idx / fo, idx % fo);
            let (b, m) = (y / q, y % q);
            let global = ctx.element(0, (p * a + q * b) % (p * q), m);
            n.position(global).expect("image lies in N_pq2")
        })
        .collect();
    let map = Homomorphism::new(&source, &target, images)?;
    let alpha = fo as u32; // (alpha, 1)
    let alpha_image_order = target.element_order(map.apply(alpha));
    Ok(IsoCheck {
        bijective: map.is_bijective(),
        elements: source.order(),
        alpha_image_order,
        map,
    })
}
