//! The family `G_{p,q} = D_{2pq} ⋊ C_q`: parameters, named subgroups,
//! explicit characters, the class census and the end-to-end verification.

mod census;
mod characters;
mod verify;

use std::sync::Arc;

use crate::arith::{is_prime, mod_pow, multiplicative_order, smallest_primitive_root};
use crate::error::{Error, Result};
use crate::groups::{gpq_with, GpqElement, GroupRef, Subgroup};

pub use census::{census_table, CensusRow, ClassCensus};
pub use characters::{
    explicit_characters, iso_f_check, table_agreement, ExplicitCharacters, IsoCheck, TableAgreement, WitnessPair,
};
pub use verify::{verify_theorem, CheckRecord, CheckStatus, Params, Summary, VerificationReport};

/// Why `q = 2` is excluded: `N_p` is then normal with a 2-group quotient.
pub const Q_TWO_RATIONALE: &str = "q = 2 is not supported: for q = 2 the subgroup N_p = {a^(qs)} is normal and \
G_{p,2}/N_p is a 2-group, so G_{p,2} is not an Oliver group";

/// The normal subgroups named in the structure theory of `G_{p,q}`.
#[derive(Debug, Clone)]
pub struct NamedSubgroups {
    /// `{a^(qs)}`, cyclic of order `p`.
    pub n_p: Subgroup,
    /// `{a^(ps)}`, cyclic of order `q`.
    pub n_q: Subgroup,
    /// `<a>`, cyclic of order `pq`.
    pub n1_pq: Subgroup,
    /// `{a^(qs) c^m}`, Frobenius of order `pq`.
    pub n2_pq: Subgroup,
    /// `<a, b>`, dihedral of order `2pq`.
    pub n_2pq: Subgroup,
    /// `<a, c>`, the unique subgroup of index 2.
    pub n_pq2: Subgroup,
}

impl NamedSubgroups {
    pub fn named(&self) -> [(&'static str, &Subgroup); 6] {
        [
            ("N_p", &self.n_p),
            ("N_q", &self.n_q),
            ("N1_pq", &self.n1_pq),
            ("N2_pq", &self.n2_pq),
            ("N_2pq", &self.n_2pq),
            ("N_pq2", &self.n_pq2),
        ]
    }
}

/// Parameters and the constructed group.
#[derive(Debug, Clone)]
pub struct GpqContext {
    pub p: u64,
    pub q: u64,
    /// Primitive root modulo `p` not divisible by `q`.
    pub v: u64,
    /// `v^((p-1)(q-1)/q) mod pq`.
    pub i: u64,
    /// `i mod p`, of multiplicative order `q`.
    pub u: u64,
    /// `(p-1)/q`, the number of cosets of `<u>` in `Z_p^*`.
    pub r: u64,
    /// `v_t = v^(t-1) mod p` for `t = 1..r`, one per coset of `<u>`.
    pub coset_reps: Vec<u64>,
    pub group: GroupRef,
    pub subgroups: NamedSubgroups,
}

fn check_params(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::Params(format!("p = {p} and q = {q} must both be prime")));
    }
    if q == 2 {
        return Err(Error::Params(Q_TWO_RATIONALE.into()));
    }
    if p == 2 {
        return Err(Error::Params("p must be odd".into()));
    }
    if !(p - 1).is_multiple_of(q) {
        return Err(Error::Params(format!("q must divide p−1 (p = {p}, q = {q})")));
    }
    Ok(())
}

/// Builds the context with the smallest primitive root, shifted by `p`
/// when it is divisible by `q`.
pub fn setup(p: u64, q: u64) -> Result<GpqContext> {
    check_params(p, q)?;
    let mut v = smallest_primitive_root(p).expect("prime has a primitive root");
    if v.is_multiple_of(q) {
        v += p;
    }
    setup_with_root(p, q, v)
}

/// Builds the context for a given primitive root `v` modulo `p` with `q ∤ v`.
pub fn setup_with_root(p: u64, q: u64, v: u64) -> Result<GpqContext> {
    check_params(p, q)?;
    if v.is_multiple_of(q) || multiplicative_order(v % p, p) != Some(p - 1) {
        return Err(Error::Params(format!(
            "v = {v} must be a primitive root modulo {p} not divisible by {q}"
        )));
    }
    let pq = p * q;
    let i = mod_pow(v, (p - 1) / q * (q - 1), pq);
    let u = i % p;
    let r = (p - 1) / q;
    let coset_reps: Vec<u64> = (0..r).map(|t| mod_pow(v, t, p)).collect();

    if i % q != 1 || multiplicative_order(u, p) != Some(q) || mod_pow(i, q, pq) != 1 || i == 1 {
        return Err(Error::Invariant(format!("twist i = {i} has the wrong order")));
    }
    let mut seen = vec![false; p as usize];
    for &vt in &coset_reps {
        for k in 0..q {
            let x = (vt * mod_pow(u, k, p) % p) as usize;
            if seen[x] {
                return Err(Error::Invariant("coset representatives overlap".into()));
            }
            seen[x] = true;
        }
    }

    let group: GroupRef = Arc::new(gpq_with(p, q, i)?);
    let subgroups = build_subgroups(&group, p, q)?;
    Ok(GpqContext {
        p,
        q,
        v,
        i,
        u,
        r,
        coset_reps,
        group,
        subgroups,
    })
}

fn build_subgroups(g: &GroupRef, p: u64, q: u64) -> Result<NamedSubgroups> {
    let pq = p * q;
    let pick = |f: &dyn Fn(GpqElement) -> bool| -> Result<Subgroup> {
        let elems = (0..g.order() as u32)
            .filter(|&x| f(GpqElement::from_index(x, p, q)))
            .collect();
        Subgroup::new(g, elems)
    };
    let named = NamedSubgroups {
        n_p: pick(&|e| e.eps == 0 && e.m == 0 && e.l % q == 0)?,
        n_q: pick(&|e| e.eps == 0 && e.m == 0 && e.l % p == 0)?,
        n1_pq: pick(&|e| e.eps == 0 && e.m == 0)?,
        n2_pq: pick(&|e| e.eps == 0 && e.l % q == 0)?,
        n_2pq: pick(&|e| e.m == 0)?,
        n_pq2: pick(&|e| e.eps == 0)?,
    };
    let expected = [p, q, pq, pq, 2 * pq, pq * q];
    for ((name, h), &order) in named.named().iter().zip(&expected) {
        if h.order() as u64 != order || !h.is_normal() {
            return Err(Error::Invariant(format!(
                "{name} has order {} or is not normal",
                h.order()
            )));
        }
    }
    Ok(named)
}

impl GpqContext {
    pub fn element(&self, eps: u64, l: u64, m: u64) -> u32 {
        GpqElement::new(eps, l, m).index(self.p, self.q)
    }

    pub fn decode(&self, x: u32) -> GpqElement {
        GpqElement::from_index(x, self.p, self.q)
    }

    pub fn order(&self) -> u64 {
        2 * self.p * self.q * self.q
    }

    /// `½(q-1)(r+1)`.
    pub fn prim_formula(&self) -> u64 {
        (self.q - 1) * (self.r + 1) / 2
    }
}
