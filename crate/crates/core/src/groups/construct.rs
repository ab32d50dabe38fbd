//! Group constructors and the group-spec mini-language.
//!
//! ```text
//! cyclic:n                      C_n
//! dihedral:n                    D_2n, order 2n
//! frobenius:p,q                 C_p x| C_q, q | p-1
//! gpq:p,q                       D_2pq x| C_q acting by a -> a^i, b -> b
//! product:<A>x<B>               direct product
//! semidirect:<N>,<H>,<action>   N x| H
//! ```
//!
//! Actions are `trivial`, `pow:k` (every generator of `H` raises the
//! generators of `N` to the `k`-th power) or `auto:<imgs>|<imgs>...` with one
//! `;`-separated list of images of the generators of `N` per generator of
//! `H`. Images are element indices or labels of `N`.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::arith::{is_prime, mod_pow, smallest_primitive_root};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupRef};

fn spec_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::Spec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Parses a group spec and builds the group. Deterministic: the same spec
/// always yields the same table.
pub fn construct_group(spec: &str) -> Result<GroupRef> {
    let spec = spec.trim();
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| spec_err(spec, "expected `<kind>:<args>`"))?;
    let group = match kind {
        "cyclic" => cyclic(parse_uint(spec, args)?)?,
        "dihedral" => dihedral(parse_uint(spec, args)?)?,
        "frobenius" => {
            let (p, q) = parse_pair(spec, args)?;
            frobenius(p, q)?
        }
        "gpq" => {
            let (p, q) = parse_pair(spec, args)?;
            gpq(p, q)?
        }
        "product" => {
            let (a, b) = split_product(args)
                .ok_or_else(|| spec_err(spec, "expected `product:<spec>x<spec>` with valid factors"))?;
            direct_product(&a, &b, spec)?
        }
        "semidirect" => parse_semidirect(spec, args)?,
        _ => return Err(spec_err(spec, format!("unknown group kind `{kind}`"))),
    };
    Ok(Arc::new(group))
}

fn parse_uint(spec: &str, s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| spec_err(spec, format!("`{s}` is not a positive integer")))
        .and_then(|n| {
            if n == 0 {
                Err(spec_err(spec, "parameter must be positive"))
            } else {
                Ok(n)
            }
        })
}

fn parse_pair(spec: &str, s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| spec_err(spec, "expected two comma-separated parameters"))?;
    Ok((parse_uint(spec, a)?, parse_uint(spec, b)?))
}

fn split_product(args: &str) -> Option<(GroupRef, GroupRef)> {
    for (pos, _) in args.match_indices('x') {
        let (l, r) = (&args[..pos], &args[pos + 1..]);
        if let (Ok(a), Ok(b)) = (construct_group(l), construct_group(r)) {
            return Some((a, b));
        }
    }
    None
}

fn parse_semidirect(spec: &str, args: &str) -> Result<FiniteGroup> {
    let (groups, action) = args
        .rsplit_once(',')
        .ok_or_else(|| spec_err(spec, "expected `semidirect:<N>,<H>,<action>`"))?;
    let mut parsed = None;
    for (pos, _) in groups.match_indices(',') {
        if let (Ok(n), Ok(h)) = (construct_group(&groups[..pos]), construct_group(&groups[pos + 1..])) {
            parsed = Some((n, h));
            break;
        }
    }
    let (n, h) = parsed.ok_or_else(|| spec_err(spec, "could not parse the two factor specs"))?;
    semidirect(&n, &h, action.trim(), spec)
}

fn power_label(letter: &str, e: u64) -> String {
    match e {
        0 => String::new(),
        1 => letter.to_string(),
        _ => format!("{letter}^{e}"),
    }
}

fn word_label(parts: &[(&str, u64)]) -> String {
    let words: Vec<String> = parts
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(l, e)| power_label(l, *e))
        .collect();
    if words.is_empty() {
        "1".into()
    } else {
        words.join(" ")
    }
}

pub(crate) fn cyclic(n: u64) -> Result<FiniteGroup> {
    let n = n as usize;
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let labels = (0..n as u64).map(|k| word_label(&[("a", k)])).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_table(format!("cyclic:{n}"), n, mul, labels, gens)
}

/// `D_2n = <a, b | a^n, b^2, bab = a^-1>`, element `b^e a^l` at index `e*n + l`.
pub(crate) fn dihedral(n: u64) -> Result<FiniteGroup> {
    let n = n as usize;
    let order = 2 * n;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (e1, l1) = (x / n, x % n);
        for y in 0..order {
            let (e2, l2) = (y / n, y % n);
            let l = (if e2 == 1 { (n - l1) % n + l2 } else { l1 + l2 }) % n;
            mul[x * order + y] = (((e1 + e2) % 2) * n + l) as u32;
        }
    }
    let labels = (0..order)
        .map(|x| word_label(&[("b", (x / n) as u64), ("a", (x % n) as u64)]))
        .collect();
    let mut gens: Vec<u32> = [1u32, n as u32]
        .into_iter()
        .filter(|&g| g != 0 && (g as usize) < order)
        .collect();
    gens.dedup();
    FiniteGroup::from_table(format!("dihedral:{n}"), order, mul, labels, gens)
}

/// The multiplier `u = v^((p-1)(q-1)/q) mod p` used for the Frobenius action,
/// with `v` the smallest primitive root modulo `p`.
pub(crate) fn frobenius_multiplier(p: u64, q: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Params(format!("p = {p} is not prime")));
    }
    if q < 2 || !(p - 1).is_multiple_of(q) {
        return Err(Error::Params(format!("q must divide p-1 (p = {p}, q = {q})")));
    }
    let v = smallest_primitive_root(p).expect("prime has a primitive root");
    Ok(mod_pow(v, (p - 1) / q * (q - 1), p))
}

/// `F_{p,q} = <b, c | b^p, c^q, c b c^-1 = b^u>`, element `b^x c^m` at index `x*q + m`.
pub(crate) fn frobenius(p: u64, q: u64) -> Result<FiniteGroup> {
    let u = frobenius_multiplier(p, q)?;
    frobenius_with(p, q, u)
}

pub(crate) fn frobenius_with(p: u64, q: u64, u: u64) -> Result<FiniteGroup> {
    let (pu, qu) = (p as usize, q as usize);
    let order = pu * qu;
    let upow: Vec<u64> = (0..q).map(|m| mod_pow(u, m, p)).collect();
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (b1, c1) = (x / qu, x % qu);
        for y in 0..order {
            let (b2, c2) = (y / qu, y % qu);
            let b = (b1 as u64 + upow[c1] * b2 as u64) % p;
            mul[x * order + y] = (b as usize * qu + (c1 + c2) % qu) as u32;
        }
    }
    let labels = (0..order)
        .map(|x| word_label(&[("b", (x / qu) as u64), ("c", (x % qu) as u64)]))
        .collect();
    FiniteGroup::from_table(format!("frobenius:{p},{q}"), order, mul, labels, vec![qu as u32, 1])
}

/// An element `b^eps a^l c^m` of `G_{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GpqElement {
    pub eps: u64,
    pub l: u64,
    pub m: u64,
}

impl GpqElement {
    pub fn new(eps: u64, l: u64, m: u64) -> Self {
        GpqElement { eps, l, m }
    }

    /// Index in the table built by `gpq:p,q`.
    pub fn index(&self, p: u64, q: u64) -> u32 {
        ((self.eps * p * q + self.l) * q + self.m) as u32
    }

    pub fn from_index(idx: u32, p: u64, q: u64) -> Self {
        let idx = idx as u64;
        let m = idx % q;
        let rest = idx / q;
        GpqElement {
            eps: rest / (p * q),
            l: rest % (p * q),
            m,
        }
    }
}

/// The twist `i = v^((p-1)(q-1)/q) mod pq` with `v` the smallest primitive
/// root modulo `p`, replaced by `v + p` when `q | v`. Returns `(v, i)`.
pub fn gpq_twist(p: u64, q: u64) -> Result<(u64, u64)> {
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::Params(format!("p = {p} and q = {q} must both be prime")));
    }
    if !(p - 1).is_multiple_of(q) {
        return Err(Error::Params(format!("q must divide p-1 (p = {p}, q = {q})")));
    }
    let mut v = smallest_primitive_root(p).expect("prime has a primitive root");
    if v.is_multiple_of(q) {
        v += p;
    }
    Ok((v, mod_pow(v, (p - 1) / q * (q - 1), p * q)))
}

/// Product law of `G_{p,q}` on normal forms `b^eps a^l c^m`.
pub fn gpq_element_mul(x: GpqElement, y: GpqElement, p: u64, q: u64, i: u64) -> Result<GpqElement> {
    let pq = p * q;
    for e in [x, y] {
        if e.eps > 1 || e.l >= pq || e.m >= q {
            return Err(Error::OutOfRange(format!(
                "({}, {}, {}) is not a normal form for p = {p}, q = {q}",
                e.eps, e.l, e.m
            )));
        }
    }
    let l1 = if y.eps == 1 { (pq - x.l) % pq } else { x.l };
    let l = (l1 + y.l * mod_pow(i, x.m, pq)) % pq;
    Ok(GpqElement {
        eps: (x.eps + y.eps) % 2,
        l,
        m: (x.m + y.m) % q,
    })
}

pub(crate) fn gpq(p: u64, q: u64) -> Result<FiniteGroup> {
    let (_, i) = gpq_twist(p, q)?;
    gpq_with(p, q, i)
}

pub(crate) fn gpq_with(p: u64, q: u64, i: u64) -> Result<FiniteGroup> {
    let order = (2 * p * q * q) as usize;
    let elems: Vec<GpqElement> = (0..order as u32).map(|x| GpqElement::from_index(x, p, q)).collect();
    let mut mul = vec![0u32; order * order];
    for (xi, &x) in elems.iter().enumerate() {
        for (yi, &y) in elems.iter().enumerate() {
            mul[xi * order + yi] = gpq_element_mul(x, y, p, q, i)?.index(p, q);
        }
    }
    let labels = elems
        .iter()
        .map(|e| word_label(&[("b", e.eps), ("a", e.l), ("c", e.m)]))
        .collect();
    let gens = vec![
        GpqElement::new(0, 1, 0).index(p, q),
        GpqElement::new(1, 0, 0).index(p, q),
        GpqElement::new(0, 0, 1).index(p, q),
    ];
    FiniteGroup::from_table(format!("gpq:{p},{q}"), order, mul, labels, gens)
}

/// `A x B`, element `(x, y)` at index `x*|B| + y`.
pub(crate) fn direct_product(a: &FiniteGroup, b: &FiniteGroup, name: &str) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (x1, x2) = ((x / nb) as u32, (x % nb) as u32);
        for y in 0..order {
            let (y1, y2) = ((y / nb) as u32, (y % nb) as u32);
            mul[x * order + y] = a.mul(x1, y1) * nb as u32 + b.mul(x2, y2);
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", a.label((x / nb) as u32), b.label((x % nb) as u32)))
        .collect();
    let mut gens: Vec<u32> = a.generators().iter().map(|&g| g * nb as u32).collect();
    gens.extend(b.generators().iter().copied());
    FiniteGroup::from_table(name, order, mul, labels, gens)
}

/// Extends generator images to an endomorphism of `n` given as an element map.
fn extend_endomorphism(n: &FiniteGroup, images: &[u32]) -> Option<Vec<u32>> {
    let gens = n.generators();
    let mut map = vec![u32::MAX; n.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (j, &g) in gens.iter().enumerate() {
            let y = n.mul(x, g);
            let img = n.mul(map[x as usize], images[j]);
            if map[y as usize] == u32::MAX {
                map[y as usize] = img;
                queue.push_back(y);
            } else if map[y as usize] != img {
                return None;
            }
        }
    }
    Some(map)
}

fn is_automorphism(n: &FiniteGroup, map: &[u32]) -> bool {
    let mut hit = vec![false; n.order()];
    for &m in map {
        if hit[m as usize] {
            return false;
        }
        hit[m as usize] = true;
    }
    (0..n.order() as u32)
        .all(|x| (0..n.order() as u32).all(|y| map[n.mul(x, y) as usize] == n.mul(map[x as usize], map[y as usize])))
}

fn resolve_element(n: &FiniteGroup, tok: &str) -> Option<u32> {
    let tok = tok.trim();
    if let Ok(k) = tok.parse::<u32>() {
        return ((k as usize) < n.order()).then_some(k);
    }
    n.find_label(tok)
}

/// `N x| H` where `action` assigns an automorphism of `N` to each generator of `H`.
pub(crate) fn semidirect(n: &FiniteGroup, h: &FiniteGroup, action: &str, name: &str) -> Result<FiniteGroup> {
    let ngens = n.generators().to_vec();
    let hgens = h.generators().to_vec();
    let auts: Vec<Vec<u32>> = if action == "trivial" {
        vec![(0..n.order() as u32).collect(); hgens.len()]
    } else if let Some(k) = action.strip_prefix("pow:") {
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| spec_err(name, "`pow:` needs an integer exponent"))?;
        let imgs: Vec<u32> = ngens.iter().map(|&g| n.pow(g, k)).collect();
        let map = extend_endomorphism(n, &imgs).ok_or_else(|| spec_err(name, "power map is not well defined"))?;
        vec![map; hgens.len()]
    } else if let Some(rest) = action.strip_prefix("auto:") {
        let lists: Vec<&str> = rest.split('|').collect();
        if lists.len() != hgens.len() {
            return Err(spec_err(
                name,
                format!(
                    "{} automorphisms given for {} generators of H",
                    lists.len(),
                    hgens.len()
                ),
            ));
        }
        let mut auts = Vec::new();
        for list in lists {
            let imgs: Vec<u32> = list
                .split(';')
                .map(|t| resolve_element(n, t).ok_or_else(|| spec_err(name, format!("unknown element `{t}`"))))
                .collect::<Result<_>>()?;
            if imgs.len() != ngens.len() {
                return Err(spec_err(name, "image count differs from the generator count of N"));
            }
            let map = extend_endomorphism(n, &imgs)
                .ok_or_else(|| spec_err(name, "generator images do not define a homomorphism"))?;
            auts.push(map);
        }
        auts
    } else {
        return Err(spec_err(name, format!("unknown action `{action}`")));
    };
    for a in &auts {
        if !is_automorphism(n, a) {
            return Err(spec_err(name, "action is not by automorphisms"));
        }
    }
    // phi: H -> Aut(N) by breadth-first extension along the generators of H
    let nn = n.order();
    let mut phi: Vec<Option<Vec<u32>>> = vec![None; h.order()];
    phi[0] = Some((0..nn as u32).collect());
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[x as usize].clone().unwrap();
        for (j, &g) in hgens.iter().enumerate() {
            let y = h.mul(x, g);
            let fy: Vec<u32> = (0..nn).map(|e| fx[auts[j][e] as usize]).collect();
            match &phi[y as usize] {
                None => {
                    phi[y as usize] = Some(fy);
                    queue.push_back(y);
                }
                Some(existing) if *existing != fy => {
                    return Err(spec_err(name, "action is not a homomorphism H -> Aut(N)"));
                }
                _ => {}
            }
        }
    }
    let phi: Vec<Vec<u32>> = phi.into_iter().map(|f| f.unwrap()).collect();
    for x in 0..h.order() as u32 {
        for y in 0..h.order() as u32 {
            let xy = h.mul(x, y) as usize;
            let composed = (0..nn).all(|e| phi[xy][e] == phi[x as usize][phi[y as usize][e] as usize]);
            if !composed {
                return Err(spec_err(name, "action is not a homomorphism H -> Aut(N)"));
            }
        }
    }
    let nh = h.order();
    let order = nn * nh;
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (n1, h1) = (x / nh, x % nh);
        for y in 0..order {
            let (n2, h2) = (y / nh, y % nh);
            let nprod = n.mul(n1 as u32, phi[h1][n2]);
            mul[x * order + y] = nprod * nh as u32 + h.mul(h1 as u32, h2 as u32);
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", n.label((x / nh) as u32), h.label((x % nh) as u32)))
        .collect();
    let mut gens: Vec<u32> = ngens.iter().map(|&g| g * nh as u32).collect();
    gens.extend(hgens.iter().copied());
    FiniteGroup::from_table(name, order, mul, labels, gens)
}
