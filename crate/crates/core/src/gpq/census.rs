use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::GpqContext;

/// One class family with its closed-form data and the brute-force count.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub family: &'static str,
    pub representative: String,
    pub element_order: u64,
    pub class_size: u64,
    pub expected_classes: u64,
    pub observed_classes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassCensus {
    pub rows: Vec<CensusRow>,
    pub total_classes: usize,
    pub matches: bool,
}

/// Compares the conjugacy classes of `G_{p,q}` with the closed-form census.
/// Classes are identified by `(element order, class size)`; a class whose
/// key matches no family, or two families sharing a key, is an error.
pub fn census_table(ctx: &GpqContext) -> Result<ClassCensus> {
    let (p, q, r) = (ctx.p, ctx.q, ctx.r);
    let families: [(&'static str, String, u64, u64, u64); 8] = [
        ("identity", "1".into(), 1, 1, 1),
        ("B", "b".into(), 2, p * q, 1),
        ("E_s", format!("a^{q}"), p, 2 * q, r / 2),
        ("C_m", "c".into(), q, p, q - 1),
        ("D_r,m", "a c".into(), q, 2 * p, (q - 1) * (q - 1) / 2),
        ("F_s", format!("a^{p}"), q, 2, (q - 1) / 2),
        ("B_m", "b c".into(), 2 * q, p * q, q - 1),
        ("A_l", "a".into(), p * q, 2 * q, (q - 1) * r / 2),
    ];
    let mut key_to_family: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for (k, f) in families.iter().enumerate() {
        if key_to_family.insert((f.2, f.3), k).is_some() {
            return Err(Error::Invariant(format!("class key {:?} is ambiguous", (f.2, f.3))));
        }
    }
    let cd = ctx.group.classes();
    let mut observed = [0u64; 8];
    for c in cd.classes() {
        let key = (c.element_order as u64, c.size() as u64);
        let k = key_to_family.get(&key).ok_or_else(|| Error::CheckFailed {
            id: "class-census".into(),
            detail: format!(
                "class of {} with (order, size) = {key:?} fits no family",
                ctx.group.label(c.representative)
            ),
        })?;
        observed[*k] += 1;
    }
    let rows: Vec<CensusRow> = families
        .iter()
        .zip(observed)
        .map(|(f, o)| CensusRow {
            family: f.0,
            representative: f.1.clone(),
            element_order: f.2,
            class_size: f.3,
            expected_classes: f.4,
            observed_classes: o,
        })
        .collect();
    let size_sum: u64 = rows.iter().map(|r| r.class_size * r.expected_classes).sum();
    Ok(ClassCensus {
        matches: rows.iter().all(|r| r.expected_classes == r.observed_classes) && size_sum == ctx.order(),
        total_classes: cd.len(),
        rows,
    })
}
