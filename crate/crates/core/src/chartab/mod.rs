//! Class functions and exact character tables.
//!
//! Character values live in `Q(zeta_e)` where `e` is the exponent of the
//! group. Irreducible tables are found by inducing linear characters of
//! subgroups (every solvable group in scope is monomial) and are certified
//! complete by the identity `sum of squared degrees = |G|`.

mod monomial;
mod real;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{same_group, GroupRef, Subgroup};

pub use real::{fixed_dim, fixed_dims, frobenius_schur, prim, real_irreducibles, RealIrreducible};

/// A function on the conjugacy classes of a group, indexed like `group.classes()`.
#[derive(Clone)]
pub struct ClassFunction {
    group: GroupRef,
    values: Vec<Cyclotomic>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl Serialize for ClassFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

impl ClassFunction {
    pub fn new(group: &GroupRef, values: Vec<Cyclotomic>) -> Result<ClassFunction> {
        if values.len() != group.classes().len() {
            return Err(Error::GroupMismatch(format!(
                "{} values for {} classes",
                values.len(),
                group.classes().len()
            )));
        }
        Ok(ClassFunction {
            group: group.clone(),
            values,
        })
    }

    pub fn zero(group: &GroupRef) -> ClassFunction {
        let e = group.exponent();
        let k = group.classes().len();
        ClassFunction {
            group: group.clone(),
            values: vec![Cyclotomic::zero(e); k],
        }
    }

    pub fn trivial(group: &GroupRef) -> ClassFunction {
        let e = group.exponent();
        let k = group.classes().len();
        ClassFunction {
            group: group.clone(),
            values: vec![Cyclotomic::one(e); k],
        }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value on class `k`.
    pub fn value(&self, k: usize) -> &Cyclotomic {
        &self.values[k]
    }

    /// Value on element `g`.
    pub fn value_at(&self, g: u32) -> &Cyclotomic {
        &self.values[self.group.classes().class_of(g)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Degree as an integer; panics on a non-integer value at the identity.
    pub fn degree_int(&self) -> i64 {
        let d = self.values[0].as_integer().expect("degree is an integer");
        i64::try_from(d).expect("degree fits in i64")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "class functions on {} and {}",
                self.group.name(),
                other.group.name()
            )))
        }
    }

    fn zip_with(
        &self,
        other: &ClassFunction,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<ClassFunction> {
        self.check_same(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product (tensor product of characters).
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        self.map(|v| v.scale_int(k))
    }

    pub fn scale(&self, r: &BigRational) -> ClassFunction {
        self.map(|v| v.scale(r))
    }

    pub fn conjugate(&self) -> ClassFunction {
        self.map(|v| v.conjugate())
    }

    /// `chi + conj(chi)`.
    pub fn real_double(&self) -> ClassFunction {
        self.map(|v| v.real_double())
    }

    pub fn galois(&self, a: i64) -> ClassFunction {
        self.map(|v| v.galois(a))
    }

    fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn is_real_valued(&self) -> bool {
        self.values.iter().all(|v| v.conjugate() == *v)
    }
}

/// `(1/|G|) sum_g a(g) conj(b(g))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    a.check_same(b)?;
    let cd = a.group.classes();
    let mut acc = Cyclotomic::zero(a.group.exponent());
    for k in 0..cd.len() {
        let term = &a.values[k] * &b.values[k].conjugate();
        acc += &term.scale_int(cd.size(k) as i64);
    }
    let inv = BigRational::new(BigInt::one(), BigInt::from(a.group.order()));
    Ok(acc.scale(&inv))
}

/// Inner product certified to be an integer.
pub fn inner_product_int(a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
    let v = inner_product(a, b)?;
    v.as_integer()
        .and_then(|i| i64::try_from(i).ok())
        .ok_or_else(|| Error::NotIntegral(format!("inner product {v}")))
}

/// `Res^G_H chi` as a class function on `H.as_group()`.
pub fn restrict(chi: &ClassFunction, h: &Subgroup) -> Result<ClassFunction> {
    if !same_group(&chi.group, h.parent()) {
        return Err(Error::GroupMismatch("subgroup of a different group".into()));
    }
    let hg = h.as_group();
    let values = hg
        .classes()
        .classes()
        .iter()
        .map(|c| chi.value_at(h.lift(&[c.representative])[0]).clone())
        .collect();
    ClassFunction::new(&hg, values)
}

/// `Ind_H^G chi` for a class function on `H.as_group()`.
///
/// On a class `(g)` disjoint from `H` the value is 0; otherwise it is
/// `|C_G(g)| sum_i chi(h_i)/|C_H(h_i)|` over representatives `h_i` of the
/// `H`-classes contained in `(g) ∩ H`.
pub fn induce(chi: &ClassFunction, h: &Subgroup) -> Result<ClassFunction> {
    let hg = h.as_group();
    if !same_group(&chi.group, &hg) {
        return Err(Error::GroupMismatch(
            "class function is not defined on the given subgroup".into(),
        ));
    }
    let g = h.parent();
    let cg = g.classes();
    let ch = hg.classes();
    let mut sums: Vec<Option<Cyclotomic>> = vec![None; cg.len()];
    for (j, c) in ch.classes().iter().enumerate() {
        let k = cg.class_of(h.lift(&[c.representative])[0]);
        let term = chi.values[j].scale(&BigRational::new(BigInt::one(), BigInt::from(ch.centralizer_order(j))));
        match &mut sums[k] {
            Some(s) => *s += &term,
            slot => *slot = Some(term),
        }
    }
    let e = g.exponent();
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| match s {
            None => Cyclotomic::zero(e),
            Some(s) => {
                let m = num_integer::lcm(s.conductor(), e);
                s.scale_int(cg.centralizer_order(k) as i64).embed(m)
            }
        })
        .collect();
    ClassFunction::new(g, values)
}

/// Parent-free table data stored in the group cache.
#[derive(Debug)]
pub(crate) struct TableData {
    rows: Vec<Vec<Cyclotomic>>,
    indicators: Vec<i64>,
}

/// The irreducible characters of a group in canonical order: by degree,
/// trivial character first, then by value vector.
#[derive(Clone)]
pub struct CharacterTable {
    group: GroupRef,
    data: Arc<TableData>,
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterTable({}, {} characters)", self.group.name(), self.len())
    }
}

/// Computes (or fetches from the cache) the irreducible character table.
pub fn irreducible_table(g: &GroupRef, bound: usize) -> Result<CharacterTable> {
    if let Some(d) = g.cached_chartab().get() {
        return Ok(CharacterTable {
            group: g.clone(),
            data: d.clone(),
        });
    }
    let rows = monomial::compute(g, bound)?;
    let indicators = rows
        .iter()
        .map(|r| real::indicator_of_values(g, r))
        .collect::<Result<Vec<_>>>()?;
    let data = g
        .cached_chartab()
        .get_or_init(|| Arc::new(TableData { rows, indicators }))
        .clone();
    Ok(CharacterTable { group: g.clone(), data })
}

impl CharacterTable {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.data.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.rows.is_empty()
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.data.rows[i].clone(),
        }
    }

    pub fn characters(&self) -> Vec<ClassFunction> {
        (0..self.len()).map(|i| self.character(i)).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.data
            .rows
            .iter()
            .map(|r| i64::try_from(r[0].as_integer().expect("integer degree")).unwrap())
            .collect()
    }

    /// Frobenius–Schur indicator of row `i`.
    pub fn indicator(&self, i: usize) -> i64 {
        self.data.indicators[i]
    }

    pub fn indicators(&self) -> &[i64] {
        &self.data.indicators
    }

    /// Index of the row equal to `chi`, if any.
    pub fn position(&self, chi: &ClassFunction) -> Option<usize> {
        if !same_group(&self.group, &chi.group) {
            return None;
        }
        self.data.rows.iter().position(|r| *r == chi.values)
    }

    /// Index of the complex-conjugate row of row `i`.
    pub fn conjugate_row(&self, i: usize) -> usize {
        let c = self.character(i).conjugate();
        self.position(&c).expect("conjugate of an irreducible is irreducible")
    }

    /// Multiplicities `<chi, row_i>` of every irreducible.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i64>> {
        (0..self.len())
            .map(|i| inner_product_int(chi, &self.character(i)))
            .collect()
    }

    /// Checks `sum d^2 = |G|`, row orthonormality and column orthogonality.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        let cd = g.classes();
        if self.len() != cd.len() {
            return Err(Error::Invariant("row count differs from class count".into()));
        }
        let sq: i64 = self.degrees().iter().map(|d| d * d).sum();
        if sq != g.order() as i64 {
            return Err(Error::Invariant(format!(
                "sum of squared degrees {sq} != {}",
                g.order()
            )));
        }
        for i in 0..self.len() {
            for j in i..self.len() {
                let ip = inner_product(&self.character(i), &self.character(j))?;
                let want = if i == j {
                    Cyclotomic::one(1)
                } else {
                    Cyclotomic::zero(1)
                };
                if ip != want {
                    return Err(Error::Invariant(format!("<row {i}, row {j}> = {ip}")));
                }
            }
        }
        for k in 0..cd.len() {
            let mut acc = Cyclotomic::zero(g.exponent());
            for r in &self.data.rows {
                acc += &(&r[k] * &r[k].conjugate());
            }
            if acc != Cyclotomic::from_integer(1, cd.centralizer_order(k) as i64) {
                return Err(Error::Invariant(format!("column {k} sum {acc}")));
            }
        }
        Ok(())
    }

    pub fn report(&self) -> TableReport {
        let g = &self.group;
        let cd = g.classes();
        TableReport {
            group: g.name().to_string(),
            order: g.order(),
            classes: cd
                .classes()
                .iter()
                .map(|c| ClassSummary {
                    representative: g.label(c.representative).to_string(),
                    order: c.element_order,
                    size: c.size(),
                })
                .collect(),
            degrees: self.degrees(),
            indicators: self.data.indicators.clone(),
            values: self.data.rows.clone(),
        }
    }
}

/// One conjugacy class in a serialized census.
#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub representative: String,
    pub order: u32,
    pub size: usize,
}

/// JSON form of a character table.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub group: String,
    pub order: usize,
    pub classes: Vec<ClassSummary>,
    pub degrees: Vec<i64>,
    pub indicators: Vec<i64>,
    pub values: Vec<Vec<Cyclotomic>>,
}

/// Class census of a group: (representative label, element order, size) per class.
pub fn class_census(g: &GroupRef) -> Vec<ClassSummary> {
    g.classes()
        .classes()
        .iter()
        .map(|c| ClassSummary {
            representative: g.label(c.representative).to_string(),
            order: c.element_order,
            size: c.size(),
        })
        .collect()
}

fn is_trivial_row(row: &[Cyclotomic]) -> bool {
    row.iter().all(|v| v.as_integer().is_some_and(|i| i.is_one()))
}

/// Canonical row order: degree, trivial first, then lexicographic by encoding.
pub(crate) fn sort_rows(rows: &mut [Vec<Cyclotomic>]) {
    rows.sort_by(|a, b| {
        let da = a[0].as_integer().unwrap_or_else(BigInt::zero);
        let db = b[0].as_integer().unwrap_or_else(BigInt::zero);
        da.cmp(&db)
            .then_with(|| is_trivial_row(b).cmp(&is_trivial_row(a)))
            .then_with(|| {
                a.iter()
                    .zip(b.iter())
                    .map(|(x, y)| x.cmp_encoding(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
}
