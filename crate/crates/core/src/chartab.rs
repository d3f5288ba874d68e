//! Character tables of finite groups, described purely at the level of
//! conjugacy classes: sizes, representative orders, power maps, and the
//! values of the irreducible characters.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycloError, Cyclotomic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartabError {
    #[error("malformed character table: {0}")]
    MalformedTable(String),
    #[error("invalid character value in {context}: {source}")]
    Value {
        context: String,
        #[source]
        source: CycloError,
    },
    #[error("cannot read table file: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub label: String,
    pub size: u64,
    /// Order of a representative g.
    pub order: u64,
    /// `power_map[k]` is the class index of g^k, for k in `0..order`.
    pub power_map: Vec<usize>,
}

impl ConjugacyClass {
    /// Class index of g^k for any integer k.
    pub fn power(&self, k: i64) -> usize {
        self.power_map[k.rem_euclid(self.order as i64) as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducible {
    pub name: String,
    pub values: Vec<Cyclotomic>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group_order: u64,
    classes: Vec<ConjugacyClass>,
    irreducibles: Vec<Irreducible>,
    conjugates: Vec<Vec<Cyclotomic>>,
}

impl PartialEq for CharacterTable {
    fn eq(&self, other: &Self) -> bool {
        self.group_order == other.group_order
            && self.classes == other.classes
            && self.irreducibles == other.irreducibles
    }
}

impl Eq for CharacterTable {}

impl CharacterTable {
    /// Assembles a table after checking that its shape is usable: every row
    /// has one value per class and every power map points at real classes.
    /// The group-theoretic invariants are checked by [`validate_table`].
    pub fn new(
        group_order: u64,
        classes: Vec<ConjugacyClass>,
        irreducibles: Vec<Irreducible>,
    ) -> Result<Self, ChartabError> {
        let malformed = |m: String| Err(ChartabError::MalformedTable(m));
        if group_order == 0 {
            return malformed("group order must be positive".into());
        }
        if classes.is_empty() {
            return malformed("no conjugacy classes".into());
        }
        for (idx, c) in classes.iter().enumerate() {
            if c.size == 0 {
                return malformed(format!("class {} has size 0", c.label));
            }
            if c.order == 0 {
                return malformed(format!("class {} has order 0", c.label));
            }
            if c.power_map.len() as u64 != c.order {
                return malformed(format!(
                    "class {} (index {idx}) has a power map of length {} but order {}",
                    c.label,
                    c.power_map.len(),
                    c.order
                ));
            }
            if let Some(&bad) = c.power_map.iter().find(|&&p| p >= classes.len()) {
                return malformed(format!("class {} maps to nonexistent class {bad}", c.label));
            }
        }
        for irr in &irreducibles {
            if irr.values.len() != classes.len() {
                return malformed(format!(
                    "character {} has {} values for {} classes",
                    irr.name,
                    irr.values.len(),
                    classes.len()
                ));
            }
        }
        let conjugates =
            irreducibles.iter().map(|irr| irr.values.iter().map(Cyclotomic::conjugate).collect()).collect();
        Ok(CharacterTable { group_order, classes, irreducibles, conjugates })
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Irreducible] {
        &self.irreducibles
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn irreducible_index(&self, name: &str) -> Option<usize> {
        self.irreducibles.iter().position(|irr| irr.name == name)
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    /// Index of the character that is 1 on every class.
    pub fn trivial_index(&self) -> Option<usize> {
        let one = Cyclotomic::one();
        self.irreducibles.iter().position(|irr| irr.values.iter().all(|v| *v == one))
    }

    /// Complex conjugate of irreducible `i` at every class.
    pub fn conjugate_row(&self, i: usize) -> &[Cyclotomic] {
        &self.conjugates[i]
    }

    /// Degree χ_i(1), if it is an integer.
    pub fn degree(&self, i: usize) -> Result<BigInt, CycloError> {
        self.irreducibles[i].values[0].as_integer()
    }

    /// (1/|G|) Σ_C |C| f(C) conj(g(C)).
    pub fn class_inner_product(&self, f: &[Cyclotomic], g_conj: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for ((c, x), y) in self.classes.iter().zip(f).zip(g_conj) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = &acc + &(x * y).scale(&BigRational::from_integer(c.size.into()));
        }
        acc.scale(&BigRational::new(BigInt::one(), self.group_order.into()))
    }

    pub fn from_json_str(s: &str) -> Result<Self, ChartabError> {
        let file: TableFile = serde_json::from_str(s).map_err(|e| ChartabError::Json(e.to_string()))?;
        file.into_table()
    }

    pub fn to_file(&self) -> TableFile {
        TableFile {
            group_order: self.group_order,
            classes: self
                .classes
                .iter()
                .map(|c| ClassEntry {
                    label: c.label.clone(),
                    size: c.size,
                    order: c.order,
                    power_map: c.power_map.clone(),
                })
                .collect(),
            irreducibles: self
                .irreducibles
                .iter()
                .map(|irr| IrreducibleEntry {
                    name: irr.name.clone(),
                    values: irr.values.iter().map(|v| LiteralValue::Text(v.to_string())).collect(),
                })
                .collect(),
        }
    }
}

/// On-disk JSON layout of a character table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub group_order: u64,
    pub classes: Vec<ClassEntry>,
    pub irreducibles: Vec<IrreducibleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub label: String,
    pub size: u64,
    pub order: u64,
    pub power_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrreducibleEntry {
    pub name: String,
    pub values: Vec<LiteralValue>,
}

/// A character value: either a JSON integer or a cyclotomic literal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LiteralValue {
    Int(i64),
    Text(String),
}

impl TableFile {
    pub fn into_table(self) -> Result<CharacterTable, ChartabError> {
        let classes = self
            .classes
            .into_iter()
            .map(|c| ConjugacyClass { label: c.label, size: c.size, order: c.order, power_map: c.power_map })
            .collect();
        let mut irreducibles = Vec::with_capacity(self.irreducibles.len());
        for entry in self.irreducibles {
            let mut values = Vec::with_capacity(entry.values.len());
            for (idx, v) in entry.values.into_iter().enumerate() {
                let value = match v {
                    LiteralValue::Int(n) => Cyclotomic::from_integer(n),
                    LiteralValue::Text(s) => s.parse().map_err(|source| ChartabError::Value {
                        context: format!("character {} at class index {idx}", entry.name),
                        source,
                    })?,
                };
                values.push(value);
            }
            irreducibles.push(Irreducible { name: entry.name, values });
        }
        CharacterTable::new(self.group_order, classes, irreducibles)
    }
}

/// One failed check in [`validate_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IdentityClass { reason: String },
    ClassSizeSum { sum: u64, group_order: u64 },
    ClassSizeDivisibility { class: String, size: u64 },
    PowerMap { class: String, reason: String },
    IrreducibleCount { irreducibles: usize, classes: usize },
    Degree { character: String, value: String },
    DegreeSquareSum { sum: BigInt, group_order: u64 },
    RowOrthogonality { first: String, second: String, value: String },
    ColumnOrthogonality { first: String, second: String, value: String, expected: String },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::IdentityClass { .. } => "identity-class",
            Violation::ClassSizeSum { .. } => "class-size-sum",
            Violation::ClassSizeDivisibility { .. } => "class-size-divisibility",
            Violation::PowerMap { .. } => "power-map",
            Violation::IrreducibleCount { .. } => "irreducible-count",
            Violation::Degree { .. } => "degree",
            Violation::DegreeSquareSum { .. } => "degree-square-sum",
            Violation::RowOrthogonality { .. } => "row-orthogonality",
            Violation::ColumnOrthogonality { .. } => "column-orthogonality",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityClass { reason } => write!(f, "identity class: {reason}"),
            Violation::ClassSizeSum { sum, group_order } => {
                write!(f, "class sizes sum to {sum}, group order is {group_order}")
            }
            Violation::ClassSizeDivisibility { class, size } => {
                write!(f, "class {class} has size {size}, which does not divide the group order")
            }
            Violation::PowerMap { class, reason } => write!(f, "power map of class {class}: {reason}"),
            Violation::IrreducibleCount { irreducibles, classes } => {
                write!(f, "{irreducibles} irreducibles for {classes} classes")
            }
            Violation::Degree { character, value } => {
                write!(f, "degree of {character} is {value}, not a positive integer")
            }
            Violation::DegreeSquareSum { sum, group_order } => {
                write!(f, "squared degrees sum to {sum}, group order is {group_order}")
            }
            Violation::RowOrthogonality { first, second, value } => {
                write!(f, "<{first},{second}> = {value}")
            }
            Violation::ColumnOrthogonality { first, second, value, expected } => {
                write!(f, "column sum over classes {first},{second} is {value}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every invariant a character table must satisfy.
///
/// Violations are collected rather than returned early, so a corrupted table
/// yields the full list of what is wrong with it.
pub fn validate_table(t: &CharacterTable) -> ValidationReport {
    let mut violations = Vec::new();
    let n = t.group_order;
    let classes = t.classes();

    let id = &classes[0];
    if id.size != 1 || id.order != 1 {
        violations.push(Violation::IdentityClass {
            reason: format!("class {} at index 0 has size {} and order {}", id.label, id.size, id.order),
        });
    }

    let sum: u64 = classes.iter().map(|c| c.size).sum();
    if sum != n {
        violations.push(Violation::ClassSizeSum { sum, group_order: n });
    }
    for c in classes {
        if !n.is_multiple_of(c.size) {
            violations.push(Violation::ClassSizeDivisibility { class: c.label.clone(), size: c.size });
        }
    }

    for (idx, c) in classes.iter().enumerate() {
        check_power_map(classes, idx, c, &mut violations);
    }

    let r = t.num_irreducibles();
    if r != classes.len() {
        violations.push(Violation::IrreducibleCount { irreducibles: r, classes: classes.len() });
    }

    let mut square_sum = BigInt::zero();
    let mut degrees_ok = true;
    for irr in t.irreducibles() {
        match irr.values[0].as_integer() {
            Ok(d) if d.is_positive() => square_sum += &d * &d,
            _ => {
                degrees_ok = false;
                violations.push(Violation::Degree { character: irr.name.clone(), value: irr.values[0].to_string() });
            }
        }
    }
    if degrees_ok && square_sum != BigInt::from(n) {
        violations.push(Violation::DegreeSquareSum { sum: square_sum, group_order: n });
    }

    for i in 0..r {
        for j in i..r {
            let ip = t.class_inner_product(&t.irreducibles()[i].values, t.conjugate_row(j));
            let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
            if ip != expected {
                violations.push(Violation::RowOrthogonality {
                    first: t.irreducibles()[i].name.clone(),
                    second: t.irreducibles()[j].name.clone(),
                    value: ip.to_string(),
                });
            }
        }
    }

    for a in 0..classes.len() {
        for b in a..classes.len() {
            let mut acc = Cyclotomic::zero();
            for i in 0..r {
                acc = &acc + &(&t.irreducibles()[i].values[a] * &t.conjugate_row(i)[b]);
            }
            let expected = if a == b {
                Cyclotomic::from_rational(BigRational::new(n.into(), classes[a].size.into()))
            } else {
                Cyclotomic::zero()
            };
            if acc != expected {
                violations.push(Violation::ColumnOrthogonality {
                    first: classes[a].label.clone(),
                    second: classes[b].label.clone(),
                    value: acc.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }

    ValidationReport { violations }
}

fn check_power_map(classes: &[ConjugacyClass], idx: usize, c: &ConjugacyClass, out: &mut Vec<Violation>) {
    let mut bad = |reason: String| out.push(Violation::PowerMap { class: c.label.clone(), reason });
    if c.power_map[0] != 0 {
        bad(format!("g^0 lands in class {} instead of the identity", c.power_map[0]));
    }
    let one = (1 % c.order) as usize;
    if c.power_map[one] != idx {
        bad(format!("g^1 lands in class {} instead of itself", c.power_map[one]));
    }
    for k in 0..c.order {
        let target = &classes[c.power_map[k as usize]];
        let expected_order = c.order / k.gcd(&c.order);
        if target.order != expected_order {
            bad(format!(
                "g^{k} lands in class {} of order {}, expected order {expected_order}",
                target.label, target.order
            ));
            // composition checks below would only repeat this failure
            return;
        }
    }
    for a in 0..c.order {
        let inner = &classes[c.power_map[a as usize]];
        for b in 0..c.order {
            let composed = inner.power(b as i64);
            let direct = c.power(((a * b) % c.order) as i64);
            if composed != direct {
                bad(format!("(g^{a})^{b} lands in class {composed} but g^{} in class {direct}", a * b));
                return;
            }
        }
    }
}

/// The quaternion group {±1, ±i, ±j, ±k}.
///
/// Characters are ordered 1, x_i, x_j, x_k, y where x_i is trivial on ±i and
/// y is the two-dimensional representation Q₈ ⊂ SU(2).
pub fn builtin_quaternion8() -> CharacterTable {
    let class = |label: &str, size, order, power_map: Vec<usize>| ConjugacyClass {
        label: label.to_string(),
        size,
        order,
        power_map,
    };
    let classes = vec![
        class("1", 1, 1, vec![0]),
        class("-1", 1, 2, vec![0, 1]),
        class("±i", 2, 4, vec![0, 2, 1, 2]),
        class("±j", 2, 4, vec![0, 3, 1, 3]),
        class("±k", 2, 4, vec![0, 4, 1, 4]),
    ];
    let row = |name: &str, vals: [i64; 5]| Irreducible {
        name: name.to_string(),
        values: vals.iter().map(|&v| Cyclotomic::from_integer(v)).collect(),
    };
    let irreducibles = vec![
        row("1", [1, 1, 1, 1, 1]),
        row("x_i", [1, 1, 1, -1, -1]),
        row("x_j", [1, 1, -1, 1, -1]),
        row("x_k", [1, 1, -1, -1, 1]),
        row("y", [2, -2, 0, 0, 0]),
    ];
    CharacterTable::new(8, classes, irreducibles).expect("built-in Q8 table is well formed")
}

/// Name of the character t^a of the cyclic group.
pub fn cyclic_character_name(a: u64) -> String {
    match a {
        0 => "1".to_string(),
        1 => "t".to_string(),
        _ => format!("t^{a}"),
    }
}

/// The cyclic group C_m = ⟨g⟩ with characters t^a(g^b) = ζ_m^{ab}.
pub fn builtin_cyclic(m: u64) -> CharacterTable {
    assert!(m >= 1, "cyclic group order must be positive");
    let classes = (0..m)
        .map(|b| {
            let order = m / b.gcd(&m);
            ConjugacyClass {
                label: match b {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{b}"),
                },
                size: 1,
                order,
                power_map: (0..order).map(|k| ((b * k) % m) as usize).collect(),
            }
        })
        .collect();
    let irreducibles = (0..m)
        .map(|a| Irreducible {
            name: cyclic_character_name(a),
            values: (0..m).map(|b| Cyclotomic::zeta(m, ((a * b) % m) as i64).expect("positive conductor")).collect(),
        })
        .collect();
    CharacterTable::new(m, classes, irreducibles).expect("built-in cyclic table is well formed")
}

/// lcm of the representative orders, i.e. the group exponent.
pub fn table_exponent(t: &CharacterTable) -> u64 {
    t.classes().iter().fold(1, |acc, c| acc.lcm(&c.order))
}
