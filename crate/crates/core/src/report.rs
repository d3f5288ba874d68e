//! Structured reports with a text rendering for people and a JSON rendering
//! for harnesses. JSON field order is the struct field order, so output is
//! byte-stable.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chartab::{table_exponent, CharacterTable, ValidationReport};
use crate::ktheory::{Counterexample, SpaceFormResult};
use crate::lattice::{hermite_normal_form, Order};
use crate::repring::{named_q8_element_in, Freeness, Q8Element, VirtualCharacter};

/// Exact integer: a JSON number when it fits in i64, a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(n: BigInt) -> Self {
        Int(n)
    }
}

impl From<&BigInt> for Int {
    fn from(n: &BigInt) -> Self {
        Int(n.clone())
    }
}

impl From<u64> for Int {
    fn from(n: u64) -> Self {
        Int(n.into())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Small(i64),
    Text(String),
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(n) => s.serialize_i64(n),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawNumber::deserialize(d)? {
            RawNumber::Small(n) => Ok(Int(n.into())),
            RawNumber::Text(t) => t.parse().map(Int).map_err(serde::de::Error::custom),
        }
    }
}

/// Element order: a number, or the string `"infinite"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderValue(pub Order);

impl Serialize for OrderValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Order::Finite(n) => Int(n.clone()).serialize(s),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for OrderValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawNumber::deserialize(d)? {
            RawNumber::Small(n) => Ok(OrderValue(Order::Finite(n.into()))),
            RawNumber::Text(t) if t == "infinite" => Ok(OrderValue(Order::Infinite)),
            RawNumber::Text(t) => t.parse().map(|n| OrderValue(Order::Finite(n))).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub label: String,
    pub size: u64,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub group: String,
    pub group_order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassInfo>,
    pub irreducibles: Vec<TableRow>,
    /// Named virtual characters shown under the table (α, β, γ, δ for Q₈).
    pub virtual_rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationEntry {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationDocument {
    pub source: String,
    pub passed: bool,
    pub violations: Vec<ViolationEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub name: String,
    pub value: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassValue {
    pub class: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEvalReport {
    pub group: String,
    pub expression: String,
    pub operation: String,
    pub result: String,
    pub coefficients: Vec<Coefficient>,
    pub class_values: Vec<ClassValue>,
    pub augmentation: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedDimension {
    pub class: String,
    pub dimension: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub group: String,
    pub rep: String,
    pub dimension: Int,
    pub free: bool,
    pub witness_class: Option<String>,
    pub fixed_dimensions: Vec<FixedDimension>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementOrder {
    pub element: String,
    pub value: String,
    pub order: OrderValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub element: String,
    pub coordinates: Vec<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFormReport {
    pub group: String,
    pub rep: String,
    /// n for a member S^{4n+3}/Q₈ of the quaternion family.
    pub family_index: Option<u64>,
    pub sphere_dimension: u64,
    pub free: bool,
    pub lambda_minus_one: String,
    /// Hermite basis of the ideal (λ₋₁V), as virtual characters.
    pub ideal_basis: Vec<String>,
    pub k0: String,
    pub reduced_k0: String,
    pub invariant_factors: Vec<Int>,
    pub torsion_order: Int,
    pub hermite_torsion_order: Int,
    /// Coordinates of named elements in the reduced group, one per invariant factor.
    pub generator_images: Vec<GeneratorImage>,
    pub orders: Vec<ElementOrder>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub space: String,
    pub reduced_k0: String,
    pub order_of_delta: Int,
    pub complex_trivial_rank: Int,
    pub real_trivial_rank: Int,
    pub normal_bundle_multiple: Int,
    pub k: Int,
    pub parity: String,
    pub chern_obstruction_vanishes: bool,
    pub identity_degree: u64,
    pub contradiction: bool,
    pub imported_implication: String,
}

/// Any report the command line can emit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum ReportDocument {
    Validation(ValidationDocument),
    Table(TableReport),
    RingEval(RingEvalReport),
    Freeness(FreenessReport),
    SpaceForm(SpaceFormReport),
    Counterexample(CounterexampleReport),
}

fn order_string(o: &Order) -> String {
    o.to_string()
}

fn grid(header: &[String], rows: &[(String, Vec<String>)]) -> String {
    let ncols = header.len();
    let name_w = rows.iter().map(|(n, _)| n.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().map(|(_, v)| v[j].chars().count()).chain([header[j].chars().count()]).max().unwrap_or(0))
        .collect();
    let pad_left = |s: &str, w: usize| format!("{}{}", " ".repeat(w - s.chars().count()), s);
    let pad_right = |s: &str, w: usize| format!("{}{}", s, " ".repeat(w - s.chars().count()));
    let mut out = String::new();
    let line = |name: &str, cells: &[String]| {
        let cells: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| pad_left(c, w)).collect();
        format!("{} | {}\n", pad_right(name, name_w), cells.join(" | "))
    };
    out.push_str(&line("", header));
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&format!("{}-+-{}\n", "-".repeat(name_w), rule.join("-+-")));
    for (name, vals) in rows {
        out.push_str(&line(name, vals));
    }
    out
}

impl TableReport {
    pub fn new(group: &str, table: &std::sync::Arc<CharacterTable>) -> Self {
        let classes = table
            .classes()
            .iter()
            .map(|c| ClassInfo { label: c.label.clone(), size: c.size, order: c.order })
            .collect();
        let irreducibles = table
            .irreducibles()
            .iter()
            .map(|irr| TableRow {
                name: irr.name.clone(),
                values: irr.values.iter().map(ToString::to_string).collect(),
            })
            .collect();
        let mut virtual_rows = Vec::new();
        if **table == crate::chartab::builtin_quaternion8() {
            for e in Q8Element::ALL {
                let v = named_q8_element_in(table, e);
                virtual_rows.push(TableRow {
                    name: e.name().to_string(),
                    values: v.class_values().iter().map(ToString::to_string).collect(),
                });
            }
        }
        TableReport {
            group: group.to_string(),
            group_order: table.group_order(),
            exponent: table_exponent(table),
            classes,
            irreducibles,
            virtual_rows,
        }
    }

    fn to_text(&self) -> String {
        let header: Vec<String> = self.classes.iter().map(|c| c.label.clone()).collect();
        let rows: Vec<_> = self.irreducibles.iter().map(|r| (r.name.clone(), r.values.clone())).collect();
        let mut out =
            format!("Character table of {} (order {}, exponent {})\n", self.group, self.group_order, self.exponent);
        out.push_str(&grid(&header, &rows));
        let sizes: Vec<String> = self.classes.iter().map(|c| format!("{}:{}", c.label, c.size)).collect();
        let _ = writeln!(out, "class sizes: {}", sizes.join(", "));
        if !self.virtual_rows.is_empty() {
            out.push_str("\nVirtual representations\n");
            let rows: Vec<_> = self.virtual_rows.iter().map(|r| (r.name.clone(), r.values.clone())).collect();
            out.push_str(&grid(&header, &rows));
        }
        out
    }
}

impl ValidationDocument {
    pub fn new(source: &str, report: &ValidationReport) -> Self {
        ValidationDocument {
            source: source.to_string(),
            passed: report.passed(),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationEntry { kind: v.kind().to_string(), message: v.to_string() })
                .collect(),
        }
    }
}

impl RingEvalReport {
    pub fn new(
        group: &str,
        expression: &str,
        operation: &str,
        result: &VirtualCharacter,
    ) -> Result<Self, crate::repring::RepError> {
        let table = result.table();
        Ok(RingEvalReport {
            group: group.to_string(),
            expression: expression.to_string(),
            operation: operation.to_string(),
            result: result.to_string(),
            coefficients: table
                .irreducibles()
                .iter()
                .zip(result.coefficients())
                .map(|(irr, c)| Coefficient { name: irr.name.clone(), value: c.into() })
                .collect(),
            class_values: table
                .classes()
                .iter()
                .zip(result.class_values())
                .map(|(c, v)| ClassValue { class: c.label.clone(), value: v.to_string() })
                .collect(),
            augmentation: result.augmentation()?.into(),
        })
    }
}

impl FreenessReport {
    pub fn new(group: &str, rep: &VirtualCharacter) -> Result<Self, crate::repring::RepError> {
        let verdict = rep.is_free_on_sphere()?;
        let table = rep.table();
        let mut fixed_dimensions = Vec::new();
        for (idx, c) in table.classes().iter().enumerate() {
            fixed_dimensions
                .push(FixedDimension { class: c.label.clone(), dimension: rep.fixed_subspace_dim(idx)?.into() });
        }
        let witness_class = match verdict {
            Freeness::Free => None,
            Freeness::NotFree { label, .. } => Some(label),
        };
        Ok(FreenessReport {
            group: group.to_string(),
            rep: rep.to_string(),
            dimension: rep.augmentation()?.into(),
            free: witness_class.is_none(),
            witness_class,
            fixed_dimensions,
        })
    }
}

impl SpaceFormReport {
    pub fn new(group: &str, res: &SpaceFormResult, family_index: Option<u64>) -> Self {
        let hnf = hermite_normal_form(&res.ideal);
        let ideal_basis = (0..hnf.rank())
            .map(|i| {
                VirtualCharacter::new(res.table.clone(), hnf.h.row(i).to_vec())
                    .expect("ideal rows have one entry per irreducible")
                    .to_string()
            })
            .collect();
        let generator_images = res
            .named_orders
            .iter()
            .filter_map(|n| {
                res.reduced_coordinates(&n.element)
                    .ok()
                    .map(|c| GeneratorImage { element: n.name.clone(), coordinates: c.into_iter().map(Int).collect() })
            })
            .collect();
        SpaceFormReport {
            group: group.to_string(),
            rep: res.rep.to_string(),
            family_index,
            sphere_dimension: res.sphere_dimension,
            free: res.free,
            lambda_minus_one: res.lambda_minus_one.to_string(),
            ideal_basis,
            k0: res.full_k0.render(),
            reduced_k0: res.reduced_k0.render(),
            invariant_factors: res.reduced_k0.invariant_factors.iter().map(Int::from).collect(),
            torsion_order: res.reduced_k0.torsion_order().into(),
            hermite_torsion_order: (&res.hnf_torsion_order).into(),
            generator_images,
            orders: res
                .named_orders
                .iter()
                .map(|n| ElementOrder {
                    element: n.name.clone(),
                    value: n.element.to_string(),
                    order: OrderValue(n.order.clone()),
                })
                .collect(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let space = format!("S^{}/{}", self.sphere_dimension, self.group);
        let _ = writeln!(out, "space form: {space}");
        if let Some(n) = self.family_index {
            let _ = writeln!(out, "family index: n = {n}");
        }
        let _ = writeln!(out, "representation: V = {}", self.rep);
        let _ = writeln!(out, "free action: {}", if self.free { "yes" } else { "no" });
        let _ = writeln!(out, "lambda_-1(V) = {}", self.lambda_minus_one);
        let _ = writeln!(out, "ideal basis: {}", self.ideal_basis.join(", "));
        let _ = writeln!(out, "K0 = {}", self.k0);
        let _ = writeln!(out, "reduced K0 = {}", self.reduced_k0);
        let _ =
            writeln!(out, "torsion order: {} (Hermite check: {})", self.torsion_order.0, self.hermite_torsion_order.0);
        if !self.generator_images.is_empty() {
            out.push_str("generator images in the reduced group:\n");
            for g in &self.generator_images {
                let coords: Vec<String> = g.coordinates.iter().map(|c| c.0.to_string()).collect();
                let _ = writeln!(out, "  {} -> ({})", g.element, coords.join(", "));
            }
        }
        out.push_str("orders:\n");
        for o in &self.orders {
            if o.element == o.value.replace(' ', "") {
                let _ = writeln!(out, "  order({}) = {}", o.element, order_string(&o.order.0));
            } else {
                let _ = writeln!(
                    out,
                    "  order({}) = {}  [{} = {}]",
                    o.element,
                    order_string(&o.order.0),
                    o.element,
                    o.value
                );
            }
        }
        out
    }
}

impl CounterexampleReport {
    pub fn new(c: &Counterexample) -> Self {
        CounterexampleReport {
            space: "S^7/Q8".to_string(),
            reduced_k0: c.reduced_k0.render(),
            order_of_delta: (&c.order_of_delta).into(),
            complex_trivial_rank: (&c.complex_trivial_rank).into(),
            real_trivial_rank: (&c.real_trivial_rank).into(),
            normal_bundle_multiple: (&c.normal_bundle_multiple).into(),
            k: (&c.k).into(),
            parity: if c.k_is_odd { "odd" } else { "even" }.to_string(),
            chern_obstruction_vanishes: c.chern_obstruction_vanishes,
            identity_degree: c.identity_degree,
            contradiction: c.contradicts_claim,
            imported_implication: "m*eta trivial in complex K-theory implies m*eta_R trivial in real K-theory \
                                   (imported, not computed)"
                .to_string(),
        }
    }

    fn to_text(&self) -> String {
        let m = &self.order_of_delta.0;
        let mut out = String::new();
        let _ = writeln!(out, "space: {}", self.space);
        let _ = writeln!(out, "reduced K0 = {}", self.reduced_k0);
        let _ = writeln!(out, "order(2-eta) = {m}");
        let _ = writeln!(out, "{m}*eta = {} (trivial complex bundle)", self.complex_trivial_rank.0);
        let _ = writeln!(
            out,
            "{m}*eta_R = {} (trivial real bundle)  [{}]",
            self.real_trivial_rank.0, self.imported_implication
        );
        let _ = writeln!(out, "tangent bundle: tau + 1 = 2*eta_R");
        let _ = writeln!(out, "stable normal bundle = {}*eta_R = 2k*eta_R", self.normal_bundle_multiple.0);
        let _ = writeln!(out, "k = {}", self.k.0);
        let _ = writeln!(out, "parity = {}", self.parity);
        let _ = writeln!(out, "c2(2k*eta) = 0 in Z/8: {}", if self.chern_obstruction_vanishes { "yes" } else { "no" });
        let _ = writeln!(out, "identity map degree = {} (odd)", self.identity_degree);
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.contradiction {
                "the identity of S^7/Q8 has normal bundle 2k*eta_R with k odd and odd degree; the parity claim fails"
            } else {
                "no contradiction"
            }
        );
        out
    }
}

impl ValidationDocument {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "table: {}", self.source);
        if self.passed {
            out.push_str("validation: pass\n");
        } else {
            let _ = writeln!(out, "validation: {} violation(s)", self.violations.len());
            for v in &self.violations {
                let _ = writeln!(out, "  [{}] {}", v.kind, v.message);
            }
        }
        out
    }
}

impl RingEvalReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group: {}", self.group);
        let _ = writeln!(out, "expression: {}", self.expression);
        let _ = writeln!(out, "operation: {}", self.operation);
        let _ = writeln!(out, "result: {}", self.result);
        let coeffs: Vec<String> = self.coefficients.iter().map(|c| format!("{}:{}", c.name, c.value.0)).collect();
        let _ = writeln!(out, "coefficients: {}", coeffs.join(", "));
        let vals: Vec<String> = self.class_values.iter().map(|c| format!("{}:{}", c.class, c.value)).collect();
        let _ = writeln!(out, "class values: {}", vals.join(", "));
        let _ = writeln!(out, "augmentation: {}", self.augmentation.0);
        out
    }
}

impl FreenessReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group: {}", self.group);
        let _ = writeln!(out, "representation: {} (dimension {})", self.rep, self.dimension.0);
        let dims: Vec<String> =
            self.fixed_dimensions.iter().map(|d| format!("{}:{}", d.class, d.dimension.0)).collect();
        let _ = writeln!(out, "fixed subspace dimensions: {}", dims.join(", "));
        match &self.witness_class {
            None => out.push_str("free: yes\n"),
            Some(w) => {
                let _ = writeln!(out, "free: no (class {w} fixes a nonzero vector)");
            }
        }
        out
    }
}

impl ReportDocument {
    pub fn to_text(&self) -> String {
        match self {
            ReportDocument::Validation(r) => r.to_text(),
            ReportDocument::Table(r) => r.to_text(),
            ReportDocument::RingEval(r) => r.to_text(),
            ReportDocument::Freeness(r) => r.to_text(),
            ReportDocument::SpaceForm(r) => r.to_text(),
            ReportDocument::Counterexample(r) => r.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
