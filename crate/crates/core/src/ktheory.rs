//! K⁰ of spherical space forms: K⁰(S(V)/G) ≅ R(G)/(λ₋₁(V)) for a free
//! linear action of G on the unit sphere S(V).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chartab::{builtin_quaternion8, CharacterTable};
use crate::lattice::{
    element_order_in_quotient, hermite_normal_form, quotient_presentation, AbelianGroupPresentation, IntMatrix,
    LatticeError, Order,
};
use crate::repring::{named_q8_element_in, Freeness, Q8Element, RepError, VirtualCharacter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("the action on the unit sphere is not free: class {label} has a fixed vector")]
    NotFreeAction { class_index: usize, label: String },
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Rows are the coefficient vectors of g·χ_i for every generator g and every
/// irreducible χ_i; they Z-span the ideal (gens) ⊂ R(G).
pub fn ideal_lattice(gens: &[VirtualCharacter]) -> Result<IntMatrix, KError> {
    let first = gens.first().ok_or(KError::NoGenerators)?;
    let table = first.table().clone();
    let r = table.num_irreducibles();
    let mut rows = Vec::with_capacity(gens.len() * r);
    for g in gens {
        if !g.same_table(first) {
            return Err(RepError::TableMismatch.into());
        }
        for i in 0..r {
            let product = g.multiply(&VirtualCharacter::irreducible(table.clone(), i))?;
            rows.push(product.coefficients().to_vec());
        }
    }
    Ok(IntMatrix::from_rows(r, rows)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedOrder {
    pub name: String,
    pub element: VirtualCharacter,
    pub order: Order,
}

/// Everything computed for one space form S(V)/G.
#[derive(Debug, Clone)]
pub struct SpaceFormResult {
    pub table: Arc<CharacterTable>,
    pub rep: VirtualCharacter,
    pub sphere_dimension: u64,
    pub free: bool,
    pub lambda_minus_one: VirtualCharacter,
    pub ideal: IntMatrix,
    /// R(G)/(λ₋₁V) in the irreducible basis.
    pub full_k0: AbelianGroupPresentation,
    /// I(G)/(λ₋₁V) in the basis χ_i − dim(χ_i) of the augmentation ideal,
    /// one coordinate per non-trivial irreducible.
    pub reduced_k0: AbelianGroupPresentation,
    /// Index of (λ₋₁V) in I(G) from the Hermite form, independent of the
    /// Smith path that produced `reduced_k0`.
    pub hnf_torsion_order: BigInt,
    pub named_orders: Vec<NamedOrder>,
}

impl SpaceFormResult {
    pub fn named_order(&self, name: &str) -> Option<&Order> {
        self.named_orders.iter().find(|n| n.name == name).map(|n| &n.order)
    }

    /// Coordinates of an augmentation-zero element in `reduced_k0`.
    pub fn reduced_coordinates(&self, v: &VirtualCharacter) -> Result<Vec<BigInt>, KError> {
        if !v.same_table(&self.rep) {
            return Err(RepError::TableMismatch.into());
        }
        if !v.augmentation()?.is_zero() {
            return Err(KError::InternalInconsistency(format!("{v} is not in the augmentation ideal")));
        }
        let trivial = self.table.trivial_index().ok_or(RepError::NoTrivialCharacter)?;
        let x: Vec<BigInt> =
            v.coefficients().iter().enumerate().filter(|&(i, _)| i != trivial).map(|(_, c)| c.clone()).collect();
        Ok(self.reduced_k0.coordinates(&x)?)
    }

    /// Order of the subgroup of K̃⁰ generated by the given augmentation-zero
    /// elements.
    pub fn generated_subgroup_order(&self, elements: &[VirtualCharacter]) -> Result<BigInt, KError> {
        let factors = &self.reduced_k0.invariant_factors;
        let k = factors.len();
        let mut rows = Vec::new();
        for v in elements {
            rows.push(self.reduced_coordinates(v)?);
        }
        for (j, d) in factors.iter().enumerate() {
            let mut row = vec![BigInt::zero(); k];
            row[j] = d.clone();
            rows.push(row);
        }
        let cokernel = quotient_presentation(k, &IntMatrix::from_rows(k, rows)?)?;
        Ok(self.reduced_k0.torsion_order() / cokernel.torsion_order())
    }
}

/// Order of the image of v in K⁰(S(V)/G).
pub fn order_of_reduced_class(res: &SpaceFormResult, v: &VirtualCharacter) -> Result<Order, KError> {
    if !v.same_table(&res.rep) {
        return Err(RepError::TableMismatch.into());
    }
    Ok(element_order_in_quotient(&res.full_k0, v.coefficients())?)
}

fn named_elements(table: &Arc<CharacterTable>) -> Result<Vec<(String, VirtualCharacter)>, KError> {
    let mut out = Vec::new();
    if **table == builtin_quaternion8() {
        for e in Q8Element::ALL {
            out.push((e.name().to_string(), named_q8_element_in(table, e)));
        }
    }
    let trivial = table.trivial_index().ok_or(RepError::NoTrivialCharacter)?;
    let one = VirtualCharacter::irreducible(table.clone(), trivial);
    for i in (0..table.num_irreducibles()).filter(|&i| i != trivial) {
        let chi = VirtualCharacter::irreducible(table.clone(), i);
        let name = &table.irreducibles()[i].name;
        out.push((format!("1-{name}"), &one - &chi));
        let dim = chi.augmentation()?;
        if !dim.is_one() {
            out.push((format!("{dim}-{name}"), &one.scale(&dim) - &chi));
        }
    }
    Ok(out)
}

/// Runs the whole pipeline for a genuine representation V.
pub fn k_theory_of_space_form(rep: &VirtualCharacter) -> Result<SpaceFormResult, KError> {
    let table = rep.table().clone();
    if let Freeness::NotFree { class_index, label } = rep.is_free_on_sphere()? {
        return Err(KError::NotFreeAction { class_index, label });
    }
    let dim = rep.augmentation()?;
    let sphere_dimension = u64::try_from(&dim * 2 - 1)
        .map_err(|_| KError::InternalInconsistency("sphere dimension out of range".into()))?;

    let lambda = rep.lambda_minus_one()?;
    let ideal = ideal_lattice(std::slice::from_ref(&lambda))?;
    let r = table.num_irreducibles();
    let full_k0 = quotient_presentation(r, &ideal)?;

    let trivial = table.trivial_index().ok_or(RepError::NoTrivialCharacter)?;
    for i in 0..ideal.rows() {
        let row = VirtualCharacter::new(table.clone(), ideal.row(i).to_vec())?;
        if !row.augmentation()?.is_zero() {
            return Err(KError::InternalInconsistency(format!("ideal generator {row} has nonzero augmentation")));
        }
    }
    let others: Vec<usize> = (0..r).filter(|&i| i != trivial).collect();
    let restricted = ideal.select_columns(&others);
    let reduced_k0 = quotient_presentation(r - 1, &restricted)?;
    let hnf_torsion_order = hermite_normal_form(&restricted).full_rank_index().ok_or_else(|| {
        KError::InternalInconsistency("the ideal does not have finite index in the augmentation ideal".into())
    })?;

    if full_k0.free_rank != 1
        || reduced_k0.free_rank != 0
        || reduced_k0.invariant_factors != full_k0.invariant_factors
        || hnf_torsion_order != reduced_k0.torsion_order()
    {
        return Err(KError::InternalInconsistency(format!(
            "K0 = {full_k0}, reduced = {reduced_k0}, Hermite index = {hnf_torsion_order}"
        )));
    }

    let mut named_orders = Vec::new();
    for (name, element) in named_elements(&table)? {
        let order = element_order_in_quotient(&full_k0, element.coefficients())?;
        named_orders.push(NamedOrder { name, element, order });
    }

    Ok(SpaceFormResult {
        table,
        rep: rep.clone(),
        sphere_dimension,
        free: true,
        lambda_minus_one: lambda,
        ideal,
        full_k0,
        reduced_k0,
        hnf_torsion_order,
        named_orders,
    })
}

/// S^{4n+3}/Q₈ with Q₈ acting on (n+1) copies of y.
pub fn quaternion_family(n: u64) -> Result<SpaceFormResult, KError> {
    let table = Arc::new(builtin_quaternion8());
    let copies = BigInt::from(n) + 1;
    let rep =
        VirtualCharacter::new(table, vec![BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero(), copies])?;
    k_theory_of_space_form(&rep)
}

/// Whether c₂(2kη) = 2k·c₂(η) vanishes in H⁴(S⁷/Q₈; Z) ≅ Z/8, taking as given
/// that c₂(η) generates that group.
pub fn chern_vanishing_check(k: i64) -> bool {
    (2 * i128::from(k)).rem_euclid(8) == 0
}

/// Bundle bookkeeping for the identity map of S⁷/Q₈: a degree-one map whose
/// stable normal bundle is 2kη_ℝ with k odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub reduced_k0: AbelianGroupPresentation,
    /// m = order of 2 − η in K(S⁷/Q₈).
    pub order_of_delta: BigInt,
    /// m·η is the trivial complex bundle of this rank.
    pub complex_trivial_rank: BigInt,
    /// m·η_ℝ is the trivial real bundle of this rank.
    pub real_trivial_rank: BigInt,
    /// Stable normal bundle = this multiple of η_ℝ.
    pub normal_bundle_multiple: BigInt,
    pub k: BigInt,
    pub k_is_odd: bool,
    pub chern_obstruction_vanishes: bool,
    pub identity_degree: u64,
    pub contradicts_claim: bool,
}

pub fn counterexample_report() -> Result<Counterexample, KError> {
    let res = quaternion_family(1)?;
    let m = match res.named_order("delta") {
        Some(Order::Finite(m)) => m.clone(),
        other => {
            return Err(KError::InternalInconsistency(format!("order of delta is {other:?}")));
        }
    };
    let is_power_of_two = m.is_positive() && (&m & (&m - 1u32)).is_zero();
    if !is_power_of_two || m < BigInt::from(8) {
        return Err(KError::InternalInconsistency(format!("order of delta is {m}, expected a power of 2 ≥ 8")));
    }
    // τ ⊕ ε¹ = 2η_ℝ, so the stable normal bundle is −2η_ℝ = (m − 2)η_ℝ
    let normal: BigInt = &m - 2;
    let k: BigInt = &normal / 2;
    let k_is_odd = k.is_odd();
    let chern = i64::try_from(&k).map(chern_vanishing_check).unwrap_or(false);
    let identity_degree = 1;
    Ok(Counterexample {
        reduced_k0: res.reduced_k0.clone(),
        complex_trivial_rank: &m * 2,
        real_trivial_rank: &m * 4,
        normal_bundle_multiple: normal,
        k,
        k_is_odd,
        chern_obstruction_vanishes: chern,
        identity_degree,
        contradicts_claim: k_is_odd && identity_degree % 2 == 1,
        order_of_delta: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::builtin_cyclic;
    use crate::lattice::same_row_span;

    fn q8() -> Arc<CharacterTable> {
        Arc::new(builtin_quaternion8())
    }

    fn vc(t: &Arc<CharacterTable>, c: &[i64]) -> VirtualCharacter {
        VirtualCharacter::from_i64s(t.clone(), c).unwrap()
    }

    fn rows_of(vs: &[VirtualCharacter]) -> IntMatrix {
        IntMatrix::from_rows(5, vs.iter().map(|v| v.coefficients().to_vec()).collect()).unwrap()
    }

    fn finite(n: i64) -> Order {
        Order::Finite(BigInt::from(n))
    }

    #[test]
    fn ideal_spans_match_the_hand_computation() {
        let t = q8();
        let [a, b, g, d] = Q8Element::ALL.map(|e| named_q8_element_in(&t, e));
        let two = BigInt::from(2);
        let four = BigInt::from(4);
        let eight = BigInt::from(8);
        let delta_ideal = ideal_lattice(std::slice::from_ref(&d)).unwrap();
        assert!(same_row_span(&delta_ideal, &rows_of(&[a.scale(&two), b.scale(&two), g.clone(), d.clone()])));

        let d2 = d.multiply(&d).unwrap();
        let d2_ideal = ideal_lattice(&[d2]).unwrap();
        let expected = rows_of(&[a.scale(&four), b.scale(&four), d.scale(&eight), &g - &d.scale(&four)]);
        assert!(same_row_span(&d2_ideal, &expected));
        assert!(hermite_normal_form(&d2_ideal).contains(d.scale(&eight).coefficients()));
        assert!(!hermite_normal_form(&d2_ideal).contains(d.scale(&four).coefficients()));

        let zero = ideal_lattice(&[VirtualCharacter::zero(t)]).unwrap();
        assert_eq!(zero, IntMatrix::zeros(5, 5));
        assert_eq!(ideal_lattice(&[]), Err(KError::NoGenerators));
    }

    #[test]
    fn delta_squared_lattice_smith_form() {
        let d = named_q8_element_in(&q8(), Q8Element::Delta);
        let lattice = ideal_lattice(&[d.multiply(&d).unwrap()]).unwrap();
        let diag = crate::lattice::smith_normal_form(&lattice).diagonal();
        let expected: Vec<BigInt> = [1, 4, 4, 8, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(diag, expected);
    }

    #[test]
    fn s3_mod_q8() {
        let t = q8();
        let res = k_theory_of_space_form(&vc(&t, &[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(res.sphere_dimension, 3);
        assert_eq!(res.reduced_k0.render(), "Z/2 + Z/2");
        assert_eq!(res.full_k0.render(), "Z + Z/2 + Z/2");
        assert_eq!(res.named_order("alpha"), Some(&finite(2)));
        assert_eq!(res.named_order("beta"), Some(&finite(2)));
        let [a, b, ..] = Q8Element::ALL.map(|e| named_q8_element_in(&t, e));
        assert_eq!(res.generated_subgroup_order(&[a, b]).unwrap(), BigInt::from(4));
    }

    #[test]
    fn s7_mod_q8() {
        let t = q8();
        let res = k_theory_of_space_form(&vc(&t, &[0, 0, 0, 0, 2])).unwrap();
        assert_eq!(res.sphere_dimension, 7);
        assert_eq!(res.reduced_k0.render(), "Z/4 + Z/4 + Z/8");
        assert_eq!(res.hnf_torsion_order, BigInt::from(128));
        assert_eq!(res.named_order("delta"), Some(&finite(8)));
        assert_eq!(res.named_order("2-y"), Some(&finite(8)));
        assert_eq!(res.named_order("alpha"), Some(&finite(4)));
        assert_eq!(res.named_order("beta"), Some(&finite(4)));
        assert_eq!(res.named_order("1-y"), Some(&Order::Infinite));
        let [a, b, _, d] = Q8Element::ALL.map(|e| named_q8_element_in(&t, e));
        assert_eq!(order_of_reduced_class(&res, &a).unwrap(), finite(4));
        assert_eq!(order_of_reduced_class(&res, &VirtualCharacter::zero(t.clone())).unwrap(), finite(1));
        assert_eq!(res.generated_subgroup_order(&[a, b, d]).unwrap(), BigInt::from(128));
        let other = vc(&Arc::new(builtin_cyclic(5)), &[1, 0, 0, 0, 0]);
        assert!(matches!(order_of_reduced_class(&res, &other), Err(KError::Rep(RepError::TableMismatch))));
    }

    #[test]
    fn projective_three_space() {
        let t = Arc::new(builtin_cyclic(2));
        let res = k_theory_of_space_form(&vc(&t, &[0, 2])).unwrap();
        assert_eq!(res.reduced_k0.render(), "Z/2");
        assert_eq!(res.sphere_dimension, 3);
    }

    #[test]
    fn freeness_gate() {
        let t = q8();
        let err = k_theory_of_space_form(&vc(&t, &[0, 1, 0, 0, 1])).unwrap_err();
        assert_eq!(err, KError::NotFreeAction { class_index: 1, label: "-1".into() });
        assert!(matches!(
            k_theory_of_space_form(&vc(&t, &[0, 0, 0, 0, -1])),
            Err(KError::Rep(RepError::NonGenuineInput(_)))
        ));
    }

    #[test]
    fn family_start() {
        assert_eq!(quaternion_family(0).unwrap().reduced_k0.render(), "Z/2 + Z/2");
        assert_eq!(quaternion_family(1).unwrap().reduced_k0.render(), "Z/4 + Z/4 + Z/8");
        let res = quaternion_family(2).unwrap();
        assert_eq!(res.hnf_torsion_order, res.reduced_k0.torsion_order());
        let d = named_q8_element_in(&res.table, Q8Element::Delta);
        assert_eq!(res.lambda_minus_one, d.pow(3).unwrap());
    }

    #[test]
    fn chern_check() {
        assert!(chern_vanishing_check(4));
        assert!(chern_vanishing_check(0));
        assert!(!chern_vanishing_check(3));
        assert!(chern_vanishing_check(-4));
        assert!(!chern_vanishing_check(-2));
    }

    #[test]
    fn counterexample() {
        let c = counterexample_report().unwrap();
        assert_eq!(c.order_of_delta, BigInt::from(8));
        assert_eq!(c.normal_bundle_multiple, BigInt::from(6));
        assert_eq!(c.k, BigInt::from(3));
        assert!(c.k_is_odd);
        assert!(!c.chern_obstruction_vanishes);
        assert_eq!(c.complex_trivial_rank, BigInt::from(16));
        assert_eq!(c.real_trivial_rank, BigInt::from(32));
        assert!(c.contradicts_claim);
    }

    #[test]
    fn lens_space_orders() {
        for m in 2..=5u64 {
            let t = Arc::new(builtin_cyclic(m));
            for n in 0..=2u32 {
                let mut c = vec![0; m as usize];
                c[1] = i64::from(n) + 1;
                let res = k_theory_of_space_form(&vc(&t, &c)).unwrap();
                assert_eq!(res.reduced_k0.torsion_order(), BigInt::from(m).pow(n), "m={m} n={n}");
            }
        }
    }
}
