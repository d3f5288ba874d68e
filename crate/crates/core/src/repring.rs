//! The representation ring R(G) of a character table.
//!
//! Elements are integer vectors over the irreducible basis. Products, Adams
//! operations and exterior powers are evaluated on class functions and then
//! decomposed back by inner products; a non-integral coefficient anywhere is an
//! error, never rounded.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chartab::{builtin_quaternion8, CharacterTable};
use crate::cyclotomic::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("{context} is {value}, not an integer; the character table is invalid")]
    NotAnInteger { context: String, value: String },
    #[error("{0} is not a genuine representation")]
    NonGenuineInput(String),
    #[error("virtual characters belong to different character tables")]
    TableMismatch,
    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("class index {0} is out of range")]
    InvalidClass(usize),
    #[error("the character table has no trivial character")]
    NoTrivialCharacter,
    #[error("Adams operation ψ^{0} is not defined; the index must be at least 1")]
    InvalidAdamsIndex(u64),
}

fn integral(value: &Cyclotomic, context: impl FnOnce() -> String) -> Result<BigInt, RepError> {
    value.as_integer().map_err(|_| RepError::NotAnInteger { context: context(), value: value.to_string() })
}

/// An element of R(G): Σ c_i χ_i over the irreducibles of a table.
#[derive(Clone, Debug)]
pub struct VirtualCharacter {
    table: Arc<CharacterTable>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for VirtualCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other) && self.coeffs == other.coeffs
    }
}

impl Eq for VirtualCharacter {}

impl VirtualCharacter {
    pub fn new(table: Arc<CharacterTable>, coeffs: Vec<BigInt>) -> Result<Self, RepError> {
        if coeffs.len() != table.num_irreducibles() {
            return Err(RepError::LengthMismatch { expected: table.num_irreducibles(), found: coeffs.len() });
        }
        Ok(VirtualCharacter { table, coeffs })
    }

    pub fn from_i64s(table: Arc<CharacterTable>, coeffs: &[i64]) -> Result<Self, RepError> {
        Self::new(table, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(table: Arc<CharacterTable>) -> Self {
        let n = table.num_irreducibles();
        VirtualCharacter { table, coeffs: vec![BigInt::zero(); n] }
    }

    pub fn irreducible(table: Arc<CharacterTable>, index: usize) -> Self {
        let mut v = Self::zero(table);
        v.coeffs[index] = BigInt::one();
        v
    }

    /// The unit of R(G), if the table has a trivial character.
    pub fn one(table: Arc<CharacterTable>) -> Option<Self> {
        let idx = table.trivial_index()?;
        Some(Self::irreducible(table, idx))
    }

    /// Decomposes a class function into the irreducible basis.
    pub fn from_class_function(table: Arc<CharacterTable>, values: &[Cyclotomic]) -> Result<Self, RepError> {
        if values.len() != table.num_classes() {
            return Err(RepError::LengthMismatch { expected: table.num_classes(), found: values.len() });
        }
        let coeffs = (0..table.num_irreducibles())
            .map(|i| {
                let ip = table.class_inner_product(values, table.conjugate_row(i));
                integral(&ip, || format!("multiplicity of {}", table.irreducibles()[i].name))
            })
            .collect::<Result<_, _>>()?;
        Ok(VirtualCharacter { table, coeffs })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn same_table(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table
    }

    fn check_table(&self, other: &Self) -> Result<(), RepError> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(RepError::TableMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// All coefficients non-negative.
    pub fn is_genuine(&self) -> bool {
        !self.coeffs.iter().any(Signed::is_negative)
    }

    fn require_genuine(&self) -> Result<(), RepError> {
        if self.is_genuine() {
            Ok(())
        } else {
            Err(RepError::NonGenuineInput(self.to_string()))
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        VirtualCharacter { table: self.table.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RepError> {
        self.check_table(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RepError> {
        self.check_table(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        VirtualCharacter {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Σ c_i χ_i(C) at every class, in class order.
    pub fn class_values(&self) -> Vec<Cyclotomic> {
        let t = &self.table;
        (0..t.num_classes())
            .map(|c| {
                let mut acc = Cyclotomic::zero();
                for (i, coeff) in self.coeffs.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = t.irreducibles()[i].values[c].scale(&BigRational::from_integer(coeff.clone()));
                    acc = &acc + &term;
                }
                acc
            })
            .collect()
    }

    /// (1/|G|) Σ_C |C| u(C) conj(v(C)).
    pub fn inner_product(&self, other: &Self) -> Result<BigInt, RepError> {
        self.check_table(other)?;
        let conj: Vec<_> = other.class_values().iter().map(Cyclotomic::conjugate).collect();
        let ip = self.table.class_inner_product(&self.class_values(), &conj);
        integral(&ip, || "inner product".to_string())
    }

    /// Dimension: the value at the identity class.
    pub fn augmentation(&self) -> Result<BigInt, RepError> {
        let mut total = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = integral(&self.table.irreducibles()[i].values[0], || {
                format!("degree of {}", self.table.irreducibles()[i].name)
            })?;
            total += c * deg;
        }
        Ok(total)
    }

    /// Tensor product.
    pub fn multiply(&self, other: &Self) -> Result<Self, RepError> {
        self.check_table(other)?;
        let values: Vec<_> = self.class_values().iter().zip(other.class_values()).map(|(a, b)| a * &b).collect();
        Self::from_class_function(self.table.clone(), &values)
    }

    pub fn pow(&self, e: u64) -> Result<Self, RepError> {
        let one = Self::one(self.table.clone()).ok_or(RepError::NoTrivialCharacter)?;
        (0..e).try_fold(one, |acc, _| acc.multiply(self))
    }

    /// ψ^k, read off the power maps: C ↦ v(class of g^k).
    pub fn adams(&self, k: u64) -> Result<Self, RepError> {
        if k == 0 {
            return Err(RepError::InvalidAdamsIndex(0));
        }
        let values = self.class_values();
        let shifted: Vec<_> =
            self.table.classes().iter().map(|c| values[c.power_map[(k % c.order) as usize]].clone()).collect();
        Self::from_class_function(self.table.clone(), &shifted)
    }

    /// λ^0(v), …, λ^{max_q}(v) by Newton's identity
    /// q·λ^q = Σ_{m=1}^{q} (−1)^{m−1} ψ^m(v)·λ^{q−m}.
    pub fn exterior_powers(&self, max_q: u64) -> Result<Vec<Self>, RepError> {
        self.require_genuine()?;
        let one = Self::one(self.table.clone()).ok_or(RepError::NoTrivialCharacter)?;
        let mut lambdas = vec![one];
        let mut adams = Vec::new();
        for q in 1..=max_q {
            adams.push(self.adams(q)?);
            let mut sum = Self::zero(self.table.clone());
            for m in 1..=q {
                let term = adams[(m - 1) as usize].multiply(&lambdas[(q - m) as usize])?;
                sum = if m % 2 == 1 { &sum + &term } else { &sum - &term };
            }
            let divisor = BigInt::from(q);
            let mut coeffs = Vec::with_capacity(sum.coeffs.len());
            for (i, c) in sum.coeffs.iter().enumerate() {
                if !(c % &divisor).is_zero() {
                    return Err(RepError::NotAnInteger {
                        context: format!("coefficient of {} in λ^{q}", self.table.irreducibles()[i].name),
                        value: format!("{c}/{q}"),
                    });
                }
                coeffs.push(c / &divisor);
            }
            lambdas.push(VirtualCharacter { table: self.table.clone(), coeffs });
        }
        Ok(lambdas)
    }

    pub fn exterior_power(&self, q: u64) -> Result<Self, RepError> {
        Ok(self.exterior_powers(q)?.pop().expect("λ^0 is always present"))
    }

    /// λ₋₁(v) = Σ_q (−1)^q λ^q(v), assembled as Π_i λ₋₁(χ_i)^{c_i}.
    pub fn lambda_minus_one(&self) -> Result<Self, RepError> {
        self.require_genuine()?;
        let mut acc = Self::one(self.table.clone()).ok_or(RepError::NoTrivialCharacter)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let factor = Self::irreducible(self.table.clone(), i).lambda_minus_one_by_exterior_powers()?;
            let mut n = c.clone();
            while n.is_positive() {
                acc = acc.multiply(&factor)?;
                n -= 1;
            }
        }
        Ok(acc)
    }

    /// λ₋₁(v) as the alternating sum of the exterior powers of v itself.
    pub fn lambda_minus_one_by_exterior_powers(&self) -> Result<Self, RepError> {
        let dim = self.augmentation()?;
        let dim = u64::try_from(dim).map_err(|_| RepError::NonGenuineInput(self.to_string()))?;
        let lambdas = self.exterior_powers(dim)?;
        let mut acc = Self::zero(self.table.clone());
        for (q, l) in lambdas.iter().enumerate() {
            acc = if q % 2 == 0 { &acc + l } else { &acc - l };
        }
        Ok(acc)
    }

    /// Dimension of the fixed subspace of a representative of class
    /// `class_index`: the average of v over the cyclic group it generates.
    pub fn fixed_subspace_dim(&self, class_index: usize) -> Result<BigInt, RepError> {
        let class = self.table.classes().get(class_index).ok_or(RepError::InvalidClass(class_index))?;
        let values = self.class_values();
        let mut sum = Cyclotomic::zero();
        for &target in &class.power_map {
            sum = &sum + &values[target];
        }
        let avg = sum.scale(&BigRational::new(BigInt::one(), class.order.into()));
        integral(&avg, || format!("fixed-subspace dimension at class {}", class.label))
    }

    /// Whether G acts freely on the unit sphere of this representation, i.e.
    /// no non-identity element has eigenvalue 1.
    pub fn is_free_on_sphere(&self) -> Result<Freeness, RepError> {
        self.require_genuine()?;
        if !self.augmentation()?.is_positive() {
            return Err(RepError::NonGenuineInput(format!("{self} (zero-dimensional)")));
        }
        for idx in 1..self.table.num_classes() {
            if !self.fixed_subspace_dim(idx)?.is_zero() {
                return Ok(Freeness::NotFree { class_index: idx, label: self.table.classes()[idx].label.clone() });
            }
        }
        Ok(Freeness::Free)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freeness {
    Free,
    /// A representative of this class fixes a nonzero vector.
    NotFree {
        class_index: usize,
        label: String,
    },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

/// Panics if the operands come from different tables; use
/// [`VirtualCharacter::checked_add`] when that is possible.
impl Add for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn add(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        self.checked_add(rhs).expect("virtual characters over different tables")
    }
}

impl Sub for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn sub(self, rhs: &VirtualCharacter) -> VirtualCharacter {
        self.checked_sub(rhs).expect("virtual characters over different tables")
    }
}

impl Neg for &VirtualCharacter {
    type Output = VirtualCharacter;
    fn neg(self) -> VirtualCharacter {
        self.scale(&BigInt::from(-1))
    }
}

/// `2 - y`, `x_i + 2*y`; the trivial character prints as a bare integer.
impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let trivial = self.table.trivial_index();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let name = &self.table.irreducibles()[i].name;
            if Some(i) == trivial {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(name)?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The named elements α = 1 − x_i, β = 1 − x_j, γ = 3 − x_i − x_j − x_k and
/// δ = 2 − y, which form a Z-basis of the augmentation ideal of R(Q₈).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Q8Element {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Q8Element {
    pub const ALL: [Q8Element; 4] = [Q8Element::Alpha, Q8Element::Beta, Q8Element::Gamma, Q8Element::Delta];

    pub fn name(self) -> &'static str {
        match self {
            Q8Element::Alpha => "alpha",
            Q8Element::Beta => "beta",
            Q8Element::Gamma => "gamma",
            Q8Element::Delta => "delta",
        }
    }

    /// Coefficients over (1, x_i, x_j, x_k, y).
    pub fn coefficients(self) -> [i64; 5] {
        match self {
            Q8Element::Alpha => [1, -1, 0, 0, 0],
            Q8Element::Beta => [1, 0, -1, 0, 0],
            Q8Element::Gamma => [3, -1, -1, -1, 0],
            Q8Element::Delta => [2, 0, 0, 0, -1],
        }
    }
}

impl FromStr for Q8Element {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Q8Element::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown Q8 element {s:?}; expected alpha, beta, gamma or delta"))
    }
}

/// α, β, γ or δ over the given Q₈ table (which must use the built-in ordering).
pub fn named_q8_element_in(table: &Arc<CharacterTable>, name: Q8Element) -> VirtualCharacter {
    VirtualCharacter::from_i64s(table.clone(), &name.coefficients()).expect("Q8 has five irreducibles")
}

/// α, β, γ or δ over a fresh built-in Q₈ table.
pub fn named_q8_element(name: Q8Element) -> VirtualCharacter {
    named_q8_element_in(&Arc::new(builtin_quaternion8()), name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::builtin_cyclic;
    use proptest::prelude::*;

    fn q8() -> Arc<CharacterTable> {
        Arc::new(builtin_quaternion8())
    }

    fn vc(t: &Arc<CharacterTable>, c: &[i64]) -> VirtualCharacter {
        VirtualCharacter::from_i64s(t.clone(), c).unwrap()
    }

    fn ints(values: &[Cyclotomic]) -> Vec<i64> {
        values.iter().map(|v| i64::try_from(v.as_integer().unwrap()).unwrap()).collect()
    }

    fn coeffs(v: &VirtualCharacter) -> Vec<i64> {
        v.coefficients().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn named_elements() {
        assert_eq!(coeffs(&named_q8_element(Q8Element::Delta)), vec![2, 0, 0, 0, -1]);
        assert_eq!(coeffs(&named_q8_element(Q8Element::Alpha)), vec![1, -1, 0, 0, 0]);
        assert_eq!(coeffs(&named_q8_element(Q8Element::Gamma)), vec![3, -1, -1, -1, 0]);
        assert_eq!("gamma".parse::<Q8Element>().unwrap(), Q8Element::Gamma);
        assert!("epsilon".parse::<Q8Element>().is_err());
    }

    #[test]
    fn extended_table_rows_and_round_trip() {
        let t = q8();
        let rows = [
            (Q8Element::Alpha, [0, 0, 0, 2, 2]),
            (Q8Element::Beta, [0, 0, 2, 0, 2]),
            (Q8Element::Gamma, [0, 0, 4, 4, 4]),
            (Q8Element::Delta, [0, 4, 2, 2, 2]),
        ];
        for (e, expected) in rows {
            let v = named_q8_element_in(&t, e);
            let values = v.class_values();
            assert_eq!(ints(&values), expected.to_vec(), "{}", e.name());
            assert_eq!(VirtualCharacter::from_class_function(t.clone(), &values).unwrap(), v);
        }
        assert_eq!(ints(&VirtualCharacter::zero(t).class_values()), vec![0; 5]);
    }

    #[test]
    fn inner_products() {
        let t = q8();
        let y = vc(&t, &[0, 0, 0, 0, 1]);
        let one = vc(&t, &[1, 0, 0, 0, 0]);
        let regular = vc(&t, &[1, 1, 1, 1, 2]);
        assert_eq!(ints(&regular.class_values()), vec![8, 0, 0, 0, 0]);
        assert_eq!(y.inner_product(&y).unwrap(), BigInt::from(1));
        assert_eq!(y.inner_product(&one).unwrap(), BigInt::from(0));
        assert_eq!(regular.inner_product(&y).unwrap(), BigInt::from(2));
    }

    #[test]
    fn multiplication_relations() {
        let t = q8();
        let [alpha, beta, gamma, delta] = Q8Element::ALL.map(|e| named_q8_element_in(&t, e));
        let two = BigInt::from(2);
        let four = BigInt::from(4);
        assert_eq!(coeffs(&delta.multiply(&delta).unwrap()), vec![5, 1, 1, 1, -4]);
        assert_eq!(delta.multiply(&delta).unwrap(), &delta.scale(&four) - &gamma);
        assert_eq!(alpha.multiply(&delta).unwrap(), alpha.scale(&two));
        assert_eq!(beta.multiply(&delta).unwrap(), beta.scale(&two));
        assert_eq!(gamma.multiply(&delta).unwrap(), gamma.scale(&two));
        let y = vc(&t, &[0, 0, 0, 0, 1]);
        assert_eq!(coeffs(&y.multiply(&y).unwrap()), vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn adams_operations() {
        let t = q8();
        let y = vc(&t, &[0, 0, 0, 0, 1]);
        assert_eq!(y.adams(1).unwrap(), y);
        assert_eq!(coeffs(&y.adams(2).unwrap()), vec![-1, 1, 1, 1, 0]);
        let one = vc(&t, &[1, 0, 0, 0, 0]);
        for k in 1..=9 {
            assert_eq!(one.adams(k).unwrap(), one);
        }
        assert_eq!(y.adams(0), Err(RepError::InvalidAdamsIndex(0)));
    }

    #[test]
    fn exterior_powers_of_y() {
        let t = q8();
        let one = vc(&t, &[1, 0, 0, 0, 0]);
        let y = vc(&t, &[0, 0, 0, 0, 1]);
        let two_y = vc(&t, &[0, 0, 0, 0, 2]);
        assert_eq!(y.exterior_power(2).unwrap(), one);
        assert_eq!(y.exterior_power(0).unwrap(), one);
        assert_eq!(two_y.exterior_power(4).unwrap(), one);
        // λ²(2y) = 2λ²(y) + y⊗y = 2 + (1 + x_i + x_j + x_k)
        assert_eq!(coeffs(&two_y.exterior_power(2).unwrap()), vec![3, 1, 1, 1, 0]);
        assert!(matches!(vc(&t, &[0, 0, 0, 0, -1]).exterior_power(1), Err(RepError::NonGenuineInput(_))));
    }

    #[test]
    fn lambda_minus_one_values() {
        let t = q8();
        let delta = named_q8_element_in(&t, Q8Element::Delta);
        let y = vc(&t, &[0, 0, 0, 0, 1]);
        let two_y = vc(&t, &[0, 0, 0, 0, 2]);
        assert_eq!(y.lambda_minus_one().unwrap(), delta);
        assert_eq!(two_y.lambda_minus_one().unwrap(), delta.multiply(&delta).unwrap());
        assert_eq!(two_y.lambda_minus_one_by_exterior_powers().unwrap(), delta.multiply(&delta).unwrap());
        assert!(vc(&t, &[1, 0, 0, 0, 0]).lambda_minus_one().unwrap().is_zero());
    }

    #[test]
    fn augmentations() {
        let t = q8();
        for e in [Q8Element::Delta, Q8Element::Gamma] {
            assert!(named_q8_element_in(&t, e).augmentation().unwrap().is_zero());
        }
        assert_eq!(vc(&t, &[0, 0, 0, 0, 1]).augmentation().unwrap(), BigInt::from(2));
    }

    #[test]
    fn fixed_subspaces_and_freeness() {
        let t = q8();
        let two_y = vc(&t, &[0, 0, 0, 0, 2]);
        let x_i = vc(&t, &[0, 1, 0, 0, 0]);
        assert_eq!(two_y.fixed_subspace_dim(1).unwrap(), BigInt::zero());
        assert_eq!(x_i.fixed_subspace_dim(2).unwrap(), BigInt::one());
        assert_eq!(two_y.fixed_subspace_dim(0).unwrap(), two_y.augmentation().unwrap());
        assert_eq!(two_y.fixed_subspace_dim(9), Err(RepError::InvalidClass(9)));
        assert_eq!(two_y.is_free_on_sphere().unwrap(), Freeness::Free);
        assert_eq!(
            vc(&t, &[0, 1, 0, 0, 1]).is_free_on_sphere().unwrap(),
            Freeness::NotFree { class_index: 1, label: "-1".into() }
        );
        let c2 = Arc::new(builtin_cyclic(2));
        assert!(vc(&c2, &[0, 1]).is_free_on_sphere().unwrap().is_free());
        assert!(matches!(VirtualCharacter::zero(t).is_free_on_sphere(), Err(RepError::NonGenuineInput(_))));
    }

    #[test]
    fn table_mismatch() {
        let a = vc(&q8(), &[1, 0, 0, 0, 0]);
        let b = vc(&Arc::new(builtin_cyclic(5)), &[1, 0, 0, 0, 0]);
        assert_eq!(a.multiply(&b), Err(RepError::TableMismatch));
        assert_eq!(a.checked_add(&b), Err(RepError::TableMismatch));
        // equal tables behind different Arcs are compatible
        assert!(a.multiply(&vc(&q8(), &[0, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn display() {
        let t = q8();
        assert_eq!(named_q8_element_in(&t, Q8Element::Gamma).to_string(), "3 - x_i - x_j - x_k");
        assert_eq!(vc(&t, &[0, 0, 0, 0, 2]).to_string(), "2*y");
        assert_eq!(vc(&t, &[-1, 0, 0, 0, 0]).to_string(), "-1");
        assert_eq!(VirtualCharacter::zero(t).to_string(), "0");
    }

    fn tables() -> Vec<Arc<CharacterTable>> {
        let mut v = vec![q8()];
        v.extend((1..=6).map(|m| Arc::new(builtin_cyclic(m))));
        v
    }

    fn arb_pair(lo: i64, hi: i64) -> impl Strategy<Value = (VirtualCharacter, VirtualCharacter, VirtualCharacter)> {
        (0usize..7).prop_flat_map(move |ti| {
            let t = tables()[ti].clone();
            let n = t.num_irreducibles();
            let gen = prop::collection::vec(lo..=hi, n);
            (gen.clone(), gen.clone(), gen).prop_map(move |(a, b, c)| (vc(&t, &a), vc(&t, &b), vc(&t, &c)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms((u, v, w) in arb_pair(-3, 3)) {
            let one = VirtualCharacter::one(u.table().clone()).unwrap();
            prop_assert_eq!(u.multiply(&v)?, v.multiply(&u)?);
            prop_assert_eq!(u.multiply(&v)?.multiply(&w)?, u.multiply(&v.multiply(&w)?)?);
            prop_assert_eq!(u.multiply(&(&v + &w))?, &u.multiply(&v)? + &u.multiply(&w)?);
            prop_assert_eq!(u.multiply(&one)?, u);
        }

        #[test]
        fn adams_is_a_ring_homomorphism((u, v, _w) in arb_pair(-3, 3), k in 1u64..=6) {
            prop_assert_eq!((&u + &v).adams(k)?, &u.adams(k)? + &v.adams(k)?);
            prop_assert_eq!(u.multiply(&v)?.adams(k)?, u.adams(k)?.multiply(&v.adams(k)?)?);
        }

        #[test]
        fn adams_composes((u, _v, _w) in arb_pair(-3, 3), k in 1u64..=4, l in 1u64..=4) {
            prop_assert_eq!(u.adams(l)?.adams(k)?, u.adams(k * l)?);
        }

        #[test]
        fn lambda_minus_one_is_multiplicative((u, v, _w) in arb_pair(0, 2)) {
            prop_assume!(!u.is_zero() && !v.is_zero());
            let sum = &u + &v;
            let lhs = sum.lambda_minus_one()?;
            prop_assert_eq!(&lhs, &u.lambda_minus_one()?.multiply(&v.lambda_minus_one()?)?);
            prop_assert_eq!(&lhs, &sum.lambda_minus_one_by_exterior_powers()?);
            prop_assert!(lhs.augmentation()?.is_zero());
        }

        #[test]
        fn exterior_powers_vanish_above_dimension((u, _v, _w) in arb_pair(0, 1)) {
            let dim = u64::try_from(u.augmentation()?).unwrap();
            let lambdas = u.exterior_powers(dim + 2)?;
            prop_assert!(lambdas[dim as usize + 1].is_zero());
            prop_assert!(lambdas[dim as usize + 2].is_zero());
        }
    }
}
