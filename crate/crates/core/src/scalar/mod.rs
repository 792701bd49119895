//! Exact scalars.
//!
//! Classification only ever multiplies scalars, so it works with the symbolic
//! [`MonoScalar`]. Linear algebra (braiding matrices, symmetrizers) needs a
//! field and uses [`FieldElement`] over `Q`, `Q(ζ_N)` or `Q(t)`.

mod field;
mod literal;
mod mono;
mod poly;

pub use field::{embed, ratio, Cyclotomic, FieldElement, FieldTag, RationalFunction};
pub(crate) use field::is_positive_integer;
pub use literal::ScalarLiteral;
pub use mono::MonoScalar;
pub use poly::{cyclotomic_polynomial, euler_phi, QPoly};

/// `order_of`: `Some(N)` exactly when `s` is a primitive `N`-th root of unity.
pub fn order_of(s: &MonoScalar) -> Option<u64> {
    s.order()
}

pub fn mono_mul(a: &MonoScalar, b: &MonoScalar) -> MonoScalar {
    a * b
}

pub fn mono_inv(a: &MonoScalar) -> MonoScalar {
    a.inv()
}

pub fn mono_pow(a: &MonoScalar, k: i64) -> MonoScalar {
    a.pow(k)
}

/// Smallest field into which every scalar of the list embeds.
pub fn field_for<'a>(scalars: impl IntoIterator<Item = &'a MonoScalar>) -> crate::Result<FieldTag> {
    let mut conductor: u64 = 1;
    let mut names = std::collections::BTreeSet::new();
    for s in scalars {
        names.extend(s.free().keys().cloned());
        if let Some(n) = s.order() {
            conductor = num_integer::lcm(conductor, n);
        } else if *s.torsion().denom() > 2 {
            return Err(crate::Error::IncompatibleField {
                scalar: s.to_string(),
                field: "RATFUNC".into(),
                reason: "mixes a proper root of unity with an indeterminate".into(),
            });
        }
    }
    if !names.is_empty() {
        if names.len() > 1 || conductor > 2 {
            return Err(crate::Error::IncompatibleField {
                scalar: names.into_iter().collect::<Vec<_>>().join(","),
                field: "RATFUNC".into(),
                reason: "needs a single indeterminate and torsion in {±1}".into(),
            });
        }
        return Ok(FieldTag::RatFunc);
    }
    Ok(if conductor <= 2 {
        FieldTag::Rat
    } else {
        FieldTag::Cyclo(conductor as u32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_root() -> impl Strategy<Value = MonoScalar> {
        (1u64..=24, -30i64..30).prop_map(|(n, k)| MonoScalar::root_of_unity(n, k))
    }

    proptest! {
        #[test]
        fn order_of_power(s in arb_root(), k in -40i64..40) {
            let n = order_of(&s).unwrap();
            let g = num_integer::gcd(n as i64, k).unsigned_abs();
            let expect = if k == 0 { 1 } else { n / g };
            prop_assert_eq!(order_of(&mono_pow(&s, k)), Some(expect));
        }

        #[test]
        fn embed_is_homomorphism(a in arb_root(), b in arb_root()) {
            let tag = FieldTag::Cyclo(num_integer::lcm(a.order().unwrap(), b.order().unwrap()) as u32);
            let lhs = embed(&mono_mul(&a, &b), tag).unwrap();
            let rhs = &embed(&a, tag).unwrap() * &embed(&b, tag).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn group_axioms(a in arb_root(), b in arb_root(), k in -5i64..5) {
            prop_assert!(mono_mul(&a, &mono_inv(&a)).is_one());
            prop_assert_eq!(mono_mul(&a, &b), mono_mul(&b, &a));
            prop_assert_eq!(mono_pow(&mono_mul(&a, &b), k), mono_mul(&mono_pow(&a, k), &mono_pow(&b, k)));
        }
    }

    #[test]
    fn field_selection() {
        let z3 = MonoScalar::root_of_unity(3, 1);
        let m1 = MonoScalar::minus_one();
        assert_eq!(field_for([&m1]).unwrap(), FieldTag::Rat);
        assert_eq!(field_for([&m1, &z3]).unwrap(), FieldTag::Cyclo(6));
        let q = MonoScalar::indeterminate("q");
        assert_eq!(field_for([&m1, &q]).unwrap(), FieldTag::RatFunc);
        assert!(field_for([&z3, &q]).is_err());
    }
}
