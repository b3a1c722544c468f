//! Exact rational scalars.
//!
//! `Scalar` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; zero is `0/1`. Serialized form is the string `"p/q"`,
//! or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"` with a nonzero `q`.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().ok()?;
    let denom: BigInt = denom.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Scalar::new(numer, denom))
}

pub fn format(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Coefficient rendering for human output: `+ 2/3`, `- 1`.
pub(crate) fn signed_term(value: &Scalar, first: bool) -> (String, String) {
    let sign = if value.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    (sign.to_string(), format(&value.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4"), Some(ratio(3, 2)));
        assert_eq!(parse("-3"), Some(int(-3)));
        assert_eq!(parse(" 2 / -4 "), Some(ratio(-1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(format(&ratio(-6, 4)), "-3/2");
        assert_eq!(format(&int(0)), "0");
        assert_eq!(format(&ratio(0, 5)), "0");
    }

    #[test]
    fn lowest_terms() {
        let x = ratio(10, -4);
        assert_eq!(x.numer(), &BigInt::from(-5));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(ratio(0, -7).denom(), &BigInt::from(1));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = Scalar> {
            (-50i64..50, 1i64..30).prop_map(|(n, d)| ratio(n, d))
        }

        proptest! {
            #[test]
            fn reciprocal(a in scalar()) {
                prop_assume!(!a.is_zero());
                prop_assert_eq!(&a * a.recip(), one());
            }

            #[test]
            fn field_identities(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
                prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                prop_assert_eq!(&a - &a, zero());
            }

            #[test]
            fn format_round_trip(a in scalar()) {
                prop_assert_eq!(parse(&format(&a)), Some(a));
            }
        }
    }
}
