//! Parser for the canonical text form printed by `ZHElement`'s `Display`.

use thiserror::Error;

use super::laurent::{LaurentPoly, Monomial};
use super::skew::ZHElement;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse Z[H] element: {0}")]
pub struct ParseZHError(pub String);

fn err(msg: impl Into<String>) -> ParseZHError {
    ParseZHError(msg.into())
}

fn parse_int(s: &str) -> Result<i64, ParseZHError> {
    s.trim().parse::<i64>().map_err(|_| err(format!("bad integer {s:?}")))
}

fn parse_monomial(s: &str) -> Result<Monomial, ParseZHError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err(format!("monomial must be bracketed: {s:?}")))?;
    let mut pairs = Vec::new();
    for factor in inner.split_whitespace() {
        let body = factor.strip_prefix("x_").ok_or_else(|| err(format!("bad factor {factor:?}")))?;
        let (idx, exp) = body.split_once('^').ok_or_else(|| err(format!("missing exponent in {factor:?}")))?;
        pairs.push((parse_int(idx)?, parse_int(exp)?));
    }
    Ok(Monomial::from_pairs(pairs))
}

/// Parses `t^k * [x_i^e ...] * c` terms joined by `+`. Repeated terms are summed.
pub fn parse_zh<R: Scalar>(s: &str) -> Result<ZHElement<R>, ParseZHError> {
    let s = s.trim();
    if s == "0" {
        return Ok(ZHElement::from_coeffs([]));
    }
    let mut out = ZHElement::from_coeffs([]);
    for term in s.split(" + ") {
        let mut parts = term.split('*');
        let (Some(tp), Some(mono), Some(coeff), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(err(format!("term must have three factors: {term:?}")));
        };
        let k = tp
            .trim()
            .strip_prefix("t^")
            .ok_or_else(|| err(format!("bad t-power {tp:?}")))
            .and_then(parse_int)?;
        let m = parse_monomial(mono)?;
        let c = R::parse_scalar(coeff).ok_or_else(|| err(format!("bad coefficient {coeff:?}")))?;
        out.add_coeff(k, LaurentPoly::monomial(m, c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type ZH = ZHElement<BigInt>;

    #[test]
    fn parses_printed_form() {
        let s = "t^-1 * [x_-1^2 x_2^1] * 3 + t^0 * [] * -1 + t^4 * [x_0^-1] * 12";
        let u: ZH = parse_zh(s).unwrap();
        assert_eq!(u.to_string(), s);
        assert_eq!(parse_zh::<BigInt>("0").unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_zh::<BigInt>("t^1 * x_0^1 * 2").is_err());
        assert!(parse_zh::<BigInt>("t^1 * [x_0] * 2").is_err());
        assert!(parse_zh::<BigInt>("t^a * [] * 2").is_err());
        assert!(parse_zh::<BigInt>("t^0 * [] * 2 * 3").is_err());
    }

    fn arb_zh() -> impl Strategy<Value = ZH> {
        let mono = prop::collection::vec((-4i64..4, -3i64..4), 0..3);
        let term = (-3i64..4, mono, -20i64..20);
        prop::collection::vec(term, 0..6).prop_map(|terms| {
            ZH::from_coeffs(terms.into_iter().map(|(k, m, c)| {
                (k, LaurentPoly::monomial(Monomial::from_pairs(m), BigInt::from(c)))
            }))
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(u in arb_zh()) {
            let s = u.to_string();
            let back: ZH = parse_zh(&s).unwrap();
            prop_assert_eq!(&back, &u);
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
