//! Textual ring specifications.
//!
//! ```text
//! ring   := factor { ("x" | "*") factor } ;
//! factor := "Z" nat | "GF" "(" nat ")" [ "[x]/(x^" nat ")" ] ;
//! nat    := digit { digit } ;
//! ```
//!
//! Whitespace is allowed between tokens. `Z n` with composite `n` is split
//! into its prime-power factors in ascending prime order.

use crate::error::{Error, ParseError, Result};
use crate::local_ring::{LocalKind, LocalRing};
use crate::numtheory::{factorize, prime_power};
use crate::product_ring::ProductRing;

pub fn parse(text: &str) -> Result<ProductRing> {
    let factors = Parser::new(text).ring()?;
    let mut rings = Vec::with_capacity(factors.len());
    for (offset, kind) in factors {
        rings.push(LocalRing::new(kind).map_err(|e| ParseError::new(offset, e.to_string()))?);
    }
    ProductRing::new(rings).map_err(|e| match e {
        Error::TooLarge(_) => Error::Parse(ParseError::new(0, e.to_string())),
        other => other,
    })
}

/// Canonical text for a ring; `parse(format(r))` rebuilds the same factor list.
pub fn format(ring: &ProductRing) -> String {
    ring.factors()
        .iter()
        .map(|f| format_local(f.kind()))
        .collect::<Vec<_>>()
        .join(" x ")
}

pub fn format_local(kind: LocalKind) -> String {
    match kind {
        LocalKind::IntegerModPrimePower { p, k } => format!("Z{}", (p as u64).pow(k)),
        LocalKind::GaloisField { p, k } => format!("GF({})", (p as u64).pow(k)),
        LocalKind::TruncatedPoly { q, m } => format!("GF({q})[x]/(x^{m})"),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    fn describe_here(&self) -> String {
        match self.src.get(self.pos) {
            Some(&b) if b.is_ascii_graphic() => format!("`{}`", b as char),
            Some(&b) => format!("byte 0x{b:02x}"),
            None => "end of input".to_string(),
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        for want in token.bytes() {
            if self.peek() != Some(want) {
                return Err(self.error(format!(
                    "expected `{}`, found {}",
                    want as char,
                    self.describe_here()
                )));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn nat(&mut self) -> Result<(usize, u64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| ParseError::new(start, "number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(format!("expected a number, found {}", self.describe_here())));
        }
        Ok((start, value))
    }

    fn ring(&mut self) -> Result<Vec<(usize, LocalKind)>, ParseError> {
        let mut out = Vec::new();
        self.factor(&mut out)?;
        loop {
            match self.peek() {
                None => return Ok(out),
                Some(b'x') | Some(b'*') => {
                    self.pos += 1;
                    self.factor(&mut out)?;
                }
                Some(_) => {
                    return Err(self.error(format!(
                        "expected `x`, `*` or end of input, found {}",
                        self.describe_here()
                    )))
                }
            }
        }
    }

    fn factor(&mut self, out: &mut Vec<(usize, LocalKind)>) -> Result<(), ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'Z') => {
                self.pos += 1;
                let (at, n) = self.nat()?;
                if n < 2 {
                    return Err(ParseError::new(at, format!("Z{n} has no non-zero identity")));
                }
                for (p, k) in factorize(n) {
                    let p = u32::try_from(p).map_err(|_| ParseError::new(at, "modulus too large"))?;
                    out.push((start, LocalKind::IntegerModPrimePower { p, k }));
                }
                Ok(())
            }
            Some(b'G') => {
                self.expect("GF")?;
                self.expect("(")?;
                let (at, q) = self.nat()?;
                if q < 2 {
                    return Err(ParseError::new(at, format!("GF({q}) has no non-zero identity")));
                }
                let (p, k) = prime_power(q)
                    .ok_or_else(|| ParseError::new(at, format!("{q} is not a prime power")))?;
                let p = u32::try_from(p).map_err(|_| ParseError::new(at, "field order too large"))?;
                self.expect(")")?;
                if self.peek() == Some(b'[') {
                    self.expect("[x]/(x^")?;
                    let (at_m, m) = self.nat()?;
                    if m == 0 {
                        return Err(ParseError::new(at_m, "exponent must be positive"));
                    }
                    if m < 2 {
                        return Err(ParseError::new(at_m, "truncation exponent must be at least 2"));
                    }
                    self.expect(")")?;
                    let q = u32::try_from(q).map_err(|_| ParseError::new(at, "field order too large"))?;
                    let m = u32::try_from(m).map_err(|_| ParseError::new(at_m, "exponent too large"))?;
                    out.push((start, LocalKind::TruncatedPoly { q, m }));
                } else {
                    out.push((start, LocalKind::GaloisField { p, k }));
                }
                Ok(())
            }
            _ => Err(self.error(format!(
                "expected `Z` or `GF`, found {}",
                self.describe_here()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kinds(r: &ProductRing) -> Vec<LocalKind> {
        r.factors().iter().map(|f| f.kind()).collect()
    }

    #[test]
    fn composite_moduli_split_by_crt() {
        let r = parse("Z6").unwrap();
        assert_eq!(
            kinds(&r),
            vec![
                LocalKind::IntegerModPrimePower { p: 2, k: 1 },
                LocalKind::IntegerModPrimePower { p: 3, k: 1 }
            ]
        );
        assert_eq!(format(&parse("Z360").unwrap()), "Z8 x Z9 x Z5");
    }

    #[test]
    fn explicit_products_keep_order() {
        assert_eq!(format(&parse("GF(4) x Z2").unwrap()), "GF(4) x Z2");
        assert_eq!(format(&parse("Z3*Z2").unwrap()), "Z3 x Z2");
        assert_eq!(format(&parse("  Z 9 x  GF ( 9 )  ").unwrap()), "Z9 x GF(9)");
    }

    #[test]
    fn truncated_rings() {
        let r = parse("GF(2)[x]/(x^2)").unwrap();
        assert_eq!(kinds(&r), vec![LocalKind::TruncatedPoly { q: 2, m: 2 }]);
        assert_eq!(format(&parse("GF(3) [x] / (x ^ 2)").unwrap()), "GF(3)[x]/(x^2)");
    }

    #[test]
    fn formatting() {
        let r = ProductRing::new(vec![
            LocalRing::integer_mod(2, 1).unwrap(),
            LocalRing::integer_mod(3, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(format(&r), "Z2 x Z3");
        let r = ProductRing::new(vec![LocalRing::truncated(3, 2).unwrap()]).unwrap();
        assert_eq!(format(&r), "GF(3)[x]/(x^2)");
    }

    #[test]
    fn errors_carry_offsets() {
        let err = |s: &str| match parse(s) {
            Err(Error::Parse(e)) => e,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("Z1").offset, 1);
        assert_eq!(err("Z2 x GF(1)").offset, 8);
        assert_eq!(err("GF(6)").offset, 3);
        assert_eq!(err("GF(4)[x]/(x^0)").offset, 12);
        assert_eq!(err("GF(4)[x]/(x^1)").offset, 12);
        assert_eq!(err("Z4 +").offset, 3);
        assert_eq!(err("").offset, 0);
        assert_eq!(err("Z2 x").offset, 4);
        assert_eq!(err("Q5").offset, 0);
        assert_eq!(err("Z99999999999999999999999").offset, 1);
        assert!(err("GF(4) x").message.contains("end of input"));
    }

    #[test]
    fn oversized_rings_are_rejected() {
        assert!(parse("Z4294967311").is_err());
        assert!(parse("GF(65536) x GF(65536) x GF(65536)").is_err());
    }

    fn local_kind() -> impl Strategy<Value = LocalKind> {
        prop_oneof![
            (prop::sample::select(vec![2u32, 3, 5, 7, 11]), 1u32..4)
                .prop_map(|(p, k)| LocalKind::IntegerModPrimePower { p, k }),
            (prop::sample::select(vec![2u32, 3, 5]), 1u32..4)
                .prop_map(|(p, k)| LocalKind::GaloisField { p, k }),
            (prop::sample::select(vec![2u32, 3, 4, 5, 8, 9]), 2u32..4)
                .prop_map(|(q, m)| LocalKind::TruncatedPoly { q, m }),
        ]
    }

    proptest! {
        #[test]
        fn parse_inverts_format(ks in prop::collection::vec(local_kind(), 1..4)) {
            let ring = ProductRing::new(ks.iter().map(|&k| LocalRing::new(k).unwrap()).collect()).unwrap();
            let text = format(&ring);
            let back = parse(&text).unwrap();
            prop_assert_eq!(kinds(&back), ks);
            prop_assert_eq!(format(&back), text);
        }

        #[test]
        fn malformed_input_never_panics(s in "[ZGF0-9x*()\\[\\]/^ \\t]{0,24}") {
            match parse(&s) {
                Ok(r) => prop_assert!(r.n() >= 1),
                Err(Error::Parse(e)) => prop_assert!(e.offset <= s.len()),
                Err(other) => prop_assert!(false, "unexpected error {:?}", other),
            }
        }

        #[test]
        fn arbitrary_bytes_never_panic(s in "\\PC{0,16}") {
            let _ = parse(&s);
        }
    }
}
