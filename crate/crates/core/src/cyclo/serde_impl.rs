//! JSON form `{ "n": int, "coeffs": [int, ...] }`.
//!
//! Coefficients that fit in `i64` are written as plain JSON integers; larger
//! ones fall back to decimal strings. Both forms are accepted on read.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CycInt;

/// A single arbitrary-precision coefficient in JSON.
pub struct Coeff<'a>(pub &'a BigInt);

impl Serialize for Coeff<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// Deserializes a coefficient from an integer or a decimal string.
pub struct OwnedCoeff(pub BigInt);

impl<'de> Deserialize<'de> for OwnedCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = OwnedCoeff;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<OwnedCoeff, E> {
                Ok(OwnedCoeff(BigInt::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<OwnedCoeff, E> {
                Ok(OwnedCoeff(BigInt::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<OwnedCoeff, E> {
                v.parse::<BigInt>().map(OwnedCoeff).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// Serializes a coefficient vector as a JSON array.
pub struct CoeffList<'a>(pub &'a [BigInt]);

impl Serialize for CoeffList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            seq.serialize_element(&Coeff(c))?;
        }
        seq.end()
    }
}

/// Deserializes a coefficient vector.
pub struct OwnedCoeffList(pub Vec<BigInt>);

impl<'de> Deserialize<'de> for OwnedCoeffList {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = OwnedCoeffList;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<OwnedCoeffList, A::Error> {
                let mut out = Vec::with_capacity(seq.size_hint().unwrap_or(0));
                while let Some(OwnedCoeff(c)) = seq.next_element()? {
                    out.push(c);
                }
                Ok(OwnedCoeffList(out))
            }
        }
        d.deserialize_seq(V)
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: u64,
            coeffs: CoeffList<'a>,
        }
        Repr {
            n: self.modulus(),
            coeffs: CoeffList(self.coeffs()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: u64,
            coeffs: OwnedCoeffList,
        }
        let r = Repr::deserialize(d)?;
        CycInt::from_coeffs(r.n, r.coeffs.0).map_err(de::Error::custom)
    }
}
