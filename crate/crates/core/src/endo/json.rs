//! JSON forms of endomorphisms and generator words.
//!
//! ```text
//! {"ring": "Fp:5", "n": 3, "images": ["x1 + x2*x3", "x2", "x3"]}
//! {"ring": "Fp:5", "ambient": 4,
//!  "letters": [{"kind": "affine", "A": [["1","0"],["0","1"]], "b": ["0","0"]},
//!              {"kind": "phi", "exp": 1}]}
//! ```

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Ring;

use super::{AffineMap, Endo, GeneratorWord, Letter};

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn ring_field(v: &Value, given: Option<&Ring>) -> Result<Ring> {
    match (v.get("ring").and_then(Value::as_str), given) {
        (Some(s), Some(r)) => {
            let parsed = Ring::parse(s)?;
            if &parsed != r {
                return Err(Error::RingMismatch(r.to_string(), parsed.to_string()));
            }
            Ok(parsed)
        }
        (Some(s), None) => Ring::parse(s),
        (None, Some(r)) => Ok(r.clone()),
        (None, None) => Err(invalid("missing \"ring\"")),
    }
}

pub fn endo_to_json(phi: &Endo) -> Value {
    json!({
        "ring": phi.ring().to_string(),
        "n": phi.n(),
        "images": phi.images().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

/// Reads an endomorphism; `ring`, if given, must agree with the file.
pub fn endo_from_json(v: &Value, ring: Option<&Ring>) -> Result<Endo> {
    let ring = ring_field(v, ring)?;
    let images = v
        .get("images")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("missing \"images\" array"))?;
    let n = match v.get("n") {
        Some(n) => n.as_u64().ok_or_else(|| invalid("\"n\" must be a positive integer"))? as usize,
        None => images.len(),
    };
    if images.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: images.len() });
    }
    let polys = images
        .iter()
        .map(|s| {
            let s = s.as_str().ok_or_else(|| invalid("images must be strings"))?;
            Poly::parse(s, &ring, n)
        })
        .collect::<Result<Vec<_>>>()?;
    Endo::new(&ring, polys)
}

pub fn word_to_json(w: &GeneratorWord, ring: &Ring) -> Value {
    let letters: Vec<Value> = w
        .letters
        .iter()
        .map(|l| match l {
            Letter::Affine(a) => json!({
                "kind": "affine",
                "A": a.matrix().iter()
                    .map(|row| row.iter().map(|x| ring.format(x)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "b": a.translation_part().iter().map(|x| ring.format(x)).collect::<Vec<_>>(),
            }),
            Letter::Phi(e) => json!({"kind": "phi", "exp": e}),
        })
        .collect();
    json!({
        "ring": ring.to_string(),
        "ambient": w.ambient,
        "letters": letters,
    })
}

fn elem_list(v: &Value, ring: &Ring, what: &str) -> Result<Vec<crate::ring::Elem>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{what} must be an array")))?
        .iter()
        .map(|x| match x {
            Value::String(s) => ring.parse_elem(s),
            Value::Number(n) => ring.parse_elem(&n.to_string()),
            _ => Err(invalid(format!("bad entry in {what}"))),
        })
        .collect()
}

pub fn word_from_json(v: &Value, ring: Option<&Ring>) -> Result<GeneratorWord> {
    let ring = ring_field(v, ring)?;
    let ambient = v
        .get("ambient")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("missing \"ambient\""))? as usize;
    let letters = v
        .get("letters")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("missing \"letters\" array"))?
        .iter()
        .enumerate()
        .map(|(k, l)| match l.get("kind").and_then(Value::as_str) {
            Some("phi") => match l.get("exp").and_then(Value::as_i64) {
                Some(e @ (1 | -1)) => Ok(Letter::Phi(e as i8)),
                _ => Err(invalid(format!("letter {k}: phi exponent must be 1 or -1"))),
            },
            Some("affine") => {
                let a = l
                    .get("A")
                    .and_then(Value::as_array)
                    .ok_or_else(|| invalid(format!("letter {k}: missing \"A\"")))?
                    .iter()
                    .map(|row| elem_list(row, &ring, "A"))
                    .collect::<Result<Vec<_>>>()?;
                let b = elem_list(
                    l.get("b").ok_or_else(|| invalid(format!("letter {k}: missing \"b\"")))?,
                    &ring,
                    "b",
                )?;
                if a.len() != ambient || a.iter().any(|r| r.len() != ambient) {
                    return Err(invalid(format!("letter {k}: A must be {ambient}x{ambient}")));
                }
                Ok(Letter::Affine(AffineMap::new(&ring, a, b)?))
            }
            _ => Err(invalid(format!("letter {k}: unknown kind"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorWord { ambient, letters })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endo_round_trip() {
        let f9 = Ring::gf(3, 2).unwrap();
        let phi = Endo::parse(&f9, &["x1 + [0,1]*x2^2", "x2"]).unwrap();
        let v = endo_to_json(&phi);
        assert_eq!(endo_from_json(&v, None).unwrap(), phi);
        assert!(endo_from_json(&v, Some(&Ring::fp(3).unwrap())).is_err());
    }

    #[test]
    fn word_round_trip() {
        let q = Ring::rationals();
        let a = AffineMap::new(
            &q,
            vec![vec![q.one(), q.parse_elem("1/2").unwrap()], vec![q.zero(), q.one()]],
            vec![q.from_i64(-3), q.zero()],
        )
        .unwrap();
        let w = GeneratorWord {
            ambient: 2,
            letters: vec![Letter::Affine(a), Letter::Phi(-1)],
        };
        let v = word_to_json(&w, &q);
        assert_eq!(word_from_json(&v, None).unwrap(), w);
    }
}
