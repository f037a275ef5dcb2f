//! Specification file parsing with document-path error messages.
//!
//! The input is a JSON object `{"factors": [...], "d0": integer}`; each
//! factor carries a `kind` plus its size fields and the rational weights
//! `mu` and `nu`.  Rationals are strings like `"1/2"` or plain JSON
//! integers; anything else is rejected with the path of the offending
//! value, and the echoed specification always round-trips.

use hartogs_core::domains::{CartanKind, DomainSpec, Factor};
use hartogs_core::rational::Rat;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

/// A rational from `"p/q"`, `"p"` or an integer JSON number.
pub fn parse_rational(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

fn rational_field(obj: &Map<String, Value>, field: &str, path: &str) -> Result<Rat, String> {
    let v = obj
        .get(field)
        .ok_or_else(|| format!("{path}.{field}: missing"))?;
    match v {
        Value::String(s) => parse_rational(s)
            .ok_or_else(|| format!("{path}.{field}: not a rational: {s:?}")),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| format!("{path}.{field}: must be an integer or a \"p/q\" string")),
        _ => Err(format!("{path}.{field}: must be an integer or a \"p/q\" string")),
    }
}

fn size_field(obj: &Map<String, Value>, field: &str, path: &str) -> Result<u32, String> {
    obj.get(field)
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| format!("{path}.{field}: missing or not a nonnegative integer"))
}

fn kind_from(obj: &Map<String, Value>, path: &str) -> Result<CartanKind, String> {
    let name = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| format!("{path}.kind: missing or not a string"))?;
    match name {
        "disc" => Ok(CartanKind::disc()),
        "ball" => Ok(CartanKind::ball(size_field(obj, "dim", path)?)),
        "I" => Ok(CartanKind::TypeI {
            m: size_field(obj, "m", path)?,
            n: size_field(obj, "n", path)?,
        }),
        "II" => Ok(CartanKind::TypeII {
            n: size_field(obj, "n", path)?,
        }),
        "III" => Ok(CartanKind::TypeIII {
            n: size_field(obj, "n", path)?,
        }),
        "IV" => Ok(CartanKind::TypeIV {
            n: size_field(obj, "n", path)?,
        }),
        "V" => Ok(CartanKind::TypeV),
        "VI" => Ok(CartanKind::TypeVI),
        other => Err(format!("{path}.kind: unknown factor kind {other:?}")),
    }
}

/// Parses and fully validates a specification document.
pub fn parse_spec(text: &str) -> Result<DomainSpec, String> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    let root = doc
        .as_object()
        .ok_or_else(|| "top level: expected an object".to_string())?;
    let factors_value = root
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| "factors: missing or not an array".to_string())?;
    let mut factors = Vec::with_capacity(factors_value.len());
    for (i, fv) in factors_value.iter().enumerate() {
        let path = format!("factors[{i}]");
        let obj = fv
            .as_object()
            .ok_or_else(|| format!("{path}: expected an object"))?;
        let kind = kind_from(obj, &path)?;
        kind.params().map_err(|e| format!("{path}: {e}"))?;
        let mu = rational_field(obj, "mu", &path)?;
        let nu = rational_field(obj, "nu", &path)?;
        factors.push(Factor::new(kind, mu, nu).map_err(|e| format!("{path}: {e}"))?);
    }
    let d0 = root
        .get("d0")
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| "d0: missing or not a nonnegative integer".to_string())?;
    let spec = DomainSpec::new(factors, d0);
    let violations = spec.validate();
    if !violations.is_empty() {
        let joined: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(joined.join("; "));
    }
    Ok(spec)
}

/// Canonical kind fragment in the input vocabulary.
pub fn kind_echo(kind: CartanKind) -> Value {
    match kind {
        CartanKind::TypeI { m: 1, n: 1 } => json!({"kind": "disc"}),
        CartanKind::TypeI { m: 1, n } => json!({"kind": "ball", "dim": n}),
        CartanKind::TypeI { m, n: 1 } => json!({"kind": "ball", "dim": m}),
        CartanKind::TypeI { m, n } => json!({"kind": "I", "m": m, "n": n}),
        CartanKind::TypeII { n } => json!({"kind": "II", "n": n}),
        CartanKind::TypeIII { n } => json!({"kind": "III", "n": n}),
        CartanKind::TypeIV { n } => json!({"kind": "IV", "n": n}),
        CartanKind::TypeV => json!({"kind": "V"}),
        CartanKind::TypeVI => json!({"kind": "VI"}),
    }
}

/// Canonical echo of a parsed specification; re-parsing it yields an
/// equivalent spec.
pub fn spec_echo(spec: &DomainSpec) -> Value {
    let factors: Vec<Value> = spec
        .factors()
        .iter()
        .map(|f| {
            let mut obj = kind_echo(f.kind());
            let map = obj.as_object_mut().expect("kind echo is an object");
            map.insert("mu".into(), Value::String(f.mu().to_string()));
            map.insert("nu".into(), Value::String(f.nu().to_string()));
            obj
        })
        .collect();
    json!({"factors": factors, "d0": spec.fiber_dim()})
}
