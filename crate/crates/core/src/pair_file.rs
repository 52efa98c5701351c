//! JSON description of an orbifold pair.
//!
//! ```json
//! {"geometry": {"preset": "P2"},
//!  "components": [{"degree": 12, "mult": "107"}]}
//! ```
//!
//! Geometry presets:
//!
//! * `{"preset": "P2"}` or `{"preset": "Pn", "n": 3}`: projective space,
//!   generator `h`.
//! * `{"preset": "abelian", "n": 2, "selfint": "6"}`: abelian variety
//!   polarized by one class `D` with `∫Dⁿ = selfint`.
//! * `{"preset": "abelian", "n": 2, "generators": ["D1", "D2"],
//!   "intersections": {"D1^2": 1, "D1*D2": 2}}`: several divisor
//!   generators with their degree-`n` intersection numbers.
//! * `{"preset": "surface", "divisors": ["D"], "intersections": {"K^2": 0,
//!   "D^2": 6}, "c2": 24}`: surface with canonical class `K`; `c2` is
//!   `∫c₂(X)`.
//!
//! Missing intersection numbers are zero. A component carries a class and a
//! multiplicity `"mult"` (`"5"`, `"5/2"`, `"inf"`; `m ≥ 1`). The class is one
//! of `"degree": d` (multiple of the only divisor generator), `"class":
//! "D1"` or `"class": {"D1": 1, "D2": "1/2"}`; with a single divisor
//! generator it may be omitted (coefficient 1).
//!
//! Rationals may be JSON integers or strings `"p/q"`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::orbifold::{OrbifoldComponent, OrbifoldPair};
use crate::rational::{fmt_rational, parse_rational, ExtMultiplicity, Rational};
use crate::ring::{Geometry, GeometryKind, GradedClass, SECOND_CHERN};

fn rational_field(value: &Value, field: &str) -> Result<Rational> {
    match value {
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        Value::String(s) => {
            parse_rational(s).map_err(|_| Error::parse(field, format!("`{s}` is not a rational")))
        }
        other => Err(Error::parse(
            field,
            format!("expected integer or \"p/q\", got {other}"),
        )),
    }
}

fn dim_field(obj: &Map<String, Value>, field: &str, default: Option<u32>) -> Result<u32> {
    match obj.get("n") {
        None => default.ok_or_else(|| Error::parse(field, "missing dimension `n`")),
        Some(v) => v
            .as_u64()
            .filter(|n| *n >= 1 && *n <= 64)
            .map(|n| n as u32)
            .ok_or_else(|| Error::parse(field, "`n` must be a positive integer")),
    }
}

fn names_field<'a>(obj: &'a Map<String, Value>, key: &str, field: &str) -> Result<Vec<&'a str>> {
    match obj.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::parse(format!("{field}.{key}"), "expected strings"))
            })
            .collect(),
        Some(_) => Err(Error::parse(
            format!("{field}.{key}"),
            "expected an array of names",
        )),
    }
}

fn intersections_field(obj: &Map<String, Value>, field: &str) -> Result<Vec<(String, Rational)>> {
    match obj.get("intersections") {
        None => Ok(Vec::new()),
        Some(Value::Object(map)) => map
            .iter()
            .map(|(k, v)| {
                Ok((
                    k.clone(),
                    rational_field(v, &format!("{field}.intersections.{k}"))?,
                ))
            })
            .collect(),
        Some(_) => Err(Error::parse(
            format!("{field}.intersections"),
            "expected an object",
        )),
    }
}

fn located(err: Error, field: &str) -> Error {
    match err {
        Error::Parse {
            field: inner,
            message,
        } if field.ends_with(&inner) => Error::parse(field, message),
        Error::Parse {
            field: inner,
            message,
        } => Error::parse(field, format!("{inner}: {message}")),
        other => Error::parse(field, other.to_string()),
    }
}

fn parse_geometry(value: &Value) -> Result<std::sync::Arc<Geometry>> {
    let field = "geometry";
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse(field, "expected an object"))?;
    let preset = obj
        .get("preset")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("geometry.preset", "missing preset"))?;
    let known = |allowed: &[&str]| -> Result<()> {
        for key in obj.keys() {
            if key != "preset" && !allowed.contains(&key.as_str()) {
                return Err(Error::parse(
                    format!("geometry.{key}"),
                    format!("unknown field for preset `{preset}`"),
                ));
            }
        }
        Ok(())
    };
    match preset {
        "P2" => {
            known(&[])?;
            Geometry::projective(2)
        }
        "Pn" => {
            known(&["n"])?;
            Geometry::projective(dim_field(obj, field, None)?)
        }
        "abelian" => {
            known(&["n", "selfint", "generators", "intersections"])?;
            let n = dim_field(obj, field, None)?;
            if let Some(v) = obj.get("selfint") {
                if obj.contains_key("generators") || obj.contains_key("intersections") {
                    return Err(Error::parse(
                        "geometry.selfint",
                        "use either selfint or generators/intersections",
                    ));
                }
                return Geometry::abelian_polarized(n, rational_field(v, "geometry.selfint")?);
            }
            let names = names_field(obj, "generators", field)?;
            if names.is_empty() {
                return Err(Error::parse(
                    "geometry.generators",
                    "abelian preset needs selfint or generators",
                ));
            }
            let table = intersections_field(obj, field)?;
            let table: Vec<(&str, Rational)> =
                table.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
            Geometry::abelian(n, &names, &table).map_err(|e| located(e, "geometry.intersections"))
        }
        "surface" => {
            known(&["n", "divisors", "intersections", "c2"])?;
            if dim_field(obj, field, Some(2))? != 2 {
                return Err(Error::parse("geometry.n", "surface preset has n = 2"));
            }
            let names = names_field(obj, "divisors", field)?;
            let table = intersections_field(obj, field)?;
            let table: Vec<(&str, Rational)> =
                table.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
            let c2 = match obj.get("c2") {
                Some(v) => rational_field(v, "geometry.c2")?,
                None => Rational::from_integer(0.into()),
            };
            Geometry::surface(&names, &table, c2).map_err(|e| located(e, "geometry"))
        }
        other => Err(Error::parse(
            "geometry.preset",
            format!("unknown preset `{other}`"),
        )),
    }
}

fn parse_component(
    geometry: &std::sync::Arc<Geometry>,
    value: &Value,
    idx: usize,
) -> Result<OrbifoldComponent> {
    let field = format!("components[{idx}]");
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse(&field, "expected an object"))?;
    for key in obj.keys() {
        if !["degree", "class", "mult"].contains(&key.as_str()) {
            return Err(Error::parse(format!("{field}.{key}"), "unknown field"));
        }
    }
    let divisors = geometry.divisor_generators();
    let only_divisor = || -> Result<GradedClass> {
        match divisors.as_slice() {
            [single] => GradedClass::generator(geometry, &geometry.generators()[*single].name),
            _ => Err(Error::parse(
                &field,
                "geometry has several divisor generators; give `class`",
            )),
        }
    };
    let class = match (obj.get("degree"), obj.get("class")) {
        (Some(_), Some(_)) => return Err(Error::parse(&field, "give either `degree` or `class`")),
        (Some(d), None) => only_divisor()?.scale(&rational_field(d, &format!("{field}.degree"))?),
        (None, Some(Value::String(name))) => {
            GradedClass::generator(geometry, name).map_err(|_| {
                Error::parse(
                    format!("{field}.class"),
                    format!("unknown generator `{name}`"),
                )
            })?
        }
        (None, Some(Value::Object(map))) => {
            let mut class = GradedClass::zero(geometry);
            for (name, coeff) in map {
                let g = GradedClass::generator(geometry, name).map_err(|_| {
                    Error::parse(
                        format!("{field}.class"),
                        format!("unknown generator `{name}`"),
                    )
                })?;
                class = class
                    .add(&g.scale(&rational_field(coeff, &format!("{field}.class.{name}"))?))?;
            }
            class
        }
        (None, Some(_)) => {
            return Err(Error::parse(
                format!("{field}.class"),
                "expected a name or an object",
            ))
        }
        (None, None) => only_divisor()?,
    };
    let mult = match obj.get("mult") {
        Some(Value::String(s)) => s.parse::<ExtMultiplicity>(),
        Some(Value::Number(n)) => n.to_string().parse::<ExtMultiplicity>(),
        Some(_) => Err(Error::parse("mult", "expected a string")),
        None => Err(Error::parse("mult", "missing")),
    }
    .map_err(|e| located(e, &format!("{field}.mult")))?;
    OrbifoldComponent::new(class, mult).map_err(|e| located(e, &format!("{field}.class")))
}

/// Parses and validates a pair description.
pub fn parse_pair(text: &str) -> Result<OrbifoldPair> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::parse("<json>", e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::parse("<root>", "expected an object"))?;
    for key in obj.keys() {
        if key != "geometry" && key != "components" {
            return Err(Error::parse(key, "unknown field"));
        }
    }
    let geometry = parse_geometry(
        obj.get("geometry")
            .ok_or_else(|| Error::parse("geometry", "missing"))?,
    )?;
    let components = match obj.get("components") {
        None => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| parse_component(&geometry, v, i))
            .collect::<Result<_>>()?,
        Some(_) => return Err(Error::parse("components", "expected an array")),
    };
    OrbifoldPair::new(geometry, components)
}

fn class_json(class: &GradedClass) -> Value {
    let g = class.geometry();
    let mut map = Map::new();
    for (m, c) in class.sorted_terms() {
        map.insert(g.format_monomial(m), Value::String(fmt_rational(c)));
    }
    Value::Object(map)
}

/// Serializes a pair into the grammar accepted by [`parse_pair`].
pub fn pair_to_json(pair: &OrbifoldPair) -> Value {
    let g = pair.geometry();
    let table = |skip_e: bool| -> Value {
        let mut map = Map::new();
        for (m, v) in g.integrals() {
            let name = g.format_monomial(m);
            if skip_e && name == SECOND_CHERN {
                continue;
            }
            map.insert(name, Value::String(fmt_rational(v)));
        }
        Value::Object(map)
    };
    let names = |idx: Vec<usize>| -> Value {
        Value::Array(
            idx.into_iter()
                .map(|i| Value::String(g.generators()[i].name.clone()))
                .collect(),
        )
    };
    let geometry = match g.kind() {
        GeometryKind::ProjectiveSpace if g.dim() == 2 => json!({"preset": "P2"}),
        GeometryKind::ProjectiveSpace => json!({"preset": "Pn", "n": g.dim()}),
        GeometryKind::Abelian => json!({
            "preset": "abelian",
            "n": g.dim(),
            "generators": names(g.divisor_generators()),
            "intersections": table(false),
        }),
        GeometryKind::Surface => {
            let e = GradedClass::generator(g, SECOND_CHERN).expect("surface has e");
            json!({
                "preset": "surface",
                "divisors": names(g.divisor_generators()),
                "intersections": table(true),
                "c2": fmt_rational(&e.integrate()),
            })
        }
    };
    let components: Vec<Value> = pair
        .components()
        .iter()
        .map(|c| json!({"class": class_json(c.class()), "mult": c.multiplicity().to_string()}))
        .collect();
    json!({"geometry": geometry, "components": components})
}
