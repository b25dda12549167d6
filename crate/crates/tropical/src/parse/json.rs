//! Curve JSON:
//! `{"dim", "vertices": [[rat]], "edges": [{"ends", "weight"}],
//!   "rays": [{"vertex", "dir", "weight"}], "lines": [{"point", "dir", "weight"}]}`.
//! Rationals are strings `"p"` or `"p/q"`; plain JSON integers are also read.

use crate::curve::{canonical_line_dir, Edge, Line, Ray, TropCurve};
use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, is_primitive, parse_rat, Rat};
use serde_json::{json, Map, Value};

fn schema(path: &str, msg: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

fn point_json(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(rat_json).collect())
}

pub fn curve_to_value(c: &TropCurve) -> Value {
    json!({
        "dim": c.dim,
        "vertices": c.vertices.iter().map(|v| point_json(v)).collect::<Vec<_>>(),
        "edges": c.edges.iter().map(|e| json!({"ends": [e.ends.0, e.ends.1], "weight": e.weight})).collect::<Vec<_>>(),
        "rays": c.rays.iter().map(|r| json!({"vertex": r.vertex, "dir": r.dir, "weight": r.weight})).collect::<Vec<_>>(),
        "lines": c.lines.iter().map(|l| json!({"point": point_json(&l.point), "dir": l.dir, "weight": l.weight})).collect::<Vec<_>>(),
    })
}

pub fn curve_to_json(c: &TropCurve) -> String {
    serde_json::to_string_pretty(&curve_to_value(c)).expect("json values serialize")
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(&format!("{path}.{key}"), "missing field"))
}

fn as_obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn as_arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array"))
}

fn as_index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

fn as_rat(v: &Value, path: &str) -> Result<Rat> {
    match v {
        Value::String(s) => {
            parse_rat(s).ok_or_else(|| schema(path, format!("not a rational: {s:?}")))
        }
        Value::Number(n) if n.is_i64() => {
            Ok(Rat::from_integer(n.as_i64().expect("checked").into()))
        }
        _ => Err(schema(path, "expected a rational string \"p/q\"")),
    }
}

fn as_point(v: &Value, n: usize, path: &str) -> Result<Vec<Rat>> {
    let a = as_arr(v, path)?;
    if a.len() != n {
        return Err(schema(
            path,
            format!("expected {n} coordinates, got {}", a.len()),
        ));
    }
    a.iter()
        .enumerate()
        .map(|(i, x)| as_rat(x, &format!("{path}[{i}]")))
        .collect()
}

fn as_dir(v: &Value, n: usize, path: &str) -> Result<Vec<i64>> {
    let a = as_arr(v, path)?;
    if a.len() != n {
        return Err(schema(
            path,
            format!("expected {n} entries, got {}", a.len()),
        ));
    }
    let d: Vec<i64> = a
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_i64()
                .ok_or_else(|| schema(&format!("{path}[{i}]"), "expected an integer"))
        })
        .collect::<Result<_>>()?;
    if !is_primitive(&d) {
        return Err(schema(path, "direction must be a primitive integer vector"));
    }
    Ok(d)
}

fn as_weight(obj: &Map<String, Value>, path: &str) -> Result<u64> {
    match obj.get("weight") {
        None => Ok(1),
        Some(v) => match v.as_u64() {
            Some(w) if w > 0 => Ok(w),
            _ => Err(schema(
                &format!("{path}.weight"),
                "expected a positive integer",
            )),
        },
    }
}

fn list<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a [Value]> {
    match obj.get(key) {
        None => Ok(&[]),
        Some(v) => Ok(as_arr(v, key)?.as_slice()),
    }
}

pub fn curve_from_json(text: &str) -> Result<TropCurve> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))?;
    curve_from_value(&v)
}

pub fn curve_from_value(v: &Value) -> Result<TropCurve> {
    let obj = as_obj(v, "$")?;
    let dim = get(obj, "dim", "$")?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| schema("$.dim", "expected a positive integer"))? as usize;
    let vertices: Vec<Vec<Rat>> = list(obj, "vertices")?
        .iter()
        .enumerate()
        .map(|(i, p)| as_point(p, dim, &format!("$.vertices[{i}]")))
        .collect::<Result<_>>()?;
    let nv = vertices.len();
    let check_v = |i: usize, path: &str| -> Result<usize> {
        if i < nv {
            Ok(i)
        } else {
            Err(schema(path, format!("vertex index {i} out of range")))
        }
    };
    let mut edges = Vec::new();
    for (k, e) in list(obj, "edges")?.iter().enumerate() {
        let path = format!("$.edges[{k}]");
        let o = as_obj(e, &path)?;
        let ends = as_arr(get(o, "ends", &path)?, &format!("{path}.ends"))?;
        if ends.len() != 2 {
            return Err(schema(
                &format!("{path}.ends"),
                "expected two vertex indices",
            ));
        }
        let a = check_v(as_index(&ends[0], &path)?, &path)?;
        let b = check_v(as_index(&ends[1], &path)?, &path)?;
        if a == b {
            return Err(schema(&path, "degenerate edge"));
        }
        edges.push(Edge {
            ends: (a, b),
            weight: as_weight(o, &path)?,
        });
    }
    let mut rays = Vec::new();
    for (k, r) in list(obj, "rays")?.iter().enumerate() {
        let path = format!("$.rays[{k}]");
        let o = as_obj(r, &path)?;
        let vertex = check_v(
            as_index(get(o, "vertex", &path)?, &format!("{path}.vertex"))?,
            &path,
        )?;
        let dir = as_dir(get(o, "dir", &path)?, dim, &format!("{path}.dir"))?;
        rays.push(Ray {
            vertex,
            dir,
            weight: as_weight(o, &path)?,
        });
    }
    let mut lines = Vec::new();
    for (k, l) in list(obj, "lines")?.iter().enumerate() {
        let path = format!("$.lines[{k}]");
        let o = as_obj(l, &path)?;
        let point = as_point(get(o, "point", &path)?, dim, &format!("{path}.point"))?;
        let dir = canonical_line_dir(&as_dir(get(o, "dir", &path)?, dim, &format!("{path}.dir"))?);
        lines.push(Line {
            point,
            dir,
            weight: as_weight(o, &path)?,
        });
    }
    let c = TropCurve {
        dim,
        vertices,
        edges,
        rays,
        lines,
    };
    c.validate().map_err(|m| schema("$", m))?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::curve_from_poly2;
    use crate::parse::parse_poly;

    #[test]
    fn diagonal_round_trip() {
        let text = r#"{"dim":2,"vertices":[],"edges":[],"rays":[],"lines":[{"point":["0","0"],"dir":[1,1],"weight":1}]}"#;
        let c = curve_from_json(text).unwrap();
        assert_eq!(curve_from_json(&curve_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn tropical_line_round_trip() {
        let c = curve_from_poly2(&parse_poly("0 + x1 + x2").unwrap()).unwrap();
        assert_eq!(curve_from_json(&curve_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn non_primitive_rejected() {
        let text =
            r#"{"dim":2,"vertices":[["0","0"]],"rays":[{"vertex":0,"dir":[2,2],"weight":1}]}"#;
        match curve_from_json(text).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "$.rays[0].dir"),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn bad_inputs_have_paths() {
        assert!(matches!(curve_from_json("[]"), Err(Error::Schema { .. })));
        let e = curve_from_json(r#"{"dim":2,"vertices":[["1/0","0"]]}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.vertices[0][0]"));
        let e = curve_from_json(r#"{"dim":2,"vertices":[["0","0"]],"edges":[{"ends":[0,3]}]}"#)
            .unwrap_err();
        assert!(matches!(e, Error::Schema { .. }));
    }
}
