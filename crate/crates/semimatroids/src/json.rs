//! JSON interchange for the domain objects: deterministic writing (sorted
//! keys, canonical rational strings, decimal bitmask keys) and validating
//! reads whose error messages name the offending path.
//!
//! Vertices of graphs are one-based in the interchange format and
//! zero-based in memory; matroid and arrangement elements are bit positions
//! starting at zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::arrangement::{Arrangement, FieldSpec, Hyperplane};
use crate::assigning::AssigningMatroid;
use crate::bits;
use crate::corpus::Fixture;
use crate::error::{Error, Result};
use crate::graph::{GainGraph, MultiGraph};
use crate::matroid::Matroid;
use crate::poly::{BiPoly, UniPoly};
use crate::semimatroid::Semimatroid;

fn err(path: &str, message: impl AsRef<str>) -> Error {
    Error::Json(format!("{path}: {}", message.as_ref()))
}

/// Parse text into a JSON value; syntax errors carry line and column.
pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Json(format!(
            "line {}, column {}: {}",
            e.line(),
            e.column(),
            e
        ))
    })
}

/// Render compactly; `serde_json` maps are ordered, so output is
/// byte-deterministic.
pub fn render(value: &Value) -> String {
    serde_json::to_string(value).expect("serializing a finite value")
}

fn as_object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn as_array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| err(path, format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn as_label(v: &Value, path: &str) -> Result<u8> {
    match v.as_u64() {
        Some(n) if n <= 1 => Ok(n as u8),
        _ => Err(err(path, "expected 0 or 1")),
    }
}

fn as_rank(v: &Value, path: &str) -> Result<u8> {
    match v.as_u64() {
        Some(n) if n <= u8::MAX as u64 => Ok(n as u8),
        _ => Err(err(path, "expected a small nonnegative rank")),
    }
}

// ---- rationals and masks ----

/// Canonical text form: reduced, `-a/b` with positive denominator, and the
/// bare numerator when the denominator is one.
pub fn rational_to_value(x: &BigRational) -> Value {
    if x.denom().is_one() {
        Value::String(x.numer().to_string())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

/// Accepts an integer number or a string `"a"` / `"a/b"`.
pub fn rational_from_value(v: &Value, path: &str) -> Result<BigRational> {
    if let Some(n) = v.as_i64() {
        return Ok(BigRational::from_integer(n.into()));
    }
    let Some(s) = v.as_str() else {
        return Err(err(path, "expected an integer or a \"a/b\" string"));
    };
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| err(path, format!("bad numerator in {s:?}")))?;
    let denom: BigInt = match parts.next() {
        None => BigInt::from(1),
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| err(path, format!("bad denominator in {s:?}")))?,
    };
    if denom.is_zero() {
        return Err(err(path, "zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

pub fn mask_to_key(mask: u32) -> String {
    mask.to_string()
}

fn mask_from_key(key: &str, path: &str) -> Result<u32> {
    key.parse()
        .map_err(|_| err(path, format!("bad subset key {key:?}")))
}

pub fn mask_from_value(v: &Value, path: &str) -> Result<u32> {
    if let Some(n) = v.as_u64() {
        return u32::try_from(n).map_err(|_| err(path, "subset out of range"));
    }
    match v.as_str() {
        Some(s) => mask_from_key(s, path),
        None => Err(err(path, "expected a subset as a decimal string")),
    }
}

// ---- polynomials ----

/// `[[exponent, "coefficient"], ...]` ascending in the exponent.
pub fn uni_poly_to_value(p: &UniPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!([e, c.to_string()]))
            .collect(),
    )
}

/// `[[[t, s], "coefficient"], ...]` ascending in the exponent pair.
pub fn bi_poly_to_value(p: &BiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|((t, s), c)| json!([[t, s], c.to_string()]))
            .collect(),
    )
}

// ---- matroids ----

/// Full rank-table form; shorthand inputs are re-expanded on writing.
pub fn matroid_to_value(m: &Matroid) -> Value {
    let mut rank = Map::new();
    for x in bits::submasks(m.ground()) {
        rank.insert(mask_to_key(x), json!(m.rank_of(x)));
    }
    json!({ "ground_size": m.width(), "rank": rank })
}

fn matroid_from_table(obj: &Map<String, Value>, path: &str) -> Result<Matroid> {
    let width = as_usize(field(obj, "ground_size", path)?, &format!("{path}.ground_size"))?;
    let table_path = format!("{path}.rank");
    let table = as_object(field(obj, "rank", path)?, &table_path)?;
    let mut ranks: BTreeMap<u32, u8> = BTreeMap::new();
    let mut ground = 0u32;
    for (key, v) in table {
        let mask = mask_from_key(key, &table_path)?;
        ranks.insert(mask, as_rank(v, &format!("{table_path}.{key}"))?);
        ground |= mask;
    }
    for x in bits::submasks(ground) {
        if !ranks.contains_key(&x) {
            return Err(err(&table_path, format!("missing subset {x}")));
        }
    }
    let m = Matroid::from_rank_fn(width as u32, ground, |x| ranks[&x])?;
    m.check_axioms()?;
    Ok(m)
}

fn columns_matroid(v: &Value, path: &str) -> Result<Matroid> {
    let obj = as_object(v, path)?;
    let field_name = field(obj, "field", path)?
        .as_str()
        .ok_or_else(|| err(path, "field must be \"Q\" or \"Fp\""))?;
    let cols_path = format!("{path}.columns");
    let cols = as_array(field(obj, "columns", path)?, &cols_path)?;
    match field_name {
        "Q" => {
            let mut columns = Vec::new();
            for (i, col) in cols.iter().enumerate() {
                let col_path = format!("{cols_path}[{i}]");
                let entries = as_array(col, &col_path)?
                    .iter()
                    .map(|e| rational_from_value(e, &col_path))
                    .collect::<Result<Vec<_>>>()?;
                columns.push(entries);
            }
            Matroid::from_columns_q(&columns)
        }
        "Fp" => {
            let p = field(obj, "p", path)?
                .as_u64()
                .ok_or_else(|| err(path, "p must be a prime number"))?;
            let mut columns = Vec::new();
            for (i, col) in cols.iter().enumerate() {
                let col_path = format!("{cols_path}[{i}]");
                let entries = as_array(col, &col_path)?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .ok_or_else(|| err(&col_path, "expected a field element"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                columns.push(entries);
            }
            Matroid::from_columns_fp(&columns, p)
        }
        other => Err(err(path, format!("unknown field {other:?}"))),
    }
}

/// Accepts the full rank-table form or the shorthands
/// `{"uniform":[r,n]}`, `{"matrix":{...}}`, `{"graph":{...}}`.
pub fn matroid_from_value(v: &Value, path: &str) -> Result<Matroid> {
    let obj = as_object(v, path)?;
    if let Some(u) = obj.get("uniform") {
        let u_path = format!("{path}.uniform");
        let pair = as_array(u, &u_path)?;
        if pair.len() != 2 {
            return Err(err(&u_path, "expected [rank, size]"));
        }
        let r = as_rank(&pair[0], &u_path)?;
        let n = as_usize(&pair[1], &u_path)?;
        return Matroid::uniform(r, n as u32);
    }
    if let Some(m) = obj.get("matrix") {
        return columns_matroid(m, &format!("{path}.matrix"));
    }
    if let Some(g) = obj.get("graph") {
        let graph = multigraph_from_value(g, &format!("{path}.graph"))?;
        return graph.cycle_matroid();
    }
    matroid_from_table(obj, path)
}

// ---- semimatroids ----

pub fn semimatroid_to_value(c: &Semimatroid) -> Value {
    let central: Vec<Value> = c
        .central()
        .iter()
        .map(|&x| Value::String(mask_to_key(x)))
        .collect();
    let mut rank = Map::new();
    for (x, r) in c.pairs() {
        rank.insert(mask_to_key(x), json!(r));
    }
    let mut obj = Map::new();
    obj.insert("ground_size".into(), json!(c.width()));
    obj.insert("central".into(), Value::Array(central));
    obj.insert("rank".into(), Value::Object(rank));
    // elements outside every central set exist (an empty hyperplane, say),
    // so a ground sparser than 0..ground_size-1 is recorded explicitly
    let dense = dense_mask(c.width() as usize);
    if c.ground() != dense {
        obj.insert("ground".into(), Value::String(mask_to_key(c.ground())));
    }
    Value::Object(obj)
}

/// Accepts the explicit central/rank form, any matroid form (taken with its
/// full power set), or `{"pointed":{"matroid":...,"p":element}}`.
fn dense_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

/// Raw pieces of the explicit semimatroid form, extracted without running
/// the axiom checks, so callers can report on invalid families.
pub fn semimatroid_parts_from_value(v: &Value, path: &str) -> Result<(u32, u32, Vec<(u32, u8)>)> {
    let obj = as_object(v, path)?;
    let width = as_usize(field(obj, "ground_size", path)?, &format!("{path}.ground_size"))?;
    if width > crate::MAX_ENUM {
        return Err(Error::GroundTooLarge(width, crate::MAX_ENUM));
    }
    let central_path = format!("{path}.central");
    let central = as_array(field(obj, "central", path)?, &central_path)?
        .iter()
        .map(|x| mask_from_value(x, &central_path))
        .collect::<Result<Vec<u32>>>()?;
    let rank_path = format!("{path}.rank");
    let table = as_object(field(obj, "rank", path)?, &rank_path)?;
    let mut pairs = Vec::new();
    for &x in &central {
        let key = mask_to_key(x);
        let r = table
            .get(&key)
            .ok_or_else(|| err(&rank_path, format!("missing central set {key}")))?;
        pairs.push((x, as_rank(r, &format!("{rank_path}.{key}"))?));
    }
    if table.len() != central.len() {
        return Err(err(&rank_path, "rank table keys must match the central sets"));
    }
    let ground = match obj.get("ground") {
        Some(g) => mask_from_value(g, &format!("{path}.ground"))?,
        None => dense_mask(width),
    };
    Ok((width as u32, ground, pairs))
}

pub fn semimatroid_from_value(v: &Value, path: &str) -> Result<Semimatroid> {
    let obj = as_object(v, path)?;
    if let Some(p) = obj.get("pointed") {
        let p_path = format!("{path}.pointed");
        let inner = as_object(p, &p_path)?;
        let m = matroid_from_value(field(inner, "matroid", &p_path)?, &format!("{p_path}.matroid"))?;
        let e = as_usize(field(inner, "p", &p_path)?, &format!("{p_path}.p"))?;
        return Semimatroid::from_pointed_matroid(&m, e as u32);
    }
    if !obj.contains_key("central") {
        return Ok(Semimatroid::from_matroid(&matroid_from_value(v, path)?));
    }
    let (width, ground, pairs) = semimatroid_parts_from_value(v, path)?;
    Semimatroid::new(width, ground, pairs)
}

// ---- assignings ----

pub fn assigning_to_value(a: &AssigningMatroid) -> Value {
    let mut labels = Map::new();
    for (&c, &v) in a.labels() {
        labels.insert(mask_to_key(c), json!(v));
    }
    json!({ "matroid": matroid_to_value(a.matroid()), "assigning": labels })
}

pub fn assigning_from_value(v: &Value, path: &str) -> Result<AssigningMatroid> {
    let obj = as_object(v, path)?;
    let m = matroid_from_value(field(obj, "matroid", path)?, &format!("{path}.matroid"))?;
    let labels_path = format!("{path}.assigning");
    let table = as_object(field(obj, "assigning", path)?, &labels_path)?;
    let mut labels = BTreeMap::new();
    for (key, v) in table {
        let c = mask_from_key(key, &labels_path)?;
        labels.insert(c, as_label(v, &format!("{labels_path}.{key}"))?);
    }
    AssigningMatroid::new(m, labels)
}

// ---- arrangements ----

pub fn arrangement_to_value(a: &Arrangement) -> Value {
    let field_value = match a.field() {
        FieldSpec::Rational => json!("Q"),
        FieldSpec::Prime(p) => json!({ "Fp": p }),
    };
    let hyperplanes: Vec<Value> = a
        .hyperplanes()
        .iter()
        .map(|h| {
            json!({
                "normal": h.normal.iter().map(rational_to_value).collect::<Vec<_>>(),
                "offset": rational_to_value(&h.offset),
            })
        })
        .collect();
    json!({ "field": field_value, "dim": a.dim(), "hyperplanes": hyperplanes })
}

pub fn arrangement_from_value(v: &Value, path: &str) -> Result<Arrangement> {
    let obj = as_object(v, path)?;
    let field_path = format!("{path}.field");
    let field_spec = match field(obj, "field", path)? {
        Value::String(s) if s == "Q" => FieldSpec::Rational,
        Value::Object(m) => {
            let p = m
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| err(&field_path, "expected {\"Fp\": prime}"))?;
            FieldSpec::Prime(p)
        }
        _ => return Err(err(&field_path, "expected \"Q\" or {\"Fp\": prime}")),
    };
    let dim = as_usize(field(obj, "dim", path)?, &format!("{path}.dim"))?;
    let hps_path = format!("{path}.hyperplanes");
    let mut hyperplanes = Vec::new();
    for (i, hv) in as_array(field(obj, "hyperplanes", path)?, &hps_path)?
        .iter()
        .enumerate()
    {
        let h_path = format!("{hps_path}[{i}]");
        let h = as_object(hv, &h_path)?;
        let normal_path = format!("{h_path}.normal");
        let normal = as_array(field(h, "normal", &h_path)?, &normal_path)?
            .iter()
            .map(|e| rational_from_value(e, &normal_path))
            .collect::<Result<Vec<_>>>()?;
        let offset = rational_from_value(field(h, "offset", &h_path)?, &format!("{h_path}.offset"))?;
        hyperplanes.push(Hyperplane::new(normal, offset));
    }
    Arrangement::new(field_spec, dim, hyperplanes)
}

// ---- graphs ----

pub fn gain_graph_to_value(g: &GainGraph) -> Value {
    let edges: Vec<Value> = g
        .graph()
        .edges()
        .iter()
        .map(|&(u, v)| json!([u + 1, v + 1]))
        .collect();
    let orientation: Vec<Value> = g
        .orientation()
        .iter()
        .map(|&(t, h)| json!([t + 1, h + 1]))
        .collect();
    let gains: Vec<Value> = g.gains().iter().map(rational_to_value).collect();
    json!({
        "vertices": g.graph().vertices(),
        "edges": edges,
        "orientation": orientation,
        "gains": gains,
    })
}

fn endpoint(v: &Value, vertices: usize, path: &str) -> Result<usize> {
    let n = as_usize(v, path)?;
    if n == 0 || n > vertices {
        return Err(err(path, format!("vertex {n} is not in 1..={vertices}")));
    }
    Ok(n - 1)
}

fn endpoint_pairs(v: &Value, vertices: usize, path: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (i, pair) in as_array(v, path)?.iter().enumerate() {
        let pair_path = format!("{path}[{i}]");
        let uv = as_array(pair, &pair_path)?;
        if uv.len() != 2 {
            return Err(err(&pair_path, "expected [u, v]"));
        }
        out.push((
            endpoint(&uv[0], vertices, &pair_path)?,
            endpoint(&uv[1], vertices, &pair_path)?,
        ));
    }
    Ok(out)
}

pub fn multigraph_from_value(v: &Value, path: &str) -> Result<MultiGraph> {
    let obj = as_object(v, path)?;
    let vertices = as_usize(field(obj, "vertices", path)?, &format!("{path}.vertices"))?;
    let edges = endpoint_pairs(field(obj, "edges", path)?, vertices, &format!("{path}.edges"))?;
    MultiGraph::new(vertices, edges)
}

/// `orientation` defaults to the edges as written and `gains` to zeros.
pub fn gain_graph_from_value(v: &Value, path: &str) -> Result<GainGraph> {
    let graph = multigraph_from_value(v, path)?;
    let obj = as_object(v, path)?;
    let orientation = match obj.get("orientation") {
        Some(o) => endpoint_pairs(o, graph.vertices(), &format!("{path}.orientation"))?,
        None => graph.edges().to_vec(),
    };
    let gains = match obj.get("gains") {
        Some(g) => {
            let gains_path = format!("{path}.gains");
            as_array(g, &gains_path)?
                .iter()
                .map(|x| rational_from_value(x, &gains_path))
                .collect::<Result<Vec<_>>>()?
        }
        None => vec![BigRational::zero(); graph.size()],
    };
    GainGraph::new(graph, orientation, gains)
}

// ---- mixed fixtures ----

pub fn fixture_to_value(f: &Fixture) -> Value {
    match f {
        Fixture::Arrangement(a) => arrangement_to_value(a),
        Fixture::GainGraph(g) => gain_graph_to_value(g),
        Fixture::Assigning(a) => assigning_to_value(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn rational_strings_are_canonical() {
        let half = BigRational::new(BigInt::from(3), BigInt::from(6));
        assert_eq!(rational_to_value(&half), json!("1/2"));
        let neg = BigRational::new(BigInt::from(2), BigInt::from(-4));
        assert_eq!(rational_to_value(&neg), json!("-1/2"));
        assert_eq!(rational_to_value(&BigRational::from_integer(7.into())), json!("7"));

        assert_eq!(rational_from_value(&json!("-1/2"), "x").unwrap(), neg);
        assert_eq!(
            rational_from_value(&json!(-3), "x").unwrap(),
            BigRational::from_integer((-3).into())
        );
        assert!(rational_from_value(&json!("1/0"), "x").is_err());
        assert!(rational_from_value(&json!(0.5), "x").is_err());
    }

    #[test]
    fn matroid_round_trip_and_shorthands() {
        let m = Matroid::uniform(2, 4).unwrap();
        let v = matroid_to_value(&m);
        assert_eq!(matroid_from_value(&v, "$").unwrap(), m);

        let u = matroid_from_value(&json!({ "uniform": [2, 4] }), "$").unwrap();
        assert_eq!(u, m);

        let mat = matroid_from_value(
            &json!({ "matrix": { "field": "Q", "columns": [["1", "0"], ["0", "1"], ["1", "1/2"]] } }),
            "$",
        )
        .unwrap();
        assert_eq!(mat.rank(), 2);

        let fp = matroid_from_value(
            &json!({ "matrix": { "field": "Fp", "p": 2, "columns": [[1], [1], [0]] } }),
            "$",
        )
        .unwrap();
        assert_eq!(fp.rank(), 1);
        assert_eq!(fp.loops(), 0b100);

        let g = matroid_from_value(
            &json!({ "graph": { "vertices": 3, "edges": [[1, 2], [2, 3], [1, 3]] } }),
            "$",
        )
        .unwrap();
        assert_eq!(g.circuits(), vec![0b111]);
    }

    #[test]
    fn semimatroid_round_trip_and_pointed() {
        for c in corpus::semimatroids(3).into_iter().take(25) {
            let v = semimatroid_to_value(&c);
            assert_eq!(semimatroid_from_value(&v, "$").unwrap(), c);
        }
        let pointed = semimatroid_from_value(
            &json!({ "pointed": { "matroid": { "uniform": [2, 3] }, "p": 0 } }),
            "$",
        )
        .unwrap();
        assert_eq!(pointed.size(), 2);

        let from_matroid =
            semimatroid_from_value(&json!({ "uniform": [1, 2] }), "$").unwrap();
        assert_eq!(from_matroid.central().len(), 4);

        // an element in no central set must survive the round trip
        let a = Arrangement::rational(
            2,
            vec![
                Hyperplane::from_ints(&[1, 0], 0),
                Hyperplane::from_ints(&[0, 0], 1),
            ],
        )
        .unwrap();
        let c = a.semimatroid().unwrap();
        assert_eq!(semimatroid_from_value(&semimatroid_to_value(&c), "$").unwrap(), c);

        // a ground sparser than 0..ground_size-1 is written out explicitly
        let sparse = &pointed;
        let v = semimatroid_to_value(sparse);
        assert_eq!(as_object(&v, "$").unwrap()["ground"], json!("6"));
        assert_eq!(&semimatroid_from_value(&v, "$").unwrap(), sparse);
    }

    #[test]
    fn assigning_and_arrangement_and_graph_round_trips() {
        for f in corpus::fixtures(5, 12) {
            let v = fixture_to_value(&f);
            match f {
                Fixture::Arrangement(a) => {
                    assert_eq!(arrangement_from_value(&v, "$").unwrap(), a);
                }
                Fixture::GainGraph(g) => {
                    assert_eq!(gain_graph_from_value(&v, "$").unwrap(), g);
                }
                Fixture::Assigning(a) => {
                    assert_eq!(assigning_from_value(&v, "$").unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn prime_field_arrangement_round_trip() {
        let a = arrangement_from_value(
            &json!({
                "field": { "Fp": 5 },
                "dim": 2,
                "hyperplanes": [{ "normal": [1, 4], "offset": 3 }],
            }),
            "$",
        )
        .unwrap();
        assert_eq!(a.field(), FieldSpec::Prime(5));
        assert_eq!(arrangement_from_value(&arrangement_to_value(&a), "$").unwrap(), a);
    }

    #[test]
    fn polynomial_rendering_is_sorted() {
        let p = UniPoly::from_pairs(&[(2, 1), (0, -3)]);
        assert_eq!(render(&uni_poly_to_value(&p)), "[[0,\"-3\"],[2,\"1\"]]");
        let b = BiPoly::from_pairs(&[((1, 1), 2), ((0, 2), 1)]);
        assert_eq!(
            render(&bi_poly_to_value(&b)),
            "[[[0,2],\"1\"],[[1,1],\"2\"]]"
        );
    }

    #[test]
    fn errors_name_the_offending_path() {
        let bad = json!({ "field": "Q", "dim": 1, "hyperplanes": [{ "normal": ["x"], "offset": 0 }] });
        let msg = arrangement_from_value(&bad, "$").unwrap_err().to_string();
        assert!(msg.contains("hyperplanes[0].normal"), "{msg}");

        let missing = json!({ "ground_size": 2 });
        let msg = matroid_from_value(&missing, "$").unwrap_err().to_string();
        assert!(msg.contains("rank"), "{msg}");

        let syntax = parse_text("{ not json").unwrap_err().to_string();
        assert!(syntax.contains("line 1"), "{syntax}");
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = &corpus::arrangements(9)[0];
        assert_eq!(render(&arrangement_to_value(a)), render(&arrangement_to_value(a)));
        // keys come out sorted regardless of insertion order
        let v = json!({ "b": 1, "a": 2 });
        assert_eq!(render(&v), "{\"a\":2,\"b\":1}");
    }
}
