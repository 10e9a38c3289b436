//! JSON file formats. Basis indices are 1-based in files, rationals are strings.
//!
//! Output goes through [`to_canonical`], a fixed pretty-printer, so serialization is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{HomkitError, Result};
use crate::exactmath::{Matrix, Rational};
use crate::homlie::{BilinearMap, HomLieAlgebra};
use crate::homlie2::HomLie2Data;
use crate::multilinear::AltForm;
use crate::omni::{OmniElement, OmniSpace, OmniSubspace};
use crate::rep::Representation;
use crate::report::CheckReport;

fn err(position: &str, message: impl Into<String>) -> HomkitError {
    HomkitError::Parse {
        position: position.to_string(),
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

fn field<'a>(obj: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    let map = obj.as_object().ok_or_else(|| err(path, "expected an object"))?;
    map.get(key).ok_or_else(|| err(path, format!("missing field \"{key}\"")))
}

fn usize_at(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn index_at(v: &Value, path: &str, bound: usize) -> Result<usize> {
    let i = usize_at(v, path)?;
    if i == 0 || i > bound {
        return Err(err(path, format!("basis index {i} outside 1..={bound}")));
    }
    Ok(i - 1)
}

fn array_at<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn rational_at(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse::<Rational>().map_err(|e| err(path, e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from)
            .ok_or_else(|| err(path, "numbers must be integers; write fractions as strings")),
        _ => Err(err(path, "expected a rational string")),
    }
}

fn vector_at(v: &Value, path: &str, len: usize) -> Result<Vec<Rational>> {
    let a = array_at(v, path)?;
    if a.len() != len {
        return Err(err(path, format!("expected {len} entries, found {}", a.len())));
    }
    a.iter().enumerate().map(|(i, x)| rational_at(x, &format!("{path}[{i}]"))).collect()
}

fn matrix_at(v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix> {
    let a = array_at(v, path)?;
    if a.len() != rows {
        return Err(err(path, format!("expected {rows} rows, found {}", a.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in a.iter().enumerate() {
        entries.extend(vector_at(row, &format!("{path}[{i}]"), cols)?);
    }
    Matrix::from_entries(rows, cols, entries)
}

/// A square matrix written inline, e.g. `[[1,0],[0,"1/2"]]`.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let v = parse_json(text)?;
    let n = array_at(&v, "$")?.len();
    matrix_at(&v, "$", n, n)
}

fn rational_json(c: &Rational) -> Value {
    Value::String(c.to_string())
}

fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

/// Entries `[i, j, [k, "c"], ...]` grouped by `(i, j)`.
fn pair_entries_json(entries: &[(usize, usize, usize, Rational)]) -> Value {
    let mut grouped: BTreeMap<(usize, usize), Vec<Value>> = BTreeMap::new();
    for (i, j, k, c) in entries {
        grouped.entry((*i, *j)).or_default().push(json!([k + 1, c.to_string()]));
    }
    Value::Array(
        grouped
            .into_iter()
            .map(|((i, j), terms)| {
                let mut row = vec![json!(i + 1), json!(j + 1)];
                row.extend(terms);
                Value::Array(row)
            })
            .collect(),
    )
}

/// Parses `[i, j, [k, "c"], ...]` rows into `(i, j, k, c)`, summing duplicates.
fn parse_pair_entries(
    v: &Value,
    path: &str,
    first_bound: usize,
    second_bound: usize,
    value_bound: usize,
) -> Result<Vec<(usize, usize, usize, Rational)>> {
    let mut out = Vec::new();
    for (r, row) in array_at(v, path)?.iter().enumerate() {
        let rp = format!("{path}[{r}]");
        let items = array_at(row, &rp)?;
        if items.len() < 2 {
            return Err(err(&rp, "expected [i, j, [k, \"c\"], ...]"));
        }
        let i = index_at(&items[0], &format!("{rp}[0]"), first_bound)?;
        let j = index_at(&items[1], &format!("{rp}[1]"), second_bound)?;
        for (t, term) in items[2..].iter().enumerate() {
            let tp = format!("{rp}[{}]", t + 2);
            let kc = array_at(term, &tp)?;
            if kc.len() != 2 {
                return Err(err(&tp, "expected [k, \"c\"]"));
            }
            let k = index_at(&kc[0], &format!("{tp}[0]"), value_bound)?;
            let c = rational_at(&kc[1], &format!("{tp}[1]"))?;
            out.push((i, j, k, c));
        }
    }
    Ok(out)
}

/// Fills in skew partners for pairs listed one way only; pairs listed both ways must be skew.
fn skew_completion(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<BilinearMap> {
    let given = BilinearMap::from_entries(dim, entries)?;
    let mut listed = vec![false; dim * dim];
    for (i, j, _, _) in entries {
        listed[i * dim + j] = true;
    }
    let mut f = given.clone();
    for i in 0..dim {
        for j in 0..dim {
            let (a, b) = (given.on_basis(i, j), given.on_basis(j, i));
            if i == j || (listed[i * dim + j] && listed[j * dim + i]) {
                let sum: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if sum.iter().any(|c| !c.is_zero()) {
                    return Err(HomkitError::InvariantViolation(format!(
                        "structure constants are not skewsymmetric at (e{}, e{})",
                        i.min(j) + 1,
                        i.max(j) + 1
                    )));
                }
            } else if !listed[i * dim + j] && listed[j * dim + i] {
                f.set_on_basis(i, j, b.iter().map(|c| -c).collect());
            }
        }
    }
    Ok(f)
}

fn algebra_from_value(v: &Value, path: &str) -> Result<HomLieAlgebra> {
    let n = usize_at(field(v, path, "dim")?, &format!("{path}.dim"))?;
    let entries = parse_pair_entries(field(v, path, "bracket")?, &format!("{path}.bracket"), n, n, n)?;
    let alpha = matrix_at(field(v, path, "alpha")?, &format!("{path}.alpha"), n, n)?;
    HomLieAlgebra::new(skew_completion(n, &entries)?, alpha)
}

pub fn algebra_to_value(g: &HomLieAlgebra) -> Value {
    json!({
        "dim": g.dim(),
        "bracket": pair_entries_json(&g.upper_entries()),
        "alpha": matrix_json(g.alpha()),
    })
}

/// `{"dim": n, "bracket": [[i, j, [k, "c"], ...], ...], "alpha": matrix}`.
pub fn parse_algebra(text: &str) -> Result<HomLieAlgebra> {
    algebra_from_value(&parse_json(text)?, "$")
}

pub fn serialize_algebra(g: &HomLieAlgebra) -> String {
    to_canonical(&algebra_to_value(g))
}

/// `{"dim": n, "map": [[i, j, [k, "c"], ...], ...], "twist": matrix?}`; every listed pair is taken as is.
pub fn parse_bilinear(text: &str) -> Result<BilinearMap> {
    let v = parse_json(text)?;
    let n = usize_at(field(&v, "$", "dim")?, "$.dim")?;
    let entries = parse_pair_entries(field(&v, "$", "map")?, "$.map", n, n, n)?;
    let f = BilinearMap::from_entries(n, &entries)?;
    match v.get("twist") {
        Some(t) if !t.is_null() => f.with_twist(matrix_at(t, "$.twist", n, n)?),
        _ => Ok(f),
    }
}

pub fn serialize_bilinear(f: &BilinearMap) -> String {
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(f.dim()));
    obj.insert("map".into(), pair_entries_json(&f.entries()));
    if let Some(t) = f.twist() {
        obj.insert("twist".into(), matrix_json(t));
    }
    to_canonical(&Value::Object(obj))
}

/// `{"algebra": <algebra>, "v_dim": m, "rho": [matrix, ...], "beta": matrix}`.
pub fn parse_representation(text: &str) -> Result<Representation> {
    let v = parse_json(text)?;
    let g = algebra_from_value(field(&v, "$", "algebra")?, "$.algebra")?;
    let m = usize_at(field(&v, "$", "v_dim")?, "$.v_dim")?;
    let rho_v = array_at(field(&v, "$", "rho")?, "$.rho")?;
    if rho_v.len() != g.dim() {
        return Err(err("$.rho", format!("expected {} matrices, found {}", g.dim(), rho_v.len())));
    }
    let rho = rho_v
        .iter()
        .enumerate()
        .map(|(i, r)| matrix_at(r, &format!("$.rho[{i}]"), m, m))
        .collect::<Result<Vec<_>>>()?;
    let beta = matrix_at(field(&v, "$", "beta")?, "$.beta", m, m)?;
    Representation::new(g, rho, beta)
}

pub fn serialize_representation(r: &Representation) -> String {
    to_canonical(&json!({
        "algebra": algebra_to_value(r.algebra()),
        "v_dim": r.v_dim(),
        "rho": Value::Array(r.rho().iter().map(matrix_json).collect()),
        "beta": matrix_json(r.beta()),
    }))
}

fn omni_space_from(v: &Value) -> Result<(OmniSpace, usize)> {
    let m = usize_at(field(v, "$", "v_dim")?, "$.v_dim")?;
    let beta = matrix_at(field(v, "$", "beta")?, "$.beta", m, m)?;
    Ok((OmniSpace::new(beta)?, m))
}

/// `{"v_dim": m, "beta": matrix, ...}`; any `basis` field is ignored.
pub fn parse_omni_space(text: &str) -> Result<OmniSpace> {
    Ok(omni_space_from(&parse_json(text)?)?.0)
}

/// `{"v_dim": m, "beta": matrix, "basis": [{"a": matrix, "u": vector}, ...]}`.
pub fn parse_omni_subspace(text: &str) -> Result<OmniSubspace> {
    let v = parse_json(text)?;
    let (space, m) = omni_space_from(&v)?;
    let basis = array_at(field(&v, "$", "basis")?, "$.basis")?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = format!("$.basis[{i}]");
            let a = matrix_at(field(e, &p, "a")?, &format!("{p}.a"), m, m)?;
            let u = vector_at(field(e, &p, "u")?, &format!("{p}.u"), m)?;
            OmniElement::new(a, u)
        })
        .collect::<Result<Vec<_>>>()?;
    OmniSubspace::new(space, basis)
}

pub fn serialize_omni_space(s: &OmniSpace) -> String {
    to_canonical(&json!({"v_dim": s.v_dim(), "beta": matrix_json(s.beta())}))
}

pub fn serialize_omni_subspace(l: &OmniSubspace) -> String {
    let basis: Vec<Value> = l
        .basis()
        .iter()
        .map(|e| json!({"a": matrix_json(&e.a), "u": vector_json(&e.u)}))
        .collect();
    to_canonical(&json!({
        "v_dim": l.space().v_dim(),
        "beta": matrix_json(l.space().beta()),
        "basis": basis,
    }))
}

fn form2_entries(f: &AltForm) -> Vec<(usize, usize, usize, Rational)> {
    let n = f.source_dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (k, c) in f.coeff(&[i, j]).iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
    }
    out
}

/// `{"dim1", "dim0", "dee", "l2_00", "l2_01", "l3", "phi0", "phi1"}`.
///
/// `l2_00` rows list `i < j` only; `l2_01` rows are `[i, j, [k, "c"], ...]` meaning
/// `l2(x_i, m_j) = Σ c m_k`; `l3` rows are `[i, j, k, [c, "v"], ...]` with `i < j < k`.
pub fn parse_homlie2(text: &str) -> Result<HomLie2Data> {
    let v = parse_json(text)?;
    let n1 = usize_at(field(&v, "$", "dim1")?, "$.dim1")?;
    let n0 = usize_at(field(&v, "$", "dim0")?, "$.dim0")?;
    let dee = matrix_at(field(&v, "$", "dee")?, "$.dee", n0, n1)?;
    let mut l2 = AltForm::zero(2, n0, n0);
    for (i, j, k, c) in parse_pair_entries(field(&v, "$", "l2_00")?, "$.l2_00", n0, n0, n0)? {
        if i >= j {
            return Err(err("$.l2_00", format!("entries must have i < j, got ({}, {})", i + 1, j + 1)));
        }
        let mut val = l2.coeff(&[i, j]).to_vec();
        val[k] += &c;
        l2.set_coeff(&[i, j], val);
    }
    let mut l2_01 = vec![Matrix::zeros(n1, n1); n0];
    for (i, j, k, c) in parse_pair_entries(field(&v, "$", "l2_01")?, "$.l2_01", n0, n1, n1)? {
        l2_01[i][(k, j)] += &c;
    }
    let mut l3 = AltForm::zero(3, n0, n1);
    for (r, row) in array_at(field(&v, "$", "l3")?, "$.l3")?.iter().enumerate() {
        let rp = format!("$.l3[{r}]");
        let items = array_at(row, &rp)?;
        if items.len() < 3 {
            return Err(err(&rp, "expected [i, j, k, [c, \"v\"], ...]"));
        }
        let idx: Vec<usize> = (0..3)
            .map(|p| index_at(&items[p], &format!("{rp}[{p}]"), n0))
            .collect::<Result<_>>()?;
        if !(idx[0] < idx[1] && idx[1] < idx[2]) {
            return Err(err(&rp, "l3 entries must have i < j < k"));
        }
        let mut val = l3.coeff(&idx).to_vec();
        for (t, term) in items[3..].iter().enumerate() {
            let tp = format!("{rp}[{}]", t + 3);
            let kc = array_at(term, &tp)?;
            if kc.len() != 2 {
                return Err(err(&tp, "expected [c, \"v\"]"));
            }
            let c = index_at(&kc[0], &format!("{tp}[0]"), n1)?;
            val[c] += &rational_at(&kc[1], &format!("{tp}[1]"))?;
        }
        l3.set_coeff(&idx, val);
    }
    let phi0 = matrix_at(field(&v, "$", "phi0")?, "$.phi0", n0, n0)?;
    let phi1 = matrix_at(field(&v, "$", "phi1")?, "$.phi1", n1, n1)?;
    HomLie2Data::new(dee, l2, l2_01, l3, phi0, phi1)
}

pub fn serialize_homlie2(d: &HomLie2Data) -> String {
    let mut mixed = Vec::new();
    for (i, m) in d.l2_01().iter().enumerate() {
        for j in 0..d.dim1() {
            for k in 0..d.dim1() {
                let c = &m[(k, j)];
                if !c.is_zero() {
                    mixed.push((i, j, k, c.clone()));
                }
            }
        }
    }
    let mut l3_rows = Vec::new();
    for t in crate::multilinear::subsets(d.dim0(), 3) {
        let val = d.l3().coeff(&t);
        if val.iter().all(Rational::is_zero) {
            continue;
        }
        let mut row = vec![json!(t[0] + 1), json!(t[1] + 1), json!(t[2] + 1)];
        for (c, x) in val.iter().enumerate() {
            if !x.is_zero() {
                row.push(json!([c + 1, x.to_string()]));
            }
        }
        l3_rows.push(Value::Array(row));
    }
    to_canonical(&json!({
        "dim1": d.dim1(),
        "dim0": d.dim0(),
        "dee": matrix_json(d.dee()),
        "l2_00": pair_entries_json(&form2_entries(d.l2_00())),
        "l2_01": pair_entries_json(&mixed),
        "l3": Value::Array(l3_rows),
        "phi0": matrix_json(d.phi0()),
        "phi1": matrix_json(d.phi1()),
    }))
}

pub fn report_to_value(r: &CheckReport) -> Value {
    let items: Vec<Value> = r
        .items
        .iter()
        .map(|i| {
            let mut o = Map::new();
            o.insert("name".into(), json!(i.name));
            o.insert("passed".into(), json!(i.passed));
            if let Some(w) = &i.witness {
                o.insert("witness".into(), json!(w));
            }
            Value::Object(o)
        })
        .collect();
    let mut o = Map::new();
    o.insert("subject".into(), json!(r.subject));
    o.insert("passed".into(), json!(r.passed()));
    o.insert("items".into(), Value::Array(items));
    if !r.info.is_empty() {
        let info: Map<String, Value> = r.info.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        o.insert("info".into(), Value::Object(info));
    }
    Value::Object(o)
}

pub fn render_report_json(r: &CheckReport) -> String {
    to_canonical(&report_to_value(r))
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(a) => 1 + a.iter().map(depth).max().unwrap_or(0),
        Value::Object(_) => usize::MAX / 2,
        _ => 0,
    }
}

/// Two-space indentation; arrays nested at most two deep stay on one line.
pub fn to_canonical(v: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, v, 0);
    s.push('\n');
    s
}

fn write_inline(s: &mut String, v: &Value) {
    match v {
        Value::Array(a) => {
            s.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                write_inline(s, x);
            }
            s.push(']');
        }
        other => {
            let _ = write!(s, "{other}");
        }
    }
}

fn write_value(s: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(map) if !map.is_empty() => {
            s.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                let _ = write!(s, "{pad}{}: ", Value::String(k.clone()));
                write_value(s, x, indent + 1);
                if i + 1 < map.len() {
                    s.push(',');
                }
                s.push('\n');
            }
            s.push_str(&"  ".repeat(indent));
            s.push('}');
        }
        Value::Array(a) if !a.is_empty() && depth(v) > 2 => {
            s.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                s.push_str(&pad);
                write_value(s, x, indent + 1);
                if i + 1 < a.len() {
                    s.push(',');
                }
                s.push('\n');
            }
            s.push_str(&"  ".repeat(indent));
            s.push(']');
        }
        Value::Array(_) => write_inline(s, v),
        other => {
            let _ = write!(s, "{other}");
        }
    }
}
